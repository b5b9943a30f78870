"""sboxkit: cryptographic property analysis of S-boxes."""

from .core import (PreconditionError, ParseError, SBox, SBoxError, load_sbox,
                   parse_sbox, serialize_sbox)
from .corpus import builtin

__version__ = "0.1.0"

__all__ = ["SBox", "SBoxError", "ParseError", "PreconditionError", "parse_sbox",
           "load_sbox", "serialize_sbox", "builtin", "__version__"]
