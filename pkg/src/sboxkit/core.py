"""S-box data model, parsing/serialisation and structural metrics."""

import math
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce

import numpy as np

from ._bits import MAX_BITS, PARITY, fwht


class SBoxError(ValueError):
    """Base class for every error raised by this package."""


class ParseError(SBoxError):
    pass


class PreconditionError(SBoxError):
    """A metric was requested for an S-box outside its domain."""


@dataclass(frozen=True)
class SBox:
    """An ``n``-bit to ``m``-bit lookup table.

    ``name`` and ``source`` are provenance only and take no part in
    equality or hashing.
    """

    n: int
    m: int
    table: tuple
    name: str = field(default=None, compare=False)
    source: str = field(default=None, compare=False)

    def __post_init__(self):
        table = tuple(int(v) for v in self.table)
        object.__setattr__(self, "table", table)
        if not 1 <= self.n <= MAX_BITS:
            raise SBoxError(f"input width n={self.n} outside 1..{MAX_BITS}")
        if not 1 <= self.m <= MAX_BITS:
            raise SBoxError(f"output width m={self.m} outside 1..{MAX_BITS}")
        if len(table) != 1 << self.n:
            raise SBoxError(f"table has {len(table)} entries, expected 2^{self.n}")
        limit = 1 << self.m
        for x, y in enumerate(table):
            if not 0 <= y < limit:
                raise SBoxError(f"entry S({x})={y} does not fit in m={self.m} bits")

    @classmethod
    def from_table(cls, table, width=None, name=None, source=None):
        """Build an S-box inferring ``n`` from the length and ``m`` from the data."""
        table = [int(v) for v in table]
        size = len(table)
        if size < 2 or size & (size - 1):
            raise SBoxError(f"length {size} is not a power of two (>= 2)")
        n = size.bit_length() - 1
        m = width if width is not None else max(1, max(table).bit_length())
        return cls(n, m, tuple(table), name=name, source=source)

    def __call__(self, x):
        return self.table[x]

    def __len__(self):
        return len(self.table)

    @property
    def size(self):
        return 1 << self.n

    @property
    def out_size(self):
        return 1 << self.m

    @cached_property
    def array(self):
        a = np.array(self.table, dtype=np.int64)
        a.setflags(write=False)
        return a

    def label(self):
        return self.name or self.source or f"{self.n}x{self.m} S-box"


@dataclass(frozen=True)
class BooleanComponent:
    """The single-bit function x -> mask . S(x)."""

    mask: int
    truth: tuple

    @property
    def n(self):
        return len(self.truth).bit_length() - 1


def component(s, mask):
    if not 0 <= mask < s.out_size:
        raise SBoxError(f"mask {mask} out of range for m={s.m}")
    return BooleanComponent(mask, tuple(int(b) for b in PARITY[s.array & mask]))


# --- parsing -------------------------------------------------------------

_TOKEN = re.compile(r"^(0[xX][0-9a-fA-F]+|\d+)$")
_COMPACT = re.compile(r"^[0-9a-fA-F]+$")


def _strip_comments(text):
    lines = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def parse_sbox(text, format_hint=None, width=None, name=None, source=None):
    """Parse an S-box from text.

    Accepted formats: ``list`` (decimal or ``0x`` integers separated by
    whitespace/commas), ``compact`` (one hex digit per entry, only for
    4-bit outputs). Lines starting with ``#`` are comments. With no hint
    the format is auto-detected: a single hex-digit token of length >= 2
    is compact, everything else is a list.
    """
    lines = _strip_comments(text)
    body = " ".join(lines)
    tokens = [t for t in re.split(r"[\s,;]+", body) if t]
    if not tokens:
        raise ParseError("no entries found")
    hint = format_hint or "auto"
    if hint not in ("auto", "list", "compact"):
        raise ParseError(f"unknown format hint {format_hint!r}")
    if hint == "auto":
        compact = len(tokens) == 1 and len(tokens[0]) >= 2 and _COMPACT.match(tokens[0])
        hint = "compact" if compact else "list"

    if hint == "compact":
        digits = "".join(tokens)
        if not _COMPACT.match(digits):
            raise ParseError("compact format accepts hex digits only")
        if width is not None and width > 4:
            raise ParseError("compact hex format only supports m <= 4")
        values = [int(c, 16) for c in digits]
    else:
        values = []
        for tok in tokens:
            if not _TOKEN.match(tok):
                raise ParseError(f"malformed token {tok!r}")
            values.append(int(tok, 0) if tok[:2].lower() == "0x" else int(tok, 10))

    size = len(values)
    if size < 2 or size & (size - 1):
        raise ParseError(f"length {size} is not a power of two")
    if width is not None and max(values) >= 1 << width:
        raise ParseError(f"entry {max(values)} out of range for width {width}")
    try:
        return SBox.from_table(values, width=width, name=name, source=source)
    except ParseError:
        raise
    except SBoxError as exc:
        raise ParseError(str(exc)) from exc


def load_sbox(path, format_hint=None, width=None):
    with open(path, encoding="utf-8") as fh:
        return parse_sbox(fh.read(), format_hint, width, name=None, source=str(path))


def serialize_sbox(s, per_line=16):
    """Emit the list format, ``per_line`` decimal entries per line."""
    rows = []
    for i in range(0, len(s.table), per_line):
        rows.append(", ".join(str(v) for v in s.table[i:i + per_line]))
    return ",\n".join(rows) + "\n"


# --- structural metrics --------------------------------------------------

def is_bijective(s):
    return s.n == s.m and len(set(s.table)) == s.size


def is_balanced(s):
    """Every nonzero component takes the value 1 exactly 2^(n-1) times."""
    hist = np.bincount(s.array, minlength=s.out_size)
    # entry r is sum_x (-1)^(r.S(x)): zero exactly when component r is balanced
    imbalance = fwht(hist)
    return bool(np.all(imbalance[1:] == 0))


def _require_bijective(s, what):
    if not is_bijective(s):
        raise PreconditionError(f"{what} requires a bijective S-box")


def cycle_lengths(s):
    """Cycle lengths of a permutation, longest first."""
    _require_bijective(s, "cycle decomposition")
    seen = bytearray(s.size)
    lengths = []
    for start in range(s.size):
        if seen[start]:
            continue
        x, c = start, 0
        while not seen[x]:
            seen[x] = 1
            x = s.table[x]
            c += 1
        lengths.append(c)
    return sorted(lengths, reverse=True)


def permutation_order(s, convention="cycle"):
    """Order of the permutation.

    ``convention="cycle"`` returns the longest cycle length, the figure the
    published finalist audit reports (Ascon 26, Skinny-8 140).
    ``convention="group"`` returns the least k >= 1 with S^k = id, i.e.
    the lcm of all cycle lengths.
    """
    lengths = cycle_lengths(s)
    if convention == "cycle":
        return lengths[0]
    if convention == "group":
        return reduce(math.lcm, lengths, 1)
    raise ValueError(f"unknown order convention {convention!r}")


def _require_square(s, what):
    if s.n != s.m:
        raise PreconditionError(f"{what} is only defined for n = m")


def fixed_points(s):
    _require_square(s, "fixed points")
    return [x for x, y in enumerate(s.table) if x == y]


def opposite_fixed_points(s):
    _require_square(s, "opposite fixed points")
    full = s.size - 1
    return [x for x, y in enumerate(s.table) if y == x ^ full]


def inverse(s):
    _require_bijective(s, "inverse")
    inv = [0] * s.size
    for x, y in enumerate(s.table):
        inv[y] = x
    name = f"{s.name}^-1" if s.name else None
    return SBox(s.n, s.m, tuple(inv), name=name, source=s.source)


def compose(outer, inner):
    """x -> outer(inner(x))."""
    if inner.m != outer.n:
        raise SBoxError("widths do not chain")
    return SBox(inner.n, outer.m, tuple(outer.table[y] for y in inner.table))


def identity(n):
    return SBox(n, n, tuple(range(1 << n)), name=f"identity{n}")
