"""Built-in S-boxes of the lightweight finalists, loaded from packaged data files."""

import hashlib
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .core import SBoxError, is_balanced, is_bijective, parse_sbox, serialize_sbox


@dataclass(frozen=True)
class BuiltinEntry:
    id: str
    title: str
    citation: str
    doi: str
    sha256: str
    check: tuple    # (metric name, expected value) verified at load time
    ciphers: tuple


_ENTRIES = {
    "ascon": BuiltinEntry(
        "ascon", "Ascon 5-bit S-box",
        "C. Dobraunig, M. Eichlseder, F. Mendel, M. Schlaeffer. Ascon v1.2: Lightweight "
        "Authenticated Encryption and Hashing. Journal of Cryptology 34, 33 (2021)",
        "10.1007/s00145-021-09398-9",
        "56404f397b953607004a3acedbd3453253780904095094e3ae0bc8cc919b775d",
        ("nl", 8), ("Ascon", "ISAP")),
    "gift": BuiltinEntry(
        "gift", "GIFT 4-bit S-box",
        "S. Banik et al. GIFT: A Small Present. CHES 2017",
        "10.1007/978-3-319-66787-4_16",
        "2d1b68a64990899c19caa909a7177413c31e414cd99c920ee61ae43f2414ef94",
        ("dbn", 2), ("GIFT-COFB",)),
    "present": BuiltinEntry(
        "present", "PRESENT 4-bit S-box",
        "A. Bogdanov et al. PRESENT: An Ultra-Lightweight Block Cipher. CHES 2007",
        "10.1007/978-3-540-74735-2_31",
        "27e502f93798002ed475b8995392f125b92088755ddc45ec6af74f49f09d4922",
        ("du", 4), ("Photon-Beetle",)),
    "spongent": BuiltinEntry(
        "spongent", "Spongent 4-bit S-box",
        "A. Bogdanov et al. SPONGENT: A Lightweight Hash Function. CHES 2011",
        "10.1007/978-3-642-23951-9_21",
        "070f35558d37c457ad36ea153262e765075adcf8a44c4314d2d648c1264dde97",
        ("du", 4), ("Elephant",)),
    "skinny8": BuiltinEntry(
        "skinny8", "Skinny 8-bit S-box",
        "C. Beierle et al. The SKINNY Family of Block Ciphers and Its Low-Latency "
        "Variant MANTIS. CRYPTO 2016",
        "10.1007/978-3-662-53008-5_5",
        "7abcd53ff88a7fa6f65e501e6546ed5be5e6f2db01a1d2c0717451dc1917d39b",
        ("nl", 64), ("Romulus",)),
}

ALIASES = {
    "isap": "ascon",
    "photon-beetle": "present",
    "photon": "present",
    "elephant": "spongent",
    "romulus": "skinny8",
    "skinny": "skinny8",
    "gift-cofb": "gift",
}

# finalist cipher -> builtin id
FINALISTS = {
    "Romulus": "skinny8",
    "Ascon": "ascon",
    "ISAP": "ascon",
    "Elephant": "spongent",
    "GIFT-COFB": "gift",
    "Photon-Beetle": "present",
}

BUILTIN_IDS = tuple(_ENTRIES)


def resolve(name):
    key = name.strip().lower()
    key = ALIASES.get(key, key)
    if key not in _ENTRIES:
        known = ", ".join(sorted(set(_ENTRIES) | set(ALIASES)))
        raise SBoxError(f"unknown builtin {name!r} (known: {known})")
    return key


def entry(name):
    return _ENTRIES[resolve(name)]


def _check_metric(s, metric):
    from . import differential, linear
    fn = {"nl": linear.nonlinearity,
          "du": differential.differential_uniformity,
          "dbn": differential.differential_branch_number}[metric]
    return fn(s)


@lru_cache(maxsize=None)
def builtin(name):
    """Load a builtin S-box, verifying checksum, bijectivity, balance and one metric."""
    e = entry(name)
    text = resources.files("sboxkit").joinpath("data").joinpath(f"{e.id}.txt").read_text("utf-8")
    s = parse_sbox(text, "list", name=e.id, source=f"builtin:{e.id}")
    digest = hashlib.sha256(serialize_sbox(s).encode()).hexdigest()
    if digest != e.sha256:
        raise SBoxError(f"checksum mismatch for builtin {e.id}")
    if not is_bijective(s) or not is_balanced(s):
        raise SBoxError(f"builtin {e.id} failed its structural check")
    metric, expected = e.check
    got = _check_metric(s, metric)
    if got != expected:
        raise SBoxError(f"builtin {e.id}: {metric}={got}, expected {expected}")
    return s


def list_builtins():
    """(id, n, m, ciphers, citation, doi) for every builtin."""
    rows = []
    for key, e in _ENTRIES.items():
        s = builtin(key)
        rows.append((key, s.n, s.m, e.ciphers, e.citation, e.doi))
    return rows
