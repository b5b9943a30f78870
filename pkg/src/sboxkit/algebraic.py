"""Univariate interpolation polynomial of an S-box over GF(2^n)."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import PreconditionError, SBoxError

# pinned per-width moduli; other widths use the smallest irreducible
DEFAULT_MODULI = {4: 0x13, 5: 0x25, 8: 0x11B}

# interpolation is quadratic in 2^n
MAX_IP_BITS = 10


def _poly_mod(a, b):
    """Remainder of GF(2)[X] division, polynomials encoded as ints."""
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def is_irreducible(poly):
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(2, 1 << (deg // 2 + 1)):
        if _poly_mod(poly, d) == 0:
            return False
    return True


def smallest_irreducible(n):
    for poly in range(1 << n, 1 << (n + 1)):
        if is_irreducible(poly):
            return poly
    raise SBoxError(f"no irreducible polynomial of degree {n}")  # unreachable


def default_modulus(n):
    return DEFAULT_MODULI.get(n) or smallest_irreducible(n)


@dataclass(frozen=True)
class FieldSpec:
    n: int
    modulus: int

    def __post_init__(self):
        if self.modulus.bit_length() - 1 != self.n:
            raise SBoxError(f"modulus {self.modulus:#x} does not have degree {self.n}")
        if not is_irreducible(self.modulus):
            raise SBoxError(f"modulus {self.modulus:#x} is reducible")

    @classmethod
    def default(cls, n):
        return cls(n, default_modulus(n))

    @property
    def order(self):
        return 1 << self.n

    def mul(self, a, b):
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> self.n:
                a ^= self.modulus
        return r

    def tables(self):
        return _log_tables(self.n, self.modulus)


@lru_cache(maxsize=16)
def _log_tables(n, modulus):
    """(exp, log) tables relative to the smallest generator of GF(2^n)*."""
    f = FieldSpec(n, modulus)
    q1 = (1 << n) - 1
    for g in range(2 if n > 1 else 1, 1 << n):
        exp = [1] * (2 * q1)
        seen = {1}
        ok = True
        for k in range(1, q1):
            exp[k] = f.mul(exp[k - 1], g)
            if exp[k] in seen:
                ok = False
                break
            seen.add(exp[k])
        if ok:
            for k in range(q1, 2 * q1):
                exp[k] = exp[k - q1]
            log = [0] * (1 << n)
            for k in range(q1):
                log[exp[k]] = k
            return exp, log
    raise SBoxError("no generator found")  # unreachable for a field


class _Arith:
    def __init__(self, spec):
        self.exp, self.log = spec.tables()
        self.q1 = spec.order - 1

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.exp[(self.q1 - self.log[a]) % self.q1]

    def pow(self, a, e):
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self.exp[(self.log[a] * e) % self.q1]


@dataclass(frozen=True)
class FieldPolynomial:
    """Coefficients in increasing powers, trailing zeros stripped."""

    field: FieldSpec
    coefficients: tuple = ()

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(int(c) for c in coeffs))

    @property
    def degree(self):
        return max(len(self.coefficients) - 1, 0)

    @property
    def term_count(self):
        return sum(1 for c in self.coefficients if c)

    def __call__(self, x):
        ar = _Arith(self.field)
        acc = 0
        for c in reversed(self.coefficients):
            acc = ar.mul(acc, x) ^ c
        return acc

    def __str__(self):
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if not c:
                continue
            if k == 0:
                terms.append(f"{c:#x}")
            elif k == 1:
                terms.append(f"{c:#x}*x")
            else:
                terms.append(f"{c:#x}*x^{k}")
        return " + ".join(terms) if terms else "0"

    def to_dict(self):
        return {"modulus": hex(self.field.modulus), "coefficients": list(self.coefficients)}


def _check(s, spec):
    if s.n != s.m:
        raise PreconditionError("interpolation polynomial needs n = m")
    if spec.n != s.n:
        raise PreconditionError(f"field degree {spec.n} does not match n={s.n}")
    if s.n > MAX_IP_BITS:
        raise PreconditionError(f"interpolation is limited to n <= {MAX_IP_BITS}")


def interpolation_polynomial(s, spec=None, method="lagrange"):
    """Unique P of degree < 2^n with P(x) = S(x) for every field element x.

    ``lagrange`` sums y_i * prod_{j != i} (X - x_j) / (x_i - x_j).
    ``transform`` uses the closed form over the whole field:
    c_0 = S(0), c_k = sum_{a != 0} S(a) a^(q-1-k), c_{q-1} = sum_a S(a).
    """
    spec = spec or FieldSpec.default(s.n)
    _check(s, spec)
    if method == "lagrange":
        coeffs = _lagrange(s, spec)
    elif method == "transform":
        coeffs = _transform(s, spec)
    else:
        raise ValueError(f"unknown method {method!r}")
    return FieldPolynomial(spec, tuple(coeffs))


def _lagrange(s, spec):
    ar = _Arith(spec)
    q = spec.order
    nodes = list(range(q))
    # master polynomial prod_j (X - x_j); subtraction is XOR
    master = [1]
    for xj in nodes:
        nxt = [0] * (len(master) + 1)
        for k, c in enumerate(master):
            nxt[k + 1] ^= c
            nxt[k] ^= ar.mul(c, xj)
        master = nxt
    result = [0] * q
    for xi in nodes:
        yi = s.table[xi]
        if yi == 0:
            continue
        # synthetic division master / (X - xi)
        quot = [0] * q
        carry = 0
        for k in range(q, 0, -1):
            carry = master[k] ^ ar.mul(carry, xi) if k < q else master[k]
            quot[k - 1] = carry
        denom = 1
        for xj in nodes:
            if xj != xi:
                denom = ar.mul(denom, xi ^ xj)
        factor = ar.mul(yi, ar.inv(denom))
        for k in range(q):
            if quot[k]:
                result[k] ^= ar.mul(factor, quot[k])
    return result


def _transform(s, spec):
    exp, log = (np.array(t, dtype=np.int64) for t in spec.tables())
    q = spec.order
    q1 = q - 1
    ys = np.array(s.table[1:], dtype=np.int64)
    xs = np.arange(1, q)
    live = ys != 0
    ly, lx = log[ys[live]], log[xs[live]]
    coeffs = [s.table[0]]
    for k in range(1, q1):
        terms = exp[(ly + (q1 - k) * lx) % q1]
        coeffs.append(int(np.bitwise_xor.reduce(terms)) if terms.size else 0)
    total = 0
    for y in s.table:
        total ^= y
    coeffs.append(total)
    return coeffs


def ip_summary(p):
    """``(degree, nonzero term count)``; the zero polynomial gives (0, 0)."""
    return p.degree, p.term_count
