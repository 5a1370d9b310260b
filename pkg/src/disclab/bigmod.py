"""Exact and modular arithmetic for the Lucas family U(k), V(k).

The family is

    U_{n+2}(k) = (4k+2) U_{n+1}(k) - U_n(k),   U_0 = 0, U_1 = 1,

with companion V(k) (V_0 = 2, V_1 = 4k+2) and dominant root
alpha(k) = 2k+1 + 2*sqrt(k(k+1)), an element of Z[sqrt(k(k+1))].

Scalar routines work on Python integers of any size.  The ``residue_columns``
kernel evaluates many moduli at once with numpy and backs the brute-force
scans in :mod:`disclab.discriminator` and :mod:`disclab.appearance`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from disclab.errors import CapacityError

# Exact U_n has about n*log2(4k+2) bits; refuse indices that would exhaust memory.
MAX_EXACT_INDEX = 10**7

DEFAULT_FACTOR_BOUND = 10**7

# Deterministic Miller-Rabin for n < 3.3e24 with these bases.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LucasParams:
    """Family index k of U(k)."""

    k: int

    def __post_init__(self):
        if isinstance(self.k, bool) or not isinstance(self.k, int):
            raise TypeError(f"k must be an int, got {type(self.k).__name__}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")

    @property
    def coeff(self) -> int:
        """The recurrence coefficient 4k+2."""
        return 4 * self.k + 2

    @property
    def delta(self) -> int:
        """Discriminant of x^2 - (4k+2)x + 1, equal to 16k(k+1)."""
        return 16 * self.k * (self.k + 1)

    @property
    def kk1(self) -> int:
        return self.k * (self.k + 1)


@dataclass(frozen=True)
class QuadIntMod:
    """The element a + b*sqrt(d) of Z[sqrt(d)] / (m).

    Residues are normalised to 0 <= a, b < m on construction, so -1 is
    stored as m-1.  d is not reduced to its square-free part.
    """

    a: int
    b: int
    d: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"modulus must be >= 1, got {self.m}")
        if self.d < 1:
            raise ValueError(f"d must be positive, got {self.d}")
        object.__setattr__(self, "a", self.a % self.m)
        object.__setattr__(self, "b", self.b % self.m)

    @classmethod
    def alpha(cls, params: LucasParams, m: int) -> "QuadIntMod":
        """alpha(k) = 2k+1 + 2*sqrt(k(k+1)) reduced mod m."""
        return cls(2 * params.k + 1, 2, params.kk1, m)

    @classmethod
    def one(cls, d: int, m: int) -> "QuadIntMod":
        return cls(1, 0, d, m)

    def is_one(self) -> bool:
        return self.b == 0 and self.a == 1 % self.m

    def is_minus_one(self) -> bool:
        return self.b == 0 and self.a == (-1) % self.m

    def __mul__(self, other: "QuadIntMod") -> "QuadIntMod":
        return quad_mul(self, other)

    def __pow__(self, e: int) -> "QuadIntMod":
        return quad_pow_mod(self, e)


@dataclass(frozen=True)
class SequenceWindow:
    params: LucasParams
    modulus: int
    terms: Tuple[int, ...]

    def __len__(self):
        return len(self.terms)


# ---------------------------------------------------------------------------
# Primality and factoring helpers
# ---------------------------------------------------------------------------

def is_prime(n: int) -> bool:
    """Miller-Rabin with a fixed base set.

    Deterministic below MR_DETERMINISTIC_LIMIT; a strong probable-prime test
    above it.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primality_certified(n: int) -> bool:
    """True if is_prime(n) is a proof rather than a probable-prime verdict."""
    return n < MR_DETERMINISTIC_LIMIT


def require_prime(p: int, odd: bool = False) -> None:
    if odd and p == 2:
        raise ValueError("p must be an odd prime, got 2")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def factorize(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> List[Tuple[int, int]]:
    """Prime factorisation of n >= 1 by trial division up to ``bound``.

    Returns [(p, e), ...] sorted by p.  A cofactor left over after trial
    division is accepted when it is provably prime; otherwise CapacityError.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p = 5
    step = 2
    while p * p <= n:
        if p > bound:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        if p * p > n or (is_prime(n) and primality_certified(n)):
            out.append((n, 1))
        else:
            raise CapacityError(
                f"cofactor {n} not factored by trial division up to {bound}")
    return out


def divisors(n: int) -> List[int]:
    """All positive divisors of n in increasing order."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def nu_p(x: int, p: int) -> int:
    """Exponent of the prime p in x (x != 0)."""
    if x == 0:
        raise ValueError("valuation of 0 is infinite")
    if p < 2:
        raise ValueError(f"invalid prime {p}")
    x = abs(x)
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, via Euler's criterion."""
    if p == 2 or p < 2:
        raise ValueError(f"p must be an odd prime, got {p}")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


# ---------------------------------------------------------------------------
# U and V
# ---------------------------------------------------------------------------

def _mat_mul(x, y, m):
    a, b, c, d = x
    e, f, g, h = y
    r = (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    if m is None:
        return r
    return tuple(t % m for t in r)


def _companion_power(coeff: int, n: int, m=None):
    """[[coeff, -1], [1, 0]]^n, optionally mod m (row-major 4-tuple)."""
    result = (1, 0, 0, 1)
    base = (coeff, -1, 1, 0)
    if m is not None:
        result = tuple(t % m for t in result)
        base = tuple(t % m for t in base)
    while n:
        if n & 1:
            result = _mat_mul(result, base, m)
        base = _mat_mul(base, base, m)
        n >>= 1
    return result


def _check_index(n: int) -> None:
    if n < 0:
        raise ValueError(f"index must be non-negative, got {n}")


def lucas_u(params: LucasParams, n: int) -> int:
    """Exact U_n(k)."""
    _check_index(n)
    if n > MAX_EXACT_INDEX:
        raise CapacityError(f"exact U_n refused for n={n} > {MAX_EXACT_INDEX}")
    # M^n = [[U_{n+1}, -U_n], [U_n, -U_{n-1}]]
    return _companion_power(params.coeff, n)[2]


def lucas_v(params: LucasParams, n: int) -> int:
    """Exact V_n(k) = alpha^n + alpha^-n."""
    _check_index(n)
    if n > MAX_EXACT_INDEX:
        raise CapacityError(f"exact V_n refused for n={n} > {MAX_EXACT_INDEX}")
    if n == 0:
        return 2
    u_next, _, u_n, _ = _companion_power(params.coeff, n)
    # V_n = 2 U_{n+1} - (4k+2) U_n
    return 2 * u_next - params.coeff * u_n


def lucas_u_mod(params: LucasParams, n: int, m: int) -> int:
    """U_n(k) mod m by 2x2 matrix square-and-multiply."""
    _check_index(n)
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    if m == 1:
        return 0
    return _companion_power(params.coeff, n, m)[2]


def lucas_uv_mod(params: LucasParams, n: int, m: int) -> Tuple[int, int]:
    """(U_n mod m, U_{n+1} mod m)."""
    _check_index(n)
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    u_next, _, u_n, _ = _companion_power(params.coeff, n, m)
    return u_n % m, u_next % m


def iter_u_mod(params: LucasParams, m: int) -> Iterable[int]:
    """Endless stream U_0 mod m, U_1 mod m, ..."""
    c = params.coeff % m
    a, b = 0, 1 % m
    while True:
        yield a
        a, b = b, (c * b - a) % m


def window_mod(params: LucasParams, n: int, m: int) -> SequenceWindow:
    """The first n residues U_0..U_{n-1} mod m, in one linear pass."""
    if n < 1:
        raise ValueError(f"window length must be >= 1, got {n}")
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    c = params.coeff % m
    terms = [0] * n
    a, b = 0, 1 % m
    for i in range(n):
        terms[i] = a
        a, b = b, (c * b - a) % m
    return SequenceWindow(params, m, tuple(terms))


# Moduli below this keep c*r - prev inside int64.
_INT64_MODULUS_LIMIT = 1 << 31


def residue_columns(params: LucasParams, moduli: Sequence[int], length: int) -> np.ndarray:
    """Table T with T[i, j] = U_i(k) mod moduli[j] for 0 <= i < length.

    Time runs down axis 0 so each recurrence step touches a contiguous row.
    """
    mods = np.asarray(moduli, dtype=np.int64)
    if mods.ndim != 1 or mods.size == 0:
        raise ValueError("moduli must be a non-empty 1-d sequence")
    if mods.min() < 1:
        raise ValueError("moduli must be >= 1")
    if int(mods.max()) >= _INT64_MODULUS_LIMIT:
        raise CapacityError("vectorised kernel limited to moduli < 2^31")
    coeff = np.array([params.coeff % int(m) for m in moduli], dtype=np.int64)
    table = np.empty((length, mods.size), dtype=np.int64)
    table[0] = 0
    if length > 1:
        table[1] = 1 % mods
    for i in range(2, length):
        table[i] = (coeff * table[i - 1] - table[i - 2]) % mods
    return table


def block_moduli(moduli: Sequence[int], cells: int = 1 << 22) -> List[List[int]]:
    """Split ascending moduli into blocks whose (m_max+1) x width tables stay near ``cells``."""
    blocks = []
    cur: List[int] = []
    for m in moduli:
        if cur and (m + 1) * (len(cur) + 1) > cells:
            blocks.append(cur)
            cur = []
        cur.append(m)
    if cur:
        blocks.append(cur)
    return blocks


# ---------------------------------------------------------------------------
# Z[sqrt d] / (m)
# ---------------------------------------------------------------------------

def quad_mul(x: QuadIntMod, y: QuadIntMod) -> QuadIntMod:
    if x.d != y.d or x.m != y.m:
        raise ValueError(f"ring mismatch: (d={x.d}, m={x.m}) vs (d={y.d}, m={y.m})")
    m = x.m
    return QuadIntMod((x.a * y.a + x.d * x.b * y.b) % m,
                      (x.a * y.b + y.a * x.b) % m, x.d, m)


def quad_pow_mod(x: QuadIntMod, e: int) -> QuadIntMod:
    if e < 0:
        raise ValueError(f"exponent must be non-negative, got {e}")
    result = QuadIntMod.one(x.d, x.m)
    base = x
    while e:
        if e & 1:
            result = quad_mul(result, base)
        base = quad_mul(base, base)
        e >>= 1
    return result


def quad_norm(x: QuadIntMod) -> int:
    """a^2 - d b^2 mod m."""
    return (x.a * x.a - x.d * x.b * x.b) % x.m

