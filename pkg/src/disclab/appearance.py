"""Index of appearance z(m) of m in U(k), and the sets A_k, B_k.

z(m) is the least n >= 1 with m | U_n(k).  ``z_of`` computes it from the
factorisation of m (prime z by divisor search, lifting to prime powers, lcm
across coprime parts); ``z_brute`` and ``z_brute_table`` scan the sequence
directly and serve as the oracle.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from disclab.bigmod import (DEFAULT_FACTOR_BOUND, LucasParams, block_moduli,
                            divisors, factorize, is_prime, legendre,
                            lucas_u_mod, require_prime, residue_columns)
from disclab.errors import InconsistencyError


@dataclass(frozen=True)
class PrimePowerZ:
    p: int
    b: int
    z_pb: int
    c: Optional[int]  # None for p = 2


@dataclass(frozen=True)
class AppearanceResult:
    m: int
    z: int
    breakdown: Tuple[PrimePowerZ, ...]
    method: str  # "formula" or "brute"


@dataclass(frozen=True)
class SetMembership:
    m: int
    in_A: bool
    in_B: bool
    witness: Optional[str] = None

    @property
    def positive(self) -> bool:
        return self.in_A or self.in_B


@dataclass(frozen=True)
class AlphaEstimate:
    value: Fraction
    q: Optional[int]
    bound_only: bool


# ---------------------------------------------------------------------------
# Formula route
# ---------------------------------------------------------------------------

def _zero_at(params: LucasParams, t: int, p: int) -> bool:
    return lucas_u_mod(params, t, p) == 0


@lru_cache(maxsize=65536)
def _z_of_prime_cached(k: int, p: int) -> int:
    params = LucasParams(k)
    if params.delta % p == 0:
        return p
    e = legendre(params.kk1, p)
    bound = (p - e) // 2
    # z(p) | (p+1)/4 when p = 3 mod 4, ((k+1)/p) = 1 and (k/p) = -1
    if (e == -1 and p % 4 == 3
            and legendre(params.k + 1, p) == 1 and legendre(params.k, p) == -1):
        bound = (p + 1) // 4
    for t in divisors(bound):
        if _zero_at(params, t, p):
            return t
    raise InconsistencyError(
        f"k={k}: no divisor of {bound} is the index of appearance of {p}")


def z_of_prime(params: LucasParams, p: int) -> int:
    """z(p) for an odd prime p.

    If p divides the discriminant the answer is p.  Otherwise z(p) divides
    (p - e)/2 with e = (k(k+1)/p), so the smallest divisor t of that bound
    with U_t = 0 mod p is z(p).
    """
    require_prime(p, odd=True)
    return _z_of_prime_cached(params.k, p)


def z_of_prime_power(params: LucasParams, p: int, b: int) -> Tuple[int, int]:
    """(z(p^b), c) with c = nu_p(U_{z(p)}) capped at b+1.

    z(p^b) = p^max(b-c, 0) * z(p); only min(c, b) matters, so U_{z(p)} is
    reduced mod p^(b+2) instead of computed exactly.
    """
    if b < 1:
        raise ValueError(f"exponent must be >= 1, got {b}")
    zp = z_of_prime(params, p)
    r = lucas_u_mod(params, zp, p ** (b + 2))
    if r == 0:
        c = b + 1
    else:
        c = 0
        while r % p == 0 and c < b + 1:
            r //= p
            c += 1
    if c < 1:
        raise InconsistencyError(f"k={params.k}: U_z({p}) not divisible by {p}")
    return p ** max(b - c, 0) * zp, c


def z_of(params: LucasParams, m: int, factor_bound: int = DEFAULT_FACTOR_BOUND) -> AppearanceResult:
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    parts = []
    z = 1
    for p, b in factorize(m, factor_bound):
        if p == 2:
            # U_i = U_j mod 2^a forces i = j mod 2^a
            zpb, c = 2 ** b, None
        else:
            zpb, c = z_of_prime_power(params, p, b)
        parts.append(PrimePowerZ(p, b, zpb, c))
        z = math.lcm(z, zpb)
    return AppearanceResult(m, z, tuple(parts), "formula")


# ---------------------------------------------------------------------------
# Brute-force route
# ---------------------------------------------------------------------------

def z_brute(params: LucasParams, m: int) -> int:
    """Smallest n >= 1 with U_n = 0 mod m, by linear scan (stops by n = m)."""
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    c = params.coeff % m
    a, b = 1 % m, c  # U_1, U_2
    for n in range(1, m + 1):
        if a == 0:
            return n
        a, b = b, (c * b - a) % m
    raise InconsistencyError(f"k={params.k}: no zero of U mod {m} among U_1..U_{m}")


def _z_block(params: LucasParams, mods: List[int]) -> np.ndarray:
    table = residue_columns(params, mods, max(mods) + 1)
    hit = table[1:] == 0
    first = hit.argmax(axis=0) + 1
    if not hit.any(axis=0).all():
        raise InconsistencyError(f"k={params.k}: some modulus in {mods[0]}..{mods[-1]} has z > m")
    return first


def z_brute_table(params: LucasParams, m_max: int, threads: int = 1) -> np.ndarray:
    """Array z with z[m] = z_brute(params, m) for 1 <= m <= m_max (z[0] unused)."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    blocks = block_moduli(range(1, m_max + 1))
    out = np.zeros(m_max + 1, dtype=np.int64)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        for mods, vals in zip(blocks, pool.map(lambda ms: _z_block(params, ms), blocks)):
            out[mods[0]:mods[-1] + 1] = vals
    return out


# ---------------------------------------------------------------------------
# Special primes and the sets A_k, B_k
# ---------------------------------------------------------------------------

def is_special(params: LucasParams, p: int) -> bool:
    """p | k(k+1) and p^2 | U_p."""
    require_prime(p)
    if params.kk1 % p:
        return False
    return lucas_u_mod(params, p, p * p) == 0


def membership(params: LucasParams, m: int, factor_bound: int = DEFAULT_FACTOR_BOUND,
               as_stated: bool = False) -> SetMembership:
    """Decide m in A_k (odd) or m in B_k (even).

    A_k: odd m whose primes divide k, and 9 does not divide m when k = 6 mod 9.
    B_k: even m whose primes divide k(k+1), and 9 does not divide m when 3 is
    special (k = 2 or 6 mod 9).  This makes B_k exactly the even m with
    z(m) = m.  ``as_stated=True`` applies the 9-exclusion to B_k only for
    k = 2 mod 9, which admits m = 18 at k = 6 although z(18) = 6 there.
    """
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    k = params.k
    primes = [p for p, _ in factorize(m, factor_bound)]
    if m % 2:
        for p in primes:
            if k % p:
                return SetMembership(m, False, False, f"prime {p} does not divide k")
        if k % 9 == 6 and m % 9 == 0:
            return SetMembership(m, False, False, "9 | m with k = 6 mod 9")
        return SetMembership(m, True, False)
    for p in primes:
        if params.kk1 % p:
            return SetMembership(m, False, False, f"prime {p} does not divide k(k+1)")
    nine_excluded = (2,) if as_stated else (2, 6)
    if k % 9 in nine_excluded and m % 9 == 0:
        return SetMembership(m, False, False, f"9 | m with k = {k % 9} mod 9")
    return SetMembership(m, False, True)


def in_prime_support(m: int, r: int) -> bool:
    """m is in P(r): every prime factor of m divides r."""
    g = math.gcd(m, r)
    while g > 1:
        m //= g
        g = math.gcd(m, g)
    return m == 1


def full_appearance_set(params: LucasParams, m: int) -> bool:
    """m is composed of primes of k(k+1), and 9 | m only if 3 is not special.

    These are exactly the m with z(m) = m.
    """
    if not in_prime_support(m, params.kk1):
        return False
    if m % 9 == 0 and is_special(params, 3):
        return False
    return True


def alpha_k_empirical(params: LucasParams, prime_limit: int) -> AlphaEstimate:
    """Upper estimate of the gap constant: sup z(m)/m over m with z(m) < m.

    Returns 2/3 when k = 1 mod 3.  Otherwise (q+1)/(2q) for the smallest odd
    prime q <= prime_limit with z(q) = (q+1)/2, or the bound 3/5 flagged
    ``bound_only`` when the window holds no such prime.
    """
    if prime_limit < 3:
        raise ValueError("prime_limit must be >= 3")
    if params.k % 3 == 1:
        return AlphaEstimate(Fraction(2, 3), 3, False)
    for q in range(3, prime_limit + 1, 2):
        if is_prime(q) and z_of_prime(params, q) == (q + 1) // 2:
            return AlphaEstimate(Fraction(q + 1, 2 * q), q, False)
    return AlphaEstimate(Fraction(3, 5), None, True)
