"""S-unit enumeration and interval-gap checks.

S-units here are products of powers of a fixed prime basis, optionally with
minimum exponents, forced evenness, or 9 excluded.  Ordering is done with
exact integer comparisons in a min-heap; no logarithms are involved.
"""
from __future__ import annotations

import bisect
import heapq
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

from disclab.bigmod import is_prime


@dataclass(frozen=True)
class SUnitSpec:
    primes: Tuple[int, ...]
    min_exponents: Tuple[int, ...] = field(default=())
    require_even: bool = False
    forbid_nine: bool = False

    def __post_init__(self):
        primes = tuple(self.primes)
        if not primes:
            raise ValueError("prime basis must be non-empty")
        if len(set(primes)) != len(primes):
            raise ValueError(f"primes must be distinct: {primes}")
        for p in primes:
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
        mins = tuple(self.min_exponents) or (0,) * len(primes)
        if len(mins) != len(primes) or min(mins) < 0:
            raise ValueError("min_exponents must be non-negative, one per prime")
        if self.require_even and 2 not in primes:
            raise ValueError("require_even needs 2 in the basis")
        if self.forbid_nine and 3 in primes:
            if mins[primes.index(3)] >= 2 or primes == (3,):
                raise ValueError("forbid_nine leaves only finitely many S-units")
        object.__setattr__(self, "primes", primes)
        object.__setattr__(self, "min_exponents", mins)

    @property
    def base(self) -> int:
        out = 1
        for p, e in zip(self.primes, self.min_exponents):
            out *= p ** e
        return out

    def admits(self, x: int) -> bool:
        """x is a product of basis powers meeting every constraint."""
        if x < 1:
            return False
        for p, lo in zip(self.primes, self.min_exponents):
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            if e < lo:
                return False
        if x != 1:
            return False
        return True

    def keeps(self, x: int) -> bool:
        if self.require_even and x % 2:
            return False
        if self.forbid_nine and x % 9 == 0:
            return False
        return True


def sunit_iter(spec: SUnitSpec, start: int = 1) -> Iterator[int]:
    """Admissible S-units >= start in increasing order (heap merge)."""
    heap = [spec.base]
    seen = {spec.base}
    while True:
        x = heapq.heappop(heap)
        for p in spec.primes:
            y = x * p
            if y not in seen:
                seen.add(y)
                heapq.heappush(heap, y)
        seen.discard(x)
        if x >= start and spec.keeps(x):
            yield x


def sunit_next(spec: SUnitSpec, x: int) -> int:
    """Smallest admissible S-unit >= x."""
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    return next(sunit_iter(spec, x))


def sunits_upto(spec: SUnitSpec, limit: int) -> List[int]:
    out = []
    for x in sunit_iter(spec):
        if x > limit:
            return out
        out.append(x)


_TWO_FIVE = SUnitSpec((2, 5), (1, 0))


def gap_check_25(n: int) -> Tuple[bool, Optional[int]]:
    """Does [5n/3, 37n/19) contain some 2^a 5^b with a >= 1?

    Returns (found, witness); the witness is the smallest such number in the
    interval, or None.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    lo = -(-5 * n // 3)
    w = sunit_next(_TWO_FIVE, lo)
    if 19 * w < 37 * n:
        return True, w
    return False, None


def gap_failures_25(n_from: int, n_to: int) -> List[int]:
    """All n in [n_from, n_to] for which gap_check_25 fails."""
    if n_from < 1 or n_from > n_to:
        raise ValueError("need 1 <= n_from <= n_to")
    units = sunits_upto(_TWO_FIVE, 2 * n_to + 2)
    out = []
    for n in range(n_from, n_to + 1):
        i = bisect.bisect_left(units, -(-5 * n // 3))
        if 19 * units[i] >= 37 * n:
            out.append(n)
    return out


def gap_check_general(p: int, ratio_num: int, ratio_den: int,
                      n_from: int, n_to: int) -> List[int]:
    """Every n in [n_from, n_to] whose interval [n, n*ratio) holds no even 2^a p^b."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if ratio_den < 1 or ratio_num <= ratio_den:
        raise ValueError("ratio must exceed 1")
    if n_from < 1 or n_from > n_to:
        raise ValueError("need 1 <= n_from <= n_to")
    units = sunits_upto(SUnitSpec((2, p), (1, 0)), 2 * n_to + 2)
    out = []
    for n in range(n_from, n_to + 1):
        i = bisect.bisect_left(units, n)
        if units[i] * ratio_den >= n * ratio_num:
            out.append(n)
    return out


def thirty_seven_exponents() -> List[Tuple[int, int]]:
    """(i, e_i) for i = 1..5, e_i the unique e with 2*37^(i-1)*19 <= 2^e < 2*37^i."""
    out = []
    for i in range(1, 6):
        lo, hi = 2 * 37 ** (i - 1) * 19, 2 * 37 ** i
        hits = [e for e in range(hi.bit_length() + 1) if lo <= 2 ** e < hi]
        if len(hits) != 1:
            raise ValueError(f"i={i}: expected one exponent, found {hits}")
        out.append((i, hits[0]))
    return out


def levi_ben_gerson(k_max: int) -> List[Tuple[int, int, int]]:
    """All (k, a, b) with k <= k_max and k(k+1) = 2^a 3^b."""
    out = []
    for k in range(1, k_max + 1):
        x = k * (k + 1)
        a = (x & -x).bit_length() - 1
        x >>= a
        b = 0
        while x % 3 == 0:
            x //= 3
            b += 1
        if x == 1:
            out.append((k, a, b))
    return out
