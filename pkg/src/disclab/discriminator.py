"""Discriminator D_k(n): the least m for which U_0..U_{n-1} are distinct mod m.

Brute force (``disc_brute``, ``disc_brute_table``) is the oracle.  The closed
forms are ``disc_closed_k1``, ``disc_closed_k2`` and ``disc_closed_general``;
``disc_auto`` runs the appropriate one against the oracle.  The set M of
exponents b for which 2^a 5^b occurs as a k=1 value is decided in fixed-point
arithmetic by ``m_set_member``.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from disclab.appearance import membership
from disclab.bigmod import (LucasParams, block_moduli, iter_u_mod,
                            residue_columns)
from disclab.errors import InconsistencyError, UndecidableError

# Above this modulus the occupancy table is replaced by a sort.
OCCUPANCY_CAP = 1 << 24

CLASSIFICATIONS = ("power_of_two", "two_a_five_b", "in_A", "in_B", "exceptional_candidate")
METHODS = ("brute", "closed_k1", "closed_k2", "closed_general", "auto")


@dataclass(frozen=True)
class DiscriminatorRecord:
    k: int
    n: int
    value: int
    method: str
    classification: str
    certified: bool
    candidate: Optional[int] = None  # closed-form value when it lost to the oracle


def _is_power_of_two(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0


def _strip(x: int, p: int) -> Tuple[int, int]:
    e = 0
    while x % p == 0:
        x //= p
        e += 1
    return x, e


def classify(params: LucasParams, value: int) -> str:
    if params.k == 1:
        if _is_power_of_two(value):
            return "power_of_two"
        rest, a = _strip(value, 2)
        rest, b = _strip(rest, 5)
        if rest == 1 and a >= 1 and b >= 1:
            return "two_a_five_b"
        return "exceptional_candidate"
    mem = membership(params, value)
    if mem.in_A:
        return "in_A"
    if mem.in_B:
        return "in_B"
    return "exceptional_candidate"


def _record(params, n, value, method, certified=False, candidate=None):
    return DiscriminatorRecord(params.k, n, value, method, classify(params, value),
                               certified, candidate)


# ---------------------------------------------------------------------------
# Brute force
# ---------------------------------------------------------------------------

def discriminates(params: LucasParams, n: int, m: int) -> bool:
    """True iff U_0, ..., U_{n-1} are pairwise distinct mod m."""
    if n < 1 or m < 1:
        raise ValueError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    if n > m:
        return False
    stream = iter_u_mod(params, m)
    if m <= OCCUPANCY_CAP:
        seen = bytearray(m)
        for _ in range(n):
            r = next(stream)
            if seen[r]:
                return False
            seen[r] = 1
        return True
    residues = sorted(next(stream) for _ in range(n))
    return all(x != y for x, y in zip(residues, residues[1:]))


def disc_brute(params: LucasParams, n: int) -> DiscriminatorRecord:
    """Smallest m >= n that discriminates the first n terms.

    The power of two in [n, 2n) always works, so the scan stops there.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    for m in range(n, 2 * n):
        if discriminates(params, n, m):
            return _record(params, n, m, "brute", certified=True)
    raise InconsistencyError(f"k={params.k}, n={n}: no modulus in [n, 2n) discriminates")


def _collision_block(params: LucasParams, mods: List[int]) -> np.ndarray:
    length = max(mods) + 1
    table = residue_columns(params, mods, length)
    order = np.argsort(table, axis=0, kind="stable")
    ordered = np.take_along_axis(table, order, axis=0)
    repeat = ordered[1:] == ordered[:-1]
    # stable sort keeps equal residues in index order: order[1:] at a repeat
    # is a later occurrence, and the smallest such index is the first collision
    return np.where(repeat, order[1:], length).min(axis=0)


def collision_indices(params: LucasParams, m_max: int, threads: int = 1) -> np.ndarray:
    """Array c with c[m] = number of leading terms pairwise distinct mod m.

    m discriminates U_0..U_{n-1} exactly when n <= c[m].
    """
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    blocks = block_moduli(range(1, m_max + 1))
    out = np.zeros(m_max + 1, dtype=np.int64)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        for mods, vals in zip(blocks, pool.map(lambda ms: _collision_block(params, ms), blocks)):
            out[mods[0]:mods[-1] + 1] = vals
    return out


def disc_brute_table(params: LucasParams, n_max: int, threads: int = 1) -> List[int]:
    """[D_k(1), ..., D_k(n_max)] by exhaustive residue scans (index 0 is n=1)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    reach = collision_indices(params, 2 * n_max, threads)
    values = []
    m = 1
    for n in range(1, n_max + 1):
        # D_k is non-decreasing, so the search resumes from the previous value
        m = max(m, n)
        while reach[m] < n:
            m += 1
            if m >= 2 * n:
                raise InconsistencyError(
                    f"k={params.k}, n={n}: no modulus in [n, 2n) discriminates")
        values.append(m)
    return values


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def smallest_power_of_two_at_least(n: int) -> int:
    return 1 << max(n - 1, 0).bit_length()


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def w_n(n: int) -> int:
    """Smallest 2^a 5^b (a, b >= 1) with 3 * 2^a 5^b >= 5n."""
    best = None
    five = 5
    while True:
        need = _ceil_div(5 * n, 3 * five)
        cand = five * max(2, smallest_power_of_two_at_least(need))
        if best is None or cand < best:
            best = cand
        if 3 * 2 * five >= 5 * n:
            return best
        five *= 5


def disc_closed_k1(n: int) -> DiscriminatorRecord:
    """D_1(n) = min(v_n, w_n)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    params = LucasParams(1)
    if n == 1:
        return _record(params, 1, 1, "closed_k1")
    value = min(smallest_power_of_two_at_least(n), w_n(n))
    return _record(params, n, value, "closed_k1")


def disc_closed_k2(n: int) -> DiscriminatorRecord:
    """D_2(n) = min(2^e, 3 * 2^f) with e >= 0, f >= 1 minimal."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    two_e = smallest_power_of_two_at_least(n)
    three_two_f = 3 * max(2, smallest_power_of_two_at_least(_ceil_div(n, 3)))
    return _record(LucasParams(2), n, min(two_e, three_two_f), "closed_k2")


def ab_next(params: LucasParams, n: int) -> int:
    """Smallest m >= n lying in A_k or B_k."""
    m = n
    while not membership(params, m).positive:
        m += 1
    return m


def disc_closed_general(params: LucasParams, n: int) -> Tuple[DiscriminatorRecord, bool]:
    """Upper bound min{m >= n : m in A_k u B_k} for k > 2.

    The bound is exact when it lies in [n, 3n/2); the flag reports that.
    """
    if params.k <= 2:
        raise ValueError(f"general closed form needs k > 2, got k={params.k}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    m = ab_next(params, n)
    return _record(params, n, m, "closed_general"), 2 * m < 3 * n


def disc_closed(params: LucasParams, n: int) -> Tuple[DiscriminatorRecord, bool]:
    """k-appropriate closed form and whether it is asserted exact."""
    if params.k == 1:
        return disc_closed_k1(n), True
    if params.k == 2:
        return disc_closed_k2(n), True
    return disc_closed_general(params, n)


def disc_auto(params: LucasParams, n: int, check: bool = True) -> DiscriminatorRecord:
    """Closed form, cross-checked against the oracle.

    With ``check`` the brute value is always computed; a mismatch where the
    closed form is asserted exact raises InconsistencyError, otherwise the
    brute value wins and the closed-form value is kept in ``candidate``.
    Without ``check`` an uncertified k > 2 bound still falls back to brute.
    """
    closed, exact = disc_closed(params, n)
    if not check and exact:
        return _record(params, n, closed.value, "auto")
    return _reconcile(params, n, closed.value, exact, disc_brute(params, n).value)


def _reconcile(params, n, closed, exact, brute):
    if brute == closed:
        return _record(params, n, brute, "auto", certified=True)
    if exact:
        raise InconsistencyError(
            f"k={params.k}, n={n}: closed form {closed} != brute {brute}")
    if brute > closed:
        raise InconsistencyError(
            f"k={params.k}, n={n}: brute {brute} exceeds upper bound {closed}")
    return _record(params, n, brute, "auto", certified=True, candidate=closed)


def disc_auto_range(params: LucasParams, n_from: int, n_to: int,
                    threads: int = 1) -> List[DiscriminatorRecord]:
    """disc_auto for every n in [n_from, n_to], sharing one brute table."""
    if n_from < 1 or n_from > n_to:
        raise ValueError("need 1 <= n_from <= n_to")
    brute = disc_brute_table(params, n_to, threads)
    out = []
    for n in range(n_from, n_to + 1):
        closed, exact = disc_closed(params, n)
        out.append(_reconcile(params, n, closed.value, exact, brute[n - 1]))
    return out


# ---------------------------------------------------------------------------
# The exponent set M and the image of D_1
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MSetParams:
    """log5/log2 and 1 - log(6/5)/log2 as fixed-point integers scaled by 2^precision_bits."""

    theta: int
    threshold: int
    precision_bits: int

    @classmethod
    def create(cls, precision_bits: int = 192) -> "MSetParams":
        if precision_bits < 128:
            raise ValueError(f"precision_bits must be >= 128, got {precision_bits}")
        with mpmath.workprec(precision_bits + 64):
            scale = mpmath.mpf(2) ** precision_bits
            log2 = mpmath.log(2)
            theta = mpmath.floor(mpmath.log(5) / log2 * scale)
            threshold = mpmath.floor((1 - mpmath.log(mpmath.mpf(6) / 5) / log2) * scale)
        return cls(int(theta), int(threshold), precision_bits)


DEFAULT_MSET = MSetParams.create(192)


def m_set_member(b: int, params: MSetParams = DEFAULT_MSET) -> bool:
    """Decide frac(b * log5/log2) >= 1 - log(6/5)/log2 in fixed point.

    Raises UndecidableError when the fractional part lies within the
    precision margin of the threshold.
    """
    if b < 1:
        raise ValueError(f"b must be >= 1, got {b}")
    bits = params.precision_bits
    frac = (b * params.theta) % (1 << bits)
    # truncation error of b*theta is < b ulps, of the threshold < 1 ulp
    margin = max(b + 1, 1 << (bits - bits // 2))
    gap = frac - params.threshold
    if abs(gap) <= margin:
        raise UndecidableError(f"b={b}: fractional part within 2^-{bits // 2} of threshold")
    return gap > 0


def m_set_member_exact(b: int) -> bool:
    """Integer form of the M test: 3 * 5^(b-1) >= the largest power of two <= 5^b."""
    if b < 1:
        raise ValueError(f"b must be >= 1, got {b}")
    five_b = 5 ** b
    return (3 * five_b // 5).bit_length() >= five_b.bit_length()


@dataclass(frozen=True)
class MDensity:
    fraction: Fraction
    members: int
    count: int
    undecidable: Tuple[int, ...]

    def __float__(self):
        return float(self.fraction)


def m_density(count: int, params: MSetParams = DEFAULT_MSET) -> MDensity:
    """|{b <= count : b in M}| / count, with undecidable b excluded and listed."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    members = 0
    skipped = []
    for b in range(1, count + 1):
        try:
            members += m_set_member(b, params)
        except UndecidableError:
            skipped.append(b)
    decided = count - len(skipped)
    frac = Fraction(members, decided) if decided else Fraction(0)
    return MDensity(frac, members, count, tuple(skipped))


def image_k1(limit: int, params: MSetParams = DEFAULT_MSET) -> set:
    """{1} u {2^a 5^b <= limit : a >= 1, b = 0 or b in M}."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    out = {1}
    five, b = 1, 0
    while 2 * five <= limit:
        if b == 0 or m_set_member(b, params):
            v = 2 * five
            while v <= limit:
                out.add(v)
                v *= 2
        five *= 5
        b += 1
    return out


def exceptional_intervals_k1(a_list: Sequence[int]) -> List[Tuple[Tuple[int, int], int]]:
    """([2^a + 1, 2^(a-6) * 75], 2^(a-6) * 125) for each a >= 7, checked on the closed form."""
    out = []
    for a in a_list:
        if a < 7:
            raise ValueError(f"a must be >= 7, got {a}")
        lo, hi, value = 2 ** a + 1, 2 ** (a - 6) * 75, 2 ** (a - 6) * 125
        for n in (lo, (lo + hi) // 2, hi):
            got = disc_closed_k1(n).value
            if got != value:
                raise InconsistencyError(
                    f"a={a}: D_1({n}) = {got}, expected plateau value {value}")
        out.append(((lo, hi), value))
    return out


# ---------------------------------------------------------------------------
# Exceptional values F_k
# ---------------------------------------------------------------------------

def fk_extract(params: LucasParams, n_max: int, threads: int = 1) -> List[DiscriminatorRecord]:
    """Distinct brute values D_k(n), n <= n_max, lying outside A_k u B_k.

    One record per value, at the smallest n attaining it.
    """
    if params.k < 2:
        raise ValueError(f"fk_extract needs k > 1, got k={params.k}")
    seen = set()
    out = []
    for n, value in enumerate(disc_brute_table(params, n_max, threads), start=1):
        if value in seen:
            continue
        seen.add(value)
        if not membership(params, value).positive:
            out.append(_record(params, n, value, "brute", certified=True))
    return out
