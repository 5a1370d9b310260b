"""Named verification suites: every closed form against its oracle.

Each criterion is a function returning a CriterionResult; ``run_suite``
evaluates a named group.  The CLI ``verify`` command and the acceptance tests
both go through this module.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Dict, List

import numpy as np

from disclab.appearance import (full_appearance_set, is_special, membership,
                                z_brute_table, z_of, z_of_prime,
                                z_of_prime_power)
from disclab.bigmod import (LucasParams, QuadIntMod, is_prime, quad_pow_mod,
                            window_mod)
from disclab.discriminator import (DEFAULT_MSET, collision_indices,
                                   disc_brute_table, disc_closed_general,
                                   disc_closed_k1, disc_closed_k2, fk_extract,
                                   image_k1, m_density, m_set_member)
from disclab.errors import UndecidableError
from disclab.sunit import levi_ben_gerson, thirty_seven_exponents


@dataclass
class CriterionResult:
    key: str
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.key} {self.title} ({self.seconds:.1f}s): {self.detail}"


def _first(items, n=5):
    items = list(items)
    more = "" if len(items) <= n else f" ... (+{len(items) - n})"
    return ", ".join(map(str, items[:n])) + more


# ---------------------------------------------------------------------------
# 1-3: discriminator closed forms
# ---------------------------------------------------------------------------

def check_k1_closed_form(threads: int = 1) -> CriterionResult:
    start = time.perf_counter()
    brute = disc_brute_table(LucasParams(1), 2048, threads)
    problems = []
    mismatch = [n for n in range(2, 2049) if brute[n - 1] != disc_closed_k1(n).value]
    if mismatch:
        problems.append(f"closed form differs at n={_first(mismatch)}")
    plateaus = {250: (129, 150), 500: (257, 300), 1000: (513, 600)}
    for value, (lo, hi) in plateaus.items():
        got = [n for n in range(2, 2049) if brute[n - 1] == value]
        if got != list(range(lo, hi + 1)):
            problems.append(f"plateau {value} at n in [{got[0] if got else '-'}, "
                            f"{got[-1] if got else '-'}], expected [{lo}, {hi}]")
    not_pow2 = [n for n in range(2, 1025)
                if brute[n - 1] & (brute[n - 1] - 1) and not 129 <= n <= 150
                and not 257 <= n <= 300 and not 513 <= n <= 600]
    if not_pow2:
        problems.append(f"non-power-of-two outside plateaus at n={_first(not_pow2)}")
    elapsed = time.perf_counter() - start
    if elapsed >= 120:
        problems.append(f"runtime {elapsed:.0f}s exceeds 120s")
    return CriterionResult("c1", "k=1 closed form vs oracle, n <= 2048", not problems,
                           "; ".join(problems) or "2047 values equal; plateaus 250/500/1000 exact",
                           elapsed)


def check_k2_closed_form(threads: int = 1) -> CriterionResult:
    start = time.perf_counter()
    params = LucasParams(2)
    brute = disc_brute_table(params, 4096, threads)
    mismatch = [n for n in range(1, 4097) if brute[n - 1] != disc_closed_k2(n).value]
    fk = fk_extract(params, 4096, threads)
    problems = []
    if mismatch:
        problems.append(f"closed form differs at n={_first(mismatch)}")
    if fk:
        problems.append(f"F_2 candidates {_first(r.value for r in fk)}")
    return CriterionResult("c2", "k=2 closed form vs oracle, n <= 4096; F_2 empty", not problems,
                           "; ".join(problems) or "4096 values equal; F_2 = {}",
                           time.perf_counter() - start)


def check_general_k(threads: int = 1, ks=range(3, 11), n_max: int = 1500,
                    fixed_max: int = 800) -> CriterionResult:
    start = time.perf_counter()
    problems = []
    certified = uncertified = 0
    for k in ks:
        params = LucasParams(k)
        brute = disc_brute_table(params, n_max, threads)
        above, unequal, fixed = [], [], []
        for n in range(1, n_max + 1):
            rec, cert = disc_closed_general(params, n)
            d = brute[n - 1]
            if d > rec.value:
                above.append(n)
            if cert:
                certified += 1
                if d != rec.value:
                    unequal.append(n)
            else:
                uncertified += 1
            if n <= fixed_max and (d == n) != membership(params, n).positive:
                fixed.append(n)
        if above:
            problems.append(f"k={k}: brute > candidate at n={_first(above)}")
        if unequal:
            problems.append(f"k={k}: certified but unequal at n={_first(unequal)}")
        if fixed:
            problems.append(f"k={k}: fixed-point law fails at n={_first(fixed)}")
    detail = "; ".join(problems) or (
        f"bound holds everywhere; {certified} certified equalities, {uncertified} uncertified")
    return CriterionResult("c3", "k=3..10 upper bound, certificate, fixed points", not problems,
                           detail, time.perf_counter() - start)


# ---------------------------------------------------------------------------
# 4-5: index of appearance and golden scalars
# ---------------------------------------------------------------------------

def check_z_equivalence(threads: int = 1, ks=range(1, 9), m_max: int = 5000,
                        char_max: int = 3000) -> CriterionResult:
    start = time.perf_counter()
    problems = []
    for k in ks:
        params = LucasParams(k)
        brute = z_brute_table(params, m_max, threads)
        bad = [m for m in range(1, m_max + 1) if z_of(params, m).z != brute[m]]
        if bad:
            problems.append(f"k={k}: z_of != z_brute at m={_first(bad)}")
        char = [m for m in range(1, char_max + 1)
                if (brute[m] == m) != full_appearance_set(params, m)]
        if char:
            problems.append(f"k={k}: z(m)=m characterisation fails at m={_first(char)}")
    return CriterionResult("c4", "z formula vs oracle; z(m)=m characterisation", not problems,
                           "; ".join(problems) or f"k<={max(ks)}, m<={m_max} all equal",
                           time.perf_counter() - start)


def check_golden_scalars() -> CriterionResult:
    start = time.perf_counter()
    one = LucasParams(1)
    problems = []
    for p, want in ((29, 5), (13, 7), (37, 19)):
        got = z_of_prime(one, p)
        if got != want:
            problems.append(f"z({p})={got}, want {want}")
    power = quad_pow_mod(QuadIntMod(3, 2, 2, 169), 7)
    if not power.is_minus_one():
        problems.append(f"(3+2r2)^7 mod 169 = {power}")
    if z_of_prime_power(one, 13, 2)[0] != 7:
        problems.append("z(169) != 7")
    exps = [e for _, e in thirty_seven_exponents()]
    if exps != [6, 11, 16, 21, 27]:
        problems.append(f"37-exponents {exps}")
    special = [k for k in range(1, 1001)
               if is_special(LucasParams(k), 3) != (k % 9 in (2, 6))]
    if special:
        problems.append(f"is_special(k,3) wrong at k={_first(special)}")
    lbg = [k for k, _, _ in levi_ben_gerson(10**6)]
    if lbg != [1, 2, 3, 8]:
        problems.append(f"levi_ben_gerson k-set {lbg}")
    return CriterionResult("c5", "golden scalars", not problems,
                           "; ".join(problems) or "all exact",
                           time.perf_counter() - start)


# ---------------------------------------------------------------------------
# 6-7: the set M and the image of D_1
# ---------------------------------------------------------------------------

def check_m_set(count: int = 10**5) -> CriterionResult:
    start = time.perf_counter()
    problems = []
    members = [b for b in range(1, 22) if m_set_member(b, DEFAULT_MSET)]
    if members != [3, 6, 9, 12, 15, 18, 21]:
        problems.append(f"members up to 21: {members}")
    density = m_density(count, DEFAULT_MSET)
    if abs(float(density) - 0.263034) > 0.01:
        problems.append(f"density {float(density):.6f} outside 0.263034 +- 0.01")
    if density.undecidable:
        problems.append(f"undecidable b={_first(density.undecidable)}")
    return CriterionResult("c6", "M membership and density", not problems,
                           "; ".join(problems) or
                           f"prefix exact; density({count}) = {float(density):.6f}; none undecidable",
                           time.perf_counter() - start)


def check_image_law(threads: int = 1) -> CriterionResult:
    start = time.perf_counter()
    brute = disc_brute_table(LucasParams(1), 2048, threads)
    values = set(brute[1:])
    image = image_k1(4096)
    problems = []
    outside = sorted(values - image)
    if outside:
        problems.append(f"values outside image: {_first(outside)}")
    # an image value v <= 1024 has its plateau inside [2, 2048] when the
    # closed form takes the value v somewhere there
    with_plateau = {disc_closed_k1(n).value for n in range(2, 2049)}
    missing = sorted(v for v in image if v <= 1024 and v in with_plateau and v not in values)
    if missing:
        problems.append(f"image values not attained: {_first(missing)}")
    expected = [v for v in image if v <= 1024 and v in with_plateau]
    return CriterionResult("c7", "image of D_1", not problems,
                           "; ".join(problems) or
                           f"{len(values)} distinct values, all in image; all {len(expected)} image values <= 1024 with a plateau attained",
                           time.perf_counter() - start)


# ---------------------------------------------------------------------------
# 8: congruence biconditionals
# ---------------------------------------------------------------------------

def _congruence_matrix(params: LucasParams, length: int, m: int) -> np.ndarray:
    r = np.array(window_mod(params, length, m).terms, dtype=np.int64)
    return r[:, None] == r[None, :]


def power_of_two_law(ks=range(1, 7), a_max: int = 10) -> List[str]:
    """U_i = U_j mod 2^a iff i = j mod 2^a, for i, j < 2^a + 32."""
    bad = []
    for k in ks:
        params = LucasParams(k)
        for a in range(1, a_max + 1):
            size = 2 ** a + 32
            idx = np.arange(size)
            same_u = _congruence_matrix(params, size, 2 ** a)
            same_i = (idx[:, None] - idx[None, :]) % 2 ** a == 0
            if not np.array_equal(same_u, same_i):
                bad.append(f"k={k}, a={a}")
    return bad


def _odd_prime_powers(r: int, p_max: int, b_max: int):
    for p in range(3, p_max + 1, 2):
        if is_prime(p) and r % p == 0:
            for b in range(1, b_max + 1):
                yield p, b


def p_divides_k_law(ks=range(1, 7), p_max: int = 50, b_max: int = 2,
                    size: int = 401) -> List[str]:
    """For odd p | k: U_i = U_j mod p^b iff i = j mod z(p^b)."""
    bad = []
    idx = np.arange(size)
    for k in ks:
        params = LucasParams(k)
        for p, b in _odd_prime_powers(k, p_max, b_max):
            z = z_of(params, p ** b).z
            same_u = _congruence_matrix(params, size, p ** b)
            if not np.array_equal(same_u, (idx[:, None] - idx[None, :]) % z == 0):
                bad.append(f"k={k}, p^b={p}^{b}")
    return bad


def p_divides_k_plus_one_law(ks=range(1, 7), p_max: int = 50, b_max: int = 2,
                             size: int = 401) -> List[str]:
    """For odd p | k+1: same parity -> i = j mod z(p^b); opposite parity -> i+j = 0 mod z(p^b)."""
    bad = []
    idx = np.arange(size)
    same_parity = (idx[:, None] - idx[None, :]) % 2 == 0
    for k in ks:
        params = LucasParams(k)
        for p, b in _odd_prime_powers(k + 1, p_max, b_max):
            z = z_of(params, p ** b).z
            same_u = _congruence_matrix(params, size, p ** b)
            predicted = np.where(same_parity,
                                 (idx[:, None] - idx[None, :]) % z == 0,
                                 (idx[:, None] + idx[None, :]) % z == 0)
            if not np.array_equal(same_u, predicted):
                bad.append(f"k={k}, p^b={p}^{b}")
    return bad


def injective_modulus_law(ks=range(1, 7), m_max: int = 200) -> List[str]:
    """(U_i = U_j mod m iff i = j mod m, all i, j < 2m+8) exactly for m in A_k u B_k."""
    bad = []
    for k in ks:
        params = LucasParams(k)
        for m in range(1, m_max + 1):
            size = 2 * m + 8
            idx = np.arange(size)
            holds = np.array_equal(_congruence_matrix(params, size, m),
                                   (idx[:, None] - idx[None, :]) % m == 0)
            if holds != membership(params, m).positive:
                bad.append(f"k={k}, m={m}")
    return bad


def two_a_five_b_law(m_max: int = 4000) -> List[str]:
    """k=1: 2^a discriminates n terms iff 2^a >= n; 2^a 5^b (a, b >= 1) iff 3m >= 5n."""
    reach = collision_indices(LucasParams(1), m_max)
    bad = []
    for m in range(2, m_max + 1):
        rest, a = m, 0
        while rest % 2 == 0:
            rest //= 2
            a += 1
        b = 0
        while rest % 5 == 0:
            rest //= 5
            b += 1
        if rest != 1 or a == 0:
            continue
        for n in range(1, m + 2):
            predicted = m >= n if b == 0 else 3 * m >= 5 * n
            if (n <= reach[m]) != predicted:
                bad.append(f"m={m}, n={n}")
                break
    return bad


PROPERTY_LAWS: Dict[str, Callable[[], List[str]]] = {
    "power_of_two": power_of_two_law,
    "p_divides_k": p_divides_k_law,
    "p_divides_k_plus_one": p_divides_k_plus_one_law,
    "injective_modulus": injective_modulus_law,
    "two_a_five_b": two_a_five_b_law,
}


def check_property_suites() -> CriterionResult:
    start = time.perf_counter()
    problems = []
    for name, law in PROPERTY_LAWS.items():
        bad = law()
        if bad:
            problems.append(f"{name}: {_first(bad)}")
    return CriterionResult("c8", "congruence biconditionals", not problems,
                           "; ".join(problems) or
                           f"{len(PROPERTY_LAWS)} laws, zero counterexamples",
                           time.perf_counter() - start)


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

CRITERIA: Dict[str, Callable[..., CriterionResult]] = {
    "c1": check_k1_closed_form,
    "c2": check_k2_closed_form,
    "c3": check_general_k,
    "c4": check_z_equivalence,
    "c5": check_golden_scalars,
    "c6": check_m_set,
    "c7": check_image_law,
    "c8": check_property_suites,
}

_THREADED = {"c1", "c2", "c3", "c4", "c7"}

SUITES: Dict[str, List[str]] = {
    "acceptance": list(CRITERIA),
    "discriminator": ["c1", "c2", "c3", "c7"],
    "appearance": ["c4", "c5"],
    "mset": ["c6"],
    "properties": ["c8"],
    "quick": ["c5", "c6"],
    **{key: [key] for key in CRITERIA},
}


def run_criterion(key: str, threads: int = 1) -> CriterionResult:
    fn = CRITERIA[key]
    try:
        return fn(threads) if key in _THREADED else fn()
    except UndecidableError as exc:
        return CriterionResult(key, fn.__name__, False, f"undecidable: {exc}")


def run_suite(name: str, threads: int = 1) -> List[CriterionResult]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return [run_criterion(key, threads) for key in SUITES[name]]
