import bisect

import pytest
from hypothesis import given, settings, strategies as st

from disclab.sunit import (SUnitSpec, gap_check_25, gap_check_general, gap_failures_25,
                           levi_ben_gerson, sunit_iter, sunit_next, sunits_upto,
                           thirty_seven_exponents)


def exhaustive(primes, mins, limit, even=False, no_nine=False):
    """All admissible S-units <= limit, by trial division of every integer."""
    out = []
    for x in range(1, limit + 1):
        y = x
        ok = True
        for p, lo in zip(primes, mins):
            e = 0
            while y % p == 0:
                y //= p
                e += 1
            ok = ok and e >= lo
        if ok and y == 1 and not (even and x % 2) and not (no_nine and x % 9 == 0):
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# Golden values
# ---------------------------------------------------------------------------

def test_sunit_next_examples():
    assert sunit_next(SUnitSpec((2, 5), (1, 1)), 17) == 20
    assert sunit_next(SUnitSpec((2,)), 1) == 1
    assert sunit_next(SUnitSpec((2, 5), (1, 0)), 97) == 100


def test_spec_validation():
    with pytest.raises(ValueError):
        SUnitSpec(())
    with pytest.raises(ValueError):
        SUnitSpec((2, 4))
    with pytest.raises(ValueError):
        SUnitSpec((2, 2))
    with pytest.raises(ValueError):
        SUnitSpec((3, 5), require_even=True)
    with pytest.raises(ValueError):
        SUnitSpec((3,), forbid_nine=True)
    with pytest.raises(ValueError):
        sunit_next(SUnitSpec((2,)), 0)


def test_gap_check_25_examples():
    assert gap_check_25(3) == (False, None)
    for n in (2 ** 24 * 5 ** 3, 2 ** 25 * 5 ** 3):
        found, w = gap_check_25(n)
        assert found and 3 * w >= 5 * n and 19 * w < 37 * n
        assert w % 2 == 0


def test_gap_check_general_examples():
    # n = 1 fails: [1, ratio) holds only the odd number 1
    assert gap_check_general(3, 3, 2, 1, 10**4) == [1]
    assert gap_check_general(5, 5, 3, 1, 10**4) == [1]
    assert gap_check_general(7, 1001, 1000, 1, 100) != []


def test_thirty_seven_exponents():
    got = dict(thirty_seven_exponents())
    assert got == {1: 6, 2: 11, 3: 16, 4: 21, 5: 27}
    for i, e in got.items():
        assert 2 * 37 ** (i - 1) * 19 <= 2 ** e < 2 * 37 ** i


def test_levi_ben_gerson():
    assert {k for k, _, _ in levi_ben_gerson(10)} == {1, 2, 3, 8}
    assert (8, 3, 2) in levi_ben_gerson(8)
    assert levi_ben_gerson(0) == []
    for k, a, b in levi_ben_gerson(10**5):
        assert k * (k + 1) == 2 ** a * 3 ** b
    assert [k for k, _, _ in levi_ben_gerson(10**5)] == [1, 2, 3, 8]


# ---------------------------------------------------------------------------
# Enumeration against exhaustive search
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("primes,mins,even,no_nine", [
    ((2, 5), (1, 0), False, False),
    ((2, 5), (1, 1), False, False),
    ((2, 3, 5), (0, 0, 0), True, True),
    ((3, 7), (0, 0), False, False),
    ((2, 3, 7, 11), (1, 0, 0, 0), False, True),
])
def test_enumeration_exhaustive(primes, mins, even, no_nine):
    spec = SUnitSpec(primes, mins, even, no_nine)
    got = sunits_upto(spec, 10**6)
    assert got == sorted(set(got))
    assert all(spec.admits(x) and spec.keeps(x) for x in got)
    assert [x for x in got if x <= 50000] == exhaustive(primes, mins, 50000, even, no_nine)


def test_sunit_next_against_list():
    spec = SUnitSpec((2, 5), (1, 1))
    units = exhaustive((2, 5), (1, 1), 10**6)
    for x in range(1, 10**6, 997):
        i = bisect.bisect_left(units, x)
        if i < len(units):
            assert sunit_next(spec, x) == units[i]


def test_iter_start():
    spec = SUnitSpec((2, 3))
    it = sunit_iter(spec, 100)
    assert [next(it) for _ in range(4)] == [108, 128, 144, 162]


def test_gap_25_against_sieve():
    limit = 10**5
    hi = 37 * limit // 19 + 2
    smooth = exhaustive((2, 5), (1, 0), hi)
    marked = bytearray(hi + 1)
    for x in smooth:
        marked[x] = 1
    want = []
    for n in range(1, limit + 1):
        lo = -(-5 * n // 3)
        top = -(-37 * n // 19)  # exclusive
        if not any(marked[lo:top]):
            want.append(n)
    assert gap_failures_25(1, limit) == want
    for n in range(1, 3000):
        assert gap_check_25(n)[0] == (n not in want)


@settings(max_examples=50, deadline=None)
@given(x=st.integers(1, 10**30))
def test_sunit_next_is_minimal(x):
    spec = SUnitSpec((2, 5), (1, 0))
    y = sunit_next(spec, x)
    assert y >= x and spec.admits(y)
    # nothing admissible in [x, y)
    for a in range(1, y.bit_length() + 1):
        v = 2 ** a
        while v < y:
            assert v < x
            v *= 5
