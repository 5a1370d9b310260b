import pytest
from hypothesis import given, settings, strategies as st

from disclab.bigmod import (LucasParams, QuadIntMod, factorize, is_prime, legendre,
                            lucas_u, lucas_u_mod, lucas_uv_mod, lucas_v, nu_p,
                            quad_mul, quad_norm, quad_pow_mod, residue_columns,
                            window_mod)
from disclab.errors import CapacityError

A001109 = [0, 1, 6, 35, 204, 1189, 6930, 40391, 235416, 1372105, 7997214]


def naive_u(k, n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, (4 * k + 2) * b - a
    return a


# ---------------------------------------------------------------------------
# Golden values
# ---------------------------------------------------------------------------

def test_k1_terms():
    p = LucasParams(1)
    assert [lucas_u(p, n) for n in range(11)] == A001109


@pytest.mark.parametrize("k,n,want", [(1, 5, 1189), (7, 0, 0), (2, 3, 99)])
def test_lucas_u(k, n, want):
    assert lucas_u(LucasParams(k), n) == want


@pytest.mark.parametrize("k,n,want", [(5, 0, 2), (1, 2, 34), (1, 3, 198)])
def test_lucas_v(k, n, want):
    assert lucas_v(LucasParams(k), n) == want


@pytest.mark.parametrize("k,n,m,want", [(1, 5, 10, 9), (1, 0, 7, 0), (3, 3, 1, 0)])
def test_lucas_u_mod(k, n, m, want):
    assert lucas_u_mod(LucasParams(k), n, m) == want


@pytest.mark.parametrize("k,n,m,want", [
    (1, 6, 100, [0, 1, 6, 35, 4, 89]),
    (1, 2, 2, [0, 1]),
    (2, 4, 9, [0, 1, 1, 0]),
])
def test_window_mod(k, n, m, want):
    assert list(window_mod(LucasParams(k), n, m).terms) == want


def test_quad_examples():
    x = QuadIntMod(3, 2, 2, 1000)
    assert quad_mul(x, x) == QuadIntMod(17, 12, 2, 1000)
    assert quad_mul(x, QuadIntMod(1, 0, 2, 1000)) == x
    assert quad_mul(x, QuadIntMod(3, -2, 2, 1000)) == QuadIntMod(1, 0, 2, 1000)
    assert quad_pow_mod(QuadIntMod(3, 2, 2, 169), 7) == QuadIntMod(168, 0, 2, 169)
    assert quad_pow_mod(x, 0) == QuadIntMod(1, 0, 2, 1000)
    assert quad_pow_mod(QuadIntMod(3, 2, 2, 5), 3).is_minus_one()


def test_quad_mismatch():
    with pytest.raises(ValueError):
        quad_mul(QuadIntMod(1, 1, 2, 7), QuadIntMod(1, 1, 3, 7))


@pytest.mark.parametrize("x,p,want", [(35, 5, 1), (49, 5, 0), (675, 3, 3)])
def test_nu_p(x, p, want):
    assert nu_p(x, p) == want


def test_nu_p_zero():
    with pytest.raises(ValueError):
        nu_p(0, 3)


@pytest.mark.parametrize("a,p,want", [(2, 7, 1), (14, 7, 0), (2, 13, -1)])
def test_legendre(a, p, want):
    assert legendre(a, p) == want


def test_rejects_bad_k():
    with pytest.raises(ValueError):
        LucasParams(0)
    with pytest.raises(TypeError):
        LucasParams(True)


def test_capacity():
    with pytest.raises(CapacityError):
        lucas_u(LucasParams(1), 10**8)


# ---------------------------------------------------------------------------
# Structural identities
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("k", [1, 2, 3, 7, 10])
def test_against_naive_recurrence(k):
    p = LucasParams(k)
    for n in range(60):
        assert lucas_u(p, n) == naive_u(k, n)


def test_u3_formula():
    for k in range(1, 1001):
        assert lucas_u(LucasParams(k), 3) == 16 * k * (k + 1) + 3


@pytest.mark.parametrize("k", [1, 2, 5])
def test_doubling_and_pell(k):
    p = LucasParams(k)
    for n in range(1, 40):
        u, v = lucas_u(p, n), lucas_v(p, n)
        assert lucas_u(p, 2 * n) == u * v
        # V^2 - Delta U^2 = 4
        assert v * v - p.delta * u * u == 4


@pytest.mark.parametrize("k", [1, 3, 4])
def test_difference_factorisation(k):
    # U_{m+n} + U_{m-n} = U_m V_n
    p = LucasParams(k)
    for m in range(1, 25):
        for n in range(0, m + 1):
            assert lucas_u(p, m + n) + lucas_u(p, m - n) == lucas_u(p, m) * lucas_v(p, n)


def test_parity():
    for k in range(1, 20):
        p = LucasParams(k)
        for n in range(30):
            assert lucas_u(p, n) % 2 == n % 2


@pytest.mark.parametrize("k", [1, 2, 6])
def test_power_of_two_discriminates(k):
    p = LucasParams(k)
    for a in range(1, 11):
        m = 2 ** a
        terms = window_mod(p, m, m).terms
        assert len(set(terms)) == m


def test_mod_matches_exact():
    for k in (1, 2, 9):
        p = LucasParams(k)
        for n in range(0, 301, 7):
            exact = lucas_u(p, n)
            for m in (2, 9, 97, 1000, 2 ** 70 + 1):
                assert lucas_u_mod(p, n, m) == exact % m
            u, v = lucas_uv_mod(p, n, 10**9 + 7)  # (U_n, U_{n+1})
            assert (u, v) == (exact % (10**9 + 7), lucas_u(p, n + 1) % (10**9 + 7))


def test_residue_columns_match_window():
    p = LucasParams(4)
    mods = [1, 2, 17, 1000, 2**31 - 1]
    table = residue_columns(p, mods, 50)
    for j, m in enumerate(mods):
        assert list(table[:, j]) == list(window_mod(p, 50, m).terms)


def test_factorize_and_primes():
    assert factorize(1) == []
    assert factorize(2**5 * 3 * 101**2) == [(2, 5), (3, 1), (101, 2)]
    assert [n for n in range(50) if is_prime(n)] == [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    assert is_prime(2**61 - 1) and not is_prime(3215031751)


def test_factorize_capacity():
    big = (10**9 + 7) * (10**9 + 9)
    with pytest.raises(CapacityError):
        factorize(big, bound=10**4)


# ---------------------------------------------------------------------------
# Property tests
# ---------------------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(a=st.integers(0, 10**6), b=st.integers(0, 10**6), d=st.integers(2, 50),
       m=st.integers(2, 10**6), e=st.integers(0, 60))
def test_quad_pow_is_repeated_mul(a, b, d, m, e):
    x = QuadIntMod(a, b, d, m)
    acc = QuadIntMod.one(d, m)
    for _ in range(e):
        acc = quad_mul(acc, x)
    assert quad_pow_mod(x, e) == acc


@settings(max_examples=100, deadline=None)
@given(k=st.integers(1, 10**6), e=st.integers(0, 500), m=st.integers(2, 10**9))
def test_alpha_powers_have_norm_one(k, e, m):
    p = LucasParams(k)
    assert quad_norm(quad_pow_mod(QuadIntMod.alpha(p, m), e)) == 1 % m


@settings(max_examples=100, deadline=None)
@given(k=st.integers(1, 10**4), n=st.integers(0, 400), m=st.integers(1, 10**12))
def test_u_mod_property(k, n, m):
    p = LucasParams(k)
    assert lucas_u_mod(p, n, m) == lucas_u(p, n) % m
