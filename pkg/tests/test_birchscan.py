import pytest
import sympy
from hypothesis import given, settings, strategies as st

from degree3p.birchscan import (
    FAMILY_QUADRATIC,
    FAMILY_SQUARE,
    SPORADIC,
    NuTriple,
    birch_factor_scan,
    bruteforce_scan,
    density_report,
    nu_solutions_bruteforce,
)
from degree3p.errors import BadInput, CapExceeded
from degree3p.exactalg import QuadraticNumber as Q


def test_small_primes():
    (mirror, t) = sorted(nu_solutions_bruteforce(7), key=lambda t: t.a)
    assert mirror.gammas == (1, 1, -3) and mirror.a == -2
    assert t.gammas == (3, -2, -2) and (t.classification, t.a) == (FAMILY_QUADRATIC, 1)
    assert nu_solutions_bruteforce(5) == []
    assert NuTriple(19, (5, -3, -3)) in nu_solutions_bruteforce(19)
    assert NuTriple(19, (5, -3, -3)).a == 2


def test_mirror_triples():
    # a -> -1 - a maps (2a+1, -a-1, -a-1) to (-2a-1, a, a) with the same p
    for a in range(1, 8):
        p = 3 * a * a + 3 * a + 1
        if not sympy.isprime(p):
            continue
        got = {t.gammas for t in nu_solutions_bruteforce(p)}
        assert (2 * a + 1, -a - 1, -a - 1) in {tuple(sorted(g, reverse=True)) for g in got}
        assert (a, a, -2 * a - 1) in got


def test_factor_scan_examples():
    sols = set(birch_factor_scan(100))
    for p, g in ((7, (3, -2, -2)), (19, (5, -3, -3)), (37, (7, -4, -4)), (61, (9, -5, -5))):
        assert (p, NuTriple(p, g)) in sols
    assert birch_factor_scan(5) == []


def test_scans_agree_2000():
    assert birch_factor_scan(2000) == bruteforce_scan(2000)


def test_cap():
    with pytest.raises(CapExceeded):
        birch_factor_scan(101, cap=100)
    with pytest.raises(CapExceeded):
        density_report(10**7)


def test_bad_prime():
    with pytest.raises(BadInput):
        nu_solutions_bruteforce(9)


def test_invariants_and_radical_identity():
    for p, t in birch_factor_scan(3000):
        assert t.invariant_failures() == []
        u = t.radicands()
        roots = sorted((Q.sqrt(x) for x in u), key=lambda r: (r.coeff if r.rad else r.rat))
        assert roots[0] + roots[1] == roots[2]
        assert t.T.denominator == 1 and 4 * p - 1 == sum(g * g for g in t.gammas) + 2 * t.T


def test_sporadic_829():
    t = NuTriple(829, (32, -9, -24))
    assert t.invariant_failures() == []
    assert t.classification == SPORADIC
    assert t in nu_solutions_bruteforce(829)


def test_family_square_classification():
    # p = g^2 is never prime; the class exists for integer inputs
    t = NuTriple(4, (2, -2, -1))
    assert t.classification == FAMILY_SQUARE


def test_family_members_are_exactly_the_quadratic():
    for p, t in birch_factor_scan(3000):
        if t.classification == FAMILY_QUADRATIC:
            a = t.a
            assert p == 3 * a * a + 3 * a + 1
            assert sorted(t.gammas) == sorted((2 * a + 1, -a - 1, -a - 1))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(list(sympy.primerange(5, 400))))
def test_bruteforce_matches_naive(p):
    K = 4 * p - 1
    naive = set()
    b = int(K**0.5) + 1
    for x in range(-b, b + 1):
        for y in range(-b, b + 1):
            z = -1 - x - y
            if max(3 * x * x, 3 * y * y, 3 * z * z) > K:
                continue
            t = NuTriple(p, (x, y, z))
            if t.radical_identity():
                naive.add(t)
    assert set(nu_solutions_bruteforce(p)) == naive


def test_density_report_small():
    r = density_report(100)
    assert r.solvable_primes == (7, 19, 37, 61)
    assert r.ratio == Q(4) / Q.sqrt(100) == Q(2) / 5
    assert density_report(7).solvable_primes == (7,)
    assert density_report(4).solvable_primes == ()
    assert density_report(10000).ratio_decimal() == "0.300000"
    assert density_report(500, method="brute").solvable_primes == density_report(500).solvable_primes
