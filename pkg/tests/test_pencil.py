"""Tests for symbol evaluation, ellipticity checks, and root grouping."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pencilab.catalog import agmon_pencil, broken_pencil, e1_pencil
from pencilab.errors import EllipticityError, PencilFormatError
from pencilab.pencil import (GridSpec, Pencil, Term, check_lemma21,
                             check_regular_degeneration, eval_symbol,
                             group_roots, pencil_from_dict, pencil_to_dict,
                             poly_roots, q_polynomial, remark22_checks,
                             tau_polynomial, tau_roots)

SMALL_GRID = GridSpec(angular=120, directions=120)


def test_term_validation():
    with pytest.raises(PencilFormatError):
        Pencil(n=2, m=2, mu=1, terms=(Term((1, 0), 2, 1.0),))   # |alpha| != j
    with pytest.raises(PencilFormatError):
        Pencil(n=2, m=2, mu=1, terms=(Term((1, 0), 1, 1.0),))   # j < 2mu
    with pytest.raises(PencilFormatError):
        Pencil(n=2, m=1, mu=1, terms=())                        # m <= mu


def test_json_round_trip():
    p = e1_pencil()
    q = pencil_from_dict(json.loads(json.dumps(pencil_to_dict(p))))
    assert q == p


def test_eval_symbol_values():
    p = e1_pencil()
    # A = |xi|^2 (|xi|^2 + lambda^2)
    assert eval_symbol(p, (1.0, 0.0), 2.0) == pytest.approx(5.0)
    assert eval_symbol(p, (0.0, 0.0), 0.0) == 0.0
    assert eval_symbol(agmon_pencil(), (3.0, 4.0), 0.0) == pytest.approx(25.0)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 10.0), st.floats(-3, 3), st.floats(-3, 3),
       st.floats(0.0, 3.0))
def test_eval_homogeneity(t, x1, x2, lam):
    p = e1_pencil()
    a = eval_symbol(p, (t * x1, t * x2), t * lam)
    b = t ** (2 * p.m) * eval_symbol(p, (x1, x2), lam)
    assert a == pytest.approx(b, rel=1e-9, abs=1e-9)


def test_tau_polynomial_factorization():
    p = e1_pencil()
    c = tau_polynomial(p, np.array([1.0]), 10.0)
    assert np.allclose(c, [101.0, 0.0, 102.0, 0.0, 1.0])
    c0 = tau_polynomial(p, np.array([0.0]), 1.0)
    assert np.allclose(c0, [0.0, 0.0, 1.0, 0.0, 1.0])
    ca = tau_polynomial(agmon_pencil(), np.array([0.0]), 1.0)
    assert np.allclose(ca, [1.0, 0.0, 1.0])


def test_check_lemma21_e1():
    rep = check_lemma21(e1_pencil(), SMALL_GRID)
    assert rep.n_elliptic
    assert rep.C_est >= 0.4


def test_check_lemma21_agmon():
    rep = check_lemma21(agmon_pencil(), SMALL_GRID)
    assert rep.n_elliptic
    assert rep.C_est >= 0.4


def test_check_lemma21_broken_witness():
    rep = check_lemma21(broken_pencil(), GridSpec(angular=120, directions=720))
    assert not rep.cond_ii
    assert rep.C_est == 0.0
    # the lowest part xi_1^2 vanishes in the direction (0, +-1)
    assert min(np.linalg.norm(rep.witness_ii - np.array([0.0, 1.0])),
               np.linalg.norm(rep.witness_ii - np.array([0.0, -1.0]))) < 1e-6


def test_q_polynomial():
    assert np.allclose(q_polynomial(e1_pencil()), [1.0, 0.0, 1.0])
    assert np.allclose(q_polynomial(agmon_pencil()), [1.0, 0.0, 1.0])


def test_regular_degeneration_e1():
    res = check_regular_degeneration(e1_pencil())
    assert res.regular is True
    assert res.k1 == 1
    assert len(res.upper_roots) == 1
    assert res.upper_roots[0] == pytest.approx(1j, abs=1e-10)


def test_regular_degeneration_failure_constructed():
    # A(0,tau,1)/tau^2 = (tau - i)(tau - 2i) * conjugate-free: build a pencil
    # whose Q has two upper roots while m - mu = 1.
    # Q(tau) = tau^2 - 3i tau - 2 means A(0,tau,lam) has complex coefficients:
    # terms: tau^4 (j=4), -3i tau^3 lam (j=3), -2 tau^2 lam^2 (j=2).
    p = Pencil(n=2, m=2, mu=1, terms=(
        Term((0, 4), 4, 1.0), Term((0, 3), 3, -3.0j), Term((0, 2), 2, -2.0)))
    res = check_regular_degeneration(p)
    assert res.regular is False


def test_remark22_e1_and_odd_term():
    checks = remark22_checks(e1_pencil(), SMALL_GRID)
    assert checks["even_order"] and checks["strongly_elliptic"]
    podd = Pencil(n=2, m=2, mu=1, terms=e1_pencil().terms
                  + (Term((3, 0), 3, 1.0j),))
    assert not remark22_checks(podd, SMALL_GRID)["even_order"]


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 3), st.floats(0.5, 4.0))
def test_even_strongly_elliptic_implies_regular(k, c):
    # A = |xi|^(2mu) (|xi|^2 + lambda^2)^(m - mu) variants are even and
    # strongly elliptic; regular degeneration must agree.
    p = Pencil(n=2, m=k + 1, mu=k, terms=_even_pencil_terms(k + 1, k, c))
    assert remark22_checks(p, GridSpec(angular=40, directions=40))["even_order"]
    assert check_regular_degeneration(p).regular is True


def _even_pencil_terms(m, mu, c):
    # (xi_1^2 + xi_2^2)^mu * (xi_1^2 + xi_2^2 + c lambda^2)^(m - mu)
    from math import comb
    terms = {}
    for q in range(m - mu + 1):         # lambda^(2q) choose
        coeff = comb(m - mu, q) * c ** q
        deg = 2 * (m - q)               # remaining |xi| degree
        for i in range(deg // 2 + 1):
            a = (2 * i, deg - 2 * i)
            terms[a] = terms.get(a, 0.0) + coeff * comb(deg // 2, i)
    return tuple(Term(a, sum(a), v) for a, v in terms.items())


def test_poly_roots_accuracy():
    # (tau - 1)(tau - 2)(tau - 3i)
    coeffs = np.array([6j, -2 - 9j, -3 - 3j, 1.0], dtype=complex)[::1]
    # ascending coefficients of tau^3 - (3+3i) tau^2 + (2+9i)... build directly
    roots = np.array([1.0, 2.0, 3.0j])
    asc = np.array([1.0 + 0j])
    for r in roots:
        asc = np.convolve(asc, [-r, 1.0])
    got = np.sort_complex(poly_roots(asc))
    assert np.allclose(np.sort_complex(roots), got, atol=1e-10)


def test_tau_roots_e1():
    rs = tau_roots(e1_pencil(), np.array([1.0]), 10.0)
    upper = sorted(rs.upper, key=lambda z: z.imag)
    assert upper[0] == pytest.approx(1j, abs=1e-10)
    assert upper[1] == pytest.approx(1j * math.sqrt(101.0), abs=1e-9)


def test_tau_roots_double_at_lambda_zero():
    rs = tau_roots(e1_pencil(), np.array([1.0]), 0.0)
    assert len(rs.upper) == 2
    assert np.allclose(np.array(rs.upper), 1j, atol=1e-6)


def test_tau_roots_real_axis_rejected():
    # lambda^4 - |xi|^4 vanishes for tau real when lambda > |xi'|... use a
    # symbol with real roots: A = xi_n^2 - xi_1^2 - lambda^2 (hyperbolic)
    p = Pencil(n=2, m=1, mu=0, terms=(
        Term((0, 2), 2, 1.0), Term((2, 0), 2, -1.0), Term((0, 0), 0, -1.0)))
    with pytest.raises(EllipticityError):
        tau_roots(p, np.array([1.0]), 1.0)


def test_conjugate_symmetry_counts():
    rs = tau_roots(e1_pencil(), np.array([0.7]), 3.0)
    assert len(rs.upper) == 2 and len(rs.lower) == 2
    up = np.sort_complex(np.array(rs.upper))
    lo = np.sort_complex(np.conj(np.array(rs.lower)))
    assert np.allclose(up, lo, atol=1e-9)


def test_root_continuity_no_axis_crossing():
    p = e1_pencil()
    prev = None
    for lam in np.geomspace(0.5, 50.0, 40):
        rs = tau_roots(p, np.array([1.0]), lam)
        cur = np.array(rs.all_roots)
        if prev is not None:
            # nearest-neighbor step stays well off the real axis
            for r in cur:
                assert abs(r.imag) > 1e-3
        prev = cur


def test_group_roots_e1_lambda10():
    g = group_roots(e1_pencil(), np.array([1.0]), 10.0)
    (b_idx,), (l_idx,) = g.group_bounded, g.group_large
    assert g.upper_roots[b_idx] == pytest.approx(1j, abs=1e-10)
    assert g.residual_bounded[0] < 1e-10
    assert g.residual_large[0] == pytest.approx(math.sqrt(101.0) - 10.0,
                                                abs=1e-9)
    assert g.k1 == 1 and not g.ambiguous


def test_group_roots_e1_large_lambda_residual():
    lam = 1000.0
    g = group_roots(e1_pencil(), np.array([1.0]), lam)
    assert g.residual_large[0] == pytest.approx(1.0 / (2.0 * lam), rel=0.05)


def test_group_roots_mu_zero():
    g = group_roots(agmon_pencil(), np.array([1.0]), 10.0)
    assert g.group_bounded == ()
    assert len(g.group_large) == 1


def test_c_est_bound_holds_on_fresh_samples():
    p = e1_pencil()
    rep = check_lemma21(p, SMALL_GRID)
    rng = np.random.default_rng(7)
    for _ in range(200):
        xi = rng.standard_normal(2)
        lam = abs(rng.standard_normal())
        bound = (rep.C_est * np.linalg.norm(xi) ** (2 * p.mu)
                 * (lam + np.linalg.norm(xi)) ** (2 * p.m - 2 * p.mu))
        # C_est is a grid minimum, so fresh samples may dip below by the
        # grid resolution; allow one percent slack.
        assert abs(eval_symbol(p, xi, lam)) >= bound * 0.99
