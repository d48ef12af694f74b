"""Tests for the exponential-polynomial half-line solutions."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pencilab import halfline
from pencilab.catalog import agmon_pencil, e1_pencil
from pencilab.halfline import (boundary_defect, contour_eval, eval_deriv,
                               l2_norm_deriv, mj, ode_residual, solve,
                               solve_from_roots, split_by_group, vieta)
from pencilab.pencil import group_roots, tau_polynomial

A1, B1 = 1.0, math.sqrt(101.0)     # E1 upper roots i*a, i*b at xi'=1, lam=10


def test_vieta_examples():
    assert np.allclose(vieta([1j, 10j]), [1.0, -11j, -10.0])
    assert np.allclose(vieta([1j]), [1.0, -1j])
    assert np.allclose(vieta([1j, 1j]), [1.0, -2j, -1.0])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=5.0, allow_nan=False,
                                   allow_infinity=False),
                min_size=1, max_size=6))
def test_vieta_reconstruction(roots):
    a = vieta(roots)
    # evaluate the product directly at a test point and compare
    z = 0.37 + 0.41j
    direct = np.prod([z - r for r in roots])
    assert np.polyval(a, z) == pytest.approx(direct, rel=1e-9, abs=1e-9)


def test_mj_examples():
    a = np.array([1.0, -11j, -10.0])
    assert np.allclose(mj(a, 2), [1.0])
    assert np.allclose(mj(a, 1), [1.0, -11j])
    with pytest.raises(ValueError):
        mj(a, 3)


def test_solve_e1_closed_form():
    sols = solve(e1_pencil(), np.array([1.0]), 10.0)
    a, b = A1, B1
    for t in (0.0, 0.3, 1.0, 2.5):
        w1 = (b * math.exp(-a * t) - a * math.exp(-b * t)) / (b - a)
        w2 = 1j * (math.exp(-a * t) - math.exp(-b * t)) / (b - a)
        assert eval_deriv(sols[0], 0, t) == pytest.approx(w1, abs=1e-10)
        assert eval_deriv(sols[1], 0, t) == pytest.approx(w2, abs=1e-10)


def test_solve_m1_single_exponential():
    sols = solve(agmon_pencil(), np.array([0.0]), 2.0)
    (sol,) = sols
    assert len(sol.terms) == 1
    assert sol.terms[0].tau == pytest.approx(2j, abs=1e-10)
    assert np.allclose(sol.terms[0].poly, [1.0])


def test_solve_confluent_double_root():
    # E1 at lambda=0 has the double upper root i|xi'|; w_1 = (1+t)e^{-t}
    sols = solve(e1_pencil(), np.array([1.0]), 0.0)
    for t in (0.0, 0.5, 2.0):
        assert eval_deriv(sols[0], 0, t) == pytest.approx(
            (1.0 + t) * math.exp(-t), abs=1e-6)


def test_boundary_conditions_and_ode_residual():
    p = e1_pencil()
    coeffs = tau_polynomial(p, np.array([1.0]), 10.0)
    for sol in solve(p, np.array([1.0]), 10.0):
        assert boundary_defect(sol) < 1e-10
        assert ode_residual(sol, coeffs) < 1e-10


def test_eval_deriv_boundary_values():
    sols = solve(e1_pencil(), np.array([1.0]), 10.0)
    assert eval_deriv(sols[0], 0, 0.0) == pytest.approx(1.0, abs=1e-10)
    assert eval_deriv(sols[1], 1, 0.0) == pytest.approx(1.0, abs=1e-10)
    assert eval_deriv(sols[0], 1, 0.0) == pytest.approx(0.0, abs=1e-10)


def test_l2_norm_closed_forms():
    sols = solve(e1_pencil(), np.array([1.0]), 10.0)
    a, b = A1, B1
    ref = math.sqrt((1 / (2 * a) - 2 / (a + b) + 1 / (2 * b)) / (b - a) ** 2)
    assert l2_norm_deriv(sols[1], 0) == pytest.approx(ref, rel=1e-12)
    assert l2_norm_deriv(sols[1], 0) == pytest.approx(0.0671, abs=5e-4)
    assert l2_norm_deriv(sols[1], 2) == pytest.approx(2.445, abs=5e-3)


def test_l2_norm_m1():
    lam = 7.0
    sols = solve_from_roots([1j * lam])
    assert l2_norm_deriv(sols[0], 0) == pytest.approx(1 / math.sqrt(2 * lam),
                                                      rel=1e-12)


def test_contour_oracle_agreement():
    sols = solve(e1_pencil(), np.array([1.0]), 10.0)
    for sol in sols:
        for l in (0, 1, 2):
            for t in (0.0, 0.5, 2.0):
                assert contour_eval(sol, l, t) == pytest.approx(
                    eval_deriv(sol, l, t), abs=1e-8)


def test_biorthogonality_via_contour():
    # (1/2 pi i) contour integral of tau^(k-1) M_j / A_+ equals delta_jk
    sols = solve(e1_pencil(), np.array([0.3]), 4.0)
    for sol in sols:
        for k in (1, 2):
            val = contour_eval(sol, k - 1, 0.0)
            assert val == pytest.approx(1.0 if k == sol.j else 0.0, abs=1e-10)


def test_split_by_group_e1():
    p = e1_pencil()
    sols = solve(p, np.array([1.0]), 10.0)
    g = group_roots(p, np.array([1.0]), 10.0)
    w1, w2 = split_by_group(sols[0], g)
    assert len(w1.terms) == 1 and len(w2.terms) == 1
    assert w1.terms[0].tau.imag == pytest.approx(A1, abs=1e-9)
    assert w2.terms[0].tau.imag == pytest.approx(B1, abs=1e-9)
    for t in (0.0, 0.1, 1.0):
        total = eval_deriv(w1, 0, t) + eval_deriv(w2, 0, t)
        assert total == pytest.approx(eval_deriv(sols[0], 0, t), abs=1e-12)


def test_split_mu_zero_empty_bounded_part():
    p = agmon_pencil()
    sols = solve(p, np.array([1.0]), 2.0)
    g = group_roots(p, np.array([1.0]), 2.0)
    w1, w2 = split_by_group(sols[0], g)
    assert w1.terms == ()
    assert len(w2.terms) == 1


def test_homogeneity_identity():
    p = e1_pencil()
    for (j, l, r) in [(1, 0, 2.0), (2, 2, 5.0), (1, 1, 0.5)]:
        lhs, rhs = halfline.homogeneity_check(p, np.array([1.0]), 10.0, r, j, l)
        assert lhs == pytest.approx(rhs, rel=1e-9)
    lhs, rhs = halfline.homogeneity_check(p, np.array([1.0]), 10.0, 1.0, 1, 0)
    assert lhs == rhs


def test_json_dump_shape():
    sols = solve(agmon_pencil(), np.array([0.0]), 2.0)
    d = sols[0].to_json_dict()
    assert d["terms"][0]["tau"] == pytest.approx([0.0, 2.0], abs=1e-12)
    assert d["terms"][0]["poly"] == [[pytest.approx(1.0), pytest.approx(0.0)]]


def _random_upper_roots(rng, m):
    return rng.uniform(-2, 2, m) + 1j * rng.uniform(0.2, 3.0, m)


def test_random_instances_residue_vs_contour():
    rng = np.random.default_rng(42)
    for _ in range(25):
        m = int(rng.integers(1, 6))
        roots = _random_upper_roots(rng, m)
        # occasionally force a multiple root
        if m >= 2 and rng.random() < 0.3:
            roots[1] = roots[0]
        full = np.array([1.0 + 0j])
        for r in np.concatenate([roots, np.conj(roots)]):
            full = np.convolve(full, [-r, 1.0])
        sols = solve_from_roots(roots, full)
        for sol in sols:
            assert boundary_defect(sol) < 1e-8
            for t in (0.0, 0.5, 2.0):
                assert abs(contour_eval(sol, 0, t)
                           - eval_deriv(sol, 0, t)) < 1e-8
