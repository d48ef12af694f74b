"""Operator pencil symbols A(xi, lambda) = sum_j lambda^(2m-j) A_j(xi).

Each A_j is homogeneous of degree j; terms are stored as (alpha, j, coeff)
with |alpha| = j.  This module evaluates the symbol, checks the parameter
ellipticity conditions, and locates and groups the roots of the symbol in
the normal frequency.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import EllipticityError, PencilFormatError

REAL_AXIS_TOL = 1e-6
CLUSTER_TOL = 1e-8


@dataclass(frozen=True)
class Term:
    alpha: tuple[int, ...]
    j: int
    coeff: complex


@dataclass(frozen=True)
class Pencil:
    n: int
    m: int
    mu: int
    terms: tuple[Term, ...]

    def __post_init__(self):
        if not (self.m > self.mu >= 0):
            raise PencilFormatError(f"need m > mu >= 0, got m={self.m}, mu={self.mu}")
        for t in self.terms:
            if len(t.alpha) != self.n:
                raise PencilFormatError(f"multi-index {t.alpha} has length != n={self.n}")
            if any(a < 0 for a in t.alpha):
                raise PencilFormatError(f"negative entry in multi-index {t.alpha}")
            if sum(t.alpha) != t.j:
                raise PencilFormatError(f"|alpha| = {sum(t.alpha)} != j = {t.j}")
            if not (2 * self.mu <= t.j <= 2 * self.m):
                raise PencilFormatError(f"order j = {t.j} outside [2mu, 2m]")

    @property
    def degenerate(self) -> bool:
        """True if either extreme homogeneity order 2m or 2mu is absent."""
        orders = {t.j for t in self.terms if t.coeff != 0}
        return not (2 * self.m in orders and 2 * self.mu in orders)

    @property
    def coeff_scale(self) -> float:
        return sum(abs(t.coeff) for t in self.terms) or 1.0

    def exponent_points(self) -> set[tuple[int, int]]:
        """Points (|alpha|, lambda-power) generating the Newton polygon."""
        return {(t.j, 2 * self.m - t.j) for t in self.terms if t.coeff != 0}


def pencil_from_dict(data: dict) -> Pencil:
    try:
        n, m, mu = int(data["n"]), int(data["m"]), int(data["mu"])
        terms = tuple(
            Term(alpha=tuple(int(a) for a in t["alpha"]), j=int(t["j"]),
                 coeff=complex(float(t.get("re", 0.0)), float(t.get("im", 0.0))))
            for t in data["terms"])
    except (KeyError, TypeError, ValueError) as exc:
        raise PencilFormatError(f"bad pencil description: {exc}") from exc
    return Pencil(n=n, m=m, mu=mu, terms=terms)


def pencil_to_dict(p: Pencil) -> dict:
    return {
        "n": p.n, "m": p.m, "mu": p.mu,
        "terms": [{"alpha": list(t.alpha), "j": t.j,
                   "re": t.coeff.real, "im": t.coeff.imag} for t in p.terms],
    }


def load_pencil(path) -> Pencil:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise PencilFormatError(f"invalid JSON in {path}: {exc}") from exc
    return pencil_from_dict(data)


def eval_symbol(p: Pencil, xi, lam: float) -> complex:
    """A(xi, lambda) = sum coeff * xi^alpha * lambda^(2m - j)."""
    xi = np.asarray(xi, dtype=float)
    if xi.shape != (p.n,):
        raise ValueError(f"xi has shape {xi.shape}, expected ({p.n},)")
    out = 0j
    for t in p.terms:
        mono = 1.0
        for x, a in zip(xi, t.alpha):
            mono *= x ** a
        out += t.coeff * mono * lam ** (2 * p.m - t.j)
    return out


def homogeneous_part(p: Pencil, j: int, xi) -> complex:
    """A_j(xi), the degree-j homogeneous part."""
    xi = np.asarray(xi, dtype=float)
    out = 0j
    for t in p.terms:
        if t.j != j:
            continue
        mono = 1.0
        for x, a in zip(xi, t.alpha):
            mono *= x ** a
        out += t.coeff * mono
    return out


def tau_polynomial(p: Pencil, xi_prime, lam: float) -> np.ndarray:
    """Coefficients (ascending) of tau -> A(xi', tau, lambda), degree 2m."""
    xi_prime = np.asarray(xi_prime, dtype=float)
    if xi_prime.shape != (p.n - 1,):
        raise ValueError(f"xi' has shape {xi_prime.shape}, expected ({p.n - 1},)")
    coeffs = np.zeros(2 * p.m + 1, dtype=complex)
    for t in p.terms:
        mono = 1.0
        for x, a in zip(xi_prime, t.alpha[:-1]):
            mono *= x ** a
        coeffs[t.alpha[-1]] += t.coeff * mono * lam ** (2 * p.m - t.j)
    scale = np.max(np.abs(coeffs)) or 1.0
    if abs(coeffs[-1]) <= 1e-14 * scale:
        raise EllipticityError(
            "leading tau coefficient vanishes: A_2m is not elliptic in xi_n")
    return coeffs


def a2mu_tau_polynomial(p: Pencil, xi_prime) -> np.ndarray:
    """Coefficients (ascending) of tau -> A_2mu(xi', tau), degree 2mu."""
    xi_prime = np.asarray(xi_prime, dtype=float)
    coeffs = np.zeros(2 * p.mu + 1, dtype=complex)
    for t in p.terms:
        if t.j != 2 * p.mu:
            continue
        mono = 1.0
        for x, a in zip(xi_prime, t.alpha[:-1]):
            mono *= x ** a
        coeffs[t.alpha[-1]] += t.coeff * mono
    return coeffs


# ---------------------------------------------------------------------------
# root finding helpers

def poly_roots(coeffs: np.ndarray) -> np.ndarray:
    """Roots of a polynomial given by ascending coefficients, polished.

    Uses the balanced companion-matrix eigensolve behind numpy.roots and a
    few Newton steps per root to push residuals to roundoff.
    """
    coeffs = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    if coeffs.size <= 1:
        return np.zeros(0, dtype=complex)
    roots = np.roots(coeffs[::-1])
    dcoeffs = coeffs[1:] * np.arange(1, coeffs.size)
    for _ in range(4):
        val = np.polyval(coeffs[::-1], roots)
        dval = np.polyval(dcoeffs[::-1], roots)
        ok = np.abs(dval) > 1e-30
        step = np.where(ok, val / np.where(ok, dval, 1.0), 0.0)
        # Clustered roots make Newton steps unreliable; damp large moves.
        step = np.where(np.abs(step) < 1e-2 * (1.0 + np.abs(roots)), step, 0.0)
        roots = roots - step
    return roots


def cluster_roots(roots, tol_factor: float = CLUSTER_TOL):
    """Group roots within tol_factor*(1+|tau|) of each other.

    Returns a list of (center, indices); cluster size is the multiplicity.
    """
    remaining = list(range(len(roots)))
    clusters = []
    while remaining:
        i = remaining.pop(0)
        members = [i]
        changed = True
        while changed:
            changed = False
            for k in list(remaining):
                center = np.mean([roots[q] for q in members])
                if abs(roots[k] - center) <= tol_factor * (1.0 + abs(center)):
                    members.append(k)
                    remaining.remove(k)
                    changed = True
        center = np.mean([roots[q] for q in members])
        clusters.append((center, members))
    return clusters


# ---------------------------------------------------------------------------
# grids

def sphere_directions(n: int, count: int) -> np.ndarray:
    """Deterministic unit directions in R^n: +-1 (n=1), uniform angles (n=2),
    Fibonacci nodes (n=3), seeded normalized Gaussians otherwise."""
    if n == 1:
        return np.array([[1.0], [-1.0]])
    if n == 2:
        ang = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
        return np.stack([np.cos(ang), np.sin(ang)], axis=1)
    if n == 3:
        k = np.arange(count) + 0.5
        phi = np.arccos(1.0 - 2.0 * k / count)
        theta = np.pi * (1.0 + math.sqrt(5.0)) * k
        return np.stack([np.sin(phi) * np.cos(theta),
                         np.sin(phi) * np.sin(theta),
                         np.cos(phi)], axis=1)
    rng = np.random.default_rng(12345)
    v = rng.standard_normal((count, n))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


@dataclass(frozen=True)
class GridSpec:
    """Sampling densities for the compact-set checks."""

    angular: int = 720       # quarter-circle points in (|xi|, lambda)
    directions: int = 720    # unit-sphere directions (n=2 default)
    tol: float = 1e-6

    def direction_count(self, n: int) -> int:
        if n == 2:
            return self.directions
        if n == 3:
            return max(self.directions, 2000)
        return self.directions


@dataclass(frozen=True)
class EllipticityReport:
    cond_i: bool
    cond_ii: bool
    cond_iii: bool
    min_a2m: float
    min_a2mu: float
    min_abs: float
    C_est: float
    witness_i: np.ndarray
    witness_ii: np.ndarray
    witness_iii: tuple
    grid: GridSpec = field(default_factory=GridSpec)

    @property
    def n_elliptic(self) -> bool:
        return self.cond_i and self.cond_ii and self.cond_iii


def check_lemma21(p: Pencil, grid: GridSpec = GridSpec()) -> EllipticityReport:
    """Test the three equivalent conditions for parameter ellipticity.

    (i), (ii): the extreme homogeneous parts do not vanish on the unit
    sphere; (iii): the full symbol does not vanish on the compact set
    |xi|^2 + lambda^2 = 1, lambda >= 0, xi != 0.  The empirical lower-bound
    constant C_est = min |A| / (|xi|^2mu (lambda+|xi|)^(2m-2mu)) is taken
    over the same set (the symbol is homogeneous of degree 2m, so this
    slice determines the constant).
    """
    dirs = sphere_directions(p.n, grid.direction_count(p.n))
    scale = p.coeff_scale
    tol = grid.tol * scale

    vals_2m = np.array([abs(homogeneous_part(p, 2 * p.m, w)) for w in dirs])
    vals_2mu = np.array([abs(homogeneous_part(p, 2 * p.mu, w)) for w in dirs])
    i_min = int(np.argmin(vals_2m))
    ii_min = int(np.argmin(vals_2mu))

    theta = (np.arange(grid.angular) + 0.5) / grid.angular * (np.pi / 2.0)
    min_abs = np.inf
    c_est = np.inf
    witness = (dirs[0], 0.0)
    for th in theta:
        rho, lam = math.cos(th), math.sin(th)
        for w in dirs:
            a = abs(eval_symbol(p, rho * w, lam))
            denom = rho ** (2 * p.mu) * (lam + rho) ** (2 * p.m - 2 * p.mu)
            if a < min_abs:
                min_abs = a
                witness = (rho * w, lam)
            if denom > 1e-300:
                c_est = min(c_est, a / denom)

    cond_i = bool(vals_2m[i_min] > tol)
    cond_ii = bool(vals_2mu[ii_min] > tol)
    cond_iii = bool(min_abs > tol)
    return EllipticityReport(
        cond_i=cond_i, cond_ii=cond_ii, cond_iii=cond_iii,
        min_a2m=float(vals_2m[i_min]), min_a2mu=float(vals_2mu[ii_min]),
        min_abs=float(min_abs),
        C_est=float(c_est) if (cond_i and cond_ii and cond_iii) else 0.0,
        witness_i=dirs[i_min], witness_ii=dirs[ii_min], witness_iii=witness,
        grid=grid)


def q_polynomial(p: Pencil) -> np.ndarray:
    """Ascending coefficients of Q(tau) = tau^(-2mu) A(0, tau, 1), degree 2m-2mu.

    Terms with any tangential frequency vanish at xi' = 0, so the lowest
    2mu coefficients of A(0, tau, 1) vanish structurally; we additionally
    require Q(0) != 0, which holds for parameter-elliptic pencils.
    """
    full = tau_polynomial(p, np.zeros(p.n - 1), 1.0)
    low = full[:2 * p.mu]
    scale = np.max(np.abs(full)) or 1.0
    if np.any(np.abs(low) > 1e-12 * scale):
        raise PencilFormatError("low-order tau coefficients of A(0,tau,1) nonzero")
    q = full[2 * p.mu:]
    if abs(q[0]) <= 1e-12 * scale:
        raise EllipticityError("Q(0) = 0: pencil violates parameter ellipticity at xi=0")
    return q


class DegenerationResult(NamedTuple):
    regular: bool | None           # None = indeterminate (near-real root)
    upper_roots: tuple[complex, ...]
    k1: int


def check_regular_degeneration(p: Pencil) -> DegenerationResult:
    """Count upper-half-plane roots of Q; regular iff the count is m - mu."""
    q = q_polynomial(p)
    roots = poly_roots(q)
    scale = 1.0 + np.max(np.abs(roots), initial=0.0)
    if np.any(np.abs(roots.imag) <= REAL_AXIS_TOL * scale):
        return DegenerationResult(None, tuple(roots[roots.imag > 0]), 0)
    upper = roots[roots.imag > 0]
    clusters = cluster_roots(upper)
    k1 = max((len(members) for _, members in clusters), default=0)
    return DegenerationResult(len(upper) == p.m - p.mu, tuple(upper), k1)


def remark22_checks(p: Pencil, grid: GridSpec = GridSpec()) -> dict:
    """Sufficient conditions for regular degeneration.

    even_order: only even homogeneity orders occur, so Q is a polynomial in
    tau^2.  strongly_elliptic: Re A dominates |xi|^2mu (lambda+|xi|)^(2m-2mu)
    on the compact slice.  Either condition implies regular degeneration.
    """
    even_order = all(t.j % 2 == 0 for t in p.terms if t.coeff != 0)
    dirs = sphere_directions(p.n, grid.direction_count(p.n))
    theta = (np.arange(grid.angular) + 0.5) / grid.angular * (np.pi / 2.0)
    c_min = np.inf
    for th in theta:
        rho, lam = math.cos(th), math.sin(th)
        for w in dirs:
            denom = rho ** (2 * p.mu) * (lam + rho) ** (2 * p.m - 2 * p.mu)
            if denom > 1e-300:
                c_min = min(c_min, eval_symbol(p, rho * w, lam).real / denom)
    return {"even_order": even_order,
            "strongly_elliptic": bool(c_min > grid.tol * p.coeff_scale)}


@dataclass(frozen=True)
class RootSet:
    all_roots: tuple[complex, ...]
    upper: tuple[complex, ...]
    lower: tuple[complex, ...]


def tau_roots(p: Pencil, xi_prime, lam: float) -> RootSet:
    """All 2m roots of A(xi', tau, lambda), with the upper half marked.

    Raises EllipticityError if a root sits on the real axis (within
    tolerance) or if the upper count differs from m.
    """
    xi_prime = np.asarray(xi_prime, dtype=float)
    if np.linalg.norm(xi_prime) == 0.0 and lam == 0.0:
        raise ValueError("need xi' != 0 or lambda > 0")
    coeffs = tau_polynomial(p, xi_prime, lam)
    roots = poly_roots(coeffs)
    scale = 1.0 + np.max(np.abs(roots), initial=0.0)
    if np.any(np.abs(roots.imag) <= REAL_AXIS_TOL * scale):
        raise EllipticityError(
            f"root on the real axis at xi'={xi_prime}, lambda={lam}")
    upper = tuple(roots[roots.imag > 0])
    lower = tuple(roots[roots.imag < 0])
    if len(upper) != p.m:
        raise EllipticityError(
            f"{len(upper)} upper roots, expected m = {p.m} (m_+ = m violated)")
    return RootSet(tuple(roots), upper, lower)


@dataclass(frozen=True)
class RootGrouping:
    upper_roots: tuple[complex, ...]
    group_bounded: tuple[int, ...]     # indices into upper_roots, mu of them
    group_large: tuple[int, ...]       # indices into upper_roots, m - mu of them
    bounded_targets: tuple[complex, ...]   # upper zeros of A_2mu(xi', .)
    large_targets: tuple[complex, ...]     # lambda * upper zeros of Q
    residual_bounded: tuple[float, ...]
    residual_large: tuple[float, ...]
    k1: int
    ambiguous: bool


def group_roots(p: Pencil, xi_prime, lam: float,
                ambiguity_tol: float = 1e-9) -> RootGrouping:
    """Match upper roots to the bounded group and the O(lambda) group.

    Bounded targets are the mu upper zeros of A_2mu(xi', .); large targets
    are lambda times the upper zeros of Q.  Matching is a minimum-cost
    bipartite assignment; residual quality is reported, not asserted.
    """
    rs = tau_roots(p, xi_prime, lam)
    upper = np.array(rs.upper)

    if p.mu > 0:
        bounded_targets = poly_roots(a2mu_tau_polynomial(p, xi_prime))
        bounded_targets = bounded_targets[bounded_targets.imag > 0]
        if len(bounded_targets) != p.mu:
            raise EllipticityError(
                f"A_2mu has {len(bounded_targets)} upper zeros, expected mu={p.mu}")
    else:
        bounded_targets = np.zeros(0, dtype=complex)

    q = q_polynomial(p)
    q_upper = poly_roots(q)
    q_upper = q_upper[q_upper.imag > 0]
    if len(q_upper) != p.m - p.mu:
        raise EllipticityError(
            f"Q has {len(q_upper)} upper roots, expected m - mu = {p.m - p.mu}")
    clusters = cluster_roots(q_upper)
    k1 = max((len(members) for _, members in clusters), default=0)
    large_targets = lam * q_upper

    targets = np.concatenate([bounded_targets, large_targets])
    cost = np.abs(upper[:, None] - targets[None, :])
    rows, cols = linear_sum_assignment(cost)
    assign = dict(zip(cols.tolist(), rows.tolist()))

    group_bounded = tuple(assign[c] for c in range(p.mu))
    group_large = tuple(assign[c] for c in range(p.mu, p.m))
    residual_bounded = tuple(float(cost[assign[c], c]) for c in range(p.mu))
    residual_large = tuple(float(cost[assign[c], c]) for c in range(p.mu, p.m))

    ambiguous = False
    if p.mu > 0 and p.m > p.mu:
        for i in range(p.m):
            d_b = cost[i, :p.mu].min()
            d_l = cost[i, p.mu:].min()
            if abs(d_b - d_l) <= ambiguity_tol * (1.0 + abs(upper[i])):
                ambiguous = True
    return RootGrouping(
        upper_roots=tuple(upper), group_bounded=group_bounded,
        group_large=group_large,
        bounded_targets=tuple(bounded_targets),
        large_targets=tuple(large_targets),
        residual_bounded=residual_bounded, residual_large=residual_large,
        k1=k1, ambiguous=ambiguous)
