"""Instability-index quantity: closed forms, numeric solves, and bisection.

The stability of a pulse with one negative direction of the symmetrized
second variation hinges on the sign of

    I = < L^(-1) [(1 - b dxx)(psi, phi)^T], (1 - b dxx)(psi, phi)^T >,

negative for stability, positive for instability.  Two closed-form routes
exist:

* free-amplitude branch (a = c = -b): differentiating the traveling-wave
  system along the branch gives L^(-1) RHS = d/dw (phi, psi)^T, and the
  quantity collapses to d(w) = (144 sqrt(b) / 5) eta0 (4 + eta0) / (2 eta0 + 9),
  identical on both sign branches and negative throughout eta0 in (-9/4, 0);

* standing-wave branch (a = c < 0): a constant orthogonal rotation block-
  diagonalizes L into the scalar pair (kdv, hill), and with f = (1 - b dxx) phi,

      I = (1/3) (8 <kdv^(-1) f, f> + <hill^(-1) f, f>).

  The kdv part is exact:  kdv^(-1) f = (a + b) phi_a - phi  gives

      <kdv^(-1) f, f> = sqrt(-a) (-9/2 - 3 z + (3/10) z^2),   z = b / (-a).

  (The linear coefficient is -3; a value of -12/5 sometimes quoted for this
  family does not reproduce the defining inner products, e.g. at b = -a the
  inverse is exactly -phi and the quantity is the integral of phi^3, which
  is -(36/5) sqrt(-a).)  The hill part has no closed form; projecting f on
  a phi'' + phi (whose preimage is phi/2) and bounding the remainder g by
  0 < <hill^(-1) g, g> <= |g|^2 with |g|^2 = (2/5) sqrt(-a) (z - 1)^2
  sandwiches the normalized index:

      (2/45)(56 z^2 - 517 z - 754) < 3 I / sqrt(-a) <= (2/45)(65 z^2 - 535 z - 745),

  with equality of the two bounds at z = 1.  The bounds change sign at
  (107 + 9 sqrt(237)) / 26 ~ 9.44436 and (517 + 9 sqrt(5385)) / 112
  ~ 10.51288; the bisection below pins the actual crossing numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .discretization import (
    Grid,
    apply_multiplier,
    assemble_scalar_operator,
    assemble_system_operator_L,
    derivative_of_samples,
    inner_product,
    standing_wave_profile,
)
from .errors import (
    DomainError,
    IllConditioned,
    KernelDefect,
    NoSignChange,
    ResidualError,
    SolveFailure,
)
from .waves import AbcParameters

__all__ = [
    "InnerProductTable",
    "IndexReport",
    "BisectionResult",
    "closed_form_inner_products",
    "standing_wave_a_derivative",
    "kdv_inverse_apply",
    "kdv_index_closed_form",
    "kdv_index_numeric",
    "hill_index_numeric",
    "index_lower_bound_poly",
    "index_upper_bound_poly",
    "case2_index",
    "case1_index_closed_form",
    "general_index_numeric",
    "critical_ratio_bisection",
]


@dataclass(frozen=True)
class InnerProductTable:
    """Closed-form inner products of the standing-wave profile phi(x; a).

    phi = -(3/2) sech^2(x / (2 sqrt(-a))), phi_a its derivative in a.
    """

    phi_a_phi: float  # -3 / (2 sqrt(-a))
    phi_phipp: float  # -6 / (5 sqrt(-a))
    phi_a_phipp: float  # -3 / (10 |a| sqrt(-a))
    phi_phi: float  # 6 sqrt(-a)
    phipp_phipp: float  # 6 / (7 |a| sqrt(-a))


@dataclass(frozen=True)
class IndexReport:
    index_value: float
    kdv_part: float | None
    hill_part: float | None
    lower_bound_3I: float | None
    upper_bound_3I: float | None
    method: str  # "closed_form" | "numeric" | "hybrid"
    stable_by_index: bool


@dataclass(frozen=True)
class BisectionResult:
    z_star: float
    bracket_lo: float
    bracket_hi: float
    iterations: int
    evaluations: int


def closed_form_inner_products(a: float) -> InnerProductTable:
    if not a < 0:
        raise DomainError(f"a must be negative, got {a}")
    sa = math.sqrt(-a)
    return InnerProductTable(
        phi_a_phi=-1.5 / sa,
        phi_phipp=-1.2 / sa,
        phi_a_phipp=-0.3 / ((-a) * sa),
        phi_phi=6.0 * sa,
        phipp_phipp=6.0 / (7.0 * (-a) * sa),
    )


def standing_wave_a_derivative(a: float, grid: Grid) -> np.ndarray:
    """Analytic derivative in a of the standing-wave profile.

    d/da [-(3/2) sech^2(lam(a) x)] = 3 lam'(a) x sech^2(lam x) tanh(lam x)
    with lam = 1 / (2 sqrt(-a)), lam' = 1 / (4 (-a)^(3/2)).
    """
    if not a < 0:
        raise DomainError(f"a must be negative, got {a}")
    lam = 1.0 / (2.0 * math.sqrt(-a))
    lam_a = 1.0 / (4.0 * (-a) ** 1.5)
    x = grid.nodes
    return 3.0 * lam_a * x / np.cosh(lam * x) ** 2 * np.tanh(lam * x)


def _standing_rhs(a: float, b: float, grid: Grid) -> np.ndarray:
    """f = (1 - b dxx) phi for the standing-wave profile."""
    phi = standing_wave_profile(a, grid)
    return phi - b * derivative_of_samples(grid, phi, 2)


def kdv_inverse_apply(a: float, b: float, grid: Grid) -> np.ndarray:
    """Exact preimage v = (a + b) phi_a - phi of f under the kdv operator.

    Verifies | (a dxx + 1 + 2 phi) v - f |_inf < 1e-7 and raises
    ResidualError otherwise.
    """
    phi = standing_wave_profile(a, grid)
    v = (a + b) * standing_wave_a_derivative(a, grid) - phi
    f = _standing_rhs(a, b, grid)
    residual = a * derivative_of_samples(grid, v, 2) + v + 2.0 * phi * v - f
    defect = float(np.max(np.abs(residual)))
    if defect >= 1e-7:
        raise ResidualError(f"kdv inverse identity residual {defect:.3e} >= 1e-7")
    return v


def kdv_index_closed_form(a: float, b: float) -> float:
    """Closed form sqrt(-a) (-9/2 - 3 z + (3/10) z^2), z = b / (-a).

    Follows from the exact preimage (a + b) phi_a - phi paired with
    f = phi - b phi'' through the inner-product table; cross-validated by
    the deflated numeric solve to spectral accuracy.
    """
    if not (a < 0 and b > 0):
        raise DomainError(f"need a < 0 and b > 0, got a={a}, b={b}")
    z = b / (-a)
    return math.sqrt(-a) * (-4.5 - 3.0 * z + 0.3 * z * z)


def _inverse_iteration_kernel(matrix: np.ndarray, seed: np.ndarray, sweeps: int = 2) -> np.ndarray:
    """Numerical kernel vector by inverse iteration from a spectral seed."""
    v = seed / np.linalg.norm(seed)
    for _ in range(sweeps):
        try:
            v = np.linalg.solve(matrix, v)
        except np.linalg.LinAlgError as exc:
            raise SolveFailure(f"inverse iteration solve failed: {exc}") from exc
        v /= np.linalg.norm(v)
    return v


def _deflated_solve(
    matrix: np.ndarray,
    kernel: np.ndarray,
    rhs: np.ndarray,
    residual_tol: float,
) -> np.ndarray:
    """Solve on the orthogonal complement of a one-dimensional kernel.

    The kernel direction is projected out of the right-hand side, a rank-one
    shift makes the system nonsingular, and the solution is projected back.
    """
    rhs_perp = rhs - np.dot(kernel, rhs) * kernel
    shift = 1.0 + float(np.max(np.abs(matrix)))
    try:
        u = np.linalg.solve(matrix + shift * np.outer(kernel, kernel), rhs_perp)
    except np.linalg.LinAlgError as exc:
        raise SolveFailure(f"deflated solve failed: {exc}") from exc
    u -= np.dot(kernel, u) * kernel
    residual = float(np.max(np.abs(matrix @ u - rhs_perp)))
    if residual > residual_tol * max(1.0, float(np.max(np.abs(rhs_perp)))):
        raise IllConditioned(f"deflated solve residual {residual:.3e} too large")
    return u


def kdv_index_numeric(a: float, b: float, grid: Grid, residual_tol: float = 1e-6) -> float:
    """<kdv^(-1) f, f> by a kernel-deflated dense solve (kernel is phi')."""
    params = AbcParameters(a=a, b=b, c=a)
    matrix = assemble_scalar_operator("kdv", params, grid).entries
    phi = standing_wave_profile(a, grid)
    f = _standing_rhs(a, b, grid)
    kernel = _inverse_iteration_kernel(matrix, derivative_of_samples(grid, phi, 1))
    u = _deflated_solve(matrix, kernel, f, residual_tol)
    return inner_product(u, f, grid)


def hill_index_numeric(a: float, b: float, grid: Grid, split: bool = False):
    """<hill^(-1) f, f> by a symmetric positive definite solve.

    Returns (hill_part, projection_coeff, g_norm_sq); the last two are None
    unless split=True, in which case f is decomposed as
    c (a phi'' + phi) + g and c is verified against 7/9 + (2/9) z to 1e-8.
    Raises SolveFailure when the operator is not numerically positive
    definite.
    """
    params = AbcParameters(a=a, b=b, c=a)
    matrix = assemble_scalar_operator("hill", params, grid).entries
    f = _standing_rhs(a, b, grid)
    try:
        np.linalg.cholesky(matrix)
        u = np.linalg.solve(matrix, f)
    except np.linalg.LinAlgError as exc:
        raise SolveFailure(f"hill operator not positive definite: {exc}") from exc
    hill_part = inner_product(u, f, grid)
    if not split:
        return hill_part, None, None
    phi = standing_wave_profile(a, grid)
    h = a * derivative_of_samples(grid, phi, 2) + phi
    coeff = inner_product(f, h, grid) / inner_product(h, h, grid)
    expected = 7.0 / 9.0 + (2.0 / 9.0) * (b / abs(a))
    if abs(coeff - expected) > 1e-8:
        raise ResidualError(
            f"projection coefficient {coeff} deviates from {expected} by more than 1e-8"
        )
    g = f - coeff * h
    return hill_part, coeff, inner_product(g, g, grid)


def index_lower_bound_poly(z: float) -> float:
    """Lower bound of 3 I / sqrt(-a): dropping <hill^(-1) g, g> > 0."""
    return (2.0 / 45.0) * (56.0 * z * z - 517.0 * z - 754.0)


def index_upper_bound_poly(z: float) -> float:
    """Upper bound of 3 I / sqrt(-a): majorizing <hill^(-1) g, g> by |g|^2."""
    return (2.0 / 45.0) * (65.0 * z * z - 535.0 * z - 745.0)


def case2_index(a: float, b: float, grid: Grid, method: str = "numeric") -> IndexReport:
    """Index report for the standing-wave branch (a = c < 0).

    index_value = (1/3) (8 kdv_part + hill_part); with method "numeric" the
    kdv part comes from the deflated solve, with "hybrid" from the closed
    form.  The two bound polynomials bracket 3 I / sqrt(-a) up to solver
    tolerance, coinciding at z = 1.
    """
    if method not in ("numeric", "hybrid"):
        raise DomainError(f"method must be 'numeric' or 'hybrid', got {method}")
    if method == "numeric":
        kdv_part = kdv_index_numeric(a, b, grid)
    else:
        kdv_part = kdv_index_closed_form(a, b)
    hill_part, _, _ = hill_index_numeric(a, b, grid)
    index_value = (8.0 * kdv_part + hill_part) / 3.0
    z = b / (-a)
    return IndexReport(
        index_value=index_value,
        kdv_part=kdv_part,
        hill_part=hill_part,
        lower_bound_3I=index_lower_bound_poly(z),
        upper_bound_3I=index_upper_bound_poly(z),
        method=method,
        stable_by_index=index_value < 0,
    )


def case1_index_closed_form(eta0: float, b: float, sign_branch: int = +1) -> float:
    """Branch derivative d(w) = (144 sqrt(b) / 5) eta0 (4 + eta0) / (2 eta0 + 9).

    Valid for a = c = -b and eta0 in (-9/4, 0); both sign branches give the
    same value (the sign flips of dB/deta0 and deta0/dw cancel).
    """
    if sign_branch not in (+1, -1):
        raise DomainError(f"sign_branch must be +1 or -1, got {sign_branch}")
    if not b > 0:
        raise DomainError(f"b must be positive, got {b}")
    if not (-2.25 < eta0 < 0.0):
        raise DomainError(f"closed form requires eta0 in (-9/4, 0), got {eta0}")
    return (144.0 * math.sqrt(b) / 5.0) * eta0 * (4.0 + eta0) / (2.0 * eta0 + 9.0)


def general_index_numeric(
    params: AbcParameters,
    spec,
    wave,
    grid: Grid,
    defect_tol: float = 1e-8,
    residual_tol: float = 1e-6,
) -> float:
    """<L^(-1) RHS, RHS> with RHS = (1 - b dxx)(psi, phi)^T, kernel deflated.

    The kernel vector of L is computed numerically (inverse iteration from
    the spectral (phi', psi')); the right-hand side must be orthogonal to it
    (it is even, the kernel odd) with relative defect below defect_tol,
    otherwise KernelDefect is raised.  IllConditioned signals a deflated
    solve residual above residual_tol.
    """
    matrix = assemble_system_operator_L(params, spec, wave, grid).entries
    symbol = 1.0 + params.b * grid.wavenumbers**2
    rhs = np.concatenate(
        [apply_multiplier(grid, symbol, wave.psi), apply_multiplier(grid, symbol, wave.phi)]
    )
    seed = np.concatenate([wave.phi_dx, wave.psi_dx])
    kernel = _inverse_iteration_kernel(matrix, seed)
    defect = abs(float(np.dot(kernel, rhs))) / float(np.linalg.norm(rhs))
    if defect >= defect_tol:
        raise KernelDefect(f"kernel orthogonality defect {defect:.3e} >= {defect_tol}")
    u = _deflated_solve(matrix, kernel, rhs, residual_tol)
    return inner_product(u, rhs, grid)


def critical_ratio_bisection(
    z_lo: float,
    z_hi: float,
    tol: float,
    grid: Grid,
    method: str = "numeric",
) -> BisectionResult:
    """Bisect the sign change of the standing-wave index over z = b / (-a).

    a is fixed to -1 and b = z varies; by the scaling covariance
    index(a, b) = sqrt(-a) index(-1, b / (-a)) the crossing is independent
    of |a|.  Raises NoSignChange when the endpoint signs agree.
    """
    if not (z_lo < z_hi and tol > 0):
        raise DomainError(f"need z_lo < z_hi and tol > 0, got ({z_lo}, {z_hi}, {tol})")

    def value(z: float) -> float:
        return case2_index(-1.0, z, grid, method=method).index_value

    f_lo, f_hi = value(z_lo), value(z_hi)
    evaluations = 2
    if f_lo == 0.0:
        return BisectionResult(z_lo, z_lo, z_lo, 0, evaluations)
    if f_hi == 0.0:
        return BisectionResult(z_hi, z_hi, z_hi, 0, evaluations)
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise NoSignChange(
            f"index has the same sign at z={z_lo} ({f_lo:.4g}) and z={z_hi} ({f_hi:.4g})"
        )
    lo, hi = z_lo, z_hi
    iterations = 0
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        f_mid = value(mid)
        evaluations += 1
        iterations += 1
        if f_mid == 0.0:
            return BisectionResult(mid, mid, mid, iterations, evaluations)
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return BisectionResult(0.5 * (lo + hi), lo, hi, iterations, evaluations)
