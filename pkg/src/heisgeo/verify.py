"""Named, tolerance-tagged residual suites over ambient spaces and patches.

Each check turns one proved identity into a machine-checkable residual:

- ``check_gauss``: intrinsic Gaussian curvature against the extrinsic
  curvature relation.
- ``check_codazzi``: the Codazzi equation for the shape-operator field with
  coordinate fields X = d/du, Y = d/dv, realized with finite differences of
  the S-field plus induced-connection corrections.
- ``check_helix_ode``: the ODE satisfied by the non-constant shape entry of
  a constant-angle patch, with a directional derivative along T.
- ``check_parallel``: the three parallel-surface equations in a
  pseudo-orthonormal tangent frame; also usable on synthetic inputs through
  :func:`parallel_equations_residuals`.
- ``check_claims``: composite implications (parallel => constant mean
  curvature, constant-angle CMC <=> parallel, the constant-curvature value,
  trace bookkeeping, non-umbilicity).
- ``check_ambient``: the ambient frame/connection/curvature tables against
  the finite-difference coordinate path, the two curvature formulas against
  each other, and sectional-curvature constancy on the matching
  constant-curvature parameter choice.

Every suite is deterministic given (inputs, grid, seed).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import ambient
from .ambient import SpaceParams
from .errors import DegenerateFrame, NotAHelixPatch, StencilTooCoarse
from .numeric import Vec3, solve2, sub3
from .surface import (
    SurfacePatch,
    _sample,
    _tangent_coefficients,
    causal_character,
    gaussian_curvature,
    induced_metric,
    mean_curvature,
    shape_operator,
)

DEFAULT_SEED = 1729

#: suite names accepted by :func:`run_suite`
SUITE_NAMES = ("ambient", "gauss", "codazzi", "helix_ode", "parallel", "claims")

#: per-check default tolerances (first-derivative checks 1e-5,
#: second-derivative checks 1e-4, exact table checks 0)
DEFAULT_TOLERANCES: dict[str, float] = {
    "ambient.frame_orthonormality": 1e-12,
    "ambient.bracket": 1e-9,
    "ambient.connection_table": 0.0,
    "ambient.connection_fd": 1e-6,
    "ambient.curvature_table": 0.0,
    "ambient.curvature_fd": 1e-6,
    "ambient.curvature_formula_agreement": 1e-10,
    "ambient.grad_e3_wedge": 1e-7,
    "ambient.sectional_constancy": 1e-6,
    "gauss.extrinsic_vs_intrinsic": 1e-5,
    "codazzi.coordinate_fields": 1e-4,
    "helix_ode.residual": 1e-5,
    "parallel.equations": 1e-5,
    "claims.parallel_implies_cmc": 1e-8,
    "claims.cmc_iff_parallel": 0.5,
    "claims.constant_angle_gauss": 1e-6,
    "claims.mean_from_adapted_s22": 1e-8,
    "claims.non_umbilic": 1e-6,
}

_SURFACE_STEP = 1e-3
_GRID_INSET = 0.03
_CONSTANT_ANGLE_RANGE = 1e-6


def resolve_tolerance(check_id: str, overrides: Optional[dict] = None) -> float:
    """Tolerance for a check id; overrides may name a check id or its suite."""
    if overrides:
        if check_id in overrides:
            return float(overrides[check_id])
        suite = check_id.split(".", 1)[0]
        if suite in overrides:
            return float(overrides[suite])
    return DEFAULT_TOLERANCES[check_id]


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    max_residual: float
    tol: float

    @property
    def verdict(self) -> str:
        return "pass" if self.max_residual <= self.tol else "fail"

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tol

    def as_dict(self) -> dict:
        return {"id": self.check_id, "max_residual": self.max_residual,
                "tol": self.tol, "verdict": self.verdict}


@dataclass
class ResidualSuite:
    name: str
    seed: int
    checks: list[CheckResult]
    grid: Optional[tuple[int, int]] = None
    patch_descriptor: Optional[dict] = field(default=None)

    @property
    def verdict(self) -> str:
        return "pass" if all(c.passed for c in self.checks) else "fail"

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {"suite": self.name, "seed": self.seed,
                "checks": [c.as_dict() for c in self.checks],
                "verdict": self.verdict}


def _check(check_id: str, residual: float,
           tolerances: Optional[dict]) -> CheckResult:
    return CheckResult(check_id, residual, resolve_tolerance(check_id, tolerances))


# ---- grid sampling ----


def interior_grid(patch: SurfacePatch, grid: tuple[int, int],
                  inset: float = _GRID_INSET) -> list[tuple[float, float]]:
    """Uniform sample points inset from the patch boundary (stencil headroom)."""
    (u0, u1), (v0, v1) = patch.domain
    su = min(inset, 0.2 * (u1 - u0))
    sv = min(inset, 0.2 * (v1 - v0))
    nu, nv = int(grid[0]), int(grid[1])
    if nu < 2 or nv < 2:
        raise ValueError("check grids need at least 2x2 samples")
    us = [u0 + su + (u1 - u0 - 2 * su) * i / (nu - 1) for i in range(nu)]
    vs = [v0 + sv + (v1 - v0 - 2 * sv) * j / (nv - 1) for j in range(nv)]
    return [(u, v) for u in us for v in vs]


def _directional_step(fd_step: float, direction: tuple[float, float]) -> float:
    """Shrink the step so displaced stencil points stay near the sample."""
    m = max(abs(direction[0]), abs(direction[1]), 1.0)
    return fd_step / m


# ---- gauss ----


def check_gauss(patch: SurfacePatch, grid: tuple[int, int] = (15, 15),
                tolerances: Optional[dict] = None) -> CheckResult:
    """max |K_intrinsic - K_extrinsic| over an interior grid."""
    worst = 0.0
    for (u, v) in interior_grid(patch, grid):
        k_ext = gaussian_curvature(patch, u, v, method="extrinsic")
        k_int = gaussian_curvature(patch, u, v, method="intrinsic")
        worst = max(worst, abs(k_int - k_ext))
    return _check("gauss.extrinsic_vs_intrinsic", worst, tolerances)


# ---- codazzi ----


def _induced_christoffels(patch: SurfacePatch, u: float, v: float,
                          h: float) -> list[list[list[float]]]:
    """Christoffel symbols of the induced metric, gamma[k][i][j],
    index order (u, v), by central differences of the metric fields."""
    def comps(uu: float, vv: float) -> tuple[float, float, float]:
        f = induced_metric(patch, uu, vv)
        return (f.e, f.f, f.g)

    def d5(along_u: bool) -> list[float]:
        if along_u:
            rows = [comps(u + s * h, v) for s in (2, 1, -1, -2)]
        else:
            rows = [comps(u, v + s * h) for s in (2, 1, -1, -2)]
        return [(-p2 + 8 * p1 - 8 * m1 + m2) / (12 * h)
                for p2, p1, m1, m2 in zip(*rows)]

    c0 = comps(u, v)
    du = d5(True)
    dv = d5(False)
    # metric component matrix g[i][j] and derivative dg[l][i][j]
    g = ((c0[0], c0[1]), (c0[1], c0[2]))
    dg = (((du[0], du[1]), (du[1], du[2])),
          ((dv[0], dv[1]), (dv[1], dv[2])))
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    inv = ((g[1][1] / det, -g[0][1] / det), (-g[1][0] / det, g[0][0] / det))
    gamma = [[[0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]]]
    for k in range(2):
        for i in range(2):
            for j in range(2):
                acc = 0.0
                for l in range(2):
                    acc += inv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j])
                gamma[k][i][j] = 0.5 * acc
    return gamma


def check_codazzi(patch: SurfacePatch, grid: tuple[int, int] = (12, 12),
                  fd_step: float = _SURFACE_STEP,
                  tolerances: Optional[dict] = None) -> CheckResult:
    """Codazzi residual with X = d/du, Y = d/dv over an interior grid.

    The covariant derivative of the S-field uses central differences of the
    coordinate-basis S matrix plus induced-connection corrections; the
    comparison vector is measured in ambient frame components.
    """
    (u0, u1), (v0, v1) = patch.domain
    if 2.0 * fd_step > 0.25 * min(u1 - u0, v1 - v0):
        raise StencilTooCoarse(
            f"fd_step {fd_step} too large for domain {patch.domain}")
    space = patch.space
    tau = space.tau

    def s_matrix(uu: float, vv: float):
        return shape_operator(patch, uu, vv).entries()

    def d5_col(u: float, v: float, along_u: bool, col: int):
        if along_u:
            ms = [s_matrix(u + s * fd_step, v) for s in (2, 1, -1, -2)]
        else:
            ms = [s_matrix(u, v + s * fd_step) for s in (2, 1, -1, -2)]
        return tuple((-ms[0][i][col] + 8 * ms[1][i][col]
                      - 8 * ms[2][i][col] + ms[3][i][col]) / (12 * fd_step)
                     for i in range(2))

    worst = 0.0
    for (u, v) in interior_grid(patch, grid):
        m0 = s_matrix(u, v)
        # d/du of S(d/dv) and d/dv of S(d/du), coefficient 2-vectors
        du_sv = d5_col(u, v, True, 1)
        dv_su = d5_col(u, v, False, 0)
        gamma = _induced_christoffels(patch, u, v, fd_step)
        s_col_v = (m0[0][1], m0[1][1])
        s_col_u = (m0[0][0], m0[1][0])
        lhs = [0.0, 0.0]
        for k in range(2):
            cu = du_sv[k] + sum(gamma[k][0][j] * s_col_v[j] for j in range(2))
            cv = dv_su[k] + sum(gamma[k][1][j] * s_col_u[j] for j in range(2))
            lhs[k] = cu - cv
        s = _sample(patch, u, v)
        t_frame = sub3((0.0, 0.0, 1.0), (s.nu * s.n[0], s.nu * s.n[1],
                                         s.nu * s.n[2]))
        g_ut = ambient.frame_metric(space, s.a, t_frame)
        g_vt = ambient.frame_metric(space, s.b, t_frame)
        factor = -4.0 * space.delta * s.eps * s.nu * tau * tau
        rhs = (-factor * g_vt, factor * g_ut)
        cu, cv = lhs[0] - rhs[0], lhs[1] - rhs[1]
        w = tuple(cu * s.a[i] + cv * s.b[i] for i in range(3))
        worst = max(worst, math.sqrt(w[0] ** 2 + w[1] ** 2 + w[2] ** 2))
    return _check("codazzi.coordinate_fields", worst, tolerances)


# ---- helix ODE ----


def check_helix_ode(patch: SurfacePatch, grid: tuple[int, int] = (12, 12),
                    fd_step: float = _SURFACE_STEP,
                    tolerances: Optional[dict] = None) -> CheckResult:
    """Residual of T(mu) + mu^2 nu - 4 delta tau^2 nu^3 on a constant-angle
    patch, with mu the varying adapted-basis shape entry."""
    pts = interior_grid(patch, grid)
    nus = [_sample(patch, u, v).nu for (u, v) in pts]
    if max(nus) - min(nus) > _CONSTANT_ANGLE_RANGE:
        raise NotAHelixPatch(
            f"angle function varies by {max(nus) - min(nus):.3e} over the grid")
    space = patch.space
    tau = space.tau

    def mu(uu: float, vv: float) -> float:
        return shape_operator(patch, uu, vv, basis="adapted-TJT").s22

    worst = 0.0
    for (u, v), nu in zip(pts, nus):
        s = _sample(patch, u, v)
        t_frame = sub3((0.0, 0.0, 1.0), (nu * s.n[0], nu * s.n[1], nu * s.n[2]))
        t1, t2 = _tangent_coefficients(space, s, t_frame)
        h = _directional_step(fd_step, (t1, t2))
        vals = [mu(u + s_ * h * t1, v + s_ * h * t2) for s_ in (2, 1, -1, -2)]
        t_mu = (-vals[0] + 8 * vals[1] - 8 * vals[2] + vals[3]) / (12 * h)
        mu0 = mu(u, v)
        worst = max(worst, abs(t_mu + mu0 * mu0 * nu
                               - 4.0 * space.delta * tau * tau * nu ** 3))
    return _check("helix_ode.residual", worst, tolerances)


# ---- parallel ----


@dataclass
class ParallelCheckInput:
    """Inputs for the parallel-surface equations in a pseudo-orthonormal
    tangent frame {F1, F2} with g(F1,F1) = 1 and g(F2,F2) = -eps.

    frame_directions(u, v) -> coordinate coefficients of (F1, F2);
    entries(u, v) -> operator entries (S11, S12, S22) in that frame
    (the operator is self-adjoint, so S21 is determined);
    omega(u, v, k) -> g(nabla_{F_k} F1, F2) for k in {0, 1}.
    """

    eps: int
    points: Sequence[tuple[float, float]]
    frame_directions: Callable[[float, float],
                               tuple[tuple[float, float], tuple[float, float]]]
    entries: Callable[[float, float], tuple[float, float, float]]
    omega: Callable[[float, float, int], float]


def parallel_equations_residuals(inp: ParallelCheckInput,
                                 fd_step: float = _SURFACE_STEP) -> float:
    """Max residual of the three parallel-surface equations

        X(S11) = -2 eps S12 w(X)
        X(S12) = (S22 - S11) w(X)
        X(S22) =  2 eps S12 w(X)

    over the given points with X ranging over the frame."""
    eps = inp.eps
    worst = 0.0
    for (u, v) in inp.points:
        dirs = inp.frame_directions(u, v)
        s11, s12, s22 = inp.entries(u, v)
        for k in (0, 1):
            d = dirs[k]
            h = _directional_step(fd_step, d)
            ep = inp.entries(u + h * d[0], v + h * d[1])
            em = inp.entries(u - h * d[0], v - h * d[1])
            x_s11 = (ep[0] - em[0]) / (2 * h)
            x_s12 = (ep[1] - em[1]) / (2 * h)
            x_s22 = (ep[2] - em[2]) / (2 * h)
            w = inp.omega(u, v, k)
            worst = max(worst,
                        abs(x_s11 + 2.0 * eps * s12 * w),
                        abs(x_s12 - (s22 - s11) * w),
                        abs(x_s22 - 2.0 * eps * s12 * w))
    return worst


def _eigen_seeds(patch: SurfacePatch) -> tuple[tuple[float, float],
                                               tuple[float, float]]:
    """Eigen-directions of the center induced metric, spacelike first."""
    uc, vc = patch.center()
    f = induced_metric(patch, uc, vc)
    e, fm, g = f.e, f.f, f.g
    if abs(fm) < 1e-14:
        pairs = [(e, (1.0, 0.0)), (g, (0.0, 1.0))]
    else:
        half = 0.5 * (e + g)
        disc = math.sqrt(0.25 * (e - g) ** 2 + fm * fm)
        lam1, lam2 = half + disc, half - disc
        v1 = (fm, lam1 - e)
        v2 = (fm, lam2 - e)

        def unit(w):
            n = math.hypot(w[0], w[1])
            return (w[0] / n, w[1] / n)

        pairs = [(lam1, unit(v1)), (lam2, unit(v2))]
    pairs.sort(key=lambda t: t[0], reverse=True)
    if pairs[0][0] <= 1e-12:
        raise DegenerateFrame("no spacelike tangent direction at patch center")

    def sign_fix(w):
        lead = w[0] if abs(w[0]) >= abs(w[1]) else w[1]
        return (-w[0], -w[1]) if lead < 0.0 else w

    return sign_fix(pairs[0][1]), sign_fix(pairs[1][1])


def _parallel_input(patch: SurfacePatch,
                    points: Sequence[tuple[float, float]]) -> ParallelCheckInput:
    space = patch.space
    d1, d2 = _eigen_seeds(patch)
    uc, vc = patch.center()
    eps = causal_character(patch, uc, vc)

    def frame_dirs(u: float, v: float):
        f = induced_metric(patch, u, v)

        def pair(a, b) -> float:
            return (f.e * a[0] * b[0] + f.f * (a[0] * b[1] + a[1] * b[0])
                    + f.g * a[1] * b[1])

        q1 = pair(d1, d1)
        if q1 <= 1e-12:
            raise DegenerateFrame("seed direction lost its spacelike norm")
        r1 = math.sqrt(q1)
        e1 = (d1[0] / r1, d1[1] / r1)
        inner = pair(d2, e1)
        b = (d2[0] - inner * e1[0], d2[1] - inner * e1[1])
        q2 = pair(b, b)
        if abs(q2) < 1e-12:
            raise DegenerateFrame("orthogonal complement is degenerate")
        if (q2 > 0) != (-eps > 0):
            raise DegenerateFrame("tangent signature inconsistent with eps")
        r2 = math.sqrt(abs(q2))
        e2 = (b[0] / r2, b[1] / r2)
        return (e1, e2)

    def entries(u: float, v: float):
        m = shape_operator(patch, u, v).entries()
        e1, e2 = frame_dirs(u, v)
        f = induced_metric(patch, u, v)

        def pair(a, b) -> float:
            return (f.e * a[0] * b[0] + f.f * (a[0] * b[1] + a[1] * b[0])
                    + f.g * a[1] * b[1])

        def image(w):
            return (m[0][0] * w[0] + m[0][1] * w[1],
                    m[1][0] * w[0] + m[1][1] * w[1])

        g11, g12, g22 = pair(e1, e1), pair(e1, e2), pair(e2, e2)
        s_e1, s_e2 = image(e1), image(e2)
        a11, _ = solve2(g11, g12, g12, g22, pair(s_e1, e1), pair(s_e1, e2))
        a12, a22 = solve2(g11, g12, g12, g22, pair(s_e2, e1), pair(s_e2, e2))
        return (a11, a12, a22)

    def frame_ambient(u: float, v: float):
        s = _sample(patch, u, v)
        e1, e2 = frame_dirs(u, v)
        w1 = tuple(e1[0] * s.a[i] + e1[1] * s.b[i] for i in range(3))
        w2 = tuple(e2[0] * s.a[i] + e2[1] * s.b[i] for i in range(3))
        return w1, w2

    def omega(u: float, v: float, k: int) -> float:
        w1, w2 = frame_ambient(u, v)
        dirs = frame_dirs(u, v)
        d = dirs[k]
        h = _directional_step(_SURFACE_STEP, d)
        wp = frame_ambient(u + h * d[0], v + h * d[1])[0]
        wm = frame_ambient(u - h * d[0], v - h * d[1])[0]
        dw = tuple((wp[i] - wm[i]) / (2 * h) for i in range(3))
        x_amb = (w1, w2)[k]
        corr = ambient.frame_connection_correction(patch.space, x_amb, w1)
        nab = tuple(dw[i] + corr[i] for i in range(3))
        return ambient.frame_metric(patch.space, nab, w2)

    return ParallelCheckInput(eps, points, frame_dirs, entries, omega)


def check_parallel(patch: SurfacePatch, grid: tuple[int, int] = (12, 12),
                   fd_step: float = _SURFACE_STEP,
                   tolerances: Optional[dict] = None) -> CheckResult:
    """Parallel-surface equations over an interior grid; verdict 'pass'
    means the patch is parallel to tolerance."""
    pts = interior_grid(patch, grid)
    inp = _parallel_input(patch, pts)
    worst = parallel_equations_residuals(inp, fd_step)
    return _check("parallel.equations", worst, tolerances)


# ---- claims ----


def check_claims(patch: SurfacePatch, grid: tuple[int, int] = (12, 12),
                 seed: int = DEFAULT_SEED,
                 tolerances: Optional[dict] = None) -> ResidualSuite:
    """Composite implications over a patch:

    - parallel => mean curvature constant,
    - on constant-angle patches, CMC <=> parallel,
    - extrinsic curvature equals its constant-angle closed form
      4 delta eps tau^2 nu^2,
    - H equals half the varying adapted shape entry,
    - the adapted off-diagonal entry stays away from 0 (non-umbilic).
    """
    space = patch.space
    tau = space.tau
    pts = interior_grid(patch, grid)
    hs, nus, kexts, s12s, s22s = [], [], [], [], []
    eps0 = causal_character(patch, *patch.center())
    for (u, v) in pts:
        adapted = shape_operator(patch, u, v, basis="adapted-TJT")
        hs.append(0.5 * adapted.trace)
        nus.append(_sample(patch, u, v).nu)
        kexts.append(gaussian_curvature(patch, u, v, method="extrinsic"))
        s12s.append(adapted.s12)
        s22s.append(adapted.s22)
    h_range = max(hs) - min(hs)
    nu_mean = sum(nus) / len(nus)
    parallel = check_parallel(patch, grid, tolerances=tolerances)

    checks = []
    cmc_tol = resolve_tolerance("claims.parallel_implies_cmc", tolerances)
    checks.append(_check("claims.parallel_implies_cmc",
                         h_range if parallel.passed else 0.0, tolerances))
    is_cmc = h_range <= cmc_tol
    checks.append(_check("claims.cmc_iff_parallel",
                         0.0 if is_cmc == parallel.passed else 1.0, tolerances))
    target = 4.0 * space.delta * eps0 * tau * tau * nu_mean * nu_mean
    checks.append(_check("claims.constant_angle_gauss",
                         max(abs(k - target) for k in kexts), tolerances))
    checks.append(_check("claims.mean_from_adapted_s22",
                         max(abs(h - 0.5 * s22) for h, s22 in zip(hs, s22s)),
                         tolerances))
    checks.append(_check("claims.non_umbilic",
                         abs(tau) - min(abs(x) for x in s12s), tolerances))
    return ResidualSuite("claims", seed, checks, grid=grid,
                         patch_descriptor=dict(patch.family) if patch.family else None)


# ---- ambient ----

# frame-component curvature table R(E_i, E_j)E_k for i < j (zero rows and
# antisymmetry in (i, j) fill in the rest); entries scale as stated with
# tau^2 and the plane sign delta
_CURVATURE_TABLE = {
    (1, 2, 1): lambda d, t2: (0.0, -3.0 * t2, 0.0),
    (1, 2, 2): lambda d, t2: (-3.0 * d * t2, 0.0, 0.0),
    (1, 2, 3): lambda d, t2: (0.0, 0.0, 0.0),
    (1, 3, 1): lambda d, t2: (0.0, 0.0, t2),
    (1, 3, 2): lambda d, t2: (0.0, 0.0, 0.0),
    (1, 3, 3): lambda d, t2: (-d * t2, 0.0, 0.0),
    (2, 3, 1): lambda d, t2: (0.0, 0.0, 0.0),
    (2, 3, 2): lambda d, t2: (0.0, 0.0, -d * t2),
    (2, 3, 3): lambda d, t2: (0.0, -d * t2, 0.0),
}


def curvature_table(space: SpaceParams) -> dict[tuple[int, int, int], Vec3]:
    """The curvature tensor on frame triples (i < j) as a literal table."""
    t2 = space.tau * space.tau
    return {key: fn(space.delta, t2) for key, fn in _CURVATURE_TABLE.items()}


def curvature_from_table(space: SpaceParams, a, b, c) -> Vec3:
    """R(A, B)C by trilinear expansion of the literal frame table
    (independent of the closed coefficient formula)."""
    table = curvature_table(space)
    out = [0.0, 0.0, 0.0]
    for (i, j), coeff in (((1, 2), a[0] * b[1] - a[1] * b[0]),
                          ((1, 3), a[0] * b[2] - a[2] * b[0]),
                          ((2, 3), a[1] * b[2] - a[2] * b[1])):
        for k in (1, 2, 3):
            ck = c[k - 1]
            if ck == 0.0 and coeff == 0.0:
                continue
            val = table[(i, j, k)]
            for m in range(3):
                out[m] += coeff * ck * val[m]
    return (out[0], out[1], out[2])


def _rand_point(rng: random.Random, box: float = 1.5,
                z_box: float = 1.5) -> Vec3:
    return (rng.uniform(-box, box), rng.uniform(-box, box),
            rng.uniform(-z_box, z_box))


def _rand_vec(rng: random.Random) -> Vec3:
    return (rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
            rng.uniform(-1.0, 1.0))


def _fd_frame_derivative(space: SpaceParams, field, p: Vec3,
                         direction: Vec3, step: float = 1e-6) -> Vec3:
    pp = tuple(p[i] + step * direction[i] for i in range(3))
    pm = tuple(p[i] - step * direction[i] for i in range(3))
    fp, fm = field(pp), field(pm)
    return tuple((fp[i] - fm[i]) / (2 * step) for i in range(3))


def check_ambient(space: SpaceParams, seed: int = DEFAULT_SEED,
                  n_points: int = 40,
                  tolerances: Optional[dict] = None) -> ResidualSuite:
    """Ambient-geometry battery on a kappa = 0 space.

    Cross-checks the frame/connection/curvature tables against the
    finite-difference coordinate path, the two curvature formulas against
    each other on random triples, the covariant-derivative wedge identity of
    the vertical direction, and sectional-curvature constancy on the
    companion space with kappa = -4 tau^2.
    """
    rng = random.Random(seed)
    delta, tau = space.delta, space.tau
    expected_diag = (1.0, -float(delta), float(delta))
    checks: list[CheckResult] = []

    # frame orthonormality against the coordinate metric
    worst = 0.0
    frame_pts = [_rand_point(rng) for _ in range(n_points)]
    for p in frame_pts:
        fr = ambient.frame_at(space, p)
        vecs = (fr.e1, fr.e2, fr.e3)
        for i in range(3):
            for j in range(3):
                got = ambient.metric_eval(space, p, vecs[i], vecs[j])
                want = expected_diag[i] if i == j else 0.0
                worst = max(worst, abs(got - want))
    checks.append(_check("ambient.frame_orthonormality", worst, tolerances))

    # bracket relations by finite differences of the frame fields
    fields = [ambient.frame_field(space, i) for i in (1, 2, 3)]
    e3 = (0.0, 0.0, 1.0)
    worst = 0.0
    for p in frame_pts[:10]:
        b12 = ambient.commutator_fd(fields[0], fields[1], p)
        want12 = (0.0, 0.0, 2.0 * tau)
        b13 = ambient.commutator_fd(fields[0], fields[2], p)
        b23 = ambient.commutator_fd(fields[1], fields[2], p)
        for got, want in ((b12, want12), (b13, (0.0,) * 3), (b23, (0.0,) * 3)):
            worst = max(worst, max(abs(got[i] - want[i]) for i in range(3)))
    checks.append(_check("ambient.bracket", worst, tolerances))

    # connection table vs the algebraic covariant-derivative correction
    table = ambient.connection_table(space)
    basis = {1: (1.0, 0.0, 0.0), 2: (0.0, 1.0, 0.0), 3: (0.0, 0.0, 1.0)}
    worst = 0.0
    for (i, j), want in table.items():
        got = ambient.frame_connection_correction(space, basis[i], basis[j])
        worst = max(worst, max(abs(got[k] - want[k]) for k in range(3)))
    checks.append(_check("ambient.connection_table", worst, tolerances))

    # connection table vs finite-difference Christoffel symbols
    worst = 0.0
    for p in frame_pts[:15]:
        gam = ambient.christoffel_coords(space, p)
        fr = ambient.frame_at(space, p)
        frame_vecs = {1: fr.e1, 2: fr.e2, 3: fr.e3}
        for (i, j), want in table.items():
            x = frame_vecs[i]
            dw = _fd_frame_derivative(space, fields[j - 1], p, x)
            w = frame_vecs[j]
            cov = [dw[k] + sum(gam[k][l][m] * x[l] * w[m]
                               for l in range(3) for m in range(3))
                   for k in range(3)]
            got = ambient.to_frame_components(space, p, tuple(cov))
            worst = max(worst, max(abs(got[k] - want[k]) for k in range(3)))
    checks.append(_check("ambient.connection_fd", worst, tolerances))

    # curvature closed formula vs the literal table on all frame triples
    worst = 0.0
    for (i, j, k), want in curvature_table(space).items():
        got = ambient.curvature_frame(space, basis[i], basis[j], basis[k])
        worst = max(worst, max(abs(got[m] - want[m]) for m in range(3)))
    checks.append(_check("ambient.curvature_table", worst, tolerances))

    # closed formula vs trilinear table expansion on random triples
    worst = 0.0
    for _ in range(200):
        a, b, c = _rand_vec(rng), _rand_vec(rng), _rand_vec(rng)
        got = ambient.curvature_frame(space, a, b, c)
        want = curvature_from_table(space, a, b, c)
        worst = max(worst, max(abs(got[m] - want[m]) for m in range(3)))
    checks.append(_check("ambient.curvature_formula_agreement", worst,
                         tolerances))

    # closed formula vs the nested finite-difference coordinate path
    worst = 0.0
    for p in frame_pts[:8]:
        v, w, z = _rand_vec(rng), _rand_vec(rng), _rand_vec(rng)
        got = ambient.curvature_fd(space, p, v, w, z)
        want = ambient.curvature(space, p, v, w, z)
        worst = max(worst, max(abs(got[m] - want[m]) for m in range(3)))
    checks.append(_check("ambient.curvature_fd", worst, tolerances))

    # nabla_X E3 = delta tau (X wedge E3), FD route vs wedge
    worst = 0.0
    for _ in range(50):
        p = _rand_point(rng)
        x = _rand_vec(rng)
        gam = ambient.christoffel_coords(space, p)
        cov = tuple(sum(gam[k][l][2] * x[l] for l in range(3))
                    for k in range(3))
        got = ambient.to_frame_components(space, p, cov)
        xf = ambient.to_frame_components(space, p, x)
        wf = ambient.wedge_frame(space, xf, e3)
        want = tuple(delta * tau * wf[m] for m in range(3))
        worst = max(worst, max(abs(got[m] - want[m]) for m in range(3)))
    checks.append(_check("ambient.grad_e3_wedge", worst, tolerances))

    # sectional curvature constant on the kappa = -4 tau^2 companion space
    sibling = SpaceParams(delta=delta, tau=tau, kappa=-4.0 * tau * tau)
    values = []
    attempts = 0
    while len(values) < 20 and attempts < 400:
        attempts += 1
        p = (rng.uniform(-0.15, 0.15), rng.uniform(-0.15, 0.15),
             rng.uniform(-1.0, 1.0))
        v, w = _rand_vec(rng), _rand_vec(rng)
        # reject ill-conditioned planes: a small area denominator amplifies
        # finite-difference noise in the curvature numerator
        m_vv = ambient.metric_eval(sibling, p, v, v)
        m_ww = ambient.metric_eval(sibling, p, w, w)
        m_vw = ambient.metric_eval(sibling, p, v, w)
        denom = m_vv * m_ww - m_vw * m_vw
        if abs(denom) < 0.2 * max(abs(m_vv * m_ww), m_vw * m_vw, 1e-12):
            continue
        values.append(ambient.sectional_curvature(sibling, p, v, w,
                                                  method="fd"))
    spread = (max(values) - min(values)) if values else float("inf")
    checks.append(_check("ambient.sectional_constancy", spread, tolerances))

    return ResidualSuite("ambient", seed, checks)


# ---- dispatch ----


def default_family_matrix(tau: float = 1.0) -> list[SurfacePatch]:
    """One representative patch per classified family (the regression gate)."""
    from .families import (EtaSpec, HelixProfile, make_cmc_cylinder,
                           make_helix_surface, make_minimal_plane)
    phi0 = 0.4
    return [
        make_minimal_plane(-1, "timelike", phi0, tau=tau),
        make_minimal_plane(1, "timelike", phi0, tau=tau),
        make_minimal_plane(1, "spacelike", phi0, tau=tau),
        make_cmc_cylinder(-1, "timelike", tau),
        make_cmc_cylinder(1, "timelike", tau),
        make_cmc_cylinder(1, "spacelike", tau),
        make_helix_surface(HelixProfile("spacelike", tau, math.asinh(1.0),
                                        c=0.1, eta=EtaSpec("linear", (0.0, 1.0)))),
        make_helix_surface(HelixProfile("timelike", tau, math.pi / 4.0,
                                        c=0.1, eta=EtaSpec("linear", (0.0, 1.0)))),
    ]


def run_suite(name: str, *, patch: Optional[SurfacePatch] = None,
              space: Optional[SpaceParams] = None,
              grid: tuple[int, int] = (12, 12), seed: int = DEFAULT_SEED,
              tolerances: Optional[dict] = None) -> ResidualSuite:
    """Run one named suite; patch suites need a patch, 'ambient' accepts a
    space (or takes the patch's)."""
    if name not in SUITE_NAMES:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")
    if name == "ambient":
        sp = space if space is not None else (patch.space if patch else None)
        if sp is None:
            raise ValueError("ambient suite needs a space or a patch")
        suite = check_ambient(sp, seed=seed, tolerances=tolerances)
        suite.grid = grid
        return suite
    if patch is None:
        raise ValueError(f"suite {name!r} needs a patch")
    descriptor = dict(patch.family) if patch.family else None
    if name == "claims":
        suite = check_claims(patch, grid, seed=seed, tolerances=tolerances)
        return suite
    if name == "gauss":
        checks = [check_gauss(patch, grid, tolerances=tolerances)]
    elif name == "codazzi":
        checks = [check_codazzi(patch, grid, tolerances=tolerances)]
    elif name == "helix_ode":
        checks = [check_helix_ode(patch, grid, tolerances=tolerances)]
    else:
        checks = [check_parallel(patch, grid, tolerances=tolerances)]
    return ResidualSuite(name, seed, checks, grid=grid,
                         patch_descriptor=descriptor)


def merge_suites(suites: Sequence[ResidualSuite], seed: int) -> ResidualSuite:
    """Single report object for several suites ('+'-joined name,
    concatenated checks)."""
    name = "+".join(s.name for s in suites)
    checks = [c for s in suites for c in s.checks]
    return ResidualSuite(name, seed, checks)
