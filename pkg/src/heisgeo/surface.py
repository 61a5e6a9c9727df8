"""Extrinsic and intrinsic geometry of immersed surface patches.

A :class:`SurfacePatch` wraps an immersion F(u, v) into the kappa = 0 ambient
space together with (optionally) analytic first and second partial
derivatives.  On top of the patch this module computes, per sample:

- the first fundamental form and the causal character epsilon
  (+1: timelike surface / spacelike unit normal; -1: spacelike surface),
- the oriented unit normal N with a deterministic patch-level gauge,
- the angle function  nu = epsilon * g(N, E3),
- the tangent projection T of E3 (E3 = T + nu*N) and the tangent rotation
  J X = N ^ X,
- the shape operator S X = -(ambient covariant derivative of N along X)
  by two independent routes: finite differences of the normal field
  (default), and the analytic second-fundamental-form route (cross-check),
- mean curvature H = trace(S)/2 and Gaussian curvature K by an extrinsic
  formula and, independently, from the induced metric alone (intrinsic).

Grid sweeps are collected into a :class:`GeometryReport` that serializes to
CSV (one row per sample) and a JSON summary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import ambient
from .ambient import SpaceParams
from .errors import (
    DegenerateAdaptedFrame,
    DegenerateInducedMetric,
    DegenerateNormal,
    OutOfDomain,
    SurfaceError,
    UnsupportedKappa,
)
from .numeric import (
    Vec3,
    as_vec3,
    fmt_float,
    json_dumps,
    lincomb3,
    scale3,
    solve2,
    sub3,
)

# |det I| below this is treated as a degenerate (null) patch
_DEGENERATE_DET_TOL = 1e-10
# |nu| below this at the gauge sample falls back to the component rule
_GAUGE_NU_TOL = 1e-10
# |g(T,T)| below this blocks the adapted basis
_ADAPTED_TOL = 1e-8
# evaluation slack beyond the declared domain for analytic patches
_ANALYTIC_MARGIN = 1e-2
# step for the Weingarten finite difference of the normal field
_WEINGARTEN_STEP = 1e-5
# step for second derivatives of the induced-metric fields (intrinsic K)
_INTRINSIC_STEP = 5e-4

Jet1Fn = Callable[[float, float], tuple[Vec3, Vec3]]
Jet2Fn = Callable[[float, float], tuple[Vec3, Vec3, Vec3]]


@dataclass(frozen=True)
class PatchJet:
    """Position and partial derivatives of the immersion at one sample."""

    p: Vec3
    fu: Vec3
    fv: Vec3
    fuu: Vec3
    fuv: Vec3
    fvv: Vec3


class SurfacePatch:
    """An immersed parametrized surface patch.

    position(u, v) must return the immersion point; when `first_jet` /
    `second_jet` are omitted the derivatives fall back to central
    differences of `position` (jet_source == "finite-difference"), and
    evaluation is then restricted to the domain interior minus a 2h stencil
    margin (no one-sided stencils).
    """

    def __init__(self, space: SpaceParams, position: Callable[[float, float], Vec3],
                 domain: tuple[tuple[float, float], tuple[float, float]],
                 *, first_jet: Optional[Jet1Fn] = None,
                 second_jet: Optional[Jet2Fn] = None,
                 name: str = "patch", family: Optional[dict] = None,
                 fd_step: float = 1e-5):
        (u0, u1), (v0, v1) = domain
        if not (u0 < u1 and v0 < v1):
            raise ValueError("domain must be a nondegenerate rectangle")
        self.space = space
        self.position = position
        self.domain = ((float(u0), float(u1)), (float(v0), float(v1)))
        self.first_jet = first_jet
        self.second_jet = second_jet
        self.name = name
        self.family = dict(family) if family else None
        self.fd_step = float(fd_step)
        self._gauge_sign: Optional[float] = None

    @property
    def jet_source(self) -> str:
        analytic = self.first_jet is not None and self.second_jet is not None
        return "analytic" if analytic else "finite-difference"

    def center(self) -> tuple[float, float]:
        (u0, u1), (v0, v1) = self.domain
        return (0.5 * (u0 + u1), 0.5 * (v0 + v1))

    def _check_domain(self, u: float, v: float) -> None:
        (u0, u1), (v0, v1) = self.domain
        if self.jet_source == "analytic":
            m = -_ANALYTIC_MARGIN
        else:
            m = 2.0 * self.fd_step  # shrink: FD stencils stay inside
        if not (u0 + m <= u <= u1 - m and v0 + m <= v <= v1 - m):
            raise OutOfDomain(
                f"(u, v) = ({u}, {v}) outside evaluable part of domain "
                f"{self.domain} for {self.jet_source} jets")

    def jet(self, u: float, v: float) -> PatchJet:
        """Position with first and second partials at (u, v)."""
        self._check_domain(u, v)
        pos = self.position
        p = as_vec3(pos(u, v))
        if self.jet_source == "analytic":
            fu, fv = self.first_jet(u, v)
            fuu, fuv, fvv = self.second_jet(u, v)
            return PatchJet(p, as_vec3(fu), as_vec3(fv),
                            as_vec3(fuu), as_vec3(fuv), as_vec3(fvv))
        h = self.fd_step
        pu_p, pu_m = as_vec3(pos(u + h, v)), as_vec3(pos(u - h, v))
        pv_p, pv_m = as_vec3(pos(u, v + h)), as_vec3(pos(u, v - h))
        fu = scale3(0.5 / h, sub3(pu_p, pu_m))
        fv = scale3(0.5 / h, sub3(pv_p, pv_m))
        h2 = h * h
        fuu = tuple((pu_p[i] - 2.0 * p[i] + pu_m[i]) / h2 for i in range(3))
        fvv = tuple((pv_p[i] - 2.0 * p[i] + pv_m[i]) / h2 for i in range(3))
        ppp = as_vec3(pos(u + h, v + h))
        ppm = as_vec3(pos(u + h, v - h))
        pmp = as_vec3(pos(u - h, v + h))
        pmm = as_vec3(pos(u - h, v - h))
        fuv = tuple((ppp[i] - ppm[i] - pmp[i] + pmm[i]) / (4.0 * h2)
                    for i in range(3))
        return PatchJet(p, fu, fv, fuu, fuv, fvv)  # type: ignore[arg-type]


def jet(patch: SurfacePatch, u: float, v: float) -> PatchJet:
    """Module-level alias for `patch.jet(u, v)`."""
    return patch.jet(u, v)


# ---- first fundamental form ----


@dataclass(frozen=True)
class FirstFundamentalForm:
    """Induced metric in the (d/du, d/dv) basis plus causal classification."""

    e: float  # g(Fu, Fu)
    f: float  # g(Fu, Fv)
    g: float  # g(Fv, Fv)

    @property
    def det(self) -> float:
        return self.e * self.g - self.f * self.f

    @property
    def epsilon(self) -> int:
        """Causal character of the unit normal: +1 spacelike normal
        (timelike surface, induced signature (1,1)), -1 timelike normal
        (spacelike surface, positive-definite induced metric)."""
        d = self.det
        if abs(d) < _DEGENERATE_DET_TOL:
            raise DegenerateInducedMetric(
                f"induced metric determinant {d} below threshold")
        return 1 if d < 0.0 else -1


def induced_metric(patch: SurfacePatch, u: float, v: float) -> FirstFundamentalForm:
    """First fundamental form of the patch at (u, v)."""
    j = patch.jet(u, v)
    return _induced_from_jet(patch.space, j)


def _induced_from_jet(space: SpaceParams, j: PatchJet) -> FirstFundamentalForm:
    gm = ambient.metric_matrix(space, j.p)

    def dot(a: Vec3, b: Vec3) -> float:
        return (a[0] * (gm[0][0] * b[0] + gm[0][1] * b[1] + gm[0][2] * b[2])
                + a[1] * (gm[1][0] * b[0] + gm[1][1] * b[1] + gm[1][2] * b[2])
                + a[2] * (gm[2][0] * b[0] + gm[2][1] * b[1] + gm[2][2] * b[2]))

    form = FirstFundamentalForm(dot(j.fu, j.fu), dot(j.fu, j.fv), dot(j.fv, j.fv))
    if abs(form.det) < _DEGENERATE_DET_TOL:
        raise DegenerateInducedMetric(
            f"induced metric determinant {form.det} below threshold at "
            f"p = {j.p}")
    return form


def causal_character(patch: SurfacePatch, u: float, v: float) -> int:
    """epsilon of the patch at (u, v)."""
    return induced_metric(patch, u, v).epsilon


# ---- sample bundle: everything computed at one (u, v) ----


@dataclass
class _Sample:
    """Internal per-sample scratch: jet, form, frame components, normal."""

    jet: PatchJet
    form: FirstFundamentalForm
    a: Vec3  # frame components of Fu
    b: Vec3  # frame components of Fv
    n: Vec3  # frame components of the gauged unit normal
    eps: int
    nu: float


def _raw_normal(space: SpaceParams, j: PatchJet,
                form: FirstFundamentalForm) -> tuple[Vec3, Vec3, Vec3, int]:
    """Ungauged unit normal in frame components, plus tangent frame comps."""
    a = ambient.to_frame_components(space, j.p, j.fu)
    b = ambient.to_frame_components(space, j.p, j.fv)
    w = ambient.wedge_frame(space, a, b)
    n2 = ambient.frame_metric(space, w, w)  # equals -det(I)
    if abs(n2) < _DEGENERATE_DET_TOL:
        raise DegenerateNormal(f"normal direction is null at p = {j.p}")
    n = scale3(1.0 / math.sqrt(abs(n2)), w)
    eps = 1 if n2 > 0.0 else -1
    if eps != form.epsilon:
        # both are sign(-det I); disagreement means numerical degeneracy
        raise DegenerateNormal(
            f"normal causal character inconsistent at p = {j.p}")
    return a, b, n, eps


def _gauge_sign(patch: SurfacePatch) -> float:
    """Patch-level normal orientation, fixed once at the domain center.

    Rule: nu >= 0 at the center sample when |nu| exceeds the gauge
    threshold; otherwise the first frame component of N larger than the
    threshold in magnitude is made positive.
    """
    if patch._gauge_sign is not None:
        return patch._gauge_sign
    u, v = patch.center()
    j = patch.jet(u, v)
    form = _induced_from_jet(patch.space, j)
    _, _, n, eps = _raw_normal(patch.space, j, form)
    nu_raw = eps * ambient.frame_metric(patch.space, n, (0.0, 0.0, 1.0))
    if abs(nu_raw) > _GAUGE_NU_TOL:
        sign = 1.0 if nu_raw > 0.0 else -1.0
    else:
        sign = 1.0
        for comp in n:
            if abs(comp) > _GAUGE_NU_TOL:
                sign = 1.0 if comp > 0.0 else -1.0
                break
    patch._gauge_sign = sign
    return sign


def _sample(patch: SurfacePatch, u: float, v: float) -> _Sample:
    j = patch.jet(u, v)
    form = _induced_from_jet(patch.space, j)
    a, b, n_raw, eps = _raw_normal(patch.space, j, form)
    n = scale3(_gauge_sign(patch), n_raw)
    nu = eps * ambient.frame_metric(patch.space, n, (0.0, 0.0, 1.0))
    return _Sample(j, form, a, b, n, eps, nu)


def unit_normal(patch: SurfacePatch, u: float, v: float) -> Vec3:
    """Gauged unit normal at (u, v) in coordinate components."""
    s = _sample(patch, u, v)
    return ambient.from_frame_components(patch.space, s.jet.p, s.n)


def angle_function(patch: SurfacePatch, u: float, v: float) -> float:
    """nu = epsilon * g(N, E3) at (u, v)."""
    return _sample(patch, u, v).nu


def tangent_part_T(patch: SurfacePatch, u: float, v: float) -> Vec3:
    """Tangential projection T of E3 (E3 = T + nu N), coordinate comps."""
    s = _sample(patch, u, v)
    t_frame = sub3((0.0, 0.0, 1.0), scale3(s.nu, s.n))
    return ambient.from_frame_components(patch.space, s.jet.p, t_frame)


def tangent_rotation_J(patch: SurfacePatch, u: float, v: float, x) -> Vec3:
    """J X = N ^ X: rotation of the tangent plane, coordinate comps."""
    s = _sample(patch, u, v)
    xf = ambient.to_frame_components(patch.space, s.jet.p, as_vec3(x))
    jx = ambient.wedge_frame(patch.space, s.n, xf)
    return ambient.from_frame_components(patch.space, s.jet.p, jx)


# ---- shape operator ----


@dataclass(frozen=True)
class ShapeOperator2x2:
    """Shape operator matrix in a declared tangent basis.

    Columns are images: S(basis_j) = sum_i entries[i][j] * basis_i.
    basis is "coordinate" (d/du, d/dv) or "adapted-TJT" (T, JT).
    """

    s11: float
    s12: float
    s21: float
    s22: float
    basis: str

    @property
    def trace(self) -> float:
        return self.s11 + self.s22

    @property
    def det(self) -> float:
        return self.s11 * self.s22 - self.s12 * self.s21

    def entries(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return ((self.s11, self.s12), (self.s21, self.s22))


def _tangent_coefficients(space: SpaceParams, s: _Sample, wf: Vec3) -> tuple[float, float]:
    """Coefficients (c_u, c_v) with w = c_u Fu + c_v Fv, for tangent w
    given in frame components."""
    rhs1 = ambient.frame_metric(space, wf, s.a)
    rhs2 = ambient.frame_metric(space, wf, s.b)
    form = s.form
    return solve2(form.e, form.f, form.f, form.g, rhs1, rhs2)


def _project_tangent(space: SpaceParams, s: _Sample, wf: Vec3) -> Vec3:
    """Remove the normal component of a frame-components vector."""
    coeff = s.eps * ambient.frame_metric(space, wf, s.n)
    return sub3(wf, scale3(coeff, s.n))


def _weingarten_columns(patch: SurfacePatch, u: float, v: float,
                        s: _Sample) -> tuple[Vec3, Vec3]:
    """S(Fu), S(Fv) in frame components via finite differences of the
    normal field plus ambient connection corrections."""
    space = patch.space
    h = _WEINGARTEN_STEP

    def normal_at(uu: float, vv: float) -> Vec3:
        ss = _sample(patch, uu, vv)
        return ss.n

    np_u, nm_u = normal_at(u + h, v), normal_at(u - h, v)
    np_v, nm_v = normal_at(u, v + h), normal_at(u, v - h)
    dn_u = scale3(0.5 / h, sub3(np_u, nm_u))
    dn_v = scale3(0.5 / h, sub3(np_v, nm_v))
    cov_u = lincomb3([(1.0, dn_u),
                      (1.0, ambient.frame_connection_correction(space, s.a, s.n))])
    cov_v = lincomb3([(1.0, dn_v),
                      (1.0, ambient.frame_connection_correction(space, s.b, s.n))])
    su = _project_tangent(space, s, scale3(-1.0, cov_u))
    sv = _project_tangent(space, s, scale3(-1.0, cov_v))
    return su, sv


def second_fundamental_form(patch: SurfacePatch, u: float, v: float
                            ) -> tuple[tuple[float, float], tuple[float, float]]:
    """h(X, Y) = eps * g(ambient-second-derivative, N) on (d/du, d/dv).

    Fully analytic on analytic-jet patches (no finite differences); serves
    as the independent cross-check route to the shape operator.
    """
    space = patch.space
    s = _sample(patch, u, v)
    j = s.jet
    tau = space.tau
    x, y = j.p[0], j.p[1]

    def cov_second(dp: Vec3, w: Vec3, dw: Vec3) -> Vec3:
        # frame components of the ambient covariant derivative of the
        # surface field with coordinate components w(t), derivative dw(t),
        # along a curve with velocity dp
        wf_t = (dw[0], dw[1],
        dw[2] + tau * (dp[1] * w[0] + y * dw[0] - dp[0] * w[1] - x * dw[1]))
        dirf = ambient.to_frame_components(space, j.p, dp)
        wf = ambient.to_frame_components(space, j.p, w)
        return lincomb3([(1.0, wf_t),
                 (1.0, ambient.frame_connection_correction(space, dirf, wf))])

    dd_uu = cov_second(j.fu, j.fu, j.fuu)
    dd_uv = cov_second(j.fu, j.fv, j.fuv)
    dd_vv = cov_second(j.fv, j.fv, j.fvv)
    e = float(s.eps)
    h11 = e * ambient.frame_metric(space, dd_uu, s.n)
    h12 = e * ambient.frame_metric(space, dd_uv, s.n)
    h22 = e * ambient.frame_metric(space, dd_vv, s.n)
    return ((h11, h12), (h12, h22))


def _adapted_basis_change(space: SpaceParams, s: _Sample
                  ) -> tuple[tuple[float, float], tuple[float, float]]:
    """Columns (T, JT) expressed in the coordinate tangent basis."""
    t_frame = sub3((0.0, 0.0, 1.0), scale3(s.nu, s.n))
    g_tt = ambient.frame_metric(space, t_frame, t_frame)
    if abs(g_tt) < _ADAPTED_TOL:
        raise DegenerateAdaptedFrame(
    f"|g(T,T)| = {abs(g_tt)} too small for the adapted basis")
    jt_frame = ambient.wedge_frame(space, s.n, t_frame)
    t_c = _tangent_coefficients(space, s, t_frame)
    jt_c = _tangent_coefficients(space, s, jt_frame)
    return (t_c, jt_c)


def shape_operator(patch: SurfacePatch, u: float, v: float,
                   basis: str = "coordinate",
                   route: str = "weingarten") -> ShapeOperator2x2:
    """Shape operator matrix at (u, v) in the requested basis.

    route = "weingarten" differentiates the normal field (default);
    route = "second-form" solves S = eps * I^{-1} h from the analytic
    second fundamental form (independent cross-check).
    """
    space = patch.space
    s = _sample(patch, u, v)
    if route == "weingarten":
        su, sv = _weingarten_columns(patch, u, v, s)
        c1 = _tangent_coefficients(space, s, su)
        c2 = _tangent_coefficients(space, s, sv)
        m = ((c1[0], c2[0]), (c1[1], c2[1]))
    elif route == "second-form":
        hm = second_fundamental_form(patch, u, v)
        e = float(s.eps)
        form = s.form
        # columns solve I * col_j = eps * h[:, j]
        col1 = solve2(form.e, form.f, form.f, form.g,
                      e * hm[0][0], e * hm[0][1])
        col2 = solve2(form.e, form.f, form.f, form.g,
                      e * hm[0][1], e * hm[1][1])
        m = ((col1[0], col2[0]), (col1[1], col2[1]))
    else:
        raise ValueError(f"unknown shape-operator route {route!r}")

    if basis == "coordinate":
        return ShapeOperator2x2(m[0][0], m[0][1], m[1][0], m[1][1], "coordinate")
    if basis == "adapted-TJT":
        (t1, t2), (j1, j2) = _adapted_basis_change(space, s)
        # B^{-1} M B with B columns the adapted vectors
        det_b = t1 * j2 - j1 * t2
        if det_b == 0.0:
            raise DegenerateAdaptedFrame("adapted basis change is singular")
        mt1 = m[0][0] * t1 + m[0][1] * t2
        mt2 = m[1][0] * t1 + m[1][1] * t2
        mj1 = m[0][0] * j1 + m[0][1] * j2
        mj2 = m[1][0] * j1 + m[1][1] * j2
        a11 = (j2 * mt1 - j1 * mt2) / det_b
        a21 = (t1 * mt2 - t2 * mt1) / det_b
        a12 = (j2 * mj1 - j1 * mj2) / det_b
        a22 = (t1 * mj2 - t2 * mj1) / det_b
        return ShapeOperator2x2(a11, a12, a21, a22, "adapted-TJT")
    raise ValueError(f"unknown shape-operator basis {basis!r}")


def mean_curvature(patch: SurfacePatch, u: float, v: float) -> float:
    """H = trace(S) / 2 (basis independent)."""
    return 0.5 * shape_operator(patch, u, v).trace


# ---- Gaussian curvature ----


def _extrinsic_k(space: SpaceParams, s: _Sample, det_s: float) -> float:
    tau2 = space.tau * space.tau
    return -tau2 + s.eps * (det_s + 4.0 * space.delta * s.nu * s.nu * tau2)


def _brioschi(e: float, f: float, g: float,
              eu: float, ev: float, fu: float, fv: float, gu: float, gv: float,
              evv: float, fuv: float, guu: float) -> float:
    """Gaussian curvature of a 2-metric from its coefficient jets
    (signature-agnostic determinant formula)."""
    det = e * g - f * f
    m1 = ((-0.5 * evv + fuv - 0.5 * guu, 0.5 * eu, fu - 0.5 * ev),
          (fv - 0.5 * gu, e, f),
          (0.5 * gv, f, g))
    m2 = ((0.0, 0.5 * ev, 0.5 * gu),
          (0.5 * ev, e, f),
          (0.5 * gu, f, g))

    def det3(m) -> float:
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    return (det3(m1) - det3(m2)) / (det * det)


def gaussian_curvature(patch: SurfacePatch, u: float, v: float,
                       method: str = "extrinsic") -> float:
    """Gaussian curvature at (u, v).

    method = "extrinsic": K = -tau^2 + eps*(det S + 4*delta*nu^2*tau^2),
    valid on the kappa = 0 ambient space.
    method = "intrinsic": curvature of the induced 2-metric from finite
    differences of its coefficients alone (independent of the normal and
    shape operator).
    """
    space = patch.space
    if method == "extrinsic":
        if space.kappa != 0.0:
            raise UnsupportedKappa(
                "extrinsic curvature formula requires kappa = 0")
        s = _sample(patch, u, v)
        sop = shape_operator(patch, u, v)
        return _extrinsic_k(space, s, sop.det)
    if method == "intrinsic":
        return _intrinsic_k(patch, u, v)
    raise ValueError(f"unknown gaussian-curvature method {method!r}")


def _intrinsic_k(patch: SurfacePatch, u: float, v: float) -> float:
    h = _INTRINSIC_STEP

    def coeffs(uu: float, vv: float) -> tuple[float, float, float]:
        form = induced_metric(patch, uu, vv)
        return form.e, form.f, form.g

    e0, f0, g0 = coeffs(u, v)
    ep, fp, gp = coeffs(u + h, v)
    em, fm, gm = coeffs(u - h, v)
    e_p, f_p, g_p = coeffs(u, v + h)
    e_m, f_m, g_m = coeffs(u, v - h)
    _, fpp, _ = coeffs(u + h, v + h)
    _, fpm, _ = coeffs(u + h, v - h)
    _, fmp, _ = coeffs(u - h, v + h)
    _, fmm, _ = coeffs(u - h, v - h)
    two_h = 2.0 * h
    h2 = h * h
    eu = (ep - em) / two_h
    ev = (e_p - e_m) / two_h
    fu = (fp - fm) / two_h
    fv = (f_p - f_m) / two_h
    gu = (gp - gm) / two_h
    gv = (g_p - g_m) / two_h
    evv = (e_p - 2.0 * e0 + e_m) / h2
    guu = (gp - 2.0 * g0 + gm) / h2
    fuv = (fpp - fpm - fmp + fmm) / (4.0 * h2)
    return _brioschi(e0, f0, g0, eu, ev, fu, fv, gu, gv, evv, fuv, guu)


# ---- grid report ----


@dataclass(frozen=True)
class SampleRecord:
    u: float
    v: float
    nu: float
    h_mean: float
    k_ext: float
    k_int: float
    eps: int
    s11: float
    s12: float
    s21: float
    s22: float
    t_comps: Vec3


@dataclass
class GeometryReport:
    """Per-sample geometry over a grid plus a summary."""

    patch_name: str
    family: Optional[dict]
    basis: str
    grid: tuple[int, int]
    records: list[SampleRecord] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    CSV_HEADER = "u,v,nu,H,K_ext,K_int,eps,S11,S12,S21,S22"

    def summary(self) -> dict:
        def stats(vals: list[float]) -> dict:
            lo, hi = min(vals), max(vals)
            return {"mean": sum(vals) / len(vals), "min": lo, "max": hi,
                    "range": hi - lo}

        recs = self.records
        out = {
            "patch": self.patch_name,
            "family": self.family,
            "grid": {"nu": self.grid[0], "nv": self.grid[1]},
            "samples": len(recs),
            "s_basis": self.basis,
            "eps": sorted({r.eps for r in recs}),
            "nu": stats([r.nu for r in recs]),
            "H": stats([r.h_mean for r in recs]),
            "K_ext": stats([r.k_ext for r in recs]),
            "K_int": stats([r.k_int for r in recs]),
            "max_gauss_residual": max(abs(r.k_int - r.k_ext) for r in recs),
            "T_mean": [sum(r.t_comps[i] for r in recs) / len(recs)
                       for i in range(3)],
        }
        out.update(self.metadata)
        return out

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for r in self.records:
            lines.append(",".join([
                fmt_float(r.u), fmt_float(r.v), fmt_float(r.nu),
                fmt_float(r.h_mean), fmt_float(r.k_ext), fmt_float(r.k_int),
                str(r.eps),
                fmt_float(r.s11), fmt_float(r.s12),
                fmt_float(r.s21), fmt_float(r.s22),
            ]))
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json_dumps(self.summary())


def grid_points(domain: tuple[tuple[float, float], tuple[float, float]],
                n_u: int, n_v: int) -> tuple[list[float], list[float]]:
    """Uniform inclusive grid over the domain."""
    (u0, u1), (v0, v1) = domain
    us = [u0 + (u1 - u0) * i / (n_u - 1) for i in range(n_u)]
    vs = [v0 + (v1 - v0) * j / (n_v - 1) for j in range(n_v)]
    return us, vs


def geometry_report(patch: SurfacePatch, n_u: int, n_v: int,
                    *, metadata: Optional[dict] = None) -> GeometryReport:
    """Sweep an n_u x n_v grid and collect the per-sample geometry.

    The shape operator is reported in the adapted (T, JT) basis when it is
    constructible at the domain center, otherwise in the coordinate basis;
    the choice is recorded in the report's basis tag.
    """
    us, vs = grid_points(patch.domain, n_u, n_v)
    cu, cv = patch.center()
    try:
        shape_operator(patch, cu, cv, basis="adapted-TJT")
        basis = "adapted-TJT"
    except DegenerateAdaptedFrame:
        basis = "coordinate"
    report = GeometryReport(patch.name, patch.family, basis, (n_u, n_v),
                            metadata=dict(metadata or {}))
    space = patch.space
    for u in us:
        for v in vs:
            try:
                _collect_sample(report, patch, u, v, basis)
            except SurfaceError as exc:
                raise type(exc)(
                    f"at sample (u={fmt_float(u)}, v={fmt_float(v)}): {exc}"
                ) from exc
    return report


def _collect_sample(report: GeometryReport, patch: SurfacePatch,
                    u: float, v: float, basis: str) -> None:
    space = patch.space
    s = _sample(patch, u, v)
    su, sv = _weingarten_columns(patch, u, v, s)
    c1 = _tangent_coefficients(space, s, su)
    c2 = _tangent_coefficients(space, s, sv)
    m = ((c1[0], c2[0]), (c1[1], c2[1]))
    det_s = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    trace_s = m[0][0] + m[1][1]
    if basis == "adapted-TJT":
        (t1, t2), (j1, j2) = _adapted_basis_change(space, s)
        det_b = t1 * j2 - j1 * t2
        mt1 = m[0][0] * t1 + m[0][1] * t2
        mt2 = m[1][0] * t1 + m[1][1] * t2
        mj1 = m[0][0] * j1 + m[0][1] * j2
        mj2 = m[1][0] * j1 + m[1][1] * j2
        entries = ((j2 * mt1 - j1 * mt2) / det_b,
                   (j2 * mj1 - j1 * mj2) / det_b,
                   (t1 * mt2 - t2 * mt1) / det_b,
                   (t1 * mj2 - t2 * mj1) / det_b)
    else:
        entries = (m[0][0], m[0][1], m[1][0], m[1][1])
    k_ext = _extrinsic_k(space, s, det_s)
    k_int = _intrinsic_k(patch, u, v)
    t_frame = sub3((0.0, 0.0, 1.0), scale3(s.nu, s.n))
    t_coords = ambient.from_frame_components(space, s.jet.p, t_frame)
    report.records.append(SampleRecord(
        u=u, v=v, nu=s.nu, h_mean=0.5 * trace_s,
        k_ext=k_ext, k_int=k_int, eps=s.eps,
        s11=entries[0], s12=entries[1], s21=entries[2], s22=entries[3],
        t_comps=t_coords))
