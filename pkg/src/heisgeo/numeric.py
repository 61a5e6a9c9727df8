"""Shared numerical helpers: small-vector algebra, finite differences,
adaptive Simpson quadrature with dense output, and deterministic float
formatting.

Three-vectors are plain tuples of floats throughout the hot paths; numpy is
reserved for places where matrix algebra reads better than spelled-out
formulas.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from typing import Callable, Sequence

from .errors import QuadratureFailure

Vec3 = tuple[float, float, float]

# ---- deterministic float formatting ----

#: significant digits used in every serialized float (round-trips exactly)
FLOAT_DIGITS = 17


def fmt_float(x: float) -> str:
    """Format a float with 17 significant digits (deterministic, lossless)."""
    if isinstance(x, bool):  # bools are ints; guard against accidental use
        raise TypeError("fmt_float expects a number, got bool")
    return "%.*g" % (FLOAT_DIGITS, float(x))


def json_dumps(obj, indent: int = 2) -> str:
    """Serialize nested dict/list/scalar data with 17-digit floats.

    The standard json module does not expose float formatting, so this walks
    the structure itself.  Only the types used by report objects are
    supported: dict (string keys), list/tuple, str, bool, int, float, None.
    Output is deterministic: dict keys keep insertion order.
    """

    def emit(o, depth: int) -> str:
        pad = " " * (indent * depth)
        pad_in = " " * (indent * (depth + 1))
        if o is None:
            return "null"
        if isinstance(o, bool):
            return "true" if o else "false"
        if isinstance(o, int):
            return str(o)
        if isinstance(o, float):
            if math.isnan(o) or math.isinf(o):
                raise ValueError("cannot serialize non-finite float")
            return fmt_float(o)
        if isinstance(o, str):
            # minimal escaping; report strings are plain ASCII identifiers
            out = o.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
            return f'"{out}"'
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            items = ",\n".join(pad_in + emit(v, depth + 1) for v in o)
            return "[\n" + items + "\n" + pad + "]"
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = ",\n".join(
                f'{pad_in}"{k}": ' + emit(v, depth + 1) for k, v in o.items()
            )
            return "{\n" + items + "\n" + pad + "}"
        raise TypeError(f"unsupported type for json_dumps: {type(o)!r}")

    return emit(obj, 0) + "\n"


# ---- small-vector algebra on 3-tuples ----


def add3(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def sub3(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def scale3(s: float, a: Vec3) -> Vec3:
    return (s * a[0], s * a[1], s * a[2])


def lincomb3(terms: Sequence[tuple[float, Vec3]]) -> Vec3:
    x = y = z = 0.0
    for s, a in terms:
        x += s * a[0]
        y += s * a[1]
        z += s * a[2]
    return (x, y, z)


def maxabs3(a: Vec3) -> float:
    return max(abs(a[0]), abs(a[1]), abs(a[2]))


def as_vec3(v) -> Vec3:
    """Coerce any length-3 sequence (list, tuple, ndarray) to a float tuple."""
    x, y, z = v
    return (float(x), float(y), float(z))


def solve2(a11: float, a12: float, a21: float, a22: float,
           b1: float, b2: float) -> tuple[float, float]:
    """Solve a 2x2 linear system by Cramer's rule."""
    det = a11 * a22 - a12 * a21
    if det == 0.0:
        raise ZeroDivisionError("singular 2x2 system")
    return ((b1 * a22 - b2 * a12) / det, (a11 * b2 - a21 * b1) / det)


# ---- finite differences ----


def central_d1(f: Callable[[float], float], x: float, h: float) -> float:
    """Second-order central first derivative."""
    return (f(x + h) - f(x - h)) / (2.0 * h)


def central_d1_vec(f: Callable[[float], Vec3], x: float, h: float) -> Vec3:
    fp, fm = f(x + h), f(x - h)
    return ((fp[0] - fm[0]) / (2.0 * h),
            (fp[1] - fm[1]) / (2.0 * h),
            (fp[2] - fm[2]) / (2.0 * h))


def central_d1_5pt(f: Callable[[float], float], x: float, h: float) -> float:
    """Fourth-order central first derivative (5-point stencil)."""
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12.0 * h)


def central_d2(f: Callable[[float], float], x: float, h: float) -> float:
    """Second-order central second derivative."""
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)


def central_mixed(f: Callable[[float, float], float], x: float, y: float,
                  h: float) -> float:
    """Second-order central mixed derivative d^2 f / dx dy."""
    return (f(x + h, y + h) - f(x + h, y - h)
            - f(x - h, y + h) + f(x - h, y - h)) / (4.0 * h * h)


# ---- adaptive Simpson with cumulative dense output ----


def _simpson(fa: float, fm: float, fb: float, width: float) -> float:
    return width * (fa + 4.0 * fm + fb) / 6.0


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     tol: float = 1e-10, max_depth: int = 40) -> float:
    """Integrate f over [a, b] with adaptive Simpson to absolute tolerance."""

    def recurse(x0, x2, f0, f1, f2, whole, tol_here, depth):
        xm_l = 0.5 * (x0 + 0.5 * (x0 + x2))
        xm_r = 0.5 * (0.5 * (x0 + x2) + x2)
        fl, fr = f(xm_l), f(xm_r)
        x1 = 0.5 * (x0 + x2)
        left = _simpson(f0, fl, f1, x1 - x0)
        right = _simpson(f1, fr, f2, x2 - x1)
        if depth >= max_depth:
            raise QuadratureFailure(
                f"adaptive Simpson hit max depth {max_depth} on [{x0}, {x2}]")
        err = left + right - whole
        if abs(err) <= 15.0 * tol_here:
            return left + right + err / 15.0
        return (recurse(x0, x1, f0, fl, f1, left, tol_here / 2.0, depth + 1)
                + recurse(x1, x2, f1, fr, f2, right, tol_here / 2.0, depth + 1))

    if a == b:
        return 0.0
    fa, fb = f(a), f(b)
    fm = f(0.5 * (a + b))
    whole = _simpson(fa, fm, fb, b - a)
    return recurse(a, b, fa, fm, fb, whole, tol, 0)


class CumulativeIntegral:
    """Antiderivative F(x) = F0 + int_{x0}^{x} f(t) dt with dense output.

    Node values are accumulated with per-segment adaptive Simpson (absolute
    tolerance scaled so the total error over the tabulated range stays below
    `tol`); between nodes, evaluation uses cubic Hermite interpolation fed by
    the exact integrand values F'(x) = f(x), so interpolation error is
    O(spacing^4 * f''') — negligible at the default spacing.
    """

    def __init__(self, f: Callable[[float], float], x0: float,
                 lo: float, hi: float, *, f0: float = 0.0,
                 spacing: float = 1e-3, tol: float = 1e-10):
        if not (lo <= x0 <= hi):
            raise ValueError("x0 must lie inside [lo, hi]")
        self.f = f
        n_lo = max(1, math.ceil((x0 - lo) / spacing)) if x0 > lo else 0
        n_hi = max(1, math.ceil((hi - x0) / spacing)) if hi > x0 else 0
        total = (hi - lo) if hi > lo else 1.0
        xs = [x0 - (x0 - lo) * i / n_lo for i in range(n_lo, 0, -1)] if n_lo else []
        xs += [x0]
        xs += [x0 + (hi - x0) * i / n_hi for i in range(1, n_hi + 1)] if n_hi else []
        vals = [0.0] * len(xs)
        i0 = xs.index(x0)
        vals[i0] = f0
        for i in range(i0 + 1, len(xs)):
            seg = xs[i] - xs[i - 1]
            vals[i] = vals[i - 1] + adaptive_simpson(
                f, xs[i - 1], xs[i], tol=tol * seg / total)
        for i in range(i0 - 1, -1, -1):
            seg = xs[i + 1] - xs[i]
            vals[i] = vals[i + 1] - adaptive_simpson(
                f, xs[i], xs[i + 1], tol=tol * seg / total)
        self.xs = xs
        self.vals = vals
        self.slopes = [f(x) for x in xs]

    def __call__(self, x: float) -> float:
        xs = self.xs
        if x < xs[0] or x > xs[-1]:
            raise ValueError(f"x={x} outside tabulated range [{xs[0]}, {xs[-1]}]")
        if x == xs[-1]:
            return self.vals[-1]
        i = bisect_right(xs, x) - 1
        h = xs[i + 1] - xs[i]
        t = (x - xs[i]) / h
        y0, y1 = self.vals[i], self.vals[i + 1]
        m0, m1 = self.slopes[i] * h, self.slopes[i + 1] * h
        t2, t3 = t * t, t * t * t
        return ((2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0
                + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1)
