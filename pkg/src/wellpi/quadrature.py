"""Adaptive quadrature and the three per-zone pressure-work integrals.

The integrator pairs a 7-point Gauss rule with its 15-point Kronrod
extension on each panel; the difference of the two estimates serves as the
panel error.  The panel with the largest error is bisected until the summed
error meets the tolerance or the panel cap is hit.  Panels are kept in
left-to-right order and summed with compensated addition, so results are
deterministic regardless of how the work is scheduled.

The zone integrals entering the productivity index are

    S_D[r1, r2]  = alpha * int (r_e^2 - r^2)^2 / r dr
    S_F[r1, r2]  = S_D + beta * A * int (r_e^2 - r^2)^3 / r^2 dr
    S_pD[r1, r2] = lambda * A^(-s) * int (r_e^2 - r^2)^(2-s) * r^(s-1) dr

S_D and S_F have closed antiderivatives; those are evaluated through a
power-series form near the outer boundary where the textbook expression
loses most of its significant digits to cancellation.  S_pD has no
elementary antiderivative for fractional s (the substitution u = r^2 turns
it into an incomplete-beta-type integral) and goes through the adaptive
integrator, which the closed S_D / S_F forms independently verify.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .constitutive import ZoneLaw
from .kinematics import Scenario, flux_density

# ---------------------------------------------------------------------------
# Gauss-Kronrod 7/15 pair
# ---------------------------------------------------------------------------

_XGK_HALF = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
])
_WGK_HALF = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG_HALF = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK_HALF[:7], _XGK_HALF[::-1]])
_W_KRONROD = np.concatenate([_WGK_HALF[:7], _WGK_HALF[::-1]])
_W_GAUSS = np.zeros(15)
_W_GAUSS[1:14:2] = np.concatenate([_WG_HALF[:3], _WG_HALF[::-1]])

_EPS = float(np.finfo(float).eps)

#: Default subdivision cap; plenty for smooth integrands on a bounded interval.
DEFAULT_MAX_PANELS = 2000


@dataclass(frozen=True)
class IntegralResult:
    """Value, error estimate and panel count of one adaptive integration."""

    value: float
    abs_error_estimate: float
    subdivisions: int


class QuadratureError(RuntimeError):
    """Raised when the panel cap is reached; carries the best estimate."""

    def __init__(self, message: str, best: IntegralResult):
        super().__init__(message)
        self.best = best


def _panel(f: Callable[[np.ndarray], np.ndarray], a: float, b: float):
    center = 0.5 * (a + b)
    half = 0.5 * (b - a)
    fx = np.asarray(f(center + half * _NODES), dtype=float)
    kronrod = half * float(_W_KRONROD @ fx)
    gauss = half * float(_W_GAUSS @ fx)
    resabs = abs(half) * float(_W_KRONROD @ np.abs(fx))
    return kronrod, abs(kronrod - gauss), resabs


def integrate_adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rel_tol: float = 1e-10,
    abs_tol: float = 1e-300,
    max_panels: int = DEFAULT_MAX_PANELS,
) -> IntegralResult:
    """Integrate f over [a, b] to max(abs_tol, rel_tol * |value|).

    ``f`` must accept and return numpy arrays and be finite on [a, b]
    (endpoints are never evaluated).  An empty interval integrates to
    exactly zero.  Once the accumulated panel error sits at the roundoff
    floor of the integrand no further subdivision can help, and the current
    estimate is returned as converged.

    Raises QuadratureError (carrying the best estimate) if the panel cap is
    reached first.
    """
    if a > b:
        raise ValueError(f"need a <= b, got a={a}, b={b}")
    if rel_tol <= 0 or abs_tol <= 0:
        raise ValueError("tolerances must be positive")
    if a == b:
        return IntegralResult(0.0, 0.0, 0)

    panels: list[tuple[float, float, float, float, float]] = [(a, b, *_panel(f, a, b))]
    while True:
        value = math.fsum(p[2] for p in panels)
        err = math.fsum(p[3] for p in panels)
        resabs = math.fsum(p[4] for p in panels)
        if err <= max(abs_tol, rel_tol * abs(value)) or err <= 100.0 * _EPS * resabs:
            return IntegralResult(value, err, len(panels))
        if len(panels) >= max_panels:
            best = IntegralResult(value, err, len(panels))
            raise QuadratureError(
                f"no convergence within {max_panels} panels "
                f"(value={value:.6e}, err={err:.2e})",
                best,
            )
        worst = max(range(len(panels)), key=lambda i: panels[i][3])
        a0, b0, _, _, _ = panels.pop(worst)
        mid = 0.5 * (a0 + b0)
        panels.insert(worst, (mid, b0, *_panel(f, mid, b0)))
        panels.insert(worst, (a0, mid, *_panel(f, a0, mid)))


# ---------------------------------------------------------------------------
# Zone integrals
# ---------------------------------------------------------------------------

# The closed antiderivatives subtract terms of order r_e^4 * width while the
# integral itself shrinks like (r_e - r)^3 near the outer boundary, so beyond
# this fraction of r_e they are replaced by an all-positive series in
# x = (r_e^2 - r^2) / r_e^2 <= 1 - _SERIES_CUT^2.
_SERIES_CUT = 0.75


def _check_interval(scn: Scenario, r1: float, r2: float) -> None:
    geo = scn.geometry
    if not geo.r_w <= r1 <= r2 <= geo.r_e:
        raise ValueError(
            f"integration interval [{r1}, {r2}] not within [{geo.r_w}, {geo.r_e}]"
        )


def _darcy_series(r_e: float, r1: float, r2: float) -> float:
    # int (r_e^2-r^2)^2/r dr = (r_e^4/2) sum_{m>=3} (x1^m - x2^m)/m, with
    # x = (r_e^2 - r^2)/r_e^2;  x1^m - x2^m = dx * h_m keeps every term positive.
    x1 = (r_e - r1) * (r_e + r1) / r_e**2
    x2 = (r_e - r2) * (r_e + r2) / r_e**2
    dx = (r2 - r1) * (r2 + r1) / r_e**2
    h = 1.0  # h_m = sum_{j<m} x1^j x2^(m-1-j)
    p2 = 1.0  # x2^m
    total = 0.0
    for m in range(1, 600):
        if m >= 3:
            term = h / m
            total += term
            if term < 1e-17 * total:
                break
        p2 *= x2
        h = x1 * h + p2
    return 0.5 * r_e**4 * dx * total


def _darcy_closed(r_e: float, r1: float, r2: float) -> float:
    return (
        r_e**4 * math.log(r2 / r1)
        - r_e**2 * (r2 - r1) * (r2 + r1)
        + (r2**4 - r1**4) / 4.0
    )


def _darcy_bracket(r_e: float, r1: float, r2: float) -> float:
    cut = _SERIES_CUT * r_e
    if r1 >= cut:
        return _darcy_series(r_e, r1, r2)
    if r2 <= cut:
        return _darcy_closed(r_e, r1, r2)
    return _darcy_closed(r_e, r1, cut) + _darcy_series(r_e, cut, r2)


def _forch_series(r_e: float, r1: float, r2: float) -> float:
    # int (r_e^2-r^2)^3/r^2 dr = (r_e^5/2) sum_k c_k (x1^(k+4)-x2^(k+4))/(k+4)
    # with c_k the series coefficients of (1-x)^(-3/2).
    x1 = (r_e - r1) * (r_e + r1) / r_e**2
    x2 = (r_e - r2) * (r_e + r2) / r_e**2
    dx = (r2 - r1) * (r2 + r1) / r_e**2
    h = 1.0
    p2 = 1.0
    total = 0.0
    c = 1.0
    for m in range(1, 800):
        if m >= 4:
            k = m - 4
            if k > 0:
                c *= (2 * k + 1) / (2 * k)
            term = c * h / m
            total += term
            if term < 1e-17 * total:
                break
        p2 *= x2
        h = x1 * h + p2
    return 0.5 * r_e**5 * dx * total


def _forch_closed(r_e: float, r1: float, r2: float) -> float:
    return (
        -(r_e**6) * (1.0 / r2 - 1.0 / r1)
        - 3.0 * r_e**4 * (r2 - r1)
        + r_e**2 * (r2**3 - r1**3)
        - (r2**5 - r1**5) / 5.0
    )


def _forch_bracket(r_e: float, r1: float, r2: float) -> float:
    cut = _SERIES_CUT * r_e
    if r1 >= cut:
        return _forch_series(r_e, r1, r2)
    if r2 <= cut:
        return _forch_closed(r_e, r1, r2)
    return _forch_closed(r_e, r1, cut) + _forch_series(r_e, cut, r2)


def darcy_zone_integral(scn: Scenario, r1: float, r2: float) -> float:
    """S_D[r1, r2] in closed form (Pa-weighted)."""
    _check_interval(scn, r1, r2)
    if r1 == r2:
        return 0.0
    return scn.params.alpha * _darcy_bracket(scn.geometry.r_e, r1, r2)


def forchheimer_zone_integral(scn: Scenario, r1: float, r2: float) -> float:
    """S_F[r1, r2] in closed form: the Darcy part plus the inertial term."""
    _check_interval(scn, r1, r2)
    if r1 == r2:
        return 0.0
    r_e = scn.geometry.r_e
    darcy = scn.params.alpha * _darcy_bracket(r_e, r1, r2)
    inertial = scn.params.beta * flux_density(scn) * _forch_bracket(r_e, r1, r2)
    return darcy + inertial


def predarcy_zone_integral(
    scn: Scenario, r1: float, r2: float, rel_tol: float = 1e-10
) -> float:
    """S_pD[r1, r2] by adaptive quadrature.

    For s = 0 with lambda = alpha this reduces to the Darcy integral; for
    s = 1 the integrand is the polynomial r_e^2 - r^2 and one panel is exact.
    """
    _check_interval(scn, r1, r2)
    if r1 == r2:
        return 0.0
    r_e = scn.geometry.r_e
    s = scn.params.s

    def integrand(r: np.ndarray) -> np.ndarray:
        return ((r_e - r) * (r_e + r)) ** (2.0 - s) * r ** (s - 1.0)

    result = integrate_adaptive(integrand, r1, r2, rel_tol=rel_tol)
    return scn.params.lambda_ * flux_density(scn) ** (-s) * result.value


def zone_integral(
    scn: Scenario, law: ZoneLaw, r1: float, r2: float, rel_tol: float = 1e-10
) -> float:
    """Dispatch S_law[r1, r2] for the given constitutive law."""
    if law is ZoneLaw.DARCY:
        return darcy_zone_integral(scn, r1, r2)
    if law is ZoneLaw.FORCHHEIMER:
        return forchheimer_zone_integral(scn, r1, r2)
    return predarcy_zone_integral(scn, r1, r2, rel_tol=rel_tol)
