"""Pseudo-steady-state radial velocity field and the three-zone partition.

For a fully penetrating vertical well at the center of a closed cylindrical
reservoir, the PSS speed profile is

    v(r) = A * (r_e^2 - r^2) / r,      A = Q / (2 pi h (r_e^2 - r_w^2)),

which decreases strictly from v(r_w) = Q / (2 pi h r_w) to v(r_e) = 0.  The
critical velocities v_F > v_D cut the annulus into a fast zone near the well,
a moderate middle zone and a slow zone near the outer boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constitutive import FlowParameters, RegimeAssignment, ZoneLaw


@dataclass(frozen=True)
class Geometry:
    """Cylindrical reservoir of radius r_e and thickness h with a centered
    well of radius r_w, all in meters."""

    r_e: float
    r_w: float
    h: float

    def __post_init__(self):
        if not 0 < self.r_w < self.r_e:
            raise ValueError(f"need 0 < r_w < r_e, got r_w={self.r_w}, r_e={self.r_e}")
        if not self.h > 0:
            raise ValueError(f"h must be positive, got {self.h}")

    @property
    def radius_span_sq(self) -> float:
        """r_e^2 - r_w^2, factored to avoid cancellation near r_e."""
        return (self.r_e - self.r_w) * (self.r_e + self.r_w)


@dataclass(frozen=True)
class Scenario:
    """One fully specified well/reservoir computation case.

    ``q_over_h`` is the specific well flux Q/h in m^2/s; the total flux is
    Q = q_over_h * h.
    """

    geometry: Geometry
    params: FlowParameters
    regime: RegimeAssignment
    q_over_h: float

    def __post_init__(self):
        if not self.q_over_h > 0:
            raise ValueError(f"q_over_h must be positive, got {self.q_over_h}")

    @property
    def q(self) -> float:
        return self.q_over_h * self.geometry.h


@dataclass(frozen=True)
class ZonePartition:
    """Transition radii of the three velocity zones.

    Fast flow occupies [r_w, r_F], moderate [r_F, r_D], slow [r_D, r_e].
    The flags record whether the raw critical radius fell outside the annulus
    and was clamped (that zone is then empty).
    """

    r_F: float
    r_D: float
    clamped_fast: bool
    clamped_slow: bool


def flux_density(scn: Scenario) -> float:
    """A = Q / (2 pi h (r_e^2 - r_w^2)), the volumetric source density (1/s)."""
    return scn.q_over_h / (2.0 * math.pi * scn.geometry.radius_span_sq)


def velocity_profile(scn: Scenario, r: float) -> float:
    """PSS flow speed (m/s) at radius r in [r_w, r_e]."""
    geo = scn.geometry
    if not geo.r_w <= r <= geo.r_e:
        raise ValueError(f"r={r} outside [{geo.r_w}, {geo.r_e}]")
    return flux_density(scn) * (geo.r_e - r) * (geo.r_e + r) / r


def _raw_radius(a: float, r_e: float, v: float) -> float:
    # rationalized inverse of v(r); no subtraction of near-equal terms
    if v == 0.0:
        return r_e
    return 2.0 * a * r_e * r_e / (v + math.sqrt(v * v + 4.0 * a * a * r_e * r_e))


def radius_of_velocity(scn: Scenario, v: float) -> float:
    """Radius (m) at which the PSS profile attains speed v.

    v must lie in [0, v(r_w)]; v = 0 maps to r_e.
    """
    if v < 0:
        raise ValueError(f"v must be nonnegative, got {v}")
    v_max = velocity_profile(scn, scn.geometry.r_w)
    if v > v_max:
        raise ValueError(f"v={v} exceeds the wellbore speed {v_max}")
    return _raw_radius(flux_density(scn), scn.geometry.r_e, v)


def partition_zones(scn: Scenario) -> ZonePartition:
    """Critical radii r_F = r(v_F) and r_D = r(v_D), clamped to the annulus.

    Clamping makes out-of-range zones empty, so downstream zone integrals
    over them vanish; r_w <= r_F <= r_D <= r_e always holds.
    """
    geo = scn.geometry
    a = flux_density(scn)
    raw_f = _raw_radius(a, geo.r_e, scn.params.v_F)
    raw_d = _raw_radius(a, geo.r_e, scn.params.v_D)
    r_f = min(max(raw_f, geo.r_w), geo.r_e)
    r_d = min(max(raw_d, geo.r_w), geo.r_e)
    return ZonePartition(
        r_F=r_f,
        r_D=r_d,
        clamped_fast=(r_f != raw_f),
        clamped_slow=(r_d != raw_d),
    )


def zone_segments(scn: Scenario) -> list[tuple[float, float, ZoneLaw]]:
    """Nonempty radial segments with their governing law, same-law neighbors
    merged.

    Merging means e.g. an all-Darcy regime always yields the single segment
    [r_w, r_e] regardless of where the critical radii fall, so its integrals
    do not depend on the flux at all.
    """
    part = partition_zones(scn)
    geo = scn.geometry
    bounds = [
        (geo.r_w, part.r_F, scn.regime.near_well),
        (part.r_F, part.r_D, scn.regime.middle),
        (part.r_D, geo.r_e, scn.regime.near_boundary),
    ]
    merged: list[tuple[float, float, ZoneLaw]] = []
    for a0, b0, law in bounds:
        if b0 <= a0:
            continue
        if merged and merged[-1][2] is law:
            merged[-1] = (merged[-1][0], b0, law)
        else:
            merged.append((a0, b0, law))
    return merged
