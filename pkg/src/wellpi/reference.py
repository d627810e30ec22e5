"""Published reference values for the dimensionless PI and their reproduction.

The package ships a CSV resource with the literature values of four
parameter-study tables (PI vs flux, vs pre-Darcy power, vs transition
velocity, and the small-reservoir study).  ``compare_table`` recomputes
every entry with this package and reports relative deviations; entries
beyond the 1% reproduction tolerance are flagged.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources

from .constitutive import FlowParameters, regime_preset
from .kinematics import Geometry, Scenario
from .productivity import compute_pi

# Shared parameter set of the reference studies (strict SI).
BASE_R_E = 1000.0
BASE_R_W = 0.3
BASE_H = 10.0
BASE_ALPHA = 1.01e10
BASE_LAMBDA = 1.01e10
BASE_BETA = 2.4318e11
BASE_V_F = 1e-5
BASE_V_D = 1e-7
BASE_Q_OVER_H = 1e-4

#: Reproduction tolerance: every reference entry should match within 1%.
REPRODUCTION_RTOL = 0.01

_DATA_PACKAGE = "wellpi"
_DATA_NAME = "data/reference_tables.csv"


@dataclass(frozen=True)
class ReferenceEntry:
    """One published dimensionless-PI value with its scenario knobs."""

    table: int
    regime: str
    s: float
    v_d: float
    q_over_h: float
    r_e: float
    published: float


@dataclass(frozen=True)
class TableComparison:
    """Computed-vs-published record for one reference entry."""

    entry: ReferenceEntry
    computed: float
    rel_deviation: float

    @property
    def within_tolerance(self) -> bool:
        return self.rel_deviation <= REPRODUCTION_RTOL


def load_reference_entries(table: int | None = None) -> list[ReferenceEntry]:
    """Reference entries from the bundled CSV, optionally one table only."""
    text = resources.files(_DATA_PACKAGE).joinpath(_DATA_NAME).read_text(encoding="utf-8")
    rows = [line for line in text.splitlines() if line and not line.startswith("#")]
    reader = csv.DictReader(rows)
    out = []
    for row in reader:
        entry = ReferenceEntry(
            table=int(row["table"]),
            regime=row["regime"],
            s=float(row["s"]),
            v_d=float(row["v_d"]),
            q_over_h=float(row["q_over_h"]),
            r_e=float(row["r_e"]),
            published=float(row["published"]),
        )
        if table is None or entry.table == table:
            out.append(entry)
    if table is not None and not out:
        raise ValueError(f"no reference data for table {table}")
    return out


def reference_scenario(entry: ReferenceEntry, continuous_predarcy: bool = False) -> Scenario:
    """Scenario reproducing one reference entry."""
    params = FlowParameters(
        alpha=BASE_ALPHA,
        beta=BASE_BETA,
        lambda_=BASE_LAMBDA,
        s=entry.s,
        v_D=entry.v_d,
        v_F=BASE_V_F,
    )
    if continuous_predarcy:
        params = params.with_continuous_predarcy()
    return Scenario(
        geometry=Geometry(r_e=entry.r_e, r_w=BASE_R_W, h=BASE_H),
        params=params,
        regime=regime_preset(entry.regime),
        q_over_h=entry.q_over_h,
    )


def compare_table(
    table: int, rel_tol: float = 1e-10, continuous_predarcy: bool = False
) -> list[TableComparison]:
    """Recompute one table and compare against its published values."""
    out = []
    for entry in load_reference_entries(table):
        scn = reference_scenario(entry, continuous_predarcy=continuous_predarcy)
        computed = compute_pi(scn, rel_tol=rel_tol).j_dimensionless
        rel_dev = abs(computed - entry.published) / abs(entry.published)
        out.append(TableComparison(entry=entry, computed=computed, rel_deviation=rel_dev))
    return out
