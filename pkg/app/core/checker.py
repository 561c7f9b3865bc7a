#app/core/checker.py

import random
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from app.core.cohomology import serre_check
from app.core.geometry import SpanKind, SpanObject, hom_table, self_ext_line
from app.core.hilbert import (
    check_koszul_lines,
    divisor_sequence_holds,
    filtration_length,
    ideal_power_counts,
    join_sequence_results,
    koszul_data_lines,
    scan_spq,
)
from app.core.localext import TangentModel, point_ext
from app.models.equicore import Config, ExtTable
from app.models.report import CheckRecord, Report
from utils.performance import performance_monitor

# Set up logging
logger = logging.getLogger(__name__)

SERRE_SAMPLES = 200
SERRE_DEGREE_RANGE = 10

# (later component, earlier component) pairs whose local model comes from the X_g side by symmetry
ADVISORY_PAIRS = {("D_g2", "D_fg"), ("D_fg", "D_g1")}

HomFunction = Callable[[SpanObject, SpanObject], ExtTable]


@dataclass(frozen=True)
class Component:
    name: str
    generators: Tuple[SpanObject, ...]


@dataclass(frozen=True)
class Decomposition:
    """The ordered components <D_g1, D_fg, D_g2, D_f, A>, each with its internal order."""

    config: Config
    components: Tuple[Component, ...]

    def component(self, name: str) -> Component:
        for component in self.components:
            if component.name == name:
                return component
        raise KeyError(name)

    def generators(self) -> List[Tuple[str, SpanObject]]:
        return [(component.name, obj) for component in self.components for obj in component.generators]

    def sizes(self) -> Dict[str, int]:
        return {component.name: len(component.generators) for component in self.components}

    def reversed(self) -> "Decomposition":
        """Reverse the component order and every internal order."""
        flipped = tuple(Component(c.name, tuple(reversed(c.generators))) for c in reversed(self.components))
        return Decomposition(self.config, flipped)


def config_header(cfg: Config) -> Dict:
    header = cfg.to_dict()
    header["label"] = cfg.label
    return header


def enumerate_a_blocks(cfg: Config) -> Tuple[Tuple[SpanObject, ...], Tuple[SpanObject, ...], Tuple[SpanObject, ...]]:
    """
    The exceptional line bundles of A, as three blocks.

    Blocks run by ascending degree; within a degree the most negative
    character comes first.
    """
    m, n = cfg.m, cfg.n
    first = tuple(
        SpanObject.line_bundle(-(m + n - 2) + s, c)
        for s in range(m - 1)
        for c in range(-(n - 1), -(n - 1 - s) + 1)
    )
    second = tuple(
        SpanObject.line_bundle(-(n - 1) + u, c)
        for u in range(n - m)
        for c in range(-(n - 1) + u, -(n - m) + u + 1)
    )
    third = tuple(
        SpanObject.line_bundle(-(m - 1) + v, c)
        for v in range(m)
        for c in range(-(m - 1) + v, 1)
    )
    return first, second, third


def enumerate_components(cfg: Config) -> Decomposition:
    """Build the generator lists of every component for a config with m >= 2."""
    if cfg.m < 2:
        raise ValueError(f"enumerate_components needs m >= 2, got {cfg.label}; use the cyclic checks")
    m, n, d = cfg.m, cfg.n, cfg.d
    first, second, third = enumerate_a_blocks(cfg)
    components = (
        Component("D_g1", tuple(SpanObject.point_g(i) for i in range(m - d, m - n))),
        Component("D_fg", (SpanObject.line(-m, -n),)),
        Component("D_g2", tuple(SpanObject.point_g(i) for i in range(m - n, 0))),
        Component("D_f", tuple(SpanObject.point_f(i) for i in range(d - n, 0, -1))),
        Component("A", first + second + third),
    )
    return Decomposition(cfg, components)


def ff_window(cfg: Config, obj: SpanObject) -> int:
    """Largest degree allowed to carry invariant self-Ext."""
    if obj.kind is SpanKind.POINT_F:
        return cfg.m - 2
    if obj.kind is SpanKind.POINT_G:
        return cfg.n - 2
    if obj.kind is SpanKind.LINE:
        return cfg.m + cfg.n - 4
    return 0


def self_ext_record(cfg: Config, component: str, obj: SpanObject, table: ExtTable) -> CheckRecord:
    """Exceptionality for line bundles, the fully-faithfulness window for points and lines."""
    invariants = table.invariants()
    if obj.kind is SpanKind.LINE_BUNDLE:
        return CheckRecord("exceptional", component, obj.label, obj.label, table, invariants == {0: 1})
    window = ff_window(cfg, obj)
    passed = invariants.get(0) == 1 and not table.invariant_degrees_outside(0, window)
    return CheckRecord("ff_window", component, obj.label, obj.label, table, passed, detail=f"window [0, {window}]")


def ordered_pair_records(
    report: Report,
    ordered: Sequence[Tuple[str, SpanObject]],
    hom: HomFunction,
    advisory: Callable[[str, str], bool] = lambda later, earlier: False,
) -> None:
    """Record Hom(later, earlier) for every pair in which 'later' comes after 'earlier'."""
    for j, (later_component, later) in enumerate(ordered):
        for i in range(j):
            earlier_component, earlier = ordered[i]
            table = hom(later, earlier)
            report.add(
                CheckRecord(
                    "semiorthogonal",
                    f"{later_component}->{earlier_component}",
                    later.label,
                    earlier.label,
                    table,
                    table.invariant_is_zero(),
                    binding=not advisory(later_component, earlier_component),
                )
            )


def _ff_criterion_records(cfg: Config) -> List[CheckRecord]:
    # higher invariant self-Ext of a point vanishes exactly when the twist window is wide enough
    records = []
    for name, tangent, window, expected in (
        ("xf", TangentModel.at_xf(cfg), cfg.m - 2, cfg.d > cfg.n),
        ("xg", TangentModel.at_xg(cfg), cfg.n - 2, cfg.d > cfg.m),
    ):
        table = point_ext(tangent, 0)
        vanishes = not table.invariant_degrees_outside(0, window)
        records.append(
            CheckRecord(
                "ff_criterion",
                name,
                f"O_{name}",
                f"O_{name}",
                table,
                vanishes == expected,
                detail=f"higher Ext vanishes: {vanishes}, expected: {expected}",
            )
        )
    return records


def _distinct_line_records(cfg: Config) -> List[CheckRecord]:
    """Join lines through different pairs of points are orthogonal."""
    records = []
    base = SpanObject.line(-cfg.m, -cfg.n, 0, 0)
    for kind, other, binding in (
        ("shared_p", SpanObject.line(-cfg.m, -cfg.n, 0, 1), True),
        ("shared_q", SpanObject.line(-cfg.m, -cfg.n, 1, 0), False),
        ("disjoint", SpanObject.line(-cfg.m, -cfg.n, 1, 1), True),
    ):
        for later, earlier in ((base, other), (other, base)):
            table = hom_table(cfg, later, earlier)
            records.append(
                CheckRecord("distinct_lines", kind, later.label, earlier.label, table, table.invariant_is_zero(), binding)
            )
    return records


def check_semiorthogonality(cfg: Config, reversed_order: bool = False) -> Report:
    """
    Check every Hom(later, earlier) vanishing and every self-Ext condition.

    Args:
        cfg: Config with 2 <= m <= n <= d
        reversed_order: Run on the reversed decomposition (expected to fail)

    Returns:
        Report with one record per pair and per generator
    """
    decomposition = enumerate_components(cfg)
    if reversed_order:
        decomposition = decomposition.reversed()
    ordered = decomposition.generators()

    report = Report(config_header(cfg))
    report.extras["components"] = decomposition.sizes()
    ordered_pair_records(
        report,
        ordered,
        lambda later, earlier: hom_table(cfg, later, earlier),
        advisory=lambda later, earlier: (later, earlier) in ADVISORY_PAIRS,
    )
    for component, obj in ordered:
        report.add(self_ext_record(cfg, component, obj, hom_table(cfg, obj, obj)))
    for record in _ff_criterion_records(cfg) + _distinct_line_records(cfg):
        report.add(record)

    logger.info(f"Semi-orthogonality on {cfg.label}: {len(report.records)} checks, {len(report.failures)} failures")
    return report


def _nonvanishing(check_kind: str, later: str, earlier: str, table: ExtTable) -> CheckRecord:
    return CheckRecord("negative_control", check_kind, later, earlier, table, not table.invariant_is_zero())


def negative_controls(cfg: Config) -> Report:
    """Nonvanishing facts that would be lost if the checks were vacuous."""
    if cfg.m < 2:
        raise ValueError(f"negative_controls needs m >= 2, got {cfg.label}")
    report = Report(config_header(cfg))
    structure = SpanObject.line_bundle(0, 0)
    point = SpanObject.point_f(0)
    report.add(_nonvanishing("untwisted_point", structure.label, point.label, hom_table(cfg, structure, point)))
    report.add(_nonvanishing("xf_window_edge", "O_xf", f"O_xf chi^{cfg.d - cfg.n}", point_ext(TangentModel.at_xf(cfg), cfg.d - cfg.n)))
    report.add(_nonvanishing("xg_window_edge", "O_xg", f"O_xg chi^{cfg.m - cfg.d}", point_ext(TangentModel.at_xg(cfg), cfg.m - cfg.d)))
    line = SpanObject.line(-cfg.m, -cfg.n)
    report.add(_nonvanishing("line_endomorphisms", line.label, line.label, self_ext_line(cfg)))
    twisted = SpanObject.line_bundle(1, 0)
    report.add(_nonvanishing("wrong_order_line_bundles", structure.label, twisted.label, hom_table(cfg, structure, twisted)))
    return report


def hilbert_records(cfg: Config, cutoff: int) -> Report:
    """Koszul identities, ideal-power numerics and the graded Ext cross-check."""
    report = Report(config_header(cfg))

    passed, twist = check_koszul_lines(cfg, cutoff)
    report.add(CheckRecord("koszul_lines", "euler_series", passed=passed, detail=f"inferred twist {twist}"))
    report.add(
        CheckRecord(
            "koszul_lines_literal",
            "untwisted_h_minus_1",
            passed=twist is not None and twist.is_trivial,
            binding=False,
            detail="H^-1 = O_l(-d) with no character twist",
        )
    )
    report.extras["inferred_twist"] = twist.r if twist is not None else None

    for name, holds in join_sequence_results(cfg, cutoff).items():
        report.add(CheckRecord("koszul_complete_intersection", name, passed=holds))
    report.add(CheckRecord("divisor_sequence", "h0_series", passed=divisor_sequence_holds(cfg, cutoff)))

    # every Koszul summand for a free orbit is one of the generators of A
    a_bundles = {(obj.degree, obj.twist % cfg.d) for obj in enumerate_components(cfg).component("A").generators}
    summands = {(k, c % cfg.d) for k, c in koszul_data_lines(cfg).line_bundles()}
    missing = sorted(summands - a_bundles)
    report.add(CheckRecord("koszul_summands_in_A", "free_orbit", passed=not missing, detail=f"missing {missing}" if missing else ""))

    lengths_ok = all(
        filtration_length(cfg.m, r) == ideal_power_counts(cfg.m + 1, r - 1)
        and ideal_power_counts(cfg.m, r) == ideal_power_counts(cfg.m, r - 1) + ideal_power_counts(cfg.m - 1, r)
        for r in range(1, cfg.d + 1)
    )
    report.add(CheckRecord("ideal_powers", "filtration_length", passed=lengths_ok))

    if cfg.m == cfg.n == cfg.d:
        scan = scan_spq(cfg)
        report.add(
            CheckRecord(
                "spq_vanishing",
                "literal_range",
                passed=scan.literal_vanishing,
                binding=False,
                detail=f"{scan.literal_vanishing_pairs} pairs in the literal range",
            )
        )
        report.add(CheckRecord("spq_vanishing", "presumed_range", passed=scan.presumed_vanishing))
        report.add(CheckRecord("spq_equality", "equality_range", passed=scan.equality, detail=f"{scan.pairs_checked} pairs"))
    return report


def serre_samples(cfg: Config, count: int = SERRE_SAMPLES) -> List[Tuple[int, int]]:
    """Reproducible (k, c) samples with |k| <= 10."""
    rng = random.Random(cfg.label)
    return [(rng.randint(-SERRE_DEGREE_RANGE, SERRE_DEGREE_RANGE), rng.randrange(cfg.d)) for _ in range(count)]


@performance_monitor("verify_config")
def verify_config(cfg: Config, cutoff: Optional[int] = None, reversed_order: bool = False) -> Report:
    """
    Run the whole suite for one config.

    Args:
        cfg: The config; m = 1 runs the cyclic checks
        cutoff: Hilbert cutoff, default 2d + 4
        reversed_order: Negative-control mode

    Returns:
        The merged Report
    """
    if cfg.cyclic:
        from app.core.special_cases import check_cyclic
        return check_cyclic(cfg)

    cutoff = 2 * cfg.d + 4 if cutoff is None else cutoff
    report = check_semiorthogonality(cfg, reversed_order)
    report.merge(negative_controls(cfg))
    report.add(CheckRecord("serre_duality", "line_bundles", passed=serre_check(cfg, serre_samples(cfg)), detail=f"{SERRE_SAMPLES} samples"))
    report.merge(hilbert_records(cfg, cutoff))
    logger.info(f"Verified {cfg.label}: {'pass' if report.passed else 'FAIL'}")
    return report
