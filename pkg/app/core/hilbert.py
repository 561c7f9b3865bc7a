#app/core/hilbert.py

import logging
from dataclasses import dataclass
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core.cohomology import (
    cohomology_hypersurface,
    euler_hypersurface,
    euler_projective,
    monomial_weight_counts,
    p1_cohomology,
)
from app.core.geometry import SpanObject, hom_table
from app.models.equicore import Character, CharVector, Config, ExtTable, WeightedSpace, ambient_weights

# Set up logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EqHilbert:
    """Degree a in [0, cutoff] -> signed multiplicity of every character."""

    d: int
    cutoff: int
    table: np.ndarray

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.int64)
        if table.shape != (self.cutoff + 1, self.d):
            raise ValueError(f"Expected a ({self.cutoff + 1}, {self.d}) table, got {table.shape}")
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    @classmethod
    def build(cls, d: int, cutoff: int, piece: Callable[[int], Sequence[int]]) -> "EqHilbert":
        return cls(d, cutoff, np.array([list(piece(a)) for a in range(cutoff + 1)], dtype=np.int64).reshape(cutoff + 1, d))

    @classmethod
    def constant(cls, d: int, cutoff: int, value: int = 1) -> "EqHilbert":
        return cls(d, cutoff, np.full((cutoff + 1, d), value, dtype=np.int64))

    def piece(self, a: int) -> Tuple[int, ...]:
        return tuple(int(x) for x in self.table[a])

    def invariant(self, a: int) -> int:
        return int(self.table[a, 0])

    def __add__(self, other: "EqHilbert") -> "EqHilbert":
        self._check(other)
        return EqHilbert(self.d, self.cutoff, self.table + other.table)

    def __sub__(self, other: "EqHilbert") -> "EqHilbert":
        self._check(other)
        return EqHilbert(self.d, self.cutoff, self.table - other.table)

    def scaled(self, factor: int) -> "EqHilbert":
        return EqHilbert(self.d, self.cutoff, self.table * factor)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EqHilbert):
            return NotImplemented
        return self.d == other.d and self.cutoff == other.cutoff and bool(np.array_equal(self.table, other.table))

    def first_mismatch(self, other: "EqHilbert") -> Optional[Tuple[int, int]]:
        """(degree, character) of the first differing entry, or None."""
        self._check(other)
        positions = np.argwhere(self.table != other.table)
        if len(positions) == 0:
            return None
        a, c = positions[0]
        return int(a), int(c)

    def _check(self, other: "EqHilbert") -> None:
        if (self.d, self.cutoff) != (other.d, other.cutoff):
            raise ValueError(f"Series shapes differ: ({self.d}, {self.cutoff}) vs ({other.d}, {other.cutoff})")


@dataclass(frozen=True)
class KoszulData:
    """
    Terms of a Koszul complex K(E, s) on X.

    terms holds (i, k, c, multiplicity): Lambda^i E^dual contains O_X(k) chi^c
    with that multiplicity.
    """

    name: str
    d: int
    terms: Tuple[Tuple[int, int, int, int], ...]

    @property
    def length(self) -> int:
        return max((i for i, _, _, _ in self.terms), default=0)

    def line_bundles(self) -> List[Tuple[int, int]]:
        return [(k, c) for _, k, c, _ in self.terms]


def koszul_data(name: str, d: int, summands: Sequence[Tuple[int, int, int]]) -> KoszulData:
    """
    Exterior powers of E^dual for E a sum of line bundles.

    Args:
        name: Label for reports
        d: Order of the group
        summands: (degree, character, count) summands of E

    Returns:
        KoszulData with one entry per (i, k, c)
    """
    layers: List[Dict[Tuple[int, int], int]] = [{(0, 0): 1}]
    for deg, char, count in summands:
        for _ in range(count):
            grown = [dict(layer) for layer in layers] + [{}]
            for i, layer in enumerate(layers):
                for (k, c), mult in layer.items():
                    key = (k - deg, (c - char) % d)
                    grown[i + 1][key] = grown[i + 1].get(key, 0) + mult
            layers = grown
    terms = tuple(
        (i, k, c, mult) for i, layer in enumerate(layers) for (k, c), mult in sorted(layer.items(), reverse=True)
    )
    return KoszulData(name, d, terms)


def koszul_data_lines(cfg: Config) -> KoszulData:
    """E = O(1)^{m-1} + (O(1) chi)^{n-1}, cutting out a join line or a free orbit."""
    return koszul_data("lines", cfg.d, [(1, 0, cfg.m - 1), (1, 1, cfg.n - 1)])


def koszul_data_join_xf_q(cfg: Config) -> KoszulData:
    """E = (O(1) chi)^{n-1}, cutting out the cone over X_f with vertex q."""
    return koszul_data("join_xf_q", cfg.d, [(1, 1, cfg.n - 1)])


def koszul_data_cone_xg(cfg: Config) -> KoszulData:
    """E = O(1)^m, cutting out X_g."""
    return koszul_data("cone_xg", cfg.d, [(1, 0, cfg.m)])


def koszul_data_join_p_xg(cfg: Config) -> KoszulData:
    """E = O(1)^{m-1}, cutting out the cone over X_g with vertex p."""
    return koszul_data("join_p_xg", cfg.d, [(1, 0, cfg.m - 1)])


def hs_line_bundle_X(cfg: Config, k: int, c: int, cutoff: int) -> EqHilbert:
    """Degree-a piece: H^0(O_X(k + a) chi^c)."""
    return EqHilbert.build(cfg.d, cutoff, lambda a: cohomology_hypersurface(cfg, k + a, c).row(0).mult)


def euler_line_bundle_X(cfg: Config, k: int, c: int, cutoff: int) -> EqHilbert:
    """Degree-a piece: equivariant Euler characteristic of O_X(k + a) chi^c."""
    space = ambient_weights(cfg)
    return EqHilbert.build(cfg.d, cutoff, lambda a: euler_hypersurface(space, cfg.d, k + a, c))


def hs_module_line(cfg: Config, k: int, c: int, cutoff: int) -> EqHilbert:
    """Degree-a piece: monomials u^i v^j with i + j = a + k, in character c - j."""
    return EqHilbert.build(cfg.d, cutoff, lambda a: p1_cohomology(cfg.d, k + a, c).row(0).mult)


def euler_module_line(cfg: Config, k: int, c: int, cutoff: int) -> EqHilbert:
    line = WeightedSpace.join_line(cfg.d)
    return EqHilbert.build(cfg.d, cutoff, lambda a: euler_projective(line, k + a, c))


def euler_hypersurface_series(space: WeightedSpace, degree: int, cutoff: int) -> EqHilbert:
    return EqHilbert.build(space.d, cutoff, lambda a: euler_hypersurface(space, degree, a, 0))


def alternating_sum(cfg: Config, data: KoszulData, cutoff: int) -> EqHilbert:
    """Sum over the Koszul terms of (-1)^i times their Euler series."""
    total = EqHilbert.constant(cfg.d, cutoff, 0)
    for i, k, c, mult in data.terms:
        term = euler_line_bundle_X(cfg, k, c, cutoff).scaled(mult)
        total = total - term if i % 2 else total + term
    return total


def _require_lines(cfg: Config) -> None:
    if cfg.m < 2 or cfg.n < 2:
        raise ValueError(f"Join-line identities need m, n >= 2, got {cfg.label}")


def check_koszul_lines(cfg: Config, cutoff: int) -> Tuple[bool, Optional[Character]]:
    """
    Verify the Koszul complex cutting out a join line on Euler series.

    The complex has H^0 = O_l and H^{-1} = O_l(-d) (x) chi^t; every t in [0, d)
    is tried and the first one matching in all degrees is reported.

    Args:
        cfg: Config with m, n >= 2
        cutoff: Last degree compared, at least 2d

    Returns:
        (pass, inferred twist) with twist None when nothing matches
    """
    _require_lines(cfg)
    if cutoff < 2 * cfg.d:
        raise ValueError(f"cutoff must be at least 2d = {2 * cfg.d}, got {cutoff}")

    lhs = alternating_sum(cfg, koszul_data_lines(cfg), cutoff)
    base = euler_module_line(cfg, 0, 0, cutoff)
    for t in range(cfg.d):
        rhs = base - euler_module_line(cfg, -cfg.d, t, cutoff)
        if lhs == rhs:
            logger.debug(f"Koszul identity for lines on {cfg.label} holds with twist chi^{t}")
            return True, cfg.char(t)
    logger.warning(f"No twist makes the join-line Koszul identity hold on {cfg.label}")
    return False, None


def join_sequence_results(cfg: Config, cutoff: int) -> Dict[str, bool]:
    """
    Evaluate every complete-intersection Koszul identity separately.

    Args:
        cfg: Config with m, n >= 2
        cutoff: Last degree compared

    Returns:
        Dict from identity name to whether it holds in degrees [0, cutoff]
    """
    _require_lines(cfg)
    if cutoff < 0:
        raise ValueError(f"cutoff must be non-negative, got {cutoff}")
    d = cfg.d
    expected = {
        "join_xf_q": (koszul_data_join_xf_q(cfg), euler_hypersurface_series(WeightedSpace(d, (0,) * cfg.m + (-1,)), d, cutoff)),
        "free_orbit": (koszul_data_lines(cfg), EqHilbert.constant(d, cutoff, 1)),
        "cone_xg": (koszul_data_cone_xg(cfg), euler_hypersurface_series(WeightedSpace(d, (-1,) * cfg.n), d, cutoff)),
        "join_p_xg": (koszul_data_join_p_xg(cfg), euler_hypersurface_series(WeightedSpace(d, (0,) + (-1,) * cfg.n), d, cutoff)),
    }
    results = {}
    for name, (data, rhs) in expected.items():
        lhs = alternating_sum(cfg, data, cutoff)
        results[name] = lhs == rhs
        if not results[name]:
            logger.warning(f"Koszul identity {name} fails on {cfg.label} at (degree, character) {lhs.first_mismatch(rhs)}")
    return results


def check_join_sequences(cfg: Config, cutoff: int) -> bool:
    return all(join_sequence_results(cfg, cutoff).values())


def divisor_sequence_holds(cfg: Config, cutoff: int) -> bool:
    """H^0 series of O_X equals the ambient series minus its d-shift."""
    space = ambient_weights(cfg)
    ambient = EqHilbert.build(cfg.d, cutoff, lambda a: monomial_weight_counts(space, a))
    shifted = EqHilbert.build(cfg.d, cutoff, lambda a: monomial_weight_counts(space, a - cfg.d))
    return hs_line_bundle_X(cfg, 0, 0, cutoff) == ambient - shifted


def ideal_power_counts(m: int, r: int) -> int:
    """N(r) = C(m + r - 1, r), the rank of the r-th symmetric power of the cotangent space."""
    if m < 1 or r < 0:
        raise ValueError(f"Expected m >= 1 and r >= 0, got m={m}, r={r}")
    return comb(m + r - 1, r)


def ideal_power_filtration(m: int, r: int) -> List[Tuple[int, int]]:
    """Graded steps (count, character) of the derived dual of the r-th power of a point ideal."""
    return [(ideal_power_counts(m, s), -s - m) for s in range(r)]


def filtration_length(m: int, r: int) -> int:
    return sum(ideal_power_counts(m, s - 1) for s in range(1, r + 1))


def _require_cy(cfg: Config) -> None:
    if not (cfg.m == cfg.n == cfg.d):
        raise ValueError(f"The graded Ext cross-check needs m = n = d, got {cfg.label}")


def ext_spq_cy(cfg: Config, e: int, i: int) -> Tuple[ExtTable, ExtTable, bool]:
    """
    Compare the graded line-module count with the Ext computed through hom_table.

    lhs is the invariant part of the degree n-2+e piece of the line module
    twisted by chi^{i-1}, placed in degree 2n-3. rhs is the invariant part of
    Ext(O_l, O_X(e) chi^i).

    Args:
        cfg: Config with m = n = d
        e: Degree of the line bundle
        i: Character of the line bundle

    Returns:
        (lhs, rhs, agreement on whichever range (e, i) falls in)
    """
    _require_cy(cfg)
    n, d = cfg.n, cfg.d
    count = hs_module_line(cfg, n - 2 + e, i - 1, 0).invariant(0)
    lhs = ExtTable.from_rows(d, {2 * n - 3: CharVector.single(d, 0, count)})

    full = hom_table(cfg, SpanObject.line(0, 0), SpanObject.line_bundle(e, i))
    rhs = ExtTable.from_rows(d, {deg: CharVector.single(d, 0, value) for deg, value in full.invariants().items()})

    agree = True
    if -n + 1 <= e <= 0 and e <= i <= 0:
        agree = lhs.is_zero()
    if -n + 1 <= e <= 0 and -n <= i < e:
        agree = agree and lhs == rhs
    return lhs, rhs, agree


@dataclass(frozen=True)
class SpqScan:
    """Outcome of ext_spq_cy over -n+1 <= e <= 0, -n <= i <= 0."""

    pairs_checked: int
    literal_vanishing_pairs: int
    literal_vanishing: bool
    presumed_vanishing: bool
    equality: bool

    @property
    def passed(self) -> bool:
        return self.literal_vanishing and self.presumed_vanishing and self.equality


def scan_spq(cfg: Config) -> SpqScan:
    """
    Scan both readings of the vanishing range and the equality range.

    Read literally, -n+1 >= e >= 0 contains no e for n >= 2, so that reading
    holds vacuously; the scan records how many pairs it covered.
    """
    _require_cy(cfg)
    n = cfg.n
    literal_pairs = 0
    literal = presumed = equality = True
    checked = 0
    for e in range(-n + 1, 1):
        for i in range(-n, 1):
            lhs, rhs, _ = ext_spq_cy(cfg, e, i)
            checked += 1
            if -n + 1 >= e >= 0:
                literal_pairs += 1
                literal = literal and lhs.is_zero()
            if e <= i <= 0 and not lhs.is_zero():
                logger.warning(f"Expected vanishing at (e={e}, i={i}) on {cfg.label}, got {lhs.summary()}")
                presumed = False
            if i < e and lhs != rhs:
                logger.warning(f"Graded count and Ext differ at (e={e}, i={i}) on {cfg.label}: {lhs.summary()} vs {rhs.summary()}")
                equality = False
    return SpqScan(checked, literal_pairs, literal, presumed, equality)
