#app/core/geometry.py

import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, List, Tuple

from app.core.cohomology import cohomology_hypersurface, p1_cohomology
from app.core.localext import LocalModel, TangentModel, koszul_ext, point_ext
from app.models.equicore import CharVector, Config, ExtTable, serre_twist

# Set up logging
logger = logging.getLogger(__name__)


class UndecidedError(RuntimeError):
    """Raised when no dispatch rule covers a pair of spanning objects."""


class SpanKind(str, Enum):
    LINE_BUNDLE = "LB"
    POINT_F = "PF"
    POINT_G = "PG"
    LINE = "L"


@dataclass(frozen=True)
class SpanObject:
    """
    A spanning object on X.

    Points and lines sit at generic sites: a point carries one site label, a
    join line carries the labels of its X_f point and its X_g point. Objects
    with equal labels share the underlying point.
    """

    kind: SpanKind
    twist: int
    degree: int = 0
    site: Tuple[int, ...] = ()

    @classmethod
    def line_bundle(cls, k: int, c: int) -> "SpanObject":
        return cls(SpanKind.LINE_BUNDLE, c, k)

    @classmethod
    def point_f(cls, c: int, site: int = 0) -> "SpanObject":
        return cls(SpanKind.POINT_F, c, 0, (site,))

    @classmethod
    def point_g(cls, c: int, site: int = 0) -> "SpanObject":
        return cls(SpanKind.POINT_G, c, 0, (site,))

    @classmethod
    def line(cls, k: int, c: int, p: int = 0, q: int = 0) -> "SpanObject":
        return cls(SpanKind.LINE, c, k, (p, q))

    @classmethod
    def parse(cls, text: str) -> "SpanObject":
        """
        Parse LB:k:c, PF:c, PG:c or L:k:c, with an optional @site suffix.

        Args:
            text: Object descriptor, e.g. "L:-2:-3@0,1" or "PF:2@1"

        Returns:
            The parsed SpanObject
        """
        body, _, site_text = text.strip().partition("@")
        parts = body.split(":")
        try:
            kind = SpanKind(parts[0].upper())
            numbers = [int(part) for part in parts[1:]]
            sites = [int(part) for part in site_text.split(",")] if site_text else []
        except ValueError as e:
            raise ValueError(f"Cannot parse span object '{text}': {e}")

        expected = 2 if kind in (SpanKind.LINE_BUNDLE, SpanKind.LINE) else 1
        if len(numbers) != expected:
            raise ValueError(f"Span object '{text}' needs {expected} integer fields")
        if kind is SpanKind.LINE_BUNDLE:
            if sites:
                raise ValueError(f"Line bundles carry no site: '{text}'")
            return cls.line_bundle(numbers[0], numbers[1])
        if kind is SpanKind.LINE:
            if len(sites) > 2:
                raise ValueError(f"A join line has two site labels: '{text}'")
            p, q = (sites + [0, 0])[:2]
            return cls.line(numbers[0], numbers[1], p, q)
        if len(sites) > 1:
            raise ValueError(f"A point has one site label: '{text}'")
        site = sites[0] if sites else 0
        return cls.point_f(numbers[0], site) if kind is SpanKind.POINT_F else cls.point_g(numbers[0], site)

    @property
    def is_point(self) -> bool:
        return self.kind in (SpanKind.POINT_F, SpanKind.POINT_G)

    @property
    def label(self) -> str:
        if self.kind is SpanKind.LINE_BUNDLE:
            return f"O({self.degree})chi^{self.twist}"
        if self.kind is SpanKind.POINT_F:
            return f"O_p{self.site[0]}chi^{self.twist}"
        if self.kind is SpanKind.POINT_G:
            return f"O_q{self.site[0]}chi^{self.twist}"
        return f"O_l(p{self.site[0]},q{self.site[1]})({self.degree})chi^{self.twist}"

    def twisted(self, degree: int, char: int) -> "SpanObject":
        """Tensor with O_X(degree) (x) chi^char; a point only sees the fiber character."""
        if self.kind is SpanKind.POINT_F:
            return replace(self, twist=self.twist + char)
        if self.kind is SpanKind.POINT_G:
            return replace(self, twist=self.twist + char - degree)
        return replace(self, twist=self.twist + char, degree=self.degree + degree)


def fiber_character(obj: SpanObject, kind: SpanKind) -> int:
    """Character of the fiber of a line bundle or line sheaf at a point of X_f or X_g."""
    if kind is SpanKind.POINT_F:
        return obj.twist
    return obj.twist - obj.degree


def validate_object(cfg: Config, obj: SpanObject) -> None:
    """Reject objects that do not exist on X for this config."""
    if obj.kind is SpanKind.POINT_F and cfg.m < 2:
        raise ValueError(f"{obj.label}: X_f is empty for {cfg.label}")
    if obj.kind is SpanKind.POINT_G and cfg.n < 2:
        raise ValueError(f"{obj.label}: X_g is empty for {cfg.label}")
    if obj.kind is SpanKind.LINE and (cfg.m < 2 or cfg.n < 2):
        raise ValueError(f"{obj.label}: join lines need m, n >= 2, got {cfg.label}")
    if obj.kind is SpanKind.LINE_BUNDLE and cfg.m + cfg.n < 3:
        raise ValueError(f"{obj.label}: line bundle cohomology needs m + n >= 3, got {cfg.label}")


@dataclass(frozen=True)
class NormalSplitting:
    """Splitting type of the normal bundle of a join line, as (degree, character) summands."""

    d: int
    summands: Tuple[Tuple[int, int], ...]

    @property
    def rank(self) -> int:
        return len(self.summands)

    @property
    def degree(self) -> int:
        return sum(deg for deg, _ in self.summands)


def normal_bundle_line(cfg: Config) -> NormalSplitting:
    """N = O(1)^{m-2} + (O(1) chi)^{n-2} + O(2-d) chi on the join line."""
    if cfg.m < 2 or cfg.n < 2:
        raise ValueError(f"Join lines need m, n >= 2, got {cfg.label}")
    summands = ((1, 0),) * (cfg.m - 2) + ((1, 1),) * (cfg.n - 2) + ((2 - cfg.d, 1),)
    return NormalSplitting(cfg.d, summands)


def exterior_line_bundles(splitting: NormalSplitting) -> Dict[int, Dict[Tuple[int, int], int]]:
    """Lambda^s N as a multiset of (degree, character) line bundles, for every s."""
    layers: List[Dict[Tuple[int, int], int]] = [{(0, 0): 1}]
    for deg, char in splitting.summands:
        grown = [dict(layer) for layer in layers] + [{}]
        for s, layer in enumerate(layers):
            for (total_deg, total_char), count in layer.items():
                key = (total_deg + deg, (total_char + char) % splitting.d)
                grown[s + 1][key] = grown[s + 1].get(key, 0) + count
        layers = grown
    return dict(enumerate(layers))


def line_self_ext_bound(cfg: Config, degree_gap: int = 0, char_gap: int = 0) -> ExtTable:
    """
    E2 page bound for Ext(O_l(k1) chi^c1, O_l(k2) chi^c2) on a single join line.

    Row r + s collects H^r(Lambda^s N (x) O(k2 - k1) chi^{c2 - c1}) on the line.
    Vanishing of a row forces vanishing of the corresponding Ext.
    """
    rows: Dict[int, CharVector] = {}
    for s, bundles in exterior_line_bundles(normal_bundle_line(cfg)).items():
        for (deg, char), count in bundles.items():
            table = p1_cohomology(cfg.d, deg + degree_gap, char + char_gap)
            for r, vector in table.rows:
                scaled = vector.scaled(count)
                rows[r + s] = rows[r + s] + scaled if r + s in rows else scaled
    return ExtTable.from_rows(cfg.d, rows)


def self_ext_line(cfg: Config) -> ExtTable:
    return line_self_ext_bound(cfg, 0, 0)


def _xf_coordinates(cfg: Config) -> Tuple[Tuple[str, int], ...]:
    # functions at a point of X_f; y1 and y2 point along join lines
    return tuple((f"x{i}", 0) for i in range(1, cfg.m - 1)) + tuple((f"y{j}", -1) for j in range(1, cfg.n + 1))


def _xg_coordinates(cfg: Config) -> Tuple[Tuple[str, int], ...]:
    # functions at a point of X_g; x1 and x2 point along join lines
    return tuple((f"y{j}", 0) for j in range(1, cfg.n - 1)) + tuple((f"x{i}", 1) for i in range(1, cfg.m + 1))


def _chart(cfg: Config, locus: SpanKind) -> Tuple[Tuple[Tuple[str, int], ...], str, str]:
    if locus is SpanKind.POINT_F:
        return _xf_coordinates(cfg), "y1", "y2"
    return _xg_coordinates(cfg), "x1", "x2"


def point_line_model(cfg: Config, locus: SpanKind, twist: int) -> LocalModel:
    """Ext(O_point, O_line) at the shared point: the line is cut out by all coordinates but one."""
    variables, direction, _ = _chart(cfg, locus)
    names = frozenset(name for name, _ in variables)
    return LocalModel(cfg.d, variables, names, names - {direction}, twist)


def crossing_lines_model(cfg: Config, locus: SpanKind, twist: int) -> LocalModel:
    """Ext between two join lines meeting only at one point of X_f or X_g."""
    variables, first, second = _chart(cfg, locus)
    names = frozenset(name for name, _ in variables)
    return LocalModel(cfg.d, variables, names - {first}, names - {second}, twist)


def tangent_model(cfg: Config, locus: SpanKind) -> TangentModel:
    return TangentModel.at_xf(cfg) if locus is SpanKind.POINT_F else TangentModel.at_xg(cfg)


def serre_image(cfg: Config, obj: SpanObject) -> SpanObject:
    """S(obj) without its shift: obj (x) O_X(d-m-n) (x) chi^{-n}."""
    degree, char = serre_twist(cfg)
    return obj.twisted(degree, char.r)


def _serre_reduced(cfg: Config, later: SpanObject, earlier: SpanObject) -> ExtTable:
    # Ext^i(A, B) = Ext^{dim X - i}(B, S(A))^dual
    return hom_table(cfg, earlier, serre_image(cfg, later)).dualize(cfg.dimension)


def _point_on_line(point: SpanObject, line: SpanObject) -> bool:
    index = 0 if point.kind is SpanKind.POINT_F else 1
    return point.site[0] == line.site[index]


def hom_table(cfg: Config, later: SpanObject, earlier: SpanObject) -> ExtTable:
    """
    Ext^*(later, earlier) with its full character decomposition.

    Args:
        cfg: The config
        later: Source object
        earlier: Target object

    Returns:
        ExtTable; for two sheaves on the same join line this is the E2 bound
    """
    validate_object(cfg, later)
    validate_object(cfg, earlier)
    d = cfg.d
    source, target = later, earlier

    if source.kind is SpanKind.LINE_BUNDLE:
        if target.kind is SpanKind.LINE_BUNDLE:
            return cohomology_hypersurface(cfg, target.degree - source.degree, target.twist - source.twist)
        if target.is_point:
            gap = target.twist - fiber_character(source, target.kind)
            return ExtTable.from_rows(d, {0: CharVector.single(d, gap)})
        if target.kind is SpanKind.LINE:
            return p1_cohomology(d, target.degree - source.degree, target.twist - source.twist)

    if source.is_point:
        if target.is_point:
            if source.kind is not target.kind or source.site != target.site:
                return ExtTable.zero(d)
            return point_ext(tangent_model(cfg, source.kind), target.twist - source.twist)
        if target.kind is SpanKind.LINE:
            if not _point_on_line(source, target):
                return ExtTable.zero(d)
            twist = fiber_character(target, source.kind) - source.twist
            return koszul_ext(point_line_model(cfg, source.kind, twist))
        if target.kind is SpanKind.LINE_BUNDLE:
            return _serre_reduced(cfg, source, target)

    if source.kind is SpanKind.LINE:
        if target.kind is SpanKind.LINE:
            same_p = source.site[0] == target.site[0]
            same_q = source.site[1] == target.site[1]
            if same_p and same_q:
                return line_self_ext_bound(cfg, target.degree - source.degree, target.twist - source.twist)
            if same_p or same_q:
                locus = SpanKind.POINT_F if same_p else SpanKind.POINT_G
                twist = fiber_character(target, locus) - fiber_character(source, locus)
                return koszul_ext(crossing_lines_model(cfg, locus, twist))
            return ExtTable.zero(d)
        if target.is_point or target.kind is SpanKind.LINE_BUNDLE:
            return _serre_reduced(cfg, source, target)

    raise UndecidedError(f"No rule computes Ext({later.label}, {earlier.label}) on {cfg.label}")
