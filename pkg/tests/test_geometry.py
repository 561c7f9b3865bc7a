#tests/test_geometry.py

import pytest

from app.core.cohomology import cohomology_hypersurface
from app.core.geometry import (
    SpanKind,
    SpanObject,
    crossing_lines_model,
    exterior_line_bundles,
    fiber_character,
    hom_table,
    normal_bundle_line,
    point_line_model,
    self_ext_line,
    serre_image,
    validate_object,
)
from app.core.checker import enumerate_components
from app.core.localext import TangentModel
from app.core.oracle import fermat_cotangent_weights, fermat_point, fermat_point_ext
from app.models.equicore import Config, ExtTable


@pytest.mark.parametrize(
    "text, expected",
    [
        ("LB:-1:2", SpanObject.line_bundle(-1, 2)),
        ("PF:3", SpanObject.point_f(3)),
        ("pg:-1@2", SpanObject.point_g(-1, 2)),
        ("L:-2:-3", SpanObject.line(-2, -3)),
        ("L:-2:-3@1", SpanObject.line(-2, -3, 1, 0)),
        ("L:-2:-3@0,1", SpanObject.line(-2, -3, 0, 1)),
    ],
)
def test_parse(text, expected):
    assert SpanObject.parse(text) == expected


@pytest.mark.parametrize("text", ["XX:1", "PF", "PF:1:2", "LB:1", "LB:0:0@1", "L:0:0@1,2,3", "PF:1@1,2", "PF:a"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        SpanObject.parse(text)


def test_labels():
    assert SpanObject.line_bundle(-1, 2).label == "O(-1)chi^2"
    assert SpanObject.point_g(1, 3).label == "O_q3chi^1"
    assert SpanObject.line(-2, -2).label == "O_l(p0,q0)(-2)chi^-2"


def test_fiber_rule():
    bundle = SpanObject.line_bundle(2, 3)
    assert fiber_character(bundle, SpanKind.POINT_F) == 3
    assert fiber_character(bundle, SpanKind.POINT_G) == 1


def test_twisting_points_only_sees_the_fiber():
    assert SpanObject.point_f(1).twisted(5, 2) == SpanObject.point_f(3)
    assert SpanObject.point_g(1).twisted(5, 2) == SpanObject.point_g(-2)
    assert SpanObject.line(0, 0).twisted(-1, 2) == SpanObject.line(-1, 2)


def test_serre_image(cfg_235):
    # S = O(0) chi^{-3} = O(0) chi^2 on (2,3,5)
    assert serre_image(cfg_235, SpanObject.line_bundle(1, 1)) == SpanObject.line_bundle(1, 3)


def test_validate_object():
    with pytest.raises(ValueError):
        validate_object(Config.of(1, 3, 4), SpanObject.point_f(0))
    with pytest.raises(ValueError):
        validate_object(Config.of(1, 3, 4), SpanObject.line(0, 0))
    with pytest.raises(ValueError):
        validate_object(Config.of(1, 1, 4), SpanObject.point_g(0))
    validate_object(Config.of(1, 3, 4), SpanObject.point_g(0))


def test_normal_bundle_examples():
    assert normal_bundle_line(Config(2, 2, 4)).summands == ((-2, 1),)
    assert normal_bundle_line(Config(3, 3, 4)).summands == ((1, 0), (1, 1), (-2, 1))
    cfg = Config(2, 3, 5)
    assert normal_bundle_line(cfg).degree == cfg.m + cfg.n - 2 - cfg.d
    assert normal_bundle_line(cfg).rank == cfg.dimension - 1


def test_exterior_line_bundles(cfg_235):
    layers = exterior_line_bundles(normal_bundle_line(cfg_235))
    assert layers[0] == {(0, 0): 1}
    assert layers[1] == {(1, 1): 1, (-3, 1): 1}
    assert layers[2] == {(-2, 2): 1}


def test_self_ext_line_examples(cfg_224, cfg_235):
    assert self_ext_line(cfg_224).invariants() == {0: 1}
    assert self_ext_line(cfg_235).invariants() == {0: 1, 1: 1}


def test_local_model_charts(cfg_235):
    model = point_line_model(cfg_235, SpanKind.POINT_F, 0)
    assert model.source_killed == frozenset({"y1", "y2", "y3"})
    assert model.target_killed == frozenset({"y2", "y3"})
    crossing = crossing_lines_model(cfg_235, SpanKind.POINT_G, 0)
    assert crossing.source_killed == frozenset({"y1", "x2"})
    assert crossing.target_killed == frozenset({"y1", "x1"})


def test_hom_table_examples(cfg_224, cfg_235):
    assert hom_table(cfg_235, SpanObject.line_bundle(-1, -1), SpanObject.point_f(-3)).invariant_is_zero()
    assert hom_table(cfg_224, SpanObject.line_bundle(0, 0), SpanObject.point_f(0)) == ExtTable.from_dict(4, {0: {0: 1}})
    assert hom_table(cfg_235, SpanObject.line_bundle(0, 0), SpanObject.line(-2, -3)).invariant_is_zero()


def test_hom_table_line_bundles_use_the_difference(cfg_235):
    table = hom_table(cfg_235, SpanObject.line_bundle(-1, 2), SpanObject.line_bundle(1, 1))
    assert table == cohomology_hypersurface(cfg_235, 2, -1)


def test_points_on_different_loci_or_sites_are_orthogonal(cfg_235):
    assert hom_table(cfg_235, SpanObject.point_f(0), SpanObject.point_g(0)).is_zero()
    assert hom_table(cfg_235, SpanObject.point_g(0, 0), SpanObject.point_g(0, 1)).is_zero()
    assert hom_table(cfg_235, SpanObject.point_f(0, 1), SpanObject.line(0, 0, 0, 0)).is_zero()
    assert hom_table(cfg_235, SpanObject.line(0, 0, 0, 0), SpanObject.line(0, 0, 1, 1)).is_zero()


def test_point_self_ext_is_exterior_algebra(cfg_224):
    table = hom_table(cfg_224, SpanObject.point_f(0), SpanObject.point_f(0))
    assert table == ExtTable.from_dict(4, {0: {0: 1}, 1: {1: 2}, 2: {2: 1}})


def test_serre_reduction_matches_duality(cfg_235):
    point = SpanObject.point_f(1)
    bundle = SpanObject.line_bundle(0, 0)
    forward = hom_table(cfg_235, point, bundle)
    backward = hom_table(cfg_235, bundle, serre_image(cfg_235, point))
    assert forward == backward.dualize(cfg_235.dimension)
    assert forward.degrees() == (cfg_235.dimension,)


def test_same_line_table_is_the_e2_bound(cfg_235):
    line = SpanObject.line(-2, -3)
    assert hom_table(cfg_235, line, line) == self_ext_line(cfg_235)


@pytest.mark.parametrize("triple", [(2, 2, 4), (2, 3, 5), (3, 3, 4), (3, 4, 6)])
def test_serre_reduction_matches_duality_for_every_pair(triple):
    cfg = Config(*triple)
    objects = [obj for _, obj in enumerate_components(cfg).generators()]
    objects += [SpanObject.line(-cfg.m, -cfg.n, p, q) for p, q in ((0, 1), (1, 0), (1, 1))]
    for later in objects:
        for earlier in objects:
            forward = hom_table(cfg, later, earlier)
            backward = hom_table(cfg, earlier, serre_image(cfg, later))
            assert forward == backward.dualize(cfg.dimension), (later.label, earlier.label)


def test_fermat_points_are_distinct(cfg_235):
    for locus in (SpanKind.POINT_F, SpanKind.POINT_G):
        assert fermat_point(cfg_235, locus, 0) != fermat_point(cfg_235, locus, 1)
    with pytest.raises(ValueError):
        fermat_point(Config.of(1, 3, 4), SpanKind.POINT_F)


def test_fermat_cotangent_weights_match_the_tangent_models(cfg_235):
    assert fermat_cotangent_weights(cfg_235, SpanKind.POINT_F) == (4, 4, 4)
    assert fermat_cotangent_weights(cfg_235, SpanKind.POINT_G, 1) == (0, 1, 1)
    for locus, model in ((SpanKind.POINT_F, TangentModel.at_xf), (SpanKind.POINT_G, TangentModel.at_xg)):
        cotangent = sorted(fermat_cotangent_weights(cfg_235, locus))
        assert cotangent == sorted((-w) % cfg_235.d for w in model(cfg_235).weights)


@pytest.mark.parametrize("triple", [(2, 2, 4), (2, 3, 5), (3, 3, 6), (3, 4, 5)])
@pytest.mark.parametrize("locus", [SpanKind.POINT_F, SpanKind.POINT_G])
def test_point_ext_agrees_at_two_fermat_points(triple, locus):
    cfg = Config(*triple)
    make = SpanObject.point_f if locus is SpanKind.POINT_F else SpanObject.point_g
    for delta in range(cfg.d):
        first = fermat_point_ext(cfg, locus, 0, delta)
        second = fermat_point_ext(cfg, locus, 1, delta)
        assert first == second
        assert first == hom_table(cfg, make(0), make(delta))
        assert hom_table(cfg, make(0, 0), make(delta, 1)).is_zero()
