import json

import pytest
import sympy

from symhilb.exactnum import ZERO, parse_scalar, scalar, t1, t2
from symhilb.toric import (FanError, NonSmoothConeError, ToricSurface, builtin_fan_json, load_fan,
                           load_surface, localization_checks, parse_fan, validate_smooth)

T1, T2 = sympy.symbols("t1 t2")


def sympy_dual_weights(v1, v2):
    """Oracle: rows of the inverse transpose of the ray matrix applied to t."""
    m = sympy.Matrix([v1, v2]).inv().T
    w = m * sympy.Matrix([T1, T2])
    return parse_scalar(str(sympy.expand(w[0])).replace("**", "^")), \
        parse_scalar(str(sympy.expand(w[1])).replace("**", "^"))


def test_c2_anchor():
    charts = validate_smooth(parse_fan('{"rays": [[1,0],[0,1]], "cones": [[0,1]]}'))
    assert len(charts) == 1
    assert (charts[0].weight_L, charts[0].weight_R) == (t1, t2)


def test_p2_parses_with_three_cones():
    fan = parse_fan(builtin_fan_json("p2"))
    assert len(fan.cones) == 3
    assert fan.covers_plane()


def test_p2_second_cone_weights():
    charts = validate_smooth(load_fan("p2"))
    pair = {charts[1].weight_L, charts[1].weight_R}
    assert pair == {-t1, t2 - t1}


@pytest.mark.parametrize("name", ["c2", "p2", "p1xp1", "hirzebruch:0", "hirzebruch:1", "hirzebruch:2", "hirzebruch:5"])
def test_weights_match_sympy_oracle(name):
    fan = load_fan(name)
    for chart, (a, b) in zip(validate_smooth(fan), fan.cones):
        assert (chart.weight_L, chart.weight_R) == sympy_dual_weights(fan.rays[a], fan.rays[b])


@pytest.mark.parametrize("name", ["p2", "p1xp1", "hirzebruch:1", "hirzebruch:3"])
def test_reversing_ray_order_swaps_weights(name):
    data = json.loads(builtin_fan_json(name))
    flipped = dict(data, cones=[[b, a] for a, b in data["cones"]])
    for c1, c2 in zip(validate_smooth(parse_fan(json.dumps(data))), validate_smooth(parse_fan(json.dumps(flipped)))):
        assert (c1.weight_L, c1.weight_R) == (c2.weight_R, c2.weight_L)


def test_p2_integral_of_one_matches_symbolic_sum():
    # three-chart sum done independently in sympy
    pairs = [(T1, T2), (T2 - T1, -T1), (-T2, T1 - T2)]
    expected = sympy.cancel(sum(1 / (a * b) for a, b in pairs))
    assert expected == 0
    assert load_surface("p2").integral_of_one() == ZERO


@pytest.mark.parametrize("name,s,c1sq", [("p2", 3, 9), ("p1xp1", 4, 8), ("hirzebruch:1", 4, 8), ("hirzebruch:4", 4, 8)])
def test_compact_localization_identities(name, s, c1sq):
    checks = localization_checks(load_surface(name))
    assert checks["one"] == ZERO
    assert checks["c1"] == ZERO
    assert checks["c1^2"] == scalar(c1sq)
    assert checks["c2"] == scalar(s)


def test_hirzebruch_has_four_charts():
    surf = load_surface("hirzebruch:1")
    assert surf.s == 4 and surf.compact


def test_c2_is_not_compact():
    assert not load_surface("c2").compact
    half = ToricSurface.from_fan(parse_fan('{"rays": [[1,0],[0,1],[-1,0]], "cones": [[0,1],[1,2]]}'))
    assert half.s == 2 and not half.compact


def test_alpha():
    chart = load_surface("c2").charts[0]
    assert chart.alpha == -t2 / t1


@pytest.mark.parametrize("text,needle", [
    ('{"rays": [[2,0],[0,1]], "cones": [[0,1]]}', "non-primitive ray"),
    ('{"rays": [[1,0],[-1,0]], "cones": [[0,1]]}', "degenerate cone"),
    ('{"rays": [[1,0],[0,1]], "cones": [[0,2]]}', "out of range"),
    ('{"rays": [[1,0],[0,1],[1,1]], "cones": [[0,1],[0,2]]}', "overlap"),
    ('{"rays": [[1,0],[0,1]], "cones": [[0,1]]', "line 1"),
    ('{"rays": [[1,0]]}', "missing key"),
    ('[1, 2]', "JSON object"),
])
def test_parse_errors(text, needle):
    with pytest.raises(FanError, match=needle):
        parse_fan(text)


def test_non_smooth_cone():
    with pytest.raises(NonSmoothConeError, match="non-smooth cone"):
        validate_smooth(parse_fan('{"rays": [[1,0],[1,2]], "cones": [[0,1]]}'))


def test_unknown_builtin():
    with pytest.raises(FanError):
        load_fan("no-such-fan")
