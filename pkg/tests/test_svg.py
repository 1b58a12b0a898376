import re
from fractions import Fraction as F

import pytest

from recreg.complex import PointConfiguration, validate_fan, validate_subdivision
from recreg.regularity import finest_regular_coarsening
from recreg.svg import emit_svg, render

SQUARE = validate_subdivision(PointConfiguration.make([(0, 0), (1, 0), (1, 1), (0, 1)]), [(0, 1, 2), (0, 2, 3)])


def test_square_with_diagonal():
    text = render(SQUARE)
    assert text.count("<polygon") == 2 and text.count("<line") == 1
    assert 'viewBox="0 0 1000 1000"' in text


def test_output_is_byte_identical(load, tmp_path):
    e = load("appendixE")
    frc = finest_regular_coarsening(e)
    a = emit_svg(e, tmp_path / "a.svg", relaxed=frc.relaxed_walls, groups=frc.coarsening.groups).read_bytes()
    b = emit_svg(e, tmp_path / "b.svg", relaxed=frc.relaxed_walls, groups=frc.coarsening.groups).read_bytes()
    assert a == b


def test_relaxed_walls_of_appendix_e_are_dashed(load):
    e = load("appendixE")
    frc = finest_regular_coarsening(e)
    text = render(e, relaxed=frc.relaxed_walls)
    dashed = re.findall(r'<line id="wall-([^"]+)"[^>]*stroke-dasharray', text)
    assert sorted(dashed, key=int) == [str(i) for i in range(1, 11)]
    assert text.count("<line") == 30


def test_violated_walls_and_groups(load):
    c = load("appendixC-fan")
    text = render(c, violated=["12"], groups=[[0, 1], [2, 3, 4]])
    assert re.search(r'<line id="wall-12"[^>]*stroke="#cc0000"', text)
    fills = re.findall(r'<polygon id="cell-\d" points="[^"]*" fill="([^"]+)"', text)
    assert fills[0] == fills[1] != fills[2] == fills[3] == fills[4]


def test_coordinates_stay_in_the_viewbox(load):
    for name in ("appendixE", "appendixF", "appendixC-section"):
        text = render(load(name))
        nums = [F(x) for x in re.findall(r"-?\d+(?:\.\d+)?", " ".join(re.findall(r'points="([^"]+)"', text)))]
        assert nums and all(0 <= x <= 1000 for x in nums)


def test_dimension_errors():
    with pytest.raises(ValueError):
        render(validate_fan([(1, 0), (0, 1), (-1, 0)], [(0, 1), (1, 2)]))
    cube = validate_subdivision(PointConfiguration.make([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]), [(0, 1, 2, 3)])
    with pytest.raises(ValueError):
        render(cube)
