import json
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodgescan.errors import FormatError
from hodgescan.formats import (
    _decimal_round,
    dump_json,
    fixture_path,
    format_period_file,
    list_fixtures,
    load_lattice,
    parse_period_file,
    read_period_file,
    tag_lower,
    tag_upper,
)
from hodgescan.hodge import PeriodData
from hodgescan.interval import exact_fraction

decimals = st.decimals(min_value=-10 ** 6, max_value=10 ** 6, allow_nan=False, places=12).map(str)


@given(st.integers(1, 4).flatmap(lambda m: st.tuples(
    st.just(m), st.integers(0, 2),
    st.lists(st.integers(-3, 3), min_size=m * m, max_size=m * m),
    st.lists(st.tuples(decimals, decimals), min_size=4 * 2, max_size=4 * 2))))
def test_period_file_round_trip(data):
    m, r, flat, vals = data
    I = [[flat[i * m + j] + flat[j * m + i] for j in range(m)] for i in range(m)]
    periods = [[vals[(i * r + k) % len(vals)] for k in range(r)] for i in range(m)]
    radii = [["1e-30"] * r for _ in range(m)]
    pd = PeriodData(I, [1] + [0] * (m - 1), periods, radii, 4, 2, 40)
    text = format_period_file(pd)
    back = parse_period_file(text)
    assert format_period_file(back) == text
    assert back.intersection == I and back.periods == periods


def test_bundled_period_fixture():
    pd = read_period_file(fixture_path("toy_certify"))
    assert pd.m == 6 and pd.r == 1 and pd.decimal_digits == 40


@pytest.mark.parametrize("text,line,col", [
    ("format_version 2\n", 1, 1),
    ("format_version 1\nm x\n", 2, 3),
    ("format_version 1\nm 2\nr 0\ndecimal_digits 5\ndegree 4\ndimension 2\nintersection\n1 0\n0 z\n", 9, 3),
    ("format_version 1\nm 1\nr 0\ndecimal_digits 5\ndegree 4\ndimension 2\nintersection\n1\n", 9, 1),
    ("format_version 1\nm 1\nr 1\ndecimal_digits 5\ndegree 4\ndimension 2\nintersection\n1\n"
     "polarization\n1\nperiods\n0.5 0.1 -1\n", 12, 9),
])
def test_format_errors_carry_position(text, line, col):
    with pytest.raises(FormatError) as exc:
        parse_period_file(text)
    assert (exc.value.line, exc.value.column) == (line, col)
    assert str(exc.value).startswith(f"line {line}, column {col}: ")


def test_comments_and_blank_lines():
    text = ("# comment\n\nformat_version 1\nm 1\nr 1\ndecimal_digits 5\ndegree 4\ndimension 2\n"
            "intersection\n1\npolarization\n1\nperiods\n  0.5 -0.25 1e-6\n")
    pd = parse_period_file(text)
    assert pd.periods == [[("0.5", "-0.25")]] and pd.radii == [["1e-6"]]


def test_lattice_fixtures():
    names = list_fixtures()
    for n in ("quartic_rank10", "quartic_rank14", "quartic_rank18", "pham_d4_n2", "toy_certify"):
        assert n in names
    pl = load_lattice(fixture_path("quartic_rank18"))
    assert pl.rank == 18 and pl.h_squared() == 4


def test_fixture_dir_override(tmp_path, monkeypatch):
    (tmp_path / "mine.json").write_text(json.dumps({"gram": [[4]], "h": [1]}))
    monkeypatch.setenv("HODGESCAN_FIXTURES", str(tmp_path))
    assert load_lattice(fixture_path("mine")).gram == [[4]]


def test_dump_json_is_deterministic_and_compact():
    text = dump_json({"b": [[1, 2], [3, 4]], "a": "x, [y]"})
    assert text.index('"a"') < text.index('"b"')
    assert "[1, 2]" in text and json.loads(text)["a"] == "x, [y]"


@given(st.fractions(min_value=-10 ** 9, max_value=10 ** 9, max_denominator=10 ** 9).filter(lambda q: q != 0),
       st.integers(1, 30))
def test_directed_decimal_rounding(q, digits):
    up = Fraction(_decimal_round(q, digits, True).replace("e", "E"))
    down = Fraction(_decimal_round(q, digits, False).replace("e", "E"))
    assert down <= q <= up


def test_tags_round_outward():
    x = mpmath.mpf(1) / 3
    assert Fraction(tag_upper(x)["value"]) >= exact_fraction(x)
    assert Fraction(tag_lower(x)["value"]) <= exact_fraction(x)
    assert tag_upper(mpmath.inf)["value"] == "inf"
