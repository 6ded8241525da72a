import pytest

from dismantling import ContextError, FormalContext, ParseError, format_cxt, parse_csv, parse_cxt, read_context
from dismantling.io import format_csv

from conftest import DATA


@pytest.mark.parametrize("path", sorted(DATA.glob("*.cxt")), ids=lambda p: p.name)
def test_cxt_round_trip(path):
    ctx = read_context(path)
    again = parse_cxt(format_cxt(ctx))
    assert again == ctx
    assert again.objects == ctx.objects and again.attributes == ctx.attributes


def test_csv_round_trip(fig3):
    assert parse_csv(format_csv(fig3)) == fig3
    assert read_context(DATA / "fig2.csv") == read_context(DATA / "fig2.cxt")


def test_parse_with_name_line_and_lowercase():
    text = "B\nexample\n\n2\n2\n\ng\nh\nm\nn\nx.\n.X\n"
    ctx = parse_cxt(text)
    assert ctx.objects == ("g", "h") and ctx.incidence == {("g", "m"), ("h", "n")}


@pytest.mark.parametrize("text, line, column", [
    ("A\n", 1, 1),
    ("B\n\n2\n1\n\ng\nh\nm\nX\nQ\n", 10, 1),
    ("B\n\n1\n2\n\ng\nm\nn\nX\n", 9, 2),
    ("B\n\n1\n1\n\ng\nm\nX\nextra\n", 9, None),
    ("B\n\n1\n1\n\ng\n", 7, None),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_cxt(text)
    assert info.value.line == line
    assert info.value.column == column
    assert str(info.value).startswith(f"line {line}")


def test_duplicate_labels_are_parse_errors():
    with pytest.raises(ParseError):
        parse_cxt("B\n\n2\n1\n\ng\ng\nm\nX\nX\n")


def test_csv_errors():
    with pytest.raises(ParseError):
        parse_csv("")
    with pytest.raises(ParseError) as info:
        parse_csv(",a\ng,2\n")
    assert info.value.line == 2 and info.value.column == 2
    with pytest.raises(ParseError):
        parse_csv(",a,b\ng,1\n")


def test_read_context_errors(tmp_path):
    with pytest.raises(ContextError):
        read_context(tmp_path / "missing.cxt")
    p = tmp_path / "ctx.txt"
    p.write_text("B\n")
    with pytest.raises(ContextError):
        read_context(p)


def test_empty_context_round_trip():
    empty = FormalContext((), (), ())
    assert parse_cxt(format_cxt(empty)) == empty
