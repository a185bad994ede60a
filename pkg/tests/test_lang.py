import pytest
from hypothesis import given, settings, strategies as st

from ringcheck.errors import ParseError, RingcheckError
from ringcheck.lang import format_declarations, parse_declarations, parse_program

SOURCE = """
# two lines meeting nowhere
ring C = QQ[x,y] / (x^2 - x);
ring L = GF(7)[t] local;
ideal P in C = (x, y^2 - 1/3);
module M over C = coker [[x, y], [0, x - 1]];
check torsion_free M at P;
split C at P;
classify C;
"""


def test_program_contents():
    prog = parse_program(SOURCE)
    assert list(prog.rings) == ["C", "L"]
    assert prog.rings["L"].local and prog.rings["L"].field.p == 7
    assert prog.modules["M"].ngens == 2 and prog.modules["M"].ncols == 2
    assert [(c.command, c.target, c.at) for c in prog.commands] == [
        ("check", "M", "P"), ("split", "C", "P"), ("classify", "C", None)]
    assert prog.commands[0].prop == "torsion_free"


def test_format_round_trip():
    decls = parse_declarations(SOURCE)
    text = format_declarations(decls)
    assert format_declarations(parse_declarations(text)) == text


@pytest.mark.parametrize("src,where", [
    ("ring A = QQ[x,y]\n/ (x*);", "2:"),
    ("ring A = QQ[x];\nideal I in B = (x);", "2:"),
    ("ring A = QQ[x,x];", "1:"),
    ("ring A = QQ[x]; check flying A;", "1:"),
    ("ring A = QQ[x]; module M over A = coker [[x], [x, 1]];", "1:"),
])
def test_errors_carry_position(src, where):
    with pytest.raises(RingcheckError) as exc:
        parse_program(src)
    assert str(exc.value).startswith(where)


def test_gf_non_prime():
    with pytest.raises(ParseError, match="not prime"):
        parse_program("ring A = GF(9)[x];")


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="ringdealQGF()[]{},;:=/*^+-xyz0123 \n#", max_size=60))
def test_parser_fails_cleanly(text):
    try:
        parse_program(text)
    except RingcheckError:
        pass
