import pytest

from symjac.diagrams import Y, enumerate_diagrams, disjoint_union
from symjac.elements import element
from symjac.expressions import element_of, evaluate_text
from symjac.parser import ParseError, format_element, label_genus, parse_expression, unparse
from symjac.quotient import nf
from symjac.symplectic import alpha, beta

a1, b1, a2, b2 = alpha(1), beta(1), alpha(2), beta(2)

CORPUS = [
    "Y[a1,b1,a2]",
    "H[a1,b1;a2,b2]",
    "Phi[a1,b2]",
    "Theta",
    "empty",
    "3/2",
    "-Y[a1,b1,a2] + 2*H[a1,b1;a2,b2]",
    "star(Y[a1,b1,a2], Y[b1,a1,b2])",
    "bracket(Y[a1,a2,b2], Y[b1,a2,b2])",
    "chi(Phi[a1,b1])",
    "chiinv(Y<[a1,b1,a2])",
    "delta(Y[a1,b1,a2])",
    "antipode(Y[a1,b1,a2])",
    "tree(Phi[a1,b1] + Y[a1,b1,a2])",
    "Y[w,a1,a2]",
    "strut[w,a1]",
    "Y[(a1 - 2*b2),b1,a2]",
    "G{iv (u,v,w) ; leg u=a1 ; leg v=b1 ; leg w=a2}",
    "G{iv (u,v,w) ; leg u=a1 ; leg v=b1 ; leg w=a2 ; order w,u,v}",
    "2*(Y[a1,b1,a2] - Y[a2,b1,a1])",
]


@pytest.mark.parametrize("text", CORPUS)
def test_round_trip(text):
    node = parse_expression(text)
    assert parse_expression(unparse(node)) == node


@pytest.mark.parametrize("text,offset", [
    ("Y[a1,b1]", 0),
    ("Y[a1,b1,q7]", 8),
    ("star(Y[a1,b1,a2])", 0),
    ("Y[a1,b1,a2] +", 13),
    ("Y[a1,b1,a2] $", 12),
    ("Y[(a1 +,b1,a2]", 2),
    ("Foo[a1]", 0),
])
def test_errors_report_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_expression(text)
    assert info.value.offset == offset


def test_offsets_count_bytes():
    with pytest.raises(ParseError) as info:
        parse_expression("Y[a1,b1,a2] + é")
    assert info.value.offset == 14


def test_format_element_parses_back():
    for d in enumerate_diagrams(2, 2)[::25] + [disjoint_union(Y(a1, b1, a2), Y(a1, b1, b2))]:
        x = element((3, d), (-1, Y(a1, b1, a2)))
        y = element_of(format_element(x), 2)
        assert nf(x, 2) == nf(y, 2)


def test_evaluation():
    x = element_of("Y[a1,b1,a2] + Y[b1,a1,a2]", 2)
    assert x == {}
    v = evaluate_text("delta(Y[a1,b1,a2])", 2)
    assert v.kind == "tensor" and len(v.data) == 2
    vec = element_of("Y[(a1 + b2),b1,a2]", 2)
    assert nf(vec, 2) == nf(element((1, Y(a1, b1, a2)), (1, Y(b2, b1, a2))), 2)
    with pytest.raises(ValueError):
        element_of("chiinv(Y[a1,b1,a2])", 2)
    with pytest.raises(ValueError):
        element_of("star(Y<[a1,b1,a2], Y[a1,b1,a2])", 2)


def test_ordered_scalar_is_ordered_unit():
    x = element_of("chi(Y[a1,b1,a2]) + 1", 2)
    assert all(d.ordered for d in x)


def test_label_genus():
    assert label_genus(parse_expression("Y[a1,b3,w]")) == 3
    assert label_genus(parse_expression("Theta")) == 0
    assert label_genus(parse_expression("Y[(a1 - b4),a2,b1]")) == 4
