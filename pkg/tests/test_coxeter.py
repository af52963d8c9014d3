import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artinlab.coxeter import (
    CoxeterMatrix,
    CoxeterParseError,
    CoxeterType,
    DiagramSymmetry,
    NotFiniteError,
    bilinear_form,
    classify_spherical,
    coxeter_group,
    diagram_symmetries,
    enumerate_group,
    geometric_generators,
    group_queries,
    identity_matrix,
    mat_mul,
    named_matrix,
    parse_coxeter,
    preserves_form,
)
from artinlab.exact import field_context


def test_parse_rank_form():
    m = parse_coxeter("rank 2\n1 3\n3 1")
    assert m == named_matrix("A", 2)


def test_parse_type_form_and_comments():
    m = parse_coxeter("# the braid group on four strands\ntype A 3\n")
    assert m.entries == ((1, 3, 2), (3, 1, 3), (2, 3, 1))


@pytest.mark.parametrize(
    "text",
    [
        "rank 2\n1 2\n3 1",  # asymmetric
        "rank 2\n2 3\n3 1",  # diagonal
        "rank 2\n1 1\n1 1",  # off-diagonal below 2
        "rank 2\n1 3",  # missing row
        "rank x",
        "rank 2\n1 a\n3 1",
        "type Q 3",
        "",
    ],
)
def test_parse_errors(text):
    with pytest.raises(CoxeterParseError) as info:
        parse_coxeter(text)
    assert "line" in str(info.value)


def test_parse_error_position():
    with pytest.raises(CoxeterParseError) as info:
        parse_coxeter("rank 2\n1 2\n3 1")
    assert info.value.line >= 2


def test_matrix_validation():
    with pytest.raises(ValueError):
        CoxeterMatrix(((1, 3), (2, 1)))


def test_classify():
    assert classify_spherical(named_matrix("A", 2)) == ["A_2"]
    affine = CoxeterMatrix(((1, 3, 3), (3, 1, 3), (3, 3, 1)))
    assert classify_spherical(affine) is None
    block = CoxeterMatrix(((1, 3, 2, 2), (3, 1, 2, 2), (2, 2, 1, 5), (2, 2, 5, 1)))
    assert classify_spherical(block) == ["A_2", "I_5"]
    assert classify_spherical(named_matrix("G", 2)) == ["I_6"]
    assert classify_spherical(named_matrix("H", 2)) == ["I_5"]
    assert classify_spherical(named_matrix("B", 2)) == ["I_4"]
    for fam, k in [("A", 5), ("B", 4), ("D", 5), ("E", 6), ("E", 7), ("E", 8), ("F", 4), ("H", 3), ("H", 4)]:
        assert classify_spherical(named_matrix(fam, k)) == [f"{fam}_{k}"]


def test_classify_relabelled():
    m = named_matrix("D", 4)
    p = (3, 0, 2, 1)
    q = CoxeterMatrix(tuple(tuple(m[p.index(i), p.index(j)] for j in range(4)) for i in range(4)))
    assert classify_spherical(q) == ["D_4"]


def test_non_spherical_rank4():
    # affine C_3 style: 4 = 3 = 3 = 4 path
    m = CoxeterMatrix(((1, 4, 2, 2), (4, 1, 3, 2), (2, 3, 1, 4), (2, 2, 4, 1)))
    assert classify_spherical(m) is None


def test_coxeter_type_parse():
    assert str(CoxeterType.parse("D 4")) == "D_4"
    assert str(CoxeterType.parse("i_7")) == "I_7"


def test_diagram_symmetries_examples():
    assert [str(s) for s in diagram_symmetries(named_matrix("A", 3))] == ["()", "(1 3)"]
    d4 = diagram_symmetries(named_matrix("D", 4))
    assert len(d4) == 6 and all(s(3) == 3 for s in d4)
    assert [str(s) for s in diagram_symmetries(named_matrix("F", 4))] == ["()", "(1 4)(2 3)"]
    assert [str(s) for s in diagram_symmetries(named_matrix("E", 6))] == ["()", "(1 5)(2 4)"]
    assert len(diagram_symmetries(named_matrix("H", 3))) == 1
    assert len(diagram_symmetries(named_matrix("B", 3))) == 1


def test_symmetry_from_cycles():
    s = DiagramSymmetry.from_cycles("(1 4)(2 3)", 4)
    assert s.perm == (3, 2, 1, 0)
    assert DiagramSymmetry.from_cycles("()", 3).is_identity()
    assert str(DiagramSymmetry.from_cycles("(1 2 3)", 3) ** 3) == "()"
    with pytest.raises(ValueError):
        DiagramSymmetry.from_cycles("(1 1)", 3)


@pytest.mark.parametrize("fam,k", [("A", 4), ("D", 4), ("D", 5), ("F", 4), ("E", 6), ("I", 6)])
def test_symmetries_form_group(fam, k):
    m = named_matrix(fam, k)
    syms = set(diagram_symmetries(m))
    for a, b in itertools.product(syms, repeat=2):
        assert a * b in syms
        assert a.inverse() in syms
        assert a.preserves(m)


def test_geometric_generators():
    (s,) = geometric_generators(named_matrix("A", 1))
    assert s.matrix == ((field_context(1)(-1),),)
    m = named_matrix("H", 3)
    ctx = field_context(30)
    gens = geometric_generators(m, ctx)
    form = bilinear_form(m, ctx)
    one = identity_matrix(3, ctx)
    for g in gens:
        assert mat_mul(g.matrix, g.matrix) == one
        assert preserves_form(g.matrix, form)
    with pytest.raises(ValueError):
        geometric_generators(m, field_context(4))


def test_braid_relation_as_matrices():
    s1, s2 = (g.matrix for g in geometric_generators(named_matrix("A", 2)))
    assert mat_mul(mat_mul(s1, s2), s1) == mat_mul(mat_mul(s2, s1), s2)


@pytest.mark.parametrize(
    "fam,k,order,top",
    [
        ("A", 2, 6, 3),
        ("A", 3, 24, 6),
        ("B", 3, 48, 9),
        ("D", 4, 192, 12),
        ("I", 5, 10, 5),
        ("I", 7, 14, 7),
        ("H", 3, 120, 15),
        ("F", 4, 1152, 24),
    ],
)
def test_orders(fam, k, order, top):
    t = coxeter_group(named_matrix(fam, k))
    assert t.order == order
    assert t.length[t.w0] == top
    assert t.length.count(0) == 1


def test_classical_order_formulas():
    for n in range(1, 5):
        assert coxeter_group(named_matrix("A", n)).order == math.factorial(n + 1)
    assert coxeter_group(named_matrix("D", 5)).order == 2**4 * math.factorial(5)


def test_bound_exceeded():
    gens = geometric_generators(named_matrix("A", 3))
    with pytest.raises(NotFiniteError):
        enumerate_group(gens, bound=10)
    affine = CoxeterMatrix(((1, 3, 3), (3, 1, 3), (3, 3, 1)))
    with pytest.raises(NotFiniteError):
        enumerate_group(geometric_generators(affine), bound=500)


def test_group_queries():
    t = coxeter_group(named_matrix("A", 2))
    assert group_queries(0, t) == (set(), set(), 0)
    assert group_queries(t.w0, t) == ({0, 1}, {0, 1}, 3)
    w = t.from_word([0, 1])
    assert group_queries(w, t) == ({0}, {1}, 2)
    with pytest.raises(KeyError):
        group_queries(99, t)


@pytest.mark.parametrize("fam,k", [("A", 3), ("B", 3), ("D", 4), ("H", 3), ("I", 8)])
def test_table_invariants(fam, k):
    m = named_matrix(fam, k)
    t = coxeter_group(m)
    top = t.length[t.w0]
    form = bilinear_form(m, t.elements[0].matrix[0][0].ctx)
    gens = [g.matrix for g in geometric_generators(m, t.elements[0].matrix[0][0].ctx)]
    for w in range(t.order):
        # l(w) + l(w^-1 w0) = l(w0)
        assert t.length[w] + t.length[t.mul(t.inverse[w], t.w0)] == top
        assert len(t.words[w]) == t.length[w]
        assert t.mul(w, t.inverse[w]) == 0
    for w in range(0, t.order, max(1, t.order // 25)):
        el = t.elements[w]
        prod = identity_matrix(m.n, form[0][0].ctx)
        for i in el.word:
            prod = mat_mul(prod, gens[i])
        assert prod == el.matrix
        assert preserves_form(el.matrix, form)
        assert t.index[el.matrix] == w


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([("A", 3), ("D", 4), ("F", 4), ("I", 6)]), st.data())
def test_symmetries_preserve_length(fk, data):
    m = named_matrix(*fk)
    t = coxeter_group(m)
    phi = data.draw(st.sampled_from(diagram_symmetries(m)))
    w = data.draw(st.integers(0, t.order - 1))
    image = t.from_word([phi(i) for i in t.words[w]])
    assert t.length[image] == t.length[w]


def test_render_roundtrip():
    m = named_matrix("F", 4)
    assert parse_coxeter(m.render()) == m
