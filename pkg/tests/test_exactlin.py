from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from rootsuper.catalog import TypeLabel, construct
from rootsuper.exactlin import (
    GramForm,
    evaluate,
    format_rational,
    hermite_normal_form,
    inverse,
    matmul,
    nondegenerate_extension,
    nullspace,
    parse_rational,
    radical,
    rank,
    same_lattice,
    solve_coordinates,
    span_basis,
)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def vectors(n):
    return st.tuples(*[fractions] * n)


class TestRationalText:
    @pytest.mark.parametrize("text,value", [
        ("0/1", Q(0)), ("3/1", Q(3)), ("-1/2", Q(-1, 2)), ("17/6", Q(17, 6)),
    ])
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("text", [
        "2/4", "0/2", "-0/1", "1/-2", "1", "0.5", "+1/2", "01/2", " 1/2", "1/0", "",
    ])
    def test_rejects_non_normalized(self, text):
        with pytest.raises(ValueError):
            parse_rational(text)

    @given(fractions)
    def test_round_trip(self, x):
        assert parse_rational(format_rational(x)) == x


class TestEvaluate:
    def test_identity(self):
        I = GramForm.identity(2)
        assert evaluate(I, (1, 0), (1, 0)) == 1
        assert evaluate(I, (1, 0), (0, 1)) == 0

    def test_null_root_against_simple_root(self):
        S = construct(TypeLabel.parse("Ȧ(0,3)"))
        star = S.frame.locate({"a*": 1})
        diff = S.frame.locate({"e2": 1, "e1": -1})
        assert evaluate(S.form, star, diff) == -1

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            GramForm(((1, 2), (3, 4)))

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            evaluate(GramForm.identity(2), (1, 0, 0), (1, 0))

    @given(vectors(3), vectors(3), vectors(3))
    def test_bilinear_and_symmetric(self, u, v, w):
        G = GramForm(((2, -1, 0), (-1, 2, Q(1, 2)), (0, Q(1, 2), -3)))
        assert evaluate(G, u, v) == evaluate(G, v, u)
        uv = tuple(a + b for a, b in zip(u, v))
        assert evaluate(G, uv, w) == evaluate(G, u, w) + evaluate(G, v, w)


class TestRank:
    def test_examples(self):
        assert rank([(1, 0), (0, 1), (1, 1)]) == 2
        assert rank([(0, 0)]) == 0
        # A_2 in three-dimensional coordinates
        roots = [(1, -1, 0), (0, 1, -1), (1, 0, -1), (-1, 1, 0), (0, -1, 1), (-1, 0, 1)]
        assert rank(roots) == 2

    @given(st.lists(vectors(3), min_size=1, max_size=5))
    def test_rank_nullity(self, rows):
        assert rank(rows) + len(nullspace(rows, 3)) == 3
        for k in nullspace(rows, 3):
            assert all(sum(a * b for a, b in zip(r, k)) == 0 for r in rows)

    @given(st.lists(vectors(3), min_size=1, max_size=5))
    def test_span_basis_spans(self, rows):
        basis = span_basis(rows)
        assert len(basis) == rank(rows)
        for r in rows:
            assert solve_coordinates(basis, r) is not None


class TestRadical:
    def test_definite(self):
        assert radical(GramForm.identity(2), [(1, 0), (0, 1)]) == []

    def test_zero_row(self):
        G = GramForm(((0, 0), (0, 2)))
        rad = radical(G, [(1, 0), (0, 1)])
        assert len(rad) == 1 and rank(rad + [(1, 0)]) == 1

    def test_null_line_in_a11(self):
        S = construct(TypeLabel.parse("A(1,1)"))
        v = S.frame.locate({"e1": 1, "e2": -1, "d1": 1, "d2": -1})
        assert evaluate(S.form, v, v) == 0
        assert len(radical(S.form, [v])) == 1

    def test_extension_unchanged_when_nondegenerate(self):
        I = GramForm.identity(3)
        assert nondegenerate_extension(I, [(1, 0, 0), (0, 1, 0), (0, 0, 1)], [(1, 1, 0)]) == [(1, 1, 0)]

    @pytest.mark.parametrize("label,named", [
        ("Ȧ(0,2)", {"a*": 1}),
        ("A(1,1)", {"e1": 1, "e2": -1, "d1": 1, "d2": -1}),
    ])
    def test_extension_of_null_line(self, label, named):
        S = construct(TypeLabel.parse(label))
        ambient = [tuple(Q(int(i == j)) for j in range(S.dim)) for i in range(S.dim)]
        W = [S.frame.locate(named)]
        U = nondegenerate_extension(S.form, ambient, W)
        assert len(U) == 2
        assert rank(U + W) == 2
        assert radical(S.form, U) == []


class TestMatrices:
    @given(st.lists(vectors(3), min_size=3, max_size=3))
    def test_inverse(self, rows):
        if rank(rows) < 3:
            with pytest.raises(ValueError):
                inverse(rows)
            return
        ident = matmul(rows, inverse(rows))
        assert ident == tuple(tuple(Q(int(i == j)) for j in range(3)) for i in range(3))

    def test_hnf_detects_index_two(self):
        assert not same_lattice([[1, 0], [0, 1]], [[1, 1], [1, -1]])
        assert same_lattice([[1, 0], [0, 1]], [[1, 1], [0, 1]])

    @given(st.lists(st.tuples(*[st.integers(-6, 6)] * 3), min_size=1, max_size=5),
           st.integers(-4, 4))
    def test_hnf_invariant_under_row_operations(self, rows, k):
        rows = [list(r) for r in rows]
        moved = [list(r) for r in rows]
        if len(moved) > 1:
            moved[0] = [a + k * b for a, b in zip(moved[0], moved[1])]
        moved.reverse()
        assert hermite_normal_form(rows) == hermite_normal_form(moved)
