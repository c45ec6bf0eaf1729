from collections import Counter
from fractions import Fraction as Q

import pytest

from rootsuper.axioms import verify_T
from rootsuper.catalog import (
    TypeLabel,
    alternate_a_ll,
    catalog_labels,
    construct,
    fundamental_weights,
    make_exceptional,
    make_root_system,
    root_base,
)
from rootsuper.classify import real_components
from rootsuper.system import partition_roots

from catalog_cases import ALL, ids


def system(text):
    return construct(TypeLabel.parse(text))


def lifted(S, vectors):
    return [S.frame.lift(v) for v in vectors]


def nonzero_null(S):
    return len(partition_roots(S).nonsingular) - 1


class TestLabels:
    @pytest.mark.parametrize("label", list(catalog_labels(4)), ids=ids(catalog_labels(4)))
    def test_text_round_trip(self, label):
        assert TypeLabel.parse(str(label)) == label

    @pytest.mark.parametrize("family,params,lam", [
        ("D", (3,), None),
        ("C", (1,), None),
        ("C_TT", (1, 2), None),
        ("ATP", (3, 3), None),
        ("BC_TT", (2, 1), None),
        ("D_21L", (), Q(0)),
        ("D_21L", (), Q(-1)),
        ("B", (2,), Q(1)),
        ("E6", (), None),
    ])
    def test_rejects_out_of_table(self, family, params, lam):
        with pytest.raises(ValueError):
            TypeLabel(family, params, lam)

    def test_aliases(self):
        assert TypeLabel("Ȧ0T", (2,)) == TypeLabel("A0T", (2,))
        assert str(TypeLabel("D_21λ", (), Q(1, 2))) == "D(2,1,λ=1/2)"


class TestClassical:
    def test_b2(self):
        S = make_root_system("B", 2)
        expected = {(0, 0)} | {(s, 0) for s in (1, -1)} | {(0, s) for s in (1, -1)} \
            | {(s, t) for s in (1, -1) for t in (1, -1)}
        assert set(S.roots) == expected

    def test_bc1(self):
        assert set(make_root_system("BC", 1).roots) == {(0,), (1,), (-1,), (2,), (-2,)}

    def test_a2(self):
        S = make_root_system("A", 2)
        assert len(S) == 7 and S.dim == 2
        real = lifted(S, S.real_roots)
        expected = [{f"e{i}": 1, f"e{j}": -1} for i in (1, 2, 3) for j in (1, 2, 3) if i != j]
        assert len(real) == 6 and all(d in real for d in expected)

    def test_g2(self):
        S = make_exceptional("G2")
        assert len(S) == 13
        norms = Counter(S.norm(r) for r in S.real_roots)
        assert len(norms) == 2
        short, long = sorted(norms)
        assert long == 3 * short and norms[short] == norms[long] == 6

    def test_f4(self):
        S = make_exceptional("F4")
        assert len(S) == 49
        assert verify_T(S).verdict

    @pytest.mark.parametrize("family,n,size", [
        ("A", 4, 21), ("B", 4, 33), ("C", 4, 33), ("D", 5, 41), ("BC", 3, 25),
    ])
    def test_sizes(self, family, n, size):
        assert len(make_root_system(family, n)) == size


class TestBasesAndWeights:
    def test_b2_base(self):
        S = system("B_2")
        assert lifted(S, root_base(S)) == [{"e1": 1, "e2": -1}, {"e2": 1}]

    def test_c3_base(self):
        S = system("C_3")
        assert lifted(S, root_base(S)) == [{"e1": 1, "e2": -1}, {"e2": 1, "e3": -1}, {"e3": 2}]

    def test_a1_base(self):
        S = system("A_1")
        assert len(root_base(S)) == 1

    def test_a2_weight(self):
        S = system("A_2")
        w1 = fundamental_weights(S, root_base(S))[0]
        assert S.frame.lift(w1) == {"e1": Q(2, 3), "e2": Q(-1, 3), "e3": Q(-1, 3)}

    def test_b2_weights(self):
        S = system("B_2")
        assert lifted(S, fundamental_weights(S, root_base(S))) == [
            {"e1": 1}, {"e1": Q(1, 2), "e2": Q(1, 2)}]

    def test_bc1_weight(self):
        S = system("BC_1")
        assert lifted(S, fundamental_weights(S, root_base(S))) == [{"e1": Q(1, 2)}]

    @pytest.mark.parametrize("text", ["A_4", "B_3", "C_4", "D_5", "BC_3", "G_2", "F_4"])
    def test_weights_are_dual_to_coroots(self, text):
        S = system(text)
        base = root_base(S)
        weights = fundamental_weights(S, base)
        for i, w in enumerate(weights):
            for j, a in enumerate(base):
                assert 2 * S.pair(w, a) / S.norm(a) == (1 if i == j else 0)


class TestSuper:
    def test_imaginary_a_counts(self):
        S = system("Ȧ(0,3)")
        assert len(S.real_roots) == 6 and len(S.null_roots) == 6

    def test_imaginary_c_counts(self):
        assert nonzero_null(system("Ċ(0,2)")) == 8

    def test_atp_null_roots(self):
        S = system("Ȧ(2,3)")
        expected = [{f"e{t}": s, f"d{p}": -s} for t in (1, 2) for p in (1, 2, 3) for s in (1, -1)]
        got = lifted(S, S.null_roots)
        assert len(got) == 12
        assert all(d in got for d in expected)

    def test_a11(self):
        S = system("A(1,1)")
        assert len(S) == 9
        real = lifted(S, S.real_roots)
        assert {"e1": 1, "e2": -1} in real and {"d1": 1, "d2": -1} in real

    def test_d21_three_components(self):
        S = system("D(2,1,λ=1)")
        comps = real_components(S)
        assert len(comps) == 3 and all(len(m) == 3 for m in comps.members)
        assert nonzero_null(S) == 8

    def test_ab13(self):
        assert nonzero_null(system("AB(1,3)")) == 16

    @pytest.mark.parametrize("label", ALL, ids=ids(ALL))
    def test_label_is_attached(self, label):
        assert construct(label).label == label

    @pytest.mark.parametrize("l", [1, 2])
    def test_alternate_presentation_is_valid(self, l):
        S = alternate_a_ll(l)
        assert verify_T(S).verdict
        same = set(S.null_roots) == set(construct(TypeLabel("A_ll", (l,))).null_roots)
        # With l = 1 both sign patterns already occur, so the sets coincide.
        assert same == (l == 1)
