import pytest
from hypothesis import given, strategies as st

from rootsuper.axioms import (
    check_invariance,
    check_sub_supersystem,
    refails,
    report_dict,
    verify_lattice,
    verify_T,
    verify_Tprime,
)
from rootsuper.catalog import TypeLabel, construct
from rootsuper.exactlin import GramForm
from rootsuper.system import RootSupersystem

from catalog_cases import ALL, ids

SMALL = [TypeLabel.parse(t) for t in
         ("A_2", "B_2", "BC_2", "G_2", "Ȧ(0,2)", "Ċ(0,2)", "A(1,1)", "B(2,1)", "D(2,1,λ=2)")]


def system(text):
    return construct(TypeLabel.parse(text))


def without(S, *named):
    drop = {S.frame.locate(n) for n in named}
    return S.with_roots([r for r in S.roots if r not in drop])


class TestVerifiers:
    @pytest.mark.parametrize("label", ALL, ids=ids(ALL))
    def test_catalog_passes(self, label):
        S = construct(label)
        assert verify_T(S).verdict
        assert verify_Tprime(S).verdict

    def test_missing_star(self):
        S = without(system("Ȧ(0,2)"), {"a*": 1})
        report = verify_T(S)
        check = report.get("symmetric")
        assert not check.passed
        assert check.witness == (S.frame.locate({"a*": -1}),)

    def test_missing_simple_root(self):
        report = verify_T(without(system("A_2"), {"e1": 1, "e2": -1}))
        assert not report.get("reflection-closure").passed

    def test_broken_string(self):
        S = without(system("A_2"), {"e1": 1, "e3": -1})
        report = verify_Tprime(S)
        assert not report.get("root-string").passed
        assert refails(S, report.get("root-string"))

    def test_missing_zero(self):
        S = system("B_2")
        S = S.with_roots([r for r in S.roots if any(r)])
        assert not verify_T(S).get("zero").passed
        assert not verify_Tprime(S).verdict

    def test_degenerate_form(self):
        S = RootSupersystem(GramForm(((1, 0), (0, 0))), ((0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)))
        assert not verify_T(S).get("nondegenerate").passed

    def test_locally_finite_is_noted(self):
        check = verify_T(system("A_1")).get("locally-finite")
        assert check.passed and check.note

    def test_report_dict_shape(self):
        d = report_dict(verify_T(without(system("Ȧ(0,2)"), {"a*": 1})))
        assert d["verdict"] == "fail"
        sym = next(c for c in d["checks"] if c["id"] == "symmetric")
        assert sym["pass"] is False
        assert all("/" in x for x in sym["witness"][0])


class TestLattice:
    ROOTS = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)]

    def test_a2_lattice(self):
        assert verify_lattice(2, [[2, -1], [-1, 2]], self.ROOTS).verdict

    def test_missing_root(self):
        roots = [r for r in self.ROOTS if r != (1, 1)]
        report = verify_lattice(2, [[2, -1], [-1, 2]], roots)
        assert not report.verdict
        assert not report.get("reflection-closure").passed

    def test_radical(self):
        report = verify_lattice(2, [[0, 0], [0, 2]], self.ROOTS)
        check = report.get("lattice-radical")
        assert not check.passed and check.witness[0][1] == 0

    def test_index_two_sublattice(self):
        roots = [(0, 0), (2, 0), (-2, 0), (0, 2), (0, -2)]
        report = verify_lattice(2, [[1, 0], [0, 1]], roots)
        assert not report.get("lattice-span").passed


class TestInvariance:
    def test_b2_count(self):
        report = check_invariance(system("B_2"))
        assert report.verdict
        assert report.checks[0].evaluated == 4 * 9 * 9

    @pytest.mark.parametrize("label", SMALL, ids=ids(SMALL))
    def test_catalog(self, label):
        assert check_invariance(construct(label)).verdict

    def test_asymmetric_form_rejected_up_front(self):
        with pytest.raises(ValueError):
            RootSupersystem(((1, 1), (0, 1)), ((0, 0),))


class TestSubSupersystem:
    def test_a1_inside_b2(self):
        S = system("B_2")
        e1 = S.frame.locate({"e1": 1})
        assert check_sub_supersystem(S, [(0, 0), e1, tuple(-x for x in e1)]).verdict

    def test_not_closed(self):
        S = system("B_2")
        e1 = S.frame.locate({"e1": 1})
        long = S.frame.locate({"e1": 1, "e2": 1})
        subset = [(0, 0), e1, tuple(-x for x in e1), long, tuple(-x for x in long)]
        report = check_sub_supersystem(S, subset)
        check = report.get("reflection-closure")
        assert not check.passed
        assert check.witness == (tuple(-x for x in long), tuple(-x for x in e1))
        assert refails(S.with_roots(subset), check)


@given(st.sampled_from(SMALL), st.data())
def test_mutations_agree_and_witnesses_refail(label, data):
    S = construct(label)
    nonzero = [r for r in S.roots if any(r)]
    victim = data.draw(st.sampled_from(nonzero))
    pair = data.draw(st.booleans())
    drop = {victim, tuple(-x for x in victim)} if pair else {victim}
    M = S.with_roots([r for r in S.roots if r not in drop])
    t, tp = verify_T(M), verify_Tprime(M)
    assert t.verdict == tp.verdict
    for report in (t, tp):
        for check in report.failures():
            assert refails(M, check), check


@given(st.sampled_from(SMALL), st.fractions(-3, 3, max_denominator=4).filter(lambda x: x != 0))
def test_scaling_the_form_preserves_validity(label, c):
    S = construct(label)
    scaled = GramForm(tuple(tuple(c * x for x in row) for row in S.form.entries))
    T = RootSupersystem(scaled, S.roots)
    assert verify_T(T).verdict
