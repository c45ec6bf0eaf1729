from fractions import Fraction as Q

import pytest

from rootsuper.catalog import TypeLabel, construct
from rootsuper.classify import real_components
from rootsuper.exactlin import GramForm
from rootsuper.system import (
    RootSupersystem,
    partition_roots,
    project,
    star_coefficient,
    support,
)

from catalog_cases import IMAGINARY, REAL, ids


def system(text):
    return construct(TypeLabel.parse(text))


class TestConstruction:
    def test_roots_sorted_and_deduplicated(self):
        S = RootSupersystem(GramForm.identity(1), ((1,), (0,), (-1,), (1,)))
        assert S.roots == ((Q(-1),), (Q(0),), (Q(1),))

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError):
            RootSupersystem(GramForm.identity(2), ((1,), (0, 0)))

    def test_keeps_asymmetric_root_sets(self):
        S = RootSupersystem(GramForm.identity(1), ((0,), (1,)))
        assert (-1,) not in S and (1,) in S

    def test_frame_round_trip(self):
        S = system("Ȧ(2,3)")
        v = S.frame.locate({"e1": 1, "d2": -1})
        assert S.frame.lift(v) == {"e1": 1, "d2": -1}
        with pytest.raises(ValueError):
            S.frame.locate({"e1": 1})

    @pytest.mark.parametrize("text", ["Ċ(0,3)", "D(2,1,λ=1/2)", "G_2"])
    def test_pair_matches_form(self, text):
        S = system(text)
        outside = tuple(Q(1, 3) for _ in range(S.dim))
        for u in S.roots + (outside,):
            for v in S.roots:
                assert S.pair(u, v) == S.form(u, v)


class TestPartition:
    def test_ordinary_system_has_no_null_roots(self):
        P = partition_roots(system("A_2"))
        assert P.nonsingular == ((Q(0), Q(0)),)
        assert len(P.real) == 7

    def test_imaginary_a_counts(self):
        P = partition_roots(system("Ȧ(0,3)"))
        assert len(P.nonsingular) - 1 == 6

    def test_a11_null_roots(self):
        S = system("A(1,1)")
        P = partition_roots(S)
        expected = {S.frame.locate({"e1": s, "e2": -s, "d1": t, "d2": -t})
                    for s in (Q(1, 2), Q(-1, 2)) for t in (Q(1, 2), Q(-1, 2))}
        assert set(P.nonsingular) - {(0, 0)} == expected

    @pytest.mark.parametrize("label", IMAGINARY + REAL, ids=ids(IMAGINARY + REAL))
    def test_partition_is_exact(self, label):
        S = construct(label)
        P = partition_roots(S)
        assert set(P.real) | set(P.nonsingular) == set(S.roots)
        assert set(P.real) & set(P.nonsingular) == {tuple(Q(0) for _ in range(S.dim))}
        assert all(S.norm(r) == 0 for r in P.nonsingular)


class TestProjection:
    def test_component_roots_project_to_themselves(self):
        S = system("B(2,2)")
        comps = real_components(S).members
        for i, comp in enumerate(comps):
            for r in comp:
                assert project(S, comps, r, i) == r
                assert not any(project(S, comps, r, 1 - i))

    def test_null_weight_projects_to_first_unit(self):
        S = system("B(2,2)")
        comps = real_components(S).members
        delta = S.frame.locate({"e1": 1, "d1": 1})
        assert delta in S
        pieces = [project(S, comps, delta, i) for i in range(2)]
        assert S.frame.lift(pieces[0]) == {"e1": 1}
        assert S.frame.lift(pieces[1]) == {"d1": 1}

    def test_support(self):
        S = system("D(2,3)")
        comps = real_components(S).members
        for r in S.real_roots:
            assert len(support(S, comps, r)) == 1
        assert support(S, comps, tuple(Q(0) for _ in range(S.dim))) == frozenset()
        for d in S.null_roots:
            assert support(S, comps, d) == frozenset(range(len(comps)))


class TestStarCoefficient:
    @pytest.mark.parametrize("label", IMAGINARY, ids=ids(IMAGINARY))
    def test_values(self, label):
        S = construct(label)
        star = S.null_roots[0]
        assert star_coefficient(S, star, star) == 1
        for r in S.real_roots:
            assert star_coefficient(S, star, r) == 0
        for d in S.null_roots:
            assert star_coefficient(S, star, d) in (1, -1)

    def test_rejects_real_star(self):
        S = system("Ȧ(0,2)")
        with pytest.raises(ValueError):
            star_coefficient(S, S.real_roots[0], S.real_roots[0])
