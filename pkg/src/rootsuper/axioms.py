"""Axiom verifiers for finite root supersystems and their lattice form.

Every check records the first counterexample in canonical root order, where
the outer quantifier runs over the reflecting (or null) root and the inner one
over the root it acts on.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exactlin import (
    GramForm,
    Vector,
    format_rational,
    hermite_normal_form,
    independent_subset,
    radical,
    rank,
    unit,
    vector,
    zero,
)
from .system import RootSupersystem
from .weyl import STRING_SCAN_LIMIT, reflect, reflection_generators

FINITE_NOTE = "finite root set: local finiteness holds trivially"


@dataclass(frozen=True)
class Check:
    id: str
    passed: bool
    witness: Optional[Tuple[Vector, ...]] = None
    note: str = ""
    evaluated: int = 0


@dataclass(frozen=True)
class AxiomReport:
    checks: Tuple[Check, ...]

    @property
    def verdict(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.verdict

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def get(self, check_id: str) -> Check:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)


def _root(S, i) -> Vector:
    return S.roots[i]


def _shift(b, a, k):
    return tuple(x + k * y for x, y in zip(b, a))


def check_zero(S: RootSupersystem) -> Check:
    ok = zero(S.dim) in S
    return Check("zero", ok, None if ok else (zero(S.dim),), evaluated=1)


def check_locally_finite(S: RootSupersystem) -> Check:
    return Check("locally-finite", True, note=FINITE_NOTE)


def check_symmetric(S: RootSupersystem) -> Check:
    iv = S._iv
    for i, r in enumerate(iv.roots):
        if tuple(-x for x in r) not in iv.index:
            return Check("symmetric", False, (_root(S, i),), evaluated=i + 1)
    return Check("symmetric", True, evaluated=len(iv.roots))


def check_span(S: RootSupersystem) -> Check:
    roots = list(S.roots)
    if rank(roots) == S.dim:
        return Check("spanning", True, evaluated=1)
    for k in range(S.dim):
        e = unit(S.dim, k)
        if rank(roots + [e]) > rank(roots):
            return Check("spanning", False, (e,), evaluated=1)
    raise AssertionError("unreachable")


def check_nondegenerate(S: RootSupersystem) -> Check:
    rad = radical(S.form, [unit(S.dim, k) for k in range(S.dim)])
    return Check("nondegenerate", not rad, (rad[0],) if rad else None, evaluated=1)


def _cartan_parts(S, ai, bi):
    """Scaled numerator and denominator of ``cartan(beta, alpha)``."""
    iv = S._iv
    return 2 * iv.pairing[bi][ai], iv.norms[ai]


def check_integrality(S: RootSupersystem) -> Check:
    count = 0
    for ai in S.real_indices:
        for bi in range(len(S.roots)):
            count += 1
            m, n = _cartan_parts(S, ai, bi)
            if m % n:
                return Check("integrality", False, (_root(S, ai), _root(S, bi)), evaluated=count)
    return Check("integrality", True, evaluated=count)


def _reflected_index(S, ai, bi) -> Optional[int]:
    iv = S._iv
    m, n = _cartan_parts(S, ai, bi)
    if m % n == 0:
        return iv.index.get(_shift(iv.roots[bi], iv.roots[ai], -(m // n)))
    c = Q(m, n)
    a, b = S.roots[ai], S.roots[bi]
    return S.index_of(tuple(x - c * y for x, y in zip(b, a)))


def check_reflection(S: RootSupersystem) -> Check:
    count = 0
    for ai in S.real_indices:
        for bi in range(len(S.roots)):
            count += 1
            if _reflected_index(S, ai, bi) is None:
                return Check("reflection-closure", False, (_root(S, ai), _root(S, bi)),
                             evaluated=count)
    return Check("reflection-closure", True, evaluated=count)


def _null_pair_ok(S, gi, bi) -> bool:
    iv = S._iv
    g, b = iv.roots[gi], iv.roots[bi]
    return _shift(b, g, -1) in iv.index or _shift(b, g, 1) in iv.index


def check_nonsingular(S: RootSupersystem) -> Check:
    iv = S._iv
    count = 0
    for gi in S.null_indices:
        row = iv.pairing[gi]
        for bi in range(len(S.roots)):
            if row[bi] == 0:
                continue
            count += 1
            if not _null_pair_ok(S, gi, bi):
                return Check("nonsingular-closure", False, (_root(S, gi), _root(S, bi)),
                             evaluated=count)
    return Check("nonsingular-closure", True, evaluated=count)


def _real_string_ok(S, ai, bi) -> bool:
    """Real-root string of ``beta`` along ``alpha`` is unbroken with ``p - q = cartan``."""
    iv = S._iv
    m, n = _cartan_parts(S, ai, bi)
    if m % n:
        return False
    a, b = iv.roots[ai], iv.roots[bi]
    hits = set()
    for k in range(-STRING_SCAN_LIMIT, STRING_SCAN_LIMIT + 1):
        j = iv.index.get(_shift(b, a, k))
        if j is not None and (iv.norms[j] != 0 or not any(iv.roots[j])):
            hits.add(k)
    if 0 not in hits:
        return False
    q = 0
    while q + 1 in hits:
        q += 1
    p = 0
    while -(p + 1) in hits:
        p += 1
    if p >= STRING_SCAN_LIMIT or q >= STRING_SCAN_LIMIT:
        return False
    return len(hits) == p + q + 1 and p - q == m // n


def _real_or_zero(S) -> List[int]:
    iv = S._iv
    return [i for i, (r, n) in enumerate(zip(iv.roots, iv.norms)) if n != 0 or not any(r)]


def check_root_strings(S: RootSupersystem) -> Check:
    count = 0
    targets = _real_or_zero(S)
    for ai in S.real_indices:
        for bi in targets:
            count += 1
            if not _real_string_ok(S, ai, bi):
                return Check("root-string", False, (_root(S, ai), _root(S, bi)), evaluated=count)
    return Check("root-string", True, evaluated=count)


def verify_T(S: RootSupersystem) -> AxiomReport:
    """Axioms of the class built on local finiteness and the null-root condition."""
    return AxiomReport((
        check_zero(S),
        check_locally_finite(S),
        check_symmetric(S),
        check_span(S),
        check_integrality(S),
        check_reflection(S),
        check_nonsingular(S),
        check_nondegenerate(S),
    ))


def verify_Tprime(S: RootSupersystem) -> AxiomReport:
    """As :func:`verify_T` with the real root-string property in place of local finiteness."""
    return AxiomReport((
        check_zero(S),
        check_symmetric(S),
        check_span(S),
        check_integrality(S),
        check_reflection(S),
        check_root_strings(S),
        check_nonsingular(S),
        check_nondegenerate(S),
    ))


def _integral_rows(roots: Iterable[Sequence]) -> List[Tuple[int, ...]]:
    out = []
    for r in roots:
        row = []
        for x in vector(r):
            if x.denominator != 1:
                raise ValueError(f"root {tuple(r)} has non-integral coordinates")
            row.append(x.numerator)
        out.append(tuple(row))
    return out


def check_lattice_span(S: RootSupersystem) -> Check:
    rows = _integral_rows(S.roots)
    full = hermite_normal_form([unit(S.dim, k) for k in range(S.dim)])
    hnf = hermite_normal_form(rows)
    if hnf == full:
        return Check("lattice-span", True, evaluated=1)
    for k in range(S.dim):
        e = tuple(int(x) for x in unit(S.dim, k))
        if hermite_normal_form(rows + [e]) != hnf:
            return Check("lattice-span", False, (vector(e),), evaluated=1)
    raise AssertionError("unreachable")


def check_lattice_radical(S: RootSupersystem) -> Check:
    rad = radical(S.form, [unit(S.dim, k) for k in range(S.dim)])
    if not rad:
        return Check("lattice-radical", True, evaluated=1)
    v = rad[0]
    d = lcm(*(x.denominator for x in v))
    return Check("lattice-radical", False, (tuple(x * d for x in v),), evaluated=1)


def lattice_system(dim: int, gram, roots) -> RootSupersystem:
    form = gram if isinstance(gram, GramForm) else GramForm(tuple(tuple(r) for r in gram))
    if form.dim != dim:
        raise ValueError("Gram matrix size does not match dim")
    rows = _integral_rows(roots)
    return RootSupersystem(form, tuple(rows))


def verify_lattice(dim: int, gram, roots) -> AxiomReport:
    """Axioms for a root set given in integer coordinates of a lattice basis.

    The lattice is the coordinate lattice ``Z^dim``; the form may be rational.
    """
    S = lattice_system(dim, gram, roots)
    return AxiomReport((
        check_zero(S),
        check_lattice_span(S),
        check_symmetric(S),
        check_integrality(S),
        check_reflection(S),
        check_root_strings(S),
        check_nonsingular(S),
        check_lattice_radical(S),
    ))


def check_invariance(S: RootSupersystem) -> AxiomReport:
    """Confirm ``(r u, r v) = (u, v)`` for every generating reflection and root pair."""
    gens = reflection_generators(S)
    iv = S._iv
    n = len(S.roots)
    count = 0
    for g in gens:
        gi = S.index_of(g)
        images: List[Optional[int]] = [_reflected_index(S, gi, bi) for bi in range(n)]
        if all(j is not None for j in images):
            P = iv.pairing
            for u in range(n):
                Pu, Pimg = P[u], P[images[u]]
                for v in range(n):
                    count += 1
                    if Pimg[images[v]] != Pu[v]:
                        return AxiomReport((Check("invariance", False,
                                                  (g, S.roots[u], S.roots[v]), evaluated=count),))
            continue
        refl = [reflect(S, r, g) for r in S.roots]
        for u in range(n):
            for v in range(n):
                count += 1
                if S.pair(refl[u], refl[v]) != S.pair(S.roots[u], S.roots[v]):
                    return AxiomReport((Check("invariance", False,
                                              (g, S.roots[u], S.roots[v]), evaluated=count),))
    return AxiomReport((Check("invariance", True, note=f"{count} pairs checked",
                              evaluated=count),))


def check_sub_supersystem(S: RootSupersystem, subset: Iterable[Sequence]) -> AxiomReport:
    """Closure conditions for a subset of ``S`` to be a sub-supersystem."""
    sub = sorted({vector(v) for v in subset})
    outside = [v for v in sub if v not in S]
    checks = [Check("subset", not outside, (outside[0],) if outside else None,
                    evaluated=len(sub))]
    T = S.with_roots(sub)
    checks.append(check_zero(T))
    count = 0
    bad = None
    for ai in T.real_indices:
        for bi in range(len(T.roots)):
            count += 1
            if _reflected_index(T, ai, bi) is None:
                bad = (T.roots[ai], T.roots[bi])
                break
        if bad:
            break
    checks.append(Check("reflection-closure", bad is None, bad, evaluated=count))
    nonsing = check_nonsingular(T)
    checks.append(nonsing)
    basis = [T.roots[i] for i in independent_subset(T.roots)]
    rad = radical(S.form, basis)
    checks.append(Check("nondegenerate", not rad, (rad[0],) if rad else None, evaluated=1))
    return AxiomReport(tuple(checks))


def refails(S: RootSupersystem, check: Check) -> bool:
    """Re-evaluate a failing check on its witness alone; True if it still fails."""
    w = check.witness
    if w is None:
        return False
    cid = check.id
    if cid == "zero":
        return w[0] not in S
    if cid == "symmetric":
        return w[0] in S and tuple(-x for x in w[0]) not in S
    if cid == "spanning":
        return rank(list(S.roots) + [w[0]]) > rank(list(S.roots))
    if cid in ("nondegenerate", "lattice-radical"):
        v = w[0]
        return any(v) and all(S.pair(v, unit(S.dim, k)) == 0 for k in range(S.dim))
    if cid == "lattice-span":
        rows = _integral_rows(S.roots)
        e = _integral_rows([w[0]])[0]
        return hermite_normal_form(rows + [e]) != hermite_normal_form(rows)
    ai = S.index_of(w[0])
    bi = S.index_of(w[1]) if len(w) > 1 else None
    if cid == "integrality":
        m, n = _cartan_parts(S, ai, bi)
        return m % n != 0
    if cid == "reflection-closure":
        return _reflected_index(S, ai, bi) is None
    if cid == "nonsingular-closure":
        return S.pair(w[0], w[1]) != 0 and not _null_pair_ok(S, ai, bi)
    if cid == "root-string":
        return not _real_string_ok(S, ai, bi)
    if cid == "invariance":
        g, u, v = w
        return S.pair(reflect(S, u, g), reflect(S, v, g)) != S.pair(u, v)
    raise ValueError(f"unknown check id {cid!r}")


def report_dict(report: AxiomReport) -> Dict:
    checks = []
    for c in report.checks:
        entry = {"id": c.id, "pass": c.passed,
                 "witness": None if c.witness is None
                 else [[format_rational(x) for x in v] for v in c.witness]}
        if c.note:
            entry["note"] = c.note
        checks.append(entry)
    return {"verdict": "pass" if report.verdict else "fail", "checks": checks}
