"""Decomposition into irreducible pieces, type recognition and isomorphisms.

Recognition of a super system works on invariants only: the types of the
irreducible real components, their relative root lengths, and how a null root
projects onto each component. A candidate label is accepted only after the
catalog system it names shows the same invariants, so a label is never
inferred from coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction as Q
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .axioms import AxiomReport, check_sub_supersystem, verify_T
from .catalog import (
    REAL_SUPER,
    TypeLabel,
    _PARAM_COUNT,
    _real_layout,
    construct,
)
from .exactlin import (
    Vector,
    independent_subset,
    inverse,
    matmul,
    matvec,
    rank,
    row_reduce,
    scale,
    solve_coordinates,
    transpose,
    vector,
    zero,
)
from .system import Frame, Projector, RootSupersystem
from .weyl import closure, reflection_generators


class UnrecognizedSystem(ValueError):
    """No classification row matches; ``profile`` holds the invariants that were computed."""

    def __init__(self, message: str, profile: Dict):
        super().__init__(f"{message}: {profile}")
        self.profile = profile


# ---------------------------------------------------------- components


@dataclass(frozen=True)
class Decomposition:
    """Irreducible pieces, each re-based onto its own span.

    ``members`` keeps the roots of each piece (with 0) in the parent's
    coordinates; ``components`` are the same sets as standalone systems.
    """

    components: Tuple[RootSupersystem, ...]
    members: Tuple[Tuple[Vector, ...], ...]
    nondegenerate: Tuple[bool, ...]

    def __len__(self) -> int:
        return len(self.components)


def _classes(S: RootSupersystem, indices: Sequence[int]) -> List[List[int]]:
    parent = {i: i for i in indices}

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    P = S._iv.pairing
    idx = list(indices)
    for a, i in enumerate(idx):
        row = P[i]
        for j in idx[a + 1:]:
            if row[j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    groups: Dict[int, List[int]] = {}
    for i in idx:
        groups.setdefault(find(i), []).append(i)
    # Roots are sorted, so ordering classes by smallest index orders them by least root.
    return sorted(groups.values(), key=min)


def subsystem(S: RootSupersystem, roots: Sequence[Sequence]) -> RootSupersystem:
    """``roots`` as a system on their own span, in a reduced echelon basis."""
    roots = [vector(r) for r in roots]
    rows, pivots = row_reduce(roots)
    basis = [tuple(r) for r in rows]
    coords = [tuple(r[p] for p in pivots) for r in roots]
    form = S.form.restrict(basis) if basis else None
    if form is None:
        raise ValueError("subsystem needs a nonzero root")
    return RootSupersystem(form, tuple(coords + [zero(len(basis))]),
                           tuple(f"b{k + 1}" for k in range(len(basis))), None,
                           Frame(S.basis_labels, tuple(basis)))


def _decompose(S: RootSupersystem, indices: Sequence[int]) -> Decomposition:
    comps, members, nondeg = [], [], []
    for cls in _classes(S, indices):
        roots = [S.roots[i] for i in cls]
        T = subsystem(S, roots)
        comps.append(T)
        members.append(tuple(sorted(roots + [zero(S.dim)])))
        nondeg.append(rank(list(T.form.entries)) == T.dim)
    return Decomposition(tuple(comps), tuple(members), tuple(nondeg))


def connected_components(S: RootSupersystem) -> Decomposition:
    """Classes of nonzero roots under the closure of ``(a, b) != 0``."""
    return _decompose(S, [i for i, r in enumerate(S.roots) if any(r)])


def real_components(S: RootSupersystem) -> Decomposition:
    """Irreducible components of the real roots alone."""
    return _decompose(S, S.real_indices)


def is_irreducible(S: RootSupersystem) -> bool:
    return len(connected_components(S)) == 1


# --------------------------------------------------------- recognition


def _canon(kind: str, n: int = 0) -> Tuple[str, int]:
    """Scale-free name of a classical type, folding the low-rank coincidences."""
    if kind == "G2":
        return ("G2", 2)
    if kind == "F4":
        return ("F4", 4)
    if (kind, n) == ("C", 2):
        return ("B", 2)
    if (kind, n) in (("B", 1), ("C", 1)):
        return ("A", 1)
    if (kind, n) == ("D", 3):
        return ("A", 3)
    return (kind, n)


def _length_data(S: RootSupersystem):
    roots = S.real_roots
    norms = [S.norm(a) for a in roots]
    shortest = min(norms, key=abs)
    return roots, norms, shortest


def _real_type(S: RootSupersystem) -> Tuple[str, int]:
    roots, norms, shortest = _length_data(S)
    n, r = len(roots), rank(list(roots))
    ratios = sorted({x / shortest for x in norms})
    profile = {"roots": n, "rank": r, "length_ratios": [str(x) for x in ratios]}
    if any(scale(2, a) in S for a in roots):
        if n == 2 * r * (r + 1):
            return ("BC", r)
    elif ratios == [1]:
        if n == r * (r + 1):
            return ("A", r)
        if r >= 4 and n == 2 * r * (r - 1):
            return ("D", r)
    elif ratios == [1, 2]:
        n_short = sum(1 for x in norms if x == shortest)
        if r == 4 and n == 48 and n_short == 24:
            return ("F4", 4)
        if n == 2 * r * r and n_short == 2 * r:
            return ("B", r)
        if n == 2 * r * r and n - n_short == 2 * r:
            return ("C", r)
    elif ratios == [1, 3] and r == 2 and n == 12:
        return ("G2", 2)
    raise UnrecognizedSystem("not a recognized irreducible root system", profile)


def _label_of(kind: Tuple[str, int]) -> TypeLabel:
    f, n = kind
    return TypeLabel(f) if f in ("G2", "F4") else TypeLabel(f, (n,))


def recognize_real_type(S: RootSupersystem) -> TypeLabel:
    """Type of an irreducible ordinary root system from counting data alone.

    Rank-2 two-length systems come out as B_2, D_3 as A_3 and rank-1 reduced
    systems as A_1; use :func:`classify` for the presentation-aware name.
    """
    if S.null_indices:
        raise ValueError("input has nonsingular roots")
    if not verify_T(S).verdict:
        raise ValueError("input is not a root system")
    if not is_irreducible(S):
        raise ValueError("input is reducible")
    return _label_of(_real_type(S))


def _presentation_name(S: RootSupersystem, kind: Tuple[str, int]) -> Tuple[str, int]:
    """Pick between isomorphic names using the orthonormal-coordinate normalization.

    B_1 and A_1, like C_2 and B_2, are the same root system. In orthonormal
    coordinates B_1 and B_2 have shortest squared length 1 while A_1 and C_2
    have 2, so the form's scale tells which presentation was intended.
    """
    shortest = _length_data(S)[2]
    if kind == ("A", 1) and shortest == 1:
        return ("B", 1)
    if kind == ("B", 2) and shortest == 2:
        return ("C", 2)
    return kind


# --------------------------------------------------------- invariants


@dataclass
class _Profile:
    imaginary: bool
    kinds: List[Tuple[str, int]]
    shortest: List[Q]
    members: List[Tuple[Vector, ...]]
    null_count: int
    orbit_sizes: List[int] = field(default_factory=list)
    weight_ratios: List[Q] = field(default_factory=list)
    weight_flags: List[Tuple[bool, bool]] = field(default_factory=list)
    symmetric_orbit: bool = False

    def as_dict(self) -> Dict:
        return {
            "imaginary": self.imaginary,
            "components": [f"{k}{n}" for k, n in self.kinds],
            "shortest_norms": [str(x) for x in self.shortest],
            "nonsingular": self.null_count,
            "projection_orbit_sizes": self.orbit_sizes,
            "projection_length_ratios": [str(x) for x in self.weight_ratios],
        }


def _profile(S: RootSupersystem) -> _Profile:
    dec = real_components(S)
    kinds = [_real_type(c) for c in dec.components]
    shortest = [_length_data(c)[2] for c in dec.components]
    imaginary = rank(list(S.real_roots)) < S.dim
    prof = _Profile(imaginary, kinds, shortest, list(dec.members), len(S.null_indices))
    if imaginary or not S.null_indices:
        return prof
    delta = S.roots[S.null_indices[0]]
    proj = Projector(S.dim, [list(m) for m in dec.members])
    for i, m in enumerate(dec.members):
        x = proj.project(delta, i)
        gens = reflection_generators(S, [r for r in m if any(r)])
        prof.orbit_sizes.append(len(closure(S, x, gens)))
        prof.weight_ratios.append(S.norm(x) / shortest[i])
        memberset = set(m)
        prof.weight_flags.append((x in memberset, scale(2, x) in memberset))
    whole = closure(S, delta, reflection_generators(S))
    prof.symmetric_orbit = tuple(-x for x in delta) in set(whole.elements)
    return prof


@lru_cache(maxsize=None)
def _catalog_profile(label: TypeLabel) -> _Profile:
    return _profile(construct(label))


def _matches(a: _Profile, b: _Profile, perm: Sequence[int]) -> bool:
    """Does ``a``'s component ``perm[k]`` correspond to ``b``'s component ``k``?"""
    if a.imaginary != b.imaginary or a.null_count != b.null_count:
        return False
    if len(a.kinds) != len(b.kinds) or a.symmetric_orbit != b.symmetric_orbit:
        return False
    for k, i in enumerate(perm):
        if a.kinds[i] != b.kinds[k]:
            return False
        if a.orbit_sizes and (a.orbit_sizes[i], a.weight_ratios[i], a.weight_flags[i]) != \
                (b.orbit_sizes[k], b.weight_ratios[k], b.weight_flags[k]):
            return False
    for k, i in enumerate(perm):
        for l, j in enumerate(perm):
            if a.shortest[i] / a.shortest[j] != b.shortest[k] / b.shortest[l]:
                return False
    return True


def _real_candidates(kinds: List[Tuple[str, int]], shortest: List[Q]):
    """Labels from the real-type table whose component types fit some ordering of ``kinds``."""
    n = len(kinds)
    for perm in permutations(range(n)):
        seq = [kinds[i] for i in perm]
        ranks = [r for _, r in seq]
        for fam in REAL_SUPER:
            count = _PARAM_COUNT[fam]
            if count == 0:
                options = [()]
            elif count == 1:
                options = [(r,) for r in dict.fromkeys(ranks)]
            else:
                options = list(dict.fromkeys([(ranks[0], ranks[-1]), (ranks[-1], ranks[0])]))
            for params in options:
                lam = None
                if fam == "D_21L":
                    if n != 3:
                        continue
                    lam = shortest[perm[1]] / shortest[perm[0]]
                try:
                    label = TypeLabel(fam, params, lam)
                    layout = _real_layout(label)[0]
                except ValueError:
                    continue
                if [_canon(k, r) for k, r in layout] == seq:
                    yield label, perm


def _imaginary_candidate(kinds: List[Tuple[str, int]]) -> Optional[TypeLabel]:
    if len(kinds) == 1:
        kind, r = kinds[0]
        if kind == "A":
            return TypeLabel("A0T", (r + 1,))
        if kind == "C" or (kind, r) == ("B", 2):
            return TypeLabel("C0T", (r,))
        return None
    if len(kinds) == 2 and all(k == "A" for k, _ in kinds) and kinds[0][1] != kinds[1][1]:
        return TypeLabel("ATP", (kinds[0][1] + 1, kinds[1][1] + 1))
    return None


def classify(S: RootSupersystem, validate: bool = True) -> TypeLabel:
    """Name an irreducible finite root supersystem by a catalog label.

    The system's own ``label`` field is never consulted.
    """
    if validate:
        if not verify_T(S).verdict:
            raise ValueError("input fails the root supersystem axioms")
        if not is_irreducible(S):
            raise ValueError("input is reducible")
    if not S.null_indices:
        kind = _real_type(S)
        return _label_of(_presentation_name(S, kind))
    prof = _profile(S)
    if prof.imaginary:
        if len(prof.kinds) > 2:
            raise UnrecognizedSystem("imaginary type with more than two components",
                                     prof.as_dict())
        label = _imaginary_candidate(prof.kinds)
        if label is not None:
            cand = _catalog_profile(label)
            if _matches(prof, cand, list(range(len(prof.kinds)))):
                return label
        raise UnrecognizedSystem("no imaginary-type row matches", prof.as_dict())
    if len(prof.kinds) > 3:
        raise UnrecognizedSystem("real type with more than three components", prof.as_dict())
    for label, perm in _real_candidates(prof.kinds, prof.shortest):
        if _matches(prof, _catalog_profile(label), perm):
            return label
    raise UnrecognizedSystem("no real-type row matches", prof.as_dict())


def lambda_orbit(lam) -> Tuple[Q, ...]:
    """Values of λ reachable by reordering the three A_1 pieces of D(2,1,λ)."""
    lam = Q(lam)
    values = {lam, 1 / lam, -1 - lam, -1 / (1 + lam), -lam / (1 + lam), -(1 + lam) / lam}
    return tuple(sorted(values))


# --------------------------------------------------------- isomorphism


@dataclass(frozen=True)
class IsoWitness:
    """Linear map ``v -> matrix @ v`` with ``(u, v)_1 = scalar_r * (phi u, phi v)_2``."""

    matrix: Tuple[Vector, ...]
    scalar_r: Q


def check_isomorphism(S1: RootSupersystem, S2: RootSupersystem, witness: IsoWitness) -> bool:
    if S1.dim != S2.dim:
        raise ValueError("ambient dimensions differ")
    M = tuple(vector(r) for r in witness.matrix)
    r = Q(witness.scalar_r)
    if r == 0:
        raise ValueError("scalar r must be nonzero")
    if len(M) != S1.dim or rank(list(M)) != S1.dim:
        raise ValueError("witness matrix is singular")
    if len(S1.roots) != len(S2.roots):
        return False
    images = []
    for u in S1.roots:
        j = S2.index_of(matvec(M, u))
        if j is None:
            return False
        images.append(j)
    if len(set(images)) != len(images):
        return False
    iv1, iv2 = S1._iv, S2._iv
    k1 = Q(iv1.scale ** 2 * iv1.form_scale)
    k2 = Q(iv2.scale ** 2 * iv2.form_scale)
    factor = r * k1 / k2
    P1, P2 = iv1.pairing, iv2.pairing
    for i, a in enumerate(images):
        for j, b in enumerate(images):
            if P1[i][j] != factor * P2[a][b]:
                return False
    return True


def find_isomorphism(S1: RootSupersystem, S2: RootSupersystem,
                     dim_limit: int = 4) -> Optional[IsoWitness]:
    """Exhaustive search for an isomorphism, mapping a root basis of ``S1`` into ``S2``."""
    if max(S1.dim, S2.dim) > dim_limit:
        raise ValueError(f"dimension above the search limit {dim_limit}")
    if S1.dim != S2.dim or len(S1.roots) != len(S2.roots):
        return None
    if len(S1.real_indices) != len(S2.real_indices):
        return None
    basis = [S1.roots[i] for i in independent_subset(S1.roots)]
    d = len(basis)
    gram1 = [[S1.pair(a, b) for b in basis] for a in basis]
    iv2 = S2._iv
    k2 = Q(iv2.scale ** 2 * iv2.form_scale)
    nonzero2 = [i for i, v in enumerate(S2.roots) if any(v)]
    Binv = inverse(transpose(basis))

    def pair2(i, j):
        return iv2.pairing[i][j] / k2

    def search(chosen: List[int], r: Optional[Q]):
        k = len(chosen)
        if k == d:
            cols = [S2.roots[i] for i in chosen]
            M = matmul(transpose(cols), Binv)
            w = IsoWitness(M, r if r is not None else Q(1))
            if r is not None and check_isomorphism(S1, S2, w):
                return w
            return None
        for c in nonzero2:
            if c in chosen:
                continue
            rr = r
            ok = True
            for l in range(k + 1):
                ci = chosen[l] if l < k else c
                lhs, rhs = gram1[k][l], pair2(c, ci)
                if rr is None:
                    if (lhs == 0) != (rhs == 0):
                        ok = False
                        break
                    if lhs != 0:
                        rr = lhs / rhs
                elif lhs != rr * rhs:
                    ok = False
                    break
            if ok:
                found = search(chosen + [c], rr)
                if found is not None:
                    return found
        return None

    return search([], None)


# ------------------------------------------------------------- towers


@dataclass(frozen=True)
class TowerReport:
    labels: Tuple[TypeLabel, ...]
    classified: Tuple[Optional[TypeLabel], ...]
    irreducible: Tuple[bool, ...]
    isometric: Tuple[bool, ...]
    inclusions: Tuple[AxiomReport, ...]

    @property
    def passed(self) -> bool:
        same = all(c is not None and c.family == self.labels[0].family for c in self.classified)
        return (same and all(self.irreducible) and all(self.isometric)
                and all(r.verdict for r in self.inclusions))


def embedding(small: RootSupersystem, big: RootSupersystem) -> Tuple[Vector, ...]:
    """Matrix carrying ``small``'s coordinates into ``big``'s through their shared frame names."""
    if small.frame is None or big.frame is None:
        raise ValueError("both systems need a coordinate frame")
    pos = {n: k for k, n in enumerate(big.frame.names)}
    cols = []
    for k in range(small.dim):
        lifted = small.frame.lift(tuple(Q(1) if j == k else Q(0) for j in range(small.dim)))
        x = [Q(0)] * len(pos)
        for name, c in lifted.items():
            if name not in pos:
                raise ValueError(f"coordinate {name} missing from the larger system")
            x[pos[name]] = c
        coords = solve_coordinates(big.frame.vectors, x)
        if coords is None:
            raise ValueError("smaller system does not sit inside the larger one")
        cols.append(coords)
    return transpose(cols)


def _monotone(seq: Sequence[Tuple[int, ...]]) -> bool:
    return all(all(a <= b for a, b in zip(p, q)) and p != q for p, q in zip(seq, seq[1:]))


def truncation_tower(family: str, params: Sequence, t0: int = 1) -> TowerReport:
    """Build nested catalog systems and check each sits in the next as a sub-supersystem."""
    seq = [tuple(p) if isinstance(p, (tuple, list)) else (int(p),) for p in params]
    if len(seq) < 2 or not _monotone(seq):
        raise ValueError("parameter sequence must be increasing")
    labels = tuple(TypeLabel(family, p) for p in seq)
    systems = [construct(L, t0) if L.family in ("A0T", "C0T") else construct(L) for L in labels]
    classified, irreducible = [], []
    for S in systems:
        irreducible.append(is_irreducible(S))
        try:
            classified.append(classify(S.relabel(None)))
        except ValueError:
            classified.append(None)
    isometric, inclusions = [], []
    for small, big in zip(systems, systems[1:]):
        E = embedding(small, big)
        basis = [tuple(Q(1) if j == k else Q(0) for j in range(small.dim))
                 for k in range(small.dim)]
        imgs = [matvec(E, b) for b in basis]
        isometric.append(all(small.pair(a, b) == big.pair(x, y)
                             for a, x in zip(basis, imgs) for b, y in zip(basis, imgs)))
        inclusions.append(check_sub_supersystem(big, [matvec(E, r) for r in small.roots]))
    return TowerReport(labels, tuple(classified), tuple(irreducible), tuple(isometric),
                       tuple(inclusions))
