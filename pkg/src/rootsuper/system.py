"""The root supersystem data model and projections onto real components."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .exactlin import (
    GramForm,
    Vector,
    denominator_lcm,
    independent_subset,
    inverse,
    matvec,
    rank,
    solve_coordinates,
    span_basis,
    transpose,
    vector,
    zero,
)


@dataclass(frozen=True)
class Frame:
    """Expresses each ambient basis vector in named auxiliary coordinates.

    Catalog constructors build systems inside a larger coordinate space
    (``e1``, ``e2``, ``a*`` ...) and then re-base. Keeping the frame lets two
    systems built from overlapping index sets be compared in common coordinates.
    """

    names: Tuple[str, ...]
    vectors: Tuple[Vector, ...]

    def lift(self, v: Sequence) -> Dict[str, Q]:
        out: Dict[str, Q] = {}
        for c, row in zip(v, self.vectors):
            if c:
                for name, x in zip(self.names, row):
                    if x:
                        out[name] = out.get(name, Q(0)) + c * x
        return {k: x for k, x in out.items() if x}

    def locate(self, named: Dict[str, object]) -> Vector:
        """Ambient coordinates of ``sum named[k] * k``; raises if it lies outside the frame."""
        unknown = set(named) - set(self.names)
        if unknown:
            raise KeyError(f"unknown coordinate names {sorted(unknown)}")
        target = tuple(Q(named.get(n, 0)) for n in self.names)
        coords = solve_coordinates(self.vectors, target)
        if coords is None:
            raise ValueError(f"{named} is not in the span of the frame")
        return coords


class _IntView:
    """Roots and form rescaled to integers for fast membership and pairing."""

    def __init__(self, form: GramForm, roots: Sequence[Vector]):
        self.scale = denominator_lcm(x for r in roots for x in r)
        self.form_scale = denominator_lcm(x for row in form.entries for x in row)
        g = self.form_scale
        self.gram = [[int(x * g) for x in row] for row in form.entries]
        self.roots = [tuple(int(x * self.scale) for x in r) for r in roots]
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.cov = [tuple(sum(gij * x for gij, x in zip(row, r)) for row in self.gram)
                    for r in self.roots]
        self.norms = [sum(a * b for a, b in zip(r, c)) for r, c in zip(self.roots, self.cov)]

    def to_int(self, v: Sequence) -> Optional[Tuple[int, ...]]:
        out = []
        for x in v:
            y = Q(x) * self.scale
            if y.denominator != 1:
                return None
            out.append(y.numerator)
        return tuple(out)

    @cached_property
    def pairing(self) -> List[List[int]]:
        """``pairing[i][j]`` is the scaled value of ``(root_i, root_j)``."""
        return [[sum(a * b for a, b in zip(r, c)) for c in self.cov] for r in self.roots]


@dataclass(frozen=True)
class RootSupersystem:
    """A finite root set together with an ambient symmetric bilinear form.

    Roots are deduplicated and sorted lexicographically. The constructor does
    not insist on ``0`` in the set or on ``R = -R``; those are axioms that the
    verifiers report on, so broken inputs must stay representable.
    """

    form: GramForm
    roots: Tuple[Vector, ...]
    basis_labels: Tuple[str, ...] = ()
    label: Optional[object] = None
    frame: Optional[Frame] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.form, GramForm):
            object.__setattr__(self, "form", GramForm(self.form))
        dim = self.form.dim
        roots = sorted({vector(r) for r in self.roots})
        for r in roots:
            if len(r) != dim:
                raise ValueError(f"root {r} has length {len(r)}, expected {dim}")
        object.__setattr__(self, "roots", tuple(roots))
        labels = tuple(self.basis_labels) or tuple(f"e{i + 1}" for i in range(dim))
        if len(labels) != dim:
            raise ValueError("basis_labels must have one entry per dimension")
        object.__setattr__(self, "basis_labels", labels)

    @property
    def dim(self) -> int:
        return self.form.dim

    @cached_property
    def _iv(self) -> _IntView:
        return _IntView(self.form, self.roots)

    def index_of(self, v: Sequence) -> Optional[int]:
        key = self._iv.to_int(v)
        return None if key is None else self._iv.index.get(key)

    def __contains__(self, v) -> bool:
        return self.index_of(v) is not None

    def __len__(self) -> int:
        return len(self.roots)

    @cached_property
    def _star_projectors(self) -> Dict[Vector, "Projector"]:
        return {}

    @cached_property
    def _position(self) -> Dict[Vector, int]:
        return {r: i for i, r in enumerate(self.roots)}

    def pair(self, u: Sequence, v: Sequence) -> Q:
        i = self._position.get(tuple(u))
        j = self._position.get(tuple(v))
        if i is None or j is None:
            return self.form(u, v)
        iv = self._iv
        return Q(iv.pairing[i][j], iv.scale * iv.scale * iv.form_scale)

    def norm(self, v: Sequence) -> Q:
        return self.pair(v, v)

    @cached_property
    def real_indices(self) -> Tuple[int, ...]:
        """Indices of the nonzero real roots."""
        return tuple(i for i, n in enumerate(self._iv.norms) if n != 0)

    @cached_property
    def null_indices(self) -> Tuple[int, ...]:
        """Indices of the nonzero nonsingular roots."""
        return tuple(i for i, (r, n) in enumerate(zip(self._iv.roots, self._iv.norms))
                     if n == 0 and any(r))

    @property
    def real_roots(self) -> Tuple[Vector, ...]:
        return tuple(self.roots[i] for i in self.real_indices)

    @property
    def null_roots(self) -> Tuple[Vector, ...]:
        return tuple(self.roots[i] for i in self.null_indices)

    def with_roots(self, roots, label=None) -> "RootSupersystem":
        return RootSupersystem(self.form, tuple(roots), self.basis_labels, label, self.frame)

    def relabel(self, label) -> "RootSupersystem":
        return RootSupersystem(self.form, self.roots, self.basis_labels, label, self.frame)


@dataclass(frozen=True)
class RootPartition:
    real: Tuple[Vector, ...]
    nonsingular: Tuple[Vector, ...]


def partition_roots(S: RootSupersystem) -> RootPartition:
    """Split roots by whether ``(a, a) = 0``; the zero vector lands in both parts."""
    origin = zero(S.dim)
    real = [origin] + list(S.real_roots)
    null = [origin] + list(S.null_roots)
    return RootPartition(tuple(sorted(real)), tuple(sorted(null)))


def real_span_basis(S: RootSupersystem) -> List[Vector]:
    return span_basis(S.real_roots)


def is_real_type(S: RootSupersystem) -> bool:
    return rank(list(S.real_roots)) == S.dim


class Projector:
    """Coordinates relative to a direct-sum decomposition of the ambient space.

    ``blocks`` lists, per summand, vectors spanning it. A leading ``star``
    vector, when given, is its own summand and does not count as a component.
    """

    def __init__(self, dim: int, blocks: Sequence[Sequence[Sequence]],
                 star: Optional[Sequence] = None):
        self.dim = dim
        self.star = vector(star) if star is not None else None
        self.blocks: List[List[Vector]] = []
        basis: List[Vector] = [self.star] if self.star is not None else []
        for block in blocks:
            vecs = [vector(v) for v in block]
            chosen = [vecs[i] for i in independent_subset(vecs)]
            self.blocks.append(chosen)
            basis.extend(chosen)
        if len(basis) != dim or rank(basis) != dim:
            raise ValueError("decomposition does not span the ambient space")
        self.basis = basis
        # Row vector v maps to coordinates v * B^{-1} where B has the basis as rows.
        self._inv_t = transpose(inverse(basis))
        offsets = [1 if self.star is not None else 0]
        for b in self.blocks:
            offsets.append(offsets[-1] + len(b))
        self._offsets = offsets

    def coordinates(self, v: Sequence) -> Tuple[Q, ...]:
        return matvec(self._inv_t, vector(v))

    def star_coefficient(self, v: Sequence) -> Q:
        if self.star is None:
            raise ValueError("no star summand in this decomposition")
        return self.coordinates(v)[0]

    def project(self, v: Sequence, i: int) -> Vector:
        c = self.coordinates(v)
        lo, hi = self._offsets[i], self._offsets[i + 1]
        out = [Q(0)] * self.dim
        for coef, b in zip(c[lo:hi], self.blocks[i]):
            if coef:
                for k, x in enumerate(b):
                    out[k] += coef * x
        return tuple(out)

    def support(self, v: Sequence) -> FrozenSet[int]:
        c = self.coordinates(v)
        return frozenset(i for i in range(len(self.blocks))
                         if any(c[self._offsets[i]:self._offsets[i + 1]]))


def _projector(S: RootSupersystem, components, alpha_star=None) -> Projector:
    blocks = [list(c) for c in components]
    total = rank([v for b in blocks for v in b]) if blocks else 0
    if total == S.dim:
        return Projector(S.dim, blocks)
    if alpha_star is None:
        null = S.null_roots
        if not null:
            raise ValueError("decomposition does not span the ambient space")
        alpha_star = null[0]
    return Projector(S.dim, blocks, star=alpha_star)


def project(S: RootSupersystem, components, alpha: Sequence, i: int,
            alpha_star: Optional[Sequence] = None) -> Vector:
    """Component ``i`` of ``alpha`` in ``V = [F a*] + sum span(R_re^i)``.

    ``components`` lists the root sets of the irreducible real components.
    When their spans fall one short of the ambient space the line through
    ``alpha_star`` (default: the least nonzero nonsingular root) is added.
    """
    return _projector(S, components, alpha_star).project(alpha, i)


def support(S: RootSupersystem, components, alpha: Sequence,
            alpha_star: Optional[Sequence] = None) -> FrozenSet[int]:
    return _projector(S, components, alpha_star).support(alpha)


def star_coefficient(S: RootSupersystem, alpha_star: Sequence, alpha: Sequence) -> Q:
    """Coefficient of ``alpha`` on ``alpha_star`` in ``V = F a* + span(R_re)``."""
    key = vector(alpha_star)
    projector = S._star_projectors.get(key)
    if projector is None:
        idx = S.index_of(key)
        if idx is None or idx not in set(S.null_indices):
            raise ValueError("alpha_star must be a nonzero nonsingular root")
        real_span = span_basis(S.real_roots)
        if len(real_span) + 1 != S.dim or rank([key] + real_span) != S.dim:
            raise ValueError("alpha_star together with the real span does not span the ambient space")
        projector = S._star_projectors[key] = Projector(S.dim, [real_span], star=key)
    return projector.star_coefficient(alpha)

