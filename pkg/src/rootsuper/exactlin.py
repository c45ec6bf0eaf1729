"""Exact rational vectors, symmetric bilinear forms and elimination routines.

Scalars are :class:`fractions.Fraction` throughout. Vectors are tuples of
fractions and a :class:`GramForm` wraps a symmetric square matrix.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction as Q
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple

Vector = Tuple[Q, ...]
Matrix = Tuple[Vector, ...]

_RATIONAL_RE = re.compile(r"^(0/1|-?[1-9][0-9]*/[1-9][0-9]*)$")


def parse_rational(text: str) -> Q:
    """Parse the strict ``p/q`` textual form; rejects anything not reduced."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"not a normalized rational string: {text!r}")
    num, den = text.split("/")
    p, q = int(num), int(den)
    if gcd(abs(p), q) != 1:
        raise ValueError(f"rational string not in lowest terms: {text!r}")
    return Q(p, q)


def format_rational(x) -> str:
    x = Q(x)
    return f"{x.numerator}/{x.denominator}"


def vector(values: Iterable) -> Vector:
    """Coerce an iterable of ints, fractions or ``p/q`` strings to a vector."""
    out = []
    for x in values:
        if isinstance(x, float):
            raise TypeError("floating point coordinates are not accepted")
        out.append(Q(x))
    return tuple(out)


def zero(dim: int) -> Vector:
    return (Q(0),) * dim


def unit(dim: int, i: int) -> Vector:
    return tuple(Q(1) if k == i else Q(0) for k in range(dim))


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def neg(u: Sequence) -> Vector:
    return tuple(-a for a in u)


def scale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def combine(coeffs: Sequence, vectors: Sequence[Sequence], dim: int) -> Vector:
    """Linear combination ``sum(c * v)``; ``dim`` covers the empty case."""
    out = [Q(0)] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                out[k] += c * a
    return tuple(out)


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Q(0))


def is_zero(u: Sequence) -> bool:
    return not any(u)


@dataclass(frozen=True)
class GramForm:
    """Symmetric bilinear form given by its Gram matrix in the ambient basis."""

    entries: Matrix

    def __post_init__(self):
        rows = tuple(vector(r) for r in self.entries)
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"Gram matrix not symmetric at ({i}, {j})")
        object.__setattr__(self, "entries", rows)

    @property
    def dim(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, dim: int) -> "GramForm":
        return cls(tuple(unit(dim, i) for i in range(dim)))

    @classmethod
    def diagonal(cls, values: Sequence) -> "GramForm":
        n = len(values)
        return cls(tuple(tuple(Q(values[i]) if i == j else Q(0) for j in range(n))
                         for i in range(n)))

    def apply(self, v: Sequence) -> Vector:
        """The covector ``G v``."""
        return tuple(dot(row, v) for row in self.entries)

    def __call__(self, u: Sequence, v: Sequence) -> Q:
        return evaluate(self, u, v)

    def restrict(self, basis: Sequence[Sequence]) -> "GramForm":
        """Gram matrix of the form on ``span(basis)`` in that basis."""
        cov = [self.apply(b) for b in basis]
        return GramForm(tuple(tuple(dot(a, c) for c in cov) for a in basis))


def evaluate(form: GramForm, u: Sequence, v: Sequence) -> Q:
    """Return ``u^T G v`` exactly."""
    n = form.dim
    if len(u) != n or len(v) != n:
        raise ValueError(f"dimension mismatch: form has dim {n}, got {len(u)} and {len(v)}")
    return dot(u, form.apply(v))


def row_reduce(rows: Sequence[Sequence]) -> Tuple[List[List[Q]], List[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    m = [list(map(Q, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    dims = {len(v) for v in vectors}
    if len(dims) != 1:
        raise ValueError("vectors of different dimensions")
    return len(row_reduce(vectors)[1])


def span_basis(vectors: Sequence[Sequence]) -> List[Vector]:
    """The reduced echelon basis of ``span(vectors)``."""
    rows, _ = row_reduce(vectors)
    return [tuple(r) for r in rows]


def independent_subset(vectors: Sequence[Sequence]) -> List[int]:
    """Indices of a greedily chosen maximal independent subfamily, in order."""
    chosen: List[int] = []
    echelon: List[List[Q]] = []
    pivots: List[int] = []
    for idx, v in enumerate(vectors):
        w = list(map(Q, v))
        for row, p in zip(echelon, pivots):
            if w[p] != 0:
                f = w[p]
                w = [a - f * b for a, b in zip(w, row)]
        p = next((k for k, x in enumerate(w) if x != 0), None)
        if p is None:
            continue
        inv = 1 / w[p]
        echelon.append([x * inv for x in w])
        pivots.append(p)
        chosen.append(idx)
    return chosen


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[Vector]:
    """Basis of ``{x : M x = 0}`` for the matrix with the given rows."""
    if not rows:
        return [unit(ncols, i) for i in range(ncols)]
    red, pivots = row_reduce(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Q(0)] * ncols
        x[f] = Q(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def transpose(m: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(r, c) for c in bt) for r in a)


def matvec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(r, v) for r in m)


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [list(map(Q, r)) + list(unit(n, i)) for i, r in enumerate(m)]
    red, pivots = row_reduce(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return tuple(tuple(r[n:]) for r in red)


def solve_coordinates(basis: Sequence[Sequence], v: Sequence) -> Optional[Vector]:
    """Coordinates of ``v`` in an independent ``basis``, or None if outside the span."""
    k = len(basis)
    if k == 0:
        return () if is_zero(v) else None
    cols = [list(b) + [x] for b, x in zip(zip(*basis), v)]
    red, pivots = row_reduce(cols)
    if k in pivots:
        return None
    if len(pivots) != k:
        raise ValueError("basis vectors are dependent")
    coords = [Q(0)] * k
    for row, p in zip(red, pivots):
        coords[p] = row[k]
    return tuple(coords)


def radical(form: GramForm, basis: Sequence[Sequence]) -> List[Vector]:
    """Basis of the radical of the form restricted to ``span(basis)``."""
    basis = [vector(b) for b in basis]
    if rank(basis) != len(basis):
        raise ValueError("radical() needs an independent basis")
    if not basis:
        return []
    gram = form.restrict(basis)
    dim = form.dim
    return [combine(c, basis, dim) for c in nullspace(gram.entries, len(basis))]


def is_nondegenerate(form: GramForm) -> bool:
    return not radical(form, [unit(form.dim, i) for i in range(form.dim)])


def nondegenerate_extension(form: GramForm, ambient_basis: Sequence[Sequence],
                            W: Sequence[Sequence]) -> List[Vector]:
    """Enlarge ``W`` to a basis of a subspace on which the form is nondegenerate.

    While the current span has a nonzero radical vector ``u``, adjoin the first
    ambient basis vector ``x`` with ``(u, x) != 0``. Each step lowers the radical
    dimension, so at most ``dim radical(W)`` vectors are added.
    """
    ambient = [vector(b) for b in ambient_basis]
    if radical(form, ambient):
        raise ValueError("form is degenerate on the ambient space")
    current = [vector(w) for w in W]
    if rank(current) != len(current):
        raise ValueError("W must be independent")
    while True:
        rad = radical(form, current)
        if not rad:
            return current
        u = rad[0]
        x = next(b for b in ambient if evaluate(form, u, b) != 0)
        current.append(x)


def denominator_lcm(values: Iterable[Q]) -> int:
    d = 1
    for x in values:
        d = lcm(d, Q(x).denominator)
    return d


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> List[List[int]]:
    """Row-style Hermite normal form of an integer matrix (nonzero rows only).

    Pivots are positive, entries above each pivot are reduced into
    ``[0, pivot)``. Two integer matrices generate the same row lattice iff
    their normal forms agree.
    """
    m = [[int(x) for x in r] for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    out: List[List[int]] = []
    r = 0
    for c in range(ncols):
        # Euclid on column c among rows r.. until a single nonzero remains.
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[i_min] = m[i_min], m[r]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c] != 0:
                    f = m[i][c] // m[r][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                    if m[i][c] != 0:
                        done = False
            if done:
                break
        if r < len(m) and m[r][c] != 0:
            if m[r][c] < 0:
                m[r] = [-a for a in m[r]]
            for i in range(r):
                f = m[i][c] // m[r][c]
                if f:
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    out = [row for row in m[:r] if any(row)]
    return out


def same_lattice(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> bool:
    return hermite_normal_form(a) == hermite_normal_form(b)
