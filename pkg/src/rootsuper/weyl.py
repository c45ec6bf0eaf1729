"""Reflections, Cartan integers, Weyl orbits and root strings."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Iterator, List, Optional, Sequence, Tuple

from .exactlin import Vector, denominator_lcm, dot, vector
from .system import RootSupersystem

STRING_SCAN_LIMIT = 16


class NullRootError(ValueError):
    """Raised when a reflection or Cartan integer is requested for a null vector."""


def cartan_integer(S: RootSupersystem, beta: Sequence, alpha: Sequence) -> Q:
    """``2 (beta, alpha) / (alpha, alpha)``; integrality is left to the caller."""
    n = S.norm(alpha)
    if n == 0:
        raise NullRootError(f"{tuple(alpha)} has zero length")
    return 2 * S.pair(beta, alpha) / n


def coroot_parts(S: RootSupersystem, v: Sequence) -> Iterator[Tuple[int, int]]:
    """Numerator and denominator of ``cartan(v, a)`` for each nonzero real root ``a``."""
    iv = S._iv
    vec = vector(v)
    L = denominator_lcm(vec)
    vi = [int(x * L) for x in vec]
    twice_d = 2 * iv.scale
    for i in S.real_indices:
        yield twice_d * sum(x * c for x, c in zip(vi, iv.cov[i])), L * iv.norms[i]


def reflect(S: RootSupersystem, v: Sequence, alpha: Sequence) -> Vector:
    c = cartan_integer(S, v, alpha)
    return tuple(x - c * a for x, a in zip(v, alpha))


@dataclass(frozen=True)
class Orbit:
    elements: Tuple[Vector, ...]
    seed: Vector

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Vector]:
        return iter(self.elements)

    def __contains__(self, v) -> bool:
        return vector(v) in set(self.elements)

    def negated(self) -> "Orbit":
        return Orbit(tuple(sorted(tuple(-x for x in e) for e in self.elements)),
                     tuple(-x for x in self.seed))


def reflection_generators(S: RootSupersystem, roots: Optional[Sequence] = None) -> List[Vector]:
    """One representative per pair ``+-a`` of nonzero real roots (or of ``roots``)."""
    pool = S.real_roots if roots is None else [vector(r) for r in roots]
    seen = set()
    gens = []
    for a in pool:
        key = max(a, tuple(-x for x in a))
        if key in seen:
            continue
        i = S.index_of(key)
        if (S._iv.norms[i] if i is not None else S.norm(key)) == 0:
            raise NullRootError(f"{a} has zero length")
        seen.add(key)
        gens.append(key)
    return gens


def _scaled(values, factor: int) -> Tuple[int, ...]:
    return tuple(int(x * factor) for x in values)


def closure(S: RootSupersystem, seed: Sequence, generators: Sequence[Sequence],
            limit: int = 200_000) -> Orbit:
    """Breadth-first closure of ``{seed}`` under the reflections in ``generators``.

    Works on integer multiples of the coordinates while every Cartan value
    stays integral, which is the case for orbits of weights.
    """
    start = vector(seed)
    gens = [vector(a) for a in generators]
    L = denominator_lcm([x for a in gens for x in a] + list(start))
    E = S._iv.form_scale
    gram = [[int(x * E) for x in row] for row in S.form.entries]
    prepared = []
    for a in gens:
        ai = _scaled(a, L)
        cov = tuple(sum(g * x for g, x in zip(row, ai)) for row in gram)
        n = sum(x * y for x, y in zip(ai, cov))
        if n == 0:
            raise NullRootError(f"{a} has zero length")
        prepared.append((ai, tuple(2 * c for c in cov), n))
    first = _scaled(start, L)
    seen = {first}
    queue = deque([first])
    while queue:
        v = queue.popleft()
        for ai, cov2, n in prepared:
            m = sum(x * y for x, y in zip(v, cov2))
            if not m:
                continue
            c, rem = divmod(m, n)
            if rem:
                return _fraction_closure(S, start, gens, limit)
            w = tuple(x - c * y for x, y in zip(v, ai))
            if w not in seen:
                seen.add(w)
                if len(seen) > limit:
                    raise RuntimeError(f"orbit exceeded {limit} elements; is the Weyl group finite?")
                queue.append(w)
    return Orbit(tuple(sorted(tuple(Q(x, L) for x in w) for w in seen)), start)


def _fraction_closure(S, start: Vector, gens: List[Vector], limit: int) -> Orbit:
    prepared = [(a, tuple(2 * x / S.norm(a) for x in S.form.apply(a))) for a in gens]
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for a, coa in prepared:
            c = dot(v, coa)
            if not c:
                continue
            w = tuple(x - c * y for x, y in zip(v, a))
            if w not in seen:
                seen.add(w)
                if len(seen) > limit:
                    raise RuntimeError(f"orbit exceeded {limit} elements; is the Weyl group finite?")
                queue.append(w)
    return Orbit(tuple(sorted(seen)), start)


def orbit(S: RootSupersystem, v: Sequence, generators: Optional[Sequence] = None) -> Orbit:
    """The Weyl orbit of ``v``; ``generators`` overrides the reflecting roots."""
    gens = reflection_generators(S) if generators is None else generators
    return closure(S, v, gens)


@dataclass(frozen=True)
class RootString:
    """The unbroken run ``beta - p*alpha .. beta + q*alpha`` of roots through ``beta``.

    ``stray`` lists offsets within the scan window that are roots but fall
    outside the run; it is empty exactly when the string is unbroken there.
    """

    p: int
    q: int
    members: Tuple[Vector, ...]
    stray: Tuple[int, ...] = ()

    @property
    def unbroken(self) -> bool:
        return not self.stray


def root_string(S: RootSupersystem, beta: Sequence, alpha: Sequence,
                real_only: bool = False) -> RootString:
    """The ``alpha``-string through ``beta``; with ``real_only`` membership means real root."""
    ai = S.index_of(alpha)
    if ai is None or ai not in set(S.real_indices):
        raise ValueError(f"{tuple(alpha)} is not a nonzero real root")
    bi = S.index_of(beta)
    if bi is None:
        raise ValueError(f"{tuple(beta)} is not a root")
    iv = S._iv
    a, b = iv.roots[ai], iv.roots[bi]
    members = _string_offsets(S, a, b, real_only)
    if 0 not in members:
        raise ValueError(f"{tuple(beta)} is not a real root")
    q = 0
    while q + 1 in members:
        q += 1
    p = 0
    while -(p + 1) in members:
        p += 1
    if q >= STRING_SCAN_LIMIT or p >= STRING_SCAN_LIMIT:
        raise RuntimeError(f"root string exceeds the scan bound {STRING_SCAN_LIMIT}")
    stray = tuple(sorted(i for i in members if i < -p or i > q))
    alpha_v, beta_v = vector(alpha), vector(beta)
    run = tuple(tuple(x + i * y for x, y in zip(beta_v, alpha_v)) for i in range(-p, q + 1))
    return RootString(p, q, run, stray)


def _string_offsets(S: RootSupersystem, a, b, real_only: bool) -> set:
    iv = S._iv
    found = set()
    for i in range(-STRING_SCAN_LIMIT, STRING_SCAN_LIMIT + 1):
        j = iv.index.get(tuple(x + i * y for x, y in zip(b, a)))
        if j is not None and (not real_only or iv.norms[j] != 0 or not any(iv.roots[j])):
            found.add(i)
    return found
