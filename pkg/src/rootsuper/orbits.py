"""Weights, small orbits and a bounded search for them."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .exactlin import Vector, neg, scale, sub, vector
from .system import RootSupersystem
from .weyl import Orbit, coroot_parts, orbit


def is_weight(S: RootSupersystem, v: Sequence) -> bool:
    """True iff ``v`` has an integral Cartan pairing with every nonzero real root."""
    if not S.real_indices:
        raise ValueError("system has no nonzero real roots")
    return all(m % n == 0 for m, n in coroot_parts(S, v))


def _check_closed(S: RootSupersystem, elements: Sequence[Vector]) -> None:
    members = set(elements)
    pending = set(elements)
    while pending:
        v = pending.pop()
        reached = set(orbit(S, v))
        escaped = reached - members
        if escaped:
            raise ValueError(f"set is not Weyl-closed: the orbit of {v} reaches {min(escaped)}")
        pending -= reached


def is_small_orbit(S: RootSupersystem, O) -> Tuple[bool, Optional[Tuple[Vector, Vector]]]:
    """Check that any two members are equal up to sign or differ by a nonzero root.

    Returns the verdict and, when it fails, the first offending pair in
    canonical order.
    """
    elements = sorted({vector(v) for v in O})
    _check_closed(S, elements)
    for v in elements:
        if not is_weight(S, v):
            raise ValueError(f"{v} is not a weight")
    for i, x in enumerate(elements):
        minus_x = neg(x)
        for y in elements[i + 1:]:
            if y == minus_x:
                continue
            d = sub(x, y)
            if d not in S or not any(d):
                return False, (x, y)
    return True, None


@dataclass(frozen=True)
class Candidate:
    seed: Vector
    size: int
    is_weight: bool
    is_small: bool
    pair: Optional[Tuple[Vector, Vector]] = None
    elements: Tuple[Vector, ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class SmallOrbitReport:
    candidates: Tuple[Candidate, ...]
    search_bound: int

    def small_orbits(self) -> List[Orbit]:
        """Distinct small orbits among the candidates, in candidate order."""
        seen = set()
        out = []
        for c in self.candidates:
            key = frozenset(c.elements)
            if c.is_small and key not in seen:
                seen.add(key)
                out.append(Orbit(c.elements, c.seed))
        return out


def small_orbit_search(S: RootSupersystem, multiple_bound: int = 4) -> SmallOrbitReport:
    """Test orbits seeded at ``+-k * w`` for fundamental weights ``w`` and ``k <= bound``.

    Seeds that are not weights (possible for BC, where some fundamental weights
    pair non-integrally with the doubled roots) are listed with size 0.
    """
    from .catalog import fundamental_weights, root_base
    from .classify import is_irreducible

    if S.null_indices:
        raise ValueError("small-orbit search needs an ordinary root system")
    if not S.real_indices or not is_irreducible(S):
        raise ValueError("small-orbit search needs an irreducible root system")
    weights = fundamental_weights(S, root_base(S))
    candidates = []
    known = {}
    for w in weights:
        for k in range(1, multiple_bound + 1):
            for sign in (1, -1):
                seed = scale(sign * k, w)
                if not is_weight(S, seed):
                    candidates.append(Candidate(seed, 0, False, False))
                    continue
                O = orbit(S, seed)
                key = O.elements
                if key not in known:
                    known[key] = is_small_orbit(S, O)
                small, pair = known[key]
                candidates.append(Candidate(seed, len(O), True, small, pair, O.elements))
    return SmallOrbitReport(tuple(candidates), multiple_bound)
