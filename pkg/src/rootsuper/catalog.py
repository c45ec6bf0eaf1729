"""Constructors for the classical, exceptional and super root systems.

Classical systems use the usual orthonormal ``e_i`` coordinates. Type A and
G2 live in a zero-sum hyperplane and are re-based onto ``e_i - e_last`` so the
ambient dimension equals the rank. Super systems of real type are direct sums
of classical pieces with rescaled forms plus the Weyl orbit of a null weight.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator, List, Optional, Sequence, Tuple

from .exactlin import (
    GramForm,
    Vector,
    combine,
    inverse,
    matmul,
    neg,
    rank,
    scale,
    solve_coordinates,
    transpose,
    unit,
    vector,
    zero,
)
from .system import Frame, RootSupersystem
from .weyl import cartan_integer, orbit

ROOT_FAMILIES = ("A", "B", "C", "D", "BC")
EXCEPTIONAL = ("G2", "F4")
IMAGINARY = ("A0T", "C0T", "ATP")
REAL_SUPER = ("A_ll", "B_TT", "BC_TT", "C_TT", "D_TT", "B_1T", "C_1T", "AB_13",
              "D_1T", "G_12", "D_21L", "D_2T")
FAMILIES = ROOT_FAMILIES + EXCEPTIONAL + IMAGINARY + REAL_SUPER

ALIASES = {"Ȧ0T": "A0T", "Ċ0T": "C0T", "ȦTP": "ATP", "D_21λ": "D_21L"}

_MIN_RANK = {"A": 1, "B": 1, "C": 2, "D": 4, "BC": 1}
_PARAM_COUNT = {
    **{f: 1 for f in ROOT_FAMILIES}, "G2": 0, "F4": 0,
    "A0T": 1, "C0T": 1, "ATP": 2,
    "A_ll": 1, "B_TT": 2, "BC_TT": 2, "C_TT": 2, "D_TT": 2, "B_1T": 1, "C_1T": 1,
    "AB_13": 0, "D_1T": 1, "G_12": 0, "D_21L": 0, "D_2T": 1,
}


@dataclass(frozen=True, order=True)
class TypeLabel:
    """A classification label: family name, integer sizes, and ``lam`` for D(2,1,λ)."""

    family: str
    params: Tuple[int, ...] = ()
    lam: Optional[Q] = None

    def __post_init__(self):
        family = ALIASES.get(self.family, self.family)
        if family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        object.__setattr__(self, "family", family)
        params = tuple(int(p) for p in self.params)
        object.__setattr__(self, "params", params)
        if len(params) != _PARAM_COUNT[family]:
            raise ValueError(f"{family} takes {_PARAM_COUNT[family]} size parameter(s)")
        if family == "D_21L":
            if self.lam is None:
                raise ValueError("D(2,1,λ) needs lambda")
            lam = Q(self.lam)
            if lam in (0, -1):
                raise ValueError("lambda must avoid 0 and -1 (degenerate form)")
            object.__setattr__(self, "lam", lam)
        elif self.lam is not None:
            raise ValueError("lambda only applies to D(2,1,λ)")
        problem = _constraint_problem(family, params)
        if problem:
            raise ValueError(f"{family}{params}: {problem}")

    def __str__(self) -> str:
        f, p = self.family, self.params
        if f in ROOT_FAMILIES:
            return f"{f}_{p[0]}"
        if f in EXCEPTIONAL:
            return f"{f[0]}_{f[1]}"
        if f == "A0T":
            return f"Ȧ(0,{p[0]})"
        if f == "C0T":
            return f"Ċ(0,{p[0]})"
        if f == "ATP":
            return f"Ȧ({p[0]},{p[1]})"
        if f == "A_ll":
            return f"A({p[0]},{p[0]})"
        if f == "D_21L":
            return f"D(2,1,λ={self.lam})"
        if f == "AB_13":
            return "AB(1,3)"
        if f == "G_12":
            return "G(1,2)"
        head = {"B_TT": "B", "BC_TT": "BC", "C_TT": "C", "D_TT": "D",
                "B_1T": "B(1,", "C_1T": "C(1,", "D_1T": "D(1,", "D_2T": "D(2,"}[f]
        if len(p) == 2:
            return f"{head}({p[0]},{p[1]})"
        return f"{head}{p[0]})"

    @classmethod
    def parse(cls, text: str) -> "TypeLabel":
        """Inverse of ``str``; e.g. ``B_3``, ``Ȧ(0,3)``, ``C(1,2)``, ``D(2,1,λ=1/2)``."""
        t = text.strip()
        m = re.fullmatch(r"(A|B|C|D|BC)_(\d+)", t)
        if m:
            return cls(m.group(1), (int(m.group(2)),))
        if t in ("G_2", "F_4"):
            return cls(t.replace("_", ""))
        m = re.fullmatch(r"D\(2,1,λ=(-?\d+(?:/\d+)?)\)", t)
        if m:
            return cls("D_21L", (), Q(m.group(1)))
        m = re.fullmatch(r"(Ȧ|Ċ|AB|BC|A|B|C|D|G)\((\d+),(\d+)\)", t)
        if not m:
            raise ValueError(f"unrecognized label text {text!r}")
        head, a, b = m.group(1), int(m.group(2)), int(m.group(3))
        if head == "Ȧ":
            return cls("A0T", (b,)) if a == 0 else cls("ATP", (a, b))
        if head == "Ċ" and a == 0:
            return cls("C0T", (b,))
        if head == "AB" and (a, b) == (1, 3):
            return cls("AB_13")
        if head == "G" and (a, b) == (1, 2):
            return cls("G_12")
        if head == "A" and a == b:
            return cls("A_ll", (a,))
        if head in ("B", "C", "D") and a == 1:
            return cls(f"{head}_1T", (b,))
        if head == "D" and a == 2:
            return cls("D_2T", (b,))
        if head in ("B", "BC", "C", "D"):
            return cls(f"{head}_TT", (a, b))
        raise ValueError(f"unrecognized label text {text!r}")


def _constraint_problem(f: str, p: Tuple[int, ...]) -> Optional[str]:
    if f in _MIN_RANK:
        return None if p[0] >= _MIN_RANK[f] else f"rank must be at least {_MIN_RANK[f]}"
    if f in ("A0T", "C0T"):
        return None if p[0] >= 2 else "size must be at least 2"
    if f == "ATP":
        if min(p) < 2:
            return "sizes must be at least 2"
        return None if p[0] != p[1] else "finite sizes must differ"
    need = {
        "A_ll": lambda: p[0] >= 1,
        "B_TT": lambda: p[0] >= 2 and (p[1] >= 2 or p[1] == 1),
        "BC_TT": lambda: (p[0] > 1 and p[1] > 1) or (p[0] == 1 and p[1] >= 1),
        "C_TT": lambda: min(p) >= 2,
        "D_TT": lambda: p[0] >= 3 and p[1] >= 2,
        "B_1T": lambda: p[0] >= 1,
        "C_1T": lambda: p[0] >= 2,
        "D_1T": lambda: p[0] >= 3,
        "D_2T": lambda: p[0] >= 2,
    }
    check = need.get(f)
    if check is None or check():
        return None
    return "parameters outside the family's allowed range"


# ---------------------------------------------------------------- pieces


@dataclass(frozen=True)
class _Piece:
    """A root system in auxiliary coordinates plus the basis used to re-base it."""

    names: Tuple[str, ...]
    gram: Tuple[Vector, ...]
    roots: Tuple[Vector, ...]
    basis: Tuple[Vector, ...]


def _pm_pairs(n: int, signs) -> List[Vector]:
    out = []
    for i, j in combinations(range(n), 2):
        for si, sj in signs:
            v = [Q(0)] * n
            v[i], v[j] = Q(si), Q(sj)
            out.append(tuple(v))
    return out


def _short(n: int, length: int = 1) -> List[Vector]:
    return [tuple(Q(s * length) if k == i else Q(0) for k in range(n))
            for i in range(n) for s in (1, -1)]


def _identity(n: int) -> Tuple[Vector, ...]:
    return tuple(unit(n, i) for i in range(n))


def _piece(kind: str, n: int = 0) -> _Piece:
    """Roots of a classical or exceptional system, including 0."""
    if kind == "A":
        m = n + 1
        roots = [zero(m)] + _pm_pairs(m, [(1, -1), (-1, 1)])
        basis = tuple(tuple(Q(1) if k == i else Q(-1) if k == n else Q(0) for k in range(m))
                      for i in range(n))
        return _Piece(tuple(str(i + 1) for i in range(m)), _identity(m), tuple(roots), basis)
    if kind == "G2":
        short = _pm_pairs(3, [(1, -1), (-1, 1)])
        long_ = []
        for i in range(3):
            v = tuple(Q(2) if k == i else Q(-1) for k in range(3))
            long_ += [v, neg(v)]
        basis = ((Q(1), Q(0), Q(-1)), (Q(0), Q(1), Q(-1)))
        return _Piece(("1", "2", "3"), _identity(3), tuple([zero(3)] + short + long_), basis)
    if kind == "F4":
        roots = [zero(4)] + _short(4) + _pm_pairs(4, [(1, 1), (1, -1), (-1, 1), (-1, -1)])
        roots += [tuple(Q(s, 2) for s in signs) for signs in product((1, -1), repeat=4)]
        return _Piece(("1", "2", "3", "4"), _identity(4), tuple(roots), _identity(4))
    pairs = _pm_pairs(n, [(1, 1), (1, -1), (-1, 1), (-1, -1)])
    if kind == "B":
        roots = _short(n) + pairs
    elif kind == "C":
        roots = _short(n, 2) + pairs
    elif kind == "D":
        roots = pairs
    elif kind == "BC":
        roots = _short(n) + _short(n, 2) + pairs
    else:
        raise ValueError(f"unknown root system kind {kind!r}")
    return _Piece(tuple(str(i + 1) for i in range(n)), _identity(n),
                  tuple([zero(n)] + roots), _identity(n))


def _basis_label(names: Sequence[str], row: Vector) -> str:
    parts = []
    for name, x in zip(names, row):
        if x == 0:
            continue
        sign = "-" if x < 0 else "+"
        mag = "" if abs(x) == 1 else f"{abs(x)}"
        parts.append(f"{sign}{mag}{name}")
    text = "".join(parts)
    return text[1:] if text.startswith("+") else text


def _realize(names, gram_x, roots_x, basis_x, label=None) -> RootSupersystem:
    """Express ``roots_x`` in ``basis_x`` and pull the form back to that basis."""
    basis_x = [vector(b) for b in basis_x]
    coords = []
    for r in roots_x:
        c = solve_coordinates(basis_x, r)
        if c is None:
            raise ValueError(f"root {r} lies outside the chosen basis span")
        coords.append(c)
    gram = matmul(matmul(basis_x, gram_x), transpose(basis_x))
    labels = tuple(_basis_label(names, b) for b in basis_x)
    return RootSupersystem(GramForm(gram), tuple(coords), labels, label,
                           Frame(tuple(names), tuple(basis_x)))


def _piece_system(piece: _Piece, prefix: str = "e", label=None) -> RootSupersystem:
    names = tuple(prefix + n for n in piece.names)
    return _realize(names, piece.gram, piece.roots, piece.basis, label)


@lru_cache(maxsize=None)
def _component_system(kind: str, n: int = 0, prefix: str = "e") -> RootSupersystem:
    return _piece_system(_piece(kind, n), prefix)


def make_root_system(family: str, n: int) -> RootSupersystem:
    """Classical root system of the given family and rank, with 0 included."""
    label = TypeLabel(family, (n,))
    return _component_system(family, n).relabel(label)


def make_exceptional(family: str) -> RootSupersystem:
    label = TypeLabel(family)
    return _component_system(family).relabel(label)


# ------------------------------------------------------ bases and weights


def _positive(v: Sequence) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def root_base(S: RootSupersystem, roots: Optional[Sequence] = None) -> List[Vector]:
    """Simple roots for the lexicographic positive system, in decreasing order.

    With the coordinates used by this catalog this yields the familiar bases
    ``e1-e2, ..., e(l-1)-el`` followed by ``el``, ``2el`` or ``e(l-1)+el``.
    """
    pool = [vector(r) for r in (S.real_roots if roots is None else roots) if any(r)]
    if any(S.norm(r) == 0 for r in pool):
        raise ValueError("root_base needs real roots only")
    positive = [r for r in pool if _positive(r)]
    posset = set(positive)
    simple = [a for a in positive
              if not any(tuple(x - y for x, y in zip(a, b)) in posset for b in positive)]
    simple.sort(reverse=True)
    if len(simple) != rank(pool) or len(positive) * 2 != len(set(pool)):
        raise ValueError("input is not a root system")
    return simple


def fundamental_weights(S: RootSupersystem, base: Sequence[Sequence]) -> List[Vector]:
    """Weights dual to ``base`` under ``2(w, a)/(a, a)``, in the order of ``base``."""
    base = [vector(a) for a in base]
    cartan = [[cartan_integer(S, ak, ai) for ai in base] for ak in base]
    try:
        x = inverse(cartan)
    except ValueError as exc:
        raise ValueError("singular Cartan matrix") from exc
    return [combine(row, base, S.dim) for row in x]


# ------------------------------------------------------------ imaginary


def make_imaginary(label: TypeLabel, t0: int = 1) -> RootSupersystem:
    """Super systems of imaginary type; ``t0`` picks the index paired with ``a*``."""
    f, p = label.family, label.params
    if f == "ATP":
        return _make_atp(label)
    if f not in ("A0T", "C0T"):
        raise ValueError(f"{label} is not of imaginary type")
    n = p[0]
    if not 1 <= t0 <= n:
        raise ValueError("t0 must index one of the coordinates")
    t = t0 - 1
    names = ("a*",) + tuple(f"e{i + 1}" for i in range(n))
    size = n + 1
    gram = [[Q(0)] * size for _ in range(size)]
    for i in range(n):
        gram[1 + i][1 + i] = Q(1)
    gram[0][1 + t] = gram[1 + t][0] = Q(1)

    def eps(i, c=1):
        return tuple(Q(c) if k == 1 + i else Q(0) for k in range(size))

    star = unit(size, 0)

    def minus(u, v):
        return tuple(a - b for a, b in zip(u, v))

    def plus(u, v):
        return tuple(a + b for a, b in zip(u, v))

    if f == "A0T":
        real = [zero(size)] + [minus(eps(i), eps(j)) for i in range(n) for j in range(n) if i != j]
        null = [star] + [minus(star, minus(eps(t), eps(s))) for s in range(n) if s != t]
        basis = [star] + [minus(eps(i), eps(n - 1)) for i in range(n - 1)]
    else:
        c = _piece("C", n)
        real = [(Q(0),) + r for r in c.roots]
        null = [star, minus(star, eps(t, 2))]
        null += [minus(star, plus(eps(t), eps(s))) for s in range(n) if s != t]
        null += [minus(star, minus(eps(t), eps(s))) for s in range(n) if s != t]
        basis = [unit(size, k) for k in range(size)]
    roots = real + null + [neg(v) for v in null]
    return _realize(names, gram, roots, basis, label)


def _make_atp(label: TypeLabel) -> RootSupersystem:
    m, n = label.params
    names = tuple(f"e{i + 1}" for i in range(m)) + tuple(f"d{j + 1}" for j in range(n))
    size = m + n
    gram = [[Q(0)] * size for _ in range(size)]
    for k in range(size):
        gram[k][k] = Q(1) if k < m else Q(-1)

    def diff(i, j):
        return tuple(Q(1) if k == i else Q(-1) if k == j else Q(0) for k in range(size))

    roots = [zero(size)]
    roots += [diff(i, j) for i in range(m) for j in range(m) if i != j]
    roots += [diff(m + i, m + j) for i in range(n) for j in range(n) if i != j]
    for i in range(m):
        for j in range(n):
            roots += [diff(i, m + j), diff(m + j, i)]
    basis = [diff(0, m)] + [diff(i, m - 1) for i in range(m - 1)]
    basis += [diff(m + j, m + n - 1) for j in range(n - 1)]
    return _realize(names, gram, roots, basis, label)


# ----------------------------------------------------------------- real


# Per family: component kinds (with sizes) and per-component (weight, multiplier).
# A weight is a fundamental-weight index, or "short" for the G2 weight whose
# orbit is the set of short roots.
def _real_layout(label: TypeLabel):
    f, p = label.family, label.params
    if f == "A_ll":
        return [("A", p[0]), ("A", p[0])], [(0, 1), (0, 1)], True
    if f == "B_TT":
        m, n = p
        if n == 1:
            return [("BC", 1), ("B", m)], [(0, 2), (0, 1)], False
        return [("B", m), ("BC", n)], [(0, 1), (0, 1)], False
    if f == "BC_TT":
        m, n = p
        if m == 1 and n == 1:
            mult = [(0, 2), (0, 2)]
        elif m == 1:
            mult = [(0, 2), (0, 1)]
        else:
            mult = [(0, 1), (0, 1)]
        return [("BC", m), ("BC", n)], mult, False
    if f == "C_TT":
        return [("C", p[0]), ("C", p[1])], [(0, 1), (0, 1)], False
    if f == "D_TT":
        return [("D", p[0]), ("C", p[1])], [(0, 1), (0, 1)], False
    if f == "B_1T":
        mult = [(0, 2), (0, 2)] if p[0] == 1 else [(0, 2), (0, 1)]
        return [("A", 1), ("BC", p[0])], mult, False
    if f == "C_1T":
        return [("A", 1), ("C", p[0])], [(0, 1), (0, 1)], False
    if f == "AB_13":
        return [("A", 1), ("B", 3)], [(0, 1), (2, 1)], False
    if f == "D_1T":
        return [("A", 1), ("D", p[0])], [(0, 1), (0, 1)], False
    if f == "G_12":
        return [("BC", 1), ("G2", 0)], [(0, 2), ("short", 1)], False
    if f == "D_21L":
        return [("A", 1)] * 3, [(0, 1)] * 3, False
    if f == "D_2T":
        return [("A", 1), ("A", 1), ("C", p[0])], [(0, 1)] * 3, False
    raise ValueError(f"{label} is not a real-type super system")


_PREFIXES = ("e", "d", "f")


def _pick_weight(comp: RootSupersystem, which) -> Vector:
    weights = fundamental_weights(comp, root_base(comp))
    if which == "short":
        shortest = min(comp.norm(r) for r in comp.real_roots)
        for w in weights:
            if w in comp and comp.norm(w) == shortest:
                return w
        raise AssertionError("no fundamental weight is a short root")
    return weights[which]


def _block_diag(blocks: Sequence[Sequence[Sequence]], scalars: Sequence) -> List[List[Q]]:
    size = sum(len(b) for b in blocks)
    out = [[Q(0)] * size for _ in range(size)]
    off = 0
    for b, c in zip(blocks, scalars):
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = c * x
        off += len(b)
    return out


def _embed(v: Sequence, offset: int, size: int) -> Vector:
    out = [Q(0)] * size
    out[offset:offset + len(v)] = v
    return tuple(out)


def make_real(label: TypeLabel) -> RootSupersystem:
    """Super systems of real type: a direct sum plus the Weyl orbit of a null weight."""
    kinds, picks, symmetric = _real_layout(label)
    comps = [_component_system(kind, n, _PREFIXES[k]) for k, (kind, n) in enumerate(kinds)]
    parts = [c.relabel(None) for c in comps]
    pieces = [scale(mult, _pick_weight(c, which)) for c, (which, mult) in zip(parts, picks)]
    norms = [c.norm(w) for c, w in zip(parts, pieces)]
    scalars = _form_scalars(label, norms)
    size = sum(c.dim for c in parts)
    offsets = [sum(c.dim for c in parts[:k]) for k in range(len(parts))]
    gram = _block_diag([c.form.entries for c in parts], scalars)
    real = [_embed(r, off, size) for c, off in zip(parts, offsets) for r in c.roots]
    delta = tuple(x for w in pieces for x in w)
    form = GramForm(gram)
    frame_names = tuple(n for c in parts for n in c.frame.names)
    frame_vecs = []
    width = 0
    for c in parts:
        for row in c.frame.vectors:
            frame_vecs.append(_embed(row, width, len(frame_names)))
        width += len(c.frame.names)
    labels = tuple(l for c in parts for l in c.basis_labels)
    skeleton = RootSupersystem(form, tuple(real), labels)
    if skeleton.norm(delta) != 0:
        raise AssertionError("form scaling failed to make the seed null")
    null = list(orbit(skeleton, delta))
    if symmetric:
        null += [neg(v) for v in null]
    return RootSupersystem(form, tuple(real + null), labels, label,
                           Frame(frame_names, tuple(frame_vecs)))


def _form_scalars(label: TypeLabel, norms: Sequence[Q]) -> List[Q]:
    if label.family == "D_21L":
        lam = label.lam
        # Keep every piece at the same standard norm, then weight by 1, lam, -(1+lam).
        return [Q(1), lam * norms[0] / norms[1], -(1 + lam) * norms[0] / norms[2]]
    if label.family == "D_2T":
        c2 = norms[0] / norms[1]
        return [Q(1), c2, -(norms[0] + c2 * norms[1]) / norms[2]]
    return [Q(1), -norms[0] / norms[1]]


# ------------------------------------------------------------ dispatch


@lru_cache(maxsize=None)
def construct(label: TypeLabel, t0: int = 1) -> RootSupersystem:
    """Build the catalog system named by ``label``."""
    f = label.family
    if f in ROOT_FAMILIES:
        return make_root_system(f, label.params[0])
    if f in EXCEPTIONAL:
        return make_exceptional(f)
    if f in IMAGINARY:
        return make_imaginary(label, t0)
    return make_real(label)


def alternate_a_ll(l: int) -> RootSupersystem:
    """A(l,l) presented with null roots ``+-(e'_i - d'_j)`` instead of ``+-(e'_i + d'_j)``.

    ``e'_i`` are the zero-sum shifts ``e_i - (e_1 + ... + e_(l+1))/(l+1)``; the
    ambient coordinates and form are those of ``construct(A(l,l))``.
    """
    base = construct(TypeLabel("A_ll", (l,)))
    shifted = [tuple((Q(1) if k == i else Q(0)) - Q(1, l + 1) for k in range(l))
               for i in range(l + 1)]
    null = []
    for a in shifted:
        for b in shifted:
            v = a + tuple(-x for x in b)
            null += [v, neg(v)]
    real = [r for r in base.roots if base.norm(r) != 0 or not any(r)]
    return RootSupersystem(base.form, tuple(real + null), base.basis_labels, None, base.frame)


def catalog_labels(max_size: int = 5) -> Iterator[TypeLabel]:
    """Every catalog label whose sizes are at most ``max_size``."""
    for f in ROOT_FAMILIES:
        for n in range(_MIN_RANK[f], max_size + 1):
            yield TypeLabel(f, (n,))
    for f in EXCEPTIONAL:
        yield TypeLabel(f)
    for f in ("A0T", "C0T"):
        for n in range(2, max_size + 1):
            yield TypeLabel(f, (n,))
    for m in range(2, max_size + 1):
        for n in range(2, max_size + 1):
            if m != n:
                yield TypeLabel("ATP", (m, n))
    for f in REAL_SUPER:
        if _PARAM_COUNT[f] == 0 and f != "D_21L":
            yield TypeLabel(f)
        elif _PARAM_COUNT[f] == 1:
            for n in range(1, max_size + 1):
                if _constraint_problem(f, (n,)) is None:
                    yield TypeLabel(f, (n,))
        elif _PARAM_COUNT[f] == 2:
            for m in range(1, max_size + 1):
                for n in range(1, max_size + 1):
                    if _constraint_problem(f, (m, n)) is None:
                        yield TypeLabel(f, (m, n))
    for lam in (Q(1), Q(2), Q(1, 2), Q(-2)):
        yield TypeLabel("D_21L", (), lam)
