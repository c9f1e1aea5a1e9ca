"""Ranked posets, their down and up operators, and fitting of relation constants.

For a ranked poset ``P`` the operators on the space with basis ``P`` are
``d(y) = sum of the elements covered by y`` and ``u(y) = sum of the
elements covering y``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import ParseError, PreconditionError
from .field import ZERO, QuadScalar, scalar
from .pbw import Params

Vector = dict[str, QuadScalar]


@dataclass
class RankedPoset:
    """Elements with ranks and the cover relation.

    ``truncated`` marks a finite cut of an infinite poset: the top ranks
    then lack some covers, which limits where relations can be checked.
    """

    elements: list[tuple[str, int]]
    covers: set[tuple[str, str]]
    truncated: bool = False
    _rank: dict[str, int] = field(init=False, repr=False)
    _down: dict[str, list[str]] = field(init=False, repr=False)
    _up: dict[str, list[str]] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._rank = {}
        for ident, r in self.elements:
            if ident in self._rank:
                raise PreconditionError("ids unique", f"duplicate element id {ident!r}")
            if r < 0:
                raise PreconditionError("ranks non-negative")
            self._rank[ident] = r
        self._down = {ident: [] for ident, _ in self.elements}
        self._up = {ident: [] for ident, _ in self.elements}
        for lo, hi in sorted(self.covers):
            if lo not in self._rank or hi not in self._rank:
                raise PreconditionError("cover pairs reference existing ids", f"unknown id in cover {(lo, hi)}")
            if self._rank[hi] != self._rank[lo] + 1:
                raise PreconditionError("covers increase rank by 1", f"bad cover {(lo, hi)}")
            self._down[hi].append(lo)
            self._up[lo].append(hi)

    @property
    def max_rank(self) -> int:
        return max(self._rank.values(), default=0)

    def rank(self, ident: str) -> int:
        return self._rank[ident]

    def ids(self) -> list[str]:
        return [i for i, _ in self.elements]

    def at_rank(self, r: int) -> list[str]:
        return [i for i, k in self.elements if k == r]

    def rank_sizes(self) -> list[int]:
        return [len(self.at_rank(r)) for r in range(self.max_rank + 1)]

    def down(self, ident: str) -> list[str]:
        return list(self._down[ident])

    def up(self, ident: str) -> list[str]:
        return list(self._up[ident])

    def to_json(self) -> dict:
        return {
            "elements": [{"id": i, "rank": r} for i, r in self.elements],
            "covers": [list(c) for c in sorted(self.covers)],
            "truncated": self.truncated,
        }


def load_poset(source) -> RankedPoset:
    """Build a poset from JSON text, a file path, or an already parsed dict."""
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        if not text.lstrip().startswith("{"):
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed poset JSON: {exc.msg}", text, exc.pos) from None
    try:
        elements = [(str(e["id"]), int(e["rank"])) for e in data["elements"]]
        covers = {(str(lo), str(hi)) for lo, hi in data.get("covers", [])}
        truncated = bool(data.get("truncated", False))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed poset data: {exc}") from None
    return RankedPoset(elements, covers, truncated)


def chain(length: int, truncated: bool = True) -> RankedPoset:
    """The chain ``0 < 1 < ... < length``."""
    elements = [(str(n), n) for n in range(length + 1)]
    covers = {(str(n), str(n + 1)) for n in range(length)}
    return RankedPoset(elements, covers, truncated)


# -- generators ----------------------------------------------------------


def _partitions(n: int, largest: Optional[int] = None) -> Iterable[tuple[int, ...]]:
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def _partition_id(p: tuple[int, ...]) -> str:
    return "(" + ",".join(map(str, p)) + ")"


def young_lattice(max_rank: int) -> RankedPoset:
    """Partitions of size at most ``max_rank``, ordered by inclusion of diagrams."""
    if max_rank < 0:
        raise PreconditionError("max_rank >= 0")
    elements, covers = [], set()
    for n in range(max_rank + 1):
        for p in _partitions(n):
            elements.append((_partition_id(p), n))
            if n == max_rank:
                continue
            for row in range(len(p) + 1):
                if row == len(p) or row == 0 or p[row - 1] > p[row]:
                    q = list(p) + ([0] if row == len(p) else [])
                    q[row] += 1
                    covers.add((_partition_id(p), _partition_id(tuple(q))))
    return RankedPoset(elements, covers, truncated=True)


def _span(vectors: Sequence[tuple[int, ...]], q: int, n: int) -> frozenset:
    out = {tuple([0] * n)}
    for v in vectors:
        out = {tuple((x + c * y) % q for x, y in zip(w, v)) for w in out for c in range(q)}
    return frozenset(out)


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % p for p in range(2, int(q**0.5) + 1))


def alt_forms_poset(q: int, n: int) -> RankedPoset:
    """Pairs ``(U, f)``: a subspace ``U`` of ``GF(q)^n`` and an alternating form on it.

    ``(U, f) <= (V, g)`` when ``U`` is a subspace of ``V`` and ``g`` restricts
    to ``f``; the rank is ``dim U``.  Forms are stored as value tables.
    """
    if not _is_prime(q) or q > 3 or n < 0 or n > 3:
        raise PreconditionError("q prime <= 3 and 0 <= n <= 3")
    vectors = list(itertools.product(range(q), repeat=n))
    subspaces = {0: {_span([], q, n): ()}}
    for k in range(n):
        nxt: dict[frozenset, tuple] = {}
        for U, basis in subspaces[k].items():
            for v in vectors:
                if v not in U:
                    W = _span(list(basis) + [v], q, n)
                    nxt.setdefault(W, tuple(basis) + (v,))
        subspaces[k + 1] = nxt

    def forms(U: frozenset, basis: tuple) -> list[tuple]:
        k = len(basis)
        coords = {}
        for cs in itertools.product(range(q), repeat=k):
            w = tuple(sum(c * b[i] for c, b in zip(cs, basis)) % q for i in range(n))
            coords[w] = cs
        pts = sorted(U)
        pairs = list(itertools.combinations(range(k), 2))
        out = []
        for vals in itertools.product(range(q), repeat=len(pairs)):
            gram = [[0] * k for _ in range(k)]
            for (i, j), val in zip(pairs, vals):
                gram[i][j], gram[j][i] = val, -val % q
            table = tuple(
                sum(coords[x][i] * coords[y][j] * gram[i][j] for i in range(k) for j in range(k)) % q
                for x in pts
                for y in pts
            )
            out.append((tuple(pts), table))
        return out

    nodes: dict[tuple, str] = {}
    elements = []
    for k in range(n + 1):
        keyed = sorted(f for U, basis in subspaces[k].items() for f in forms(U, basis))
        for idx, key in enumerate(keyed):
            ident = f"r{k}.{idx}"
            nodes[key] = ident
            elements.append((ident, k))

    covers = set()
    for (pts, table), ident in nodes.items():
        if len(pts) == 1:
            continue
        value = {(x, y): table[i * len(pts) + j] for i, x in enumerate(pts) for j, y in enumerate(pts)}
        for lower_pts in _hyperplanes(pts, q, n):
            sub = tuple(value[(x, y)] for x in lower_pts for y in lower_pts)
            covers.add((nodes[(lower_pts, sub)], ident))
    return RankedPoset(elements, covers, truncated=False)


def _dim(size: int, q: int) -> int:
    k = 0
    while q**k < size:
        k += 1
    return k


def _hyperplanes(pts: tuple, q: int, n: int) -> list[tuple]:
    """All codimension-one subspaces of the subspace with points ``pts``."""
    k = _dim(len(pts), q)
    target = q ** (k - 1)
    seen = set()
    for combo in itertools.combinations(pts, k - 1):
        H = _span(list(combo), q, n)
        if len(H) == target:
            seen.add(tuple(sorted(H)))
    return sorted(seen)


# -- operators -----------------------------------------------------------


def down_up_operators(p: RankedPoset) -> tuple[list[list[int]], list[list[int]]]:
    """Dense 0/1 matrices of ``d`` and ``u`` in the order of ``p.elements``."""
    ids = p.ids()
    pos = {i: n for n, i in enumerate(ids)}
    size = len(ids)
    d = [[0] * size for _ in range(size)]
    u = [[0] * size for _ in range(size)]
    for y in ids:
        for x in p.down(y):
            d[pos[x]][pos[y]] = 1
        for z in p.up(y):
            u[pos[z]][pos[y]] = 1
    return d, u


def _apply(p: RankedPoset, word: str, y: str) -> dict[str, int]:
    vec = {y: 1}
    for letter in reversed(word):
        out: dict[str, int] = {}
        for x, c in vec.items():
            for z in (p.down(x) if letter == "d" else p.up(x)):
                out[z] = out.get(z, 0) + c
        vec = {k: v for k, v in out.items() if v}
    return vec


def safe_ranks(p: RankedPoset) -> tuple[list[int], list[int]]:
    """Ranks where each relation can be checked honestly: all ranks for a
    complete poset; for a truncated one the top rank is excluded for the
    first relation and the top two for the second."""
    top = p.max_rank
    if not p.truncated:
        return list(range(top + 1)), list(range(top + 1))
    return list(range(top)), list(range(top - 1))


_RELATIONS = {"R1": ("ddu", "dud", "udd", "d"), "R2": ("duu", "udu", "uud", "u")}


@dataclass
class RelationReport:
    """``ok`` overall; ``per_rank[r][name]`` is ``True``/``False`` or ``None`` when not checked."""

    ok: bool
    per_rank: dict[int, dict[str, Optional[bool]]]
    failures: list[tuple[str, str]]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "per_rank": {str(r): v for r, v in self.per_rank.items()},
            "failures": [list(f) for f in self.failures],
        }


def check_relation(p: RankedPoset, params: Params) -> RelationReport:
    a, b, g = params.as_tuple()
    ranks = dict(zip(("R1", "R2"), safe_ranks(p)))
    per_rank: dict[int, dict[str, Optional[bool]]] = {r: {"R1": None, "R2": None} for r in range(p.max_rank + 1)}
    failures = []
    for name, (w0, w1, w2, w3) in _RELATIONS.items():
        for r in ranks[name]:
            good = True
            for y in p.at_rank(r):
                vs = [_apply(p, w, y) for w in (w0, w1, w2, w3)]
                keys = set().union(*vs)
                if any(vs[0].get(x, 0) - a * vs[1].get(x, 0) - b * vs[2].get(x, 0) - g * vs[3].get(x, 0) for x in keys):
                    good = False
                    failures.append((name, y))
            per_rank[r][name] = good
    return RelationReport(not failures, per_rank, failures)


def du_minus_ud(p: RankedPoset, y: str) -> dict[str, int]:
    """``(du - ud)(y)`` as a sparse vector."""
    out = dict(_apply(p, "du", y))
    for x, c in _apply(p, "ud", y).items():
        out[x] = out.get(x, 0) - c
    return {k: v for k, v in out.items() if v}


# -- fitting -------------------------------------------------------------


@dataclass(frozen=True)
class FitResult:
    """Exact solution set of the relation equations in ``(alpha, beta, gamma)``.

    ``kind`` is ``Empty``, ``Point`` or ``AffineFamily``; members are
    ``particular + sum t_i * basis[i]``.
    """

    kind: str
    particular: Optional[tuple[Fraction, Fraction, Fraction]] = None
    basis: tuple[tuple[Fraction, Fraction, Fraction], ...] = ()

    @property
    def dimension(self) -> int:
        return -1 if self.kind == "Empty" else len(self.basis)

    def member(self, *t: Fraction) -> Params:
        if self.particular is None:
            raise PreconditionError("non-empty solution set")
        vals = list(self.particular)
        for ti, vec in zip(t, self.basis):
            vals = [v + ti * x for v, x in zip(vals, vec)]
        return Params.of(*vals)

    def contains(self, params: Params) -> bool:
        if self.particular is None:
            return False
        target = [v.to_fraction() - x for v, x in zip(params.as_tuple(), self.particular)]
        return _in_span(target, self.basis)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "dimension": self.dimension,
            "particular": None if self.particular is None else [str(x) for x in self.particular],
            "basis": [[str(x) for x in v] for v in self.basis],
        }


def _in_span(target: list[Fraction], basis: Sequence[Sequence[Fraction]]) -> bool:
    # columns are the basis vectors, augmented by the target
    rows = [[v[i] for v in basis] + [target[i]] for i in range(len(target))]
    rref, _ = _rref(rows, len(basis))
    return not any(all(not x for x in row[:-1]) and row[-1] for row in rref)


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form of an augmented matrix; pivots among the first ``ncols`` columns."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def relation_equations(p: RankedPoset) -> list[list[Fraction]]:
    """Rows ``[A, B, C, rhs]`` meaning ``A*alpha + B*beta + C*gamma = rhs``."""
    rows = []
    ranks = dict(zip(("R1", "R2"), safe_ranks(p)))
    for name, (w0, w1, w2, w3) in _RELATIONS.items():
        for r in ranks[name]:
            for y in p.at_rank(r):
                vs = [_apply(p, w, y) for w in (w0, w1, w2, w3)]
                for x in sorted(set().union(*vs)):
                    rows.append([Fraction(vs[k].get(x, 0)) for k in (1, 2, 3)] + [Fraction(vs[0].get(x, 0))])
    return rows


def fit_parameters(p: RankedPoset) -> FitResult:
    r1, r2 = safe_ranks(p)
    if not r1 or not r2:
        raise PreconditionError("at least one safe rank for each relation")
    rref, pivots = _rref(relation_equations(p), 3)
    if any(all(not x for x in row[:3]) and row[3] for row in rref):
        return FitResult("Empty")
    particular = [Fraction(0)] * 3
    for row, c in zip(rref, pivots):
        particular[c] = row[3]
    free = [c for c in range(3) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * 3
        vec[f] = Fraction(1)
        for row, c in zip(rref, pivots):
            vec[c] = -row[f]
        basis.append(tuple(vec))
    kind = "Point" if not basis else "AffineFamily"
    return FitResult(kind, tuple(particular), tuple(basis))
