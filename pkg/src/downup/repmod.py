"""Matrix realizations of weight modules and their structure.

Every module family is realized on a finite window of its basis as a
:class:`TruncatedRep`.  Matrix column ``j`` is the image of basis vector
``j``.  Cutting an infinite module corrupts the action near the edges of
the window, so each rep records the positions where both defining
relations are guaranteed to hold.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import PreconditionError
from .field import ONE, ZERO, QuadScalar, ScalarLike, scalar
from .pbw import Element, Params, grade_decompose, is_central
from .weights import (
    ClosedForm,
    Orbit,
    Weight,
    bidirectional_seq,
    classify_coincidence,
    delta_map,
    kappa_seq,
    lambda_closed,
    lambda_seq,
    mu_map,
    periodic_terms_order,
    solve_recurrence,
)

Matrix = list[list[QuadScalar]]


def zeros(n: int) -> Matrix:
    return [[ZERO] * n for _ in range(n)]


def mat_vec(m: Matrix, v: Sequence[QuadScalar]) -> list[QuadScalar]:
    return [sum((row[j] * v[j] for j in range(len(v)) if row[j] and v[j]), ZERO) for row in m]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    cols = [[b[i][j] for i in range(n)] for j in range(n)]
    return [[sum((a[i][k] * col[k] for k in range(n) if a[i][k] and col[k]), ZERO) for col in cols] for i in range(n)]


def transpose(m: Matrix) -> Matrix:
    return [list(r) for r in zip(*m)] if m else []


@dataclass
class TruncatedRep:
    """Finite window of a module: labels, the matrices of ``d`` and ``u``,
    and the inclusive position range ``safe_range`` that is certified."""

    family: str
    basis: list
    d: Matrix
    u: Matrix
    safe_range: tuple[int, int]
    meta: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.basis)

    def safe_indices(self) -> range:
        lo, hi = self.safe_range
        return range(lo, hi + 1)

    def to_json(self) -> dict:
        label = lambda b: str(b) if isinstance(b, Weight) else b  # noqa: E731
        return {
            "basis": [label(b) for b in self.basis],
            "d": [[str(x) for x in row] for row in self.d],
            "u": [[str(x) for x in row] for row in self.u],
            "safe_range": list(self.safe_range),
        }


# -- relation checks -----------------------------------------------------


def _apply(rep: TruncatedRep, word: str, j: int) -> list[QuadScalar]:
    v = [ZERO] * rep.size
    v[j] = ONE
    for letter in reversed(word):
        v = mat_vec(rep.d if letter == "d" else rep.u, v)
    return v


def relation_residuals(params: Params, rep: TruncatedRep) -> dict[int, tuple[list[QuadScalar], list[QuadScalar]]]:
    """For each safe position, the images of the two relators applied to that basis vector."""
    a, b, g = params.as_tuple()
    out = {}
    for j in rep.safe_indices():
        w = {x: _apply(rep, x, j) for x in ("ddu", "dud", "udd", "d", "duu", "udu", "uud", "u")}
        r1 = [w["ddu"][i] - a * w["dud"][i] - b * w["udd"][i] - g * w["d"][i] for i in range(rep.size)]
        r2 = [w["duu"][i] - a * w["udu"][i] - b * w["uud"][i] - g * w["u"][i] for i in range(rep.size)]
        out[j] = (r1, r2)
    return out


def check_relations(params: Params, rep: TruncatedRep) -> bool:
    """True iff both relators annihilate every safe basis vector exactly."""
    return all(not any(r1) and not any(r2) for r1, r2 in relation_residuals(params, rep).values())


# -- constructors --------------------------------------------------------


def verma_matrices(params: Params, lam: ScalarLike, N: int) -> TruncatedRep:
    """``V(lam)`` on ``v_0..v_N``: ``d v_n = lambda_{n-1} v_{n-1}``, ``u v_n = v_{n+1}``, ``u v_N = 0``."""
    if N < 2:
        raise PreconditionError("N >= 2")
    lam_n = lambda_seq(params, lam, N)
    d, u = zeros(N + 1), zeros(N + 1)
    for n in range(1, N + 1):
        d[n - 1][n] = lam_n[n - 1]
    for n in range(N):
        u[n + 1][n] = ONE
    return TruncatedRep("verma", list(range(N + 1)), d, u, (0, N - 2), {"weights": lam_n, "lambda": scalar(lam)})


def lowest_weight_matrices(params: Params, kappa: ScalarLike, N: int) -> TruncatedRep:
    """``W(kappa)`` on ``w_0..w_N``: ``u w_n = kappa_{n-1} w_{n-1}``, ``d w_n = w_{n+1}``, ``d w_N = 0``."""
    if N < 2:
        raise PreconditionError("N >= 2")
    k = kappa_seq(params, kappa, N)
    d, u = zeros(N + 1), zeros(N + 1)
    for n in range(1, N + 1):
        u[n - 1][n] = k[n - 1]
    for n in range(N):
        d[n + 1][n] = ONE
    return TruncatedRep("lowest", list(range(N + 1)), d, u, (0, N - 2), {"weights": k, "kappa": scalar(kappa)})


def doubly_infinite_matrices(params: Params, kappa: ScalarLike, lam: ScalarLike, N: int) -> TruncatedRep:
    """``V(kappa, lam)`` on ``v_{-N}..v_N`` with ``lambda_{-1} = kappa``, ``lambda_0 = lam``."""
    if not params.beta:
        raise PreconditionError("beta != 0")
    if N < 2:
        raise PreconditionError("N >= 2")
    w = bidirectional_seq(params, kappa, lam, N)
    labels = list(range(-N, N + 1))
    size = 2 * N + 1
    d, u = zeros(size), zeros(size)
    for pos in range(1, size):
        d[pos - 1][pos] = w[labels[pos] - 1]
    for pos in range(size - 1):
        u[pos + 1][pos] = ONE
    meta = {"weights": w, "kappa": scalar(kappa), "lambda": scalar(lam)}
    return TruncatedRep("double", labels, d, u, (2, size - 3), meta)


def nf_module(params: Params, F: Orbit | Sequence[Weight], rho: ScalarLike) -> TruncatedRep:
    """The module on a finite weight set closed under both weight maps.

    ``d v_w = rho v_{delta(w)}`` and ``u v_w = rho^{-1} w' v_{mu(w)}``.
    ``meta["simple"]`` holds when every weight has nonzero first entry;
    otherwise ``meta["structure"]`` notes the lowest weight structure.
    """
    if not params.beta:
        raise PreconditionError("beta != 0")
    rho = scalar(rho)
    if not rho:
        raise PreconditionError("rho != 0")
    weights = list(F.weights if isinstance(F, Orbit) else F)
    if isinstance(F, Orbit) and not F.periodic:
        raise PreconditionError("F closed under delta and mu", "orbit has no period")
    index = {w: i for i, w in enumerate(weights)}
    if len(index) != len(weights):
        raise PreconditionError("F has no repeated weights")
    size = len(weights)
    d, u = zeros(size), zeros(size)
    for i, w in enumerate(weights):
        dw, uw = delta_map(params, w), mu_map(params, w)
        if dw not in index or uw not in index:
            raise PreconditionError("F closed under delta and mu")
        d[index[dw]][i] = rho
        u[index[uw]][i] = w.nu1 / rho
    simple = all(w.nu1 for w in weights)
    structure = "simple" if simple else "finite-dimensional lowest weight"
    return TruncatedRep("nf", weights, d, u, (0, size - 1), {"simple": simple, "structure": structure, "rho": rho})


def invariant_coordinate_subspaces(rep: TruncatedRep) -> list[tuple[int, ...]]:
    """Nonempty proper position sets whose span is stable under ``d`` and ``u`` (brute force)."""
    n = rep.size
    found = []
    for mask in range(1, (1 << n) - 1):
        pos = {i for i in range(n) if mask >> i & 1}
        ok = all(not m[r][c] for m in (rep.d, rep.u) for c in pos for r in range(n) if r not in pos)
        if ok:
            found.append(tuple(sorted(pos)))
    return found


# -- duals ---------------------------------------------------------------


def dual_rep(params: Params, rep: TruncatedRep, weights: Optional[Sequence[QuadScalar]] = None) -> TruncatedRep:
    """The finite dual on the same window.

    ``x`` acts on the dual through the antiautomorphism swapping ``d`` and
    ``u``, so the dual matrices are ``d* = u^T`` and ``u* = d^T``.  When
    the weights along the window are nonzero, ``meta["intertwiner"]`` is the
    diagonal ``T`` with ``T d* = d T`` and ``T u* = u T``.
    """
    if rep.family not in ("verma", "lowest", "double"):
        raise PreconditionError("rep is a Verma, lowest weight or doubly-infinite module")
    meta = dict(rep.meta)
    meta["dual_of"] = rep.family
    ws = list(weights) if weights is not None else _window_weights(rep)
    if all(ws[:-1]):
        diag, prod = [], ONE
        for n in range(rep.size):
            diag.append(1 / prod)
            if n < rep.size - 1:
                prod = prod * ws[n]
        meta["intertwiner"] = diag
    return TruncatedRep(rep.family, list(rep.basis), transpose(rep.u), transpose(rep.d), rep.safe_range, meta)


def _window_weights(rep: TruncatedRep) -> list[QuadScalar]:
    # the scalar attached to the step from position n to n+1
    w = rep.meta["weights"]
    if rep.family == "double":
        return [w[label] for label in rep.basis]
    return list(w)


def diagonal(entries: Sequence[QuadScalar]) -> Matrix:
    m = zeros(len(entries))
    for i, e in enumerate(entries):
        m[i][i] = e
    return m


# -- simplicity ----------------------------------------------------------


@dataclass(frozen=True)
class SimplicityVerdict:
    """``tag`` is ``Simple``, ``NotSimple`` (with first zero ``index``) or
    ``UndecidedUpTo`` (with ``bound``); ``reason`` names the certificate."""

    tag: str
    index: Optional[int] = None
    bound: Optional[int] = None
    reason: str = ""

    def __str__(self) -> str:
        if self.tag == "NotSimple":
            return f"NotSimple m={self.index}" if self.index is not None else "NotSimple"
        if self.tag == "UndecidedUpTo":
            return f"UndecidedUpTo({self.bound})"
        return "Simple"

    def to_json(self) -> dict:
        return {"tag": self.tag, "index": self.index, "bound": self.bound, "reason": self.reason}


GROWTH_LIMIT = 1 << 12


def nonvanishing_from(cf: ClosedForm) -> Optional[int]:
    """An ``n0`` with ``y_n != 0`` for all ``n >= n0``, by a dominant-term argument.

    Needs real terms with a unique dominant one (largest ``|root|``, then
    largest power of ``n``).  At ``n0`` every other term's ratio to the
    dominant one must be non-increasing in ``n`` and the ratios must sum
    to less than 1; then the dominant term outweighs the rest for good.
    """
    terms = [(c, e, r) for c, e, r in cf.terms() if not r.is_zero()]
    if not terms:
        return None
    if not all(c.is_real() and r.is_real() for c, e, r in terms):
        return None
    mags = [(abs(r), e) for c, e, r in terms]
    top = max(m for m, _ in mags)
    top_e = max(e for m, e in mags if m == top)
    dom = [t for t, (m, e) in zip(terms, mags) if m == top and e == top_e]
    if len(dom) != 1:
        return None
    cd, ed, rd = dom[0]
    rest = [(abs(c / cd), e - ed, abs(r) / abs(rd)) for c, e, r in terms if (c, e, r) != dom[0]]
    n0 = 1
    while n0 <= GROWTH_LIMIT:
        ok = True
        total = ZERO
        for k, de, q in rest:
            # ratio(n+1)/ratio(n) = ((n+1)/n)^de * q <= 1 from n0 on
            step = QuadScalar(n0 + 1, 0) ** de * QuadScalar(n0) ** (-de) * q if de >= 0 else None
            if step is not None and step > 1:
                ok = False
                break
            total = total + k * QuadScalar(n0) ** de * q**n0
        if ok and total < 1:
            return n0
        n0 *= 2
    return None


def _scan_zero(seq: Sequence[QuadScalar]) -> Optional[int]:
    for n, v in enumerate(seq):
        if not v:
            return n
    return None


def verma_is_simple(params: Params, lam: ScalarLike, bound: int = 64) -> SimplicityVerdict:
    """Decide simplicity of ``V(lam)``: it is simple iff no ``lambda_n`` vanishes.

    ``NotSimple`` is reported at the first zero.  ``Simple`` needs a
    certificate: the weight pairs repeat (periodic sequence, all values
    seen) or a dominant-term bound from the closed form.
    """
    if bound < 1:
        raise PreconditionError("bound >= 1")
    seq = lambda_seq(params, lam, bound)
    m = _scan_zero(seq)
    if m is not None:
        return SimplicityVerdict("NotSimple", index=m, reason="zero weight")
    try:
        cf = lambda_closed(params, lam)
    except PreconditionError:
        return SimplicityVerdict("UndecidedUpTo", bound=bound)
    if periodic_terms_order(cf) is not None:
        rep = classify_coincidence(params, lam)
        seq = lambda_seq(params, lam, max(bound, rep.witness_l))
        m = _scan_zero(seq)
        if m is not None:
            return SimplicityVerdict("NotSimple", index=m, reason="zero weight")
        return SimplicityVerdict("Simple", reason=f"weights periodic with period {rep.period}")
    n0 = nonvanishing_from(cf)
    if n0 is None:
        return SimplicityVerdict("UndecidedUpTo", bound=bound)
    if n0 > bound:
        m = _scan_zero(lambda_seq(params, lam, n0))
        if m is not None:
            return SimplicityVerdict("NotSimple", index=m, reason="zero weight")
    return SimplicityVerdict("Simple", reason=f"dominant closed-form term from n={n0}")


def double_is_simple(params: Params, kappa: ScalarLike, lam: ScalarLike, bound: int = 64) -> SimplicityVerdict:
    """Simplicity of the doubly-infinite module ``V(kappa, lam)``.

    A zero ``lambda_m`` makes ``span{v_n : n > m}`` a submodule.  Periodic
    weights make ``u^p`` a module endomorphism, and ``(u^p - 1)V`` is then
    a proper submodule.  Otherwise all weights are distinct and the module
    is simple once no weight vanishes, which is certified by dominant-term
    bounds in both directions.
    """
    if not params.beta:
        raise PreconditionError("beta != 0")
    w = bidirectional_seq(params, kappa, lam, bound)
    for n in sorted(w, key=abs):
        if not w[n]:
            return SimplicityVerdict("NotSimple", index=n, reason="zero weight")
    a, b, g = params.as_tuple()
    try:
        fwd = solve_recurrence(a, b, g, lam, kappa)
        back = solve_recurrence(-a / b, 1 / b, -g / b, kappa, lam)
    except PreconditionError:
        return SimplicityVerdict("UndecidedUpTo", bound=bound)
    if periodic_terms_order(fwd) is not None:
        return SimplicityVerdict("NotSimple", reason="weights periodic")
    n_fwd, n_back = nonvanishing_from(fwd), nonvanishing_from(back)
    if n_fwd is None or n_back is None:
        return SimplicityVerdict("UndecidedUpTo", bound=bound)
    reach = max(n_fwd, n_back + 1)
    if reach > bound:
        w = bidirectional_seq(params, kappa, lam, reach)
        for n in sorted(w, key=abs):
            if not w[n]:
                return SimplicityVerdict("NotSimple", index=n, reason="zero weight")
    return SimplicityVerdict("Simple", reason="all weights distinct and nonzero")


# -- submodules ----------------------------------------------------------


@dataclass(frozen=True)
class SubmoduleReport:
    """Submodule structure of ``V(lambda)``.

    ``tag``: ``AllSimple``, ``UniqueMaximal`` (first zero ``m``; the maximal
    submodule is the tail from ``m+1``, isomorphic to ``V(lambda_{m+1})``),
    ``FamilyOverC`` (all weights zero; maximal submodules ``N^(x - xi)``),
    ``PeriodicFamily`` (period ``p``, first zero ``m``) or ``Undecided``.
    """

    tag: str
    m: Optional[int] = None
    period: Optional[int] = None
    tail_start: Optional[int] = None
    tail_lambda: Optional[QuadScalar] = None
    descriptors: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "m": self.m,
            "period": self.period,
            "tail_start": self.tail_start,
            "tail_lambda": None if self.tail_lambda is None else str(self.tail_lambda),
            "descriptors": list(self.descriptors),
        }


def submodule_report(params: Params, lam: ScalarLike, bound: int = 64) -> SubmoduleReport:
    lam = scalar(lam)
    if not params.gamma and not lam:
        return SubmoduleReport(
            "FamilyOverC",
            m=0,
            period=1,
            tail_start=1,
            tail_lambda=ZERO,
            descriptors=("N^(x - xi) for each scalar xi", "M(0) = N^(x)", "L(0, xi) = V(0)/N^(x - xi)"),
        )
    coincidence = classify_coincidence(params, lam)
    verdict = verma_is_simple(params, lam, bound)
    if verdict.tag == "Simple":
        return SubmoduleReport("AllSimple", descriptors=("V(lambda) is simple",))
    if verdict.tag == "UndecidedUpTo":
        return SubmoduleReport("Undecided", descriptors=(f"no zero weight up to n={bound}",))
    m = verdict.index
    tail = lambda_seq(params, lam, m + 1)[m + 1]
    if coincidence.coincides:
        p = coincidence.period
        return SubmoduleReport(
            "PeriodicFamily",
            m=m,
            period=p,
            tail_start=m + 1,
            tail_lambda=tail,
            descriptors=(f"N^(g(x^{p}))", f"N^(x^{m + 1} g(x^{p}))", f"M(lambda) = N^(x^{m + 1})"),
        )
    return SubmoduleReport(
        "UniqueMaximal",
        m=m,
        tail_start=m + 1,
        tail_lambda=tail,
        descriptors=(f"M(lambda) = span{{v_j : j >= {m + 1}}}", f"M(lambda) = V({tail})"),
    )


# -- central characters --------------------------------------------------


def central_character(params: Params, z: Element, lam: ScalarLike) -> QuadScalar:
    """Scalar by which the central element ``z`` acts on ``V(lam)``.

    Only the ``(du)^j`` components act on ``v_0`` (each by ``lam^j``).
    """
    if not is_central(params, z):
        raise PreconditionError("z is central")
    parts = grade_decompose(z)
    if any(n != 0 for n in parts):
        raise PreconditionError("z lies in the degree-0 subalgebra")
    lam = scalar(lam)
    return sum((c * lam**j for (i, j, k), c in z.items() if i == 0 and k == 0), ZERO)


# -- one-dimensional modules ---------------------------------------------


@dataclass(frozen=True)
class OneDimFamily:
    """One-dimensional modules ``d = [a]``, ``u = [b]``; they satisfy
    ``(1 - alpha - beta) a b = gamma`` or ``a = b = 0``."""

    case: str
    description: str
    params: Params

    def contains(self, a: ScalarLike, b: ScalarLike) -> bool:
        a, b = scalar(a), scalar(b)
        if not a and not b:
            return True
        al, be, g = self.params.as_tuple()
        return (1 - al - be) * a * b == g

    def sample(self, rng: random.Random, k: int) -> list[tuple[QuadScalar, QuadScalar]]:
        def rnd() -> QuadScalar:
            return QuadScalar(rng.randint(-9, 9)) / rng.randint(1, 5)

        out: list[tuple[QuadScalar, QuadScalar]] = []
        al, be, g = self.params.as_tuple()
        while len(out) < k:
            if self.case == "a":
                out.append((rnd(), rnd()))
            elif self.case == "b":
                x = rnd()
                out.append((x, ZERO) if rng.random() < 0.5 else (ZERO, x))
            elif self.case == "c":
                a = rnd()
                out.append((a, g / ((1 - al - be) * a)) if a else (ZERO, ZERO))
            else:
                out.append((ZERO, ZERO))
        return out

    def to_json(self) -> dict:
        return {"case": self.case, "description": self.description}


def one_dim_modules(params: Params) -> OneDimFamily:
    a, b, g = params.as_tuple()
    s = 1 - a - b
    if not g and not s:
        return OneDimFamily("a", "all (a, b)", params)
    if not g:
        return OneDimFamily("b", "{(a, 0)} union {(0, b)}", params)
    if s:
        return OneDimFamily("c", f"{{(a, {g / s}/a) : a != 0}} plus the trivial module (0, 0)", params)
    return OneDimFamily("d", "only (0, 0)", params)


def one_dim_rep(a: ScalarLike, b: ScalarLike) -> TruncatedRep:
    return TruncatedRep("onedim", [0], [[scalar(a)]], [[scalar(b)]], (0, 0))


def iso_obstruction(p1: Params, p2: Params) -> str:
    """``Distinguished`` when the one-dimensional modules prove non-isomorphism."""
    zero_g = (not p1.gamma) != (not p2.gamma)
    sum_one = (p1.alpha + p1.beta == 1) != (p2.alpha + p2.beta == 1)
    return "Distinguished" if zero_g or sum_one else "NotDistinguished"
