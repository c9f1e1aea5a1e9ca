"""Weight sequences of highest, lowest and orbit weight modules.

A highest weight ``lambda`` generates the sequence

    lambda_n = alpha*lambda_{n-1} + beta*lambda_{n-2} + gamma,  lambda_{-1} = 0,

and a lowest weight ``kappa`` the sequence

    kappa_n = (-alpha*kappa_{n-1} + kappa_{n-2} - gamma) / beta,  kappa_{-1} = 0.

Both are instances of ``y_n = a1*y_{n-1} + a2*y_{n-2} + g``, solved here in
closed form ``c1*r1^n + c2*r2^n + x_n`` (or ``(c1 + c2*n)*s^n + x_n`` for a
repeated root).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import PreconditionError
from .field import ONE, ZERO, QuadScalar, ScalarLike, root_of_unity_order, scalar, sqrt_in_field
from .pbw import Params

DEFAULT_SCAN = 48


@dataclass(frozen=True)
class Weight:
    """Eigenvalue pair ``(nu1, nu2)`` of ``(du, ud)``."""

    nu1: QuadScalar
    nu2: QuadScalar

    def __post_init__(self) -> None:
        object.__setattr__(self, "nu1", scalar(self.nu1))
        object.__setattr__(self, "nu2", scalar(self.nu2))

    @classmethod
    def of(cls, nu1: ScalarLike, nu2: ScalarLike) -> "Weight":
        return cls(scalar(nu1), scalar(nu2))

    def __str__(self) -> str:
        return f"({self.nu1},{self.nu2})"


# -- recurrences ---------------------------------------------------------


def _iterate(a1, a2, g, y0, y_prev, n_max: int) -> list[QuadScalar]:
    if n_max < 0:
        raise PreconditionError("n_max >= 0")
    out = [scalar(y0)]
    prev = scalar(y_prev)
    for _ in range(n_max):
        nxt = a1 * out[-1] + a2 * prev + g
        prev = out[-1]
        out.append(nxt)
    return out


def lambda_seq(params: Params, lam: ScalarLike, n_max: int) -> list[QuadScalar]:
    """``[lambda_0, ..., lambda_{n_max}]`` with ``lambda_{-1} = 0``."""
    a, b, g = params.as_tuple()
    return _iterate(a, b, g, lam, ZERO, n_max)


def kappa_seq(params: Params, kappa: ScalarLike, n_max: int) -> list[QuadScalar]:
    """``[kappa_0, ..., kappa_{n_max}]`` for the lowest weight ``kappa``.

    With ``beta == 0`` the sequence exists only for ``kappa == -gamma/alpha``
    (``alpha != 0``), where ``kappa_n = -gamma * sum_{j=1}^{n+1} alpha^{-j}``.
    For ``alpha == beta == 0`` it is identically zero when ``gamma == 0``;
    when ``gamma != 0`` only the one-dimensional module (``kappa == 0``,
    ``n_max == 0``) exists.
    """
    a, b, g = params.as_tuple()
    kappa = scalar(kappa)
    if n_max < 0:
        raise PreconditionError("n_max >= 0")
    if b:
        return _iterate(-a / b, 1 / b, -g / b, kappa, ZERO, n_max)
    if a:
        if kappa != -g / a:
            raise PreconditionError("kappa == -gamma/alpha", f"with beta == 0 the lowest weight must be {-g / a}")
        out = [kappa]
        for _ in range(n_max):
            out.append((out[-1] - g) / a)
        return out
    if kappa:
        raise PreconditionError("kappa == 0", "with alpha == beta == 0 the lowest weight must be 0")
    if g and n_max > 0:
        raise PreconditionError("gamma == 0", "A(0,0,gamma) with gamma != 0 has only the 1-dimensional lowest weight module")
    return [ZERO] * (n_max + 1)


def bidirectional_seq(params: Params, kappa: ScalarLike, lam: ScalarLike, N: int) -> dict[int, QuadScalar]:
    """``{n: lambda_n}`` for ``-N-1 <= n <= N`` with ``lambda_{-1} = kappa``, ``lambda_0 = lam``."""
    a, b, g = params.as_tuple()
    if not b:
        raise PreconditionError("beta != 0")
    fwd = _iterate(a, b, g, lam, kappa, N)
    back = _iterate(-a / b, 1 / b, -g / b, kappa, lam, N)
    out = {n: v for n, v in enumerate(fwd)}
    for m, v in enumerate(back):
        out[-1 - m] = v
    return out


# -- closed forms --------------------------------------------------------


@dataclass(frozen=True)
class ClosedForm:
    """Closed form of a second order linear recurrence with constant inhomogeneity.

    ``case`` is ``"distinct-roots"`` (``c1*r1^n + c2*r2^n + x_n``),
    ``"repeated-root"`` (``(c1 + c2*n)*s^n + x_n``) or ``"both-zero"``
    (``c1*0^n + x_n``, i.e. ``y_n = x_n`` for ``n >= 1``).  The particular
    part is ``x_coeff * n^e`` with ``e`` = 0, 1, 2 for ``x_kind`` constant,
    linear, quadratic.  ``0^0`` is 1.
    """

    case: str
    c1: QuadScalar
    c2: QuadScalar
    x_kind: str
    x_coeff: QuadScalar
    r1: Optional[QuadScalar] = None
    r2: Optional[QuadScalar] = None
    s: Optional[QuadScalar] = None

    def particular(self, n: int) -> QuadScalar:
        e = {"constant": 0, "linear": 1, "quadratic": 2}[self.x_kind]
        return self.x_coeff * n**e

    def evaluate(self, n: int) -> QuadScalar:
        if n < 0:
            raise ValueError("closed forms are evaluated at n >= 0")
        x = self.particular(n)
        if self.case == "distinct-roots":
            return self.c1 * self.r1**n + self.c2 * self.r2**n + x
        if self.case == "repeated-root":
            return (self.c1 + self.c2 * n) * self.s**n + x
        return (self.c1 if n == 0 else ZERO) + x

    def terms(self) -> list[tuple[QuadScalar, int, QuadScalar]]:
        """Nonzero ``(coefficient, e, root)`` triples with ``y_n = sum coeff * n^e * root^n``.

        Zero roots are included (they only contribute at ``n = 0``); equal
        ``(e, root)`` pairs are merged.
        """
        raw: list[tuple[QuadScalar, int, QuadScalar]] = []
        if self.case == "distinct-roots":
            raw += [(self.c1, 0, self.r1), (self.c2, 0, self.r2)]
        elif self.case == "repeated-root":
            raw += [(self.c1, 0, self.s), (self.c2, 1, self.s)]
        else:
            raw.append((self.c1, 0, ZERO))
        e = {"constant": 0, "linear": 1, "quadratic": 2}[self.x_kind]
        raw.append((self.x_coeff, e, ONE))
        merged: dict[tuple[int, QuadScalar], QuadScalar] = {}
        for c, e, r in raw:
            merged[(e, r)] = merged.get((e, r), ZERO) + c
        return [(c, e, r) for (e, r), c in merged.items() if c]

    def to_json(self) -> dict:
        txt = lambda v: None if v is None else str(v)  # noqa: E731
        return {
            "case": self.case,
            "r1": txt(self.r1),
            "r2": txt(self.r2),
            "s": txt(self.s),
            "c1": str(self.c1),
            "c2": str(self.c2),
            "x_kind": self.x_kind,
            "x_coeff": str(self.x_coeff),
        }


def _require_rational(*values: QuadScalar) -> None:
    if not all(v.is_rational() for v in values):
        raise PreconditionError("rational alpha, beta, gamma", "closed forms need rational parameters")


def solve_recurrence(a1: ScalarLike, a2: ScalarLike, g: ScalarLike, y0: ScalarLike, y_prev: ScalarLike = 0) -> ClosedForm:
    """Closed form of ``y_n = a1*y_{n-1} + a2*y_{n-2} + g`` from ``y_0`` and ``y_{-1}``."""
    a1, a2, g, y0, y_prev = (scalar(v) for v in (a1, a2, g, y0, y_prev))
    _require_rational(a1, a2, g)
    y1 = a1 * y0 + a2 * y_prev + g

    if 1 - a1 - a2:
        kind, xc = "constant", g / (1 - a1 - a2)
    elif 2 - a1:
        kind, xc = "linear", g / (2 - a1)
    else:
        kind, xc = "quadratic", g / 2
    e = {"constant": 0, "linear": 1, "quadratic": 2}[kind]
    z0 = y0 - (xc if e == 0 else ZERO)
    z1 = y1 - xc

    disc = a1 * a1 + 4 * a2
    if disc:
        t = sqrt_in_field(disc / 4)
        r1, r2 = a1 / 2 + t, a1 / 2 - t
        c1 = (z1 - r2 * z0) / (r1 - r2)
        c2 = (r1 * z0 - z1) / (r1 - r2)
        return ClosedForm("distinct-roots", c1, c2, kind, xc, r1=r1, r2=r2)
    if a1:
        s = a1 / 2
        c1 = z0
        c2 = z1 / s - z0
        return ClosedForm("repeated-root", c1, c2, kind, xc, s=s)
    # a1 == a2 == 0: y_n = g for n >= 1
    return ClosedForm("both-zero", y0 - g, ZERO, "constant", g)


def lambda_closed(params: Params, lam: ScalarLike) -> ClosedForm:
    a, b, g = params.as_tuple()
    return solve_recurrence(a, b, g, lam, 0)


def kappa_closed(params: Params, kappa: ScalarLike) -> ClosedForm:
    """Closed form of the lowest weight sequence; needs ``beta != 0``.

    The characteristic roots are ``-alpha/(2 beta) +- t`` with
    ``t^2 = (alpha^2 + 4 beta) / (4 beta^2)``.
    """
    a, b, g = params.as_tuple()
    if not b:
        raise PreconditionError("beta != 0")
    return solve_recurrence(-a / b, 1 / b, -g / b, kappa, 0)


# -- weight maps ---------------------------------------------------------


def delta_map(params: Params, nu: Weight) -> Weight:
    """Weight of ``d.m`` for ``m`` of weight ``nu``."""
    a, b, g = params.as_tuple()
    if not b:
        raise PreconditionError("beta != 0")
    return Weight(nu.nu2, (nu.nu1 - a * nu.nu2 - g) / b)


def mu_map(params: Params, nu: Weight) -> Weight:
    """Weight of ``u.m`` for ``m`` of weight ``nu``."""
    a, b, g = params.as_tuple()
    return Weight(a * nu.nu1 + b * nu.nu2 + g, nu.nu1)


@dataclass(frozen=True)
class Orbit:
    """Result of iterating ``delta``: ``weights`` is the finite orbit when
    ``periodic`` (then ``period == len(weights)``), else the visited prefix."""

    weights: tuple[Weight, ...]
    periodic: bool
    period: Optional[int] = None


def orbit(params: Params, nu: Weight, bound: int) -> Orbit:
    if not params.beta:
        raise PreconditionError("beta != 0")
    seen = [nu]
    cur = nu
    for p in range(1, bound + 1):
        cur = delta_map(params, cur)
        if cur == nu:
            return Orbit(tuple(seen), True, p)
        seen.append(cur)
    return Orbit(tuple(seen[:bound]), False)


# -- coincidences --------------------------------------------------------


@dataclass(frozen=True)
class CoincidenceReport:
    """Whether two weights ``(lambda_l, lambda_{l-1}) = (lambda_k, lambda_{k-1})``
    coincide for some ``l > k``.

    ``case`` is one of a1 a2 a3 a4 b1 b2 c1 c2 d e or ``"no-coincidence"``.
    ``period`` is the least ``p`` with ``lambda_{n+p} = lambda_n`` for all
    ``n >= witness_k - 1``; ``(witness_k, witness_l)`` is the first
    coincidence, with ``witness_l = witness_k + period``.
    """

    case: str
    period: Optional[int] = None
    witness_k: Optional[int] = None
    witness_l: Optional[int] = None
    many_simple_vermas: bool = False

    @property
    def coincides(self) -> bool:
        return self.case != "no-coincidence"

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "period": self.period,
            "witness_k": self.witness_k,
            "witness_l": self.witness_l,
            "many_simple_vermas": self.many_simple_vermas,
        }


def periodic_terms_order(cf: ClosedForm) -> Optional[int]:
    """Least ``p`` with ``y_{n+p} = y_n`` for all ``n >= 1``, or ``None``.

    The terms ``n^e r^n`` with distinct ``(e, r)`` are linearly independent
    on every tail, so the tail is periodic exactly when each surviving term
    has ``e == 0`` and a root of unity as its root.
    """
    p = 1
    for c, e, r in cf.terms():
        if r.is_zero():
            continue
        if e:
            return None
        order = root_of_unity_order(r)
        if order is None:
            return None
        p = p * order // math.gcd(p, order)
    return p


def _first_repeat(seq: Sequence[QuadScalar], prev: QuadScalar, p: int) -> Optional[int]:
    pairs = [(seq[0], prev)] + [(seq[n], seq[n - 1]) for n in range(1, len(seq))]
    for k in range(len(pairs) - p):
        if pairs[k] == pairs[k + p]:
            return k
    return None


def _label(params: Params, lam: QuadScalar, cf: ClosedForm) -> str:
    a, b, g = params.as_tuple()
    if not a and not b:
        return "e"
    disc = a * a + 4 * b
    if not disc:
        if a == 2:
            return "d"
        return "c1" if not g and not lam else "c2"
    if a + b == 1:
        return "b1" if not lam or a == 1 else "b2"
    live = [r for c, e, r in cf.terms() if not r.is_zero() and r != 1]
    if not live:
        return "a1" if not g else "a2"
    return "a3" if len(live) == 1 else "a4"


def many_simple_vermas(params: Params) -> bool:
    """Sufficient condition for infinitely many simple Verma modules.

    True when the discriminant ``alpha^2 + 4 beta`` is nonzero and
    ``r1/r2`` is not a root of unity (always so when ``beta == 0``), when
    the discriminant vanishes with ``alpha != 0``, or when
    ``alpha == beta == 0 != gamma``.
    """
    a, b, g = params.as_tuple()
    _require_rational(a, b, g)
    disc = a * a + 4 * b
    if disc:
        if not b:
            return True
        cf = solve_recurrence(a, b, 0, 1)
        return root_of_unity_order(cf.r1 / cf.r2) is None
    if a:
        return True
    return bool(g)


def classify_coincidence(params: Params, lam: ScalarLike) -> CoincidenceReport:
    """Decide from the closed form whether the weights of ``V(lam)`` repeat."""
    lam = scalar(lam)
    cf = lambda_closed(params, lam)
    many = many_simple_vermas(params)
    p = periodic_terms_order(cf)
    if p is None:
        return CoincidenceReport("no-coincidence", many_simple_vermas=many)
    # preperiod is at most 2 (zero roots and lambda_{-1} = 0 only touch n <= 1)
    seq = lambda_seq(params, lam, p + 3)
    k = _first_repeat(seq, ZERO, p)
    assert k is not None, "periodic closed form without a repeated weight pair"
    return CoincidenceReport(_label(params, lam, cf), p, k, k + p, many)


def brute_force_coincidence(params: Params, lam: ScalarLike, bound: int = DEFAULT_SCAN) -> Optional[tuple[int, int]]:
    """First ``(k, l)``, ``0 <= k < l <= bound``, with equal weight pairs, by direct scan."""
    seq = lambda_seq(params, lam, bound)
    pairs = [(seq[0], ZERO)] + [(seq[n], seq[n - 1]) for n in range(1, bound + 1)]
    first: dict[tuple[QuadScalar, QuadScalar], int] = {}
    for n, pair in enumerate(pairs):
        if pair in first:
            return first[pair], n
        first[pair] = n
    return None


def linked(params: Params, pi: ScalarLike, lam: ScalarLike, bound: int = DEFAULT_SCAN) -> bool:
    """True iff ``pi = lambda_{n+1}`` for some ``n <= bound`` with ``lambda_n = 0``."""
    if bound < 0:
        raise PreconditionError("bound >= 0")
    pi = scalar(pi)
    seq = lambda_seq(params, lam, bound + 1)
    return any(not seq[n] and seq[n + 1] == pi for n in range(bound + 1))


# -- parameter conversions -----------------------------------------------


def _check(ok: bool, condition: str) -> None:
    if not ok:
        raise PreconditionError(condition)


def from_witten(xi: Sequence[ScalarLike]) -> Params:
    """Parameters of the Witten deformation algebra with constants ``xi_1..xi_7``."""
    if len(xi) != 7:
        raise PreconditionError("seven parameters xi_1..xi_7")
    x1, x2, x3, x4, x5, x6, x7 = (scalar(v) for v in xi)
    _check(not x6, "xi_6 == 0")
    _check(bool(x5 * x7), "xi_5*xi_7 != 0")
    _check(x1 == x3, "xi_1 == xi_3")
    _check(x2 == x4, "xi_2 == xi_4")
    return Params((1 + x1 * x5) / x5, -x1 / x5, -x2 * x7 / x5)


def from_conformal(a: ScalarLike, b: ScalarLike, c: ScalarLike) -> Params:
    """Parameters of the conformal sl2 algebra ``xz - a zx = x, zy - a yz = y, yx - c xy = b z^2 + z``."""
    a, b, c = scalar(a), scalar(b), scalar(c)
    if c and not b:
        return Params((1 + a * c) / c, -a / c, -1 / c)
    if not b and not c and a:
        return Params(1 / a, ZERO, -1 / a)
    raise PreconditionError("(c != 0 and b == 0) or (b == c == 0 and a != 0)")


def from_woronowicz(zeta: ScalarLike) -> Params:
    z = scalar(zeta)
    _check(z not in (0, 1, -1), "zeta not in {0, 1, -1}")
    z2 = z * z
    return Params(z2 * (1 + z2), -(z2**3), z * (1 + z2))


def convert_params(kind: str, *values: ScalarLike) -> Params:
    """Dispatch to ``witten`` (7 values), ``conformal`` (a, b, c) or ``woronowicz`` (zeta)."""
    if kind == "witten":
        return from_witten(values)
    if kind == "conformal":
        if len(values) != 3:
            raise PreconditionError("three parameters a, b, c")
        return from_conformal(*values)
    if kind == "woronowicz":
        if len(values) != 1:
            raise PreconditionError("one parameter zeta")
        return from_woronowicz(values[0])
    raise ValueError(f"unknown conversion {kind!r}")
