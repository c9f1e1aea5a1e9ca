"""The down-up algebra A(alpha, beta, gamma) in its PBW basis.

Elements are finite combinations of normal monomials ``u^i (du)^j d^k``,
stored as ``{(i, j, k): coefficient}``.  Arbitrary words over ``{d, u}``
are brought to normal form by rewriting with the two defining relations::

    d d u -> alpha d u d + beta u d d + gamma d        (R1)
    d u u -> alpha u d u + beta u u d + gamma u        (R2)

Free words are plain strings over the letters ``"d"`` and ``"u"``.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Union

from .errors import ParseError, ReductionLimitError
from .field import ONE, QuadScalar, ScalarLike, scalar

Monomial = tuple[int, int, int]
WordCombination = dict[str, QuadScalar]

DEFAULT_MAX_LENGTH = 64
_IRREDUCIBLE = re.compile(r"^(u*)((?:du)*)(d*)$")
_WORD_BITS = str.maketrans("du", "10")


@dataclass(frozen=True)
class Params:
    """Defining constants of ``A(alpha, beta, gamma)``."""

    alpha: QuadScalar
    beta: QuadScalar
    gamma: QuadScalar

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, scalar(getattr(self, name)))

    @classmethod
    def of(cls, alpha: ScalarLike, beta: ScalarLike, gamma: ScalarLike) -> "Params":
        return cls(scalar(alpha), scalar(beta), scalar(gamma))

    def as_tuple(self) -> tuple[QuadScalar, QuadScalar, QuadScalar]:
        return (self.alpha, self.beta, self.gamma)

    def __str__(self) -> str:
        return f"A({self.alpha}, {self.beta}, {self.gamma})"


class Element:
    """An element of the down-up algebra written in the PBW basis.

    Zero coefficients are never stored, so two elements are equal exactly
    when their term maps are equal.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, ScalarLike] | None = None) -> None:
        clean: dict[Monomial, QuadScalar] = {}
        for mono, c in (terms or {}).items():
            c = scalar(c)
            if c:
                i, j, k = mono
                if min(i, j, k) < 0:
                    raise ValueError(f"negative exponent in monomial {mono}")
                clean[(int(i), int(j), int(k))] = c
        self._terms = clean

    @classmethod
    def _from_clean(cls, terms: dict[Monomial, QuadScalar]) -> "Element":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls) -> "Element":
        return cls._from_clean({})

    @classmethod
    def one(cls) -> "Element":
        return cls._from_clean({(0, 0, 0): ONE})

    @classmethod
    def monomial(cls, i: int, j: int, k: int, coeff: ScalarLike = 1) -> "Element":
        return cls({(i, j, k): coeff})

    @property
    def terms(self) -> dict[Monomial, QuadScalar]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, QuadScalar]]:
        return iter(self._terms.items())

    def coefficient(self, i: int, j: int, k: int) -> QuadScalar:
        return self._terms.get((i, j, k), QuadScalar(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Largest total degree ``i + 2j + k``; -1 for the zero element."""
        return max((i + 2 * j + k for i, j, k in self._terms), default=-1)

    def to_words(self) -> WordCombination:
        return {monomial_word(m): c for m, c in self._terms.items()}

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        out = dict(self._terms)
        _accumulate(out, other._terms.items())
        return Element._from_clean(out)

    def __neg__(self) -> "Element":
        return Element._from_clean({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c) -> "Element":
        # scalar multiplication only; products in A need the parameters
        if isinstance(c, Element):
            raise TypeError("use multiply(params, x, y) for products in A")
        c = scalar(c)
        if not c:
            return Element.zero()
        return Element._from_clean({m: c * v for m, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        from .expr import format_element

        return format_element(self)

    def __repr__(self) -> str:
        return f"Element('{self}')"


def _accumulate(target: dict, items: Iterable[tuple[object, QuadScalar]]) -> None:
    for key, c in items:
        v = target.get(key)
        v = c if v is None else v + c
        if v:
            target[key] = v
        else:
            target.pop(key, None)


def monomial_word(m: Monomial) -> str:
    i, j, k = m
    return "u" * i + "du" * j + "d" * k


def word_monomial(word: str) -> Monomial | None:
    """The PBW monomial spelled by ``word``, or ``None`` if it is reducible."""
    match = _IRREDUCIBLE.match(word)
    if match is None:
        return None
    return (len(match.group(1)), len(match.group(2)) // 2, len(match.group(3)))


def _find_leftmost(word: str) -> int:
    hits = [p for p in (word.find("ddu"), word.find("duu")) if p >= 0]
    return min(hits) if hits else -1


def _find_rightmost(word: str) -> int:
    return max(word.rfind("ddu"), word.rfind("duu"))


STRATEGIES: dict[str, Callable[[str], int]] = {
    "leftmost": _find_leftmost,
    "rightmost": _find_rightmost,
}


def _rewrite(params: Params, word: str, pos: int) -> list[tuple[str, QuadScalar]]:
    head, redex, tail = word[:pos], word[pos : pos + 3], word[pos + 3 :]
    a, b, g = params.alpha, params.beta, params.gamma
    if redex == "ddu":
        out = [("dud", a), ("udd", b), ("d", g)]
    else:  # "duu"
        out = [("udu", a), ("uud", b), ("u", g)]
    return [(head + w + tail, c) for w, c in out if c]


def _order_key(word: str) -> tuple[int, int]:
    # total degree first, then lexicographic with d > u
    return (len(word), int(word.translate(_WORD_BITS), 2) if word else 0)


def _as_words(x) -> WordCombination:
    if isinstance(x, str):
        if not x.strip("du"):
            return {x: ONE}  # a bare word, including the empty word
        from .expr import parse_element  # expr imports this module

        return parse_element(x)
    if isinstance(x, Element):
        return x.to_words()
    out = {}
    for w, c in dict(x).items():
        if not isinstance(w, str) or w.strip("du"):
            raise ParseError(f"not a word in d and u: {w!r}", str(w), 0)
        out[w] = scalar(c)
    return out


def reduce(
    params: Params,
    combination: Union[str, Element, Mapping[str, ScalarLike]],
    *,
    strategy: str = "leftmost",
    max_length: int = DEFAULT_MAX_LENGTH,
) -> Element:
    """Normal form of a combination of free words.

    ``strategy`` picks which occurrence of ``ddu``/``duu`` is rewritten
    first (``"leftmost"`` or ``"rightmost"``).  Words are processed from
    the largest in the degree-lexicographic order downwards; each rewrite
    only produces strictly smaller words, so like terms are merged before
    they are expanded.
    """
    find = STRATEGIES[strategy]
    words = _as_words(combination)
    pending: dict[str, QuadScalar] = {}
    heap: list[tuple[int, int, str]] = []

    def push(word: str, c: QuadScalar) -> None:
        if len(word) > max_length:
            raise ReductionLimitError(f"word of length {len(word)} exceeds cap {max_length}")
        if word in pending:
            pending[word] = pending[word] + c
        else:
            pending[word] = c
            n, v = _order_key(word)
            heapq.heappush(heap, (-n, -v, word))

    for w, c in words.items():
        if c:
            push(w, c)

    result: dict[Monomial, QuadScalar] = {}
    while heap:
        _, _, word = heapq.heappop(heap)
        c = pending.pop(word)
        if not c:
            continue
        pos = find(word)
        if pos < 0:
            mono = word_monomial(word)
            assert mono is not None, word
            _accumulate(result, [(mono, c)])
            continue
        for w, k in _rewrite(params, word, pos):
            push(w, c * k)
    return Element._from_clean(result)


@lru_cache(maxsize=65536)
def _monomial_product(params: Params, m1: Monomial, m2: Monomial) -> tuple[tuple[Monomial, QuadScalar], ...]:
    word = monomial_word(m1) + monomial_word(m2)
    return tuple(reduce(params, word, max_length=max(len(word), DEFAULT_MAX_LENGTH)).items())


def multiply(params: Params, x: Element, y: Element) -> Element:
    """Product ``x*y`` in normal form (concatenate, then reduce)."""
    out: dict[Monomial, QuadScalar] = {}
    for m1, c1 in x.items():
        for m2, c2 in y.items():
            c = c1 * c2
            _accumulate(out, ((m, c * k) for m, k in _monomial_product(params, m1, m2)))
    return Element._from_clean(out)


def product(params: Params, *factors: Element) -> Element:
    out = Element.one()
    for f in factors:
        out = multiply(params, out, f)
    return out


def power(params: Params, x: Element, n: int) -> Element:
    if n < 0:
        raise ValueError("negative power")
    return product(params, *([x] * n))


def commutator(params: Params, x: Element, y: Element) -> Element:
    return multiply(params, x, y) - multiply(params, y, x)


def eta(x: Element, params: Params | None = None) -> Element:
    """Image under the antiautomorphism swapping ``d`` and ``u``.

    Each monomial is reversed as a word and its letters swapped.  The
    image of ``u^i (du)^j d^k`` is the irreducible word ``u^k (du)^j d^i``,
    so re-reduction (done when ``params`` is given) never rewrites.
    """
    swap = str.maketrans("du", "ud")
    words: WordCombination = {}
    for mono, c in x.items():
        w = monomial_word(mono)[::-1].translate(swap)
        words[w] = c
    if params is not None:
        return reduce(params, words)
    out: dict[Monomial, QuadScalar] = {}
    for w, c in words.items():
        mono = word_monomial(w)
        assert mono is not None
        out[mono] = c
    return Element._from_clean(out)


def grade_decompose(x: Element) -> dict[int, Element]:
    """Split ``x`` into homogeneous parts of Z-degree ``i - k``."""
    parts: dict[int, dict[Monomial, QuadScalar]] = {}
    for (i, j, k), c in x.items():
        parts.setdefault(i - k, {})[(i, j, k)] = c
    return {n: Element._from_clean(t) for n, t in sorted(parts.items())}


def filtration_count(ell: int) -> tuple[int, int]:
    """Number of PBW monomials of total degree exactly ``ell``, and up to ``ell``."""
    if ell < 0:
        raise ValueError("ell must be non-negative")

    def exact(n: int) -> int:
        m, odd = divmod(n, 2)
        return (m + 1) * (m + 2) if odd else (m + 1) * (m + 1)

    return exact(ell), sum(exact(n) for n in range(ell + 1))


def generators() -> tuple[Element, Element]:
    """``(d, u)`` as elements."""
    return Element.monomial(0, 0, 1), Element.monomial(1, 0, 0)


def is_central(params: Params, z: Element) -> bool:
    """True iff ``z`` commutes with both generators."""
    d, u = generators()
    return not commutator(params, z, d) and not commutator(params, z, u)


def relators(params: Params) -> tuple[WordCombination, WordCombination]:
    """The two defining relators as free-word combinations."""
    a, b, g = params.as_tuple()
    f1 = {"ddu": ONE, "dud": -a, "udd": -b, "d": -g}
    f2 = {"duu": ONE, "udu": -a, "uud": -b, "u": -g}
    return f1, f2
