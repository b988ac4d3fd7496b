"""Sparse multivariate polynomials over GF(q).

Exponent vectors and derivative orders are plain tuples of non-negative
ints (multi-indices).  Coefficients are stored as element indices of the
owning :class:`~multcode.finite_field.Field`; zero coefficients are never
stored.
"""

from __future__ import annotations

import functools
import itertools
import math
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import ArityMismatch, FieldMismatch
from .finite_field import Field, FieldElement

MultiIndex = tuple[int, ...]


# -- multi-indices --------------------------------------------------------


def weight(i: Sequence[int]) -> int:
    return sum(i)


def leq(i: Sequence[int], j: Sequence[int]) -> bool:
    """Componentwise order: ``i <= j`` iff ``i_l <= j_l`` for every ``l``."""
    return all(a <= b for a, b in zip(i, j))


def lt(i: Sequence[int], j: Sequence[int]) -> bool:
    return leq(i, j) and tuple(i) != tuple(j)


def graded_lex_key(i: Sequence[int]):
    return (sum(i), tuple(i))


@functools.lru_cache(maxsize=None)
def multi_indices(m: int, max_weight: int) -> tuple[MultiIndex, ...]:
    """All ``i`` in N^m with ``|i| <= max_weight``, graded-lex ordered."""
    if max_weight < 0:
        return ()
    out = [i for i in itertools.product(range(max_weight + 1), repeat=m) if sum(i) <= max_weight]
    return tuple(sorted(out, key=graded_lex_key))


# -- binomials ------------------------------------------------------------


@functools.lru_cache(maxsize=1 << 16)
def binom_mod(n: int, k: int, p: int) -> int:
    """``C(n, k) mod p`` by Lucas' theorem."""
    if k < 0 or k > n:
        return 0
    out = 1
    while k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        out = out * math.comb(nd, kd) % p
        n //= p
        k //= p
    return out


def _multi_binom_int(j: Sequence[int], i: Sequence[int], p: int) -> int:
    out = 1
    for a, b in zip(j, i):
        out = out * binom_mod(a, b, p) % p
        if not out:
            break
    return out


def multi_binomial(j: Sequence[int], i: Sequence[int], field: Field) -> FieldElement:
    """``C(j_1, i_1) ... C(j_m, i_m)`` as an element of ``field`` (zero unless ``i <= j``)."""
    if len(j) != len(i):
        raise ArityMismatch(f"{tuple(j)} and {tuple(i)} differ in length")
    return field(_multi_binom_int(j, i, field.p))


# -- polynomials ----------------------------------------------------------


class MVPoly:
    """An m-variate polynomial ``sum_e f_e X^e`` over ``field``.

    Instances are immutable; arithmetic returns new polynomials.
    """

    __slots__ = ("field", "m", "_terms")

    def __init__(self, field: Field, m: int, terms: Mapping[Sequence[int], int] | None = None):
        self.field = field
        self.m = m
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != m:
                raise ArityMismatch(f"exponent {e} does not have {m} entries")
            if min(e, default=0) < 0:
                raise ValueError(f"negative exponent in {e}")
            if isinstance(c, FieldElement) and c.field != field:
                raise FieldMismatch(f"coefficient from {c.field!r} in a polynomial over {field!r}")
            c = int(c)
            if not 0 <= c < field.q:
                raise ValueError(f"{c} is not an element index of {field!r}")
            if c:
                clean[e] = c
        self._terms = clean

    @classmethod
    def _raw(cls, field: Field, m: int, terms: dict) -> MVPoly:
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj.field, obj.m, obj._terms = field, m, terms
        return obj

    @classmethod
    def zero(cls, field: Field, m: int) -> MVPoly:
        return cls._raw(field, m, {})

    @classmethod
    def constant(cls, field: Field, m: int, c=1) -> MVPoly:
        return cls(field, m, {(0,) * m: c})

    @classmethod
    def variable(cls, field: Field, m: int, l: int) -> MVPoly:
        """The variable ``X_{l+1}`` (``l`` counts from zero)."""
        e = [0] * m
        e[l] = 1
        return cls._raw(field, m, {tuple(e): 1})

    @classmethod
    def monomial(cls, field: Field, exponent: Sequence[int], c=1) -> MVPoly:
        return cls(field, len(exponent), {tuple(exponent): c})

    @property
    def terms(self) -> Mapping[MultiIndex, int]:
        return MappingProxyType(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def max_exponent(self) -> int:
        """Largest individual exponent over all terms and variables."""
        return max((max(e, default=0) for e in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, e: Sequence[int]) -> FieldElement:
        return self.field(self._terms.get(tuple(e), 0))

    def sorted_terms(self) -> list[tuple[MultiIndex, int]]:
        return sorted(self._terms.items(), key=lambda kv: graded_lex_key(kv[0]))

    def _check(self, other: MVPoly) -> None:
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if other.m != self.m:
            raise ArityMismatch(f"{self.m} vs {other.m} variables")

    def __add__(self, other: MVPoly) -> MVPoly:
        if not isinstance(other, MVPoly):
            return NotImplemented
        self._check(other)
        add = self.field.add
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MVPoly._raw(self.field, self.m, out)

    def __neg__(self) -> MVPoly:
        neg = self.field.neg
        return MVPoly._raw(self.field, self.m, {e: neg(c) for e, c in self._terms.items()})

    def __sub__(self, other: MVPoly) -> MVPoly:
        if not isinstance(other, MVPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> MVPoly:
        if isinstance(other, MVPoly):
            return multiply(self, other)
        if isinstance(other, FieldElement):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c) -> MVPoly:
        if isinstance(c, FieldElement) and c.field != self.field:
            raise FieldMismatch(f"{c.field!r} vs {self.field!r}")
        c = int(c)
        if not c:
            return MVPoly.zero(self.field, self.m)
        mul = self.field.mul
        return MVPoly._raw(self.field, self.m, {e: mul(v, c) for e, v in self._terms.items()})

    def __pow__(self, k: int) -> MVPoly:
        out = MVPoly.constant(self.field, self.m)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, MVPoly):
            return NotImplemented
        return self.field == other.field and self.m == other.m and self._terms == other._terms

    def __hash__(self):
        return hash((self.field, self.m, frozenset(self._terms.items())))

    def __call__(self, *point) -> FieldElement:
        return evaluate(self, point)

    def __repr__(self):
        return f"MVPoly({self.field!r}, m={self.m}, {self.to_text()!r})"

    def to_text(self) -> str:
        """Terms as ``coeff:e1,...,em`` joined by ``;`` in graded-lex order; ``0`` if zero."""
        if not self._terms:
            return "0"
        return ";".join(f"{c}:{','.join(map(str, e))}" for e, c in self.sorted_terms())

    @classmethod
    def from_text(cls, text: str, field: Field, m: int) -> MVPoly:
        text = text.strip()
        if text in ("", "0"):
            return cls.zero(field, m)
        add = field.add
        terms: dict = {}
        for chunk in text.split(";"):
            try:
                c, exps = chunk.split(":")
                e = tuple(int(x) for x in exps.split(","))
                c = int(c)
            except ValueError:
                raise ValueError(f"malformed term {chunk!r}") from None
            if len(e) != m:
                raise ArityMismatch(f"term {chunk!r} does not have {m} exponents")
            if not 0 <= c < field.q:
                raise ValueError(f"{c} is not an element index of {field!r}")
            terms[e] = add(terms.get(e, 0), c)
        return cls(field, m, terms)


def _point_indices(F: MVPoly, point) -> list[int]:
    if len(point) != F.m:
        raise ArityMismatch(f"point of dimension {len(point)} for {F.m} variables")
    out = []
    for x in point:
        if isinstance(x, FieldElement) and x.field != F.field:
            raise FieldMismatch(f"{x.field!r} vs {F.field!r}")
        x = int(x)
        if not 0 <= x < F.field.q:
            raise ValueError(f"{x} is not an element index of {F.field!r}")
        out.append(x)
    return out


def evaluate(F: MVPoly, point: Sequence) -> FieldElement:
    """``F(P)`` for one point ``P`` given as element indices or FieldElements."""
    field = F.field
    xs = _point_indices(F, point)
    mul, add, pw = field.mul, field.add, field.pow
    acc = 0
    for e, c in F._terms.items():
        v = c
        for x, k in zip(xs, e):
            v = mul(v, pw(x, k))
            if not v:
                break
        acc = add(acc, v)
    return field(acc)


def evaluate_many(F: MVPoly, points) -> np.ndarray:
    """``F`` at every row of an ``(N, m)`` array of element indices."""
    points = np.asarray(points, dtype=np.int64).reshape(-1, F.m)
    if not F._terms:
        return np.zeros(len(points), dtype=np.int64)
    field = F.field
    exps = np.array(list(F._terms), dtype=np.int64).reshape(-1, F.m)
    coeffs = np.array(list(F._terms.values()), dtype=np.int64)
    table = field.power_table(int(exps.max()))
    mon = table[points[:, 0][:, None], exps[None, :, 0]]
    for l in range(1, F.m):
        mon = field.vmul(mon, table[points[:, l][:, None], exps[None, :, l]])
    return field.matmul(mon, coeffs)


def multiply(F: MVPoly, G: MVPoly) -> MVPoly:
    F._check(G)
    field = F.field
    mul, add = field.mul, field.add
    out: dict = {}
    for e1, c1 in F._terms.items():
        for e2, c2 in G._terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = add(out.get(e, 0), mul(c1, c2))
    return MVPoly._raw(field, F.m, {e: c for e, c in out.items() if c})


@functools.lru_cache(maxsize=1 << 18)
def _hasse_term(e: MultiIndex, i: MultiIndex, p: int):
    """``(e - i, C(e, i) mod p)``, or ``None`` when the term drops out."""
    d = tuple(a - b for a, b in zip(e, i))
    if min(d) < 0:
        return None
    b = _multi_binom_int(e, i, p)
    return (d, b) if b else None


def hasse_derivative(F: MVPoly, i: Sequence[int]) -> MVPoly:
    """The ``i``-th Hasse derivative ``sum_{j>=i} f_j C(j,i) X^(j-i)``."""
    i = tuple(i)
    if len(i) != F.m:
        raise ArityMismatch(f"derivative order {i} for {F.m} variables")
    if not any(i):
        return F
    field = F.field
    p, mul = field.p, field.mul
    out: dict = {}
    # e -> e - i is injective, so no two terms collide
    for e, c in F._terms.items():
        hit = _hasse_term(e, i, p)
        if hit is not None:
            out[hit[0]] = mul(c, hit[1])
    return MVPoly._raw(field, F.m, out)


@functools.lru_cache(maxsize=None)
def _vanishing_univariate(field: Field, j: int) -> tuple[tuple[int, int], ...]:
    # (X^q - X)^j = sum_k C(j,k) (-1)^(j-k) X^(qk + j - k); exponents are distinct
    q, p = field.q, field.p
    out = []
    for k in range(j + 1):
        c = field.from_int(binom_mod(j, k, p))
        if (j - k) % 2:
            c = field.neg(c)
        if c:
            out.append((q * k + j - k, c))
    return tuple(out)


def vanishing_poly(j: Sequence[int], field: Field, m: int) -> MVPoly:
    """``V_j = prod_l (X_l^q - X_l)^(j_l)``."""
    j = tuple(j)
    if len(j) != m:
        raise ArityMismatch(f"multi-index {j} for {m} variables")
    mul = field.mul
    terms = {(): 1}
    for jl in j:
        uni = _vanishing_univariate(field, jl)
        terms = {e + (k,): mul(c, cu) for e, c in terms.items() for k, cu in uni}
    return MVPoly._raw(field, m, terms)


def random_poly(field: Field, m: int, max_degree: int, rng: np.random.Generator,
                density: float = 1.0, individual_bound: int | None = None) -> MVPoly:
    """A random polynomial with total degree at most ``max_degree``.

    Every monomial of weight ``<= max_degree`` (and, if given, every exponent
    ``<= individual_bound``) is kept with probability ``density`` and gets a
    uniformly random coefficient.
    """
    terms = {}
    for e in multi_indices(m, max_degree):
        if individual_bound is not None and max(e, default=0) > individual_bound:
            continue
        if density >= 1.0 or rng.random() < density:
            terms[e] = int(rng.integers(field.q))
    return MVPoly(field, m, terms)


def poly_from_coefficients(field: Field, exponents: Iterable[Sequence[int]], coeffs, m: int) -> MVPoly:
    return MVPoly(field, m, {tuple(e): int(c) for e, c in zip(exponents, coeffs)})
