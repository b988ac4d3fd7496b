"""Arithmetic in GF(p^t) on enumeration indices.

An element is a polynomial ``c_0 + c_1 x + ... + c_{t-1} x^{t-1}`` in the
field generator ``x``, and its *index* is the base-p integer
``c_0 + c_1 p + ... + c_{t-1} p^{t-1}``.  The enumeration
``alpha_0, ..., alpha_{q-1}`` used by every information-set construction
in this package is simply ``alpha_i = element with index i``, so
``alpha_0 = 0`` and ``alpha_1 = 1``.

Scalar methods (:meth:`Field.add`, :meth:`Field.mul`, ...) take and return
plain ``int`` indices.  The ``v``-prefixed methods do the same on numpy
integer arrays, and :meth:`Field.matmul` / :meth:`Field.inverse` provide
exact linear algebra.  :class:`FieldElement` wraps an index for readable
scalar code.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .errors import DivisionByZero, FieldMismatch, NonPrimeCharacteristic, UnsupportedSize

MAX_ORDER = 1 << 16

# add/neg lookup tables are materialised only up to this order
_TABLE_ORDER = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of ``a`` by monic ``b`` over GF(p); coefficient lists low to high."""
    a = list(a)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            for k in range(db + 1):
                a[i - db + k] = (a[i - db + k] - c * b[k]) % p
    return [c % p for c in a[:db]]


def _monic_polys(p: int, deg: int):
    for low in range(p**deg):
        coeffs = [(low // p**k) % p for k in range(deg)]
        yield coeffs + [1]


def is_irreducible(coeffs: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree ``1..deg//2``."""
    deg = len(coeffs) - 1
    for k in range(1, deg // 2 + 1):
        for divisor in _monic_polys(p, k):
            if not any(_poly_rem(coeffs, divisor, p)):
                return False
    return True


def smallest_irreducible(p: int, t: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``t`` over GF(p).

    Candidates are compared as base-p integers, lowest coefficient in the
    least significant digit.  Returns the coefficient vector, low to high,
    including the leading 1.
    """
    for coeffs in _monic_polys(p, t):
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError(f"no irreducible polynomial of degree {t} over GF({p})")


class Field:
    """The finite field GF(p^t) with a fixed, reproducible element enumeration.

    Use :func:`field_new` (cached) rather than calling the constructor
    directly; two fields with the same ``(p, t)`` compare equal either way.
    """

    def __init__(self, p: int, t: int):
        if not is_prime(p):
            raise NonPrimeCharacteristic(f"characteristic {p} is not prime")
        if t < 1 or p**t > MAX_ORDER:
            raise UnsupportedSize(f"GF({p}^{t}) is outside 2 <= q <= {MAX_ORDER}")
        self.p = p
        self.t = t
        self.q = p**t
        self.modulus = smallest_irreducible(p, t)
        self._build_tables()

    # -- construction ---------------------------------------------------

    def digits(self, a: int) -> tuple[int, ...]:
        """Coefficient vector (low to high) of the element with index ``a``."""
        p = self.p
        return tuple((a // p**k) % p for k in range(self.t))

    def from_digits(self, coeffs) -> int:
        return sum(int(c) % self.p * self.p**k for k, c in enumerate(coeffs))

    def _mul_slow(self, a: int, b: int) -> int:
        p, t = self.p, self.t
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * t - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        if t == 1:
            return prod[0] % p
        return self.from_digits(_poly_rem(prod, list(self.modulus), p))

    def _pow_slow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        order = self.q - 1
        factors = prime_factors(order)
        for g in range(2, self.q):
            if all(self._pow_slow(g, order // r) != 1 for r in factors):
                return g
        raise AssertionError("multiplicative group has no generator")

    def _build_tables(self) -> None:
        p, t, q = self.p, self.t, self.q
        self.generator = self._find_generator()
        exp = [0] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = exp[i + q - 1] = x
            log[x] = i
            x = self._mul_slow(x, self.generator)
        self._exp, self._log = exp, log
        self._exp_np = np.array(exp, dtype=np.int64)
        self._log_np = np.array(log, dtype=np.int64)

        digits = np.array([self.digits(a) for a in range(q)], dtype=np.int64).reshape(q, t)
        self._digits_np = digits
        self._weights = p ** np.arange(t, dtype=np.int64)
        self._planes = [np.ascontiguousarray(digits[:, i], dtype=np.float64) for i in range(t)]
        self._neg_np = ((-digits) % p) @ self._weights
        self._neg = self._neg_np.tolist()
        self._add_np = None
        self._add = None
        if p != 2 and t > 1 and q <= _TABLE_ORDER:
            table = ((digits[:, None, :] + digits[None, :, :]) % p) @ self._weights
            self._add_np = table
            self._add = table.tolist()

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.t) == (other.p, other.t)

    def __hash__(self):
        return hash(("GF", self.p, self.t))

    def __repr__(self):
        return f"GF({self.p}^{self.t})" if self.t > 1 else f"GF({self.p})"

    def __reduce__(self):
        return field_new, (self.p, self.t)

    # -- elements -------------------------------------------------------

    def __call__(self, index) -> FieldElement:
        index = int(index)
        if not 0 <= index < self.q:
            raise ValueError(f"{index} is not an element index of {self!r}")
        return FieldElement(self, index)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def elements(self) -> list[FieldElement]:
        """``[alpha_0, ..., alpha_{q-1}]``; position ``i`` holds index ``i``."""
        return [FieldElement(self, i) for i in range(self.q)]

    # -- scalar arithmetic on indices -----------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.t == 1:
            return (a + b) % self.p
        if self._add is not None:
            return self._add[a][b]
        p = self.p
        out, w = 0, 1
        for _ in range(self.t):
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def neg(self, a: int) -> int:
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self!r}")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero(f"0 has no inverse in {self!r}")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Index of the image of the integer ``n`` under Z -> GF(q)."""
        return n % self.p

    # -- vectorised arithmetic ------------------------------------------

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.t == 1:
            return (a + b) % self.p
        if self._add_np is not None:
            return self._add_np[a, b]
        d = (self._digits_np[a] + self._digits_np[b]) % self.p
        return d @ self._weights

    def vneg(self, a) -> np.ndarray:
        return self._neg_np[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.t == 1:
            return (a * b) % self.p
        out = self._exp_np[self._log_np[a] + self._log_np[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero(f"0 has no inverse in {self!r}")
        return self._exp_np[(self.q - 1 - self._log_np[a]) % (self.q - 1)]

    def vsum(self, a, axis=None) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            if axis is None:
                a, axis = a.ravel(), 0
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.t == 1:
            return a.sum(axis=axis) % self.p
        d = self._digits_np[a]
        if axis is None:
            d, axis = d.reshape(-1, self.t), 0
        elif axis < 0:
            axis -= 1
        return (d.sum(axis=axis) % self.p) @ self._weights

    def power_table(self, max_exp: int) -> np.ndarray:
        """``table[x, e] = x**e`` for every element ``x`` and ``0 <= e <= max_exp``."""
        return _power_table(self, max_exp)

    def matmul(self, a, b) -> np.ndarray:
        """Exact matrix product over GF(q).

        Extension-field operands are split into their base-p digit planes; the
        ``t**2`` plane products run as float64 BLAS products (exact, since every
        partial sum stays far below 2**53) and are then reduced modulo p and
        modulo the field polynomial.
        """
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p, t = self.p, self.t
        inner = a.shape[-1]
        if inner * (p - 1) ** 2 >= 2**53:
            raise UnsupportedSize("matrix product too large for exact float accumulation")
        if t == 1:
            prod = a.astype(np.float64) @ b.astype(np.float64)
            return prod.astype(np.int64) % p
        # gathered planes are contiguous, which keeps the products on the BLAS path
        da = [plane[a] for plane in self._planes]
        db = [plane[b] for plane in self._planes]
        conv = [None] * (2 * t - 1)
        for i in range(t):
            for j in range(t):
                prod = da[i] @ db[j]
                conv[i + j] = prod if conv[i + j] is None else conv[i + j] + prod
        conv = [c.astype(np.int64) for c in conv]
        for deg in range(2 * t - 2, t - 1, -1):
            c = conv[deg] % p
            for k in range(t):
                if self.modulus[k]:
                    conv[deg - t + k] -= c * self.modulus[k]
        out = conv[t - 1] % p
        for k in range(t - 2, -1, -1):
            out *= p
            out += conv[k] % p
        return out

    def inverse(self, matrix) -> np.ndarray:
        """Gauss-Jordan inverse of a square matrix over GF(q)."""
        a = np.array(matrix, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        n = a.shape[0]
        aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
        for col in range(n):
            nz = np.flatnonzero(aug[col:, col])
            if nz.size == 0:
                raise DivisionByZero("matrix is singular")
            piv = col + nz[0]
            if piv != col:
                aug[[col, piv]] = aug[[piv, col]]
            aug[col] = self.vmul(aug[col], self.inv(int(aug[col, col])))
            factors = aug[:, col].copy()
            factors[col] = 0
            rows = np.flatnonzero(factors)
            if rows.size:
                aug[rows] = self.vsub(aug[rows], self.vmul(factors[rows, None], aug[col][None, :]))
        return aug[:, n:]

    def rank(self, matrix) -> int:
        a = np.array(matrix, dtype=np.int64)
        rows, cols = a.shape
        r = 0
        for col in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(a[r:, col])
            if nz.size == 0:
                continue
            piv = r + nz[0]
            if piv != r:
                a[[r, piv]] = a[[piv, r]]
            a[r] = self.vmul(a[r], self.inv(int(a[r, col])))
            below = np.arange(r + 1, rows)
            factors = a[below, col]
            sel = below[factors != 0]
            if sel.size:
                a[sel] = self.vsub(a[sel], self.vmul(a[sel, col][:, None], a[r][None, :]))
            r += 1
        return r


@functools.lru_cache(maxsize=None)
def _power_table(field: Field, max_exp: int) -> np.ndarray:
    q = field.q
    e = np.arange(max_exp + 1, dtype=np.int64)
    logs = field._log_np[1:, None]
    table = np.empty((q, max_exp + 1), dtype=np.int64)
    table[0] = 0
    table[0, 0] = 1
    table[1:] = field._exp_np[(logs * e[None, :]) % (q - 1)]
    table.setflags(write=False)
    return table


@functools.lru_cache(maxsize=None)
def field_new(p: int, t: int = 1) -> Field:
    """The field GF(p^t); cached, so equal arguments give the same object."""
    return Field(p, t)


def GF(q: int) -> Field:
    """The field with ``q`` elements, where ``q`` must be a prime power."""
    if q < 2:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    (p,) = prime_factors(q)[:1] or [q]
    t, rest = 0, q
    while rest % p == 0:
        rest //= p
        t += 1
    if rest != 1:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return field_new(p, t)


def elements(field: Field) -> list[FieldElement]:
    return field.elements()


@dataclass(frozen=True, slots=True)
class FieldElement:
    """A single element of ``field``, identified by its enumeration index."""

    field: Field
    index: int

    def _check(self, other) -> int:
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        return other.index

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.index, self._check(other)))

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.index, self._check(other)))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.index, self._check(other)))

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.index, self._check(other)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.index))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.index, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.index))

    def __bool__(self):
        return self.index != 0

    def __int__(self):
        return self.index

    def __index__(self):
        return self.index

    def __str__(self):
        return str(self.index)

    def __repr__(self):
        return f"{self.field!r}({self.index})"

    def coefficients(self) -> tuple[int, ...]:
        return self.field.digits(self.index)
