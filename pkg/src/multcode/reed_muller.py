"""Generalized Reed-Muller codes RM_d over GF(q).

Codeword coordinates are the points of GF(q)^m in lexicographic order of
their element indices, last coordinate fastest, so the point with
coordinates ``(a_1, ..., a_m)`` sits at position ``sum a_l q^(m-l)``.

The information set of RM_d is the set of points whose index tuple lies in
``L_d = {i : 0 <= i_l <= q-1, |i| <= d}``; both it and ``L_d`` are kept in
graded-lex order, so message symbol ``r`` is the value at the point with
index tuple ``L_d[r]`` and coefficient ``r`` multiplies ``X^(L_d[r])``.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (ArityMismatch, DegreeOutOfRange, DegreeTooLarge, DivisionByZero,
                     FieldMismatch, InvalidInformationSet, LengthMismatch)
from .finite_field import Field
from .mpoly import MVPoly, MultiIndex, graded_lex_key


@dataclass(frozen=True)
class ExponentSet:
    """``K_l`` (weight exactly ``l``) for ``l <= d`` and their union ``L_d``."""

    q: int
    m: int
    d: int
    K: dict[int, tuple[MultiIndex, ...]]
    L: tuple[MultiIndex, ...]


@functools.lru_cache(maxsize=None)
def box_indices(q: int, m: int, d: int) -> tuple[MultiIndex, ...]:
    """``L_d`` in graded-lex order."""
    if d < 0:
        return ()
    out = [i for i in itertools.product(range(q), repeat=m) if sum(i) <= d]
    return tuple(sorted(out, key=graded_lex_key))


def exponent_set(q: int, m: int, d: int) -> ExponentSet:
    L = box_indices(q, m, d)
    K = {l: tuple(i for i in L if sum(i) == l) for l in range(max(d, -1) + 1)}
    return ExponentSet(q, m, d, K, L)


def dimension_by_enumeration(q: int, m: int, d: int) -> int:
    return len(box_indices(q, m, d))


@functools.lru_cache(maxsize=None)
def dimension_by_recurrence(q: int, m: int, d: int) -> int:
    """``k_d`` from ``C(m+d, m) = sum_{j=0}^{d//q} C(m-1+j, m-1) k_{d-jq}``."""
    if d < 0:
        return 0
    if d >= m * (q - 1):
        return q**m
    rest = sum(math.comb(m - 1 + j, m - 1) * dimension_by_recurrence(q, m, d - j * q)
               for j in range(1, d // q + 1))
    return math.comb(m + d, m) - rest


def rm_dimension(q: int, m: int, d: int) -> int:
    """Dimension ``k_d = |L_d|`` of RM_d, cross-checked against the recurrence."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    direct = dimension_by_enumeration(q, m, d)
    rec = dimension_by_recurrence(q, m, d)
    if direct != rec:
        raise RuntimeError(f"k_d mismatch for q={q}, m={m}, d={d}: {direct} != {rec}")
    return direct


@functools.lru_cache(maxsize=None)
def all_points(q: int, m: int) -> np.ndarray:
    pts = np.array(list(itertools.product(range(q), repeat=m)), dtype=np.int64).reshape(q**m, m)
    pts.setflags(write=False)
    return pts


def point_position(point, q: int) -> int:
    pos = 0
    for x in point:
        pos = pos * q + int(x)
    return pos


def monomial_matrix(field: Field, points: np.ndarray, exponents) -> np.ndarray:
    """``[P^e]`` with one row per point and one column per exponent."""
    exps = np.asarray(exponents, dtype=np.int64).reshape(len(exponents), points.shape[1])
    if not len(exps):
        return np.zeros((len(points), 0), dtype=np.int64)
    table = field.power_table(int(exps.max(initial=0)))
    out = table[points[:, 0][:, None], exps[None, :, 0]]
    for l in range(1, points.shape[1]):
        out = field.vmul(out, table[points[:, l][:, None], exps[None, :, l]])
    return out


@functools.lru_cache(maxsize=None)
def _newton_factors(field: Field) -> tuple[np.ndarray, np.ndarray]:
    """Inverses of the univariate Newton factors ``W = N C`` on nodes alpha_0..alpha_{q-1}.

    ``N[i, k] = prod_{r<k} (alpha_i - alpha_r)`` is lower triangular and
    ``C`` (monomial -> Newton basis change) is unit upper triangular.
    """
    q = field.q
    N = np.zeros((q, q), dtype=np.int64)
    for i in range(q):
        v = 1
        for k in range(q):
            N[i, k] = v
            v = field.mul(v, field.sub(i, k))
    W = field.power_table(q - 1)
    N_inv = field.inverse(N)
    C = field.matmul(N_inv, W)
    return N_inv, field.inverse(C)


def _apply_along_axes(field: Field, mat: np.ndarray, grid: np.ndarray, m: int) -> np.ndarray:
    q = mat.shape[0]
    for axis in range(m):
        moved = np.moveaxis(grid, axis, 0)
        shape = moved.shape
        moved = field.matmul(mat, moved.reshape(q, -1)).reshape(shape)
        grid = np.moveaxis(moved, 0, axis)
    return grid


def lower_set_interpolator(field: Field, m: int, indices) -> np.ndarray:
    """Inverse of ``[alpha_i^e]`` for ``i, e`` both ranging over a lower set.

    On a downward-closed set of index tuples the evaluation matrix factors as
    the restrictions of the tensor-power Newton factors, so its inverse is
    ``R (C^-1)^(x m) R (N^-1)^(x m) R`` with ``R`` zeroing everything outside
    the set.  Rows of the result are indexed by exponents, columns by points,
    both in the order of ``indices``.
    """
    q = field.q
    idx = np.asarray(indices, dtype=np.int64).reshape(len(indices), m)
    k = len(idx)
    N_inv, C_inv = _newton_factors(field)
    coords = tuple(idx[:, l] for l in range(m))
    grid = np.zeros((q,) * m + (k,), dtype=np.int64)
    grid[coords + (np.arange(k),)] = 1
    mask = np.zeros((q,) * m, dtype=bool)
    mask[coords] = True
    grid = _apply_along_axes(field, N_inv, grid, m)
    grid[~mask] = 0
    grid = _apply_along_axes(field, C_inv, grid, m)
    return grid[coords]


class RMCode:
    """RM_d over ``field`` in ``m`` variables, with its information set.

    Construction builds the ``n x k`` monomial evaluation matrix and the
    inverse of its restriction to the information set, and verifies the
    product is the identity; a failure raises :class:`InvalidInformationSet`.
    """

    def __init__(self, field: Field, m: int, d: int):
        q = field.q
        if m < 1:
            raise ValueError(f"need m >= 1, got {m}")
        if not 0 <= d <= m * (q - 1):
            raise DegreeOutOfRange(f"RM degree {d} outside 0..{m * (q - 1)}")
        self.field, self.m, self.d = field, m, d
        self.q = q
        self.n = q**m
        self.exponents = box_indices(q, m, d)
        self.k = len(self.exponents)
        self.points = all_points(q, m)
        self.infoset = list(self.exponents)
        self.infoset_positions = np.array([point_position(P, q) for P in self.infoset], dtype=np.int64)
        self._exp_pos = {e: r for r, e in enumerate(self.exponents)}

        self.eval_matrix = monomial_matrix(field, self.points, self.exponents)
        square = self.eval_matrix[self.infoset_positions]
        try:
            inv = lower_set_interpolator(field, m, self.exponents)
        except DivisionByZero as exc:
            raise InvalidInformationSet(f"singular Newton factor for {field!r}") from exc
        if not np.array_equal(field.matmul(square, inv), np.eye(self.k, dtype=np.int64)):
            raise InvalidInformationSet(
                f"evaluation matrix on I_{d} is singular for {field!r}, m={m}")
        self.interp_matrix = inv
        for arr in (self.eval_matrix, self.interp_matrix):
            arr.setflags(write=False)

    def __repr__(self):
        return f"RMCode({self.field!r}, m={self.m}, d={self.d}, n={self.n}, k={self.k})"

    def exponent_position(self, e) -> int:
        return self._exp_pos[tuple(e)]

    def coefficient_vector(self, F: MVPoly) -> np.ndarray:
        """Coefficients of ``F`` over ``L_d``; raises if ``F`` has other exponents."""
        if F.field != self.field:
            raise FieldMismatch(f"{F.field!r} vs {self.field!r}")
        if F.m != self.m:
            raise ArityMismatch(f"{F.m} vs {self.m} variables")
        vec = np.zeros(self.k, dtype=np.int64)
        for e, c in F.terms.items():
            r = self._exp_pos.get(e)
            if r is None:
                raise DegreeTooLarge(f"monomial {e} is outside L_{self.d} for q={self.q}")
            vec[r] = c
        return vec

    def polynomial(self, coeffs) -> MVPoly:
        return MVPoly(self.field, self.m, dict(zip(self.exponents, (int(c) for c in coeffs))))

    def interpolate_coefficients(self, values) -> np.ndarray:
        """Coefficient vector(s) from information-set values; accepts ``(k,)`` or ``(k, B)``."""
        values = np.asarray(values, dtype=np.int64)
        if values.shape[0] != self.k:
            raise LengthMismatch(f"expected {self.k} values, got {values.shape[0]}")
        return self.field.matmul(self.interp_matrix, values)


@functools.lru_cache(maxsize=None)
def rm_code(field: Field, m: int, d: int) -> RMCode:
    """Cached :class:`RMCode` constructor."""
    return RMCode(field, m, d)


def information_set(code: RMCode) -> list[MultiIndex]:
    """Points ``(alpha_{i_1}, ..., alpha_{i_m})`` with ``i`` in ``L_d``, as index tuples."""
    return list(code.infoset)


def rm_encode(F: MVPoly, code: RMCode) -> np.ndarray:
    """``(F(P_1), ..., F(P_n))`` in the fixed point order."""
    return code.field.matmul(code.eval_matrix, code.coefficient_vector(F))


def interpolate_on_infoset(values, code: RMCode) -> MVPoly:
    """The unique ``F`` with exponents in ``L_d`` taking ``values`` on the information set."""
    values = np.asarray([int(v) for v in values], dtype=np.int64)
    if values.shape != (code.k,):
        raise LengthMismatch(f"expected {code.k} values, got {len(values)}")
    if values.size and (values.min() < 0 or values.max() >= code.q):
        raise ValueError("values must be element indices")
    return code.polynomial(code.interpolate_coefficients(values))
