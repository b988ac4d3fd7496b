"""Multiplicity codes and their systematic encoding.

A codeword of ``MRM^s_d`` is an ``(n, sigma)`` array: row ``r`` is the point
at position ``r`` (see :mod:`multcode.reed_muller`), column ``c`` is the
derivative order ``S[c]``, and the entry is ``H(F, S[c])(P)``.  ``S`` holds
every multi-index of weight ``< s`` in graded-lex order.

Messages are length-``k`` arrays of element indices, ordered like the
information set: derivative order ``j`` in graded-lex order (outer), then
the points of ``I_{d_j}`` in their Reed-Muller order (inner).

Encoding rests on the decomposition ``F = sum_j F_j V_j`` with
``V_j = prod_l (X_l^q - X_l)^(j_l)`` and ``F_j`` supported on ``L_{d_j}``,
``d_j = min(m(q-1), d - |j|q)``.  Since ``H(V_j, v)(P)`` is zero unless
``v >= j`` and does not depend on ``P``, the Leibniz rule gives, for every
derivative order ``i`` and point ``P``::

    H(F, i)(P) = (-1)^|i| F_i(P)
                 + sum_{j < i} sum_{j <= v <= i} H(F_j, i - v)(P) H(V_j, v)(P)

which is solved for ``F_i`` on ``I_{d_i}`` one ``i`` at a time.
"""

from __future__ import annotations

import functools
import itertools
import math
from typing import Mapping

import numpy as np

from .errors import (ArityMismatch, ComponentDegreeTooLarge, DegreeOutOfRange, DegreeTooLarge,
                     FieldMismatch, LengthMismatch, NotUnivariate, ShapeMismatch)
from .finite_field import GF, Field
from .mpoly import (MVPoly, MultiIndex, _hasse_term, _multi_binom_int, binom_mod, evaluate, evaluate_many,
                    hasse_derivative, leq, lt, multi_indices, vanishing_poly)
from .reed_muller import all_points, monomial_matrix, point_position, rm_code

Decomposition = dict  # MultiIndex -> MVPoly


class MultCode:
    """The multiplicity code ``MRM^s_d`` over ``field`` in ``m`` variables."""

    def __init__(self, field: Field, m: int, s: int, d: int):
        q = field.q
        if m < 1 or s < 1:
            raise ValueError(f"need m >= 1 and s >= 1, got m={m}, s={s}")
        if not 0 <= d < s * q:
            raise DegreeOutOfRange(f"degree out of range: need 0 <= d < s*q = {s * q}, got {d}")
        self.field, self.m, self.s, self.d, self.q = field, m, s, d, q
        self.n = q**m
        self.S: tuple[MultiIndex, ...] = multi_indices(m, s - 1)
        self.sigma = len(self.S)
        self.k = math.comb(m + d, m)
        self.dj = {j: min(m * (q - 1), d - sum(j) * q) for j in self.S}
        self.components = [j for j in self.S if self.dj[j] >= 0]
        self.subcodes = {dj: rm_code(field, m, dj) for dj in sorted(set(self.dj.values())) if dj >= 0}
        self.points = all_points(q, m)
        self._slot = {j: c for c, j in enumerate(self.S)}

        self.infoset: list[tuple[MultiIndex, MultiIndex]] = []
        self._offsets = {}
        for j in self.components:
            self._offsets[j] = len(self.infoset)
            self.infoset.extend((j, P) for P in self.subcodes[self.dj[j]].infoset)
        if len(self.infoset) != self.k:
            raise RuntimeError(f"|I| = {len(self.infoset)} differs from k = {self.k}")
        self._info_pos = np.array([point_position(P, q) for _, P in self.infoset], dtype=np.int64)
        self._info_slot = np.array([self._slot[j] for j, _ in self.infoset], dtype=np.int64)

        # H(V_j, v)(P) is independent of P; keep the nonzero values for |v| < s
        origin = (0,) * m
        self.vanishing_derivatives: dict[MultiIndex, dict[MultiIndex, int]] = {}
        for j in self.components:
            V = vanishing_poly(j, field, m)
            h = {v: evaluate(hasse_derivative(V, v), origin).index for v in self.S if leq(j, v)}
            self.vanishing_derivatives[j] = {v: c for v, c in h.items() if c}

    def __repr__(self):
        return (f"MultCode({self.field!r}, m={self.m}, s={self.s}, d={self.d}, "
                f"n={self.n}, sigma={self.sigma}, k={self.k})")

    def slot(self, j) -> int:
        """Column of the derivative order ``j`` in a codeword."""
        return self._slot[tuple(j)]

    def position(self, point) -> int:
        """Row of ``point`` in a codeword."""
        return point_position(point, self.q)

    def symbol(self, codeword, j, point) -> int:
        return int(np.asarray(codeword)[self.position(point), self.slot(j)])

    def infoset_size(self, j) -> int:
        dj = self.dj[tuple(j)]
        return self.subcodes[dj].k if dj >= 0 else 0

    @functools.cached_property
    def derivative_evaluators(self) -> dict[int, np.ndarray]:
        """Per sub-code degree ``e``, the ``(sigma*n, k_e)`` map from coefficients on
        ``L_e`` to ``H(G, u)(P)`` for every ``u`` in ``S`` and point ``P``."""
        field, p = self.field, self.field.p
        out = {}
        for dj, sub in self.subcodes.items():
            exps = np.array(sub.exponents, dtype=np.int64).reshape(sub.k, self.m)
            blocks = []
            for u in self.S:
                ok = np.all(exps >= np.array(u), axis=1)
                shifted = np.where(ok[:, None], exps - np.array(u), 0)
                binoms = np.array([_multi_binom_int(e, u, p) if flag else 0
                                   for e, flag in zip(sub.exponents, ok)], dtype=np.int64)
                blocks.append(field.vmul(monomial_matrix(field, self.points, shifted), binoms[None, :]))
            mat = np.concatenate(blocks, axis=0)
            mat.setflags(write=False)
            out[dj] = mat
        return out


@functools.lru_cache(maxsize=None)
def _cached_code(field: Field, m: int, s: int, d: int) -> MultCode:
    return MultCode(field, m, s, d)


def code_new(q, m: int, s: int, d: int) -> MultCode:
    """Cached :class:`MultCode`; ``q`` is a field order or a :class:`Field`."""
    field = q if isinstance(q, Field) else GF(int(q))
    return _cached_code(field, m, s, d)


def _check_poly(F: MVPoly, code: MultCode) -> None:
    if F.field != code.field:
        raise FieldMismatch(f"{F.field!r} vs {code.field!r}")
    if F.m != code.m:
        raise ArityMismatch(f"{F.m} vs {code.m} variables")
    if F.degree > code.d:
        raise DegreeTooLarge(f"degree {F.degree} exceeds d = {code.d}")


def _message_array(M, code: MultCode) -> np.ndarray:
    M = np.asarray([int(x) for x in M] if not isinstance(M, np.ndarray) else M, dtype=np.int64)
    if M.ndim != 1 or M.shape[0] != code.k:
        raise LengthMismatch(f"expected a message of length {code.k}, got shape {M.shape}")
    if M.size and (M.min() < 0 or M.max() >= code.q):
        raise ValueError("message symbols must be element indices")
    return M


def ev_s(F: MVPoly, code: MultCode) -> np.ndarray:
    """``(H(F, j)(P))`` for every point ``P`` (rows) and ``j`` in ``S`` (columns)."""
    _check_poly(F, code)
    field = code.field
    # every H(F, j) is a combination of the monomials X^(e-j); evaluate their union once
    cols: dict[MultiIndex, int] = {}
    entries = []
    for c, j in enumerate(code.S):
        for e, f in F.terms.items():
            hit = _hasse_term(e, j, field.p)
            if hit is not None:
                r = cols.setdefault(hit[0], len(cols))
                entries.append((r, c, field.mul(f, hit[1])))
    if not entries:
        return np.zeros((code.n, code.sigma), dtype=np.int64)
    coeffs = np.zeros((len(cols), code.sigma), dtype=np.int64)
    rows, slots, vals = (np.array(x, dtype=np.int64) for x in zip(*entries))
    coeffs[rows, slots] = vals
    return field.matmul(monomial_matrix(field, code.points, list(cols)), coeffs)


# -- decomposition ---------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _univariate_parts(field: Field, u: int) -> dict[int, dict[int, int]]:
    """``X^u = sum_i P_i(X) (X^q - X)^i`` with ``deg P_i <= q-1``, as ``{i: {exp: coeff}}``."""
    q = field.q
    if u < q:
        return {0: {u: 1}}
    t, r = divmod(u, q)
    add, mul = field.add, field.mul
    out: dict[int, dict[int, int]] = {}
    # X^u = X^r ((X^q - X) + X)^t = sum_i C(t, i) X^(r+t-i) (X^q - X)^i
    for i in range(t + 1):
        b = field.from_int(binom_mod(t, i, field.p))
        if not b:
            continue
        for i2, P in _univariate_parts(field, r + t - i).items():
            slot = out.setdefault(i + i2, {})
            for e, c in P.items():
                slot[e] = add(slot.get(e, 0), mul(b, c))
    return {i: {e: c for e, c in P.items() if c} for i, P in out.items()}


@functools.lru_cache(maxsize=None)
def _monomial_parts(field: Field, exponent: MultiIndex) -> tuple[tuple[MultiIndex, tuple], ...]:
    """``X^e = sum_j B_j V_j`` with each ``B_j`` reduced, as ``((j, ((exp, coeff), ...)), ...)``."""
    mul = field.mul
    per_var = [list(_univariate_parts(field, u).items()) for u in exponent]
    out = []
    for combo in itertools.product(*per_var):
        j = tuple(i for i, _ in combo)
        terms = [((), 1)]
        for _, P in combo:
            terms = [(e + (r,), mul(c, cp)) for e, c in terms for r, cp in P.items()]
        terms = tuple((e, c) for e, c in terms if c)
        if terms:
            out.append((j, terms))
    return tuple(out)


def decompose(F: MVPoly, code: MultCode) -> Decomposition:
    """The unique ``{j: F_j}`` (``|j| <= d/q``) with ``F = sum_j F_j V_j`` and ``F_j`` on ``L_{d_j}``."""
    _check_poly(F, code)
    field = code.field
    add, mul = field.add, field.mul
    parts: dict[MultiIndex, dict] = {j: {} for j in code.components}
    for e, c in F.terms.items():
        for j, terms in _monomial_parts(field, e):
            target = parts[j]
            for r, b in terms:
                target[r] = add(target.get(r, 0), mul(c, b))
    return {j: MVPoly(field, code.m, {e: c for e, c in t.items() if c}) for j, t in parts.items()}


def _check_component(j: MultiIndex, Fj: MVPoly, code: MultCode) -> None:
    if Fj.field != code.field or Fj.m != code.m:
        raise FieldMismatch(f"component {j} does not match {code!r}")
    if Fj.is_zero():
        return
    dj = code.dj.get(j, code.d - sum(j) * code.q)
    for e in Fj.terms:
        if sum(e) > dj or max(e) > code.q - 1:
            raise ComponentDegreeTooLarge(
                f"component {j} has monomial {e}, outside L_{dj} for q={code.q}")


def recompose(dec: Mapping, code: MultCode) -> MVPoly:
    """``sum_j F_j V_j`` after checking each ``F_j`` lies on ``L_{d_j}``."""
    F = MVPoly.zero(code.field, code.m)
    for j, Fj in dec.items():
        j = tuple(j)
        if len(j) != code.m:
            raise ArityMismatch(f"component index {j} for {code.m} variables")
        _check_component(j, Fj, code)
        if not Fj.is_zero():
            F = F + Fj * vanishing_poly(j, code.field, code.m)
    return F


# -- systematic encoding ---------------------------------------------------


def _component_values(i, code: MultCode, message, acc) -> np.ndarray:
    """``F_i`` on ``I_{d_i}`` from the message symbols and the lower-order sum."""
    field = code.field
    off = code._offsets[i]
    k_i = code.subcodes[code.dj[i]].k
    vals = field.vsub(message[off:off + k_i], acc)
    return field.vneg(vals) if sum(i) % 2 else vals


def solve_components(M, code: MultCode) -> Decomposition:
    """Recover ``F_j`` for every ``|j| <= d/q`` from a message, one ``j`` at a time."""
    M = _message_array(M, code)
    field = code.field
    comps: dict[MultiIndex, MVPoly] = {}
    for i in code.components:
        sub = code.subcodes[code.dj[i]]
        pts = sub.points[sub.infoset_positions]
        acc = np.zeros(sub.k, dtype=np.int64)
        for j, Fj in comps.items():
            if not lt(j, i):
                continue
            for v, h in code.vanishing_derivatives[j].items():
                if leq(v, i):
                    u = tuple(a - b for a, b in zip(i, v))
                    term = evaluate_many(hasse_derivative(Fj, u), pts)
                    acc = field.vadd(acc, field.vmul(h, term))
        vals = _component_values(i, code, M, acc)
        comps[i] = sub.polynomial(sub.interpolate_coefficients(vals))
    return comps


def systematic_encode(M, code: MultCode) -> np.ndarray:
    """Systematic encoding: recover the ``F_j``, rebuild ``F``, return ``ev_s(F)``."""
    return ev_s(recompose(solve_components(M, code), code), code)


def systematic_encode_fast(M, code: MultCode) -> np.ndarray:
    """Same output as :func:`systematic_encode` without ever forming ``F``.

    Works on the ``F_j`` only: each is interpolated, all of its Hasse
    derivatives are evaluated on every point with one precomputed linear map,
    and the codeword column for ``i`` is assembled from the recursion read
    forward.  ``M`` may also be a ``(B, k)`` batch, giving ``(B, n, sigma)``.
    """
    arr = np.asarray(M, dtype=np.int64)
    if arr.ndim == 2:
        msgs = arr
        if msgs.shape[1] != code.k:
            raise LengthMismatch(f"expected messages of length {code.k}, got {msgs.shape[1]}")
        if msgs.size and (msgs.min() < 0 or msgs.max() >= code.q):
            raise ValueError("message symbols must be element indices")
    else:
        msgs = _message_array(M, code)[None, :]
    field = code.field
    n, sigma = code.n, code.sigma
    batch = msgs.shape[0]
    msgs = msgs.T
    evaluators = code.derivative_evaluators
    derivs: dict[MultiIndex, np.ndarray] = {}
    out = np.empty((n, sigma, batch), dtype=np.int64)
    for c, i in enumerate(code.S):
        acc = np.zeros((n, batch), dtype=np.int64)
        for j, D in derivs.items():
            if not lt(j, i):
                continue
            for v, h in code.vanishing_derivatives[j].items():
                if leq(v, i):
                    u = tuple(a - b for a, b in zip(i, v))
                    acc = field.vadd(acc, field.vmul(h, D[code.slot(u)]))
        di = code.dj[i]
        if di < 0:
            out[:, c] = acc
            continue
        sub = code.subcodes[di]
        vals = _component_values(i, code, msgs, acc[sub.infoset_positions])
        coeffs = sub.interpolate_coefficients(vals)
        D = field.matmul(evaluators[di], coeffs).reshape(sigma, n, batch)
        derivs[i] = D
        own = field.vneg(D[0]) if sum(i) % 2 else D[0]
        out[:, c] = field.vadd(acc, own)
    out = np.moveaxis(out, 2, 0)
    return out if arr.ndim == 2 else out[0]


def extract_message(c, code: MultCode) -> np.ndarray:
    """Restriction of a codeword (or a ``(..., n, sigma)`` stack) to the information set."""
    c = np.asarray(c, dtype=np.int64)
    if c.shape[-2:] != (code.n, code.sigma):
        raise ShapeMismatch(f"expected codeword shape ({code.n}, {code.sigma}), got {c.shape}")
    return c[..., code._info_pos, code._info_slot]


# -- univariate specialisation --------------------------------------------


def _newton_interpolate(field: Field, xs: list[int], ys: list[int]) -> list[int]:
    """Coefficients (low to high) of the polynomial through ``(xs[r], ys[r])``."""
    add, sub, mul, div = field.add, field.sub, field.mul, field.div
    n = len(xs)
    dd = list(ys)
    for level in range(1, n):
        for r in range(n - 1, level - 1, -1):
            dd[r] = div(sub(dd[r], dd[r - 1]), sub(xs[r], xs[r - level]))
    coeffs = [0] * n
    for r in range(n - 1, -1, -1):
        # coeffs <- coeffs * (X - xs[r]) + dd[r]
        shifted = [0] + coeffs[:-1]
        coeffs = [add(sh, field.neg(mul(xs[r], c))) for sh, c in zip(shifted, coeffs)]
        coeffs[0] = add(coeffs[0], dd[r])
    return coeffs


def _uni_hasse_at(field: Field, coeffs: list[int], u: int, x: int) -> int:
    p, add, mul = field.p, field.add, field.mul
    acc = 0
    for e in range(len(coeffs) - 1, u - 1, -1):
        c = mul(coeffs[e], field.from_int(binom_mod(e, u, p)))
        acc = add(mul(acc, x), c)
    return acc


def _uni_vanishing_derivative(field: Field, j: int, v: int) -> int:
    """``H((X^q - X)^j, v)`` at any point: the ``Z^(v-j)`` coefficient of ``(Z^(q-1) - 1)^j``."""
    w = v - j
    if w < 0 or w % (field.q - 1):
        return 0
    k = w // (field.q - 1)
    if k > j:
        return 0
    c = field.from_int(binom_mod(j, k, field.p))
    return field.neg(c) if (j - k) % 2 else c


def derivative_encode(M, code: MultCode) -> np.ndarray:
    """Systematic encoding of a univariate (derivative) code with plain univariate arithmetic."""
    if code.m != 1:
        raise NotUnivariate(f"derivative codes need m = 1, got m = {code.m}")
    M = _message_array(M, code)
    field, q, s, d = code.field, code.q, code.s, code.d
    add, sub, mul, neg = field.add, field.sub, field.mul, field.neg
    comps: list[list[int]] = []
    offset = 0
    for i in range(s):
        di = min(q - 1, d - i * q)
        if di < 0:
            break
        xs = list(range(di + 1))
        ys = []
        for x in xs:
            acc = 0
            for j, Fj in enumerate(comps):
                for v in range(j, i + 1):
                    h = _uni_vanishing_derivative(field, j, v)
                    if h:
                        acc = add(acc, mul(_uni_hasse_at(field, Fj, i - v, x), h))
            y = sub(int(M[offset + x]), acc)
            ys.append(neg(y) if i % 2 else y)
        comps.append(_newton_interpolate(field, xs, ys))
        offset += di + 1

    F = [0] * (d + 1)
    for j, Fj in enumerate(comps):
        # (X^q - X)^j = sum_k C(j, k) (-1)^(j-k) X^(qk + j - k)
        for k in range(j + 1):
            b = field.from_int(binom_mod(j, k, field.p))
            if (j - k) % 2:
                b = neg(b)
            if not b:
                continue
            shift = q * k + j - k
            for e, c in enumerate(Fj):
                if c:
                    F[e + shift] = add(F[e + shift], mul(b, c))
    out = np.empty((q, s), dtype=np.int64)
    for x in range(q):
        for u in range(s):
            out[x, u] = _uni_hasse_at(field, F, u, x)
    return out
