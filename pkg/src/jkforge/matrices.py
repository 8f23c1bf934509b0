"""Matrix algebras, corner embeddings and finite stages of matrix stabilization.

``M_n(A)`` has basis ``(p, q, a)`` (the matrix unit ``e_pq`` tensored with a
basis symbol of ``A``) of weight ``w(a)``.  Finite-support infinite matrices
are handled through their finite windows: every finitely supported matrix
lives in some ``M_N``, and ``M_N`` is a subalgebra of ``M_oo``, so equalities
checked in a window hold in ``M_oo``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from .exactcore.algebra import FilteredAlgebra, LIMITS, ground, label_key
from .exactcore.constructions import Extension
from .exactcore.errors import IndexOutOfRange, SizeLimit, TypeMismatch
from .exactcore.maps import AlgebraMap, LinearMap, Status

_CACHE: dict = {}


def _memo(key, build):
    hit = _CACHE.get(key)
    if hit is None:
        hit = _CACHE[key] = build()
    return hit


def _check_size(n_labels):
    if n_labels > LIMITS.max_basis:
        raise SizeLimit("matrix stage would have %d basis elements (limit %d)" % (n_labels, LIMITS.max_basis))


def matrix_algebra(A: FilteredAlgebra, n: int) -> FilteredAlgebra:
    """``M_n(A)``."""
    if n < 1:
        raise IndexOutOfRange("matrix size must be >= 1")

    def build():
        _check_size(n * n * len(A.basis))
        weights, order = {}, []
        for a in A.basis:
            for p in range(1, n + 1):
                for q in range(1, n + 1):
                    weights[(p, q, a)] = A.weights[a]
                    order.append((p, q, a))

        def prod(x, y):
            (p, q, a), (r, s, b) = x, y
            if q != r:
                return {}
            return {(p, s, c): z for c, z in A.mul_basis(a, b).items()}

        M = FilteredAlgebra("M%d(%s)" % (n, A.name), A.ring, weights, A.cap, product=prod,
                            commutative=(n == 1 and A.commutative), lossy=A.lossy, order=order,
                            ident=("matrix", A._key, n))
        M.base, M.size = A, n
        return M

    return _memo(("M", A, n), build)


def matrix_unit(M: FilteredAlgebra, p: int, q: int, a=None):
    A = M.base
    a = a if a is not None else A.basis[0]
    return M.gen((p, q, a))


def corner(A: FilteredAlgebra, n: int, m: int) -> AlgebraMap:
    """``M_n(A) -> M_m(A)`` into the upper left corner."""
    if n > m:
        raise IndexOutOfRange("corner needs n <= m, got %d > %d" % (n, m))
    S, T = matrix_algebra(A, n), matrix_algebra(A, m)
    one = A.ring.one
    return AlgebraMap(S, T, {x: {x: one} for x in S.basis}, name="corner(%d,%d)" % (n, m), status=Status.VERIFIED)


def matrix_map(f: LinearMap, n: int) -> LinearMap:
    """``M_n(f)``, applied entrywise."""
    S, T = matrix_algebra(f.source, n), matrix_algebra(f.target, n)
    images = {(p, q, a): {(p, q, b): c for b, c in f.images[a].items()} for (p, q, a) in S.basis}
    exact = {(p, q, a) for (p, q, a) in S.basis if a in f.exact}
    if isinstance(f, AlgebraMap):
        return AlgebraMap(S, T, images, growth=f.growth, exact=exact, name="M%d(%s)" % (n, f.name),
                          status=f.status)
    return LinearMap(S, T, images, growth=f.growth, exact=exact, name="M%d(%s)" % (n, f.name))


def matrix_extension(E: Extension, n: int) -> Extension:
    """``M_n`` of a split extension, with the splitting lifted entrywise."""
    return Extension(matrix_algebra(E.kernel, n), matrix_algebra(E.middle, n), matrix_algebra(E.quotient, n),
                     matrix_map(E.inject, n), matrix_map(E.surject, n), matrix_map(E.splitting, n),
                     name="M%d(%s)" % (n, E.name))


def tensor_product(A: FilteredAlgebra, B: FilteredAlgebra, name: str | None = None) -> FilteredAlgebra:
    """``A (x) B`` with basis ``(a, b)`` of weight ``max(w(a), w(b))``."""
    if A.ring != B.ring:
        raise TypeMismatch("tensor product over different rings")

    def build():
        cap = min(A.cap, B.cap)
        _check_size(len(A.basis) * len(B.basis))
        weights, order = {}, []
        for a in A.basis:
            for b in B.basis:
                w = max(A.weights[a], B.weights[b])
                if w <= cap:
                    weights[(a, b)] = w
                    order.append((a, b))

        def prod(x, y):
            (a1, b1), (a2, b2) = x, y
            out = {}
            for c, u in A.mul_basis(a1, a2).items():
                for d, v in B.mul_basis(b1, b2).items():
                    out[(c, d)] = out.get((c, d), 0) + u * v
            return out

        T = FilteredAlgebra(name or "%s(x)%s" % (A.name, B.name), A.ring, weights, cap, product=prod,
                            commutative=A.commutative and B.commutative, lossy=A.lossy or B.lossy, order=order,
                            ident=("otimes", A._key, B._key))
        T.left, T.right = A, B
        return T

    return _memo(("otimes", A, B, name), build)


def matrix_tensor_iso(A: FilteredAlgebra, n: int) -> AlgebraMap:
    """``M_n(k) (x) A -> M_n(A)``, ``e_pq (x) a -> (p, q, a)``."""
    k = ground(A.ring, A.cap)
    S = tensor_product(matrix_algebra(k, n), A)
    T = matrix_algebra(A, n)
    one = A.ring.one
    images = {((p, q, e), a): {(p, q, a): one} for ((p, q, e), a) in S.basis}
    return AlgebraMap(S, T, images, name="iso", status=Status.UNCHECKED)


# ---------------------------------------------------------------------------
# stabilization


def stabilize(A: FilteredAlgebra, window: int = 2) -> AlgebraMap:
    """``A -> M_oo(k) (x) A``, ``a -> e_11 (x) a``, computed in the ``window x window`` stage."""
    S = tensor_power_stage(A, 1, window)
    one = A.ring.one
    return AlgebraMap(A, S, {a: {(((1, 1),), a): one} for a in A.basis}, name="stab", status=Status.UNCHECKED)


def tensor_power_stage(A: FilteredAlgebra, r: int, window: int = 2) -> FilteredAlgebra:
    """``M_oo(k)^{(x) r} (x) A`` in the ``window`` stage; basis ``(((p1,q1),...,(pr,qr)), a)``."""
    if r < 0:
        raise IndexOutOfRange("tensor power must be >= 0")
    if r == 0:
        return A

    def build():
        units = list(iproduct(range(1, window + 1), repeat=2))
        idx = list(iproduct(units, repeat=r))
        _check_size(len(idx) * len(A.basis))
        weights, order = {}, []
        for a in A.basis:
            for u in idx:
                weights[(u, a)] = A.weights[a]
                order.append((u, a))

        def prod(x, y):
            (u, a), (v, b) = x, y
            if any(q != p2 for (_, q), (p2, _) in zip(u, v)):
                return {}
            w = tuple((p, s) for (p, _), (_, s) in zip(u, v))
            return {(w, c): z for c, z in A.mul_basis(a, b).items()}

        T = FilteredAlgebra("Moo^%d(x)%s[%d]" % (r, A.name, window), A.ring, weights, A.cap, product=prod,
                            commutative=False, lossy=A.lossy, order=order, ident=("stable", A._key, r, window))
        T.base, T.power, T.window = A, r, window
        return T

    return _memo(("stable", A, r, window), build)


def stable_bond(A: FilteredAlgebra, r: int, window: int = 2) -> AlgebraMap:
    """Stage ``r -> r + 1``: ``x -> e_11 (x) x`` on the new outer factor."""
    S = tensor_power_stage(A, r, window)
    T = tensor_power_stage(A, r + 1, window)
    one = A.ring.one
    if r == 0:
        images = {a: {(((1, 1),), a): one} for a in S.basis}
    else:
        images = {(u, a): {(((1, 1),) + u, a): one} for (u, a) in S.basis}
    return AlgebraMap(S, T, images, name="bond(%d)" % r, status=Status.UNCHECKED)


@dataclass
class Stage:
    """A finite stage of a stabilized target with its bonding map to the next stage."""

    index: int
    algebra: FilteredAlgebra
    bond: AlgebraMap | None = None
    extras: dict = field(default_factory=dict)


def morita_stage(A: FilteredAlgebra, B: FilteredAlgebra, n: int) -> Stage:
    """``M_n(B)`` with bonding ``corner(n, n+1)``; ``A`` is the (fixed) source."""
    if n < 1:
        raise IndexOutOfRange("Morita stages start at n = 1")
    return Stage(n, matrix_algebra(B, n), corner(B, n, n + 1), {"source": A})


def stable_stage(A: FilteredAlgebra, B: FilteredAlgebra, r: int, window: int = 2) -> Stage:
    """``M_oo(k)^{(x) r} (x) B`` with bonding to stage ``r + 1``."""
    return Stage(r, tensor_power_stage(B, r, window), stable_bond(B, r, window), {"source": A})


def matrix_unit_witness(M: FilteredAlgebra):
    """``None`` when ``e_pq e_rs = delta_qr e_ps`` (with ``A``-products) holds on all stored pairs."""
    A = M.base
    for x in M.basis:
        for y in M.basis:
            (p, q, a), (r, s, b) = x, y
            want = {} if q != r else {(p, s, c): z for c, z in A.mul_basis(a, b).items()}
            if M.mul_basis(x, y) != want:
                return (x, y)
    return None


# ---------------------------------------------------------------------------
# Gamma: row- and column-bounded matrices (validator only)


@dataclass
class GammaCandidate:
    """An infinite matrix described by finitely many explicit entries and constant bands.

    ``entries`` maps ``(i, j)`` (1-based) to a value; each band ``(offset,
    start, value)`` puts ``value`` at ``(i, i + offset)`` for all ``i >= start``.
    Values are any hashable descriptions of elements of the coefficient algebra.
    """

    entries: dict = field(default_factory=dict)
    bands: list = field(default_factory=list)


def gamma_membership(x: GammaCandidate, bound: int) -> dict:
    """Check the two conditions defining the cone algebra on a finitely described matrix.

    ``finite_values``: the set of entries is finite.  ``row_column_bound``: each
    row and column has at most ``bound`` nonzero entries.
    """
    values = {v for v in x.entries.values() if v} | {v for (_, _, v) in x.bands if v}
    finite_values = True  # a finite description only produces finitely many values
    # rows far out only meet the bands; rows near the start also meet explicit entries
    rows, cols = {}, {}
    for (i, j), v in x.entries.items():
        if v:
            rows[i] = rows.get(i, 0) + 1
            cols[j] = cols.get(j, 0) + 1
    live = [(o, st) for (o, st, v) in x.bands if v]
    reach = max([i for (i, _) in x.entries] + [j for (_, j) in x.entries] + [st + abs(o) for o, st in live] + [1])
    worst_row = worst_col = 0
    for i in range(1, reach + 2):
        r = rows.get(i, 0) + sum(1 for o, st in live if i >= st and i + o >= 1 and (i, i + o) not in x.entries)
        c = cols.get(i, 0) + sum(1 for o, st in live if i - o >= max(st, 1) and (i - o, i) not in x.entries)
        worst_row, worst_col = max(worst_row, r), max(worst_col, c)
    return {
        "finite_values": finite_values,
        "values": sorted(values, key=label_key),
        "row_column_bound": max(worst_row, worst_col) <= bound,
        "max_row": worst_row,
        "max_column": worst_col,
    }


__all__ = [
    "matrix_algebra", "matrix_unit", "corner", "matrix_map", "matrix_extension", "tensor_product",
    "matrix_tensor_iso", "stabilize", "tensor_power_stage", "stable_bond", "Stage", "morita_stage",
    "stable_stage", "matrix_unit_witness", "GammaCandidate", "gamma_membership",
]

