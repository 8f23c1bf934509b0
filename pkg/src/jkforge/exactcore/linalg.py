"""Sparse exact linear algebra over Z, Q and F_p.

Vectors are dicts ``column -> scalar`` with no stored zeros.  Row echelon
forms are computed by incremental insertion; over Z the pivots are
combined with extended gcds (Hermite style), so every basis produced here
spans a saturated lattice when it spans a kernel.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

from .rings import Ring

Vec = dict


class NotInSpan(ArithmeticError):
    """Raised when a vector is not a combination of an echelon basis."""


def vadd(u: Mapping, v: Mapping, c=1) -> Vec:
    """Return ``u + c*v``."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, 0) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vscale(u: Mapping, c) -> Vec:
    if not c:
        return {}
    out = {}
    for k, x in u.items():
        y = c * x
        if y:
            out[k] = y
    return out


def vclean(u: Mapping) -> Vec:
    return {k: x for k, x in u.items() if x}


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class Echelon:
    """A row echelon basis with respect to a fixed column priority.

    ``order`` lists columns from most to least significant; a row's pivot
    is its most significant nonzero column.  Columns absent from ``order``
    rank after all listed ones, in insertion order.
    """

    def __init__(self, ring: Ring, order: Iterable[Hashable] = ()):
        self.ring = ring
        self.rank_of = {c: i for i, c in enumerate(order)}
        self.rows: dict = {}  # pivot -> row

    def _rank(self, col):
        r = self.rank_of.get(col)
        if r is None:
            r = self.rank_of[col] = len(self.rank_of)
        return r

    def lead(self, v: Mapping):
        return min(v, key=self._rank) if v else None

    def insert(self, v: Mapping) -> bool:
        """Insert ``v``; return True if the rank grew."""
        v = vclean(v)
        grew = False
        while v:
            p = self.lead(v)
            row = self.rows.get(p)
            if row is None:
                if self.ring.is_field:
                    v = vscale(v, self.ring.divide(self.ring.one, v[p]))
                elif v[p] < 0:
                    v = vscale(v, -1)
                self.rows[p] = v
                return True
            if self.ring.is_field:
                v = vadd(v, row, -self.ring.divide(v[p], row[p]))
                continue
            a, b = int(row[p]), int(v[p])
            if b % a == 0:
                v = vadd(v, row, -(b // a))
                continue
            g, s, t = _xgcd(a, b)
            new_pivot = vadd(vscale(row, s), v, t)
            rest = vadd(vscale(row, b // g), v, -(a // g))
            if new_pivot[p] < 0:
                new_pivot = vscale(new_pivot, -1)
            self.rows[p] = new_pivot
            v = rest
            grew = True
        return grew

    def pivots(self) -> list:
        return sorted(self.rows, key=self._rank)

    def reduce(self) -> "Echelon":
        """Clear entries above pivots (RREF over a field, HNF over Z)."""
        piv = self.pivots()
        for j in reversed(range(len(piv))):
            pj = piv[j]
            rj = self.rows[pj]
            for i in range(j):
                ri = self.rows[piv[i]]
                x = ri.get(pj)
                if not x:
                    continue
                if self.ring.is_field:
                    c = self.ring.divide(x, rj[pj])
                else:
                    c = int(x) // int(rj[pj])
                if c:
                    self.rows[piv[i]] = vadd(ri, rj, -c)
        return self

    def basis(self) -> list:
        return [self.rows[p] for p in self.pivots()]

    def __len__(self):
        return len(self.rows)

    def coordinates(self, v: Mapping, strict: bool = True) -> list:
        """Coefficients of ``v`` on :meth:`basis`; see :func:`solve`."""
        return solve(self.basis(), self.pivots(), v, self.ring, strict)


def solve(rows, pivots, v: Mapping, ring: Ring, strict: bool = True) -> list:
    """Express ``v`` in an echelon basis.

    With ``strict`` a nonzero residual raises :class:`NotInSpan`; otherwise
    the residual is dropped (used for best-effort images outside a
    guarantee window).
    """
    v = vclean(v)
    coeffs = []
    for row, p in zip(rows, pivots):
        x = v.get(p)
        if not x:
            coeffs.append(ring.zero)
            continue
        try:
            c = ring.divide(x, row[p])
        except ArithmeticError:
            if strict:
                raise NotInSpan("coefficient %s not divisible by pivot %s" % (x, row[p]))
            c = ring.coerce(int(x) // int(row[p]))
        coeffs.append(c)
        v = vadd(v, row, -c)
    if v and strict:
        raise NotInSpan("residual %r" % (dict(list(v.items())[:4]),))
    return coeffs


def kernel(images: Mapping, source_order: list, ring: Ring) -> Echelon:
    """Kernel of a linear map given on source columns.

    ``images`` maps each source column to its image vector.  The result is
    a reduced echelon basis of the kernel with pivots taken in
    ``source_order`` (most significant first).
    """
    src_tag = [("s", c) for c in source_order]
    targets = []
    seen = set()
    for c in source_order:
        for t in images.get(c, {}):
            if t not in seen:
                seen.add(t)
                targets.append(("t", t))
    ech = Echelon(ring, targets + src_tag)
    for c in source_order:
        row = {("t", t): x for t, x in images.get(c, {}).items() if x}
        row[("s", c)] = ring.one
        ech.insert(row)
    ech.reduce()
    out = Echelon(ring, source_order)
    for p in ech.pivots():
        if p[0] == "s":
            out.rows[p[1]] = {k[1]: x for k, x in ech.rows[p].items()}
    return out


def rank(vectors: Iterable[Mapping], ring: Ring) -> int:
    ech = Echelon(ring)
    for v in vectors:
        ech.insert(v)
    return len(ech)


def to_fraction(x):
    """Scalar to ``Fraction`` (residues keep their representative)."""
    return Fraction(int(x)) if not isinstance(x, (int, Fraction)) else Fraction(x)
