"""Filtered based algebras truncated at a weight cap.

An algebra is a finite basis of labels, each carrying a weight >= 1, and a
bilinear product on basis pairs.  Products of a weight-p and a weight-q
element lie in the span of weights <= p+q.  Everything above ``cap`` is
dropped, so a product ``x*y`` is only guaranteed exact when
``weight(x) + weight(y) <= cap``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Callable, Hashable, Iterable, Mapping

from .errors import AssocFailure, CapOverflow, FiltrationViolation, SizeLimit, UnknownSymbol
from .linalg import vadd, vclean, vscale
from .rings import QQ, Ring


@dataclass
class Limits:
    max_basis: int = 20000
    max_simplices: int = 200000
    max_maps: int = 100000


LIMITS = Limits()


def label_key(x):
    """Total order on nested labels (ints, strings, tuples)."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(label_key(y) for y in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted(label_key(y) for y in x)))
    return (4, repr(x))


def fmt_label(x) -> str:
    if isinstance(x, tuple):
        return "(" + ",".join(fmt_label(y) for y in x) + ")"
    return str(x)


class FilteredAlgebra:
    """A truncated filtered algebra over a coefficient ring.

    ``product`` computes basis products lazily and is cached in
    ``table``; a presentation can instead pass the full ``table``.
    Two algebras are equal when name, ring, cap and weighted basis agree,
    so constructors should give structurally meaningful names.
    """

    def __init__(
        self,
        name: str,
        ring: Ring,
        weights: Mapping[Hashable, int],
        cap: int,
        *,
        table: Mapping | None = None,
        product: Callable | None = None,
        commutative: bool = False,
        lossy: bool = False,
        grading: Mapping | None = None,
        order: Iterable | None = None,
        ident=None,
    ):
        if len(weights) > LIMITS.max_basis:
            raise SizeLimit("%s: basis of size %d exceeds limit %d" % (name, len(weights), LIMITS.max_basis))
        self.name = name
        self.ring = ring
        self.cap = cap
        labels = list(order) if order is not None else list(weights)
        self.basis = tuple(sorted(labels, key=lambda a: weights[a]))
        self.weights = dict(weights)
        self.index = {a: i for i, a in enumerate(self.basis)}
        self.table = dict(table) if table is not None else {}
        self._product = product
        self.commutative = commutative
        self.lossy = lossy
        self.grading = dict(grading) if grading is not None else None
        # ident distinguishes structurally different algebras with equal names
        self._key = (name, ring, cap, self.basis, tuple(self.weights[a] for a in self.basis), ident)
        self._hash = hash(self._key)

    # identity -----------------------------------------------------------
    def __eq__(self, other):
        return self is other or (isinstance(other, FilteredAlgebra) and self._key == other._key)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "<%s over %s, cap %d, dim %d>" % (self.name, self.ring.name, self.cap, len(self.basis))

    def __len__(self):
        return len(self.basis)

    # arithmetic -----------------------------------------------------------
    def mul_basis(self, a, b) -> dict:
        key = (a, b)
        r = self.table.get(key)
        if r is None:
            if self._product is None:
                r = {}
            else:
                r = {c: x for c, x in self._product(a, b).items() if x and c in self.index}
            self.table[key] = r
        return r

    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for a, xa in x.items():
            for b, yb in y.items():
                c = xa * yb
                if not c:
                    continue
                for d, z in self.mul_basis(a, b).items():
                    v = out.get(d, 0) + c * z
                    if v:
                        out[d] = v
                    else:
                        out.pop(d, None)
        return out

    def weight_of(self, x: Mapping) -> int:
        return max((self.weights[a] for a, c in x.items() if c), default=0)

    def exact_product(self, x: Mapping, y: Mapping) -> bool:
        return self.weight_of(x) + self.weight_of(y) <= self.cap

    def level(self, d: int) -> list:
        return [a for a in self.basis if self.weights[a] <= d]

    def ranks(self) -> dict:
        """Cumulative rank of each filtration level 1..cap."""
        return {d: len(self.level(d)) for d in range(1, self.cap + 1)}

    def pivot_order(self) -> list:
        """Basis ordered heaviest first, for filtration-adapted echelon forms."""
        return sorted(self.basis, key=lambda a: (-self.weights[a], self.index[a]))

    # elements -------------------------------------------------------------
    def elem(self, coeffs=None) -> "Element":
        if coeffs is None:
            coeffs = {}
        elif not isinstance(coeffs, Mapping):
            coeffs = {coeffs: self.ring.one}
        for a in coeffs:
            if a not in self.index:
                raise UnknownSymbol("%r is not a basis symbol of %s" % (a, self.name))
        return Element(self, {a: self.ring.coerce(c) for a, c in coeffs.items() if c})

    def gen(self, a) -> "Element":
        return self.elem({a: 1})

    @property
    def zero(self) -> "Element":
        return Element(self, {})

    # validation -------------------------------------------------------------
    def check_filtration(self):
        for a in self.basis:
            for b in self.basis:
                if self.weights[a] + self.weights[b] > self.cap:
                    continue
                p = self.mul_basis(a, b)
                if p and self.weight_of(p) > self.weights[a] + self.weights[b]:
                    raise FiltrationViolation(
                        "%s*%s lands in weight %d > %d"
                        % (fmt_label(a), fmt_label(b), self.weight_of(p), self.weights[a] + self.weights[b]),
                        witness=(a, b),
                    )

    def associativity_witness(self):
        """First basis triple within the cap where associativity fails, or None."""
        for a, b, c in iproduct(self.basis, repeat=3):
            if self.weights[a] + self.weights[b] + self.weights[c] > self.cap:
                continue
            ab = self.mul_basis(a, b)
            bc = self.mul_basis(b, c)
            left = self.mul(ab, {c: self.ring.one})
            right = self.mul({a: self.ring.one}, bc)
            if vclean(vadd(left, right, -1)):
                return (a, b, c)
        return None

    def commutativity_witness(self):
        for a in self.basis:
            for b in self.basis:
                if self.weights[a] + self.weights[b] > self.cap:
                    continue
                if vclean(vadd(self.mul_basis(a, b), self.mul_basis(b, a), -1)):
                    return (a, b)
        return None

    def validate(self) -> "FilteredAlgebra":
        self.check_filtration()
        w = self.associativity_witness()
        if w is not None:
            raise AssocFailure("associativity fails on %s" % (w,), witness=w)
        if self.commutative:
            w = self.commutativity_witness()
            if w is not None:
                raise AssocFailure("commutative flag set but %s*%s != %s*%s" % (w[0], w[1], w[1], w[0]), witness=w)
        return self


class Element:
    """An element of a :class:`FilteredAlgebra` (sparse coefficient dict)."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: FilteredAlgebra, coeffs: Mapping):
        self.alg = alg
        self.coeffs = vclean(coeffs)

    def _other(self, other):
        if isinstance(other, Element):
            if other.alg != self.alg:
                from .errors import TypeMismatch

                raise TypeMismatch("elements of %s and %s" % (self.alg.name, other.alg.name))
            return other.coeffs
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Element(self.alg, vadd(self.coeffs, o))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Element(self.alg, vadd(self.coeffs, o, -1))

    def __neg__(self):
        return Element(self.alg, vscale(self.coeffs, -1))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return Element(self.alg, vscale(self.coeffs, self.alg.ring.coerce(other)))
        return Element(self.alg, self.alg.mul(self.coeffs, o))

    def __rmul__(self, other):
        return Element(self.alg, vscale(self.coeffs, self.alg.ring.coerce(other)))

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.alg == other.alg and self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.alg, tuple(sorted(self.coeffs.items(), key=lambda kv: label_key(kv[0])))))

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def weight(self) -> int:
        return self.alg.weight_of(self.coeffs)

    def coeff(self, a):
        return self.coeffs.get(a, self.alg.ring.zero)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for a in sorted(self.coeffs, key=lambda a: (self.alg.index[a])):
            c = self.coeffs[a]
            terms.append("%s*%s" % (self.alg.ring.format(c), fmt_label(a)))
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# presentations


def make_algebra(presentation: Mapping, cap: int, ring: Ring = QQ, *, validate: bool = True) -> FilteredAlgebra:
    """Build an algebra from ``{"name", "basis": {sym: weight}, "mult": {(a, b): {c: coeff}}}``.

    Symbols heavier than ``cap`` are truncated away; products that lose
    terms to the truncation set the ``lossy`` flag.  Raises
    :class:`FiltrationViolation` or :class:`AssocFailure` on bad tables.
    """
    name = presentation.get("name", "A")
    declared = dict(presentation["basis"])
    for a, w in declared.items():
        if not isinstance(w, int) or w < 1:
            raise FiltrationViolation("symbol %r has weight %r < 1" % (a, w), witness=a)
    for (a, b), prod in presentation.get("mult", {}).items():
        for s in (a, b, *prod):
            if s not in declared:
                raise UnknownSymbol("table mentions undeclared symbol %r" % (s,), witness=s)
        heavy = [c for c, x in prod.items() if x and declared[c] > declared[a] + declared[b]]
        if heavy:
            raise FiltrationViolation(
                "%s*%s has a term of weight %d > %d" % (a, b, declared[heavy[0]], declared[a] + declared[b]),
                witness=(a, b),
            )
    kept = {a: w for a, w in declared.items() if w <= cap}
    lossy = len(kept) < len(declared)
    table = {}
    for (a, b), prod in presentation.get("mult", {}).items():
        if a not in kept or b not in kept:
            continue
        coerced = {c: ring.coerce(x) for c, x in prod.items() if ring.coerce(x)}
        if any(c not in kept for c in coerced):
            lossy = True
        table[(a, b)] = {c: x for c, x in coerced.items() if c in kept}
    alg = FilteredAlgebra(
        name,
        ring,
        kept,
        cap,
        table=table,
        commutative=bool(presentation.get("commutative", False)),
        lossy=lossy,
        grading=presentation.get("grading"),
        order=[a for a in declared if a in kept],
    )
    if validate:
        alg.validate()
    return alg


def ground(ring: Ring = QQ, cap: int = 4) -> FilteredAlgebra:
    """The ground ring k as the algebra ``{e}``, ``e*e = e``."""
    return FilteredAlgebra("k", ring, {"e": 1}, cap, table={("e", "e"): {"e": ring.one}}, commutative=True)


def zero_algebra(ring: Ring = QQ, cap: int = 4) -> FilteredAlgebra:
    return FilteredAlgebra("0", ring, {}, cap, commutative=True)


def square_zero(ring: Ring = QQ, dim: int = 1, cap: int = 4, name: str | None = None) -> FilteredAlgebra:
    """A k-module of rank ``dim`` with trivial multiplication."""
    labels = ["m"] if dim == 1 else ["m%d" % i for i in range(1, dim + 1)]
    return FilteredAlgebra(name or "sqz%d" % dim, ring, {a: 1 for a in labels}, cap, commutative=True,
                           order=labels)


UNIT = ("unit",)


def unitize(A: FilteredAlgebra) -> FilteredAlgebra:
    """``A+ = A (+) k`` with ``(a,n)(b,m) = (ab + m a + n b, nm)``; the unit has weight 1."""
    if A.cap < 1:
        raise CapOverflow("cap %d cannot hold the unit symbol" % A.cap)
    if UNIT in A.index:
        raise CapOverflow("%s already uses the unit symbol" % A.name)
    one = A.ring.one

    def prod(a, b):
        if a == UNIT and b == UNIT:
            return {UNIT: one}
        if a == UNIT:
            return {b: one}
        if b == UNIT:
            return {a: one}
        return A.mul_basis(a, b)

    weights = dict(A.weights)
    weights[UNIT] = 1
    return FilteredAlgebra(A.name + "+", A.ring, weights, A.cap, product=prod, commutative=A.commutative,
                           lossy=A.lossy, order=[UNIT, *A.basis], ident=("unitize", A._key))


def direct_sum(algebras, name: str | None = None) -> FilteredAlgebra:
    """Product algebra with labels ``(i, a)`` and componentwise multiplication."""
    algebras = list(algebras)
    if not algebras:
        raise ValueError("direct_sum of nothing; use zero_algebra")
    ring, cap = algebras[0].ring, algebras[0].cap
    weights = {}
    for i, A in enumerate(algebras):
        for a in A.basis:
            weights[(i, a)] = A.weights[a]

    def prod(x, y):
        if x[0] != y[0]:
            return {}
        return {(x[0], c): z for c, z in algebras[x[0]].mul_basis(x[1], y[1]).items()}

    return FilteredAlgebra(
        name or "(" + " + ".join(A.name for A in algebras) + ")",
        ring,
        weights,
        cap,
        product=prod,
        commutative=all(A.commutative for A in algebras),
        lossy=any(A.lossy for A in algebras),
        order=[(i, a) for i, A in enumerate(algebras) for a in A.basis],
        ident=("sum",) + tuple(A._key for A in algebras),
    )


def poly_ext(A: FilteredAlgebra, var: str = "x") -> FilteredAlgebra:
    """The polynomial extension ``A[x]``.

    Labels are ``(a, i)`` for ``a x^i``; the weight is ``max(weight(a), i)``,
    which satisfies the filtration law and keeps evaluations and the
    elementary homotopies used here weight non-increasing.
    """
    weights = {}
    order = []
    for i in range(A.cap + 1):
        for a in A.basis:
            w = max(A.weights[a], i)
            if w <= A.cap:
                weights[(a, i)] = w
                order.append((a, i))

    def prod(x, y):
        (a, i), (b, j) = x, y
        return {(c, i + j): z for c, z in A.mul_basis(a, b).items() if (c, i + j) in weights}

    alg = FilteredAlgebra("%s[%s]" % (A.name, var), A.ring, weights, A.cap, product=prod,
                          commutative=A.commutative, lossy=A.lossy or bool(A.basis), order=order,
                          ident=("poly", A._key))
    alg.base = A
    alg.var = var
    return alg
