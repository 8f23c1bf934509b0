"""Linear maps and algebra homomorphisms between truncated algebras.

A map stores the image of every source basis label together with the set
``exact`` of labels whose stored image is known to be the true image (not
damaged by truncation).  All equality and homomorphism checks are scoped to
exact labels.  The declared ``growth`` g gives the coarser classical window
``weight <= cap // g`` which is always contained in the exact set for maps
built by this package.
"""

from __future__ import annotations

import enum
from typing import Mapping

from .algebra import Element, FilteredAlgebra, fmt_label, label_key
from .errors import CapOverflow, TypeMismatch
from .linalg import vadd, vclean, vscale


class Status(enum.Enum):
    UNCHECKED = "unchecked"
    VERIFIED = "verified"
    FAILED = "failed"


def _coeffs(x):
    return x.coeffs if isinstance(x, Element) else x


class LinearMap:
    """A k-linear map given on a basis (levelwise matrices on demand)."""

    def __init__(self, source: FilteredAlgebra, target: FilteredAlgebra, images: Mapping, *, growth: int = 1,
                 exact=None, name: str = "f"):
        self.source = source
        self.target = target
        self.growth = growth
        self.name = name
        imgs = {}
        for a in source.basis:
            v = vclean(_coeffs(images.get(a, {})))
            for c in v:
                if c not in target.index:
                    raise TypeMismatch("%s: image of %s mentions %r, not in %s" % (name, fmt_label(a), c, target.name))
            imgs[a] = v
        self.images = imgs
        self.exact = frozenset(source.basis) if exact is None else frozenset(exact) & frozenset(source.basis)

    # evaluation -------------------------------------------------------------
    def window(self) -> int:
        """The classical guarantee window ``cap // growth`` on source weights."""
        return self.target.cap // max(self.growth, 1)

    def is_exact_on(self, x) -> bool:
        return all(a in self.exact for a in _coeffs(x))

    def apply(self, x, strict: bool = False):
        """Image of ``x`` (an :class:`Element` or a coefficient dict).

        With ``strict`` raises :class:`CapOverflow` when ``x`` has support
        outside the exact set.
        """
        cx = _coeffs(x)
        if strict and not self.is_exact_on(cx):
            bad = sorted((a for a in cx if a not in self.exact), key=label_key)
            raise CapOverflow("%s is not certified on %s" % (self.name, fmt_label(bad[0])), witness=bad[0])
        out: dict = {}
        for a, c in cx.items():
            img = self.images.get(a)
            if img is None:
                raise TypeMismatch("%r is not a basis label of %s" % (a, self.source.name))
            for b, z in img.items():
                v = out.get(b, 0) + c * z
                if v:
                    out[b] = v
                else:
                    out.pop(b, None)
        return Element(self.target, out) if isinstance(x, Element) else out

    __call__ = apply

    def level_matrix(self, d: int) -> list:
        """Matrix of the restriction to source level ``d`` (rows: target labels of weight <= growth*d)."""
        cols = self.source.level(d)
        rows = self.target.level(min(self.growth * d, self.target.cap))
        zero = self.target.ring.zero
        return [[self.images[a].get(r, zero) for a in cols] for r in rows]

    # algebra of linear maps --------------------------------------------------
    def _check_parallel(self, other):
        if self.source != other.source or self.target != other.target:
            raise TypeMismatch("%s and %s are not parallel" % (self.name, other.name))

    def __add__(self, other):
        self._check_parallel(other)
        return LinearMap(self.source, self.target, {a: vadd(self.images[a], other.images[a]) for a in self.images},
                         growth=max(self.growth, other.growth), exact=self.exact & other.exact,
                         name="(%s+%s)" % (self.name, other.name))

    def __sub__(self, other):
        self._check_parallel(other)
        return LinearMap(self.source, self.target, {a: vadd(self.images[a], other.images[a], -1) for a in self.images},
                         growth=max(self.growth, other.growth), exact=self.exact & other.exact,
                         name="(%s-%s)" % (self.name, other.name))

    def scaled(self, c):
        c = self.target.ring.coerce(c)
        return LinearMap(self.source, self.target, {a: vscale(v, c) for a, v in self.images.items()},
                         growth=self.growth, exact=self.exact, name=self.name)

    def as_linear(self) -> "LinearMap":
        return LinearMap(self.source, self.target, self.images, growth=self.growth, exact=self.exact, name=self.name)

    # comparison -------------------------------------------------------------
    def difference_witness(self, other):
        """First exact basis label where the two maps differ, or None."""
        self._check_parallel(other)
        for a in self.source.basis:
            if a in self.exact and a in other.exact and self.images[a] != other.images[a]:
                return a
        return None

    def equals(self, other) -> bool:
        return self.difference_witness(other) is None

    def is_zero(self) -> bool:
        return all(not self.images[a] for a in self.exact)

    def __repr__(self):
        return "<%s %s: %s -> %s, growth %d>" % (type(self).__name__, self.name, self.source.name, self.target.name,
                                                self.growth)


class AlgebraMap(LinearMap):
    """A homomorphism of algebras, with a verification status."""

    def __init__(self, source, target, images, *, growth: int = 1, exact=None, name: str = "f",
                 status: Status = Status.UNCHECKED):
        super().__init__(source, target, images, growth=growth, exact=exact, name=name)
        self.status = status
        self.witness = None

    def hom_witness(self):
        """First basis pair within the window where ``f(ab) != f(a)f(b)``."""
        S, T = self.source, self.target
        exact = self.exact
        for a in S.basis:
            if a not in exact:
                continue
            wa = S.weights[a]
            fa = self.images[a]
            wfa = T.weight_of(fa)
            for b in S.basis:
                if b not in exact or wa + S.weights[b] > S.cap:
                    continue
                fb = self.images[b]
                if wfa + T.weight_of(fb) > T.cap:
                    continue
                ab = S.mul_basis(a, b)
                if not all(c in exact for c in ab):
                    continue
                if vclean(vadd(self.apply(ab), T.mul(fa, fb), -1)):
                    return (a, b)
        return None

    def verify(self) -> bool:
        """Exhaustively check multiplicativity; updates :attr:`status`."""
        self.witness = self.hom_witness()
        self.status = Status.VERIFIED if self.witness is None else Status.FAILED
        return self.witness is None


def identity(A: FilteredAlgebra) -> AlgebraMap:
    one = A.ring.one
    return AlgebraMap(A, A, {a: {a: one} for a in A.basis}, name="id", status=Status.VERIFIED)


def zero_map(A: FilteredAlgebra, B: FilteredAlgebra, linear: bool = False):
    cls = LinearMap if linear else AlgebraMap
    f = cls(A, B, {}, name="0")
    if not linear:
        f.status = Status.VERIFIED
    return f


def compose(g: LinearMap, f: LinearMap) -> LinearMap:
    """``g o f``.  Algebra maps compose to algebra maps; status is verified only if both are."""
    if f.target != g.source:
        raise TypeMismatch("cannot compose %s after %s: %s != %s" % (g.name, f.name, f.target.name, g.source.name))
    images = {}
    exact = set()
    for a in f.source.basis:
        img = f.images[a]
        images[a] = g.apply(img)
        if a in f.exact and all(c in g.exact for c in img):
            exact.add(a)
    name = "%s.%s" % (g.name, f.name)
    if isinstance(f, AlgebraMap) and isinstance(g, AlgebraMap):
        if f.status is Status.VERIFIED and g.status is Status.VERIFIED:
            status = Status.VERIFIED
        elif Status.FAILED in (f.status, g.status):
            status = Status.FAILED
        else:
            status = Status.UNCHECKED
        return AlgebraMap(f.source, g.target, images, growth=f.growth * g.growth, exact=exact, name=name,
                          status=status)
    return LinearMap(f.source, g.target, images, growth=f.growth * g.growth, exact=exact, name=name)


def compose_all(*maps):
    """``compose_all(h, g, f) = h o g o f``."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out
