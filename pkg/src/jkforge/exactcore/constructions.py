"""Kernels, subalgebras, fiber products, evaluations and extension records."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .algebra import FilteredAlgebra, direct_sum, fmt_label, poly_ext
from .errors import (
    DiagramNotCommuting,
    NotAnIdealWarning,
    SplittingNotSection,
    TypeMismatch,
)
from .linalg import Echelon, NotInSpan, kernel as _kernel, solve, vadd, vscale
from .maps import AlgebraMap, LinearMap, Status, compose


def span_echelon(A: FilteredAlgebra, vectors) -> Echelon:
    """Reduced echelon basis of a span, adapted to the filtration of ``A``."""
    ech = Echelon(A.ring, A.pivot_order())
    for v in vectors:
        ech.insert(v)
    return ech.reduce()


def exact_level(f: LinearMap) -> int:
    """Largest ``d`` such that every source label of weight <= d is exact under ``f``."""
    d = 0
    while d < f.source.cap and all(a in f.exact for a in f.source.basis if f.source.weights[a] == d + 1):
        d += 1
    return d


def subalgebra(A: FilteredAlgebra, ech: Echelon, name: str, *, cap: int | None = None,
               check: bool = True) -> FilteredAlgebra:
    """The subalgebra of ``A`` spanned by an echelon basis.

    Labels are ``0..r-1`` ordered by weight; the weight of a basis vector is
    the weight of its pivot.  ``alg.embedding[i]`` is the ambient vector and
    ``alg.inclusion`` the inclusion homomorphism.  If a product within the
    cap falls outside the span a :class:`NotAnIdealWarning` is issued and
    the product is projected.
    """
    cap = A.cap if cap is None else cap
    piv = ech.pivots()
    erows = [ech.rows[p] for p in piv]
    order = sorted(range(len(piv)), key=lambda i: (A.weights[piv[i]], i))
    order = [i for i in order if A.weights[piv[i]] <= cap]
    label_of = {piv[i]: n for n, i in enumerate(order)}
    weights = {n: A.weights[piv[i]] for n, i in enumerate(order)}
    embedding = {n: erows[i] for n, i in enumerate(order)}
    ring = A.ring
    warned = []

    def coords(v, strict):
        cs = solve(erows, piv, v, ring, strict)
        return {label_of[p]: c for p, c in zip(piv, cs) if c and p in label_of}

    def prod(i, j):
        v = A.mul(embedding[i], embedding[j])
        if weights[i] + weights[j] <= cap:
            try:
                return coords(v, True)
            except NotInSpan:
                if check and not warned:
                    warned.append((i, j))
                    warnings.warn("%s: product %d*%d leaves the subspace" % (name, i, j), NotAnIdealWarning)
        return coords(v, False)

    ident = ("sub", A._key, tuple(tuple(sorted(embedding[n].items(), key=lambda kv: A.index[kv[0]]))
                                  for n in range(len(embedding))))
    S = FilteredAlgebra(name, ring, weights, cap, product=prod, commutative=A.commutative, lossy=A.lossy,
                        order=list(range(len(order))), ident=ident)
    S.ambient = A
    S.embedding = embedding
    S.project = coords
    S.inclusion = AlgebraMap(S, A, embedding, name="incl", status=Status.VERIFIED)
    return S


def project_map(S: FilteredAlgebra, f: LinearMap, strict: bool = True, name: str | None = None):
    """Corestrict ``f: X -> ambient(S)`` to ``S`` (images must lie in ``S``)."""
    if f.target != S.ambient:
        raise TypeMismatch("%s does not land in the ambient of %s" % (f.name, S.name))
    images = {}
    exact = set()
    for a in f.source.basis:
        img = f.images[a]
        is_exact = a in f.exact
        try:
            images[a] = S.project(img, strict and is_exact)
        except NotInSpan:
            raise DiagramNotCommuting("%s(%s) is not in %s" % (f.name, fmt_label(a), S.name), witness=a)
        # membership is only certified where f is exact and S has the weight
        if is_exact and (not img or f.target.weight_of(img) <= S.cap):
            exact.add(a)
    cls = AlgebraMap if isinstance(f, AlgebraMap) else LinearMap
    kw = {"status": f.status} if cls is AlgebraMap else {}
    return cls(f.source, S, images, growth=f.growth, exact=exact, name=name or f.name, **kw)


def factor_through(f: LinearMap, inj: LinearMap, name: str | None = None):
    """Solve ``f = inj o g`` for ``g`` where ``inj`` is injective.

    ``inj`` is usually an inclusion; the result corestricts ``f`` to the
    image of ``inj`` and is transported back along ``inj``.
    """
    S = inj.source
    if getattr(S, "ambient", None) == inj.target and inj.images == S.inclusion.images:
        return project_map(S, f, name=name)
    ring = S.ring
    order = [("t", c) for c in inj.target.pivot_order()] + [("s", a) for a in S.basis]
    ech = Echelon(ring, order)
    for a in S.basis:
        row = {("t", c): x for c, x in inj.images[a].items()}
        row[("s", a)] = ring.one
        ech.insert(row)
    ech.reduce()
    piv = [p for p in ech.pivots() if p[0] == "t"]
    images = {}
    for a in f.source.basis:
        # eliminate the target part; the tracked source part is then -g(a)
        v = {("t", c): x for c, x in f.images[a].items()}
        for p in piv:
            x = v.get(p)
            if x:
                v = vadd(v, ech.rows[p], -ring.divide(x, ech.rows[p][p]))
        if any(k[0] == "t" for k in v) and a in f.exact:
            raise DiagramNotCommuting("%s(%s) is not in the image" % (f.name, fmt_label(a)), witness=a)
        images[a] = {k[1]: -x for k, x in v.items() if k[0] == "s"}
    cls = AlgebraMap if isinstance(f, AlgebraMap) else LinearMap
    kw = {"status": f.status} if cls is AlgebraMap else {}
    return cls(f.source, S, images, growth=f.growth, exact=f.exact, name=name or f.name, **kw)


def kernel(f: LinearMap, name: str | None = None) -> tuple:
    """Levelwise kernel of ``f`` as a subalgebra of its source, with inclusion.

    The kernel is computed up to the largest level where ``f`` is exact.
    """
    A = f.source
    d = exact_level(f)
    cols = [a for a in A.pivot_order() if A.weights[a] <= d]
    ech = _kernel({a: f.images[a] for a in cols}, cols, A.ring)
    K = subalgebra(A, ech, name or "ker(%s)" % f.name, cap=d)
    return K, K.inclusion


def image_rank(f: LinearMap, d: int) -> int:
    ech = Echelon(f.target.ring)
    for a in f.source.level(d):
        ech.insert(f.images[a])
    return len(ech)


def sum_projection(D: FilteredAlgebra, i: int, A: FilteredAlgebra) -> AlgebraMap:
    one = D.ring.one
    return AlgebraMap(D, A, {lab: ({lab[1]: one} if lab[0] == i else {}) for lab in D.basis},
                      name="pr%d" % (i + 1), status=Status.VERIFIED)


def sum_injection(A: FilteredAlgebra, D: FilteredAlgebra, i: int) -> AlgebraMap:
    one = D.ring.one
    return AlgebraMap(A, D, {a: {(i, a): one} for a in A.basis}, name="in%d" % (i + 1), status=Status.VERIFIED)


def fiber_product(f: LinearMap, g: LinearMap, name: str | None = None) -> tuple:
    """Pullback of ``A -f-> C <-g- B``; returns ``(P, pr1, pr2)``."""
    if f.target != g.target:
        raise TypeMismatch("fiber product needs a common target: %s vs %s" % (f.target.name, g.target.name))
    A, B = f.source, g.source
    if A.cap != B.cap or A.ring != B.ring:
        raise TypeMismatch("fiber product of algebras with different cap or ring")
    D = direct_sum([A, B])
    images, exact = {}, set()
    for lab in D.basis:
        i, a = lab
        images[lab] = f.images[a] if i == 0 else vscale(g.images[a], -1)
        if a in (f.exact if i == 0 else g.exact):
            exact.add(lab)
    diff = LinearMap(D, f.target, images, growth=max(f.growth, g.growth), exact=exact, name="diff")
    P, incl = kernel(diff, name or "(%s x_%s %s)" % (A.name, f.target.name, B.name))
    pr1 = compose(sum_projection(D, 0, A), incl)
    pr2 = compose(sum_projection(D, 1, B), incl)
    pr1.name, pr2.name = "pr1", "pr2"
    P.factors = (A, B)
    return P, pr1, pr2


def fiber_pair(P: FilteredAlgebra, p: LinearMap, q: LinearMap, name: str = "pair"):
    """The map into a fiber product induced by ``p: X -> A`` and ``q: X -> B``."""
    D = P.ambient
    images = {x: vadd({(0, a): c for a, c in p.images[x].items()}, {(1, b): c for b, c in q.images[x].items()})
              for x in p.source.basis}
    cls = AlgebraMap if isinstance(p, AlgebraMap) and isinstance(q, AlgebraMap) else LinearMap
    joint = cls(p.source, D, images, growth=max(p.growth, q.growth), exact=p.exact & q.exact, name=name)
    return project_map(P, joint, name=name)


# ---------------------------------------------------------------------------
# polynomial extensions


def evaluation(Ax: FilteredAlgebra, i: int) -> AlgebraMap:
    """Evaluation ``A[x] -> A`` at ``x = i`` for ``i`` in ``{0, 1}``."""
    A = Ax.base
    one = A.ring.one
    if i == 0:
        images = {(a, e): ({a: one} if e == 0 else {}) for (a, e) in Ax.basis}
    elif i == 1:
        images = {(a, e): {a: one} for (a, e) in Ax.basis}
    else:
        raise ValueError("evaluation only at 0 or 1")
    return AlgebraMap(Ax, A, images, name="ev%d" % i, status=Status.VERIFIED)


def constant_inclusion(A: FilteredAlgebra, Ax: FilteredAlgebra | None = None) -> AlgebraMap:
    Ax = Ax or poly_ext(A)
    one = A.ring.one
    return AlgebraMap(A, Ax, {a: {(a, 0): one} for a in A.basis}, name="const", status=Status.VERIFIED)


def poly_map(f: LinearMap, source_x: FilteredAlgebra | None = None, target_x: FilteredAlgebra | None = None):
    """``f[x]``: apply ``f`` coefficientwise."""
    Sx = source_x or poly_ext(f.source)
    Tx = target_x or poly_ext(f.target)
    images = {}
    exact = set()
    for (a, e) in Sx.basis:
        images[(a, e)] = {(c, e): z for c, z in f.images[a].items() if (c, e) in Tx.index}
        if a in f.exact and all((c, e) in Tx.index for c in f.images[a]):
            exact.add((a, e))
    cls = AlgebraMap if isinstance(f, AlgebraMap) else LinearMap
    kw = {"status": f.status} if cls is AlgebraMap else {}
    return cls(Sx, Tx, images, growth=f.growth, exact=exact, name=f.name + "[x]", **kw)


def mul_x(Ax: FilteredAlgebra, a, power: int = 1) -> dict:
    """The element ``a * x^power`` of ``A[x]`` (dropped if above the cap)."""
    lab = (a, power)
    return {lab: Ax.ring.one} if lab in Ax.index else {}


def levelwise_injective(f: LinearMap) -> bool:
    d = exact_level(f)
    return all(image_rank(f, e) == len(f.source.level(e)) for e in range(1, d + 1))


def levelwise_surjective(f: LinearMap) -> bool:
    d = min(exact_level(f), f.target.cap)
    return all(image_rank(f, e) >= len(f.target.level(e)) for e in range(1, d + 1))


# ---------------------------------------------------------------------------
# extensions


@dataclass
class Extension:
    """A k-split extension ``kernel -inject-> middle -surject-> quotient``.

    ``splitting`` is a k-linear section of ``surject``.
    """

    kernel: FilteredAlgebra
    middle: FilteredAlgebra
    quotient: FilteredAlgebra
    inject: AlgebraMap
    surject: AlgebraMap
    splitting: LinearMap
    name: str = "E"
    extras: dict = field(default_factory=dict)

    def section_witness(self, splitting: LinearMap | None = None):
        s = splitting or self.splitting
        comp = compose(self.surject, s)
        for a in self.quotient.basis:
            if a in comp.exact and comp.images[a] != {a: self.quotient.ring.one}:
                return a
        return None

    def check(self) -> dict:
        """Levelwise verdicts for every extension axiom."""
        out = {}
        out["surject_inject_zero"] = compose(self.surject, self.inject).is_zero()
        out["inject_injective"] = levelwise_injective(self.inject)
        out["section"] = self.section_witness() is None
        out["image_is_kernel"] = self._image_is_kernel()
        out["inject_hom"] = self.inject.verify()
        out["surject_hom"] = self.surject.verify()
        return out

    def _image_is_kernel(self) -> bool:
        K, incl = kernel(self.surject)
        span = Echelon(self.middle.ring, self.middle.pivot_order())
        for a in self.kernel.basis:
            span.insert(self.inject.images[a])
        span.reduce()
        for n in K.basis:
            v = incl.images[n]
            if K.weights[n] > min(exact_level(self.inject), self.kernel.cap):
                continue
            try:
                span.coordinates(v)
            except NotInSpan:
                return False
        return True

    def validate(self) -> "Extension":
        w = self.section_witness()
        if w is not None:
            raise SplittingNotSection("%s: surject(splitting(%s)) != %s" % (self.name, fmt_label(w), fmt_label(w)),
                                      witness=w)
        verdict = self.check()
        bad = [k for k, v in verdict.items() if not v]
        if bad:
            raise DiagramNotCommuting("%s fails %s" % (self.name, ", ".join(bad)), witness=bad[0])
        return self
