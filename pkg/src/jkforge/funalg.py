"""Polynomial function algebras on simplices and on finite complexes.

``A^{Delta^n}`` is realised as ``A[t_1..t_n]`` (``t_0 = 1 - sum t_i`` is
eliminated); the label ``(b, mu)`` stands for ``b * t^mu`` and has weight
``weight(b) + |mu|``.  For a complex ``K`` the algebra ``A^K`` is the
subalgebra of the product over maximal simplices cut out by agreement on
shared faces.

Every power-type algebra carries a ``view`` that converts between its own
labels and vectors in that product (the *flat* representation), so maps
between powers can be written componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from . import simplicial as sx
from .exactcore.algebra import FilteredAlgebra, direct_sum, ground, poly_ext
from .exactcore.constructions import (
    Extension,
    constant_inclusion,
    evaluation,
    kernel,
    project_map,
    subalgebra,
)
from .exactcore.errors import DiagramNotCommuting, IndexOutOfRange, TypeMismatch
from .exactcore.linalg import NotInSpan, kernel as _kernel, vadd
from .exactcore.maps import AlgebraMap, LinearMap, Status, compose

_CACHE: dict = {}


def _memo(key, build):
    hit = _CACHE.get(key)
    if hit is None:
        hit = _CACHE[key] = build()
    return hit


def clear_caches():
    _CACHE.clear()


# ---------------------------------------------------------------------------
# truncated polynomials in t_1..t_m (dict exponent tuple -> scalar)


def _pmul(p, q, maxdeg):
    out = {}
    for e1, c1 in p.items():
        d1 = sum(e1)
        for e2, c2 in q.items():
            if d1 + sum(e2) > maxdeg:
                continue
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _var(m, i, one):
    """``t_i`` in normal form (``t_0 = 1 - sum``)."""
    if i == 0:
        p = {(0,) * m: one}
        for k in range(m):
            e = [0] * m
            e[k] = 1
            p[tuple(e)] = -one
        return p
    e = [0] * m
    e[i - 1] = 1
    return {tuple(e): one}


def _monomials(n, maxdeg):
    if n == 0:
        return [()]
    out = []

    def rec(prefix, left):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        for e in range(left + 1):
            rec(prefix + [e], left - e)

    rec([], maxdeg)
    return sorted(out, key=lambda e: (sum(e), tuple(-x for x in e)))


# ---------------------------------------------------------------------------
# simplex algebras


class SimplexAlgebra(FilteredAlgebra):
    """``A^{Delta^n}`` with face, degeneracy and pullback operators."""

    def __init__(self, A: FilteredAlgebra, n: int):
        if n < 0:
            raise IndexOutOfRange("simplex dimension must be >= 0")
        weights, order = {}, []
        for mu in _monomials(n, A.cap):
            for b in A.basis:
                w = A.weights[b] + sum(mu)
                if w <= A.cap:
                    weights[(b, mu)] = w
                    order.append((b, mu))

        def prod(x, y):
            (a, mu), (b, nu) = x, y
            s = tuple(i + j for i, j in zip(mu, nu))
            return {(c, s): z for c, z in A.mul_basis(a, b).items()}

        super().__init__("%s^D%d" % (A.name, n), A.ring, weights, A.cap, product=prod, commutative=A.commutative,
                         lossy=True, order=order, ident=("simplex", A._key, n))
        self.base = A
        self.n = n
        self._pull = {}

    def poly_of(self, mu) -> dict:
        return {mu: self.ring.one}

    def pullback(self, alpha) -> AlgebraMap:
        """Restriction along ``alpha: [m] -> [n]`` (a weakly increasing tuple)."""
        alpha = tuple(alpha)
        hit = self._pull.get(alpha)
        if hit is not None:
            return hit
        n, m = self.n, len(alpha) - 1
        if any(not 0 <= a <= n for a in alpha):
            raise IndexOutOfRange("pullback index outside [0, %d]" % n)
        if any(alpha[i] > alpha[i + 1] for i in range(m)):
            raise IndexOutOfRange("pullback map must be weakly increasing")
        T = simplex_algebra(self.base, m)
        one = self.ring.one
        maxdeg = self.cap
        lin = {}
        for j in range(1, n + 1):
            p = {}
            for i, a in enumerate(alpha):
                if a == j:
                    p = vadd(p, _var(m, i, one))
            lin[j] = p
        polys = {}

        def poly(mu):
            hit = polys.get(mu)
            if hit is None:
                p = {(0,) * m: one}
                for j, e in enumerate(mu, 1):
                    for _ in range(e):
                        p = _pmul(p, lin[j], maxdeg)
                hit = polys[mu] = p
            return hit

        images = {}
        for (b, mu) in self.basis:
            images[(b, mu)] = {(b, nu): c for nu, c in poly(mu).items() if (b, nu) in T.index}
        f = AlgebraMap(self, T, images, name="pull" + "".join(map(str, alpha)), status=Status.VERIFIED)
        self._pull[alpha] = f
        return f

    def face(self, i: int) -> AlgebraMap:
        if not 0 <= i <= self.n or self.n == 0:
            raise IndexOutOfRange("face %d of a %d-simplex" % (i, self.n))
        f = self.pullback(tuple(j for j in range(self.n + 1) if j != i))
        return f

    def degeneracy(self, i: int) -> AlgebraMap:
        if not 0 <= i <= self.n:
            raise IndexOutOfRange("degeneracy %d of a %d-simplex" % (i, self.n))
        return self.pullback(tuple(j if j <= i else j - 1 for j in range(self.n + 2)))

    def vertex(self, j: int) -> AlgebraMap:
        """Evaluation at the vertex ``t_j = 1``."""
        return self.pullback((j,))


def simplex_algebra(A: FilteredAlgebra, n: int) -> SimplexAlgebra:
    return _memo(("simplex", A, n), lambda: SimplexAlgebra(A, n))


def _generator_maps(n):
    faces = [tuple(j for j in range(n + 1) if j != i) for i in range(n + 1)] if n else []
    degens = [tuple(j if j <= i else j - 1 for j in range(n + 2)) for i in range(n + 1)]
    return faces + degens


def simplicial_identity_failures(A: FilteredAlgebra, n: int) -> list:
    """Composites of two face/degeneracy pullbacks that differ from the pullback along the composite.

    Covers every pair starting in dimension ``<= n``; all the simplicial
    identities are instances.  Returns readable descriptions (empty when all hold).
    """
    bad = []
    for d in range(n + 1):
        S = simplex_algebra(A, d)
        for alpha in _generator_maps(d):
            T = simplex_algebra(A, len(alpha) - 1)
            for beta in _generator_maps(T.n):
                lhs = compose(T.pullback(beta), S.pullback(alpha))
                rhs = S.pullback(tuple(alpha[b] for b in beta))
                w = lhs.difference_witness(rhs)
                if w is not None:
                    bad.append("%s then %s at %r" % (alpha, beta, w))
    return bad


def coefficient_map(f: LinearMap, n: int) -> LinearMap:
    """``f^{Delta^n}``: apply ``f`` to coefficients."""
    S, T = simplex_algebra(f.source, n), simplex_algebra(f.target, n)
    images, exact = {}, set()
    for (a, mu) in S.basis:
        img = {(c, mu): z for c, z in f.images[a].items() if (c, mu) in T.index}
        images[(a, mu)] = img
        if a in f.exact and len(img) == len(f.images[a]):
            exact.add((a, mu))
    cls = AlgebraMap if isinstance(f, AlgebraMap) else LinearMap
    kw = {"status": f.status} if cls is AlgebraMap else {}
    return cls(S, T, images, growth=f.growth, exact=exact, name=f.name, **kw)


# ---------------------------------------------------------------------------
# flat views


@dataclass
class FlatView:
    """Conversion between an algebra of functions on ``complex`` and the product over its facets."""

    complex: sx.FiniteComplex
    base: FilteredAlgebra
    flat: FilteredAlgebra
    embed: Callable
    extract: Callable


def _point_view(A: FilteredAlgebra) -> FlatView:
    P = sx.point()
    D = _flat_algebra(A, P)

    def embed(a):
        return {(0, (a, ())): A.ring.one}

    def extract(v, strict=True):
        out = {}
        for (i, (b, mu)), c in v.items():
            out[b] = c
        return out

    return FlatView(P, A, D, embed, extract)


def view(S: FilteredAlgebra) -> FlatView:
    v = getattr(S, "view", None)
    if v is None:
        v = S.view = _point_view(S)
    return v


def _flat_algebra(A, K):
    return _memo(("flat", A, K), lambda: direct_sum([simplex_algebra(A, len(s) - 1) for s in K.facets],
                                                    name="%s^[%s]" % (A.name, K.name)))


def flat_map(S: FilteredAlgebra, T: FilteredAlgebra, fn: Callable, *, name: str, algebra: bool = True,
             growth: int = 1, status: Status = Status.VERIFIED):
    """Build a map from a function on flat vectors.

    ``fn(v)`` returns ``(w, exact)`` with ``w`` a flat vector for ``T``.
    """
    vs, vt = view(S), view(T)
    images, exact = {}, set()
    for a in S.basis:
        w, ok = fn(vs.embed(a))
        try:
            images[a] = vt.extract(w, strict=ok)
        except NotInSpan:
            raise DiagramNotCommuting("%s: image of %r leaves %s" % (name, a, T.name), witness=a)
        if ok:
            exact.add(a)
    if algebra:
        return AlgebraMap(S, T, images, growth=growth, exact=exact, name=name, status=status)
    return LinearMap(S, T, images, growth=growth, exact=exact, name=name)


def _sub_view(S, parent: FilteredAlgebra):
    pv = view(parent)
    cache = {}

    def embed(a):
        hit = cache.get(a)
        if hit is None:
            v = {}
            for b, c in S.embedding[a].items():
                v = vadd(v, pv.embed(b), c)
            hit = cache[a] = v
        return hit

    def extract(v, strict=True):
        return S.project(pv.extract(v, strict), strict)

    return FlatView(pv.complex, pv.base, pv.flat, embed, extract)


# ---------------------------------------------------------------------------
# powers over complexes


def _intersections(K):
    sets = [frozenset(s) for s in K.facets]
    taus = set()
    for i, j in combinations(range(len(sets)), 2):
        c = sets[i] & sets[j]
        if c:
            taus.add(c)
    return taus


def _positions(chain, sub):
    pos = {v: i for i, v in enumerate(chain)}
    return tuple(sorted(pos[v] for v in sub))


def power(A: FilteredAlgebra, K: sx.FiniteComplex) -> FilteredAlgebra:
    """``A^K``: compatible families of polynomial functions on the facets of ``K``."""
    return _memo(("power", A, K), lambda: _build_power(A, K))


def _build_power(A, K):
    D = _flat_algebra(A, K)
    comps = [simplex_algebra(A, len(s) - 1) for s in K.facets]
    fsets = [frozenset(s) for s in K.facets]
    constraints = []
    for tau in sorted(_intersections(K), key=lambda t: (len(t), sorted(map(repr, t)))):
        holders = [i for i, s in enumerate(fsets) if tau <= s]
        for a, b in zip(holders, holders[1:]):
            constraints.append((a, _positions(K.facets[a], tau), b, _positions(K.facets[b], tau)))
    images = {lab: {} for lab in D.basis}
    for cid, (a, pa, b, pb) in enumerate(constraints):
        ra = comps[a].pullback(pa)
        rb = comps[b].pullback(pb)
        for x in comps[a].basis:
            img = images[(a, x)]
            for y, c in ra.images[x].items():
                img[(cid, y)] = img.get((cid, y), 0) + c
        for x in comps[b].basis:
            img = images[(b, x)]
            for y, c in rb.images[x].items():
                img[(cid, y)] = img.get((cid, y), 0) - c
    cols = D.pivot_order()
    ech = _kernel(images, cols, A.ring)
    P = subalgebra(D, ech, "%s^%s" % (A.name, K.name))
    P._key = P._key + (K._key,)
    P._hash = hash(P._key)
    P.complex = K
    P.base = A
    P.view = FlatView(K, A, D, lambda a: P.embedding[a], P.project)
    return P


def _same_complex(a, b):
    return a == b or (len(a.vertices) == 1 and len(b.vertices) == 1)


def restriction(A: FilteredAlgebra, h: sx.ComplexMap, source=None, target=None) -> AlgebraMap:
    """``A^K -> A^L`` induced by ``h: L -> K`` (defaults: full powers)."""
    S = source if source is not None else power(A, h.target)
    T = target if target is not None else power(A, h.source)
    key = ("restrict", A, S, T, h.source, h.target, tuple(sorted(h.vmap.items(), key=lambda kv: repr(kv))))
    return _memo(key, lambda: _build_restriction(A, h, S, T))


def _build_restriction(A, h, S, T):
    K, L = h.target, h.source
    if not _same_complex(view(S).complex, K) or not _same_complex(view(T).complex, L):
        raise TypeMismatch("restriction along %s does not match %s -> %s" % (h.name, S.name, T.name))
    kf = [frozenset(s) for s in K.facets]
    plan = []
    for j, tau in enumerate(L.facets):
        img = [h.vmap[v] for v in tau]
        iset = frozenset(img)
        i = next((i for i, s in enumerate(kf) if iset <= s), None)
        if i is None:
            raise TypeMismatch("%s does not send %r into a simplex" % (h.name, tau))
        pos = {v: p for p, v in enumerate(K.facets[i])}
        alpha = tuple(pos[v] for v in img)
        plan.append((j, i, simplex_algebra(A, len(K.facets[i]) - 1).pullback(alpha)))
    by_src = {}
    for j, i, pb in plan:
        by_src.setdefault(i, []).append((j, pb))

    def fn(v):
        out = {}
        for (i, x), c in v.items():
            for j, pb in by_src.get(i, ()):
                for y, z in pb.images[x].items():
                    out[(j, y)] = out.get((j, y), 0) + c * z
        return {k: z for k, z in out.items() if z}, True

    return flat_map(S, T, fn, name="res[%s]" % h.name)


def relative_power(A: FilteredAlgebra, K: sx.FiniteComplex, L: sx.FiniteComplex) -> FilteredAlgebra:
    """Functions on ``K`` vanishing on the subcomplex ``L``."""
    return _memo(("relative", A, K, L), lambda: _build_relative(A, K, L))


def _build_relative(A, K, L):
    PK = power(A, K)
    if not L.facets:
        return PK
    if not K.contains(L):
        raise TypeMismatch("%s is not a subcomplex of %s" % (L.name, K.name))
    r = restriction(A, sx.inclusion(L, K))
    R, _ = kernel(r, "%s^(%s,%s)" % (A.name, K.name, L.name))
    R._key = R._key + (K._key, L._key)
    R._hash = hash(R._key)
    R.complex = K
    R.subcomplex = L
    R.base = A
    R.view = _sub_view(R, PK)
    return R


def coefficient_power_map(f: LinearMap, S: FilteredAlgebra, T: FilteredAlgebra, name: str | None = None):
    """``f^K`` between power-type algebras over the same complex."""
    vs, vt = view(S), view(T)
    if not _same_complex(vs.complex, vt.complex) or vs.base != f.source or vt.base != f.target:
        raise TypeMismatch("coefficient map %s does not match %s -> %s" % (f.name, S.name, T.name))
    K = vs.complex
    cmaps = {}
    for s in K.facets:
        d = len(s) - 1
        if d not in cmaps:
            cmaps[d] = coefficient_map(f, d)

    def fn(v):
        out, ok = {}, True
        for (i, x), c in v.items():
            cm = cmaps[len(K.facets[i]) - 1]
            ok = ok and x in cm.exact
            for y, z in cm.images[x].items():
                out[(i, y)] = out.get((i, y), 0) + c * z
        return {k: z for k, z in out.items() if z}, ok

    return flat_map(S, T, fn, name=name or f.name + "^K", algebra=isinstance(f, AlgebraMap), growth=f.growth,
                    status=f.status if isinstance(f, AlgebraMap) else Status.UNCHECKED)


# ---------------------------------------------------------------------------
# functions with values in k acting on powers


def scalar_function(ring, cap, K: sx.FiniteComplex, h: sx.ComplexMap, poly_on_target: dict) -> dict:
    """Flat form of the pullback along ``h: K -> Delta^r`` of a polynomial in ``t_1..t_r``.

    Returns ``{facet index: polynomial in that facet's variables}``.
    """
    r = h.target.dim
    one = ring.one
    out = {}
    for i, s in enumerate(K.facets):
        m = len(s) - 1
        alpha = tuple(h.vmap[v] for v in s)
        lin = {}
        for j in range(1, r + 1):
            p = {}
            for a_i, a in enumerate(alpha):
                if a == j:
                    p = vadd(p, _var(m, a_i, one))
            lin[j] = p
        total = {}
        for mu, c in poly_on_target.items():
            p = {(0,) * m: one}
            for j, e in enumerate(mu, 1):
                for _ in range(e):
                    p = _pmul(p, lin[j], cap)
            total = vadd(total, p, c)
        out[i] = total
    return out


def multiply_flat(v: dict, fn: dict, A: FilteredAlgebra, K: sx.FiniteComplex):
    """Multiply a flat vector by a scalar function; returns ``(w, exact)``."""
    out, ok = {}, True
    for (i, (b, mu)), c in v.items():
        wb = A.weights[b]
        for nu, z in fn[i].items():
            s = tuple(x + y for x, y in zip(mu, nu))
            if wb + sum(s) > A.cap:
                ok = False
                continue
            key = (i, (b, s))
            out[key] = out.get(key, 0) + c * z
    return {k: z for k, z in out.items() if z}, ok


def last_coordinate_map(n: int, m: int) -> sx.ComplexMap:
    """``sd^m I^(n+1) -> Delta^1``: last vertex, then last coordinate."""
    K = sx.iterated_subdivision(sx.cube(n + 1), m)
    lv = sx.iterated_last_vertex(sx.cube(n + 1), m)
    return sx.ComplexMap(K, sx.standard_simplex(1), {v: lv.vmap[v][-1] for v in K.vertices}, name="last",
                         check=False)


def canonical_t(n: int, m: int, ring=None, cap: int = 4) -> dict:
    """The function ``t_0`` of the last interval coordinate, in flat form over ``sd^m I^(n+1)``."""
    from .exactcore.rings import QQ

    ring = ring or QQ
    one = ring.one
    h = last_coordinate_map(n, m)
    return scalar_function(ring, cap, h.source, h, {(0,): one, (1,): -one})


def canonical_t_element(n: int, m: int, ring=None, cap: int = 4):
    """``t`` as an element of ``k^{sd^m I^(n+1)}``."""
    from .exactcore.rings import QQ

    ring = ring or QQ
    k = ground(ring, cap)
    K = sx.iterated_subdivision(sx.cube(n + 1), m)
    P = power(k, K)
    fn = canonical_t(n, m, ring, cap)
    v = {(i, ("e", mu)): c for i, p in fn.items() for mu, c in p.items()}
    return P.elem(P.project(v, True))


# ---------------------------------------------------------------------------
# cubes, path objects and the loop objects


def cube_complex(n: int, m: int) -> sx.FiniteComplex:
    return sx.iterated_subdivision(sx.cube(n), m)


def omega_kernel(B: FilteredAlgebra, n: int, m: int, tilde: bool = False) -> FilteredAlgebra:
    """Functions on ``sd^m I^n`` vanishing on ``sd^m`` of the boundary.

    ``tilde`` gives functions on ``sd^m I^(n+1)`` vanishing on
    ``sd^m (boundary(I^n) x I)``.  For ``n = 0`` (untilded) this is ``B``.
    """
    if tilde:
        return relative_power(B, cube_complex(n + 1, m), sx.iterated_subdivision(sx.cube_side_boundary(n), m))
    if n == 0:
        return B
    return relative_power(B, cube_complex(n, m), sx.iterated_subdivision(sx.cube_boundary(n), m))


def cube_with_sides(n: int) -> sx.FiniteComplex:
    """``boundary(I^n) x I`` together with the face ``I^n x {1}``."""
    facets = list(sx.cube_side_boundary(n).facets) + list(sx.cube_face(n + 1, n, 1).facets)
    return sx.FiniteComplex(facets, name="dI%dxI+top" % n)


def path_object(B: FilteredAlgebra, n: int, m: int) -> FilteredAlgebra:
    """Functions on ``sd^m I^(n+1)`` vanishing on the sides and on the last-coordinate-1 face."""
    return relative_power(B, cube_complex(n + 1, m), sx.iterated_subdivision(cube_with_sides(n), m))


def cube_slice(n: int, m: int, value: int) -> sx.ComplexMap:
    """``sd^m I^n -> sd^m I^(n+1)``, ``v -> (v, value)``."""
    j = sx.ComplexMap(sx.cube(n), sx.cube(n + 1), {v: v + (value,) for v in sx.cube(n).vertices},
                      name="j%d" % value, check=False)
    return sx.iterated_subdivide_map(j, m)


def cube_projection(n: int, m: int) -> sx.ComplexMap:
    """``sd^m I^(n+1) -> sd^m I^n`` forgetting the last coordinate."""
    p = sx.ComplexMap(sx.cube(n + 1), sx.cube(n), {v: v[:-1] for v in sx.cube(n + 1).vertices}, name="p",
                      check=False)
    return sx.iterated_subdivide_map(p, m)


def end_evaluation(B: FilteredAlgebra, n: int, m: int, value: int, source=None, target=None) -> AlgebraMap:
    """``d_0`` (``value = 1``) or ``d_1`` (``value = 0``): restriction to a last-coordinate face."""
    S = source if source is not None else power(B, cube_complex(n + 1, m))
    T = target if target is not None else omega_kernel(B, n, m)
    return restriction(B, cube_slice(n, m, value), S, T)


def iota(B: FilteredAlgebra, n: int, m: int, source=None, target=None) -> AlgebraMap:
    """Pullback along the projection forgetting the last coordinate."""
    S = source if source is not None else omega_kernel(B, n, m)
    T = target if target is not None else power(B, cube_complex(n + 1, m))
    return restriction(B, cube_projection(n, m), S, T)


def splitting_upsilon(B: FilteredAlgebra, n: int, m: int, target=None) -> LinearMap:
    """``b -> t * iota(b)``, a linear section of ``d_1`` on the path object."""
    S = omega_kernel(B, n, m)
    T = target if target is not None else path_object(B, n, m)
    K = cube_complex(n + 1, m)
    fn_t = canonical_t(n, m, B.ring, B.cap)
    io = iota(B, n, m, S, power(B, K))
    pv = view(power(B, K))

    def fn(v):
        # v is flat for S; pull it back then multiply
        coords = view(S).extract(v, True)
        img = io.apply(coords)
        flat = {}
        for a, c in img.items():
            flat = vadd(flat, pv.embed(a), c)
        return multiply_flat(flat, fn_t, B, K)

    return flat_map(S, T, fn, name="upsilon", algebra=False, growth=2)


def splitting_pair(B: FilteredAlgebra, n: int, m: int) -> LinearMap:
    """``(b1, b2) -> iota(b1)(1 - t) + iota(b2) t``, a section of :func:`end_pair`."""
    Om = omega_kernel(B, n, m)
    K = cube_complex(n + 1, m)
    PK = power(B, K)
    T = omega_kernel(B, n, m, tilde=True)
    D = direct_sum([Om, Om], name="(%s)^2" % Om.name)
    io = iota(B, n, m, Om, PK)
    t = canonical_t(n, m, B.ring, B.cap)
    one = B.ring.one
    one_minus_t = {i: vadd({(0,) * (len(K.facets[i]) - 1): one}, p, -1) for i, p in t.items()}
    pv, tv = view(PK), view(T)
    images, exact = {}, set()
    for (slot, a) in D.basis:
        flat = {}
        for b, c in io.images[a].items():
            flat = vadd(flat, pv.embed(b), c)
        w, ok = multiply_flat(flat, one_minus_t if slot == 0 else t, B, K)
        images[(slot, a)] = tv.extract(w, ok)
        if ok:
            exact.add((slot, a))
    return LinearMap(D, T, images, growth=2, exact=exact, name="pair")


def end_pair(B: FilteredAlgebra, n: int, m: int) -> AlgebraMap:
    """``(d_0, d_1)`` from the tilde loop object into two copies of the loop object."""
    Om = omega_kernel(B, n, m)
    S = omega_kernel(B, n, m, tilde=True)
    D = direct_sum([Om, Om], name="(%s)^2" % Om.name)
    d0 = end_evaluation(B, n, m, 1, S, Om)
    d1 = end_evaluation(B, n, m, 0, S, Om)
    images = {a: vadd({(0, x): c for x, c in d0.images[a].items()}, {(1, x): c for x, c in d1.images[a].items()})
              for a in S.basis}
    return AlgebraMap(S, D, images, name="(d0,d1)", status=Status.VERIFIED)


def permute_cube(B: FilteredAlgebra, n: int, m: int, permutation) -> AlgebraMap:
    """Automorphism of ``B^{sd^m I^n}`` induced by permuting the coordinates."""
    perm = tuple(permutation)
    if sorted(perm) != list(range(n)):
        raise IndexOutOfRange("%r is not a permutation of %d coordinates" % (perm, n))
    C = sx.cube(n)
    # vertex v goes to w with w[perm[i]] = v[i]
    vm = {}
    for v in C.vertices:
        w = [0] * n
        for i, p in enumerate(perm):
            w[p] = v[i]
        vm[v] = tuple(w)
    h = sx.iterated_subdivide_map(sx.ComplexMap(C, C, vm, name="perm", check=False), m)
    return restriction(B, h)


def lambda_map(m: int = 0) -> sx.ComplexMap:
    """``I^2 -> I^1``: ``(0,0) -> 0`` and every other vertex to ``1``."""
    C2, C1 = sx.cube(2), sx.cube(1)
    vm = {v: ((0,) if v == (0, 0) else (1,)) for v in C2.vertices}
    return sx.iterated_subdivide_map(sx.ComplexMap(C2, C1, vm, name="lambda"), m)


def lambda_star(B: FilteredAlgebra, m: int = 0, source=None, target=None) -> AlgebraMap:
    return restriction(B, lambda_map(m), source, target)


# ---------------------------------------------------------------------------
# path and loop algebras on the polynomial extension


def path_algebra(A: FilteredAlgebra) -> FilteredAlgebra:
    """``EA = ker(ev_0: A[x] -> A)``."""
    return _memo(("E", A), lambda: _named_kernel(evaluation(poly_ext(A), 0), "E" + A.name))


def loop_algebra(A: FilteredAlgebra) -> FilteredAlgebra:
    """``Omega A = ker(ev_1)`` restricted to ``EA``."""
    E = path_algebra(A)
    return _memo(("Omega", A), lambda: _named_kernel(compose(evaluation(poly_ext(A), 1), E.inclusion),
                                                     "Omega" + A.name))


def _named_kernel(f, name):
    K, _ = kernel(f, name)
    return K


def loop_extension(A: FilteredAlgebra) -> Extension:
    """``Omega A -> EA -> A`` split by ``a -> a x``."""

    def build():
        Ax = poly_ext(A)
        E = path_algebra(A)
        O = loop_algebra(A)
        surject = compose(evaluation(Ax, 1), E.inclusion)
        surject.name = "ev1"
        inject = O.inclusion
        inject.name = "incl"
        one = A.ring.one
        lin = LinearMap(A, Ax, {a: {(a, 1): one} for a in A.basis}, name="ax")
        split = project_map(E, lin, name="ax")
        return Extension(O, E, A, inject, surject, split, name="loop(%s)" % A.name)

    return _memo(("loopext", A), build)


def loop_section(A: FilteredAlgebra, power: int = 1) -> LinearMap:
    """The section ``a -> a x^power`` of the loop extension."""
    if power < 1:
        raise IndexOutOfRange("the section a -> a x^p needs p >= 1")
    E = path_algebra(A)
    Ax = poly_ext(A)
    one = A.ring.one
    lin = LinearMap(A, Ax, {a: ({(a, power): one} if (a, power) in Ax.index else {}) for a in A.basis},
                    growth=power, exact=[a for a in A.basis if (a, power) in Ax.index], name="ax%d" % power)
    return project_map(E, lin, name="ax^%d" % power)


def contraction_x(A: FilteredAlgebra) -> AlgebraMap:
    """``a -> a x``, a homomorphism ``A -> A[x]`` when ``A`` has zero multiplication."""
    Ax = poly_ext(A)
    one = A.ring.one
    return AlgebraMap(A, Ax, {a: {(a, 1): one} for a in A.basis}, name="ax")


def simplex1_to_poly(A: FilteredAlgebra) -> LinearMap:
    """``A^{Delta^1} -> A[x]`` with ``t_1 -> x`` (an isomorphism onto the part of weight <= cap)."""
    S = simplex_algebra(A, 1)
    Ax = poly_ext(A)
    one = A.ring.one
    return AlgebraMap(S, Ax, {(b, mu): {(b, mu[0]): one} for (b, mu) in S.basis}, name="t1->x")


__all__ = [
    "SimplexAlgebra", "simplex_algebra", "simplicial_identity_failures", "coefficient_map", "power", "restriction", "relative_power",
    "coefficient_power_map", "canonical_t", "canonical_t_element", "omega_kernel", "path_object",
    "end_evaluation", "iota", "splitting_upsilon", "splitting_pair", "end_pair", "permute_cube", "lambda_star",
    "lambda_map", "path_algebra", "loop_algebra", "loop_extension", "loop_section", "contraction_x", "view", "flat_map",
    "cube_complex", "cube_slice", "cube_projection", "multiply_flat", "scalar_function", "constant_inclusion",
]
