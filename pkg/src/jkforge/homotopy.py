"""Elementary polynomial homotopies, chains of them, and explicit constructions.

An elementary homotopy is a homomorphism ``h: A -> B[x]``; its ends are
``ev_0 h`` and ``ev_1 h``.  Chains are certified link by link.  The
homotopies between faces of simplices and cubes are assembled from the
polynomial maps ``phi(i, j)`` along sequences of vertex maps, each step
moving a single vertex to a comparable one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from . import funalg
from . import simplicial as sx
from . import tensorial as tn
from .exactcore.algebra import FilteredAlgebra, poly_ext
from .exactcore.constructions import (
    constant_inclusion,
    evaluation,
    factor_through,
    fiber_pair,
    fiber_product,
    poly_map,
)
from .exactcore.errors import (
    BrokenChain,
    FactorizationFailure,
    GradingMissing,
    IndexOutOfRange,
    SizeLimit,
    TypeMismatch,
)
from .exactcore.linalg import vadd
from .exactcore.maps import AlgebraMap, Status, compose


class ElementaryHomotopy:
    """A homomorphism ``h: A -> B[x]`` viewed as a homotopy from ``ev_0 h`` to ``ev_1 h``."""

    def __init__(self, h: AlgebraMap, name: str = "h"):
        Bx = h.target
        if getattr(Bx, "base", None) is None or getattr(Bx, "var", None) is None:
            raise TypeMismatch("%s does not land in a polynomial extension" % h.name)
        self.h = h
        self.name = name
        self._ends = None

    @property
    def source(self):
        return self.h.source

    @property
    def target(self):
        return self.h.target.base

    def ends(self):
        if self._ends is None:
            self._ends = (compose(evaluation(self.h.target, 0), self.h), compose(evaluation(self.h.target, 1), self.h))
        return self._ends

    @property
    def left(self) -> AlgebraMap:
        return self.ends()[0]

    @property
    def right(self) -> AlgebraMap:
        return self.ends()[1]

    def verify(self) -> bool:
        return self.h.verify()

    def reversed(self) -> "ElementaryHomotopy":
        return ElementaryHomotopy(compose(reverse_x(self.h.target), self.h), name=self.name + "^-1")

    def is_constant(self) -> bool:
        return tn.is_constant_homotopy(self.h)

    def __repr__(self):
        return "<homotopy %s: %s -> %s[x]>" % (self.name, self.source.name, self.target.name)


def reverse_x(Bx: FilteredAlgebra) -> AlgebraMap:
    """``x -> 1 - x`` on ``B[x]``."""
    one = Bx.ring.one
    images = {}
    for (b, e) in Bx.basis:
        images[(b, e)] = {(b, r): comb(e, r) * (-one) ** r for r in range(e + 1)}
    return AlgebraMap(Bx, Bx, images, name="rev", status=Status.VERIFIED)


def constant_homotopy(f: AlgebraMap) -> ElementaryHomotopy:
    return ElementaryHomotopy(compose(constant_inclusion(f.target), f), name="const")


@dataclass
class HomotopyChain:
    links: list = field(default_factory=list)
    name: str = "chain"

    def __len__(self):
        return len(self.links)

    def reversed(self) -> "HomotopyChain":
        return HomotopyChain([h.reversed() for h in reversed(self.links)], self.name + "^-1")

    def precompose(self, f: AlgebraMap) -> "HomotopyChain":
        """``g ~ g'`` gives ``g f ~ g' f``."""
        return HomotopyChain([ElementaryHomotopy(compose(h.h, f), h.name) for h in self.links], self.name)

    def postcompose(self, g: AlgebraMap) -> "HomotopyChain":
        """``f ~ f'`` gives ``g f ~ g f'`` via ``g[x]``."""
        out = []
        for h in self.links:
            gx = poly_map(g, source_x=h.h.target)
            out.append(ElementaryHomotopy(compose(gx, h.h), h.name))
        return HomotopyChain(out, self.name)

    @property
    def left(self):
        return self.links[0].left

    @property
    def right(self):
        return self.links[-1].right


def _coverage_diff(f, g):
    return f.difference_witness(g)


def check_homotopic(f: AlgebraMap, g: AlgebraMap, chain) -> bool:
    """Certify ``f ~ g``; raises :class:`BrokenChain` naming the first bad link."""
    links = chain.links if isinstance(chain, HomotopyChain) else list(chain)
    if not links:
        w = _coverage_diff(f, g)
        if w is not None:
            raise BrokenChain(0, "empty chain but the maps differ at %r" % (w,), witness=w)
        return True
    prev = f
    for i, h in enumerate(links):
        if h.source != prev.source or h.target != prev.target:
            raise BrokenChain(i, "link %d has the wrong type" % i)
        w = _coverage_diff(prev, h.left)
        if w is not None:
            raise BrokenChain(i, "link %d starts at a different map (witness %r)" % (i, w), witness=w)
        if not h.verify():
            raise BrokenChain(i, "link %d is not multiplicative at %r" % (i, h.h.witness), witness=h.h.witness)
        prev = h.right
    w = _coverage_diff(prev, g)
    if w is not None:
        raise BrokenChain(len(links) - 1, "chain ends at a different map (witness %r)" % (w,), witness=w)
    return True


# ---------------------------------------------------------------------------
# phi


def _xmul(p, q, cap):
    """Product in ``k[t_1..t_m, x]`` dropping terms of weight ``max(deg_t, deg_x) > cap``."""
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            if max(sum(e[:-1]), e[-1]) > cap:
                continue
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _phi_images(m, i, j, one):
    """Images of ``t_1..t_(m+1)`` under ``phi(i, j)`` as polynomials in ``t_1..t_m, x``."""
    nv = m + 1  # variables t_1..t_m, x

    def t(k):
        # t_k of Delta^m in the (t, x) variables
        p = funalg._var(m, k, one)
        return {e + (0,): c for e, c in p.items()}

    X = {(0,) * m + (1,): one}
    ONE = {(0,) * nv: one}
    one_minus_x = vadd(ONE, X, -1)

    def mul(p, q):
        return _xmul(p, q, 10 ** 6)

    out = {}
    for k in range(0, m + 2):
        if k < i:
            p = t(k)
        elif k == i:
            p = mul(X, t(i))
        elif k < j:
            p = vadd(mul(X, t(k)), mul(one_minus_x, t(k - 1)))
        elif k == j:
            p = mul(one_minus_x, t(j - 1))
        else:
            p = t(k - 1)
        out[k] = p
    return out


def phi_map(B: FilteredAlgebra, n: int, i: int, j: int) -> AlgebraMap:
    """``phi(i, j): B^{Delta^(n+1)} -> (B^{Delta^n})[x]``."""
    if not 0 <= i < j <= n + 1:
        raise IndexOutOfRange("phi needs 0 <= i < j <= n+1, got (%d, %d) with n=%d" % (i, j, n))

    def build():
        S = funalg.simplex_algebra(B, n + 1)
        T = funalg.simplex_algebra(B, n)
        Tx = poly_ext(T)
        one = B.ring.one
        lin = _phi_images(n, i, j, one)
        cache = {}

        def poly(mu):
            hit = cache.get(mu)
            if hit is None:
                p = {(0,) * (n + 1): one}
                for k, e in enumerate(mu, 1):
                    for _ in range(e):
                        p = _xmul(p, lin[k], B.cap)
                hit = cache[mu] = p
            return hit

        images = {}
        for (b, mu) in S.basis:
            img = {}
            for e, c in poly(mu).items():
                lab = ((b, e[:n]), e[n])
                img[lab] = img.get(lab, 0) + c
            images[(b, mu)] = {k: c for k, c in img.items() if c}
        return AlgebraMap(S, Tx, images, name="phi%d%d" % (i, j), status=Status.VERIFIED)

    return funalg._memo(("phi", B, n, i, j), build)


def phi(B: FilteredAlgebra, n: int, i: int, j: int) -> ElementaryHomotopy:
    return ElementaryHomotopy(phi_map(B, n, i, j), name="phi(%d,%d)" % (i, j))


def phi_relation_image(B: FilteredAlgebra, n: int, i: int, j: int) -> dict:
    """Image of ``1 - sum_k t_k`` (all ``n+2`` barycentric coordinates) under ``phi(i, j)``."""
    one = B.ring.one
    lin = _phi_images(n, i, j, one)
    total = {(0,) * (n + 1): one}
    for k in range(n + 2):
        total = vadd(total, lin[k], -1)
    return total


# ---------------------------------------------------------------------------
# links between comparable vertex maps


def _link_plan(g: sx.ComplexMap, g2: sx.ComplexMap):
    """Per source facet: ``None`` (unchanged) or ``(tau, i, j)`` with ``g >= g2`` differing on ``[i, j)``."""
    K = g.target
    plan = []
    for s in g.source.facets:
        a = [g.vmap[v] for v in s]
        b = [g2.vmap[v] for v in s]
        diff = [k for k in range(len(s)) if a[k] != b[k]]
        if not diff:
            plan.append(None)
            continue
        i, j = diff[0], diff[-1] + 1
        if diff != list(range(i, j)) or any(a[k] != b[k + 1] for k in range(i, j - 1)):
            raise FactorizationFailure("vertex maps are not one elementary step apart on %r" % (s,))
        tau = b[:j] + [a[j - 1]] + a[j:]
        chain = K.chain_of(set(tau))
        if chain is None or list(chain) != tau:
            raise FactorizationFailure("maps are not comparable on %r" % (s,))
        plan.append((tuple(tau), i, j))
    return plan


def _is_below(K: sx.FiniteComplex, u, v) -> bool:
    if u == v:
        return True
    c = K.chain_of({u, v})
    return c is not None and c[0] == u


def link(B: FilteredAlgebra, g: sx.ComplexMap, g2: sx.ComplexMap, source, target) -> ElementaryHomotopy:
    """Elementary homotopy from restriction along ``g`` to restriction along ``g2``.

    ``source`` is a power-type algebra over ``g.target`` and ``target`` one over
    ``g.source``.  The maps must differ by one elementary move; the larger one
    sits at ``x = 0``, otherwise the homotopy is built reversed.
    """
    K = g.target
    if all(_is_below(K, g2.vmap[v], g.vmap[v]) for v in g.source.vertices):
        return ElementaryHomotopy(_link_map(B, g, g2, source, target), name="link")
    if all(_is_below(K, g.vmap[v], g2.vmap[v]) for v in g.source.vertices):
        return ElementaryHomotopy(_link_map(B, g2, g, source, target), name="link").reversed()
    raise FactorizationFailure("vertex maps %s and %s are not comparable" % (g.name, g2.name))


def _link_map(B, g, g2, S, T):
    L, K = g.source, g.target
    plan = _link_plan(g, g2)
    Kf = [frozenset(s) for s in K.facets]
    Tx = poly_ext(T)
    steps = []
    for idx, (s, p) in enumerate(zip(L.facets, plan)):
        if p is None:
            verts = [g.vmap[v] for v in s]
        else:
            verts = list(p[0])
        vset = frozenset(verts)
        f_i = next(i for i, fs in enumerate(Kf) if vset <= fs)
        pos = {v: q for q, v in enumerate(K.facets[f_i])}
        alpha = tuple(pos[v] for v in verts)
        pb = funalg.simplex_algebra(B, len(K.facets[f_i]) - 1).pullback(alpha)
        ph = None if p is None else phi_map(B, len(s) - 1, p[1], p[2])
        steps.append((idx, f_i, pb, ph))
    by_src = {}
    for st in steps:
        by_src.setdefault(st[1], []).append(st)
    sv, tv = funalg.view(S), funalg.view(T)
    images = {}
    for a in S.basis:
        per_e = {}
        for (i, xlab), c in sv.embed(a).items():
            for idx, _, pb, ph in by_src.get(i, ()):
                for y, z in pb.images[xlab].items():
                    if ph is None:
                        key = (0, (idx, y))
                        per_e[key] = per_e.get(key, 0) + c * z
                    else:
                        for (ylab, e), w in ph.images[y].items():
                            key = (e, (idx, ylab))
                            per_e[key] = per_e.get(key, 0) + c * z * w
        split = {}
        for (e, flat_lab), c in per_e.items():
            if c:
                split.setdefault(e, {})[flat_lab] = c
        img = {}
        for e, vec in split.items():
            for lab, c in tv.extract(vec, True).items():
                img[(lab, e)] = c
        images[a] = img
    return AlgebraMap(S, Tx, images, name="link", status=Status.VERIFIED)


def zigzag(a: sx.ComplexMap, b: sx.ComplexMap) -> list:
    """Vertex maps ``sd L -> sd K`` joining ``sd a`` to ``sd b``, one vertex move at a time.

    First every vertex is raised to ``a(s) | b(s)`` (largest simplices
    first), then lowered to ``b(s)`` (smallest first).
    """
    A, Bm = sx.subdivide_map(a), sx.subdivide_map(b)
    sdK = A.target
    top = {}
    for s in A.source.vertices:
        ch = a.target.chain_of(set(A.vmap[s]) | set(Bm.vmap[s]))
        if ch is None:
            raise SizeLimit("subdivision lift undefined at %r (best-effort depth exceeded)" % (s,))
        top[s] = ch
    cur = dict(A.vmap)
    seq = [A]
    order = sorted(A.source.vertices, key=lambda s: (-len(s), sx.label_key(s)))
    for s in order:
        if cur[s] != top[s]:
            cur[s] = top[s]
            seq.append(sx.ComplexMap(A.source, sdK, dict(cur), name="z%d" % len(seq), check=False))
    for s in reversed(order):
        if cur[s] != Bm.vmap[s]:
            cur[s] = Bm.vmap[s]
            seq.append(sx.ComplexMap(A.source, sdK, dict(cur), name="z%d" % len(seq), check=False))
    return seq


def lift_sequence(seq: list, m: int) -> list:
    """Lift a sequence of elementary moves ``m`` times through subdivision."""
    for _ in range(m):
        out = []
        for a, b in zip(seq, seq[1:]):
            z = zigzag(a, b)
            out.extend(z if not out else z[1:])
        seq = out
    return seq


def chain_from_sequence(B, seq, f: AlgebraMap, target) -> HomotopyChain:
    S = f.target
    links = []
    for a, b in zip(seq, seq[1:]):
        h = link(B, a, b, S, target)
        links.append(ElementaryHomotopy(compose(h.h, f), h.name))
    return HomotopyChain(links)


# ---------------------------------------------------------------------------
# faces of simplices


def face_inclusion(n: int, i: int) -> sx.ComplexMap:
    return sx.ComplexMap(sx.standard_simplex(n), sx.standard_simplex(n + 1),
                         {k: (k if k < i else k + 1) for k in range(n + 1)}, name="d%d" % i)


def simplex_face_sequence(n: int, i: int, j: int, m: int) -> list:
    if not (0 <= i <= n + 1 and 0 <= j <= n + 1):
        raise IndexOutOfRange("faces %d, %d of a %d-simplex" % (i, j, n + 1))
    return lift_sequence([face_inclusion(n, i), face_inclusion(n, j)], m)


def simplex_face_homotopy(f: AlgebraMap, B: FilteredAlgebra, n: int, i: int, j: int, m: int = 0,
                          best_effort: bool = False) -> HomotopyChain:
    """Chain from ``d_i f`` to ``d_j f`` for ``f: A -> B^{sd^m Delta^(n+1)}``.

    ``i > j`` is obtained by reversing the chain for ``(j, i)``.
    """
    if m >= 2 and not best_effort:
        raise SizeLimit("subdivision depth %d needs best_effort=True" % m)
    if i == j:
        return HomotopyChain([constant_homotopy(compose(face_restriction(B, n, i, m), f))])
    if i > j:
        return simplex_face_homotopy(f, B, n, j, i, m, best_effort).reversed()
    seq = simplex_face_sequence(n, i, j, m)
    T = funalg.power(B, sx.iterated_subdivision(sx.standard_simplex(n), m))
    return chain_from_sequence(B, seq, f, T)


def face_restriction(B: FilteredAlgebra, n: int, i: int, m: int = 0) -> AlgebraMap:
    """``d_i: B^{sd^m Delta^(n+1)} -> B^{sd^m Delta^n}``."""
    return funalg.restriction(B, sx.iterated_subdivide_map(face_inclusion(n, i), m))


# ---------------------------------------------------------------------------
# prisms and cubes


def prism_vertex_order(n: int) -> list:
    """Vertices of ``I^n`` ordered by their reversed coordinates (``00, 10, 01, 11``)."""
    return sorted(sx.cube(n).vertices, key=lambda v: tuple(reversed(v)))


def prism_sequence(L: sx.FiniteComplex, K: sx.FiniteComplex, lift, order) -> list:
    """Vertex maps ``L -> K`` moving ``lift(v, 1)`` to ``lift(v, 0)`` one vertex at a time."""
    cur = {v: lift(v, 1) for v in L.vertices}
    seq = [sx.ComplexMap(L, K, dict(cur), name="p0")]
    for v in order:
        cur[v] = lift(v, 0)
        seq.append(sx.ComplexMap(L, K, dict(cur), name="p%d" % len(seq)))
    return seq


def cube_face_sequence(n: int, m: int) -> list:
    base = prism_sequence(sx.cube(n), sx.cube(n + 1), lambda v, c: v + (c,), prism_vertex_order(n))
    return lift_sequence(base, m)


def cube_face_homotopy(f: AlgebraMap, B: FilteredAlgebra, n: int, m: int = 0, target=None,
                       best_effort: bool = False) -> HomotopyChain:
    """Chain from ``d_0 f`` to ``d_1 f`` for ``f: A -> B^{sd^m I^(n+1)}`` (or a relative version)."""
    if m >= 2 and not best_effort:
        raise SizeLimit("subdivision depth %d needs best_effort=True" % m)
    seq = cube_face_sequence(n, m)
    T = target if target is not None else funalg.power(B, funalg.cube_complex(n, m))
    return chain_from_sequence(B, seq, f, T)


def link_boundary_values(chain: HomotopyChain, B: FilteredAlgebra, n: int, m: int) -> bool:
    """True when every link vanishes on ``sd^m`` of the boundary of ``I^n``."""
    if n == 0:
        return True
    K = funalg.cube_complex(n, m)
    L = sx.iterated_subdivision(sx.cube_boundary(n), m)
    for h in chain.links:
        T = h.target
        r = funalg.restriction(B, sx.inclusion(L, K), T, funalg.power(B, L))
        rx = poly_map(r, source_x=h.h.target)
        if not compose(rx, h.h).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# contractions


def contract_TA(A: FilteredAlgebra, sym: bool = False) -> ElementaryHomotopy:
    """``b -> b x`` on generators: a word of length ``l`` goes to ``word * x^l``."""
    T = tn.tensor_algebra(A, sym)
    Tx = poly_ext(T)
    one = A.ring.one
    h = AlgebraMap(T, Tx, {w: {(w, len(w)): one} for w in T.basis}, name="tau")
    return ElementaryHomotopy(h, name="contract_TA")


def contract_squarezero(A: FilteredAlgebra) -> ElementaryHomotopy:
    return ElementaryHomotopy(funalg.contraction_x(A), name="contract_sqz")


def contract_graded(A: FilteredAlgebra) -> ElementaryHomotopy:
    """``a_n -> a_n x^n`` for a positively graded algebra."""
    if not A.grading:
        raise GradingMissing("%s has no declared grading" % A.name)
    Ax = poly_ext(A)
    one = A.ring.one
    images = {}
    for a in A.basis:
        d = A.grading.get(a)
        if d is None or d < 1:
            raise GradingMissing("%r has no positive degree" % (a,))
        images[a] = {(a, d): one} if (a, d) in Ax.index else {}
    return ElementaryHomotopy(AlgebraMap(A, Ax, images, name="grade"), name="contract_graded")


def contraction_map(n: int) -> sx.ComplexMap:
    """``Delta^n x Delta^1 -> Delta^n``: ``(j, 0) -> j`` and ``(j, 1) -> n``."""
    P = sx.product(sx.standard_simplex(n), sx.standard_simplex(1))
    return sx.ComplexMap(P, sx.standard_simplex(n), {(j, c): (j if c == 0 else n) for (j, c) in P.vertices},
                         name="w")


def contract_simplex(B: FilteredAlgebra, n: int) -> HomotopyChain:
    """Chain on ``B^{Delta^n}`` from ``s delta`` (constant at the last vertex) to the identity."""
    w = contraction_map(n)
    hstar = funalg.restriction(B, w)
    L = sx.standard_simplex(n)
    seq = prism_sequence(L, w.source, lambda v, c: (v, c), list(L.vertices))
    return chain_from_sequence(B, seq, hstar, funalg.power(B, L))


def last_vertex_retraction(B: FilteredAlgebra, n: int) -> AlgebraMap:
    """``s delta`` on ``B^{Delta^n}``: evaluate at the last vertex, then extend constantly."""
    L = sx.standard_simplex(n)
    c = sx.ComplexMap(L, L, {v: n for v in L.vertices}, name="const_n")
    return funalg.restriction(B, c)


def transport_J(H: ElementaryHomotopy, sym: bool = False) -> ElementaryHomotopy:
    """From ``h: A -> B[x]`` build ``J(A) -> (J B)[x]`` joining ``J(ev_0 h)`` and ``J(ev_1 h)``."""
    h = H.h
    Bx = h.target
    B = Bx.base
    TBx = tn.tensor_algebra(Bx, sym)
    TB = tn.tensor_algebra(B, sym)
    TBxx = poly_ext(TB)
    rank = {a: i for i, a in enumerate(B.basis)}
    images = {}
    for w in TBx.basis:
        letters = tuple(b for (b, e) in w)
        if sym:
            letters = tuple(sorted(letters, key=rank.__getitem__))
        e = sum(e for (b, e) in w)
        lab = (letters, e)
        images[w] = {lab: B.ring.one} if lab in TBxx.index else {}
    gam = AlgebraMap(TBx, TBxx, images, name="collect_x", status=Status.VERIFIED)
    JA = tn.J(h.source, sym)
    Jh = tn.J_on_map(h, sym)
    g = compose(compose(gam, tn.J(Bx, sym).inclusion), Jh)
    JB = tn.J(B, sym)
    incx = poly_map(JB.inclusion, target_x=TBxx)
    out = factor_through(g, incx, name="J(%s)" % h.name)
    out.verify()
    assert out.source == JA
    return ElementaryHomotopy(out, name="transport_J")


# ---------------------------------------------------------------------------
# correcting a homotopy into a cube-shaped one


@dataclass
class Correction:
    A_prime: FilteredAlgebra
    g: AlgebraMap
    H: AlgebraMap
    d0: AlgebraMap
    d1: AlgebraMap
    parts: dict = field(default_factory=dict)


def correct_homotopy(f0: AlgebraMap, f1: AlgebraMap, h, B: FilteredAlgebra, n: int, m: int = 0) -> Correction:
    """Replace ``h: f0 ~ f1`` (maps ``A -> X`` with ``X = B^{sd^m I^n}``) by a cube-shaped homotopy.

    Builds ``g: A' -> A`` and ``H: A' -> B^{sd^m I^(n+1)}`` with ``d_0 H = f0 g``
    and ``d_1 H = f1 g``, using ``X[x]`` as the second path object and the
    mapping-path factorisation ``X -> X x_Y Y[x] -> Y``.
    """
    hmap = h.h if isinstance(h, ElementaryHomotopy) else h
    X = f0.target
    if f1.target != X or hmap.target != poly_ext(X):
        raise TypeMismatch("homotopy and endpoints do not share the target %s" % X.name)
    Xx = poly_ext(X)
    P1 = funalg.power(B, funalg.cube_complex(n + 1, m))
    d0 = funalg.restriction(B, funalg.cube_slice(n, m, 1), P1, X)
    d1 = funalg.restriction(B, funalg.cube_slice(n, m, 0), P1, X)
    s = funalg.restriction(B, funalg.cube_projection(n, m), X, P1)
    ev0, ev1 = evaluation(Xx, 0), evaluation(Xx, 1)
    from .exactcore.algebra import direct_sum

    XX = direct_sum([X, X], name="%s^2" % X.name)

    def pairmap(a, b, name):
        images = {x: vadd({(0, y): c for y, c in a.images[x].items()}, {(1, y): c for y, c in b.images[x].items()})
                  for x in a.source.basis}
        return AlgebraMap(a.source, XX, images, exact=a.exact & b.exact, name=name, status=Status.VERIFIED)

    dd = pairmap(d0, d1, "(d0,d1)")
    ee = pairmap(ev0, ev1, "(ev0,ev1)")
    Y, pr1, pr2 = fiber_product(dd, ee, name="Y")
    q = fiber_pair(Y, s, constant_inclusion(X, Xx), name="q")
    Yx = poly_ext(Y)
    B2, r1, r2 = fiber_product(q, evaluation(Yx, 0), name="B''")
    p = compose(evaluation(Yx, 1), r2)
    u = compose(pr2, p)
    v = compose(pr1, p)
    A1, g, hprime = fiber_product(hmap, u, name="A'")
    H = compose(v, hprime)
    g.name, H.name = "g", "H"
    for mp in (g, H):
        mp.verify()
    return Correction(A1, g, H, d0, d1, parts={"Y": Y, "B''": B2, "u": u, "v": v, "q": q})


__all__ = [
    "ElementaryHomotopy", "HomotopyChain", "check_homotopic", "constant_homotopy", "reverse_x", "phi", "phi_map",
    "phi_relation_image", "link", "zigzag", "lift_sequence", "simplex_face_homotopy", "simplex_face_sequence",
    "face_restriction", "face_inclusion", "cube_face_homotopy", "cube_face_sequence", "prism_vertex_order",
    "link_boundary_values", "contract_TA", "contract_squarezero", "contract_graded", "contract_simplex",
    "contraction_map", "last_vertex_retraction", "transport_J", "correct_homotopy", "Correction",
    "prism_sequence",
]

