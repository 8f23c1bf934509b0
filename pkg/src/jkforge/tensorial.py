"""Tensor algebras, the universal extension and classifying maps.

Words are tuples of basis labels; the weight of a word is the sum of the
weights of its letters.  In symmetric mode words are sorted, which gives the
symmetric algebra used for commutative scenarios.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactcore.algebra import FilteredAlgebra, poly_ext
from .exactcore.constructions import Extension, factor_through, kernel, poly_map, project_map
from .exactcore.errors import DiagramNotCommuting, SplittingNotSection, TypeMismatch
from .exactcore.linalg import vadd
from .exactcore.maps import AlgebraMap, LinearMap, Status, compose, identity
from . import funalg

_CACHE: dict = {}


def _memo(key, build):
    hit = _CACHE.get(key)
    if hit is None:
        hit = _CACHE[key] = build()
    return hit


def _words(A: FilteredAlgebra, sym: bool):
    letters = sorted(A.basis, key=lambda a: (A.weights[a], A.index[a]))
    out = []

    def rec(prefix, w, start):
        if prefix:
            out.append(tuple(prefix))
        for i in range(start, len(letters)):
            a = letters[i]
            if w + A.weights[a] <= A.cap:
                prefix.append(a)
                rec(prefix, w + A.weights[a], i if sym else 0)
                prefix.pop()

    rec([], 0, 0)
    return out


def tensor_algebra(A: FilteredAlgebra, sym: bool = False) -> FilteredAlgebra:
    """``T(A)`` (or ``Sym(A)``): words in the basis of ``A`` with concatenation."""

    def build():
        words = _words(A, sym)
        weights = {w: sum(A.weights[a] for a in w) for w in words}
        rank = {a: i for i, a in enumerate(A.basis)}
        one = A.ring.one

        def prod(u, v):
            w = u + v
            if sym:
                w = tuple(sorted(w, key=rank.__getitem__))
            return {w: one}

        T = FilteredAlgebra(("S(%s)" if sym else "T(%s)") % A.name, A.ring, weights, A.cap, product=prod,
                            commutative=sym, lossy=True, order=words, ident=("tensor", sym, A._key))
        T.base = A
        T.sym = sym
        return T

    return _memo(("T", A, sym), build)


def counit(A: FilteredAlgebra, sym: bool = False) -> AlgebraMap:
    """``eta``: multiply a word out in ``A``."""

    def build():
        T = tensor_algebra(A, sym)
        images = {}
        for w in T.basis:
            v = {w[0]: A.ring.one}
            for a in w[1:]:
                v = A.mul(v, {a: A.ring.one})
            images[w] = v
        return AlgebraMap(T, A, images, name="eta", status=Status.VERIFIED)

    return _memo(("eta", A, sym), build)


def canonical_section(A: FilteredAlgebra, sym: bool = False) -> LinearMap:
    """``a -> a`` as a word of length one."""
    T = tensor_algebra(A, sym)
    return LinearMap(A, T, {a: {(a,): A.ring.one} for a in A.basis}, name="sigma")


def J(A: FilteredAlgebra, sym: bool = False) -> FilteredAlgebra:
    """``JA = ker(eta)``."""

    def build():
        K, _ = kernel(counit(A, sym), "J%s" % A.name)
        K.base = A
        return K

    return _memo(("J", A, sym), build)


def J_power(A: FilteredAlgebra, n: int, sym: bool = False) -> FilteredAlgebra:
    for _ in range(n):
        A = J(A, sym)
    return A


def universal_extension(A: FilteredAlgebra, sym: bool = False) -> Extension:
    def build():
        JA = J(A, sym)
        eta = counit(A, sym)
        return Extension(JA, tensor_algebra(A, sym), A, JA.inclusion, eta, canonical_section(A, sym),
                         name="univ(%s)" % A.name)

    return _memo(("univ", A, sym), build)


def tensor_map(f: LinearMap, sym: bool = False) -> AlgebraMap:
    """``T(f)``: apply ``f`` letterwise (multilinearly)."""
    S, T = tensor_algebra(f.source, sym), tensor_algebra(f.target, sym)
    rank = {a: i for i, a in enumerate(f.target.basis)}
    images, exact = {}, set()
    for w in S.basis:
        acc = {(): f.target.ring.one}
        ok = all(a in f.exact for a in w)
        for a in w:
            nxt = {}
            for u, c in acc.items():
                for b, z in f.images[a].items():
                    nxt[u + (b,)] = nxt.get(u + (b,), 0) + c * z
            acc = nxt
        img = {}
        for u, c in acc.items():
            if sym:
                u = tuple(sorted(u, key=rank.__getitem__))
            if u not in T.index:
                ok = False
                continue
            img[u] = img.get(u, 0) + c
        images[w] = {u: c for u, c in img.items() if c}
        if ok:
            exact.add(w)
    return AlgebraMap(S, T, images, growth=f.growth, exact=exact, name="T(%s)" % f.name,
                      status=f.status if isinstance(f, AlgebraMap) else Status.UNCHECKED)


def J_on_map(f: LinearMap, sym: bool = False) -> AlgebraMap:
    """``J(f)``: the restriction of ``T(f)`` to the kernels of the counits."""
    JA, JB = J(f.source, sym), J(f.target, sym)
    g = compose(tensor_map(f, sym), JA.inclusion)
    out = project_map(JB, g, name="J(%s)" % f.name)
    if isinstance(f, AlgebraMap):
        out.status = f.status
    return out


def gamma(s: LinearMap, sym: bool = False) -> AlgebraMap:
    """``gamma_s(x_1 ... x_n) = s(x_1) ... s(x_n)``."""
    T = tensor_algebra(s.source, sym)
    B = s.target
    images, exact = {}, set()
    for w in T.basis:
        v = s.images[w[0]]
        total = B.weight_of(v)
        ok = w[0] in s.exact
        for a in w[1:]:
            u = s.images[a]
            total += B.weight_of(u)
            ok = ok and a in s.exact
            v = B.mul(v, u)
        images[w] = v
        if ok and total <= B.cap:
            exact.add(w)
    return AlgebraMap(T, B, images, growth=s.growth, exact=exact, name="gamma[%s]" % s.name)


def _check_section(E: Extension, s: LinearMap):
    if s.source != E.quotient or s.target != E.middle:
        raise TypeMismatch("%s is not a map %s -> %s" % (s.name, E.quotient.name, E.middle.name))
    w = E.section_witness(s)
    if w is not None:
        raise SplittingNotSection("%s is not a section of %s at %r" % (s.name, E.surject.name, w), witness=w)


def classifying_map(E: Extension, splitting: LinearMap | None = None, sym: bool = False) -> AlgebraMap:
    """``xi_beta: J(quotient) -> kernel`` for the splitting ``beta``."""
    beta = splitting if splitting is not None else E.splitting
    _check_section(E, beta)
    JQ = J(E.quotient, sym)
    g = compose(gamma(beta, sym), JQ.inclusion)
    xi = factor_through(g, E.inject, name="xi[%s]" % beta.name)
    xi.verify()
    return xi


def shifted_section(E: Extension, phi: LinearMap | None = None) -> LinearMap:
    """Another section ``beta + i phi`` of ``E``; ``phi: quotient -> kernel`` defaults to the first kernel symbol."""
    if phi is None:
        k0 = E.kernel.basis[0]
        one = E.kernel.ring.one
        phi = LinearMap(E.quotient, E.kernel, {q: {k0: one} for q in E.quotient.basis},
                        growth=max(1, E.kernel.weights[k0]), name="phi")
    out = E.splitting + compose(E.inject, phi)
    out.name = E.splitting.name + "+i" + phi.name
    return out


def _convex(beta: LinearMap, gam: LinearMap, target_x: FilteredAlgebra, name: str) -> LinearMap:
    """``a -> beta(a)(1 - x) + gam(a) x`` into ``M[x]``."""
    images, exact = {}, set()
    for a in beta.source.basis:
        v = {}
        for m, c in beta.images[a].items():
            v = vadd(v, {(m, 0): c, (m, 1): -c})
        for m, c in gam.images[a].items():
            v = vadd(v, {(m, 1): c})
        images[a] = {k: c for k, c in v.items() if k in target_x.index}
        if a in beta.exact and a in gam.exact and len(images[a]) == len(v):
            exact.add(a)
    return LinearMap(beta.source, target_x, images, growth=max(beta.growth, gam.growth), exact=exact, name=name)


def homotopy_H(E: Extension, beta: LinearMap, gam: LinearMap, sym: bool = False) -> AlgebraMap:
    """Elementary homotopy ``J(quotient) -> kernel[x]`` from ``xi_beta`` to ``xi_gam``."""
    _check_section(E, beta)
    _check_section(E, gam)
    Mx = poly_ext(E.middle)
    u = _convex(beta, gam, Mx, "u")
    JQ = J(E.quotient, sym)
    g = compose(gamma(u, sym), JQ.inclusion)
    incx = poly_map(E.inject, target_x=Mx)
    H = factor_through(g, incx, name="H[%s,%s]" % (beta.name, gam.name))
    H.verify()
    return H


@dataclass
class ExtensionMorphism:
    """A commuting map of extensions ``(f, h, g)`` on kernel, middle and quotient."""

    source: Extension
    target: Extension
    f: AlgebraMap
    h: AlgebraMap
    g: AlgebraMap

    def witness(self):
        left = compose(self.h, self.source.inject)
        right = compose(self.target.inject, self.f)
        w = left.difference_witness(right)
        if w is not None:
            return ("kernel square", w)
        left = compose(self.g, self.source.surject)
        right = compose(self.target.surject, self.h)
        w = left.difference_witness(right)
        if w is not None:
            return ("quotient square", w)
        return None


def homotopy_G(mor: ExtensionMorphism, beta: LinearMap | None = None, beta2: LinearMap | None = None,
               sym: bool = False) -> AlgebraMap:
    """Elementary homotopy ``J(A) -> C'[x]`` from ``f xi_beta`` to ``xi_beta2 J(g)``."""
    E, E2 = mor.source, mor.target
    beta = beta if beta is not None else E.splitting
    beta2 = beta2 if beta2 is not None else E2.splitting
    w = mor.witness()
    if w is not None:
        raise DiagramNotCommuting("extension morphism fails the %s at %r" % w, witness=w[1])
    _check_section(E, beta)
    _check_section(E2, beta2)
    Mx = poly_ext(E2.middle)
    v = _convex(compose(mor.h, beta), compose(beta2, mor.g), Mx, "v")
    JQ = J(E.quotient, sym)
    g = compose(gamma(v, sym), JQ.inclusion)
    incx = poly_map(E2.inject, target_x=Mx)
    G = factor_through(g, incx, name="G")
    G.verify()
    return G


def is_constant_homotopy(H: AlgebraMap) -> bool:
    """True when every exact image lies in ``C * x^0``."""
    return all(all(e == 0 for (_, e) in H.images[a]) for a in H.exact)


def rho(A: FilteredAlgebra, sym: bool = False) -> AlgebraMap:
    """The classifying map of the loop extension ``J A -> Omega A``."""
    return classifying_map(funalg.loop_extension(A), sym=sym)


# ---------------------------------------------------------------------------
# the loop-object extensions and the iteration of sigma


def cube_extension(B: FilteredAlgebra, n: int, m: int) -> Extension:
    """``B^{S^(n+1)}_m -> P -> B^{S^n}_m`` split by ``upsilon``."""

    def build():
        K1 = funalg.omega_kernel(B, n + 1, m)
        P = funalg.path_object(B, n, m)
        Q = funalg.omega_kernel(B, n, m)
        d1 = funalg.end_evaluation(B, n, m, 0, P, Q)
        inj = funalg.flat_map(K1, P, lambda v: (v, True), name="incl")
        ups = funalg.splitting_upsilon(B, n, m, P)
        return Extension(K1, P, Q, inj, d1, ups, name="cube(%s,%d,%d)" % (B.name, n, m))

    return _memo(("cubeext", B, n, m), build)


def xi_upsilon(B: FilteredAlgebra, n: int, m: int, sym: bool = False) -> AlgebraMap:
    return _memo(("xiups", B, n, m, sym), lambda: classifying_map(cube_extension(B, n, m), sym=sym))


def sigma_step(f: AlgebraMap, B: FilteredAlgebra, n: int, m: int, sym: bool = False) -> AlgebraMap:
    """``xi_upsilon o J(f)`` for ``f: J^n A -> B^{S^n}_m``."""
    if f.target != funalg.omega_kernel(B, n, m):
        raise TypeMismatch("%s does not land in the level-%d loop object of %s" % (f.name, n, B.name))
    out = compose(xi_upsilon(B, n, m, sym), J_on_map(f, sym))
    out.name = "sigma(%s)" % f.name
    return out


def one_nk(B: FilteredAlgebra, n: int, m: int = 0, sym: bool = False) -> AlgebraMap:
    """``sigma^n(1_B): J^n B -> B^{S^n}_m``."""
    f = identity(B)
    for i in range(n):
        f = sigma_step(f, B, i, m, sym)
    f.name = "1^{%d,%d}" % (n, m)
    return f


def boundary_restriction(B: FilteredAlgebra, n: int, m: int) -> AlgebraMap:
    """Restriction of ``B^{S^n}_m`` (through its ambient power) to the boundary of the cube."""
    from . import simplicial as sx

    O = funalg.omega_kernel(B, n, m)
    K = funalg.cube_complex(n, m)
    L = sx.iterated_subdivision(sx.cube_boundary(n), m)
    r = funalg.restriction(B, sx.inclusion(L, K))
    return compose(r, O.inclusion)


__all__ = [
    "tensor_algebra", "counit", "canonical_section", "J", "J_power", "universal_extension", "tensor_map",
    "J_on_map", "gamma", "classifying_map", "homotopy_H", "ExtensionMorphism", "homotopy_G", "rho",
    "cube_extension", "xi_upsilon", "sigma_step", "one_nk", "is_constant_homotopy", "boundary_restriction",
    "shifted_section",
]

