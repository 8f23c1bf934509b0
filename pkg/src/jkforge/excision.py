"""Mapping-path algebras of a split extension and the maps comparing their loop objects.

For a split extension ``F -i-> B -f-> C`` and cube indices ``(n, m)`` the
mapping path ``P_f`` is the fibre product of ``B^{S^n} -> C^{S^n}`` with
``d_1`` on the path object of ``C^{S^n}``.  The module builds the three
extensions

    top     F^{S^(n+1)} -> P(F^{S^n}) -> F^{S^n}          split by upsilon
    middle  F^{S^(n+1)} -> P(B^{S^n}) -> P_f              split by nu
    bottom  P_f^{(n+1)} -> P~(P_f)    -> P_f              split by tau

together with the maps ``iota``, ``chi`` and ``theta`` between them, and
checks the identities relating their classifying maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import funalg
from . import simplicial as sx
from . import tensorial as tn
from .exactcore.algebra import FilteredAlgebra
from .exactcore.constructions import Extension, factor_through, fiber_pair, fiber_product
from .exactcore.errors import DiagramNotCommuting, SectionFailure
from .exactcore.linalg import vadd
from .exactcore.maps import AlgebraMap, LinearMap, Status, compose, identity, zero_map
from .homotopy import ElementaryHomotopy, check_homotopic


@dataclass
class SplittingData:
    """Linear maps ``g: C -> B`` and ``j: B -> F`` with ``fg = 1``, ``ji = 1`` and ``ij + gf = 1``."""

    extension: Extension
    g: LinearMap
    j: LinearMap

    def witnesses(self) -> dict:
        E = self.extension
        out = {}
        out["fg"] = compose(E.surject, self.g).difference_witness(identity(E.quotient))
        out["ji"] = compose(self.j, E.inject).difference_witness(identity(E.kernel))
        s = compose(E.inject, self.j) + compose(self.g, E.surject)
        out["ij+gf"] = s.difference_witness(identity(E.middle))
        return out

    def validate(self):
        for k, w in self.witnesses().items():
            if w is not None:
                raise SectionFailure("splitting data fails %s at %r" % (k, w), witness=w)
        return True


def splitting_data(E: Extension, g: LinearMap | None = None) -> SplittingData:
    """Complete a section ``g`` of ``f`` to splitting data, with ``j = i^-1 (1 - g f)``."""
    g = g if g is not None else E.splitting
    if g is None:
        raise SectionFailure("%s carries no linear splitting" % E.name)
    rest = identity(E.middle) - compose(g, E.surject)
    j = factor_through(rest.as_linear(), E.inject, name="j")
    return SplittingData(E, g, j)


# ---------------------------------------------------------------------------
# complexes and scalar functions


def _faces(N: int, faces, m: int, name: str) -> sx.FiniteComplex:
    facets = []
    for coord, value in faces:
        facets.extend(sx.cube_face(N, coord, value).facets)
    return sx.iterated_subdivision(sx.FiniteComplex(facets, name=name), m)


def _cube_map(N: int, M: int, fn, m: int, name: str) -> sx.ComplexMap:
    """``sd^m`` of the vertex map ``I^N -> I^M`` given by ``fn``."""
    C = sx.cube(N)
    h = sx.ComplexMap(C, sx.cube(M), {v: fn(v) for v in C.vertices}, name=name)
    return sx.iterated_subdivide_map(h, m)


def coordinate_t(N: int, coord: int, m: int, ring, cap: int) -> dict:
    """Flat form over ``sd^m I^N`` of the function equal to 1 where coordinate ``coord`` is 0."""
    K = funalg.cube_complex(N, m)
    lv = sx.iterated_last_vertex(sx.cube(N), m)
    h = sx.ComplexMap(K, sx.standard_simplex(1), {v: lv.vmap[v][coord] for v in K.vertices}, name="coord",
                      check=False)
    one = ring.one
    return funalg.scalar_function(ring, cap, K, h, {(0,): one, (1,): -one})


def double_path_object(C: FilteredAlgebra, n: int, m: int) -> FilteredAlgebra:
    """``P(P(C^{S^n}))``: functions on ``sd^m I^(n+2)`` vanishing on the sides and both ``1``-faces."""
    faces = [(c, v) for c in range(n) for v in (0, 1)] + [(n, 1), (n + 1, 1)]
    return funalg.relative_power(C, funalg.cube_complex(n + 2, m), _faces(n + 2, faces, m, "PP%d" % n))


def _into(S: FilteredAlgebra, T: FilteredAlgebra, name: str) -> AlgebraMap:
    """Inclusion between two relative powers over the same complex."""
    return funalg.flat_map(S, T, lambda v: (v, True), name=name)


# ---------------------------------------------------------------------------
# the mapping path


@dataclass
class MappingPath:
    data: SplittingData
    n: int
    m: int
    carrier: FilteredAlgebra
    pr_B: AlgebraMap
    pr_P: AlgebraMap
    parts: dict = field(default_factory=dict)

    @property
    def extension(self) -> Extension:
        return self.data.extension

    def cartesian_witness(self):
        p = self.parts
        return compose(p["f_loop"], self.pr_B).difference_witness(compose(p["d1_C"], self.pr_P))


def _coef(f, S, T, name):
    return funalg.coefficient_power_map(f, S, T, name=name)


def mapping_path(data: SplittingData, n: int = 0, m: int = 0) -> MappingPath:
    E = data.extension

    def build():
        F, B, C = E.kernel, E.middle, E.quotient
        BO, CO, FO = (funalg.omega_kernel(X, n, m) for X in (B, C, F))
        PC = funalg.path_object(C, n, m)
        f_loop = _coef(E.surject, BO, CO, "f")
        d1_C = funalg.end_evaluation(C, n, m, 0, PC, CO)
        P, prB, prP = fiber_product(f_loop, d1_C, name="P_f(%d,%d)" % (n, m))
        i_loop = _coef(E.inject, FO, BO, "i")
        iota = fiber_pair(P, i_loop, zero_map(FO, PC), name="iota")
        parts = {"B_loop": BO, "C_loop": CO, "F_loop": FO, "P_C": PC, "f_loop": f_loop, "d1_C": d1_C,
                 "i_loop": i_loop, "iota": iota}
        return MappingPath(data, n, m, P, prB, prP, parts)

    cache = data.__dict__.setdefault("_paths", {})
    if (n, m) not in cache:
        cache[(n, m)] = build()
    return cache[(n, m)]


def iota(M: MappingPath) -> AlgebraMap:
    """``F^{S^n} -> P_f``, ``x -> (i x, 0)``."""
    return M.parts["iota"]


def pi_map(M: MappingPath) -> AlgebraMap:
    """``P(B^{S^n}) -> P_f``, ``p -> (d_1 p, f p)``."""
    if "pi" not in M.parts:
        E, n, m = M.extension, M.n, M.m
        B = E.middle
        PB = funalg.path_object(B, n, m)
        d1_B = funalg.end_evaluation(B, n, m, 0, PB, M.parts["B_loop"])
        Pf = _coef(E.surject, PB, M.parts["P_C"], "Pf")
        M.parts.update(P_B=PB, d1_B=d1_B, Pf=Pf)
        M.parts["pi"] = fiber_pair(M.carrier, d1_B, Pf, name="pi")
    return M.parts["pi"]


def _split_vector(M: MappingPath, a):
    v = M.carrier.embedding[a]
    left = {x: c for (slot, x), c in v.items() if slot == 0}
    right = {x: c for (slot, x), c in v.items() if slot == 1}
    return left, right


def splitting_nu(M: MappingPath) -> LinearMap:
    """``(b, c) -> upsilon(i j b) + g(c)``, a linear section of :func:`pi_map`."""
    if "nu" in M.parts:
        return M.parts["nu"]
    pi_map(M)
    E, n, m, D = M.extension, M.n, M.m, M.data
    B = E.middle
    PB, BO = M.parts["P_B"], M.parts["B_loop"]
    ij = _coef(compose(E.inject, D.j), BO, BO, "ij")
    ups = funalg.splitting_upsilon(B, n, m, PB)
    g_path = _coef(D.g, M.parts["P_C"], PB, "g")
    images, exact = {}, set()
    for a in M.carrier.basis:
        b, c = _split_vector(M, a)
        jb = ij.apply(b)
        images[a] = vadd(ups.apply(jb), g_path.apply(c))
        if all(x in ij.exact for x in b) and ups.is_exact_on(jb) and all(x in g_path.exact for x in c):
            exact.add(a)
    nu = LinearMap(M.carrier, PB, images, growth=2, exact=exact, name="nu")
    M.parts["nu"] = nu
    return nu


def middle_extension(M: MappingPath) -> Extension:
    """``F^{S^(n+1)} -> P(B^{S^n}) -> P_f`` split by ``nu``."""
    if "middle" not in M.parts:
        E, n, m = M.extension, M.n, M.m
        pi = pi_map(M)
        K = funalg.omega_kernel(E.kernel, n + 1, m)
        inj = _coef(E.inject, K, M.parts["P_B"], "i")
        M.parts["middle"] = Extension(K, M.parts["P_B"], M.carrier, inj, pi, splitting_nu(M), name="middle")
    return M.parts["middle"]


def top_extension(M: MappingPath) -> Extension:
    return tn.cube_extension(M.extension.kernel, M.n, M.m)


def chi(M: MappingPath) -> AlgebraMap:
    """``P(F^{S^n}) -> P(B^{S^n})`` induced by ``i``."""
    pi_map(M)
    E = M.extension
    return _coef(E.inject, funalg.path_object(E.kernel, M.n, M.m), M.parts["P_B"], "chi")


# ---------------------------------------------------------------------------
# the path space of the mapping path


def tilde_path(M: MappingPath) -> dict:
    """``P~(P_f)``: the fibre product of ``P(f)`` with ``d_1`` on ``P(P(C^{S^n}))``, and its maps."""
    if "tilde" in M.parts:
        return M.parts["tilde"]
    pi_map(M)
    E, n, m = M.extension, M.n, M.m
    C = E.quotient
    PC, PB = M.parts["P_C"], M.parts["P_B"]
    PPC = double_path_object(C, n, m)
    N = n + 2
    d1_outer = funalg.restriction(C, _cube_map(n + 1, N, lambda v: v + (0,), m, "outer0"), PPC, PC)
    d1_inner = funalg.restriction(C, _cube_map(n + 1, N, lambda v: v[:n] + (0,) + v[n:], m, "inner0"), PPC, PC)
    sw = funalg.restriction(C, _cube_map(N, N, lambda v: v[:n] + (v[n + 1], v[n]), m, "sw"), PPC, PPC)
    T, prPB, prPP = fiber_product(M.parts["Pf"], d1_outer, name="P~(P_f)")
    # the boundary map and its splitting
    partial = fiber_pair(M.carrier, compose(M.parts["d1_B"], prPB), compose(d1_inner, prPP), name="partial")
    ups_B = funalg.splitting_upsilon(E.middle, n, m, PB)
    P_ups = _path_upsilon(C, n, m, PC, PPC)
    images, exact = {}, set()
    for a in M.carrier.basis:
        b, c = _split_vector(M, a)
        v = vadd({(0, x): z for x, z in ups_B.apply(b).items()}, {(1, x): z for x, z in P_ups.apply(c).items()})
        ok = all(x in ups_B.exact for x in b) and all(x in P_ups.exact for x in c)
        images[a] = T.project(v, ok)
        if ok:
            exact.add(a)
    tau = LinearMap(M.carrier, T, images, growth=2, exact=exact, name="tau")
    out = {"algebra": T, "pr_PB": prPB, "pr_PP": prPP, "PPC": PPC, "d1_outer": d1_outer, "d1_inner": d1_inner,
           "sw": sw, "partial": partial, "tau": tau, "P_upsilon": P_ups}
    M.parts["tilde"] = out
    return out


def _path_upsilon(C, n, m, PC, PPC) -> LinearMap:
    """``P(upsilon)``: pull back along forgetting the inner path coordinate, then multiply by its ``t``."""
    N = n + 2
    proj = funalg.restriction(C, _cube_map(N, n + 1, lambda v: v[:n] + v[n + 1:], m, "forget"),
                              PC, funalg.power(C, funalg.cube_complex(N, m)))
    t = coordinate_t(N, n, m, C.ring, C.cap)
    K = funalg.cube_complex(N, m)
    pv = funalg.view(proj.target)

    def fn(v):
        coords = funalg.view(PC).extract(v, True)
        flat = {}
        for a, c in proj.apply(coords).items():
            flat = vadd(flat, pv.embed(a), c)
        return funalg.multiply_flat(flat, t, C, K)

    return funalg.flat_map(PC, PPC, fn, name="P(upsilon)", algebra=False, growth=2)


def tau_map(M: MappingPath) -> LinearMap:
    return tilde_path(M)["tau"]


def swap_witness(M: MappingPath):
    """``None`` when ``P d_1 = d_1 o sw`` on every basis element."""
    t = tilde_path(M)
    return t["d1_inner"].difference_witness(compose(t["d1_outer"], t["sw"]))


def bottom_extension(M: MappingPath) -> Extension:
    """``P_f^{(n+1)} -> P~(P_f) -> P_f`` split by ``tau``."""
    if "bottom" in M.parts:
        return M.parts["bottom"]
    t = tilde_path(M)
    M1 = next_level(M)
    pi_map(M1)
    incB = _into(M1.parts["B_loop"], M.parts["P_B"], "incl")
    incP = _into(M1.parts["P_C"], t["PPC"], "incl")
    inj = fiber_pair(t["algebra"], compose(incB, M1.pr_B), compose(incP, M1.pr_P), name="incl")
    E = Extension(M1.carrier, t["algebra"], M.carrier, inj, t["partial"], t["tau"], name="bottom")
    M.parts["bottom"] = E
    return E


def next_level(M: MappingPath) -> MappingPath:
    return mapping_path(M.data, M.n + 1, M.m)


def lambda_pullback(B: FilteredAlgebra, n: int, m: int, source, target) -> AlgebraMap:
    """``lambda^*: P(B^{S^n}) -> P(P(B^{S^n}))`` acting on the two path coordinates."""

    def lam(v):
        return v[:n] + ((0,) if v[n:] == (0, 0) else (1,))

    return funalg.restriction(B, _cube_map(n + 2, n + 1, lam, m, "lambda"), source, target)


def theta(M: MappingPath) -> AlgebraMap:
    """``P(B^{S^n}) -> P~(P_f)``, ``p -> (p, f lambda^* p)``."""
    if "theta" in M.parts:
        return M.parts["theta"]
    t = tilde_path(M)
    E, n, m = M.extension, M.n, M.m
    PB = M.parts["P_B"]
    PPB = double_path_object(E.middle, n, m)
    lam = lambda_pullback(E.middle, n, m, PB, PPB)
    fPP = _coef(E.surject, PPB, t["PPC"], "f")
    th = fiber_pair(t["algebra"], identity(PB), compose(fPP, lam), name="theta")
    M.parts["theta"] = th
    return th


# ---------------------------------------------------------------------------
# the classifying maps


def alpha(M: MappingPath, sym: bool = False) -> AlgebraMap:
    """The classifying map ``J(P_f) -> F^{S^(n+1)}`` of the middle extension."""
    key = ("alpha", sym)
    if key not in M.parts:
        a = tn.classifying_map(middle_extension(M), sym=sym)
        a.name = "alpha"
        M.parts[key] = a
    return M.parts[key]


def xi_tau(M: MappingPath, sym: bool = False) -> AlgebraMap:
    key = ("xi_tau", sym)
    if key not in M.parts:
        x = tn.classifying_map(bottom_extension(M), sym=sym)
        x.name = "xi_tau"
        M.parts[key] = x
    return M.parts[key]


def xi_upsilon(M: MappingPath, sym: bool = False) -> AlgebraMap:
    return tn.xi_upsilon(M.extension.kernel, M.n, M.m, sym)


def comparison_morphism(M: MappingPath) -> tn.ExtensionMorphism:
    """``(iota, theta, id)`` from the middle to the bottom extension."""
    M1 = next_level(M)
    return tn.ExtensionMorphism(middle_extension(M), bottom_extension(M), iota(M1), theta(M), identity(M.carrier))


def top_morphism(M: MappingPath) -> tn.ExtensionMorphism:
    """``(id, chi, iota)`` from the top to the middle extension."""
    K = funalg.omega_kernel(M.extension.kernel, M.n + 1, M.m)
    return tn.ExtensionMorphism(top_extension(M), middle_extension(M), identity(K), chi(M), iota(M))


def iota_alpha_homotopy(M: MappingPath, sym: bool = False) -> ElementaryHomotopy:
    """Elementary homotopy from ``iota alpha`` to ``xi_tau``."""
    G = tn.homotopy_G(comparison_morphism(M), sym=sym)
    return ElementaryHomotopy(G, name="G(nu,tau)")


def check_identities(M: MappingPath, sym: bool = False) -> dict:
    """Verdicts (``None`` = holds, otherwise a witness) for the identities of the construction."""
    out = {}
    pi = pi_map(M)
    out["pi_nu"] = compose(pi, splitting_nu(M)).difference_witness(identity(M.carrier))
    t = tilde_path(M)
    out["partial_tau"] = compose(t["partial"], t["tau"]).difference_witness(identity(M.carrier))
    out["swap"] = swap_witness(M)
    out["cartesian"] = M.cartesian_witness()
    out["chi_upsilon"] = compose(chi(M), top_extension(M).splitting).difference_witness(
        compose(splitting_nu(M), iota(M)))
    Ji = tn.J_on_map(iota(M), sym)
    xu = xi_upsilon(M, sym)
    out["alpha_J_iota"] = compose(alpha(M, sym), Ji).difference_witness(xu)
    M1 = next_level(M)
    out["xi_tau_J_iota"] = compose(xi_tau(M, sym), Ji).difference_witness(compose(iota(M1), xu))
    H = iota_alpha_homotopy(M, sym)
    try:
        check_homotopic(compose(iota(M1), alpha(M, sym)), xi_tau(M, sym), [H])
        out["iota_alpha_homotopic"] = None
    except Exception as e:  # BrokenChain carries the witness
        out["iota_alpha_homotopic"] = getattr(e, "witness", str(e)) or str(e)
    return out


def validate(M: MappingPath, sym: bool = False) -> bool:
    for k, w in check_identities(M, sym).items():
        if w is not None:
            raise DiagramNotCommuting("%s fails at %r" % (k, w), witness=w)
    return True


# ---------------------------------------------------------------------------
# sample extensions


def squarezero_extension(ring, cap: int = 4) -> Extension:
    """``{m} -> {m}^+ -> k``: the unitization of a one-dimensional square-zero algebra."""
    from .exactcore.algebra import ground, square_zero, unitize, UNIT

    F = square_zero(ring, 1, cap)
    B = unitize(F)
    C = ground(ring, cap)
    one = ring.one
    (m_lab,) = F.basis
    inj = AlgebraMap(F, B, {m_lab: {m_lab: one}}, name="i", status=Status.VERIFIED)
    sur = AlgebraMap(B, C, {b: ({"e": one} if b == UNIT else {}) for b in B.basis}, name="f",
                     status=Status.VERIFIED)
    spl = LinearMap(C, B, {"e": {UNIT: one}}, name="g")
    return Extension(F, B, C, inj, sur, spl, name="unitize(%s)" % F.name)


def loop_extension_data(ring, cap: int = 6) -> SplittingData:
    from .exactcore.algebra import ground

    return splitting_data(funalg.loop_extension(ground(ring, cap)))


__all__ = [
    "SplittingData", "splitting_data", "MappingPath", "mapping_path", "iota", "pi_map", "splitting_nu",
    "middle_extension", "top_extension", "chi", "tilde_path", "tau_map", "swap_witness", "bottom_extension",
    "next_level", "lambda_pullback", "theta", "alpha", "xi_tau", "xi_upsilon", "comparison_morphism",
    "top_morphism", "iota_alpha_homotopy", "check_identities", "validate", "squarezero_extension",
    "loop_extension_data", "double_path_object", "coordinate_t",
]

