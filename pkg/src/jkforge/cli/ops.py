"""Operations and assertions available to scenarios.

Every operation declares its parameters with a kind, so a scenario can be
checked against the registry before anything is built.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .. import excision as ex
from .. import funalg
from .. import homotopy as ho
from .. import matrices as mx
from .. import simplicial as sx
from .. import tensorial as tn
from ..exactcore import algebra as alg
from ..exactcore import serialize
from ..exactcore.constructions import Extension, image_rank, kernel
from ..exactcore.errors import JKError, ParseError, TypeMismatch
from ..exactcore.maps import AlgebraMap, LinearMap, compose, identity


@dataclass
class Context:
    ring: object
    cap: int
    sym: bool
    base_dir: Path


@dataclass
class Param:
    name: str
    kind: str
    default: object = None
    required: bool = True


def P(name, kind, default=None):
    return Param(name, kind, default, default is None)


# kinds of objects a step can produce
KIND_OF = [
    (alg.FilteredAlgebra, "algebra"),
    (LinearMap, "map"),
    (Extension, "extension"),
    (sx.FiniteComplex, "complex"),
    (ho.ElementaryHomotopy, "homotopy"),
    (ho.HomotopyChain, "chain"),
    (ex.MappingPath, "mapping_path"),
    (ho.Correction, "correction"),
]


def kind_of(obj) -> str:
    for cls, k in KIND_OF:
        if isinstance(obj, cls):
            return k
    return "value"


_ACCEPTS = {"chain": {"chain", "homotopy"}, "any": {k for _, k in KIND_OF}}


def accepts(kind: str, produced: str) -> bool:
    return produced in _ACCEPTS.get(kind, {kind})


OPS: dict = {}


def op(name, params, result, doc):
    def deco(fn):
        OPS[name] = (params, fn, result, doc)
        return fn

    return deco


# ---------------------------------------------------------------------------
# algebras


@op("ground", [], "algebra", "the ground ring k")
def _ground(ctx):
    return alg.ground(ctx.ring, ctx.cap)


@op("square_zero", [P("dim", "int", 1)], "algebra", "square-zero algebra of the given dimension")
def _sqz(ctx, dim):
    return alg.square_zero(ctx.ring, dim, ctx.cap)


@op("unitize", [P("A", "algebra")], "algebra", "unitization A+")
def _unitize(ctx, A):
    return alg.unitize(A)


@op("direct_sum", [P("A", "algebra"), P("B", "algebra")], "algebra", "A x B")
def _dsum(ctx, A, B):
    return alg.direct_sum([A, B])


@op("poly", [P("A", "algebra")], "algebra", "polynomial extension A[x]")
def _poly(ctx, A):
    return alg.poly_ext(A)


@op("tensor", [P("A", "algebra")], "algebra", "tensor algebra TA (symmetric when commutative)")
def _tensor(ctx, A):
    return tn.tensor_algebra(A, ctx.sym)


@op("J", [P("A", "algebra")], "algebra", "kernel of TA -> A")
def _J(ctx, A):
    return tn.J(A, ctx.sym)


@op("J_power", [P("A", "algebra"), P("n", "int")], "algebra", "J applied n times")
def _Jn(ctx, A, n):
    return tn.J_power(A, n, ctx.sym)


@op("path", [P("A", "algebra")], "algebra", "EA = ker(ev_0)")
def _E(ctx, A):
    return funalg.path_algebra(A)


@op("loop", [P("A", "algebra")], "algebra", "Omega A = ker(ev_0) and ker(ev_1)")
def _O(ctx, A):
    return funalg.loop_algebra(A)


@op("matrix", [P("A", "algebra"), P("n", "int", 2)], "algebra", "M_n(A)")
def _matrix(ctx, A, n):
    return mx.matrix_algebra(A, n)


@op("stable", [P("A", "algebra"), P("r", "int", 1), P("window", "int", 2)], "algebra",
    "M_oo(k)^r (x) A in a finite window")
def _stable(ctx, A, r, window):
    return mx.tensor_power_stage(A, r, window)


@op("simplex", [P("A", "algebra"), P("n", "int")], "algebra", "A^{Delta^n}")
def _simplex(ctx, A, n):
    return funalg.simplex_algebra(A, n)


@op("power", [P("A", "algebra"), P("K", "complex")], "algebra", "A^K")
def _power(ctx, A, K):
    return funalg.power(A, K)


@op("relative_power", [P("A", "algebra"), P("K", "complex"), P("L", "complex")], "algebra",
    "functions on K vanishing on L")
def _relpow(ctx, A, K, L):
    return funalg.relative_power(A, K, L)


@op("omega", [P("A", "algebra"), P("n", "int"), P("m", "int", 0)], "algebra",
    "functions on sd^m I^n vanishing on the boundary")
def _omega(ctx, A, n, m):
    return funalg.omega_kernel(A, n, m)


@op("load", [P("path", "str")], "any", "an algebra, map or extension from a JSON file")
def _load(ctx, path):
    p = ctx.base_dir / path
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError("cannot read %s: %s" % (p, e.strerror))
    try:
        return serialize.loads(text)
    except (ValueError, KeyError, TypeError) as e:
        raise ParseError("%s is not a valid serialized object: %s" % (p, e))


# ---------------------------------------------------------------------------
# complexes


@op("delta", [P("n", "int")], "complex", "the standard n-simplex")
def _delta(ctx, n):
    return sx.standard_simplex(n)


@op("boundary", [P("K", "complex")], "complex", "boundary of a pseudomanifold")
def _boundary(ctx, K):
    return sx.boundary(K)


@op("horn", [P("n", "int"), P("k", "int")], "complex", "the horn Lambda^n_k")
def _horn(ctx, n, k):
    return sx.horn(n, k)


@op("cube", [P("n", "int")], "complex", "the triangulated cube I^n")
def _cube(ctx, n):
    return sx.cube(n)


@op("cube_boundary", [P("n", "int")], "complex", "boundary of I^n")
def _cube_boundary(ctx, n):
    return sx.cube_boundary(n)


@op("sd", [P("K", "complex"), P("m", "int", 1)], "complex", "m-fold barycentric subdivision")
def _sd(ctx, K, m):
    return sx.iterated_subdivision(K, m)


@op("product", [P("K", "complex"), P("L", "complex")], "complex", "K x L")
def _product(ctx, K, L):
    return sx.product(K, L)


# ---------------------------------------------------------------------------
# maps


@op("id", [P("A", "algebra")], "map", "identity")
def _id(ctx, A):
    return identity(A)


def _simplex_of(S):
    if not isinstance(S, funalg.SimplexAlgebra):
        raise TypeMismatch("%s is not a simplex algebra" % S.name)
    return S


@op("face", [P("S", "algebra"), P("i", "int")], "map", "face map d_i of A^{Delta^n}")
def _face(ctx, S, i):
    return _simplex_of(S).face(i)


@op("degeneracy", [P("S", "algebra"), P("i", "int")], "map", "degeneracy s_i into A^{Delta^(n+1)}")
def _degen(ctx, S, i):
    return _simplex_of(S).degeneracy(i)


@op("vertex", [P("S", "algebra"), P("j", "int")], "map", "evaluation at vertex j")
def _vertex(ctx, S, j):
    return _simplex_of(S).vertex(j)


@op("counit", [P("A", "algebra")], "map", "TA -> A")
def _counit(ctx, A):
    return tn.counit(A, ctx.sym)


@op("compose", [P("f", "map"), P("g", "map")], "map", "f o g")
def _compose(ctx, f, g):
    return compose(f, g)


@op("sum", [P("f", "map"), P("g", "map")], "map", "f + g (linear)")
def _sum(ctx, f, g):
    return f + g


@op("J_map", [P("f", "map")], "map", "J(f)")
def _Jmap(ctx, f):
    return tn.J_on_map(f, ctx.sym)


@op("classifying", [P("E", "extension"), P("beta", "map", "")], "map", "xi_beta: J(quotient) -> kernel")
def _classifying(ctx, E, beta):
    return tn.classifying_map(E, beta or None, ctx.sym)


@op("xi_upsilon", [P("A", "algebra"), P("n", "int", 0), P("m", "int", 0)], "map",
    "classifying map of the cube extension")
def _xiu(ctx, A, n, m):
    return tn.xi_upsilon(A, n, m, ctx.sym)


@op("one_nk", [P("A", "algebra"), P("n", "int"), P("m", "int", 0)], "map", "sigma^n(1_A)")
def _onenk(ctx, A, n, m):
    return tn.one_nk(A, n, m, ctx.sym)


@op("boundary_restriction", [P("A", "algebra"), P("n", "int"), P("m", "int", 0)], "map",
    "restriction of the loop object to the cube boundary")
def _bres(ctx, A, n, m):
    return tn.boundary_restriction(A, n, m)


@op("rho", [P("A", "algebra")], "map", "classifying map of the loop extension")
def _rho(ctx, A):
    return tn.rho(A, ctx.sym)


@op("corner", [P("A", "algebra"), P("n", "int"), P("m", "int")], "map", "M_n(A) -> M_m(A)")
def _corner(ctx, A, n, m):
    return mx.corner(A, n, m)


@op("stabilize", [P("A", "algebra"), P("window", "int", 2)], "map", "A -> M_oo(k) (x) A")
def _stabilize(ctx, A, window):
    return mx.stabilize(A, window)


@op("stable_bond", [P("A", "algebra"), P("r", "int"), P("window", "int", 2)], "map",
    "stable stage r -> r+1")
def _sbond(ctx, A, r, window):
    return mx.stable_bond(A, r, window)


@op("evaluation", [P("Ax", "algebra"), P("i", "int")], "map", "A[x] -> A at x = i")
def _ev(ctx, Ax, i):
    from ..exactcore.constructions import evaluation

    return evaluation(Ax, i)


@op("endpoint", [P("h", "homotopy"), P("i", "int")], "map", "end of an elementary homotopy")
def _endpoint(ctx, h, i):
    return h.left if i == 0 else h.right


@op("homotopy_map", [P("h", "homotopy")], "map", "the underlying map A -> B[x]")
def _hmap(ctx, h):
    return h.h


@op("last_vertex_retraction", [P("A", "algebra"), P("n", "int")], "map",
    "constant extension of the value at the last vertex")
def _lvr(ctx, A, n):
    return ho.last_vertex_retraction(A, n)


@op("face_restriction", [P("A", "algebra"), P("n", "int"), P("i", "int"), P("m", "int", 0)], "map",
    "d_i on functions over sd^m Delta^(n+1)")
def _fres(ctx, A, n, i, m):
    return ho.face_restriction(A, n, i, m)


@op("cube_end", [P("A", "algebra"), P("n", "int"), P("value", "int"), P("m", "int", 0)], "map",
    "restriction of A^{sd^m I^(n+1)} to the last-coordinate face with the given value")
def _cend(ctx, A, n, value, m):
    return funalg.restriction(A, funalg.cube_slice(n, m, value))


@op("cube_identity", [P("A", "algebra"), P("n", "int"), P("m", "int", 0)], "map",
    "identity on A^{sd^m I^n}")
def _cid(ctx, A, n, m):
    return identity(funalg.power(A, funalg.cube_complex(n, m)))


# ---------------------------------------------------------------------------
# sections and extensions


@op("splitting", [P("E", "extension")], "map", "the stored section of an extension")
def _splitting(ctx, E):
    return E.splitting


@op("loop_section", [P("A", "algebra"), P("p", "int", 1)], "map", "a -> a x^p")
def _loop_section(ctx, A, p):
    return funalg.loop_section(A, p)


@op("shifted_section", [P("E", "extension")], "map", "section + inclusion of the first kernel symbol")
def _shifted(ctx, E):
    return tn.shifted_section(E)


@op("loop_ext", [P("A", "algebra")], "extension", "Omega A -> EA -> A")
def _loop_ext(ctx, A):
    return funalg.loop_extension(A)


@op("universal", [P("A", "algebra")], "extension", "JA -> TA -> A")
def _universal(ctx, A):
    return tn.universal_extension(A, ctx.sym)


@op("cube_ext", [P("A", "algebra"), P("n", "int", 0), P("m", "int", 0)], "extension",
    "loop objects of the cube split by upsilon")
def _cube_ext(ctx, A, n, m):
    return tn.cube_extension(A, n, m)


@op("squarezero_ext", [], "extension", "{m} -> {m}+ -> k")
def _sqz_ext(ctx):
    return ex.squarezero_extension(ctx.ring, ctx.cap)


@op("matrix_ext", [P("E", "extension"), P("n", "int", 2)], "extension", "M_n of an extension")
def _matrix_ext(ctx, E, n):
    return mx.matrix_extension(E, n)


# ---------------------------------------------------------------------------
# homotopies


@op("H", [P("E", "extension"), P("beta", "map"), P("gamma", "map")], "homotopy",
    "elementary homotopy from xi_beta to xi_gamma")
def _H(ctx, E, beta, gamma):
    return ho.ElementaryHomotopy(tn.homotopy_H(E, beta, gamma, ctx.sym), name="H")


@op("G_identity", [P("E", "extension"), P("beta", "map"), P("gamma", "map")], "homotopy",
    "G for the identity morphism of E with two sections")
def _G(ctx, E, beta, gamma):
    mor = tn.ExtensionMorphism(E, E, identity(E.kernel), identity(E.middle), identity(E.quotient))
    return ho.ElementaryHomotopy(tn.homotopy_G(mor, beta, gamma, ctx.sym), name="G")


@op("phi", [P("A", "algebra"), P("n", "int"), P("i", "int"), P("j", "int")], "homotopy",
    "phi(i, j) on A^{Delta^(n+1)}")
def _phi(ctx, A, n, i, j):
    return ho.phi(A, n, i, j)


@op("contract_squarezero", [P("A", "algebra")], "homotopy", "a -> a x")
def _csq(ctx, A):
    return ho.contract_squarezero(A)


@op("contract_TA", [P("A", "algebra")], "homotopy", "word -> word x^length")
def _cta(ctx, A):
    return ho.contract_TA(A, ctx.sym)


@op("contract_graded", [P("A", "algebra")], "homotopy", "a_n -> a_n x^n")
def _cgr(ctx, A):
    return ho.contract_graded(A)


@op("contract_simplex", [P("A", "algebra"), P("n", "int")], "chain", "last-vertex retraction ~ id")
def _csimp(ctx, A, n):
    return ho.contract_simplex(A, n)


@op("transport_J", [P("h", "homotopy")], "homotopy", "J(A) -> (JB)[x]")
def _tJ(ctx, h):
    return ho.transport_J(h, ctx.sym)


@op("reverse", [P("h", "chain")], "chain", "the reversed chain")
def _rev(ctx, h):
    return h.reversed() if isinstance(h, ho.HomotopyChain) else ho.HomotopyChain([h]).reversed()


@op("simplex_face_chain", [P("A", "algebra"), P("n", "int"), P("i", "int"), P("j", "int"), P("m", "int", 0)],
    "chain", "d_i ~ d_j on functions over sd^m Delta^(n+1)")
def _sfc(ctx, A, n, i, j, m):
    K = sx.iterated_subdivision(sx.standard_simplex(n + 1), m)
    return ho.simplex_face_homotopy(identity(funalg.power(A, K)), A, n, i, j, m)


@op("cube_face_chain", [P("A", "algebra"), P("n", "int"), P("m", "int", 0)], "chain",
    "d_0 ~ d_1 on functions over sd^m I^(n+1)")
def _cfc(ctx, A, n, m):
    return ho.cube_face_homotopy(identity(funalg.power(A, funalg.cube_complex(n + 1, m))), A, n, m)


@op("correct", [P("f0", "map"), P("f1", "map"), P("h", "homotopy"), P("B", "algebra"), P("n", "int"),
                 P("m", "int", 0)], "correction", "replace h: f0 ~ f1 by a cube-shaped homotopy")
def _correct(ctx, f0, f1, h, B, n, m):
    return ho.correct_homotopy(f0, f1, h, B, n, m)


@op("part", [P("C", "correction"), P("name", "str")], "map", "g, H, d0 or d1 of a correction")
def _part(ctx, C, name):
    if name not in ("g", "H", "d0", "d1"):
        raise TypeMismatch("a correction has parts g, H, d0, d1; not %r" % name)
    return getattr(C, name)


@op("mapping_path", [P("E", "extension"), P("n", "int", 0), P("m", "int", 0)], "mapping_path",
    "mapping path of a split extension")
def _mpath(ctx, E, n, m):
    return ex.mapping_path(ex.splitting_data(E), n, m)


# ---------------------------------------------------------------------------
# assertions; each returns (ok, witness text, objects involved)


ASSERTS: dict = {}


def check(name, params, doc):
    def deco(fn):
        ASSERTS[name] = (params, fn, doc)
        return fn

    return deco


def fmt_label(A, a) -> str:
    """Readable name of a basis symbol."""
    if isinstance(A, funalg.SimplexAlgebra):
        b, mu = a
        n = len(mu)
        parts = []
        for i, e in enumerate(mu, 1):
            if e:
                v = "t" if n == 1 else "t%d" % i
                parts.append(v if e == 1 else "%s^%d" % (v, e))
        base = "" if b == "e" and parts else alg.fmt_label(b)
        mono = "*".join(parts)
        if base and mono:
            return base + "*" + mono
        return mono or base or "1"
    return alg.fmt_label(a)


def fmt_vec(A, v) -> str:
    if not v:
        return "0"
    items = sorted(v.items(), key=lambda kv: alg.label_key(kv[0]))
    return " + ".join("%s*%s" % (A.ring.format(c), fmt_label(A, x)) for x, c in items)


def _diff(f, g):
    w = f.difference_witness(g)
    if w is None:
        return True, ""
    return False, "%s: %s -> %s vs %s" % (fmt_label(f.source, w), f.name, fmt_vec(f.target, f.images[w]),
                                          fmt_vec(g.target, g.images[w]))


@check("equal", [P("f", "map"), P("g", "map")], "f = g on every certified basis symbol")
def _a_equal(ctx, f, g):
    if f.source != g.source or f.target != g.target:
        return False, "maps have different source or target"
    return _diff(f, g)


@check("zero", [P("f", "map")], "f = 0")
def _a_zero(ctx, f):
    w = next((a for a in f.source.basis if a in f.exact and f.images[a]), None)
    return (w is None), ("" if w is None else "%s -> %s" % (fmt_label(f.source, w), fmt_vec(f.target, f.images[w])))


@check("hom", [P("f", "map")], "f is multiplicative")
def _a_hom(ctx, f):
    if not isinstance(f, AlgebraMap):
        return False, "%s is only linear" % f.name
    ok = f.verify()
    return ok, "" if ok else "at %r" % (f.witness,)


@check("extension", [P("E", "extension")], "kernel, section and homomorphism conditions")
def _a_ext(ctx, E):
    res = E.check()
    bad = [k for k, v in sorted(res.items()) if not v]
    return not bad, ", ".join(bad)


@check("section", [P("E", "extension"), P("s", "map")], "s is a section of the surjection")
def _a_section(ctx, E, s):
    w = E.section_witness(s)
    return w is None, "" if w is None else "at %s" % fmt_label(E.quotient, w)


@check("exact_sequence", [P("E", "extension")], "rank kernel + rank image = rank middle at every level")
def _a_exact(ctx, E):
    K, _ = kernel(E.surject)
    for d in range(1, E.middle.cap + 1):
        lhs = len(K.level(d)) + image_rank(E.surject, d)
        if lhs != len(E.middle.level(d)):
            return False, "level %d: %d + %d != %d" % (d, len(K.level(d)), image_rank(E.surject, d),
                                                      len(E.middle.level(d)))
        if len(E.kernel.level(d)) != len(K.level(d)):
            return False, "level %d: kernel rank %d, expected %d" % (d, len(E.kernel.level(d)), len(K.level(d)))
    return True, ""


@check("ranks", [P("A", "algebra"), P("values", "ints")], "ranks at levels 1, 2, ...")
def _a_ranks(ctx, A, values):
    got = [len(A.level(d)) for d in range(1, len(values) + 1)]
    return got == list(values), "ranks %s" % " ".join(map(str, got))


@check("homotopic", [P("f", "map"), P("g", "map"), P("h", "chain")], "the chain certifies f ~ g")
def _a_homotopic(ctx, f, g, h):
    chain = h if isinstance(h, ho.HomotopyChain) else ho.HomotopyChain([h])
    try:
        ho.check_homotopic(f, g, chain)
    except JKError as e:
        return False, str(e)
    return True, ""


@check("valid_chain", [P("h", "chain")], "every link is a homomorphism and consecutive ends agree")
def _a_chain(ctx, h):
    chain = h if isinstance(h, ho.HomotopyChain) else ho.HomotopyChain([h])
    try:
        ho.check_homotopic(chain.left, chain.right, chain)
    except JKError as e:
        return False, str(e)
    return True, ""


@check("links", [P("h", "chain"), P("n", "int")], "number of links")
def _a_links(ctx, h, n):
    k = len(h) if isinstance(h, ho.HomotopyChain) else 1
    return k == n, "%d links" % k


@check("constant", [P("h", "homotopy")], "the homotopy does not involve x")
def _a_const(ctx, h):
    return h.is_constant(), ""


@check("not_constant", [P("h", "homotopy")], "the homotopy involves x")
def _a_nconst(ctx, h):
    return not h.is_constant(), ""


@check("differ", [P("f", "map"), P("g", "map")], "f and g differ on some certified symbol")
def _a_differ(ctx, f, g):
    return f.difference_witness(g) is not None, "maps agree"


@check("excision", [P("M", "mapping_path")], "identities of the mapping-path construction")
def _a_excision(ctx, M):
    res = ex.check_identities(M, ctx.sym)
    bad = ["%s at %r" % (k, v) for k, v in sorted(res.items()) if v is not None]
    return not bad, "; ".join(bad)


@check("matrix_units", [P("M", "algebra")], "e_pq e_rs = delta_qr e_ps")
def _a_units(ctx, M):
    w = mx.matrix_unit_witness(M)
    return w is None, "" if w is None else "at %r" % (w,)


@check("associative", [P("A", "algebra")], "exhaustive associativity")
def _a_assoc(ctx, A):
    w = A.associativity_witness()
    return w is None, "" if w is None else "at %r" % (w,)


@check("top_count", [P("K", "complex"), P("n", "int")], "number of top simplices")
def _a_top(ctx, K, n):
    c = sx.top_count(K)
    return c == n, "%d top simplices" % c


@check("euler", [P("K", "complex"), P("n", "int")], "Euler characteristic")
def _a_euler(ctx, K, n):
    c = K.euler_characteristic()
    return c == n, "Euler characteristic %d" % c


@check("image_in_kernel", [P("f", "map"), P("g", "map")], "g o f = 0")
def _a_iik(ctx, f, g):
    return _a_zero(ctx, compose(g, f))


@check("simplicial_identities", [P("A", "algebra"), P("n", "int")],
       "composites of faces and degeneracies agree with pullback along the composite, up to dimension n")
def _a_simp(ctx, A, n):
    bad = funalg.simplicial_identity_failures(A, n)
    return not bad, "; ".join(bad[:3])


def describe() -> str:
    lines = ["operations:"]
    for name in sorted(OPS):
        params, _, result, doc = OPS[name]
        sig = " ".join(p.name if p.required else "%s=%s" % (p.name, p.default) for p in params)
        lines.append("  %-22s %-28s -> %-9s %s" % (name, sig, result, doc))
    lines.append("assertions:")
    for name in sorted(ASSERTS):
        params, _, doc = ASSERTS[name]
        lines.append("  %-22s %-28s %s" % (name, " ".join(p.name for p in params), doc))
    return "\n".join(lines)
