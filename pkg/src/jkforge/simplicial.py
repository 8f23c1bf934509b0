"""Finite ordered simplicial complexes of poset-nerve type.

A complex is given by its maximal simplices, each stored as a chain (a
tuple listed in increasing vertex order).  The vertex order is the one
induced by the chains, which is all that face and map computations need.
"""

from __future__ import annotations

import json
from functools import lru_cache
from itertools import combinations, permutations, product as iproduct

from .exactcore.algebra import LIMITS, label_key
from .exactcore.errors import IndexOutOfRange, ParseError, SizeLimit, TypeMismatch


class FiniteComplex:
    def __init__(self, facets, vertices=None, name: str = "K", reduced: bool = False):
        facets = [tuple(s) for s in facets if len(s)]
        if reduced:
            # caller guarantees distinct maximal chains
            keep = facets
        else:
            keep = []
            seen = set()
            by_size = sorted(facets, key=len, reverse=True)
            kept_sets = []
            for s in by_size:
                fs = frozenset(s)
                if len(fs) != len(s):
                    raise TypeMismatch("simplex %r repeats a vertex" % (s,))
                if fs in seen or any(fs < t for t in kept_sets if len(t) > len(fs)):
                    continue
                seen.add(fs)
                kept_sets.append(fs)
                keep.append(s)
        self.facets = tuple(sorted(keep, key=label_key))
        verts = set(v for s in keep for v in s) | set(vertices or ())
        self.vertices = tuple(sorted(verts, key=label_key))
        self.name = name
        self._key = (self.vertices, self.facets)
        self._hash = hash(self._key)
        self._simplices = None
        self._chains = None
        if len(self.facets) > LIMITS.max_simplices:
            raise SizeLimit("%s has %d maximal simplices" % (name, len(self.facets)))

    def __eq__(self, other):
        return isinstance(other, FiniteComplex) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "<complex %s: %d vertices, %d facets, dim %d>" % (self.name, len(self.vertices), len(self.facets),
                                                                  self.dim)

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.facets), default=-1)

    def simplices(self, d: int | None = None) -> list:
        """All simplices (as chains), optionally only those of dimension ``d``."""
        if self._simplices is None:
            seen = set()
            for s in self.facets:
                for r in range(1, len(s) + 1):
                    seen.update(combinations(s, r))
            for v in self.vertices:
                seen.add((v,))
            self._simplices = sorted(seen, key=lambda c: (len(c), label_key(c)))
        if d is None:
            return list(self._simplices)
        return [s for s in self._simplices if len(s) == d + 1]

    def chain_of(self, vset):
        """The simplex with vertex set ``vset`` as an ordered chain, or None."""
        if self._chains is None:
            self._chains = {frozenset(s): s for s in self.simplices()}
        return self._chains.get(frozenset(vset))

    def top_simplices(self) -> list:
        d = self.dim
        return [s for s in self.facets if len(s) == d + 1]

    def contains(self, other: "FiniteComplex") -> bool:
        return all(self.chain_of(s) is not None for s in other.facets) and set(other.vertices) <= set(self.vertices)

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices())

    def f_vector(self) -> list:
        return [len(self.simplices(d)) for d in range(self.dim + 1)]


# ---------------------------------------------------------------------------
# standard complexes


def standard_simplex(n: int) -> FiniteComplex:
    if n < 0:
        raise IndexOutOfRange("simplex dimension must be >= 0")
    return FiniteComplex([tuple(range(n + 1))], name="D%d" % n)


def point() -> FiniteComplex:
    return standard_simplex(0)


def _codim1_faces(s):
    return [s[:i] + s[i + 1:] for i in range(len(s))]


def boundary(K: FiniteComplex) -> FiniteComplex:
    """Codimension-one faces of top simplices lying in exactly one top simplex."""
    count = {}
    for s in K.top_simplices():
        for f in _codim1_faces(s):
            count[f] = count.get(f, 0) + 1
    return FiniteComplex([f for f, c in count.items() if c == 1], name="d" + K.name)


def horn(n: int, k: int) -> FiniteComplex:
    if n < 1 or not 0 <= k <= n:
        raise IndexOutOfRange("horn(%d, %d) undefined" % (n, k))
    full = tuple(range(n + 1))
    return FiniteComplex([full[:i] + full[i + 1:] for i in range(n + 1) if i != k], name="L%d_%d" % (n, k))


@lru_cache(maxsize=None)
def cube(n: int) -> FiniteComplex:
    """``(Delta^1)^n`` with vertices 0/1 tuples; one top simplex per coordinate order."""
    if n == 0:
        return FiniteComplex([((),)], name="I0")
    facets = []
    for perm in permutations(range(n)):
        v = [0] * n
        chain = [tuple(v)]
        for i in perm:
            v[i] = 1
            chain.append(tuple(v))
        facets.append(tuple(chain))
    return FiniteComplex(facets, name="I%d" % n, reduced=True)


def subcomplex_where(K: FiniteComplex, pred, name: str = "L") -> FiniteComplex:
    """Subcomplex of simplices all of whose vertices satisfy ``pred``."""
    facets = []
    for s in K.facets:
        t = tuple(v for v in s if pred(v))
        if t:
            facets.append(t)
    return FiniteComplex(facets, name=name)


def cube_face(n: int, coord: int, value: int) -> FiniteComplex:
    return subcomplex_where(cube(n), lambda v: v[coord] == value, name="I%d[%d=%d]" % (n, coord, value))


@lru_cache(maxsize=None)
def cube_boundary(n: int) -> FiniteComplex:
    """Union of the ``2n`` codimension-one faces of ``cube(n)``."""
    facets = []
    for c in range(n):
        for val in (0, 1):
            facets.extend(cube_face(n, c, val).facets)
    return FiniteComplex(facets, name="dI%d" % n)


@lru_cache(maxsize=None)
def cube_side_boundary(n: int) -> FiniteComplex:
    """``(boundary of I^n) x I`` inside ``I^(n+1)`` (empty for ``n = 0``)."""
    facets = []
    for c in range(n):
        for val in (0, 1):
            facets.extend(cube_face(n + 1, c, val).facets)
    return FiniteComplex(facets, name="dI%dxI" % n)


def product(K: FiniteComplex, L: FiniteComplex) -> FiniteComplex:
    """Nerve of the product order; vertices are pairs."""
    facets = []
    for s in K.facets:
        for t in L.facets:
            p, q = len(s) - 1, len(t) - 1
            # maximal chains of [p] x [q] are lattice paths
            for right in combinations(range(p + q), q):
                i = j = 0
                chain = [(s[0], t[0])]
                rs = set(right)
                for step in range(p + q):
                    if step in rs:
                        j += 1
                    else:
                        i += 1
                    chain.append((s[i], t[j]))
                facets.append(tuple(chain))
    return FiniteComplex(facets, name="%sx%s" % (K.name, L.name), reduced=True)


def subdivide(K: FiniteComplex) -> FiniteComplex:
    """Barycentric subdivision; vertices are the simplices of ``K``."""
    facets = []
    for s in K.facets:
        for perm in permutations(range(len(s))):
            chain = []
            for r in range(1, len(s) + 1):
                chain.append(tuple(s[i] for i in sorted(perm[:r])))
            facets.append(tuple(chain))
    return FiniteComplex(facets, vertices=[(v,) for v in K.vertices], name="sd" + K.name, reduced=True)


def iterated_subdivision(K: FiniteComplex, m: int) -> FiniteComplex:
    for _ in range(m):
        K = subdivide(K)
    return K


# ---------------------------------------------------------------------------
# maps


class ComplexMap:
    """An order-preserving vertex map sending simplices to simplices."""

    def __init__(self, source: FiniteComplex, target: FiniteComplex, vmap, name: str = "f", check: bool = True):
        self.source = source
        self.target = target
        self.vmap = dict(vmap)
        self.name = name
        if check:
            bad = self.violation()
            if bad is not None:
                raise TypeMismatch("%s is not simplicial on %r" % (name, bad), witness=bad)

    def violation(self):
        for v in self.source.vertices:
            if v not in self.vmap:
                return (v,)
        for s in self.source.facets:
            if self.image_chain(s) is None:
                return s
        return None

    def image_chain(self, s):
        """Image of the chain ``s`` as a chain of the target, checking monotonicity."""
        img = [self.vmap[v] for v in s]
        chain = self.target.chain_of(set(img))
        if chain is None:
            return None
        pos = {v: i for i, v in enumerate(chain)}
        if any(pos[img[i]] > pos[img[i + 1]] for i in range(len(img) - 1)):
            return None
        return chain

    def __call__(self, v):
        return self.vmap[v]

    def __eq__(self, other):
        return (isinstance(other, ComplexMap) and self.source == other.source and self.target == other.target
                and self.vmap == other.vmap)

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.vmap.items(), key=lambda kv: label_key(kv[0])))))

    def __repr__(self):
        return "<map %s: %s -> %s>" % (self.name, self.source.name, self.target.name)


def identity_map(K: FiniteComplex) -> ComplexMap:
    return ComplexMap(K, K, {v: v for v in K.vertices}, name="id", check=False)


def compose(g: ComplexMap, f: ComplexMap) -> ComplexMap:
    if f.target != g.source:
        raise TypeMismatch("cannot compose %s after %s" % (g.name, f.name))
    return ComplexMap(f.source, g.target, {v: g.vmap[w] for v, w in f.vmap.items()}, name="%s.%s" % (g.name, f.name),
                      check=False)


def inclusion(L: FiniteComplex, K: FiniteComplex) -> ComplexMap:
    if not K.contains(L):
        raise TypeMismatch("%s is not a subcomplex of %s" % (L.name, K.name))
    return ComplexMap(L, K, {v: v for v in L.vertices}, name="incl", check=False)


def restrict(f: ComplexMap, L: FiniteComplex, M: FiniteComplex | None = None) -> ComplexMap:
    """Restrict ``f`` to a subcomplex ``L`` of its source, optionally corestricting to ``M``."""
    if not f.source.contains(L):
        raise TypeMismatch("%s is not a subcomplex of %s" % (L.name, f.source.name))
    return ComplexMap(L, M or f.target, {v: f.vmap[v] for v in L.vertices}, name=f.name)


def last_vertex(K: FiniteComplex) -> ComplexMap:
    """``sd K -> K``, a simplex goes to its largest vertex."""
    return ComplexMap(subdivide(K), K, {s: s[-1] for s in K.simplices()}, name="lv", check=False)


def iterated_last_vertex(K: FiniteComplex, m: int) -> ComplexMap:
    f = identity_map(K)
    for _ in range(m):
        f = compose(f, last_vertex(f.source))
    return f


def subdivide_map(f: ComplexMap) -> ComplexMap:
    vmap = {}
    for s in f.source.simplices():
        vmap[s] = f.target.chain_of({f.vmap[v] for v in s})
    return ComplexMap(subdivide(f.source), subdivide(f.target), vmap, name="sd" + f.name, check=False)


def iterated_subdivide_map(f: ComplexMap, m: int) -> ComplexMap:
    for _ in range(m):
        f = subdivide_map(f)
    return f


def product_map(f: ComplexMap, g: ComplexMap) -> ComplexMap:
    S, T = product(f.source, g.source), product(f.target, g.target)
    return ComplexMap(S, T, {(u, v): (f.vmap[u], g.vmap[v]) for (u, v) in S.vertices}, name="%sx%s" % (f.name, g.name),
                      check=False)


def simplex_map(alpha, n: int) -> ComplexMap:
    """``Delta^m -> Delta^n`` for a weakly increasing list ``alpha``."""
    return ComplexMap(standard_simplex(len(alpha) - 1), standard_simplex(n), dict(enumerate(alpha)),
                      name="a" + "".join(map(str, alpha)))


def enumerate_maps(K: FiniteComplex, L: FiniteComplex, limit: int | None = None) -> list:
    """All simplicial order-preserving vertex maps ``K -> L`` (backtracking)."""
    limit = LIMITS.max_maps if limit is None else limit
    verts = list(K.vertices)
    facets_by_last = {}
    for s in K.facets:
        for v in s:
            facets_by_last.setdefault(v, []).append(s)
    out = []
    vmap = {}

    def ok(v):
        for s in facets_by_last.get(v, ()):
            part = [u for u in s if u in vmap]
            img = [vmap[u] for u in part]
            chain = L.chain_of(set(img))
            if chain is None:
                return False
            p = {w: i for i, w in enumerate(chain)}
            if any(p[img[i]] > p[img[i + 1]] for i in range(len(img) - 1)):
                return False
        return True

    def rec(i):
        if i == len(verts):
            if len(out) >= limit:
                raise SizeLimit("more than %d maps %s -> %s" % (limit, K.name, L.name))
            out.append(ComplexMap(K, L, dict(vmap), name="f%d" % len(out), check=False))
            return
        v = verts[i]
        for w in L.vertices:
            vmap[v] = w
            if ok(v):
                rec(i + 1)
            del vmap[v]

    rec(0)
    return out


# ---------------------------------------------------------------------------
# text format


def to_text(K: FiniteComplex) -> str:
    lines = ["vertices " + json.dumps([_lab(v) for v in K.vertices], separators=(",", ":"))]
    for s in K.facets:
        lines.append("simplex " + json.dumps([_lab(v) for v in s], separators=(",", ":")))
    return "\n".join(lines) + "\n"


def _lab(v):
    return [_lab(x) for x in v] if isinstance(v, tuple) else v


def _unlab(v):
    return tuple(_unlab(x) for x in v) if isinstance(v, list) else v


def from_text(text: str, name: str = "K") -> FiniteComplex:
    verts, facets = [], []
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        head, _, rest = line.partition(" ")
        try:
            data = json.loads(rest)
        except json.JSONDecodeError as e:
            raise ParseError("bad JSON: %s" % e.msg, n, len(head) + 1 + e.colno)
        if head == "vertices":
            verts = [_unlab(v) for v in data]
        elif head == "simplex":
            facets.append(tuple(_unlab(v) for v in data))
        else:
            raise ParseError("unknown line kind %r" % head, n, 1)
    return FiniteComplex(facets, vertices=verts, name=name)


def top_count(K: FiniteComplex) -> int:
    return len(K.top_simplices())


def cube_vertex_order(n: int) -> list:
    """Vertices of ``I^n`` in lexicographic order."""
    return sorted(iproduct((0, 1), repeat=n))
