"""Finite topological spaces and the component / dimension seminorms.

A finite topological space is encoded by its specialization preorder:
open sets are exactly the up-sets, closed sets the down-sets, and a
function between two such spaces is continuous exactly when it is
order-preserving.  Connectivity questions reduce to the comparability
graph.  The component seminorm measures how many pieces a preimage of
a connected set can fall into; the dimension seminorm does the same
for simplex dimension on finite simplicial complexes.
"""

import itertools
import math
from dataclasses import dataclass

from .extreal import INF, ext_add, sup0


class IncompatibleCarriers(ValueError):
    pass


class FiniteTopSpace:
    """Points plus a reflexive, transitive leq matrix (opens = up-sets)."""

    def __init__(self, points, leq):
        self.points = tuple(points)
        n = len(self.points)
        if len(set(self.points)) != n:
            raise ValueError("duplicate point ids")
        self.leq = tuple(tuple(bool(v) for v in row) for row in leq)
        if len(self.leq) != n or any(len(row) != n for row in self.leq):
            raise ValueError("leq matrix shape does not match points")
        self.index = {p: i for i, p in enumerate(self.points)}
        for i in range(n):
            if not self.leq[i][i]:
                raise ValueError("leq not reflexive at %r" % (self.points[i],))
        for i in range(n):
            for j in range(n):
                if not self.leq[i][j]:
                    continue
                for k in range(n):
                    if self.leq[j][k] and not self.leq[i][k]:
                        raise ValueError(
                            "leq not transitive on (%r, %r, %r)"
                            % (self.points[i], self.points[j], self.points[k]))

    def below(self, a, b):
        return self.leq[self.index[a]][self.index[b]]

    def comparable(self, a, b):
        return self.below(a, b) or self.below(b, a)

    def is_open(self, subset):
        s = set(subset)
        return all(q in s for p in s for q in self.points if self.below(p, q))

    def is_closed(self, subset):
        s = set(subset)
        return all(q in s for p in s for q in self.points if self.below(q, p))

    def down_closure(self, subset):
        s = set(subset)
        return frozenset(q for q in self.points
                         if any(self.below(q, p) for p in s))

    def is_t1(self):
        """On finite spaces T1 collapses to discreteness (trivial order)."""
        n = len(self.points)
        return all(self.leq[i][j] == (i == j) for i in range(n) for j in range(n))

    def __len__(self):
        return len(self.points)

    def __repr__(self):
        return "FiniteTopSpace(%r)" % (list(self.points),)


def transitive_closure(matrix):
    n = len(matrix)
    reach = [[bool(v) for v in row] for row in matrix]
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                row_i, row_k = reach[i], reach[k]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return tuple(tuple(row) for row in reach)


def poset_space(points, pairs):
    """Space from generating relations (a <= b pairs); closure is applied."""
    points = tuple(points)
    index = {p: i for i, p in enumerate(points)}
    n = len(points)
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        leq[index[a]][index[b]] = True
    return FiniteTopSpace(points, transitive_closure(leq))


def discrete_space(points):
    points = tuple(points)
    return FiniteTopSpace(points, [[i == j for j in range(len(points))]
                                   for i in range(len(points))])


def sierpinski_space(closed_point="0", open_point="1"):
    """Two points, one open and one closed: the smallest connected non-T1 space."""
    return poset_space((closed_point, open_point), [(closed_point, open_point)])


@dataclass(frozen=True)
class ContinuousPosetMap:
    """Total order-preserving assignment; continuity for finite spaces."""
    source: FiniteTopSpace
    target: FiniteTopSpace
    assign: dict

    def __post_init__(self):
        if set(self.assign) != set(self.source.points):
            raise ValueError("assignment keys must be the source points")
        for v in self.assign.values():
            if v not in self.target.index:
                raise ValueError("value %r is not a target point" % (v,))
        for a in self.source.points:
            for b in self.source.points:
                if self.source.below(a, b) and not self.target.below(self.assign[a], self.assign[b]):
                    raise ValueError(
                        "not order-preserving on (%r, %r)" % (a, b))

    def preimage(self, subset):
        s = set(subset)
        return frozenset(x for x in self.source.points if self.assign[x] in s)

    def fiber(self, y):
        return self.preimage([y])


def compose_poset_maps(g, f):
    if f.target.points != g.source.points or f.target.leq != g.source.leq:
        raise ValueError("maps are not composable")
    return ContinuousPosetMap(f.source, g.target,
                              {x: g.assign[f.assign[x]] for x in f.source.points})


def connected_components(sp, subset):
    """Components of the comparability graph restricted to the subset."""
    remaining = set(subset)
    for p in remaining:
        if p not in sp.index:
            raise ValueError("unknown point %r" % (p,))
    out = []
    while remaining:
        seed = next(iter(remaining))
        block = {seed}
        frontier = [seed]
        while frontier:
            p = frontier.pop()
            for q in list(remaining):
                if q not in block and sp.comparable(p, q):
                    block.add(q)
                    frontier.append(q)
        remaining -= block
        out.append(frozenset(block))
    out.sort(key=lambda b: min(sp.index[p] for p in b))
    return tuple(out)


def is_connected(sp, subset):
    return len(connected_components(sp, subset)) == 1


def _component_term(f, subset):
    pre = f.preimage(subset)
    if not pre:
        return INF
    return math.log(len(connected_components(f.source, pre)))


def component_seminorm(f):
    """sup0 over nonempty connected target subsets of log #components(preimage).

    An empty preimage over a connected set counts as infinite: a map of
    finite norm must hit every connected piece.
    """
    tgt = f.target
    n = len(tgt.points)
    if n > 16:
        raise ValueError("subset enumeration is limited to 16 points")
    terms = []
    for mask in range(1, 1 << n):
        c = [tgt.points[i] for i in range(n) if mask >> i & 1]
        if not is_connected(tgt, c):
            continue
        t = _component_term(f, c)
        if t == INF:
            return INF
        terms.append(t)
    return sup0(terms)


def component_capacity_form(f):
    """Capacity form over all nonempty target subsets.

    term = log #components(preimage) - log #components(subset); provably
    equal to component_seminorm, kept as its independent check.
    """
    tgt = f.target
    n = len(tgt.points)
    if n > 16:
        raise ValueError("subset enumeration is limited to 16 points")
    terms = []
    for mask in range(1, 1 << n):
        c = [tgt.points[i] for i in range(n) if mask >> i & 1]
        pre = f.preimage(c)
        if not pre:
            return INF
        terms.append(math.log(len(connected_components(f.source, pre)))
                     - math.log(len(connected_components(tgt, c))))
    return sup0(terms)


def monotone_light_report(f):
    """Fiber anatomy of a continuous map.

    monotone: every fiber nonempty and connected; light: every fiber's
    components are singletons; closed: images of closed sets are closed;
    mon_defect: sup0 over points of log #components(fiber), infinite on
    empty fibers.
    """
    src, tgt = f.source, f.target
    monotone = True
    light = True
    defects = []
    for y in tgt.points:
        fib = f.fiber(y)
        if not fib:
            monotone = False
            defects.append(INF)
            continue
        comps = connected_components(src, fib)
        if len(comps) != 1:
            monotone = False
        if any(len(b) > 1 for b in comps):
            light = False
        defects.append(math.log(len(comps)))
    closed = True
    n = len(src.points)
    if n > 16:
        raise ValueError("closed-set enumeration is limited to 16 points")
    for mask in range(1 << n):
        d = [src.points[i] for i in range(n) if mask >> i & 1]
        if not src.is_closed(d):
            continue
        image = frozenset(f.assign[x] for x in d)
        if not tgt.is_closed(image):
            closed = False
            break
    return {"monotone": monotone, "light": light, "closed": closed,
            "mon_defect": sup0(defects)}


# -- dimension seminorm on simplicial complexes ------------------------------

def _subcomplexes(complex_):
    """All downward-closed simplex subsets, the empty one included."""
    simp = sorted(complex_.simplices, key=lambda s: (len(s), sorted(map(str, s))))
    if len(simp) > 16:
        raise ValueError("subcomplex enumeration is limited to 16 simplices")
    out = []
    for mask in range(1 << len(simp)):
        chosen = [simp[i] for i in range(len(simp)) if mask >> i & 1]
        pool = set(chosen)
        if all(not (s - {v}) or (s - {v}) in pool for s in chosen for v in s):
            out.append(frozenset(pool))
    return out


def _dim_value(simplices):
    """log(1 + max simplex dimension); the empty subcomplex counts 0."""
    if not simplices:
        return 0.0
    return math.log(1 + max(len(s) for s in simplices) - 1)


def dimension_seminorm(vmap):
    """Fiber and capacity forms of the dimension seminorm of a simplicial map.

    fiber_form: sup0 over target vertices of log(1 + dim) of the full
    preimage subcomplex of that vertex.  capacity_form: sup0 over
    nonempty subcomplexes A of dim value of preimage minus dim value of
    A.  Empty preimages count 0 (a non-surjective inclusion should not
    be infinitely singular for dimension reasons).
    """
    src, tgt = vmap.source, vmap.target

    def preimage_simplices(simplex_set):
        return frozenset(s for s in src.simplices
                         if frozenset(vmap.assign[v] for v in s) in simplex_set)

    fiber_terms = []
    for y in tgt.vertices:
        fib = preimage_simplices(frozenset([frozenset([y])]))
        fiber_terms.append(_dim_value(fib))
    fiber_form = sup0(fiber_terms)

    cap_terms = []
    for sub in _subcomplexes(tgt):
        if not sub:
            continue
        cap_terms.append(_dim_value(preimage_simplices(sub)) - _dim_value(sub))
    capacity_form = sup0(cap_terms)
    return {"fiber_form": fiber_form, "capacity_form": capacity_form}


def topological_norm(poset_map=None, vmap=None):
    """Component part plus dimension part.

    Either part may be omitted and counts 0; when both are present they
    must describe one map: equal point/vertex carriers and the same
    assignment.
    """
    if poset_map is None and vmap is None:
        raise ValueError("need at least one of poset_map, vmap")
    comp = 0.0 if poset_map is None else component_seminorm(poset_map)
    dim = 0.0 if vmap is None else dimension_seminorm(vmap)["capacity_form"]
    if poset_map is not None and vmap is not None:
        if (set(poset_map.source.points) != set(vmap.source.vertices)
                or set(poset_map.target.points) != set(vmap.target.vertices)
                or poset_map.assign != vmap.assign):
            raise IncompatibleCarriers("poset and simplicial parts disagree")
    return ext_add(comp, dim)


# -- enumeration used by exhaustive checks -----------------------------------

def all_posets(n, prefix="p"):
    """All posets on n labeled points, one representative per isomorphism class."""
    if n == 0:
        return []
    if n > 4:
        raise ValueError("poset enumeration is limited to 4 points")
    labels = tuple("%s%d" % (prefix, i) for i in range(n))
    idx = range(n)
    strict_pairs = [(i, j) for i in idx for j in idx if i != j]
    seen = set()
    out = []
    for bits in range(1 << len(strict_pairs)):
        leq = [[i == j for j in idx] for i in idx]
        for k, (i, j) in enumerate(strict_pairs):
            if bits >> k & 1:
                leq[i][j] = True
        closed = transitive_closure(leq)
        if closed != tuple(tuple(row) for row in leq):
            continue
        if any(leq[i][j] and leq[j][i] for i, j in strict_pairs):
            continue
        canon = min(tuple(tuple(leq[p[i]][p[j]] for j in idx) for i in idx)
                    for p in itertools.permutations(idx))
        if canon in seen:
            continue
        seen.add(canon)
        out.append(FiniteTopSpace(labels, leq))
    return out


def all_order_preserving_maps(x, y):
    """Every continuous map between two finite spaces (exhaustive)."""
    out = []
    for values in itertools.product(y.points, repeat=len(x.points)):
        assign = dict(zip(x.points, values))
        ok = all(y.below(assign[a], assign[b])
                 for a in x.points for b in x.points if x.below(a, b))
        if ok:
            out.append(ContinuousPosetMap(x, y, assign))
    return out
