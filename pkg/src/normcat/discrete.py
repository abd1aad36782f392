"""Set-level instances: finite functions with the fiber-size norm,
simplicial complexes, normed monoids with the two-sided construction,
and cost systems on square-free words.
"""

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Optional

from .extreal import INF, ext_log, sup1
from .category import FiniteCategory


class NonInjective(ValueError):
    pass


class NotSimplicial(ValueError):
    pass


class NotAMorphism(ValueError):
    pass


class NotSquareFree(ValueError):
    pass


# -- finite functions ------------------------------------------------------

@dataclass(frozen=True)
class FiniteFunction:
    source: tuple
    target: tuple
    assign: dict

    def __post_init__(self):
        src, tgt = set(self.source), set(self.target)
        if set(self.assign) != src:
            raise ValueError("assignment keys must be exactly the source points")
        for x, y in self.assign.items():
            if y not in tgt:
                raise ValueError("value %r of %r is outside the target" % (y, x))

    def __call__(self, x):
        return self.assign[x]


def compose_functions(g, f):
    """g after f."""
    if set(f.target) != set(g.source):
        raise ValueError("functions are not composable")
    return FiniteFunction(f.source, g.target, {x: g(f(x)) for x in f.source})


def fibers(f):
    out = {y: [] for y in f.target}
    for x in f.source:
        out[f(x)].append(x)
    return {y: tuple(xs) for y, xs in out.items()}


def set_norm(f, at=None):
    """log of the largest fiber size (floored at 1); zero iff injective.

    With `at` given, the log of the size of the fiber through that point.
    """
    fib = fibers(f)
    if at is not None:
        return ext_log(len(fib[f(at)]))
    return ext_log(sup1(len(xs) for xs in fib.values()))


def csb_witness(f, g):
    """Given injective f: X -> Y and g: Y -> X, return a bijection X -> Y.

    On finite sets the two injections force |X| = |Y|, so f itself is
    bijective and is returned (as an assignment dict) after checking
    surjectivity.  Raises NonInjective if either map has fibers.
    """
    if set_norm(f) > 0:
        raise NonInjective("first map is not injective")
    if set_norm(g) > 0:
        raise NonInjective("second map is not injective")
    if set(f.source) != set(g.target) or set(f.target) != set(g.source):
        raise ValueError("maps do not run between the same two sets")
    assert len(f.source) == len(f.target)
    image = {f(x) for x in f.source}
    assert image == set(f.target), "injective endo-pair failed to be surjective"
    return dict(f.assign)


def function_category(sets):
    """The category of all functions between the given finite sets.

    sets: {label: tuple of points}.  Returns (category, norms, funcs)
    with norms the set norm of every morphism.
    """
    labels = list(sets)
    mors = []
    funcs = {}
    for a in labels:
        for b in labels:
            src, tgt = sets[a], sets[b]
            assignments = [()] if not src else None
            if assignments is None:
                # enumerate all |tgt|^|src| functions
                assignments = [[]]
                for _ in src:
                    assignments = [xs + [y] for xs in assignments for y in tgt]
            for values in assignments:
                name = "%s>%s:%s" % (a, b, ",".join(str(v) for v in values))
                funcs[name] = FiniteFunction(src, tgt, dict(zip(src, values)))
                mors.append((name, a, b))
    ids = {}
    for a in labels:
        ids[a] = "%s>%s:%s" % (a, a, ",".join(str(v) for v in sets[a]))
    by_key = {}
    for name in funcs:
        fn = funcs[name]
        a = name.split(">")[0]
        b = name.split(">")[1].split(":")[0]
        by_key[(a, b, tuple(fn.assign[x] for x in fn.source))] = name
    comp = {}
    for fname, f in funcs.items():
        fa, fb = fname.split(">")[0], fname.split(">")[1].split(":")[0]
        for gname, g in funcs.items():
            ga, gb = gname.split(">")[0], gname.split(">")[1].split(":")[0]
            if ga != fb:
                continue
            values = tuple(g(f(x)) for x in f.source)
            comp[(gname, fname)] = by_key[(fa, gb, values)]
    cat = FiniteCategory(labels, mors, ids, comp)
    norms = {name: set_norm(fn) for name, fn in funcs.items()}
    return cat, norms, funcs


# -- simplicial complexes --------------------------------------------------

class SimplicialComplex:
    """Downward-closed family of nonempty vertex subsets, singletons included."""

    def __init__(self, vertices, simplices):
        self.vertices = tuple(vertices)
        vset = set(self.vertices)
        simp = set(frozenset(s) for s in simplices)
        for s in simp:
            if not s:
                raise ValueError("the empty set is not a simplex")
            if not s <= vset:
                raise ValueError("simplex %r uses unknown vertices" % (sorted(s),))
            for v in s:
                smaller = s - {v}
                if smaller and smaller not in simp:
                    raise ValueError("not downward closed at %r" % (sorted(s),))
        for v in vset:
            if frozenset([v]) not in simp:
                raise ValueError("missing singleton for vertex %r" % (v,))
        self.simplices = frozenset(simp)

    @classmethod
    def from_facets(cls, vertices, facets):
        simp = set(frozenset([v]) for v in vertices)
        stack = [frozenset(f) for f in facets]
        while stack:
            s = stack.pop()
            if not s or s in simp:
                continue
            simp.add(s)
            for v in s:
                smaller = s - {v}
                if smaller:
                    stack.append(smaller)
        return cls(vertices, simp)

    @property
    def dim(self):
        if not self.simplices:
            return -1
        return max(len(s) for s in self.simplices) - 1

    def facets(self):
        return [s for s in self.simplices
                if not any(s < t for t in self.simplices)]

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplex)
                and set(self.vertices) == set(other.vertices)
                and self.simplices == other.simplices)

    def __repr__(self):
        return "SimplicialComplex(%r, %d simplices)" % (list(self.vertices), len(self.simplices))


@dataclass(frozen=True)
class SimplicialMap:
    source: SimplicialComplex
    target: SimplicialComplex
    assign: dict

    def __post_init__(self):
        if set(self.assign) != set(self.source.vertices):
            raise ValueError("assignment keys must be the source vertices")
        tv = set(self.target.vertices)
        for v, w in self.assign.items():
            if w not in tv:
                raise ValueError("vertex image %r is not in the target" % (w,))
        for s in self.source.simplices:
            image = frozenset(self.assign[v] for v in s)
            if image not in self.target.simplices:
                raise NotSimplicial(
                    "image %r of simplex %r is not a simplex" % (sorted(image), sorted(s)))

    def vertex_function(self):
        return FiniteFunction(self.source.vertices, self.target.vertices, dict(self.assign))


def simplicial_set_norm(m):
    """Set norm of the underlying vertex function."""
    return set_norm(m.vertex_function())


def find_simplicial_isomorphism(x, y):
    """Brute-force search for a simplicial isomorphism; None when there is none."""
    if len(x.vertices) != len(y.vertices) or len(x.simplices) != len(y.simplices):
        return None
    for perm in permutations(y.vertices):
        assign = dict(zip(x.vertices, perm))
        if all(frozenset(assign[v] for v in s) in y.simplices for s in x.simplices):
            back = {w: v for v, w in assign.items()}
            if all(frozenset(back[w] for w in t) in x.simplices for t in y.simplices):
                return assign
    return None


def find_injective_simplicial_map(x, y):
    """Backtracking search for an injective simplicial map x -> y, or None."""
    xs = list(x.vertices)
    ys = list(y.vertices)
    if len(xs) > len(ys):
        return None
    assign = {}
    used = set()

    def ok(v):
        for s in x.simplices:
            if v in s and all(u in assign for u in s):
                if frozenset(assign[u] for u in s) not in y.simplices:
                    return False
        return True

    def rec(i):
        if i == len(xs):
            return True
        v = xs[i]
        for w in ys:
            if w in used:
                continue
            assign[v] = w
            used.add(w)
            if ok(v) and rec(i + 1):
                return True
            del assign[v]
            used.discard(w)
        return False

    if rec(0):
        return dict(assign)
    return None


def simplicial_mutual_embedding(x, y):
    """Zero-norm simplicial maps both ways, if any: (x->y, y->x) or None."""
    f = find_injective_simplicial_map(x, y)
    if f is None:
        return None
    g = find_injective_simplicial_map(y, x)
    if g is None:
        return None
    return f, g


# -- normed monoids and the two-sided norm construction ---------------------

@dataclass(frozen=True)
class NormedMonoid:
    """A monoid with a subadditive norm vanishing at the unit.

    elements may be None for an infinite monoid given by callables; the
    exhaustive operations then need explicit candidate sets.
    """
    op: Callable
    unit: object
    norm: Callable
    elements: Optional[tuple] = None
    inv: Optional[Callable] = None

    @classmethod
    def from_table(cls, elements, table, unit, norm, inv=None, partial=False):
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(elements)}
        if isinstance(table, dict):
            tab = {k: v for k, v in table.items()}
        else:
            tab = {}
            for a in elements:
                for b in elements:
                    tab[(a, b)] = table[idx[a]][idx[b]]
        if not partial:
            for a in elements:
                for b in elements:
                    v = tab.get((a, b))
                    if v is None or v not in idx:
                        raise ValueError("operation table not closed at (%r, %r)" % (a, b))
            for a in elements:
                if tab[(a, unit)] != a or tab[(unit, a)] != a:
                    raise ValueError("unit law fails at %r" % (a,))
            for a in elements:
                for b in elements:
                    ab = tab[(a, b)]
                    for c in elements:
                        if tab[(ab, c)] != tab[(a, tab[(b, c)])]:
                            raise ValueError("associativity fails at (%r, %r, %r)" % (a, b, c))
            if norm[unit] > 1e-12:
                raise ValueError("norm of the unit must be 0")
            for a in elements:
                for b in elements:
                    if norm[tab[(a, b)]] > norm[a] + norm[b] + 1e-9:
                        raise ValueError("norm not subadditive at (%r, %r)" % (a, b))
        op = lambda a, b: tab.get((a, b))
        inv_fn = None
        if inv is not None:
            inv_map = dict(inv)
            inv_fn = lambda a: inv_map[a]
        return cls(op=op, unit=unit, norm=lambda e: norm[e],
                   elements=elements, inv=inv_fn)


def integers_monoid():
    """(Z, +) with the absolute-value norm."""
    return NormedMonoid(op=lambda a, b: a + b, unit=0, norm=abs,
                        elements=None, inv=lambda a: -a)


def cyclic_group(n):
    """Z/n with the word-length norm for the generators +-1."""
    elements = list(range(n))
    table = [[(a + b) % n for b in elements] for a in elements]
    norm = {a: float(min(a, n - a)) for a in elements}
    inv = {a: (-a) % n for a in elements}
    return NormedMonoid.from_table(elements, table, 0, norm, inv=inv)


def grothendieck_norm(m, fplus, fminus, a, b):
    """Norm of the two-sided morphism (fplus, fminus): a -> b.

    The pair is a morphism exactly when fplus * a == b * fminus; its
    norm is norm(fplus) + norm(fminus).
    """
    left = m.op(fplus, a)
    right = m.op(b, fminus)
    if left is None or right is None or left != right:
        raise NotAMorphism(
            "(%r, %r) is not a morphism %r -> %r" % (fplus, fminus, a, b))
    return m.norm(fplus) + m.norm(fminus)


def group_distance(m, a, b, candidates=None):
    """Smallest two-sided norm over all morphisms a -> b.

    For a group each fplus determines fminus = inv(b) * fplus * a; the
    search runs over `candidates` for fplus (default: all elements).
    Without inverses the search enumerates pairs of elements.
    """
    if candidates is None:
        if m.elements is None:
            raise ValueError("infinite monoid: pass explicit candidates")
        candidates = m.elements
    best = INF
    if m.inv is not None:
        for fplus in candidates:
            fminus = m.op(m.op(m.inv(b), fplus), a)
            if fminus is None:
                continue
            v = m.norm(fplus) + m.norm(fminus)
            if v < best:
                best = v
    else:
        for fplus in candidates:
            for fminus in candidates:
                if m.op(fplus, a) == m.op(b, fminus):
                    v = m.norm(fplus) + m.norm(fminus)
                    if v < best:
                        best = v
    return best


def word_norm(m, generators, g, radius=12):
    """Word length of g over the generators, by breadth-first search.

    Generators must be closed under inversion (so word length is a
    genuine norm); beyond `radius` multiplications the result is inf.
    """
    gens = list(generators)
    for a in gens:
        if not any(m.op(a, b) == m.unit for b in gens):
            raise ValueError("generator %r has no inverse among the generators" % (a,))
    if g == m.unit:
        return 0.0
    frontier = {m.unit}
    seen = {m.unit}
    for depth in range(1, radius + 1):
        nxt = set()
        for x in frontier:
            for a in gens:
                y = m.op(x, a)
                if y is None or y in seen:
                    continue
                if y == g:
                    return float(depth)
                seen.add(y)
                nxt.add(y)
        if not nxt:
            break
        frontier = nxt
    return INF


def group_norm_category(n, elem_norm=None):
    """The two-sided-norm category of Z/n: objects are group elements,
    hom(a, b) carries one morphism per fplus.  Returns (category, norms).
    """
    if elem_norm is None:
        elem_norm = lambda k: float(min(k, n - k))
    objs = list(range(n))
    mors = []
    norms = {}

    def name(fp, a, b):
        return "g%d:%d>%d" % (fp, a, b)

    for a in objs:
        for b in objs:
            for fp in range(n):
                fm = (fp + a - b) % n
                nm = name(fp, a, b)
                mors.append((nm, a, b))
                norms[nm] = elem_norm(fp) + elem_norm(fm)
    ids = {a: name(0, a, a) for a in objs}
    comp = {}
    for a in objs:
        for b in objs:
            for c in objs:
                for fp in range(n):
                    for gp in range(n):
                        comp[(name(gp, b, c), name(fp, a, b))] = name((gp + fp) % n, a, c)
    cat = FiniteCategory(objs, mors, ids, comp)
    return cat, norms


# -- cost systems on square-free words --------------------------------------

@dataclass(frozen=True)
class CostSystem:
    """Nonnegative (possibly infinite) costs on ordered pairs of distinct points."""
    points: tuple
    cost: dict

    def __post_init__(self):
        for x in self.points:
            for y in self.points:
                if x == y:
                    continue
                v = self.cost.get((x, y))
                if v is None or v < 0:
                    raise ValueError("missing or negative cost for (%r, %r)" % (x, y))


def word_cost(cs, word):
    """Sum of step costs along a word; immediate repetitions are rejected."""
    word = tuple(word)
    if not word:
        raise ValueError("the empty word has no endpoints; use a one-point word")
    for u, v in zip(word, word[1:]):
        if u == v:
            raise NotSquareFree("immediate repetition at %r" % (u,))
    total = 0.0
    for u, v in zip(word, word[1:]):
        step = cs.cost[(u, v)]
        if step == INF:
            return INF
        total += step
    return total


def cost_pseudometric(cs):
    """Largest pseudometric below the symmetrized cost: all-pairs shortest paths."""
    from .category import PqMetricMatrix
    pts = list(cs.points)
    n = len(pts)
    d = [[0.0 if i == j else INF for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            c = min(cs.cost[(pts[i], pts[j])], cs.cost[(pts[j], pts[i])])
            if c < d[i][j]:
                d[i][j] = c
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == INF:
                continue
            row = d[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < row[j]:
                    row[j] = alt
    return PqMetricMatrix(tuple(pts), tuple(tuple(row) for row in d))


def cost_category(cs, order=None):
    """A finite composition-closed piece of the word category of a cost system.

    Morphisms are the strictly increasing words with respect to `order`
    (default: the point order as given); composition concatenates at the
    shared endpoint.  Returns (category, norms).
    """
    pts = list(order if order is not None else cs.points)
    idx = {p: i for i, p in enumerate(pts)}
    words = []
    n = len(pts)
    for mask in range(1, 1 << n):
        w = tuple(pts[i] for i in range(n) if mask >> i & 1)
        words.append(w)

    def name(w):
        return "w:" + ">".join(str(p) for p in w)

    mors = [(name(w), w[0], w[-1]) for w in words]
    ids = {p: name((p,)) for p in pts}
    comp = {}
    for w1 in words:
        for w2 in words:
            if w1[-1] != w2[0]:
                continue
            merged = w1 + w2[1:]
            if all(idx[a] < idx[b] for a, b in zip(merged, merged[1:])):
                comp[(name(w2), name(w1))] = name(merged)
    # only keep words that stay composable inside the selection: increasing
    # words always are, so the table above is total on composable pairs
    cat = FiniteCategory(pts, mors, ids, comp)
    norms = {name(w): word_cost(cs, w) for w in words}
    return cat, norms
