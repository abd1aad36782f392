"""Finite metric spaces with multi-valued maps.

The central quantity is the dilatation seminorm: how much a map can
shrink a distance, sup0 of d(x, y) - d(y1, y2) over points and
selections y1 in f[x], y2 in f[y].  It comes in a pointwise and a
subset-capacity form (provably equal, tested), has a closed-form left
dual, and induces a distance between spaces.  The module also carries
the Hausdorff and Gromov-Hausdorff distances, packing statistics,
thickenings, and the searches used by the norm-axiom checks (isometry
search, expansive-map search).
"""

import itertools
from dataclasses import dataclass

from .extreal import INF, sup0
from .category import FiniteCategory
from .capacity import SubobjectFamily, Capacity, CapacityInstance


class EmptySpace(ValueError):
    pass


class MultiValued(ValueError):
    pass


class FiniteMetricSpace:
    """Points with a distance matrix.

    allow_pseudo permits distinct points at distance zero; allow_quasi
    permits asymmetry (the triangle inequality is then checked in its
    directed form).  Distances must be finite and nonnegative.
    """

    def __init__(self, points, dist, allow_pseudo=False, allow_quasi=False):
        self.points = tuple(points)
        self.dist = tuple(tuple(float(v) for v in row) for row in dist)
        self.allow_pseudo = allow_pseudo
        self.allow_quasi = allow_quasi
        n = len(self.points)
        if len(set(self.points)) != n:
            raise ValueError("duplicate point ids")
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise ValueError("distance matrix shape does not match points")
        self.index = {p: i for i, p in enumerate(self.points)}
        tol = 1e-9
        d = self.dist
        for i in range(n):
            if d[i][i] != 0.0:
                raise ValueError("nonzero diagonal at %r" % (self.points[i],))
            for j in range(n):
                v = d[i][j]
                if not (0.0 <= v < INF):
                    raise ValueError("distance (%r, %r) outside [0, inf)" % (self.points[i], self.points[j]))
                if i != j and v == 0.0 and not allow_pseudo:
                    raise ValueError("zero distance between distinct points %r, %r"
                                     % (self.points[i], self.points[j]))
                if not allow_quasi and abs(v - d[j][i]) > tol:
                    raise ValueError("asymmetric distance at (%r, %r)" % (self.points[i], self.points[j]))
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if d[i][k] > d[i][j] + d[j][k] + tol:
                        raise ValueError(
                            "triangle inequality fails on (%r, %r, %r)"
                            % (self.points[i], self.points[j], self.points[k]))

    def d(self, a, b):
        return self.dist[self.index[a]][self.index[b]]

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        return (isinstance(other, FiniteMetricSpace)
                and self.points == other.points and self.dist == other.dist)

    def __hash__(self):
        return hash((self.points, self.dist))

    def __repr__(self):
        return "FiniteMetricSpace(%r)" % (list(self.points),)


def line_space(values, labels=None):
    """Points on the real line with the absolute-value metric."""
    vals = [float(v) for v in values]
    if labels is None:
        labels = values
    dist = [[abs(a - b) for b in vals] for a in vals]
    return FiniteMetricSpace(labels, dist)


def two_point_space(r, labels=("p", "q")):
    """The two-point space S_r used as a probe."""
    return FiniteMetricSpace(labels, [[0.0, float(r)], [float(r), 0.0]],
                             allow_pseudo=(r == 0))


def one_point_space(label="*"):
    return FiniteMetricSpace((label,), ((0.0,),))


@dataclass(frozen=True)
class MultiMap:
    """Map assigning each source point a nonempty set of target points."""
    source: FiniteMetricSpace
    target: FiniteMetricSpace
    assign: dict

    def __post_init__(self):
        if set(self.assign) != set(self.source.points):
            raise ValueError("assignment keys must be exactly the source points")
        canon = {}
        tidx = self.target.index
        for x, ys in self.assign.items():
            ys = tuple(ys)
            if not ys:
                raise ValueError("empty value set at %r" % (x,))
            for y in ys:
                if y not in tidx:
                    raise ValueError("value %r at %r is not a target point" % (y, x))
            canon[x] = tuple(sorted(set(ys), key=lambda y: tidx[y]))
        object.__setattr__(self, "assign", canon)

    @classmethod
    def from_function(cls, source, target, assign):
        return cls(source, target, {x: (y,) for x, y in assign.items()})

    @property
    def single_valued(self):
        return all(len(ys) == 1 for ys in self.assign.values())

    def value(self, x):
        """The unique value of a single-valued map at x."""
        ys = self.assign[x]
        if len(ys) != 1:
            raise MultiValued("map is multi-valued at %r" % (x,))
        return ys[0]

    def hit_preimage(self, subset):
        """Points whose value set meets the subset."""
        s = set(subset)
        return frozenset(x for x, ys in self.assign.items()
                         if any(y in s for y in ys))


def compose_multimaps(g, f):
    """g after f: union of g over every selection of f."""
    if f.target != g.source:
        raise ValueError("maps are not composable")
    assign = {}
    for x, ys in f.assign.items():
        out = set()
        for y in ys:
            out.update(g.assign[y])
        assign[x] = tuple(out)
    return MultiMap(f.source, g.target, assign)


# -- diameters and the dilatation seminorm --------------------------------

def diameter(sp, subset):
    """sup0 of pairwise distances; the empty set has diameter 0."""
    pts = [sp.index[p] for p in subset]
    d = sp.dist
    return sup0(d[i][j] for i in pts for j in pts)


def dilatation_norm(f):
    """sup0 over point pairs and selections of d(x,y) - d(y1,y2)."""
    dx, dy = f.source.dist, f.target.dist
    six, tix = f.source.index, f.target.index
    best = 0.0
    pts = f.source.points
    for x in pts:
        fx = [tix[y] for y in f.assign[x]]
        for y in pts:
            fy = [tix[w] for w in f.assign[y]]
            dxy = dx[six[x]][six[y]]
            for i in fx:
                for j in fy:
                    v = dxy - dy[i][j]
                    if v > best:
                        best = v
    return best


def dilatation_norm_capacity(f):
    """Subset form: sup0 over target subsets A of diam(preimage of A) - diam(A).

    Exponential in the target size; used as the oracle against the
    pointwise form.
    """
    tgt = f.target.points
    m = len(tgt)
    best = 0.0
    for mask in range(1, 1 << m):
        a = [tgt[i] for i in range(m) if mask >> i & 1]
        pre = f.hit_preimage(a)
        v = diameter(f.source, pre) - diameter(f.target, a)
        if v > best:
            best = v
    return best


def dilatation_left_dual(f):
    """Closed form of the left dual: sup0 of d(y1,y2) - d(x,y) over selections."""
    dx, dy = f.source.dist, f.target.dist
    six, tix = f.source.index, f.target.index
    best = 0.0
    pts = f.source.points
    for x in pts:
        fx = [tix[y] for y in f.assign[x]]
        for y in pts:
            fy = [tix[w] for w in f.assign[y]]
            dxy = dx[six[x]][six[y]]
            for i in fx:
                for j in fy:
                    v = dy[i][j] - dxy
                    if v > best:
                        best = v
    return best


def two_point_probe_dual(f):
    """Left dual realized by explicit two-point probes.

    For every ordered pair of distinct source points and every target
    selection, a probe from the two-point space at the selected target
    distance contributes dil(probe) - dil(f after probe).  The sup over
    probes equals the closed-form left dual when f is single-valued;
    for genuinely multi-valued maps composition pools the value sets,
    so the probe sup only sees the cheapest selection and can be
    strictly below the closed form.
    """
    best = 0.0
    pts = f.source.points
    for x in pts:
        for y in pts:
            if x == y:
                continue
            for y1 in f.assign[x]:
                for y2 in f.assign[y]:
                    r = f.target.d(y1, y2)
                    probe_space = two_point_space(r)
                    g = MultiMap.from_function(probe_space, f.source,
                                               {"p": x, "q": y})
                    term = dilatation_norm(g) - dilatation_norm(compose_multimaps(f, g))
                    if term > best:
                        best = term
    return best


def codiameter_seminorm(f):
    """How much the diameter can drop along preimages.

    sup0 over target subsets with nonempty preimage of
    diam(A) - diam(preimage of A); subsets missing the image entirely
    are skipped.
    """
    tgt = f.target.points
    m = len(tgt)
    best = 0.0
    for mask in range(1, 1 << m):
        a = [tgt[i] for i in range(m) if mask >> i & 1]
        pre = f.hit_preimage(a)
        if not pre:
            continue
        v = diameter(f.target, a) - diameter(f.source, pre)
        if v > best:
            best = v
    return best


def pullback_metric(f):
    """The source points re-measured through a single-valued map.

    d'(x, y) = d_target(f(x), f(y)); a pseudometric in general.  The
    identity assignment from the pullback space to the source followed
    by f never shrinks pullback distances, so that composite has
    dilatation norm zero.
    """
    if not f.single_valued:
        raise MultiValued("pullback needs a single-valued map")
    pts = f.source.points
    dy = f.target.dist
    tix = f.target.index
    img = [tix[f.value(x)] for x in pts]
    dist = [[dy[img[i]][img[j]] for j in range(len(pts))] for i in range(len(pts))]
    return FiniteMetricSpace(pts, dist, allow_pseudo=True)


# -- thickenings, Hausdorff, packings --------------------------------------

def thicken(sp, subset, r, mode="closed"):
    """Open (< r) or closed (<= r) metric thickening of a subset."""
    if mode == "open":
        if not r > 0:
            raise ValueError("open thickening needs r > 0")
        keep = lambda v: v < r
    elif mode == "closed":
        if r < 0:
            raise ValueError("closed thickening needs r >= 0")
        keep = lambda v: v <= r
    else:
        raise ValueError("mode must be 'open' or 'closed'")
    idxs = [sp.index[p] for p in subset]
    out = []
    for i, p in enumerate(sp.points):
        if idxs and keep(min(sp.dist[i][j] for j in idxs)):
            out.append(p)
    return frozenset(out)


def hausdorff_distance(sp, a, b):
    """max over either set of the distance to the other; empty vs nonempty is inf."""
    a, b = frozenset(a), frozenset(b)
    if not a and not b:
        return 0.0
    if not a or not b:
        return INF
    ia = [sp.index[p] for p in a]
    ib = [sp.index[p] for p in b]
    d = sp.dist
    fwd = max(min(d[i][j] for j in ib) for i in ia)
    bwd = max(min(d[j][i] for i in ia) for j in ib)
    return max(fwd, bwd)


def l_dense_check(sp, subset, l):
    """True iff the closed l-thickening of the subset covers every point."""
    if l < 0:
        raise ValueError("density radius must be nonnegative")
    return len(thicken(sp, subset, l, "closed")) == len(sp.points)


def packing_stats(sp, l):
    """Largest packing with pairwise distances strictly above l.

    Returns {"pack_number": size, "packing": a witness of maximal size,
    "tot_sup": best sum of distances over ordered distinct pairs across
    all packings}.  Exhaustive subset walk, intended for small spaces.
    """
    if not l > 0:
        raise ValueError("packing radius must be positive")
    n = len(sp.points)
    if n > 16:
        raise ValueError("packing enumeration is limited to 16 points")
    d = sp.dist
    best_size = 0
    best_pack = ()
    best_tot = 0.0

    def rec(i, chosen, tot):
        nonlocal best_size, best_pack, best_tot
        if len(chosen) > best_size:
            best_size = len(chosen)
            best_pack = tuple(sp.points[k] for k in chosen)
        if tot > best_tot:
            best_tot = tot
        if i == n:
            return
        rec(i + 1, chosen, tot)
        if all(d[i][k] > l for k in chosen):
            add = 2.0 * sum(d[i][k] for k in chosen)
            rec(i + 1, chosen + [i], tot + add)

    rec(0, [], 0.0)
    return {"pack_number": best_size, "packing": best_pack, "tot_sup": best_tot}


# -- distances between spaces ----------------------------------------------

def _check_nonempty(x, y):
    if not x.points or not y.points:
        raise EmptySpace("distances need nonempty spaces")


def min_dilatation_map(x, y):
    """Smallest dilatation norm over single-valued maps x -> y.

    Exhaustive (branch and bound) when |y| ** |x| <= 3125; beyond that a
    greedy start plus local search gives an upper bound.  Returns
    (value, assignment dict, exact flag).
    """
    _check_nonempty(x, y)
    n, m = len(x.points), len(y.points)
    dx, dy = x.dist, y.dist
    exact = m ** n <= 3125

    def full_value(assign):
        return max(max(dx[i][j] - dy[assign[i]][assign[j]]
                       for j in range(n)) for i in range(n)) if n else 0.0

    if exact:
        best = [INF, None]

        def rec(i, assign, cur):
            if cur >= best[0]:
                return
            if i == n:
                best[0] = cur
                best[1] = list(assign)
                return
            for v in range(m):
                nc = cur
                ok = True
                for j in range(i):
                    t = dx[j][i] - dy[assign[j]][v]
                    if t > nc:
                        nc = t
                    if nc >= best[0]:
                        ok = False
                        break
                if ok:
                    assign.append(v)
                    rec(i + 1, assign, nc)
                    assign.pop()

        rec(0, [], 0.0)
        val = max(0.0, best[0])
        assign = best[1]
    else:
        # greedy insertion, then single-point moves to a local optimum
        assign = []
        for i in range(n):
            cand = min(range(m), key=lambda v: max(
                [dx[j][i] - dy[assign[j]][v] for j in range(i)] or [0.0]))
            assign.append(cand)
        improved = True
        while improved:
            improved = False
            cur = full_value(assign)
            for i in range(n):
                old = assign[i]
                for v in range(m):
                    if v == old:
                        continue
                    assign[i] = v
                    if full_value(assign) < cur:
                        cur = full_value(assign)
                        old = v
                        improved = True
                assign[i] = old
        val = max(0.0, full_value(assign))
    mapping = {x.points[i]: y.points[assign[i]] for i in range(n)}
    return val, mapping, exact


def dil_distance(x, y, symmetrize="none"):
    """Distance induced by the dilatation seminorm: min over maps, symmetrized."""
    _check_nonempty(x, y)
    fwd = min_dilatation_map(x, y)[0]
    if symmetrize == "none":
        return fwd
    bwd = min_dilatation_map(y, x)[0]
    if symmetrize == "plus":
        return (fwd + bwd) / 2.0
    if symmetrize == "max":
        return max(fwd, bwd)
    raise ValueError("symmetrize must be 'none', 'plus' or 'max'")


def gh_distance(x, y):
    """Gromov-Hausdorff distance: half the least correspondence distortion.

    Every correspondence contains the graph of a map each way, and the
    union of two such graphs is again a correspondence, so the minimum
    is attained on pairs (phi: x -> y, psi: y -> x); the search walks
    those pairs with branch-and-bound pruning.  Exact at any size,
    intended for desk-scale spaces.
    """
    _check_nonempty(x, y)
    n, m = len(x.points), len(y.points)
    dx, dy = x.dist, y.dist

    def pair_value(phi, psi):
        dis = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                dis = max(dis, abs(dx[i][j] - dy[phi[i]][phi[j]]))
        for a in range(m):
            for b in range(a + 1, m):
                dis = max(dis, abs(dy[a][b] - dx[psi[a]][psi[b]]))
        for i in range(n):
            for a in range(m):
                dis = max(dis, abs(dx[i][psi[a]] - dy[phi[i]][a]))
        return dis

    # greedy incumbent
    phi0 = []
    for i in range(n):
        phi0.append(min(range(m), key=lambda v: max(
            [abs(dx[j][i] - dy[phi0[j]][v]) for j in range(i)] or [0.0])))
    psi0 = []
    for a in range(m):
        psi0.append(min(range(n), key=lambda u: max(
            [abs(dy[b][a] - dx[psi0[b]][u]) for b in range(a)] or [0.0])))
    best = [pair_value(phi0, psi0)]

    def rec_psi(a, psi, cur, phi):
        if cur >= best[0]:
            return
        if a == m:
            best[0] = cur
            return
        for u in range(n):
            nc = cur
            ok = True
            for b in range(a):
                t = abs(dy[b][a] - dx[psi[b]][u])
                if t > nc:
                    nc = t
                if nc >= best[0]:
                    ok = False
                    break
            if ok:
                for i in range(n):
                    t = abs(dx[i][u] - dy[phi[i]][a])
                    if t > nc:
                        nc = t
                    if nc >= best[0]:
                        ok = False
                        break
            if ok:
                psi.append(u)
                rec_psi(a + 1, psi, nc, phi)
                psi.pop()

    def rec_phi(i, phi, cur):
        if cur >= best[0]:
            return
        if i == n:
            rec_psi(0, [], cur, phi)
            return
        for v in range(m):
            nc = cur
            ok = True
            for j in range(i):
                t = abs(dx[j][i] - dy[phi[j]][v])
                if t > nc:
                    nc = t
                if nc >= best[0]:
                    ok = False
                    break
            if ok:
                phi.append(v)
                rec_phi(i + 1, phi, nc)
                phi.pop()

    rec_phi(0, [], 0.0)
    return best[0] / 2.0


def gh_correspondence_oracle(x, y):
    """Brute-force minimum distortion over all correspondences (tiny spaces).

    Enumerates every relation with surjective projections; exponential
    in |x| * |y|, capped at 16 bits.
    """
    _check_nonempty(x, y)
    n, m = len(x.points), len(y.points)
    if n * m > 16:
        raise ValueError("correspondence enumeration is limited to 16 pairs")
    dx, dy = x.dist, y.dist
    pairs = [(i, a) for i in range(n) for a in range(m)]
    best = INF
    for mask in range(1, 1 << len(pairs)):
        rel = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        if len({i for i, _ in rel}) < n or len({a for _, a in rel}) < m:
            continue
        dis = 0.0
        for (i, a), (j, b) in itertools.combinations_with_replacement(rel, 2):
            t = abs(dx[i][j] - dy[a][b])
            if t > dis:
                dis = t
        if dis < best:
            best = dis
    return best / 2.0


# -- searches used by the norm axioms ---------------------------------------

def find_expansive_map(x, y, tol=1e-9):
    """A map x -> y that never shrinks distances (dilatation norm 0), or None."""
    n, m = len(x.points), len(y.points)
    dx, dy = x.dist, y.dist

    def rec(i, assign):
        if i == n:
            return list(assign)
        for v in range(m):
            if all(dy[assign[j]][v] >= dx[j][i] - tol for j in range(i)):
                assign.append(v)
                out = rec(i + 1, assign)
                if out is not None:
                    return out
                assign.pop()
        return None

    out = rec(0, [])
    if out is None:
        return None
    return {x.points[i]: y.points[out[i]] for i in range(n)}


def zero_dilatation_endos(sp, tol=1e-9):
    """All self-maps with dilatation norm zero (never shrinking a distance)."""
    n = len(sp.points)
    d = sp.dist
    found = []

    def rec(i, assign):
        if i == n:
            found.append({sp.points[k]: sp.points[assign[k]] for k in range(n)})
            return
        for v in range(n):
            if all(d[assign[j]][v] >= d[j][i] - tol for j in range(i)):
                assign.append(v)
                rec(i + 1, assign)
                assign.pop()

    rec(0, [])
    return found


def isometry_search(x, y, tol=1e-9):
    """A distance-preserving bijection x -> y, or None (certified, finite)."""
    n, m = len(x.points), len(y.points)
    if n != m:
        return None
    dx, dy = x.dist, y.dist

    def rec(i, assign, used):
        if i == n:
            return list(assign)
        for v in range(m):
            if v in used:
                continue
            if all(abs(dy[assign[j]][v] - dx[j][i]) <= tol for j in range(i)):
                assign.append(v)
                used.add(v)
                out = rec(i + 1, assign, used)
                if out is not None:
                    return out
                assign.pop()
                used.discard(v)
        return None

    out = rec(0, [], set())
    if out is None:
        return None
    return {x.points[i]: y.points[out[i]] for i in range(n)}


def is_isometry(f, tol=1e-9):
    """True when a single-valued map preserves every distance (and is bijective)."""
    if not f.single_valued:
        return False
    vals = [f.value(x) for x in f.source.points]
    if len(set(vals)) != len(f.target.points):
        return False
    for a in f.source.points:
        for b in f.source.points:
            if abs(f.source.d(a, b) - f.target.d(f.value(a), f.value(b))) > tol:
                return False
    return True


# -- capacity instances over the diameter ----------------------------------

def _tagged_subset_family(label, sp, preimage):
    pts = sp.points
    n = len(pts)
    handles = []
    for mask in range(1 << n):
        handles.append((label, frozenset(pts[i] for i in range(n) if mask >> i & 1)))
    return SubobjectFamily(
        carrier=label,
        handles=tuple(handles),
        leq=lambda a, b: a[0] == b[0] and a[1] <= b[1],
        preimage=preimage,
        is_empty=lambda h: len(h[1]) == 0)


def diameter_capacity_instance(spaces, generators, annihilated=(),
                               attach_pullbacks=(), max_morphisms=400):
    """A finite category of metric spaces carrying the diameter capacity.

    spaces: {label: FiniteMetricSpace}; generators: {name: MultiMap}
    with endpoints given by matching the source/target spaces against
    the labels.  The category is closed under composition; morphisms
    named in attach_pullbacks (single-valued) additionally get their
    pullback space and the identity-assignment probe attached, which
    realizes the left-dual lower bound for surjective maps.  Returns
    (CapacityInstance, {morphism name: MultiMap}) with the instance
    ready for dual_inequality_report.
    """
    spaces = dict(spaces)
    label_of = {sp: lab for lab, sp in spaces.items()}
    if len(label_of) != len(spaces):
        raise ValueError("space labels must refer to distinct spaces")

    maps = {}        # name -> MultiMap
    endpoints = {}   # name -> (src label, tgt label)
    by_key = {}      # (src, tgt, assign) -> canonical name

    def key_of(mm):
        return (label_of[mm.source], label_of[mm.target],
                tuple(sorted(mm.assign.items())))

    def add_map(name, mm):
        """Register a map unless an equal one exists; return the kept name."""
        k = key_of(mm)
        if k in by_key:
            return by_key[k]
        maps[name] = mm
        endpoints[name] = (label_of[mm.source], label_of[mm.target])
        by_key[k] = name
        return name

    ids = {}
    for lab, sp in spaces.items():
        ids[lab] = add_map("id_%s" % (lab,),
                           MultiMap(sp, sp, {x: (x,) for x in sp.points}))

    gen_names = {}
    for name, mm in generators.items():
        if mm.source not in label_of or mm.target not in label_of:
            raise ValueError("generator %r runs between unlabeled spaces" % (name,))
        gen_names[name] = add_map(name, mm)

    for name in attach_pullbacks:
        mm = maps[gen_names[name]]
        pull = pullback_metric(mm)
        if pull in label_of:
            # the map already preserves its pullback distances; the
            # probe degenerates to an existing identity assignment
            src = pull
        else:
            plab = "pullback_of_%s" % (name,)
            if plab in spaces:
                raise ValueError("label %r already taken" % (plab,))
            spaces[plab] = pull
            label_of[pull] = plab
            ids[plab] = add_map("id_%s" % (plab,),
                                MultiMap(pull, pull, {x: (x,) for x in pull.points}))
            src = pull
        probe = MultiMap.from_function(src, mm.source,
                                       {x: x for x in src.points})
        add_map("probe_%s" % (name,), probe)

    comp = {}
    work = True
    while work:
        work = False
        names = list(maps)
        for gname in names:
            for fname in names:
                if endpoints[fname][1] != endpoints[gname][0]:
                    continue
                if (gname, fname) in comp:
                    continue
                gf = compose_multimaps(maps[gname], maps[fname])
                k = key_of(gf)
                if k not in by_key:
                    rname = "%s.%s" % (gname, fname)
                    if len(maps) >= max_morphisms:
                        raise ValueError("composition closure exceeds %d morphisms" % (max_morphisms,))
                    add_map(rname, gf)
                    by_key[k] = rname
                    work = True
                comp[(gname, fname)] = by_key[k]

    mors = [(name, endpoints[name][0], endpoints[name][1]) for name in maps]
    cat = FiniteCategory(list(spaces), mors, ids, comp)

    def preimage(name, handle):
        mm = maps[name]
        src_lab = endpoints[name][0]
        return (src_lab, mm.hit_preimage(handle[1]))

    families = {lab: _tagged_subset_family(lab, sp, preimage)
                for lab, sp in spaces.items()}
    cap = Capacity(lambda h: diameter(spaces[h[0]], h[1]), direction="monotone")
    inst = CapacityInstance(category=cat, families=families,
                            capacity=cap, annihilated=tuple(annihilated))
    return inst, dict(maps)
