"""Test functions, the scaling-invariant integral capacity, and W1 transport.

A metric measure space is considered up to the rescaling that trades
distance for mass: (X, lam*d, nu) matches (X, d, lam*nu).  The capacity
of a test function is the largest integral any admissible rescaled
representative gives it; the closed three-case form is checked against
a plain grid search over rescalings.  The transport side solves the
balanced W1 problem exactly and feeds a comparison harness for the
conjectured identity between the two routes.
"""

import bisect
import itertools
import math
import random
import warnings
from dataclasses import dataclass

from .extreal import INF, ext_sub, sup0, ConventionError
from .metric import FiniteMetricSpace
from .measure import FiniteMMSpace, MMSpaceMap


class NonNormalizable(ValueError):
    pass


class MassMismatch(ValueError):
    pass


@dataclass(frozen=True)
class TestFunction:
    """A [0,1]-valued function on the points of a metric space."""
    __test__ = False  # not a pytest suite, despite the name
    space: FiniteMetricSpace
    values: dict

    def __post_init__(self):
        if set(self.values) != set(self.space.points):
            raise ValueError("value keys must be exactly the space points")
        for p, v in self.values.items():
            if not (0.0 <= v <= 1.0):
                raise ValueError("value at %r outside [0,1]" % (p,))

    def __call__(self, p):
        return self.values[p]


@dataclass(frozen=True)
class ProjectiveMMSpace:
    """An mm-space considered up to the distance/mass rescaling."""
    representative: FiniteMMSpace

    def __post_init__(self):
        if self.representative.volume() <= 0.0:
            raise ValueError("the measure must not vanish identically")


def lipschitz_seminorm(phi, sp=None):
    """Largest slope of phi over pairs of distinct points.

    phi may be a TestFunction (sp optional), a dict, or a callable.
    A zero-distance pair with differing values gives infinity.
    """
    if isinstance(phi, TestFunction):
        if sp is None:
            sp = phi.space
        get = phi.values.__getitem__
    elif isinstance(phi, dict):
        get = phi.__getitem__
    else:
        get = phi
    if sp is None:
        raise ValueError("a space is required unless phi is a TestFunction")
    terms = []
    pts = sp.points
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            gap = abs(get(x) - get(y))
            d = sp.d(x, y)
            if d == 0.0:
                if gap > 0.0:
                    return INF
                continue
            terms.append(gap / d)
    return sup0(terms)


def normalize_representative(sp, phi):
    """The rescaled representative on which phi has Lipschitz seminorm 1."""
    rep = sp.representative if isinstance(sp, ProjectiveMMSpace) else sp
    lip = lipschitz_seminorm(phi, rep.base)
    if lip == 0.0 or lip == INF:
        raise NonNormalizable("Lipschitz seminorm %r cannot be scaled to 1" % lip)
    base = FiniteMetricSpace(rep.base.points,
                             [[lip * v for v in row] for row in rep.base.dist])
    out = FiniteMMSpace(base, {p: m / lip for p, m in rep.mass.items()})
    assert abs(lipschitz_seminorm(phi, base) - 1.0) <= 1e-9
    return out


def wasserstein_capacity(sp, phi):
    """Integral of phi on its normalized representative, by cases.

    A finite positive slope L gives (1/L) * sum phi * mass.  A constant
    positive phi can be rescaled without bound, giving infinity; phi
    identically zero, or an infinite slope, gives zero.  The remaining
    corner (slope zero, a zero value next to a positive one) is not
    settled; it returns 0 under a warning.
    """
    rep = sp.representative if isinstance(sp, ProjectiveMMSpace) else sp
    if isinstance(phi, TestFunction):
        vals = phi.values
    else:
        vals = dict(phi)
    lip = lipschitz_seminorm(vals, rep.base)
    if lip == INF:
        return 0.0
    if all(v == 0.0 for v in vals.values()):
        return 0.0
    if lip == 0.0:
        if all(v > 0.0 for v in vals.values()):
            return INF
        warnings.warn("flat test function with a zero value: "
                      "capacity case not settled, returning 0")
        return 0.0
    return sum(vals[p] * rep.mass[p] for p in rep.base.points) / lip


_DEFAULT_GRID = None


def _default_lambda_grid():
    global _DEFAULT_GRID
    if _DEFAULT_GRID is None:
        lo, hi, count = 1e-9, 1e9, 80001
        ratio = (hi / lo) ** (1.0 / (count - 1))
        _DEFAULT_GRID = [lo * ratio ** i for i in range(count)]
    return _DEFAULT_GRID


def wasserstein_capacity_oracle(sp, phi, lam_grid=None, divergence=1e6):
    """Grid search over rescaled representatives (X, d/lam, lam*nu).

    Admissible rescalings keep the Lipschitz seminorm of phi at most 1
    on the rescaled distance; the value of each is the integral of phi
    against the rescaled mass.  Both the admissibility margin and the
    value grow monotonically with lam, so the grid supremum sits at the
    largest admissible grid point; values past the divergence threshold
    report infinity.
    """
    rep = sp.representative if isinstance(sp, ProjectiveMMSpace) else sp
    if isinstance(phi, TestFunction):
        vals = phi.values
    else:
        vals = dict(phi)
    if lam_grid is None:
        grid = _default_lambda_grid()
    elif isinstance(lam_grid, dict):
        lo, hi, count = lam_grid["lo"], lam_grid["hi"], lam_grid["count"]
        ratio = (hi / lo) ** (1.0 / (count - 1))
        grid = [lo * ratio ** i for i in range(count)]
    else:
        grid = sorted(lam_grid)
    lip = lipschitz_seminorm(vals, rep.base)
    integral = sum(vals[p] * rep.mass[p] for p in rep.base.points)
    if lip == INF:
        return 0.0
    if lip == 0.0:
        best = grid[-1]
    else:
        # admissible iff lam * lip <= 1: take the largest such grid point
        k = bisect.bisect_right(grid, 1.0 / lip) - 1
        if k < 0:
            return 0.0
        best = grid[k]
    value = best * integral
    if value >= divergence:
        return INF
    return value


def _merged_search(search):
    out = {"k": 4, "restarts": 6, "sweeps": 60, "seed": 0}
    if search:
        out.update(search)
    return out


def wasserstein_seminorm(f, search=None, direction="displayed",
                         extra_witnesses=()):
    """Best capacity gap over a grid of test functions on the target.

    direction "displayed" maximizes c_W(source, psi after f) minus
    c_W(target, psi); "reversed" flips the two terms.  Targets with at
    most 4 points are searched exhaustively on the value grid
    {0, 1/k, ..., 1}; larger targets use seeded multi-start coordinate
    ascent.  The result is a certified lower bound with its witness,
    not an exact supremum.  extra_witnesses are evaluated alongside.
    """
    if direction not in ("displayed", "reversed"):
        raise ValueError("unknown direction %r" % (direction,))
    opts = _merged_search(search)
    src = ProjectiveMMSpace(f.source)
    tgt = ProjectiveMMSpace(f.target)
    tpts = f.target.base.points

    def term(psi):
        pulled = {x: psi[f.assign[x]] for x in f.source.base.points}
        a = wasserstein_capacity(src, pulled)
        b = wasserstein_capacity(tgt, psi)
        if direction == "reversed":
            a, b = b, a
        try:
            return ext_sub(a, b)
        except ConventionError:
            return None

    best, witness = 0.0, {p: 0.0 for p in tpts}
    seen = [dict(w) for w in extra_witnesses]
    k = opts["k"]
    levels = [i / k for i in range(k + 1)]
    if len(tpts) <= 4:
        for combo in itertools.product(levels, repeat=len(tpts)):
            seen.append(dict(zip(tpts, combo)))
    else:
        rng = random.Random(opts["seed"])
        for _ in range(opts["restarts"]):
            psi = {p: rng.choice(levels) for p in tpts}
            cur = term(psi)
            for _ in range(opts["sweeps"]):
                improved = False
                for p in tpts:
                    for v in levels:
                        if v == psi[p]:
                            continue
                        cand = dict(psi, **{p: v})
                        t = term(cand)
                        if t is not None and (cur is None or t > cur):
                            psi, cur = cand, t
                            improved = True
                if not improved:
                    break
            seen.append(psi)
    for psi in seen:
        t = term(psi)
        if t is not None and t > best:
            best, witness = t, dict(psi)
    return {"lower_bound": best, "witness": witness, "direction": direction}


@dataclass(frozen=True)
class Coupling:
    """A nonnegative mass matrix with prescribed marginals."""
    source_points: tuple
    target_points: tuple
    matrix: dict
    row_marginals: dict
    col_marginals: dict

    def __post_init__(self):
        for (x, y), m in self.matrix.items():
            if x not in self.source_points or y not in self.target_points:
                raise ValueError("entry at unknown point pair (%r, %r)" % (x, y))
            if m < 0.0:
                raise ValueError("negative mass at (%r, %r)" % (x, y))
        for x in self.source_points:
            row = sum(m for (a, _), m in self.matrix.items() if a == x)
            if abs(row - self.row_marginals[x]) > 1e-9:
                raise ValueError("row sum at %r misses its marginal" % (x,))
        for y in self.target_points:
            col = sum(m for (_, b), m in self.matrix.items() if b == y)
            if abs(col - self.col_marginals[y]) > 1e-9:
                raise ValueError("column sum at %r misses its marginal" % (y,))


def _as_transport_data(f, mu_sp, nu_sp):
    if isinstance(f, MMSpaceMap):
        if mu_sp is None:
            mu_sp = f.source
        if nu_sp is None:
            nu_sp = f.target
        assign = f.assign
    else:
        assign = dict(f)
        if mu_sp is None or nu_sp is None:
            raise ValueError("plain assignments need explicit mm-spaces")
    return assign, mu_sp, nu_sp


def w1_transport(f, mu_sp=None, nu_sp=None, free_scalars=False):
    """Cheapest coupling of the two masses against the cost d(f(x), y).

    Solved exactly by successive shortest augmenting paths; the final
    flow is certified by exhibiting potentials under which every
    residual edge has nonnegative reduced cost and every loaded edge is
    tight.  free_scalars is experimental: unbalanced inputs are admitted
    by rescaling the source mass onto the target total, with no
    optimality claim relative to other rescalings.
    """
    assign, mu_sp, nu_sp = _as_transport_data(f, mu_sp, nu_sp)
    if abs(mu_sp.volume() - nu_sp.volume()) > 1e-9:
        if not free_scalars:
            raise MassMismatch("total masses differ: %r vs %r"
                               % (mu_sp.volume(), nu_sp.volume()))
        if mu_sp.volume() <= 0.0 or nu_sp.volume() <= 0.0:
            raise MassMismatch("free scaling needs positive totals")
        r = nu_sp.volume() / mu_sp.volume()
        warnings.warn("free-scalar regime: source mass rescaled by %g, "
                      "no optimality claim" % r)
        mu_sp = FiniteMMSpace(mu_sp.base,
                              {p: r * m for p, m in mu_sp.mass.items()})
    xs = [x for x in mu_sp.base.points if mu_sp.mass[x] > 0.0]
    ys = [y for y in nu_sp.base.points if nu_sp.mass[y] > 0.0]
    tb = nu_sp.base
    cost = [[tb.d(assign[x], y) for y in ys] for x in xs]
    nx, ny = len(xs), len(ys)
    flow = [[0.0] * ny for _ in range(nx)]
    supply = [mu_sp.mass[x] for x in xs]
    demand = [nu_sp.mass[y] for y in ys]

    def shortest_augmenting_path():
        # Bellman-Ford over nodes: 0..nx-1 sources, nx..nx+ny-1 sinks
        dist = [INF] * (nx + ny)
        prev = [None] * (nx + ny)
        for i in range(nx):
            if supply[i] > 1e-15:
                dist[i] = 0.0
        for _ in range(nx + ny):
            changed = False
            for i in range(nx):
                if dist[i] == INF:
                    continue
                for j in range(ny):
                    nd = dist[i] + cost[i][j]
                    if nd < dist[nx + j] - 1e-15:
                        dist[nx + j] = nd
                        prev[nx + j] = i
                        changed = True
            for j in range(ny):
                if dist[nx + j] == INF:
                    continue
                for i in range(nx):
                    if flow[i][j] > 1e-15:
                        nd = dist[nx + j] - cost[i][j]
                        if nd < dist[i] - 1e-15:
                            dist[i] = nd
                            prev[i] = nx + j
                            changed = True
            if not changed:
                break
        best_j, best = None, INF
        for j in range(ny):
            if demand[j] > 1e-15 and dist[nx + j] < best:
                best, best_j = dist[nx + j], j
        return best_j, prev

    remaining = sum(supply)
    while remaining > 1e-12:
        j, prev = shortest_augmenting_path()
        if j is None:
            # only the sub-tolerance imbalance of the inputs is left
            if remaining > 1e-6:
                raise RuntimeError("no augmenting path despite unshipped mass")
            break
        # walk back to a source, recording the path and its bottleneck
        path = []
        node = nx + j
        bottleneck = demand[j]
        while prev[node] is not None:
            p = prev[node]
            if node >= nx:
                path.append((p, node - nx, +1))
            else:
                path.append((node, p - nx, -1))
                bottleneck = min(bottleneck, flow[node][p - nx])
            node = p
        bottleneck = min(bottleneck, supply[node])
        for i, jj, sign in path:
            flow[i][jj] += sign * bottleneck
        supply[node] -= bottleneck
        demand[j] -= bottleneck
        remaining -= bottleneck

    total = sum(flow[i][j] * cost[i][j] for i in range(nx) for j in range(ny))
    _certify_transport(cost, flow, nx, ny)
    matrix = {(xs[i], ys[j]): flow[i][j]
              for i in range(nx) for j in range(ny) if flow[i][j] > 0.0}
    coupling = Coupling(tuple(xs), tuple(ys), matrix,
                        {x: mu_sp.mass[x] for x in xs},
                        {y: nu_sp.mass[y] for y in ys})
    return {"cost": total, "coupling": coupling}


def _certify_transport(cost, flow, nx, ny, tol=1e-7):
    """Potentials making loaded edges tight and all edges nonnegative.

    Shortest distances over the residual graph stabilize only when no
    negative cycle remains; the stabilized distances are the potentials
    of the complementary-slackness certificate.
    """
    if nx == 0 or ny == 0:
        return
    dist = [0.0] * (nx + ny)
    for _ in range(nx + ny + 1):
        changed = False
        for i in range(nx):
            for j in range(ny):
                if dist[i] + cost[i][j] < dist[nx + j] - 1e-12:
                    dist[nx + j] = dist[i] + cost[i][j]
                    changed = True
                if flow[i][j] > 1e-12 and dist[nx + j] - cost[i][j] < dist[i] - 1e-12:
                    dist[i] = dist[nx + j] - cost[i][j]
                    changed = True
        if not changed:
            break
    else:
        raise RuntimeError("optimality certificate failed: residual "
                           "graph still has a negative cycle")
    for i in range(nx):
        for j in range(ny):
            red = cost[i][j] + dist[i] - dist[nx + j]
            if red < -tol:
                raise RuntimeError("optimality certificate failed: "
                                   "negative reduced cost %r" % red)
            if flow[i][j] > 1e-9 and abs(red) > tol:
                raise RuntimeError("optimality certificate failed: "
                                   "loaded edge not tight (%r)" % red)


def w1_vertex_oracle(f, mu_sp=None, nu_sp=None):
    """Brute-force minimum over all spanning-tree vertices of the polytope."""
    assign, mu_sp, nu_sp = _as_transport_data(f, mu_sp, nu_sp)
    if abs(mu_sp.volume() - nu_sp.volume()) > 1e-9:
        raise MassMismatch("total masses differ")
    xs = [x for x in mu_sp.base.points if mu_sp.mass[x] > 0.0]
    ys = [y for y in nu_sp.base.points if nu_sp.mass[y] > 0.0]
    nx, ny = len(xs), len(ys)
    if nx == 0:
        return 0.0
    if nx + ny > 8:
        raise ValueError("vertex enumeration is limited to small supports")
    tb = nu_sp.base
    cost = {(i, j): tb.d(assign[xs[i]], ys[j])
            for i in range(nx) for j in range(ny)}
    edges = list(cost)
    need = nx + ny - 1
    best = INF
    for basis in itertools.combinations(edges, need):
        parent = list(range(nx + ny))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        ok = True
        for i, j in basis:
            ra, rb = find(i), find(nx + j)
            if ra == rb:
                ok = False
                break
            parent[ra] = rb
        if not ok:
            continue
        # solve the tree by repeatedly settling a degree-one node
        bal = [mu_sp.mass[x] for x in xs] + [-nu_sp.mass[y] for y in ys]
        alive = set(basis)
        val = {}
        while alive:
            deg = {}
            for i, j in alive:
                deg[i] = deg.get(i, 0) + 1
                deg[nx + j] = deg.get(nx + j, 0) + 1
            leaf_edge = None
            for e in alive:
                i, j = e
                if deg[i] == 1:
                    leaf_edge, node, other = e, i, nx + j
                    break
                if deg[nx + j] == 1:
                    leaf_edge, node, other = e, nx + j, i
                    break
            i, j = leaf_edge
            amount = bal[node] if node < nx else -bal[node]
            val[leaf_edge] = amount
            bal[node] = 0.0
            if node < nx:
                bal[other] += amount
            else:
                bal[other] -= amount
            alive.discard(leaf_edge)
        if any(v < -1e-10 for v in val.values()):
            continue
        total = sum(v * cost[e] for e, v in val.items())
        if total < best:
            best = total
    return best


def kr_compare(f):
    """Both sides of the conjectured transport identity, with their gap.

    lhs is the searched test-function lower bound; rhs is the exact W1
    cost plus one minus the slope of f between the volume-rescaled
    spaces.  Nothing is asserted: this is a measurement harness.
    """
    mu_sp, nu_sp = f.source, f.target
    sem = wasserstein_seminorm(f)
    lhs = sem["lower_bound"]
    w1 = w1_transport(f)["cost"]
    volx, voly = mu_sp.volume(), nu_sp.volume()
    sb, tb = mu_sp.base, nu_sp.base
    terms = []
    pts = sb.points
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            dx = volx * sb.d(x, y)
            dy = voly * tb.d(f.assign[x], f.assign[y])
            if dx == 0.0:
                if dy > 0.0:
                    terms.append(INF)
                continue
            terms.append(dy / dx)
    hoeld = sup0(terms)
    rhs = w1 + (1.0 - hoeld) if hoeld < INF else -INF
    return {"lhs": lhs, "rhs": rhs, "gap": ext_sub(lhs, rhs),
            "w1": w1, "hoeld_rescaled": hoeld, "witness": sem["witness"]}
