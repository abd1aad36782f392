import itertools
import math
import random

import pytest

from normcat.extreal import INF
from normcat.capacity import dual_inequality_report
from normcat.generate import random_metric_space, random_multimap, random_function_map, random_subset
from normcat.metric import (
    EmptySpace,
    FiniteMetricSpace,
    MultiMap,
    MultiValued,
    codiameter_seminorm,
    compose_multimaps,
    diameter,
    diameter_capacity_instance,
    dil_distance,
    dilatation_left_dual,
    dilatation_norm,
    dilatation_norm_capacity,
    find_expansive_map,
    gh_correspondence_oracle,
    gh_distance,
    hausdorff_distance,
    is_isometry,
    isometry_search,
    l_dense_check,
    line_space,
    min_dilatation_map,
    one_point_space,
    packing_stats,
    pullback_metric,
    thicken,
    two_point_probe_dual,
    two_point_space,
    zero_dilatation_endos,
)


def pinch_map():
    """0 -> 0, 1 -> 2, 2 -> 2 from {0,1,2} onto {0,2}, both on the line."""
    x = line_space([0, 1, 2])
    y = line_space([0, 2])
    return MultiMap.from_function(x, y, {0: 0, 1: 2, 2: 2})


def identity_map(sp):
    return MultiMap(sp, sp, {p: (p,) for p in sp.points})


# -- space construction -----------------------------------------------------

def test_space_validation():
    with pytest.raises(ValueError):
        FiniteMetricSpace(["a", "a"], [[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        FiniteMetricSpace(["a", "b"], [[0, 1]])
    with pytest.raises(ValueError):
        FiniteMetricSpace(["a", "b"], [[0, -1], [-1, 0]])
    with pytest.raises(ValueError):
        FiniteMetricSpace(["a", "b"], [[1, 1], [1, 0]])
    with pytest.raises(ValueError):
        FiniteMetricSpace(["a", "b"], [[0, INF], [INF, 0]])


def test_separation_and_symmetry_flags():
    with pytest.raises(ValueError):
        FiniteMetricSpace(["a", "b"], [[0, 0], [0, 0]])
    FiniteMetricSpace(["a", "b"], [[0, 0], [0, 0]], allow_pseudo=True)
    with pytest.raises(ValueError):
        FiniteMetricSpace(["a", "b"], [[0, 1], [2, 0]])
    FiniteMetricSpace(["a", "b"], [[0, 1], [2, 0]], allow_quasi=True)


def test_triangle_checked():
    with pytest.raises(ValueError):
        FiniteMetricSpace(["a", "b", "c"],
                          [[0, 1, 5], [1, 0, 1], [5, 1, 0]])


def test_multimap_validation():
    x = line_space([0, 1])
    y = line_space([0, 2])
    with pytest.raises(ValueError):
        MultiMap(x, y, {0: (0,)})
    with pytest.raises(ValueError):
        MultiMap(x, y, {0: (0,), 1: ()})
    with pytest.raises(ValueError):
        MultiMap(x, y, {0: (0,), 1: (7,)})
    f = MultiMap(x, y, {0: (0, 2), 1: (2,)})
    assert not f.single_valued
    with pytest.raises(MultiValued):
        f.value(0)
    g = MultiMap.from_function(x, y, {0: 0, 1: 2})
    assert g.single_valued and g.value(1) == 2


def test_compose_multimaps_pools_values():
    x = line_space([0, 1])
    y = line_space([0, 1, 2])
    z = line_space([0, 4])
    f = MultiMap(x, y, {0: (0, 1), 1: (2,)})
    g = MultiMap(y, z, {0: (0,), 1: (4,), 2: (4,)})
    gf = compose_multimaps(g, f)
    assert gf.assign[0] == (0, 4)
    assert gf.assign[1] == (4,)
    with pytest.raises(ValueError):
        compose_multimaps(f, g)


# -- diameter and the dilatation forms --------------------------------------

def test_diameter_values():
    sp = line_space([0, 1, 2])
    assert diameter(sp, [1]) == 0.0
    assert diameter(sp, [0, 1, 2]) == 2.0
    assert diameter(sp, []) == 0.0


def test_dilatation_norm_values():
    f = pinch_map()
    assert dilatation_norm(identity_map(f.source)) == 0.0
    assert dilatation_norm(f) == 1.0
    x = two_point_space(1, ("x", "y"))
    y = two_point_space(10, ("p", "q"))
    sel = MultiMap(x, y, {"x": ("p",), "y": ("p", "q")})
    assert dilatation_norm(sel) == 1.0


def test_dilatation_capacity_form_values():
    f = pinch_map()
    assert dilatation_norm_capacity(f) == 1.0
    assert dilatation_norm_capacity(identity_map(f.source)) == 0.0
    x = two_point_space(1, ("x", "y"))
    y = two_point_space(10, ("p", "q"))
    sel = MultiMap(x, y, {"x": ("p",), "y": ("p", "q")})
    assert dilatation_norm_capacity(sel) == 1.0
    const = MultiMap.from_function(line_space([0, 1]), one_point_space(), {0: "*", 1: "*"})
    assert dilatation_norm_capacity(const) == 1.0


def test_dilatation_forms_agree_on_random_maps():
    rng = random.Random(60601)
    for _ in range(150):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        x = random_metric_space(rng, n, "x")
        y = random_metric_space(rng, m, "y")
        f = random_multimap(rng, x, y)
        assert abs(dilatation_norm(f) - dilatation_norm_capacity(f)) <= 1e-9


def test_dilatation_subadditive_under_composition():
    rng = random.Random(60602)
    for _ in range(150):
        x = random_metric_space(rng, rng.randint(1, 4), "x")
        y = random_metric_space(rng, rng.randint(1, 4), "y")
        z = random_metric_space(rng, rng.randint(1, 4), "z")
        f = random_multimap(rng, x, y)
        g = random_multimap(rng, y, z)
        assert dilatation_norm(compose_multimaps(g, f)) <= \
            dilatation_norm(g) + dilatation_norm(f) + 1e-9


def test_left_dual_values():
    f = pinch_map()
    assert dilatation_left_dual(identity_map(f.source)) == 0.0
    assert dilatation_left_dual(f) == 1.0
    halving = MultiMap.from_function(line_space([0, 2]), line_space([0, 1]), {0: 0, 2: 1})
    assert dilatation_left_dual(halving) == 0.0


def test_codiameter_values():
    f = pinch_map()
    assert codiameter_seminorm(identity_map(f.source)) == 0.0
    assert codiameter_seminorm(f) == 0.0
    doubling = MultiMap.from_function(line_space([0, 1]), line_space([0, 2]), {0: 0, 1: 2})
    assert codiameter_seminorm(doubling) == 1.0


def test_selections_never_exceed_the_multimap():
    rng = random.Random(60603)
    for _ in range(8):
        n, m = rng.randint(1, 3), rng.randint(1, 3)
        x = random_metric_space(rng, n, "x")
        y = random_metric_space(rng, m, "y")
        f = random_multimap(rng, x, y)
        df = dilatation_norm(f)
        for combo in itertools.product(*(f.assign[p] for p in x.points)):
            g = MultiMap.from_function(x, y, dict(zip(x.points, combo)))
            assert dilatation_norm(g) <= df + 1e-12


def test_single_valued_maps_reach_the_multimap_infimum():
    # over all multi-valued maps the least dilatation is already attained
    # by a single-valued map; exhaustive at <= 3 points
    rng = random.Random(60604)
    for _ in range(4):
        x = random_metric_space(rng, rng.randint(1, 3), "x")
        y = random_metric_space(rng, rng.randint(1, 3), "y")
        value_sets = [tuple(s) for k in range(1, len(y.points) + 1)
                      for s in itertools.combinations(y.points, k)]
        best_multi = INF
        for combo in itertools.product(value_sets, repeat=len(x.points)):
            f = MultiMap(x, y, dict(zip(x.points, combo)))
            best_multi = min(best_multi, dilatation_norm(f))
        assert abs(best_multi - dil_distance(x, y, "none")) <= 1e-12


# -- probes ------------------------------------------------------------------

def test_probe_dual_matches_closed_form_on_functions():
    rng = random.Random(60605)
    for _ in range(60):
        x = random_metric_space(rng, rng.randint(2, 4), "x")
        y = random_metric_space(rng, rng.randint(1, 4), "y")
        f = random_function_map(rng, x, y)
        assert abs(two_point_probe_dual(f) - dilatation_left_dual(f)) <= 1e-9


def test_probe_dual_sees_only_cheapest_selection_when_multivalued():
    x = two_point_space(1, ("x", "y"))
    y = two_point_space(10, ("p", "q"))
    f = MultiMap(x, y, {"x": ("p",), "y": ("p", "q")})
    # the closed form may pick the far pair inside one value set (10 - 0);
    # probes can only realize the cheapest selection, here worthless
    assert dilatation_left_dual(f) == 10.0
    assert two_point_probe_dual(f) == 0.0


def test_probe_dual_equals_min_selection_formula():
    rng = random.Random(60606)
    for _ in range(40):
        x = random_metric_space(rng, rng.randint(2, 4), "x")
        y = random_metric_space(rng, rng.randint(1, 4), "y")
        f = random_multimap(rng, x, y)
        expected = 0.0
        for a in x.points:
            for b in x.points:
                if a == b:
                    continue
                cheapest = min(y.d(u, v) for u in f.assign[a] for v in f.assign[b])
                expected = max(expected, cheapest - x.d(a, b))
        assert abs(two_point_probe_dual(f) - expected) <= 1e-9


# -- pullback ---------------------------------------------------------------

def test_pullback_values():
    f = pinch_map()
    pull = pullback_metric(f)
    assert pull.d(0, 1) == 2.0 and pull.d(1, 2) == 0.0
    doubling = MultiMap.from_function(line_space([0, 1]), line_space([0, 2]), {0: 0, 1: 2})
    assert pullback_metric(doubling).d(0, 1) == 2.0
    const = MultiMap.from_function(line_space([0, 1]), one_point_space(), {0: "*", 1: "*"})
    assert pullback_metric(const).dist == ((0.0, 0.0), (0.0, 0.0))
    ident = identity_map(f.source)
    assert pullback_metric(ident).dist == f.source.dist
    multi = MultiMap(line_space([0, 1]), line_space([0, 2]), {0: (0, 2), 1: (2,)})
    with pytest.raises(MultiValued):
        pullback_metric(multi)


def test_pullback_then_map_never_shrinks():
    rng = random.Random(60607)
    for _ in range(40):
        x = random_metric_space(rng, rng.randint(1, 4), "x")
        y = random_metric_space(rng, rng.randint(1, 4), "y")
        f = random_function_map(rng, x, y)
        pull = pullback_metric(f)
        through = MultiMap(pull, y, f.assign)
        assert dilatation_norm(through) == 0.0


# -- thickenings, Hausdorff, packing, density --------------------------------

def test_thicken_values():
    sp = line_space([0, 1, 2])
    assert thicken(sp, [0], 1, "open") == frozenset([0])
    assert thicken(sp, [0], 1, "closed") == frozenset([0, 1])
    assert thicken(sp, [], 1, "open") == frozenset()
    with pytest.raises(ValueError):
        thicken(sp, [0], 0, "open")
    with pytest.raises(ValueError):
        thicken(sp, [0], -1, "closed")
    with pytest.raises(ValueError):
        thicken(sp, [0], 1, "fuzzy")


def test_thickening_inclusions():
    rng = random.Random(60608)
    for _ in range(60):
        sp = random_metric_space(rng, rng.randint(2, 6), "x")
        a = random_subset(rng, sp.points)
        r = rng.uniform(0.05, 0.8)
        s = rng.uniform(0.05, 0.8)
        assert thicken(sp, thicken(sp, a, r, "open"), s, "open") <= \
            thicken(sp, a, r + s, "open")
        assert thicken(sp, thicken(sp, a, r, "closed"), s, "closed") <= \
            thicken(sp, a, r + s, "closed")


def test_hausdorff_values():
    sp = line_space([0, 3])
    assert hausdorff_distance(sp, [0, 3], [0, 3]) == 0.0
    assert hausdorff_distance(sp, [0], [0, 3]) == 3.0
    assert hausdorff_distance(sp, [], [0]) == INF
    assert hausdorff_distance(sp, [], []) == 0.0


def test_hausdorff_agrees_with_thickening_description():
    rng = random.Random(60609)
    for _ in range(40):
        sp = random_metric_space(rng, rng.randint(2, 5), "x")
        a = random_subset(rng, sp.points, allow_empty=False)
        b = random_subset(rng, sp.points, allow_empty=False)
        r = hausdorff_distance(sp, a, b)
        assert a <= thicken(sp, b, r, "closed")
        assert b <= thicken(sp, a, r, "closed")
        if r > 1e-9:
            shrunk = r - 1e-9
            assert not (a <= thicken(sp, b, shrunk, "closed")
                        and b <= thicken(sp, a, shrunk, "closed"))


def test_packing_values():
    sp = line_space([0, 1, 2])
    assert packing_stats(sp, 0.5)["pack_number"] == 3
    stats = packing_stats(sp, 1.5)
    assert stats["pack_number"] == 2
    assert stats["tot_sup"] == 4.0
    assert set(stats["packing"]) == {0, 2}
    single = packing_stats(one_point_space(), 1.0)
    assert single["pack_number"] == 1 and single["tot_sup"] == 0.0
    with pytest.raises(ValueError):
        packing_stats(sp, 0)


def test_l_dense_values():
    sp = line_space([0, 1, 2])
    assert l_dense_check(sp, [0, 1, 2], 0.0)
    assert l_dense_check(sp, [0], 2.0)
    assert not l_dense_check(sp, [0], 0.5)
    with pytest.raises(ValueError):
        l_dense_check(sp, [0], -0.1)


# -- distances between spaces ------------------------------------------------

def test_gh_examples():
    a = line_space([0, 1])
    b = line_space([0, 2])
    assert gh_distance(a, a) == 0.0
    assert gh_distance(a, b) == 0.5
    assert gh_distance(one_point_space(), b) == 1.0
    with pytest.raises(EmptySpace):
        gh_distance(FiniteMetricSpace((), ()), a)


def test_gh_matches_correspondence_oracle():
    rng = random.Random(60610)
    for _ in range(30):
        n = rng.randint(1, 3)
        m = rng.randint(1, 4)
        x = random_metric_space(rng, n, "x")
        y = random_metric_space(rng, m, "y")
        assert abs(gh_distance(x, y) - gh_correspondence_oracle(x, y)) <= 1e-12


def test_gh_symmetry():
    rng = random.Random(60611)
    for _ in range(25):
        x = random_metric_space(rng, rng.randint(1, 4), "x")
        y = random_metric_space(rng, rng.randint(1, 4), "y")
        assert abs(gh_distance(x, y) - gh_distance(y, x)) <= 1e-12


def test_dil_distance_examples():
    a = line_space([0, 1])
    b = line_space([0, 2])
    assert dil_distance(a, a, "none") == 0.0
    assert dil_distance(a, b, "none") == 0.0
    assert dil_distance(b, a, "none") == 1.0
    assert dil_distance(a, b, "plus") == 0.5
    assert dil_distance(a, b, "max") == 1.0
    with pytest.raises(ValueError):
        dil_distance(a, b, "median")
    with pytest.raises(EmptySpace):
        dil_distance(FiniteMetricSpace((), ()), a)


def test_min_dilatation_map_reports_its_witness():
    rng = random.Random(60612)
    for _ in range(20):
        x = random_metric_space(rng, rng.randint(1, 4), "x")
        y = random_metric_space(rng, rng.randint(1, 4), "y")
        val, mapping, exact = min_dilatation_map(x, y)
        assert exact
        f = MultiMap.from_function(x, y, mapping)
        assert abs(dilatation_norm(f) - val) <= 1e-12
    x = random_metric_space(rng, 6, "x")
    y = random_metric_space(rng, 5, "y")
    val, mapping, exact = min_dilatation_map(x, y)
    assert not exact
    f = MultiMap.from_function(x, y, mapping)
    assert abs(dilatation_norm(f) - val) <= 1e-12


def test_dil_plus_below_twice_gh():
    rng = random.Random(60613)
    for _ in range(60):
        x = random_metric_space(rng, rng.randint(1, 4), "x")
        y = random_metric_space(rng, rng.randint(1, 4), "y")
        assert dil_distance(x, y, "plus") <= 2.0 * gh_distance(x, y) + 1e-9


def test_diameter_is_the_norm_of_the_map_to_a_point():
    rng = random.Random(60614)
    t = one_point_space()
    for _ in range(25):
        sp = random_metric_space(rng, rng.randint(1, 5), "x")
        to_point = MultiMap.from_function(sp, t, {p: "*" for p in sp.points})
        assert abs(dilatation_norm(to_point) - diameter(sp, sp.points)) <= 1e-12


# -- rigidity and isometry search ---------------------------------------------

def relabeled_permuted_copy(rng, sp, prefix):
    perm = list(range(len(sp.points)))
    rng.shuffle(perm)
    labels = ["%s%d" % (prefix, i) for i in range(len(sp.points))]
    dist = [[sp.dist[perm[i]][perm[j]] for j in range(len(perm))] for i in range(len(perm))]
    return FiniteMetricSpace(labels, dist)


def test_zero_dilatation_endos_are_isometries():
    rng = random.Random(60615)
    for _ in range(120):
        sp = random_metric_space(rng, rng.randint(1, 6), "x")
        for h in zero_dilatation_endos(sp):
            assert is_isometry(MultiMap.from_function(sp, sp, h))


def test_expansive_maps_both_ways_force_an_isometry():
    rng = random.Random(60616)
    vacuous = 0
    for k in range(80):
        x = random_metric_space(rng, rng.randint(2, 5), "x")
        if k % 2 == 0:
            y = relabeled_permuted_copy(rng, x, "y")
        else:
            y = random_metric_space(rng, rng.randint(2, 5), "y")
        fwd = find_expansive_map(x, y)
        bwd = find_expansive_map(y, x)
        if fwd is None or bwd is None:
            vacuous += 1
            continue
        assert isometry_search(x, y) is not None
    assert vacuous < 80


def test_isometry_search_values():
    a = line_space([0, 1])
    assert isometry_search(a, a) == {0: 0, 1: 1}
    assert isometry_search(a, line_space([0, 2])) is None
    ruler1 = line_space([0, 1, 4, 10, 12, 17], labels=list("abcdef"))
    ruler2 = line_space([0, 1, 8, 11, 13, 17], labels=list("uvwxyz"))
    m1 = sorted(ruler1.dist[i][j] for i in range(6) for j in range(i + 1, 6))
    m2 = sorted(ruler2.dist[i][j] for i in range(6) for j in range(i + 1, 6))
    assert m1 == m2
    assert isometry_search(ruler1, ruler2) is None


def test_isometry_search_finds_relabeled_copies():
    rng = random.Random(60617)
    for _ in range(30):
        x = random_metric_space(rng, rng.randint(1, 5), "x")
        y = relabeled_permuted_copy(rng, x, "y")
        out = isometry_search(x, y)
        assert out is not None
        f = MultiMap.from_function(x, y, out)
        assert is_isometry(f)


# -- the diameter capacity over a category ------------------------------------

def test_pinch_counterexample_capacity_instance():
    f = pinch_map()
    inst, maps = diameter_capacity_instance(
        {"X": f.source, "Y": f.target}, {"f": f},
        annihilated=("f",), attach_pullbacks=("f",))
    report = dual_inequality_report(inst)
    assert report.ok
    rows = {r.morphism: r for r in report.rows}
    assert rows["f"].norm == 1.0
    assert rows["f"].coseminorm == 0.0
    assert rows["f"].dual_left >= 1.0 - 1e-12
    assert "probe_f" in maps


def test_capacity_rows_match_direct_formulas():
    rng = random.Random(60618)
    for _ in range(10):
        x = random_metric_space(rng, rng.randint(2, 4), "x")
        y = random_metric_space(rng, rng.randint(1, 3), "y")
        f = random_multimap(rng, x, y)
        inst, maps = diameter_capacity_instance({"X": x, "Y": y}, {"f": f})
        report = dual_inequality_report(inst)
        assert report.ok
        for row in report.rows:
            mm = maps[row.morphism]
            assert abs(row.norm - dilatation_norm(mm)) <= 1e-9
            assert abs(row.coseminorm - codiameter_seminorm(mm)) <= 1e-9


def test_surjective_functions_with_probes_dominate_the_coseminorm():
    rng = random.Random(60619)
    for _ in range(12):
        m = rng.randint(1, 3)
        n = rng.randint(m, 4)
        x = random_metric_space(rng, n, "x")
        y = random_metric_space(rng, m, "y")
        values = list(y.points) + [rng.choice(y.points) for _ in range(n - m)]
        rng.shuffle(values)
        f = MultiMap.from_function(x, y, dict(zip(x.points, values)))
        inst, _ = diameter_capacity_instance(
            {"X": x, "Y": y}, {"f": f},
            annihilated=("f",), attach_pullbacks=("f",))
        report = dual_inequality_report(inst)
        assert report.ok, report.violations
