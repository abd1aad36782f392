"""Command line surface: parse instances, compute norms and distances,
run the property suites, generate random instances.

Exit codes: 0 on a successful computation or a passing suite, 1 when a
suite reports a failure, 2 on any input problem (bad schema, violated
invariant, unknown kind, missing file, size out of bounds).
"""

import argparse
import csv
import json
import os
import random
import sys
import time

from .io import (
    parse_instance,
    write_instance,
    serialize_instance,
    ext_to_json,
    json_to_ext,
    SchemaError,
)
from .discrete import (
    FiniteFunction,
    SimplicialMap,
    CostSystem,
    set_norm,
    cyclic_group,
    grothendieck_norm,
    word_cost,
)
from .linear import operator_seminorm
from .metric import (
    FiniteMetricSpace,
    MultiMap,
    dilatation_norm,
    dilatation_left_dual,
    codiameter_seminorm,
    dil_distance,
    gh_distance,
)
from .topo import (
    ContinuousPosetMap,
    component_seminorm,
    dimension_seminorm,
    topological_norm,
)
from .measure import (
    FiniteMMSpace,
    MMSpaceMap,
    BaseMismatch,
    prokhorov_seminorm,
    prokhorov_distance,
)
from .wasserstein import wasserstein_seminorm, w1_transport
from .suites import run_suite, SUITE_NAMES
from .generate import (
    random_metric_space,
    random_mm_space,
    random_poset,
    random_simplicial,
)


class SizeOutOfBounds(ValueError):
    pass


GENERATE_BOUNDS = {
    "metric": (1, 10),
    "mm": (1, 10),
    "poset": (1, 8),
    "simplicial": (1, 8),
}

NORM_KINDS = ("set", "dil", "dil-dual", "codiam", "comp", "dim", "top",
              "prokhorov", "wasserstein", "op", "groth", "word")
DIST_KINDS = ("gh", "dil", "dil-plus", "prokhorov", "w1")


def _default_seed():
    raw = os.environ.get("NORMCAT_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise SchemaError("NORMCAT_SEED must be an integer, got %r" % (raw,))


def _expect(inst, cls, what):
    if not isinstance(inst, cls):
        raise SchemaError("%s needs a %s instance, got %s"
                          % (what, cls.__name__, type(inst).__name__))
    return inst


def _field(d, key, kind):
    if key not in d:
        raise SchemaError("%s instance is missing %r" % (kind, key))
    return d[key]


def _norm_results(kind, inst, aux):
    """(results, details) for one norm computation."""
    if kind == "set":
        f = _expect(inst, FiniteFunction, "norm --kind set")
        return [("set_norm", set_norm(f))], {}
    if kind == "dil":
        f = _expect(inst, MultiMap, "norm --kind dil")
        return [("dilatation_norm", dilatation_norm(f))], {}
    if kind == "dil-dual":
        f = _expect(inst, MultiMap, "norm --kind dil-dual")
        return [("dilatation_left_dual", dilatation_left_dual(f))], {}
    if kind == "codiam":
        f = _expect(inst, MultiMap, "norm --kind codiam")
        return [("codiameter_seminorm", codiameter_seminorm(f))], {}
    if kind == "comp":
        f = _expect(inst, ContinuousPosetMap, "norm --kind comp")
        return [("component_seminorm", component_seminorm(f))], {}
    if kind == "dim":
        f = _expect(inst, SimplicialMap, "norm --kind dim")
        out = dimension_seminorm(f)
        return [("fiber_form", out["fiber_form"]),
                ("capacity_form", out["capacity_form"])], {}
    if kind == "top":
        pm = vm = None
        for part in (inst, aux):
            if part is None:
                continue
            if isinstance(part, ContinuousPosetMap):
                pm = part
            elif isinstance(part, SimplicialMap):
                vm = part
            else:
                raise SchemaError(
                    "norm --kind top takes order-preserving and simplicial "
                    "maps, got %s" % type(part).__name__)
        return [("topological_norm", topological_norm(pm, vm))], {}
    if kind == "prokhorov":
        f = _expect(inst, MMSpaceMap, "norm --kind prokhorov")
        return [("prokhorov_seminorm", prokhorov_seminorm(f))], {}
    if kind == "wasserstein":
        f = _expect(inst, MMSpaceMap, "norm --kind wasserstein")
        out = wasserstein_seminorm(f)
        details = {"direction": out["direction"]}
        if out["witness"] is not None:
            details["witness"] = dict(out["witness"])
        return [("wasserstein_lower_bound", out["lower_bound"])], details
    if kind == "op":
        if not isinstance(inst, list):
            raise SchemaError("norm --kind op needs a linear_map instance")
        return [("operator_seminorm", operator_seminorm(inst))], {}
    if kind == "groth":
        if not (isinstance(inst, dict) and inst.get("kind") == "group_morphism"):
            raise SchemaError("norm --kind groth needs a group_morphism instance")
        n = int(_field(inst, "n", "group_morphism"))
        if n < 1:
            raise SchemaError("group_morphism needs n >= 1")
        m = cyclic_group(n)
        args = [int(_field(inst, k, "group_morphism")) % n
                for k in ("fplus", "fminus", "a", "b")]
        return [("grothendieck_norm", grothendieck_norm(m, *args))], {}
    if kind == "word":
        if not (isinstance(inst, dict) and inst.get("kind") == "word"):
            raise SchemaError("norm --kind word needs a word instance")
        cost = {}
        for a, row in _field(inst, "cost", "word").items():
            for b, c in row.items():
                cost[(a, b)] = json_to_ext(c)
        cs = CostSystem(tuple(_field(inst, "points", "word")), cost)
        return [("word_cost", word_cost(cs, _field(inst, "word", "word")))], {}
    raise SchemaError("unknown norm kind %r" % (kind,))


def _dist_results(kind, a, b):
    if kind == "gh":
        _expect(a, FiniteMetricSpace, "dist --kind gh")
        _expect(b, FiniteMetricSpace, "dist --kind gh")
        return [("gh_distance", gh_distance(a, b))]
    if kind == "dil":
        _expect(a, FiniteMetricSpace, "dist --kind dil")
        _expect(b, FiniteMetricSpace, "dist --kind dil")
        return [("dil_distance", dil_distance(a, b))]
    if kind == "dil-plus":
        _expect(a, FiniteMetricSpace, "dist --kind dil-plus")
        _expect(b, FiniteMetricSpace, "dist --kind dil-plus")
        return [("dil_plus_distance", dil_distance(a, b, symmetrize="plus"))]
    if kind == "prokhorov":
        _expect(a, FiniteMMSpace, "dist --kind prokhorov")
        _expect(b, FiniteMMSpace, "dist --kind prokhorov")
        return [("prokhorov_distance", prokhorov_distance(a, b))]
    if kind == "w1":
        _expect(a, FiniteMMSpace, "dist --kind w1")
        _expect(b, FiniteMMSpace, "dist --kind w1")
        if (a.base.points != b.base.points or a.base.dist != b.base.dist):
            raise BaseMismatch("the two measures must share one base metric space")
        ident = MMSpaceMap(a, b, {p: p for p in a.base.points})
        return [("w1_cost", w1_transport(ident)["cost"])]
    raise SchemaError("unknown dist kind %r" % (kind,))


def _render_value(v):
    """One scalar as text carrying exactly the json number (or inf marker)."""
    enc = ext_to_json(v)
    return enc if isinstance(enc, str) else json.dumps(enc)


def _emit(report, fmt, out=None):
    out = sys.stdout if out is None else out
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        return
    rows = report["results"]
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        if rows and "value" in rows[0]:
            w.writerow(["name", "value"])
            for r in rows:
                w.writerow([r["name"], _render_value(json_to_ext(r["value"]))])
        else:
            w.writerow(["name", "ok", "detail"])
            for r in rows:
                w.writerow([r["name"], json.dumps(r["ok"]), r["detail"]])
        return
    for r in rows:
        if "value" in r:
            out.write("%s = %s\n" % (r["name"], _render_value(json_to_ext(r["value"]))))
        else:
            out.write("[%s] %s  (%s)\n" % ("ok" if r["ok"] else "FAIL",
                                           r["name"], r["detail"]))


def _report(command, results, seed=None, **extra):
    rep = {"command": command, "results": results, "seed": seed}
    rep.update(extra)
    return rep


def _cmd_norm(args):
    t0 = time.time()
    inst = parse_instance(args.map)
    aux = parse_instance(args.space) if args.space else None
    pairs, details = _norm_results(args.kind, inst, aux)
    results = [{"name": n, "value": ext_to_json(v)} for n, v in pairs]
    rep = _report("norm", results, kind=args.kind,
                  timing_s=round(time.time() - t0, 6))
    if details:
        rep["details"] = details
    _emit(rep, args.format)
    return 0


def _cmd_dist(args):
    t0 = time.time()
    a = parse_instance(args.a)
    b = parse_instance(args.b)
    pairs = _dist_results(args.kind, a, b)
    results = [{"name": n, "value": ext_to_json(v)} for n, v in pairs]
    _emit(_report("dist", results, kind=args.kind,
                  timing_s=round(time.time() - t0, 6)), args.format)
    return 0


def _cmd_check(args):
    t0 = time.time()
    rows = run_suite(args.suite, args.seed, args.cases)
    ok = all(r["ok"] for r in rows)
    _emit(_report("check", rows, seed=args.seed, suite=args.suite,
                  cases=args.cases, ok=ok,
                  timing_s=round(time.time() - t0, 6)), args.format)
    return 0 if ok else 1


def _cmd_generate(args):
    lo, hi = GENERATE_BOUNDS[args.kind]
    if not lo <= args.size <= hi:
        raise SizeOutOfBounds("size for kind %r must lie in [%d, %d], got %d"
                              % (args.kind, lo, hi, args.size))
    rng = random.Random(args.seed)
    if args.kind == "metric":
        obj = random_metric_space(rng, args.size)
    elif args.kind == "mm":
        obj = random_mm_space(rng, args.size, normalize=True)
    elif args.kind == "poset":
        obj = random_poset(rng, args.size)
    else:
        obj = random_simplicial(rng, args.size)
    if args.out:
        write_instance(obj, args.out)
        _emit(_report("generate", [], seed=args.seed, kind=args.kind,
                      size=args.size, out=args.out), args.format)
    else:
        sys.stdout.write(serialize_instance(obj))
    return 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="normcat",
        description="Norms on finite categories and the induced distances.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_format(sp):
        sp.add_argument("--format", choices=("json", "csv", "text"),
                        default="json", help="output format (default json)")

    sp = sub.add_parser("norm", help="norm of one morphism instance")
    sp.add_argument("--kind", choices=NORM_KINDS, required=True)
    sp.add_argument("--map", required=True, help="instance file")
    sp.add_argument("--space", default=None,
                    help="auxiliary instance file (second part for --kind top)")
    add_format(sp)
    sp.set_defaults(func=_cmd_norm)

    sp = sub.add_parser("dist", help="distance between two space instances")
    sp.add_argument("--kind", choices=DIST_KINDS, required=True)
    sp.add_argument("a", help="first instance file")
    sp.add_argument("b", help="second instance file")
    add_format(sp)
    sp.set_defaults(func=_cmd_dist)

    sp = sub.add_parser("check", help="run a seeded property suite")
    sp.add_argument("--suite", choices=SUITE_NAMES + ("all",), required=True)
    sp.add_argument("--cases", type=int, default=50)
    sp.add_argument("--seed", type=int, default=None)
    add_format(sp)
    sp.set_defaults(func=_cmd_check)

    sp = sub.add_parser("generate", help="write a random valid instance")
    sp.add_argument("--kind", choices=tuple(GENERATE_BOUNDS), required=True)
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--out", default=None, help="output path (default stdout)")
    add_format(sp)
    sp.set_defaults(func=_cmd_generate)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        return args.func(args)
    except (ValueError, OSError) as exc:
        sys.stderr.write("error: %s\n" % (exc,))
        return 2


if __name__ == "__main__":
    sys.exit(main())
