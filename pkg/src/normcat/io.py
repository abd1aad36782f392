"""JSON schemas for spaces, maps, and the values they produce.

Every serializer emits canonical JSON (sorted keys, two-space indent,
trailing newline), so generate -> parse -> serialize round-trips
byte-for-byte.  Infinite values travel as the strings "inf" and "-inf".
"""

import json

from .extreal import INF, NEG_INF
from .discrete import FiniteFunction, SimplicialComplex, SimplicialMap, CostSystem
from .metric import FiniteMetricSpace, MultiMap
from .topo import FiniteTopSpace, ContinuousPosetMap
from .measure import FiniteMMSpace, MMSpaceMap
from .wasserstein import TestFunction


class SchemaError(ValueError):
    pass


class InvariantError(ValueError):
    pass


class UnknownKind(ValueError):
    pass


def ext_to_json(x):
    if x == INF:
        return "inf"
    if x == NEG_INF:
        return "-inf"
    return x


def json_to_ext(v):
    if v == "inf":
        return INF
    if v == "-inf":
        return NEG_INF
    return float(v)


def _require(d, key, kind):
    if key not in d:
        raise SchemaError("%s instance is missing %r" % (kind, key))
    return d[key]


def _guard(builder, *args):
    """Run a validating constructor, reporting failures as InvariantError."""
    try:
        return builder(*args)
    except (SchemaError, InvariantError):
        raise
    except (ValueError, TypeError) as exc:
        raise InvariantError(str(exc)) from exc


def space_to_json(obj):
    if isinstance(obj, FiniteMMSpace):
        return {
            "kind": "mm_space",
            "points": list(obj.base.points),
            "dist": [list(row) for row in obj.base.dist],
            "mass": [obj.mass[p] for p in obj.base.points],
        }
    if isinstance(obj, FiniteMetricSpace):
        return {
            "kind": "metric_space",
            "points": list(obj.points),
            "dist": [list(row) for row in obj.dist],
        }
    if isinstance(obj, FiniteTopSpace):
        return {
            "kind": "top_space",
            "points": list(obj.points),
            "leq": [[bool(v) for v in row] for row in obj.leq],
        }
    if isinstance(obj, SimplicialComplex):
        simplices = sorted(
            (sorted(s, key=obj.vertices.index) for s in obj.simplices),
            key=lambda s: (len(s), [obj.vertices.index(v) for v in s]))
        return {
            "kind": "simplicial",
            "vertices": list(obj.vertices),
            "simplices": simplices,
        }
    if isinstance(obj, (tuple, list)):
        return {"kind": "finite_set", "points": list(obj)}
    raise UnknownKind("no schema for %r" % type(obj).__name__)


def space_from_json(d):
    kind = _require(d, "kind", "space")
    if kind == "metric_space":
        pts = tuple(_require(d, "points", kind))
        return _guard(FiniteMetricSpace, pts, _require(d, "dist", kind))
    if kind == "mm_space":
        pts = tuple(_require(d, "points", kind))
        base = _guard(FiniteMetricSpace, pts, _require(d, "dist", kind))
        mass = _require(d, "mass", kind)
        if len(mass) != len(pts):
            raise SchemaError("mass list length does not match points")
        return _guard(FiniteMMSpace, base, dict(zip(pts, map(float, mass))))
    if kind == "top_space":
        pts = tuple(_require(d, "points", kind))
        leq = [[bool(v) for v in row] for row in _require(d, "leq", kind)]
        return _guard(FiniteTopSpace, pts, leq)
    if kind == "simplicial":
        verts = tuple(_require(d, "vertices", kind))
        simps = [frozenset(s) for s in _require(d, "simplices", kind)]
        return _guard(SimplicialComplex, verts, frozenset(simps))
    if kind == "finite_set":
        return tuple(_require(d, "points", kind))
    raise UnknownKind("unknown space kind %r" % (kind,))


def map_to_json(m):
    if isinstance(m, MultiMap):
        return {
            "kind": "map",
            "source": space_to_json(m.source),
            "target": space_to_json(m.target),
            "assign": {x: list(ys) for x, ys in m.assign.items()},
        }
    if isinstance(m, (MMSpaceMap, ContinuousPosetMap)):
        return {
            "kind": "map",
            "source": space_to_json(m.source),
            "target": space_to_json(m.target),
            "assign": dict(m.assign),
        }
    if isinstance(m, SimplicialMap):
        return {
            "kind": "map",
            "source": space_to_json(m.source),
            "target": space_to_json(m.target),
            "assign": dict(m.assign),
        }
    if isinstance(m, FiniteFunction):
        return {
            "kind": "map",
            "source": space_to_json(m.source),
            "target": space_to_json(m.target),
            "assign": dict(m.assign),
        }
    raise UnknownKind("no schema for %r" % type(m).__name__)


def map_from_json(d):
    src = space_from_json(_require(d, "source", "map"))
    tgt = space_from_json(_require(d, "target", "map"))
    assign = _require(d, "assign", "map")
    if isinstance(src, FiniteMetricSpace) and isinstance(tgt, FiniteMetricSpace):
        fixed = {}
        for x, ys in assign.items():
            fixed[x] = tuple(ys) if isinstance(ys, list) else (ys,)
        return _guard(MultiMap, src, tgt, fixed)
    single = {x: (ys[0] if isinstance(ys, list) else ys)
              for x, ys in assign.items()}
    if isinstance(src, FiniteMMSpace) and isinstance(tgt, FiniteMMSpace):
        return _guard(MMSpaceMap, src, tgt, single)
    if isinstance(src, FiniteTopSpace) and isinstance(tgt, FiniteTopSpace):
        return _guard(ContinuousPosetMap, src, tgt, single)
    if isinstance(src, SimplicialComplex) and isinstance(tgt, SimplicialComplex):
        return _guard(SimplicialMap, src, tgt, single)
    if isinstance(src, tuple) and isinstance(tgt, tuple):
        return _guard(FiniteFunction, src, tgt, single)
    raise SchemaError("map endpoints %r -> %r are not a supported pairing"
                      % (type(src).__name__, type(tgt).__name__))


def instance_to_json(obj):
    try:
        return map_to_json(obj)
    except UnknownKind:
        pass
    if isinstance(obj, TestFunction):
        return {
            "kind": "testfn",
            "space": space_to_json(obj.space),
            "values": dict(obj.values),
        }
    if isinstance(obj, CostSystem):
        nested = {}
        for (a, b), c in obj.cost.items():
            nested.setdefault(a, {})[b] = ext_to_json(c)
        return {
            "kind": "cost_system",
            "points": list(obj.points),
            "cost": nested,
        }
    if isinstance(obj, dict):
        return obj
    return space_to_json(obj)


def instance_from_json(d):
    if not isinstance(d, dict):
        raise SchemaError("an instance must be a JSON object")
    kind = _require(d, "kind", "instance")
    if kind == "map":
        return map_from_json(d)
    if kind == "testfn":
        sp = space_from_json(_require(d, "space", kind))
        vals = {p: float(v) for p, v in _require(d, "values", kind).items()}
        return _guard(TestFunction, sp, vals)
    if kind == "cost_system":
        pts = tuple(_require(d, "points", kind))
        cost = {}
        for a, row in _require(d, "cost", kind).items():
            for b, c in row.items():
                cost[(a, b)] = json_to_ext(c)
        return _guard(CostSystem, pts, cost)
    if kind == "linear_map":
        entries = _require(d, "entries", kind)
        if not entries or any(len(r) != len(entries[0]) for r in entries):
            raise InvariantError("entries must form a nonempty rectangle")
        return [[float(v) for v in row] for row in entries]
    if kind in ("group_morphism", "word"):
        return dict(d)
    return space_from_json(d)


def parse_instance(path):
    """Load one schema-valid instance from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("%s: %s" % (path, exc)) from exc
    return instance_from_json(raw)


def serialize_instance(obj):
    """Canonical JSON text for an instance or an already-built payload."""
    payload = instance_to_json(obj)
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write_instance(obj, path):
    text = serialize_instance(obj)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return text
