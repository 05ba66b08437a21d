"""JSON documents for universes, conditions and reports.

Every ``*_to_doc`` function returns plain JSON data in canonical form: sets
become sorted arrays, maps become arrays of ``{key, value}`` entries in a
fixed order, and :func:`dumps` writes keys sorted.  Parsing accepts the same
shapes in any order and reports problems as :class:`DocumentError` with the
path of the offending field, e.g. ``countables[2].trace``.
"""

from __future__ import annotations

import json
from typing import Any

from . import traces as tr
from .errors import DocumentError
from .product_forcing import QCondition
from .single_forcing import PCondition, provenances
from .traces import KAPPA
from .universe import (
    AxiomReport,
    CountableModel,
    Elem,
    OrdS,
    SetE,
    UncountableModel,
    Universe,
    UniverseConfig,
)


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}",
            path=source, line=exc.lineno,
        ) from None


def read_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror}", path=path) from None
    return loads(text, path)


# --------------------------------------------------------------------------
# small typed readers that know where they are


def _fail(path: str, msg: str):
    raise DocumentError(f"{path}: {msg}", path=path)


def _obj(doc, path: str, keys: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(doc, dict):
        _fail(path or "<root>", "expected an object")
    missing = sorted(keys - set(doc))
    if missing:
        _fail(path or "<root>", f"missing field {missing[0]!r}")
    extra = sorted(set(doc) - keys - set(optional))
    if extra:
        _fail(path or "<root>", f"unknown field {extra[0]!r}")
    return doc


def _nat(doc, path: str) -> int:
    if isinstance(doc, bool) or not isinstance(doc, int) or doc < 0:
        _fail(path, "expected a natural number")
    return doc


def _bool(doc, path: str) -> bool:
    if not isinstance(doc, bool):
        _fail(path, "expected true or false")
    return doc


def _str(doc, path: str) -> str:
    if not isinstance(doc, str) or not doc:
        _fail(path, "expected a non-empty string")
    return doc


def _arr(doc, path: str) -> list:
    if not isinstance(doc, list):
        _fail(path, "expected an array")
    return doc


def _nats(doc, path: str) -> list[int]:
    return [_nat(x, f"{path}[{i}]") for i, x in enumerate(_arr(doc, path))]


def _trace(doc, path: str) -> int:
    vals = _nats(doc, path)
    if not vals:
        _fail(path, "trace sets are nonempty")
    if len(set(vals)) != len(vals):
        _fail(path, "duplicate ordinal")
    return tr.from_elems(vals)


def _ordinal(doc, path: str):
    if doc == "kappa":
        return KAPPA
    return _nat(doc, path)


def _ord_doc(a):
    return "kappa" if a is KAPPA else a


def _cut_key(a):
    return (1, 0) if a is KAPPA else (0, a)


# --------------------------------------------------------------------------
# universes


def universe_to_doc(u: Universe) -> dict:
    c = u.config
    return {
        "config": {
            "size": c.size,
            "omega1Cut": c.omega1_cut,
            "lambdaSet": sorted(c.lambda_set),
            "stationaryFamily": [sorted(s) for s in c.stationary],
            "lambdaStar": c.lambda_star,
        },
        "countables": [
            {
                "id": m.id,
                "trace": tr.elems(m.trace),
                "indexSet": sorted(m.index_set),
                "setFamily": sorted(tr.elems(k) for k in m.set_family),
                "modelFamily": sorted(m.model_family),
                "simpleFlag": m.simple,
            }
            for m in u.countables.values()
        ],
        "uncountables": [
            {
                "id": p.id,
                "cut": p.cut,
                "indexSet": sorted(p.index_set),
                "modelFamily": sorted(p.model_family),
                "simpleFlag": p.simple,
            }
            for p in u.uncountables.values()
        ],
    }


def universe_from_doc(doc) -> Universe:
    """Parse a universe document.  Shape errors raise; axioms are not checked here."""
    d = _obj(doc, "", {"config", "countables", "uncountables"})
    c = _obj(d["config"], "config", {"size", "omega1Cut", "lambdaSet", "stationaryFamily", "lambdaStar"})
    stationary = []
    for i, s in enumerate(_arr(c["stationaryFamily"], "config.stationaryFamily")):
        stationary.append(frozenset(_nats(s, f"config.stationaryFamily[{i}]")))
    config = UniverseConfig(
        size=_nat(c["size"], "config.size"),
        omega1_cut=_nat(c["omega1Cut"], "config.omega1Cut"),
        lambda_set=tuple(sorted(set(_nats(c["lambdaSet"], "config.lambdaSet")))),
        stationary=tuple(stationary),
        lambda_star=_nat(c["lambdaStar"], "config.lambdaStar"),
    )
    seen: set[str] = set()
    countables = []
    for i, m in enumerate(_arr(d["countables"], "countables")):
        p = f"countables[{i}]"
        m = _obj(m, p, {"id", "trace", "indexSet", "setFamily", "modelFamily", "simpleFlag"})
        mid = _str(m["id"], f"{p}.id")
        if mid in seen:
            _fail(f"{p}.id", f"duplicate model id {mid!r}")
        seen.add(mid)
        countables.append(
            CountableModel(
                id=mid,
                trace=_trace(m["trace"], f"{p}.trace"),
                index_set=frozenset(_nats(m["indexSet"], f"{p}.indexSet")),
                set_family=frozenset(
                    _trace(k, f"{p}.setFamily[{j}]")
                    for j, k in enumerate(_arr(m["setFamily"], f"{p}.setFamily"))
                ),
                model_family=frozenset(
                    _str(x, f"{p}.modelFamily[{j}]")
                    for j, x in enumerate(_arr(m["modelFamily"], f"{p}.modelFamily"))
                ),
                simple=_bool(m["simpleFlag"], f"{p}.simpleFlag"),
            )
        )
    uncountables = []
    for i, q in enumerate(_arr(d["uncountables"], "uncountables")):
        p = f"uncountables[{i}]"
        q = _obj(q, p, {"id", "cut", "indexSet", "modelFamily", "simpleFlag"})
        qid = _str(q["id"], f"{p}.id")
        if qid in seen:
            _fail(f"{p}.id", f"duplicate model id {qid!r}")
        seen.add(qid)
        uncountables.append(
            UncountableModel(
                id=qid,
                cut=_nat(q["cut"], f"{p}.cut"),
                index_set=frozenset(_nats(q["indexSet"], f"{p}.indexSet")),
                model_family=frozenset(
                    _str(x, f"{p}.modelFamily[{j}]")
                    for j, x in enumerate(_arr(q["modelFamily"], f"{p}.modelFamily"))
                ),
                simple=_bool(q["simpleFlag"], f"{p}.simpleFlag"),
            )
        )
    return Universe(config, countables, uncountables)


def axiom_report_to_doc(report: AxiomReport) -> dict:
    return report.to_doc()


# --------------------------------------------------------------------------
# single-forcing conditions


def witness_for(u: Universe, p: PCondition, t: int) -> tuple[str, object] | None:
    """Canonical provenance for a trace set: the least one inside ``p``, else
    the least representation anywhere in the universe."""
    for cands in (provenances(u, p, SetE(t)), u.representations(t)):
        if cands:
            return min(cands, key=lambda ma: (ma[0], _cut_key(ma[1])))
    return None


def elem_to_doc(u: Universe, p: PCondition, x: Elem) -> dict:
    if x.kind == 0:
        return {"kind": "ordS", "alpha": _ord_doc(x.value)}
    wit = witness_for(u, p, x.value)
    return {
        "kind": "set",
        "elems": tr.elems(x.value),
        "witness": None if wit is None else {"model": wit[0], "alpha": _ord_doc(wit[1])},
    }


def _elem_from_doc(doc, path: str, u: Universe | None) -> Elem:
    if not isinstance(doc, dict) or doc.get("kind") not in ("ordS", "set"):
        _fail(path, 'expected a domain element with kind "ordS" or "set"')
    if doc["kind"] == "ordS":
        _obj(doc, path, {"kind", "alpha"})
        return OrdS(_nat(doc["alpha"], f"{path}.alpha"))
    _obj(doc, path, {"kind", "elems", "witness"})
    t = _trace(doc["elems"], f"{path}.elems")
    wit = doc["witness"]
    if wit is not None:
        w = _obj(wit, f"{path}.witness", {"model", "alpha"})
        mid = _str(w["model"], f"{path}.witness.model")
        a = _ordinal(w["alpha"], f"{path}.witness.alpha")
        if u is not None:
            if not u.is_countable(mid):
                _fail(f"{path}.witness.model", f"unknown countable model {mid!r}")
            if tr.below(u.cm(mid).trace, a) != t:
                _fail(f"{path}.witness", f"{mid} ∩ {_ord_doc(a)} is not {tr.fmt(t)}")
    return SetE(t)


def _chain_doc(chain) -> list[list[int]]:
    return [tr.elems(k) for k in chain]


def pcond_to_doc(u: Universe, p: PCondition) -> dict:
    f_entries = [
        {"key": elem_to_doc(u, p, x), "value": _chain_doc(p.f[x])} for x in p.dom()
    ]
    pairs = sorted(
        set(p.g_pairs()) | set(p.g),
        key=lambda kx: (tr.elems(kx[0]), kx[1].sort_key()),
    )
    g_entries = [
        {"key": [tr.elems(k), elem_to_doc(u, p, x)], "value": sorted(p.gval(k, x))}
        for k, x in pairs
    ]
    return {
        "sIndex": "union" if p.s_label is None else p.s_label,
        "fMap": f_entries,
        "gMap": g_entries,
        "aSet": sorted(p.a),
    }


def pcond_from_doc(doc, u: Universe | None = None, path: str = "") -> PCondition:
    pre = f"{path}." if path else ""
    d = _obj(doc, path, {"sIndex", "fMap", "gMap", "aSet"})
    s = d["sIndex"]
    label = None if s == "union" else _nat(s, f"{pre}sIndex")
    f: dict[Elem, tuple[int, ...]] = {}
    for i, e in enumerate(_arr(d["fMap"], f"{pre}fMap")):
        ep = f"{pre}fMap[{i}]"
        e = _obj(e, ep, {"key", "value"})
        x = _elem_from_doc(e["key"], f"{ep}.key", u)
        if x in f:
            _fail(f"{ep}.key", "duplicate domain element")
        f[x] = tuple(
            _trace(k, f"{ep}.value[{j}]") for j, k in enumerate(_arr(e["value"], f"{ep}.value"))
        )
    g: dict[tuple[int, Elem], frozenset[int]] = {}
    for i, e in enumerate(_arr(d["gMap"], f"{pre}gMap")):
        ep = f"{pre}gMap[{i}]"
        e = _obj(e, ep, {"key", "value"})
        key = _arr(e["key"], f"{ep}.key")
        if len(key) != 2:
            _fail(f"{ep}.key", "expected [traceSet, domainElement]")
        k = _trace(key[0], f"{ep}.key[0]")
        x = _elem_from_doc(key[1], f"{ep}.key[1]", u)
        if (k, x) in g:
            _fail(f"{ep}.key", "duplicate g pair")
        g[(k, x)] = frozenset(_nats(e["value"], f"{ep}.value"))
    a = [_str(m, f"{pre}aSet[{j}]") for j, m in enumerate(_arr(d["aSet"], f"{pre}aSet"))]
    return PCondition(f, g, a, label)


# --------------------------------------------------------------------------
# product conditions


def qcond_to_doc(u: Universe, q: QCondition) -> dict:
    return {
        "fBig": [{"index": i, "condition": pcond_to_doc(u, c)} for i, c in q.F.items()],
        "aSet": sorted(q.a),
    }


def qcond_from_doc(doc, u: Universe | None = None) -> QCondition:
    d = _obj(doc, "", {"fBig", "aSet"})
    F: dict[int, PCondition] = {}
    for i, e in enumerate(_arr(d["fBig"], "fBig")):
        ep = f"fBig[{i}]"
        e = _obj(e, ep, {"index", "condition"})
        idx = _nat(e["index"], f"{ep}.index")
        if idx in F:
            _fail(f"{ep}.index", f"duplicate index {idx}")
        F[idx] = pcond_from_doc(e["condition"], u, f"{ep}.condition")
    a = [_str(m, f"aSet[{j}]") for j, m in enumerate(_arr(d["aSet"], "aSet"))]
    return QCondition(F, a)


def is_qcond_doc(doc) -> bool:
    return isinstance(doc, dict) and "fBig" in doc


def violations_to_doc(violations) -> list[dict]:
    return [v.to_doc() for v in violations]
