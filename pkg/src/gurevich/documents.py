"""JSON interchange: automata, pair-cost tables, linear-length specs.

One syntax for everything, canonicalized for bit-exact round trips: states
and alphabet sorted, transitions sorted by (from, symbol, to), costs always
written, floats rendered with 17 significant digits (enough to round-trip
a double exactly).
"""

from __future__ import annotations

import json
import math
from typing import Any

from .automata import CostAutomaton, Transition, validate
from .errors import DocumentError
from .langcost import PairCostFunction
from .linlen import LinearLengthSpec, LinearSet

__all__ = [
    "automaton_from_document",
    "automaton_to_document",
    "pair_cost_from_document",
    "pair_cost_to_document",
    "linlen_spec_from_document",
    "load_automaton",
    "load_pair_cost",
    "load_linlen_spec",
    "save_document",
    "dump_json",
]


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise DocumentError(f"non-finite number {x!r} cannot be serialized")
    if x == int(x) and abs(x) < 1e16:
        return str(int(x)) + ".0"
    return format(x, ".17g")


class _Encoder(json.JSONEncoder):
    """float_repr with 17 significant digits for schema-stable output."""

    def iterencode(self, o: Any, _one_shot: bool = False):
        return _iter_encode(o)


def _iter_encode(o: Any):
    if isinstance(o, float):
        yield _fmt_float(o)
    elif isinstance(o, bool):
        yield "true" if o else "false"
    elif o is None:
        yield "null"
    elif isinstance(o, (int, str)):
        yield json.dumps(o)
    elif isinstance(o, dict):
        yield "{"
        first = True
        for key, value in o.items():
            if not first:
                yield ", "
            first = False
            yield json.dumps(str(key))
            yield ": "
            yield from _iter_encode(value)
        yield "}"
    elif isinstance(o, (list, tuple)):
        yield "["
        first = True
        for value in o:
            if not first:
                yield ", "
            first = False
            yield from _iter_encode(value)
        yield "]"
    else:
        raise DocumentError(f"cannot serialize {type(o).__name__}")


def dump_json(obj: Any) -> str:
    return "".join(_iter_encode(obj))


def _require(doc: dict, key: str, kind: type, where: str) -> Any:
    if key not in doc:
        raise DocumentError(f"{where}: missing field {key!r}")
    value = doc[key]
    if kind is float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise DocumentError(f"{where}: field {key!r} must be a number")
        return float(value)
    if not isinstance(value, kind):
        raise DocumentError(f"{where}: field {key!r} must be {kind.__name__}")
    return value


def automaton_from_document(doc: Any, where: str = "automaton") -> CostAutomaton:
    """Parse and validate; raises DocumentError naming the first offender."""
    if not isinstance(doc, dict):
        raise DocumentError(f"{where}: expected a JSON object")
    alphabet = _require(doc, "alphabet", list, where)
    states = _require(doc, "states", list, where)
    accepting = _require(doc, "accepting", list, where)
    raw_transitions = _require(doc, "transitions", list, where)
    initial = doc.get("initial")
    if initial is not None and not isinstance(initial, str):
        raise DocumentError(f"{where}: field 'initial' must be a string")
    if states and initial is None:
        raise DocumentError(f"{where}: missing field 'initial'")

    transitions = []
    for i, t in enumerate(raw_transitions):
        if not isinstance(t, dict):
            raise DocumentError(f"{where}: transition {i} must be an object")
        src = _require(t, "from", str, f"{where} transition {i}")
        sym = _require(t, "symbol", str, f"{where} transition {i}")
        dst = _require(t, "to", str, f"{where} transition {i}")
        cost = float(t.get("cost", 0.0)) if not isinstance(t.get("cost", 0.0), bool) else None
        if cost is None:
            raise DocumentError(f"{where} transition {i}: field 'cost' must be a number")
        transitions.append(Transition(src, sym, dst, cost))

    a = CostAutomaton.create(alphabet, states, initial, accepting, transitions)
    problems = validate(a)
    if problems:
        raise DocumentError(f"{where}: " + "; ".join(problems))
    return a


def automaton_to_document(a: CostAutomaton) -> dict:
    return {
        "alphabet": sorted(a.alphabet),
        "states": sorted(a.states),
        "initial": a.initial,
        "accepting": sorted(a.accepting),
        "transitions": [
            {"from": t.source, "symbol": t.symbol, "to": t.target, "cost": t.cost}
            for t in sorted(a.transitions)
        ],
    }


def pair_cost_from_document(doc: Any, alphabet=None, where: str = "pair costs") -> PairCostFunction:
    if not isinstance(doc, dict):
        raise DocumentError(f"{where}: expected a JSON object")
    pairs = _require(doc, "pairs", list, where)
    default = doc.get("default", 0.0)
    if isinstance(default, bool) or not isinstance(default, (int, float)):
        raise DocumentError(f"{where}: field 'default' must be a number")
    entries = {}
    for i, p in enumerate(pairs):
        if not isinstance(p, dict):
            raise DocumentError(f"{where}: pair {i} must be an object")
        first = _require(p, "first", str, f"{where} pair {i}")
        second = _require(p, "second", str, f"{where} pair {i}")
        cost = _require(p, "cost", float, f"{where} pair {i}")
        entries[(first, second)] = cost
    return PairCostFunction.create(entries, default=float(default), alphabet=alphabet)


def pair_cost_to_document(u: PairCostFunction) -> dict:
    return {
        "pairs": [
            {"first": a, "second": b, "cost": c}
            for (a, b), c in sorted(u.entries.items())
        ],
        "default": u.default,
    }


def linlen_spec_from_document(doc: Any, where: str = "linlen spec") -> LinearLengthSpec:
    if not isinstance(doc, dict):
        raise DocumentError(f"{where}: expected a JSON object")
    base = automaton_from_document(_require(doc, "base", dict, where), f"{where} base")
    raw_parts = _require(doc, "parts", list, where)
    parts = tuple(
        automaton_from_document(p, f"{where} part {i + 1}") for i, p in enumerate(raw_parts)
    )
    raw_lengths = _require(doc, "lengths", dict, where)
    offset = _require(raw_lengths, "offset", list, f"{where} lengths")
    periods = raw_lengths.get("periods", [])
    if not isinstance(periods, list):
        raise DocumentError(f"{where} lengths: field 'periods' must be a list")
    try:
        lengths = LinearSet.create(offset, periods)
    except (TypeError, ValueError) as e:
        raise DocumentError(f"{where} lengths: {e}") from e
    pair_doc = doc.get("pair_cost", {"pairs": []})
    pair_cost = pair_cost_from_document(pair_doc, alphabet=base.alphabet, where=f"{where} pair_cost")
    return LinearLengthSpec(base=base, parts=parts, lengths=lengths, pair_cost=pair_cost)


def _reject_constant(token: str) -> float:
    # Infinity/NaN are a json-module extension, not JSON; refuse both ways
    raise DocumentError(f"non-finite number {token} is not valid JSON")


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f, parse_constant=_reject_constant)
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path} is not valid JSON: {e}") from e


def load_automaton(path: str) -> CostAutomaton:
    return automaton_from_document(_load_json(path), where=path)


def load_pair_cost(path: str, alphabet=None) -> PairCostFunction:
    return pair_cost_from_document(_load_json(path), alphabet=alphabet, where=path)


def load_linlen_spec(path: str) -> LinearLengthSpec:
    return linlen_spec_from_document(_load_json(path), where=path)


def save_document(path: str, doc: Any) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dump_json(doc) + "\n")
