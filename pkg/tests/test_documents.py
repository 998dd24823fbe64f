import json
import math

import pytest

from gurevich import (
    DocumentError,
    automaton_from_document,
    automaton_to_document,
    dump_json,
    linlen_spec_from_document,
    load_automaton,
    pair_cost_from_document,
    pair_cost_to_document,
    save_document,
)


def branchy_doc():
    return {
        "alphabet": ["a", "b"],
        "states": ["A", "B", "C", "D", "E", "F"],
        "initial": "A",
        "accepting": ["A"],
        "transitions": [
            {"from": "A", "symbol": "a", "to": "B", "cost": 0.0},
            {"from": "A", "symbol": "a", "to": "C", "cost": 0.0},
            {"from": "A", "symbol": "a", "to": "D", "cost": 0.0},
            {"from": "A", "symbol": "b", "to": "E", "cost": 0.0},
            {"from": "B", "symbol": "a", "to": "F", "cost": 0.0},
            {"from": "C", "symbol": "a", "to": "F", "cost": 0.0},
            {"from": "D", "symbol": "a", "to": "F", "cost": 0.0},
            {"from": "E", "symbol": "a", "to": "F", "cost": 0.0},
            {"from": "F", "symbol": "b", "to": "E", "cost": 0.0},
            {"from": "F", "symbol": "b", "to": "A", "cost": 0.0},
        ],
    }


class TestAutomatonDocuments:
    def test_round_trip_is_identity_on_canonical_form(self):
        doc = branchy_doc()
        a = automaton_from_document(doc)
        out = automaton_to_document(a)
        again = automaton_from_document(out)
        assert again.states == a.states
        assert again.alphabet == a.alphabet
        assert again.initial == a.initial
        assert again.accepting == a.accepting
        assert set(again.transitions) == set(a.transitions)
        assert out == automaton_to_document(again)

    def test_scrambled_input_canonicalizes(self):
        doc = branchy_doc()
        doc["states"] = list(reversed(doc["states"]))
        doc["transitions"] = list(reversed(doc["transitions"]))
        doc["accepting"] = doc["accepting"][::-1]
        out = automaton_to_document(automaton_from_document(doc))
        assert out["states"] == sorted(out["states"])
        assert out["alphabet"] == sorted(out["alphabet"])
        froms = [(t["from"], t["symbol"], t["to"]) for t in out["transitions"]]
        assert froms == sorted(froms)
        assert out == automaton_to_document(automaton_from_document(branchy_doc()))

    def test_missing_cost_defaults_to_zero(self):
        doc = branchy_doc()
        for t in doc["transitions"]:
            del t["cost"]
        a = automaton_from_document(doc)
        assert all(t.cost == 0.0 for t in a.transitions)
        out = automaton_to_document(a)
        assert all("cost" in t for t in out["transitions"])

    def test_float_survives_17_digit_round_trip(self):
        doc = branchy_doc()
        doc["transitions"][0]["cost"] = math.pi
        a = automaton_from_document(doc)
        text = dump_json(automaton_to_document(a))
        again = automaton_from_document(json.loads(text))
        costs = {t.cost for t in again.transitions}
        assert math.pi in costs

    def test_integral_costs_keep_float_shape(self):
        doc = branchy_doc()
        doc["transitions"][0]["cost"] = 2.0
        text = dump_json(automaton_to_document(automaton_from_document(doc)))
        assert '"cost": 2.0' in text
        assert '"cost": 2,' not in text

    def test_errors_name_the_offender(self):
        doc = branchy_doc()
        doc["initial"] = "Z"
        with pytest.raises(DocumentError, match="unknown initial 'Z'"):
            automaton_from_document(doc)
        doc = branchy_doc()
        del doc["alphabet"]
        with pytest.raises(DocumentError, match="missing field 'alphabet'"):
            automaton_from_document(doc)
        doc = branchy_doc()
        doc["transitions"][3]["cost"] = True
        with pytest.raises(DocumentError, match="transition 3.*cost.*number"):
            automaton_from_document(doc)
        with pytest.raises(DocumentError, match="expected a JSON object"):
            automaton_from_document([1, 2])

    def test_duplicate_transition_rejected(self):
        doc = branchy_doc()
        doc["transitions"].append(dict(doc["transitions"][0]))
        with pytest.raises(DocumentError, match="duplicate"):
            automaton_from_document(doc)


class TestPairCostDocuments:
    def test_round_trip(self):
        doc = {
            "pairs": [
                {"first": "a", "second": "b", "cost": 2.0},
                {"first": "b", "second": "a", "cost": 5.0},
            ],
            "default": -1.0,
        }
        u = pair_cost_from_document(doc)
        assert u.cost("a", "b") == 2.0
        assert u.cost("a", "a") == -1.0
        again = pair_cost_from_document(pair_cost_to_document(u))
        assert again.entries == u.entries
        assert again.default == u.default

    def test_alphabet_binding(self):
        doc = {"pairs": [{"first": "a", "second": "z", "cost": 1.0}]}
        u = pair_cost_from_document(doc, alphabet=frozenset({"a", "b"}))
        from gurevich import UnknownSymbol

        with pytest.raises(UnknownSymbol):
            u.cost("a", "z")

    def test_errors(self):
        with pytest.raises(DocumentError, match="missing field 'pairs'"):
            pair_cost_from_document({})
        with pytest.raises(DocumentError, match="pair 0.*cost"):
            pair_cost_from_document({"pairs": [{"first": "a", "second": "b"}]})


class TestLinlenDocuments:
    def spec_doc(self):
        line = {
            "alphabet": ["a"],
            "states": ["A"],
            "initial": "A",
            "accepting": ["A"],
            "transitions": [{"from": "A", "symbol": "a", "to": "A", "cost": 0.0}],
        }
        return {
            "base": dict(line),
            "parts": [dict(line)],
            "lengths": {"offset": [1], "periods": [[1]]},
            "pair_cost": {"pairs": [{"first": "a", "second": "a", "cost": 1.0}]},
        }

    def test_parses(self):
        spec = linlen_spec_from_document(self.spec_doc())
        assert spec.lengths.offset == (1,)
        assert spec.lengths.periods == ((1,),)
        assert spec.pair_cost.cost("a", "a") == 1.0
        assert len(spec.parts) == 1

    def test_pair_cost_optional(self):
        doc = self.spec_doc()
        del doc["pair_cost"]
        spec = linlen_spec_from_document(doc)
        assert spec.pair_cost.cost("a", "a") == 0.0

    def test_part_errors_are_located(self):
        doc = self.spec_doc()
        doc["parts"][0]["initial"] = "Q"
        with pytest.raises(DocumentError, match="part 1.*unknown initial"):
            linlen_spec_from_document(doc)


class TestFiles:
    def test_load_save_round_trip(self, tmp_path):
        p = tmp_path / "m.json"
        save_document(str(p), automaton_to_document(automaton_from_document(branchy_doc())))
        a = load_automaton(str(p))
        assert len(a.states) == 6

    def test_missing_file(self, tmp_path):
        with pytest.raises(DocumentError, match="cannot read"):
            load_automaton(str(tmp_path / "absent.json"))

    def test_bad_json(self, tmp_path):
        p = tmp_path / "broken.json"
        p.write_text("{not json", encoding="utf-8")
        with pytest.raises(DocumentError, match="not valid JSON"):
            load_automaton(str(p))

    def test_non_finite_cost_refused(self):
        with pytest.raises(DocumentError, match="non-finite"):
            dump_json({"cost": math.inf})
