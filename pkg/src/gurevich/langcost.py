"""Pair-cost functions on words and the implements relation.

A pair cost U assigns a real cost to each ordered symbol pair; the total
cost of a word is the sum over its adjacent pairs (0 for words of length
at most 1).  A cost automaton (M, V) implements (L, U) when M accepts L
and every accepting run's total transition cost equals its word's total
pair cost, for words of length at least 2.

implement_construction builds, from any DFA for L, a DFA whose transition
costs realize U exactly: states remember the transition just taken, so the
next symbol's edge can charge U(previous symbol, next symbol).  Its free
energy is therefore the free energy of the language itself, which is how
language_energy computes the word-sum growth rate without any word sums.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Sequence

from . import automata, energy
from .automata import CostAutomaton, Transition
from .energy import EnergyReport
from .errors import NotDeterministic, UnknownSymbol
from .spectral import DEFAULT_MAX_ITERATIONS, DEFAULT_TOLERANCE

__all__ = [
    "PairCostFunction",
    "ImplementsReport",
    "Counterexample",
    "word_cost",
    "implement_construction",
    "verify_implements",
    "language_energy",
    "COST_TOLERANCE",
]

# exact-cost comparison tolerance: costs pass through sums only
COST_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PairCostFunction:
    """U: ordered symbol pair -> real cost; unlisted pairs get ``default``.

    ``alphabet`` is optional: when present, cost lookups on symbols outside
    it raise UnknownSymbol (the CLI binds it to the companion automaton's
    alphabet at load time).
    """

    entries: Mapping[tuple[str, str], float] = field(default_factory=dict)
    default: float = 0.0
    alphabet: frozenset[str] | None = None

    @staticmethod
    def create(
        entries: Mapping[tuple[str, str], float] | Iterable[tuple[str, str, float]] = (),
        default: float = 0.0,
        alphabet: Iterable[str] | None = None,
    ) -> "PairCostFunction":
        if isinstance(entries, Mapping):
            table = {(a, b): float(c) for (a, b), c in entries.items()}
        else:
            table = {(a, b): float(c) for a, b, c in entries}
        return PairCostFunction(
            entries=table,
            default=float(default),
            alphabet=frozenset(alphabet) if alphabet is not None else None,
        )

    def _check(self, symbol: str) -> None:
        if self.alphabet is not None and symbol not in self.alphabet:
            raise UnknownSymbol(f"symbol {symbol!r} not in the declared alphabet")

    def cost(self, first: str, second: str) -> float:
        self._check(first)
        self._check(second)
        return self.entries.get((first, second), self.default)

    def shifted(self, c: float) -> "PairCostFunction":
        """U + c on every pair (including the default)."""
        return PairCostFunction(
            entries={k: v + c for k, v in self.entries.items()},
            default=self.default + c,
            alphabet=self.alphabet,
        )


class Counterexample(NamedTuple):
    word: tuple[str, ...]
    run: tuple[str, ...] | None     # state sequence, None for words the machine rejects
    word_cost: float | None         # None when the word is not in the reference language
    run_cost: float | None


@dataclass(frozen=True)
class ImplementsReport:
    holds: bool
    checked_up_to: int
    counterexample: Counterexample | None = None


def word_cost(u: PairCostFunction, w: Sequence[str]) -> float:
    """Total cost of a word: sum of U over adjacent pairs; 0 for |w| <= 1."""
    for s in w:
        u._check(s)
    return sum(u.cost(w[i], w[i + 1]) for i in range(len(w) - 1))


def implement_construction(dfa: CostAutomaton, u: PairCostFunction) -> CostAutomaton:
    """DFA whose transition costs realize the pair cost U on L(dfa).

    States are the start state plus one state per input transition; being
    "in" transition (p, a, q) means q was reached by reading a, so the edge
    for a following symbol b can charge exactly U(a, b).  Entry edges cost
    0, matching the 0 cost of length-1 words; state (p, a, q) accepts iff q
    accepts, and the start accepts iff it did, so the language is preserved
    for every length including the empty word.  The word-to-accepting-run
    map is one-to-one.
    """
    if not dfa.deterministic:
        raise NotDeterministic("implement_construction needs a deterministic input")
    dfa = automata.trim(dfa)
    if dfa.is_empty:
        return automata.EMPTY

    def node(t: Transition) -> str:
        return f"({t.source},{t.symbol},{t.target})"

    start = dfa.initial
    names = {node(t) for t in dfa.transitions}
    if start in names or len(names) != len(dfa.transitions):
        raise ValueError("state name collision in implement_construction")

    transitions: list[Transition] = []
    for t in dfa.by_source.get(start, ()):
        transitions.append(Transition(start, t.symbol, node(t), 0.0))
    for t1 in dfa.transitions:
        for t2 in dfa.by_source.get(t1.target, ()):
            transitions.append(
                Transition(node(t1), t2.symbol, node(t2), u.cost(t1.symbol, t2.symbol))
            )

    accepting = {node(t) for t in dfa.transitions if t.target in dfa.accepting}
    if start in dfa.accepting:
        accepting.add(start)
    result = CostAutomaton(
        alphabet=dfa.alphabet,
        states=frozenset(names) | {start},
        initial=start,
        accepting=frozenset(accepting),
        transitions=tuple(transitions),
    )
    return automata.trim(result)


def verify_implements(
    m: CostAutomaton,
    dfa_for_l: CostAutomaton,
    u: PairCostFunction,
    max_len: int,
) -> ImplementsReport:
    """Check (m, costs of m) implements (L(dfa_for_l), u) up to word length max_len.

    Walks all words in breadth-first lexicographic order while either side
    is still alive, so the first reported failure is deterministic.  Two
    failure shapes: the languages disagree on a word, or some accepting run
    of m costs differently (beyond 1e-9) from the word's pair cost; either
    becomes the counterexample.  Failures are data, never exceptions.
    """
    alphabet = sorted(m.alphabet | dfa_for_l.alphabet)
    dfa_for_l = automata.trim(dfa_for_l)
    if not dfa_for_l.deterministic:
        dfa_for_l = automata.determinize(dfa_for_l)  # costs play no role on the L side

    # frontier entry: (word, m-runs keyed by state then exact cost, dfa state)
    start_runs: dict[str, dict[float, tuple[str, ...]]] = {}
    if not m.is_empty and m.initial is not None:
        start_runs[m.initial] = {0.0: (m.initial,)}
    frontier: list[tuple[tuple[str, ...], dict, str | None]] = [
        ((), start_runs, dfa_for_l.initial if not dfa_for_l.is_empty else None)
    ]

    for length in range(0, max_len + 1):
        next_frontier = []
        for word, runs, d_state in frontier:
            in_m = any(state in m.accepting for state in runs)
            in_l = d_state is not None and d_state in dfa_for_l.accepting
            if in_m != in_l:
                if in_m:
                    state = next(s for s in sorted(runs) if s in m.accepting)
                    cost, run = sorted(runs[state].items())[0]
                    ce = Counterexample(word, run, None, cost)
                else:
                    ce = Counterexample(word, None, word_cost(u, word), None)
                return ImplementsReport(False, max_len, ce)
            if in_m and len(word) >= 2:
                target = word_cost(u, word)
                for state in sorted(runs):
                    if state not in m.accepting:
                        continue
                    for cost, run in sorted(runs[state].items()):
                        if abs(cost - target) > COST_TOLERANCE:
                            return ImplementsReport(
                                False, max_len, Counterexample(word, run, target, cost)
                            )
            if length == max_len:
                continue
            for sym in alphabet:
                new_runs: dict[str, dict[float, tuple[str, ...]]] = {}
                for state, by_cost in runs.items():
                    for t in m.by_source.get(state, ()):
                        if t.symbol != sym:
                            continue
                        bucket = new_runs.setdefault(t.target, {})
                        for cost, run in by_cost.items():
                            bucket.setdefault(cost + t.cost, run + (t.target,))
                new_d = dfa_for_l.dfa_step(d_state, sym) if d_state is not None else None
                if new_runs or new_d is not None:
                    next_frontier.append((word + (sym,), new_runs, new_d))
        frontier = next_frontier
    return ImplementsReport(True, max_len, None)


def language_energy(
    dfa: CostAutomaton,
    u: PairCostFunction,
    form: str = "compact",
    tolerance: float = DEFAULT_TOLERANCE,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> EnergyReport:
    """Free energy of (L(dfa), u): the computable route to the word-sum rate."""
    machine = implement_construction(dfa, u)
    return energy.free_energy(machine, form, tolerance, max_iterations)
