"""Shared fixtures: reference machines, random corpora, enumeration oracles.

The enumeration helpers here are deliberately naive (explicit path/word
walks) so they are an independent check on the dynamic-programming and
spectral routes; keep them free of any library DP code.
"""

from __future__ import annotations

import itertools
import math
import random

import pytest

from gurevich import CostAutomaton, PairCostFunction, accepts, free_energy, map_costs, trim, word_cost

# ---------------------------------------------------------------------------
# acceptance-criterion reporting: one line per criterion in the terminal
# summary, recorded by tests/test_acceptance.py

CRITERION_RESULTS: dict[int, str] = {}


def record_criterion(number: int, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"criterion {number}: {status}"
    if detail:
        line += f" ({detail})"
    CRITERION_RESULTS[number] = line


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERION_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for k in sorted(CRITERION_RESULTS):
        terminalreporter.write_line(CRITERION_RESULTS[k])


# ---------------------------------------------------------------------------
# builders


def aut(alphabet, states, initial, accepting, transitions) -> CostAutomaton:
    return CostAutomaton.create(alphabet, states, initial, accepting, transitions)


@pytest.fixture
def branchy_nfa() -> CostAutomaton:
    """Six-state NFA with a 3-way a-branch at A and a 2-way b-branch at F."""
    return aut(
        ["a", "b"],
        ["A", "B", "C", "D", "E", "F"],
        "A",
        ["A"],
        [
            ("A", "a", "B"), ("A", "a", "C"), ("A", "a", "D"), ("A", "b", "E"),
            ("B", "a", "F"), ("C", "a", "F"), ("D", "a", "F"), ("E", "a", "F"),
            ("F", "b", "E"), ("F", "b", "A"),
        ],
    )


@pytest.fixture
def dna_m1() -> CostAutomaton:
    return aut(
        ["A", "C", "G", "T"],
        ["1", "2", "3", "4"],
        "1",
        ["2", "3"],
        [
            ("1", "A", "2", 0.14), ("1", "G", "2", 0.1), ("1", "A", "3", 0.76),
            ("2", "G", "1", 0.2), ("2", "T", "4", 0.8),
            ("4", "C", "2", 0.35), ("4", "C", "3", 0.65),
            ("3", "G", "1", 0.7),
        ],
    )


@pytest.fixture
def dna_m2() -> CostAutomaton:
    return aut(
        ["A", "C", "G", "T"],
        ["5", "6"],
        "5",
        ["5", "6"],
        [
            ("5", "C", "6", 0.2), ("5", "G", "6", 0.4), ("5", "A", "6", 0.9),
            ("6", "T", "5", 0.7), ("6", "C", "5", 0.2),
        ],
    )


# edges the product of the two machines above must reproduce exactly
DNA_PRODUCT_EDGES = {
    ("1|5", "G", "2|6", 0.5),
    ("1|5", "A", "2|6", 1.04),
    ("1|5", "A", "3|6", 1.66),
    ("2|6", "T", "4|5", 1.5),
    ("4|5", "C", "2|6", 0.55),
    ("4|5", "C", "3|6", 0.85),
}


@pytest.fixture
def ab_star() -> CostAutomaton:
    """Two-state DFA for (ab)*, zero costs."""
    return aut(["a", "b"], ["p", "q"], "p", ["p"], [("p", "a", "q"), ("q", "b", "p")])


@pytest.fixture
def u_ab() -> PairCostFunction:
    return PairCostFunction.create({("a", "b"): 2.0, ("b", "a"): 5.0})


@pytest.fixture
def ab_cycle_machine() -> CostAutomaton:
    """Three-state machine realizing the (ab)* pair costs: entry a:0, then
    the b:2 / a:5 two-cycle."""
    return aut(
        ["a", "b"],
        ["S", "P", "Q"],
        "S",
        ["S", "Q"],
        [("S", "a", "P", 0.0), ("P", "b", "Q", 2.0), ("Q", "a", "P", 5.0)],
    )


# ---------------------------------------------------------------------------
# random corpora (seeded; sizes per the fixture-scale limits)


def random_automaton(seed: int, max_states: int = 6, costs: str = "nonneg") -> CostAutomaton:
    """Random trimmed automaton; None replaced by a 1-state fallback when
    trimming empties it."""
    rng = random.Random(seed)
    n = rng.randint(2, max_states)
    states = [f"s{i}" for i in range(n)]
    alphabet = ["a", "b"][: rng.randint(1, 2)]
    transitions = []
    seen = set()
    for _ in range(rng.randint(n, 3 * n)):
        p, q = rng.choice(states), rng.choice(states)
        sym = rng.choice(alphabet)
        if (p, sym, q) in seen:
            continue
        seen.add((p, sym, q))
        if costs == "nonneg":
            c = round(rng.uniform(0.0, 1.5), 3)
        elif costs == "zero":
            c = 0.0
        else:
            c = round(rng.uniform(-1.0, 1.5), 3)
        transitions.append((p, sym, q, c))
    accepting = rng.sample(states, rng.randint(1, n))
    a = aut(alphabet, states, states[0], accepting, transitions)
    t = trim(a)
    if t.is_empty:
        return aut(["a"], ["z"], "z", ["z"], [("z", "a", "z", 0.25)])
    return t


def random_strongly_connected(seed: int, max_states: int = 6) -> CostAutomaton:
    """Strongly connected fixture with a self-loop (aperiodic) and costs
    shifted so the energy is near 0; keeps length-200 partition sums inside
    the double range."""
    rng = random.Random(seed)
    n = rng.randint(2, max_states)
    states = [f"s{i}" for i in range(n)]
    alphabet = ["a", "b"]
    transitions = []
    seen = set()

    def add(p, sym, q):
        if (p, sym, q) not in seen:
            seen.add((p, sym, q))
            transitions.append((p, sym, q, round(rng.uniform(-0.8, 0.8), 3)))

    for i in range(n):  # one full cycle makes it strongly connected
        add(states[i], rng.choice(alphabet), states[(i + 1) % n])
    add(states[0], "a", states[0])  # self-loop kills periodicity
    for _ in range(rng.randint(0, 2 * n)):
        add(rng.choice(states), rng.choice(alphabet), rng.choice(states))

    accepting = rng.sample(states, rng.randint(1, n))
    a = aut(alphabet, states, states[0], accepting, transitions)
    shift = -free_energy(a).energy
    return map_costs(a, lambda t: t.cost + shift)


def all_accepting(a: CostAutomaton) -> CostAutomaton:
    return CostAutomaton.create(
        sorted(a.alphabet), sorted(a.states), a.initial, sorted(a.states), a.transitions
    )


# ---------------------------------------------------------------------------
# enumeration oracles (explicit walks; no DP, no matrices)


def enum_run_sum(a: CostAutomaton, n: int, kind: str) -> float:
    """Sum of e^{run cost} over length-n runs by explicit path extension."""
    if kind == "runs_all":
        frontier = {s: 1.0 for s in a.states}
    else:
        frontier = {a.initial: 1.0} if a.initial is not None else {}
    weights = dict(frontier)
    for _ in range(n):
        nxt: dict[str, float] = {}
        for state, w in weights.items():
            for t in a.by_source.get(state, ()):
                nxt[t.target] = nxt.get(t.target, 0.0) + w * math.exp(t.cost)
        weights = nxt
    if kind == "runs_all":
        return sum(weights.values())
    return sum(w for s, w in weights.items() if s in a.accepting)


def enum_paths_run_sum(a: CostAutomaton, n: int, kind: str) -> float:
    """Same sum as enum_run_sum but by literally enumerating every path."""
    starts = sorted(a.states) if kind == "runs_all" else [a.initial]
    total = 0.0
    stack = [(s, 0, 0.0) for s in starts if s is not None]
    while stack:
        state, depth, cost = stack.pop()
        if depth == n:
            if kind == "runs_all" or state in a.accepting:
                total += math.exp(cost)
            continue
        for t in a.by_source.get(state, ()):
            stack.append((t.target, depth + 1, cost + t.cost))
    return total


def enum_words(a: CostAutomaton, max_len: int):
    """All accepted words of length <= max_len, by exhaustive alphabet walk."""
    syms = sorted(a.alphabet)
    out = []
    for n in range(max_len + 1):
        for w in itertools.product(syms, repeat=n):
            if accepts(a, w):
                out.append(w)
    return out


def enum_word_sum(dfa: CostAutomaton, u: PairCostFunction, n: int) -> float:
    syms = sorted(dfa.alphabet)
    total = 0.0
    for w in itertools.product(syms, repeat=n):
        if accepts(dfa, w):
            total += math.exp(word_cost(u, w))
    return total


def enum_accepting_runs(m: CostAutomaton, w) -> list[tuple[tuple[str, ...], float]]:
    """Every accepting run of m on word w, with its total cost."""
    runs = []
    if m.initial is None:
        return runs
    stack = [((m.initial,), 0.0)]
    for sym in w:
        nxt = []
        for path, cost in stack:
            for t in m.by_source.get(path[-1], ()):
                if t.symbol == sym:
                    nxt.append((path + (t.target,), cost + t.cost))
        stack = nxt
    for path, cost in stack:
        if path[-1] in m.accepting:
            runs.append((path, cost))
    return runs


def enum_count_f_g(a: CostAutomaton, max_n: int) -> tuple[list[int], list[int]]:
    """f(n), g(n) by explicit enumeration: g counts accepted words of
    length <= n, f counts initialized runs over those words."""
    syms = sorted(a.alphabet)
    f = [0] * (max_n + 1)
    g = [0] * (max_n + 1)
    for n in range(max_n + 1):
        for w in itertools.product(syms, repeat=n):
            if not accepts(a, w):
                continue
            g[n] += 1
            count = {a.initial: 1} if a.initial is not None else {}
            for sym in w:
                nxt: dict[str, int] = {}
                for state, c in count.items():
                    for t in a.by_source.get(state, ()):
                        if t.symbol == sym:
                            nxt[t.target] = nxt.get(t.target, 0) + c
                count = nxt
            f[n] += sum(count.values())
    # cumulative, matching the library's <= n reading
    for n in range(1, max_n + 1):
        f[n] += f[n - 1]
        g[n] += g[n - 1]
    return f, g
