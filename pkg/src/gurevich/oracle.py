"""Exact finite-n partition sums: the brute-force ground truth.

Every spectral energy in the toolkit is validated against these dynamic
programs.  S_n is the sum of e^{total cost} over the counted objects of
length n (runs or words); its logarithmic growth rate is the free energy.
Sums use transfer-matrix sweeps, never path enumeration; enumeration exists
only inside the test suite at micro scale.

Counting (f, g for the nondeterminism rate) is done in exact arbitrary
precision integers since those feed a log-difference slope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import automata
from .automata import CostAutomaton
from .errors import NotDeterministic, Overflow
from .langcost import PairCostFunction

__all__ = [
    "PartitionSeries",
    "run_partition_series",
    "word_partition_series",
    "count_series",
    "estimate_limit",
    "log_int",
    "DEFAULT_MAX_N_CAP",
]

DEFAULT_MAX_N_CAP = 10_000


@dataclass(frozen=True)
class PartitionSeries:
    """values: (n, S_n) for n = 1..max_n; rates: (n, ln(S_n)/n) with ln 0 = 0."""

    kind: str  # runs_all | runs_accepting | words
    values: tuple[tuple[int, float], ...]
    rates: tuple[tuple[int, float], ...]


def _series(kind: str, sums: list[float]) -> PartitionSeries:
    values = tuple((n + 1, s) for n, s in enumerate(sums))
    rates = tuple(
        (n, math.log(s) / n if s > 0.0 else 0.0) for n, s in values
    )
    return PartitionSeries(kind=kind, values=values, rates=rates)


def _check_max_n(max_n: int, cap: int) -> None:
    if max_n < 1:
        raise ValueError(f"max_n must be positive, got {max_n}")
    if max_n > cap:
        raise ValueError(f"max_n {max_n} exceeds the cap {cap}")


def _guard_overflow(s: float, n: int, kind: str) -> None:
    if math.isinf(s) or math.isnan(s):
        raise Overflow(
            f"{kind} partition sum left the double range at n={n}; rescale costs",
            n=n,
        )


def _exp(cost: float) -> float:
    try:
        return math.exp(cost)
    except OverflowError:
        raise Overflow(f"e^{cost} exceeds the double range; rescale costs") from None


def run_partition_series(
    a: CostAutomaton,
    kind: str,
    max_n: int,
    cap: int = DEFAULT_MAX_N_CAP,
) -> PartitionSeries:
    """Run sums by forward DP with the compact transfer matrix.

    runs_all sums over runs from every state to every state (the Z(n) of
    the variational principle); runs_accepting sums over initialized runs
    ending in an accepting state (W(n)).  A run of length n reads n
    transitions.
    """
    if kind not in ("runs_all", "runs_accepting"):
        raise ValueError(f"unknown kind {kind!r}")
    _check_max_n(max_n, cap)
    if a.is_empty:
        return _series(kind, [0.0] * max_n)

    states = sorted(a.states)
    index = {s: i for i, s in enumerate(states)}
    m = np.zeros((len(states), len(states)))
    for t in a.transitions:
        m[index[t.source], index[t.target]] += _exp(t.cost)

    if kind == "runs_all":
        v = np.ones(len(states))
        weights = np.ones(len(states))
    else:
        v = np.zeros(len(states))
        v[index[a.initial]] = 1.0
        weights = np.zeros(len(states))
        for q in a.accepting:
            weights[index[q]] = 1.0

    sums: list[float] = []
    with np.errstate(over="ignore"):  # the guard below reports overflow itself
        for n in range(1, max_n + 1):
            v = v @ m
            s = float(v @ weights)
            _guard_overflow(s, n, kind)
            if not np.all(np.isfinite(v)):
                raise Overflow(f"run DP state overflowed at n={n}; rescale costs", n=n)
            sums.append(s)
    return _series(kind, sums)


def word_partition_series(
    dfa: CostAutomaton,
    pair_cost: PairCostFunction,
    max_n: int,
    cap: int = DEFAULT_MAX_N_CAP,
) -> PartitionSeries:
    """Word sums S_n = sum over accepted length-n words of e^{(U)(w)}.

    Requires a deterministic automaton so the one-run-per-word DP over
    (state, last symbol) pairs equals the word sum.  Words of length 1
    carry cost 0.

    The sweep carries an explicit scale factor once the state vector nears
    the double range, so the RATE entries stay exact arbitrarily far out
    (values past the range are reported as inf); below the threshold the
    values are the plain double-precision sums, bit for bit.  Overflow is
    still raised when a single step leaves the range, i.e. for outsized
    individual pair costs.
    """
    _check_max_n(max_n, cap)
    if not dfa.deterministic:
        raise NotDeterministic("word partition sums need a deterministic automaton")
    dfa = automata.trim(dfa)
    if dfa.is_empty:
        return _series("words", [0.0] * max_n)

    pairs = sorted({(t.target, t.symbol) for t in dfa.transitions})
    if not pairs:  # trimmed to a lone state: no word of length >= 1
        return _series("words", [0.0] * max_n)
    index = {p: i for i, p in enumerate(pairs)}
    step = np.zeros((len(pairs), len(pairs)))
    for (state, last), i in index.items():
        for t in dfa.by_source.get(state, ()):
            step[i, index[(t.target, t.symbol)]] += _exp(pair_cost.cost(last, t.symbol))
    accept_weight = np.array([1.0 if state in dfa.accepting else 0.0 for (state, _) in pairs])

    v = np.zeros(len(pairs))
    for t in dfa.by_source.get(dfa.initial, ()):
        v[index[(t.target, t.symbol)]] += 1.0

    rescale_at = 1e250  # far under DBL_MAX, far over any desk-scale exact sum
    log_scale = 0.0
    values: list[tuple[int, float]] = []
    rates: list[tuple[int, float]] = []
    for n in range(1, max_n + 1):
        if n > 1:
            v = v @ step
        s = float(v @ accept_weight)
        _guard_overflow(s, n, "words")
        if not np.all(np.isfinite(v)):
            raise Overflow(f"word DP state overflowed at n={n}; rescale costs", n=n)
        if s > 0.0:
            log_s = math.log(s) + log_scale
            rates.append((n, log_s / n))
            if log_scale == 0.0:
                values.append((n, s))
            else:
                values.append((n, math.exp(log_s) if log_s <= 709.0 else math.inf))
        else:
            rates.append((n, 0.0))
            values.append((n, 0.0))
        peak = float(np.max(v))
        if peak > rescale_at:
            v = v / peak
            log_scale += math.log(peak)
    return PartitionSeries(kind="words", values=tuple(values), rates=tuple(rates))


def count_series(
    a: CostAutomaton,
    max_n: int,
    cap: int = DEFAULT_MAX_N_CAP,
) -> tuple[list[int], list[int]]:
    """Exact run and word counts for the nondeterminism rate.

    f[n] = number of initialized runs of length <= n whose input word is in
    L(a) (runs over accepted words, accepting or not; for a DFA this equals
    g).  g[n] = number of distinct words of length <= n in L(a), counted on
    the determinized automaton.  Both lists are indexed by n (0..max_n) and
    cumulative, using arbitrary-precision integers.
    """
    _check_max_n(max_n, cap)
    a = automata.trim(a)
    det = automata.determinize(a)
    if a.is_empty or det.is_empty:
        return [0] * (max_n + 1), [0] * (max_n + 1)

    det_accepting = det.accepting

    # joint DP over (NFA state, DFA subset state): counts initialized runs
    # whose word's membership the DFA component decides
    joint: dict[tuple[str, str], int] = {(a.initial, det.initial): 1}
    word_counts: dict[str, int] = {det.initial: 1}

    eps = 1 if automata.accepts(a, ()) else 0
    f_cum = eps
    g_cum = eps
    f = [f_cum]
    g = [g_cum]

    for _ in range(max_n):
        nxt_joint: dict[tuple[str, str], int] = {}
        for (p, d), count in joint.items():
            for t in a.by_source.get(p, ()):
                d2 = det.dfa_step(d, t.symbol)
                if d2 is None:
                    continue  # word left the trimmed language for good
                key = (t.target, d2)
                nxt_joint[key] = nxt_joint.get(key, 0) + count
        joint = nxt_joint
        f_cum += sum(count for (p, d), count in joint.items() if d in det_accepting)

        nxt_words: dict[str, int] = {}
        for d, count in word_counts.items():
            for t in det.by_source.get(d, ()):
                nxt_words[t.target] = nxt_words.get(t.target, 0) + count
        word_counts = nxt_words
        g_cum += sum(count for d, count in word_counts.items() if d in det_accepting)

        f.append(f_cum)
        g.append(g_cum)
    return f, g


def estimate_limit(series: PartitionSeries, window: int) -> tuple[float, float]:
    """limsup proxy: max rate over the last ``window`` entries, plus the spread.

    A large spread flags a periodic-support language (zero entries between
    the populated lengths); callers should then restrict attention to the
    nonzero subsequence.
    """
    if window < 1:
        raise ValueError("window must be positive")
    if len(series.rates) < window:
        raise ValueError(
            f"series has {len(series.rates)} entries, need at least {window}"
        )
    tail = [rate for _, rate in series.rates[-window:]]
    return max(tail), max(tail) - min(tail)


def log_int(x: int) -> float:
    """ln of a positive arbitrary-precision integer without float overflow."""
    if x <= 0:
        raise ValueError("log_int needs a positive integer")
    shift = max(0, x.bit_length() - 900)
    return math.log(x >> shift) + shift * math.log(2.0)
