"""Regular-language counting for good words: forbidden-factor automata,
exact transfer-matrix counts, growth-rate extraction, Pansiot-code block
counting, and the degree-6 polynomial identity behind the supergolden rate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import mpmath
import numpy as np

from .words import Word

# Minimal antisquares of orders 2 and 3 together with the two markers whose
# presence pins a good word to the eventually-periodic ...010101... shape.
GOOD_WORD_FORBIDDEN = ("0011", "1100", "0110", "1001", "010101", "101010", "001011", "110100")

# Forbidden factors of the Pansiot codes of the words above: blocks of 0s of
# length >= 2 and blocks of 1s of length 2 or 4.
PANSIOT_CODE_FORBIDDEN = ("010", "101", "11111", "01110")


@dataclass
class FactorAvoidanceAutomaton:
    """Deterministic safe-prefix automaton for a finite forbidden factor set.

    States are the forbidden-word prefixes reachable as "longest dangerous
    suffix"; a transition leading into a forbidden word goes to an implicit
    dead sink.  Accepts exactly the words containing no forbidden factor.
    """

    alphabet_size: int
    states: list[str]
    transitions: list[list[int]]  # state x letter -> state index or -1 (dead)
    start: int = 0

    @property
    def num_states(self) -> int:
        return len(self.states)

    def accepts(self, w: Word) -> bool:
        s = self.start
        for a in w:
            s = self.transitions[s][a]
            if s < 0:
                return False
        return True

    def adjacency(self) -> np.ndarray:
        n = self.num_states
        mat = np.zeros((n, n), dtype=np.int64)
        for i, row in enumerate(self.transitions):
            for j in row:
                if j >= 0:
                    mat[i, j] += 1
        return mat

    def dump(self) -> str:
        lines = []
        for i, row in enumerate(self.transitions):
            targets = " ".join(str(j) for j in row)
            lines.append(f"{i} [{self.states[i] or 'eps'}] -> {targets}")
        return "\n".join(lines)


@dataclass
class CountSeries:
    counts: list[int]
    description: str = ""

    def tsv(self) -> str:
        return "\n".join(f"{n}\t{c}" for n, c in enumerate(self.counts))


@dataclass
class GrowthEstimate:
    value: float
    method: str
    residual: float


def build_avoidance_automaton(
    forbidden: Sequence[str | Word], alphabet_size: int = 2
) -> FactorAvoidanceAutomaton:
    """Safe-prefix automaton for the given nonempty forbidden set."""
    bad = [str(f) for f in forbidden]
    if not bad:
        raise ValueError("forbidden set must be nonempty")
    prefixes = {""}
    for f in bad:
        for i in range(1, len(f) + 1):
            prefixes.add(f[:i])
    # a state must itself be clean of forbidden factors
    clean = sorted(
        (p for p in prefixes if not any(f in p for f in bad)),
        key=lambda p: (len(p), p),
    )
    index = {p: i for i, p in enumerate(clean)}
    letters = [str(a) for a in range(alphabet_size)]
    transitions = []
    for p in clean:
        row = []
        for a in letters:
            t = p + a
            if any(t.endswith(f) for f in bad):
                row.append(-1)
                continue
            while t not in index:
                t = t[1:]
            row.append(index[t])
        transitions.append(row)
    return FactorAvoidanceAutomaton(alphabet_size, clean, transitions)


def count_with_automaton(a: FactorAvoidanceAutomaton, n: int) -> int:
    """Exact number of accepted words of length n (big-integer iteration)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return count_series(a, n).counts[n]


def count_series(a: FactorAvoidanceAutomaton, n_max: int) -> CountSeries:
    vec = [0] * a.num_states
    vec[a.start] = 1
    counts = [sum(vec)]
    for _ in range(n_max):
        nxt = [0] * a.num_states
        for i, weight in enumerate(vec):
            if weight:
                for j in a.transitions[i]:
                    if j >= 0:
                        nxt[j] += weight
        vec = nxt
        counts.append(sum(vec))
    return CountSeries(counts, description="factor-avoidance counts")


def _live_submatrix(a: FactorAvoidanceAutomaton) -> np.ndarray:
    """Adjacency restricted to states on arbitrarily long accepted paths."""
    mat = a.adjacency()
    n = a.num_states
    # states from which arbitrarily long paths leave: iteratively trim sinks
    alive = np.ones(n, dtype=bool)
    changed = True
    while changed:
        changed = False
        out_degree = (mat[:, alive].sum(axis=1) > 0) & alive
        if not np.array_equal(out_degree, alive):
            alive = out_degree
            changed = True
    # also require reachability from the start state
    reach = np.zeros(n, dtype=bool)
    stack = [a.start]
    reach[a.start] = True
    while stack:
        i = stack.pop()
        for j in np.flatnonzero(mat[i] > 0):
            if not reach[j]:
                reach[j] = True
                stack.append(int(j))
    keep = alive & reach
    return mat[np.ix_(keep, keep)]


def growth_rate(a: FactorAvoidanceAutomaton, tolerance: float = 1e-12) -> GrowthEstimate:
    """Dominant eigenvalue of the live-state transfer matrix.

    Power iteration with a Rayleigh-quotient residual, cross-checked against
    count-ratio extrapolation to guard against reducible automata.
    """
    sub = _live_submatrix(a)
    if sub.size == 0:
        raise ValueError("language is finite; growth rate undefined")
    m = sub.astype(float)
    v = np.ones(m.shape[0]) / np.sqrt(m.shape[0])
    value = 0.0
    for _ in range(100_000):
        w = m @ v
        norm = np.linalg.norm(w)
        if norm == 0:
            raise ValueError("language is finite; growth rate undefined")
        v = w / norm
        new_value = float(v @ (m @ v))
        if abs(new_value - value) < tolerance / 10:
            value = new_value
            break
        value = new_value
    residual = float(np.linalg.norm(m @ v - value * v))
    # independent cross-check from consecutive exact counts
    series = count_series(a, 220).counts
    if series[-2] > 0:
        ratio = series[-1] / series[-2]
        if abs(ratio - value) > max(1e-6, 100 * tolerance):
            raise ArithmeticError(
                f"growth estimators disagree: eigenvalue {value} vs count ratio {ratio}"
            )
    return GrowthEstimate(value, "power-iteration", residual)


def supergolden(precision: float = 1e-30) -> mpmath.mpf:
    """The real root > 1 of X^3 = X^2 + 1, by bisected Newton iteration with
    an interval certificate at the end."""
    if precision > 1e-15:
        raise ValueError("precision must be at most 1e-15")
    with mpmath.workdps(60):
        f = lambda x: x**3 - x**2 - 1
        x = mpmath.mpf("1.5")
        for _ in range(200):
            step = f(x) / (3 * x**2 - 2 * x)
            x -= step
            if abs(step) < precision / 10:
                break
        eps = mpmath.mpf(precision)
        if not (f(x - eps) < 0 < f(x + eps)):
            raise ArithmeticError("root certification failed")
        return +x


def pansiot_block_counts(n_max: int) -> list[int]:
    """Number of Pansiot-code words of each length ending in 00.

    These are the binary words avoiding {010, 101, 11111, 01110} (blocks of
    0s of length >= 2, blocks of 1s of length 2 or 4) whose last two letters
    are 00.  Counted by dynamic programming over (automaton state, last two
    letters), since the safe-prefix state alone does not retain the suffix.
    """
    aut = build_avoidance_automaton(PANSIOT_CODE_FORBIDDEN)
    # key: (state, last-two-letters string), value: exact count
    cur: dict[tuple[int, str], int] = {(aut.start, ""): 1}
    counts = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        nxt: dict[tuple[int, str], int] = {}
        for (s, suffix), weight in cur.items():
            for a in range(2):
                t = aut.transitions[s][a]
                if t < 0:
                    continue
                key = (t, (suffix + str(a))[-2:])
                nxt[key] = nxt.get(key, 0) + weight
        cur = nxt
        counts[n] = sum(w for (s, suffix), w in cur.items() if suffix == "00")
    return counts


def verify_pansiot_recurrence(n_range: range, counts: Optional[list[int]] = None) -> bool:
    """Check C_n = C_{n-1} + C_{n-4} + C_{n-6} across the range, where C_n
    counts the qualifying code words of length n ending in 00."""
    if n_range.start < 8:
        raise ValueError("the recurrence needs n >= 8 (C_7 = 10 but C_6+C_3+C_1 = 9)")
    if counts is None:
        counts = pansiot_block_counts(max(n_range))
    return all(counts[n] == counts[n - 1] + counts[n - 4] + counts[n - 6] for n in n_range)


def poly_mul(p: list[int], q: list[int]) -> list[int]:
    """Exact integer polynomial product, coefficients indexed by degree."""
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def expand_polynomial_identity() -> bool:
    """(X+1)(X^2-X+1)(X^3-X^2-1) expands exactly to X^6 - X^5 - X^2 - 1."""
    product = poly_mul(poly_mul([1, 1], [1, -1, 1]), [-1, 0, -1, 1])
    return product == [-1, 0, -1, 0, 0, -1, 1]
