"""Weight functions, word metrics, and the exact interval-weight searches."""
from __future__ import annotations

import heapq
import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

import numpy as np

from .group_core import Group, generated_subgroup
from .partitions import SymPartition, induced_partition, lee_partition

DEFAULT_BUDGET = 50_000_000
ORACLE_MAX_K = 9


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class WeightFunction:
    """One non-negative integer per element id."""

    values: tuple[int, ...]

    def __init__(self, values):
        object.__setattr__(self, "values", tuple(int(v) for v in values))

    def __getitem__(self, g: int) -> int:
        return self.values[g]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @property
    def max(self) -> int:
        return max(self.values)


@dataclass(frozen=True)
class WeightCheck:
    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_weight(G: Group, w: Sequence[int]) -> WeightCheck:
    """Check the weight axioms: w(g) = 0 iff g = e, symmetry, and the triangle inequality."""
    W = np.asarray(list(w), dtype=np.int64)
    if W.shape != (G.n,):
        raise ValueError(f"weight has {W.size} values for a group of order {G.n}")
    e = G.identity
    if W[e] != 0:
        return WeightCheck(False, f"w1: w({G.labels[e]}) = {W[e]} != 0")
    bad = np.flatnonzero(W <= 0)
    bad = bad[bad != e]
    if bad.size:
        g = int(bad[0])
        return WeightCheck(False, f"w1: w({G.labels[g]}) = {W[g]} is not positive")
    asym = np.flatnonzero(W != W[G.inv])
    if asym.size:
        g = int(asym[0])
        return WeightCheck(False, f"w2: w({G.labels[g]}) != w of its inverse")
    over = W[G.mul] > W[:, None] + W[None, :]
    if over.any():
        g, h = (int(x) for x in np.argwhere(over)[0])
        return WeightCheck(False, f"w3 at ({g},{h}): w({G.labels[g]}*{G.labels[h]}) = "
                                  f"{W[G.mul[g, h]]} > {W[g]} + {W[h]}")
    return WeightCheck(True)


def is_interval(G: Group, w: Sequence[int]) -> bool:
    vals = set(w)
    return vals == set(range(max(vals) + 1))


def is_lee_weight(G: Group, w: Sequence[int]) -> bool:
    """A valid interval weight whose level sets are the Lee partition."""
    return bool(validate_weight(G, w)) and is_interval(G, w) and induced_partition(G, w) == lee_partition(G)


def metric(G: Group, w: Sequence[int], x: int, y: int) -> int:
    """The right-invariant metric ``d(x, y) = w(x y^-1)``."""
    return w[G.rows[x][G.inverses[y]]]


# ----------------------------------------------------------------------------
# word metrics


@dataclass(frozen=True)
class GeneratorWeights:
    costs: Mapping[int, int]

    def __post_init__(self):
        if any(c < 1 for c in self.costs.values()):
            raise ValueError("generator costs must be positive integers")


def word_weight(G: Group, gw: GeneratorWeights | Mapping[int, int]) -> WeightFunction:
    """Cheapest word in ``S ∪ S^-1`` for each element (Dijkstra on the Cayley graph)."""
    costs = gw.costs if isinstance(gw, GeneratorWeights) else dict(gw)
    if len(generated_subgroup(G, costs)) != G.n:
        raise ValueError("the generator set does not generate the group")
    rows, inv = G.rows, G.inverses
    steps: dict[int, int] = {}
    for s, c in costs.items():
        for t in (s, inv[s]):
            steps[t] = min(c, steps.get(t, c))
    dist = [math.inf] * G.n
    dist[G.identity] = 0
    heap = [(0, G.identity)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for t, c in steps.items():
            y = rows[x][t]
            if d + c < dist[y]:
                dist[y] = d + c
                heapq.heappush(heap, (d + c, y))
    return WeightFunction(dist)


# ----------------------------------------------------------------------------
# block-level search


@dataclass
class SearchResult:
    status: str  # "found", "none" or "budget"
    weight: WeightFunction | None = None
    nodes: int = 0
    millis: float = 0.0


def block_products(G: Group, P: SymPartition) -> list[list[list[int]]]:
    """``prods[i][j]`` = sorted non-trivial blocks meeting ``P_i * P_j`` (1-based, index 0 unused)."""
    bo = np.asarray(P.block_of)
    idx = [np.asarray(b) for b in P.blocks]
    s = P.s
    prods = [[[] for _ in range(s + 1)] for _ in range(s + 1)]
    for i in range(1, s + 1):
        for j in range(i, s + 1):
            sub = G.mul[np.ix_(idx[i], idx[j])]
            met = set(np.unique(bo[sub]).tolist())
            met |= set(np.unique(bo[G.mul[np.ix_(idx[j], idx[i])]]).tolist())
            met.discard(0)
            prods[i][j] = prods[j][i] = sorted(met)
    return prods


class _Search:
    """Assign increasing values to blocks, carrying triangle-inequality upper bounds.

    When a block receives value ``v`` every previously valued block ``Y``
    (and the block itself) caps the blocks meeting ``X*Y`` at ``v + w(Y)``.
    Values go out in increasing order, so each triangle constraint is checked
    once its largest member is valued, which makes the bounds exact.
    """

    def __init__(self, G: Group, P: SymPartition, budget: int):
        self.G, self.P = G, P
        self.s = P.s
        self.prods = block_products(G, P)
        self.budget = budget
        self.nodes = 0

    def _assign(self, b: int, v: int, ub: list[int], val: list[int], assigned: list[int]) -> list[int]:
        ub = ub[:]
        prods_b = self.prods[b]
        for y in assigned:
            cap = v + val[y]
            for t in prods_b[y]:
                if ub[t] > cap:
                    ub[t] = cap
        return ub

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded

    def interval(self) -> list[int] | None:
        """A bijection blocks -> 1..s satisfying every block triangle constraint."""
        s = self.s
        if s == 0:
            return [0]
        val = [0] * (s + 1)
        big = 2 * s + 2

        def dfs(v: int, ub: list[int], unassigned: list[int], assigned: list[int]) -> bool:
            if v > s:
                return True
            order = sorted(unassigned, key=lambda b: ub[b])
            limit = len(order)
            for i, b in enumerate(order):
                u = ub[b]
                if u < v + i:
                    return False
                if u == v + i:
                    limit = i + 1
                    break
            for b in order[:limit]:
                self._tick()
                val[b] = v
                assigned.append(b)
                nub = self._assign(b, v, ub, val, assigned)
                rest = [c for c in unassigned if c != b]
                if dfs(v + 1, nub, rest, assigned):
                    return True
                assigned.pop()
                val[b] = 0
            return False

        if dfs(1, [big] * (s + 1), list(range(1, s + 1)), []):
            return val
        return None

    def integral(self, top: int) -> list[int] | None:
        """Distinct values in 1..top for the blocks, gaps allowed."""
        s = self.s
        if s == 0:
            return [0]
        if top < s:
            return None
        val = [0] * (s + 1)
        big = 2 * top + 2

        def dfs(v: int, ub: list[int], unassigned: list[int], assigned: list[int]) -> bool:
            if not unassigned:
                return True
            if v > top:
                return False
            order = sorted(unassigned, key=lambda b: ub[b])
            for i, b in enumerate(order):
                if ub[b] < v + i:
                    return False
            if top - v + 1 < len(unassigned):
                return False
            for b in order:
                if ub[b] < v:
                    break
                self._tick()
                val[b] = v
                assigned.append(b)
                nub = self._assign(b, v, ub, val, assigned)
                if dfs(v + 1, nub, [c for c in unassigned if c != b], assigned):
                    return True
                assigned.pop()
                val[b] = 0
            self._tick()
            return dfs(v + 1, ub, unassigned, assigned)  # leave v unused

        if dfs(1, [big] * (s + 1), list(range(1, s + 1)), []):
            return val
        return None

    def lift(self, val: list[int]) -> WeightFunction:
        return WeightFunction([val[b] for b in self.P.block_of])


def _run(G, P, budget, method, *args) -> SearchResult:
    t0 = time.perf_counter()
    search = _Search(G, P, budget)
    try:
        val = getattr(search, method)(*args)
    except BudgetExceeded:
        return SearchResult("budget", None, search.nodes, (time.perf_counter() - t0) * 1e3)
    ms = (time.perf_counter() - t0) * 1e3
    if val is None:
        return SearchResult("none", None, search.nodes, ms)
    w = search.lift(val)
    assert validate_weight(G, w), "search produced an invalid weight"
    return SearchResult("found", w, search.nodes, ms)


def find_interval_weight(G: Group, P: SymPartition, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Exhaustive search for an interval weight whose level sets are exactly ``P``."""
    return _run(G, P, budget, "interval")


def find_any_integral_weight(G: Group, P: SymPartition, max_value: int,
                             budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Search for a weight constant and injective on blocks with values at most ``max_value``."""
    return _run(G, P, budget, "integral", max_value)


# ----------------------------------------------------------------------------
# Lee decisions


@dataclass
class Verdict:
    outcome: str  # "Yes", "No" or "Undecided"
    reason: str
    witness: WeightFunction | None = None
    nodes: int = 0
    millis: float = 0.0
    notes: list[str] = field(default_factory=list)

    def to_json(self, group: str, k: int) -> dict:
        out = {"group": group, "k": k, "outcome": self.outcome, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = list(self.witness.values)
        out["nodes"] = self.nodes
        out["millis"] = round(self.millis, 3)
        return out


def decide_lee_by_search(G: Group, budget: int = DEFAULT_BUDGET) -> Verdict:
    res = find_interval_weight(G, lee_partition(G), budget)
    outcome = {"found": "Yes", "none": "No", "budget": "Undecided"}[res.status]
    return Verdict(outcome, "search", res.weight, res.nodes, res.millis)


def _permutation_chunks(k: int, size: int) -> Iterator[np.ndarray]:
    it = itertools.permutations(range(1, k + 1))
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int16)


def brute_force_lee_oracle(G: Group, chunk: int = 4096) -> Verdict:
    """Try every assignment of 1..k(G) to the Lee blocks, checking w3 on all element pairs."""
    t0 = time.perf_counter()
    lee = lee_partition(G)
    k = lee.s
    if k > ORACLE_MAX_K:
        raise ValueError(f"k(G) = {k} exceeds the oracle cap of {ORACLE_MAX_K}")
    bo = np.asarray(lee.block_of)
    mul = G.mul
    tried = 0
    for perms in _permutation_chunks(k, chunk):
        vals = np.concatenate([np.zeros((len(perms), 1), dtype=np.int16), perms], axis=1)
        W = vals[:, bo]  # (m, n) weights per element
        ok = np.all(W[:, mul] <= W[:, :, None] + W[:, None, :], axis=(1, 2))
        if ok.any():
            i = int(np.argmax(ok))
            tried += i + 1
            return Verdict("Yes", "exhaustive-search", WeightFunction(W[i]), tried,
                           (time.perf_counter() - t0) * 1e3)
        tried += len(perms)
    return Verdict("No", "exhaustive-search", None, tried, (time.perf_counter() - t0) * 1e3)


def format_weight(G: Group, w: Sequence[int]) -> str:
    return "".join(f"{G.labels[g]} {w[g]}\n" for g in range(G.n))


def parse_weight(G: Group, text: str) -> WeightFunction:
    """One ``label value`` pair per line."""
    lookup = {lab: i for i, lab in enumerate(G.labels)}
    vals: dict[int, int] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        label, _, value = line.rpartition(" ")
        g = lookup.get(label.strip())
        if g is None:
            raise ValueError(f"unknown element {label!r}")
        vals[g] = int(value)
    if len(vals) != G.n:
        raise ValueError(f"weight file covers {len(vals)} of {G.n} elements")
    return WeightFunction([vals[g] for g in range(G.n)])
