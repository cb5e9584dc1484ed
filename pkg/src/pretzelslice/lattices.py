"""Integral lattices and morphisms into the standard lattice (Z^r, Id).

:func:`find_morphism` is a complete backtracking search.  A generator of
square norm ``m`` can only map to a vector with entries bounded by
``isqrt(m)``, so the search space is finite and a ``NOT_FOUND`` answer is a
proof that no morphism exists.

Symmetry breaking: every automorphism of (Z^r, Id) that fixes the vectors
already assigned may be applied to the rest of a solution.  Such
automorphisms permute coordinates whose columns (over the assigned
vectors) are identical, and flip signs of coordinates that are still
unused.  So the next vector can be required to be nonincreasing within
each class of identical columns and nonnegative on unused coordinates
without losing any solution up to isometry.  For the first vector this is
the usual "nonnegative, nonincreasing" canonical form.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import isqrt
from typing import Iterator, Sequence

from .linalg import Definiteness, SymIntMat, definiteness

CLOCK_QUANTUM = 1024


class NotPositiveSemidefinite(ValueError):
    pass


@dataclass(frozen=True)
class IntegralLattice:
    gram: SymIntMat

    @property
    def rank(self) -> int:
        return self.gram.n


@dataclass(frozen=True)
class LatticeMorphism:
    """Image of each generator as a vector in Z^r (one row per generator)."""

    vectors: tuple[tuple[int, ...], ...]
    r: int
    labels: tuple[str, ...] | None = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], r: int | None = None, labels=None) -> "LatticeMorphism":
        vecs = tuple(tuple(int(x) for x in row) for row in rows)
        if r is None:
            r = len(vecs[0]) if vecs else 0
        if any(len(v) != r for v in vecs):
            raise ValueError("all image vectors need length r")
        return cls(vecs, r, None if labels is None else tuple(labels))

    def gram(self) -> list[list[int]]:
        return [[dot(a, b) for b in self.vectors] for a in self.vectors]

    def format(self) -> str:
        return "".join(" ".join(str(x) for x in v) + "\n" for v in self.vectors)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _gram_of(Q) -> SymIntMat:
    if isinstance(Q, IntegralLattice):
        return Q.gram
    if isinstance(Q, SymIntMat):
        return Q
    return SymIntMat.from_rows(Q)


def verify_morphism(Q, V) -> bool:
    """True iff the rows of ``V`` realise the Gram matrix ``Q``."""
    G = _gram_of(Q)
    rows = V.vectors if isinstance(V, LatticeMorphism) else tuple(tuple(v) for v in V)
    if len(rows) != G.n:
        raise ValueError(f"morphism has {len(rows)} vectors for {G.n} generators")
    if len({len(v) for v in rows}) > 1:
        raise ValueError("image vectors have different lengths")
    return all(dot(rows[i], rows[j]) == G.entries[i][j] for i in range(G.n) for j in range(i, G.n))


class SearchStatus(str, enum.Enum):
    FOUND = "Found"
    NOT_FOUND = "NotFound"
    TIMED_OUT = "TimedOut"

    def __str__(self) -> str:
        return self.value


@dataclass
class SearchConfig:
    deterministic: bool = True
    timeout: float = 600.0
    max_nodes: int | None = None
    workers: int = 1

    def __post_init__(self):
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")


@dataclass
class SearchResult:
    status: SearchStatus
    morphism: LatticeMorphism | None = None
    nodes: int = 0
    elapsed: float = 0.0
    order: list[int] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND


class _OutOfBudget(Exception):
    pass


class _Budget:
    def __init__(self, timeout: float | None, max_nodes: int | None, deadline: float | None = None):
        self.nodes = 0
        self.max_nodes = max_nodes
        if deadline is None and timeout is not None:
            deadline = time.monotonic() + timeout
        self.deadline = deadline

    def tick(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise _OutOfBudget
        if self.nodes % CLOCK_QUANTUM == 0 and self.deadline is not None and time.monotonic() > self.deadline:
            raise _OutOfBudget


def _vectors(
    norm: int,
    r: int,
    constraints: Sequence[tuple[Sequence[int], int]],
    prev_same: Sequence[int] | None = None,
    nonneg: Sequence[bool] | None = None,
    budget: _Budget | None = None,
) -> Iterator[tuple[int, ...]]:
    """Integer vectors of squared length ``norm`` meeting every ``(c, t)``: ``v . c == t``.

    ``prev_same[j] >= 0`` forces ``v[j] <= v[prev_same[j]]``; ``nonneg[j]``
    forces ``v[j] >= 0``.  Output is in ascending lexicographic order.
    """
    if norm < 0:
        return
    cons = [(list(c), t) for c, t in constraints if any(c)]
    for c, t in constraints:
        if not any(c) and t != 0:
            return
    # tail[i][j] = sum of c_i[j:]**2, for the Cauchy-Schwarz bound on the rest
    tails = []
    for c, _ in cons:
        tail = [0] * (r + 1)
        for j in range(r - 1, -1, -1):
            tail[j] = tail[j + 1] + c[j] * c[j]
        tails.append(tail)
    targets = [t for _, t in cons]
    cols = [[c[j] for c, _ in cons] for j in range(r)]
    m = len(cons)
    v = [0] * r

    def rec(j: int, rem: int, partial: list[int]):
        if budget is not None:
            budget.tick()
        if j == r:
            if rem == 0:
                yield tuple(v)
            return
        b = isqrt(rem)
        if j == r - 1:
            choices = (-b, b) if b * b == rem else ()
            if b == 0:
                choices = (0,) if rem == 0 else ()
        else:
            choices = range(-b, b + 1)
        lo = 0 if nonneg is not None and nonneg[j] else -b
        hi = b
        if prev_same is not None and prev_same[j] >= 0:
            hi = min(hi, v[prev_same[j]])
        col = cols[j]
        for x in choices:
            if x < lo or x > hi:
                continue
            rest = rem - x * x
            nxt = [partial[i] + col[i] * x for i in range(m)]
            ok = True
            for i in range(m):
                d = targets[i] - nxt[i]
                if d * d > rest * tails[i][j + 1]:
                    ok = False
                    break
            if not ok:
                continue
            v[j] = x
            yield from rec(j + 1, rest, nxt)
        v[j] = 0

    yield from rec(0, norm, [0] * m)


def enumerate_vectors(
    norm: int, r: int, constraints: Sequence[tuple[Sequence[int], int]] = ()
) -> Iterator[tuple[int, ...]]:
    """Every ``v`` in Z^r with ``v . v == norm`` and ``v . c == t`` for each constraint, lexicographically."""
    if norm < 0:
        raise ValueError("norm must be nonnegative")
    return _vectors(norm, r, constraints)


def _symmetry_masks(assigned: Sequence[Sequence[int]], r: int) -> tuple[list[int], list[bool]]:
    last_seen: dict[tuple[int, ...], int] = {}
    prev_same = []
    nonneg = []
    for j in range(r):
        sig = tuple(v[j] for v in assigned)
        prev_same.append(last_seen.get(sig, -1))
        last_seen[sig] = j
        nonneg.append(not any(sig))
    return prev_same, nonneg


def search_order(G: SymIntMat) -> list[int]:
    """Generators by ascending square norm, ties in matrix order."""
    return sorted(range(G.n), key=lambda i: (G.entries[i][i], i))


def _dfs(G: SymIntMat, r: int, order: list[int], prefix: list[tuple[int, ...]], budget: _Budget):
    """Extend ``prefix`` (images of ``order[:len(prefix)]``) to a full solution or return None."""
    assigned = list(prefix)

    def rec(t: int):
        if t == len(order):
            return list(assigned)
        g = order[t]
        cons = [(assigned[s], G.entries[g][order[s]]) for s in range(t)]
        prev_same, nonneg = _symmetry_masks(assigned, r)
        for vec in _vectors(G.entries[g][g], r, cons, prev_same, nonneg, budget):
            assigned.append(vec)
            sol = rec(t + 1)
            if sol is not None:
                return sol
            assigned.pop()
        return None

    return rec(len(prefix))


def _to_morphism(order: list[int], images: list[tuple[int, ...]], r: int, labels) -> LatticeMorphism:
    rows: list[tuple[int, ...]] = [()] * len(order)
    for g, vec in zip(order, images):
        rows[g] = vec
    return LatticeMorphism(tuple(rows), r, labels)


def _worker(args):
    G, r, order, prefix, deadline, max_nodes = args
    budget = _Budget(None, max_nodes, deadline)
    try:
        sol = _dfs(G, r, order, prefix, budget)
    except _OutOfBudget:
        return "timeout", None, budget.nodes
    return ("found" if sol is not None else "none"), sol, budget.nodes


def _split(G: SymIntMat, r: int, order: list[int], budget: _Budget, want: int):
    """Breadth-first expansion of the search tree into at least ``want`` disjoint prefixes."""
    frontier = [[]]
    while frontier and len(frontier) < want:
        t = len(frontier[0])
        if t == len(order):
            break
        g = order[t]
        nxt = []
        for prefix in frontier:
            cons = [(prefix[s], G.entries[g][order[s]]) for s in range(t)]
            prev_same, nonneg = _symmetry_masks(prefix, r)
            for vec in _vectors(G.entries[g][g], r, cons, prev_same, nonneg, budget):
                nxt.append(prefix + [vec])
        frontier = nxt
    return frontier


def find_morphism(Q, r: int, cfg: SearchConfig | None = None) -> SearchResult:
    """Decide whether the positive semidefinite lattice ``Q`` maps into (Z^r, Id).

    Returns FOUND with a verified witness, NOT_FOUND after exhausting the
    search (a non-existence proof), or TIMED_OUT with the node count.
    """
    cfg = cfg or SearchConfig()
    G = _gram_of(Q)
    kind = definiteness(G)
    if kind not in (Definiteness.POS_DEF, Definiteness.POS_SEMIDEF, Definiteness.ZERO):
        raise NotPositiveSemidefinite(f"form is {kind}, not positive semidefinite")
    if r < 0:
        raise ValueError("target rank must be nonnegative")
    order = search_order(G)
    start = time.monotonic()
    budget = _Budget(cfg.timeout, cfg.max_nodes)

    def result(status, images=None):
        morph = _to_morphism(order, images, r, G.labels) if images is not None else None
        return SearchResult(status, morph, budget.nodes, time.monotonic() - start, order)

    try:
        if cfg.deterministic or cfg.workers <= 1:
            sol = _dfs(G, r, order, [], budget)
            return result(SearchStatus.FOUND, sol) if sol is not None else result(SearchStatus.NOT_FOUND)
        frontier = _split(G, r, order, budget, cfg.workers * 4)
    except _OutOfBudget:
        return result(SearchStatus.TIMED_OUT)

    complete = [p for p in frontier if len(p) == len(order)]
    if complete:
        return result(SearchStatus.FOUND, complete[0])
    remaining = None if cfg.max_nodes is None else max(cfg.max_nodes - budget.nodes, 0)
    jobs = [(G, r, order, p, budget.deadline, remaining) for p in frontier]
    timed_out = False
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        for status, sol, nodes in pool.map(_worker, jobs):
            budget.nodes += nodes
            if status == "found":
                pool.shutdown(wait=False, cancel_futures=True)
                return result(SearchStatus.FOUND, sol)
            timed_out |= status == "timeout"
    return result(SearchStatus.TIMED_OUT if timed_out else SearchStatus.NOT_FOUND)
