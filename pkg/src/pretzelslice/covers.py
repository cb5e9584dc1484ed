"""Intersection matrices and Seifert data for covers of P(p, q, -p, -q).

Generator order is fixed as u1, u2, x0..xk, y1..yk, z1..zk, v1, v2 (then
w1, w2 for the blown-up diagram), with k = (p + q - 2) / 2.  "Top-left
(n-2) x (n-2)" therefore always means everything except v1, v2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .linalg import SymIntMat


def check_odd_pair(p: int, q: int) -> None:
    if not (isinstance(p, int) and isinstance(q, int)):
        raise TypeError("p and q must be integers")
    if not 1 < p < q:
        raise ValueError(f"need 1 < p < q, got p={p}, q={q}")
    if p % 2 == 0 or q % 2 == 0:
        raise ValueError(f"p and q must both be odd, got p={p}, q={q}")


def chain_length(p: int, q: int) -> int:
    return (p + q - 2) // 2


def qx_dimension(p: int, q: int) -> int:
    return 3 * (p + q) // 2 + 2


def qx_labels(p: int, q: int) -> list[str]:
    k = chain_length(p, q)
    return (
        ["u1", "u2"]
        + [f"x{i}" for i in range(k + 1)]
        + [f"y{i}" for i in range(1, k + 1)]
        + [f"z{i}" for i in range(1, k + 1)]
        + ["v1", "v2"]
    )


def plumbing_labels(p: int, q: int) -> list[str]:
    return qx_labels(p, q)[2:-2]


class _Builder:
    """Symmetric matrix filled by label."""

    def __init__(self, labels: Sequence[str]):
        self.labels = list(labels)
        self.pos = {name: i for i, name in enumerate(self.labels)}
        n = len(self.labels)
        self.rows = [[0] * n for _ in range(n)]

    def __setitem__(self, key, value):
        a, b = key
        i, j = self.pos[a], self.pos[b]
        self.rows[i][j] = value
        self.rows[j][i] = value

    def chain(self, names: Sequence[str], first: int, rest: int = 2) -> None:
        for t, name in enumerate(names):
            self[name, name] = first if t == 0 else rest
            if t:
                self[names[t - 1], name] = 1

    def build(self) -> SymIntMat:
        return SymIntMat.from_rows(self.rows, self.labels)


def _fill_uv(B: _Builder, p: int, q: int) -> None:
    s = p + q
    B["u1", "u1"] = s
    B["u2", "u2"] = s
    B["u1", "u2"] = s // 2
    B["u1", "v1"] = -q
    B["u1", "v2"] = (-q + 1) // 2
    B["u2", "v1"] = (-q - 1) // 2
    B["u2", "v2"] = -q


def sigma3_matrix(p: int, q: int) -> SymIntMat:
    """Linking-framing matrix of the six-component surgery diagram of the 3-fold cover."""
    check_odd_pair(p, q)
    B = _Builder(["u1", "u2", "v1", "v2", "w1", "w2"])
    _fill_uv(B, p, q)
    B["v1", "v1"] = q - p
    B["v2", "v2"] = q - p
    B["v1", "v2"] = (q - p) // 2
    B["v1", "w1"] = p
    B["v1", "w2"] = (p + 1) // 2
    B["v2", "w1"] = (p - 1) // 2
    B["v2", "w2"] = p
    B["w1", "w1"] = -p - q
    B["w2", "w2"] = -p - q
    B["w1", "w2"] = (-p - q) // 2
    return B.build()


def intermediate_matrix(p: int, q: int) -> SymIntMat:
    """Matrix after blowing up the x, y, z chains; w1 and w2 now have framing -1 and are unlinked."""
    check_odd_pair(p, q)
    k = chain_length(p, q)
    labels = qx_labels(p, q) + ["w1", "w2"]
    B = _Builder(labels)
    _fill_uv(B, p, q)
    B.chain([f"x{i}" for i in range(k + 1)], first=1)
    B.chain([f"y{i}" for i in range(1, k + 1)], first=1)
    B.chain([f"z{i}" for i in range(1, k + 1)], first=1)
    B["x0", "w1"] = 1
    B["x0", "w2"] = 1
    B["y1", "w1"] = 1
    B["z1", "w2"] = 1
    B["v1", "v1"] = q - p
    B["v2", "v2"] = q - p
    B["v1", "v2"] = (q - p) // 2
    B["v1", "w1"] = p
    B["v1", "w2"] = (p + 1) // 2
    B["v2", "w1"] = (p - 1) // 2
    B["v2", "w2"] = p
    B["w1", "w1"] = -1
    B["w2", "w2"] = -1
    return B.build()


def qx_matrix(p: int, q: int) -> SymIntMat:
    """Intersection form of the 4-manifold X bounded by the 3-fold cover, built from closed formulas."""
    check_odd_pair(p, q)
    k = chain_length(p, q)
    B = _Builder(qx_labels(p, q))
    _fill_uv(B, p, q)
    B.chain([f"x{i}" for i in range(k + 1)], first=3)
    B.chain([f"y{i}" for i in range(1, k + 1)], first=2)
    B.chain([f"z{i}" for i in range(1, k + 1)], first=2)
    B["x0", "y1"] = 1
    B["x0", "z1"] = 1
    B["x0", "v1"] = (3 * p + 1) // 2
    B["x0", "v2"] = (3 * p - 1) // 2
    B["y1", "v1"] = p
    B["y1", "v2"] = (p - 1) // 2
    B["z1", "v1"] = (p + 1) // 2
    B["z1", "v2"] = p
    B["v1", "v1"] = (5 * p * p - 2 * p + 4 * q + 1) // 4
    B["v2", "v2"] = (5 * p * p - 6 * p + 4 * q + 1) // 4
    B["v1", "v2"] = (2 * p * p - p + q) // 2
    return B.build()


def blow_down(M: SymIntMat, i: int | str) -> SymIntMat:
    """Remove a generator of square -1 or +1, correcting the remaining form."""
    i = M.index(i)
    d = M.entries[i][i]
    if d not in (1, -1):
        raise ValueError(f"cannot blow down {M.label(i)}: diagonal entry is {d}, not +-1")
    keep = [j for j in range(M.n) if j != i]
    col = [M.entries[j][i] for j in range(M.n)]
    # d = -1 adds the rank-one term, d = +1 subtracts it
    rows = [[M.entries[a][b] - d * col[a] * col[b] for b in keep] for a in keep]
    labels = None if M.labels is None else [M.labels[j] for j in keep]
    return SymIntMat.from_rows(rows, labels)


# ---------------------------------------------------------------------------
# Seifert data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeifertInvariants:
    """Seifert fibered space over S^2: integer part ``k`` and (alpha, beta) pairs."""

    k: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for a, _ in self.pairs:
            if a == 0:
                raise ValueError("Seifert pair with alpha = 0")

    def __str__(self) -> str:
        body = ", ".join(f"({a},{b})" for a, b in self.pairs)
        return f"M(0;{self.k},{body})" if self.k else f"M(0,{body})"

    def ratios(self) -> list[Fraction]:
        return [Fraction(b, a) for a, b in self.pairs]


def euler_number(S: SeifertInvariants) -> Fraction:
    """``-sum(beta / alpha)``, the integer part entering as the pair (1, -k)."""
    return S.k - sum(S.ratios(), Fraction(0))


def sigma2_seifert(params: Sequence[int]) -> SeifertInvariants:
    if any(abs(a) < 2 for a in params):
        raise ValueError(f"every parameter needs |a| >= 2, got {tuple(params)}")
    pairs = tuple((a, 1) if a > 0 else (-a, -a - 1) for a in params)
    return SeifertInvariants(k=sum(1 for a in params if a < 0), pairs=pairs)


def is_complementary_family(S: SeifertInvariants) -> bool:
    """True when the pairs split into couples whose ratios sum to one."""
    ratios = S.ratios()
    if len(ratios) % 2:
        return False

    def match(rest: list[Fraction]) -> bool:
        if not rest:
            return True
        head = rest[0]
        for t in range(1, len(rest)):
            if head + rest[t] == 1 and match(rest[1:t] + rest[t + 1:]):
                return True
        return False

    return match(ratios)


@dataclass(frozen=True)
class PlumbingGraph:
    """Star-shaped plumbing: a central vertex and legs, each a path of weights."""

    central_weight: int
    legs: tuple[tuple[int, ...], ...]

    def labels(self) -> list[str]:
        names = ["x0"]
        for leg, letter in zip(self.legs, "xyzabcdefgh"):
            names += [f"{letter}{i}" for i in range(1, len(leg) + 1)]
        return names

    def matrix(self) -> SymIntMat:
        B = _Builder(self.labels())
        B["x0", "x0"] = self.central_weight
        for leg, letter in zip(self.legs, "xyzabcdefgh"):
            names = [f"{letter}{i}" for i in range(1, len(leg) + 1)]
            for t, (name, w) in enumerate(zip(names, leg)):
                B[name, name] = w
                B[names[t - 1] if t else "x0", name] = 1
        return B.build()


def plumbing_graph(p: int, q: int) -> PlumbingGraph:
    check_odd_pair(p, q)
    leg = (2,) * chain_length(p, q)
    return PlumbingGraph(central_weight=3, legs=(leg, leg, leg))


def plumbing_matrix(p: int, q: int) -> SymIntMat:
    return plumbing_graph(p, q).matrix()


def continued_fraction(weights: Sequence[int]) -> Fraction:
    """Hirzebruch-Jung continued fraction ``w1 - 1/(w2 - 1/(...))``."""
    value = Fraction(weights[-1])
    for w in reversed(weights[:-1]):
        value = w - 1 / value
    return value


def plumbing_to_seifert(G: PlumbingGraph) -> SeifertInvariants:
    """Boundary of a star-shaped plumbing as a Seifert fibered space.

    The centre contributes (1, -weight); a leg with continued fraction
    alpha/beta contributes (alpha, beta) in lowest terms.
    """
    pairs = [(1, -G.central_weight)]
    for leg in G.legs:
        cf = continued_fraction(leg)
        pairs.append((cf.numerator, cf.denominator))
    return SeifertInvariants(k=0, pairs=tuple(pairs))


def pairs_equivalent(S: SeifertInvariants, T: SeifertInvariants) -> bool:
    """Compare exceptional data as multisets of beta/alpha, integer part included."""
    def key(X):
        return sorted(X.ratios() + ([Fraction(-X.k)] if X.k else []))
    return key(S) == key(T)


def all_odd_pairs(limit: int) -> list[tuple[int, int]]:
    odds = range(3, limit + 1, 2)
    return list(combinations(odds, 2))
