"""Case analysis showing Q_X(p, q) has no morphism into the standard lattice.

The images of the plumbing generators are forced (up to relabelling the
standard basis e_i, f_i, g_i), which leaves twelve choices for (u1, u2).
For each choice, the inner products with u1, u2 and x0 give a linear system
for the e, f, g coefficients of v1 and v2; a morphism needs all of them to
be integers.

Basis vectors are concrete coordinate vectors in Z^{3(p+q)/2}: e_i is
coordinate i-1, f_i is s+i-1 and g_i is 2s+i-1 with s = (p+q)/2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .covers import check_odd_pair, chain_length, plumbing_labels, qx_matrix
from .lattices import LatticeMorphism, dot
from .linalg import solve_rational

Vec = tuple[int, ...]


def vadd(*vs: Vec) -> Vec:
    return tuple(sum(xs) for xs in zip(*vs))


def vscale(c: int, v: Vec) -> Vec:
    return tuple(c * x for x in v)


class StandardBasis:
    def __init__(self, p: int, q: int):
        check_odd_pair(p, q)
        self.p, self.q = p, q
        self.s = (p + q) // 2
        self.r = 3 * self.s

    def unit(self, block: str, i: int) -> Vec:
        """e_i, f_i or g_i (1-based)."""
        if not 1 <= i <= self.s:
            raise IndexError(f"{block}_{i} out of range 1..{self.s}")
        offset = "efg".index(block) * self.s
        v = [0] * self.r
        v[offset + i - 1] = 1
        return tuple(v)

    def alternating(self, block: str) -> Vec:
        """e = e_1 - e_2 + e_3 - ..., and likewise f, g."""
        return vadd(*(vscale((-1) ** (i - 1), self.unit(block, i)) for i in range(1, self.s + 1)))

    def combo(self, coeffs: dict[str, int]) -> Vec:
        return vadd(*(vscale(c, self.alternating(b)) for b, c in coeffs.items()))

    def parse(self, expr: str) -> Vec:
        """A difference of two alternating sums, e.g. ``"e-f"``."""
        a, b = expr.split("-")
        return self.combo({a: 1, b: -1})


def forced_partial_morphism(p: int, q: int) -> LatticeMorphism:
    """Images of x0..xk, y1..yk, z1..zk: chains e_i+e_{i+1} etc. and x0 = e_1+f_1+g_1."""
    B = StandardBasis(p, q)
    k = chain_length(p, q)
    rows = [vadd(B.unit("e", 1), B.unit("f", 1), B.unit("g", 1))]
    for block in "efg":
        rows += [vadd(B.unit(block, i), B.unit(block, i + 1)) for i in range(1, k + 1)]
    return LatticeMorphism(tuple(rows), B.r, tuple(plumbing_labels(p, q)))


U_CANDIDATES = (
    ("e-f", "e-g"),
    ("e-f", "g-f"),
    ("e-g", "e-f"),
    ("e-g", "f-g"),
    ("f-e", "f-g"),
    ("f-e", "g-e"),
    ("f-g", "f-e"),
    ("f-g", "e-g"),
    ("g-e", "g-f"),
    ("g-e", "f-e"),
    ("g-f", "g-e"),
    ("g-f", "e-f"),
)


def u_candidates() -> list[tuple[str, str]]:
    """The twelve admissible (u1, u2) images, grouped by u1."""
    return list(U_CANDIDATES)


def enumerate_u_pairs() -> list[tuple[str, str]]:
    """Rebuild the candidate list from its defining conditions, in symbolic e, f, g coordinates.

    u = a e + b f + c g with entries in {-1, 0, 1}, exactly two nonzero of
    opposite sign; since e, f, g are orthogonal of equal norm s, the
    condition u1 . u2 = s reads (a1 a2 + b1 b2 + c1 c2) = 1.
    """
    singles = []
    for eps in product((-1, 0, 1), repeat=3):
        if sorted(eps) == [-1, 0, 1]:
            plus = "efg"[eps.index(1)]
            minus = "efg"[eps.index(-1)]
            singles.append((f"{plus}-{minus}", eps))
    return [
        (n1, n2)
        for n1, e1 in singles
        for n2, e2 in singles
        if sum(x * y for x, y in zip(e1, e2)) == 1
    ]


@dataclass(frozen=True)
class CaseSolution:
    case: int
    u1: str
    u2: str
    a: Fraction
    b: Fraction
    c: Fraction
    a2: Fraction
    b2: Fraction
    c2: Fraction
    d1: int
    d2: int
    d1p: int
    d2p: int

    @property
    def unknowns(self) -> tuple[Fraction, ...]:
        return (self.a, self.b, self.c, self.a2, self.b2, self.c2)

    @property
    def integral(self) -> bool:
        return all(x.denominator == 1 for x in self.unknowns)

    def to_dict(self) -> dict:
        names = ("a", "b", "c", "a'", "b'", "c'")
        return {
            "case": self.case,
            "u1": self.u1,
            "u2": self.u2,
            "solution": {k: str(v) for k, v in zip(names, self.unknowns)},
            "d": {"d1": self.d1, "d2": self.d2, "d1'": self.d1p, "d2'": self.d2p},
            "integral": self.integral,
        }


def _fixed_coefficient(gen: Vec, rhs: int, free: list[Vec], fixed: Vec) -> int:
    """Coefficient of ``fixed`` read off from ``v . gen == rhs``, where gen is orthogonal to ``free``."""
    assert all(dot(w, gen) == 0 for w in free)
    k = dot(fixed, gen)
    value = Fraction(rhs, k)
    assert value.denominator == 1
    return int(value)


def solve_case(p: int, q: int, case: int | tuple[str, str]) -> CaseSolution:
    """Solve the six equations for (a, b, c, a', b', c') in one of the twelve cases.

    ``case`` is a 1-based index into :func:`u_candidates` or a (u1, u2) pair.
    """
    B = StandardBasis(p, q)
    if isinstance(case, int):
        if not 1 <= case <= len(U_CANDIDATES):
            raise ValueError(f"case must be in 1..{len(U_CANDIDATES)}")
        idx = case
        n1, n2 = U_CANDIDATES[case - 1]
    else:
        n1, n2 = case
        if (n1, n2) not in U_CANDIDATES:
            raise ValueError(f"({n1}, {n2}) is not an admissible (u1, u2) pair")
        idx = U_CANDIDATES.index((n1, n2)) + 1

    Q = qx_matrix(p, q)
    u1, u2 = B.parse(n1), B.parse(n2)
    e, f, g = (B.alternating(b) for b in "efg")
    f1, g1 = B.unit("f", 1), B.unit("g", 1)
    x0 = vadd(B.unit("e", 1), f1, g1)
    y1 = vadd(f1, B.unit("f", 2))
    z1 = vadd(g1, B.unit("g", 2))
    free = [e, f, g]

    ds = []
    for v in ("v1", "v2"):
        d_f = _fixed_coefficient(y1, Q[v, "y1"], free + [g1], f1)
        d_g = _fixed_coefficient(z1, Q[v, "z1"], free + [f1], g1)
        ds.append((d_f, d_g))

    A = [[Fraction(0)] * 6 for _ in range(6)]
    rhs = [Fraction(0)] * 6
    for blk, (v, (d_f, d_g)) in enumerate(zip(("v1", "v2"), ds)):
        fixed = vadd(vscale(d_f, f1), vscale(d_g, g1))
        for row, (gen, name) in enumerate(((u1, "u1"), (u2, "u2"), (x0, "x0"))):
            i = 3 * blk + row
            for j, w in enumerate(free):
                A[i][3 * blk + j] = Fraction(dot(w, gen))
            rhs[i] = Fraction(Q[v, name] - dot(fixed, gen))
    sol = solve_rational(A, rhs)
    (d1, d2), (d1p, d2p) = ds
    return CaseSolution(idx, n1, n2, *sol, d1=d1, d2=d2, d1p=d1p, d2p=d2p)


def case_equations(p: int, q: int, sol: CaseSolution) -> list[tuple[Fraction, Fraction]]:
    """(lhs, rhs) of the six equations with the solution substituted, computed from coordinates."""
    B = StandardBasis(p, q)
    Q = qx_matrix(p, q)
    e, f, g = (B.alternating(b) for b in "efg")
    f1, g1 = B.unit("f", 1), B.unit("g", 1)
    u1, u2 = B.parse(sol.u1), B.parse(sol.u2)

    def pair(v, w):
        return sum(Fraction(a) * b for a, b in zip(v, w))

    v1 = [sol.a * x + sol.b * y + sol.c * z + sol.d1 * s + sol.d2 * t for x, y, z, s, t in zip(e, f, g, f1, g1)]
    v2 = [sol.a2 * x + sol.b2 * y + sol.c2 * z + sol.d1p * s + sol.d2p * t for x, y, z, s, t in zip(e, f, g, f1, g1)]
    return [
        (pair(v1, u1), Fraction(Q["v1", "u1"])),
        (pair(v1, u2), Fraction(Q["v1", "u2"])),
        (pair(v2, u1), Fraction(Q["v2", "u1"])),
        (pair(v2, u2), Fraction(Q["v2", "u2"])),
        (sol.a + sol.b + sol.c, Fraction(0)),
        (sol.a2 + sol.b2 + sol.c2, Fraction(0)),
    ]


@dataclass(frozen=True)
class CaseTableResult:
    p: int
    q: int
    cases: tuple[CaseSolution, ...]

    @property
    def obstructed(self) -> bool:
        return not any(c.integral for c in self.cases)

    @property
    def offending(self) -> CaseSolution | None:
        return next((c for c in self.cases if c.integral), None)


def run_case_obstruction(p: int, q: int) -> CaseTableResult:
    """Solve all twelve cases.  ``obstructed`` is True when none is integral."""
    check_odd_pair(p, q)
    return CaseTableResult(p, q, tuple(solve_case(p, q, i) for i in range(1, len(U_CANDIDATES) + 1)))
