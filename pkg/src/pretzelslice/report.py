"""End-to-end non-sliceness check for P(p, q, -p, -q), 1 < p < q."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

from .covers import plumbing_matrix, qx_matrix, sigma3_matrix
from .lattices import SearchConfig, SearchStatus, find_morphism
from .linalg import Definiteness, definiteness, homology_from_presentation, principal_submatrix, rank_rational
from .obstruction import run_case_obstruction

NOT_SLICE_OBSTRUCTED = "NotSliceObstructed"
NOT_SLICE_TORUS = "NotSliceTorusComponents"
INCONCLUSIVE = "Inconclusive"
INVALID_INPUT = "InvalidInput"

METHODS = ("table", "search", "both")


@dataclass
class ObstructionReport:
    input: dict
    n: int | None = None
    b1_sigma3: int | None = None
    rank_qx: int | None = None
    definiteness: dict = field(default_factory=dict)
    methods: dict = field(default_factory=dict)
    verdict: str = INCONCLUSIVE

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, ensure_ascii=False)

    @classmethod
    def from_dict(cls, data: dict) -> "ObstructionReport":
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "ObstructionReport":
        return cls.from_dict(json.loads(text))

    @property
    def hypotheses_hold(self) -> bool:
        return (
            self.n is not None
            and self.rank_qx == self.n - self.b1_sigma3
            and self.definiteness.get("qx") in (Definiteness.POS_DEF.value, Definiteness.POS_SEMIDEF.value)
        )

    def exit_code(self) -> int:
        if self.verdict in (NOT_SLICE_OBSTRUCTED, NOT_SLICE_TORUS):
            return 0
        if self.verdict == INVALID_INPUT:
            return 2
        found = self.methods.get("search", {}).get("verdict") == SearchStatus.FOUND.value
        possible = self.methods.get("table", {}).get("verdict") == "MorphismPossible"
        timed_out = self.methods.get("search", {}).get("verdict") == SearchStatus.TIMED_OUT.value
        if timed_out and not (found or possible):
            return 3
        return 1


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _table_method(p: int, q: int) -> dict:
    start = time.monotonic()
    res = run_case_obstruction(p, q)
    out = {
        "verdict": "Obstructed" if res.obstructed else "MorphismPossible",
        "cases": [c.to_dict() for c in res.cases],
        "elapsed": time.monotonic() - start,
    }
    if res.offending is not None:
        out["offending_case"] = res.offending.case
    return out


def _search_method(Q, r: int, cfg: SearchConfig) -> dict:
    res = find_morphism(Q, r, cfg)
    out = {
        "verdict": res.status.value,
        "rank": r,
        "nodes": res.nodes,
        "elapsed": res.elapsed,
        "witness": None if res.morphism is None else [list(v) for v in res.morphism.vectors],
    }
    if res.status is SearchStatus.NOT_FOUND:
        out["certificate"] = "complete search; entry bound isqrt(norm) is rigorous, so no morphism exists"
    elif res.status is SearchStatus.TIMED_OUT:
        out["certificate"] = f"search stopped after {res.nodes} nodes"
    return out


def run_obstruction(p, q, method: str = "table", cfg: SearchConfig | None = None) -> ObstructionReport:
    """Check the lattice obstruction for P(p, q, -p, -q) and report a verdict."""
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    report = ObstructionReport(input={"p": p, "q": q})
    if not (_is_int(p) and _is_int(q)) or not 1 < p < q:
        report.verdict = INVALID_INPUT
        report.methods = {"error": "need integers with 1 < p < q"}
        return report
    if p % 2 == 0 and q % 2 == 0:
        report.verdict = INVALID_INPUT
        report.methods = {"error": "p and q both even: P(p,q,-p,-q) does not have two components"}
        return report
    if (p + q) % 2:
        # both components are nontrivial torus knots
        report.verdict = NOT_SLICE_TORUS
        return report

    Q = qx_matrix(p, q)
    n = Q.n
    report.n = n
    report.b1_sigma3 = homology_from_presentation(sigma3_matrix(p, q)).b1
    report.rank_qx = rank_rational(Q)
    report.definiteness = {
        "qx": definiteness(Q).value,
        "qx_top_left": definiteness(principal_submatrix(Q, range(n - 2))).value,
        "plumbing": definiteness(plumbing_matrix(p, q)).value,
    }
    if not report.hypotheses_hold:
        report.verdict = INCONCLUSIVE
        return report

    if method in ("table", "both"):
        report.methods["table"] = _table_method(p, q)
    if method in ("search", "both"):
        report.methods["search"] = _search_method(Q, report.rank_qx, cfg or SearchConfig())

    says_none = []
    says_exists = []
    if "table" in report.methods:
        (says_none if report.methods["table"]["verdict"] == "Obstructed" else says_exists).append("table")
    if "search" in report.methods:
        status = report.methods["search"]["verdict"]
        if status == SearchStatus.NOT_FOUND.value:
            says_none.append("search")
        elif status == SearchStatus.FOUND.value:
            says_exists.append("search")
    if says_exists:
        report.verdict = INCONCLUSIVE
    elif says_none:
        report.verdict = NOT_SLICE_OBSTRUCTED
    else:
        report.verdict = INCONCLUSIVE
    return report
