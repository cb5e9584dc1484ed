"""Four-strand pretzel links P(a, b, c, d): components, symmetries, sliceness screen."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .covers import euler_number, is_complementary_family, sigma2_seifert


@dataclass(frozen=True)
class PretzelParams:
    params: tuple[int, int, int, int]

    def __post_init__(self):
        if len(self.params) != 4:
            raise ValueError(f"need exactly 4 parameters, got {len(self.params)}")
        if not all(isinstance(a, int) for a in self.params):
            raise TypeError("pretzel parameters must be integers")

    @classmethod
    def of(cls, *params) -> "PretzelParams":
        if len(params) == 1 and not isinstance(params[0], int):
            params = tuple(params[0])
        return cls(tuple(int(a) for a in params))

    @classmethod
    def parse(cls, text: str) -> "PretzelParams":
        return cls.of(*(int(tok) for tok in text.replace("(", "").replace(")", "").split(",")))

    def __iter__(self):
        return iter(self.params)

    def __str__(self) -> str:
        return "P(" + ",".join(str(a) for a in self.params) + ")"


def _params(P) -> tuple[int, ...]:
    return P.params if isinstance(P, PretzelParams) else tuple(P)


def symmetric_images(P) -> list[tuple[int, ...]]:
    """The 8 strings related by cyclic shifts and reversal."""
    a = _params(P)
    out = []
    for s in (a, a[::-1]):
        for k in range(len(s)):
            out.append(s[k:] + s[:k])
    return out


def normalize(P) -> PretzelParams:
    return PretzelParams(min(symmetric_images(P)))


def component_count(P) -> int:
    """Trace the closed strands through the four twist boxes.

    Box i has endpoints TL, TR, BL, BR.  An odd box joins TL-BR and TR-BL,
    an even box TL-BL and TR-BR.  Outside the boxes, TR of box i meets TL
    of box i+1 and BR of box i meets BL of box i+1 (indices mod 4).
    """
    a = _params(P)
    n = len(a)
    TL, TR, BL, BR = range(4)
    inside = {}
    outside = {}
    for i, t in enumerate(a):
        if t % 2:
            pairs = ((TL, BR), (TR, BL))
        else:
            pairs = ((TL, BL), (TR, BR))
        for x, y in pairs:
            inside[(i, x)] = (i, y)
            inside[(i, y)] = (i, x)
        j = (i + 1) % n
        for x, y in ((TR, TL), (BR, BL)):
            outside[(i, x)] = (j, y)
            outside[(j, y)] = (i, x)
    seen = set()
    cycles = 0
    for start in inside:
        if start in seen:
            continue
        cycles += 1
        cur = start
        while cur not in seen:
            seen.add(cur)
            mate = inside[cur]
            seen.add(mate)
            cur = outside[mate]
    return cycles


def _opposite_pairs_adjacent(a: Sequence[int]) -> bool:
    # P(x, -x, y, -y) up to the 8 symmetries
    return (a[0] + a[1] == 0 and a[2] + a[3] == 0) or (a[1] + a[2] == 0 and a[3] + a[0] == 0)


def _opposite_pairs_alternating(a: Sequence[int]) -> bool:
    # P(x, y, -x, -y)
    return a[0] + a[2] == 0 and a[1] + a[3] == 0


def classify_ribbon_family(P) -> tuple[bool, str | None]:
    """Match against the known ribbon patterns; returns (matched, pattern name)."""
    a = _params(P)
    if _opposite_pairs_adjacent(a):
        if any(a[i] == 0 and a[(i + 1) % 4] == 0 for i in range(4)):
            return True, "P(0,0,q,-q)"
        return True, "P(p,-p,q,-q)"
    if _opposite_pairs_alternating(a):
        x, y = abs(a[0]), abs(a[1])
        if x == y:
            return True, "P(p,q,-p,-q) with |p|=|q|"
        if min(x, y) == 1:
            return True, "P(p,q,-p,-q) with min(|p|,|q|)=1"
    return False, None


class Verdict(str, enum.Enum):
    RIBBON_FAMILY = "RibbonFamily"
    SLICE_CANDIDATE = "SliceCandidate"
    NOT_SLICE = "NotSlice"
    NEEDS_THEOREM3 = "NeedsTheorem3"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ScreenResult:
    verdict: Verdict
    reason: str
    normalized_form: PretzelParams

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "reason": self.reason,
            "normalized_form": list(self.normalized_form.params),
        }


def _zero_case(a: tuple[int, ...]) -> tuple[Verdict, str]:
    evens = [i for i, t in enumerate(a) if t % 2 == 0]
    if any(a[i] != 0 for i in evens):
        return Verdict.NOT_SLICE, "zero_parameter:nonzero_linking_number"
    n, m = (a[i] for i in range(4) if i not in evens)
    adjacent = (evens[1] - evens[0]) % 4 in (1, 3)
    if adjacent:
        # unknot split from T(2,n) # T(2,m); slice iff signature vanishes
        if n == -m or (abs(n) == 1 and abs(m) == 1):
            return Verdict.SLICE_CANDIDATE, "zero_parameter:connected_sum_cancels"
        return Verdict.NOT_SLICE, "zero_parameter:connected_sum_signature"
    # split union T(2,n) and T(2,m)
    if abs(n) == 1 and abs(m) == 1:
        return Verdict.SLICE_CANDIDATE, "zero_parameter:split_unlink"
    return Verdict.NOT_SLICE, "zero_parameter:split_torus_knots"


def _multiset_cancels_with_unit(a: Iterable[int]) -> bool:
    """Multiset equal to {p, -p, 1, -1}: the +-1 boxes may sit anywhere up to isotopy."""
    c = Counter(a)
    if c[1] < 1 or c[-1] < 1:
        return False
    c[1] -= 1
    c[-1] -= 1
    rest = sorted(c.elements())
    return rest[0] == -rest[1]


def slice_screen(P) -> ScreenResult:
    """Decide which branch of the 2-component pretzel sliceness argument applies."""
    P = P if isinstance(P, PretzelParams) else PretzelParams.of(P)
    a = P.params
    if component_count(a) != 2:
        raise ValueError(f"{P} has {component_count(a)} components, expected 2")
    norm = normalize(a)

    def out(verdict: Verdict, reason: str) -> ScreenResult:
        if verdict is Verdict.SLICE_CANDIDATE and classify_ribbon_family(a)[0]:
            verdict = Verdict.RIBBON_FAMILY
        return ScreenResult(verdict, reason, norm)

    if 0 in a:
        verdict, reason = _zero_case(a)
        return ScreenResult(verdict, reason, norm)

    units = sum(1 for t in a if abs(t) == 1)
    if units == 1:
        return out(Verdict.NOT_SLICE, "one_unit_parameter:three_exceptional_fibers")
    if units >= 2:
        if _multiset_cancels_with_unit(a):
            return out(Verdict.SLICE_CANDIDATE, "unit_parameters:two_bridge_unlink")
        return out(Verdict.NOT_SLICE, "unit_parameters:two_bridge_not_unlink")

    S = sigma2_seifert(a)
    if not is_complementary_family(S):
        return out(Verdict.NOT_SLICE, "sigma2:not_complementary")
    if euler_number(S) != 0:
        return out(Verdict.NOT_SLICE, "sigma2:euler_number_nonzero")
    if _opposite_pairs_adjacent(a):
        return out(Verdict.SLICE_CANDIDATE, "sigma2:form_p_-p_q_-q")
    if not _opposite_pairs_alternating(a):
        # complementary with zero Euler number always comes from {p,-p,q,-q}
        raise AssertionError(f"unexpected Seifert data for {P}")
    x, y = sorted((abs(a[0]), abs(a[1])))
    if (x + y) % 2:
        return out(Verdict.NOT_SLICE, "form_p_q_-p_-q:torus_knot_components")
    return ScreenResult(Verdict.NEEDS_THEOREM3, f"form_p_q_-p_-q:odd_pair:{x},{y}", norm)


def lattice_target_pair(P) -> tuple[int, int] | None:
    """(p, q) with 1 < p < q odd if ``P`` is isotopic to P(p, q, -p, -q) in that range."""
    a = _params(P)
    if 0 in a or not _opposite_pairs_alternating(a):
        return None
    x, y = sorted((abs(a[0]), abs(a[1])))
    if 1 < x < y and x % 2 and y % 2:
        return x, y
    return None
