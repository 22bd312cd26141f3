"""Exact checks of the wreath-product embedding and desk-scale centralizer evidence.

Every ``verify_*``/``check_*`` function returns a :class:`Report`; a failing
check is an outcome, not an exception.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from . import plmap, wreath
from .dyadic import HALF, ONE
from .plmap import UNIT, PLMap
from .words import Letter, Word, X0_MAP, X1_MAP, eval_word

__all__ = [
    "Report",
    "BallEntry",
    "CapExceeded",
    "GENERATORS",
    "max_radius",
    "verify_lemma1",
    "verify_claim",
    "verify_relations",
    "enumerate_ball",
    "centralizer_in_ball",
    "check_x0_centralizer",
    "check_base_centralizer",
    "commutator_word",
]

DEFAULT_MAX_RADIUS = 10


class CapExceeded(ValueError):
    pass


def max_radius() -> int:
    return int(os.environ.get("THOMPSONF_MAX_RADIUS", DEFAULT_MAX_RADIUS))


@dataclass
class Report:
    check: str
    params: dict
    passed: bool
    counterexample: Any = None
    elapsed_ms: float = 0.0
    details: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.passed and self.counterexample is not None:
            raise ValueError("a passing report carries no counterexample")

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        ce = self.counterexample
        if ce is not None and not isinstance(ce, (int, str)):
            ce = str(ce)
        return {
            "check": self.check,
            "params": self.params,
            "pass": self.passed,
            "counterexample": ce,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }

    def render(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        line = f"{self.check}({params}): {'PASS' if self.passed else 'FAIL'} [{self.elapsed_ms:.1f} ms]"
        if self.counterexample is not None:
            line += f"\n  counterexample: {self.counterexample}"
        for d in self.details:
            line += f"\n  {d}"
        return line


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.t0) * 1000.0


def commutator_word(n: int) -> Word:
    """[b, a^-n b a^n] = b^-1 a^-n b^-1 a^n b a^-n b a^n, with zero powers dropped."""
    letters = [("b", -1), ("a", -n), ("b", -1), ("a", n), ("b", 1), ("a", -n), ("b", 1), ("a", n)]
    return Word(tuple(Letter(g, e) for g, e in letters if e))


def verify_relations(nmax: int = 20) -> Report:
    with _Timer() as t:
        bad = None
        for n in range(-nmax, nmax + 1):
            if not eval_word(commutator_word(n)).is_identity:
                bad = n
                break
        # negative control: x0 and x1 do not commute
        control = plmap.commutes(X0_MAP, X1_MAP)
    details = [f"negative control [x0, x1] != 1: {'ok' if not control else 'BROKEN'}"]
    if bad is None and control:
        bad = "negative control [x0, x1] evaluated to the identity"
    return Report("relations", {"nmax": nmax}, bad is None, bad, t.ms, details)


def verify_lemma1(kmax: int = 20) -> Report:
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    with _Timer() as t:
        problem = None
        supports = {}
        for k in range(-kmax, kmax + 1):
            sup = plmap.support(wreath.embed(wreath.conjugate_generator(k)))
            if sup != [wreath.support_interval(k)]:
                problem = (k, f"support of a^-k b a^k is {[iv.open_str() for iv in sup]}")
                break
            supports[k] = sup[0]
        if problem is None:
            for k in range(-kmax, kmax):
                s, s1 = supports[k], supports[k + 1]
                # open intervals disjoint, closures share exactly one point
                if s.hi != s1.lo:
                    problem = (k, f"S_{k} and S_{k + 1} do not abut")
                    break
                # distances to 0 and to 1 at least halve at each step outward
                if k < 0 and not (s.lo <= s1.lo * HALF):
                    problem = (k, "left endpoints do not halve toward 0")
                    break
                if k >= 0 and not (ONE - s1.hi <= (ONE - s.hi) * HALF):
                    problem = (k, "right endpoints do not halve toward 1")
                    break
        if problem is None:
            lo = plmap.evaluate(plmap.power(X0_MAP, -2 * kmax), HALF)
            hi = plmap.evaluate(plmap.power(X0_MAP, 2 * kmax + 2), HALF)
            if (supports[-kmax].lo, supports[kmax].hi) != (lo, hi):
                problem = (kmax, "closures do not tile [1/2 x0^-2K, 1/2 x0^(2K+2)]")
    details = []
    if problem is None:
        details.append(f"tile = [{supports[-kmax].lo.frac_str()}, {supports[kmax].hi.frac_str()}]")
    else:
        details.append(problem[1])
    return Report("lemma1", {"kmax": kmax}, problem is None,
                  None if problem is None else problem[0], t.ms, details)


def verify_claim(kmax: int = 20) -> Report:
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    with _Timer() as t:
        bad = None
        for k in range(-kmax, kmax + 1):
            s = wreath.support_interval(k)
            g = plmap.restrict(wreath.embed(wreath.conjugate_generator(k)), s)
            if not plmap.is_gt_identity_interior(g) or plmap.slope_right(g, s.lo) != 1:
                bad = k
                break
    return Report("claim", {"kmax": kmax}, bad is None, bad, t.ms)


@dataclass(frozen=True)
class BallEntry:
    map: PLMap
    witness: Word


GENERATORS = (Letter("x0", 1), Letter("x0", -1), Letter("x1", 1), Letter("x1", -1))
_GEN_MAPS = (X0_MAP, plmap.inverse(X0_MAP), X1_MAP, plmap.inverse(X1_MAP))


def _check_cap(radius: int):
    cap = max_radius()
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if radius > cap:
        raise CapExceeded(f"radius {radius} exceeds the cap {cap} (set THOMPSONF_MAX_RADIUS to raise it)")


def enumerate_ball(radius: int) -> list[BallEntry]:
    """All elements of word length <= radius over x0^+-1, x1^+-1.

    Breadth-first over the Cayley graph.  Each frontier is kept sorted by
    witness, so the first word to reach an element is its lexicographically
    least shortest word (letter order x0, x0^-1, x1, x1^-1).
    """
    _check_cap(radius)
    ident = plmap.identity(UNIT)
    seen = {ident.key}
    entries = [BallEntry(ident, Word())]
    frontier = [((), ident)]
    for _ in range(radius):
        nxt = []
        for idx, f in frontier:
            for j, g in enumerate(_GEN_MAPS):
                # skip free cancellations
                if idx and idx[-1] ^ 1 == j:
                    continue
                h = plmap.compose(f, g)
                if h.key in seen:
                    continue
                seen.add(h.key)
                nxt.append((idx + (j,), h))
        frontier = nxt
        entries.extend(BallEntry(h, Word(tuple(GENERATORS[j] for j in idx))) for idx, h in nxt)
    return entries


def centralizer_in_ball(radius: int, targets: Iterable[PLMap], ball: Sequence[BallEntry] | None = None) -> list[BallEntry]:
    targets = list(targets)
    if ball is None:
        ball = enumerate_ball(radius)
    return [e for e in ball if all(plmap.commutes(e.map, t) for t in targets)]


def check_x0_centralizer(radius: int = 8) -> Report:
    """The ball's part of C(x0) is exactly {x0^m : |m| <= radius}."""
    with _Timer() as t:
        ball = enumerate_ball(radius)
        cent = centralizer_in_ball(radius, [X0_MAP], ball)
        powers = {plmap.power(X0_MAP, m).key: m for m in range(-radius, radius + 1)}
        in_ball = {e.map.key for e in ball} & powers.keys()
        extra = [e for e in cent if e.map.key not in powers]
        missing = in_ball - {e.map.key for e in cent}
    ce = None
    if extra:
        ce = str(extra[0].witness)
    elif missing:
        ce = f"x0^{powers[next(iter(missing))]}"
    details = [f"ball size {len(ball)}; centralizer elements {len(cent)}; powers of x0 in ball {len(in_ball)}"]
    return Report("centralizer_x0", {"radius": radius}, ce is None, ce, t.ms, details)


def check_base_centralizer(radius: int = 4, k: int = 3) -> Report:
    """Ball elements commuting with every a^-j b a^j, |j| <= k, are explained.

    Such an f preserves each S_j, and on the closure of S_j it must be a power
    of g_j (at most one element of the centralizer of g_j per initial slope).
    That is checked for every |j| <= k.  If f additionally decomposes as
    (0, coeffs) it is a base-group member; otherwise it moves points outside
    the union of those S_j, which the finite k cannot constrain, and it is
    reported as a truncation artifact.
    """
    with _Timer() as t:
        targets = [wreath.embed(wreath.conjugate_generator(j)) for j in range(-k, k + 1)]
        cent = centralizer_in_ball(radius, targets)
        unexplained = None
        members, artifacts = [], []
        for e in cent:
            ok = True
            for j in range(-k, k + 1):
                s = wreath.support_interval(j)
                try:
                    fj = plmap.restrict(e.map, s)
                except plmap.NotInvariant:
                    ok = False
                    break
                l = plmap.slope_right(fj, s.lo)
                gj = plmap.restrict(wreath.embed(wreath.conjugate_generator(j, l)), s) if l else plmap.identity(s)
                if fj != gj:
                    ok = False
                    break
            if not ok:
                unexplained = e.witness
                break
            try:
                u = wreath.decompose(e.map)
            except wreath.NotInWreathSubgroup:
                u = None
            if u is not None and u.shift == 0:
                members.append((e.witness, u))
            else:
                artifacts.append(e.witness)
    details = [f"{len(cent)} elements commute with all a^-j b a^j, |j| <= {k}"]
    details += [f"member {w or '1'} = {u}" for w, u in members]
    details += [f"truncation artifact {w}: moves points outside S_-{k}..S_{k}" for w in artifacts]
    return Report("centralizer_base", {"radius": radius, "k": k}, unexplained is None,
                  None if unexplained is None else str(unexplained), t.ms, details)


def run_all(kmax: int = 20, nmax: int = 20, radius: int = 8) -> list[Report]:
    return [
        verify_lemma1(kmax),
        verify_claim(kmax),
        verify_relations(nmax),
        check_x0_centralizer(radius),
        check_base_centralizer(min(radius, 6), 3),
    ]


def reports_json(reports: Sequence[Report]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2)
