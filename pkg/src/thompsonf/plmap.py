"""Piecewise-linear dyadic homeomorphisms of a closed interval.

A :class:`PLMap` is stored as its canonical breakpoint list: the first and
last points are the fixed endpoints of the domain, both coordinates strictly
increase, every segment has slope ``2**s`` and adjacent segments have
different slopes.  Two maps are equal iff their point tuples are equal.

Maps act on the right, so ``compose(f, g)`` is ``x -> (x f) g``.

Membership in PL2^>(J), the maps with ``x f > x`` on the open interval, is
decided from the breakpoints alone.  On each segment ``f - id`` is linear, so
it is positive on the open interval iff it is positive at every interior
breakpoint and positive just inside each endpoint.  At the endpoints
``f - id`` vanishes, so "positive just inside" means the initial slope
exponent is > 0 and the final one is < 0.
"""

from __future__ import annotations

import csv
import io
import json
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .dyadic import ONE, ZERO, Dyadic, to_dyadic

__all__ = [
    "Interval",
    "PLMap",
    "PLMapError",
    "BadEndpoints",
    "NotMonotone",
    "SlopeNotPowerOfTwo",
    "OutOfDomain",
    "DomainMismatch",
    "NotInvariant",
    "UNIT",
    "make",
    "identity",
    "evaluate",
    "compose",
    "inverse",
    "equal",
    "support",
    "slope_right",
    "slope_left",
    "conjugate",
    "commutes",
    "restrict",
    "is_ge_identity",
    "is_gt_identity_interior",
    "abelianize",
    "power",
    "image_of_support",
    "supports_disjoint",
]


class PLMapError(ValueError):
    pass


class BadEndpoints(PLMapError):
    pass


class NotMonotone(PLMapError):
    pass


class SlopeNotPowerOfTwo(PLMapError):
    pass


class OutOfDomain(PLMapError):
    pass


class DomainMismatch(PLMapError):
    pass


class NotInvariant(PLMapError):
    pass


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lo, hi]``; also used for the open intervals of a support set.

    Support endpoints can be non-dyadic rationals (a segment of slope 4 may
    cross the diagonal at 1/3, say), so ``lo``/``hi`` accept Fractions too.
    """

    lo: Dyadic | Fraction
    hi: Dyadic | Fraction

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __iter__(self):
        yield self.lo
        yield self.hi

    def __str__(self):
        return f"[{_fmt(self.lo)}, {_fmt(self.hi)}]"

    def open_str(self) -> str:
        return f"({_fmt(self.lo)}, {_fmt(self.hi)})"

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi


def _fmt(x) -> str:
    if isinstance(x, Dyadic):
        return x.frac_str()
    return str(x)


UNIT = Interval(ZERO, ONE)


def _slope_exp(dx: Dyadic, dy: Dyadic) -> int | None:
    """``s`` with ``dy == 2**s * dx`` (both positive), or None if no such s."""
    a = dy.num << dx.exp
    b = dx.num << dy.exp
    ta = (a & -a).bit_length() - 1
    tb = (b & -b).bit_length() - 1
    if a >> ta != b >> tb:
        return None
    return ta - tb


class PLMap:
    __slots__ = ("domain", "points", "xs", "ys", "slopes", "__dict__")

    def __init__(self, domain: Interval, points: tuple, slopes: tuple):
        # trusted constructor; use make() for validated input
        self.domain = domain
        self.points = points
        self.xs = tuple(p[0] for p in points)
        self.ys = tuple(p[1] for p in points)
        self.slopes = slopes

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return self.domain == other.domain and self.points == other.points

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash(self.points)

    def __repr__(self):
        return f"PLMap({self.render()})"

    def __mul__(self, other):
        return compose(self, other)

    def __invert__(self):
        return inverse(self)

    def __pow__(self, n: int):
        return power(self, n)

    def __call__(self, x):
        return evaluate(self, x)

    @property
    def is_identity(self) -> bool:
        return len(self.points) == 2

    @cached_property
    def key(self) -> tuple:
        """Hashable, order-comparable normal form used for dedup and sorting."""
        return tuple((x.num, x.exp, y.num, y.exp) for x, y in self.points)

    def breakpoints(self) -> list:
        """Interior points where the slope changes."""
        return list(self.points[1:-1])

    def render(self, fraction_style: bool = True) -> str:
        f = (lambda d: d.frac_str()) if fraction_style else str
        return " ".join(f"{f(x)}:{f(y)}" for x, y in self.points)

    def to_json(self) -> dict:
        return {
            "domain": [str(self.domain.lo), str(self.domain.hi)],
            "points": [[str(x), str(y)] for x, y in self.points],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "y"])
        for x, y in self.points:
            w.writerow([str(x), str(y)])
        return buf.getvalue()

    @classmethod
    def from_json(cls, data) -> "PLMap":
        if isinstance(data, str):
            data = json.loads(data)
        lo, hi = (Dyadic.parse(s) for s in data["domain"])
        pts = [(Dyadic.parse(x), Dyadic.parse(y)) for x, y in data["points"]]
        return make(Interval(lo, hi), pts)

    @classmethod
    def parse(cls, text: str, domain: Interval | None = None) -> "PLMap":
        """Parse ``"x:y x:y ..."`` (commas also accepted as separators)."""
        pts = []
        for tok in text.replace(",", " ").split():
            x, sep, y = tok.partition(":")
            if not sep:
                raise ValueError(f"expected x:y pair, got {tok!r}")
            pts.append((Dyadic.parse(x), Dyadic.parse(y)))
        if len(pts) < 2:
            raise BadEndpoints("need at least the two endpoints")
        if domain is None:
            domain = Interval(pts[0][0], pts[-1][0])
        return make(domain, pts)


def _build(domain: Interval, pts: Sequence[tuple]) -> PLMap:
    """Canonicalize a validated, strictly increasing point list."""
    out = [pts[0]]
    slopes = []
    for p in pts[1:]:
        x0, y0 = out[-1]
        s = _slope_exp(p[0] - x0, p[1] - y0)
        if s is None:
            raise SlopeNotPowerOfTwo(f"slope between {x0}:{y0} and {p[0]}:{p[1]} is not a power of two")
        if slopes and slopes[-1] == s:
            out[-1] = p
        else:
            out.append(p)
            slopes.append(s)
    return PLMap(domain, tuple(out), tuple(slopes))


def make(domain: Interval, points: Iterable) -> PLMap:
    """Validated constructor; drops collinear interior points."""
    pts = [(to_dyadic(x), to_dyadic(y)) for x, y in points]
    lo, hi = domain.lo, domain.hi
    if not isinstance(lo, Dyadic) or not isinstance(hi, Dyadic):
        raise BadEndpoints("domain endpoints must be dyadic")
    if len(pts) < 2 or pts[0] != (lo, lo) or pts[-1] != (hi, hi):
        raise BadEndpoints(f"map must fix the endpoints {lo} and {hi}")
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if not (x0 < x1 and y0 < y1):
            raise NotMonotone(f"points {x0}:{y0} and {x1}:{y1} are not strictly increasing")
    return _build(domain, pts)


def identity(domain: Interval = UNIT) -> PLMap:
    return PLMap(domain, ((domain.lo, domain.lo), (domain.hi, domain.hi)), (0,))


def _check_same_domain(f: PLMap, g: PLMap):
    if f.domain != g.domain:
        raise DomainMismatch(f"domains {f.domain} and {g.domain} differ")


def _segment_right(f: PLMap, x) -> int:
    """Index i of the segment [x_i, x_{i+1}] containing x (rightmost if x is a breakpoint)."""
    i = bisect_right(f.xs, x) - 1
    return min(i, len(f.slopes) - 1)


def evaluate(f: PLMap, x) -> Dyadic:
    """Image ``x f``; also accepts Fraction arguments (returns a Fraction then)."""
    if isinstance(x, (int, str)):
        x = to_dyadic(x)
    if not f.domain.contains(x):
        raise OutOfDomain(f"{x} is outside {f.domain}")
    i = _segment_right(f, x)
    x0, y0 = f.points[i]
    s = f.slopes[i]
    d = x - x0
    if isinstance(d, Dyadic):
        return y0 + d.scale2(s)
    return y0 + d * Fraction(2) ** s


def _eval_dyadic(f: PLMap, x: Dyadic) -> Dyadic:
    # unchecked fast path for in-domain dyadic arguments
    i = min(bisect_right(f.xs, x) - 1, len(f.slopes) - 1)
    x0, y0 = f.points[i]
    return y0 + (x - x0).scale2(f.slopes[i])


def preimage(f: PLMap, y) -> Dyadic:
    if not f.domain.contains(y):
        raise OutOfDomain(f"{y} is outside {f.domain}")
    i = min(bisect_right(f.ys, y) - 1, len(f.slopes) - 1)
    x0, y0 = f.points[i]
    d = y - y0
    if isinstance(d, Dyadic):
        return x0 + d.scale2(-f.slopes[i])
    return x0 + d * Fraction(2) ** (-f.slopes[i])


def compose(f: PLMap, g: PLMap) -> PLMap:
    """The product ``fg``: first f, then g."""
    _check_same_domain(f, g)
    if g.is_identity:
        return f
    if f.is_identity:
        return g
    # breakpoints of fg: those of f, plus f-preimages of those of g
    xs = set(f.xs)
    for y in g.xs[1:-1]:
        xs.add(preimage(f, y))
    pts = [(x, _eval_dyadic(g, _eval_dyadic(f, x))) for x in sorted(xs)]
    return _build(f.domain, pts)


def inverse(f: PLMap) -> PLMap:
    return PLMap(f.domain, tuple((y, x) for x, y in f.points), tuple(-s for s in f.slopes))


def power(f: PLMap, n: int) -> PLMap:
    if n < 0:
        f, n = inverse(f), -n
    result = identity(f.domain)
    while n:
        if n & 1:
            result = compose(result, f)
        n >>= 1
        if n:
            f = compose(f, f)
    return result


def equal(f: PLMap, g: PLMap) -> bool:
    _check_same_domain(f, g)
    return f.points == g.points


def _crossing(x0, y0, x1, y1):
    """Point strictly inside the segment where it meets the diagonal, else None."""
    d0 = y0 - x0
    d1 = y1 - x1
    if (d0 > 0) == (d1 > 0) or d0 == 0 or d1 == 0:
        return None
    # f - id is linear on the segment: x = x0 + d0 (x1 - x0) / (d0 - d1)
    x = x0.to_fraction() + d0.to_fraction() * (x1 - x0).to_fraction() / (d0 - d1).to_fraction()
    if x.denominator & (x.denominator - 1) == 0:
        return Dyadic.from_fraction(x)
    return x


def support(f: PLMap) -> list[Interval]:
    """Maximal open intervals moved by f, in increasing order."""
    out = []
    start = None
    for (x0, y0), (x1, y1) in zip(f.points, f.points[1:]):
        if y0 == x0 and y1 != x1:
            start = x0
        c = _crossing(x0, y0, x1, y1)
        if c is not None:
            out.append(Interval(start, c))
            start = c
        if y1 == x1 and start is not None:
            out.append(Interval(start, x1))
            start = None
    return out


def supports_disjoint(f: PLMap, g: PLMap) -> bool:
    sf, sg = support(f), support(g)
    i = j = 0
    while i < len(sf) and j < len(sg):
        if sf[i].hi <= sg[j].lo:
            i += 1
        elif sg[j].hi <= sf[i].lo:
            j += 1
        else:
            return False
    return True


def image_of_support(f: PLMap, intervals: Sequence[Interval]) -> list[Interval]:
    """Apply f to each interval of a support set; f is increasing so order is kept."""
    return [Interval(evaluate(f, iv.lo), evaluate(f, iv.hi)) for iv in intervals]


def slope_right(f: PLMap, x) -> int:
    """Exponent s of the slope 2**s just to the right of x."""
    x = to_dyadic(x) if isinstance(x, (int, str)) else x
    if not (f.domain.lo <= x < f.domain.hi):
        raise OutOfDomain(f"no right slope at {x} in {f.domain}")
    return f.slopes[bisect_right(f.xs, x) - 1]


def slope_left(f: PLMap, x) -> int:
    x = to_dyadic(x) if isinstance(x, (int, str)) else x
    if not (f.domain.lo < x <= f.domain.hi):
        raise OutOfDomain(f"no left slope at {x} in {f.domain}")
    return f.slopes[bisect_left(f.xs, x) - 1]


def conjugate(f: PLMap, g: PLMap) -> PLMap:
    """``g^-1 f g``; its support is ``support(f) g``."""
    _check_same_domain(f, g)
    return compose(compose(inverse(g), f), g)


def commutes(f: PLMap, g: PLMap) -> bool:
    return equal(compose(f, g), compose(g, f))


def restrict(f: PLMap, J: Interval) -> PLMap:
    """Restriction of f to an invariant subinterval J (endpoints must be fixed)."""
    lo, hi = J.lo, J.hi
    if not (f.domain.lo <= lo and hi <= f.domain.hi):
        raise OutOfDomain(f"{J} is not inside {f.domain}")
    if evaluate(f, lo) != lo or evaluate(f, hi) != hi:
        raise NotInvariant(f"{J} is not invariant: endpoints map to {evaluate(f, lo)}, {evaluate(f, hi)}")
    i = bisect_right(f.xs, lo)
    j = bisect_left(f.xs, hi)
    pts = [(lo, lo)] + list(f.points[i:j]) + [(hi, hi)]
    return _build(J, pts)


def is_ge_identity(f: PLMap) -> bool:
    return all(y >= x for x, y in f.points)


def is_gt_identity_interior(f: PLMap) -> bool:
    return f.slopes[0] > 0 and f.slopes[-1] < 0 and all(y > x for x, y in f.points[1:-1])


def abelianize(f: PLMap) -> tuple[int, int]:
    """(initial, final) slope exponents; a homomorphism onto Z^2 for maps of [0,1]."""
    return f.slopes[0], f.slopes[-1]
