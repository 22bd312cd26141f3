"""Z wr Z in normal form and its embedding into F via a = x0^2, b = x1 x2^-1.

An element ``(m, {k: m_k})`` stands for ``a^m * prod_k c_k^{m_k}`` where
``c_k = a^-k b a^k``.  The c_k commute (disjoint supports), and conjugating by
a shifts the index: ``a^-1 c_k a = c_{k+1}``, hence ``c_k a^n = a^n c_{k+n}``.
That fixes the product

    (m, u) (n, v) = (m + n, shift_n(u) + v),   shift_n(u)[k + n] = u[k]

and the inverse ``(m, u)^-1 = (-m, -shift_{-m}(u))``.

The support of c_k is S_k = (1/2 a^k, 1/2 a^{k+1}); these tile (0, 1) and
restricted to its closure c_k has initial slope 2, so ``c_k^l`` has initial
slope 2^l there.  :func:`decompose` reads the exponents off those slopes and
then checks the reconstruction.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from . import plmap
from .dyadic import HALF, ONE, ZERO, Dyadic
from .plmap import UNIT, Interval, PLMap
from .words import eval_word, X0_MAP

__all__ = [
    "WreathElement",
    "NotInWreathSubgroup",
    "IDENTITY",
    "A",
    "B",
    "w_mul",
    "w_inv",
    "w_pow",
    "embed",
    "decompose",
    "support_interval",
    "grid_point",
    "conjugate_generator",
]


class NotInWreathSubgroup(ValueError):
    pass


@dataclass(frozen=True)
class WreathElement:
    shift: int = 0
    coeffs: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        items = self.coeffs.items() if isinstance(self.coeffs, Mapping) else self.coeffs
        clean = tuple(sorted((int(k), int(v)) for k, v in items if v))
        if len({k for k, _ in clean}) != len(clean):
            raise ValueError("duplicate coefficient index")
        object.__setattr__(self, "coeffs", clean)
        object.__setattr__(self, "shift", int(self.shift))

    @classmethod
    def make(cls, shift: int = 0, coeffs: Mapping[int, int] | None = None) -> "WreathElement":
        return cls(shift, tuple((coeffs or {}).items()))

    @property
    def coeff_map(self) -> dict[int, int]:
        return dict(self.coeffs)

    def __mul__(self, other):
        return w_mul(self, other)

    def __invert__(self):
        return w_inv(self)

    def __str__(self):
        body = ", ".join(f"{k}:{v}" for k, v in self.coeffs)
        return f"shift={self.shift}; coeffs={{{body}}}"

    def to_json(self) -> dict:
        return {"shift": self.shift, "coeffs": {str(k): v for k, v in self.coeffs}}

    @classmethod
    def from_json(cls, data) -> "WreathElement":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data.get("shift", 0), tuple((int(k), int(v)) for k, v in data.get("coeffs", {}).items()))

    @classmethod
    def parse(cls, text: str) -> "WreathElement":
        """Parse ``"shift=m; coeffs={k1:m1, k2:m2}"``; either part may be omitted."""
        s = text.strip()
        if s.startswith("{") and '"' in s:
            return cls.from_json(s)
        shift = 0
        coeffs: dict[int, int] = {}
        for part in filter(None, (p.strip() for p in s.split(";"))):
            key, sep, val = part.partition("=")
            key = key.strip()
            if not sep:
                raise ValueError(f"expected key=value in {part!r}")
            if key == "shift":
                shift = int(val)
            elif key == "coeffs":
                m = re.fullmatch(r"\s*\{(.*)\}\s*", val)
                if not m:
                    raise ValueError(f"coeffs must be braced: {val!r}")
                for item in filter(None, (i.strip() for i in m.group(1).split(","))):
                    k, sep, v = item.partition(":")
                    if not sep:
                        raise ValueError(f"expected k:m in {item!r}")
                    k = int(k)
                    if k in coeffs:
                        raise ValueError(f"duplicate index {k}")
                    coeffs[k] = int(v)
            else:
                raise ValueError(f"unknown field {key!r}")
        return cls.make(shift, coeffs)


IDENTITY = WreathElement()
A = WreathElement(1)
B = WreathElement(0, ((0, 1),))


def conjugate_generator(k: int, power: int = 1) -> WreathElement:
    """The element a^-k b^power a^k."""
    return WreathElement(0, ((k, power),))


def w_mul(u: WreathElement, v: WreathElement) -> WreathElement:
    n = v.shift
    coeffs = {k + n: c for k, c in u.coeffs}
    for k, c in v.coeffs:
        coeffs[k] = coeffs.get(k, 0) + c
    return WreathElement(u.shift + n, tuple(coeffs.items()))


def w_inv(u: WreathElement) -> WreathElement:
    m = u.shift
    return WreathElement(-m, tuple((k - m, -c) for k, c in u.coeffs))


def w_pow(u: WreathElement, n: int) -> WreathElement:
    if n < 0:
        u, n = w_inv(u), -n
    out = IDENTITY
    for _ in range(n):
        out = w_mul(out, u)
    return out


@lru_cache(maxsize=None)
def _a_power(n: int) -> PLMap:
    return plmap.power(X0_MAP, 2 * n)


@lru_cache(maxsize=None)
def _b_power(n: int) -> PLMap:
    return plmap.power(eval_word("b"), n)


@lru_cache(maxsize=4096)
def _c_power(k: int, n: int) -> PLMap:
    # a^-k b^n a^k
    return plmap.conjugate(_b_power(n), _a_power(k))


def embed(u: WreathElement) -> PLMap:
    f = _a_power(u.shift)
    for k, c in u.coeffs:
        f = plmap.compose(f, _c_power(k, c))
    return f


@lru_cache(maxsize=None)
def grid_point(k: int) -> Dyadic:
    """1/2 x0^{2k}: the common endpoint of the closures of S_{k-1} and S_k."""
    if k == 0:
        return HALF
    if k > 0:
        return plmap.evaluate(_a_power(1), grid_point(k - 1))
    return plmap.evaluate(_a_power(-1), grid_point(k + 1))


def support_interval(k: int) -> Interval:
    """S_k, the support of a^-k b a^k."""
    return Interval(grid_point(k), grid_point(k + 1))


def _grid_index(p) -> int | None:
    """k with grid_point(k) == p, or None."""
    if not (ZERO < p < ONE):
        return None
    k = 0
    if p >= HALF:
        while grid_point(k) < p:
            k += 1
    else:
        while grid_point(k) > p:
            k -= 1
    return k if grid_point(k) == p else None


def decompose(f: PLMap) -> WreathElement:
    """Recover the normal form of f, or raise NotInWreathSubgroup."""
    if f.domain != UNIT:
        raise NotInWreathSubgroup(f"domain {f.domain} is not [0,1]")
    s0 = plmap.slope_right(f, ZERO)
    if s0 % 2:
        raise NotInWreathSubgroup(f"initial slope 2^{s0} is not a power of 4")
    m = s0 // 2
    base = plmap.compose(_a_power(-m), f)
    coeffs = {}
    for iv in plmap.support(base):
        k = _grid_index(iv.lo)
        if k is None or grid_point(k + 1) != iv.hi:
            raise NotInWreathSubgroup(f"support component {iv.open_str()} is not one of the S_k")
        coeffs[k] = plmap.slope_right(base, iv.lo)
    u = WreathElement.make(m, coeffs)
    if embed(u) != f:
        raise NotInWreathSubgroup(f"reconstruction from {u} does not match")
    return u
