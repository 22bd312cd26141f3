"""Words over the generators x0, x1, x2, ..., a, b.

Grammar::

    word   := letter*
    letter := base ("^" signed-integer)?
    base   := "x" natural | "a" | "b"

Letters are read left to right in application order (maps act on the
right), so ``"x0 x1"`` means "apply x0, then x1".  ``a`` is x0^2 and ``b`` is
x1 x2^-1, and xn = x0^(-n+1) x1 x0^(n-1) for n >= 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from . import plmap, treepair
from .dyadic import Dyadic
from .plmap import UNIT, PLMap

__all__ = [
    "Letter",
    "Word",
    "WordSyntaxError",
    "parse",
    "generator_map",
    "eval_word",
    "eval_word_treepair",
    "is_trivial",
    "X0_MAP",
    "X1_MAP",
]

X0_MAP = plmap.make(
    UNIT, [(0, 0), (Dyadic(1, 2), Dyadic(1, 1)), (Dyadic(1, 1), Dyadic(3, 2)), (1, 1)]
)
X1_MAP = plmap.make(
    UNIT,
    [
        (0, 0),
        (Dyadic(1, 1), Dyadic(1, 1)),
        (Dyadic(5, 3), Dyadic(3, 2)),
        (Dyadic(3, 2), Dyadic(7, 3)),
        (1, 1),
    ],
)


class WordSyntaxError(ValueError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class Letter:
    base: str  # "x<n>", "a" or "b"
    exp: int = 1

    def __post_init__(self):
        if self.exp == 0:
            raise ValueError("letter exponent must be nonzero")
        if not (self.base in ("a", "b") or re.fullmatch(r"x\d+", self.base)):
            raise ValueError(f"bad generator {self.base!r}")

    @property
    def index(self) -> int | None:
        return int(self.base[1:]) if self.base[0] == "x" else None

    def __str__(self):
        return self.base if self.exp == 1 else f"{self.base}^{self.exp}"


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    def __str__(self):
        return " ".join(map(str, self.letters))

    def __len__(self):
        return sum(abs(l.exp) for l in self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(Letter(l.base, -l.exp) for l in reversed(self.letters)))

    def reduced(self) -> "Word":
        """Merge adjacent letters with the same base, dropping zero exponents."""
        out: list[Letter] = []
        for l in self.letters:
            if out and out[-1].base == l.base:
                e = out[-1].exp + l.exp
                out.pop()
                if e:
                    out.append(Letter(l.base, e))
            else:
                out.append(l)
        return Word(tuple(out))

    @classmethod
    def of(cls, *pairs) -> "Word":
        return cls(tuple(Letter(b, e) for b, e in pairs))


_TOKEN = re.compile(r"\s*(?:(x)(\d+)?|(a)|(b))(?:\^([+-]?\d+))?")


def parse(text: str) -> Word:
    letters = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordSyntaxError("unexpected character", text, pos)
        if m.group(1) and m.group(2) is None:
            raise WordSyntaxError("missing generator index after 'x'", text, pos)
        base = f"x{int(m.group(2))}" if m.group(1) else (m.group(3) or m.group(4))
        end = m.end()
        if end < n and text[end] == "^":
            raise WordSyntaxError("bad exponent", text, end)
        exp = int(m.group(5)) if m.group(5) is not None else 1
        if exp == 0:
            raise WordSyntaxError("zero exponent", text, pos)
        letters.append(Letter(base, exp))
        pos = end
    return Word(tuple(letters))


@lru_cache(maxsize=None)
def generator_map(n: int) -> PLMap:
    """The map of x_n."""
    if n < 0:
        raise ValueError("generator index must be >= 0")
    if n == 0:
        return X0_MAP
    if n == 1:
        return X1_MAP
    return plmap.conjugate(X1_MAP, plmap.power(X0_MAP, n - 1))


@lru_cache(maxsize=None)
def _base_map(base: str) -> PLMap:
    if base == "a":
        return plmap.power(X0_MAP, 2)
    if base == "b":
        return plmap.compose(X1_MAP, plmap.inverse(generator_map(2)))
    return generator_map(int(base[1:]))


@lru_cache(maxsize=1024)
def letter_map(l: Letter) -> PLMap:
    return plmap.power(_base_map(l.base), l.exp)


def eval_word(w: Word | str) -> PLMap:
    if isinstance(w, str):
        w = parse(w)
    f = plmap.identity(UNIT)
    for l in w:
        f = plmap.compose(f, letter_map(l))
    return f


def is_trivial(w: Word | str) -> bool:
    return eval_word(w).is_identity


def expand_x01(w: Word) -> list[tuple[int, int]]:
    """Rewrite w as a sequence of (0|1, +-1) steps in x0, x1."""
    out: list[tuple[int, int]] = []

    def emit(seq: Iterable[tuple[int, int]], e: int):
        seq = list(seq)
        if e < 0:
            seq = [(g, -s) for g, s in reversed(seq)]
        for _ in range(abs(e)):
            out.extend(seq)

    for l in w:
        if l.base == "a":
            emit([(0, 1), (0, 1)], l.exp)
        elif l.base == "b":
            # x1 x2^-1 = x1 x0^-1 x1^-1 x0
            emit([(1, 1), (0, -1), (1, -1), (0, 1)], l.exp)
        else:
            n = l.index
            if n == 0:
                emit([(0, 1)], l.exp)
            else:
                emit([(0, -1)] * (n - 1) + [(1, 1)] + [(0, 1)] * (n - 1), l.exp)
    return out


def eval_word_treepair(w: Word | str) -> treepair.TreePair:
    """Evaluate w by multiplying tree-pair diagrams of x0^{+-1}, x1^{+-1}."""
    if isinstance(w, str):
        w = parse(w)
    gens = {
        (0, 1): treepair.X0,
        (0, -1): treepair.inverse(treepair.X0),
        (1, 1): treepair.X1,
        (1, -1): treepair.inverse(treepair.X1),
    }
    p = treepair.IDENTITY
    for step in expand_x01(w):
        p = treepair.multiply(p, gens[step])
    return p
