"""Thompson's group F as dyadic PL maps of [0,1], and the Z wr Z subgroup <x0^2, x1 x2^-1>."""

from .dyadic import Dyadic, log2_exact
from .plmap import Interval, PLMap, UNIT
from .treepair import TreePair
from .words import Word, eval_word, generator_map, parse
from .wreath import WreathElement, decompose, embed, support_interval

__version__ = "0.1.0"
