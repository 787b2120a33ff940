"""Values of the center-selection functions and their total order.

A single component lives in T = {inf} | (Q x Z) | Gamma with inf greatest
and every (Q x Z) pair above every Gamma element.  Composite values are
fixed-length tuples of components, compared lexicographically; the length
equals the ambient dimension of the resolution they belong to.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


def _strip_zeros(t):
    t = tuple(t)
    while t and t[-1] == 0:
        t = t[:-1]
    return t


@total_ordering
class TComponent:
    """One entry of a composite invariant value."""

    __slots__ = ("rank", "data")

    def __init__(self, rank: int, data: tuple):
        self.rank = rank  # 2 = inf, 1 = (Q x Z), 0 = Gamma
        self.data = data

    # -- constructors

    @staticmethod
    def inf() -> "TComponent":
        return _INF

    @staticmethod
    def pair(q, n: int) -> "TComponent":
        return TComponent(1, (Fraction(q), int(n)))

    @staticmethod
    def gamma(p: int, omega, indices) -> "TComponent":
        return TComponent(0, (int(p), Fraction(omega), _strip_zeros(indices)))

    # -- queries

    @property
    def is_inf(self) -> bool:
        return self.rank == 2

    @property
    def is_pair(self) -> bool:
        return self.rank == 1

    @property
    def is_gamma(self) -> bool:
        return self.rank == 0

    def _key(self):
        if self.rank == 2:
            return (2,)
        if self.rank == 1:
            return (1, self.data[0], self.data[1])
        p, omega, idx = self.data
        return (0, -p, omega, _ZSeq(idx))

    def __eq__(self, other):
        if not isinstance(other, TComponent):
            return NotImplemented
        return self.rank == other.rank and self.data == other.data

    def __lt__(self, other):
        if not isinstance(other, TComponent):
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash((self.rank, self.data))

    def __repr__(self):
        if self.rank == 2:
            return "inf"
        if self.rank == 1:
            q, n = self.data
            return f"({q},{n})"
        p, w, idx = self.data
        return f"(-{p},{w},{list(idx)})"

    def to_json(self):
        if self.rank == 2:
            return "inf"
        if self.rank == 1:
            q, n = self.data
            return [f"{q.numerator}/{q.denominator}", n]
        p, w, idx = self.data
        return [-p, f"{w.numerator}/{w.denominator}", list(idx)]


class _ZSeq:
    """Zero-padded lexicographic comparison for Z^N index tuples."""

    __slots__ = ("t",)

    def __init__(self, t):
        self.t = t

    def __eq__(self, other):
        return self.t == other.t

    def __lt__(self, other):
        a, b = self.t, other.t
        for i in range(max(len(a), len(b))):
            x = a[i] if i < len(a) else 0
            y = b[i] if i < len(b) else 0
            if x != y:
                return x < y
        return False

    def __gt__(self, other):
        return other.__lt__(self)

    def __le__(self, other):
        return not other.__lt__(self)

    def __ge__(self, other):
        return not self.__lt__(other)


_INF = TComponent(2, ())

INF = _INF


def value_tuple(*components) -> tuple:
    return tuple(components)


def padded(components, length: int) -> tuple:
    """Extend with inf entries up to `length` (used by terminal cases)."""
    components = tuple(components)
    if len(components) > length:
        raise ValueError("too many components")
    return components + (INF,) * (length - len(components))


def smooth_constant(dim: int, subscheme_dim: int) -> tuple:
    """The constant value taken on a regular pure-dimensional subscheme.

    `dim - subscheme_dim` leading (1,0) entries followed by inf entries;
    pinned by direct runs on coordinate subspaces (see driver self-check).
    """
    lead = (TComponent.pair(1, 0),) * (dim - subscheme_dim)
    return padded(lead, dim)


def render_value(value) -> str:
    return "(" + ", ".join(repr(c) for c in value) + ")"


def value_to_json(value) -> list:
    return [c.to_json() for c in value]
