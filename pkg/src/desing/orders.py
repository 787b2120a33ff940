"""Monomial orders: total orders on exponent tuples compatible with product."""

from __future__ import annotations


class MonomialOrder:
    kind = "abstract"

    def key(self, mono):  # pragma: no cover - interface
        raise NotImplementedError

    def __repr__(self):
        return self.kind

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.kind == other.kind

    def __hash__(self):
        return hash(self.kind)


class DegRevLex(MonomialOrder):
    kind = "degrevlex"

    def key(self, mono):
        return (sum(mono), tuple(-e for e in reversed(mono)))


class Lex(MonomialOrder):
    kind = "lex"

    def key(self, mono):
        return mono


class Block(MonomialOrder):
    """Compare degrevlex on the first `split` variables, then on the rest.

    Used for elimination: variables in the first block dominate, so basis
    elements free of them generate the elimination ideal.
    """

    def __init__(self, split: int):
        self.split = split
        self.kind = f"block({split})"

    def key(self, mono):
        head, tail = mono[:self.split], mono[self.split:]
        return (sum(head), tuple(-e for e in reversed(head)),
                sum(tail), tuple(-e for e in reversed(tail)))


class SubsetBlock(MonomialOrder):
    """Degrevlex on a selected variable subset first, then on the rest.

    Reduction in this order rewrites the selected variables in terms of the
    others wherever the generators allow; blow-up charts use it to push old
    coordinates into the new chart coordinates before exact division.
    """

    def __init__(self, selected: tuple):
        self.selected = tuple(sorted(selected))
        self._sel = frozenset(self.selected)
        self.kind = f"subset{self.selected}"

    def key(self, mono):
        head = tuple(mono[i] for i in self.selected)
        rest = tuple(e for i, e in enumerate(mono) if i not in self._sel)
        return (sum(head), tuple(-e for e in reversed(head)),
                sum(rest), tuple(-e for e in reversed(rest)))


DEGREVLEX = DegRevLex()
LEX = Lex()


def block(split: int) -> Block:
    return Block(split)
