"""Monomial orders: degrevlex (default), lex, deglex, plus the internal
block order used for one-variable elimination."""

from __future__ import annotations

from .errors import AlgebraError


class MonomialOrder:
    """Total multiplicative well-order on exponent vectors.

    Comparison goes through sort keys: bigger key = bigger monomial.  An
    optional variable permutation reorders exponents before the key is
    formed, so permutation[0] is the most significant variable.
    """

    __slots__ = ("kind", "permutation")

    KINDS = ("degrevlex", "lex", "deglex")

    def __init__(self, kind: str, permutation=None):
        if kind not in self.KINDS:
            raise AlgebraError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.permutation = tuple(permutation) if permutation is not None else None

    def _arrange(self, exps):
        if self.permutation is None:
            return exps
        return tuple(exps[i] for i in self.permutation)

    def key(self, exps):
        a = self._arrange(exps)
        if self.kind == "lex":
            return tuple(a)
        total = sum(a)
        if self.kind == "deglex":
            return (total, tuple(a))
        # degrevlex: higher = smaller reversed-negated tail
        return (total, tuple(-a[i] for i in range(len(a) - 1, -1, -1)))

    def greater(self, m1, m2) -> bool:
        return self.key(m1) > self.key(m2)

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder)
                and other.kind == self.kind
                and other.permutation == self.permutation)

    def __hash__(self):
        return hash((self.kind, self.permutation))

    def __repr__(self):
        if self.permutation is None:
            return f"MonomialOrder({self.kind!r})"
        return f"MonomialOrder({self.kind!r}, {self.permutation})"

    @property
    def name(self) -> str:
        return self.kind


class AuxBlockOrder:
    """Eliminates variable 0: compares its exponent first, then the rest
    under an inner order.  Used only for the intersection construction."""

    __slots__ = ("inner",)

    def __init__(self, inner: MonomialOrder):
        self.inner = inner

    def key(self, exps):
        return (exps[0], self.inner.key(exps[1:]))

    def greater(self, m1, m2) -> bool:
        return self.key(m1) > self.key(m2)

    def __eq__(self, other):
        return isinstance(other, AuxBlockOrder) and other.inner == self.inner

    def __hash__(self):
        return hash(("aux", self.inner))

    @property
    def name(self) -> str:
        return f"eliminate-first+{self.inner.name}"


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")
DEGLEX = MonomialOrder("deglex")

_BY_NAME = {"degrevlex": DEGREVLEX, "lex": LEX, "deglex": DEGLEX}


def order_by_name(name: str) -> MonomialOrder:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise AlgebraError(f"unknown monomial order {name!r}")
