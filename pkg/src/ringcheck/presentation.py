"""Finitely presented algebras A = k[x1..xn]/I."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import PreconditionError, RingMismatchError
from .groebner import GroebnerBasis, buchberger
from .poly import GREVLEX, Field, Poly, PolyRing


class RingPresentation:
    """Ambient polynomial ring plus defining ideal, with a memoised reduced GB.

    ``local`` marks the ring as localised at the irrelevant maximal ideal.
    The graded presentation stands in for the local ring; all checks used here
    are insensitive to that localisation when the relevant primes sit inside
    the irrelevant ideal.
    """

    def __init__(self, ring: PolyRing, relations: Sequence[Poly] = (), *,
                 local: bool = False, name: str | None = None):
        if ring.order != GREVLEX:
            ring = ring.with_order(GREVLEX)
        rels = []
        for f in relations:
            if f.ring.variables != ring.variables or f.ring.field != ring.field:
                raise RingMismatchError(f"relation {f} does not live in {ring}")
            f = Poly(ring, f.terms)
            if f:
                rels.append(f)
        self.ring = ring
        self.relations = tuple(rels)
        self.local = local
        self.name = name
        if self.gb.is_unit:
            raise PreconditionError("the defining ideal contains 1 (zero ring is not modelled)")

    @cached_property
    def gb(self) -> GroebnerBasis:
        if not self.relations:
            return GroebnerBasis(self.ring, ())
        return buchberger(self.relations)

    @property
    def field(self) -> Field:
        return self.ring.field

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ring.variables

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def __repr__(self):
        rels = ", ".join(map(str, self.gb.elements))
        tail = f"/({rels})" if rels else ""
        return f"{self.field}[{', '.join(self.variables)}]{tail}{' local' if self.local else ''}"

    def same_as(self, other: "RingPresentation") -> bool:
        """Identical ambient ring and identical reduced defining GB."""
        return (self.ring == other.ring
                and self.gb.elements == other.gb.elements)

    def poly(self, value) -> Poly:
        return self.ring(value)

    def reduce(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            f = self.ring.convert(f)
        return self.gb.reduce(f)

    def is_zero(self, f: Poly) -> bool:
        return not self.reduce(f)

    @property
    def is_monomial(self) -> bool:
        return self.gb.is_monomial

    @property
    def is_polynomial_ring(self) -> bool:
        return not self.gb.elements

    def quotient(self, extra: Sequence[Poly]) -> "RingPresentation":
        """A/(extra); raises PreconditionError if that is the zero ring."""
        return RingPresentation(self.ring, list(self.gb.elements) + list(extra), local=self.local)

    def simplified(self) -> tuple["RingPresentation", "Substitution"]:
        """Drop variables that the defining ideal expresses linearly in the others."""
        ring = self.ring
        subs: dict[int, Poly] = {}
        rest = []
        for g in self.gb.elements:
            lm = g.lm
            if sum(lm) == 1 and g.lc == 1:
                i = lm.index(1)
                subs[i] = Poly(ring, {m: -c for m, c in g.terms.items() if m != lm})
            else:
                rest.append(g)
        if not subs:
            return self, Substitution(self, self, {})
        keep = [v for i, v in enumerate(ring.variables) if i not in subs]
        sub = PolyRing(keep, ring.field)
        idx = [i for i in range(ring.nvars) if i not in subs]
        rels = [Poly(sub, {tuple(m[i] for i in idx): c for m, c in g.terms.items()}) for g in rest]
        target = RingPresentation(sub, rels, local=self.local)
        return target, Substitution(self, target, subs)


@dataclass
class Substitution:
    """Isomorphism source -> target given by eliminating linearly expressed variables."""

    source: RingPresentation
    target: RingPresentation
    subs: dict

    def forward(self, f: Poly) -> Poly:
        """Image in the target presentation."""
        f = self.source.ring.convert(f)
        if not self.subs:
            return self.target.reduce(f)
        return self.target.reduce(_restrict(f.substitute(self.subs), self.target.ring))

    def backward(self, f: Poly) -> Poly:
        return self.source.reduce(self.source.ring.convert(f))


def _restrict(f: Poly, sub: PolyRing) -> Poly:
    """Drop the (now absent) eliminated variables: ``f`` must not involve them."""
    idx = [f.ring.variables.index(v) for v in sub.variables]
    dropped = [i for i in range(f.ring.nvars) if i not in idx]
    out = {}
    for m, c in f.terms.items():
        if any(m[i] for i in dropped):
            raise PreconditionError("substitution left an eliminated variable behind")
        out[tuple(m[i] for i in idx)] = c
    return Poly(sub, out)


def polynomial_ring(variables: Sequence[str], field: Field, *, local: bool = False) -> RingPresentation:
    return RingPresentation(PolyRing(variables, field), (), local=local)
