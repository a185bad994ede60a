"""Exact coefficient fields, monomial orders and sparse multivariate polynomials.

Monomials are plain tuples of non-negative exponents.  A polynomial is an
immutable mapping ``monomial -> coefficient`` bound to a :class:`PolyRing`,
which carries the variable names, the coefficient field and the order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import sympy

from .errors import PreconditionError, RingMismatchError

Monomial = tuple


@dataclass(frozen=True)
class Field:
    """QQ when ``p == 0``, otherwise the prime field GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p and (self.p < 2 or not sympy.isprime(self.p)):
            raise PreconditionError(f"GF({self.p}): modulus {self.p} is not prime")

    @property
    def name(self) -> str:
        return f"GF({self.p})" if self.p else "QQ"

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, c) -> object:
        if self.p:
            if isinstance(c, Fraction):
                return (c.numerator * pow(c.denominator, -1, self.p)) % self.p
            return int(c) % self.p
        return Fraction(c)

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero coefficient")
        if self.p:
            return pow(c, self.p - 2, self.p)
        return 1 / c

    def fmt(self, c) -> str:
        if self.p:
            return str(c)
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"

    def __str__(self) -> str:
        return self.name


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


# ---------- monomial orders ----------

@dataclass(frozen=True)
class MonomialOrder:
    """``kind`` is one of lex, grevlex, elim (block order, first ``split``
    variables eliminated) or pot (module order: position over grevlex, with
    component markers stored as exponents after index ``split``)."""

    kind: str = "grevlex"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "elim", "pot"):
            raise PreconditionError(f"unknown monomial order {self.kind!r}")

    def key(self, m: Monomial) -> tuple:
        kind = self.kind
        if kind == "grevlex":
            return (sum(m),) + tuple(-e for e in reversed(m))
        if kind == "lex":
            return tuple(m)
        k = self.split
        if kind == "elim":
            head, tail = m[:k], m[k:]
            return ((sum(head),) + tuple(-e for e in reversed(head))
                    + (sum(tail),) + tuple(-e for e in reversed(tail)))
        head, tail = m[:k], m[k:]
        pos = next((i for i, e in enumerate(tail) if e), len(tail))
        return (-pos, sum(head)) + tuple(-e for e in reversed(head))

    def compare(self, m1: Monomial, m2: Monomial) -> int:
        if len(m1) != len(m2):
            raise RingMismatchError("monomial arity mismatch")
        k1, k2 = self.key(m1), self.key(m2)
        return (k1 > k2) - (k1 < k2)

    def __str__(self) -> str:
        return self.kind if self.kind in ("lex", "grevlex") else f"{self.kind}({self.split})"


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def compare_monomials(m1: Monomial, m2: Monomial, order: MonomialOrder = GREVLEX) -> str:
    c = order.compare(m1, m2)
    return {-1: "less", 0: "equal", 1: "greater"}[c]


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


# ---------- rings and polynomials ----------

class PolyRing:
    """Polynomial ring k[v1, ..., vn] with a fixed monomial order."""

    __slots__ = ("variables", "field", "order", "nvars", "_keys", "_negkeys", "_hash")

    def __init__(self, variables: Sequence[str], field: Field = QQ,
                 order: MonomialOrder = GREVLEX):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise PreconditionError(f"duplicate variable names in {self.variables}")
        self.field = field
        self.order = order
        self.nvars = len(self.variables)
        self._keys: dict = {}
        self._negkeys: dict = {}
        self._hash = hash((self.variables, field, order))

    def __eq__(self, other):
        return self is other or (
            isinstance(other, PolyRing) and self.variables == other.variables
            and self.field == other.field and self.order == other.order)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"PolyRing({self.field}[{', '.join(self.variables)}], {self.order})"

    @property
    def module_split(self) -> int | None:
        return self.order.split if self.order.kind == "pot" else None

    def key(self, m: Monomial) -> tuple:
        k = self._keys.get(m)
        if k is None:
            k = self._keys[m] = self.order.key(m)
        return k

    def negkey(self, m: Monomial) -> tuple:
        """Heap key: smallest for the largest monomial."""
        k = self._negkeys.get(m)
        if k is None:
            k = self._negkeys[m] = tuple(-x for x in self.key(m))
        return k

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.variables, self.field, order)

    # constructors
    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps: Monomial, c=1) -> "Poly":
        c = self.field(c)
        return Poly(self, {tuple(exps): c} if c else {})

    def var(self, name_or_index) -> "Poly":
        i = (self.variables.index(name_or_index) if isinstance(name_or_index, str)
             else name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field(1)})

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def from_dict(self, terms: Mapping) -> "Poly":
        f = self.field
        out = {}
        for m, c in terms.items():
            c = f(c)
            if c:
                out[tuple(m)] = c
        return Poly(self, out)

    def convert(self, f: "Poly") -> "Poly":
        """Map ``f`` into this ring by variable name (names must all exist here)."""
        if f.ring == self:
            return f
        if f.ring.field != self.field:
            raise RingMismatchError(f"coefficient field mismatch: {f.ring.field} vs {self.field}")
        if f.ring.variables == self.variables:
            return Poly(self, f.terms)
        try:
            idx = [self.variables.index(v) for v in f.ring.variables]
        except ValueError as exc:
            raise RingMismatchError(f"cannot map {f.ring.variables} into {self.variables}") from exc
        out = {}
        for m, c in f.terms.items():
            e = [0] * self.nvars
            for i, x in zip(idx, m):
                e[i] = x
            out[tuple(e)] = c
        return Poly(self, out)

    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            return self.convert(value)
        if isinstance(value, str):
            from .lang import parse_poly
            return parse_poly(value, self)
        return self.const(value)


class Poly:
    """Immutable sparse polynomial."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lm = None

    # --- structure ---
    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    @property
    def lm(self) -> Monomial:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ring.key)
        return self._lm

    @property
    def lc(self):
        return self.terms[self.lm]

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def support(self) -> set[int]:
        """Indices of variables occurring in the polynomial."""
        return {i for m in self.terms for i, e in enumerate(m) if e}

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(self.lm))

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field(0))

    # --- arithmetic ---
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise RingMismatchError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m)
            if s is None:
                terms[m] = c
                continue
            s = s + c
            if p:
                s %= p
            if s:
                terms[m] = s
            else:
                del terms[m]
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.field.p
        if p:
            return Poly(self.ring, {m: (-c) % p for m, c in self.terms.items()})
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.field.p
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                c = c1 * c2
                s = terms.get(m)
                terms[m] = c if s is None else s + c
        if p:
            terms = {m: c % p for m, c in terms.items() if c % p}
        else:
            terms = {m: c for m, c in terms.items() if c}
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero
        p = self.ring.field.p
        if p:
            return Poly(self.ring, {m: (a * c) % p for m, a in self.terms.items()})
        return Poly(self.ring, {m: a * c for m, a in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> "Poly":
        p = self.ring.field.p
        out = {}
        for m, a in self.terms.items():
            v = a * c
            if p:
                v %= p
            if v:
                out[tuple(x + y for x, y in zip(m, mono))] = v
        return Poly(self.ring, out)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PreconditionError("polynomial powers need a non-negative integer exponent")
        result, base = self.ring.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc))

    def diff(self, i: int) -> "Poly":
        f = self.ring.field
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                v = f(c * m[i])
                if v:
                    e = list(m)
                    e[i] -= 1
                    out[tuple(e)] = v
        return Poly(self.ring, out)

    def substitute(self, values: Mapping[int, "Poly"]) -> "Poly":
        """Replace variable ``i`` by ``values[i]`` (polynomials in the same ring)."""
        ring = self.ring
        result = ring.zero
        cache: dict = {}
        for m, c in self.terms.items():
            rest = list(m)
            term = ring.one
            for i, g in values.items():
                if m[i]:
                    k = (i, m[i])
                    if k not in cache:
                        cache[k] = g ** m[i]
                    term = term * cache[k]
                    rest[i] = 0
            result = result + term.mul_term(tuple(rest), c)
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


def format_monomial(m: Monomial, variables: Sequence[str]) -> str:
    parts = []
    for v, e in zip(variables, m):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    """Declaration-language rendering; terms in descending order."""
    if not f.terms:
        return "0"
    field = f.ring.field
    out = []
    for m, c in f.sorted_terms():
        neg = False
        if not field.p and c < 0:
            neg, c = True, -c
        mono = format_monomial(m, f.ring.variables)
        cs = field.fmt(c)
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        else:
            body = f"{cs}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def content_free(f: Poly) -> Poly:
    """Monic normalisation; doubles as content removal over QQ."""
    return f.monic()


def iter_monomials(nvars: int, degree: int) -> Iterator[Monomial]:
    """All monomials in ``nvars`` variables of exactly the given total degree."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    if nvars == 1:
        yield (degree,)
        return
    for e in range(degree, -1, -1):
        for rest in iter_monomials(nvars - 1, degree - e):
            yield (e,) + rest


def monomials_up_to(nvars: int, degree: int) -> list[Monomial]:
    return [m for d in range(degree + 1) for m in iter_monomials(nvars, d)]


def poly_sum(ring: PolyRing, polys: Iterable[Poly]) -> Poly:
    out = ring.zero
    for f in polys:
        out = out + f
    return out
