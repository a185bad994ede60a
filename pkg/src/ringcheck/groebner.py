"""Multivariate division, Buchberger's algorithm, elimination and syzygies.

Module elements are encoded as polynomials in an enlarged ring: the
component ``k`` of a vector over ``k[x1..xn]`` is tagged by an extra
exponent slot ``n + k``, and the ``pot`` order compares the tag first.
Pairs are only formed between elements living in the same component.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvariantError, PreconditionError, RingMismatchError
from .poly import (
    MonomialOrder,
    Poly,
    PolyRing,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
)


@dataclass(frozen=True)
class GroebnerBasis:
    ring: PolyRing
    elements: tuple[Poly, ...]
    generators: tuple[Poly, ...] = ()
    # cofactors[i][k]: coefficient of generators[k] in elements[i]; only when tracked
    cofactors: tuple | None = field(default=None, compare=False, repr=False)

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    @property
    def leading_monomials(self) -> list[tuple]:
        return [g.lm for g in self.elements]

    def reduce(self, f: Poly) -> Poly:
        return _reduce(f, self.elements)

    def contains(self, f: Poly) -> bool:
        return not self.reduce(f)

    @property
    def is_unit(self) -> bool:
        return any(g.is_constant for g in self.elements)

    @property
    def is_monomial(self) -> bool:
        return all(g.is_monomial for g in self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def _check_ring(polys: Sequence[Poly]) -> PolyRing:
    ring = polys[0].ring
    for f in polys[1:]:
        if f.ring != ring:
            raise RingMismatchError(f"ring mismatch: {ring} vs {f.ring}")
    return ring


def _reduce(f: Poly, basis: Sequence[Poly], quotients: list | None = None) -> Poly:
    """Full reduction of ``f`` by ``basis`` (divisors tried in list order).

    When ``quotients`` is a list of dicts, quotient terms are accumulated in it
    so that ``f = sum(q_i * basis_i) + result``.
    """
    if not f.terms or not basis:
        return f
    ring = f.ring
    fld = ring.field
    p = fld.p
    lms = [g.lm for g in basis]
    inv_lcs = [fld.inv(g.lc) for g in basis]
    tails = [[(m, c) for m, c in g.terms.items() if m != lm] for g, lm in zip(basis, lms)]
    negkey = ring.negkey
    work = dict(f.terms)
    heap = [(negkey(m), m) for m in work]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        for i, lm in enumerate(lms):
            if all(a <= b for a, b in zip(lm, m)):
                break
        else:
            rem[m] = c
            continue
        q = tuple(a - b for a, b in zip(m, lm))
        coef = c * inv_lcs[i]
        if p:
            coef %= p
        if quotients is not None:
            qd = quotients[i]
            s = qd.get(q, 0) + coef
            qd[q] = s % p if p else s
        for tm, tc in tails[i]:
            mm = tuple(a + b for a, b in zip(tm, q))
            v = -coef * tc
            s = work.get(mm)
            if s is None:
                work[mm] = v % p if p else v
                heapq.heappush(heap, (negkey(mm), mm))
            else:
                s = s + v
                if p:
                    s %= p
                if s:
                    work[mm] = s
                else:
                    del work[mm]
    return Poly(ring, rem)


def _as_ring(polys: Sequence[Poly], order: MonomialOrder | None) -> list[Poly]:
    if order is None or not polys or polys[0].ring.order == order:
        return list(polys)
    ring = polys[0].ring.with_order(order)
    return [Poly(ring, f.terms) for f in polys]


def normal_form(f: Poly, G: Sequence[Poly], order: MonomialOrder | None = None) -> Poly:
    """Remainder of ``f`` on division by ``G`` (no term divisible by any lm of G)."""
    if G:
        _check_ring([f, *G])
    if order is not None and order != f.ring.order:
        r = normal_form(*_as_ring([f], order), _as_ring(G, order))
        return Poly(f.ring, r.terms)
    return _reduce(f, [g for g in G if g])


def divide(f: Poly, G: Sequence[Poly]) -> tuple[list[Poly], Poly]:
    """Division with quotients: ``f == sum(q*g) + r``."""
    G = list(G)
    qs: list[dict] = [{} for _ in G]
    nz = [i for i, g in enumerate(G) if g]
    qs_nz = [qs[i] for i in nz]
    r = _reduce(f, [G[i] for i in nz], qs_nz)
    ring = f.ring
    return [ring.from_dict(q) for q in qs], r


def divide_exact(f: Poly, g: Poly) -> Poly:
    """``f / g`` when ``g`` divides ``f``; raises otherwise."""
    (q,), r = divide(f, [g])
    if r:
        raise PreconditionError(f"{g} does not divide {f}")
    return q


def spoly(f: Poly, g: Poly) -> Poly:
    L = mono_lcm(f.lm, g.lm)
    fld = f.ring.field
    a = f.mul_term(mono_div(L, f.lm), fld.inv(f.lc))
    b = g.mul_term(mono_div(L, g.lm), fld.inv(g.lc))
    return a - b


def _same_component(a: tuple, b: tuple, split: int | None) -> bool:
    return split is None or a[split:] == b[split:]


def buchberger(gens: Sequence[Poly], order: MonomialOrder | None = None, *,
               track: bool = False) -> GroebnerBasis:
    """Reduced Groebner basis with Gebauer-Moeller pair management.

    Uses the coprime-leading-monomial criterion (ideals only) and the chain
    criterion; pairs are selected by the normal strategy with deterministic
    tie-breaking.  With ``track=True`` each element carries its cofactors
    with respect to ``gens``.
    """
    gens = _as_ring(list(gens), order)
    if not gens:
        raise PreconditionError("buchberger needs at least one generator")
    ring = _check_ring(gens)
    fld = ring.field
    split = ring.module_split
    ngens = len(gens)
    zero = ring.zero

    basis: list[Poly] = []
    cofs: list[list[Poly]] = []
    lms: list[tuple] = []
    active: list[int] = []
    pairs: list[tuple[int, int]] = []

    def combine(target: list[Poly], qs: list[dict], idx: list[int]) -> list[Poly]:
        out = list(target)
        for qd, i in zip(qs, idx):
            if not qd:
                continue
            qpoly = ring.from_dict(qd)
            out = [a - qpoly * b for a, b in zip(out, cofs[i])]
        return out

    def reduce_tracked(f: Poly, fc: list[Poly] | None):
        act = [basis[i] for i in active]
        if fc is None:
            return _reduce(f, act), None
        qs = [{} for _ in active]
        h = _reduce(f, act, qs)
        return h, combine(fc, qs, active)

    def add(h: Poly, hc: list[Poly] | None):
        inv = fld.inv(h.lc)
        h = h.scale(inv)
        if hc is not None:
            hc = [c.scale(inv) for c in hc]
        idx = len(basis)
        basis.append(h)
        cofs.append(hc)
        hlm = h.lm
        lms.append(hlm)
        crit1 = split is None
        C = [g for g in active if _same_component(lms[g], hlm, split)]
        lcm_h = {g: mono_lcm(lms[g], hlm) for g in C}
        D: list[int] = []
        while C:
            g1 = C.pop(0)
            L1 = lcm_h[g1]
            if (crit1 and mono_coprime(lms[g1], hlm)) or (
                    not any(mono_divides(lcm_h[g2], L1) for g2 in C)
                    and not any(mono_divides(lcm_h[g2], L1) for g2 in D)):
                D.append(g1)
        E = [g for g in D if not (crit1 and mono_coprime(lms[g], hlm))]
        kept = []
        for a, b in pairs:
            L = mono_lcm(lms[a], lms[b])
            if (mono_divides(hlm, L) and mono_lcm(lms[a], hlm) != L
                    and mono_lcm(lms[b], hlm) != L):
                continue
            kept.append((a, b))
        pairs[:] = kept + [(g, idx) for g in E]
        active[:] = [g for g in active if not mono_divides(hlm, lms[g])] + [idx]

    def unit_vec(k: int) -> list[Poly]:
        v = [zero] * ngens
        v[k] = ring.one
        return v

    for k, g in enumerate(gens):
        if not g:
            continue
        h, hc = reduce_tracked(g, unit_vec(k) if track else None)
        if h:
            add(h, hc)

    def pair_key(pr):
        L = mono_lcm(lms[pr[0]], lms[pr[1]])
        deg = sum(L[:split]) if split is not None else sum(L)
        return (deg, L, pr)

    while pairs:
        best = min(pairs, key=pair_key)
        pairs.remove(best)
        i, j = best
        s = spoly(basis[i], basis[j])
        sc = None
        if track:
            L = mono_lcm(lms[i], lms[j])
            mi, mj = mono_div(L, lms[i]), mono_div(L, lms[j])
            sc = [a.mul_term(mi, 1) - b.mul_term(mj, 1) for a, b in zip(cofs[i], cofs[j])]
        h, hc = reduce_tracked(s, sc)
        if h:
            add(h, hc)

    # interreduce the minimal basis
    act = list(active)
    reduced: list[Poly] = []
    reduced_cofs: list = []
    for i in act:
        g = basis[i]
        others_idx = [k for k in act if k != i]
        others = [basis[k] for k in others_idx]
        lt = Poly(ring, {g.lm: g.lc})
        tail = g - lt
        if track:
            qs = [{} for _ in others_idx]
            r = _reduce(tail, others, qs)
            gc = combine(cofs[i], qs, others_idx)
        else:
            r = _reduce(tail, others)
            gc = None
        reduced.append(lt + r)
        reduced_cofs.append(gc)
    order_idx = sorted(range(len(reduced)), key=lambda k: ring.key(reduced[k].lm))
    elements = tuple(reduced[k] for k in order_idx)
    cof = tuple(tuple(reduced_cofs[k]) for k in order_idx) if track else None
    return GroebnerBasis(ring, elements, tuple(gens), cof)


def is_groebner(G: Sequence[Poly]) -> bool:
    """Buchberger's S-pair test over all pairs (no criteria); used in tests."""
    G = [g for g in G if g]
    if not G:
        return True
    split = G[0].ring.module_split
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            if not _same_component(G[a].lm, G[b].lm, split):
                continue
            if _reduce(spoly(G[a], G[b]), G):
                return False
    return True


def lift(f: Poly, gens: Sequence[Poly]) -> list[Poly] | None:
    """Cofactors ``c`` with ``f == sum(c_i * gens_i)``, or None if f is not in the ideal."""
    gens = list(gens)
    ring = f.ring
    if not f:
        return [ring.zero] * len(gens)
    if not any(gens):
        return None
    gb = buchberger(gens, track=True)
    qs, r = divide(f, gb.elements)
    if r:
        return None
    out = [ring.zero] * len(gens)
    for q, row in zip(qs, gb.cofactors):
        if q:
            out = [o + q * c for o, c in zip(out, row)]
    check_sum = ring.zero
    for c, g in zip(out, gens):
        check_sum = check_sum + c * g
    if check_sum != f:
        raise InvariantError("lift certificate does not reproduce the input")
    return out


def _generators_of(I) -> list[Poly]:
    if hasattr(I, "lift_generators"):
        return I.lift_generators()
    return list(I)


def ideal_member(f: Poly, I) -> bool:
    """True iff ``f`` lies in the ideal (IdealHandle or generator list)."""
    if hasattr(I, "lifted_gb"):
        f = I.ring.ring.convert(f) if f.ring != I.ring.ring else f
        return I.lifted_gb.contains(f)
    gens = [g for g in _generators_of(I) if g]
    if not f:
        return True
    if not gens:
        return False
    return buchberger(gens).contains(f)


# ---------- elimination ----------

def eliminate_polys(gens: Sequence[Poly], keep: Sequence[str]) -> tuple[PolyRing, list[Poly]]:
    """Generators of ``(gens) ∩ k[keep]`` as polynomials in the subring on ``keep``."""
    gens = [g for g in gens if g]
    ring = gens[0].ring if gens else None
    if ring is None:
        raise PreconditionError("eliminate needs a nonzero generator list")
    keep = list(keep)
    unknown = [v for v in keep if v not in ring.variables]
    if unknown:
        raise PreconditionError(f"unknown variables {unknown}")
    drop = [v for v in ring.variables if v not in keep]
    keep_sorted = [v for v in ring.variables if v in keep]
    sub = PolyRing(keep_sorted, ring.field, ring.order if ring.order.kind != "pot" else MonomialOrder())
    if not drop:
        return sub, [sub.convert(g) for g in buchberger(gens).elements]
    ering = PolyRing(drop + keep_sorted, ring.field, MonomialOrder("elim", len(drop)))
    gb = buchberger([ering.convert(g) for g in gens])
    nd = len(drop)
    out = []
    for g in gb.elements:
        if all(not any(m[:nd]) for m in g.terms):
            out.append(Poly(sub, {m[nd:]: c for m, c in g.terms.items()}))
    if out:
        out = list(buchberger(out).elements)
    return sub, out


def eliminate(I, keep: Sequence[str]):
    """Contraction of an ideal to the subring on ``keep``.

    Accepts an IdealHandle (returns an IdealHandle over the polynomial subring)
    or a plain generator list (returns ``(subring, generators)``).
    """
    if hasattr(I, "lift_generators"):
        from .idealcalc import IdealHandle
        from .presentation import RingPresentation
        gens = I.lift_generators()
        if len(set(keep)) >= I.ring.ring.nvars or not keep:
            raise PreconditionError("keep must be a nonempty proper subset of the variables")
        sub, out = eliminate_polys(gens, keep)
        return IdealHandle(RingPresentation(sub), out)
    return eliminate_polys(list(I), keep)


# ---------- modules ----------

def module_ring(base: PolyRing, rank: int) -> PolyRing:
    names = base.variables + tuple(f"_e{k}" for k in range(rank))
    order = MonomialOrder("pot", base.nvars)
    return PolyRing(names, base.field, order)


def vector_to_poly(vec: Sequence[Poly], mring: PolyRing) -> Poly:
    n = mring.order.split
    rank = mring.nvars - n
    out = {}
    for k, f in enumerate(vec):
        tag = tuple(1 if j == k else 0 for j in range(rank))
        for m, c in f.terms.items():
            out[m + tag] = c
    return Poly(mring, out)


def poly_to_vector(f: Poly, base: PolyRing) -> list[Poly]:
    n = base.nvars
    rank = f.ring.nvars - n
    comps: list[dict] = [{} for _ in range(rank)]
    for m, c in f.terms.items():
        tag = m[n:]
        k = tag.index(1)
        comps[k][m[:n]] = c
    return [Poly(base, d) for d in comps]


def component_of(m: tuple, n: int) -> int:
    return next(i for i, e in enumerate(m[n:]) if e)


@dataclass
class ModuleBasis:
    """Groebner basis of a submodule ``N + I*R^rank`` of ``R^rank``."""

    base: PolyRing
    rank: int
    gb: GroebnerBasis

    def reduce(self, vec: Sequence[Poly]) -> list[Poly]:
        mring = self.gb.ring
        return poly_to_vector(self.gb.reduce(vector_to_poly(vec, mring)), self.base)

    def contains(self, vec: Sequence[Poly]) -> bool:
        return all(not f for f in self.reduce(vec))

    def elements(self) -> list[list[Poly]]:
        return [poly_to_vector(g, self.base) for g in self.gb.elements]


def submodule_basis(columns: Sequence[Sequence[Poly]], rank: int, base: PolyRing,
                    relations: Sequence[Poly] = ()) -> ModuleBasis:
    mring = module_ring(base, rank)
    gens = [vector_to_poly(c, mring) for c in columns]
    for g in relations:
        for k in range(rank):
            vec = [base.zero] * rank
            vec[k] = g
            gens.append(vector_to_poly(vec, mring))
    gens = [g for g in gens if g]
    if not gens:
        return ModuleBasis(base, rank, GroebnerBasis(mring, ()))
    return ModuleBasis(base, rank, buchberger(gens))


@dataclass(frozen=True)
class SyzygyMatrix:
    """Columns generate the relation module of ``vectors`` (modulo ``relations``)."""

    vectors: tuple
    columns: tuple

    def __len__(self):
        return len(self.columns)


def syzygies(vectors: Sequence[Sequence[Poly]], relations: Sequence[Poly] = ()) -> SyzygyMatrix:
    """Generators of ``{a : sum a_i v_i ∈ I R^m}`` where ``I = (relations)``.

    ``relations`` may be a RingPresentation, in which case its defining
    ideal is used and the output entries are reduced modulo it.
    """
    if hasattr(relations, "gb"):
        relations = list(relations.gb.elements)
    vectors = [list(v) for v in vectors]
    if not vectors:
        return SyzygyMatrix((), ())
    m = len(vectors[0])
    if any(len(v) != m for v in vectors):
        raise PreconditionError("syzygies: vectors must share their length")
    base = vectors[0][0].ring if m else None
    if base is None:
        raise PreconditionError("syzygies: zero-length vectors")
    s = len(vectors)
    mring = module_ring(base, m + s)
    gens = []
    for i, v in enumerate(vectors):
        tail = [base.zero] * s
        tail[i] = base.one
        gens.append(vector_to_poly(v + tail, mring))
    for g in relations:
        if not g:
            continue
        for k in range(m):
            vec = [base.zero] * (m + s)
            vec[k] = g
            gens.append(vector_to_poly(vec, mring))
    gb = buchberger(gens)
    n = base.nvars
    rel_gb = buchberger(list(relations)) if any(relations) else None
    cols = []
    for g in gb.elements:
        if component_of(g.lm, n) < m:
            continue
        col = poly_to_vector(g, base)[m:]
        if rel_gb is not None:
            col = [rel_gb.reduce(f) for f in col]
        if any(col):
            cols.append(tuple(col))
    # every column must annihilate the input vectors
    for col in cols:
        for k in range(m):
            acc = base.zero
            for a, v in zip(col, vectors):
                acc = acc + a * v[k]
            if acc and (rel_gb is None or rel_gb.reduce(acc)):
                raise InvariantError("syzygy column does not annihilate the input")
    return SyzygyMatrix(tuple(tuple(v) for v in vectors), tuple(cols))


def intersect_polys(F: Sequence[Poly], G: Sequence[Poly]) -> list[Poly]:
    """Generators of ``(F) ∩ (G)`` via elimination of ``t`` from ``t*F + (1-t)*G``."""
    F = [f for f in F if f]
    G = [g for g in G if g]
    if not F or not G:
        return []
    ring = F[0].ring
    tring = PolyRing(("_t",) + ring.variables, ring.field, MonomialOrder("elim", 1))
    t = tring.var(0)
    gens = [t * tring.convert(f) for f in F] + [(1 - t) * tring.convert(g) for g in G]
    out = []
    for h in buchberger(gens).elements:
        if all(m[0] == 0 for m in h.terms):
            out.append(Poly(ring, {m[1:]: c for m, c in h.terms.items()}))
    return list(buchberger(out).elements) if out else []
