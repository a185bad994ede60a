"""Finitely presented modules M = coker(A^c -> A^g) over a presented ring A.

The relation matrix is stored by rows (one row per generator, one column
per relation).  The submodule N of A^g spanned by the columns, together with
I*R^g for the defining ideal I, is handled by a module Groebner basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .errors import PreconditionError, Verdict, check
from .groebner import ModuleBasis, submodule_basis, syzygies
from .idealcalc import (
    IdealHandle,
    PrimeCandidate,
    annihilator,
    domain_check,
    ideal_combine,
    ideal_equal,
    is_prime,
    is_regular_element,
    monomial_associated_primes,
)
from .poly import Poly, format_poly
from .presentation import RingPresentation


class FPModule:
    def __init__(self, ring: RingPresentation, ngens: int, ncols: int,
                 rows: Sequence[Sequence[Poly]], name: str | None = None):
        if len(rows) != ngens or any(len(r) != ncols for r in rows):
            raise PreconditionError("relation matrix shape does not match (generators x relations)")
        self.ring = ring
        self.name = name
        self.ngens = ngens
        self.ncols = ncols
        self.rows = tuple(tuple(ring.reduce(ring.ring.convert(a)) for a in r) for r in rows)

    @classmethod
    def free(cls, ring: RingPresentation, rank: int) -> "FPModule":
        return cls(ring, rank, 0, [[] for _ in range(rank)])

    @classmethod
    def cyclic(cls, ring: RingPresentation, gens: Sequence[Poly]) -> "FPModule":
        """A/(gens)."""
        return cls(ring, 1, len(gens), [list(gens)])

    @property
    def columns(self) -> list[list[Poly]]:
        return [[self.rows[i][j] for i in range(self.ngens)] for j in range(self.ncols)]

    @cached_property
    def relations_basis(self) -> ModuleBasis:
        return submodule_basis(self.columns, self.ngens, self.ring.ring, self.ring.gb.elements)

    def is_zero_element(self, vec: Sequence[Poly]) -> bool:
        self._check_vec(vec)
        return self.relations_basis.contains(list(vec))

    def reduce(self, vec: Sequence[Poly]) -> list[Poly]:
        return self.relations_basis.reduce(list(vec))

    def _check_vec(self, vec):
        if len(vec) != self.ngens:
            raise PreconditionError(f"element has {len(vec)} coordinates, module has {self.ngens} generators")

    def unit_vector(self, i: int) -> list[Poly]:
        R = self.ring.ring
        return [R.one if k == i else R.zero for k in range(self.ngens)]

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(map(format_poly, r)) + "]" for r in self.rows)
        return f"coker [{rows}]"


def scale_vec(a: Poly, vec: Sequence[Poly]) -> list[Poly]:
    return [a * v for v in vec]


def format_vec(vec: Sequence[Poly]) -> str:
    return "(" + ", ".join(format_poly(v) for v in vec) + ")"


# ---------- pruning ----------

@dataclass
class Pruned:
    module: FPModule
    kept: list[int]  # original generator index of each surviving generator

    def lift(self, vec: Sequence[Poly], original: FPModule) -> list[Poly]:
        out = [original.ring.ring.zero] * original.ngens
        for k, v in zip(self.kept, vec):
            out[k] = v
        return out


def prune(M: FPModule) -> Pruned:
    """Eliminate generators killed against a unit (nonzero constant) entry."""
    A = M.ring
    cols = [list(c) for c in M.columns]
    kept = list(range(M.ngens))
    while True:
        hit = None
        for j, col in enumerate(cols):
            for i, a in enumerate(col):
                if a and a.is_constant:
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            break
        i, j = hit
        pivot = cols[j]
        inv = A.field.inv(pivot[i].constant_coeff())
        new_cols = []
        for jj, col in enumerate(cols):
            if jj == j:
                continue
            f = col[i].scale(inv)
            new_cols.append([A.reduce(c - f * p) for c, p in zip(col, pivot)])
        cols = [c[:i] + c[i + 1:] for c in new_cols]
        kept.pop(i)
        cols = [c for c in cols if any(c)]
    g = len(kept)
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(g)]
    return Pruned(FPModule(A, g, len(cols), rows, M.name), kept)


# ---------- annihilators ----------

def ann_element(vec: Sequence[Poly], M: FPModule) -> IdealHandle:
    """{a in A | a*vec lies in the relation module}."""
    M._check_vec(vec)
    A = M.ring
    if M.ngens == 0 or M.is_zero_element(vec):
        return IdealHandle(A, [A.ring.one])
    syz = syzygies([list(vec)] + M.columns, A)
    return IdealHandle(A, [col[0] for col in syz.columns])


def module_annihilator(M: FPModule) -> IdealHandle:
    A = M.ring
    out = None
    for i in range(M.ngens):
        a = ann_element(M.unit_vector(i), M)
        out = a if out is None else _intersect(out, a)
    return out if out is not None else IdealHandle(A, [A.ring.one])


def _intersect(I, J):
    from .idealcalc import intersect
    return intersect(I, J)


# ---------- zero divisors of A ----------

@dataclass
class ZeroDivisorProfile:
    """Associated primes of A (monomial path) plus an exact regular-element test."""

    ring: RingPresentation
    associated: list[PrimeCandidate] | None

    def is_regular(self, a: Poly) -> bool:
        if self.associated is not None:
            a = self.ring.reduce(a)
            if not a:
                return False
            return not any(P.ideal.contains(a) for P in self.associated)
        return is_regular_element(a, self.ring)


def zero_divisors_profile(A: RingPresentation) -> ZeroDivisorProfile:
    if A.is_monomial:
        return ZeroDivisorProfile(A, monomial_associated_primes(IdealHandle(A, [])))
    if domain_check(A).verdict is Verdict.TRUE:
        return ZeroDivisorProfile(A, [PrimeCandidate(IdealHandle(A, []), None, evidence="domain")])
    return ZeroDivisorProfile(A, None)


def regular_elements_are_units(A: RingPresentation) -> tuple[Verdict, dict]:
    """Is every non-zero-divisor of A a unit?

    Local rings: true iff the maximal ideal is associated, i.e. (0 : m) != 0.
    Otherwise a regular non-unit is searched among sums of variables and 1 + x_i.
    """
    from .idealcalc import colon, krull_dim
    if krull_dim(A) == 0:
        return Verdict.TRUE, {"reason": "zero-dimensional (Artinian) ring"}
    R = A.ring
    if A.local:
        socle = colon(IdealHandle(A, []), IdealHandle(A, R.gens()))
        if not socle.is_zero:
            return Verdict.TRUE, {"socle_element": format_poly(socle.gens[0]),
                                  "reason": "maximal ideal is associated"}
    cands = [sum((R.var(i) for i in S), R.zero) for S in _variable_subsets(A.nvars)]
    if not A.local:
        cands += [R.one + R.var(i) for i in range(A.nvars)]
    for a in cands:
        if is_regular_element(a, A) and not IdealHandle(A, [a]).is_unit:
            return Verdict.FALSE, {"regular_nonunit": format_poly(a)}
    if A.local:
        return Verdict.FALSE, {"reason": "maximal ideal is not associated (prime avoidance)"}
    return Verdict.UNKNOWN, {"reason": "no regular non-unit found among the candidates"}


def _variable_subsets(n: int):
    for k in range(1, n + 1):
        yield from itertools.combinations(range(n), k)


# ---------- Fitting ideals ----------

def _minors(rows: Sequence[Sequence[Poly]], k: int, A: RingPresentation) -> list[Poly]:
    g, c = len(rows), len(rows[0]) if rows else 0
    memo: dict = {}

    def det(ri: tuple, ci: tuple) -> Poly:
        key = (ri, ci)
        if key in memo:
            return memo[key]
        if len(ri) == 1:
            out = rows[ri[0]][ci[0]]
        else:
            out = A.ring.zero
            for t, j in enumerate(ci):
                a = rows[ri[0]][j]
                if not a:
                    continue
                sub = det(ri[1:], ci[:t] + ci[t + 1:])
                out = out + a * sub if t % 2 == 0 else out - a * sub
            out = A.reduce(out)
        memo[key] = out
        return out

    out = []
    for ri in itertools.combinations(range(g), k):
        for ci in itertools.combinations(range(c), k):
            d = det(ri, ci)
            if d:
                out.append(d)
    return out


def fitting_ideal(M: FPModule, r: int) -> IdealHandle:
    if r < 0:
        raise PreconditionError("Fitting index must be non-negative")
    A = M.ring
    k = M.ngens - r
    if k <= 0:
        return IdealHandle(A, [A.ring.one])
    if k > M.ncols:
        return IdealHandle(A, [])
    return IdealHandle(A, _minors(M.rows, k, A))


def fitting_chain(M: FPModule) -> list[IdealHandle]:
    return [fitting_ideal(M, r) for r in range(M.ngens + 1)]


@dataclass
class FlatnessReport:
    verdict: Verdict
    idempotents: list[Poly] = field(default_factory=list)
    failing_index: int | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"verdict": str(self.verdict), "detail": self.detail}
        if self.idempotents:
            out["idempotents"] = [format_poly(e) for e in self.idempotents]
        if self.failing_index is not None:
            out["failing_index"] = self.failing_index
        return out


def is_flat_fp(M: FPModule) -> FlatnessReport:
    """Flat = projective for f.p. modules; decided by idempotent Fitting ideals."""
    from .ringstruct import idempotent_from_idem_ideal
    A = M.ring
    idems = []
    # Fitting ideals do not depend on the presentation, so compute them on the pruned one
    N = prune(M).module
    chain = fitting_chain(N) + [IdealHandle(A, [A.ring.one])] * (M.ngens - N.ngens)
    for r, F in enumerate(chain):
        if F.is_zero:
            idems.append(A.ring.zero)
            continue
        if F.is_unit:
            idems.append(A.ring.one)
            continue
        if not ideal_equal(ideal_combine("product", F, F), F):
            return FlatnessReport(Verdict.FALSE, idems, r,
                                  f"Fitting ideal {r} = {F} is not idempotent")
        idems.append(idempotent_from_idem_ideal(F).e)
    return FlatnessReport(Verdict.TRUE, idems, None, "every Fitting ideal is generated by an idempotent")


# ---------- torsion ----------

@dataclass
class TorsionReport:
    verdict: Verdict
    path: str
    regular: Poly | None = None
    element: list[Poly] | None = None
    detail: str = ""

    def witness_json(self) -> dict:
        if self.regular is None:
            return {}
        return {"a": format_poly(self.regular), "m": format_vec(self.element)}

    def to_json(self) -> dict:
        out = {"verdict": str(self.verdict), "path": self.path}
        if self.detail:
            out["detail"] = self.detail
        if self.regular is not None:
            out["witness"] = self.witness_json()
        return out


def verify_torsion_witness(M: FPModule, a: Poly, vec: Sequence[Poly]) -> bool:
    """Independent check: a regular, vec nonzero in M, a*vec = 0 in M."""
    return (is_regular_element(a, M.ring) and not M.is_zero_element(vec)
            and M.is_zero_element(scale_vec(a, vec)))


def _monomial_diagonal(M: FPModule) -> list[list[Poly]] | None:
    """Per-generator monomial relation lists when M = (+)_i A/J_i with monomial J_i."""
    if not M.ring.is_monomial:
        return None
    per = [[] for _ in range(M.ngens)]
    for col in M.columns:
        nz = [(i, a) for i, a in enumerate(col) if a]
        if len(nz) != 1 or not nz[0][1].is_monomial:
            return None
        i, a = nz[0]
        per[i].append(a)
    return per


def module_associated_primes(M: FPModule) -> list[tuple[PrimeCandidate, list[Poly]]] | None:
    """Ass(M) with element witnesses on the monomial-diagonal path."""
    per = _monomial_diagonal(M)
    if per is None:
        return None
    A = M.ring
    out = []
    for i, rels in enumerate(per):
        J = IdealHandle(A, rels)
        if J.is_unit:
            continue
        for P in monomial_associated_primes(J):
            vec = scale_vec(P.witness, M.unit_vector(i))
            out.append((P, vec))
    return out


def _avoiding_linear_form(P: PrimeCandidate, avoid: list[PrimeCandidate], A: RingPresentation) -> Poly:
    """Sum of the fewest variables of the monomial prime P lying in no prime of ``avoid``."""
    idx = [A.variables.index(v) for v in P.variables]
    for k in range(1, len(idx) + 1):
        for S in itertools.combinations(idx, k):
            names = {A.variables[i] for i in S}
            if all(not names <= set(Q.variables) for Q in avoid):
                return sum((A.ring.var(i) for i in S), A.ring.zero)
    raise PreconditionError("prime is contained in an avoided prime")


def _monomial_torsion(M: FPModule, inside: PrimeCandidate | None) -> TorsionReport | None:
    assM = module_associated_primes(M)
    if assM is None:
        return None
    A = M.ring
    assA = monomial_associated_primes(IdealHandle(A, []))
    if inside is not None:
        within = lambda P: set(P.variables) <= set(inside.variables)  # noqa: E731
        assA = [Q for Q in assA if within(Q)]
        assM = [(P, v) for P, v in assM if within(P)]
    for P, vec in assM:
        if not any(Q.contains_prime(P) for Q in assA):
            a = _avoiding_linear_form(P, assA, A)
            return TorsionReport(Verdict.FALSE, "monomial", a, vec,
                                 f"associated prime {P.label} of M lies in no associated prime of A")
    return TorsionReport(Verdict.TRUE, "monomial", detail="every associated prime of M lies in one of A")


def _regular_in(D: IdealHandle, A: RingPresentation, limit: int = 40) -> Poly | None:
    """Deterministic search for a non-zero-divisor inside D."""
    gens = sorted(D.gens, key=lambda f: (f.total_degree(), len(f.terms), str(f)))
    tried = 0
    for k in range(1, min(len(gens), 3) + 1):
        for combo in itertools.combinations(gens, k):
            for signs in itertools.product((1, -1), repeat=k - 1):
                d = combo[0]
                for s, g in zip(signs, combo[1:]):
                    d = d + g if s == 1 else d - g
                d = A.reduce(d)
                tried += 1
                if d and is_regular_element(d, A):
                    return d
                if tried >= limit:
                    return None
    return None


def _module_colon(M: FPModule, d: Poly) -> ModuleBasis:
    """Basis of N : d, where N is the relation module (with I*R^g)."""
    A = M.ring
    R = A.ring
    g = M.ngens
    vectors = []
    for i in range(g):
        vectors.append([d if k == i else R.zero for k in range(g)])
    vectors += M.columns
    syz = syzygies(vectors, A)
    gens = [list(col[:g]) for col in syz.columns] + M.columns
    return submodule_basis(gens, g, R, A.gb.elements)


def _same_submodule(B1: ModuleBasis, B2: ModuleBasis) -> bool:
    return all(B2.contains(v) for v in B1.elements()) and all(B1.contains(v) for v in B2.elements())


def _fitting_torsion(M: FPModule) -> TorsionReport | None:
    """Exact path: d regular in the free locus ideal gives T(M) = H^0_d(M)."""
    A = M.ring
    chain = fitting_chain(M)
    D_gens = []
    for r in range(len(chain)):
        prev = chain[r - 1] if r else IdealHandle(A, [])
        ann_prev = annihilator_of_ideal(prev)
        D_gens += [A.reduce(f * h) for f in chain[r].gens for h in ann_prev.gens]
    D = IdealHandle(A, D_gens)
    d = _regular_in(D, A)
    if d is None:
        return None
    N = M.relations_basis
    B = N
    while True:
        cols = B.elements()
        Mb = FPModule(A, M.ngens, len(cols), [[c[i] for c in cols] for i in range(M.ngens)]) \
            if cols else FPModule.free(A, M.ngens)
        B2 = _module_colon(Mb, d)
        if _same_submodule(B, B2):
            break
        B = B2
    for v in B.elements():
        if not N.contains(v):
            # lowest power k with d^k v in N; witness (d, d^(k-1) v)
            m = v
            while not N.contains(scale_vec(d, m)):
                m = [A.reduce(x) for x in scale_vec(d, m)]
            return TorsionReport(Verdict.FALSE, "free-locus", d, m,
                                 f"element killed by the regular element {format_poly(d)}")
    return TorsionReport(Verdict.TRUE, "free-locus",
                         detail=f"H^0_d(M) = 0 for the regular element d = {format_poly(d)} of the free locus")


def annihilator_of_ideal(J: IdealHandle) -> IdealHandle:
    from .idealcalc import colon
    A = J.ring
    if J.is_zero:
        return IdealHandle(A, [A.ring.one])
    return colon(IdealHandle(A, []), J)


def _witness_search(M: FPModule, max_subset: int = 3) -> TorsionReport:
    A = M.ring
    R = A.ring
    cands = []
    for k in range(1, min(A.nvars, max_subset) + 1):
        for S in itertools.combinations(range(A.nvars), k):
            cands.append(sum((R.var(i) for i in S), R.zero))
    cands = [a for a in cands if is_regular_element(a, A)]
    elems = [M.unit_vector(i) for i in range(M.ngens)]
    elems += [scale_vec(R.var(j), e) for e in list(elems) for j in range(A.nvars)]
    for m in elems:
        if M.is_zero_element(m):
            continue
        for a in cands:
            if M.is_zero_element(scale_vec(a, m)):
                return TorsionReport(Verdict.FALSE, "witness-search", a, m, "bounded witness search")
    return TorsionReport(Verdict.UNKNOWN, "witness-search", detail="no supported decision path")


def is_torsion_free(M: FPModule) -> TorsionReport:
    P = prune(M)
    N = P.module
    if N.ngens == 0 or N.ncols == 0:
        return TorsionReport(Verdict.TRUE, "free", detail="zero or free after pruning")
    if M.ring.local and regular_elements_are_units(M.ring)[0] is Verdict.TRUE:
        return TorsionReport(Verdict.TRUE, "units", detail="every regular element of A is a unit")
    rep = _monomial_torsion(N, None) or _fitting_torsion(N) or _witness_search(N)
    if rep.regular is not None:
        rep.element = P.lift(rep.element, M)
        check(verify_torsion_witness(M, rep.regular, rep.element),
              "torsion witness failed independent verification")
    return rep


def is_torsion_free_localized(M: FPModule, Pr: IdealHandle) -> TorsionReport:
    pv = is_prime(Pr)
    if pv.verdict is Verdict.FALSE:
        wit = {k: format_poly(v) if isinstance(v, Poly) else v for k, v in pv.witness.items()}
        return TorsionReport(Verdict.ILL_POSED, "prime-check",
                             detail=f"{Pr} is not prime: {pv.evidence} {wit}")
    if pv.verdict is not Verdict.TRUE:
        return TorsionReport(Verdict.UNKNOWN, "prime-check", detail="primality undecided")
    pruned = prune(M)
    N = pruned.module
    if N.ngens == 0 or N.ncols == 0:
        return TorsionReport(Verdict.TRUE, "free", detail="zero or free after pruning")
    cand = _monomial_prime(Pr)
    if cand is not None and M.ring.is_monomial:
        assA = monomial_associated_primes(IdealHandle(M.ring, []))
        if any(set(Q.variables) == set(cand.variables) for Q in assA):
            return TorsionReport(Verdict.TRUE, "units",
                                 detail=f"{cand.label} is associated, so regular elements of A_P are units")
    if cand is not None:
        rep = _monomial_torsion(N, cand)
        if rep is not None:
            if rep.regular is not None:
                rep.element = pruned.lift(rep.element, M)
                _check_local_witness(M, rep, cand)
            return rep
    if domain_check(M.ring).verdict is Verdict.TRUE:
        g = is_torsion_free(M)
        if g.verdict is Verdict.TRUE:
            return TorsionReport(Verdict.TRUE, "domain", detail="torsion-free modules localize to torsion-free modules over a domain")
    return TorsionReport(Verdict.UNKNOWN, "localized", detail="no supported decision path")


def _monomial_prime(Pr: IdealHandle) -> PrimeCandidate | None:
    A = Pr.ring
    elems = Pr.lifted_gb.elements
    if not Pr.is_monomial or any(sum(g.lm) != 1 for g in elems):
        return None
    idx = {g.lm.index(1) for g in elems}
    names = tuple(A.variables[i] for i in sorted(idx))
    return PrimeCandidate(Pr, names)


def _check_local_witness(M: FPModule, rep: TorsionReport, P: PrimeCandidate) -> None:
    """a*m = 0, m/1 != 0 in M_P (its annihilator lies in P) and a/1 regular in A_P."""
    A = M.ring
    a, m = rep.regular, rep.element
    check(M.is_zero_element(scale_vec(a, m)), "localized witness: a*m is not zero")
    ann = ann_element(m, M)
    check(all(P.ideal.contains(f) for f in ann.gens), "localized witness: m vanishes at P")
    check(P.ideal.contains(a), "localized witness: a is a unit at P")
    assA = monomial_associated_primes(IdealHandle(A, []))
    check(not any(Q.ideal.contains(a) for Q in assA if P.contains_prime(Q)),
          "localized witness: a is a zero divisor at P")
