"""Ring-level properties: reducedness, von Neumann regularity, total quotient
ring dimension, idempotent splitting at a prime with P^2 = P, decomposition
into domains, Dedekind classification and the Frobenius-flatness check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InvariantError, PreconditionError, Verdict, check
from .factor import factor, is_squarefree
from .groebner import buchberger, divide_exact, lift
from .idealcalc import (
    IdealHandle,
    PrimeCandidate,
    annihilator,
    domain_check,
    ideal_combine,
    ideal_equal,
    intersect,
    is_prime,
    krull_dim,
    minimal_primes,
    monomial_associated_primes,
    radical_member,
    radical_zero_dim,
)
from .poly import Poly, format_poly
from .presentation import RingPresentation


def _fmt(f: Poly) -> str:
    return format_poly(f)


@dataclass
class PropertyReport:
    verdict: Verdict
    detail: str = ""
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"verdict": str(self.verdict), "detail": self.detail}
        if self.witness:
            out["witness"] = self.witness
        return out


# ---------- reducedness / vnr ----------

def is_reduced(A: RingPresentation) -> PropertyReport:
    Q, _ = A.simplified()
    back = A.ring.convert
    if Q.is_polynomial_ring:
        return PropertyReport(Verdict.TRUE, "polynomial ring up to linear substitution")
    if Q.is_monomial:
        for g in Q.gb.elements:
            m = g.lm
            if max(m) > 1:
                r = Q.ring.monomial(tuple(min(e, 1) for e in m))
                return PropertyReport(Verdict.FALSE, "non-squarefree monomial generator",
                                      {"nilpotent": _fmt(back(r)), "power": max(m)})
        return PropertyReport(Verdict.TRUE, "squarefree monomial ideal")
    if krull_dim(Q) == 0:
        J = IdealHandle(Q, [])
        rad = radical_zero_dim(J)
        for g in rad.gens:
            if not J.contains(g):
                return PropertyReport(Verdict.FALSE, "zero-dimensional, radical is larger",
                                      {"nilpotent": _fmt(back(g))})
        return PropertyReport(Verdict.TRUE, "zero-dimensional and radical")
    if len(Q.gb.elements) == 1:
        f = Q.gb.elements[0]
        if is_squarefree(f):
            return PropertyReport(Verdict.TRUE, "squarefree hypersurface")
        facs = factor(f)
        wit = {}
        if facs:
            q = next(q for q, k in facs if k > 1)
            wit = {"nilpotent": _fmt(back(divide_exact(f, q)))}
        return PropertyReport(Verdict.FALSE, "hypersurface with a repeated factor", wit)
    zero = IdealHandle(Q, [])
    for i in range(Q.nvars):
        if radical_member(Q.ring.var(i), zero):
            return PropertyReport(Verdict.FALSE, "nilpotent variable",
                                  {"nilpotent": Q.variables[i]})
    return PropertyReport(Verdict.UNKNOWN, "no supported reducedness path")


def is_vnr(A: RingPresentation) -> PropertyReport:
    d = krull_dim(A)
    if d != 0:
        return PropertyReport(Verdict.FALSE, f"Krull dimension {d}")
    red = is_reduced(A)
    if red.verdict is Verdict.TRUE:
        return PropertyReport(Verdict.TRUE, "reduced and zero-dimensional")
    return PropertyReport(red.verdict, "zero-dimensional; " + red.detail, red.witness)


def total_quotient_dim(A: RingPresentation) -> tuple[int | None, dict]:
    """dim Q(A): longest prime chain inside the zero-divisor locus."""
    if krull_dim(A) == 0:
        return 0, {"reason": "zero-dimensional ring"}
    Q, _ = A.simplified()
    if Q.is_monomial and not Q.is_polynomial_ring:
        zero = IdealHandle(Q, [])
        ass = monomial_associated_primes(zero)
        mins = [P for P in ass if not any(R is not P and P.contains_prime(R) for R in ass)]
        best, chain = 0, None
        for Pa in ass:
            for Pm in mins:
                if Pa.contains_prime(Pm):
                    h = len(set(Pa.variables) - set(Pm.variables))
                    if h > best or chain is None:
                        best, chain = max(best, h), (Pm.label, Pa.label)
        return best, {"associated": [P.label for P in ass], "minimal": [P.label for P in mins],
                      "chain": list(chain) if chain else []}
    if domain_check(A).verdict is Verdict.TRUE:
        return 0, {"reason": "domain: Q(A) is a field"}
    if is_reduced(A).verdict is Verdict.TRUE:
        return 0, {"reason": "reduced: associated primes are minimal"}
    return None, {"reason": "associated primes not computable on this path"}


# ---------- idempotents from J^2 = J ----------

@dataclass
class IdempotentCertificate:
    generators: list[Poly]
    matrix: list[list[Poly]]
    a: Poly
    b: Poly
    e: Poly
    proofs: list[tuple[str, Poly]]  # (label, expression that must vanish in A)

    def to_json(self) -> dict:
        return {
            "generators": [_fmt(p) for p in self.generators],
            "M": [[_fmt(m) for m in row] for row in self.matrix],
            "a": _fmt(self.a), "b": _fmt(self.b), "e": _fmt(self.e),
            "residues": [{"claim": lab, "expression": _fmt(f)} for lab, f in self.proofs],
        }


def _det(mat: list[list[Poly]], A: RingPresentation) -> Poly:
    n = len(mat)
    if n == 0:
        return A.ring.one
    if n == 1:
        return mat[0][0]
    out = A.ring.zero
    for j in range(n):
        if not mat[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = mat[0][j] * _det(minor, A)
        out = out + term if j % 2 == 0 else out - term
    return A.reduce(out)


def idempotent_from_idem_ideal(J: IdealHandle) -> IdempotentCertificate:
    """Determinant trick: p = M p with M over J gives (1 + a) J = 0, a in J."""
    A = J.ring
    R = A.ring
    if J.is_zero:
        return IdempotentCertificate([], [], R.zero, R.zero, R.zero, [])
    if J.is_unit:
        one = R.one
        return IdempotentCertificate(list(J.gens), [], one, one, one, [])
    if not ideal_equal(ideal_combine("product", J, J), J):
        raise PreconditionError(f"J^2 != J for J = {J}")
    ps = list(J.minimal_generators().gens)
    n = len(ps)
    pairs = [(j, k) for j in range(n) for k in range(j, n)]
    prods = [ps[j] * ps[k] for j, k in pairs]
    rels = list(A.gb.elements)
    M = [[R.zero] * n for _ in range(n)]
    for i, p in enumerate(ps):
        cof = lift(p, prods + rels)
        if cof is None:
            raise InvariantError(f"generator {p} does not lift through J^2")
        for (j, k), c in zip(pairs, cof):
            # c * p_j * p_k: put p_j into the coefficient of p_k
            M[i][k] = A.reduce(M[i][k] + c * ps[j])
    IM = [[(R.one if i == j else R.zero) - M[i][j] for j in range(n)] for i in range(n)]
    a = A.reduce(_det(IM, A) - 1)
    cof = lift(a, [a * a] + rels) if a else [R.zero]
    if cof is None:
        raise InvariantError("a does not lie in (a^2)")
    b = A.reduce(cof[0]) if a else R.zero
    e = A.reduce(a * b)
    proofs = [(f"(a+1)*p{i + 1} = 0", (a + 1) * p) for i, p in enumerate(ps)]
    proofs.append(("a - a^2*b = 0", a - a * a * b))
    proofs.append(("e^2 - e = 0", e * e - e))
    proofs += [(f"p{i + 1} - e*p{i + 1} = 0", p - e * p) for i, p in enumerate(ps)]
    cert = IdempotentCertificate(ps, M, a, b, e, proofs)
    check(verify_idempotent(cert, A, J), "idempotent certificate failed verification")
    return cert


def verify_idempotent(cert: IdempotentCertificate, A: RingPresentation, J: IdealHandle) -> bool:
    """Recheck every residue with a freshly computed GB (no cached bases)."""
    gb = buchberger(list(A.relations)) if A.relations else None
    red = (lambda f: gb.reduce(f)) if gb is not None else (lambda f: f)  # noqa: E731
    if any(red(f) for _, f in cert.proofs):
        return False
    if any(red(p - sum((m * q for m, q in zip(row, cert.generators)), A.ring.zero))
           for p, row in zip(cert.generators, cert.matrix)):
        return False
    fresh = buchberger(list(J.gens) + list(A.relations)) if J.gens else None
    if fresh is not None and (fresh.reduce(cert.e) or fresh.reduce(cert.a)):
        return False
    return True


# ---------- splitting ----------

@dataclass
class SplitResult:
    verdict: Verdict  # TRUE: split found; FALSE: refuted (not semi-hereditary); ILL_POSED: hypothesis fails
    detail: str
    prime: IdealHandle
    certificate: IdempotentCertificate | None = None
    components: tuple[RingPresentation, RingPresentation] | None = None
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"verdict": str(self.verdict), "detail": self.detail, "prime": repr(self.prime)}
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        if self.components is not None:
            out["components"] = [repr(c) for c in self.components]
        if self.witness:
            out["witness"] = self.witness
        return out


def split_at_prime(A: RingPresentation, P: IdealHandle) -> SplitResult:
    pv = is_prime(P)
    if pv.verdict is not Verdict.TRUE:
        return SplitResult(Verdict.ILL_POSED, f"P is not known to be prime ({pv.evidence})", P)
    for p in P.gens:
        if annihilator(p, A).is_zero:
            return SplitResult(Verdict.ILL_POSED, "hypothesis fails: a generator of P is regular", P,
                               witness={"regular_generator": _fmt(p)})
    P2 = ideal_combine("product", P, P)
    for p in P.gens:
        if not P2.contains(p):
            return SplitResult(Verdict.FALSE, "not splittable; ring is not semi-hereditary (P^2 != P)",
                               P, witness={"generator_not_in_P2": _fmt(p)})
    cert = idempotent_from_idem_ideal(P)
    e = cert.e
    left = A.quotient([e]).simplified()[0]
    right = A.quotient([1 - e]).simplified()[0]
    check(reconstruction_holds(A, e), "A -> A/eA x A/(1-e)A is not an isomorphism")
    return SplitResult(Verdict.TRUE, "P = (e) with e idempotent", P, cert, (left, right))


def split_at_minimal_prime(A: RingPresentation, P: IdealHandle) -> SplitResult:
    return split_at_prime(A, P)


def reconstruction_holds(A: RingPresentation, e: Poly) -> bool:
    """e(1-e) = 0, (e) + (1-e) = (1) and (e) ∩ (1-e) = 0 in A."""
    E, F = IdealHandle(A, [e]), IdealHandle(A, [1 - e])
    return (A.is_zero(e * (1 - e)) and ideal_combine("sum", E, F).is_unit
            and intersect(E, F).is_zero)


# ---------- decomposition ----------

@dataclass
class DecompositionNode:
    ring: RingPresentation
    split: SplitResult | None = None
    children: list["DecompositionNode"] = field(default_factory=list)
    domain: Verdict = Verdict.UNKNOWN
    note: str = ""
    refutation: SplitResult | None = None

    @property
    def leaves(self) -> list["DecompositionNode"]:
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves]

    @property
    def split_count(self) -> int:
        return (1 if self.children else 0) + sum(c.split_count for c in self.children)

    def to_json(self) -> dict:
        out = {"ring": repr(self.ring)}
        if self.children:
            out["split"] = self.split.to_json()
            out["children"] = [c.to_json() for c in self.children]
        else:
            out["domain"] = str(self.domain)
            if self.note:
                out["note"] = self.note
            if self.refutation is not None:
                out["refutation"] = self.refutation.to_json()
        return out


def decompose_fully(A: RingPresentation) -> DecompositionNode:
    mins = minimal_primes(A)
    if mins is None:
        return DecompositionNode(A, domain=domain_check(A).verdict, note="minimal primes not computable")
    if len(mins) <= 1:
        return DecompositionNode(A, domain=domain_check(A).verdict, note="single minimal prime")
    failures = []
    for P in sorted(mins, key=lambda P: P.label):
        res = split_at_minimal_prime(A, P.ideal)
        if res.verdict is Verdict.TRUE:
            kids = [decompose_fully(C) for C in res.components]
            return DecompositionNode(A, res, kids)
        failures.append(res)
    refusal = next((r for r in failures if r.verdict is Verdict.FALSE), failures[0])
    return DecompositionNode(A, domain=Verdict.FALSE, note="no minimal prime splits off",
                             refutation=refusal)


# ---------- regularity / Dedekind ----------

@dataclass
class RegularityReport:
    dimension: int
    jacobian_minors: list[Poly]
    singular_locus: list[Poly]  # GB of I + minors; [1] means empty
    smooth: bool
    equidimensional_assumed: bool = True

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "jacobian_minors": [_fmt(f) for f in self.jacobian_minors],
            "singular_locus": [_fmt(f) for f in self.singular_locus],
            "smooth": self.smooth,
            "equidimensional_assumed": self.equidimensional_assumed,
        }


def jacobian_report(A: RingPresentation) -> RegularityReport:
    Q, _ = A.simplified()
    d = krull_dim(Q)
    n = Q.nvars
    rels = list(Q.gb.elements)
    k = n - d
    jac = [[f.diff(i) for i in range(n)] for f in rels]
    minors: list[Poly] = []
    if k == 0:
        minors = [Q.ring.one]
    elif k <= len(rels):
        for ri in itertools.combinations(range(len(rels)), k):
            for ci in itertools.combinations(range(n), k):
                m = _det([[jac[r][c] for c in ci] for r in ri], Q)
                if m:
                    minors.append(m)
    sing = IdealHandle(Q, minors)
    smooth = sing.is_unit
    return RegularityReport(d, minors, [] if smooth else list(sing.lifted_gb.elements), smooth)


def is_dedekind_domain(A: RingPresentation) -> tuple[PropertyReport, RegularityReport | None]:
    dv = domain_check(A)
    if dv.verdict is not Verdict.TRUE:
        return PropertyReport(dv.verdict if dv.verdict is Verdict.UNKNOWN else Verdict.FALSE,
                              "not a domain: " + dv.evidence), None
    d = krull_dim(A)
    if d == 0:
        return PropertyReport(Verdict.TRUE, "field (counted as Dedekind by convention)"), None
    if d > 1:
        return PropertyReport(Verdict.FALSE, f"dimension {d} > 1"), None
    reg = jacobian_report(A)
    if reg.smooth:
        return PropertyReport(Verdict.TRUE, "one-dimensional domain with empty singular locus"), reg
    return PropertyReport(Verdict.FALSE, "singular one-dimensional domain",
                          {"singular_locus": [_fmt(f) for f in reg.singular_locus]}), reg


@dataclass
class Classification:
    verdict: Verdict
    detail: str
    reduced: PropertyReport
    tree: DecompositionNode | None = None
    leaves: list[tuple[PropertyReport, RegularityReport | None]] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"verdict": str(self.verdict), "detail": self.detail, "reduced": self.reduced.to_json()}
        if self.tree is not None:
            out["decomposition"] = self.tree.to_json()
        if self.leaves:
            out["leaves"] = [{"ring": repr(n.ring), "dedekind": r.to_json(),
                              "regularity": g.to_json() if g else None}
                             for n, (r, g) in zip(self.tree.leaves, self.leaves)]
        return out


def classify(A: RingPresentation) -> Classification:
    """Noetherian semi-hereditary <=> finite product of Dedekind domains."""
    red = is_reduced(A)
    if red.verdict is Verdict.FALSE:
        return Classification(Verdict.FALSE, "not reduced", red)
    if red.verdict is not Verdict.TRUE:
        return Classification(Verdict.UNKNOWN, "reducedness undecided", red)
    if krull_dim(A) == 0:
        return Classification(Verdict.TRUE, "reduced zero-dimensional: finite product of fields", red)
    tree = decompose_fully(A)
    leaves = tree.leaves
    for leaf in leaves:
        if leaf.refutation is not None and leaf.refutation.verdict is Verdict.FALSE:
            return Classification(Verdict.FALSE, "a minimal prime does not split off", red, tree)
    reports = [is_dedekind_domain(leaf.ring) for leaf in leaves]
    verdicts = {r.verdict for r, _ in reports}
    if verdicts == {Verdict.TRUE}:
        v, why = Verdict.TRUE, "finite product of Dedekind domains"
    elif Verdict.FALSE in verdicts:
        v, why = Verdict.FALSE, "a component is not a Dedekind domain"
    else:
        v, why = Verdict.UNKNOWN, "a component could not be decided"
    check(tree.split_count + 1 == len(leaves), "leaf count must exceed split count by one")
    return Classification(v, why, red, tree, reports)


# ---------- Frobenius ----------

@dataclass
class FrobeniusReport:
    characteristic: int
    verdict: Verdict
    regularity: RegularityReport
    oracle: Verdict | None = None
    oracle_detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "characteristic": self.characteristic,
            "verdict": "flat" if self.verdict is Verdict.TRUE else
                       "not-flat" if self.verdict is Verdict.FALSE else "unknown",
            "regularity": self.regularity.to_json(),
            "pushforward_oracle": None if self.oracle is None else str(self.oracle),
            "pushforward": self.oracle_detail,
        }


def frobenius_pushforward(A: RingPresentation):
    """F_*A presented over A: generators x^g (0 <= g_i < p), relations f*x^g
    rewritten through x^b = (x^q)^p x^c."""
    from .fpmodule import FPModule
    p = A.field.p
    R = A.ring
    n = A.nvars
    basis = list(itertools.product(range(p), repeat=n))
    index = {g: i for i, g in enumerate(basis)}
    cols = []
    for f in A.gb.elements:
        for g in basis:
            col = [dict() for _ in basis]
            for m, c in f.terms.items():
                b = tuple(x + y for x, y in zip(m, g))
                q = tuple(e // p for e in b)
                r = tuple(e % p for e in b)
                slot = col[index[r]]
                slot[q] = (slot.get(q, 0) + c) % p
            cols.append([R.from_dict(d) for d in col])
    rows = [[c[i] for c in cols] for i in range(len(basis))]
    return FPModule(A, len(basis), len(cols), rows)


def frobenius_flat(A: RingPresentation, oracle: bool | None = None) -> FrobeniusReport:
    """Kunz: Frobenius is flat iff A is regular (Jacobian test, equidimensional)."""
    from .fpmodule import is_flat_fp, prune
    p = A.field.p
    if not p:
        raise PreconditionError("Frobenius check needs a prime field GF(p)")
    reg = jacobian_report(A)
    verdict = Verdict.of(reg.smooth)
    rep = FrobeniusReport(p, verdict, reg)
    use_oracle = (A.nvars <= 2 and p <= 5) if oracle is None else oracle
    if use_oracle:
        F = frobenius_pushforward(A)
        pr = prune(F).module
        flat = is_flat_fp(pr)
        rep.oracle = flat.verdict
        rep.oracle_detail = {"generators": F.ngens, "pruned_generators": pr.ngens,
                             "pruned_relations": pr.ncols, "flat": flat.to_json()}
        check(flat.verdict is verdict, "Jacobian verdict disagrees with the pushforward oracle")
    return rep
