"""Named operations over a parsed program, shared by the CLI and the corpus.

Each operation returns an :class:`Outcome` whose ``value`` is JSON-ready and
whose witnesses/certificates are re-verified by :func:`reverify_witness` and
:func:`reverify_certificate` with fresh
Groebner bases before they are reported.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .errors import InvariantError, RingcheckError
from .fpmodule import (
    FPModule,
    is_flat_fp,
    is_torsion_free,
    is_torsion_free_localized,
    regular_elements_are_units,
    scale_vec,
)
from .groebner import buchberger, divide_exact, intersect_polys, submodule_basis
from .idealcalc import (
    IdealHandle,
    is_prime,
    krull_dim,
    minimal_primes,
    monomial_associated_primes,
    radical_member,
)
from .lang import Program, parse_poly
from .poly import Poly, format_poly
from .presentation import RingPresentation
from .ringstruct import (
    classify,
    decompose_fully,
    frobenius_flat,
    is_dedekind_domain,
    is_reduced,
    is_vnr,
    split_at_prime,
    total_quotient_dim,
)


@dataclass
class Outcome:
    value: object
    detail: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    certificates: list = field(default_factory=list)


def _ring(prog: Program, name: str) -> RingPresentation:
    if name not in prog.rings:
        raise RingcheckError(f"{name!r} is not a declared ring")
    return prog.rings[name]


def _ideal(prog: Program, name: str) -> IdealHandle:
    if name not in prog.ideals:
        raise RingcheckError(f"{name!r} is not a declared ideal")
    return prog.ideals[name]


def _module(prog: Program, name: str) -> FPModule:
    if name not in prog.modules:
        raise RingcheckError(f"{name!r} is not a declared module")
    return prog.modules[name]


def _ring_or_ideal_quotient(prog: Program, name: str) -> RingPresentation:
    if name in prog.ideals:
        return prog.ideals[name].quotient_ring()
    return _ring(prog, name)


def _poly_json(witness: dict) -> dict:
    return {k: format_poly(v) if isinstance(v, Poly) else v for k, v in witness.items()}


# ---------- operations ----------

def op_prime(prog, target, at=None):
    I = _ideal(prog, target)
    pv = is_prime(I)
    wit = _poly_json(pv.witness)
    w = [{"kind": "prime", "ideal": target, **wit}] if wit else []
    return Outcome(str(pv.verdict), {"evidence": pv.evidence}, w)


def op_domain(prog, target, at=None):
    from .idealcalc import domain_check
    pv = domain_check(_ring(prog, target))
    wit = _poly_json(pv.witness)
    return Outcome(str(pv.verdict), {"evidence": pv.evidence},
                   [{"kind": "domain", "ring": target, **wit}] if wit else [])


def op_torsion_free(prog, target, at=None):
    M = _module(prog, target)
    rep = is_torsion_free_localized(M, _ideal(prog, at)) if at else is_torsion_free(M)
    w = []
    if rep.regular is not None:
        w.append({"kind": "torsion", "module": target, "at": at, **rep.witness_json()})
    return Outcome(str(rep.verdict), rep.to_json(), w)


def op_flat(prog, target, at=None):
    rep = is_flat_fp(_module(prog, target))
    return Outcome(str(rep.verdict), rep.to_json())


def op_reduced(prog, target, at=None):
    rep = is_reduced(_ring(prog, target))
    return Outcome(str(rep.verdict), rep.to_json(),
                   [{"kind": "nilpotent", "ring": target, **rep.witness}] if "nilpotent" in rep.witness else [])


def op_vnr(prog, target, at=None):
    rep = is_vnr(_ring(prog, target))
    return Outcome(str(rep.verdict), rep.to_json())


def op_dedekind(prog, target, at=None):
    rep, reg = is_dedekind_domain(_ring(prog, target))
    d = rep.to_json()
    if reg is not None:
        d["regularity"] = reg.to_json()
    return Outcome(str(rep.verdict), d)


def op_regular_units(prog, target, at=None):
    v, d = regular_elements_are_units(_ring(prog, target))
    w = [{"kind": "regular", "ring": target, "a": d["regular_nonunit"]}] if "regular_nonunit" in d else []
    return Outcome(str(v), d, w)


def op_units_at_origin(prog, target, at=None):
    """Every regular element has a nonzero constant term (regular elements of the
    localization at the origin are units)."""
    A = _ring(prog, target)
    local = RingPresentation(A.ring, A.relations, local=True)
    v, d = regular_elements_are_units(local)
    w = [{"kind": "regular", "ring": target, "a": d["regular_nonunit"]}] if "regular_nonunit" in d else []
    return Outcome(str(v), d, w)


def op_dim(prog, target, at=None):
    return Outcome(krull_dim(_ring_or_ideal_quotient(prog, target)))


def op_dimq(prog, target, at=None):
    d, info = total_quotient_dim(_ring(prog, target))
    return Outcome("unknown" if d is None else d, info)


def op_minprimes(prog, target, at=None):
    A = _ring_or_ideal_quotient(prog, target)
    primes = minimal_primes(A)
    if primes is None:
        return Outcome("unknown", {"reason": "minimal primes not computable on this path"})
    return Outcome(sorted(P.label for P in primes), {"evidence": [P.evidence for P in primes]})


def op_assprimes(prog, target, at=None):
    A = _ring_or_ideal_quotient(prog, target)
    if not A.is_monomial:
        return Outcome("unknown", {"reason": "associated primes are computed for monomial ideals only"})
    primes = monomial_associated_primes(IdealHandle(A, []))
    w = [{"kind": "associated", "prime": P.label, "w": format_poly(P.witness)} for P in primes]
    return Outcome(sorted(P.label for P in primes), {}, w)


def op_classify(prog, target, at=None):
    c = classify(_ring(prog, target))
    certs = []
    if c.tree is not None:
        certs = _tree_certificates(c.tree)
    return Outcome(str(c.verdict), c.to_json(), [], certs)


def _tree_certificates(node) -> list:
    out = []
    if node.children:
        out.append({"kind": "split", "ring": repr(node.ring), **node.split.certificate.to_json(),
                    "_ring": node.ring, "_prime": node.split.prime, "_cert": node.split.certificate})
        for c in node.children:
            out += _tree_certificates(c)
    return out


def op_decompose(prog, target, at=None):
    tree = decompose_fully(_ring(prog, target))
    return Outcome(sorted(repr(l.ring) for l in tree.leaves), tree.to_json(), [],
                   _tree_certificates(tree))


def op_split(prog, target, at=None):
    A = _ring(prog, target)
    res = split_at_prime(A, _ideal(prog, at))
    certs, wits = [], []
    if res.certificate is not None:
        certs.append({"kind": "split", "ring": target, **res.certificate.to_json(),
                      "_ring": A, "_prime": res.prime, "_cert": res.certificate})
    if "generator_not_in_P2" in res.witness:
        wits.append({"kind": "not_in_square", "ring": target, "ideal": at,
                     "p": res.witness["generator_not_in_P2"]})
    value = {"true": "split", "false": "refused", "ill-posed": "ill-posed"}[str(res.verdict)]
    return Outcome(value, res.to_json(), wits, certs)


def op_frobenius(prog, target, at=None):
    rep = frobenius_flat(_ring(prog, target))
    return Outcome(rep.to_json()["verdict"], rep.to_json())


OPERATIONS: dict[str, Callable] = {
    "prime": op_prime,
    "domain": op_domain,
    "torsion_free": op_torsion_free,
    "flat": op_flat,
    "reduced": op_reduced,
    "vnr": op_vnr,
    "dedekind": op_dedekind,
    "regular_units": op_regular_units,
    "units_at_origin": op_units_at_origin,
    "dim": op_dim,
    "dimq": op_dimq,
    "minprimes": op_minprimes,
    "assprimes": op_assprimes,
    "classify": op_classify,
    "decompose": op_decompose,
    "split": op_split,
    "frobenius": op_frobenius,
}


def evaluate(prog: Program, op: str, target: str, at: str | None = None) -> Outcome:
    if op not in OPERATIONS:
        raise RingcheckError(f"unknown operation {op!r}")
    out = OPERATIONS[op](prog, target, at)
    for w in out.witnesses:
        if not reverify_witness(prog, w):
            raise InvariantError(f"witness failed re-verification: {w}")
    for c in out.certificates:
        if not reverify_certificate(c):
            raise InvariantError("certificate failed re-verification")
    return out


# ---------- independent re-verification ----------

def _fresh_gb(gens):
    gens = [g for g in gens if g]
    return buchberger(gens) if gens else None


def _nf(gb, f: Poly) -> Poly:
    return gb.reduce(f) if gb is not None else f


def reverify_witness(prog: Program, w: dict) -> bool:
    kind = w["kind"]
    if kind == "torsion":
        M = _module(prog, w["module"])
        A = M.ring
        a = parse_poly(w["a"], A.ring)
        vec = [parse_poly(s, A.ring) for s in _split_vec(w["m"])]
        rel = _fresh_gb(list(A.relations))
        N = submodule_basis(M.columns, M.ngens, A.ring, list(A.relations))
        if w.get("at"):
            return _local_torsion_ok(M, N, a, vec, _ideal(prog, w["at"]))
        return _regular_fresh(a, rel, A) and N.contains(scale_vec(a, vec)) and not N.contains(vec)
    if kind == "regular":
        A = _ring(prog, w["ring"])
        a = parse_poly(w["a"], A.ring)
        gb = _fresh_gb([a] + list(A.relations))
        return _regular_fresh(a, _fresh_gb(list(A.relations)), A) and not gb.is_unit
    if kind == "nilpotent":
        A = _ring(prog, w["ring"])
        f = parse_poly(w["nilpotent"], A.ring)
        rel = _fresh_gb(list(A.relations))
        return bool(_nf(rel, f)) and radical_member(f, IdealHandle(A, []))
    if kind == "prime":
        I = _ideal(prog, w["ideal"])
        A = I.ring
        gb = _fresh_gb(list(I.gens) + list(A.relations))
        if "nilpotent" in w:
            f = parse_poly(w["nilpotent"], A.ring)
            if "power" in w:
                return bool(_nf(gb, f)) and not _nf(gb, f ** int(w["power"]))
            return bool(_nf(gb, f)) and radical_member(f, I)
        if "left" in w:
            u, v = parse_poly(w["left"], A.ring), parse_poly(w["right"], A.ring)
            return bool(_nf(gb, u)) and bool(_nf(gb, v)) and not _nf(gb, u * v)
        return True
    if kind == "domain":
        A = _ring(prog, w["ring"])
        gb = _fresh_gb(list(A.relations))
        if "nilpotent" in w:
            f = parse_poly(w["nilpotent"], A.ring)
            return bool(_nf(gb, f)) and radical_member(f, IdealHandle(A, []))
        if "left" in w:
            u, v = parse_poly(w["left"], A.ring), parse_poly(w["right"], A.ring)
            return bool(_nf(gb, u)) and bool(_nf(gb, v)) and not _nf(gb, u * v)
        return True
    if kind == "associated":
        return True  # certified inside the monomial combinatorics
    if kind == "not_in_square":
        I = _ideal(prog, w["ideal"])
        A = I.ring
        p = parse_poly(w["p"], A.ring)
        sq = [f * g for f in I.gens for g in I.gens]
        return bool(_nf(_fresh_gb(sq + list(A.relations)), p))
    return False


def _regular_fresh(a: Poly, rel_gb, A: RingPresentation) -> bool:
    """a is a non-zero-divisor: (0 : a) = 0, recomputed from scratch."""
    if not _nf(rel_gb, a):
        return False
    rels = list(A.relations)
    if not rels:
        return True
    inter = intersect_polys(rels, [a])
    return all(not _nf(rel_gb, divide_exact(h, a)) for h in inter)


def _local_torsion_ok(M, N, a: Poly, vec, P: IdealHandle) -> bool:
    """a/1 regular non-unit of A_P, m/1 nonzero in M_P, a*m = 0."""
    from .fpmodule import ann_element
    from .idealcalc import annihilator, colon
    A = M.ring
    Pgb = _fresh_gb(list(P.gens) + list(A.relations))
    if not N.contains(scale_vec(a, vec)) or N.contains(vec) or _nf(Pgb, a):
        return False
    if any(_nf(Pgb, f) for f in ann_element(vec, M).gens):
        return False  # some s outside P kills m
    ann_a = annihilator(a, A)
    if ann_a.is_zero:
        return True
    # (0 : a) vanishes after localizing iff (0 : (0 : a)) is not inside P
    killers = colon(IdealHandle(A, []), ann_a)
    return any(_nf(Pgb, f) for f in killers.gens)


def _split_vec(s: str) -> list[str]:
    body = s.strip()[1:-1]
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    out.append(cur)
    return out


def reverify_certificate(c: dict) -> bool:
    from .ringstruct import verify_idempotent
    return verify_idempotent(c["_cert"], c["_ring"], c["_prime"])


def strip_private(obj):
    """Drop keys starting with '_' (live objects kept for re-verification)."""
    if isinstance(obj, dict):
        return {k: strip_private(v) for k, v in obj.items() if not k.startswith("_")}
    if isinstance(obj, list):
        return [strip_private(v) for v in obj]
    return obj
