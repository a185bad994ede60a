"""Acceptance criteria 1-10, each printed as one PASS/FAIL line."""

import itertools
import random
import subprocess
import sys
import time

from conftest import load, ring
from oracle import certificate_degree
from ringcheck.corpus import corpus_dir, load_corpus, run_item
from ringcheck.engine import evaluate, reverify_certificate, reverify_witness
from ringcheck.errors import Verdict
from ringcheck.fpmodule import FPModule, is_flat_fp, is_torsion_free
from ringcheck.groebner import ideal_member
from ringcheck.idealcalc import is_prime, monomial_minimal_primes, IdealHandle
from ringcheck.poly import GF, PolyRing, monomials_up_to
from ringcheck.ringstruct import (classify, frobenius_flat, is_vnr, split_at_prime,
                                  total_quotient_dim, verify_idempotent)

ORACLE_CAP = 14


def _corpus_program(name):
    return load((corpus_dir() / name).read_text())


def test_criterion_01_groebner_oracle(criterion):
    rng = random.Random(1)
    t0 = time.perf_counter()
    queries = disagreements = 0
    for _ in range(220):
        n = rng.randint(1, 3)
        R = PolyRing(["x", "y", "z"][:n], GF(5))
        monos = monomials_up_to(n, 3)

        def rp(d=3, terms=3):
            ms = [m for m in monos if sum(m) <= d]
            picks = rng.sample(ms, min(len(ms), rng.randint(1, terms)))
            return R.from_dict({m: rng.randint(1, 4) for m in picks})

        gens = [rp() for _ in range(rng.randint(1, 3))]
        member = R.zero
        for g in gens:
            member = member + rp(1, 2) * g
        for f in (member, rp(), member + rp(2, 1)):
            queries += 1
            found = certificate_degree(f, gens, ORACLE_CAP) is not None
            if ideal_member(f, gens) != found:
                disagreements += 1
    elapsed = time.perf_counter() - t0
    ok = disagreements == 0 and elapsed < 60
    criterion(1, ok, f"220 ideals, {queries} queries, {disagreements} disagreements, {elapsed:.1f}s")


def test_criterion_02_local_example(criterion):
    prog = _corpus_program("ex-4.8.ring")
    ass = evaluate(prog, "assprimes", "A").value
    dimq = evaluate(prog, "dimq", "A").value
    local = []
    for name in prog.modules:
        for at in ("P", "Pm"):
            local.append(evaluate(prog, "torsion_free", name, at).value)
    ok = sorted(ass) == ["(x)", "(x, y)"] and dimq == 1 and set(local) == {"true"}
    criterion(2, ok, f"Ass={ass} dimQ={dimq} localized torsion-free {local.count('true')}/{len(local)}")


def test_criterion_03_minimal_primes_n5(criterion):
    prog = _corpus_program("ex-4.7-n5.ring")
    A = prog.rings["A"]
    got = {frozenset(P.variables) for P in monomial_minimal_primes(IdealHandle(A, []))}
    names = [f"X{i}" for i in range(1, 6)]
    want = {frozenset(names[2:])} | {frozenset(v for v in names if v != f"X{i}") for i in (3, 4, 5)}
    criterion(3, got == want, f"{len(got)} minimal primes, exact set equality {got == want}")


def test_criterion_04_chain_example_audit(criterion):
    prog = _corpus_program("ex-4.6.ring")
    pv = is_prime(prog.ideals["P"])
    a_ok = pv.verdict is Verdict.FALSE and str(pv.witness.get("nilpotent")) == "z"
    out = evaluate(prog, "torsion_free", "M")
    w = out.witnesses[0] if out.witnesses else {}
    b_ok = (out.value == "false" and w.get("a") == "x + y" and w.get("m") == "(z)"
            and reverify_witness(prog, w))
    dimq, _ = total_quotient_dim(prog.rings["A"])
    c_ok = dimq == 0
    item = next(i for i in load_corpus() if i.ident == "ex-4.6")
    report = run_item(item)
    status = {c["anchor"].split("/")[1]: c["status"] for c in report["claims"]}
    d_ok = (all(status[k] == "mismatch-flag" for k in ("P-prime", "M-torsion-free", "dim-Q(A)"))
            and report["expected"])
    criterion(4, a_ok and b_ok and c_ok and d_ok,
              f"(a) {a_ok} (b) {b_ok} (c) dimQ={dimq} (d) flagged without failing {d_ok}")


def test_criterion_05_splitting(criterion):
    prog = _corpus_program("prop-5-split.ring")
    C = prog.rings["C"]
    res = split_at_prime(C, prog.ideals["Px"])
    fresh = verify_idempotent(res.certificate, C, res.prime)
    engine_cert = evaluate(prog, "split", "C", "Px").certificates
    fresh_engine = all(reverify_certificate(c) for c in engine_cert) and bool(engine_cert)
    target = ring("QQ[y]")
    comps = res.components is not None and all(c.same_as(target) for c in res.components)
    D = prog.rings["D"]
    ref = split_at_prime(D, prog.ideals["Dx"])
    refused = (ref.verdict is Verdict.FALSE and "not semi-hereditary" in ref.detail
               and ref.witness.get("generator_not_in_P2") == "x")
    ok = res.verdict is Verdict.TRUE and fresh and fresh_engine and comps and refused
    criterion(5, ok, f"certificate verified {fresh and fresh_engine}, components QQ[y] x2 {comps}, "
                     f"(xy) refused with witness x {refused}")


CLASSIFY = [
    ("QQ[x]", True), ("QQ[x,y]/(y^2 - x^3 + x)", True), ("QQ[x,y]/(x^2 - x)", True),
    ("QQ[x,y]/(x*y)", False), ("QQ[x,y]/(y^2 - x^3)", False), ("QQ[x,y,z]/(x*y, y*z, z^2)", False),
]


def test_criterion_06_classifier(criterion):
    right = sum(classify(ring(t)).verdict is Verdict.of(v) for t, v in CLASSIFY)
    criterion(6, right == 6, f"{right}/6 rings classified correctly")


def _random_module(A, rng):
    monos = monomials_up_to(A.nvars, 2)

    def rp():
        if rng.random() < 0.3:
            return A.ring.zero
        picks = rng.sample(monos, min(len(monos), rng.randint(1, 2)))
        return A.reduce(A.ring.from_dict({m: rng.randint(-2, 2) for m in picks}))

    g, c = rng.randint(1, 2), rng.randint(0, 2)
    return FPModule(A, g, c, [[rp() for _ in range(c)] for _ in range(g)])


def test_criterion_07_torsion_free_implies_flat(criterion):
    rings = [ring(t) for t, v in CLASSIFY if classify(ring(t)).verdict is Verdict.TRUE]
    rng = random.Random(7)
    decided = violations = converse = tested = 0
    while decided < 60 and tested < 3000:
        A = rings[tested % len(rings)]
        M = _random_module(A, rng)
        tested += 1
        tf, fl = is_torsion_free(M), is_flat_fp(M)
        if tf.verdict is Verdict.TRUE:
            decided += 1
            violations += fl.verdict is not Verdict.TRUE
        if fl.verdict is Verdict.TRUE and tf.verdict is Verdict.FALSE:
            converse += 1
    ok = decided >= 50 and violations == 0 and converse == 0
    criterion(7, ok, f"{len(rings)} rings, {decided} torsion-free modules of {tested}, "
                     f"{violations} not flat, {converse} flat but not torsion-free")


def test_criterion_08_vnr(criterion):
    prog = _corpus_program("cor-4.3-vnr.ring")
    got = {name: is_vnr(A).verdict for name, A in prog.rings.items()}
    want = {"K": Verdict.TRUE, "F": Verdict.TRUE, "B": Verdict.TRUE,
            "Z": Verdict.FALSE, "L": Verdict.FALSE}
    criterion(8, got == want, ", ".join(f"{k}={v}" for k, v in sorted(got.items())))


def test_criterion_09_frobenius(criterion):
    prog = _corpus_program("kunz.ring")
    want = {"L": Verdict.TRUE, "Pl": Verdict.TRUE, "Cu": Verdict.FALSE}
    reports = {name: frobenius_flat(A, oracle=True) for name, A in prog.rings.items()}
    desk = all(reports[k].verdict is v for k, v in want.items())
    agree = all(r.oracle is r.verdict for name, r in reports.items()
                if prog.rings[name].nvars <= 2)
    criterion(9, desk and agree, f"desk check {desk}, Jacobian = pushforward oracle on "
                                 f"{len(reports)} items {agree}")


def test_criterion_10_determinism(criterion):
    cmd = [sys.executable, "-m", "ringcheck.cli", "corpus", "--no-timing"]
    t0 = time.perf_counter()
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    elapsed = (time.perf_counter() - t0) / 2
    ok = (first.returncode == second.returncode == 0 and first.stdout == second.stdout
          and elapsed < 300)
    criterion(10, ok, f"byte-identical {first.stdout == second.stdout}, exit "
                      f"{first.returncode}/{second.returncode}, {elapsed:.1f}s per run")
