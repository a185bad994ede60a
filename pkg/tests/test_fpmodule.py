import random

import pytest

from conftest import load, ring
from ringcheck.errors import PreconditionError, Verdict
from ringcheck.fpmodule import (FPModule, fitting_chain, fitting_ideal, is_flat_fp,
                                is_torsion_free, is_torsion_free_localized, module_annihilator,
                                prune, regular_elements_are_units, verify_torsion_witness)
from ringcheck.idealcalc import IdealHandle, ideal_equal, is_regular_element
from ringcheck.lang import parse_poly
from ringcheck.poly import monomials_up_to

EX46 = """
ring A = QQ[x,y,z] / (x*y, y*z, z^2);
ideal P in A = (x, y);
module M over A = coker [[x]];
"""

EX48 = """
ring A = QQ[x,y] / (x^2, x*y) local;
ideal P in A = (x);
ideal Pm in A = (x, y);
module M1 over A = coker [[x]];
module M2 over A = coker [[y]];
module M6 over A = coker [[x, 0], [0, y]];
"""


def test_shape_mismatch_rejected():
    A = ring("QQ[x]")
    with pytest.raises(PreconditionError):
        FPModule(A, 2, 1, [[A.ring.one]])


def test_cyclic_module_over_chain_ring_not_torsion_free():
    prog = load(EX46)
    M = prog.modules["M"]
    rep = is_torsion_free(M)
    assert rep.verdict is Verdict.FALSE
    assert rep.witness_json() == {"a": "x + y", "m": "(z)"}
    assert verify_torsion_witness(M, rep.regular, rep.element)


def test_localization_at_non_prime_is_ill_posed():
    prog = load(EX46)
    rep = is_torsion_free_localized(prog.modules["M"], prog.ideals["P"])
    assert rep.verdict is Verdict.ILL_POSED


def test_local_ring_with_socle():
    prog = load(EX48)
    A = prog.rings["A"]
    assert regular_elements_are_units(A)[0] is Verdict.TRUE
    for name in ("M1", "M2", "M6"):
        M = prog.modules[name]
        assert is_torsion_free(M).verdict is Verdict.TRUE
        for P in ("P", "Pm"):
            assert is_torsion_free_localized(M, prog.ideals[P]).verdict is Verdict.TRUE


def test_regular_non_unit_found():
    A = ring("QQ[x,y,z]/(x*y, y*z, z^2)")
    v, info = regular_elements_are_units(A)
    assert v is Verdict.FALSE
    assert is_regular_element(parse_poly(info["regular_nonunit"], A.ring), A)


def test_fitting_ideals_of_cyclic():
    A = ring("QQ[x,y]")
    M = FPModule.cyclic(A, [parse_poly("x", A.ring), parse_poly("y^2", A.ring)])
    F0, F1 = fitting_chain(M)
    assert ideal_equal(F0, IdealHandle(A, [parse_poly(s, A.ring) for s in ("x", "y^2")]))
    assert F1.is_unit
    assert ideal_equal(module_annihilator(M), F0)


def test_fitting_of_free_module():
    A = ring("QQ[x]")
    M = FPModule.free(A, 2)
    assert fitting_ideal(M, 0).is_zero and fitting_ideal(M, 1).is_zero
    assert fitting_ideal(M, 2).is_unit
    assert is_flat_fp(M).verdict is Verdict.TRUE


def test_prune_drops_unit_relations():
    A = ring("QQ[x]")
    x = A.ring.var(0)
    M = FPModule(A, 2, 1, [[A.ring.one], [x]])
    assert prune(M).module.ngens == 1


def test_flatness_examples():
    B = ring("QQ[x]/(x^2 - x)")
    x = B.ring.var(0)
    rep = is_flat_fp(FPModule.cyclic(B, [x]))
    assert rep.verdict is Verdict.TRUE and rep.idempotents
    L = ring("QQ[x]")
    rep = is_flat_fp(FPModule.cyclic(L, [L.ring.var(0)]))
    assert rep.verdict is Verdict.FALSE and rep.failing_index == 0


def _random_module(A, rng):
    monos = monomials_up_to(A.nvars, 2)

    def rp():
        if rng.random() < 0.3:
            return A.ring.zero
        terms = {m: rng.randint(-2, 2) for m in rng.sample(monos, min(len(monos), rng.randint(1, 2)))}
        return A.reduce(A.ring.from_dict(terms))

    g, c = rng.randint(1, 2), rng.randint(0, 2)
    return FPModule(A, g, c, [[rp() for _ in range(c)] for _ in range(g)])


@pytest.mark.parametrize("text", ["QQ[x]", "QQ[x,y]/(x^2 - x)", "QQ[x,y]/(x*y)",
                                  "QQ[x,y]/(x^2, x*y)"])
def test_random_modules_witnesses_and_flatness(text):
    A = ring(text)
    rng = random.Random(text)
    for _ in range(12):
        M = _random_module(A, rng)
        tf = is_torsion_free(M)
        fl = is_flat_fp(M)
        if tf.verdict is Verdict.FALSE:
            assert verify_torsion_witness(M, tf.regular, tf.element)
        # flat modules are always torsion-free
        if fl.verdict is Verdict.TRUE:
            assert tf.verdict is not Verdict.FALSE
