import pytest

from conftest import ring
from ringcheck.errors import Verdict
from ringcheck.idealcalc import IdealHandle, ideal_equal
from ringcheck.lang import parse_poly
from ringcheck.ringstruct import (classify, decompose_fully, frobenius_flat,
                                  idempotent_from_idem_ideal, is_dedekind_domain, is_reduced,
                                  is_vnr, jacobian_report, reconstruction_holds, split_at_prime,
                                  total_quotient_dim, verify_idempotent)


def ideal(A, *gens):
    return IdealHandle(A, [parse_poly(g, A.ring) for g in gens])


@pytest.mark.parametrize("text,expected", [
    ("QQ[x,y]", Verdict.TRUE),
    ("QQ[x]/(x^2)", Verdict.FALSE),
    ("QQ[x,y,z]/(x*y, y*z, z^2)", Verdict.FALSE),
    ("QQ[x,y]/(x*y)", Verdict.TRUE),
    ("GF(3)[x]/(x^3 - x)", Verdict.TRUE),
])
def test_reduced(text, expected):
    assert is_reduced(ring(text)).verdict is expected


@pytest.mark.parametrize("text,expected", [
    ("QQ[]", Verdict.TRUE), ("GF(5)[]", Verdict.TRUE), ("QQ[x]/(x^2 - x)", Verdict.TRUE),
    ("QQ[x]/(x^2)", Verdict.FALSE), ("QQ[x]", Verdict.FALSE),
])
def test_vnr(text, expected):
    assert is_vnr(ring(text)).verdict is expected


@pytest.mark.parametrize("text,dim", [
    ("QQ[x,y,z]/(x*y, y*z, z^2)", 0),
    ("QQ[x,y]/(x^2, x*y)", 1),
    ("QQ[x,y]", 0),
])
def test_total_quotient_dim(text, dim):
    assert total_quotient_dim(ring(text))[0] == dim


def test_idempotent_ideal_certificate():
    A = ring("QQ[x,y]/(x^2 - x)")
    J = ideal(A, "x*y + x", "x")
    cert = idempotent_from_idem_ideal(J)
    assert verify_idempotent(cert, A, J)
    e = cert.e
    assert A.is_zero(e * e - e)
    assert ideal_equal(IdealHandle(A, [e]), J)


def test_split_two_lines():
    A = ring("QQ[x,y]/(x^2 - x)")
    res = split_at_prime(A, ideal(A, "x"))
    assert res.verdict is Verdict.TRUE
    assert verify_idempotent(res.certificate, A, res.prime)
    assert reconstruction_holds(A, res.certificate.e)
    target = ring("QQ[y]")
    for comp in res.components:
        assert comp.same_as(target)


def test_split_refused_on_node():
    A = ring("QQ[x,y]/(x*y)")
    res = split_at_prime(A, ideal(A, "x"))
    assert res.verdict is Verdict.FALSE
    assert "semi-hereditary" in res.detail
    assert res.witness["generator_not_in_P2"] == "x"


def test_split_needs_prime():
    A = ring("QQ[x,y]/(x^2 - x)")
    assert split_at_prime(A, ideal(A, "x*y")).verdict is Verdict.ILL_POSED


def test_full_decomposition_counts():
    A = ring("QQ[x]/(x^3 - x)")
    tree = decompose_fully(A)
    assert len(tree.leaves) == 3
    assert tree.split_count == 2


@pytest.mark.parametrize("text,expected", [
    ("QQ[x]", Verdict.TRUE),
    ("QQ[x,y]/(y^2 - x^3 + x)", Verdict.TRUE),
    ("QQ[x,y]/(x^2 - x)", Verdict.TRUE),
    ("QQ[x,y]/(x*y)", Verdict.FALSE),
    ("QQ[x,y]/(y^2 - x^3)", Verdict.FALSE),
    ("QQ[x,y,z]/(x*y, y*z, z^2)", Verdict.FALSE),
])
def test_classifier(text, expected):
    assert classify(ring(text)).verdict is expected


def test_vnr_rings_classify_true():
    for text in ("QQ[]", "GF(5)[]", "QQ[x]/(x^2 - x)"):
        assert classify(ring(text)).verdict is Verdict.TRUE


def test_dedekind_and_jacobian():
    rep, reg = is_dedekind_domain(ring("QQ[x,y]/(y^2 - x^3)"))
    assert rep.verdict is Verdict.FALSE and not reg.smooth
    assert jacobian_report(ring("QQ[x,y]/(y^2 - x^3 + x)")).smooth
    assert is_dedekind_domain(ring("QQ[x,y]"))[0].verdict is Verdict.FALSE


@pytest.mark.parametrize("text,flat", [
    ("GF(3)[x]", True), ("GF(2)[x,y]", True), ("GF(3)[x,y]/(y^2 - x^3)", False),
    ("GF(2)[x]/(x^2)", False), ("GF(5)[x,y]/(y^2 - x^3 + x)", True),
])
def test_frobenius_matches_oracle(text, flat):
    rep = frobenius_flat(ring(text), oracle=True)
    assert rep.verdict is Verdict.of(flat)
    assert rep.oracle is rep.verdict
