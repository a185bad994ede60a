import itertools

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from conftest import load, polys, ring
from ringcheck.errors import PreconditionError, Verdict
from ringcheck.idealcalc import (IdealHandle, colon, domain_check, ideal_combine, ideal_contains,
                                 ideal_equal, ideal_power, intersect, is_prime, is_regular_element,
                                 krull_dim, minimal_primes, monomial_associated_primes,
                                 monomial_minimal_primes, radical_member, radical_zero_dim,
                                 saturate)
from ringcheck.lang import parse_poly

slow = settings(max_examples=30, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def ideal(A, *gens):
    return IdealHandle(A, [parse_poly(g, A.ring) for g in gens])


def labels(primes):
    return sorted(p.label for p in primes)


# ---------- worked examples ----------

def test_ass_of_xy_yz_z2():
    A = ring("QQ[x,y,z]/(x*y, y*z, z^2)")
    assert labels(monomial_associated_primes(IdealHandle(A, []))) == ["(x, z)", "(y, z)"]
    assert labels(minimal_primes(A)) == ["(x, z)", "(y, z)"]
    assert krull_dim(A) == 1


def test_ass_with_embedded_prime():
    A = ring("QQ[x,y]/(x^2, x*y)")
    assert labels(monomial_associated_primes(IdealHandle(A, []))) == ["(x)", "(x, y)"]
    assert labels(minimal_primes(A)) == ["(x)"]


def test_truncated_chain_minimal_primes():
    gens = [f"X{i}*X{j}" for i, j in itertools.combinations(range(1, 6), 2) if (i, j) != (1, 2)]
    A = ring(f"QQ[X1,X2,X3,X4,X5]/({', '.join(gens)})")
    assert labels(minimal_primes(A)) == sorted(
        ["(X3, X4, X5)", "(X1, X2, X4, X5)", "(X1, X2, X3, X5)", "(X1, X2, X3, X4)"])


def test_prime_with_nilpotent_witness():
    A = ring("QQ[x,y,z]/(x*y, y*z, z^2)")
    v = is_prime(ideal(A, "x", "y"))
    assert v.verdict is Verdict.FALSE
    assert str(v.witness["nilpotent"]) == "z"


@pytest.mark.parametrize("text,verdict", [
    ("QQ[x,y]", Verdict.TRUE),
    ("QQ[x,y]/(y^2 - x^3 + x)", Verdict.TRUE),
    ("QQ[x,y]/(y^2 - x^2)", Verdict.FALSE),
    ("QQ[x,y]/(x*y)", Verdict.FALSE),
    ("QQ[x]/(x^2)", Verdict.FALSE),
    ("GF(5)[x,y]/(x - y^2)", Verdict.TRUE),
    ("GF(2)[x]/(x^2 + 1)", Verdict.FALSE),
])
def test_domain_check(text, verdict):
    assert domain_check(ring(text)).verdict is verdict


def test_colon_and_annihilator():
    A = ring("QQ[x,y]/(x*y)")
    assert str(colon(IdealHandle(A, []), ideal(A, "x"))) == "(y)"
    assert not is_regular_element(parse_poly("x", A.ring), A)
    assert is_regular_element(parse_poly("x + y", A.ring), A)


def test_colon_by_zero_rejected():
    A = ring("QQ[x]")
    with pytest.raises(PreconditionError):
        colon(ideal(A, "x"), IdealHandle(A, []))


def test_saturation():
    A = ring("QQ[x,y]")
    I = ideal(A, "x^2*y", "x*y^2")
    assert ideal_equal(saturate(I, ideal(A, "x", "y")), ideal(A, "x*y"))


def test_radical_zero_dim():
    A = ring("QQ[x,y]")
    R = radical_zero_dim(ideal(A, "x^2", "y^3 - y^2"))
    assert ideal_equal(R, ideal(A, "x", "y^2 - y"))


def test_krull_dim_values():
    assert krull_dim(ring("QQ[x,y,z]")) == 3
    assert krull_dim(ring("QQ[]")) == 0
    assert krull_dim(ring("QQ[x]/(x^2 - x)")) == 0
    A = ring("QQ[x,y]")
    assert krull_dim(ideal(A, "1")) == -1


# ---------- properties ----------

def _monomial_ideal_rings():
    exps = st.tuples(*[st.integers(0, 2)] * 3).filter(any)
    return st.lists(exps, min_size=1, max_size=4)


def _mono(m):
    return "*".join(f"{v}^{e}" for v, e in zip("xyz", m) if e)


@slow
@given(_monomial_ideal_rings())
def test_monomial_primes_are_consistent(monos):
    A = ring(f"QQ[x,y,z]/({', '.join(_mono(m) for m in monos)})")
    zero = IdealHandle(A, [])
    mins = monomial_minimal_primes(zero)
    ass = monomial_associated_primes(zero)
    assert set(labels(mins)) <= set(labels(ass))
    for P in ass:
        assert any(P.contains_prime(Q) for Q in mins)
        # the witness realises P exactly as an annihilator
        w = IdealHandle(A, [P.witness])
        assert ideal_equal(colon(zero, w), P.ideal)
    assert krull_dim(A) == max(3 - len(P.variables) for P in mins)


R2 = ring("QQ[x,y]")
small = polys(R2.ring, max_deg=2, max_terms=2)
ideals2 = st.lists(small, min_size=1, max_size=2).filter(any)


@slow
@given(ideals2, ideals2)
def test_colon_and_intersection_laws(I, J):
    I, J = IdealHandle(R2, I), IdealHandle(R2, J)
    K = colon(I, J)
    assert ideal_contains(I, ideal_combine("product", K, J))
    inter = intersect(I, J)
    assert ideal_contains(I, inter) and ideal_contains(J, inter)
    assert ideal_contains(inter, ideal_combine("product", I, J))


@slow
@given(ideals2, ideals2)
def test_saturation_is_stable(I, J):
    I, J = IdealHandle(R2, I), IdealHandle(R2, J)
    S = saturate(I, J)
    assert ideal_contains(S, I)
    assert ideal_equal(saturate(S, J), S)


@slow
@given(ideals2, small, st.integers(1, 3))
def test_radical_membership(I, f, k):
    I = IdealHandle(R2, I)
    prod = ideal_combine("product", I, IdealHandle(R2, [f]))
    for g in prod.gens:
        assert radical_member(g, I)
    # f^k in I forces f in the radical
    J = IdealHandle(R2, list(I.gens) + [f ** k])
    assert radical_member(f, J)
    assert ideal_contains(J, ideal_power(IdealHandle(R2, [f]), k))
