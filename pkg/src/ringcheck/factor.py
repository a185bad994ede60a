"""Polynomial gcd, squarefree parts and factorisation.

Factorisation over QQ (any number of variables) and univariate factorisation
over GF(p) go through sympy; multivariate GF(p) factorisation falls back to
an exhaustive search for a factor of at most half the degree, bounded by
``SEARCH_CAP`` candidates.  ``None`` means "not decided".
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import sympy

from .groebner import divide, divide_exact, intersect_polys
from .poly import Poly, PolyRing, monomials_up_to

SEARCH_CAP = 50_000


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd in k[x1..xn], computed as f*g / lcm(f, g)."""
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    if f.is_constant or g.is_constant:
        return f.ring.one
    lcm = intersect_polys([f], [g])
    if len(lcm) != 1:
        raise ArithmeticError("intersection of principal ideals is not principal")
    return divide_exact(f * g, lcm[0]).monic()


def is_squarefree(f: Poly) -> bool:
    """Over a perfect field: squarefree iff gcd(f, all partials) is constant."""
    g = f
    for i in sorted(f.support()):
        g = poly_gcd(g, f.diff(i))
        if g.is_constant:
            return True
    return g.is_constant


def _pth_root(f: Poly) -> Poly:
    p = f.ring.field.p
    return Poly(f.ring, {tuple(e // p for e in m): c for m, c in f.terms.items()})


def squarefree_part(f: Poly) -> Poly:
    """Product of the distinct irreducible factors of a univariate ``f`` (monic)."""
    if f.is_constant:
        return f.ring.one
    (i,) = f.support()
    df = f.diff(i)
    if not df:
        return squarefree_part(_pth_root(f))
    g = poly_gcd(f, df)
    h = divide_exact(f, g).monic()
    if g.is_constant:
        return h
    r = squarefree_part(g)
    return divide_exact(h * r, poly_gcd(h, r)).monic()


def _to_sympy(f: Poly, idx: list[int]):
    ring = f.ring
    gens = sympy.symbols([f"v{i}" for i in idx])
    p = ring.field.p
    terms = {}
    for m, c in f.terms.items():
        key = tuple(m[i] for i in idx)
        terms[key] = int(c) if p else sympy.Rational(c.numerator, c.denominator)
    if p:
        return sympy.Poly.from_dict(terms, *gens, modulus=p)
    return sympy.Poly.from_dict(terms, *gens, domain="QQ")


def _from_sympy(sp_poly, ring: PolyRing, idx: list[int]) -> Poly:
    p = ring.field.p
    out = {}
    for key, c in sp_poly.as_dict().items():
        m = [0] * ring.nvars
        for i, e in zip(idx, key):
            m[i] = e
        out[tuple(m)] = int(c) % p if p else Fraction(int(c.p), int(c.q))
    return ring.from_dict(out)


def factor(f: Poly) -> list[tuple[Poly, int]] | None:
    """Monic irreducible factors with multiplicity, sorted by printed form."""
    ring = f.ring
    if f.is_constant:
        return []
    idx = sorted(f.support())
    if not ring.field.p or len(idx) == 1:
        _, facs = _to_sympy(f, idx).factor_list()
        out = [(_from_sympy(q, ring, idx).monic(), int(k)) for q, k in facs]
    else:
        out = _brute_factor(f.monic())
        if out is None:
            return None
    return sorted(out, key=lambda t: (t[0].total_degree(), str(t[0])))


def _brute_factor(f: Poly) -> list[tuple[Poly, int]] | None:
    ring = f.ring
    p = ring.field.p
    d = f.total_degree()
    monos = [m for m in monomials_up_to(ring.nvars, d // 2) if any(m)]
    if p ** len(monos) * p > SEARCH_CAP:
        return None
    const = (0,) * ring.nvars
    for coeffs in itertools.product(range(p), repeat=len(monos)):
        if not any(coeffs):
            continue
        for c0 in range(p):
            g = ring.from_dict(dict(zip(monos, coeffs)) | {const: c0})
            if g.is_constant or g.lc != 1:
                continue
            (q,), r = divide(f, [g])
            if r:
                continue
            left = _brute_factor(g)
            right = _brute_factor(q.monic())
            if left is None or right is None:
                return None
            merged: dict = {}
            for h, k in left + right:
                merged[h] = merged.get(h, 0) + k
            return list(merged.items())
    return [(f, 1)]
