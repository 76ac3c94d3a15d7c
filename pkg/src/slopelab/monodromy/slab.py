"""Finite Laurent slabs and the projector used to rule out solutions.

A slab is a finite k-linear combination of monomials z^a t^b over a
finite field k, a window into the iterated Laurent series field
k((z_1,...,z_e))((t)).  The projector pi_{M,N} keeps exactly the
monomials that are powers of w = z_1^{M/g} t^{-N/g} (g = gcd(M, N)); it
is k-linear, idempotent and commutes with x -> x^p, which is what makes
the certificate below sound.

`no_solution_certificate` certifies that F(x) = A + B has no solution x,
for F additive over k, A = z_1^M (d t^{-N} + higher) with d != 0, and B
free of z_1.  Projecting the would-be equation gives F(pi(x)) = d w^e + b
with pi(x) a polynomial in w; comparing w-degrees forces
deg_w pi(x) = e / p^n, so either p^n does not divide e (contradiction)
or a complete search over the finitely many candidate polynomials of
that exact degree settles it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ..arith.fields import FieldSpec
from ..errors import GuardExceeded, PreconditionError


class CertificateInapplicable(PreconditionError):
    """The (A, B) shape assumptions needed by the projector do not hold."""


@dataclass(frozen=True)
class LaurentSlab:
    """Monomial map ((z-exponents), t-exponent) -> nonzero coefficient."""

    field: FieldSpec
    nvars: int
    data: tuple     # sorted (((z_exps), t_exp), coeff) pairs

    def coeff(self, z_exps, t_exp) -> int:
        key = (tuple(z_exps), t_exp)
        for k, c in self.data:
            if k == key:
                return c
        return 0

    def monomials(self):
        return [k for k, _ in self.data]

    def is_zero(self) -> bool:
        return not self.data

    def to_json(self) -> dict:
        return {"nvars": self.nvars,
                "terms": [[list(z), t, c] for (z, t), c in self.data]}

    def __str__(self) -> str:
        if not self.data:
            return "0"
        bits = []
        for (z, t), c in self.data:
            mon = "".join(f"z{i+1}^{e}" for i, e in enumerate(z) if e)
            if t:
                mon += f"t^{t}"
            bits.append(f"{c}{mon}" if mon else str(c))
        return " + ".join(bits)


def slab_make(field: FieldSpec, nvars: int, terms: dict) -> LaurentSlab:
    acc = {}
    for (z, t), c in terms.items():
        z = tuple(z)
        if len(z) != nvars:
            raise ValueError("z-exponent arity mismatch")
        if not 0 <= c < field.q:
            raise ValueError(f"coefficient {c} is not a field element code")
        key = (z, t)
        acc[key] = field.add(acc.get(key, 0), c)
    acc = {k: v for k, v in acc.items() if v != 0}
    return LaurentSlab(field, nvars, tuple(sorted(acc.items())))


def slab_add(a: LaurentSlab, b: LaurentSlab) -> LaurentSlab:
    K = a.field
    acc = dict(a.data)
    for k, c in b.data:
        acc[k] = K.add(acc.get(k, 0), c)
    acc = {k: v for k, v in acc.items() if v != 0}
    return LaurentSlab(K, a.nvars, tuple(sorted(acc.items())))


def slab_scale(c: int, a: LaurentSlab) -> LaurentSlab:
    K = a.field
    acc = {k: K.mul(c, v) for k, v in a.data}
    acc = {k: v for k, v in acc.items() if v != 0}
    return LaurentSlab(K, a.nvars, tuple(sorted(acc.items())))


def slab_mul(a: LaurentSlab, b: LaurentSlab) -> LaurentSlab:
    K = a.field
    acc = {}
    for (za, ta), ca in a.data:
        for (zb, tb), cb in b.data:
            key = (tuple(x + y for x, y in zip(za, zb)), ta + tb)
            acc[key] = K.add(acc.get(key, 0), K.mul(ca, cb))
    acc = {k: v for k, v in acc.items() if v != 0}
    return LaurentSlab(K, a.nvars, tuple(sorted(acc.items())))


def slab_pow_p(a: LaurentSlab, k: int = 1) -> LaurentSlab:
    """x -> x^{p^k}; exact in characteristic p, monomial by monomial."""
    K = a.field
    pk = K.p ** k
    acc = {}
    for (z, t), c in a.data:
        key = (tuple(e * pk for e in z), t * pk)
        acc[key] = K.pow(c, pk)
    return LaurentSlab(K, a.nvars, tuple(sorted(acc.items())))


def laurent_projector(slab: LaurentSlab, M: int, N: int) -> LaurentSlab:
    """Keep monomials z_1^i t^j (no other variables) with i N + j M = 0."""
    if M <= 0 or N <= 0:
        raise PreconditionError("projector needs positive M, N")
    keep = []
    for (z, t), c in slab.data:
        if any(z[1:]):
            continue
        i = z[0] if z else 0
        if i * N + t * M == 0:
            keep.append(((z, t), c))
    return LaurentSlab(slab.field, slab.nvars, tuple(keep))


def slab_to_w_poly(slab: LaurentSlab, M: int, N: int) -> dict:
    """Rewrite a projected slab as a polynomial in w = z_1^{M/g} t^{-N/g}.

    Fails if some monomial is not a nonnegative power of w.
    """
    g = gcd(M, N)
    m, n = M // g, N // g
    out = {}
    for (z, t), c in slab.data:
        if any(z[1:]):
            raise ValueError("not pure z_1")
        i = z[0] if z else 0
        if i % m != 0:
            raise ValueError("not a power of w")
        k = i // m
        if k < 0 or t != -k * n:
            raise ValueError("not a nonnegative power of w")
        out[k] = c
    return out


def _w_poly_of_additive(F, x_poly: dict, p: int) -> dict:
    """F(x) for x a w-polynomial: sum c_j x^{p^j} expanded exactly."""
    K = F.field
    out = {}
    for j, c in F.coeffs:
        pj = p ** j
        for k, v in x_poly.items():
            key = k * pj
            out[key] = K.add(out.get(key, 0), K.mul(c, K.pow(v, pj)))
    return {k: v for k, v in out.items() if v != 0}


def no_solution_certificate(F, A: LaurentSlab, B: LaurentSlab, M: int, N: int,
                            guard: int = 10 ** 6) -> dict:
    """Certify that F(x) = A + B has no solution in the ambient Laurent
    field.  Raises CertificateInapplicable when the shape is wrong and
    GuardExceeded when the bounded search would be too large; a returned
    report always means the non-existence claim is established.
    """
    K = F.field
    if M <= 0 or N <= 0:
        raise CertificateInapplicable("need positive M, N")
    if not F.coeffs:
        raise CertificateInapplicable("F must be nonzero")
    n = F.p_degree
    if K.p ** n != F.degree or F.coeffs[-1][1] == 0:
        raise CertificateInapplicable("F must have exact p-power degree")

    d = 0
    for (z, t), c in A.data:
        i = z[0] if z else 0
        if i != M or any(z[1:]):
            raise CertificateInapplicable("A is not z_1^M times a t-series")
        if t < -N:
            raise CertificateInapplicable("A has t-order below -N")
        if t == -N:
            d = c
    if d == 0:
        raise CertificateInapplicable("A has no t^{-N} term")
    for (z, _), _ in B.data:
        if z and z[0] != 0:
            raise CertificateInapplicable("B involves z_1")

    e = gcd(M, N)
    proj_b = laurent_projector(B, M, N)
    b0 = proj_b.coeff((0,) * B.nvars, 0) if not proj_b.is_zero() else 0

    report = {
        "field": {"p": K.p, "q": K.q},
        "F": F.to_json(),
        "M": M, "N": N, "e": e,
        "lead": d, "b0": b0,
        "p_degree": n,
    }
    pn = K.p ** n
    if e % pn != 0:
        report["branch"] = "degree"
        report["reason"] = (f"p^{n} does not divide e = {e}; no w-degree "
                            "can match the projected right side")
        report["conclusion"] = "no-solution"
        return report

    delta = e // pn
    count = K.q ** (delta + 1)
    if count > guard:
        raise GuardExceeded(f"search space {count} exceeds guard {guard}")
    target = {e: d}
    if b0:
        target[0] = K.add(target.get(0, 0), b0)
    target = {k: v for k, v in target.items() if v != 0}
    checked = 0
    for coeffs in _tuples(K.q, delta + 1):
        x_poly = {k: c for k, c in enumerate(coeffs) if c != 0}
        checked += 1
        if _w_poly_of_additive(F, x_poly, K.p) == target:
            raise AssertionError(
                f"projected equation has the solution {x_poly}; "
                "no certificate exists")
    report["branch"] = "search"
    report["candidates_checked"] = checked
    report["conclusion"] = "no-solution"
    return report


def _tuples(q: int, length: int):
    if length == 0:
        yield ()
        return
    for rest in _tuples(q, length - 1):
        for c in range(q):
            yield rest + (c,)
