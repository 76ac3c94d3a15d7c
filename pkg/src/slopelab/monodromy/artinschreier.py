"""Additive polynomials and reducibility of X^q - X - A.

Over a field K containing F_q the polynomial X^q - X - A has root set
stable under translation by F_q, so its irreducible factors all share one
degree and any proper factorization is governed by the additive subgroups
of F_q: the polynomial is reducible over K exactly when A = f_G(a) for
some a in K and some nonzero subgroup G, where f_G = prod_{g in G}(X - g).

Everything here is finite and exhaustive; the factoring-based check in
`as_reducible_oracle` shares no code with the subgroup criterion.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..arith import fields
from ..arith.fields import FieldSpec
from ..errors import PreconditionError


@dataclass(frozen=True)
class AdditivePolynomial:
    """sum_j c_j X^{p^j} with coefficients in a fixed field."""

    field: FieldSpec
    coeffs: tuple            # ((j, c_j), ...) sorted, c_j nonzero

    @property
    def p_degree(self) -> int:
        return self.coeffs[-1][0] if self.coeffs else 0

    @property
    def degree(self) -> int:
        return self.field.p ** self.p_degree if self.coeffs else 0

    def coeff(self, j: int) -> int:
        for k, c in self.coeffs:
            if k == j:
                return c
        return 0

    def eval(self, a: int) -> int:
        K = self.field
        acc = 0
        for j, c in self.coeffs:
            acc = K.add(acc, K.mul(c, K.pow(a, K.p ** j)))
        return acc

    def to_dense(self) -> list[int]:
        out = [0] * (self.degree + 1)
        for j, c in self.coeffs:
            out[self.field.p ** j] = c
        return out

    def to_json(self) -> dict:
        return {"coeffs": [[j, c] for j, c in self.coeffs]}


def additive_make(field: FieldSpec, coeffs: dict) -> AdditivePolynomial:
    for c in coeffs.values():
        if not 0 <= c < field.q:
            raise ValueError(f"coefficient {c} is not a field element code")
    pairs = tuple(sorted((j, c) for j, c in coeffs.items() if c != 0))
    return AdditivePolynomial(field, pairs)


def additive_from_dense(field: FieldSpec, dense: list[int]) -> AdditivePolynomial:
    """Classify a plain polynomial as additive; reject stray monomials."""
    p = field.p
    out = {}
    for e, c in enumerate(dense):
        if c == 0:
            continue
        j = 0
        n = e
        while n > 1 and n % p == 0:
            n //= p
            j += 1
        if n != 1:
            raise PreconditionError(f"monomial X^{e} is not a p-power")
        out[j] = c
    return additive_make(field, out)


def span(field: FieldSpec, gens) -> frozenset:
    """Additive closure of a generator set: the F_p-span."""
    seen = {0}
    for g in gens:
        if g in seen:
            continue
        mult = [0]
        acc = 0
        for _ in range(field.p - 1):
            acc = field.add(acc, g)
            mult.append(acc)
        seen = {field.add(a, m) for a in seen for m in mult}
    return frozenset(seen)


def enumerate_subgroups(field: FieldSpec, ambient=None) -> list[frozenset]:
    """All additive subgroups of `ambient` (default: the whole field),
    grown one generator at a time and deduplicated."""
    if ambient is None:
        ambient = frozenset(field.elements())
    levels = [{frozenset({0})}]
    while True:
        cur = levels[-1]
        nxt = set()
        for G in cur:
            for v in ambient:
                if v not in G:
                    nxt.add(span(field, list(G) + [v]))
        if not nxt:
            break
        levels.append(nxt)
    out = sorted({g for lev in levels for g in lev},
                 key=lambda G: (len(G), sorted(G)))
    return out


def subgroup_polynomial(field: FieldSpec, G) -> AdditivePolynomial:
    """f_G = prod_{g in G}(X - g), verified additive."""
    G = frozenset(G)
    for a in G:
        for b in G:
            if field.add(a, b) not in G:
                raise PreconditionError("not closed under addition")
    if 0 not in G:
        raise PreconditionError("missing zero")
    f = [1]
    for g in G:
        f = fields.poly_mul(field, f, [field.neg(g), 1])
    return additive_from_dense(field, f)


def _check_subfield(K: FieldSpec, q: int) -> FieldSpec:
    p = K.p
    t = 0
    qq = 1
    while qq < q:
        qq *= p
        t += 1
    if qq != q or K.s % t != 0:
        raise PreconditionError(f"F_{q} does not embed in F_{K.q}")
    return t


def as_reducible(K: FieldSpec, q: int, A: int):
    """Subgroup-image criterion for reducibility of X^q - X - A over K.

    Returns (True, (G, a)) with a witness f_G(a) = A, or (False, None).
    """
    _check_subfield(K, q)
    copy = frozenset(K.subfield_elements(q))
    for G in enumerate_subgroups(K, copy):
        if len(G) == 1:
            continue
        f = subgroup_polynomial(K, G)
        for a in K.elements():
            if f.eval(a) == A:
                return True, (G, a)
    return False, None


def as_reducible_oracle(K: FieldSpec, q: int, A: int) -> bool:
    """Direct factor detection: the least m with a root in the degree-m
    extension is the common degree of all irreducible factors, so the
    polynomial is reducible iff that degree falls short of q."""
    _check_subfield(K, q)
    f = [0] * (q + 1)
    f[q] = 1
    f[1] = K.add(f[1], K.neg(1))
    f[0] = K.neg(A)
    r = [0, 1]
    for m in range(1, q + 1):
        r = fields.poly_powmod(K, r, K.q, f)
        diff = fields.poly_sub(K, r, [0, 1])
        g = fields.poly_gcd(K, diff, f)
        if len(g) > 1:
            return m < q
    raise AssertionError("no factor degree found up to q")
