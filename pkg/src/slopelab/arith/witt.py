"""Truncated Witt rings W_m(F_q), realized as unramified extensions of Z/p^m.

W_m(F_q) is represented as (Z/p^m)[x]/(lifted modulus), where the lifted
modulus is the degree-s monic polynomial whose roots are the Teichmuller lifts
of the roots of the field modulus.  With that choice the ring generator xi
(the class of x) satisfies xi^q = xi, so

  * the Frobenius lift sigma is literally the substitution x -> x^p,
  * sigma fixes Z/p^m and sends <a> to <a^p>,
  * Teichmuller lifts are the fixed points of z -> z^q.

Elements are plain tuples of s integers in [0, p^m), little-endian
coefficients of powers of xi; the ring context carries all arithmetic.

Every element expands uniquely as sum_j p^j <x_j> with Teichmuller digits
<x_j>; digits() and from_digits() are mutually inverse.  This digit expansion
is the module's "Witt component" notion.  The classical Witt-coordinate
bijection differs from it by p-power twists in each coordinate and is not
implemented.
"""

from __future__ import annotations

from functools import lru_cache

from .fields import FieldSpec, field_make

WittElt = tuple[int, ...]


class WittRing:
    """Arithmetic context for W_m(F_q)."""

    __slots__ = ("field", "m", "pm", "modulus", "_teich_cache", "_sigma_mats")

    def __init__(self, field: FieldSpec, m: int, modulus: tuple[int, ...]):
        self.field = field
        self.m = m
        self.pm = field.p ** m
        self.modulus = modulus  # length s+1, monic, entries in [0, p^m)
        self._teich_cache: dict[int, WittElt] = {}
        self._sigma_mats: dict[int, list[WittElt]] = {}

    # -- constants and coercion -------------------------------------------

    def zero(self) -> WittElt:
        return (0,) * self.field.s

    def one(self) -> WittElt:
        return (1,) + (0,) * (self.field.s - 1)

    def from_int(self, n: int) -> WittElt:
        return (n % self.pm,) + (0,) * (self.field.s - 1)

    def generator(self) -> WittElt:
        if self.field.s == 1:
            return self.zero()
        return (0, 1) + (0,) * (self.field.s - 2)

    # -- ring operations ---------------------------------------------------

    def add(self, a: WittElt, b: WittElt) -> WittElt:
        pm = self.pm
        return tuple((x + y) % pm for x, y in zip(a, b))

    def neg(self, a: WittElt) -> WittElt:
        pm = self.pm
        return tuple((-x) % pm for x in a)

    def sub(self, a: WittElt, b: WittElt) -> WittElt:
        pm = self.pm
        return tuple((x - y) % pm for x, y in zip(a, b))

    def scalar_mul(self, n: int, a: WittElt) -> WittElt:
        pm = self.pm
        return tuple((n * x) % pm for x in a)

    def mul(self, a: WittElt, b: WittElt) -> WittElt:
        s, pm = self.field.s, self.pm
        if s == 1:
            return ((a[0] * b[0]) % pm,)
        prod = [0] * (2 * s - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % pm
        for k in range(2 * s - 2, s - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(s):
                    prod[k - s + i] = (prod[k - s + i] - c * self.modulus[i]) % pm
        return tuple(prod[:s])

    def pow(self, a: WittElt, e: int) -> WittElt:
        assert e >= 0
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_unit(self, a: WittElt) -> bool:
        return self.residue(a) != 0

    def inv(self, a: WittElt) -> WittElt:
        """Inverse of a unit, by lifting the residue inverse (Newton)."""
        r = self.residue(a)
        if r == 0:
            raise ZeroDivisionError("not a unit in the Witt ring")
        y = self.teichmuller(self.field.inv(r))
        two = self.from_int(2)
        # each step doubles the p-adic accuracy of y
        for _ in range(max(1, self.m.bit_length() + 1)):
            e = self.mul(a, y)
            if e == self.one():
                break
            y = self.mul(y, self.sub(two, e))
        assert self.mul(a, y) == self.one()
        return y

    # -- residue field, Teichmuller lifts, digits -------------------------

    def residue(self, a: WittElt) -> int:
        p = self.field.p
        return self.field.encode([c % p for c in a])

    def teichmuller(self, a: int) -> WittElt:
        """The unique multiplicative lift <a>, fixed by z -> z^q."""
        cached = self._teich_cache.get(a)
        if cached is not None:
            return cached
        if a == 0:
            t = self.zero()
        else:
            t = tuple(self.field.coeffs(a))  # naive lift
            for _ in range(self.m + 2):
                nxt = self.pow(t, self.field.q)
                if nxt == t:
                    break
                t = nxt
            assert self.pow(t, self.field.q) == t, "Teichmuller iteration diverged"
        self._teich_cache[a] = t
        return t

    def digits(self, a: WittElt) -> tuple[int, ...]:
        """Teichmuller digit expansion: a = sum_j p^j <digit_j>, length m."""
        p = self.field.p
        out = []
        cur = a
        for _ in range(self.m):
            d = self.residue(cur)
            out.append(d)
            diff = self.sub(cur, self.teichmuller(d))
            assert all(c % p == 0 for c in diff)
            cur = tuple(c // p for c in diff)
        return tuple(out)

    def from_digits(self, digs) -> WittElt:
        acc = self.zero()
        mult = 1
        for d in digs:
            acc = self.add(acc, self.scalar_mul(mult, self.teichmuller(d)))
            mult *= self.field.p
        return acc

    def divide_p(self, a: WittElt, k: int = 1) -> WittElt:
        """Exact division by p^k; the result is meaningful mod p^(m-k)."""
        digs = self.digits(a)
        if any(digs[:k]):
            raise ValueError(f"not divisible by p^{k}: digits {digs}")
        return self.from_digits(digs[k:])

    def ord(self, a: WittElt) -> int | None:
        """p-adic valuation via the digit expansion; None for 0 (ord >= m)."""
        for j, d in enumerate(self.digits(a)):
            if d != 0:
                return j
        return None

    # -- Frobenius lift ----------------------------------------------------

    def _sigma_matrix(self, k: int) -> list[WittElt]:
        mat = self._sigma_mats.get(k)
        if mat is None:
            s, p, q = self.field.s, self.field.p, self.field.q
            xi = self.generator()
            mat = []
            for i in range(s):
                e = (i * p ** k) % (q - 1) if i else 0
                # xi has exact multiplicative order q-1, so exponents reduce
                if i and e == 0:
                    e = q - 1
                mat.append(self.pow(xi, e) if s > 1 else self.one())
            self._sigma_mats[k] = mat
        return mat

    def sigma(self, a: WittElt, k: int = 1) -> WittElt:
        """The Frobenius lift applied k times; fixes Z/p^m, <x> -> <x^p>."""
        s = self.field.s
        k %= s
        if k == 0 or s == 1:
            return a
        mat = self._sigma_matrix(k)
        acc = self.zero()
        for i, c in enumerate(a):
            if c:
                acc = self.add(acc, self.scalar_mul(c, mat[i]))
        return acc

    # -- misc --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "m": self.m,
            "lifted_modulus": list(self.modulus),
        }

    def __repr__(self) -> str:
        return f"WittRing(q={self.field.q}, m={self.m})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WittRing)
            and (self.field, self.m, self.modulus)
            == (other.field, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.m, self.modulus))


def _canonical_modulus(field: FieldSpec, m: int) -> tuple[int, ...]:
    """Lift of the field modulus whose roots are Teichmuller elements.

    Bootstrap: in the ring defined by the naive integer lift of the modulus,
    push the generator to its Teichmuller representative by iterating the
    q-power map, then expand prod_i (x - t^{p^i}) over the conjugates.  The
    coefficients are scalars (symmetric under sigma), which we assert.
    """
    s, pm = field.s, field.p ** m
    naive = tuple(c % pm for c in field.modulus)
    pre = WittRing(field, m, naive)
    t = pre.generator()
    for _ in range(m + 2):
        nxt = pre.pow(t, field.q)
        if nxt == t:
            break
        t = nxt
    assert pre.pow(t, field.q) == t
    # poly with WittElt coefficients, little-endian; starts as the constant 1
    poly: list[WittElt] = [pre.one()]
    conj = t
    for _ in range(s):
        nxt_poly = [pre.zero()] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt_poly[i + 1] = pre.add(nxt_poly[i + 1], c)
            nxt_poly[i] = pre.sub(nxt_poly[i], pre.mul(conj, c))
        poly = nxt_poly
        conj = pre.pow(conj, field.p)
    out = []
    for c in poly:
        assert all(x == 0 for x in c[1:]), "modulus coefficient not a scalar"
        out.append(c[0])
    assert len(out) == s + 1 and out[-1] == 1
    return tuple(out)


@lru_cache(maxsize=None)
def witt_make(field: FieldSpec, m: int) -> WittRing:
    """Witt ring context of length m over the given field."""
    if m < 1:
        raise ValueError("truncation length must be >= 1")
    if field.s == 1:
        ring = WittRing(field, m, (0, 1))
    else:
        modulus = _canonical_modulus(field, m)
        p = field.p
        assert tuple(c % p for c in modulus) == field.modulus
        ring = WittRing(field, m, modulus)
        # the generator itself is Teichmuller in the canonical presentation
        assert ring.pow(ring.generator(), field.q) == ring.generator()
    return ring


def witt_for(p: int, s: int, m: int, seed: int = 0) -> WittRing:
    return witt_make(field_make(p, s, seed), m)


def witt_embed(src: WittRing, dst: WittRing, a: WittElt) -> WittElt:
    """Digit-wise embedding along the canonical field embedding.

    Applying a field embedding to every Teichmuller digit is a ring map,
    since the carry laws are universal polynomials over the prime field.
    Requires dst at least as long as src to lose nothing.
    """
    assert dst.m >= src.m
    table = dst.field.embed_from(src.field)
    return dst.from_digits([table[d] for d in src.digits(a)])
