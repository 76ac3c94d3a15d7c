"""The standard order of slope r/s: W(F_q) with an adjoined uniformizer.

The order is W(F_q)[pi] subject to

    pi^s = p,        x * pi = pi * x^tau   (tau = sigma^r)

for x in W(F_q), truncated at pi-adic precision N.  Valuations take values in
(1/s)Z, with val(p) = 1 and val(pi) = 1/s.

Elements are stored canonically as their Teichmuller pi-digit expansion

    a = sum_{j<N} pi^j <beta_j>,   beta_j in F_q,

i.e. as a plain tuple of N field-element ints.  Addition and multiplication
convert to the coefficient form sum_{k<s} pi^k c_k with c_k in W_m(F_q)
(where carries are ordinary Witt-ring arithmetic) and re-digitize:

    (sum pi^i a_i)(sum pi^j b_j) = sum pi^{i+j} a_i^{tau^j} b_j,

with pi^s folded into the central factor p.  The digit expansion of any
element is unique, so tuples compare canonically.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .fields import FieldSpec, field_make
from .witt import WittElt, WittRing, witt_make

RamDigits = tuple[int, ...]


class RamifiedOrder:
    """Context for O mod pi^N arithmetic at slope r/s."""

    __slots__ = ("field", "r", "s", "N", "witt", "lam")

    def __init__(self, field: FieldSpec, r: int, N: int):
        self.field = field
        self.r = r
        self.s = field.s
        self.N = N
        self.lam = Fraction(r, self.s)
        # carries out of level N never reach back below it, one extra Witt
        # digit is enough headroom
        self.witt = witt_make(field, -(-N // self.s) + 1)

    # -- constructors ------------------------------------------------------

    def zero(self) -> RamDigits:
        return (0,) * self.N

    def one(self) -> RamDigits:
        return (1,) + (0,) * (self.N - 1)

    def teich_term(self, j: int, beta: int) -> RamDigits:
        """pi^j <beta> as an element."""
        if not 0 <= j < self.N:
            raise ValueError(f"pi-exponent {j} outside precision {self.N}")
        digs = [0] * self.N
        digs[j] = beta
        return tuple(digs)

    def uniformizer(self) -> RamDigits:
        return self.teich_term(1, 1)

    def from_digits(self, digs) -> RamDigits:
        digs = list(digs)[: self.N]
        digs += [0] * (self.N - len(digs))
        return tuple(digs)

    def from_witt(self, a: WittElt) -> RamDigits:
        """Embed W(F_q): the p-digit at level t becomes the pi-digit at t*s."""
        digs = [0] * self.N
        for t, d in enumerate(self.witt.digits(a)):
            if t * self.s < self.N:
                digs[t * self.s] = d
        return tuple(digs)

    def from_int(self, n: int) -> RamDigits:
        return self.from_witt(self.witt.from_int(n))

    # -- representation changes -------------------------------------------

    def _to_coeffs(self, a: RamDigits) -> list[WittElt]:
        w, s = self.witt, self.s
        out = [w.zero()] * s
        for j, beta in enumerate(a):
            if beta:
                k, t = j % s, j // s
                out[k] = w.add(out[k], w.scalar_mul(
                    self.field.p ** t, w.teichmuller(beta)))
        return out

    def _from_coeffs(self, coeffs: list[WittElt]) -> RamDigits:
        w, s = self.witt, self.s
        digs = [0] * self.N
        for k, c in enumerate(coeffs):
            for t, d in enumerate(w.digits(c)):
                j = k + s * t
                if j < self.N:
                    digs[j] = d
        return tuple(digs)

    # -- ring operations ---------------------------------------------------

    def add(self, a: RamDigits, b: RamDigits) -> RamDigits:
        w = self.witt
        ca, cb = self._to_coeffs(a), self._to_coeffs(b)
        return self._from_coeffs([w.add(x, y) for x, y in zip(ca, cb)])

    def neg(self, a: RamDigits) -> RamDigits:
        return self._from_coeffs([self.witt.neg(c) for c in self._to_coeffs(a)])

    def sub(self, a: RamDigits, b: RamDigits) -> RamDigits:
        w = self.witt
        ca, cb = self._to_coeffs(a), self._to_coeffs(b)
        return self._from_coeffs([w.sub(x, y) for x, y in zip(ca, cb)])

    def mul(self, a: RamDigits, b: RamDigits) -> RamDigits:
        w, s, r, p = self.witt, self.s, self.r, self.field.p
        ca, cb = self._to_coeffs(a), self._to_coeffs(b)
        out = [w.zero()] * s
        for j, bj in enumerate(cb):
            if bj == w.zero():
                continue
            for i, ai in enumerate(ca):
                if ai == w.zero():
                    continue
                term = w.mul(w.sigma(ai, r * j), bj)
                k, carry = (i + j) % s, (i + j) // s
                if carry:
                    term = w.scalar_mul(p ** carry, term)
                out[k] = w.add(out[k], term)
        return self._from_coeffs(out)

    def pow(self, a: RamDigits, e: int) -> RamDigits:
        assert e >= 0
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_unit(self, a: RamDigits) -> bool:
        return a[0] != 0

    def inv(self, a: RamDigits) -> RamDigits:
        if a[0] == 0:
            v = self.val(a)
            raise ZeroDivisionError(
                f"not a unit: valuation {v} > 0" if v is not None
                else "not a unit: zero at this precision")
        y = self.teich_term(0, self.field.inv(a[0]))
        two = self.from_int(2)
        for _ in range(self.N.bit_length() + 2):
            e = self.mul(a, y)
            if e == self.one():
                break
            y = self.mul(y, self.sub(two, e))
        assert self.mul(a, y) == self.one()
        return y

    def commutator(self, a: RamDigits, b: RamDigits) -> RamDigits:
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    # -- valuation ---------------------------------------------------------

    def val(self, a: RamDigits) -> Fraction | None:
        """pi-adic valuation in (1/s)Z; None for 0 at this precision."""
        for j, beta in enumerate(a):
            if beta:
                return Fraction(j, self.s)
        return None

    # -- misc --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "r": self.r,
            "s": self.s,
            "precision": self.N,
        }

    def element_to_json(self, a: RamDigits) -> dict:
        return {"digits": list(a)}

    def __repr__(self) -> str:
        return f"RamifiedOrder(lam={self.r}/{self.s}, q={self.field.q}, N={self.N})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RamifiedOrder)
            and (self.field, self.r, self.N) == (other.field, other.r, other.N)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.r, self.N))


@lru_cache(maxsize=None)
def order_make(r: int, s: int, p: int, N: int | None = None,
               seed: int = 0) -> RamifiedOrder:
    """Order context for slope r/s over F_{p^s}; default precision N = 4s."""
    import math
    if math.gcd(r, s) != 1:
        raise ValueError(f"slope {r}/{s} not in lowest terms")
    if not 0 < r < s:
        raise ValueError(f"slope {r}/{s} outside (0,1)")
    if N is None:
        N = 4 * s
    return RamifiedOrder(field_make(p, s, seed), r, N)


def order_over(field: FieldSpec, r: int, N: int | None = None) -> RamifiedOrder:
    """Order context over an existing field of degree s."""
    import math
    if math.gcd(r, field.s) != 1:
        raise ValueError(f"slope {r}/{field.s} not in lowest terms")
    if N is None:
        N = 4 * field.s
    return RamifiedOrder(field, r, N)
