"""sigma-twisted polynomials in F over a Witt ring.

The commutation rule is F a = a^sigma F, so

    (a F^i)(b F^j) = a b^{sigma^i} F^{i+j}.

Coefficient access goes through a small ops adapter.  Numeric coefficients
are Witt elements; the symbolic variant adds formal Teichmuller unknowns
p^y <u>^{sigma^e} with unit symbols u, enough to carry a universal
deformation through the charpoly formula.  Symbolic coefficients support
add/sub/sigma/ord but not products of two symbols.
"""

from __future__ import annotations

from dataclasses import dataclass

from .witt import WittElt, WittRing


class WittCoeffOps:
    """Numeric coefficient adapter over a Witt ring."""

    __slots__ = ("ring",)

    def __init__(self, ring: WittRing):
        self.ring = ring

    def zero(self):
        return self.ring.zero()

    def one(self):
        return self.ring.one()

    def is_zero(self, a) -> bool:
        return a == self.ring.zero()

    def add(self, a, b):
        return self.ring.add(a, b)

    def neg(self, a):
        return self.ring.neg(a)

    def sub(self, a, b):
        return self.ring.sub(a, b)

    def mul(self, a, b):
        return self.ring.mul(a, b)

    def sigma(self, a, k: int = 1):
        return self.ring.sigma(a, k)

    def ord(self, a) -> int | None:
        return self.ring.ord(a)

    def to_json(self, a):
        return {"digits": list(self.ring.digits(a))}


@dataclass(frozen=True, order=True)
class SymTerm:
    """One formal summand sign * p^p_exp * <name>^{sigma^twist}.

    The twist exponent is kept unreduced; it is taken mod the degree of
    whatever field the symbol is eventually specialized in.  Signs stay in
    {+1, -1}: Teichmuller symbols only ever enter formulas with unit
    integer coefficients.
    """

    name: str
    p_exp: int
    twist: int
    sign: int = 1


@dataclass(frozen=True)
class SymCoeff:
    """base + sum of formal terms, base a Witt element."""

    base: WittElt
    terms: tuple[SymTerm, ...]


class SymCoeffOps:
    """Coefficient adapter allowing formal Teichmuller summands.

    Symbols are treated as units, so ord(p^y <u>) = y.  Multiplying two
    coefficients that both carry symbols is out of scope and raises.
    """

    __slots__ = ("ring",)

    def __init__(self, ring: WittRing):
        self.ring = ring

    def lift(self, base: WittElt) -> SymCoeff:
        return SymCoeff(base, ())

    def symbol(self, name: str, p_exp: int = 0, twist: int = 0) -> SymCoeff:
        return SymCoeff(self.ring.zero(), (SymTerm(name, p_exp, twist),))

    def zero(self) -> SymCoeff:
        return SymCoeff(self.ring.zero(), ())

    def one(self) -> SymCoeff:
        return SymCoeff(self.ring.one(), ())

    def is_zero(self, a: SymCoeff) -> bool:
        return a.base == self.ring.zero() and not a.terms

    def add(self, a: SymCoeff, b: SymCoeff) -> SymCoeff:
        acc: dict[tuple, int] = {}
        for t in a.terms + b.terms:
            key = (t.name, t.p_exp, t.twist)
            acc[key] = acc.get(key, 0) + t.sign
        terms = []
        for (name, p_exp, twist), sign in acc.items():
            if sign == 0:
                continue
            if abs(sign) != 1:
                raise NotImplementedError(
                    f"formal term {name} with coefficient {sign}")
            terms.append(SymTerm(name, p_exp, twist, sign))
        return SymCoeff(self.ring.add(a.base, b.base), tuple(sorted(terms)))

    def neg(self, a: SymCoeff) -> SymCoeff:
        return SymCoeff(
            self.ring.neg(a.base),
            tuple(sorted(SymTerm(t.name, t.p_exp, t.twist, -t.sign)
                         for t in a.terms)),
        )

    def sub(self, a: SymCoeff, b: SymCoeff) -> SymCoeff:
        return self.add(a, self.neg(b))

    def mul(self, a: SymCoeff, b: SymCoeff) -> SymCoeff:
        if a.terms and b.terms:
            raise NotImplementedError("product of two symbolic coefficients")
        if b.terms:
            a, b = b, a
        # b is numeric here
        base = self.ring.mul(a.base, b.base)
        if not a.terms:
            return SymCoeff(base, ())
        if b.base == self.ring.zero():
            return self.zero()
        if b.base == self.ring.one():
            return SymCoeff(base, a.terms)
        if b.base == self.ring.neg(self.ring.one()):
            return self.neg(SymCoeff(self.ring.neg(base), a.terms))
        raise NotImplementedError(
            "symbolic coefficient times numeric factor outside {0, 1, -1}")

    def sigma(self, a: SymCoeff, k: int = 1) -> SymCoeff:
        return SymCoeff(
            self.ring.sigma(a.base, k),
            tuple(sorted(SymTerm(t.name, t.p_exp, t.twist + k, t.sign)
                         for t in a.terms)),
        )

    def ord(self, a: SymCoeff) -> int | None:
        vals = [v for v in [self.ring.ord(a.base)] if v is not None]
        vals += [t.p_exp for t in a.terms]
        return min(vals) if vals else None

    def to_json(self, a: SymCoeff):
        return {
            "base": {"digits": list(self.ring.digits(a.base))},
            "terms": [
                {"name": t.name, "p_exp": t.p_exp, "twist": t.twist,
                 "sign": t.sign}
                for t in a.terms
            ],
        }

    def specialize(self, a: SymCoeff, values: dict, ring=None,
                   embed=None):
        """Replace each symbol by the Teichmuller lift of its field value.

        values maps symbol name -> element of ring.field (default: the ops
        ring); embed maps base-ring digits into ring when they differ.
        """
        ring = ring or self.ring
        if embed is None:
            assert ring is self.ring
            out = a.base
        else:
            out = embed(a.base)
        for t in a.terms:
            v = values[t.name]
            lifted = ring.teichmuller(ring.field.frobenius(v, t.twist)) \
                if v else ring.zero()
            term = ring.scalar_mul(t.sign * ring.field.p ** t.p_exp, lifted)
            out = ring.add(out, term)
        return out


class TwistedPoly:
    """Polynomial sum_k c_k F^k with the twisted product rule."""

    __slots__ = ("ops", "coeffs")

    def __init__(self, ops, coeffs: dict):
        self.ops = ops
        self.coeffs = {k: c for k, c in coeffs.items() if not ops.is_zero(c)}

    @classmethod
    def zero(cls, ops) -> "TwistedPoly":
        return cls(ops, {})

    @classmethod
    def monomial(cls, ops, coeff, k: int) -> "TwistedPoly":
        return cls(ops, {k: coeff})

    def degree(self) -> int | None:
        return max(self.coeffs) if self.coeffs else None

    def coeff(self, k: int):
        return self.coeffs.get(k, self.ops.zero())

    def add(self, other: "TwistedPoly") -> "TwistedPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = self.ops.add(out[k], c) if k in out else c
        return TwistedPoly(self.ops, out)

    def sub(self, other: "TwistedPoly") -> "TwistedPoly":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            nc = self.ops.neg(c)
            out[k] = self.ops.add(out[k], nc) if k in out else nc
        return TwistedPoly(self.ops, out)

    def mul(self, other: "TwistedPoly") -> "TwistedPoly":
        out: dict = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                term = self.ops.mul(a, self.ops.sigma(b, i))
                k = i + j
                out[k] = self.ops.add(out[k], term) if k in out else term
        return TwistedPoly(self.ops, out)

    def ord_map(self) -> dict[int, int | None]:
        """F-exponent -> coefficient ord, for Newton-polygon assembly."""
        return {k: self.ops.ord(c) for k, c in self.coeffs.items()}

    def __eq__(self, other) -> bool:
        return isinstance(other, TwistedPoly) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        ks = sorted(self.coeffs, reverse=True)
        return "TwistedPoly(" + " + ".join(f"c{k}*F^{k}" for k in ks) + ")"
