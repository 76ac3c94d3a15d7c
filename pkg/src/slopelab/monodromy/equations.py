"""Slope normalization of charpolys and the monodromy-equation tower.

From chi = F^h - sum A_x F^{h-x} with least polygon slope lam = r/s, the
normalized coefficients a_x = A_x p^{-lam x} live in the ramified slope
order; their pi-digit expansions, together with the deformation symbols,
assemble the equation satisfied by a slope-lam vector v:

    v^{sigma^h} = sum_x a_x v^{sigma^{h-x}}.

Terms sort into levels j = sy - rx.  Reducing to the residue field keeps
the level-0 layer, which under the positioning hypotheses is the single
anchor symbol, giving the Kummer-type first Witt equation; the higher
graded equations couple each new level to the previous ones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..arith.fields import field_make
from ..arith.twisted import SymCoeff, TwistedPoly
from ..display import DeformationSpec, display_polygon
from ..errors import PreconditionError


@dataclass(frozen=True)
class DemazureData:
    lam: Fraction
    coeffs: dict | None     # x -> ramified-order digits of a_x; None if symbolic

    @property
    def s(self) -> int:
        return self.lam.denominator

    @property
    def r(self) -> int:
        return self.lam.numerator


def demazure_slope(chi: TwistedPoly, normalize: bool = True) -> DemazureData:
    """Least slope lam = min_x ord(A_x)/x, with a_x = A_x p^{-lam x}.

    Symbolic coefficients contribute their ords with symbols as units; the
    normalized digit data is only produced for numeric input (and only
    when the slope denominator exceeds 1, else the Witt digits already are
    the answer).
    """
    h = chi.degree()
    if h is None or chi.ops.ord(chi.coeff(h)) != 0:
        raise PreconditionError("charpoly must be monic in F")
    pairs = []
    for k, v in chi.ord_map().items():
        if k == h or v is None:
            continue
        pairs.append((h - k, v))
    if not pairs:
        raise PreconditionError("all lower coefficients vanish: slope undefined")
    lam = min(Fraction(v, x) for x, v in pairs)
    symbolic = any(isinstance(c, SymCoeff) for c in chi.coeffs.values())
    if symbolic or not normalize:
        return DemazureData(lam, None)
    ring = chi.ops.ring
    out = {}
    for x, _ in pairs:
        ax = ring.neg(chi.coeff(h - x))
        out[x] = _pi_digits(ring, ax, x, lam)
    return DemazureData(lam, out)


def _pi_digits(ring, ax, x: int, lam: Fraction, cap: int | None = None) -> dict:
    """pi-digit expansion of A_x p^{-lam x}: Witt digit t of A_x sits at
    pi-exponent j = s t - r x.  Negative j means ord(A_x) < lam x."""
    s, r = lam.denominator, lam.numerator
    if cap is None:
        cap = 2 * s
    out = {}
    for t, digit in enumerate(ring.digits(ax)):
        if digit == 0:
            continue
        j = s * t - r * x
        if j < 0:
            raise PreconditionError(
                f"coefficient at F^(h-{x}) has valuation below {lam}*{x}")
        if j < cap:
            out[j] = digit
    return out


@dataclass(frozen=True)
class EqTerm:
    """One summand of a_x: either a residue constant at pi^j or a formal
    parameter p^{j/s}<u>^{sigma^twist}."""

    kind: str               # "const" | "symbol"
    j: int                  # pi-exponent; fractional exponent is j/s
    value: int | str        # field element (const) or symbol name
    twist: int              # Frobenius twist on the symbol; 0 for consts
    sign: int = 1

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "level": self.j,
            "value": self.value,
            "twist": self.twist,
            "sign": self.sign,
        }


@dataclass(frozen=True)
class MonodromyEquation:
    h: int
    d: int
    lam: Fraction
    terms: dict             # x -> tuple of EqTerm; multiplies v^{sigma^{h-x}}

    @property
    def s(self) -> int:
        return self.lam.denominator

    @property
    def r(self) -> int:
        return self.lam.numerator

    def layer(self, j: int) -> list:
        """All (x, term) at level j across the equation."""
        return [(x, t) for x, ts in sorted(self.terms.items())
                for t in ts if t.j == j]

    def to_json(self) -> dict:
        s = self.s
        return {
            "h": self.h,
            "d": self.d,
            "slope": str(self.lam),
            "terms": {str(x): [dict(t.to_json(),
                                    exponent=str(Fraction(t.j, s)))
                               for t in ts]
                      for x, ts in sorted(self.terms.items())},
        }


def monodromy_equation(spec: DeformationSpec) -> MonodromyEquation:
    """Assemble the v-equation of a one-new-slope deformation.

    Requires lam strictly below every base slope, which forces all level-0
    residue constants a_{x,0} to vanish; a violation is reported rather
    than silently folded in.
    """
    lam = spec.lam
    s, r = lam.denominator, lam.numerator
    base_np = display_polygon(spec.base)
    if base_np.slopes() and lam >= min(base_np.slopes()):
        raise PreconditionError(
            f"slope {lam} is not strictly below the base slopes")
    ring = spec.base.ring
    h, d = spec.base.h, spec.base.d
    terms: dict[int, list[EqTerm]] = {}
    for x in range(1, h + 1):
        coeff = spec.chi.coeff(h - x)
        ops = spec.chi.ops
        ax = ops.neg(coeff)
        bucket: list[EqTerm] = []
        digit_map = _pi_digits(ring, ax.base, x, lam) if ax.base != ring.zero() else {}
        if digit_map.get(0):
            raise PreconditionError(
                f"residue constant a_({x},0) = {digit_map[0]} nonzero; "
                "the base polygon touches the slope line")
        for j, digit in sorted(digit_map.items()):
            bucket.append(EqTerm("const", j, digit, 0))
        for t in ax.terms:
            j = s * t.p_exp - r * x
            bucket.append(EqTerm("symbol", j, t.name, t.twist, t.sign))
        if bucket:
            terms[x] = tuple(sorted(bucket, key=lambda t: (t.j, t.kind, str(t.value))))
    return MonodromyEquation(h, d, lam, terms)


# -- the residue-field reduction ------------------------------------------


@dataclass(frozen=True)
class FirstWittData:
    """The level-0 reduction: v_0^{p^h} = u^{p^{h-d-r}} v_0^{p^{h-s}},
    i.e. the Kummer relation t^{p^{h-s}(p^s - 1)} = u^{p^{h-d-r}}."""

    p: int
    h: int
    s: int
    exponent_pair: tuple[int, int]      # (p^h - p^{h-s}, p^{h-d-r})
    factored: tuple[int, int]           # (p^{h-s}, p^s - 1)
    separable_degree: int               # p^s - 1
    group_order: int                    # q - 1
    symbol: str
    samples: tuple                      # ((u encoding, splitting degree), ...)
    attained: bool

    def to_json(self) -> dict:
        return {
            "exponents": list(self.exponent_pair),
            "factored": list(self.factored),
            "separable_degree": self.separable_degree,
            "group_order": self.group_order,
            "symbol": self.symbol,
            "samples": [list(sm) for sm in self.samples],
            "attained": self.attained,
        }


def first_witt_equation(eq: MonodromyEquation, field=None, seed: int = 0,
                        samples: int = 16) -> FirstWittData:
    """Extract and sanity-check the level-0 equation.

    The splitting-degree samples specialize the anchor parameter to units
    of the cubic extension and measure the order of u^{p^{h-d-r}} modulo
    (q-1)-th powers: every sample must divide p^s - 1 and generic ones
    attain it.
    """
    h, d, s, r = eq.h, eq.d, eq.s, eq.r
    layer0 = eq.layer(0)
    anchors = [(x, t) for x, t in layer0 if t.kind == "symbol"]
    if len(anchors) != 1 or anchors[0][0] != s:
        raise PreconditionError(
            f"level-0 layer is {layer0}, expected the single anchor at x = s")
    x0, anchor = anchors[0]
    if h - d - r < 0 or h - s < 0:
        raise PreconditionError("degenerate exponents")
    if field is None:
        raise PreconditionError("need the residue field for specialization")
    if field.s != s:
        field = field_make(field.p, s, field.seed)
    p = field.p
    pair = (p ** h - p ** (h - s), p ** (h - d - r))
    factored = (p ** (h - s), p ** s - 1)
    assert pair[0] == factored[0] * factored[1]
    assert anchor.twist % field.s == (h - d - r) % field.s

    q = field.q
    group_order = q - 1
    sep = p ** s - 1
    rng = random.Random(seed)
    ext = field_make(p, field.s * 3, field.seed)
    divisors = sorted(dd for dd in range(1, group_order + 1)
                      if group_order % dd == 0)
    cofactor = (ext.q - 1) // group_order
    out = []
    attained = False
    for _ in range(samples):
        u = rng.randrange(1, ext.q)
        w = ext.pow(u, pair[1])
        deg = None
        for dd in divisors:
            if ext.pow(w, dd * cofactor) == 1:
                deg = dd
                break
        assert deg is not None and group_order % deg == 0
        if deg == group_order:
            attained = True
        out.append((u, deg))
    return FirstWittData(p, h, s, pair, factored, sep, group_order,
                        anchor.value, tuple(out), attained)


# -- graded tower ---------------------------------------------------------


@dataclass(frozen=True)
class GradedTerm:
    j: int                  # level of this summand
    x: int
    t_exp: int              # exponent of t, global normalization folded in
    w_sub: int              # index of the earlier unknown w_{ell - j}
    w_exp: int              # its power p^{h-x}
    kind: str               # "const" | "symbol"
    value: int | str
    u_exp: int              # p^{h-d-y} for symbols, 0 for consts
    sign: int = 1

    def to_json(self) -> dict:
        return {
            "level": self.j, "x": self.x, "t_exp": self.t_exp,
            "w_sub": self.w_sub, "w_exp": self.w_exp, "kind": self.kind,
            "value": self.value, "u_exp": self.u_exp, "sign": self.sign,
        }


@dataclass(frozen=True)
class GradedEquation:
    """w_ell^{p^h} - w_ell^{p^{h-s}} = sum of the recorded terms."""

    level: int
    p: int
    h: int
    s: int
    terms: tuple

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "lhs_exponents": [self.p ** self.h, self.p ** (self.h - self.s)],
            "terms": [t.to_json() for t in self.terms],
        }


def graded_equations(spec: DeformationSpec,
                     eq: MonodromyEquation | None = None) -> list[GradedEquation]:
    """The tower for ell = 1..s.

    Level ell collects, for 1 <= j <= ell, the level-j residue constants
    and the level-j parameters, each weighted by t^{p^{h-x} - p^h} and the
    earlier unknown w_{ell-j}^{p^{h-x}}.  The level-0 anchor is already
    absorbed into the left side by the normalization t = v_0.
    """
    if eq is None:
        eq = monodromy_equation(spec)
    h, d, s, r = eq.h, eq.d, eq.s, eq.r
    p = spec.base.ring.field.p
    out = []
    for ell in range(1, s + 1):
        terms = []
        for j in range(1, ell + 1):
            for x, t in eq.layer(j):
                if t.kind == "const":
                    terms.append(GradedTerm(
                        j, x, p ** (h - x) - p ** h, ell - j, p ** (h - x),
                        "const", t.value, 0, t.sign))
                else:
                    y = (j + r * x) // s
                    assert s * y - r * x == j
                    terms.append(GradedTerm(
                        j, x, p ** (h - x) - p ** h, ell - j, p ** (h - x),
                        "symbol", t.value, p ** (h - d - y), t.sign))
        out.append(GradedEquation(ell, p, h, s, tuple(terms)))
    return out
