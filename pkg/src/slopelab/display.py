"""Displays in normal form and their deformation calculus.

A display here is an h x h matrix over a Witt ring, h = d + c, in the
block shape (A B; C D) with A of size d x d.  The normal form fixes all
structure except the top block of columns d..h: shift sub-diagonals in A
and D, a single 1 at (d+1, d) in C, free entries only at

    S = {(i, j) : 1 <= i <= d, d <= j <= h},

and a unit at (1, h).  The characteristic polynomial of Frobenius is then
read off additively from the free entries:

    chi = F^h - sum_{x=1}^{h} A_x F^{h-x},
    A_x = sum_{(i,j) in S, j+1-i = x} p^{j-d} a_{ij}^{sigma^{h-(j-d)-d}}.

Deforming the free columns d..h-1 by Teichmuller parameters realizes the
universal deformation; restricting the parameters to the lattice points on
or above an adjoined Newton polygon gives the one-new-slope deformation
whose strata this module enumerates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith.twisted import SymCoeff, SymCoeffOps, TwistedPoly, WittCoeffOps
from .arith.witt import WittElt, WittRing, witt_embed
from .errors import PreconditionError
from .polygon import (
    NewtonPolygon,
    adjoin,
    attainable,
    involution_point,
    np_from_points,
    symmetric_adjoin,
)

Point = tuple[int, int]


class Display:
    """h x h matrix with block sizes (d, c); entries numeric or symbolic."""

    __slots__ = ("ring", "d", "c", "entries", "symbolic")

    def __init__(self, ring: WittRing, d: int, c: int, entries: dict,
                 symbolic: bool = False):
        if d < 1 or c < 1:
            raise PreconditionError("block sizes d, c must be positive")
        self.ring = ring
        self.d = d
        self.c = c
        self.symbolic = symbolic
        ops = self.ops()
        self.entries = {
            pos: v for pos, v in entries.items() if not ops.is_zero(v)}
        for (i, j) in self.entries:
            if not (1 <= i <= self.h and 1 <= j <= self.h):
                raise PreconditionError(f"entry position {(i, j)} out of range")

    @property
    def h(self) -> int:
        return self.d + self.c

    def ops(self):
        return SymCoeffOps(self.ring) if self.symbolic else WittCoeffOps(self.ring)

    def entry(self, i: int, j: int):
        return self.entries.get((i, j), self.ops().zero())

    def free_slots(self):
        """The set S of unconstrained positions, row-major."""
        return [(i, j) for i in range(1, self.d + 1)
                for j in range(self.d, self.h + 1)]

    def to_symbolic(self) -> "Display":
        if self.symbolic:
            return self
        ops = SymCoeffOps(self.ring)
        return Display(self.ring, self.d, self.c,
                       {pos: ops.lift(v) for pos, v in self.entries.items()},
                       symbolic=True)

    def to_json(self) -> dict:
        ops = self.ops()
        return {
            "d": self.d,
            "c": self.c,
            "matrix": [
                [ops.to_json(self.entry(i, j)) for j in range(1, self.h + 1)]
                for i in range(1, self.h + 1)
            ],
        }

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Display)
            and (self.ring, self.d, self.c, self.symbolic)
            == (other.ring, other.d, other.c, other.symbolic)
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        kind = "symbolic" if self.symbolic else "numeric"
        return f"Display(d={self.d}, c={self.c}, {kind}, {len(self.entries)} entries)"


def _structure(ring: WittRing, d: int, c: int) -> dict:
    """The fixed 0/1 skeleton of the normal form."""
    h = d + c
    one = ring.one()
    out = {}
    for i in range(1, d):
        out[(i + 1, i)] = one
    out[(d + 1, d)] = one
    for i in range(d + 1, h):
        out[(i + 1, i)] = one
    return out


def display_normal(ring: WittRing, d: int, c: int, free: dict) -> Display:
    """Normal-form display from its free entries {(i,j) in S: value}."""
    h = d + c
    slots = {(i, j) for i in range(1, d + 1) for j in range(d, h + 1)}
    symbolic = any(isinstance(v, SymCoeff) for v in free.values())
    ops = SymCoeffOps(ring) if symbolic else WittCoeffOps(ring)
    entries = dict(_structure(ring, d, c))
    if symbolic:
        entries = {pos: ops.lift(v) for pos, v in entries.items()}
    for (i, j), v in free.items():
        if (i, j) not in slots:
            raise PreconditionError(f"position {(i, j)} is not a free slot")
        if symbolic and not isinstance(v, SymCoeff):
            v = ops.lift(v)
        if (i, j) in entries:
            v = ops.add(entries[(i, j)], v)
        entries[(i, j)] = v
    return Display(ring, d, c, entries, symbolic=symbolic)


def normal_form_check(disp: Display) -> bool:
    """Shape test: structural skeleton exact, free entries only in S, and a
    unit in the upper-right corner."""
    ring, d, c, h = disp.ring, disp.d, disp.c, disp.h
    ops = disp.ops()
    skeleton = _structure(ring, d, c)
    slots = set(disp.free_slots())
    for i in range(1, h + 1):
        for j in range(1, h + 1):
            if (i, j) in slots:
                continue
            want = skeleton.get((i, j), ring.zero())
            got = disp.entry(i, j)
            if disp.symbolic:
                want = ops.lift(want)
            if got != want:
                return False
    return ops.ord(disp.entry(1, h)) == 0


def charpoly(disp: Display) -> TwistedPoly:
    """chi(F) = F^h - sum A_x F^{h-x} for a normal-form display."""
    if not normal_form_check(disp):
        raise PreconditionError("display is not in normal form")
    ring, d, h = disp.ring, disp.d, disp.h
    ops = disp.ops()
    coeffs = {h: ops.one()}
    for x in range(1, h + 1):
        acc = ops.zero()
        for (i, j) in disp.free_slots():
            if j + 1 - i != x:
                continue
            y = j - d
            a = disp.entry(i, j)
            if ops.is_zero(a):
                continue
            term = ops.sigma(a, h - y - d)
            if y:
                term = _scale_p(ops, term, y)
            acc = ops.add(acc, term)
        if not ops.is_zero(acc):
            coeffs[h - x] = ops.neg(acc)
    return TwistedPoly(ops, coeffs)


def _scale_p(ops, coeff, y: int):
    """Multiply a coefficient by p^y."""
    ring = ops.ring
    if isinstance(coeff, SymCoeff):
        base = ring.scalar_mul(ring.field.p ** y, coeff.base)
        terms = tuple(
            type(t)(t.name, t.p_exp + y, t.twist, t.sign) for t in coeff.terms)
        return SymCoeff(base, terms)
    return ring.scalar_mul(ring.field.p ** y, coeff)


def charpoly_polygon(chi: TwistedPoly) -> NewtonPolygon:
    """Newton polygon of chi from coefficient valuations, symbols as units."""
    h = chi.degree()
    pts = [(0, 0)]
    for k, v in chi.ord_map().items():
        if k == h or v is None:
            continue
        pts.append((h - k, v))
    if chi.ops.ord(chi.coeff(0)) is None:
        raise PreconditionError("constant coefficient vanishes at this precision")
    return np_from_points(pts)


def display_polygon(disp: Display) -> NewtonPolygon:
    return charpoly_polygon(charpoly(disp))


def display_from_charpoly(ring: WittRing, d: int,
                          coeffs: dict[int, WittElt]) -> Display:
    """Companion-style normal display with prescribed A_x, x in [1, h].

    Places each A_x in a single free slot: x <= d goes to (d+1-x, d) with
    p-exponent 0, x > d goes to (1, x) with p-exponent x - d, untwisting by
    sigma so the charpoly formula reproduces A_x on the nose.  Needs
    ord(A_x) >= x - d for the exact p-division; any polygon with slopes at
    most 1 and ord(A_h) = c satisfies that.
    """
    h = max(coeffs)
    c = h - d
    if c < 1 or d < 1:
        raise PreconditionError(f"h = {h} needs 1 <= d <= h - 1")
    free: dict = {}
    for x, ax in coeffs.items():
        if ring.ord(ax) is None:
            continue
        if not 1 <= x <= h:
            raise PreconditionError(f"coefficient index {x} outside [1, {h}]")
        if x <= d:
            free[(d + 1 - x, d)] = ring.sigma(ax, -(h - d))
        else:
            y = x - d
            if (ring.ord(ax) or 0) < y:
                raise PreconditionError(
                    f"A_{x} has valuation below {y}, no normal slot fits")
            free[(1, x)] = ring.sigma(ring.divide_p(ax, y), -(h - x))
    disp = Display(ring, d, c,
                   {**_structure(ring, d, c), **free})
    if not normal_form_check(disp):
        raise PreconditionError("prescribed coefficients break normal form")
    return disp


def split_display(ring: WittRing, pieces: list[tuple[int, int]]) -> Display:
    """Normal display whose charpoly is prod_i (F^{s_i} - p^{r_i}).

    The product has central scalar coefficients, so the twisted product
    order does not matter; the result realizes the direct sum of the
    slope r_i/s_i building blocks up to isogeny.
    """
    ops = WittCoeffOps(ring)
    prod = TwistedPoly(ops, {0: ring.one()})
    for r, s in pieces:
        factor = TwistedPoly(ops, {
            s: ring.one(), 0: ring.neg(ring.from_int(ring.field.p ** r))})
        prod = prod.mul(factor)
    h = sum(s for _, s in pieces)
    c = sum(r for r, _ in pieces)
    coeffs = {}
    for x in range(1, h + 1):
        ax = ring.neg(prod.coeff(h - x))
        if ax != ring.zero():
            coeffs[x] = ax
    return display_from_charpoly(ring, h - c, coeffs)


# -- strata ---------------------------------------------------------------


@dataclass(frozen=True)
class Stratification:
    d: int
    c: int
    lam: Fraction
    region: tuple[Point, ...]           # the parallelogram P, row-major
    np_star: NewtonPolygon
    active: frozenset[Point]            # P(*): points of P on or above np_star
    layers: dict                        # j -> frozenset of points, j = sy - rx

    def layer(self, j: int) -> frozenset:
        return self.layers.get(j, frozenset())

    def accumulated(self, ell: int) -> frozenset:
        """Q(ell): layers up through ell, minus the anchor point (s, r)."""
        s, r = self.lam.denominator, self.lam.numerator
        pts = {pt for j, layer in self.layers.items() if j <= ell for pt in layer}
        return frozenset(pts - {(s, r)})

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "c": self.c,
            "slope": str(self.lam),
            "region": sorted(list(p) for p in self.region),
            "np_star": self.np_star.to_json(),
            "active": sorted(list(p) for p in self.active),
            "layers": {str(j): sorted(list(p) for p in layer)
                       for j, layer in sorted(self.layers.items())},
        }


def parallelogram(d: int, c: int) -> tuple[Point, ...]:
    """Lattice points of the region with vertices (1,0), (d,0), (c,c-1),
    (h-1,c-1): row y holds exactly x in [y+1, y+d]."""
    return tuple((x, y) for y in range(c) for x in range(y + 1, y + d + 1))


def strata(d: int, c: int, np0: NewtonPolygon, lam) -> Stratification:
    """Filter the parallelogram by the adjoined polygon and slice by level.

    Level j of (x, y) is sy - rx, nonnegative exactly on points at or
    above the slope lam line through the origin; the active set is cut out
    by the adjoined polygon np(*) instead of the line.
    """
    lam = Fraction(lam)
    s, r = lam.denominator, lam.numerator
    np_star = adjoin(np0, (s, r))
    region = parallelogram(d, c)
    active = frozenset(
        (x, y) for x, y in region if y >= np_star.value_at(x))
    layers: dict[int, set] = {}
    for x, y in active:
        layers.setdefault(s * y - r * x, set()).add((x, y))
    return Stratification(
        d, c, lam, region, np_star, active,
        {j: frozenset(v) for j, v in layers.items()})


# -- universal and restricted deformations --------------------------------


def coord_name(x: int, y: int) -> str:
    return f"u({x},{y})"


def universal_deformation(disp: Display) -> Display:
    """Adjoin one Teichmuller parameter to every free slot in columns
    d..h-1; column h stays fixed.  Slot (i, j) feeds coefficient index
    x = j + 1 - i at p-exponent y = j - d, which names its parameter."""
    base = disp.to_symbolic()
    ops = SymCoeffOps(base.ring)
    entries = dict(base.entries)
    for (i, j) in base.free_slots():
        if j == base.h:
            continue
        x, y = j + 1 - i, j - base.d
        sym = ops.symbol(coord_name(x, y))
        entries[(i, j)] = ops.add(base.entry(i, j), sym)
    return Display(base.ring, base.d, base.c, entries, symbolic=True)


@dataclass(frozen=True)
class DeformationSpec:
    base: Display
    lam: Fraction
    strat: Stratification
    display: Display        # symbolic, parameters only at active points
    chi: TwistedPoly        # symbolic charpoly of the deformed display

    def deformed_polygon(self) -> NewtonPolygon:
        return charpoly_polygon(self.chi)

    def specialize(self, values: dict, ring: WittRing | None = None) -> TwistedPoly:
        """Numeric charpoly at given parameter values.

        values: (x, y) or name -> field element; ring may be a Witt ring
        over an extension field (same p, degree a multiple), in which case
        base coefficients embed digit-wise.
        """
        src = self.base.ring
        ring = ring or src
        named = {}
        for key, v in values.items():
            named[coord_name(*key) if isinstance(key, tuple) else key] = v
        ops = SymCoeffOps(src)
        if ring is src:
            embed = None
        else:
            def embed(a):
                return witt_embed(src, ring, a)
        out = {}
        for k, coeff in self.chi.coeffs.items():
            missing = [t.name for t in coeff.terms if t.name not in named]
            if missing:
                raise PreconditionError(f"no value for symbols {missing}")
            out[k] = ops.specialize(coeff, named, ring=ring, embed=embed)
        return TwistedPoly(WittCoeffOps(ring), out)

    def to_json(self) -> dict:
        return {
            "slope": str(self.lam),
            "strata": self.strat.to_json(),
            "chi": {str(k): self.chi.ops.to_json(v)
                    for k, v in sorted(self.chi.coeffs.items())},
        }


def deformation(disp: Display, lam) -> DeformationSpec:
    """One-new-slope deformation: universal parameters restricted to the
    active stratum of the adjoined polygon."""
    lam = Fraction(lam)
    np0 = display_polygon(disp)
    if np0.slopes() and lam >= min(np0.slopes()):
        raise PreconditionError(
            f"slope {lam} is not below the existing slopes {np0.slopes()}")
    if attainable(np0, lam) is None:
        raise PreconditionError(f"slope {lam} is not attainable from {np0}")
    strat = strata(disp.d, disp.c, np0, lam)
    base = disp.to_symbolic()
    ops = SymCoeffOps(base.ring)
    entries = dict(base.entries)
    for (i, j) in base.free_slots():
        if j == base.h:
            continue
        x, y = j + 1 - i, j - base.d
        if (x, y) not in strat.active:
            continue
        entries[(i, j)] = ops.add(base.entry(i, j), ops.symbol(coord_name(x, y)))
    deformed = Display(base.ring, base.d, base.c, entries, symbolic=True)
    return DeformationSpec(disp, lam, strat, deformed, charpoly(deformed))


# -- polarized variant ----------------------------------------------------


def inv_np(g: int, point: Point) -> Point:
    """Involution on polygon lattice points for the symmetric endpoint."""
    return involution_point(g, point)


def inv_m(g: int, pos: tuple[int, int]) -> tuple[int, int]:
    """Companion involution on matrix positions."""
    i, j = pos
    return (j - g, i + g)


@dataclass(frozen=True)
class PolarizedStrata:
    g: int
    lam: Fraction
    strat: Stratification
    classes: tuple[frozenset, ...]      # inv_np orbits on the active set

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "slope": str(self.lam),
            "strata": self.strat.to_json(),
            "classes": sorted(sorted(list(p) for p in cl) for cl in self.classes),
        }


def pol_strata(g: int, np0: NewtonPolygon, lam) -> PolarizedStrata:
    """Strata cut out by the symmetric adjoined polygon, with parameter
    coordinates identified along the involution."""
    lam = Fraction(lam)
    np_star = symmetric_adjoin(np0, lam)
    s, r = lam.denominator, lam.numerator
    region = parallelogram(g, g)
    active = frozenset((x, y) for x, y in region if y >= np_star.value_at(x))
    for pt in active:
        img = inv_np(g, pt)
        if img in region and not (img[1] >= np_star.value_at(img[0])):
            raise AssertionError(f"involution broke the active set at {pt}")
    layers: dict[int, set] = {}
    for x, y in active:
        layers.setdefault(s * y - r * x, set()).add((x, y))
    strat = Stratification(
        g, g, lam, region, np_star, active,
        {j: frozenset(v) for j, v in layers.items()})
    seen: set = set()
    classes = []
    for pt in sorted(active):
        if pt in seen:
            continue
        orbit = {pt}
        img = inv_np(g, pt)
        if img in active:
            orbit.add(img)
        seen |= orbit
        classes.append(frozenset(orbit))
    return PolarizedStrata(g, lam, strat, tuple(classes))


# -- filtered block lifting ----------------------------------------------


def t_substitute(disp: Display, t_matrix: dict) -> Display:
    """The deformation substitution (A + TC, B + TD; C, D).

    t_matrix maps (row in [1, d], col in [1, c]) to a coefficient; absent
    entries are zero.  Symbolic T entries promote the whole display.
    """
    d, c, h = disp.d, disp.c, disp.h
    symbolic = disp.symbolic or any(
        isinstance(v, SymCoeff) for v in t_matrix.values())
    base = disp.to_symbolic() if symbolic else disp
    ops = base.ops()

    def t_entry(i, k):
        v = t_matrix.get((i, k), ops.zero())
        if symbolic and not isinstance(v, SymCoeff):
            v = ops.lift(v)
        return v

    entries = dict(base.entries)
    for i in range(1, d + 1):
        for j in range(1, h + 1):
            # (TC)_{ij} for j <= d, (TD)_{i, j-d} for j > d
            acc = ops.zero()
            for k in range(1, c + 1):
                lower = base.entry(d + k, j)
                if ops.is_zero(lower):
                    continue
                acc = ops.add(acc, ops.mul(t_entry(i, k), lower))
            if ops.is_zero(acc):
                continue
            cur = entries.get((i, j), ops.zero())
            total = ops.add(cur, acc)
            if ops.is_zero(total):
                entries.pop((i, j), None)
            else:
                entries[(i, j)] = total
    return Display(base.ring, d, c, entries, symbolic=symbolic)


def filtered_lift(disp: Display, sizes: list[tuple[int, int]],
                  t_blocks: list[dict]) -> Display:
    """Deform along a block-diagonal T compatible with a filtration.

    sizes lists (d_i, c_i) per graded block, concatenating to (d, c);
    t_blocks[i] maps (row in [1, d_i], col in [1, c_i]) to a coefficient.
    The diagonal blocks of the result are the blockwise substitutions.
    """
    if sum(di for di, _ in sizes) != disp.d or \
            sum(ci for _, ci in sizes) != disp.c:
        raise PreconditionError(
            f"block sizes {sizes} do not sum to ({disp.d}, {disp.c})")
    if len(t_blocks) != len(sizes):
        raise PreconditionError("one T block required per graded piece")
    t_matrix: dict = {}
    off_d = off_c = 0
    for (di, ci), block in zip(sizes, t_blocks):
        for (i, k), v in block.items():
            if not (1 <= i <= di and 1 <= k <= ci):
                raise PreconditionError(
                    f"T block entry {(i, k)} outside {di} x {ci}")
            t_matrix[(off_d + i, off_c + k)] = v
        off_d += di
        off_c += ci
    return t_substitute(disp, t_matrix)


def direct_sum_display(blocks: list[Display]) -> Display:
    """Block-diagonal display; A parts concatenate, then D parts.

    The result is generally not in normal form, but it is block-upper
    (block-diagonal, even) for the induced filtration, which is the input
    shape filtered_lift expects.
    """
    ring = blocks[0].ring
    if any(b.ring != ring or b.symbolic != blocks[0].symbolic for b in blocks):
        raise PreconditionError("blocks must share ring and coefficient kind")
    d = sum(b.d for b in blocks)
    c = sum(b.c for b in blocks)
    entries: dict = {}
    off_d = off_c = 0
    for b in blocks:
        def glob(i):
            return off_d + i if i <= b.d else d + off_c + (i - b.d)
        for (i, j), v in b.entries.items():
            entries[(glob(i), glob(j))] = v
        off_d += b.d
        off_c += b.c
    return Display(ring, d, c, entries, symbolic=blocks[0].symbolic)


def diagonal_block(disp: Display, sizes: list[tuple[int, int]],
                   index: int) -> Display:
    """Sub-display of one graded piece: its A rows/cols and D rows/cols."""
    off_d = sum(di for di, _ in sizes[:index])
    off_c = sum(ci for _, ci in sizes[:index])
    di, ci = sizes[index]
    rows = list(range(off_d + 1, off_d + di + 1)) + \
        [disp.d + k for k in range(off_c + 1, off_c + ci + 1)]
    entries = {}
    for a, i in enumerate(rows, start=1):
        for b, j in enumerate(rows, start=1):
            v = disp.entry(i, j)
            if not disp.ops().is_zero(v):
                entries[(a, b)] = v
    return Display(disp.ring, di, ci, entries, symbolic=disp.symbolic)
