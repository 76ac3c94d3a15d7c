"""Unit filtration of a ramified slope order and its finite quotients.

G = O^x filters by G_i = 1 + pi^i O.  The leading-digit maps identify
G_0/G_1 with F_q^x and G_i/G_{i+1} with F_q^+ for i >= 1, so
|G/G_n| = (q-1) q^{n-1}.  This module computes graded classes, checks the
p-th-power congruence

    (1 + pi^{ns}<a> + pi^{ns+1} b)^p  ==  1 + pi^{(n+1)s}<a>   (mod higher)

and decides by exhaustive closure whether lifts covering a chosen set of
graded pieces generate all of G/G_n.

Closure enumeration has two independent paths: a direct one multiplying
canonical order elements, and a compiled one that precomputes, for each
generator, per-slot contribution tables over the coefficient ring; both
agree on small cases and the compiled one handles quotients near the
size guard.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .arith.fields import FieldSpec, field_make
from .arith.ramified import RamifiedOrder, order_over
from .arith.witt import witt_make
from .errors import GuardExceeded, PreconditionError


# -- graded pieces --------------------------------------------------------


def graded_class(ctx: RamifiedOrder, u, i: int) -> int:
    """Leading digit of u at filtration level i.

    Level 0 reads the residue of u itself (a unit, value in F_q^x); level
    i >= 1 requires u = 1 mod pi^i and reads digit i of u - 1 (value in
    F_q^+).
    """
    if i < 0 or i >= ctx.N:
        raise PreconditionError(f"level {i} outside truncation {ctx.N}")
    if i == 0:
        if u[0] == 0:
            raise PreconditionError("not a unit")
        return u[0]
    digs = ctx.sub(u, ctx.one())
    if any(digs[:i]):
        raise PreconditionError(f"element is not in level {i} of the filtration")
    return digs[i]


def commutator_class(ctx: RamifiedOrder, x: int, y: int, n: int) -> int:
    """Class at level n+1 of [1 - pi<x>, 1 - pi^n<y>].

    Computed exactly in O mod pi^{n+2} and checked against the closed
    form x^{tau^n} y - y^tau x, tau the slope Frobenius.
    """
    if ctx.N < n + 2:
        raise PreconditionError(f"need truncation >= {n + 2}, have {ctx.N}")
    if n < 1:
        raise PreconditionError("need n >= 1")
    K = ctx.field
    u = ctx.sub(ctx.one(), ctx.teich_term(1, x))
    v = ctx.sub(ctx.one(), ctx.teich_term(n, y))
    comm = ctx.mul(ctx.mul(u, v), ctx.mul(ctx.inv(u), ctx.inv(v)))
    got = graded_class(ctx, comm, n + 1) if comm != ctx.one() else 0
    expect = K.sub(K.mul(K.frobenius(x, (ctx.r * n) % ctx.s), y),
                   K.mul(K.frobenius(y, ctx.r % ctx.s), x))
    assert got == expect, (x, y, n, got, expect)
    return got


def commutator_span(field: FieldSpec, r: int, n: int) -> frozenset:
    """The value set {x^{tau^n} y - y^tau x}; equals F_q when s does not
    divide n+1."""
    s = field.s
    out = set()
    for x in field.elements():
        for y in field.elements():
            out.add(field.sub(field.mul(field.frobenius(x, (r * n) % s), y),
                              field.mul(field.frobenius(y, r % s), x)))
    return frozenset(out)


def pth_power_check(ctx: RamifiedOrder, alpha: int, beta, n: int) -> bool:
    """Does (1 + pi^{ns}<alpha> + pi^{ns+1} beta)^p lie in
    1 + pi^{(n+1)s}<alpha> + G_{(n+1)s+1}?"""
    s, p = ctx.s, ctx.field.p
    level = (n + 1) * s
    if ctx.N < level + 2:
        raise PreconditionError(f"need truncation >= {level + 2}, have {ctx.N}")
    if n < 1:
        raise PreconditionError("need n >= 1")
    u = ctx.add(ctx.one(), ctx.teich_term(n * s, alpha))
    u = ctx.add(u, ctx.mul(ctx.teich_term(n * s + 1, 1), beta))
    w = ctx.pow(u, p)
    target = ctx.add(ctx.one(), ctx.teich_term(level, alpha))
    diff = ctx.sub(w, target)
    return not any(diff[: level + 1])


def p2_power_report(s: int, n: int = 1, seed: int = 0) -> dict:
    """Machine-checked record of how the p-th-power congruence behaves at
    p = 2: at depth n = 1 the square contributes an extra <alpha>^2 at
    level 2s, so the observed class is alpha + alpha^2 instead of alpha.
    The data is reported, not asserted away.
    """
    K = field_make(2, s, seed)
    ctx = order_over(K, 1, (n + 1) * s + 2)
    cases = []
    for alpha in K.elements():
        u = ctx.add(ctx.one(), ctx.teich_term(n * s, alpha))
        w = ctx.pow(u, 2)
        digs = ctx.sub(w, ctx.one())
        level = (n + 1) * s
        observed = digs[level]
        square_law = K.add(alpha, K.mul(alpha, alpha))
        cases.append({
            "alpha": alpha,
            "observed": observed,
            "expected_class": alpha,
            "matches_expected": observed == alpha and not any(digs[:level]),
            "matches_alpha_plus_square": observed == square_law,
        })
    return {
        "p": 2, "s": s, "n": n,
        "level": (n + 1) * s,
        "cases": cases,
        "all_match_alpha_plus_square": all(c["matches_alpha_plus_square"]
                                           for c in cases),
        "failing_alphas": [c["alpha"] for c in cases
                           if not c["matches_expected"]],
    }


# -- the finite quotient G/G_n -------------------------------------------


@dataclass(frozen=True)
class UnitQuotient:
    """G/G_n presented by canonical digit tuples (b_0, ..., b_{n-1}),
    b_0 != 0, multiplied through a truncated order at precision n."""

    ctx: RamifiedOrder
    n: int

    @property
    def order(self) -> int:
        q = self.ctx.field.q
        return (q - 1) * q ** (self.n - 1)

    def elements(self):
        K = self.ctx.field
        units = [a for a in K.elements() if a != 0]
        for b0 in units:
            for rest in itertools.product(K.elements(), repeat=self.n - 1):
                yield (b0,) + rest

    def canonical(self, u) -> tuple:
        return tuple(u[: self.n])

    def lift(self, digs: tuple):
        return self.ctx.from_digits(digs)

    def mul(self, a: tuple, b: tuple) -> tuple:
        return self.canonical(self.ctx.mul(self.lift(a), self.lift(b)))


def quotient_make(lam: Fraction, p: int, n: int, seed: int = 0) -> UnitQuotient:
    from .arith.ramified import order_make
    lam = Fraction(lam)
    ctx = order_make(lam.numerator, lam.denominator, p, max(n, 2), seed)
    return UnitQuotient(ctx, n)


def standard_generators(ctx: RamifiedOrder, covered) -> list:
    """Lifts realizing the full graded image at each covered piece:
    a Teichmuller generator for piece 0, 1 + pi^i <b> over an F_p-basis
    of F_q for pieces i >= 1."""
    K = ctx.field
    gens = []
    basis = [K.p ** k for k in range(K.s)]    # coordinate basis elements
    for i in sorted(covered):
        if i == 0:
            gens.append(ctx.teich_term(0, K.generator()))
        else:
            for b in basis:
                gens.append(ctx.add(ctx.one(), ctx.teich_term(i, b)))
    return gens


def closure_direct(quot: UnitQuotient, gens) -> int:
    """Breadth-first closure size under right multiplication."""
    gen_states = [quot.canonical(g) for g in gens]
    ident = quot.canonical(quot.ctx.one())
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for u in frontier:
            for g in gen_states:
                v = quot.mul(u, g)
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return len(seen)


class CompiledQuotient:
    """G/G_n with per-generator contribution tables.

    An element is a tuple of s slot values, slot j holding a coefficient
    vector over Z/p^{m_j}, m_j = ceil((n-j)/s), packed into one int with
    headroom so that accumulation is plain integer addition.  Right
    multiplication by a fixed generator is slot-linear, so each generator
    compiles to tables mapping a slot's dense index to its packed
    contribution in each output slot.
    """

    def __init__(self, field: FieldSpec, r: int, n: int):
        self.field = field
        self.r = r
        self.s = s = field.s
        self.n = n
        self.m = [max(0, -(-(n - j) // s)) for j in range(s)]
        self.m0 = self.m[0]
        self.W = witt_make(field, self.m0)
        self.P = field.p ** self.m0
        self.B = self.P * 32          # headroom: < 32 summands per slot
        assert 3 * s + 1 < 32
        # dense index <-> canonical coefficient vector per slot
        self.slot_vectors = []
        self.slot_index = []
        for j in range(s):
            vecs = list(itertools.product(range(field.p ** self.m[j]),
                                          repeat=s))
            self.slot_vectors.append(vecs)
            self.slot_index.append({self._pack(v): k
                                    for k, v in enumerate(vecs)})
        self.identity = self._state_from_slots(
            {0: self.W.one()})

    def _pack(self, vec) -> int:
        acc = 0
        for c in reversed(vec):
            acc = acc * self.B + c
        return acc

    def _unpack(self, packed: int) -> tuple:
        out = []
        for _ in range(self.s):
            packed, c = divmod(packed, self.B)
            out.append(c)
        return tuple(out)

    def _elt_vec(self, w) -> tuple:
        return tuple(w)

    def _vec_elt(self, vec) -> tuple:
        return tuple(c % self.P for c in vec)

    def _state_from_slots(self, slots: dict) -> tuple:
        out = []
        for j in range(self.s):
            w = slots.get(j)
            vec = self._elt_vec(w) if w is not None else (0,) * self.s
            vec = tuple(c % (self.field.p ** self.m[j]) for c in vec)
            out.append(self.slot_index[j][self._pack(vec)])
        return tuple(out)

    def compile_generator(self, slots: dict) -> list:
        """slots: j -> WittElt at master precision.  Returns, per input
        slot i, the list of (output slot k, contribution table)."""
        W, s, r = self.W, self.s, self.r
        out = []
        for i in range(s):
            blocks = []
            by_k: dict[int, list] = {}
            for j, vj in slots.items():
                if vj is None:
                    continue
                k = (i + j) % s
                eps = (i + j) // s
                by_k.setdefault(k, []).append((j, eps, vj))
            for k, parts in sorted(by_k.items()):
                tab = []
                for vec in self.slot_vectors[i]:
                    a = self._vec_elt(vec)
                    acc = W.zero()
                    for j, eps, vj in parts:
                        term = W.mul(W.sigma(a, (r * j) % s), vj)
                        if eps:
                            term = W.scalar_mul(self.field.p ** eps, term)
                        acc = W.add(acc, term)
                    tab.append(self._pack(self._elt_vec(acc)))
                blocks.append((k, tab))
            out.append(blocks)
        return out

    def mul_by(self, state: tuple, contrib: list) -> tuple:
        acc = [0] * self.s
        for i in range(self.s):
            di = state[i]
            for k, tab in contrib[i]:
                acc[k] += tab[di]
        out = []
        for k in range(self.s):
            vec = self._unpack(acc[k])
            mod = self.field.p ** self.m[k]
            vec = tuple((c % self.P) % mod for c in vec)
            out.append(self.slot_index[k][self._pack(vec)])
        return tuple(out)

    def generator_slots(self, kind, *args) -> dict:
        """Slot description of the standard generators at master
        precision: ("teich", a) or ("one_plus", i, b)."""
        W = self.W
        if kind == "teich":
            return {0: W.teichmuller(args[0])}
        i, b = args
        j, t = i % self.s, i // self.s
        term = W.scalar_mul(self.field.p ** t, W.teichmuller(b))
        slots = {0: W.one()}
        slots[j] = W.add(slots.get(j, W.zero()), term)
        return slots


def closure_compiled(field: FieldSpec, r: int, n: int, covered,
                     guard: int) -> int:
    cq = CompiledQuotient(field, r, n)
    specs = []
    for i in sorted(covered):
        if i == 0:
            specs.append(("teich", field.generator()))
        else:
            for k in range(field.s):
                specs.append(("one_plus", i, field.p ** k))
    contribs = [cq.compile_generator(cq.generator_slots(*sp)) for sp in specs]
    ident = cq.identity
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for u in frontier:
            for contrib in contribs:
                v = cq.mul_by(u, contrib)
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
        if len(seen) > guard:
            raise GuardExceeded(f"closure exceeded guard {guard}")
    return len(seen)


def generation_check(ctx: RamifiedOrder, n: int, covered,
                     guard: int = 10 ** 7, method: str = "compiled") -> bool:
    return generation_report(ctx, n, covered, guard, method)["generates"]


def generation_report(ctx: RamifiedOrder, n: int, covered,
                      guard: int = 10 ** 7, method: str = "compiled") -> dict:
    """Closure enumeration of the subgroup generated by lifts covering
    the chosen graded pieces, compared against |G/G_n|."""
    if n < 1:
        raise PreconditionError("need n >= 1")
    K = ctx.field
    covered = sorted(set(covered))
    if any(i < 0 or i >= n for i in covered):
        raise PreconditionError(f"covered pieces must lie in [0, {n})")
    total = (K.q - 1) * K.q ** (n - 1)
    if total > guard:
        raise GuardExceeded(f"|G/G_n| = {total} exceeds guard {guard}")
    if method == "compiled":
        size = closure_compiled(K, ctx.r, n, covered, guard)
    elif method == "direct":
        quot = UnitQuotient(ctx if ctx.N >= n else order_over(K, ctx.r, n), n)
        size = closure_direct(quot, standard_generators(quot.ctx, covered))
    else:
        raise ValueError(f"unknown method {method!r}")
    return {
        "q": K.q,
        "lambda": f"{ctx.r}/{ctx.s}",
        "n": n,
        "covered": covered,
        "generates": size == total,
        "order": size,
    }
