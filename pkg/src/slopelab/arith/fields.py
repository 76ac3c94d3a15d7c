"""Finite fields F_{p^s} with a fixed, reproducible modulus.

Representation conventions
--------------------------

An element of F_{p^s} is an integer in [0, q), q = p^s, encoding the
coefficient vector of the residue polynomial in the canonical generator x:

    a  <->  c_0 + c_1 x + ... + c_{s-1} x^{s-1},   a = sum c_i p^i.

So 0 and 1 are the ring's zero and one, and the generator x itself is the
element p.  All arithmetic is carried by the FieldSpec context; elements are
plain ints and never wrapped.

The modulus is the (seed mod count)-th monic irreducible polynomial of degree
s over F_p, in lexicographic order of the coefficient tuple (c_0, ..., c_{s-1}).
seed = 0 gives the lexicographically least choice.  The count of monic
irreducibles is computed exactly (Mobius inversion), so the seed wraps around
deterministically.

Multiplication, inversion, powers and Frobenius go through exp/log tables with
respect to a fixed multiplicative generator; building the tables is O(q) once
per context and every subsequent operation is O(1).
"""

from __future__ import annotations

import math
from functools import lru_cache


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _factor(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine at desk scale."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _mobius(n: int) -> int:
    mu = 1
    for _, e in _factor(n).items():
        if e > 1:
            return 0
        mu = -mu
    return mu


def _count_monic_irreducibles(p: int, s: int) -> int:
    """Number of monic irreducible polynomials of degree s over F_p."""
    total = 0
    for d in range(1, s + 1):
        if s % d == 0:
            total += _mobius(s // d) * p ** d
    return total // s


# ---------------------------------------------------------------------------
# Dense polynomial helpers over F_p (coefficient lists, little-endian).
# Used for modulus selection and bootstrap multiplication; also reused by the
# Artin-Schreier factoring oracle, which works over an arbitrary FieldSpec.
# ---------------------------------------------------------------------------


def poly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_add(K: "FieldSpec", f: list[int], g: list[int]) -> list[int]:
    n = max(len(f), len(g))
    out = [0] * n
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out[i] = K.add(a, b)
    return poly_trim(out)


def poly_scale(K: "FieldSpec", c: int, f: list[int]) -> list[int]:
    return poly_trim([K.mul(c, a) for a in f])


def poly_sub(K: "FieldSpec", f: list[int], g: list[int]) -> list[int]:
    return poly_add(K, f, poly_scale(K, K.neg(1), g))


def poly_mul(K: "FieldSpec", f: list[int], g: list[int]) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = K.add(out[i + j], K.mul(a, b))
    return poly_trim(out)


def poly_rem(K: "FieldSpec", f: list[int], g: list[int]) -> list[int]:
    """Remainder of f modulo g (g nonzero)."""
    assert g, "division by zero polynomial"
    f = list(f)
    dg = len(g) - 1
    inv_lead = K.inv(g[-1])
    while len(f) - 1 >= dg and f:
        c = K.mul(f[-1], inv_lead)
        shift = len(f) - 1 - dg
        for i, b in enumerate(g):
            if b:
                f[shift + i] = K.sub(f[shift + i], K.mul(c, b))
        poly_trim(f)
    return f


def poly_gcd(K: "FieldSpec", f: list[int], g: list[int]) -> list[int]:
    f, g = list(f), list(g)
    while g:
        f, g = g, poly_rem(K, f, g)
    if f:
        f = poly_scale(K, K.inv(f[-1]), f)  # monic normalization
    return f


def poly_powmod(K: "FieldSpec", f: list[int], e: int, mod: list[int]) -> list[int]:
    result = [1]
    base = poly_rem(K, f, mod)
    while e > 0:
        if e & 1:
            result = poly_rem(K, poly_mul(K, result, base), mod)
        base = poly_rem(K, poly_mul(K, base, base), mod)
        e >>= 1
    return result


def poly_eval(K: "FieldSpec", f: list[int], a: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = K.add(K.mul(acc, a), c)
    return acc


def _irreducible(p: int, f: list[int]) -> bool:
    """Monic f of degree s >= 1 over F_p irreducible?

    Standard criterion: x^{p^s} = x mod f, and gcd(x^{p^{s/t}} - x, f) = 1
    for every prime t dividing s.
    """
    Fp = field_make(p, 1)
    s = len(f) - 1
    x = [0, 1]
    xq = poly_powmod(Fp, x, p ** s, f)
    if poly_trim(poly_sub(Fp, xq, x)):
        return False
    for t in _factor(s):
        xe = poly_powmod(Fp, x, p ** (s // t), f)
        g = poly_gcd(Fp, poly_sub(Fp, xe, x), f)
        if len(g) != 1:
            return False
    return True


class FieldSpec:
    """Context for F_{p^s} arithmetic on int-encoded elements."""

    __slots__ = (
        "p", "s", "q", "modulus", "seed",
        "_exp", "_log", "_gen", "_add_table", "_frob_mult",
    )

    def __init__(self, p: int, s: int, modulus: tuple[int, ...], seed: int = 0):
        self.p = p
        self.s = s
        self.q = p ** s
        self.modulus = modulus  # length s+1, monic, entries in [0, p)
        self.seed = seed
        self._add_table: list[int] | None = None
        self._build_tables()
        if self.q <= 1024:
            q = self.q
            self._add_table = [self.add(a, b) for a in range(q) for b in range(q)]

    # -- encoding ----------------------------------------------------------

    def coeffs(self, a: int) -> list[int]:
        """Base-p digits of a, little-endian, length s."""
        out = []
        for _ in range(self.s):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def encode(self, digits: list[int]) -> int:
        acc = 0
        for c in reversed(digits):
            acc = acc * self.p + (c % self.p)
        return acc

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    # -- additive structure ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        t = self._add_table
        if t is not None:
            return t[a * self.q + b]
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.s):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * mult
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.s):
            a, r = divmod(a, p)
            out += (-r % p) * mult
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    # -- multiplicative structure -----------------------------------------

    def _mul_raw(self, a: int, b: int) -> int:
        """Polynomial multiplication mod (modulus, p); no tables."""
        p, s = self.p, self.s
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * s - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by the monic modulus
        for k in range(2 * s - 2, s - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(s):
                    prod[k - s + i] = (prod[k - s + i] - c * self.modulus[i]) % p
        return self.encode(prod[:s])

    def _build_tables(self) -> None:
        q = self.q
        if q == 2:
            self._gen, self._exp, self._log = 1, [1], [None, 0]
            self._frob_mult = [1]
            return
        factors = list(_factor(q - 1))
        gen = None
        for g in range(2, q):
            ok = True
            for t in factors:
                # g is a generator iff g^{(q-1)/t} != 1 for every prime t | q-1
                acc = 1
                e = (q - 1) // t
                base = g
                while e:
                    if e & 1:
                        acc = self._mul_raw(acc, base)
                    base = self._mul_raw(base, base)
                    e >>= 1
                if acc == 1:
                    ok = False
                    break
            if ok:
                gen = g
                break
        assert gen is not None, "cyclic group must have a generator"
        exp = [1] * (q - 1)
        for i in range(1, q - 1):
            exp[i] = self._mul_raw(exp[i - 1], gen)
        log: list[int | None] = [None] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._gen, self._exp, self._log = gen, exp, log
        self._frob_mult = [pow(self.p, k, q - 1) for k in range(self.s)]

    def generator(self) -> int:
        """A fixed generator of the multiplicative group."""
        return self._gen

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        q1 = self.q - 1
        return self._exp[(self._log[a] + self._log[b]) % q1]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        q1 = self.q - 1
        return self._exp[(-self._log[a]) % q1]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("negative power of 0")
            return 0
        q1 = self.q - 1
        return self._exp[(self._log[a] * e) % q1]

    def frobenius(self, a: int, k: int = 1) -> int:
        """a^(p^k); k may be any integer, reduced mod s."""
        if a == 0:
            return 0
        k %= self.s
        return self._exp[(self._log[a] * self._frob_mult[k]) % (self.q - 1)]

    def order(self, a: int) -> int:
        """Multiplicative order of a unit."""
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        return (self.q - 1) // math.gcd(self._log[a], self.q - 1)

    # -- subfields ---------------------------------------------------------

    def subfield_elements(self, q_sub: int) -> list[int]:
        """Elements of the unique subfield of size q_sub, if it exists."""
        fac = _factor(q_sub)
        if len(fac) != 1 or self.p not in fac:
            raise ValueError(f"{q_sub} is not a power of p = {self.p}")
        t = fac[self.p]
        if self.s % t != 0:
            raise ValueError(f"F_{q_sub} is not a subfield of F_{self.q}")
        return sorted(a for a in self.elements() if self.pow(a, q_sub) == a)

    def embed_from(self, sub: "FieldSpec") -> list[int]:
        """Embedding table F_{sub.q} -> self, as a list indexed by sub elements.

        The image of sub's canonical generator is the smallest root (by int
        encoding) of sub.modulus in self, so the embedding is deterministic.
        """
        if sub.p != self.p or self.s % sub.s != 0:
            raise ValueError(f"no embedding of F_{sub.q} into F_{self.q}")
        modulus = [c for c in sub.modulus]
        root = None
        for a in self.elements():
            if poly_eval(self, modulus, a) == 0:
                root = a
                break
        assert root is not None, "modulus must split in the extension"
        table = [0] * sub.q
        for a in sub.elements():
            img = 0
            for c in reversed(sub.coeffs(a)):
                img = self.add(self.mul(img, root), c)
            table[a] = img
        return table

    # -- misc --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "s": self.s,
            "modulus": list(self.modulus),
            "seed": self.seed,
        }

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, s={self.s}, modulus={list(self.modulus)})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.s, self.modulus) == (other.p, other.s, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.s, self.modulus))


@lru_cache(maxsize=None)
def field_make(p: int, s: int, seed: int = 0) -> FieldSpec:
    """Deterministic field context for F_{p^s}.

    seed selects among the monic irreducible moduli of degree s, in
    lexicographic order of the coefficient tuple; it wraps mod the exact count.
    """
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if s < 1:
        raise ValueError("extension degree must be >= 1")
    if s == 1:
        return FieldSpec(p, 1, (0, 1), seed)
    idx = seed % _count_monic_irreducibles(p, s)
    seen = 0
    for enc in range(p ** s):
        f = []
        e = enc
        for _ in range(s):
            e, r = divmod(e, p)
            f.append(r)
        f.append(1)
        if _irreducible(p, f):
            if seen == idx:
                return FieldSpec(p, s, tuple(f), seed)
            seen += 1
    raise AssertionError("irreducible count and enumeration disagree")
