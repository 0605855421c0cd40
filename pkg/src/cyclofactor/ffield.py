"""Deterministic finite field towers F_p -> F_q -> F_{q^K}.

A prime field represents elements as ints in [0, p).  An extension of degree k
represents elements as length-k tuples of base-field elements, constant term
first, reduced modulo a monic irreducible modulus.  Construction is fully
deterministic: the modulus is the first monic irreducible polynomial of the
right degree in the canonical enumeration (coefficients scanned constant term
upward, base elements ordered by their canonical integer encoding), and the
primitive element is the first element of full multiplicative order in the
same enumeration.

Internally, arithmetic in an extension of a prime field packs coefficient
vectors into big integers (one coefficient per fixed-width slot) so that a
field multiplication becomes one machine bignum multiply plus a table-driven
modular reduction.  Extensions of non-prime bases fall back to schoolbook
arithmetic, accelerated by a memoized multiplication table of the base field
when it is small.
"""
from __future__ import annotations

import functools
import itertools
import math

from . import intarith
from .intarith import factorize


class BudgetError(Exception):
    """A requested field exceeds the configured size budget."""


# --------------------------------------------------------------------------
# Modular-polynomial engines: arithmetic in base[x] / (f) for monic f.

class _PackedEngine:
    """Arithmetic modulo a monic polynomial over a prime field F_p.

    Coefficient vectors of length k are packed little-endian into ints with a
    fixed slot width chosen so that one unreduced schoolbook product plus the
    reduction accumulation never overflows a slot.
    """

    def __init__(self, p: int, low_coeffs: tuple[int, ...]):
        self.p = p
        self.k = k = len(low_coeffs)
        limit = 2 * k * (p - 1) ** 2 + p
        nbytes = 1
        while 256**nbytes <= limit:
            nbytes += 1
        self.slot = nbytes
        self.mask_len = k * nbytes
        # Reduction table: packed x^(k+i) mod f for 0 <= i <= k-2.
        cur = [(-c) % p for c in low_coeffs]
        table = []
        for _ in range(max(k - 1, 0)):
            table.append(self.pack(cur))
            lead = cur[k - 1]
            cur = [0] + cur[: k - 1]
            if lead:
                for j in range(k):
                    cur[j] = (cur[j] + lead * ((-low_coeffs[j]) % p)) % p
        self.table = table
        self.one = self.pack([1] + [0] * (k - 1)) if k else 0

    def pack(self, coeffs) -> int:
        if self.slot == 1:
            return int.from_bytes(bytes(coeffs), "little")
        out = 0
        for i, c in enumerate(coeffs):
            out |= c << (8 * self.slot * i)
        return out

    def unpack(self, value: int) -> tuple[int, ...]:
        buf = value.to_bytes(self.mask_len + 8, "little")
        s = self.slot
        if s == 1:
            return tuple(buf[i] % self.p for i in range(self.k))
        return tuple(
            int.from_bytes(buf[i * s : (i + 1) * s], "little") % self.p
            for i in range(self.k)
        )

    def mul(self, a: int, b: int) -> int:
        k, s, p = self.k, self.slot, self.p
        t = a * b
        buf = t.to_bytes(2 * k * s, "little")
        acc = int.from_bytes(buf[: k * s], "little")
        table = self.table
        if s == 1:
            for i in range(k - 1):
                c = buf[(k + i)] % p
                if c:
                    acc += c * table[i]
        else:
            for i in range(k - 1):
                c = int.from_bytes(buf[(k + i) * s : (k + i + 1) * s], "little") % p
                if c:
                    acc += c * table[i]
        return self.pack(self.unpack(acc))

    def pow(self, a: int, e: int) -> int:
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result


class _GenericEngine:
    """Arithmetic modulo a monic polynomial over an arbitrary FieldCtx."""

    def __init__(self, base: "FieldCtx", low_coeffs: tuple):
        self.base = base
        self.k = k = len(low_coeffs)
        self.low = low_coeffs
        neg_low = tuple(base.neg(c) for c in low_coeffs)
        cur = list(neg_low)
        table = []
        for _ in range(max(k - 1, 0)):
            table.append(tuple(cur))
            lead = cur[k - 1]
            cur = [base.zero] + cur[: k - 1]
            if lead != base.zero:
                for j in range(k):
                    cur[j] = base.add(cur[j], base.mul(lead, neg_low[j]))
        self.table = table
        self.one = (base.one,) + (base.zero,) * (k - 1)

    def mul(self, a: tuple, b: tuple) -> tuple:
        base, k = self.base, self.k
        badd, bmul, bzero = base.add, base.mul, base.zero
        prod = [bzero] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai == bzero:
                continue
            for j, bj in enumerate(b):
                if bj != bzero:
                    prod[i + j] = badd(prod[i + j], bmul(ai, bj))
        out = prod[:k]
        for i in range(k - 1):
            c = prod[k + i]
            if c != bzero:
                row = self.table[i]
                for j in range(k):
                    out[j] = badd(out[j], bmul(c, row[j]))
        return tuple(out)

    def pow(self, a: tuple, e: int) -> tuple:
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result


# --------------------------------------------------------------------------
# Field contexts.

class FieldCtx:
    """One level of a field tower.

    Immutable after construction; safe to share.  Elements are plain values
    (ints for a prime field, tuples of base elements for an extension), so
    equality and hashing are structural.
    """

    def __init__(self, base, ext_degree, modulus_low, cardinality, unit_factors):
        self.base = base
        self.ext_degree = ext_degree
        self.cardinality = cardinality
        self.unit_factors = unit_factors
        if base is None:
            self.p = cardinality
            self.degree_over_prime = 1
            self.tower = (cardinality,)
            self.modulus = None
            self.zero = 0
            self.one = 1 % cardinality
            self._engine = None
        else:
            self.p = base.p
            self.degree_over_prime = base.degree_over_prime * ext_degree
            self.tower = base.tower + (ext_degree,)
            self.modulus = modulus_low + (base.one,)
            self.zero = (base.zero,) * ext_degree
            self.one = (base.one,) + (base.zero,) * (ext_degree - 1)
            if base.base is None:
                self._engine = _PackedEngine(base.p, modulus_low)
            else:
                self._engine = _GenericEngine(_TableView(base), modulus_low)
        self.primitive = None  # set by the builders below

    # -- basic arithmetic ---------------------------------------------------

    def add(self, a, b):
        if self.base is None:
            return (a + b) % self.p
        badd = self.base.add
        return tuple(badd(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if self.base is None:
            return (-a) % self.p
        bneg = self.base.neg
        return tuple(bneg(x) for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.base is None:
            return a * b % self.p
        eng = self._engine
        if isinstance(eng, _PackedEngine):
            return eng.unpack(eng.mul(eng.pack(a), eng.pack(b)))
        return eng.mul(a, b)

    def pow(self, a, e: int):
        """a^e with 0^0 = 1; exponents reduced mod cardinality - 1 for a != 0."""
        if a == self.zero:
            return self.one if e == 0 else self.zero
        e %= self.cardinality - 1
        if self.base is None:
            return pow(a, e, self.p)
        eng = self._engine
        if isinstance(eng, _PackedEngine):
            return eng.unpack(eng.pow(eng.pack(a), e))
        return eng.pow(a, e)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero field element")
        return self.pow(a, self.cardinality - 2)

    def scalar(self, c: int):
        """The image of the integer c in this field."""
        if self.base is None:
            return c % self.p
        return (self.base.scalar(c),) + (self.base.zero,) * (self.ext_degree - 1)

    # -- canonical encoding -------------------------------------------------

    def encode(self, a) -> int:
        """Canonical integer encoding: sum of digit encodings, base |base field|."""
        if self.base is None:
            return a
        benc, bcard = self.base.encode, self.base.cardinality
        out = 0
        for c in reversed(a):
            out = out * bcard + benc(c)
        return out

    def decode(self, value: int):
        if self.base is None:
            return value % self.p
        bdec, bcard = self.base.decode, self.base.cardinality
        coeffs = []
        for _ in range(self.ext_degree):
            coeffs.append(bdec(value % bcard))
            value //= bcard
        return tuple(coeffs)

    def to_ints(self, a) -> list[int]:
        """Flatten an element to its prime-field coefficient list, constant first."""
        if self.base is None:
            return [a]
        out: list[int] = []
        for c in a:
            out.extend(self.base.to_ints(c))
        return out

    # -- orders -------------------------------------------------------------

    def elem_order(self, a) -> int:
        if a == self.zero:
            raise ValueError("zero has no multiplicative order")
        order = self.cardinality - 1
        for r, _ in self.unit_factors:
            while order % r == 0 and self.pow(a, order // r) == self.one:
                order //= r
        return order

    def __repr__(self):
        return f"FieldCtx(p={self.p}, tower={self.tower}, q={self.cardinality})"


class _TableView:
    """Wrapper around a small FieldCtx that serves multiplication by table."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.zero = ctx.zero
        self.one = ctx.one
        self.add = ctx.add
        self.neg = ctx.neg
        if ctx.cardinality <= 1024:
            elems = [ctx.decode(i) for i in range(ctx.cardinality)]
            table = {(a, b): ctx.mul(a, b) for a in elems for b in elems}
            self.mul = lambda a, b: table[(a, b)]
        else:
            self.mul = ctx.mul


# --------------------------------------------------------------------------
# Builders.

@functools.lru_cache(maxsize=None)
def build_prime_field(p: int) -> FieldCtx:
    """F_p with primitive element = the smallest primitive root of p."""
    if not intarith.is_prime(p):
        raise ValueError(f"{p} is not prime")
    ctx = FieldCtx(None, 1, None, p, factorize(p - 1))
    if p == 2:
        ctx.primitive = 1
    else:
        for g in range(2, p):
            if ctx.elem_order(g) == p - 1:
                ctx.primitive = g
                break
    return ctx


_EXT_CACHE: dict[tuple, FieldCtx] = {}


def build_extension(base: FieldCtx, k: int) -> FieldCtx:
    """Degree-k extension of base with deterministic modulus and primitive.

    k = 1 returns base itself.  Raises intarith.FactorBudgetError if the unit
    group order cannot be factored within the budget.
    """
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    if k == 1:
        return base
    key = (base.tower, k)
    cached = _EXT_CACHE.get(key)
    if cached is not None:
        return cached
    unit_factors = factorize(base.cardinality**k - 1)
    low = _first_irreducible(base, k)
    ctx = FieldCtx(base, k, low, base.cardinality**k, unit_factors)
    ctx.primitive = _first_primitive(ctx)
    _EXT_CACHE[key] = ctx
    return ctx


def _first_irreducible(base: FieldCtx, k: int) -> tuple:
    """Lowest monic irreducible of degree k over base, in canonical order."""
    for value in itertools.count(0):
        if value >= base.cardinality**k:
            raise RuntimeError("no irreducible polynomial found")  # unreachable
        low = _digits(base, value, k)
        if low[0] == base.zero:
            continue  # divisible by x
        if _is_irreducible_mod(base, low):
            return low


def _digits(base: FieldCtx, value: int, k: int) -> tuple:
    coeffs = []
    for _ in range(k):
        coeffs.append(base.decode(value % base.cardinality))
        value //= base.cardinality
    return tuple(coeffs)


def _make_engine(base: FieldCtx, low: tuple):
    if base.base is None:
        return _PackedEngine(base.p, low)
    return _GenericEngine(_TableView(base), low)


def _is_irreducible_mod(base: FieldCtx, low: tuple) -> bool:
    """Irreducibility of the monic polynomial x^k + low over base.

    Standard criterion: x^(Q^k) = x mod f, and gcd(x^(Q^(k/r)) - x, f) = 1
    for every prime r dividing k.
    """
    k = len(low)
    Q = base.cardinality
    eng = _make_engine(base, low)
    if isinstance(eng, _PackedEngine):
        x_elem = eng.pack((0, 1) + (0,) * (k - 2))
        frob = eng.pow(x_elem, Q**k)
        if frob != x_elem:
            return False
        for r, _ in factorize(k):
            g = eng.unpack(eng.pow(x_elem, Q ** (k // r)))
            diff = list(g)
            diff[1] = (diff[1] - 1) % base.p
            if _poly_gcd_degree(base, diff, list(low) + [1]) != 0:
                return False
        return True
    x_elem = (base.zero, base.one) + (base.zero,) * (k - 2)
    frob = eng.pow(x_elem, Q**k)
    if frob != x_elem:
        return False
    for r, _ in factorize(k):
        g = list(eng.pow(x_elem, Q ** (k // r)))
        g[1] = base.sub(g[1], base.one)
        if _poly_gcd_degree(base, g, list(low) + [base.one]) != 0:
            return False
    return True


def _poly_gcd_degree(base: FieldCtx, a: list, b: list) -> int:
    """Degree of gcd(a, b) over base; -1 for gcd = 0."""
    if base.base is None:
        a = [c % base.p for c in a]
        b = [c % base.p for c in b]
    a = _strip(base, a)
    b = _strip(base, b)
    while b:
        a = _poly_mod(base, a, b)
        a, b = b, a
    return len(a) - 1


def _strip(base: FieldCtx, coeffs: list) -> list:
    while coeffs and coeffs[-1] == base.zero:
        coeffs.pop()
    return coeffs


def _poly_mod(base: FieldCtx, a: list, b: list) -> list:
    a = list(a)
    inv_lead = base.inv(b[-1])
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        factor = base.mul(a[-1], inv_lead)
        shift = len(a) - 1 - db
        for i in range(db):
            a[shift + i] = base.sub(a[shift + i], base.mul(factor, b[i]))
        a.pop()
        a = _strip(base, a)
    return a


def _first_primitive(ctx: FieldCtx):
    for value in itertools.count(1):
        elem = ctx.decode(value)
        if elem != ctx.zero and ctx.elem_order(elem) == ctx.cardinality - 1:
            return elem
    raise RuntimeError("unreachable")


# --------------------------------------------------------------------------
# Tower helpers.

def elem_pow(ctx: FieldCtx, x, e: int):
    """x^e in ctx; 0^0 = 1 by convention."""
    return ctx.pow(x, e)


def elem_order(ctx: FieldCtx, x) -> int:
    """Exact multiplicative order of nonzero x."""
    return ctx.elem_order(x)


def subfield_generator(ctx: FieldCtx, delta, big_k: int, k: int):
    """delta^((q^K - 1)/(q^k - 1)) for a primitive delta of F_{q^K}; k | K.

    The result generates the multiplicative group of the cardinality-q^k
    subfield, where q^K is the cardinality of ctx.
    """
    if big_k % k != 0:
        raise ValueError(f"{k} does not divide {big_k}")
    q_card = _nth_root(ctx.cardinality, big_k)
    return ctx.pow(delta, (ctx.cardinality - 1) // (q_card**k - 1))


def _nth_root(n: int, k: int) -> int:
    """Exact integer k-th root of a perfect power n."""
    r = round(n ** (1.0 / k))
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    if r**k != n:
        raise ValueError(f"{n} is not a perfect {k}-th power")
    return r


def frobenius(ctx: FieldCtx, x, q: int, k: int):
    """x^(q^k): k-fold Frobenius relative to the cardinality-q level."""
    return ctx.pow(x, q**k)


def in_subfield(ctx: FieldCtx, x, q: int, k: int) -> bool:
    """True iff x lies in the subfield of cardinality q^k: x^(q^k) = x."""
    return ctx.pow(x, q**k) == x


def project_to_q(ctx: FieldCtx, x):
    """The F_q-level value of an element of F_{q^K} that lies in F_q.

    In the tower representation the F_q subfield is exactly the constant
    polynomials, so this checks that all higher coefficients vanish.
    """
    if ctx.base is None:
        return x
    if any(c != ctx.base.zero for c in x[1:]):
        raise ValueError(f"element {x} is not in the base subfield")
    return x[0]
