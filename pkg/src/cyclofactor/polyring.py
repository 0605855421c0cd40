"""Dense univariate polynomials over a FieldCtx.

Coefficients are stored ascending by degree with trailing zeros stripped; the
zero polynomial has an empty coefficient vector and no degree.  Multiplication
over a prime field uses Kronecker substitution (coefficients packed into one
big integer per polynomial), which keeps exact products of degree ~40000
within interactive budgets; everything else is schoolbook.
"""
from __future__ import annotations

import dataclasses

from . import ffield
from .ffield import FieldCtx
from .intarith import factorize


@dataclasses.dataclass(frozen=True)
class Poly:
    """A dense polynomial; coeffs[i] is the coefficient of x^i."""

    ctx: FieldCtx
    coeffs: tuple

    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("the zero polynomial has no degree")
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __repr__(self):
        return f"Poly({render(self)!r})"


def poly(ctx: FieldCtx, coeffs) -> Poly:
    """Build a Poly, stripping trailing zeros."""
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == ctx.zero:
        coeffs.pop()
    return Poly(ctx, tuple(coeffs))


def constant(ctx: FieldCtx, c) -> Poly:
    return poly(ctx, [c])


def monomial(ctx: FieldCtx, degree: int, c=None) -> Poly:
    c = ctx.one if c is None else c
    return poly(ctx, [ctx.zero] * degree + [c])


def x_pow_n_minus_1(ctx: FieldCtx, n: int) -> Poly:
    return poly(ctx, [ctx.neg(ctx.one)] + [ctx.zero] * (n - 1) + [ctx.one])


def add(a: Poly, b: Poly) -> Poly:
    _same_ctx(a, b)
    ctx = a.ctx
    n = max(len(a.coeffs), len(b.coeffs))
    ca = a.coeffs + (ctx.zero,) * (n - len(a.coeffs))
    cb = b.coeffs + (ctx.zero,) * (n - len(b.coeffs))
    return poly(ctx, [ctx.add(x, y) for x, y in zip(ca, cb)])


def sub(a: Poly, b: Poly) -> Poly:
    return add(a, poly(b.ctx, [b.ctx.neg(c) for c in b.coeffs]))


def mul(a: Poly, b: Poly) -> Poly:
    _same_ctx(a, b)
    ctx = a.ctx
    if a.is_zero() or b.is_zero():
        return Poly(ctx, ())
    if ctx.base is None:
        return Poly(ctx, _mul_prime(ctx.p, a.coeffs, b.coeffs))
    out = [ctx.zero] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, ai in enumerate(a.coeffs):
        if ai == ctx.zero:
            continue
        for j, bj in enumerate(b.coeffs):
            if bj != ctx.zero:
                out[i + j] = ctx.add(out[i + j], ctx.mul(ai, bj))
    return poly(ctx, out)


def _mul_prime(p: int, a: tuple, b: tuple) -> tuple:
    """Exact product over F_p by Kronecker substitution into one bignum."""
    bound = min(len(a), len(b)) * (p - 1) ** 2
    slot = 1
    while 256**slot <= bound:
        slot += 1
    pa = int.from_bytes(
        b"".join(c.to_bytes(slot, "little") for c in a), "little"
    )
    pb = int.from_bytes(
        b"".join(c.to_bytes(slot, "little") for c in b), "little"
    )
    n = len(a) + len(b) - 1
    buf = (pa * pb).to_bytes(n * slot + slot, "little")
    if slot == 1:
        return tuple(buf[i] % p for i in range(n))
    return tuple(
        int.from_bytes(buf[i * slot : (i + 1) * slot], "little") % p
        for i in range(n)
    )


def product(ctx: FieldCtx, polys) -> Poly:
    """Product of many polynomials via a balanced tree."""
    level = [p for p in polys]
    if not level:
        return constant(ctx, ctx.one)
    while len(level) > 1:
        nxt = [
            mul(level[i], level[i + 1]) if i + 1 < len(level) else level[i]
            for i in range(0, len(level), 2)
        ]
        level = nxt
    return level[0]


def divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder with deg r < deg b; b must be nonzero."""
    _same_ctx(a, b)
    ctx = a.ctx
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero() or len(a.coeffs) < len(b.coeffs):
        return Poly(ctx, ()), a
    rem = list(a.coeffs)
    db = b.degree()
    inv_lead = ctx.inv(b.coeffs[-1])
    quot = [ctx.zero] * (len(rem) - db)
    for shift in range(len(rem) - db - 1, -1, -1):
        factor = ctx.mul(rem[shift + db], inv_lead)
        if factor == ctx.zero:
            continue
        quot[shift] = factor
        for i in range(db + 1):
            rem[shift + i] = ctx.sub(rem[shift + i], ctx.mul(factor, b.coeffs[i]))
    return poly(ctx, quot), poly(ctx, rem)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    while not b.is_zero():
        a, b = b, divrem(a, b)[1]
    if a.is_zero():
        return a
    inv_lead = a.ctx.inv(a.coeffs[-1])
    return poly(a.ctx, [a.ctx.mul(c, inv_lead) for c in a.coeffs])


def formal_derivative(a: Poly) -> Poly:
    ctx = a.ctx
    return poly(
        ctx,
        [ctx.mul(ctx.scalar(i), c) for i, c in enumerate(a.coeffs)][1:],
    )


def pow_mod(a: Poly, e: int, m: Poly) -> Poly:
    """a^e mod m by square-and-multiply."""
    if m.is_zero() or m.degree() < 1:
        raise ValueError("pow_mod requires a modulus of degree >= 1")
    result = constant(a.ctx, a.ctx.one)
    base = divrem(a, m)[1]
    result = divrem(result, m)[1]
    while e:
        if e & 1:
            result = divrem(mul(result, base), m)[1]
        base = divrem(mul(base, base), m)[1]
        e >>= 1
    return result


def is_irreducible(f: Poly) -> bool:
    """Irreducibility over the coefficient field.

    Criterion: x^(Q^d) = x mod f and gcd(x^(Q^(d/r)) - x, f) = 1 for every
    prime r | d, where Q is the field cardinality and d = deg f.
    """
    ctx = f.ctx
    if f.is_zero() or f.degree() < 1:
        return False
    if f.degree() == 1:
        return True
    inv_lead = ctx.inv(f.coeffs[-1])
    low = tuple(ctx.mul(c, inv_lead) for c in f.coeffs[:-1])
    return ffield._is_irreducible_mod(ctx, low)


def conjugate_product(
    top_ctx: FieldCtx, t: int, c, orbit_len: int, out_ctx: FieldCtx = None
) -> Poly:
    """The product prod_{k<orbit_len} (x^t - c^(q^k)), projected to F_q.

    top_ctx is the extension F_{q^K} of the output field F_q = out_ctx (its
    base level by default, or top_ctx itself when K = 1); c is a nonzero
    element of top_ctx whose Frobenius orbit over F_q has exactly orbit_len
    elements.  The result is irreducible of degree t * orbit_len whenever c
    comes from the factorization of x^n - 1 over F_{q^K}.
    """
    if c == top_ctx.zero:
        raise ValueError("conjugate_product requires c != 0")
    if out_ctx is None:
        out_ctx = top_ctx.base if top_ctx.base is not None else top_ctx
    if out_ctx is not top_ctx and out_ctx is not top_ctx.base:
        raise ValueError("out_ctx must be top_ctx or its immediate base field")
    q = out_ctx.cardinality
    conjugates = [c]
    cur = c
    for _ in range(orbit_len - 1):
        cur = top_ctx.pow(cur, q)
        conjugates.append(cur)
    if top_ctx.pow(cur, q) != c:
        raise ValueError(
            f"stated orbit length {orbit_len} does not close the Frobenius orbit"
        )
    # Product of (y - c_k) over the big field, y standing for x^t.
    prod = [top_ctx.one]
    for conj in conjugates:
        neg = top_ctx.neg(conj)
        nxt = [top_ctx.zero] * (len(prod) + 1)
        for i, a in enumerate(prod):
            nxt[i + 1] = top_ctx.add(nxt[i + 1], a)
            nxt[i] = top_ctx.add(nxt[i], top_ctx.mul(a, neg))
        prod = nxt
    if out_ctx is top_ctx:
        projected = prod
    else:
        projected = []
        for a in prod:
            try:
                projected.append(ffield.project_to_q(top_ctx, a))
            except ValueError as exc:
                raise ValueError(
                    "conjugate product has a coefficient outside the ground "
                    "field; upstream case dispatch is inconsistent"
                ) from exc
    out = [out_ctx.zero] * (t * orbit_len + 1)
    for i, a in enumerate(projected):
        out[i * t] = a
    return poly(out_ctx, out)


def render(a: Poly) -> str:
    """Ascending-coefficient text form with canonically encoded coefficients."""
    if a.is_zero():
        return "0"
    ctx = a.ctx
    parts = []
    for i, c in enumerate(a.coeffs):
        if c == ctx.zero:
            continue
        enc = ctx.to_ints(c)
        shown = str(enc[0]) if len(enc) == 1 else str(enc)
        if i == 0:
            parts.append(shown)
        elif i == 1:
            parts.append("x" if c == ctx.one else f"{shown}*x")
        else:
            parts.append(f"x^{i}" if c == ctx.one else f"{shown}*x^{i}")
    return " + ".join(parts)


def _same_ctx(a: Poly, b: Poly) -> None:
    if a.ctx is not b.ctx:
        raise ValueError("polynomials belong to different field contexts")
