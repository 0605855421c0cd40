"""Closed-form irreducible factorization of x^n - 1 over F_q.

Supported inputs are those where d = ord_rad(n)(q) is 1, 4, the square of an
odd prime, twice an odd prime, or a product of two distinct odd primes.  The
construction is uniform across all supported cases: over the extension
F_{q^K} (K = d, doubled when q = 3 mod 4 and 8 | n) the polynomial x^n - 1
splits into binomials x^t - delta^(u*l); grouping those binomials into
Frobenius orbits and taking conjugate products yields the complete irreducible
factorization over F_q.  The factor count is evaluated independently by pure
integer arithmetic (Mobius inversion over orbit sizes), with no field
construction.
"""
from __future__ import annotations

import dataclasses
import functools
import math
from fractions import Fraction

from . import ffield, polyring
from .intarith import divisors, factorize, mult_order, radical, valuation

DEFAULT_BUDGET_BITS = 64

FORM_BINOMIAL = "BINOMIAL"
FORM_TRINOMIAL = "TRINOMIAL"
FORM_CONJ_PRODUCT = "CONJ_PRODUCT"
FORM_MINPOLY = "MINPOLY"


class UnsupportedCaseError(Exception):
    """Signal that (n, q) falls outside the closed-form case analysis.

    Carries the classification tag; callers may fall back to the coset
    oracle, which handles every coprime pair.
    """

    def __init__(self, tag: "CaseTag"):
        super().__init__(f"no closed-form construction for order d={tag.d}")
        self.tag = tag


class VerificationError(Exception):
    """A self-check on an assembled factorization failed."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


# --------------------------------------------------------------------------
# Classification.

@dataclasses.dataclass(frozen=True)
class CaseTag:
    """Which construction applies, keyed by d = ord_rad(n)(q)."""

    name: str
    d: int
    w: int | None = None
    w1: int | None = None
    w2: int | None = None

    def is_supported(self) -> bool:
        return self.name != "UNSUPPORTED"


def classify(n: int, q: int) -> CaseTag:
    """Case tag for factoring x^n - 1 over F_q; requires gcd(n, q) = 1."""
    if math.gcd(n, q) != 1:
        raise ValueError(f"gcd(n, q) must be 1, got n={n}, q={q}")
    d = mult_order(q, radical(n))
    # The split variants apply when the odd-degree top field would have
    # q^K = 3 mod 4 while 8 | n; doubling K removes the obstruction.
    b_side = q % 4 == 3 and n % 8 == 0
    if d == 1:
        return CaseTag("ORDER_1_B" if b_side else "ORDER_1_A", 1)
    if d == 4:
        return CaseTag("ORDER_4", 4, w=2)
    fac = factorize(d)
    if len(fac) == 1 and fac[0][1] == 2 and fac[0][0] != 2:
        w = fac[0][0]
        return CaseTag("ORDER_W2_B" if b_side else "ORDER_W2_A", d, w=w)
    if len(fac) == 2 and fac[0] == (2, 1) and fac[1][1] == 1:
        return CaseTag("ORDER_2W", d, w=fac[1][0])
    if len(fac) == 2 and fac[0][1] == 1 and fac[1][1] == 1 and fac[0][0] != 2:
        name = "ORDER_W1W2_B" if b_side else "ORDER_W1W2_A"
        return CaseTag(name, d, w1=fac[0][0], w2=fac[1][0])
    return CaseTag("UNSUPPORTED", d)


def top_extension_degree(tag: CaseTag) -> int:
    """Degree K of the splitting extension F_{q^K} used by the construction."""
    name = tag.name
    if name == "ORDER_1_A":
        return 1
    if name == "ORDER_1_B":
        return 2
    if name == "ORDER_4":
        return 4
    if name == "ORDER_2W":
        return 2 * tag.w
    if name == "ORDER_W2_A":
        return tag.w**2
    if name == "ORDER_W2_B":
        return 2 * tag.w**2
    if name == "ORDER_W1W2_A":
        return tag.w1 * tag.w2
    if name == "ORDER_W1W2_B":
        return 2 * tag.w1 * tag.w2
    raise UnsupportedCaseError(tag)


# --------------------------------------------------------------------------
# Decomposition and case parameters.

def decompose(n: int, q: int, tag: CaseTag) -> dict[str, int]:
    """Split n into order-homogeneous buckets.

    Each prime power r^e || n with r not among the case's special primes is
    assigned to the bucket determined by ord_r(q); the special primes appear
    as explicit valuations.  The bucket values (times the special prime
    powers) multiply back to n.
    """
    if not tag.is_supported():
        raise UnsupportedCaseError(tag)
    name = tag.name
    if name.startswith("ORDER_1"):
        specials: dict[int, str] = {}
        buckets = [("n1", 1)]
    elif name.startswith("ORDER_W2"):
        specials = {tag.w: "v_w"}
        buckets = [("n1", 1), ("n2", tag.w), ("n3", tag.d)]
    elif name == "ORDER_4":
        specials = {2: "v_2"}
        buckets = [("n0", 1), ("n1", 2), ("n2", 4), ("n3", None)]
    elif name == "ORDER_2W":
        specials = {2: "v_2", tag.w: "v_w"}
        buckets = [("n0", 1), ("n1", 2), ("n2", tag.w), ("n3", tag.d)]
    else:
        specials = {tag.w1: "v_w1", tag.w2: "v_w2"}
        buckets = [("n0", 1), ("n1", tag.w1), ("n2", tag.w2), ("n3", tag.d)]
    result = {key: 0 for key in specials.values()}
    result.update({key: 1 for key, _ in buckets})
    order_to_bucket = {order: key for key, order in buckets if order is not None}
    for r, e in factorize(n):
        if r in specials:
            result[specials[r]] = e
            continue
        order = mult_order(q, r)
        key = order_to_bucket.get(order)
        if key is None:
            raise VerificationError(
                f"prime {r} with ord_r(q)={order} fits no bucket for {name}"
            )
        result[key] *= r**e
    return result


@dataclasses.dataclass(frozen=True)
class CaseParams:
    """All named quantities of a supported case, computed exactly."""

    n: int
    q: int
    tag: CaseTag
    big_k: int
    decomposition: dict[str, int]
    m_values: dict[str, int]
    l_values: dict[str, int]
    r: int | None
    count_constants: dict[str, int]


def compute_params(n: int, q: int, tag: CaseTag) -> CaseParams:
    if not tag.is_supported():
        raise UnsupportedCaseError(tag)
    dec = decompose(n, q, tag)

    def m_of(numerator: int, j: int) -> int:
        return numerator // math.gcd(numerator, q**j - 1)

    def l_of(j: int) -> int:
        return (q**j - 1) // math.gcd(n, q**j - 1)

    def r_of() -> int:
        return min(valuation(2, n // 2), valuation(2, q + 1))

    name = tag.name
    m: dict[str, int] = {}
    l: dict[str, int] = {}
    cc: dict[str, int] = {}
    r: int | None = None
    if name == "ORDER_1_A":
        m["m_1"] = m_of(n, 1)
        l["l_1"] = l_of(1)
    elif name == "ORDER_1_B":
        m["m_2"] = m_of(n, 2)
        l["l_2"] = l_of(2)
        l["l_1"] = l_of(1)
        r = r_of()
    elif name in ("ORDER_W2_A", "ORDER_W2_B"):
        w = tag.w
        m["m_w2"] = m_of(n, w * w)
        m["m_w2_1"] = m_of(dec["n1"], 1)
        m["m_w2_2"] = m_of(dec["n1"] * dec["n2"], w)
        l["l_w2"] = l_of(w * w)
        l["l_w"] = l_of(w)
        l["l_1"] = l_of(1)
        if name == "ORDER_W2_B":
            m["m_2w2"] = m_of(n, 2 * w * w)
            l["l_2w2"] = l_of(2 * w * w)
            l["l_2"] = l_of(2)
            r = r_of()
            cc["A"] = (
                2 ** (r - 1) * (2 + valuation(2, m["m_2w2"])) * (w * w - 1)
                + w * w
                - 2 * w
                + 1
            )
    elif name == "ORDER_4":
        m["m_4"] = m_of(n, 4)
        m["m_4_1"] = m_of(dec["n0"], 1)
        m["m_4_2"] = m_of(dec["n0"] * dec["n1"], 2)
        l["l_4"] = l_of(4)
        l["l_2"] = l_of(2)
        l["l_1"] = l_of(1)
    elif name == "ORDER_2W":
        w = tag.w
        m["m_2w"] = m_of(n, 2 * w)
        m["m_2w_0"] = m_of(dec["n0"], 1)
        m["m_2w_1"] = m_of(2 ** dec["v_2"] * dec["n0"] * dec["n1"], 2)
        m["m_2w_2"] = m_of(w ** dec["v_w"] * dec["n0"] * dec["n2"], w)
        l["l_2w"] = l_of(2 * w)
        l["l_w"] = l_of(w)
        l["l_2"] = l_of(2)
        l["l_1"] = l_of(1)
    else:
        w1, w2 = tag.w1, tag.w2
        m["m_w1w2"] = m_of(n, w1 * w2)
        m["m_w1w2_0"] = m_of(dec["n0"], 1)
        m["m_w1w2_1"] = m_of(w1 ** dec["v_w1"] * dec["n0"] * dec["n1"], w1)
        m["m_w1w2_2"] = m_of(w2 ** dec["v_w2"] * dec["n0"] * dec["n2"], w2)
        l["l_w1w2"] = l_of(w1 * w2)
        l["l_w1"] = l_of(w1)
        l["l_w2"] = l_of(w2)
        l["l_1"] = l_of(1)
        if name == "ORDER_W1W2_B":
            m["m_2w1w2"] = m_of(n, 2 * w1 * w2)
            l["l_2w1w2"] = l_of(2 * w1 * w2)
            l["l_2"] = l_of(2)
            r = r_of()
            cc["B"] = (
                2 ** (r - 1) * (2 + valuation(2, m["m_2w1w2"])) * (w1 * w2 - 1)
                + w1 * w2
                - 2 * w1
                - 2 * w2
                + 3
            )
    return CaseParams(
        n=n,
        q=q,
        tag=tag,
        big_k=top_extension_degree(tag),
        decomposition=dec,
        m_values=m,
        l_values=l,
        r=r,
        count_constants=cc,
    )


# --------------------------------------------------------------------------
# Index sets.

@dataclasses.dataclass(frozen=True)
class IndexSpec:
    """Enumeration recipe for one exponent family.

    members are u in [1, bound] with gcd(u, t) = 1, failing every exclusion
    (each pair (D, L) excludes u with D | u*L), and minimal in their orbit
    {u * multiplier^k mod orbit_modulus : k < orbit_length}, where residue 0
    is read as the modulus itself.
    """

    kind: str
    t: int
    bound: int
    exclusions: tuple[tuple[int, int], ...]
    orbit_modulus: int
    orbit_length: int
    multiplier: int


@dataclasses.dataclass(frozen=True)
class IndexSet:
    kind: str
    t: int
    members: tuple[int, ...]


def enum_index_set(spec: IndexSpec) -> IndexSet:
    if spec.bound < 1 or spec.orbit_modulus < 1:
        raise ValueError("bound and orbit modulus must be >= 1")
    members = []
    mod = spec.orbit_modulus
    for u in range(1, spec.bound + 1):
        if math.gcd(u, spec.t) != 1:
            continue
        if any((u * L) % D == 0 for D, L in spec.exclusions):
            continue
        cur = u % mod or mod
        best = cur
        for _ in range(spec.orbit_length - 1):
            cur = (cur * spec.multiplier) % mod or mod
            if cur < best:
                best = cur
        if u == best:
            members.append(u)
    return IndexSet(spec.kind, spec.t, tuple(members))


def index_spec_for(n: int, q: int, tag: CaseTag, kind: str, t: int) -> IndexSpec:
    """The exponent-family recipe a given case uses for its factor products."""
    if not tag.is_supported():
        raise UnsupportedCaseError(tag)
    params = compute_params(n, q, tag)
    l = params.l_values
    r = params.r

    def g(j: int) -> int:
        return math.gcd(n, q**j - 1)

    def spec(bound, exclusions, modulus, length):
        return IndexSpec(kind, t, bound, tuple(exclusions), modulus, length, q)

    name = tag.name
    table: dict[str, IndexSpec] = {}
    if name == "ORDER_1_A":
        table["S1"] = spec(g(1), [], g(1), 1)
    elif name == "ORDER_1_B":
        table["S1"] = spec(g(1), [], g(1), 1)
        table["R1"] = spec(g(2), [(2**r, 1)], g(2), 2)
    elif name in ("ORDER_W2_A", "ORDER_W2_B"):
        w = tag.w
        table["S1"] = spec(
            g(w), [((q**w - 1) // (q - 1), l["l_w"])], g(w), w
        )
        table["S2"] = spec(
            g(w * w),
            [((q ** (w * w) - 1) // (q**w - 1), l["l_w2"])],
            g(w * w),
            w * w,
        )
        if name == "ORDER_W2_B":
            table["R1"] = spec(2**r * g(1), [(2**r, 1)], g(2), 2)
            table["R2"] = spec(
                g(2 * w * w),
                [
                    ((q ** (2 * w * w) - 1) // (q**2 - 1), l["l_2w2"]),
                    (2**r, 1),
                ],
                g(2 * w * w),
                2 * w * w,
            )
    elif name == "ORDER_4":
        table["S1"] = spec(g(2), [(q + 1, l["l_2"])], g(2), 2)
        table["S2"] = spec(
            g(4), [((q**4 - 1) // (q**2 - 1), l["l_4"])], g(4), 4
        )
    elif name == "ORDER_2W":
        w = tag.w
        table["S1"] = spec(g(2), [(q + 1, l["l_2"])], g(2), 2)
        table["S2"] = spec(
            g(w), [((q**w - 1) // (q - 1), l["l_w"])], g(w), w
        )
        table["S3"] = spec(
            g(2 * w),
            [
                ((q ** (2 * w) - 1) // (q**2 - 1), l["l_2w"]),
                ((q ** (2 * w) - 1) // (q**w - 1), l["l_2w"]),
            ],
            g(2 * w),
            2 * w,
        )
    else:
        w1, w2 = tag.w1, tag.w2
        d = w1 * w2
        table["S1"] = spec(
            g(w1), [((q**w1 - 1) // (q - 1), l["l_w1"])], g(w1), w1
        )
        table["S2"] = spec(
            g(w2), [((q**w2 - 1) // (q - 1), l["l_w2"])], g(w2), w2
        )
        table["S3"] = spec(
            g(d),
            [
                ((q**d - 1) // (q**w1 - 1), l["l_w1w2"]),
                ((q**d - 1) // (q**w2 - 1), l["l_w1w2"]),
            ],
            g(d),
            d,
        )
        if name == "ORDER_W1W2_B":
            table["R1"] = spec(2**r * g(1), [(2**r, 1)], g(2), 2)
            table["R2"] = spec(
                g(2 * d),
                [
                    ((q ** (2 * d) - 1) // (q**2 - 1), l["l_2w1w2"]),
                    (2**r, 1),
                ],
                g(2 * d),
                2 * d,
            )
    if kind not in table:
        raise ValueError(f"case {name} has no index family {kind}")
    return table[kind]


# --------------------------------------------------------------------------
# Counting (pure integer arithmetic, no field construction).

def _mobius(n: int) -> int:
    mu = 1
    for _, e in factorize(n):
        if e > 1:
            return 0
        mu = -mu
    return mu


def count_closed_form(n: int, q: int) -> int:
    """Number of irreducible factors of x^n - 1 over F_q, in closed form.

    Counts Frobenius orbits of the binomial factorization over F_{q^K}:
    for each orbit size e | K, the number of admissible exponents whose
    orbit size divides e is a plain gcd, and Mobius inversion isolates the
    exact sizes.  The total is an integer by construction; this is asserted.
    """
    tag = classify(n, q)
    if not tag.is_supported():
        raise UnsupportedCaseError(tag)
    big_k = top_extension_degree(tag)
    big_g = math.gcd(n, q**big_k - 1)
    m = n // big_g
    m_factors = factorize(m)

    def divisor_sum(coprime_to: int) -> Fraction:
        # sum over t | m with gcd(t, coprime_to) = 1 of phi(t)/t
        prod = Fraction(1)
        for p, e in m_factors:
            if coprime_to % p != 0:
                prod *= 1 + Fraction(e * (p - 1), p)
        return prod

    total = Fraction(0)
    for e in divisors(big_k):
        acc = Fraction(0)
        for e2 in divisors(e):
            mu = _mobius(e // e2)
            if mu == 0:
                continue
            g_e2 = math.gcd(n, q**e2 - 1)
            acc += mu * g_e2 * divisor_sum(big_g // g_e2)
        total += acc / e
    if total.denominator != 1:
        raise VerificationError(f"non-integer factor count for n={n}, q={q}")
    return int(total)


# --------------------------------------------------------------------------
# Factor assembly.

@dataclasses.dataclass(frozen=True)
class IrreducibleFactor:
    """One emitted irreducible factor with its construction metadata."""

    poly: polyring.Poly
    form: str
    t: int
    u: int
    orbit_len: int
    degree: int


@dataclasses.dataclass
class FactorReport:
    """Full result of one factorization run, plus self-check outcomes."""

    n: int
    q: int
    p: int
    s: int
    case: str
    method: str
    num_factors: int
    factors: tuple[IrreducibleFactor, ...]
    checks: dict
    timing: dict


def split_prime_power(q: int) -> tuple[int, int]:
    """(p, s) with q = p^s, erroring unless q is a prime power >= 2."""
    if q < 2:
        raise ValueError(f"q must be a prime power >= 2, got {q}")
    fac = factorize(q)
    if len(fac) != 1:
        raise ValueError(f"q must be a prime power, got {q} = {fac}")
    return fac[0]


def field_for(q: int) -> ffield.FieldCtx:
    p, s = split_prime_power(q)
    return ffield.build_extension(ffield.build_prime_field(p), s)


def _check_budget(q: int, k: int, budget_bits: int) -> None:
    bits = (q**k).bit_length() - 1
    if bits > budget_bits:
        raise ffield.BudgetError(
            f"field of size q^{k} needs {bits} bits, budget is {budget_bits}"
        )


def _orbit_reps(modulus: int, multiplier: int) -> list[tuple[int, int]]:
    """(min, size) of every orbit of {1..modulus} under multiplication.

    Residues are tracked in [1, modulus] with 0 read as the modulus, so the
    zero class is the fixed point {modulus}.
    """
    reps = []
    seen = bytearray(modulus + 1)
    for u in range(1, modulus + 1):
        if seen[u]:
            continue
        seen[u] = 1
        size = 1
        cur = (u * multiplier) % modulus or modulus
        while cur != u:
            seen[cur] = 1
            size += 1
            cur = (cur * multiplier) % modulus or modulus
        reps.append((u, size))
    return reps


@functools.lru_cache(maxsize=None)
def _assembled(n: int, q: int, budget_bits: int) -> tuple[IrreducibleFactor, ...]:
    tag = classify(n, q)
    if not tag.is_supported():
        raise UnsupportedCaseError(tag)
    big_k = top_extension_degree(tag)
    _check_budget(q, big_k, budget_bits)
    ctx_q = field_for(q)
    top = ffield.build_extension(ctx_q, big_k)
    delta = top.primitive
    big_g = math.gcd(n, q**big_k - 1)
    l = (q**big_k - 1) // big_g
    m = n // big_g
    orbits = _orbit_reps(big_g, q % big_g if big_g > 1 else 0)
    factors = []
    for t in divisors(m):
        for u, size in orbits:
            if math.gcd(u, t) != 1:
                continue
            c = top.pow(delta, u * l)
            poly = polyring.conjugate_product(top, t, c, size, ctx_q)
            if size == 1:
                form = FORM_BINOMIAL
            elif size == 2:
                form = FORM_TRINOMIAL
            else:
                form = FORM_CONJ_PRODUCT
            factors.append(
                IrreducibleFactor(poly, form, t, u, size, t * size)
            )
    factors.sort(key=lambda f: _emission_key(ctx_q, f.poly))
    return tuple(factors)


def _emission_key(ctx, poly: polyring.Poly):
    return (poly.degree(), tuple(ctx.encode(c) for c in poly.coeffs))


def emission_sorted(ctx, factors):
    """Deterministic output order: ascending degree, then coefficient encoding."""
    return tuple(sorted(factors, key=lambda f: _emission_key(ctx, f.poly)))


@functools.lru_cache(maxsize=None)
def _verified(n: int, q: int, budget_bits: int) -> tuple[bool, bool]:
    """(product_ok, all_irreducible) for the assembled factor list."""
    factors = _assembled(n, q, budget_bits)
    ctx = field_for(q)
    product = polyring.product(ctx, [f.poly for f in factors])
    product_ok = product == polyring.x_pow_n_minus_1(ctx, n)
    all_irreducible = all(polyring.is_irreducible(f.poly) for f in factors)
    return product_ok, all_irreducible


def factor_closed_form(
    n: int,
    q: int,
    budget_bits: int = DEFAULT_BUDGET_BITS,
    verify: bool = True,
) -> FactorReport:
    """The complete irreducible factorization of x^n - 1 over F_q.

    Raises UnsupportedCaseError outside the supported case analysis,
    ffield.BudgetError when the splitting field exceeds the bit budget, and
    VerificationError (carrying the report) if any self-check fails.
    """
    p, s = split_prime_power(q)
    tag = classify(n, q)
    if not tag.is_supported():
        raise UnsupportedCaseError(tag)
    factors = _assembled(n, q, budget_bits)
    checks = {
        "count_formula": count_closed_form(n, q),
        "count_matches": None,
        "product_ok": None,
        "all_irreducible": None,
        "oracle_agrees": None,
    }
    checks["count_matches"] = checks["count_formula"] == len(factors)
    if verify:
        checks["product_ok"], checks["all_irreducible"] = _verified(
            n, q, budget_bits
        )
    report = FactorReport(
        n=n,
        q=q,
        p=p,
        s=s,
        case=tag.name,
        method="closed_form",
        num_factors=len(factors),
        factors=factors,
        checks=checks,
        timing={},
    )
    failed = [k for k, v in checks.items() if v is False]
    if failed:
        raise VerificationError(
            f"self-checks failed for n={n}, q={q}: {', '.join(failed)}", report
        )
    return report


# --------------------------------------------------------------------------
# Binomial irreducibility criterion.

def check_binomial_irreducible(t: int, eta, ctx: ffield.FieldCtx) -> bool:
    """Whether x^t - eta is irreducible over ctx, by the order criterion.

    For t >= 2: rad(t) must divide the order of eta, t must be coprime to
    (Q - 1) / ord(eta), and 4 | t forces 4 | Q - 1.  For t = 1 the binomial
    is linear, hence irreducible.
    """
    if eta == ctx.zero:
        raise ValueError("eta must be nonzero")
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if t == 1:
        return True
    order = ctx.elem_order(eta)
    if order % radical(t) != 0:
        return False
    if math.gcd(t, (ctx.cardinality - 1) // order) != 1:
        return False
    if t % 4 == 0 and (ctx.cardinality - 1) % 4 != 0:
        return False
    return True
