"""Ground-truth factorization of x^n - 1 over F_q via multiplicative orbits.

Residues of Z_n are partitioned into orbits under multiplication by q; each
orbit yields one irreducible factor, the minimal polynomial over F_q of the
corresponding power of an order-n root of unity in F_{q^D}, D = ord_n(q).
Nothing here shares logic with the closed-form construction, so agreement
between the two is a genuine cross-check.
"""
from __future__ import annotations

import dataclasses
import functools
import math

from . import closedform, ffield, polyring
from .closedform import FORM_MINPOLY, FactorReport, IrreducibleFactor
from .intarith import mult_order


@dataclasses.dataclass(frozen=True)
class CosetPartition:
    """Orbit partition of Z_n under multiplication by q."""

    n: int
    q: int
    cosets: tuple[tuple[int, ...], ...]


@functools.lru_cache(maxsize=None)
def cyclotomic_cosets(n: int, q: int) -> CosetPartition:
    """All q-cyclotomic cosets mod n, each sorted, keyed by minimal element."""
    if math.gcd(n, q) != 1:
        raise ValueError(f"gcd(n, q) must be 1, got n={n}, q={q}")
    seen = bytearray(n)
    cosets = []
    for s in range(n):
        if seen[s]:
            continue
        orbit = []
        cur = s
        while not seen[cur]:
            seen[cur] = 1
            orbit.append(cur)
            cur = cur * q % n
        cosets.append(tuple(sorted(orbit)))
    return CosetPartition(n, q, tuple(cosets))


def count_by_cosets(n: int, q: int) -> int:
    """Number of irreducible factors of x^n - 1 over F_q."""
    return len(cyclotomic_cosets(n, q).cosets)


@functools.lru_cache(maxsize=None)
def _oracle_factors(
    n: int, q: int, budget_bits: int
) -> tuple[IrreducibleFactor, ...]:
    degree = mult_order(q, n)
    closedform._check_budget(q, degree, budget_bits)
    ctx_q = closedform.field_for(q)
    big = ffield.build_extension(ctx_q, degree)
    beta = big.pow(big.primitive, (q**degree - 1) // n)
    if n > 1 and big.elem_order(beta) != n:
        raise closedform.VerificationError(
            f"root of unity has wrong order for n={n}, q={q}"
        )
    factors = []
    for coset in cyclotomic_cosets(n, q).cosets:
        coeffs = [big.one]
        for i in coset:
            root = big.pow(beta, i)
            nxt = [big.zero] * (len(coeffs) + 1)
            for j, a in enumerate(coeffs):
                nxt[j + 1] = big.add(nxt[j + 1], a)
                nxt[j] = big.sub(nxt[j], big.mul(a, root))
            coeffs = nxt
        if big is not ctx_q:
            coeffs = [ffield.project_to_q(big, a) for a in coeffs]
        factors.append(
            IrreducibleFactor(
                poly=polyring.poly(ctx_q, coeffs),
                form=FORM_MINPOLY,
                t=1,
                u=coset[0],
                orbit_len=len(coset),
                degree=len(coset),
            )
        )
    return closedform.emission_sorted(ctx_q, factors)


def factor_by_cosets(
    n: int,
    q: int,
    budget_bits: int = closedform.DEFAULT_BUDGET_BITS,
    verify: bool = True,
) -> FactorReport:
    """Complete factorization of x^n - 1 over F_q from the coset partition.

    Raises ffield.BudgetError when F_{q^D} exceeds the bit budget (the count
    stays available through count_by_cosets) and VerificationError if a
    self-check fails.
    """
    p, s = closedform.split_prime_power(q)
    factors = _oracle_factors(n, q, budget_bits)
    checks = {
        "count_formula": count_by_cosets(n, q),
        "count_matches": None,
        "product_ok": None,
        "all_irreducible": None,
        "oracle_agrees": None,
    }
    checks["count_matches"] = checks["count_formula"] == len(factors)
    if verify:
        ctx = closedform.field_for(q)
        product = polyring.product(ctx, [f.poly for f in factors])
        checks["product_ok"] = product == polyring.x_pow_n_minus_1(ctx, n)
        checks["all_irreducible"] = all(
            polyring.is_irreducible(f.poly) for f in factors
        )
    report = FactorReport(
        n=n,
        q=q,
        p=p,
        s=s,
        case=closedform.classify(n, q).name,
        method="oracle",
        num_factors=len(factors),
        factors=factors,
        checks=checks,
        timing={},
    )
    failed = [k for k, v in checks.items() if v is False]
    if failed:
        raise closedform.VerificationError(
            f"oracle self-checks failed for n={n}, q={q}: {', '.join(failed)}",
            report,
        )
    return report
