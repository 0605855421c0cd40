"""Complete irreducible factorization of x^n - 1 over finite fields.

Closed-form constructions for the supported orders of q modulo rad(n), an
independent cyclotomic-coset oracle, exact counting formulas, and a CLI.
"""

from . import closedform, ffield, intarith, oracle, polyring
from .closedform import (
    CaseParams,
    CaseTag,
    FactorReport,
    IrreducibleFactor,
    UnsupportedCaseError,
    VerificationError,
    check_binomial_irreducible,
    classify,
    compute_params,
    count_closed_form,
    decompose,
    enum_index_set,
    factor_closed_form,
)
from .oracle import count_by_cosets, cyclotomic_cosets, factor_by_cosets

__version__ = "0.1.0"
