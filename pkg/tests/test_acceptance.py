"""End-to-end acceptance gate.

Covers the published example counts with runtime ceilings, full closed-form
vs oracle equivalence on a grid, count coherence between three independent
computations, the degree histogram of the split case, the binomial
irreducibility criterion against brute force, and byte-level determinism of
the JSON reports.
"""
import json
import math
import time

from cyclofactor import cli, closedform, ffield, intarith, oracle, polyring

GRID_Q = (2, 3, 4, 5, 7, 9)
GRID_N_MAX = 200


def _timed(fn, *args, **kwargs):
    start = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, time.perf_counter() - start


def test_example_73_over_f2():
    count, elapsed = _timed(closedform.count_closed_form, 73, 2)
    assert count == 9
    report, build_time = _timed(closedform.factor_closed_form, 73, 2)
    assert report.num_factors == 9
    assert elapsed + build_time < 1.0


def test_example_6056_over_f3():
    count, count_time = _timed(closedform.count_closed_form, 6056, 3)
    assert count == 425
    report, build_time = _timed(closedform.factor_closed_form, 6056, 3)
    assert report.num_factors == 425
    assert report.checks["product_ok"] is True
    assert count_time + build_time < 30.0


def test_example_40_over_f3():
    count, elapsed = _timed(closedform.count_closed_form, 40, 3)
    assert count == 13
    report, build_time = _timed(closedform.factor_closed_form, 40, 3)
    assert report.num_factors == 13
    assert elapsed + build_time < 1.0


def test_example_151_over_f2():
    count, count_time = _timed(closedform.count_closed_form, 151, 2)
    assert count == 11
    report, build_time = _timed(closedform.factor_closed_form, 151, 2)
    assert report.num_factors == 11
    assert count_time + build_time < 5.0


def test_example_36488_over_f3():
    count, count_time = _timed(closedform.count_closed_form, 36488, 3)
    assert count == 1525
    report, build_time = _timed(
        closedform.factor_closed_form, 36488, 3, budget_bits=64
    )
    assert report.num_factors == 1525
    assert report.checks["product_ok"] is True
    assert count_time + build_time < 120.0


def _grid_pairs():
    for q in GRID_Q:
        for n in range(1, GRID_N_MAX + 1):
            if math.gcd(n, q) == 1:
                yield n, q


def test_oracle_equivalence_grid():
    checked = 0
    mismatches = []
    for n, q in _grid_pairs():
        if not closedform.classify(n, q).is_supported():
            continue
        try:
            closed = closedform.factor_closed_form(n, q)
            oracle_factors = oracle._oracle_factors(
                n, q, closedform.DEFAULT_BUDGET_BITS
            )
        except (ffield.BudgetError, intarith.FactorBudgetError):
            continue
        assert closed.checks["product_ok"] is True
        assert closed.checks["all_irreducible"] is True
        if [f.poly for f in closed.factors] != [f.poly for f in oracle_factors]:
            mismatches.append((n, q))
        checked += 1
    assert mismatches == []
    assert checked > 200


def test_count_coherence_grid():
    for n, q in _grid_pairs():
        if not closedform.classify(n, q).is_supported():
            continue
        count = closedform.count_closed_form(n, q)
        assert count == oracle.count_by_cosets(n, q), (n, q)
        try:
            factors = closedform._assembled(n, q, closedform.DEFAULT_BUDGET_BITS)
        except (ffield.BudgetError, intarith.FactorBudgetError):
            continue
        assert count == len(factors), (n, q)


def test_degree_histogram_of_the_order_one_case():
    instances = []
    for q in (7, 13):
        for n in intarith.divisors(2**4 * 3**2):
            if closedform.classify(n, q).name == "ORDER_1_A":
                instances.append((n, q))
    assert len(instances) >= 20
    for n, q in instances:
        g = math.gcd(n, q - 1)
        m1 = n // g
        report = closedform.factor_closed_form(n, q)
        histogram: dict[int, int] = {}
        for f in report.factors:
            histogram[f.degree] = histogram.get(f.degree, 0) + 1
        expected = {
            t: intarith.euler_phi(t) * g // t for t in intarith.divisors(m1)
        }
        assert histogram == expected, (n, q)


def test_binomial_criterion_against_brute_force():
    for q in (3, 5, 7, 9):
        ctx = closedform.field_for(q)
        for value in range(1, q):
            eta = ctx.decode(value)
            for t in range(1, 13):
                binomial = polyring.poly(
                    ctx, [ctx.neg(eta)] + [ctx.zero] * (t - 1) + [ctx.one]
                )
                assert closedform.check_binomial_irreducible(
                    t, eta, ctx
                ) == polyring.is_irreducible(binomial), (q, value, t)


def test_json_reports_are_byte_identical(tmp_path):
    outputs = []
    for name in ("first", "second"):
        run_path = tmp_path / f"{name}_run.json"
        sweep_path = tmp_path / f"{name}_sweep.json"
        parser = cli.build_parser()
        assert cli.run(parser.parse_args([
            "run", "--n", "40", "--q", "3", "--format", "json",
            "--out", str(run_path),
        ])) == cli.EXIT_OK
        assert cli.sweep(parser.parse_args([
            "sweep", "--n-max", "30", "--q-list", "2,3,5", "--format", "json",
            "--out", str(sweep_path),
        ])) == cli.EXIT_OK
        json.loads(run_path.read_text())
        json.loads(sweep_path.read_text())
        outputs.append((run_path.read_bytes(), sweep_path.read_bytes()))
    assert outputs[0] == outputs[1]
