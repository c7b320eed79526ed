"""Acceptance sweep: one test per delivery criterion, each printing a
single pass/fail line with its measured margin.

The shared fixture evaluates the full comparison grid (all m + n <= 8
against both independent quadrature paths) once; the criteria then assert
their stated tolerances against those reports.
"""

import math
import subprocess
import sys
import time

import pytest
from scipy import integrate

from besselgauss.closed_form import (
    EvalParams,
    e_poly,
    endpoint_weights,
    eval_closed,
    gaussian_moment_even,
    gaussian_moment_odd,
)
from besselgauss.numerics import Polynomial, one_minus_t2_pow, poly_derivative
from besselgauss.oracle import compare, eval_quadrature_direct, eval_quadrature_hermite, rel_disagreement

GRID_BETAS = (0.5, 1.0, 2.0)
GRID_QS = (0.0, 0.5, 1.0, 3.0)
GRID_MAX_SUM = 8


def grid_points():
    for m in range(GRID_MAX_SUM + 1):
        for n in range(GRID_MAX_SUM + 1 - m):
            for beta in GRID_BETAS:
                for q in GRID_QS:
                    yield m, n, beta, q


@pytest.fixture(scope="module")
def grid_reports():
    t0 = time.perf_counter()
    reports = {
        key: compare(EvalParams(*key), tol=1e-10) for key in grid_points()
    }
    elapsed = time.perf_counter() - t0
    return reports, elapsed


def test_criterion_1_closed_matches_direct_quadrature(grid_reports):
    reports, elapsed = grid_reports
    worst = max(
        rel_disagreement(r.closed, r.quad_direct.value) for r in reports.values()
    )
    assert worst <= 1e-10
    assert elapsed <= 60.0
    print(f"\ncriterion 1 (closed vs direct quadrature <= 1e-10 on the full grid, "
          f"<= 60 s): PASS  worst={worst:.3e}  points={len(reports)}  "
          f"elapsed={elapsed:.2f}s")


def test_criterion_2_three_paths_agree(grid_reports):
    reports, _ = grid_reports
    worst = max(r.max_rel_disagreement for r in reports.values())
    assert worst <= 1e-9
    print(f"\ncriterion 2 (three-way agreement <= 1e-9 on the full grid): PASS  "
          f"worst={worst:.3e}")


def test_criterion_3_elementary_point_value():
    # m=n=0, beta=q=1 reduces to (1 - e^-1)/(i sqrt(2))
    expected = complex(0.0, -(1.0 - math.exp(-1.0)) / math.sqrt(2.0))
    p = EvalParams(0, 0, 1.0, 1.0)
    vals = {
        "closed": eval_closed(p),
        "quad-direct": eval_quadrature_direct(p, tol=1e-13).value,
        "quad-hermite": eval_quadrature_hermite(p, tol=1e-13).value,
    }
    worst = max(abs(v - expected) for v in vals.values())
    assert worst <= 1e-12, vals
    print(f"\ncriterion 3 (elementary point, all paths within 1e-12 absolute): "
          f"PASS  worst={worst:.3e}")


def test_criterion_4_endpoint_weights_exact():
    checked = 0
    for n in range(11):
        w = endpoint_weights(n)
        p = one_minus_t2_pow(n)
        for k in range(2 * n + 3):
            d = poly_derivative(p, k)
            assert w.at_plus1(k) == d(1)
            assert w.at_minus1(k) == d(-1)
            assert isinstance(w.at_plus1(k), int)
            checked += 1
    print(f"\ncriterion 4 (endpoint weights exact integers, n <= 10, zero outside "
          f"the band): PASS  values={checked}")


def test_criterion_5_e_polynomial_recursion():
    worst = 0.0
    for beta in GRID_BETAS:
        for q in (0.5, 1.0, 3.0):
            params = EvalParams(0, 0, beta, q)
            inv = 1.0 / (2.0 * beta * beta)
            shift = Polynomial((q * inv, -inv))
            for j in range(9):
                lhs = e_poly(j + 1, params)
                rhs = e_poly(j, params).derivative() + shift * e_poly(j, params)
                assert lhs.degree == rhs.degree
                for a, b in zip(lhs.coeffs, rhs.coeffs):
                    err = abs(a - b) / max(abs(a), abs(b), 1e-300)
                    worst = max(worst, err)
                    assert err <= 1e-12
    print(f"\ncriterion 5 (derivative recursion of the E-polynomials, "
          f"coefficient-wise <= 1e-12): PASS  worst={worst:.3e}")


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
def test_criterion_6_gaussian_moments_match_quadrature():
    worst = 0.0
    for s in range(9):
        for beta in GRID_BETAS:
            for q in (0.0, 1.0, 3.0):
                params = EvalParams(0, 0, beta, q)
                lo = -(q + 1.0) / (2.0 * beta)
                up = (1.0 - q) / (2.0 * beta)
                for power, got in ((2 * s, gaussian_moment_even(s, params)),
                                   (2 * s + 1, gaussian_moment_odd(s, params))):
                    ref, err = integrate.quad(
                        lambda u, pw=power: u ** pw * math.exp(-u * u),
                        lo, up, epsabs=1e-13, epsrel=1e-14, limit=200,
                    )
                    assert err < 1e-13 * (1.0 + abs(ref))
                    d = abs(got - ref) / (1.0 + max(abs(got), abs(ref)))
                    worst = max(worst, d)
                    assert d <= 1e-12, (s, beta, q, power)
    print(f"\ncriterion 6 (interval Gaussian moments vs quadrature <= 1e-12, "
          f"s <= 8): PASS  worst={worst:.3e}")


def test_criterion_7_phase_purity_and_conjugate_symmetry(grid_reports):
    reports, _ = grid_reports
    worst = 0.0
    for (m, n, beta, q), rep in reports.items():
        v = rep.closed
        off = v.imag if (m + n + 1) % 2 == 0 else v.real
        assert abs(off) <= 1e-12
        mirror = eval_closed(EvalParams(m, n, beta, -q))
        d = abs(v - mirror.conjugate())
        worst = max(worst, abs(off), d)
        assert d <= 1e-12
    print(f"\ncriterion 7 (pure phase and conjugate symmetry under q -> -q, "
          f"<= 1e-12): PASS  worst={worst:.3e}")


def test_criterion_8_cli_verify_and_determinism():
    verify = subprocess.run(
        [sys.executable, "-m", "besselgauss", "verify"],
        capture_output=True, text=True, timeout=300,
    )
    assert verify.returncode == 0, verify.stdout[-2000:]
    summary = [l for l in verify.stdout.splitlines() if l.startswith("points=")]
    assert summary and " failed=0 errors=0" in summary[0]
    table_args = [sys.executable, "-m", "besselgauss", "table", "--method", "all",
                  "--m", "0..4", "--n", "0..4", "--beta", "0.5,2", "--q", "0,3"]
    first = subprocess.run(table_args, capture_output=True, timeout=300)
    second = subprocess.run(table_args, capture_output=True, timeout=300)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    print(f"\ncriterion 8 (CLI verify exits 0 on the default grid; table output "
          f"is byte-deterministic): PASS  {summary[0]}")
