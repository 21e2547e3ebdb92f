import dataclasses

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from quatqm.scattering import (DegenerateAmplitudeError, EvanescentError, ScatteringError, StepProblem,
                               UndefinedRatioError, check_continuity, energy_relations, flux_balance,
                               region_residuals, solve_step, sweep, write_sweep_csv)

X, Y, Z = np.eye(3)


def quaternionic(V0=0.0, theta=0.6, **kw):
    return StepProblem.build(1.0, 1.2 * Z, 0.6 * Z, V0=V0, theta=theta, **kw)


def complex_limit(V0=0.0, **kw):
    return StepProblem.build(1.0, 1.2 * Z, np.zeros(3), V0=V0, theta=0.0, **kw)


def test_transparent_step():
    sol = solve_step(quaternionic(0.0))
    assert sol.p_over_k_sq == 1.0
    assert sol.R2 == 0.0 and sol.T2 == pytest.approx(1.0)


def test_half_height_step():
    prob = quaternionic()
    sol = solve_step(prob.with_ratio(0.5))
    assert sol.p_over_k_sq == pytest.approx(0.5, abs=1e-15)


def test_unit_momenta_example():
    sol = solve_step(quaternionic().with_ratio(0.5))
    s = 1 / np.sqrt(2)
    assert sol.T2 == pytest.approx(4 / (1 + s) ** 2, rel=1e-14)
    assert sol.R2 == pytest.approx((1 - s) ** 2 / (1 + s) ** 2, rel=1e-12)


def test_errors():
    with pytest.raises(UndefinedRatioError):
        solve_step(StepProblem.build(1.0, Z, Z, theta=0.3))
    with pytest.raises(EvanescentError):
        solve_step(quaternionic().with_ratio(1.5))
    with pytest.raises(DegenerateAmplitudeError):
        solve_step(quaternionic(rho_p0=0.0))
    with pytest.raises(ScatteringError, match="along \\+x"):
        dataclasses.replace(quaternionic(), k_vec=Y)
    with pytest.raises(ScatteringError, match="E_q"):
        dataclasses.replace(quaternionic(), E_q=1.0)
    with pytest.raises(ScatteringError, match="non-negative"):
        quaternionic(V0=-1)


def test_continuity_is_exact():
    prob = quaternionic(rho_q0=1.3, rho_p0=0.7)
    for r in (0, 0.25, 0.5, 0.75):
        p = prob.with_ratio(r)
        assert check_continuity(solve_step(p), p).max < 1e-10


def test_continuity_sees_a_perturbed_T():
    prob = quaternionic().with_ratio(0.5)
    sol = solve_step(prob)
    bad = dataclasses.replace(sol, T=sol.T * (1 + 1e-3))
    assert check_continuity(bad, prob).max >= 1e-4


def test_complex_limit_matches_textbook():
    prob = complex_limit().with_ratio(0.5)
    sol = solve_step(prob)
    k, p = 1.0, np.sqrt(0.5)
    assert sol.R == pytest.approx((k - p) / (k + p))
    assert sol.T == pytest.approx(2 * k / (k + p))
    assert np.all(sol.transmitted(np.array([[0.3, 0.1, 0.2]])).zeta == 0)
    fl = flux_balance(sol, prob)
    assert abs(fl.defect) < 1e-10
    assert sol.R2 + p / k * sol.T2 == pytest.approx(1.0, abs=1e-12)


def test_free_step_flux_balances():
    prob = quaternionic()
    assert abs(flux_balance(solve_step(prob), prob).defect) < 1e-10


def test_energy_relations():
    prob = quaternionic().with_ratio(0.25)
    rel = energy_relations(solve_step(prob), prob)
    assert rel["k"]["transverse_energy"] == pytest.approx(prob.E_q)
    assert rel["q"]["transverse_energy"] == pytest.approx(prob.E_q)
    assert rel["p"]["transverse_energy"] == pytest.approx(prob.E_q - prob.V0)
    for wave in rel.values():
        assert abs(wave["alpha_excess"]) < 1e-12


def test_ratio_table():
    sol = solve_step(quaternionic(A_k=0.7, B_k=0.3).with_ratio(0.75))
    t = sol.ratio_table
    assert t["p/k"] == pytest.approx(0.5)
    for key in ("gamma_q/gamma_k", "omega_q/omega_k", "grad_rho_q/grad_rho_k"):
        assert t[key] == pytest.approx(1.0)
    for key in ("gamma_p/gamma_k", "omega_p/omega_k", "grad_rho_p/grad_rho_k"):
        assert t[key] == pytest.approx(0.5)
    assert t["alpha_p^2/alpha_k^2"] == pytest.approx(0.25)
    # equal amplitudes leave grad rho(0) = 0 and the ratio undefined
    assert np.isnan(solve_step(quaternionic()).ratio_table["grad_rho_q/grad_rho_k"])


def test_region_residuals():
    prob = quaternionic(theta=0.6).with_ratio(0.5)
    rI, rII = region_residuals(solve_step(prob), prob)
    assert rI < 1e-6
    # the potential and kappa disagree in the j slot of region II
    assert rII > 1e-2
    cl = complex_limit().with_ratio(0.5)
    _, rII = region_residuals(solve_step(cl), cl)
    assert rII < 1e-6


def test_sweep_table(tmp_path):
    rows = sweep(quaternionic(), [0, 0.25, 0.5, 0.75])
    assert [r["|p|^2/|k|^2"] for r in rows] == pytest.approx([1, 0.75, 0.5, 0.25], abs=1e-12)
    path = tmp_path / "s.csv"
    write_sweep_csv(rows, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "V0/E_q,|p|^2/|k|^2,|R|^2,|T|^2,flux_defect"
    assert len(lines) == 5


ratios = st.floats(0, 0.99)
thetas = st.floats(-1.5, 1.5)


@given(ratios, thetas, st.floats(0.2, 3), st.floats(0.5, 2), st.floats(0.5, 2))
def test_matching_holds_everywhere(r, th, k, rq, rp):
    prob = StepProblem.build(k, 1.2 * Z, 0.6 * Z, theta=th, rho_q0=rq, rho_p0=rp).with_ratio(r)
    assert check_continuity(solve_step(prob), prob).max < 1e-10 * max(1.0, k * k)


@given(st.lists(ratios, min_size=2, max_size=6, unique=True))
def test_reflection_grows_with_step_height(rs):
    rs = sorted(rs)
    rows = sweep(complex_limit(), rs)
    R2 = [r["|R|^2"] for r in rows]
    T2 = [r["|T|^2"] for r in rows]
    assert all(a <= b + 1e-15 for a, b in zip(R2, R2[1:]))
    assert all(a <= b + 1e-12 for a, b in zip(T2, T2[1:]))
    pk = [r["|p|^2/|k|^2"] for r in rows]
    assert all(abs(p - (1 - r)) < 1e-12 for p, r in zip(pk, rs))


@given(ratios)
def test_complex_limit_flux_conserved(r):
    prob = complex_limit().with_ratio(r)
    assert abs(flux_balance(solve_step(prob), prob).defect) < 1e-10
