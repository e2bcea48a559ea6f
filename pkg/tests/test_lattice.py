import cmath
import math
from dataclasses import replace
from decimal import Decimal, getcontext
from fractions import Fraction

import numpy as np
import pytest

from superspace_lab import lattice as lat
from superspace_lab.errors import ConstructionError, LatticeSingularityError


def kernel_by_determinant(cfg, w):
    """Oracle: the (N-1)-fold Gaussian integral via the full quadratic form.

    The action is ``x^T M x / 2 + J^T x + S0`` over the interior points; the
    integral is ``prod sqrt(2 pi i hbar / mu)`` over the eigenvalues ``mu`` of
    ``M`` times ``exp(i S_stationary / hbar)``.
    """
    m, hb, eps, N = cfg.m, cfg.hbar, cfg.dt, cfg.steps
    xi, xf = cfg.x_i, cfg.x_f
    pot = lambda x: 0.5 * m * w * w * x * x  # noqa: E731
    pre = (m / (2j * math.pi * hb * eps)) ** (N / 2)
    s0 = m * (xi * xi + xf * xf) / (2 * eps) - eps * (pot(xi) + pot(xf)) / 2
    if N == 1:
        return pre * cmath.exp(1j * (m * (xf - xi) ** 2 / (2 * eps) - eps * (pot(xi) + pot(xf)) / 2) / hb)
    n = N - 1
    M = np.zeros((n, n))
    for k in range(n):
        M[k, k] = 2 * m / eps - eps * m * w * w
        if k + 1 < n:
            M[k, k + 1] = M[k + 1, k] = -m / eps
    J = np.zeros(n)
    J[0] -= m * xi / eps
    J[-1] -= m * xf / eps
    x_star = np.linalg.solve(M, -J)
    s_star = 0.5 * x_star @ M @ x_star + J @ x_star + s0
    gauss = 1.0 + 0j
    for mu in np.linalg.eigvalsh(M):
        gauss *= cmath.sqrt(2 * math.pi * hb / abs(mu)) * cmath.exp(1j * math.pi / 4 * np.sign(mu))
    return pre * gauss * cmath.exp(1j * s_star / hb)


@pytest.mark.parametrize("N", [1, 2, 3, 4, 8, 17, 64])
@pytest.mark.parametrize("system", lat.SYSTEMS)
def test_recursion_matches_determinant_oracle(N, system):
    cfg = lat.LatticeConfig(steps=N, t_total=1.3, m=0.7, omega0=1.9, hbar=0.9, x_i=-0.2, x_f=0.5)
    w = cfg.omega0 if system == lat.HARMONIC else 0.0
    got = lat.qm_lattice_kernel(cfg, system)
    want = kernel_by_determinant(cfg, w)
    assert abs(got - want) <= 1e-10 * abs(want)


def test_recursion_past_a_caustic_matches_oracle():
    cfg = lat.LatticeConfig(steps=200, t_total=5.0)
    assert abs(lat.qm_lattice_kernel(cfg) - kernel_by_determinant(cfg, 1.0)) < 1e-9


@pytest.mark.parametrize("N", [2, 4, 8, 32])
def test_free_kernel_exact_for_every_N(N):
    cfg = lat.LatticeConfig(steps=N, m=2.0, hbar=0.5, t_total=0.8, x_i=-1.0, x_f=0.4)
    got, want = lat.qm_lattice_kernel(cfg, lat.FREE), lat.free_kernel_exact(cfg)
    assert abs(got / want - 1) < 1e-12


def test_zero_frequency_oscillator_is_free():
    cfg = lat.LatticeConfig(steps=16, omega0=0.0)
    assert lat.qm_lattice_kernel(cfg, lat.HARMONIC) == lat.qm_lattice_kernel(cfg, lat.FREE)
    assert lat.mehler_kernel(cfg) == lat.free_kernel_exact(cfg)


def _schrodinger_residual(kernel, cfg, w, h=1e-4):
    """``i hbar dK/dt + hbar^2/2m d2K/dx2 - V K`` at the endpoint, by central differences."""
    k = kernel(cfg)
    dt = (kernel(replace(cfg, t_total=cfg.t_total + h)) - kernel(replace(cfg, t_total=cfg.t_total - h))) / (2 * h)
    d2 = (kernel(replace(cfg, x_f=cfg.x_f + h)) - 2 * k + kernel(replace(cfg, x_f=cfg.x_f - h))) / h**2
    res = 1j * cfg.hbar * dt + cfg.hbar**2 / (2 * cfg.m) * d2 - 0.5 * cfg.m * w * w * cfg.x_f**2 * k
    return abs(res) / abs(k)


@pytest.mark.parametrize("t", [0.4, 1.0, 2.5, 4.0, 7.0])
def test_mehler_solves_schrodinger_equation(t):
    cfg = lat.LatticeConfig(t_total=t, m=1.3, omega0=1.1, hbar=0.8)
    assert _schrodinger_residual(lat.mehler_kernel, cfg, cfg.omega0) < 1e-5


def test_free_kernel_solves_schrodinger_equation():
    cfg = lat.LatticeConfig(t_total=0.6, m=1.3, hbar=0.8)
    assert _schrodinger_residual(lat.free_kernel_exact, cfg, 0.0) < 1e-5


def test_mehler_on_caustic():
    with pytest.raises(LatticeSingularityError):
        lat.mehler_kernel(lat.LatticeConfig(t_total=math.pi))


def test_lattice_caustic_detected():
    # dt = sqrt(2) at unit frequency makes the first Gaussian step degenerate
    cfg = lat.LatticeConfig(steps=2, t_total=2 * math.sqrt(2.0))
    with pytest.raises(LatticeSingularityError):
        lat.qm_lattice_kernel(cfg)


def test_convergence_slope():
    fit = lat.convergence_slope(lat.LatticeConfig())
    assert abs(fit.slope - 2.0) < 0.2
    assert list(fit.errors) == sorted(fit.errors, reverse=True)


def test_convergence_slope_past_caustic():
    assert abs(lat.convergence_slope(lat.LatticeConfig(t_total=5.0)).slope - 2.0) < 0.2


# -- wavepackets ----------------------------------------------------------


def _quad_norm(psi, lo=-40.0, hi=40.0, n=400_001):
    x = np.linspace(lo, hi, n)
    return float(np.trapezoid(np.abs(psi(x)) ** 2, x))


def test_packet_norm_closed_form_against_quadrature():
    psi = lat.GaussianPacket(0.3 + 0.4j, 0.5 - 0.7j, 0.1 + 0.2j)
    assert psi.norm() == pytest.approx(_quad_norm(psi), rel=1e-10)
    unit = lat.GaussianPacket.normalized(0.8, center=1.0, momentum=2.0)
    assert unit.norm() == pytest.approx(1.0, abs=1e-14)
    assert _quad_norm(unit) == pytest.approx(1.0, rel=1e-10)


def test_packet_must_be_normalizable():
    with pytest.raises(ConstructionError):
        lat.GaussianPacket(-1.0, 0, 0).norm()


def test_lattice_step_against_numeric_convolution():
    # one link applied by brute-force quadrature of K_eps(x', x) psi(x)
    cfg = lat.LatticeConfig(steps=4, t_total=0.4, m=1.0, omega0=1.5, hbar=1.0)
    psi = lat.GaussianPacket.normalized(0.7, center=0.3, momentum=1.0)
    nxt = lat.lattice_step(psi, cfg, lat.HARMONIC)
    eps, m, hb, w = cfg.dt, cfg.m, cfg.hbar, cfg.omega0
    x = np.linspace(-12, 12, 800_001)
    for xp in (-0.5, 0.2, 1.1):
        link = np.sqrt(m / (2j * np.pi * hb * eps)) * np.exp(
            1j * (m * (xp - x) ** 2 / (2 * eps) - eps * 0.25 * m * w * w * (xp * xp + x * x)) / hb
        )
        val = np.trapezoid(link * psi(x), x)
        assert abs(val - nxt(xp)) < 1e-6


@pytest.mark.parametrize("system", lat.SYSTEMS)
def test_unitarity_of_packet_evolution(system):
    cfg = lat.LatticeConfig(steps=200, t_total=3.0)
    packets = lat.evolve_packet(lat.GaussianPacket.normalized(0.5, 0.2, 1.0), cfg, system)
    assert max(abs(p.norm() - 1) for p in packets) < 1e-12
    assert _quad_norm(packets[-1]) == pytest.approx(1.0, rel=1e-8)


def test_free_packet_spreads_as_expected():
    # width^2(t) = s^2 + (hbar t / 2 m s)^2
    s, t = 0.5, 2.0
    cfg = lat.LatticeConfig(steps=10, t_total=t, omega0=0.0)
    last = lat.evolve_packet(lat.GaussianPacket.normalized(s), cfg, lat.FREE)[-1]
    x = np.linspace(-30, 30, 200_001)
    dens = np.abs(last(x)) ** 2
    var = float(np.trapezoid(x * x * dens, x) / np.trapezoid(dens, x))
    assert var == pytest.approx(s * s + (t / (2 * s)) ** 2, rel=1e-9)


# -- classical ------------------------------------------------------------


def test_classical_first_order():
    fit = lat.classical_slope(lat.LatticeConfig())
    assert abs(fit.slope - 1.0) < 0.2


def test_classical_free_flow_is_exact():
    cfg = lat.LatticeConfig(steps=10, p_i=0.4)
    q, p = lat.classical_discrete_evolve(cfg, lat.FREE)
    qe, pe = lat.classical_exact(cfg, lat.FREE, np.arange(11) * cfg.dt)
    assert np.allclose(q, qe, atol=1e-15) and np.allclose(p, pe)


def test_symplectic_energy_stays_bounded():
    cfg = lat.LatticeConfig(steps=20_000, t_total=200.0, p_i=0.5)
    e0 = lat.energy(cfg, lat.HARMONIC, cfg.x_i, cfg.p_i)
    q, p = lat.classical_discrete_evolve(cfg, lat.HARMONIC, lat.SYMPLECTIC)
    qf, pf = lat.classical_discrete_evolve(cfg, lat.HARMONIC, lat.FORWARD)
    drift_s = np.max(np.abs(lat.energy(cfg, lat.HARMONIC, q, p) - e0))
    drift_f = np.max(np.abs(lat.energy(cfg, lat.HARMONIC, qf, pf) - e0))
    assert drift_s < 0.01 * e0
    assert drift_f > 1.0 * e0  # forward Euler gains energy by (1 + w^2 dt^2)^N


def test_unknown_scheme_and_system():
    with pytest.raises(ConstructionError):
        lat.classical_discrete_evolve(lat.LatticeConfig(), scheme="rk4")
    with pytest.raises(ConstructionError):
        lat.qm_lattice_kernel(lat.LatticeConfig(), "anharmonic")


@pytest.mark.parametrize(
    "kwargs", [{"steps": 0}, {"steps": 2.5}, {"t_total": 0}, {"m": -1}, {"hbar": 0}]
)
def test_config_validation(kwargs):
    with pytest.raises(ConstructionError):
        lat.LatticeConfig(**kwargs)


# -- B = M c^2 T ----------------------------------------------------------


def test_compute_B_unit_inputs():
    b = lat.compute_B(lat.BigActionInput(1, 1))
    assert b.B == 299_792_458**2 == 89_875_517_873_681_764
    assert b.B.denominator == 1


@pytest.mark.parametrize("mass,age", [(1, 1), ("1e53", "4.35e17"), ("2.5", "0.001"), (7, "3.1e7")])
def test_ratio_against_decimal(mass, age):
    getcontext().prec = 50
    want = Decimal(str(mass)) * Decimal(299792458) ** 2 * Decimal(str(age)) / Decimal("1.054571817e-34")
    got = lat.compute_B(lat.BigActionInput(Fraction(str(mass)), Fraction(str(age)))).ratio
    assert abs(Decimal(got.numerator) / Decimal(got.denominator) / want - 1) < Decimal("1e-30")


def test_compute_B_is_bilinear():
    a = lat.compute_B(lat.BigActionInput(3, 5)).B
    assert lat.compute_B(lat.BigActionInput(6, 5)).B == 2 * a
    assert lat.compute_B(lat.BigActionInput(3, 15)).B == 3 * a
    assert lat.compute_B(lat.BigActionInput(0, 5)).B == 0


def test_float_inputs_are_read_exactly_as_written():
    assert lat.BigActionInput(0.1, 1).mass_kg == Fraction(1, 10)
    with pytest.raises(ConstructionError):
        lat.BigActionInput(-1, 1)


def test_rows_round_trip():
    rows = lat.kernel_rows(lat.LatticeConfig(), steps=(2, 4))
    csv_text = lat.rows_to_csv(rows)
    assert csv_text.splitlines()[0] == "system,N,value,reference,abs_error"
    assert len(csv_text.splitlines()) == 5
    import json

    data = json.loads(lat.rows_to_json(rows))
    assert [d["N"] for d in data] == [2, 4, 2, 4]
    free = [r for r in rows if r.system == lat.FREE]
    assert all(r.abs_error < 1e-12 for r in free)
