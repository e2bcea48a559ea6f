import pytest

from superspace_lab.dimensions import ACTION, default_assignment
from superspace_lab.errors import DimensionError, NoRootError, UnboundSymbolError
from superspace_lab.grassmann import GeneratorSet, GrassmannElement, invert_even
from superspace_lab.grassmann import time_derivative as gdt
from superspace_lab.models import free_flow, free_particle, harmonic_oscillator
from superspace_lab.reduction import (
    BIG_B,
    EPS,
    HBAR,
    PAIRINGS,
    cpi_component_lagrangian,
    equivalence_check,
    euler_lagrange,
    expected_component_lagrangian,
    is_total_derivative,
    large_action_finite_eps,
    large_action_insert,
    quantization,
    quantize,
    select_pairing,
    super_action,
    support_analysis,
)
from superspace_lab.report import DEGENERATE, MATCH
from superspace_lab.scalar import DELTA, I, ONE, ZERO, apply, delta, symbol, substitute
from superspace_lab.grassmann import expand_even_function
from superspace_lab.superspace import PhaseSpace, phase_space_lagrangian

q, p = symbol("q", 0, True), symbol("p", 0, True)
qdot, pdot = symbol("q", 1, True), symbol("p", 1, True)
m, w, k = symbol("m"), symbol("omega0"), symbol("k")


def sa_of(model):
    return super_action(model.lagrangian, model.phase_space)


def boundary_term(ps):
    """``-1/2 d/dt(phi^a lam_a) - i/2 d/dt(cbar_a c^a)`` for a canonical phase space."""
    gens = ps.generators
    out = GrassmannElement(gens)
    for a in range(ps.dim):
        out = out + GrassmannElement.scalar(gens, ps.phi(a + 1) * ps.lam(a + 1) * (-ONE / 2))
        out = out + GrassmannElement.monomial(gens, [ps.cbar(a + 1), ps.c(a + 1)], -I / 2)
    return gdt(out)


@pytest.mark.parametrize("model", [free_flow, free_particle, harmonic_oscillator])
def test_cpi_lagrangian_up_to_exact_boundary_term(model):
    mod = model()
    ps = mod.phase_space
    cpi = cpi_component_lagrangian(sa_of(mod))
    expected = expected_component_lagrangian(ps, mod.hamiltonian)
    assert cpi == expected + boundary_term(ps)
    assert is_total_derivative(cpi - expected, ps)


def test_free_flow_lagrangian():
    ps = PhaseSpace.canonical(["q"], ["p"])
    gens = ps.generators
    expected = GrassmannElement.scalar(gens, ps.lam("q") * qdot + ps.lam("p") * pdot)
    expected = expected + GrassmannElement.monomial(gens, ["cbar_q", "cdot_q"], I)
    expected = expected + GrassmannElement.monomial(gens, ["cbar_p", "cdot_p"], I)
    assert expected_component_lagrangian(ps, ZERO) == expected


def test_oscillator_lambda_sector():
    mod = harmonic_oscillator()
    ps = mod.phase_space
    expected = expected_component_lagrangian(ps, mod.hamiltonian)
    lam_q, lam_p = ps.lam("q"), ps.lam("p")
    assert expected.body == lam_q * (qdot - p / m) + lam_p * (pdot + m * w**2 * q)


def test_constant_lagrangian_has_no_component_lagrangian():
    ps = PhaseSpace.canonical(["q"], ["p"])
    assert cpi_component_lagrangian(super_action(k, ps)).is_zero


def test_euler_lagrange_of_cpi_gives_hamilton_equations():
    mod = harmonic_oscillator()
    eqs = euler_lagrange(cpi_component_lagrangian(sa_of(mod)), mod.phase_space)
    assert eqs["lam_q"] == qdot - p / m
    assert eqs["lam_p"] == pdot + m * w**2 * q


def test_not_a_total_derivative():
    ps = PhaseSpace.canonical(["q"], ["p"])
    assert not is_total_derivative(GrassmannElement.scalar(ps.generators, q * pdot), ps)
    assert is_total_derivative(GrassmannElement.scalar(ps.generators, q * qdot), ps)


def test_super_action_rejects_foreign_symbols():
    ps = PhaseSpace.canonical(["q"], ["p"])
    with pytest.raises(UnboundSymbolError):
        super_action(symbol("x", 0, True), ps)
    with pytest.raises(UnboundSymbolError):
        super_action(symbol("q", 2, True), ps)


def test_body_of_integrand_is_lagrangian():
    for model in (free_particle, harmonic_oscillator):
        sa = sa_of(model())
        assert sa.integrand.body == sa.lagrangian


# -- quantization ---------------------------------------------------------


def test_selected_pairing():
    pairing = select_pairing()
    assert pairing.order == ("thetabar", "theta")
    assert not pairing.keep_inner_i


def test_pairing_is_unique_on_probe():
    ps = PhaseSpace.canonical(["q"], ["p"])
    probe = super_action(k, ps)
    from superspace_lab.reduction import _reduce_with

    results = {pp: _reduce_with(probe.integrand, pp, HBAR) for pp in PAIRINGS}
    assert sum(r == I * k / HBAR for r in results.values()) == 1
    # keeping the inner i can only ever give a real exponent
    for pp, r in results.items():
        if pp.keep_inner_i:
            assert r.body in (k / HBAR, -k / HBAR)


@pytest.mark.parametrize(
    "L",
    [
        p * qdot - p**2 / (2 * m),
        k,
        p * qdot - p**2 / (2 * m) - m * w**2 * q**2 / 2,
        (p * qdot - q * pdot) / 2 - apply("H", (q, p)),
        p * qdot - q**3 * p**2 + k * q,
    ],
)
def test_quantize_gives_i_over_hbar_L(L):
    ps = PhaseSpace.canonical(["q"], ["p"])
    result = quantization(super_action(L, ps))
    assert result.exponent == I * L / HBAR
    assert result.ghost_free
    assert not any(s.name.startswith("lam_") for s in result.exponent.symbols())
    assert len(result.candidates) == 3


def test_quantize_two_degrees_of_freedom():
    ps = PhaseSpace.canonical(["x", "y"], ["px", "py"])
    H = (symbol("px", 0, True) ** 2 + symbol("py", 0, True) ** 2) / 2 + symbol("x", 0, True) * symbol("y", 0, True)
    L = phase_space_lagrangian(ps, H)
    assert quantize(super_action(L, ps)) == I * L / HBAR


def test_theta_thetabar_versus_delta_product_global_sign():
    from superspace_lab.reduction import Pairing, _reduce_with

    sa = sa_of(harmonic_oscillator())
    tt = _reduce_with(sa.integrand, Pairing(("theta", "thetabar"), False), HBAR)
    dd = _reduce_with(sa.integrand, Pairing(("thetabar", "theta"), False), HBAR)
    assert tt == -dd


# -- large action ---------------------------------------------------------


def test_support_of_insertion():
    gens = GeneratorSet(["theta", "thetabar"])
    tt = GrassmannElement.monomial(gens, ["theta", "thetabar"])
    arg = invert_even(tt + EPS)
    for g in (arg, expand_even_function(DELTA, arg)):
        s = support_analysis(g)
        assert s.root == EPS and s.limit == ZERO
        assert s.beta == -1 / EPS**2


def test_support_trivial_cases():
    gens = GeneratorSet(["theta", "thetabar"])
    tt = GrassmannElement.monomial(gens, ["theta", "thetabar"])
    a = symbol("a")
    assert support_analysis(expand_even_function(DELTA, tt - a)).root == a
    assert support_analysis(expand_even_function(DELTA, tt)).root == ZERO


def test_support_errors():
    gens = GeneratorSet(["theta", "thetabar", "c"])
    with pytest.raises(NoRootError):
        support_analysis(GrassmannElement.scalar(gens, EPS))
    with pytest.raises(NoRootError):
        support_analysis(GrassmannElement.monomial(gens, ["theta", "c"]) + 1)


def test_support_without_limit():
    gens = GeneratorSet(["theta", "thetabar"])
    tt = GrassmannElement.monomial(gens, ["theta", "thetabar"])
    s = support_analysis(tt * EPS - 1)
    assert s.root == 1 / EPS and s.limit is None


@pytest.mark.parametrize("model", [free_particle, harmonic_oscillator])
def test_large_action_insert(model):
    sa = sa_of(model())
    insertion, exponent = large_action_insert(sa, BIG_B)
    tt = GrassmannElement.monomial(sa.gens, ["theta", "thetabar"])
    assert insertion == GrassmannElement.scalar(sa.gens, delta(1 / EPS)) - tt * delta(1 / EPS, 1) / EPS**2
    assert exponent == I * sa.lagrangian / BIG_B
    assert substitute(exponent, {BIG_B: HBAR}) == quantize(sa)
    la = large_action_insert(sa, BIG_B)
    assert la.dropped_factor == EPS**2


def test_large_action_divisor_checks():
    sa = sa_of(harmonic_oscillator())
    with pytest.raises(DimensionError):
        large_action_insert(sa, m)
    with pytest.raises(DimensionError):
        large_action_insert(sa, ZERO)
    assert large_action_insert(sa, HBAR).exponent == quantize(sa)
    custom = default_assignment().with_entries({"S": ACTION})
    assert large_action_insert(sa, 2 * symbol("S"), custom).exponent == I * sa.lagrangian / (2 * symbol("S"))


def test_finite_eps_density_keeps_delta_tokens():
    sa = sa_of(harmonic_oscillator())
    dens = large_action_finite_eps(sa)
    # the theta thetabar slope carries delta'(1/eps)/eps^2 times i L / B
    assert dens.body == delta(1 / EPS) * cpi_component_lagrangian(sa).body / BIG_B + (
        I * sa.lagrangian * delta(1 / EPS, 1) / (BIG_B * EPS**2)
    )


@pytest.mark.parametrize("model", [free_particle, harmonic_oscillator])
def test_equivalence_check(model):
    report = equivalence_check(sa_of(model()))
    assert [v.status for v in report.verdicts] == [MATCH, MATCH, MATCH]
    assert report.large_action_exponent == substitute(report.quantized_exponent, {HBAR: BIG_B})
    assert "modulo" in report.to_text()
    assert report.to_dict()["verdicts"][0]["status"] == MATCH


def test_equivalence_check_default_and_degenerate():
    assert all(v.passed for v in equivalence_check().verdicts)
    ps = PhaseSpace.canonical(["q"], ["p"])
    report = equivalence_check(super_action(ZERO, ps))
    assert report.quantized_exponent.is_zero and report.large_action_exponent.is_zero
    assert report.verdicts[-1].status == DEGENERATE
