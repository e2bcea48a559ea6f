"""The two Gaussian test systems in one degree of freedom."""

from __future__ import annotations

from dataclasses import dataclass

from .scalar import ScalarExpr, const, symbol
from .superspace import PhaseSpace, phase_space_lagrangian


@dataclass(frozen=True)
class Model:
    name: str
    phase_space: PhaseSpace
    hamiltonian: ScalarExpr
    lagrangian: ScalarExpr


def _model(name: str, H: ScalarExpr) -> Model:
    ps = PhaseSpace.canonical(["q"], ["p"])
    return Model(name, ps, H, phase_space_lagrangian(ps, H))


def free_particle() -> Model:
    p, m = symbol("p", 0, True), symbol("m")
    return _model("free particle", p**2 / (2 * m))


def harmonic_oscillator() -> Model:
    q, p = symbol("q", 0, True), symbol("p", 0, True)
    m, w = symbol("m"), symbol("omega0")
    return _model("harmonic oscillator", p**2 / (2 * m) + m * w**2 * q**2 / 2)


def free_flow() -> Model:
    return _model("free symplectic flow", const(0))


STANDARD = (free_particle, harmonic_oscillator)
