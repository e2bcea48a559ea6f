"""
From a phase-space Lagrangian to its superspace reduction
=========================================================

Builds the superfields of a one-dimensional oscillator, expands L(Phi),
integrates out the Grassmann partners and checks what survives.
"""

from superspace_lab.grassmann import berezin_integrate
from superspace_lab.models import harmonic_oscillator
from superspace_lab.reduction import (
    MEASURE,
    cpi_component_lagrangian,
    expected_component_lagrangian,
    is_total_derivative,
    quantization,
    super_action,
)
from superspace_lab.superspace import superfields

model = harmonic_oscillator()
ps = model.phase_space
print("L =", model.lagrangian)

# superfields: body, ghost, antighost and multiplier pieces
for f in superfields(ps):
    print(f"Phi^{f.index + 1} =", f.element)

sa = super_action(model.lagrangian, ps)
print("\nL(Phi) has", len(list(sa.integrand.terms())), "monomials")
print("top component:", berezin_integrate(sa.integrand, list(MEASURE)))

# the classical density, compared with the textbook form up to d/dt(...)
cpi = cpi_component_lagrangian(sa)
expected = expected_component_lagrangian(ps, model.hamiltonian)
print("\nL~ =", cpi)
print("differs from the textbook form by a total derivative:", is_total_derivative(cpi - expected, ps))

q = quantization(sa)
print("\npairing:", q.pairing.describe())
print("exponent:", q.as_integral())
print("ghost-free:", "yes" if q.ghost_free else "no")
for pairing, value in q.candidates:
    print(f"  rejected {pairing.describe()}: {value}")
