"""
The large-action insertion and its eps -> 0 support
===================================================
"""

from superspace_lab.grassmann import GeneratorSet
from superspace_lab.lattice import BigActionInput, compute_B
from superspace_lab.models import free_particle
from superspace_lab.reduction import (
    equivalence_check,
    large_action_argument,
    large_action_finite_eps,
    large_action_insert,
    large_action_insertion,
    super_action,
    support_analysis,
)

g = GeneratorSet(["theta", "thetabar"])
print("argument :", large_action_argument(g))
print("insertion:", large_action_insertion(g))
s = support_analysis(large_action_insertion(g))
print("support  :", s)

model = free_particle()
sa = super_action(model.lagrangian, model.phase_space)
la = large_action_insert(sa)
for step in la.steps:
    print("  ", step)
print("exponent:", la.exponent)

# at finite eps the density still carries the delta tokens
print("\nfinite eps:\n" + large_action_finite_eps(sa).to_text())

print()
print(equivalence_check(sa).to_text())

# B for a user-supplied mass and time; nothing cosmological is assumed here
for mass, age in [(1, 1), ("1e3", "3.15e7")]:
    b = compute_B(BigActionInput(mass, age))
    print(f"M = {mass} kg, T = {age} s: B = {b.B_float:.6e} J s, B/hbar = {b.ratio_float:.6e}")
