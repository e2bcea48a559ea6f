"""
Lattice path integral against closed forms
==========================================

Finite-N kernels for the free particle and the oscillator, the dt^2
convergence, and the classical discrete flow.
"""

import numpy as np

from superspace_lab import lattice as lat

cfg = lat.LatticeConfig(steps=64, t_total=1.0)

rows = lat.kernel_rows(cfg, steps=(2, 4, 8, 16, 32, 64))
print(lat.rows_to_csv(rows))

fit = lat.convergence_slope(cfg)
print("oscillator error vs dt, slope %.4f" % fit.slope)
for n, e in zip(fit.steps, fit.errors):
    print(f"  N={n:4d}  |K_N - K| = {e:.3e}")

# beyond the first caustic the Maslov phase matters
late = lat.LatticeConfig(t_total=5.0)
print("slope past a caustic: %.4f" % lat.convergence_slope(late).slope)

# a Gaussian packet stays normalized under every link
packets = lat.evolve_packet(lat.GaussianPacket.normalized(0.5, 0.2, 1.0), cfg.with_steps(200))
print("max norm drift:", max(abs(p.norm() - 1) for p in packets))

cl = lat.classical_slope(cfg)
print("\nforward Euler error slope: %.4f" % cl.slope)

long = lat.LatticeConfig(steps=20_000, t_total=200.0, p_i=0.5)
e0 = lat.energy(long, lat.HARMONIC, long.x_i, long.p_i)
for scheme in (lat.FORWARD, lat.SYMPLECTIC):
    q, p = lat.classical_discrete_evolve(long, lat.HARMONIC, scheme)
    drift = np.max(np.abs(lat.energy(long, lat.HARMONIC, q, p) - e0)) / e0
    print(f"{scheme:>10}: relative energy drift {drift:.3e}")
