"""Numeric checks on a time lattice for the two Gaussian systems.

The quantum side evaluates the N-step configuration-space path integral

    K_N = prod_links sqrt(m / (2 pi i hbar eps)) * int dx_1..dx_{N-1} exp(i S_N / hbar)

with ``S_N = sum_k [m (x_{k+1} - x_k)^2 / (2 eps) - eps (V(x_k) + V(x_{k+1})) / 2]``
by integrating one intermediate point at a time.  Everything stays a
quadratic form, so no sampling is involved.  The classical side iterates the
discrete Hamilton equations.
"""

from __future__ import annotations

import cmath
import csv
import io
import json
import math
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import ConstructionError, LatticeSingularityError

FREE = "free"
HARMONIC = "harmonic"
SYSTEMS = (FREE, HARMONIC)

# SI: c is exact by definition; hbar is the CODATA 2018 value
SPEED_OF_LIGHT = 299_792_458
HBAR_SI = Fraction("1.054571817e-34")


@dataclass(frozen=True)
class LatticeConfig:
    steps: int = 64
    t_total: float = 1.0
    m: float = 1.0
    omega0: float = 1.0
    hbar: float = 1.0
    x_i: float = 0.3
    x_f: float = 0.7
    p_i: float = 0.0

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps < 1:
            raise ConstructionError(f"steps must be a positive integer, got {self.steps}")
        if not self.t_total > 0:
            raise ConstructionError(f"t_total must be positive, got {self.t_total}")
        if not self.m > 0:
            raise ConstructionError(f"mass must be positive, got {self.m}")
        if not self.hbar > 0:
            raise ConstructionError(f"hbar must be positive, got {self.hbar}")

    @property
    def dt(self) -> float:
        return self.t_total / self.steps

    def with_steps(self, n: int) -> "LatticeConfig":
        return replace(self, steps=n)


def _omega(cfg: LatticeConfig, system: str) -> float:
    if system == FREE:
        return 0.0
    if system == HARMONIC:
        return cfg.omega0
    raise ConstructionError(f"unknown system {system!r}; expected one of {SYSTEMS}")


def _potential(cfg: LatticeConfig, w: float, x):
    return 0.5 * cfg.m * w * w * x * x


# --------------------------------------------------------------------------
# quantum kernels


def qm_lattice_kernel(cfg: LatticeConfig, system: str = HARMONIC) -> complex:
    """Finite-N propagator ``<x_f| U(t) |x_i>`` by exact Gaussian elimination.

    The action accumulated up to point ``k`` is ``a x^2/2 + b x + c`` in ``x_k``.
    Each elimination of an intermediate point multiplies the amplitude by
    ``sqrt(2 pi i hbar / alpha)``; ``alpha = 0`` is a caustic and is reported.
    """
    w = _omega(cfg, system)
    m, hb, eps, N = cfg.m, cfg.hbar, cfg.dt, cfg.steps
    link = m / eps
    half_pot = 0.5 * eps * m * w * w

    a = link - half_pot
    b = -link * cfg.x_i
    c = 0.5 * link * cfg.x_i**2 - 0.5 * eps * _potential(cfg, w, cfg.x_i)
    log_amp = 0.5 * N * math.log(m / (2 * math.pi * hb * eps))
    phase = -0.25 * math.pi * N
    for k in range(1, N):
        alpha = a + link - half_pot
        if abs(alpha) < 1e-13 * link:
            raise LatticeSingularityError(f"Gaussian step {k} is singular (alpha = {alpha:.3e})")
        log_amp += 0.5 * math.log(2 * math.pi * hb / abs(alpha))
        phase += 0.25 * math.pi * math.copysign(1.0, alpha)
        a, b, c = (
            link - link * link / alpha - half_pot,
            b * link / alpha,
            c - b * b / (2 * alpha),
        )
    xf = cfg.x_f
    action = 0.5 * a * xf * xf + b * xf + c
    return cmath.exp(log_amp + 1j * (phase + action / hb))


def free_kernel_exact(cfg: LatticeConfig) -> complex:
    """``sqrt(m/(2 pi i hbar t)) exp(i m (x_f - x_i)^2 / (2 hbar t))``."""
    m, hb, t = cfg.m, cfg.hbar, cfg.t_total
    amp = math.sqrt(m / (2 * math.pi * hb * t))
    return amp * cmath.exp(1j * (m * (cfg.x_f - cfg.x_i) ** 2 / (2 * hb * t) - math.pi / 4))


def mehler_kernel(cfg: LatticeConfig) -> complex:
    """Closed-form oscillator propagator, including the Maslov phase past each caustic."""
    m, hb, w, t = cfg.m, cfg.hbar, cfg.omega0, cfg.t_total
    if w == 0:
        return free_kernel_exact(cfg)
    s = math.sin(w * t)
    if abs(s) < 1e-14:
        raise LatticeSingularityError(f"omega0 * t = {w * t} sits on a caustic")
    crossings = math.floor(w * t / math.pi)
    amp = math.sqrt(m * w / (2 * math.pi * hb * abs(s)))
    xi, xf = cfg.x_i, cfg.x_f
    s_cl = m * w * ((xi * xi + xf * xf) * math.cos(w * t) - 2 * xi * xf) / (2 * s)
    return amp * cmath.exp(1j * (s_cl / hb - math.pi / 4 - math.pi * crossings / 2))


def exact_kernel(cfg: LatticeConfig, system: str = HARMONIC) -> complex:
    return free_kernel_exact(cfg) if _omega(cfg, system) == 0 else mehler_kernel(cfg)


@dataclass(frozen=True)
class ConvergenceFit:
    steps: tuple[int, ...]
    dts: tuple[float, ...]
    errors: tuple[float, ...]
    slope: float


def convergence_slope(cfg: LatticeConfig, steps: Sequence[int] = (8, 16, 32, 64, 128, 256)) -> ConvergenceFit:
    """Least-squares slope of ``log |K_N - K|`` against ``log dt`` for the oscillator."""
    ref = mehler_kernel(cfg)
    dts, errs = [], []
    for n in steps:
        c = cfg.with_steps(n)
        dts.append(c.dt)
        errs.append(abs(qm_lattice_kernel(c, HARMONIC) - ref))
    slope = float(np.polyfit(np.log(dts), np.log(errs), 1)[0])
    return ConvergenceFit(tuple(steps), tuple(dts), tuple(errs), slope)


# --------------------------------------------------------------------------
# wavepackets


@dataclass(frozen=True)
class GaussianPacket:
    """``psi(x) = exp(-A x^2 + B x + C)`` with ``Re A > 0``."""

    A: complex
    B: complex
    C: complex

    @classmethod
    def normalized(cls, width: float, center: float = 0.0, momentum: float = 0.0, hbar: float = 1.0):
        A = 1.0 / (4 * width * width)
        B = 2 * A * center + 1j * momentum / hbar
        raw = cls(A, B, 0.0)
        return cls(A, B, -0.5 * math.log(raw.norm()))

    def norm(self) -> float:
        """``int |psi|^2 dx`` in closed form."""
        ra, rb, rc = self.A.real, complex(self.B).real, complex(self.C).real
        if ra <= 0:
            raise ConstructionError("wavepacket is not normalizable (Re A <= 0)")
        return math.sqrt(math.pi / (2 * ra)) * math.exp(rb * rb / (2 * ra) + 2 * rc)

    def __call__(self, x):
        return np.exp(-self.A * x * x + self.B * x + self.C)


def lattice_step(psi: GaussianPacket, cfg: LatticeConfig, system: str = HARMONIC) -> GaussianPacket:
    """Apply one link of the lattice propagator to a Gaussian packet, in closed form."""
    w = _omega(cfg, system)
    kick = 0.25 * cfg.dt * cfg.m * w * w / cfg.hbar  # half of eps V / hbar, per x^2
    A = complex(psi.A) + 1j * kick
    kappa = cfg.m / (2 * cfg.hbar * cfg.dt)
    D = A - 1j * kappa
    A2 = -1j * kappa + kappa * kappa / D + 1j * kick
    B2 = -1j * kappa * psi.B / D
    C2 = psi.C + psi.B * psi.B / (4 * D) + 0.5 * cmath.log(kappa / (1j * D))
    return GaussianPacket(A2, B2, C2)


def evolve_packet(psi: GaussianPacket, cfg: LatticeConfig, system: str = HARMONIC) -> list[GaussianPacket]:
    out = [psi]
    for _ in range(cfg.steps):
        out.append(lattice_step(out[-1], cfg, system))
    return out


# --------------------------------------------------------------------------
# classical lattice


FORWARD = "forward"
SYMPLECTIC = "symplectic"


def classical_discrete_evolve(
    cfg: LatticeConfig, system: str = HARMONIC, scheme: str = FORWARD
) -> tuple[np.ndarray, np.ndarray]:
    """Iterate the discrete Hamilton equations from ``(x_i, p_i)``; returns ``(q_k, p_k)``.

    ``forward`` is the forward-difference form ``q' = q + dt p/m``,
    ``p' = p - dt m w^2 q``.  ``symplectic`` updates ``p`` first and uses it
    for ``q``, which keeps the energy error bounded.
    """
    if scheme not in (FORWARD, SYMPLECTIC):
        raise ConstructionError(f"unknown scheme {scheme!r}")
    w = _omega(cfg, system)
    m, dt, N = cfg.m, cfg.dt, cfg.steps
    q = np.empty(N + 1)
    p = np.empty(N + 1)
    q[0], p[0] = cfg.x_i, cfg.p_i
    for k in range(N):
        if scheme == FORWARD:
            q[k + 1] = q[k] + dt * p[k] / m
            p[k + 1] = p[k] - dt * m * w * w * q[k]
        else:
            p[k + 1] = p[k] - dt * m * w * w * q[k]
            q[k + 1] = q[k] + dt * p[k + 1] / m
    return q, p


def classical_exact(cfg: LatticeConfig, system: str, t) -> tuple[np.ndarray, np.ndarray]:
    w = _omega(cfg, system)
    t = np.asarray(t, dtype=float)
    q0, p0, m = cfg.x_i, cfg.p_i, cfg.m
    if w == 0:
        return q0 + p0 * t / m, np.full_like(t, p0)
    q = q0 * np.cos(w * t) + p0 / (m * w) * np.sin(w * t)
    p = p0 * np.cos(w * t) - m * w * q0 * np.sin(w * t)
    return q, p


def energy(cfg: LatticeConfig, system: str, q, p):
    w = _omega(cfg, system)
    return p * p / (2 * cfg.m) + _potential(cfg, w, q)


def classical_error(cfg: LatticeConfig, system: str = HARMONIC) -> float:
    """Largest phase-space distance between the forward scheme and the exact flow."""
    q, p = classical_discrete_evolve(cfg, system, FORWARD)
    t = np.arange(cfg.steps + 1) * cfg.dt
    qe, pe = classical_exact(cfg, system, t)
    return float(np.max(np.hypot(q - qe, (p - pe) / (cfg.m * max(_omega(cfg, system), 1.0)))))


def classical_slope(cfg: LatticeConfig, steps: Sequence[int] = (64, 128, 256, 512, 1024, 2048)) -> ConvergenceFit:
    dts, errs = [], []
    for n in steps:
        c = cfg.with_steps(n)
        dts.append(c.dt)
        errs.append(classical_error(c, HARMONIC))
    slope = float(np.polyfit(np.log(dts), np.log(errs), 1)[0])
    return ConvergenceFit(tuple(steps), tuple(dts), tuple(errs), slope)


# --------------------------------------------------------------------------
# big action


def _exact(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class BigActionInput:
    mass_kg: Fraction
    age_s: Fraction

    def __post_init__(self):
        object.__setattr__(self, "mass_kg", _exact(self.mass_kg))
        object.__setattr__(self, "age_s", _exact(self.age_s))
        if self.mass_kg < 0 or self.age_s < 0:
            raise ConstructionError("mass and age must be non-negative")


@dataclass(frozen=True)
class BigAction:
    B: Fraction
    ratio: Fraction

    @property
    def B_float(self) -> float:
        return float(self.B)

    @property
    def ratio_float(self) -> float:
        return float(self.ratio)


def compute_B(inp: BigActionInput) -> BigAction:
    """``B = M c^2 T`` in J s, exactly, with its ratio to hbar."""
    B = inp.mass_kg * SPEED_OF_LIGHT**2 * inp.age_s
    return BigAction(B, B / HBAR_SI)


# --------------------------------------------------------------------------
# report rows


@dataclass(frozen=True)
class Row:
    system: str
    N: int
    value: str
    reference: str
    abs_error: float


def _c(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def kernel_rows(cfg: LatticeConfig, steps: Iterable[int] = (2, 4, 8, 16, 32, 64, 128, 256)) -> list[Row]:
    rows = []
    for system in SYSTEMS:
        ref = exact_kernel(cfg, system)
        for n in steps:
            val = qm_lattice_kernel(cfg.with_steps(n), system)
            rows.append(Row(system, n, _c(val), _c(ref), abs(val - ref)))
    return rows


def rows_to_csv(rows: Sequence[Row]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["system", "N", "value", "reference", "abs_error"], lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({**asdict(r), "abs_error": f"{r.abs_error:.6e}"})
    return buf.getvalue()


def rows_to_json(rows: Sequence[Row]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2)


CONSTANTS = {"c_m_per_s": SPEED_OF_LIGHT, "hbar_J_s": str(HBAR_SI), "hbar_source": "CODATA 2018"}
