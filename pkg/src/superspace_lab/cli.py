"""``superspace-lab <command> <model-file>``: run the verification pipeline on a model.

Exit status is 0 when every verdict passes, 1 when any verdict is a
mismatch, 2 on unreadable or inconsistent input.
"""

from __future__ import annotations

import argparse
import sys
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import lattice as lat
from .dimensions import ACTION, Integral, check_dimensionless, default_assignment, infer_dims
from .errors import SuperspaceError
from .grassmann import GrassmannElement
from .identities import replay
from .modelfile import ModelFile, load_model
from .reduction import (
    BIG_B,
    HBAR,
    NORMALIZATION_NOTE,
    cpi_component_lagrangian,
    equivalence_check,
    euler_lagrange,
    expected_component_lagrangian,
    is_total_derivative,
    large_action_finite_eps,
    large_action_insert,
    quantization,
    split_lagrangian,
    super_action,
)
from .report import MATCH, MISMATCH, Section, Verdict, all_passed, dumps
from .scalar import I, substitute
from .superspace import THETA, THETABAR, phase_space_lagrangian, superfields, taylor_terms, field_map

COMMANDS = ("expand", "reduce", "quantize", "bigaction", "dimcheck", "lattice", "identities")


def _status(ok: bool) -> str:
    return MATCH if ok else MISMATCH


class Runner:
    def __init__(self, model: ModelFile, divisor: str = "B", eps_symbolic: bool = False):
        self.model = model
        self.divisor = BIG_B if divisor == "B" else HBAR
        self.eps_symbolic = eps_symbolic
        self.sa = super_action(model.lagrangian, model.phase_space)

    def header(self) -> Section:
        ps = self.model.phase_space
        n = ps.n
        return Section(
            "model",
            {
                "file": self.model.path,
                "positions": " ".join(ps.coordinates[:n]),
                "momenta": " ".join(ps.coordinates[n:]),
                "L(phi)": self.model.lagrangian,
                "conventions": "\n".join(self.sa.conventions),
                "note": NORMALIZATION_NOTE,
            },
        )

    # -- commands ----------------------------------------------------------

    def expand(self) -> Section:
        fields = superfields(self.model.phase_space)
        terms = taylor_terms(self.model.lagrangian, field_map(fields), order=3)
        sec = Section("expand")
        sec.values["superfields"] = "\n".join(str(f) for f in fields)
        sec.values["L(Phi)"] = self.sa.integrand.to_text()
        sec.values["theta thetabar component"] = self.sa.integrand.coefficient(THETA, THETABAR)
        sec.verdicts.append(
            Verdict(
                "body of L(Phi) is L(phi)",
                "superfield expansion",
                "L(Phi)|_{theta = thetabar = 0} = L(phi)",
                str(self.sa.integrand.body),
                _status(self.sa.integrand.body == self.model.lagrangian),
                "super_action(L).integrand.body",
            )
        )
        sec.verdicts.append(
            Verdict(
                "Taylor series stops at second order",
                "superfield expansion",
                "third-order term of L(Phi) vanishes",
                str(terms[3]),
                _status(terms[3].is_zero),
                "taylor_terms(L, fields, order=3)[3]",
            )
        )
        return sec

    def reduce(self) -> Section:
        ps = self.model.phase_space
        cpi = cpi_component_lagrangian(self.sa)
        sec = Section("reduce", {"component Lagrangian": cpi.to_text()})
        kinetic, H = split_lagrangian(self.model.lagrangian, ps)
        standard = phase_space_lagrangian(ps, H) + H
        gens = ps.generators
        if is_total_derivative(GrassmannElement.scalar(gens, kinetic - standard), ps):
            expected = expected_component_lagrangian(ps, H)
            sec.values["expected (mod d/dt)"] = expected.to_text()
            sec.verdicts.append(
                Verdict(
                    "component Lagrangian carries Hamilton's equations and the Jacobi ghosts",
                    "classical path integral",
                    "i int dtheta dthetabar L(Phi) = lam_a (phidot^a - omega^{ab} d_b H)"
                    " + i cbar_a (cdot^a - omega^{ac} d_c d_b H c^b) + d/dt(...)",
                    f"difference from expected: {cpi - expected}",
                    _status(is_total_derivative(cpi - expected, ps)),
                    "euler_lagrange(cpi_component_lagrangian(sa) - expected_component_lagrangian(ps, H))",
                )
            )
        else:
            sec.values["expected (mod d/dt)"] = "not applicable: kinetic term is not first order in velocities"
        eqs = euler_lagrange(cpi, ps)
        sec.values["equations from lam"] = "\n".join(
            f"d/d{name}: {eqs[name]}" for name in sorted(eqs) if name.startswith("lam_")
        )
        return sec

    def quantize(self) -> Section:
        q = quantization(self.sa, HBAR)
        target = I * self.model.lagrangian / HBAR
        sec = Section(
            "quantize",
            {
                "exponent": f"int dt [{q.exponent}]",
                "as (i/hbar) int dt L": f"(i/hbar) int dt [{q.exponent * HBAR / I}]",
                "ghost-free": "yes" if q.ghost_free else "no",
                "pairing": q.pairing.describe(),
                "rejected pairings": "\n".join(f"{p.describe()} -> {t}" for p, t in q.candidates),
            },
        )
        sec.verdicts.append(
            Verdict(
                "quantization map gives (i/hbar) int dt L(phi)",
                "quantization map",
                "exponent = (i/hbar) int dt L(phi)",
                str(q.exponent),
                _status(q.exponent == target),
                "quantize(super_action(L))",
            )
        )
        sec.verdicts.append(
            Verdict(
                "no ghost or multiplier survives",
                "quantization map",
                "c, cbar and lam cancel identically",
                sec.values["ghost-free"],
                _status(sec.values["ghost-free"] == "yes"),
                "symbol scan of quantize(super_action(L))",
            )
        )
        return sec

    def bigaction(self) -> Section:
        la = large_action_insert(self.sa, self.divisor)
        small = quantization(self.sa, HBAR).exponent
        sec = Section(
            "bigaction",
            {
                "divisor": self.divisor,
                "steps": "\n".join(la.steps),
                "exponent": f"int dt [{la.exponent}]",
                "dropped factor": la.dropped_factor,
            },
        )
        if self.eps_symbolic:
            sec.values["density at finite eps"] = large_action_finite_eps(self.sa, self.divisor).to_text()
        sec.verdicts.append(
            Verdict(
                "insertion supported at theta thetabar = 0 as eps -> 0",
                "large-action projection",
                "root theta thetabar = eps, limit 0",
                str(la.support),
                _status(la.support.limit is not None and la.support.limit.is_zero),
                "support_analysis(large_action_insertion(gens))",
            )
        )
        swapped = la.exponent if self.divisor == HBAR else substitute(la.exponent, {self.divisor: HBAR})
        sec.verdicts.append(
            Verdict(
                "large-action exponent is the quantized one with hbar -> divisor",
                "large-action projection",
                f"exponent = (i/{self.divisor}) int dt L(phi)",
                str(la.exponent),
                _status(swapped == small),
                "large_action_insert(sa, divisor) against quantize(sa)",
            )
        )
        if self.divisor == BIG_B:
            sec.verdicts.extend(equivalence_check(self.sa).verdicts)
        if self.model.bigaction is not None:
            b = lat.compute_B(self.model.bigaction)
            sec.values["M [kg]"] = str(self.model.bigaction.mass_kg)
            sec.values["T [s]"] = str(self.model.bigaction.age_s)
            sec.values["B = M c^2 T [J s]"] = f"{b.B_float:.12e}"
            sec.values["B exact [J s]"] = str(b.B)
            sec.values["B / hbar"] = f"{b.ratio_float:.12e}"
            sec.values["constants"] = lat.CONSTANTS
        return sec

    def dimcheck(self) -> Section:
        a = self.model.assignment()
        q = quantization(self.sa, HBAR).exponent
        la = large_action_insert(self.sa, BIG_B, a).exponent
        exponents = [
            Integral(self.sa.integrand, ("dt", "d" + THETA, "d" + THETABAR), I * I, "classical exponent"),
            Integral(q, ("dt",), label="quantized exponent"),
            Integral(la, ("dt",), label="large-action exponent"),
        ]
        measure = a.measure("d" + THETA) * a.measure("d" + THETABAR)
        gens = self.model.phase_space.generators
        tbt = infer_dims(GrassmannElement.monomial(gens, (THETABAR, THETA)), a)
        sec = Section(
            "dimcheck",
            {
                "dim(dtheta dthetabar)": measure,
                "dim(thetabar theta)": tbt,
                "dim(L)": infer_dims(self.model.lagrangian, a),
                "note": "only the product theta thetabar is fixed; the split between theta and thetabar is a choice",
            },
        )
        sec.verdicts.append(
            Verdict("measure is an inverse action", "dimensions", "dim(dtheta dthetabar) = action^-1",
                    f"[{measure}]", _status(measure == ACTION**-1), "assignment.measure")
        )
        sec.verdicts.append(
            Verdict("thetabar theta is an action", "dimensions", "dim(thetabar theta) = action",
                    f"[{tbt}]", _status(tbt == ACTION), "infer_dims(thetabar theta)")
        )
        for integral in exponents:
            v = check_dimensionless(integral, a)
            sec.verdicts.append(
                Verdict(f"{integral.label} is dimensionless", "dimensions", "exponent is a pure phase",
                        str(v), _status(v.ok), "check_dimensionless")
            )
        return sec

    def lattice(self) -> Section:
        cfg = self.model.lattice or lat.LatticeConfig()
        sec = Section("lattice", {"config": cfg if self.model.lattice else f"{cfg} (defaults)"})
        rows = lat.kernel_rows(cfg)
        sec.values["kernels"] = lat.rows_to_csv(rows).rstrip("\n")

        worst = max(abs(lat.qm_lattice_kernel(cfg.with_steps(n), lat.FREE) / lat.free_kernel_exact(cfg) - 1)
                    for n in (2, 4, 8))
        sec.verdicts.append(
            Verdict("free kernel exact at finite N", "lattice", "relative error < 1e-12 for N in {2, 4, 8}",
                    f"{worst:.3e}", _status(worst < 1e-12), "qm_lattice_kernel(cfg, 'free')")
        )
        fit = lat.convergence_slope(cfg)
        sec.verdicts.append(
            Verdict("oscillator kernel converges at second order", "lattice", "slope 2.0 +- 0.2 in dt",
                    f"{fit.slope:.4f}", _status(abs(fit.slope - 2) <= 0.2), "convergence_slope(cfg)")
        )
        cfit = lat.classical_slope(cfg)
        sec.verdicts.append(
            Verdict("forward scheme converges at first order", "lattice", "slope 1.0 +- 0.2 in dt",
                    f"{cfit.slope:.4f}", _status(abs(cfit.slope - 1) <= 0.2), "classical_slope(cfg)")
        )
        psi = lat.GaussianPacket.normalized(0.5, cfg.x_i, 1.0, cfg.hbar)
        drift = max(abs(p.norm() - 1) for p in lat.evolve_packet(psi, cfg))
        sec.verdicts.append(
            Verdict("lattice step is unitary", "lattice", "wavepacket norm stays 1",
                    f"max |norm - 1| = {drift:.3e}", _status(drift < 1e-12), "evolve_packet")
        )
        long = lat.LatticeConfig(steps=10_000, t_total=10_000 * min(cfg.dt, 0.1), m=cfg.m,
                                 omega0=cfg.omega0, hbar=cfg.hbar, x_i=cfg.x_i, p_i=cfg.p_i or 0.5)
        q, p = lat.classical_discrete_evolve(long, lat.HARMONIC, lat.SYMPLECTIC)
        dev = np.abs(lat.energy(long, lat.HARMONIC, q, p) - lat.energy(long, lat.HARMONIC, q[0], p[0]))
        first, second = dev[: len(dev) // 2].max(), dev[len(dev) // 2 :].max()
        sec.verdicts.append(
            Verdict("symplectic energy error stays bounded", "lattice", "no secular growth over 10^4 steps",
                    f"max drift first half {first:.3e}, second half {second:.3e}",
                    _status(second <= 1.5 * first + 1e-15), "classical_discrete_evolve(..., 'symplectic')")
        )
        if self.model.bigaction is not None:
            b = lat.compute_B(self.model.bigaction)
            sec.values["B [J s]"] = f"{b.B_float:.12e}"
        return sec

    def identities(self) -> Section:
        sec = Section("identities", {"assignment": "default; theta and thetabar each carry action^(1/2)"})
        sec.verdicts.extend(replay(self.sa, default_assignment()))
        return sec

    def run(self, command: str) -> list[Section]:
        table: dict[str, Callable[[], Section]] = {c: getattr(self, c) for c in COMMANDS}
        names = COMMANDS if command == "all" else (command,)
        return [self.header()] + [table[c]() for c in names]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superspace-lab", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS + ("all",))
    p.add_argument("model", help="model file")
    p.add_argument("--json", metavar="OUT", help="also write a JSON report to OUT")
    p.add_argument("--eps-symbolic", action="store_true",
                   help="also show the large-action density at finite eps")
    p.add_argument("--divisor", choices=("B", "hbar"), default="B",
                   help="divisor used by the large-action reduction (default B)")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        model = load_model(args.model)
        runner = Runner(model, args.divisor, args.eps_symbolic)
        sections = runner.run(args.command)
    except SuperspaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, RecursionError) as exc:
        print(f"error: {args.model}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2

    verdicts = [v for s in sections for v in s.verdicts]
    code = 0 if all_passed(verdicts) else 1
    print("\n\n".join(s.to_text() for s in sections))
    failed = sum(not v.passed for v in verdicts)
    print(f"\n{len(verdicts)} verdicts, {failed} failed")
    if args.json:
        payload = {
            "command": args.command,
            "model": args.model,
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "sections": [s.to_dict() for s in sections],
            "passed": code == 0,
            "exit_code": code,
        }
        Path(args.json).write_text(dumps(payload) + "\n", encoding="utf-8")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
