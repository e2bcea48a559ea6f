"""Reductions of the superspace action.

Three maps act on ``L(Phi)``, the Lagrangian evaluated on superfields:

* the classical path-integral (CPI) reduction ``i int dtheta dthetabar L(Phi)``,
  which yields the ghost- and multiplier-bearing component Lagrangian;
* the quantization map, which multiplies ``L(Phi)`` by a nilpotent projector
  over ``hbar`` before Berezin integration and collapses the exponent to
  ``(i/hbar) int dt L(phi)``;
* the large-action insertion ``delta[(1/eps)(1 - theta thetabar/eps)]``,
  whose support as ``eps -> 0`` is again ``theta thetabar = 0``.

All results are reported modulo an overall normalization constant of the
path integral, which is not tracked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .dimensions import (
    ACTION,
    DimensionAssignment,
    Integral,
    default_assignment,
    infer_dims,
)
from .errors import DimensionError, NoRootError, SuperspaceError, UnboundSymbolError
from .grassmann import (
    GrassmannElement,
    berezin_integrate,
    expand_even_function,
    invert_even,
    left_derivative,
)
from .grassmann import time_derivative as grassmann_time_derivative
from .report import DEGENERATE, MATCH, MISMATCH, Verdict
from .scalar import (
    DELTA,
    I,
    ONE,
    ZERO,
    Delta,
    ScalarExpr,
    Sym,
    atom_expr,
    differentiate,
    substitute,
    symbol,
)
from .superspace import (
    THETA,
    THETABAR,
    PhaseSpace,
    superfield_of_function,
    superfields,
)

MEASURE = (THETA, THETABAR)
HBAR = symbol("hbar")
BIG_B = symbol("B")
EPS = symbol("eps")
NORMALIZATION_NOTE = "modulo an overall normalization constant"


# --------------------------------------------------------------------------
# super action


@dataclass(frozen=True)
class SuperAction:
    """A phase-space Lagrangian together with its superspace integrand ``L(Phi)``."""

    lagrangian: ScalarExpr
    phase_space: PhaseSpace
    integrand: GrassmannElement
    conventions: tuple[str, ...] = ()
    normalization: str = NORMALIZATION_NOTE

    @property
    def gens(self):
        return self.phase_space.generators


CONVENTIONS = (
    "left derivatives; int dtheta dthetabar applies d/dthetabar first",
    "monomials stored in canonical order theta < thetabar < ghosts",
    "L is a first-order phase-space Lagrangian of phi and phidot",
    "the CPI density is i int dtheta dthetabar L(Phi); the exponent is i int dt of it",
)


def super_action(L: ScalarExpr, ps: PhaseSpace) -> SuperAction:
    """Assemble ``L(Phi)`` from a Lagrangian in phase-space symbols and velocities."""
    allowed = {(c, d) for c in ps.coordinates for d in (0, 1)}
    for s in L.symbols():
        if s.timedep and (s.name, s.dots) not in allowed:
            raise UnboundSymbolError(f"Lagrangian uses {s}, which is not a phase-space variable or velocity")
    integrand = superfield_of_function(L, superfields(ps), velocities=True)
    if integrand.body != L:  # pragma: no cover - guarded by the Taylor expansion
        raise SuperspaceError("body of L(Phi) differs from L(phi)")
    return SuperAction(L, ps, integrand, CONVENTIONS)


# --------------------------------------------------------------------------
# CPI component Lagrangian


def cpi_component_lagrangian(sa: SuperAction) -> GrassmannElement:
    """``i int dtheta dthetabar L(Phi)``: the ghost-bearing component Lagrangian."""
    return berezin_integrate(sa.integrand, MEASURE) * I


def expected_component_lagrangian(ps: PhaseSpace, H: ScalarExpr) -> GrassmannElement:
    """``lam_a (phidot^a - omega^{ab} d_b H) + i cbar_a (cdot^a - omega^{ac} d_c d_b H c^b)``."""
    gens = ps.generators
    out = GrassmannElement(gens)
    for a in range(ps.dim):
        eom = ps.phi(a + 1, dots=1)
        for b in range(ps.dim):
            if ps.omega[a][b]:
                eom = eom - ps.omega[a][b] * differentiate(H, ps.phi(b + 1))
        out = out + GrassmannElement.scalar(gens, ps.lam(a + 1) * eom)
        ghost = GrassmannElement.generator(gens, ps.c(a + 1, dots=1))
        for b in range(ps.dim):
            for c in range(ps.dim):
                if ps.omega[a][c]:
                    hess = differentiate(differentiate(H, ps.phi(c + 1)), ps.phi(b + 1))
                    ghost = ghost - GrassmannElement.generator(gens, ps.c(b + 1)) * (ps.omega[a][c] * hess)
        out = out + (GrassmannElement.generator(gens, ps.cbar(a + 1)) * ghost) * I
    return out


def euler_lagrange(D: GrassmannElement, ps: PhaseSpace) -> dict[str, GrassmannElement]:
    """Euler-Lagrange expressions of ``D`` for every field it contains.

    Commuting fields are read off the coefficients; ghosts use left
    derivatives.  A Lagrangian is a total time derivative exactly when all
    expressions vanish.
    """
    gens = ps.generators
    bosons: dict[str, int] = {}
    for _, c in D.items():
        for s in c.symbols():
            if s.timedep:
                bosons[s.name] = max(bosons.get(s.name, 0), s.dots)
    out: dict[str, GrassmannElement] = {}
    for name, top in sorted(bosons.items()):
        expr = GrassmannElement(gens)
        for k in range(top + 1):
            part = D.map_coefficients(lambda c, k=k: differentiate(c, symbol(name, k, True)))
            for _ in range(k):
                part = -grassmann_time_derivative(part)
            expr = expr + part
        out[name] = expr
    for a in range(ps.dim):
        for kind in (ps.c, ps.cbar):
            expr = GrassmannElement(gens)
            for k in range(3):
                part = left_derivative(D, kind(a + 1, k))
                for _ in range(k):
                    part = -grassmann_time_derivative(part)
                expr = expr + part
            out[kind(a + 1)] = expr
    return out


def is_total_derivative(D: GrassmannElement, ps: PhaseSpace) -> bool:
    return all(e.is_zero for e in euler_lagrange(D, ps).values())


def split_lagrangian(L: ScalarExpr, ps: PhaseSpace) -> tuple[ScalarExpr, ScalarExpr]:
    """``(kinetic, H)`` with ``H = -L|_{phidot=0}`` and ``kinetic = L + H``."""
    still = {Sym(c, 1, True): 0 for c in ps.coordinates}
    H = -substitute(L, still)
    return L + H, H


# --------------------------------------------------------------------------
# quantization


@dataclass(frozen=True)
class Pairing:
    """How the quantization multiplier enters ``i int dt dtheta dthetabar [inner] L(Phi)``.

    ``order`` is the written order of the nilpotent multiplier (``theta
    thetabar`` or ``thetabar theta``); ``keep_inner_i`` says whether the
    multiplier is placed next to the inner ``i`` or replaces it.
    """

    order: tuple[str, str]
    keep_inner_i: bool

    def multiplier(self, gens) -> GrassmannElement:
        return GrassmannElement.monomial(gens, self.order)

    def describe(self) -> str:
        placement = "kept beside" if self.keep_inner_i else "replaced by"
        return f"multiplier {' '.join(self.order)}/divisor; inner i {placement} the multiplier"


PAIRINGS = tuple(
    Pairing(order, keep)
    for keep in (True, False)
    for order in ((THETA, THETABAR), (THETABAR, THETA))
)


def _reduce_with(integrand: GrassmannElement, pairing: Pairing, divisor: ScalarExpr) -> GrassmannElement:
    inner = pairing.multiplier(integrand.gens) * integrand / divisor
    if pairing.keep_inner_i:
        inner = inner * I
    return berezin_integrate(inner, MEASURE) * I


@lru_cache(maxsize=None)
def select_pairing() -> Pairing:
    """The unique pairing that sends a generic constant Lagrangian to ``i k / hbar``.

    A probe superspace with a formal constant ``k`` is reduced under every
    candidate; the one landing on the quantum exponent is fixed once and then
    applied to every Lagrangian.
    """
    ps = PhaseSpace.canonical(["q"], ["p"])
    k = symbol("k")
    probe = super_action(k, ps)
    hits = [p for p in PAIRINGS if _reduce_with(probe.integrand, p, HBAR) == I * k / HBAR]
    if len(hits) != 1:  # pragma: no cover - fixed by the algebra
        raise SuperspaceError(f"expected exactly one quantization pairing, found {len(hits)}")
    return hits[0]


@dataclass(frozen=True)
class Quantization:
    exponent: ScalarExpr
    pairing: Pairing
    divisor: ScalarExpr
    candidates: tuple[tuple[Pairing, str], ...]

    @property
    def ghost_free(self) -> bool:
        return not any(s.name.startswith("lam_") for s in self.exponent.symbols())

    def as_integral(self) -> Integral:
        return Integral(self.exponent, ("dt",), ONE, "quantized exponent")


def quantization(sa: SuperAction, divisor: ScalarExpr = HBAR) -> Quantization:
    """Run the quantization map with the fixed pairing; also report the rejected pairings."""
    pairing = select_pairing()
    reduced = _reduce_with(sa.integrand, pairing, divisor)
    if not reduced.is_scalar:
        raise SuperspaceError(f"ghost generators survive quantization: {reduced}")
    others = tuple(
        (p, str(_reduce_with(sa.integrand, p, divisor))) for p in PAIRINGS if p != pairing
    )
    return Quantization(reduced.body, pairing, divisor, others)


def quantize(sa: SuperAction, divisor: ScalarExpr = HBAR) -> ScalarExpr:
    """Density of the quantized exponent; equals ``i L(phi)/divisor`` for every L."""
    return quantization(sa, divisor).exponent


# --------------------------------------------------------------------------
# large-action insertion


@dataclass(frozen=True)
class Support:
    """Zero of the linear body ``alpha + beta s`` in ``s = theta thetabar``."""

    alpha: ScalarExpr
    beta: ScalarExpr
    root: ScalarExpr
    limit: ScalarExpr | None

    def __str__(self) -> str:
        lim = "none" if self.limit is None else str(self.limit)
        return f"theta thetabar = {self.root}; eps -> 0 gives {lim}"


def _linear_in_s(g: GrassmannElement) -> tuple[ScalarExpr, ScalarExpr]:
    s_mask = [m for m, _ in g.items() if m]
    for m in s_mask:
        names = g.gens.names_of(m)
        if names != (THETA, THETABAR):
            raise NoRootError(f"{g} is not a function of theta thetabar alone")
    return g.body, g.coefficient(THETA, THETABAR)


def support_analysis(g: GrassmannElement, eps: ScalarExpr = EPS) -> Support:
    """Locate where ``delta(g)`` (or the argument ``g`` itself) is supported.

    ``g`` may be the even argument ``alpha + beta theta thetabar`` or its
    delta expansion ``delta(alpha) + beta delta'(alpha) theta thetabar``.
    """
    body, slope = _linear_in_s(g)
    atoms = body.atoms()
    if body.is_polynomial and len(body.num) == 1 and body.num[0][1] == 1 and len(atoms) == 1:
        (atom,) = atoms
        if isinstance(atom, Delta) and atom.order == 0 and len(body.num[0][0]) == 1:
            alpha = atom.arg
            beta = ZERO if slope.is_zero else slope / atom_expr(Delta(1, alpha))
            if any(isinstance(a, Delta) for a in beta.atoms()):
                raise NoRootError(f"{g} is not the delta expansion of a linear argument")
            return _support(alpha, beta, eps)
    return _support(body, slope, eps)


def _support(alpha: ScalarExpr, beta: ScalarExpr, eps: ScalarExpr) -> Support:
    if beta.is_zero:
        raise NoRootError("argument does not depend on theta thetabar; no body-level root")
    root = -alpha / beta
    try:
        limit = substitute(root, {eps: 0})
    except ZeroDivisionError:
        limit = None
    return Support(alpha, beta, root, limit)


def large_action_argument(gens) -> GrassmannElement:
    """``(eps + theta thetabar)^-1 = (1/eps)(1 - theta thetabar/eps)``."""
    s = GrassmannElement.monomial(gens, (THETA, THETABAR))
    return invert_even(s + EPS)


def large_action_insertion(gens) -> GrassmannElement:
    return expand_even_function(DELTA, large_action_argument(gens))


@dataclass(frozen=True)
class LargeAction:
    insertion: GrassmannElement
    support: Support
    exponent: ScalarExpr
    divisor: ScalarExpr
    pairing: Pairing
    dropped_factor: ScalarExpr
    steps: tuple[str, ...] = field(default=())

    def __iter__(self) -> Iterator:
        yield self.insertion
        yield self.exponent

    def as_integral(self) -> Integral:
        return Integral(self.exponent, ("dt",), ONE, "large-action exponent")


def large_action_insert(
    sa: SuperAction,
    divisor: ScalarExpr = BIG_B,
    assignment: DimensionAssignment | None = None,
) -> LargeAction:
    """Insert ``delta[(1/eps)(1 - theta thetabar/eps)]`` and reduce with ``divisor``.

    The delta of a linear argument ``alpha + beta s`` equals ``delta(s - s*)/|beta|``;
    ``1/|beta| = eps^2`` is absorbed into the normalization.  After ``eps -> 0`` the
    support is ``theta thetabar = 0``, the same projector as the quantization map,
    so the reduction reruns that map with ``divisor`` in place of ``hbar``.
    """
    if divisor.is_zero:
        raise DimensionError("divisor has zero body")
    assignment = assignment or default_assignment()
    dim = infer_dims(divisor, assignment)
    if dim != ACTION:
        raise DimensionError(f"divisor {divisor} has dimension [{dim}], expected an action [{ACTION}]")
    insertion = large_action_insertion(sa.gens)
    support = support_analysis(insertion)
    if support.limit is None or not support.limit.is_zero:
        raise NoRootError(f"insertion is not supported at theta thetabar = 0: {support}")
    pairing = select_pairing()
    reduced = _reduce_with(sa.integrand, pairing, divisor)
    if not reduced.is_scalar:
        raise SuperspaceError(f"ghost generators survive the large-action reduction: {reduced}")
    steps = (
        f"argument: (eps + theta thetabar)^-1 = {large_action_argument(sa.gens)}",
        f"insertion: {insertion}",
        f"support: {support}",
        f"dropped into normalization: 1/|beta| with beta = {support.beta}",
        f"projector at the limit: {' '.join(pairing.order)} (as in the quantization map)",
        f"reduction: {pairing.describe()} with divisor {divisor}",
    )
    return LargeAction(insertion, support, reduced.body, divisor, pairing, -1 / support.beta, steps)


def large_action_finite_eps(sa: SuperAction, divisor: ScalarExpr = BIG_B) -> GrassmannElement:
    """Reduced density with the insertion at finite ``eps``; delta tokens stay formal."""
    inner = large_action_insertion(sa.gens) * sa.integrand / divisor
    return berezin_integrate(inner, MEASURE) * I


# --------------------------------------------------------------------------
# equivalence report


@dataclass
class ReductionReport:
    component_lagrangian: GrassmannElement
    quantized_exponent: ScalarExpr
    large_action_exponent: ScalarExpr
    verdicts: list[Verdict]
    normalization: str = NORMALIZATION_NOTE

    def to_dict(self) -> dict:
        from dataclasses import asdict

        return {
            "component_lagrangian": str(self.component_lagrangian),
            "quantized_exponent": f"int dt [{self.quantized_exponent}]",
            "large_action_exponent": f"int dt [{self.large_action_exponent}]",
            "normalization": self.normalization,
            "verdicts": [asdict(v) for v in self.verdicts],
        }

    def to_text(self) -> str:
        lines = [
            f"component Lagrangian: {self.component_lagrangian}",
            f"quantized exponent:   int dt [{self.quantized_exponent}]",
            f"large-action exponent: int dt [{self.large_action_exponent}]",
            f"({self.normalization})",
        ]
        lines.extend(v.to_text() for v in self.verdicts)
        return "\n".join(lines)


def equivalence_check(sa: SuperAction | None = None) -> ReductionReport:
    """Compare the small-action (hbar) and large-action (B) reductions with the CPI one.

    Without an argument the harmonic oscillator is used.
    """
    if sa is None:
        from .models import harmonic_oscillator

        model = harmonic_oscillator()
        sa = super_action(model.lagrangian, model.phase_space)
    cpi = cpi_component_lagrangian(sa)
    small = quantize(sa, HBAR)
    large = large_action_insert(sa, BIG_B)
    swapped = substitute(large.exponent, {BIG_B: HBAR})
    verdicts = []

    same = swapped == small
    verdicts.append(
        Verdict(
            "small and large action give the same exponent",
            "large-action projection",
            "large-action exponent = quantized exponent with hbar -> B",
            f"quantized: {small}; large-action with B -> hbar: {swapped}",
            MATCH if same else MISMATCH,
            "substitute(large_action_insert(sa).exponent, {B: hbar}) == quantize(sa)",
        )
    )
    verdicts.append(
        Verdict(
            "both projections supported at theta thetabar = 0",
            "large-action projection",
            "delta[(1/eps)(1 - theta thetabar/eps)] is supported at theta thetabar = eps -> 0",
            str(large.support),
            MATCH if large.support.limit is not None and large.support.limit.is_zero else MISMATCH,
            "support_analysis(large_action_insertion(gens))",
        )
    )
    cpi_scalar = cpi.body if cpi.is_scalar else None
    if cpi.is_zero and small.is_zero:
        status, note = DEGENERATE, "all three exponents vanish"
    else:
        differs = cpi_scalar is None or (cpi_scalar != small and cpi_scalar != large.exponent)
        status, note = (MATCH if differs else MISMATCH), ""
    verdicts.append(
        Verdict(
            "CPI Lagrangian differs from both reduced exponents",
            "classical path integral",
            "the CPI density keeps ghost and multiplier terms that both reduced exponents lack",
            f"CPI density: {cpi}",
            status,
            "cpi_component_lagrangian(sa) compared with quantize(sa) and large_action_insert(sa)",
            note,
        )
    )
    return ReductionReport(cpi, small, large.exponent, verdicts)
