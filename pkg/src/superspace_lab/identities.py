"""Replay of the superspace identity chains, step by step.

Each step pairs the statement as it is usually written with what the
engine computes under its fixed conventions (left derivatives,
``int dtheta dthetabar`` acting on ``thetabar`` first, ``delta(eta) = eta``).
A step whose written form differs from the engine only by an overall sign is
reported as ``sign-flip``; a heuristic step that the engine cannot reproduce
under any consistent reading is a ``discrepancy``.  Neither counts as a
failure: only a ``mismatch`` means the engine contradicts itself.
"""

from __future__ import annotations

from .dimensions import ACTION, DimensionAssignment, default_assignment, infer_dims
from .grassmann import (
    GeneratorSet,
    GrassmannElement,
    berezin_integrate,
    expand_even_function,
    grassmann_delta,
    invert_even,
    left_derivative,
)
from .models import harmonic_oscillator
from .reduction import (
    BIG_B,
    EPS,
    HBAR,
    MEASURE,
    PAIRINGS,
    SuperAction,
    _reduce_with,
    large_action_insert,
    large_action_insertion,
    select_pairing,
    super_action,
    support_analysis,
)
from .report import DISCREPANCY, MATCH, MISMATCH, SIGN_FLIP, Verdict
from .scalar import DELTA, I, ONE, delta, substitute
from .superspace import THETA, THETABAR

SMALL = "small action"
LARGE = "large action"
NORMALIZATION = "delta normalization"


def _compare(engine, written) -> str:
    if engine == written:
        return MATCH
    if engine == -written and not engine.is_zero:
        return SIGN_FLIP
    return MISMATCH


def _theta_gens() -> GeneratorSet:
    return GeneratorSet([THETA, THETABAR])


def _mono(gens, *names, coeff=ONE) -> GrassmannElement:
    return GrassmannElement.monomial(gens, names, coeff)


def normalization_steps(gens=None) -> list[Verdict]:
    gens = gens or _theta_gens()
    d_tb, d_t = grassmann_delta(gens, THETABAR), grassmann_delta(gens, THETA)
    value = berezin_integrate(d_tb * d_t, MEASURE)
    out = [
        Verdict(
            "int dtheta dthetabar delta(thetabar) delta(theta) = 1",
            NORMALIZATION,
            "int dtheta dthetabar delta(thetabar) delta(theta) = 1",
            str(value),
            MATCH if value == ONE else MISMATCH,
            "berezin_integrate(grassmann_delta(thetabar) * grassmann_delta(theta), [theta, thetabar])",
        )
    ]
    # the same measure on the opposite delta order
    swapped = berezin_integrate(d_t * d_tb, MEASURE)
    out.append(
        Verdict(
            "int dtheta dthetabar delta(theta) delta(thetabar)",
            NORMALIZATION,
            "int dtheta dthetabar delta(theta) delta(thetabar) = 1",
            str(swapped),
            _compare(swapped.body, ONE) if swapped.is_scalar else MISMATCH,
            "berezin_integrate(grassmann_delta(theta) * grassmann_delta(thetabar), [theta, thetabar])",
            "the measure orders thetabar innermost; reversing the delta order costs a sign",
        )
    )
    return out


def ordering_steps(gens=None) -> list[Verdict]:
    """How ``theta thetabar`` relates to the two products of Grassmann deltas."""
    gens = gens or _theta_gens()
    tt = _mono(gens, THETA, THETABAR)
    d_tb, d_t = grassmann_delta(gens, THETABAR), grassmann_delta(gens, THETA)
    out = []
    for label, product, anchor in (
        ("delta(thetabar) delta(theta)", d_tb * d_t, SMALL),
        ("delta(theta) delta(thetabar)", d_t * d_tb, LARGE),
    ):
        status = MATCH if product == tt else SIGN_FLIP if product == -tt else MISMATCH
        out.append(
            Verdict(
                f"theta thetabar equals {label}",
                anchor,
                f"theta thetabar = {label}",
                f"{label} = {product}",
                status,
                "grassmann_delta products compared with monomial(theta, thetabar)",
            )
        )
    return out


def delta_of_product_steps(gens=None) -> list[Verdict]:
    """The chain ``delta(theta thetabar) = delta(theta) d/dtheta delta(theta thetabar) = delta(theta) thetabar = theta thetabar``.

    The engine reads ``delta`` of an even element by Taylor expansion around its
    body, so ``delta(theta thetabar) = delta(0) + delta'(0) theta thetabar``.
    """
    gens = gens or _theta_gens()
    tt = _mono(gens, THETA, THETABAR)
    d_tt = expand_even_function(DELTA, tt)
    d_t = grassmann_delta(gens, THETA)
    thetabar = GrassmannElement.generator(gens, THETABAR)
    step1 = d_t * left_derivative(d_tt, THETA)
    step2 = d_t * thetabar
    rows = [
        ("delta(theta thetabar)", "delta(theta) d/dtheta delta(theta thetabar)", d_tt, step1),
        ("d/dtheta delta(theta thetabar)", "thetabar", left_derivative(d_tt, THETA), thetabar),
        ("delta(theta) thetabar", "theta thetabar", step2, tt),
        ("delta(theta thetabar)", "theta thetabar", d_tt, tt),
    ]
    out = []
    for lhs_text, rhs_text, lhs, rhs in rows:
        if lhs == rhs:
            status, note = MATCH, ""
        elif lhs == -rhs:
            status, note = SIGN_FLIP, ""
        else:
            status = DISCREPANCY
            note = "formal delta of a nilpotent argument keeps delta(0) and delta'(0) factors"
        out.append(
            Verdict(
                f"{lhs_text} = {rhs_text}",
                LARGE,
                f"{lhs_text} = {rhs_text}",
                f"{lhs} vs {rhs}",
                status,
                "expand_even_function(DELTA, theta thetabar), left_derivative, gmul",
                note,
            )
        )
    return out


def inversion_steps(gens=None) -> list[Verdict]:
    gens = gens or _theta_gens()
    tt = _mono(gens, THETA, THETABAR)
    x = tt + EPS
    inv = invert_even(x)
    written = (1 - tt / EPS) / EPS
    product = x * inv
    return [
        Verdict(
            "(eps + theta thetabar)^-1 = (1/eps)(1 - theta thetabar/eps)",
            LARGE,
            "(eps + theta thetabar)^-1 = (1/eps)(1 - theta thetabar/eps)",
            str(inv),
            MATCH if inv == written else MISMATCH,
            "invert_even(eps + theta thetabar)",
        ),
        Verdict(
            "(eps + theta thetabar) (eps + theta thetabar)^-1 = 1",
            LARGE,
            "the inverse is two-sided",
            str(product),
            MATCH if product == ONE and inv * x == ONE else MISMATCH,
            "gmul(x, invert_even(x)) and gmul(invert_even(x), x)",
        ),
    ]


def insertion_steps(gens=None) -> list[Verdict]:
    gens = gens or _theta_gens()
    tt = _mono(gens, THETA, THETABAR)
    ins = large_action_insertion(gens)
    inv_eps = ONE / EPS
    written = GrassmannElement.scalar(gens, delta(inv_eps)) - tt * (
        delta(inv_eps, 1) / EPS**2
    )
    support = support_analysis(ins)
    return [
        Verdict(
            "delta[(1/eps)(1 - theta thetabar/eps)] expansion",
            LARGE,
            "delta[(1/eps)(1 - theta thetabar/eps)] = delta(1/eps) - delta'(1/eps) theta thetabar/eps^2",
            str(ins),
            MATCH if ins == written else MISMATCH,
            "expand_even_function(DELTA, invert_even(eps + theta thetabar))",
        ),
        Verdict(
            "insertion is supported at theta thetabar = eps",
            LARGE,
            "body of the delta argument vanishes at theta thetabar = eps",
            f"root {support.root}",
            MATCH if support.root == EPS else MISMATCH,
            "support_analysis(insertion).root",
        ),
        Verdict(
            "eps -> 0 sends the support to theta thetabar = 0",
            LARGE,
            "with eps -> 0 the support is theta thetabar = 0",
            f"limit {support.limit}",
            MATCH if support.limit is not None and support.limit.is_zero else MISMATCH,
            "substitute(root, {eps: 0})",
            f"the factor 1/|beta| = {-1 / support.beta} is absorbed into the normalization",
        ),
    ]


def dimension_steps(assignment: DimensionAssignment | None = None) -> list[Verdict]:
    a = assignment or default_assignment()
    gens = _theta_gens()
    measure = a.measure("d" + THETA) * a.measure("d" + THETABAR)
    tbt = infer_dims(_mono(gens, THETABAR, THETA), a)
    b = infer_dims(BIG_B, a)
    return [
        Verdict(
            "dtheta dthetabar has dimension 1/action",
            SMALL,
            "dim(dtheta dthetabar) = action^-1",
            f"[{measure}]",
            MATCH if measure == ACTION**-1 else MISMATCH,
            "assignment.measure(dtheta) * assignment.measure(dthetabar)",
        ),
        Verdict(
            "thetabar theta has dimension action",
            SMALL,
            "dim(thetabar theta) = action",
            f"[{tbt}]",
            MATCH if tbt == ACTION else MISMATCH,
            "infer_dims(thetabar theta)",
        ),
        Verdict(
            "B = M c^2 T is an action",
            LARGE,
            "dim(M c^2 T) = action",
            f"[{b}]",
            MATCH if b == ACTION else MISMATCH,
            "infer_dims(B)",
        ),
    ]


def quantization_steps(sa: SuperAction) -> list[Verdict]:
    """The quantization map under every pairing, and the one that lands on ``(i/hbar) L``."""
    target = I * sa.lagrangian / HBAR
    chosen = select_pairing()
    out = []
    literal = next(p for p in PAIRINGS if p.order == (THETA, THETABAR) and p.keep_inner_i)
    lit = _reduce_with(sa.integrand, literal, HBAR)
    out.append(
        Verdict(
            "literal reading: i int dtheta dthetabar i (theta thetabar/hbar) L(Phi)",
            SMALL,
            "multiplying L(Phi) by theta thetabar/hbar gives (i/hbar) int dt L",
            str(lit),
            DISCREPANCY if lit.body != target else MATCH,
            "reduce with multiplier theta thetabar and the inner i kept",
            "with the inner i kept the exponent is real; no multiplier order yields i L/hbar",
        )
    )
    q = _reduce_with(sa.integrand, chosen, HBAR)
    out.append(
        Verdict(
            "quantization map reproduces (i/hbar) int dt L(phi)",
            SMALL,
            "(i/hbar) int dt L(phi)",
            f"{q} using {chosen.describe()}",
            MATCH if q == target else MISMATCH,
            "quantize(super_action(L))",
        )
    )
    # theta thetabar in place of delta(thetabar) delta(theta) flips the global sign
    other = next(p for p in PAIRINGS if p.order == (THETA, THETABAR) and not p.keep_inner_i)
    flipped = _reduce_with(sa.integrand, other, HBAR)
    out.append(
        Verdict(
            "theta thetabar multiplier versus delta(thetabar) delta(theta)",
            SMALL,
            "both insertions give the same reduction",
            f"theta thetabar: {flipped}; delta(thetabar) delta(theta): {q}",
            _compare(flipped, q) if flipped.is_scalar and q.is_scalar else MISMATCH,
            "reduce with multiplier theta thetabar versus thetabar theta",
            "the two differ by the single global sign -1",
        )
    )
    return out


def divisor_steps(sa: SuperAction) -> list[Verdict]:
    large = large_action_insert(sa, BIG_B)
    small = _reduce_with(sa.integrand, select_pairing(), HBAR).body
    swapped = substitute(large.exponent, {BIG_B: HBAR})
    return [
        Verdict(
            "large-action exponent is the quantized one with hbar -> B",
            LARGE,
            "large-action reduction equals the quantized one with B in place of hbar",
            f"{large.exponent}",
            MATCH if swapped == small else MISMATCH,
            "large_action_insert(sa, B) with B -> hbar against quantize(sa)",
        )
    ]


def replay(sa: SuperAction | None = None, assignment: DimensionAssignment | None = None) -> list[Verdict]:
    """Every identity chain, in reading order."""
    if sa is None:
        model = harmonic_oscillator()
        sa = super_action(model.lagrangian, model.phase_space)
    return (
        normalization_steps()
        + dimension_steps(assignment)
        + ordering_steps()
        + quantization_steps(sa)
        + delta_of_product_steps()
        + inversion_steps()
        + insertion_steps()
        + divisor_steps(sa)
    )


__all__ = [
    "delta_of_product_steps",
    "dimension_steps",
    "insertion_steps",
    "inversion_steps",
    "normalization_steps",
    "ordering_steps",
    "quantization_steps",
    "replay",
]
