"""Dimensional analysis over mass (M), length (L) and time (T).

Dimensions carry exact rational exponents so that a generator can be given
half the dimension of an action.  Only the product ``theta thetabar`` is
physically fixed (it has the dimension of an action); how that is split
between the two generators is a bookkeeping choice, and every verdict below
is independent of it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import DimensionError, InhomogeneousSumError, UnassignedDimensionError
from .grassmann import GrassmannElement
from .scalar import ONE, Apply, Delta, ImaginaryUnit, ScalarExpr, Sym


@dataclass(frozen=True)
class Dimension:
    mass: Fraction = Fraction(0)
    length: Fraction = Fraction(0)
    time: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("mass", "length", "time"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def __mul__(self, other: "Dimension") -> "Dimension":
        return Dimension(self.mass + other.mass, self.length + other.length, self.time + other.time)

    def __truediv__(self, other: "Dimension") -> "Dimension":
        return self * other ** -1

    def __pow__(self, k) -> "Dimension":
        k = Fraction(k)
        return Dimension(self.mass * k, self.length * k, self.time * k)

    @property
    def is_dimensionless(self) -> bool:
        return not (self.mass or self.length or self.time)

    def __str__(self) -> str:
        if self.is_dimensionless:
            return "1"
        parts = []
        for sym, e in (("M", self.mass), ("L", self.length), ("T", self.time)):
            if e:
                parts.append(sym if e == 1 else f"{sym}^{e}")
        return " ".join(parts)


DIMENSIONLESS = Dimension()
MASS = Dimension(mass=1)
LENGTH = Dimension(length=1)
TIME = Dimension(time=1)
ENERGY = MASS * LENGTH**2 / TIME**2
ACTION = ENERGY * TIME
MOMENTUM = MASS * LENGTH / TIME

_DIM_RE = re.compile(r"([MLT])(?:\^(-?\d+(?:/\d+)?))?\Z")


def parse_dimension(text: str) -> Dimension:
    """Parse ``M^a L^b T^c`` (any subset, any order, rational exponents) or ``1``."""
    text = text.strip()
    if text in ("", "1"):
        return DIMENSIONLESS
    exps = {"M": Fraction(0), "L": Fraction(0), "T": Fraction(0)}
    seen = set()
    for word in text.split():
        m = _DIM_RE.match(word)
        if m is None:
            raise DimensionError(f"cannot read dimension factor {word!r}")
        base = m.group(1)
        if base in seen:
            raise DimensionError(f"base dimension {base} given twice in {text!r}")
        seen.add(base)
        exps[base] = Fraction(m.group(2) or 1)
    return Dimension(exps["M"], exps["L"], exps["T"])


Measured = Union[ScalarExpr, GrassmannElement]


@dataclass(frozen=True)
class Integral:
    """``prefactor * int d(measures...) integrand`` as it appears in an exponent."""

    integrand: Measured
    measures: tuple[str, ...] = ("dt",)
    prefactor: ScalarExpr = ONE
    label: str = ""

    def __str__(self) -> str:
        meas = " ".join(self.measures)
        return f"{self.prefactor} * int {meas} [{self.integrand}]"


class DimensionAssignment:
    """Dimensions of symbols, functions and Grassmann generators.

    The measure ``dt`` is a time; ``d<generator>`` is the inverse of the
    generator's dimension because Berezin integration is differentiation.
    """

    def __init__(self, entries: Mapping[str, Dimension] | None = None):
        self._entries: dict[str, Dimension] = dict(entries or {})

    def __getitem__(self, name: str) -> Dimension:
        try:
            return self._entries[name]
        except KeyError:
            raise UnassignedDimensionError(f"no dimension assigned to {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def get(self, name: str, default=None):
        return self._entries.get(name, default)

    def items(self):
        return self._entries.items()

    def with_entries(self, entries: Mapping[str, Dimension]) -> "DimensionAssignment":
        merged = dict(self._entries)
        merged.update(entries)
        return DimensionAssignment(merged)

    def measure(self, token: str) -> Dimension:
        if token == "dt":
            return TIME
        if not token.startswith("d"):
            raise DimensionError(f"measure token {token!r} must start with 'd'")
        return self[token[1:]] ** -1

    @classmethod
    def from_lines(cls, lines: Iterable[str], base: "DimensionAssignment | None" = None):
        entries = {}
        for line in lines:
            words = line.split(None, 2)
            if len(words) < 2 or words[0] != "dim":
                raise DimensionError(f"expected 'dim <symbol> M^a L^b T^c', got {line!r}")
            entries[words[1]] = parse_dimension(words[2] if len(words) > 2 else "")
        return (base or cls()).with_entries(entries)


def default_assignment(theta_share: Fraction | int = Fraction(1, 2)) -> DimensionAssignment:
    """Common symbols of the bundled models; ``theta`` takes ``theta_share`` of an action."""
    share = Fraction(theta_share)
    return DimensionAssignment(
        {
            "theta": ACTION**share,
            "thetabar": ACTION ** (1 - share),
            "hbar": ACTION,
            "B": ACTION,
            "eps": ACTION,
            "m": MASS,
            "omega0": TIME**-1,
            "q": LENGTH,
            "x": LENGTH,
            "p": MOMENTUM,
            "k": ENERGY,
            "H": ENERGY,
            "t": TIME,
        }
    )


def superspace_assignment(ps, base: DimensionAssignment) -> DimensionAssignment:
    """Extend ``base`` with ghost and multiplier dimensions forced by superfield homogeneity."""
    theta, thetabar = base["theta"], base["thetabar"]
    entries: dict[str, Dimension] = {}
    for a, coord in enumerate(ps.coordinates):
        phi = base[coord]
        entries[ps.c(a + 1)] = phi / theta
        for b in range(ps.dim):
            if ps.omega[a][b]:
                cbar = ps.cbar(b + 1)
                lam = "lam_" + ps.coordinates[b]
                for name, dim in ((cbar, phi / thetabar), (lam, phi / (theta * thetabar))):
                    if name in entries and entries[name] != dim:
                        raise DimensionError(f"superfields force two dimensions on {name}")
                    entries[name] = dim
    # dotted ghosts: one inverse time per dot
    for dots in (1, 2):
        for a in range(ps.dim):
            entries[ps.c(a + 1, dots)] = entries[ps.c(a + 1)] / TIME**dots
            entries[ps.cbar(a + 1, dots)] = entries[ps.cbar(a + 1)] / TIME**dots
    return base.with_entries(entries)


def _scalar_term_dims(term: tuple, assignment: DimensionAssignment) -> Dimension:
    mono, _ = term
    total = DIMENSIONLESS
    for atom, e in mono:
        total = total * _atom_dims(atom, assignment) ** e
    return total


def _atom_dims(atom, assignment: DimensionAssignment) -> Dimension:
    if isinstance(atom, ImaginaryUnit):
        return DIMENSIONLESS
    if isinstance(atom, Sym):
        return assignment[atom.name] / TIME**atom.dots
    if isinstance(atom, Apply):
        if atom.func == "exp":
            arg = infer_dims(atom.args[0], assignment)
            if not arg.is_dimensionless:
                raise DimensionError(f"exp of dimensionful argument {atom.args[0]} [{arg}]")
            return DIMENSIONLESS
        d = assignment[atom.func]
        for j in atom.partials:
            d = d / infer_dims(atom.args[j - 1], assignment)
        return d
    if isinstance(atom, Delta):
        return infer_dims(atom.arg, assignment) ** -(atom.order + 1)
    raise DimensionError(f"cannot assign a dimension to {atom!r}")


def _homogeneous(items: list[tuple[str, Dimension]]) -> Dimension:
    if not items:
        return DIMENSIONLESS
    first_text, first = items[0]
    for text, d in items[1:]:
        if d != first:
            raise InhomogeneousSumError(first_text, text, first, d)
    return first


def _poly_text(term: tuple) -> str:
    return str(ScalarExpr((term,)))


def infer_dims(expr, assignment: DimensionAssignment) -> Dimension:
    """Dimension of a scalar expression, Grassmann element or :class:`Integral`.

    Sums must be homogeneous; zero is treated as dimensionless.
    """
    if isinstance(expr, Integral):
        d = infer_dims(expr.prefactor, assignment) * infer_dims(expr.integrand, assignment)
        for tok in expr.measures:
            d = d * assignment.measure(tok)
        return d
    if isinstance(expr, GrassmannElement):
        items = []
        for names, c in expr.terms():
            d = infer_dims(c, assignment)
            for g in names:
                d = d * assignment[g]
            label = f"{c} * {' '.join(names)}" if names else str(c)
            items.append((label, d))
        return _homogeneous(items)
    if isinstance(expr, ScalarExpr):
        num = _homogeneous([(_poly_text(t), _scalar_term_dims(t, assignment)) for t in expr.num])
        den = _homogeneous([(_poly_text(t), _scalar_term_dims(t, assignment)) for t in expr.den])
        return num / den
    raise TypeError(f"cannot infer dimensions of {type(expr).__name__}")


@dataclass(frozen=True)
class DimensionVerdict:
    label: str
    dimension: Dimension

    @property
    def ok(self) -> bool:
        return self.dimension.is_dimensionless

    def __str__(self) -> str:
        state = "dimensionless" if self.ok else f"NOT dimensionless [{self.dimension}]"
        return f"{self.label}: {state}"


def check_dimensionless(exponent, assignment: DimensionAssignment, label: str = "") -> DimensionVerdict:
    """Pass iff the exponent is a pure number."""
    if not label and isinstance(exponent, Integral):
        label = exponent.label
    return DimensionVerdict(label or str(exponent), infer_dims(exponent, assignment))
