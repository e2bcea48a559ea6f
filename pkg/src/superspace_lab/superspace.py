"""Superfields over a symplectic phase space and functions of superfields.

For phase-space coordinates ``phi^a`` with symplectic matrix ``omega^{ab}``
the superfield is::

    Phi^a = phi^a + theta c^a + thetabar omega^{ab} cbar_b
            + i thetabar theta omega^{ab} lam_b

``theta``/``thetabar`` and the ghosts ``c^a``/``cbar_a`` (plus their time
derivatives) are Grassmann generators; ``phi`` and ``lam`` are commuting,
time-dependent symbols.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .errors import ConstructionError, UnboundSymbolError
from .grassmann import GeneratorSet, GrassmannElement
from .grassmann import time_derivative as grassmann_time_derivative
from .scalar import (
    I,
    ScalarExpr,
    Sym,
    as_sym,
    atom_expr,
    const,
    differentiate,
    substitute,
    symbol,
)

THETA = "theta"
THETABAR = "thetabar"
# highest time derivative of a ghost that gets its own generator
_GHOST_DOTS = 2


def _exact_inverse(m: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ConstructionError("symplectic matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def _ghost(kind: str, coord: str, dots: int = 0) -> str:
    if not dots:
        return f"{kind}_{coord}"
    return f"{kind}{'d' * (dots - 1)}dot_{coord}"


@dataclass(frozen=True)
class PhaseSpace:
    """Coordinates ``(q_1..q_n, p_1..p_n)`` with an exact symplectic matrix ``omega^{ab}``."""

    coordinates: tuple[str, ...]
    omega: tuple[tuple[int, ...], ...]
    omega_lower: tuple[tuple[Fraction, ...], ...] = field(init=False, repr=False)
    generators: GeneratorSet = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        coords = tuple(self.coordinates)
        dim = len(coords)
        if dim == 0 or dim % 2:
            raise ConstructionError(f"phase space needs an even, positive dimension, got {dim}")
        if len(set(coords)) != dim:
            raise ConstructionError("repeated phase-space coordinate")
        omega = tuple(tuple(int(x) for x in row) for row in self.omega)
        if len(omega) != dim or any(len(r) != dim for r in omega):
            raise ConstructionError("symplectic matrix has the wrong shape")
        if any(omega[a][b] != -omega[b][a] for a in range(dim) for b in range(dim)):
            raise ConstructionError("symplectic matrix is not antisymmetric")
        object.__setattr__(self, "coordinates", coords)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "omega_lower", _exact_inverse(omega))
        object.__setattr__(self, "generators", self._build_generators())

    @classmethod
    def canonical(cls, positions: Sequence[str], momenta: Sequence[str]) -> "PhaseSpace":
        """Block form with ``omega^{q_i p_i} = +1`` and ``omega^{p_i q_i} = -1``."""
        n = len(positions)
        if len(momenta) != n:
            raise ConstructionError("need as many momenta as positions")
        dim = 2 * n
        omega = [[0] * dim for _ in range(dim)]
        for i in range(n):
            omega[i][n + i] = 1
            omega[n + i][i] = -1
        return cls(tuple(positions) + tuple(momenta), tuple(map(tuple, omega)))

    @property
    def n(self) -> int:
        return len(self.coordinates) // 2

    @property
    def dim(self) -> int:
        return len(self.coordinates)

    def index(self, a) -> int:
        """0-based slot of ``a``: a coordinate name or a 1-based integer index."""
        if isinstance(a, str):
            try:
                return self.coordinates.index(a)
            except ValueError:
                raise ConstructionError(f"{a!r} is not a phase-space coordinate") from None
        if not 1 <= a <= self.dim:
            raise ConstructionError(f"superfield index {a} outside 1..{self.dim}")
        return a - 1

    def phi(self, a, dots: int = 0) -> ScalarExpr:
        return symbol(self.coordinates[self.index(a)], dots, True)

    def lam(self, a, dots: int = 0) -> ScalarExpr:
        return symbol("lam_" + self.coordinates[self.index(a)], dots, True)

    def c(self, a, dots: int = 0) -> str:
        return _ghost("c", self.coordinates[self.index(a)], dots)

    def cbar(self, a, dots: int = 0) -> str:
        return _ghost("cbar", self.coordinates[self.index(a)], dots)

    def ghost_names(self) -> set[str]:
        return set(self.generators.names) - {THETA, THETABAR}

    def lam_names(self) -> set[str]:
        return {"lam_" + c for c in self.coordinates}

    def _build_generators(self) -> GeneratorSet:
        names = [THETA, THETABAR]
        derivs = {}
        for dots in range(_GHOST_DOTS + 1):
            for kind in ("c", "cbar"):
                for coord in self.coordinates:
                    names.append(_ghost(kind, coord, dots))
                    if dots:
                        derivs[_ghost(kind, coord, dots - 1)] = _ghost(kind, coord, dots)
        # canonical order: theta < thetabar < c^1..c^2n < cbar_1..cbar_2n < dotted ghosts
        return GeneratorSet(names, derivs)


@dataclass(frozen=True)
class Superfield:
    phase_space: PhaseSpace
    index: int
    element: GrassmannElement

    @property
    def coordinate(self) -> str:
        return self.phase_space.coordinates[self.index]

    @property
    def body(self) -> ScalarExpr:
        return self.element.body

    def __str__(self) -> str:
        return f"Phi^{self.coordinate} = {self.element}"


def build_superfield(ps: PhaseSpace, a) -> Superfield:
    """Assemble the superfield of coordinate ``a`` (name or 1-based index)."""
    ia = ps.index(a)
    gens = ps.generators
    el = GrassmannElement.scalar(gens, ps.phi(ia + 1))
    el = el + GrassmannElement.monomial(gens, [THETA, ps.c(ia + 1)])
    for b in range(ps.dim):
        w = ps.omega[ia][b]
        if w:
            el = el + GrassmannElement.monomial(gens, [THETABAR, ps.cbar(b + 1)], w)
            el = el + GrassmannElement.monomial(gens, [THETABAR, THETA], I * w * ps.lam(b + 1))
    return Superfield(ps, ia, el)


def superfields(ps: PhaseSpace) -> list[Superfield]:
    return [build_superfield(ps, a + 1) for a in range(ps.dim)]


def time_derivative(s: Superfield | GrassmannElement) -> GrassmannElement:
    """Componentwise d/dt; ``theta`` and ``thetabar`` are time independent."""
    el = s.element if isinstance(s, Superfield) else s
    return grassmann_time_derivative(el)


def set_to_zero(
    el: GrassmannElement, generators: Iterable[str] = (), symbols: Iterable[str] = ()
) -> GrassmannElement:
    """Drop every monomial containing ``generators`` and set ``symbols`` to zero."""
    mask = 0
    for g in generators:
        mask |= 1 << el.gens.index(g)
    bindings = {s: 0 for s in symbols}
    terms = {}
    for m, c in el.items():
        if m & mask:
            continue
        terms[m] = substitute(c, bindings) if bindings else c
    return GrassmannElement(el.gens, terms)


def field_map(fields: Sequence[Superfield], velocities: bool = True) -> dict[Sym, GrassmannElement]:
    """Symbols ``phi^a`` (and ``phidot^a``) mapped to their superfields."""
    out: dict[Sym, GrassmannElement] = {}
    for f in fields:
        phi = as_sym(f.phase_space.phi(f.index + 1))
        out[phi] = f.element
        if velocities:
            out[Sym(phi.name, 1, True)] = time_derivative(f)
    return out


def taylor_terms(
    F: ScalarExpr, fields: Mapping[Sym, GrassmannElement], order: int | None = None
) -> list[GrassmannElement]:
    """Order-by-order Taylor terms of ``F`` evaluated on ``fields``.

    Term ``k`` is ``(1/k!) (N . grad)^k F`` with ``N`` the soul of each field.
    Without ``order`` the list stops at the last non-vanishing term; with it,
    exactly ``order + 1`` terms are returned (trailing zeros included).
    """
    if not fields:
        raise ConstructionError("no fields to expand on")
    gens = next(iter(fields.values())).gens
    souls = {s: el.soul for s, el in fields.items()}
    bodies = {s: el.body for s, el in fields.items() if el.body != atom_expr(s)}

    current = GrassmannElement.scalar(gens, F)
    terms = [current]
    k = 0
    while order is None or k < order:
        k += 1
        nxt = GrassmannElement(gens)
        for s, n in souls.items():
            if n.is_zero:
                continue
            d = current.map_coefficients(lambda c, s=s: differentiate(c, s))
            if not d.is_zero:
                nxt = nxt + n * d
        current = nxt
        if current.is_zero and order is None:
            break
        terms.append(current / factorial(k))
    if bodies:
        terms = [t.map_coefficients(lambda c: substitute(c, bodies)) for t in terms]
    return terms


def _check_symbols(F: ScalarExpr, fields: Mapping[Sym, GrassmannElement]) -> None:
    for s in F.symbols():
        if s.timedep and s not in fields:
            raise UnboundSymbolError(f"{s} is not a field of this expansion")


def expand_function(F: ScalarExpr, fields: Mapping[Sym, GrassmannElement]) -> GrassmannElement:
    """``F(Phi)`` for an arbitrary symbol-to-superfield map."""
    _check_symbols(F, fields)
    total = GrassmannElement(next(iter(fields.values())).gens)
    for t in taylor_terms(F, fields):
        total = total + t
    return total


def superfield_of_function(
    F: ScalarExpr, fields: Sequence[Superfield], velocities: bool = True
) -> GrassmannElement:
    """Replace every phase-space symbol of ``F`` (and its velocity) by its superfield."""
    return expand_function(F, field_map(fields, velocities))


def phase_space_lagrangian(ps: PhaseSpace, H: ScalarExpr) -> ScalarExpr:
    """First-order Lagrangian ``1/2 phi^a omega_{ab} phidot^b - H``."""
    kinetic = const(0)
    for a in range(ps.dim):
        for b in range(ps.dim):
            w = ps.omega_lower[a][b]
            if w:
                kinetic = kinetic + ps.phi(a + 1) * ps.phi(b + 1, dots=1) * w
    return kinetic * Fraction(1, 2) - H


__all__ = [
    "PhaseSpace",
    "Superfield",
    "THETA",
    "THETABAR",
    "build_superfield",
    "expand_function",
    "field_map",
    "phase_space_lagrangian",
    "set_to_zero",
    "superfield_of_function",
    "superfields",
    "taylor_terms",
    "time_derivative",
]
