"""Finite exterior algebra over named anticommuting generators.

Elements are sums ``coeff * g1 g2 ... gk`` with generators in ascending
canonical order and :class:`~superspace_lab.scalar.ScalarExpr` coefficients.
Monomials are stored as bit masks over the generator set; the sign picked up
when reordering a product into canonical order is absorbed into the
coefficient.

Conventions used throughout:

* derivatives and Berezin integrals act from the left;
* a measure written ``d(x1) d(x2) ... d(xk)`` integrates over ``xk`` first,
  so ``berezin_integrate(e, ["theta", "thetabar"])`` applies the
  ``thetabar`` derivative before the ``theta`` one and
  ``int dtheta dthetabar (thetabar theta) = 1``.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import GeneratorError, NotInvertibleError, ParityError
from .scalar import ONE, ZERO, ScalarExpr, UnaryFunction, as_expr
from .scalar import time_derivative as scalar_time_derivative


class GeneratorSet:
    """Ordered, immutable list of anticommuting generator names.

    ``derivatives`` optionally maps a generator to the generator standing for
    its time derivative (``c_q -> cdot_q``); generators absent from the map
    are time independent.
    """

    __slots__ = ("names", "_index", "derivatives")

    def __init__(self, names: Iterable[str], derivatives: Mapping[str, str] | None = None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise GeneratorError(f"repeated generator name in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        self.derivatives = dict(derivatives or {})
        for src, dst in self.derivatives.items():
            if src not in self._index or dst not in self._index:
                raise GeneratorError(f"derivative map {src}->{dst} leaves the generator set")

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GeneratorSet)
            and self.names == other.names
            and self.derivatives == other.derivatives
        )

    def __hash__(self) -> int:
        return hash((self.names, tuple(sorted(self.derivatives.items()))))

    def __repr__(self) -> str:
        return f"GeneratorSet({list(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise GeneratorError(f"unknown generator {name!r}") from None

    def names_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.names[i] for i in _bits(mask))


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _reorder_sign(a: int, b: int) -> int:
    """Sign of moving the generators of ``b`` past the later ones of ``a``."""
    swaps = 0
    for j in _bits(b):
        swaps += _popcount(a >> (j + 1))
    return -1 if swaps & 1 else 1


def _mask_order(mask: int) -> tuple:
    return (_popcount(mask), _bits(mask))


def _ordered_product_mask(gens: GeneratorSet, names: Sequence[str]) -> tuple[int, int]:
    """Mask and sign of the written product ``names[0] names[1] ...`` (sign 0 if it vanishes)."""
    mask, sign = 0, 1
    for n in names:
        bit = 1 << gens.index(n)
        if mask & bit:
            return 0, 0
        sign *= _reorder_sign(mask, bit)
        mask |= bit
    return mask, sign


class GrassmannElement:
    """Immutable element of the exterior algebra over ``gens``."""

    __slots__ = ("gens", "_terms", "_hash")

    def __init__(self, gens: GeneratorSet, terms: Mapping[int, object] | None = None):
        self.gens = gens
        clean: dict[int, ScalarExpr] = {}
        for mask, c in (terms or {}).items():
            c = as_expr(c)
            if not c.is_zero:
                clean[mask] = c
        self._terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def scalar(cls, gens: GeneratorSet, value) -> "GrassmannElement":
        return cls(gens, {0: value})

    @classmethod
    def generator(cls, gens: GeneratorSet, name: str) -> "GrassmannElement":
        return cls(gens, {1 << gens.index(name): ONE})

    @classmethod
    def monomial(cls, gens: GeneratorSet, names: Sequence[str], coeff=ONE) -> "GrassmannElement":
        """``coeff * names[0] names[1] ...`` written in the given order."""
        mask, sign = _ordered_product_mask(gens, names)
        if sign == 0:
            return cls(gens)
        return cls(gens, {mask: as_expr(coeff) * sign})

    # -- inspection ----------------------------------------------------------

    def items(self) -> Iterator[tuple[int, ScalarExpr]]:
        """``(mask, coefficient)`` pairs in canonical subset order."""
        for mask in sorted(self._terms, key=_mask_order):
            yield mask, self._terms[mask]

    def terms(self) -> Iterator[tuple[tuple[str, ...], ScalarExpr]]:
        for mask, c in self.items():
            yield self.gens.names_of(mask), c

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def body(self) -> ScalarExpr:
        return self._terms.get(0, ZERO)

    @property
    def soul(self) -> "GrassmannElement":
        return GrassmannElement(self.gens, {m: c for m, c in self._terms.items() if m})

    def coefficient(self, *names: str) -> ScalarExpr:
        """Coefficient of the product ``names`` as written (sign-adjusted)."""
        mask, sign = _ordered_product_mask(self.gens, names)
        if sign == 0:
            return ZERO
        return self._terms.get(mask, ZERO) * sign

    def generators_present(self) -> set[str]:
        out: set[str] = set()
        for mask in self._terms:
            out.update(self.gens.names_of(mask))
        return out

    def degrees(self) -> set[int]:
        return {_popcount(m) for m in self._terms}

    @property
    def parity(self) -> int | None:
        """0 for even, 1 for odd, None for a mixed element (zero counts as even)."""
        par = {d % 2 for d in self.degrees()}
        if not par:
            return 0
        return par.pop() if len(par) == 1 else None

    @property
    def is_even(self) -> bool:
        return self.parity == 0

    @property
    def is_odd(self) -> bool:
        return self.parity == 1 and not self.is_zero

    @property
    def is_scalar(self) -> bool:
        return all(m == 0 for m in self._terms)

    def map_coefficients(self, fn: Callable[[ScalarExpr], ScalarExpr]) -> "GrassmannElement":
        return GrassmannElement(self.gens, {m: fn(c) for m, c in self._terms.items()})

    # -- algebra -------------------------------------------------------------

    def _coerce(self, other) -> "GrassmannElement":
        if isinstance(other, GrassmannElement):
            if other.gens != self.gens:
                raise GeneratorError("elements live over different generator sets")
            return other
        return GrassmannElement.scalar(self.gens, as_expr(other))

    def __add__(self, other) -> "GrassmannElement":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return GrassmannElement(self.gens, terms)

    __radd__ = __add__

    def __neg__(self) -> "GrassmannElement":
        return GrassmannElement(self.gens, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "GrassmannElement":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "GrassmannElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "GrassmannElement":
        if isinstance(other, GrassmannElement):
            return gmul(self, other)
        try:
            s = as_expr(other)
        except TypeError:
            return NotImplemented
        return GrassmannElement(self.gens, {m: c * s for m, c in self._terms.items()})

    def __rmul__(self, other) -> "GrassmannElement":
        try:
            s = as_expr(other)
        except TypeError:
            return NotImplemented
        return GrassmannElement(self.gens, {m: s * c for m, c in self._terms.items()})

    def __truediv__(self, other) -> "GrassmannElement":
        s = as_expr(other)
        return GrassmannElement(self.gens, {m: c / s for m, c in self._terms.items()})

    def __pow__(self, n: int) -> "GrassmannElement":
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = GrassmannElement.scalar(self.gens, ONE)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, GrassmannElement):
            return self.gens == other.gens and self._terms == other._terms
        if isinstance(other, (int, Fraction, ScalarExpr)):
            other = as_expr(other)
            if other.is_zero:
                return not self._terms
            return set(self._terms) == {0} and self._terms[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self._terms.items())))
        return self._hash

    # -- text ----------------------------------------------------------------

    def to_text(self) -> str:
        """Canonical serialization: one ``coeff * g1 g2 ...`` line per monomial."""
        if not self._terms:
            return "0"
        lines = []
        for names, c in self.terms():
            lines.append(f"{c} * {' '.join(names)}" if names else f"{c}")
        return "\n".join(lines)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for names, c in self.terms():
            neg = len(c.num) == 1 and c.num[0][1] < 0
            mag = -c if neg else c
            cs = str(mag)
            if names:
                if len(mag.num) > 1:
                    cs = f"({cs})"
                text = " ".join(names) if cs == "1" else f"{cs}*{' '.join(names)}"
            else:
                text = cs
            if not out:
                out = "-" + text if neg else text
            else:
                out += (" - " if neg else " + ") + text
        return out

    def __repr__(self) -> str:
        return f"GrassmannElement({str(self)!r})"


# --------------------------------------------------------------------------
# operations


def gmul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    """Exterior product; reordering signs are absorbed into coefficients."""
    if a.gens != b.gens:
        raise GeneratorError("cannot multiply elements over different generator sets")
    terms: dict[int, ScalarExpr] = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            if ma & mb:
                continue
            m = ma | mb
            c = ca * cb
            if _reorder_sign(ma, mb) < 0:
                c = -c
            terms[m] = terms[m] + c if m in terms else c
    return GrassmannElement(a.gens, terms)


def left_derivative(e: GrassmannElement, g: str) -> GrassmannElement:
    """Left derivative: move ``g`` to the front of each monomial, then strip it."""
    i = e.gens.index(g)
    bit = 1 << i
    below = bit - 1
    terms = {}
    for m, c in e._terms.items():
        if m & bit:
            terms[m & ~bit] = -c if _popcount(m & below) & 1 else c
    return GrassmannElement(e.gens, terms)


def berezin_integrate(e: GrassmannElement, vars: Sequence[str]) -> GrassmannElement:
    """Iterated Berezin integral for the measure ``d(vars[0]) ... d(vars[-1])``.

    The innermost (last written) differential acts first.
    """
    vars = list(vars)
    if len(set(vars)) != len(vars):
        raise GeneratorError(f"repeated integration variable in {vars}")
    for v in reversed(vars):
        e = left_derivative(e, v)
    return e


def grassmann_delta(gens: GeneratorSet, g: str) -> GrassmannElement:
    """The Grassmann delta function, which is the generator itself."""
    return GrassmannElement.generator(gens, g)


def _require_even(x: GrassmannElement, what: str) -> None:
    if not x.is_even:
        raise ParityError(f"{what} needs an even element, got {x}")


def invert_even(x: GrassmannElement) -> GrassmannElement:
    """Inverse of an even element with non-vanishing body via the nilpotent geometric series."""
    _require_even(x, "invert_even")
    body = x.body
    if body.is_zero:
        raise NotInvertibleError(f"{x} has zero body and is not invertible")
    u = x.soul / body
    result = GrassmannElement.scalar(x.gens, ONE)
    power = result
    while True:
        power = -(power * u)
        if power.is_zero:
            break
        result = result + power
    return result / body


def expand_even_function(f: UnaryFunction, x: GrassmannElement) -> GrassmannElement:
    """``sum_k f^(k)(body) * soul^k / k!``, exact because the soul is nilpotent."""
    _require_even(x, "expand_even_function")
    a, n = x.body, x.soul
    result = GrassmannElement(x.gens)
    power = GrassmannElement.scalar(x.gens, ONE)
    k = 0
    while not power.is_zero:
        coeff = f.derivative_at(k, a)
        if not coeff.is_zero:
            result = result + power * (coeff / factorial(k))
        power = power * n
        k += 1
    return result


def time_derivative(e: GrassmannElement) -> GrassmannElement:
    """d/dt acting on coefficients and on generators listed in ``gens.derivatives``."""
    gens = e.gens
    out = e.map_coefficients(scalar_time_derivative)
    for mask, c in e._terms.items():
        names = gens.names_of(mask)
        for i, g in enumerate(names):
            dg = gens.derivatives.get(g)
            if dg is None:
                continue
            written = names[:i] + (dg,) + names[i + 1:]
            out = out + GrassmannElement.monomial(gens, written, c)
    return out
