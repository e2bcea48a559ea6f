"""Commuting symbolic expressions with exact rational coefficients.

A :class:`ScalarExpr` is a reduced quotient of two polynomials whose variables
are *atoms*: named symbols (optionally time-differentiated), the imaginary
unit, formal function applications ``F(args)`` with formal partial
derivatives, and formal Dirac distributions ``delta^(n)(u)``.

Canonical form:

* numerator and denominator are fully expanded, terms sorted by a fixed total
  order on atoms;
* the imaginary unit appears with exponent 0 or 1 and never in a denominator;
* numerator and denominator share no common polynomial factor;
* the leading coefficient of the denominator is 1.

Two expressions that are equal as rational functions of their atoms therefore
compare equal with ``==``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import chain
from typing import Callable, Iterable, Mapping, Union

from .errors import (
    ConstructionError,
    CyclicBindingError,
    ScalarZeroDivisionError,
    UnboundSymbolError,
)

Number = Union[int, Fraction]


# --------------------------------------------------------------------------
# atoms


class Atom:
    """Base class of polynomial variables."""

    __slots__ = ()

    @property
    def key(self) -> tuple:  # pragma: no cover - overridden
        raise NotImplementedError


@dataclass(frozen=True)
class ImaginaryUnit(Atom):
    @property
    def key(self) -> tuple:
        return (0,)

    def __str__(self) -> str:
        return "i"


@dataclass(frozen=True)
class Sym(Atom):
    """A named symbol; ``dots`` counts time derivatives (``qdot`` is ``Sym('q', 1)``)."""

    name: str
    dots: int = 0
    timedep: bool = False

    @cached_property
    def key(self) -> tuple:
        return (1, self.name, self.dots, self.timedep)

    def __str__(self) -> str:
        return self.name + "dot" * self.dots


@dataclass(frozen=True)
class Apply(Atom):
    """Formal function application; ``partials`` holds sorted 1-based argument slots."""

    func: str
    args: tuple["ScalarExpr", ...]
    partials: tuple[int, ...] = ()

    @cached_property
    def key(self) -> tuple:
        return (2, self.func, self.partials, tuple(a.key for a in self.args))

    def __str__(self) -> str:
        head = self.func
        if self.partials:
            head = "D[" + ",".join(map(str, self.partials)) + "]" + head
        return f"{head}({', '.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Delta(Atom):
    """Formal ``order``-th derivative of the Dirac distribution at ``arg``."""

    order: int
    arg: "ScalarExpr"

    @cached_property
    def key(self) -> tuple:
        return (3, self.order, self.arg.key)

    def __str__(self) -> str:
        if self.order == 0:
            return f"delta({self.arg})"
        return f"delta^({self.order})({self.arg})"


IMAG = ImaginaryUnit()

# functions whose derivative is the function itself
_SELF_DERIVATIVE = frozenset({"exp"})

Monomial = tuple[tuple[Atom, int], ...]
Poly = dict[Monomial, Fraction]


# --------------------------------------------------------------------------
# polynomial helpers (dict representation)


def _mono_key(m: Monomial) -> tuple:
    return tuple((a.key, e) for a, e in m)


def _term_order(item: tuple[Monomial, Fraction]) -> tuple:
    m = item[0]
    return (-sum(e for _, e in m), _mono_key(m))


def _mono_mul(a: Monomial, b: Monomial) -> tuple[Monomial, int]:
    if not a:
        return b, 1
    if not b:
        return a, 1
    d = dict(a)
    for atom, e in b:
        d[atom] = d.get(atom, 0) + e
    sign = 1
    e = d.get(IMAG, 0)
    if e >= 2:
        if (e // 2) % 2:
            sign = -1
        if e % 2:
            d[IMAG] = 1
        else:
            del d[IMAG]
    return tuple(sorted(d.items(), key=lambda t: t[0].key)), sign


def _padd(a: Mapping, b: Mapping, scale: Fraction = Fraction(1)) -> Poly:
    out: Poly = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pmul(a: Mapping, b: Mapping) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m, s = _mono_mul(ma, mb)
            v = out.get(m, 0) + s * ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def _has_imag(m: Monomial) -> bool:
    return bool(m) and isinstance(m[0][0], ImaginaryUnit)


def _conjugate_imag(p: Mapping) -> Poly:
    return {m: (-c if _has_imag(m) else c) for m, c in p.items()}


def _common_monomial(polys: Iterable[Mapping]) -> dict[Atom, int]:
    common: dict[Atom, int] | None = None
    for p in polys:
        for m in p:
            exps = dict(m)
            if common is None:
                common = exps
            else:
                common = {a: min(e, exps[a]) for a, e in common.items() if a in exps}
            if not common:
                return {}
    return common or {}


def _divide_monomial(p: Mapping, g: Mapping[Atom, int]) -> Poly:
    out: Poly = {}
    for m, c in p.items():
        nm = tuple((a, e - g.get(a, 0)) for a, e in m if e - g.get(a, 0))
        out[nm] = c
    return out


def _sympy_gcd_cancel(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    # multivariate polynomial gcd over QQ; atoms become plain generators
    import sympy

    atoms = sorted({a for m in chain(num, den) for a, _ in m}, key=lambda a: a.key)
    index = {a: i for i, a in enumerate(atoms)}
    gens = sympy.symbols(f"x0:{len(atoms)}")

    def to_sympy(p: Poly):
        data = {}
        for m, c in p.items():
            exps = [0] * len(atoms)
            for a, e in m:
                exps[index[a]] = e
            data[tuple(exps)] = sympy.Rational(c.numerator, c.denominator)
        return sympy.Poly.from_dict(data, *gens, domain=sympy.QQ)

    def from_sympy(p) -> Poly:
        out: Poly = {}
        for exps, c in p.terms():
            m = tuple((atoms[i], e) for i, e in enumerate(exps) if e)
            out[m] = Fraction(int(c.numerator), int(c.denominator))
        return out

    P, Q = to_sympy(num), to_sympy(den)
    g = P.gcd(Q)
    if g.total_degree() == 0:
        return num, den
    return from_sympy(P.exquo(g)), from_sympy(Q.exquo(g))


# --------------------------------------------------------------------------
# expressions

_ONE_POLY: tuple = (((), Fraction(1)),)


class ScalarExpr:
    """Immutable canonical rational function over atoms.

    Build instances with :func:`const`, :func:`symbol`, :func:`apply`,
    :func:`delta` and arithmetic; the constructor is internal.
    """

    __slots__ = ("num", "den", "_hash", "__weakref__")

    def __init__(self, num: tuple, den: tuple = _ONE_POLY):
        self.num = num
        self.den = den
        self._hash = None

    # -- construction -----------------------------------------------------

    @classmethod
    def _from_polys(cls, num: Poly, den: Poly | None = None) -> "ScalarExpr":
        if den is None or (len(den) == 1 and den.get(()) == 1):
            return cls(tuple(sorted(num.items(), key=_term_order)))
        if not den:
            raise ScalarZeroDivisionError("division by zero")
        if not num:
            return ZERO
        if any(_has_imag(m) for m in den):
            conj = _conjugate_imag(den)
            num, den = _pmul(num, conj), _pmul(den, conj)
        g = _common_monomial((num, den))
        if g:
            num, den = _divide_monomial(num, g), _divide_monomial(den, g)
        if len(num) > 1 and len(den) > 1:
            num, den = _sympy_gcd_cancel(num, den)
        lead = min(den.items(), key=_term_order)[1]
        if lead != 1:
            num = {m: c / lead for m, c in num.items()}
            den = {m: c / lead for m, c in den.items()}
        num_t = tuple(sorted(num.items(), key=_term_order))
        if len(den) == 1 and () in den:
            return cls(num_t)
        return cls(num_t, tuple(sorted(den.items(), key=_term_order)))

    # -- structure --------------------------------------------------------

    @property
    def key(self) -> tuple:
        return (
            tuple((_mono_key(m), c) for m, c in self.num),
            tuple((_mono_key(m), c) for m, c in self.den),
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = const(other)
        if not isinstance(other, ScalarExpr):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_polynomial(self) -> bool:
        return self.den == _ONE_POLY

    @property
    def is_constant(self) -> bool:
        return self.is_polynomial and all(not m for m, _ in self.num)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self} is not a rational constant")
        return self.num[0][1] if self.num else Fraction(0)

    def atoms(self) -> set[Atom]:
        """Top-level atoms (arguments of applications are not entered)."""
        return {a for m, _ in chain(self.num, self.den) for a, _ in m}

    def symbols(self) -> set[Sym]:
        """All symbols, including those inside function and delta arguments."""
        out: set[Sym] = set()
        for a in self.atoms():
            if isinstance(a, Sym):
                out.add(a)
            elif isinstance(a, Apply):
                for arg in a.args:
                    out |= arg.symbols()
            elif isinstance(a, Delta):
                out |= a.arg.symbols()
        return out

    def has_formal(self) -> bool:
        return any(isinstance(a, (Apply, Delta)) for a in self.atoms())

    def numerator(self) -> "ScalarExpr":
        return ScalarExpr(self.num)

    def denominator(self) -> "ScalarExpr":
        return ScalarExpr(self.den)

    def terms(self) -> list["ScalarExpr"]:
        """Numerator terms, each divided by the common denominator."""
        d = self.denominator()
        return [ScalarExpr(((m, c),)) / d for m, c in self.num]

    def real_imag(self) -> tuple["ScalarExpr", "ScalarExpr"]:
        """Split into ``(re, im)`` with respect to the formal imaginary unit."""
        re = {m: c for m, c in self.num if not _has_imag(m)}
        im = {m[1:]: c for m, c in self.num if _has_imag(m)}
        den = dict(self.den)
        return ScalarExpr._from_polys(re, den), ScalarExpr._from_polys(im, den)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "ScalarExpr":
        if not isinstance(other, ScalarExpr):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            other = const(other)
        if not self.num:
            return other
        if not other.num:
            return self
        if self.den == other.den:
            if self.den == _ONE_POLY:
                return ScalarExpr._from_polys(_padd(dict(self.num), dict(other.num)))
            return ScalarExpr._from_polys(
                _padd(dict(self.num), dict(other.num)), dict(self.den)
            )
        d1, d2 = dict(self.den), dict(other.den)
        num = _padd(_pmul(dict(self.num), d2), _pmul(dict(other.num), d1))
        return ScalarExpr._from_polys(num, _pmul(d1, d2))

    __radd__ = __add__

    def __neg__(self) -> "ScalarExpr":
        return ScalarExpr(tuple((m, -c) for m, c in self.num), self.den)

    def __sub__(self, other) -> "ScalarExpr":
        if not isinstance(other, (ScalarExpr, int, Fraction)):
            return NotImplemented
        return self + (-as_expr(other))

    def __rsub__(self, other) -> "ScalarExpr":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return as_expr(other) + (-self)

    def __mul__(self, other) -> "ScalarExpr":
        if not isinstance(other, ScalarExpr):
            if isinstance(other, (int, Fraction)):
                if other == 0:
                    return ZERO
                return ScalarExpr(tuple((m, c * other) for m, c in self.num), self.den)
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        num = _pmul(dict(self.num), dict(other.num))
        if self.den == _ONE_POLY and other.den == _ONE_POLY:
            return ScalarExpr._from_polys(num)
        return ScalarExpr._from_polys(num, _pmul(dict(self.den), dict(other.den)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "ScalarExpr":
        if not isinstance(other, (ScalarExpr, int, Fraction)):
            return NotImplemented
        other = as_expr(other)
        if not other.num:
            raise ScalarZeroDivisionError(f"division of {self} by zero")
        return ScalarExpr._from_polys(
            _pmul(dict(self.num), dict(other.den)),
            _pmul(dict(self.den), dict(other.num)),
        )

    def __rtruediv__(self, other) -> "ScalarExpr":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return as_expr(other) / self

    def __pow__(self, n: int) -> "ScalarExpr":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ONE / (self ** (-n))
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- display ----------------------------------------------------------

    def __str__(self) -> str:
        n = _format_poly(self.num)
        if self.den == _ONE_POLY:
            return n
        d = _format_poly(self.den)
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1 or len(self.den[0][0]) > 1 or self.den[0][1] != 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self) -> str:
        return f"ScalarExpr({str(self)!r})"


def _format_atom_power(atom: Atom, e: int) -> str:
    s = str(atom)
    return s if e == 1 else f"{s}^{e}"


def _format_poly(terms: tuple) -> str:
    if not terms:
        return "0"
    parts: list[str] = []
    for i, (m, c) in enumerate(terms):
        mag = abs(c)
        body = "*".join(_format_atom_power(a, e) for a, e in m)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if i == 0:
            parts.append(text if c > 0 else "-" + text)
        else:
            parts.append((" + " if c > 0 else " - ") + text)
    return "".join(parts)


# --------------------------------------------------------------------------
# constructors

ZERO = ScalarExpr(())
ONE = ScalarExpr(_ONE_POLY)
I = ScalarExpr(((((IMAG, 1),), Fraction(1)),))


def const(value: Number | str) -> ScalarExpr:
    v = Fraction(value)
    if v == 0:
        return ZERO
    return ScalarExpr((((), v),))


def as_expr(x) -> ScalarExpr:
    if isinstance(x, ScalarExpr):
        return x
    if isinstance(x, (int, Fraction)):
        return const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a scalar expression")


def atom_expr(atom: Atom) -> ScalarExpr:
    return ScalarExpr(((((atom, 1),), Fraction(1)),))


def symbol(name: str, dots: int = 0, timedep: bool = False) -> ScalarExpr:
    if dots and not timedep:
        raise ConstructionError(f"time derivative of constant symbol {name!r}")
    return atom_expr(Sym(name, dots, timedep))


def apply(func: str, args: Iterable, partials: Iterable[int] = ()) -> ScalarExpr:
    args = tuple(as_expr(a) for a in args)
    partials = tuple(sorted(partials))
    if any(p < 1 or p > len(args) for p in partials):
        raise ConstructionError(f"partial index out of range for {func}/{len(args)}")
    return atom_expr(Apply(func, args, partials))


def delta(arg, order: int = 0) -> ScalarExpr:
    arg = as_expr(arg)
    if order < 0:
        raise ConstructionError("delta derivative order must be >= 0")
    if _contains_delta(arg):
        raise ConstructionError(f"nested delta in argument {arg}")
    return atom_expr(Delta(order, arg))


def _contains_delta(e: ScalarExpr) -> bool:
    for a in e.atoms():
        if isinstance(a, Delta):
            return True
        if isinstance(a, Apply) and any(_contains_delta(x) for x in a.args):
            return True
    return False


def as_sym(s) -> Sym:
    if isinstance(s, Sym):
        return s
    if isinstance(s, ScalarExpr) and s.is_polynomial and len(s.num) == 1:
        m, c = s.num[0]
        if c == 1 and len(m) == 1 and m[0][1] == 1 and isinstance(m[0][0], Sym):
            return m[0][0]
    raise TypeError(f"{s!r} is not a symbol")


# --------------------------------------------------------------------------
# derivations


def _derive(e: ScalarExpr, d_atom: Callable[[Atom], ScalarExpr]) -> ScalarExpr:
    """Apply the derivation whose action on atoms is ``d_atom``."""
    cache: dict[Atom, ScalarExpr] = {}

    def datom(a: Atom) -> ScalarExpr:
        if a not in cache:
            cache[a] = d_atom(a)
        return cache[a]

    def dpoly(terms: tuple) -> ScalarExpr:
        out = ZERO
        for m, c in terms:
            for i, (a, ex) in enumerate(m):
                da = datom(a)
                if da.is_zero:
                    continue
                rest = m[:i] + (((a, ex - 1),) if ex > 1 else ()) + m[i + 1:]
                out = out + ScalarExpr(((rest, c * ex),)) * da
        return out

    dn = dpoly(e.num)
    if e.den == _ONE_POLY:
        return dn
    dd = dpoly(e.den)
    n, d = e.numerator(), e.denominator()
    return (dn * d - n * dd) / (d * d)


def _apply_chain(a: Atom, d: Callable[[ScalarExpr], ScalarExpr]) -> ScalarExpr:
    if isinstance(a, Apply):
        out = ZERO
        for j, arg in enumerate(a.args, start=1):
            darg = d(arg)
            if darg.is_zero:
                continue
            if a.func in _SELF_DERIVATIVE and not a.partials:
                out = out + atom_expr(a) * darg
            else:
                out = out + apply(a.func, a.args, a.partials + (j,)) * darg
        return out
    if isinstance(a, Delta):
        darg = d(a.arg)
        if darg.is_zero:
            return ZERO
        return delta(a.arg, a.order + 1) * darg
    return ZERO


def differentiate(e: ScalarExpr, s) -> ScalarExpr:
    """Partial derivative of ``e`` with respect to the symbol ``s``."""
    s = as_sym(s)

    def d_atom(a: Atom) -> ScalarExpr:
        if isinstance(a, Sym):
            return ONE if a == s else ZERO
        return _apply_chain(a, lambda x: differentiate(x, s))

    return _derive(e, d_atom)


def time_derivative(e: ScalarExpr) -> ScalarExpr:
    """Total d/dt; time-dependent symbols gain one dot, constants are inert."""

    def d_atom(a: Atom) -> ScalarExpr:
        if isinstance(a, Sym):
            return symbol(a.name, a.dots + 1, True) if a.timedep else ZERO
        return _apply_chain(a, time_derivative)

    return _derive(e, d_atom)


# --------------------------------------------------------------------------
# substitution and evaluation


def _rebuild(e: ScalarExpr, atom_value: Callable[[Atom], ScalarExpr | None]) -> ScalarExpr:
    values: dict[Atom, ScalarExpr | None] = {}
    for a in e.atoms():
        values[a] = atom_value(a)
    if all(v is None for v in values.values()):
        return e

    def evaluate(terms: tuple) -> ScalarExpr:
        out = ZERO
        for m, c in terms:
            t = const(c)
            for a, ex in m:
                v = values[a]
                t = t * (atom_expr(a) ** ex if v is None else v**ex)
            out = out + t
        return out

    num = evaluate(e.num)
    if e.den == _ONE_POLY:
        return num
    return num / evaluate(e.den)


def _binding_key(k) -> Sym:
    if isinstance(k, str):
        return Sym(k)
    return as_sym(k)


def substitute(e: ScalarExpr, bindings: Mapping) -> ScalarExpr:
    """Simultaneous substitution ``symbol -> expression`` followed by canonicalization.

    String keys match undotted symbols by name regardless of time dependence.
    """
    by_name: dict[str, ScalarExpr] = {}
    exact: dict[Sym, ScalarExpr] = {}
    for k, v in bindings.items():
        if isinstance(k, str):
            by_name[k] = as_expr(v)
        else:
            exact[as_sym(k)] = as_expr(v)

    def lookup(s: Sym) -> ScalarExpr | None:
        if s in exact:
            return exact[s]
        if s.dots == 0 and s.name in by_name:
            return by_name[s.name]
        return None

    _check_acyclic(exact, by_name, lookup)

    def atom_value(a: Atom) -> ScalarExpr | None:
        if isinstance(a, Sym):
            return lookup(a)
        if isinstance(a, Apply):
            new = tuple(substitute(x, bindings) for x in a.args)
            if new == a.args:
                return None
            return apply(a.func, new, a.partials)
        if isinstance(a, Delta):
            new = substitute(a.arg, bindings)
            return None if new == a.arg else delta(new, a.order)
        return None

    return _rebuild(e, atom_value)


def _check_acyclic(exact: dict, by_name: dict, lookup) -> None:
    graph: dict[str, set[str]] = {}
    values = list(exact.items()) + [(Sym(n), v) for n, v in by_name.items()]
    bound = {str(s) for s, _ in values}
    for s, v in values:
        graph.setdefault(str(s), set()).update(
            str(t) for t in v.symbols() if str(t) in bound and lookup(t) is not None
        )
    state: dict[str, int] = {}

    def visit(node: str) -> None:
        state[node] = 1
        for nxt in graph.get(node, ()):
            if state.get(nxt) == 1:
                raise CyclicBindingError(f"cyclic binding through {nxt!r}")
            if nxt not in state:
                visit(nxt)
        state[node] = 2

    for node in graph:
        if node not in state:
            visit(node)


def eval_gaussian(e: ScalarExpr, point: Mapping) -> tuple[Fraction, Fraction]:
    """Exact value ``(re, im)`` of a formal-free expression at a rational point."""
    values: dict[str, Fraction] = {}
    for k, v in point.items():
        values[k if isinstance(k, str) else str(as_sym(k))] = Fraction(v)

    def poly_value(terms: tuple) -> tuple[Fraction, Fraction]:
        re = im = Fraction(0)
        for m, c in terms:
            v = c
            imag = False
            for a, ex in m:
                if isinstance(a, ImaginaryUnit):
                    imag = True
                    continue
                if isinstance(a, (Apply, Delta)):
                    raise ValueError(f"cannot evaluate formal node {a}")
                name = str(a)
                if name not in values:
                    raise UnboundSymbolError(f"no value for symbol {name!r}")
                v *= values[name] ** ex
            if imag:
                im += v
            else:
                re += v
        return re, im

    nre, nim = poly_value(e.num)
    dre, dim = poly_value(e.den)
    if dim:  # pragma: no cover - canonical denominators are real
        raise AssertionError("imaginary denominator in canonical form")
    if dre == 0:
        raise ScalarZeroDivisionError(f"{e} has a vanishing denominator at {point}")
    return nre / dre, nim / dre


def eval_rational(e: ScalarExpr, point: Mapping) -> Fraction:
    """Exact rational value of ``e``; ``e`` must be real at the point."""
    re, im = eval_gaussian(e, point)
    if im:
        raise ValueError(f"{e} is not real at {point}")
    return re


# --------------------------------------------------------------------------
# one-argument functions used for nilpotent Taylor expansion


class UnaryFunction:
    """A function of one scalar known through its derivatives at a point."""

    name = "f"

    def derivative_at(self, k: int, a: ScalarExpr) -> ScalarExpr:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.name


class DeltaFunction(UnaryFunction):
    name = "delta"

    def derivative_at(self, k, a):
        return delta(a, k)


class ExpFunction(UnaryFunction):
    name = "exp"

    def derivative_at(self, k, a):
        return ONE if a.is_zero else apply("exp", (a,))


class IdentityFunction(UnaryFunction):
    name = "id"

    def derivative_at(self, k, a):
        return a if k == 0 else (ONE if k == 1 else ZERO)


@dataclass(frozen=True)
class ConstantFunction(UnaryFunction):
    value: ScalarExpr = ONE

    def derivative_at(self, k, a):
        return self.value if k == 0 else ZERO


@dataclass(frozen=True)
class FormalFunction(UnaryFunction):
    name: str = "f"

    def derivative_at(self, k, a):
        return apply(self.name, (a,), (1,) * k)


DELTA = DeltaFunction()
EXP = ExpFunction()
IDENTITY = IdentityFunction()
