"""Model files: declarations, one Lagrangian or Hamiltonian, optional sections.

::

    # harmonic oscillator
    const m omega0
    var q p
    H = p^2/(2*m) + m*omega0^2*q^2/2
    dim omega0 T^-1

    [lattice]
    steps = 64
    t_total = 1.0

    [bigaction]
    mass_kg = 1
    age_s = 1

``var`` names form the phase space in declaration order: the first half are
positions, the second half their conjugate momenta.  ``L = ...`` gives a
phase-space Lagrangian directly; ``H = ...`` gives ``1/2 phi omega phidot - H``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .dimensions import (
    Dimension,
    DimensionAssignment,
    default_assignment,
    parse_dimension,
    superspace_assignment,
)
from .errors import ModelFileError, ParseError, SuperspaceError
from .lattice import BigActionInput, LatticeConfig
from .parser import SymbolTable, parse
from .scalar import ScalarExpr
from .superspace import PhaseSpace, phase_space_lagrangian

_LATTICE_KEYS = {"steps": int, "t_total": float, "m": float, "omega0": float, "hbar": float}
# endpoints and initial momentum are accepted too, though not required
_LATTICE_EXTRA = {"x_i": float, "x_f": float, "p_i": float}
_BIGACTION_KEYS = ("mass_kg", "age_s")


@dataclass
class ModelFile:
    path: str
    table: SymbolTable
    phase_space: PhaseSpace
    lagrangian: ScalarExpr
    hamiltonian: ScalarExpr | None = None
    dims: dict[str, Dimension] = field(default_factory=dict)
    lattice: LatticeConfig | None = None
    bigaction: BigActionInput | None = None

    def assignment(self) -> DimensionAssignment:
        return superspace_assignment(self.phase_space, default_assignment().with_entries(self.dims))


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _number(text: str, kind, path: str, lineno: int):
    try:
        return kind(text)
    except ValueError:
        raise ModelFileError(f"cannot read {text!r} as {kind.__name__}", path, lineno) from None


def parse_model(text: str, path: str = "<model>") -> ModelFile:
    table = SymbolTable()
    section = None
    equation: tuple[str, str, int, int] | None = None
    dims: dict[str, Dimension] = {}
    lattice: dict[str, object] = {}
    big: dict[str, str] = {}
    seen_sections: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in ("lattice", "bigaction"):
                raise ModelFileError(f"unknown section [{section}]", path, lineno)
            if section in seen_sections:
                raise ModelFileError(f"section [{section}] given twice", path, lineno)
            seen_sections.add(section)
            continue
        if section is not None:
            key, sep, value = (s.strip() for s in line.partition("="))
            if not sep or not value:
                raise ModelFileError(f"expected 'key = value' in [{section}]", path, lineno)
            if section == "lattice":
                kind = _LATTICE_KEYS.get(key) or _LATTICE_EXTRA.get(key)
                if kind is None:
                    raise ModelFileError(f"unknown [lattice] key {key!r}", path, lineno)
                lattice[key] = _number(value, kind, path, lineno)
            else:
                if key not in _BIGACTION_KEYS:
                    raise ModelFileError(f"unknown [bigaction] key {key!r}", path, lineno)
                big[key] = value
            continue
        head = line.split()[0]
        if head == "dim":
            words = line.split(None, 2)
            if len(words) < 2:
                raise ModelFileError("expected 'dim <symbol> M^a L^b T^c'", path, lineno)
            try:
                dims[words[1]] = parse_dimension(words[2] if len(words) > 2 else "1")
            except SuperspaceError as exc:
                raise ModelFileError(str(exc), path, lineno) from None
            continue
        lhs, sep, rhs = line.partition("=")
        if sep and lhs.strip() in ("L", "H"):
            if equation is not None:
                raise ModelFileError("only one Lagrangian or Hamiltonian per file", path, lineno)
            equation = (lhs.strip(), rhs, lineno, raw.index("=") + 1)
            continue
        try:
            if not table.declare_line(line):
                raise ModelFileError(f"cannot read line {line!r}", path, lineno)
        except SuperspaceError as exc:
            if isinstance(exc, ModelFileError):
                raise
            raise ModelFileError(str(exc), path, lineno) from None

    if equation is None:
        raise ModelFileError("no 'L = ...' or 'H = ...' line", path)
    kind, rhs, lineno, offset = equation
    try:
        expr = parse(rhs, table)
    except ParseError as exc:
        raise ModelFileError(f"column {exc.column + offset}: {exc.message}", path, lineno) from None

    coords = table.of_kind("var")
    if not coords or len(coords) % 2:
        raise ModelFileError(f"need an even number of 'var' coordinates, got {len(coords)}", path)
    half = len(coords) // 2
    try:
        ps = PhaseSpace.canonical(coords[:half], coords[half:])
    except SuperspaceError as exc:
        raise ModelFileError(str(exc), path) from None
    if kind == "H":
        H, L = expr, phase_space_lagrangian(ps, expr)
    else:
        H, L = None, expr

    cfg = None
    if "lattice" in seen_sections:
        try:
            cfg = LatticeConfig(**lattice)
        except SuperspaceError as exc:
            raise ModelFileError(str(exc), path) from None
    bai = None
    if "bigaction" in seen_sections:
        missing = [k for k in _BIGACTION_KEYS if k not in big]
        if missing:
            raise ModelFileError(f"[bigaction] lacks {', '.join(missing)}", path)
        try:
            bai = BigActionInput(big["mass_kg"], big["age_s"])
        except (ValueError, ZeroDivisionError, SuperspaceError) as exc:
            raise ModelFileError(f"[bigaction]: {exc}", path) from None
    return ModelFile(path, table, ps, L, H, dims, cfg, bai)


def load_model(path: str | Path) -> ModelFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ModelFileError(f"cannot read file: {exc}", str(p)) from None
    return parse_model(text, str(p))

