"""Plain-text formats for algebras and witnesses.

Algebra block::

    algebra A_3_1 3
    labels X1 X2 X3          # optional
    c 1 2 3 1                # [X1, X2] contains 1 * X3 (i < j)
    h 1
    z 2 3                    # k1, k2, ... lines give graded layers
    h.h 1                    # optional nested decomposition of the h-block

Witness block::

    witness ifas A_2_1 2
    map 1
    0 0
    0 1
    map 2
    ...

Indices are 1-based in files.  ``#`` starts a comment.  A file may hold any
number of blocks of either kind.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .algebra import GradedDecomposition, LieAlgebra
from .linalg import Matrix, format_rational, parse_rational

WITNESS_KINDS = ("ifas", "phom", "nhom", "extended")


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, source: str = "<input>"):
        self.line = line
        self.source = source
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


@dataclass
class AlgebraRecord:
    algebra: LieAlgebra
    decomposition: GradedDecomposition | None = None
    line: int = 0


@dataclass
class WitnessRecord:
    kind: str
    algebra_name: str
    size: int
    mats: list = field(default_factory=list)
    line: int = 0


@dataclass
class Document:
    algebras: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)

    def algebra(self, name: str) -> AlgebraRecord | None:
        return next((a for a in self.algebras if a.algebra.name == name), None)


_LAYER = re.compile(r"^(h\.)?k(\d+)$")


class _AlgebraBuilder:
    def __init__(self, name, dim, line):
        self.name, self.dim, self.line = name, dim, line
        self.constants = {}
        self.labels = ()
        self.parts = {"": {"h": None, "layers": {}, "z": None}, "h.": {"h": None, "layers": {}, "z": None}}

    def decomposition_for(self, prefix):
        p = self.parts[prefix]
        if p["h"] is None and p["z"] is None and not p["layers"]:
            return None
        n = max(p["layers"], default=0)
        if sorted(p["layers"]) != list(range(1, n + 1)):
            raise ValueError("k-layers must be numbered k1, k2, ... without gaps")
        return GradedDecomposition(p["h"] or (), tuple(p["layers"][m] for m in range(1, n + 1)), p["z"] or ())

    def finish(self, source):
        quads = [(i, j, k, c) for (i, j, k), c in sorted(self.constants.items())]
        try:
            L = LieAlgebra.from_constants(self.name, self.dim, quads, self.labels)
            d = self.decomposition_for("")
            nested = self.decomposition_for("h.")
        except ValueError as exc:
            raise ParseError(str(exc), self.line, source) from None
        if nested is not None:
            if d is None:
                raise ParseError("nested h-decomposition without a decomposition", self.line, source)
            d = GradedDecomposition(d.h, d.layers, d.zprime, nested)
        if d is not None:
            try:
                d.check_partition(self.dim)
            except ValueError as exc:
                raise ParseError(str(exc), self.line, source) from None
        return AlgebraRecord(L, d, self.line)


def parse_document(text: str, source: str = "<input>") -> Document:
    doc = Document()
    alg: _AlgebraBuilder | None = None
    wit: WitnessRecord | None = None
    pending_rows: list | None = None

    def close_algebra():
        nonlocal alg
        if alg is not None:
            doc.algebras.append(alg.finish(source))
            alg = None

    def close_witness(lineno):
        nonlocal wit, pending_rows
        if wit is None:
            return
        if pending_rows is not None and len(pending_rows) != wit.size:
            raise ParseError(f"map {len(wit.mats)} has {len(pending_rows)} rows, expected {wit.size}", lineno, source)
        if pending_rows is not None:
            wit.mats[-1] = Matrix(tuple(pending_rows))
        doc.witnesses.append(wit)
        wit, pending_rows = None, None

    def rationals(tokens, lineno):
        try:
            return [parse_rational(t) for t in tokens]
        except ValueError as exc:
            raise ParseError(str(exc), lineno, source) from None

    def ints(tokens, lineno, upper):
        try:
            vals = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"expected integer indices, got {' '.join(tokens)}", lineno, source) from None
        for v in vals:
            if not 1 <= v <= upper:
                raise ParseError(f"index {v} outside 1..{upper}", lineno, source)
        return vals

    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0]
        if head == "algebra":
            close_algebra()
            close_witness(lineno)
            if len(tok) != 3:
                raise ParseError("expected 'algebra <name> <dim>'", lineno, source)
            dim = ints(tok[2:], lineno, 10 ** 6)[0]
            alg = _AlgebraBuilder(tok[1], dim, lineno)
        elif head == "witness":
            close_algebra()
            close_witness(lineno)
            if len(tok) != 4 or tok[1] not in WITNESS_KINDS:
                raise ParseError(f"expected 'witness <{'|'.join(WITNESS_KINDS)}> <algebra> <m>'", lineno, source)
            wit = WitnessRecord(tok[1], tok[2], ints(tok[3:], lineno, 10 ** 6)[0], [], lineno)
        elif wit is not None:
            if head == "map":
                if pending_rows is not None:
                    if len(pending_rows) != wit.size:
                        raise ParseError(f"map {len(wit.mats)} has {len(pending_rows)} rows, expected {wit.size}",
                                         lineno, source)
                    wit.mats[-1] = Matrix(tuple(pending_rows))
                idx = ints(tok[1:2], lineno, 10 ** 6)
                if len(tok) != 2 or idx[0] != len(wit.mats) + 1:
                    raise ParseError(f"expected 'map {len(wit.mats) + 1}'", lineno, source)
                wit.mats.append(None)
                pending_rows = []
            else:
                if pending_rows is None:
                    raise ParseError("matrix row before any 'map' line", lineno, source)
                row = rationals(tok, lineno)
                if len(row) != wit.size:
                    raise ParseError(f"row has {len(row)} entries, expected {wit.size}", lineno, source)
                if len(pending_rows) == wit.size:
                    raise ParseError("too many rows in map", lineno, source)
                pending_rows.append(tuple(row))
        elif alg is not None:
            if head == "c":
                if len(tok) != 5:
                    raise ParseError("expected 'c <i> <j> <k> <p/q>'", lineno, source)
                i, j, k = ints(tok[1:4], lineno, alg.dim)
                if not i < j:
                    raise ParseError(f"bracket lines need i < j, got {i} {j}", lineno, source)
                key = (i - 1, j - 1, k - 1)
                if key in alg.constants:
                    raise ParseError(f"duplicate constant c {i} {j} {k}", lineno, source)
                alg.constants[key] = rationals(tok[4:], lineno)[0]
            elif head == "labels":
                if len(tok) - 1 != alg.dim:
                    raise ParseError(f"expected {alg.dim} labels", lineno, source)
                alg.labels = tuple(tok[1:])
            elif head in ("h", "z", "h.h", "h.z") or _LAYER.match(head):
                prefix = "h." if head.startswith("h.") else ""
                part = alg.parts[prefix]
                key = head[len(prefix):]
                vals = tuple(i - 1 for i in ints(tok[1:], lineno, alg.dim))
                if key in ("h", "z"):
                    if part[key] is not None:
                        raise ParseError(f"duplicate '{head}' line", lineno, source)
                    part[key] = vals
                else:
                    m = int(_LAYER.match(head).group(2))
                    if m < 1 or m in part["layers"]:
                        raise ParseError(f"bad or duplicate layer '{head}'", lineno, source)
                    part["layers"][m] = vals
            else:
                raise ParseError(f"unknown directive {head!r}", lineno, source)
        else:
            raise ParseError(f"{head!r} outside of an algebra or witness block", lineno, source)
    close_algebra()
    close_witness(lineno)
    return doc


def read_document(path) -> Document:
    path = Path(path)
    return parse_document(path.read_text(), str(path))


def _indices(vals) -> str:
    return " ".join(str(i + 1) for i in vals)


def _decomposition_lines(d: GradedDecomposition, prefix: str = "") -> list[str]:
    out = [f"{prefix}h {_indices(d.h)}".rstrip()]
    out += [f"{prefix}k{m} {_indices(layer)}" for m, layer in enumerate(d.layers, start=1)]
    if d.zprime:
        out.append(f"{prefix}z {_indices(d.zprime)}")
    return out


def dump_algebra(L: LieAlgebra, decomposition: GradedDecomposition | None = None,
                 name: str | None = None) -> str:
    lines = [f"algebra {name or L.name} {L.dim}"]
    if tuple(L.labels) != tuple(f"X{i + 1}" for i in range(L.dim)):
        lines.append("labels " + " ".join(L.labels))
    for (i, j), v in L.brackets:
        for k, c in enumerate(v):
            if c:
                lines.append(f"c {i + 1} {j + 1} {k + 1} {format_rational(c)}")
    if decomposition is not None:
        lines += _decomposition_lines(decomposition)
        if decomposition.h_decomposition is not None:
            lines += _decomposition_lines(decomposition.h_decomposition, "h.")
    return "\n".join(lines) + "\n"


def dump_witness(kind: str, algebra_name: str, mats, comments=()) -> str:
    if kind not in WITNESS_KINDS:
        raise ValueError(f"unknown witness kind {kind!r}")
    size = mats[0].n_rows if mats else 0
    lines = [f"# {c}" for c in comments]
    lines.append(f"witness {kind} {algebra_name} {size}")
    for i, m in enumerate(mats, start=1):
        lines.append(f"map {i}")
        lines += [" ".join(format_rational(x) for x in r) for r in m.rows]
    return "\n".join(lines) + "\n"


def safe_name(name: str) -> str:
    """Algebra names as single whitespace-free tokens."""
    return re.sub(r"\s+", "", name)
