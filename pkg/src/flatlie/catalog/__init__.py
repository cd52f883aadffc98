"""Classification catalog: built-in families, file ingestion, lookup."""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable, Mapping

from ..algebra import (
    GradedDecomposition,
    JacobiError,
    LieAlgebra,
    check_jacobi,
    direct_sum,
    is_nilpotent,
    is_perfect,
    is_solvable,
)
from ..textio import parse_document
from .families import ALIASES, BUILTIN, DEFAULT_GRID, TABLE_DIM5, CatalogEntry, CatalogError, format_params


def natural_key(name: str) -> tuple:
    return tuple(int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name))


class Catalog:
    """Built-in entries plus anything ingested from files (ingested names win)."""

    def __init__(self, entries: Iterable[CatalogEntry] = BUILTIN):
        self._entries: dict[str, CatalogEntry] = {}
        self.add(entries)

    def add(self, entries: Iterable[CatalogEntry]) -> None:
        for e in entries:
            self._entries[e.name] = e

    def entries(self, dims: Iterable[int] | None = None) -> list[CatalogEntry]:
        dims = None if dims is None else set(dims)
        out = [e for e in self._entries.values() if dims is None or e.dim in dims]
        return sorted(out, key=lambda e: natural_key(e.name))

    def __contains__(self, name: str) -> bool:
        return ALIASES.get(name, name) in self._entries

    def entry(self, name: str) -> CatalogEntry:
        key = ALIASES.get(name, name)
        if key not in self._entries:
            raise CatalogError(f"unknown algebra {name!r}")
        return self._entries[key]

    def lookup(self, name: str, params: Mapping | None = None) -> LieAlgebra:
        """Algebra by name; ``A+B`` names give direct sums (parameters only for single names)."""
        parts = name.split("+")
        if len(parts) > 1:
            if params:
                raise ValueError("parameters are not supported for direct-sum names")
            L = self.lookup(parts[0])
            for p in parts[1:]:
                L = direct_sum(L, self.lookup(p))
            return L.renamed(name)
        return self.entry(name).build(params or {})

    def decomposition_for(self, name: str) -> GradedDecomposition:
        key = ALIASES.get(name, name)
        if key in self._entries:
            e = self._entries[key]
            if "perfect" in e.flags:
                raise CatalogError(f"{key} is perfect and has no semidirect decomposition")
            if e.decomposition is None:
                raise CatalogError(f"no decomposition recorded for {key}")
            return e.decomposition
        if key in TABLE_DIM5:
            return TABLE_DIM5[key]
        raise CatalogError(f"unknown algebra {name!r}")


DEFAULT = Catalog()


def lookup(name: str, params: Mapping | None = None, catalog: Catalog | None = None) -> LieAlgebra:
    return (catalog or DEFAULT).lookup(name, params)


def decomposition_for(name: str, catalog: Catalog | None = None) -> GradedDecomposition:
    return (catalog or DEFAULT).decomposition_for(name)


def _flags(L: LieAlgebra) -> frozenset:
    flags = set()
    if is_perfect(L):
        flags.add("perfect")
    if is_solvable(L):
        flags.add("solvable")
    if is_nilpotent(L):
        flags.add("nilpotent")
    return frozenset(flags)


def entries_from_text(text: str, source: str = "<input>") -> list[CatalogEntry]:
    """Catalog entries from algebra blocks; Jacobi is enforced and Table metadata filled in by name."""
    out = []
    for rec in parse_document(text, source).algebras:
        L = rec.algebra
        bad = check_jacobi(L)
        if bad:
            (i, j, k), r = bad[0]
            raise JacobiError(f"{source}:{rec.line}: {L.name} fails Jacobi at ({i + 1},{j + 1},{k + 1})")
        d = rec.decomposition
        if d is None:
            d = TABLE_DIM5.get(L.name)
        quads = tuple((i, j, k, c) for (i, j), v in L.brackets for k, c in enumerate(v) if c)
        out.append(CatalogEntry(
            L.name, L.dim, lambda q=quads: [(i + 1, j + 1, k + 1, c) for i, j, k, c in q],
            decomposition=d, flags=_flags(L), labels=tuple(L.labels)))
    return out


def load_entries(path, catalog: Catalog | None = None) -> list[CatalogEntry]:
    """Ingest entries from a file into the catalog (default: the shared one)."""
    path = Path(path)
    entries = entries_from_text(path.read_text(), str(path))
    (catalog or DEFAULT).add(entries)
    return entries


__all__ = [
    "ALIASES", "BUILTIN", "DEFAULT", "DEFAULT_GRID", "TABLE_DIM5", "Catalog", "CatalogEntry", "CatalogError",
    "decomposition_for", "entries_from_text", "format_params", "load_entries", "lookup", "natural_key",
    "save_report", "certify_all", "CertificationReport",
]

from .certify import CertificationReport, certify_all, save_report  # noqa: E402
