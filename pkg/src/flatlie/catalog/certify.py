"""Sweep the catalog: build every sample, construct witnesses, re-verify them."""

from __future__ import annotations

import multiprocessing
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .. import constructors
from ..algebra import check_jacobi, is_perfect
from ..flat import (
    EndoValuedMap,
    GradedHom,
    check_n_hom,
    check_p_hom,
    p_hom_from_ifas,
    verify_ifas,
)
from ..textio import dump_algebra, dump_witness
from .families import DEFAULT_GRID, CatalogEntry, format_params

TSV_COLUMNS = ("name", "params", "dim", "perfect", "ifas_status", "ifps_status", "witness_file")

SUM_ROWS = (
    ("A_3_8", ("A_1_1",)), ("A_3_8", ("A_1_1", "A_1_1")), ("A_3_8", ("A_2_1",)),
    ("A_3_9", ("A_1_1",)), ("A_3_9", ("A_1_1", "A_1_1")), ("A_3_9", ("A_2_1",)),
)


@dataclass(frozen=True)
class ReportRow:
    name: str
    params: tuple
    dim: int
    perfect: bool
    ifas_status: str
    ifps_status: str
    witness_file: str = "-"
    witness: object = field(default=None, compare=False, repr=False)
    route: tuple = field(default=(), compare=False)

    @property
    def failed(self) -> bool:
        return self.ifas_status.startswith("FAIL") or self.ifps_status.startswith("FAIL")

    @property
    def params_text(self) -> str:
        return format_params(dict(self.params)) or "-"

    def tsv(self) -> str:
        return "\t".join([self.name, self.params_text, str(self.dim), str(self.perfect).lower(),
                          self.ifas_status, self.ifps_status, self.witness_file])


@dataclass
class CertificationReport:
    rows: list = field(default_factory=list)

    @property
    def failures(self) -> list:
        return [r for r in self.rows if r.failed]

    def to_tsv(self) -> str:
        return "\n".join(["\t".join(TSV_COLUMNS)] + [r.tsv() for r in self.rows]) + "\n"

    def __len__(self):
        return len(self.rows)


def attached_n_hom(key: str | None, algebra, label: str = "") -> GradedHom | None:
    """Build the N-homomorphism named ``key`` and re-source it on ``algebra``."""
    if key is None:
        return None
    if key == "sl2_n_hom":
        f = constructors.sl2_n_hom()
    elif key == "o3_n_hom":
        f = constructors.o3_n_hom()
    elif key == "sl_affine_2":
        f = constructors.sln_affine_n_hom(2)
    else:
        raise KeyError(key)
    if f.source.brackets != algebra.brackets:
        raise AssertionError(f"attached witness does not match the structure constants of {label or algebra.name}")
    return GradedHom(algebra, f.B, f.u, f.xi, f.corner, f.provenance)


def ifps_witness(entry_name: str, algebra, catalog=None) -> GradedHom | None:
    """The N-homomorphism attached to a catalog entry (None if it has none)."""
    from . import DEFAULT
    catalog = catalog or DEFAULT
    if entry_name not in catalog:
        return None
    return attached_n_hom(catalog.entry(entry_name).ifps, algebra, entry_name)


def _fail(exc: Exception) -> str:
    return f"FAIL:{type(exc).__name__}"


def certify_cell(entry: CatalogEntry, sample: dict) -> ReportRow:
    params = tuple(sorted(sample.items()))
    try:
        L = entry.build(sample)
    except Exception as exc:  # a recipe that cannot be built is a report row, not a crash
        return ReportRow(entry.name, params, entry.dim, False, _fail(exc), _fail(exc))
    if check_jacobi(L):
        return ReportRow(entry.name, params, L.dim, False, "FAIL:jacobi", "FAIL:jacobi")
    perfect = is_perfect(L)
    if perfect:
        f = attached_n_hom(entry.ifps, L, entry.name)
        if f is None:
            return ReportRow(entry.name, params, L.dim, True, "no-ifas-cited", "cited-only")
        cert = check_n_hom(L, f)
        return ReportRow(entry.name, params, L.dim, True, "no-ifas-cited",
                         "certified" if cert.ok else f"FAIL:{cert.counterexample.predicate}",
                         witness=f, route=tuple(f.provenance))
    if entry.decomposition is None:
        return ReportRow(entry.name, params, L.dim, False, "FAIL:no-decomposition", "FAIL:no-decomposition")
    try:
        res = constructors.auto_ifas(L, entry.decomposition)
    except Exception as exc:
        return ReportRow(entry.name, params, L.dim, False, _fail(exc), _fail(exc))
    g = res.witness
    ok = verify_ifas(L, g).ok
    ifps = "via-ifas" if ok and check_p_hom(L, p_hom_from_ifas(L, g)).ok else "FAIL:via-ifas"
    return ReportRow(entry.name, params, L.dim, False, "certified" if ok else "FAIL:verify", ifps,
                     witness=g, route=tuple(res.route))


def certify_sum(head: str, tail: Sequence[str]) -> ReportRow:
    """A direct sum with one perfect summand, certified through the reducible-sum route."""
    from . import DEFAULT
    name = "+".join((head,) + tuple(tail))
    L = DEFAULT.lookup(name)
    head_alg = DEFAULT.lookup(head)
    factors = [constructors.Factor(head_alg, n_hom=ifps_witness(head, head_alg))]
    for t in tail:
        e = DEFAULT.entry(t)
        factors.append(constructors.Factor(e.build(), decomposition=e.decomposition))
    try:
        res = constructors.auto_ifas(L, factors=factors)
    except Exception as exc:
        return ReportRow(name, (), L.dim, is_perfect(L), _fail(exc), _fail(exc))
    ok = verify_ifas(L, res.witness).ok
    ifps = "via-ifas" if ok and check_p_hom(L, p_hom_from_ifas(L, res.witness)).ok else "FAIL:via-ifas"
    return ReportRow(name, (), L.dim, False, "certified" if ok else "FAIL:verify", ifps,
                     witness=res.witness, route=tuple(res.route))


_POOL_CELLS: list = []


def _pool_cell(i: int) -> ReportRow:
    # cells are inherited through fork; only the index crosses the process boundary
    return certify_cell(*_POOL_CELLS[i])


def certify_all(dims: Iterable[int], grid: Sequence | None = None, catalog=None,
                include_sums: bool = False, jobs: int = 1) -> CertificationReport:
    """One row per (entry, parameter sample) for entries of the given dimensions."""
    from . import DEFAULT
    catalog = catalog or DEFAULT
    dims = list(dims)
    grid = tuple(Fraction(g) for g in grid) if grid is not None else DEFAULT_GRID
    cells = [(e, s) for e in catalog.entries(dims) for s in e.samples(grid)]
    if jobs > 1 and len(cells) > 1:
        global _POOL_CELLS
        _POOL_CELLS = cells
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as pool:
            rows = list(pool.map(_pool_cell, range(len(cells))))
    else:
        rows = [certify_cell(e, s) for e, s in cells]
    if include_sums:
        rows += [certify_sum(h, t) for h, t in SUM_ROWS if sum(catalog.entry(n).dim for n in (h,) + t) in dims]
    from . import natural_key
    rows.sort(key=lambda r: (natural_key(r.name), r.params))
    return CertificationReport(rows)


def witness_text(row: ReportRow) -> str:
    w = row.witness
    if isinstance(w, EndoValuedMap):
        kind, mats = "ifas", w.mats
    elif isinstance(w, GradedHom):
        kind, mats = "nhom", w.matrices()
    else:
        raise ValueError("row carries no witness")
    name = w.source.name
    return dump_algebra(w.source, name=name) + "\n" + dump_witness(kind, name, mats, row.route)


def witness_filename(row: ReportRow) -> str:
    stem = row.name + (f"__{row.params_text}" if row.params else "")
    return re.sub(r"[^A-Za-z0-9_.=+-]", "_", stem.replace("/", "over")) + ".txt"


def save_report(report: CertificationReport, path=None, witness_dir=None) -> CertificationReport:
    """Write the TSV (if ``path``); with ``witness_dir``, also one witness file per certified row."""
    rows = report.rows
    if witness_dir is not None:
        witness_dir = Path(witness_dir)
        witness_dir.mkdir(parents=True, exist_ok=True)
        out = []
        for r in rows:
            if r.witness is not None and not r.failed:
                fn = witness_dir / witness_filename(r)
                fn.write_text(witness_text(r))
                r = replace(r, witness_file=str(fn))
            out.append(r)
        report = CertificationReport(out)
    if path is not None:
        Path(path).write_text(report.to_tsv())
    return report
