"""Command-line interface.

Exit codes: 0 when everything passes, 1 when a verification fails, 2 for
usage, parse and lookup errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import constructors
from .algebra import GradedDecomposition, LieAlgebra, check_jacobi, is_perfect
from .catalog import DEFAULT, Catalog, CatalogError, load_entries
from .catalog.certify import attached_n_hom, certify_all, save_report
from .catalog.families import DEFAULT_GRID
from .flat import (
    CertificationError,
    Counterexample,
    EndoValuedMap,
    GradedHom,
    PreconditionError,
    WitnessCertificate,
    check_n_hom,
    check_p_hom,
    normalize_to_n,
    verify_ifas,
    with_line,
)
from .linalg import DimensionError, format_vector, parse_rational
from .textio import ParseError, dump_algebra, dump_witness, read_document

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad command-line input; reported on stderr with exit code 2."""


# -- shared helpers --------------------------------------------------------

def _catalog(args) -> Catalog:
    cat = Catalog()
    cat.add(DEFAULT.entries())
    for path in getattr(args, "entries", None) or ():
        load_entries(path, cat)
    return cat


def _params(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"expected k=v, got {item!r}")
        try:
            out[key.strip()] = parse_rational(value.strip())
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return out


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


@dataclass
class Target:
    algebra: LieAlgebra
    decomposition: GradedDecomposition | None = None
    parts: tuple = ()  # catalog names of the direct summands, when known


def _resolve(name: str, cat: Catalog, params: dict) -> Target:
    """An algebra from a file (first algebra block) or a catalog name, ``A+B`` sums included."""
    path = Path(name)
    if path.is_file():
        doc = read_document(path)
        if not doc.algebras:
            raise UsageError(f"{name}: no algebra block")
        rec = doc.algebras[0]
        return Target(rec.algebra, rec.decomposition)
    parts = tuple(name.split("+"))
    if len(parts) > 1:
        return Target(cat.lookup(name, params), None, parts)
    entry = cat.entry(name)
    L = entry.build(params)
    return Target(L, entry.decomposition, (entry.name,))


def _algebra_for(witness_name: str, docs, cat: Catalog) -> LieAlgebra:
    for doc in docs:
        rec = doc.algebra(witness_name)
        if rec is not None:
            return rec.algebra
    m = re.fullmatch(r"(.+)\[(.*)\]", witness_name)
    if m:
        return cat.lookup(m.group(1), _params(m.group(2).split(",")))
    return cat.lookup(witness_name)


# -- jacobi ------------------------------------------------------------------

def cmd_jacobi(args) -> int:
    doc = read_document(args.file)
    if not doc.algebras:
        raise UsageError(f"{args.file}: no algebra block")
    status = OK
    for rec in doc.algebras:
        L = rec.algebra
        bad = check_jacobi(L)
        if bad:
            (i, j, k), residual = bad[0]
            print(f"FAIL {L.name} jacobi at ({i + 1},{j + 1},{k + 1}): residual {format_vector(residual)}")
            status = FAILED
        else:
            print(f"PASS {L.name} jacobi")
    return status


# -- verify ------------------------------------------------------------------

def _traceless_failure(L: LieAlgebra, mats, kind: str) -> WitnessCertificate | None:
    for i, m in enumerate(mats):
        if m.trace() != 0:
            return WitnessCertificate(kind, L.name, (), Counterexample("traceless", (i,), (m.trace(),)))
    return None


def certify_witness(L: LieAlgebra, kind: str, mats) -> WitnessCertificate:
    """Certificate for raw witness matrices of the given kind on L."""
    if kind == "extended":
        kind, L = "ifas", with_line(L)
    if kind == "ifas":
        return verify_ifas(L, EndoValuedMap(L, tuple(mats)))
    cname = "p-hom" if kind == "phom" else "n-hom"
    bad = _traceless_failure(L, mats, cname)
    if bad is not None:
        return bad
    f = GradedHom.from_assembled(L, mats)
    return check_p_hom(L, f) if kind == "phom" else check_n_hom(L, f)


def cmd_verify(args) -> int:
    cat = _catalog(args)
    files = args.files
    if len(files) > 2:
        raise UsageError("verify takes at most an algebra file and a witness file")
    docs = [read_document(p) for p in files]
    witness_doc = docs[-1]
    if not witness_doc.witnesses:
        raise UsageError(f"{files[-1]}: no witness block")
    status = OK
    for w in witness_doc.witnesses:
        L = _algebra_for(w.algebra_name, docs, cat)
        kind = args.kind or w.kind
        cert = certify_witness(L, kind, w.mats)
        print(cert)
        if not cert.ok:
            status = FAILED
    return status


# -- construct ---------------------------------------------------------------

CONSTRUCTOR_NAMES = {
    "auto": "auto", "auto_ifas": "auto",
    "semidirect": "semidirect", "semidirect_ifas": "semidirect",
    "reducible-sum": "reducible-sum", "reducible_sum_ifas": "reducible-sum",
    "line-sum": "line-sum", "direct_sum_plus_line_ifps": "line-sum",
    "extension": "extension", "ifps_to_ifas_extension": "extension",
    "n-hom": "n-hom",
}


@dataclass
class Construction:
    algebra: LieAlgebra
    kind: str
    mats: tuple
    certificate: WitnessCertificate
    explain: tuple
    decomposition: GradedDecomposition | None = None


def _factors(target: Target, cat: Catalog) -> list:
    out = []
    for name in target.parts:
        entry = cat.entry(name)
        alg = entry.build()
        if is_perfect(alg):
            out.append(constructors.Factor(alg, n_hom=attached_n_hom(entry.ifps, alg, name)))
        else:
            out.append(constructors.Factor(alg, decomposition=cat.decomposition_for(name)))
    return out


def _n_hom_of(target: Target, cat: Catalog) -> GradedHom:
    if len(target.parts) != 1:
        raise UsageError("an N-homomorphism is only attached to single catalog entries")
    f = attached_n_hom(cat.entry(target.parts[0]).ifps, target.algebra, target.parts[0])
    if f is None:
        raise UsageError(f"{target.algebra.name} carries no projective witness")
    return f


def _ifas(L, g, explain, d=None) -> Construction:
    return Construction(L, "ifas", g.mats, verify_ifas(L, g), explain, d)


def construct(target: Target, how: str, cat: Catalog) -> Construction:
    L = target.algebra
    if how == "auto":
        if len(target.parts) > 1:
            res = constructors.auto_ifas(L, factors=_factors(target, cat))
        else:
            if is_perfect(L):
                raise CertificationError(f"{L.name}: {constructors.NO_IFAS_CITED}")
            res = constructors.auto_ifas(L, target.decomposition)
        return _ifas(L, res.witness, res.route, target.decomposition)
    if how == "semidirect":
        if target.decomposition is None:
            raise UsageError(f"{L.name}: no decomposition available")
        g = constructors.semidirect_ifas(L, target.decomposition)
        return _ifas(L, g, ("semidirect construction",) + g.provenance, target.decomposition)
    if how == "reducible-sum":
        factors = _factors(target, cat)
        if len(factors) < 2 or not any(f.n_hom is not None for f in factors):
            raise UsageError("reducible-sum needs a sum with one perfect summand, e.g. sl2+A_2_1")
        res = constructors.auto_ifas(L, factors=factors)
        return _ifas(L, res.witness, res.route)
    if how == "line-sum":
        if len(target.parts) != 2:
            raise UsageError("line-sum needs exactly two summands, e.g. sl2+o3")
        f1, f2 = (_n_hom_of(Target(cat.lookup(p), None, (p,)), cat) for p in target.parts)
        f = constructors.direct_sum_plus_line_ifps(f1, f2)
        return Construction(f.source, "phom", f.matrices(), check_p_hom(f.source, f), f.provenance)
    if how == "extension":
        g = constructors.ifps_to_ifas_extension(_n_hom_of(target, cat))
        return _ifas(g.source, g, g.provenance)
    if how == "n-hom":
        f = _n_hom_of(target, cat)
        return Construction(L, "nhom", f.matrices(), check_n_hom(L, f), f.provenance)
    raise UsageError(f"unknown constructor {how!r}")


def construct_family(family: str, n: int) -> Construction:
    if family == "t":
        tw = constructors.upper_triangular_ifas(n)
        split = f"reducible split: a = <I>, h' = span of the other {tw.algebra.dim - 1} basis vectors"
        return Construction(tw.algebra, "ifas", tw.witness.mats, verify_ifas(tw.algebra, tw.witness),
                            tw.witness.provenance + (split,), tw.decomposition)
    f = constructors.sln_affine_n_hom(n)
    return Construction(f.source, "nhom", f.matrices(), check_n_hom(f.source, f), f.provenance)


def cmd_construct(args) -> int:
    if args.target in ("t", "sl"):
        if args.constructor is None or not args.constructor.isdigit():
            raise UsageError(f"usage: construct {args.target} N")
        c = construct_family(args.target, int(args.constructor))
    else:
        how = CONSTRUCTOR_NAMES.get(args.constructor or "auto")
        if how is None:
            raise UsageError(f"unknown constructor {args.constructor!r}; choose from "
                             + ", ".join(sorted(set(CONSTRUCTOR_NAMES))))
        cat = _catalog(args)
        c = construct(_resolve(args.target, cat, _params(args.params)), how, cat)
    name = c.algebra.name
    notes = c.explain if args.explain else ()
    text = dump_algebra(c.algebra, c.decomposition) + "\n" + dump_witness(c.kind, name, c.mats, notes)
    if args.out:
        Path(args.out).write_text(text)
        for line in notes:
            print(f"# {line}")
        print(c.certificate)
    else:
        sys.stdout.write(text + f"# {c.certificate}\n")
    return OK if c.certificate.ok else FAILED


# -- normalize ---------------------------------------------------------------

def cmd_normalize(args) -> int:
    cat = _catalog(args)
    doc = read_document(args.file)
    if not doc.witnesses:
        raise UsageError(f"{args.file}: no witness block")
    chunks, status = [], OK
    for w in doc.witnesses:
        if w.kind not in ("phom", "nhom"):
            raise UsageError(f"normalize expects phom or nhom witnesses, got {w.kind}")
        L = _algebra_for(w.algebra_name, [doc], cat)
        cert = certify_witness(L, "phom", w.mats)
        if not cert.ok:
            print(cert, file=sys.stderr)
            status = FAILED
            continue
        f = normalize_to_n(GradedHom.from_assembled(L, w.mats))
        chunks.append(dump_witness("nhom", w.algebra_name, f.matrices()))
    _emit("\n".join(chunks), args.out)
    return status


# -- catalog -----------------------------------------------------------------

def cmd_catalog(args) -> int:
    cat = _catalog(args)
    if args.action == "list":
        dims = None if args.dim is None else [args.dim]
        print("name\tdim\tparams\trange\tflags")
        for e in cat.entries(dims):
            print("\t".join([e.name, str(e.dim), ",".join(e.params) or "-", e.constraint_text or "-",
                             ",".join(sorted(e.flags)) or "-"]))
        return OK
    if not args.name:
        raise UsageError("catalog show needs an algebra name")
    entry = cat.entry(args.name)
    params = _params(args.params)
    L = cat.lookup(args.name, params) if "+" in args.name else entry.build(params)
    lines = [f"# flags: {','.join(sorted(entry.flags)) or '-'}"]
    if entry.params:
        lines.append(f"# params: {','.join(entry.params)} with {entry.constraint_text or 'no constraint'}")
    if entry.ifps:
        lines.append(f"# projective witness: {entry.ifps}")
    d = None if "perfect" in entry.flags else entry.decomposition
    sys.stdout.write("\n".join(lines) + "\n" + dump_algebra(L, d))
    return OK


# -- certify -----------------------------------------------------------------

def _dims(text: str) -> list[int]:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text)
    if not m:
        raise UsageError(f"expected a dimension or range like 1..4, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2) or lo)
    if hi < lo:
        raise UsageError(f"empty dimension range {text!r}")
    return list(range(lo, hi + 1))


def _grid(text: str | None):
    if text is None:
        return DEFAULT_GRID
    try:
        return tuple(parse_rational(t.strip()) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_certify(args) -> int:
    cat = _catalog(args)
    report = certify_all(_dims(args.range), grid=_grid(args.grid), catalog=cat,
                         include_sums=args.include_sums, jobs=args.jobs)
    report = save_report(report, args.out, args.witness_dir)
    if args.out:
        print(f"{len(report.rows)} rows, {len(report.failures)} FAIL -> {args.out}")
    else:
        sys.stdout.write(report.to_tsv())
    return FAILED if report.failures else OK


# -- entry point -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flatlie", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jacobi", help="check the Jacobi identity for every algebra in a file")
    p.add_argument("file")
    p.set_defaults(func=cmd_jacobi)

    p = sub.add_parser("verify", help="certify witnesses: verify [ALGEBRA_FILE] WITNESS_FILE")
    p.add_argument("files", nargs="+", metavar="FILE")
    p.add_argument("--kind", choices=("ifas", "phom", "nhom", "extended"),
                   help="override the kind given in the witness header")
    p.add_argument("--entries", action="append", help="extra catalog entries file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build and certify a witness")
    p.add_argument("target", help="catalog name, A+B sum, algebra file, or t / sl followed by N")
    p.add_argument("constructor", nargs="?", help="auto (default), semidirect, reducible-sum, line-sum, "
                                                  "extension, n-hom; or N after t / sl")
    p.add_argument("--params", action="append", metavar="K=V")
    p.add_argument("--out")
    p.add_argument("--explain", action="store_true", help="print which construction built each block")
    p.add_argument("--entries", action="append")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("normalize", help="normal representative of projective witnesses")
    p.add_argument("file")
    p.add_argument("--out")
    p.add_argument("--entries", action="append")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("catalog", help="list or show catalog entries")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.add_argument("--dim", type=int)
    p.add_argument("--params", action="append", metavar="K=V")
    p.add_argument("--entries", action="append")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("certify", help="sweep the catalog and print a TSV report")
    p.add_argument("range", help="dimension or range, e.g. 3 or 1..4")
    p.add_argument("--grid", help="comma-separated parameter values")
    p.add_argument("--entries", action="append")
    p.add_argument("--out")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--include-sums", action="store_true", help="add sums with a perfect summand")
    p.add_argument("--witness-dir")
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CertificationError as exc:
        print(f"FAIL {exc}", file=sys.stderr)
        return FAILED
    except (UsageError, ParseError, CatalogError, PreconditionError, DimensionError,
            constructors.MetadataError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
