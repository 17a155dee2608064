"""Command line surface.

    aalg check <file> --property kahler|lck|balanced|skt|lcb|vaisman
    aalg data <file>
    aalg rho-b <file>
    aalg lchk --matrix <file|inline>
    aalg lattice <file> --rule "2logk:K=50" | --grid a:b:n
    aalg catalog verify [--entry name] [--samples n]
    aalg skt-to-lcb <file>

Every command exits 0 on success, 2 on mathematical rejection (not almost
abelian, non-integrable J, failed verification, ...) and 1 on input
errors.  ``--json`` produces a machine-readable report with the stable
schema tag ``aalg-report/1``; reports are deterministic for fixed input.
The tolerance for float documents can be set with ``AALG_EPSILON``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import scalars
from .scalars import fmt
from . import linalg
from .documents import (AlgebraDocument, ParseError, parse, render,
                        to_algebra, to_complex_structure, to_ideal, to_metric)
from .hermitian import HermitianError, HermitianStructure
from .lie import LieAlgebraError, find_codim1_abelian_ideal
from .almost_abelian import (DataError, extract_data, is_balanced_data,
                             is_kahler_data, is_lcb_data, is_lck_data,
                             is_skt_data, is_type_11, rho_b_closed,
                             adapted_J_matrix, skt_to_lcb, skt_to_lcb_metric)
from .lchk import LchkError, construct_lchk, lchk_admissible
from .lattice import integrality_probe
from .catalog import CatalogError, verify_all

SCHEMA = "aalg-report/1"

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MATH = 2


class MathRejection(Exception):
    def __init__(self, message):
        super().__init__(message)


def _scalar_json(x):
    if isinstance(x, Fraction):
        return fmt(x)
    if isinstance(x, float):
        return x
    if isinstance(x, (list, tuple)):
        return [_scalar_json(v) for v in x]
    return x


def _matrix_json(m):
    return [[_scalar_json(x) for x in row] for row in m]


def _form_json(form):
    return {"+".join(str(i + 1) for i in key): _scalar_json(val)
            for key, val in form.terms()}


def _load_document(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    return parse(text)


def _parse_ideal_flag(spec, dim):
    """--ideal 'f2, f3, f4' override (same syntax as the document line)."""
    from .documents import parse as _p
    doc = _p(f"algebra override dim {dim}\n"
             + "d = (" + ", ".join(["0"] * dim) + ")\n"
             + "ideal: " + spec + "\n")
    return to_ideal(doc)


def _structures(doc, need_jg=True, ideal_flag=None):
    L = to_algebra(doc)
    J = to_complex_structure(doc)
    g = to_metric(doc)
    ideal = (_parse_ideal_flag(ideal_flag, doc.dim) if ideal_flag
             else to_ideal(doc))
    if need_jg and (J is None or g is None):
        raise ParseError("this command needs both J and g in the document")
    if ideal is None:
        ideal = find_codim1_abelian_ideal(L)
        if ideal is None:
            raise MathRejection("the algebra has no codimension-one abelian ideal")
    return L, J, g, ideal


def _emit(report, args):
    if args.json:
        print(json.dumps(report, sort_keys=True, indent=2, default=_scalar_json))
    else:
        _print_human(report)


def _print_human(report, indent=0):
    pad = "  " * indent
    if isinstance(report, dict):
        for key in report:
            val = report[key]
            if isinstance(val, (dict, list)):
                print(f"{pad}{key}:")
                _print_human(val, indent + 1)
            else:
                print(f"{pad}{key}: {val}")
    elif isinstance(report, list):
        for val in report:
            if isinstance(val, (dict, list)):
                _print_human(val, indent)
                print()
            else:
                print(f"{pad}- {val}")
    else:
        print(f"{pad}{report}")


PROPERTIES = ("kahler", "lck", "balanced", "skt", "lcb", "vaisman")

_DATA_FUNCS = {
    "kahler": is_kahler_data,
    "lck": is_lck_data,
    "balanced": is_balanced_data,
    "skt": is_skt_data,
    "lcb": is_lcb_data,
}


def cmd_check(args):
    doc = _load_document(args.file)
    L, J, g, ideal = _structures(doc, ideal_flag=args.ideal)
    H = HermitianStructure(L, J, g)
    if not H.is_integrable():
        raise MathRejection("J is not integrable")
    d = extract_data(L, ideal, J, g)
    props = [args.property] if args.property else list(PROPERTIES)
    results = {}
    for prop in props:
        if prop == "vaisman":
            direct, note = H.is_vaisman()
            results[prop] = {"direct": direct, "data": None,
                             "agreement": None, "note": note}
        else:
            direct = {
                "kahler": H.is_kahler_direct,
                "lck": H.is_lck_direct,
                "balanced": H.is_balanced_direct,
                "skt": H.is_skt_direct,
                "lcb": H.is_lcb_direct,
            }[prop]()
            data_verdict = _DATA_FUNCS[prop](d)
            results[prop] = {"direct": direct, "data": data_verdict,
                             "agreement": direct == data_verdict}
    report = {"schema": SCHEMA, "command": "check", "algebra": doc.name,
              "results": results}
    _emit(report, args)
    bad = [p for p, r in results.items()
           if r["agreement"] is False]
    if bad:
        raise MathRejection(f"direct/data disagreement on {bad}")
    return EXIT_OK


def cmd_data(args):
    doc = _load_document(args.file)
    L, J, g, ideal = _structures(doc, ideal_flag=args.ideal)
    d = extract_data(L, ideal, J, g)
    inv = d.gauge_invariants()
    report = {
        "schema": SCHEMA, "command": "data", "algebra": doc.name,
        "n": d.n,
        "a": _scalar_json(d.a),
        "v": _scalar_json(list(d.v)),
        "A": _matrix_json(d.A_matrix),
        "J1": _matrix_json(d.J1_matrix),
        "frame_orthonormal": d.is_orthonormal(),
        "frame_outer_norm_sq": _scalar_json(d.d_outer),
        "gauge_invariants": {
            "a": _scalar_json(inv["a"]),
            "trace_A": _scalar_json(inv["trace_A"]),
            "v_norm_sq": _scalar_json(inv["v_norm_sq"]),
            "charpoly_A": _scalar_json(list(inv["charpoly_A"])),
            "rank_A": inv["rank_A"],
        },
    }
    _emit(report, args)
    return EXIT_OK


def cmd_rho_b(args):
    doc = _load_document(args.file)
    L, J, g, ideal = _structures(doc, ideal_flag=args.ideal)
    H = HermitianStructure(L, J, g)
    if not H.is_integrable():
        raise MathRejection("J is not integrable")
    d = extract_data(L, ideal, J, g)
    closed = rho_b_closed(d)
    oracle = H.bismut_ricci_oracle()
    diff = closed - oracle
    residual = max((abs(float(v)) for v in diff.coeffs.values()), default=0.0)
    report = {
        "schema": SCHEMA, "command": "rho-b", "algebra": doc.name,
        "closed_form": _form_json(closed),
        "curvature_oracle": _form_json(oracle),
        "residual": residual,
        "type_1_1": is_type_11(closed, adapted_J_matrix(d)),
        "is_lcb_data": is_lcb_data(d),
    }
    _emit(report, args)
    return EXIT_OK


def _parse_inline_matrix(spec):
    spec = spec.strip()
    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as fh:
            spec = fh.read().strip()
    if spec.startswith("id"):
        return linalg.idmat(int(spec[2:]))
    if spec.startswith("zero"):
        return linalg.zeros(int(spec[4:]), int(spec[4:]))
    try:
        rows = json.loads(spec)
    except json.JSONDecodeError as exc:
        raise ParseError(f"cannot parse matrix {spec!r}: {exc}")
    out = []
    for row in rows:
        out.append([Fraction(x) if isinstance(x, int) or isinstance(x, str)
                    else float(x) for x in row])
    return out


def cmd_lchk(args):
    D = _parse_inline_matrix(args.matrix)
    try:
        verdict = lchk_admissible(D)
    except LchkError as exc:
        raise MathRejection(str(exc))
    report = {
        "schema": SCHEMA, "command": "lchk",
        "admissible": verdict.admissible,
        "a": _scalar_json(verdict.a),
        "hyperkahler": verdict.hyperkahler,
        "diagonalizable": verdict.diagonalizable,
        "condition_spectrum_line": verdict.condition_spectrum_line,
        "condition_real_multiplicity": verdict.condition_real_multiplicity,
        "condition_even_pairs": verdict.condition_even_pairs,
        "multiplicities": [[_scalar_json(b), m] for b, m in verdict.multiplicities],
    }
    if verdict.admissible and args.witness:
        try:
            L, triple, P, dc = construct_lchk(D)
            theta = triple.theta
            report["witness"] = {
                "canonical_form": _matrix_json(dc),
                "basis_change": _matrix_json(P),
                "lee_form": _form_json(theta),
                "I1": _matrix_json(triple.I1.matrix),
                "I2": _matrix_json(triple.I2.matrix),
                "I3": _matrix_json(triple.I3.matrix),
            }
        except LchkError as exc:
            report["witness"] = {"error": str(exc)}
    _emit(report, args)
    if not verdict.admissible:
        raise MathRejection("D is not LCHK-admissible")
    return EXIT_OK


def _parse_rule(rule):
    # "2logk:K=50"
    try:
        head, tail = rule.split(":", 1)
        if head != "2logk":
            raise ValueError
        key, val = tail.split("=", 1)
        if key != "K":
            raise ValueError
        return int(val)
    except ValueError:
        raise ParseError(f"cannot parse rule {rule!r}; expected '2logk:K=50'")


def _parse_grid(grid):
    try:
        a, b, n = grid.split(":")
        a, b, n = float(a), float(b), int(n)
        if n < 1:
            raise ValueError
    except ValueError:
        raise ParseError(f"cannot parse grid {grid!r}; expected 'a:b:n'")
    if n == 1:
        return [a]
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def cmd_lattice(args):
    doc = _load_document(args.file)
    L = to_algebra(doc)
    ideal = to_ideal(doc) or find_codim1_abelian_ideal(L)
    if ideal is None:
        raise MathRejection("the algebra has no codimension-one abelian ideal")
    # matrix of ad on the ideal in the ideal basis
    vecs = [list(v) for v in ideal.vectors]
    n = L.dim
    # transversal: last basis vector not in the ideal
    trans = None
    for i in range(n - 1, -1, -1):
        e = [Fraction(0)] * n
        e[i] = Fraction(1)
        if not ideal.contains(e):
            trans = e
            break
    if trans is None:
        raise MathRejection("could not find a transversal direction")
    full = linalg.transpose(vecs + [trans])
    inv = linalg.inverse(full)
    cols = [linalg.mat_vec(inv, L.bracket(trans, v))[:-1] for v in vecs]
    B = [[float(cols[j][i]) for j in range(len(vecs))] for i in range(len(vecs))]
    eps_int = args.eps_int
    if args.rule:
        k_max = _parse_rule(args.rule)
        rep = integrality_probe(B, rule_k_max=k_max, eps_int=eps_int)
    else:
        ts = _parse_grid(args.grid)
        rep = integrality_probe(B, t_values=ts, eps_int=eps_int)
    report = {
        "schema": SCHEMA, "command": "lattice", "algebra": doc.name,
        "overall": rep.overall,
        "found_t": rep.found,
        "eps_int": rep.eps_int,
        "points": [{
            "t": pt.t, "k": pt.k, "verdict": pt.verdict,
            "max_deviation": pt.max_deviation,
            "char": list(pt.char_coeffs), "min": list(pt.min_coeffs),
            "residual": pt.residual,
            "residual_vs_inv_k": pt.residual_vs_inv_k,
        } for pt in rep.points],
    }
    _emit(report, args)
    return EXIT_OK


def cmd_catalog(args):
    if args.action != "verify":
        raise ParseError(f"unknown catalog action {args.action!r}")
    names = [args.entry] if args.entry else None
    try:
        rep = verify_all(names, samples=args.samples)
    except CatalogError as exc:
        raise ParseError(str(exc))
    report = {
        "schema": SCHEMA, "command": "catalog-verify",
        "ok": rep["ok"],
        "elapsed_s": round(rep["elapsed_s"], 3),
        "entries": [{
            "entry": r["entry"],
            "ok": r["ok"],
            "samples": [{k: _scalar_json(v) for k, v in s.items()} for s in r["samples"]],
            "failures": r["failures"],
            "not_checked": list(r["not_checked"]),
        } for r in rep["results"]],
    }
    _emit(report, args)
    if not rep["ok"]:
        raise MathRejection("catalog verification failed")
    return EXIT_OK


def cmd_skt_to_lcb(args):
    doc = _load_document(args.file)
    L, J, g, ideal = _structures(doc, ideal_flag=args.ideal)
    d = extract_data(L, ideal, J, g)
    if not is_skt_data(d):
        raise MathRejection("the document's metric is not SKT")
    gp = skt_to_lcb_metric(L, J, g, d)
    new_doc = AlgebraDocument(
        name=doc.name + "-lcb", dim=doc.dim, params=dict(doc.params),
        differential=doc.differential, j_spec=doc.j_spec,
        g_spec=("matrix", tuple(tuple(row) for row in gp.matrix)),
        ideal=doc.ideal, kind=doc.kind)
    if args.json:
        dp = skt_to_lcb(d)
        report = {"schema": SCHEMA, "command": "skt-to-lcb",
                  "algebra": doc.name,
                  "document": render(new_doc),
                  "new_v": _scalar_json(list(dp.v)),
                  "is_lcb": is_lcb_data(dp)}
        print(json.dumps(report, sort_keys=True, indent=2, default=_scalar_json))
    else:
        sys.stdout.write(render(new_doc))
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(
        prog="aalg",
        description="special Hermitian structures on almost abelian Lie algebras")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="predicate verdicts (direct and data criteria)")
    p.add_argument("file")
    p.add_argument("--ideal", help="declare the abelian ideal, e.g. 'f2, f3, f4'")
    p.add_argument("--property", choices=PROPERTIES)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("data", help="extracted (a, v, A) and gauge invariants")
    p.add_argument("file")
    p.add_argument("--ideal", help="declare the abelian ideal, e.g. 'f2, f3, f4'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_data)

    p = sub.add_parser("rho-b", help="Bismut-Ricci closed form, oracle and type")
    p.add_argument("file")
    p.add_argument("--ideal", help="declare the abelian ideal, e.g. 'f2, f3, f4'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rho_b)

    p = sub.add_parser("lchk", help="LCHK admissibility verdict")
    p.add_argument("--matrix", required=True,
                   help="file, inline JSON rows, idN or zeroN")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lchk)

    p = sub.add_parser("lattice", help="integer polynomial lattice obstruction probe")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--rule", help="'2logk:K=50'")
    group.add_argument("--grid", help="'a:b:n'")
    p.add_argument("--eps-int", type=float, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("catalog", help="catalog verification harness")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--entry")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("skt-to-lcb", help="transformed LCB metric document")
    p.add_argument("file")
    p.add_argument("--ideal", help="declare the abelian ideal, e.g. 'f2, f3, f4'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_skt_to_lcb)
    return ap


def main(argv=None):
    env_eps = os.environ.get("AALG_EPSILON")
    if env_eps:
        try:
            scalars.DEFAULT_EPS = float(env_eps)
        except ValueError:
            print(f"error: bad AALG_EPSILON {env_eps!r}", file=sys.stderr)
            return EXIT_INPUT
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, CatalogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (MathRejection, HermitianError, LieAlgebraError, DataError,
            LchkError) as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
