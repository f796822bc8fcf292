"""Command-line interface: every computation behind one verb, JSON in and out.

Exit codes: 0 success, 1 domain error (a JSON error object goes to stdout),
2 usage error (message on stderr, no JSON).  Output is deterministic: dict
keys are emitted in construction order, exact rationals as "p/q" strings and
archimedean reals with 17 significant digits.

The ``verify`` verb accepts the JSON produced by any verb, re-runs the same
computation from the embedded inputs and diffs the payloads.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import arakelov, chevalley, charmorph, curve, rootsys, torsor
from .errors import ArithCurvesError, UnsupportedType
from .jsonutil import rat_str, real_str


# ---------------------------------------------------------------------------
# payload builders (shared by the verbs and by `verify`)

def rootsys_payload(type_token: str, include_weyl: bool) -> dict:
    rs = rootsys.build_root_system(rootsys.CartanType.parse(type_token))
    w = rootsys.weyl_group(rs)
    payload = {"kind": "rootsys", **rootsys.root_system_json(rs),
               "count": len(rs.roots), "weyl_order": len(w)}
    if include_weyl:
        payload["weyl_words"] = [list(el.word) for el in w]
    return payload


def chevalley_payload(type_token: str, center: int, with_verify: bool) -> dict:
    rs = rootsys.build_root_system(rootsys.CartanType.parse(type_token))
    type_token = str(rs.cartan_type)
    L = chevalley.build_chevalley_basis(rs, center_rank=center)
    records = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            entries = dict(L.table.get((i, j), ()))
            if not entries:
                continue
            dense = [int(entries.get(k, 0)) for k in range(L.dim)]
            records.append({"x": L.label(i), "y": L.label(j), "result": dense})
    payload = {"kind": "chevalley", "type": type_token, "center": center,
               "dim": L.dim, "basis": [L.label(i) for i in range(L.dim)],
               "bracket": records}
    if with_verify:
        rep = chevalley.verify_chevalley(L)
        payload["verification"] = {
            "ok": rep.ok, "antisymmetric": rep.antisymmetric,
            "integral": rep.integral, "magnitudes_ok": rep.magnitudes_ok,
            "cartan_action_ok": rep.cartan_action_ok, "coroot_ok": rep.coroot_ok,
            "opposite_sign_ok": rep.opposite_sign_ok,
            "literal_paper_sign_count": rep.literal_paper_sign_count,
            "pair_count": rep.pair_count,
            "string_identity_failures": len(rep.string_identity_failures),
            "jacobi_ok": rep.jacobi_ok, "jacobi_triples": rep.jacobi_triples,
        }
    return payload


def chi_matrix_payload(matrix_strings: list[list[str]]) -> dict:
    mat = [[Fraction(x) for x in row] for row in matrix_strings]
    vals = charmorph.chi_gl(mat)
    return {"kind": "chi", "type": f"gl_{len(mat)}",
            "matrix": [[rat_str(x) for x in row] for row in mat],
            "invariants": [rat_str(v) for v in vals]}


def chi_torus_payload(type_token: str, point_strings: list[str]) -> dict:
    point = [Fraction(x) for x in point_strings]
    vals = charmorph.chi_torus(type_token, point)
    real = charmorph.realization(type_token)
    token = real.token if not real.token.startswith("gl") else f"gl_{real.token[2:]}"
    return {"kind": "chi", "type": token, "point": [rat_str(x) for x in point],
            "invariants": [rat_str(v) for v in vals]}


def _ideal_from_spec(K: arakelov.NumberField, spec) -> arakelov.FractionalIdeal:
    """Generator strings, or HNF rows (lists) emitted by this CLI."""
    elements = []
    for item in spec:
        if isinstance(item, list):
            row = [Fraction(x) for x in item]
            if K.degree == 1:
                elements.append(K.element(row[0]))
            else:
                elements.append(K.element(row[0], row[1]))
        else:
            elements.append(arakelov.parse_element(K, str(item)))
    return arakelov.FractionalIdeal.from_elements(K, elements)


def degree_payload(field_name: str, ideal_spec, metric_strings: list) -> dict:
    K = arakelov.parse_field(field_name)
    ideal = _ideal_from_spec(K, ideal_spec)
    metrics = tuple(float(m) for m in metric_strings)
    bundle = arakelov.MetrizedLineBundle(ideal, metrics)
    deg = arakelov.arithmetic_degree(K, bundle)
    return {"kind": "degree", "field": K.name, "ideal_hnf": ideal.hnf_strings(),
            "ideal_norm": rat_str(ideal.norm()),
            "metrics": [real_str(m) for m in metrics], "degree": real_str(deg)}


def _parse_place_matrix(entry, kind: str) -> np.ndarray:
    if kind == "real":
        return np.array([[float(x) for x in row] for row in entry], dtype=float)
    return np.array([[complex(float(x[0]), float(x[1])) for x in row] for row in entry])


def _gram_witness(entry, kind: str) -> np.ndarray:
    """Group element whose pullback of the canonical metric has this Gram matrix."""
    gram = _parse_place_matrix(entry, kind)
    try:
        return np.linalg.cholesky(gram).conj().T
    except np.linalg.LinAlgError as exc:
        raise ArithCurvesError("metric Gram matrix must be positive definite") from exc


def _emit_place_matrix(mat: np.ndarray, kind: str):
    if kind == "real":
        return [[real_str(x) for x in row] for row in mat.tolist()]
    return [[[real_str(x.real), real_str(x.imag)] for x in row] for row in mat.tolist()]


def slope_payload(torsor_spec: dict, k: int) -> dict:
    K = arakelov.parse_field(torsor_spec["field"])
    n = int(torsor_spec["rank"])
    ideals = tuple(_ideal_from_spec(K, spec) for spec in torsor_spec["ideals"])
    r1, r2 = K.signature
    kinds = ["real"] * r1 + ["complex"] * r2
    metrics = []
    for kind, entry in zip(kinds, torsor_spec["metrics"]):
        cm = torsor.witnessed_metric(torsor.canonical_form(n, kind),
                                     _gram_witness(entry, kind))
        metrics.append(cm)
    T = torsor.ArithmeticTorsor(field=K, rank=n, ideals=ideals, metrics=tuple(metrics))
    det_bundle = torsor.determinant_bundle(T)
    value = torsor.slope(T, k)
    return {"kind": "slope", "field": K.name, "rank": n, "char_power": k,
            "ideals": [i.hnf_strings() for i in ideals],
            "metrics": [_emit_place_matrix(np.asarray(m.std), kind)
                        for kind, m in zip(kinds, metrics)],
            "det_ideal_hnf": det_bundle.ideal.hnf_strings(),
            "gram_dets": [real_str(r * r) for r in det_bundle.metrics],
            "slope": real_str(value)}


def curve_payload(field_name: str, matrix_spec, twist_spec, cameral: bool,
                  fiber_bound: int | None) -> dict:
    K = arakelov.parse_field(field_name)
    entries = [[arakelov.parse_element(K, str(x)) for x in row] for row in matrix_spec]
    twist = _ideal_from_spec(K, twist_spec) if twist_spec is not None else None
    phi = curve.higgs_field(K, entries, twist=twist)
    C = curve.cameral_curve(phi) if cameral else curve.spectral_curve(phi)
    cert = curve.characteristic_point(phi)
    payload = {"kind": C.kind, "field": K.name, "n": C.n,
               "matrix": [[str(x) for x in row] for row in entries],
               "twist_hnf": phi.twist.hnf_strings(),
               "poly": [str(c) for c in C.poly],
               "char_point": [str(c) for c in C.char_point],
               "integrality": [{"power": kk, "coords": [str(c) for c in coords]}
                               for kk, coords in enumerate(cert.power_coords, start=1)],
               "disc": str(C.disc), "degenerate": C.degenerate,
               "degree": C.degree}
    if K.degree == 1 and not C.degenerate:
        payload["covering_ok"] = curve.covering_degree_check(C)
        if cameral:
            pts = curve.cameral_fiber_rational(C)
            if pts is not None:
                payload["rational_points"] = [[rat_str(x) for x in p] for p in pts]
    if fiber_bound is not None:
        payload["fiber_bound"] = fiber_bound
        spectral = C if C.kind == "spectral" else curve.spectral_curve(phi)
        payload["ramified"] = [{"p": p, "pattern": [list(fe) for fe in pat]}
                               for p, pat in curve.ramified_primes(spectral, fiber_bound)]
    return payload


# ---------------------------------------------------------------------------
# verify: rebuild from embedded inputs and diff

def rebuild_payload(doc: dict) -> dict | None:
    kind = doc.get("kind")
    if kind == "rootsys":
        return rootsys_payload(doc["type"], "weyl_words" in doc)
    if kind == "chevalley":
        return chevalley_payload(doc["type"], int(doc["center"]), "verification" in doc)
    if kind == "chi":
        if "matrix" in doc:
            return chi_matrix_payload(doc["matrix"])
        return chi_torus_payload(doc["type"], doc["point"])
    if kind == "degree":
        return degree_payload(doc["field"], doc["ideal_hnf"],
                              [float(m) for m in doc["metrics"]])
    if kind == "slope":
        spec = {"field": doc["field"], "rank": doc["rank"],
                "ideals": doc["ideals"], "metrics": doc["metrics"]}
        return slope_payload(spec, int(doc["char_power"]))
    if kind in ("spectral", "cameral"):
        return curve_payload(doc["field"], doc["matrix"],
                             doc.get("twist_hnf"), kind == "cameral",
                             doc.get("fiber_bound"))
    return None


def verify_payload(doc: dict) -> dict:
    kind = doc.get("kind")
    if kind == "verify":
        return {"kind": "verify", "input_kind": "verify", "ok": True, "mismatches": []}
    if kind is None and {"field", "rank", "ideals", "metrics"} <= set(doc):
        return verify_torsor_payload(doc)
    rebuilt = rebuild_payload(doc)
    if rebuilt is None:
        raise ArithCurvesError(f"nothing to verify for kind {kind!r}")
    mismatches = []
    for key in rebuilt:
        if key not in doc:
            mismatches.append({"key": key, "status": "missing"})
        elif _differs(doc[key], rebuilt[key]):
            mismatches.append({"key": key, "status": "differs"})
    return {"kind": "verify", "input_kind": kind, "ok": not mismatches,
            "mismatches": mismatches}


def verify_torsor_payload(doc: dict) -> dict:
    """Per-clause compatibility reports for a raw torsor description."""
    K = arakelov.parse_field(doc["field"])
    n = int(doc["rank"])
    for spec in doc["ideals"]:
        _ideal_from_spec(K, spec)
    r1, r2 = K.signature
    kinds = ["real"] * r1 + ["complex"] * r2
    reports = []
    for kind, entry in zip(kinds, doc["metrics"]):
        cm = torsor.witnessed_metric(torsor.canonical_form(n, kind),
                                     _gram_witness(entry, kind))
        reports.append(cm.verify().as_dict())
    return {"kind": "verify", "input_kind": "torsor",
            "ok": all(r["ok"] for r in reports), "reports": reports}


def _differs(a, b) -> bool:
    if isinstance(a, str) and isinstance(b, str):
        try:
            fa, fb = float(a), float(b)
        except ValueError:
            return a != b
        if fa == fb:
            return False
        return abs(fa - fb) > 1e-9 * max(1.0, abs(fa), abs(fb))
    return a != b


# ---------------------------------------------------------------------------
# argument plumbing

def _json_arg(parser: argparse.ArgumentParser, text: str, what: str):
    if text.startswith("@"):
        try:
            with open(text[1:], "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            parser.error(f"cannot read {what} file: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        parser.error(f"{what} is not valid JSON: {exc}")


def _json_file(parser: argparse.ArgumentParser, path: str, what: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        parser.error(f"cannot read {what} file: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        parser.error(f"{what} is not valid JSON: {exc}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arithcurves",
                                     description="Exact Lie-theoretic and arithmetic "
                                                 "curve computations with JSON output.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("rootsys", help="build a root system")
    p.add_argument("--type", required=True)
    p.add_argument("--weyl", action="store_true", help="include Weyl group words")

    p = sub.add_parser("chevalley", help="integral Chevalley basis and bracket table")
    p.add_argument("--type", required=True)
    p.add_argument("--center", type=int, default=0)
    p.add_argument("--verify", action="store_true", help="attach the verification report")

    p = sub.add_parser("chi", help="characteristic morphism")
    p.add_argument("--matrix", help="JSON matrix of rationals (inline or @file)")
    p.add_argument("--torus-point", help="JSON list of rationals (inline or @file)")
    p.add_argument("--type", help="torus type for --torus-point (e.g. gl3, B2)")

    p = sub.add_parser("degree", help="arithmetic degree of a metrized line bundle")
    p.add_argument("--field", required=True)
    p.add_argument("--ideal", required=True, help="JSON list of generators")
    p.add_argument("--metrics", required=True, help="JSON list of positive reals")

    p = sub.add_parser("slope", help="slope of an arithmetic torsor")
    p.add_argument("--torsor", required=True, help="JSON file describing the torsor")
    p.add_argument("--char", type=int, default=1, help="power of the determinant character")

    p = sub.add_parser("curve", help="spectral or cameral characteristic curve")
    p.add_argument("--matrix", required=True, help="JSON matrix of field elements")
    p.add_argument("--field", default="Q")
    p.add_argument("--twist", help="JSON list of ideal generators")
    p.add_argument("--cameral", action="store_true")
    p.add_argument("--fibers", type=int, metavar="PMAX",
                   help="report ramified primes below PMAX")

    p = sub.add_parser("verify", help="re-check the JSON output of any verb")
    p.add_argument("--input", required=True, help="file with JSON from another verb")
    return parser


def run(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.verb == "rootsys":
            try:
                payload = rootsys_payload(args.type, args.weyl)
            except UnsupportedType as exc:
                parser.error(str(exc))
        elif args.verb == "chevalley":
            try:
                payload = chevalley_payload(args.type, args.center, args.verify)
            except UnsupportedType as exc:
                parser.error(str(exc))
        elif args.verb == "chi":
            if (args.matrix is None) == (args.torus_point is None):
                parser.error("chi needs exactly one of --matrix or --torus-point")
            if args.matrix is not None:
                payload = chi_matrix_payload(_json_arg(parser, args.matrix, "--matrix"))
            else:
                if not args.type:
                    parser.error("--torus-point requires --type")
                try:
                    payload = chi_torus_payload(
                        args.type, _json_arg(parser, args.torus_point, "--torus-point"))
                except UnsupportedType as exc:
                    parser.error(str(exc))
        elif args.verb == "degree":
            payload = degree_payload(args.field,
                                     _json_arg(parser, args.ideal, "--ideal"),
                                     _json_arg(parser, args.metrics, "--metrics"))
        elif args.verb == "slope":
            payload = slope_payload(_json_file(parser, args.torsor, "--torsor"),
                                    args.char)
        elif args.verb == "curve":
            twist = _json_arg(parser, args.twist, "--twist") if args.twist else None
            payload = curve_payload(args.field,
                                    _json_arg(parser, args.matrix, "--matrix"),
                                    twist, args.cameral, args.fibers)
        else:
            payload = verify_payload(_json_file(parser, args.input, "--input"))
            print(json.dumps(payload, indent=2), file=out)
            return 0 if payload["ok"] else 1
    except ArithCurvesError as exc:
        print(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}},
                         indent=2), file=out)
        return 1

    print(json.dumps(payload, indent=2), file=out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
