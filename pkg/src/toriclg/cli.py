"""``tlg``: command-line front end.

Every subcommand reads one JSON model file and writes one JSON report
(or an SVG for ``plot``).  Exit codes: 0 when the command ran, including
negative verdicts; 2 for bad input; 3 when an internal consistency check
fails.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from . import exactlinalg as xl
from . import serialize as ser
from .constructions.batyrev_borisov import (
    NefError,
    bb_dual,
    bb_mirror_via_duality,
    nef_subpartition_check,
    phi_check,
)
from .constructions.berglund_hubsch import bh_dual
from .constructions.givental import hv_presentation, semigroup_generation_check
from .errors import ConsistencyError
from .lineardata import NotKopaseticError, dualize, kopasetic_check, pair_kopasetic, regularity_check
from .polyhedra import (
    PolyhedronError,
    PointSet,
    Polyhedron,
    canonical_form,
    facet_rows,
    hull,
    interior_point,
    is_reflexive,
    lattice_points,
    polar,
    vertices_and_rays,
)
from .sigma import SigmaBlocks, chow_isomorphism, dual_exists
from .structure import analyze, rep_polytope, suggest_kopasetic_lift
from .svg import render

EXIT_OK, EXIT_INPUT, EXIT_CONSISTENCY = 0, 2, 3


class InputError(ValueError):
    pass


def _fracs(v) -> list:
    return [xl.format_fraction(x) for x in v]


def _numeric(lift) -> list:
    out = []
    for c in lift:
        z = c.numeric(15)
        out.append({"re": "%.15g" % (z.real + 0.0), "im": "%.15g" % (z.imag + 0.0)})
    return out


def _parse_alpha(text: str) -> tuple:
    try:
        return tuple(xl.parse_fraction(s.strip()) for s in text.split(","))
    except (TypeError, ValueError) as e:
        raise InputError(f"--alpha-prime: {e}") from None


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _load(args) -> dict:
    return ser.loads(_read(args.input))


def _model(args):
    data = _load(args)
    M, src = ser.load_model(data)
    if getattr(args, "section", None) not in (None, "generic"):
        if src is None:
            raise InputError("--section needs a sigma-input file")
        S = ser.section_from_json(ser.loads_plain(_read(args.section)))
        src = ser.SigmaInput(src.bundle, src.K, S, src.order)
        M = src.build()
    return M, src


def _coeffs(M) -> dict:
    return {"A": _numeric(M.A.lift), "B": _numeric(M.B.lift)}


# ---------------------------------------------------------------------------
# commands


def cmd_check(args) -> dict:
    M, _ = _model(args)
    pair = pair_kopasetic(M)
    b = kopasetic_check(M.B)
    rep = {
        "command": "check",
        "pair_kopasetic": pair.to_json(),
        "B_kopasetic": b.to_json(),
        "verdict": pair.verdict,
    }
    if args.numeric:
        rep["coefficients_numeric"] = _coeffs(M)
    return rep


def cmd_dualize(args) -> dict:
    M, src = _model(args)
    rep = {"command": "dualize"}
    try:
        D = dualize(M)
    except NotKopaseticError as e:
        rep.update({"dualizable": False, "reason": str(e), "A_prime_kopasetic": e.report.to_json()})
        return rep
    rep.update({
        "dualizable": True,
        "A_prime_kopasetic": D.a_report.to_json(),
        "regularity": {"ok": regularity_check(D.A.matrix, D.B.matrix).ok},
        "dual": ser.model_to_json(D, src if src is not None and isinstance(M.blocks, SigmaBlocks) else None),
    })
    if args.numeric:
        rep["coefficients_numeric"] = _coeffs(D)
    return rep


def cmd_analyze(args) -> dict:
    M, _ = _model(args)
    if not isinstance(M.blocks, SigmaBlocks):
        raise InputError("analyze needs a sigma-input file or an lg-model with its source")
    alpha = _parse_alpha(args.alpha_prime) if args.alpha_prime else None
    A = analyze(M, alpha)
    rep = {"command": "analyze", "alpha_prime_override": None if alpha is None else _fracs(alpha)}
    rep.update(A.to_json())
    warnings = []
    if A.report.yprime is None:
        s = suggest_kopasetic_lift(A.blocks.d_prime, A.blocks.n)
        rep["suggested_alpha_prime"] = None if s is None else _fracs(s)
    if args.svg:
        if A.blocks.n == 2:
            P = rep_polytope(A.blocks, A.report.alpha_prime)
            with open(args.svg, "w", encoding="utf-8") as f:
                f.write(render(P, "Y' polytope"))
        else:
            warnings.append(f"--svg skipped: the base has dimension {A.blocks.n}, not 2")
    rep["warnings"] = warnings
    if args.numeric:
        rep["coefficients_numeric"] = _coeffs(A.dual)
    return rep


def cmd_sigma(args) -> dict:
    M, src = _model(args)
    if src is None:
        raise InputError("sigma needs a sigma-input file")
    out = ser.model_to_json(M, src)
    warnings = []
    if src.bundle.base.smooth is None:
        warnings.append("smoothness of the base was not asserted")
    out.update({
        "command": "sigma",
        "chow_isomorphism": chow_isomorphism(src.bundle).ok,
        "dual_exists": dual_exists(M),
        "warnings": warnings,
    })
    if args.numeric:
        out["coefficients_numeric"] = _coeffs(M)
    return out


def cmd_bb(args) -> dict:
    N = ser.nef_from_json(_load(args))
    v = nef_subpartition_check(N)
    rep = {"command": "bb", "nef": v.to_json()}
    try:
        phi = phi_check(N)
        rep["phi"] = {"ok": phi.ok, "table": [_fracs(r) for r in phi.table]}
    except NefError as e:
        rep["phi"] = {"ok": False, "reason": str(e)}
    try:
        rep["bb_dual"] = bb_dual(N).to_json()
        R = bb_mirror_via_duality(N)
    except NefError as e:
        rep.update({"ok": False, "refused": str(e)})
        return rep
    rep.update(R.to_json())
    return rep


def cmd_bh(args) -> dict:
    B = ser.bh_from_json(_load(args))
    R = bh_dual(B)
    rep = {"command": "bh", "input": B.to_json()}
    rep.update(R.to_json())
    rep["mirror_file"] = ser.bh_to_json(R.mirror)
    return rep


def cmd_givental(args) -> dict:
    M, _ = _model(args)
    G, cert = hv_presentation(M)
    sg = semigroup_generation_check(M, args.bound)
    rep = {"command": "givental", "givental": G.to_json(), "hori_vafa": cert.to_json(), "semigroup": sg.to_json()}
    return rep


def _poly_input(args):
    data = _load(args)
    if data["type"] != "polyhedron":
        raise InputError(f"expected a polyhedron file, found {data['type']!r}")
    return ser.polyhedron_from_json(data)


def cmd_poly(args) -> dict:
    P = _poly_input(args)
    rep = {"command": "poly"}
    if isinstance(P, PointSet):
        rep["input"] = "vertices"
        if P.rays:
            raise InputError("a V-described input must be bounded")
        rep["vertices"] = [_fracs(p) for p in hull(P.points).points]
        try:
            Q = polar(P)
            rep["polar"] = Q.to_json()
            rep["polar_vertices"] = [_fracs(p) for p in vertices_and_rays(Q).points]
        except PolyhedronError as e:
            rep["polar"] = None
            rep["polar_note"] = str(e)
        return rep
    rep["input"] = "inequalities"
    w = interior_point(P)
    V = vertices_and_rays(P)
    rep.update({
        "interior_point": None if w is None else _fracs(w),
        "vertices": [_fracs(p) for p in V.points],
        "rays": [list(r) for r in V.rays],
    })
    if w is not None:
        info = facet_rows(P)
        rep["facet_rows"] = list(info.facets)
        form = canonical_form(P)
        rep["canonical_form"] = {"normals": [list(n) for n, _ in form], "offsets": [xl.format_fraction(a) for _, a in form]}
    if not V.rays and V.points:
        rep["lattice_points"] = [list(p) for p in lattice_points(P)]
    if w is not None and not V.rays and P.contains([0] * P.dim, strict=True):
        try:
            rep["reflexive"] = is_reflexive(P)
        except PolyhedronError as e:
            rep["reflexive"] = False
            rep["reflexive_note"] = str(e)
        rep["polar_vertices"] = [_fracs(p) for p in polar(P).points]
    return rep


def cmd_plot(args) -> str:
    P = _poly_input(args)
    return render(P)


COMMANDS = {
    "check": cmd_check,
    "dualize": cmd_dualize,
    "analyze": cmd_analyze,
    "sigma": cmd_sigma,
    "bb": cmd_bb,
    "bh": cmd_bh,
    "givental": cmd_givental,
    "poly": cmd_poly,
    "plot": cmd_plot,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tlg", description="Exact duality for toric Landau-Ginzburg models.")
    p.add_argument("--version", action="version", version=f"tlg {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("-i", "--input", required=True, help="model file, or - for stdin")
        s.add_argument("-o", "--output", help="write here instead of stdout")
        s.add_argument("--pretty", action="store_true", help="indented JSON")
        if name in ("check", "dualize", "analyze", "sigma", "givental"):
            s.add_argument("--section", default=None, help="'generic' or a JSON file with section terms")
        if name in ("check", "dualize", "analyze", "sigma"):
            s.add_argument("--numeric", action="store_true", help="add 15-digit values of exp(2 pi i lambda)")
        if name == "analyze":
            s.add_argument("--alpha-prime", help="comma-separated Im(L) override, e.g. 0,2,5,0")
            s.add_argument("--svg", help="also plot the Y' polytope (2-D bases only)")
        if name == "givental":
            s.add_argument("--bound", type=int, default=4, help="box bound for the semigroup check")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except ConsistencyError as e:
        print(f"tlg: internal consistency check failed: {e}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (OSError, ValueError, KeyError, TypeError) as e:
        print(f"tlg: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    text = result if isinstance(result, str) else ser.dumps(result, args.pretty)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
