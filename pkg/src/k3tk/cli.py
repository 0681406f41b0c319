"""Command-line front end.

Every command prints one JSON report::

    {"command": {...}, "result": {...}, "citations": [...], "exit_code": n}

Exit codes: 0 success, 1 domain error, 2 parse error, 3 I/O error.
Rationals are printed as "p/q" strings; ``--approx`` adds a float block that
is labeled as not authoritative.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import anticanonical as ac
from . import degeneration as dg
from . import elliptic as ell
from . import git
from . import lattice as lt
from . import strata as st
from .forms import FormError, format_rational, parse_rational

OK, DOMAIN, PARSE, IO = 0, 1, 2, 3


class ParseError(Exception):
    pass


class ArgParser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit on its own
        raise ParseError(message)


# ---------------------------------------------------------------------------
# input helpers


def load_payload(src: str) -> dict:
    """Inline JSON (starting with '{') or a UTF-8 file path."""
    text = src
    if not src.lstrip().startswith("{"):
        try:
            text = Path(src).read_text(encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot read {src}: {exc.strerror or exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {src if text is not src else 'inline payload'}: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError("payload must be a JSON object")
    return obj


def rational_list(s: str) -> list[Fraction]:
    try:
        return [parse_rational(x) for x in s.split(",")]
    except FormError as exc:
        raise ParseError(str(exc)) from None


def int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",")]
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {s!r}") from None


def _fmt(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    return x


# ---------------------------------------------------------------------------
# commands; each returns (result, citations)


def cmd_stability(a) -> tuple[dict, list[str]]:
    if not (a.pair or a.sextic):
        raise ParseError("stability needs --pair or --sextic")
    if a.pair:
        data = git.sextic_pair_from_json(load_payload(a.pair))
    else:
        obj = load_payload(a.sextic)
        data = {"sextic": git.sextic_from_json(obj), "line": None, "frame_hints": [], "eps": None,
                "coverage_certified": False}
    if a.eps is not None:
        try:
            data["eps"] = parse_rational(a.eps)
        except FormError as exc:
            raise ParseError(str(exc)) from None
    C, L = data["sextic"], data["line"]
    result: dict = {"input": git.sextic_pair_to_json(C, L, data["frame_hints"], data["eps"],
                                                     data["coverage_certified"])}
    cites = ["git:numerical-function"]
    result["sextic_torus"] = git.torus_stability(C)
    if L is not None:
        v = git.pair_verdict(C, L, data["frame_hints"], eps=data["eps"],
                             coverage_certified=data["coverage_certified"])
        result["verdict"] = v.to_json()
        cites.append("git:pair-verdict")
        if v.orbit:
            cites.append(f"git:minimal-orbit:{v.orbit}")
    if a.slc or L is None:
        result["slc"] = git.slc_double_cover_test(C, data["frame_hints"])
        cites.append("git:slc-double-cover")
    return result, cites


def cmd_classify(a) -> tuple[dict, list[str]]:
    if a.pullback:
        res = ac.pullback_coefficients(_resolution(load_payload(a.pullback)))
        return {
            "pullback": {
                "coefficients": list(res.coefficients),
                "max_coefficient": res.max_coefficient,
                "reciprocal": None if res.reciprocal is None else format_rational(res.reciprocal),
            }
        }, ["anticanonical:pullback"]
    if a.pair:
        pair = ac.pair_from_json(load_payload(a.pair))
        minimal, contracted = ac.relative_minimalize(pair)
        prof = minimal.profile()
        out = {"input": ac.pair_to_json(pair), "minimal": ac.pair_to_json(minimal),
               "contracted": [list(e) for e in contracted], "profile": _profile_json(prof)}
        out.update(_classify_profile(prof, a.l_sim_d, a.reduced_connected))
        return out, ["anticanonical:minimalize", "anticanonical:six-cases"]
    if not a.profile:
        raise ParseError("classify needs --profile, --pair or --pullback")
    vals = int_list(a.profile)
    if len(vals) not in (2, 3):
        raise ParseError("--profile is l2,ld or l2,ld,d2")
    prof = ac.NumericalProfile(*vals)
    out = {"profile": _profile_json(prof)}
    out.update(_classify_profile(prof, a.l_sim_d, a.reduced_connected))
    return out, ["anticanonical:riemann-roch", "anticanonical:six-cases"]


def _resolution(obj: dict) -> ac.ResolutionConfig:
    try:
        return ac.resolution_from_json(obj)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"resolution JSON needs gram, incidence, mult: {exc}") from None


def _profile_json(p: ac.NumericalProfile) -> dict:
    return {"l2": p.l2, "ld": p.ld, "d2": p.d2}


def _classify_profile(p: ac.NumericalProfile, l_sim_d: bool, reduced_connected: bool) -> dict:
    problems = ac.validate_profile(p, l_sim_d=l_sim_d)
    out: dict = {"validation": problems}
    try:
        out["h0"] = ac.riemann_roch_dim(p, reduced_connected=reduced_connected)
    except ac.PairError as exc:
        out["h0"] = None
        out["h0_error"] = str(exc)
    case = ac.classify_zero_surface(p)
    out["case"] = case.case_id
    out["description"] = case.description
    out["singularity"] = case.singularity
    rng = case.cusp_range()
    if rng is not None:
        out["cusp_range"] = list(rng)
        out["cusps"] = [list(c) for c in case.cusps]
    return out


def cmd_lattice(a) -> tuple[dict, list[str]]:
    if a.wp:
        sig = lt.wp_moduli_signature(a.wp, pairs=a.pairs)
        return {"label": a.wp, "pairs": a.pairs, "signature": list(sig)}, ["lattice:highest-root"]
    blocks = None
    if a.blocks:
        blocks = [b.strip() for b in a.blocks.split(",") if b.strip()]
        lat = lt.from_blocks(blocks)
    elif a.input:
        obj = load_payload(a.input)
        blocks = obj.get("blocks")
        lat = lt.lattice_from_json(obj)
    else:
        raise ParseError("lattice needs --blocks, --input or --wp")
    cites = ["lattice:root-enumeration"]
    result: dict = {"input": lt.lattice_to_json(lat), "determinant": lat.determinant()}
    if a.quotient:
        if not blocks:
            raise ParseError("--quotient needs a lattice given by blocks")
        e1, e2 = lt.standard_isotropic_pair(blocks)
        lat = lt.isotropic_quotient(lat, e1, e2)
        result["quotient"] = lt.lattice_to_json(lat)
        result["quotient_determinant"] = lat.determinant()
        cites.append("lattice:isotropic-quotient")
    work = lat if lat.is_negative_definite() else lat.negative_definite()
    rep = lt.identify_root_system(work)
    result["root_system"] = {"label": rep.label(), "components": list(rep.components), "root_count": rep.root_count,
                             "rank": rep.rank}
    return result, cites


def cmd_jinv(a) -> tuple[dict, list[str]]:
    if a.alpha:
        vals = rational_list(a.alpha)
        if len(vals) != 3:
            raise ParseError("--alpha takes exactly three rationals")
        t = ell.ConicTriple(vals)
    elif a.input:
        try:
            t = ell.triple_from_json(load_payload(a.input))
        except (FormError, ValueError) as exc:
            raise ParseError(str(exc)) from None
    else:
        raise ParseError("jinv needs --alpha or --input")
    inv = ell.invariants(t)
    return {"triple": {"alpha": [format_rational(x) for x in t.alpha]}, "invariants": inv.to_json(approx=a.approx)}, [
        "elliptic:cross-ratio",
        "elliptic:weierstrass",
    ]


_BUILTIN = {
    "e7_d10": dg.e7_d10_chain,
    "two_e8_a1": dg.two_e8_a1_chain,
    "two_planes": dg.two_planes,
    "tetrahedron": lambda: dg.type_iii_model(dg.TETRAHEDRON, [(2, 0)] + [(0, 0)] * 3),
    "pillow": lambda: dg.type_iii_model(dg.PILLOW, [(2, 0)] + [(0, 0)] * 2),
}


def cmd_degenerate(a) -> tuple[dict, list[str]]:
    if a.builtin:
        m = _BUILTIN[a.builtin]()
    elif a.model:
        m = dg.model_from_json(load_payload(a.model))
    else:
        raise ParseError("degenerate needs --model or --builtin")
    cites = ["degeneration:kulikov"]
    steps = []
    if a.base_change:
        m = dg.base_change(m, a.base_change)
        steps.append({"base_change": a.base_change})
        cites.append("degeneration:base-change")
    for i in a.twist or ():
        m = dg.twist_profile(m, i)
        steps.append({"twist": i, "l2": list(m.l2())})
        cites.append("degeneration:twist")
    for _ in range(a.auto_twist):
        m = dg.twist_first(m, order=a.order)
        steps.append({"twist": "auto", "l2": list(m.l2())})
    result: dict = {"model": dg.model_to_json(m), "steps": steps, "validation": dg.validate(m)}
    if m.kind == "III":
        cx = m.complex
        result["triangles"] = len(cx.triangles)
        result["euler_characteristic"] = cx.euler_characteristic()
    if a.log_canonical:
        lcp = dg.log_canonical_profile(m)
        result["log_canonical"] = {
            "zero_surfaces": [{"component": z.component, "case": z.case_id, "description": z.description,
                               "partial_smoothing": z.partial_smoothing} for z in lcp.zero_surfaces],
            "contracted": list(lcp.contracted),
            "descriptor": lcp.descriptor,
            "stratum": lcp.stratum,
        }
        cites.append("degeneration:log-canonical")
    return result, cites


def cmd_strata(a) -> tuple[dict, list[str]]:
    result: dict = {}
    cites = []
    if a.export:
        paths = st.export_tables(a.export, a.format)
        result["written"] = [str(p) for p in paths]
        cites.append("strata:export")
    if a.id:
        rec = st.get(a.id, a.space)
        result["record"] = rec.to_json()
        if a.space == st.PAIRS:
            result["bb_target"] = st.bb_target(rec.id)
        cites.append(rec.anchor)
    if a.descriptor:
        d = st.PairDescriptor.from_json(load_payload(a.descriptor))
        rec = st.stratum_of(d)
        result["descriptor"] = d.to_json()
        result["stratum"] = rec.to_json()
        cites.append(rec.anchor)
    if a.leq:
        g = st.adjacency_graph(a.space)
        x, y = a.leq
        result["leq"] = {"lower": x, "upper": y, "holds": g.leq(x, y)}
        cites.append(f"strata:adjacency:{a.space}")
    if not result:
        g = st.adjacency_graph(a.space)
        result["graph"] = g.to_json()
        cites.append(f"strata:adjacency:{a.space}")
    return result, cites


def cmd_audit(a) -> tuple[dict, list[str]]:
    report = st.dimension_audit(strict=False)
    graphs = {sp: st.adjacency_graph(sp).violations() for sp in (st.GIT, st.KIRWAN, st.PAIRS)}
    tables = {}
    for fmt in ("csv", "json"):
        files = st.render_tables(fmt)
        again = st.render_tables(fmt)
        tables[fmt] = {name: {"bytes": len(body.encode("utf-8")), "stable": body == again[name]}
                       for name, body in sorted(files.items())}
    rows = {"table1": len(st.table1()), "table2": len(st.table2())}
    pre = {k: list(v) for k, v in st.bb_preimages().items()}
    ok = report.ok and not any(graphs.values()) and all(f["stable"] for t in tables.values() for f in t.values())
    result = {
        "ok": ok,
        "dimensions": report.to_json(),
        "poset_violations": graphs,
        "table_rows": rows,
        "bb_preimages": pre,
        "exports": tables,
    }
    if a.export:
        result["written"] = [str(p) for fmt in ("csv", "json") for p in st.export_tables(a.export, fmt)]
    if not ok:
        raise AuditFailure(result)
    return result, ["strata:dimension-audit", "strata:tables", "strata:adjacency"]


class AuditFailure(Exception):
    def __init__(self, payload: dict):
        super().__init__("audit found mismatches")
        self.payload = payload


# ---------------------------------------------------------------------------
# parser and dispatch


def build_parser() -> ArgParser:
    p = ArgParser(prog="k3tk", description="Degree-2 K3 pair toolkit")
    p.add_argument("--compact", action="store_true", help="print JSON on one line")
    sub = p.add_subparsers(dest="name", parser_class=ArgParser)

    s = sub.add_parser("stability", help="GIT stability of a sextic or a sextic-line pair")
    s.add_argument("--pair", help="pair JSON (file or inline)")
    s.add_argument("--sextic", help="sextic JSON (file or inline)")
    s.add_argument("--eps", help="line weight as p/q; symbolic small epsilon if omitted")
    s.add_argument("--slc", action="store_true", help="also run the double-cover slc test")

    s = sub.add_parser("classify", help="classify polarized anticanonical pairs")
    s.add_argument("--profile", help="l2,ld[,d2]")
    s.add_argument("--l-sim-d", action="store_true", help="L is linearly equivalent to D")
    s.add_argument("--reduced-connected", action="store_true",
                   help="|L| has a reduced connected member (needed for h0 when L.D = 0)")
    s.add_argument("--pair", help="lattice model JSON; minimalized before classifying")
    s.add_argument("--pullback", help="resolution JSON; pullback coefficients of the strict transform")

    s = sub.add_parser("lattice", help="root systems of integral lattices")
    s.add_argument("--blocks", help="comma-separated blocks, e.g. U,U,E8,E8,-2")
    s.add_argument("--input", help="lattice JSON")
    s.add_argument("--quotient", action="store_true", help="pass to E^perp/E for the standard isotropic plane")
    s.add_argument("--wp", help="weighted projective signature for E7 or E8")
    s.add_argument("--pairs", action="store_true", help="with --wp: variant for pairs with a section")

    s = sub.add_parser("jinv", help="j-invariant of the double cover of a conic")
    s.add_argument("--alpha", help="three rationals a1,a2,a3")
    s.add_argument("--input", help='JSON {"alpha": [...]}')
    s.add_argument("--approx", action="store_true", help="add non-authoritative floats")

    s = sub.add_parser("degenerate", help="Kulikov model combinatorics")
    s.add_argument("--model", help="model JSON")
    s.add_argument("--builtin", choices=sorted(_BUILTIN))
    s.add_argument("--base-change", type=int, metavar="K")
    s.add_argument("--twist", type=int, action="append", metavar="I", help="twist across curve I (repeatable)")
    s.add_argument("--auto-twist", type=int, default=0, metavar="N", help="apply N twists chosen by --order")
    s.add_argument("--order", choices=("lowest", "highest"), default="lowest")
    s.add_argument("--log-canonical", action="store_true")

    s = sub.add_parser("strata", help="boundary strata database")
    s.add_argument("--space", choices=(st.GIT, st.KIRWAN, st.PAIRS), default=st.PAIRS)
    s.add_argument("--id", help="stratum id, e.g. II2, IIIzeta, tau")
    s.add_argument("--descriptor", help="descriptor JSON")
    s.add_argument("--leq", nargs=2, metavar=("A", "B"), help="is A in the closure of B")
    s.add_argument("--export", metavar="DIR", help="write tables and adjacency graphs")
    s.add_argument("--format", choices=("csv", "json"), default="csv")

    s = sub.add_parser("audit", help="dimension audit and table reproduction")
    s.add_argument("--export", metavar="DIR")
    return p


_COMMANDS = {
    "stability": cmd_stability,
    "classify": cmd_classify,
    "lattice": cmd_lattice,
    "jinv": cmd_jinv,
    "degenerate": cmd_degenerate,
    "strata": cmd_strata,
    "audit": cmd_audit,
}

_DOMAIN_ERRORS = (
    git.GitError, ac.PairError, lt.LatticeError, ell.EllipticError, dg.DegenerationError, st.StrataError,
    FormError, ValueError, ArithmeticError,
)


def dispatch(argv: Sequence[str]) -> dict:
    """Run one command and return its report; never raises for user errors."""
    argv = list(argv)
    echo: dict = {"argv": argv}
    try:
        args = build_parser().parse_args(argv)
        if not args.name:
            raise ParseError("a subcommand is required: " + ", ".join(_COMMANDS))
        echo["name"] = args.name
        result, cites = _COMMANDS[args.name](args)
        code = OK
    except ParseError as exc:
        result, cites, code = {"error": {"type": "parse", "message": str(exc)}}, [], PARSE
    except AuditFailure as exc:
        result, cites, code = exc.payload, ["strata:dimension-audit"], DOMAIN
    except OSError as exc:
        result, cites, code = {"error": {"type": "io", "message": str(exc)}}, [], IO
    except _DOMAIN_ERRORS as exc:
        result, cites, code = {"error": {"type": type(exc).__name__, "message": str(exc)}}, [], DOMAIN
    return {"command": echo, "result": result, "citations": sorted(set(cites)), "exit_code": code}


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    if any(x in ("-h", "--help") for x in argv):
        try:
            build_parser().parse_args(argv)
        except SystemExit as exc:
            return int(exc.code or 0)
    compact = "--compact" in argv
    report = dispatch(argv)
    text = json.dumps(report, sort_keys=True, ensure_ascii=False, indent=None if compact else 2, default=_fmt)
    try:
        sys.stdout.write(text + "\n")
    except OSError:
        return IO
    if report["exit_code"] == PARSE:
        print(f"k3tk: {report['result']['error']['message']}", file=sys.stderr)
    return report["exit_code"]


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
