"""Command line front end: ``dppe {implicitize,resultant,profile,oracle} FILE``.

Exit status is 0 on success, 2 for input errors, 3 when every perturbation
tried gives a zero resultant and 1 for any other failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .dpoly import DPPESystem
from .errors import DPPEError, DPPESyntaxError, InvalidSystem, OrderEscalation, SemanticError, ZeroResultant
from .implicitize import decision_to_dict, poly_to_dict, run
from .linalg import rank
from .oracle import charset, echelon_basis
from .parsing import parse_document, parse_phi_list
from .perturb import Perturbation, default_phi, perturb
from .resultant import build_ML, dcres, dcres_h, leading_matrix, profile

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_ZERO_RESULTANT = 3


def _load(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse_document(text)


def _choose_phi(arg: str | None, doc, sys_: DPPESystem, fallback_default: str):
    """Resolve ``--perturbation``: an expression list, ``none``, ``default`` or the file's ``phi:`` line."""
    if arg is None:
        if doc.phi is not None:
            return Perturbation(doc.phi)
        arg = fallback_default
    key = arg.strip().lower()
    if key == "none":
        return None
    if key == "default":
        return "default"
    return Perturbation(parse_phi_list(arg, sys_.n, allow_t=sys_.field == "Q(t)"))


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_implicitize(args, doc) -> int:
    sys_ = doc.system
    phi = _choose_phi(args.perturbation, doc, sys_, "default")
    if phi is None:
        phi = Perturbation([type(sys_.H[0])()] * sys_.n)
    dec = run(sys_, None if phi == "default" else phi, fallback=not args.no_fallback)
    lines = [dec.message()]
    if args.certificate:
        c = dec.cert
        lines.append(f"rank(S) = {c.rank_S}, L = {c.L}, N = {c.N}, gamma = {c.gamma}")
        if c.constant_equations:
            lines.append("constant equations: " + ", ".join(f"x{i + 1}" for i in c.constant_equations))
        if c.operator_rank is not None:
            lines.append(f"rank of the remaining operator matrix = {c.operator_rank}")
        if c.perturbation is not None:
            lines.append(f"perturbation: {c.perturbation}")
        if c.permutation is not None:
            lines.append("equation order: " + ", ".join(str(i + 1) for i in c.permutation))
        if c.D_phi is not None:
            lines.append(f"D_phi = {c.D_phi}")
        if c.A_D is not None:
            if c.witness == "elimination":
                lines.append("every perturbation gave a zero resultant; witness taken from G0")
            lines.append(f"A_D = {c.A_D}")
            lines.append(f"ID-content = {c.content}, c(A) = {c.c_A}")
        if c.rank_ML1 is not None:
            lines.append(f"rank(M_(L-1)) = {c.rank_ML1}, L - rank = {c.G0_size}")
        lines.append(f"decided at step {c.step}")
    _emit(args, decision_to_dict(dec, args.certificate), "\n".join(lines))
    return EXIT_OK


def cmd_resultant(args, doc) -> int:
    sys_ = doc.system
    phi = _choose_phi(args.perturbation, doc, sys_, "none")
    if phi == "default":
        phi = default_phi(sys_)
    target = sys_ if phi is None else perturb(sys_, phi)
    prof = profile(sys_)
    dc = dcres(target, prof)
    if phi is None:
        dc = dc.map_coeffs(lambda c: c[0])
    h = dcres_h(target, prof) if prof.N >= 1 else None
    payload = {
        "perturbation": None if phi is None else [str(f) for f in phi],
        "dcres": poly_to_dict(dc),
        "dcres_h": None if h is None else str(h),
    }
    text = [f"dCRes = {dc}"]
    text.append("dCRes^h = " + ("(empty: N = 0)" if h is None else str(h)))
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_profile(args, doc) -> int:
    sys_ = doc.system
    prof = profile(sys_)
    S = leading_matrix(sys_, prof)
    rS = rank(S)
    rM = rank(build_ML(sys_, prof)[0]) if prof.complete else None
    payload = {
        "n": str(prof.n),
        "o": [str(x) for x in prof.o],
        "gamma_j": [str(x) for x in prof.gamma_j],
        "gamma": str(prof.gamma),
        "N": str(prof.N),
        "L": str(prof.L),
        "Lh": str(prof.Lh),
        "S": [[str(x) for x in row] for row in S.rows],
        "rank_S": str(rS),
        "rank_ML1": None if rM is None else str(rM),
    }
    text = [
        f"n = {prof.n}",
        "o = " + ", ".join(map(str, prof.o)),
        "gamma_j = " + ", ".join(map(str, prof.gamma_j)),
        f"gamma = {prof.gamma}",
        f"N = {prof.N}",
        f"L = {prof.L}",
        f"L^h = {prof.Lh}",
        "S =",
        S.to_text(),
        f"rank(S) = {rS}",
        f"rank(M_(L-1)) = {rM}" if rM is not None else "M(L) undefined: N - o_i - gamma < 0 for some i",
    ]
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_oracle(args, doc) -> int:
    sys_ = doc.system
    basis = echelon_basis(sys_)
    cs = charset(sys_, basis=basis)
    verdict = "implicit" if cs.implicit else "lower_dim"
    payload = {
        "G0_size": str(len(basis.G0)),
        "A0_size": str(len(cs.A0)),
        "A0_leaders": [str(a.leader()) for a in cs.A0],
        "dimension": str(cs.dimension),
        "distinct_leaders": cs.distinct_leaders,
        "decision": verdict,
        "A0": [poly_to_dict(a) for a in cs.A0],
    }
    text = [
        f"|G0| = {len(basis.G0)}",
        "A0 leaders: " + ", ".join(str(a.leader()) for a in cs.A0),
        f"dimension of ID = {cs.dimension}",
    ]
    if not cs.distinct_leaders:
        text.append("warning: characteristic set leaders are not distinct")
    text.append(f"verdict: {verdict}")
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


COMMANDS = {
    "implicitize": cmd_implicitize,
    "resultant": cmd_resultant,
    "profile": cmd_profile,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dppe", description="Implicitization of linear DPPE systems.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, helptext in [
        ("implicitize", "decide the dimension and print the implicit equation"),
        ("resultant", "print the differential resultant and its homogeneous part"),
        ("profile", "print orders, completeness index, sizes and the leading matrix"),
        ("oracle", "check the dimension by linear elimination"),
    ]:
        p = sub.add_parser(name, help=helptext)
        p.add_argument("file", help="input .dppe file, or - for stdin")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if name in ("implicitize", "resultant"):
            p.add_argument(
                "--perturbation",
                metavar="LIST|none|default",
                help="comma separated phi_1..phi_n, 'none' or 'default'",
            )
        if name == "implicitize":
            p.add_argument("--no-fallback", action="store_true", help="do not retry with sorted equations")
            p.add_argument("--certificate", action="store_true", help="show the intermediate quantities")
    return ap


def _error(args, kind: str, exc: Exception, code: int) -> int:
    info = {"type": kind, "message": getattr(exc, "message", None) or str(exc)}
    for attr in ("line", "column"):
        val = getattr(exc, attr, None)
        if val is not None:
            info[attr] = str(val)
    if isinstance(exc, ZeroResultant):
        info["tried"] = [[str(f) for f in phi] for phi in exc.tried]
    if getattr(args, "json", False):
        print(json.dumps({"error": info}, indent=2))
    else:
        print(f"error: {exc}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = _load(args.file)
        return COMMANDS[args.command](args, doc)
    except OSError as e:
        return _error(args, "io", e, EXIT_INPUT)
    except DPPESyntaxError as e:
        return _error(args, "syntax", e, EXIT_INPUT)
    except (SemanticError, InvalidSystem, OrderEscalation) as e:
        return _error(args, "semantic", e, EXIT_INPUT)
    except ZeroResultant as e:
        return _error(args, "zero_resultant", e, EXIT_ZERO_RESULTANT)
    except DPPEError as e:
        return _error(args, type(e).__name__, e, EXIT_FAIL)


if __name__ == "__main__":
    sys.exit(main())
