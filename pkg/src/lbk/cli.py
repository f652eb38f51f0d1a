"""Command-line front end.

Exit codes: 0 success / verified, 1 refuted / not Brunnian, 2 inconclusive,
3 bad input.  Output is deterministic; timings are printed only on request.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import fixtures
from .certify import (INCONCLUSIVE, REFUTED, VERIFIED, CertificateError, Inconclusive, NoTrivializingSet,
                      NotBrunnian, brunnian_verdicts, parse_certificate, thm1_certificate, thm2_certificate,
                      thmG_certificate, verify_certificate)
from .diagram import STRING, DiagramError, LinkDiagram, from_json, parse_pd, recolor, serialize, to_json
from .invariants import InvariantError, conway, jones, linking_matrix, v2, v3
from .polynomial import format_polynomial
from .simplify import NONTRIVIAL, TRIVIAL, Budget, triviality
from .stringlink import (BraidWord, braid_to_stringlink, closure, insert_stringlink, is_brunnian_stringlink,
                         pure_braid_commutator, unknot_with_site)
from .twist import TwistError, twist_component

OK, REFUTED_EXIT, INCONCLUSIVE_EXIT, INPUT_ERROR = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


# ----------------------------------------------------------------------
def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    if path.startswith("example:"):
        try:
            return serialize(fixtures.by_name(path[len("example:"):]))
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_diagram(path: str) -> LinkDiagram:
    text = _read(path)
    if text.lstrip().startswith("{"):
        try:
            return from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise DiagramError(f"bad structured diagram: {exc}") from None
    return parse_pd(text)


def _emit_diagram(D: LinkDiagram, fmt: str) -> str:
    if fmt == "structured":
        return json.dumps(to_json(D), indent=2, sort_keys=True) + "\n"
    return serialize(D)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def _budget(args) -> Budget:
    return Budget.parse(args.budget) if args.budget else Budget.default()


def _braid(args) -> BraidWord:
    if getattr(args, "commutator", None):
        return pure_braid_commutator(args.commutator)
    if not args.word:
        raise UsageError("give --word 'm; s1 -s2 ...' or --commutator n")
    return BraidWord.parse(args.word)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


# ----------------------------------------------------------------------
def cmd_parse(args, out):
    D = load_diagram(args.file)
    out.write(_emit_diagram(D, args.format))
    return OK


def cmd_invariants(args, out):
    D = load_diagram(args.file)
    if any(c.kind == STRING for c in D.components):
        raise UsageError("invariants expects closed components; use 'braid close' first")
    res = {"components": D.n_components, "crossings": D.n_crossings,
           "linking_matrix": linking_matrix(D)}
    for name, fn in (("jones", jones), ("conway", conway)):
        try:
            res[name] = format_polynomial(fn(D))
        except InvariantError as exc:
            res[name] = f"unavailable ({exc})"
    if D.n_components == 1:
        res["v2"] = v2(D)
        res["v3"] = str(v3(D))
    if args.format == "structured":
        out.write(_dump(res))
        return OK
    lines = [f"components: {res['components']}", f"crossings: {res['crossings']}", "linking matrix:"]
    lines += ["  " + " ".join(f"{v:3d}" for v in row) for row in res["linking_matrix"]]
    lines += [f"jones: {res['jones']}", f"conway: {res['conway']}"]
    if "v2" in res:
        lines += [f"v2: {res['v2']}", f"v3: {res['v3']}"]
    out.write("\n".join(lines) + "\n")
    return OK


def _verdict_json(v):
    out = {"status": v.status}
    if v.status == TRIVIAL:
        out["trace"] = [str(m) for m in v.trace]
    elif v.status == NONTRIVIAL:
        out["witness"] = {k: str(x) for k, x in v.witness.items()}
    else:
        out["report"] = v.report
    return out


def cmd_brunnian(args, out):
    D = load_diagram(args.file)
    b = _budget(args)
    if D.components and all(c.kind == STRING for c in D.components):
        rep = is_brunnian_stringlink(D, b)
        verdicts, overall = rep["deletions"], rep["overall"]
        whole = None
    else:
        verdicts = brunnian_verdicts(D, b, by_color=args.by_color)
        statuses = {v.status for v in verdicts.values()}
        overall = ("NotBrunnian" if NONTRIVIAL in statuses
                   else "Brunnian" if statuses <= {TRIVIAL} else "Unknown")
        whole = triviality(D, b)
    label = "color" if args.by_color else "delete"
    if args.format == "structured":
        res = {"overall": overall, "deletions": {str(k): _verdict_json(v) for k, v in verdicts.items()}}
        if whole is not None:
            res["full_link"] = _verdict_json(whole)
        out.write(_dump(res))
    else:
        for k, v in verdicts.items():
            out.write(f"{label} {k}: {v.describe()}\n")
            if args.traces and v.status == TRIVIAL:
                out.write("".join(f"  {m}\n" for m in v.trace))
        if whole is not None:
            out.write(f"full link: {whole.describe()}\n")
        out.write(f"overall: {overall}\n")
    return {"Brunnian": OK, "NotBrunnian": REFUTED_EXIT}.get(overall, INCONCLUSIVE_EXIT)


def _framings(text):
    if text is None:
        return None
    if ":" not in text:
        return int(text)
    out = {}
    for part in text.split(","):
        c, _, f = part.partition(":")
        out[int(c)] = int(f)
    return out


def cmd_certify(args, out):
    D = load_diagram(args.file)
    b = _budget(args)
    if args.colors:
        D = recolor(D, _int_list(args.colors))
    if args.theorem == "1":
        cert = thm1_certificate(D, b)
    elif args.theorem == "2":
        cert = thm2_certificate(D, args.ht, b=b, max_size=args.max_r)
    else:
        try:
            framings = _framings(args.framing)
        except ValueError:
            raise UsageError("--framing takes an integer or color:f pairs like 3:-1") from None
        U = _int_list(args.u) if args.u else []
        if U and framings is None:
            raise UsageError("--framing is required when --u names colors")
        cert = thmG_certificate(D, U, framings, args.ht, b, max_size=args.max_r)
    text = _dump(cert.to_json()) if args.format == "structured" else cert.to_text()
    if args.output:
        Path(args.output).write_text(text)
    else:
        out.write(text)
    return OK


def cmd_verify(args, out):
    cert = parse_certificate(_read(args.file))
    rep = verify_certificate(cert, _budget(args), workers=args.workers)
    if args.format == "structured":
        res = rep.to_json()
        if args.timing:
            res["seconds"] = round(rep.timing, 3)
        out.write(_dump(res))
    else:
        out.write(rep.to_text(timing=args.timing))
    return {VERIFIED: OK, REFUTED: REFUTED_EXIT, INCONCLUSIVE: INCONCLUSIVE_EXIT}[rep.overall]


def cmd_twist(args, out):
    D = load_diagram(args.file)
    D2, undo, site = twist_component(D, args.component, args.framing)
    if args.format == "structured":
        out.write(_dump({"site": {"component": site.component, "passages": site.pairs(),
                                  "piercing": list(site.piercing)},
                         "undo": sorted(undo), "diagram": to_json(D2)}))
    else:
        out.write(f"# site {site.describe()}\n")
        out.write(f"# undo [{', '.join(map(str, sorted(undo)))}]\n")
        out.write(serialize(D2))
    return OK


def cmd_braid(args, out):
    if args.action == "commutator":
        out.write(f"{pure_braid_commutator(args.n)}\n")
        return OK
    w = _braid(args)
    if args.action == "build":
        out.write(_emit_diagram(braid_to_stringlink(w), args.format))
        return OK
    if args.action == "close":
        out.write(_emit_diagram(closure(braid_to_stringlink(w)), args.format))
        return OK
    if args.action == "check":
        rep = is_brunnian_stringlink(braid_to_stringlink(w), _budget(args))
        for k, v in rep["deletions"].items():
            out.write(f"delete strand {k}: {v.describe()}\n")
        out.write(f"overall: {rep['overall']}\n")
        return {"Brunnian": OK, "NotBrunnian": REFUTED_EXIT}.get(rep["overall"], INCONCLUSIVE_EXIT)
    # insert
    S = braid_to_stringlink(w)
    if args.knot:
        if not args.arcs:
            raise UsageError("--knot needs --arcs naming the site")
        K, arcs = load_diagram(args.knot), _int_list(args.arcs)
    else:
        K, arcs = unknot_with_site(w.m)
    out.write(_emit_diagram(insert_stringlink(K, arcs, S), args.format))
    return OK


def cmd_examples(args, out):
    names = sorted(fixtures.NAMED) + ["unlink<k>", "commutator<n>"]
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        ext = ".json" if args.format == "structured" else ".pd"
        every = dict(fixtures.NAMED)
        every.update({f"unlink{k}": fixtures.unlink(k) for k in (2, 3)})
        every.update({f"commutator{n}": fixtures.commutator(n) for n in (3, 4)})
        for name in sorted(every):
            (d / f"{name}{ext}").write_text(_emit_diagram(every[name], args.format))
        out.write(f"wrote examples to {d}\n")
        return OK
    if not args.name:
        out.write("\n".join(names) + "\n")
        return OK
    try:
        D = fixtures.by_name(args.name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    out.write(_emit_diagram(D, args.format))
    return OK


# ----------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--budget", help="e.g. 'moves=500,r3=2,growth=0' or a move count (default: $LBK_BUDGET)")
    common.add_argument("--format", choices=("text", "structured"), default="text")

    p = _Parser(prog="lbk", description="Brunnian links, n-triviality certificates and framed twists.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("parse", parents=[common], help="validate a diagram and print it back")
    s.add_argument("file")
    s.set_defaults(run=cmd_parse)

    s = sub.add_parser("invariants", parents=[common], help="linking matrix, Jones, Conway, v2/v3")
    s.add_argument("file")
    s.set_defaults(run=cmd_invariants)

    s = sub.add_parser("brunnian", parents=[common], help="verdict for every single deletion")
    s.add_argument("file")
    s.add_argument("--by-color", action="store_true", help="delete whole colors instead of components")
    s.add_argument("--traces", action="store_true", help="print the move trace of each trivial sublink")
    s.set_defaults(run=cmd_brunnian)

    s = sub.add_parser("certify", parents=[common], help="build an n-triviality certificate")
    s.add_argument("file")
    s.add_argument("--theorem", choices=("1", "2", "G"), required=True)
    s.add_argument("--colors", help="recolor components, e.g. 1,1,2,3")
    s.add_argument("--u", help="colors to twist along (theorem G), e.g. 3")
    s.add_argument("--framing", help="integer, or color:f pairs like 3:-1,4:2")
    s.add_argument("--ht", type=int, help="homotopically trivial component (theorem 2) or color (theorem G)")
    s.add_argument("--max-r", type=int, default=2, help="largest self-crossing set to search (default 2)")
    s.add_argument("-o", "--output", help="write the certificate here instead of stdout")
    s.set_defaults(run=cmd_certify)

    s = sub.add_parser("verify-cert", parents=[common], help="check every subset of a certificate")
    s.add_argument("file")
    s.add_argument("--workers", type=int, default=None, help="evaluate subsets on this many threads")
    s.add_argument("--timing", action="store_true")
    s.set_defaults(run=cmd_verify)

    s = sub.add_parser("twist", parents=[common], help="framed twist along a circle component")
    s.add_argument("file")
    s.add_argument("--component", type=int, required=True)
    s.add_argument("--framing", type=int, required=True)
    s.set_defaults(run=cmd_twist)

    s = sub.add_parser("braid", parents=[common], help="braid words and string links")
    s.add_argument("action", choices=("build", "close", "check", "insert", "commutator"))
    s.add_argument("n", nargs="?", type=int, help="strand count for 'commutator'")
    s.add_argument("--word", help="braid word 'm; s1 -s2 ...'")
    s.add_argument("--commutator", type=int, metavar="N", help="use the iterated commutator on N strands")
    s.add_argument("--knot", help="knot diagram to insert into (default: unknot with an m-strand site)")
    s.add_argument("--arcs", help="site arcs of --knot, comma separated")
    s.set_defaults(run=cmd_braid)

    s = sub.add_parser("examples", parents=[common], help="list, print or write the bundled fixtures")
    s.add_argument("name", nargs="?")
    s.add_argument("--out", help="write every fixture into this directory")
    s.set_defaults(run=cmd_examples)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.budget:
            try:
                Budget.parse(args.budget)
            except ValueError as exc:
                raise UsageError(f"--budget: {exc}") from None
        if args.command == "braid" and args.action == "commutator" and args.n is None:
            raise UsageError("braid commutator needs n")
        return args.run(args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return INPUT_ERROR
    except NotBrunnian as exc:
        err.write(f"not Brunnian: {exc}\n")
        return REFUTED_EXIT
    except (Inconclusive, NoTrivializingSet) as exc:
        err.write(f"inconclusive: {exc}\n")
        return INCONCLUSIVE_EXIT
    except (CertificateError, DiagramError, TwistError, InvariantError, ValueError, KeyError) as exc:
        err.write(f"error: {exc}\n")
        return INPUT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
