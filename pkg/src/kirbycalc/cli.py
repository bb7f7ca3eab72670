"""Command-line frontend.

All results go to stdout, diagnostics to stderr, and identical inputs
produce byte-identical output.  Exit codes: 0 success, 1 a verdict came
back unknown (or a selftest failed), 2 usage/parse/IO error, 3 a move or
certificate could not be applied.
"""

from __future__ import annotations

import argparse
import contextlib
import os
import sys

from . import golden, moves
from .canonical import canonical_hash
from .diagram import HandleDiagram, validate
from .gluck import (
    CertificateError,
    check_gluck_triviality_hypothesis,
    gluck_twist,
    surger_sphere,
    trivialize_gluck,
)
from .invariants import invariant_summary
from .lang import ParseError, parse_certificate, parse_diagram, parse_script, serialize_diagram
from .moves import MoveError

_CERT_HELP = (
    "certificate file: one `term <handle> sign <+|-> conj <word-expr>` per line; "
    "conj 1 means an empty conjugator"
)


def _sign(text: str) -> int:
    if text == "+":
        return 1
    if text == "-":
        return -1
    raise argparse.ArgumentTypeError(f"expected + or -, got {text!r}")


def _build_parser(default_budget: int) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kirbycalc",
        description="Symbolic calculus for 4-manifold handle diagrams.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("invariants", help="print the invariant summary of a diagram")
    sp.add_argument("diagram", help="diagram file (.kd)")

    sp = sub.add_parser("apply", help="apply a move script to a diagram")
    sp.add_argument("diagram", help="diagram file (.kd)")
    sp.add_argument("script", help="move script file (.ks)")
    sp.add_argument("--emit", metavar="OUT", help="also write the resulting diagram to OUT")
    sp.add_argument("--log", action="store_true", help="print the per-step hash chain")

    sp = sub.add_parser("gluck", help="twist along a sphere handle")
    sp.add_argument("diagram", help="diagram file (.kd)")
    sp.add_argument("--sphere", required=True, help="0-framed trivial-word handle id")
    sp.add_argument("--sign", type=_sign, default=1, help="+ (default) or -")

    sp = sub.add_parser("surger", help="surger out a sphere handle (trade it for a dot)")
    sp.add_argument("diagram", help="diagram file (.kd)")
    sp.add_argument("--sphere", required=True, help="0-framed trivial-word handle id")
    sp.add_argument("--dot", required=True, help="fresh generator id for the new dot")

    sp = sub.add_parser(
        "check",
        help="look for an odd spherical class in the surgered diagram",
        description="Semi-decides whether the twist along the sphere leaves the "
        "manifold unchanged; `unknown` is not a refusal. " + _CERT_HELP,
    )
    sp.add_argument("diagram", help="diagram file (.kd)")
    sp.add_argument("--sphere", required=True, help="0-framed trivial-word handle id")
    sp.add_argument("--cert", help=_CERT_HELP)

    sp = sub.add_parser(
        "trivialize",
        help="search for a script undoing a twist",
        description="Twists along the sphere, then searches for a move script whose "
        "endpoint matches the original diagram's canonical form.",
    )
    sp.add_argument("diagram", help="diagram file (.kd)")
    sp.add_argument("--sphere", required=True, help="0-framed trivial-word handle id")
    sp.add_argument("--handle", required=True, help="trivial-word odd-framed handle id")
    sp.add_argument(
        "--budget",
        type=int,
        default=default_budget,
        help=f"max nodes taken from the search frontier (default {default_budget})",
    )

    sub.add_parser("selftest", help="run the embedded golden corpus")
    return p


class _CliError(Exception):
    """A diagnostic that already carries its full message."""


def _load_diagram(path: str) -> HandleDiagram:
    with open(path, encoding="utf-8") as f:
        d = parse_diagram(f.read())
    problems = validate(d)
    if problems:
        raise _CliError(f"{path}: " + "; ".join(problems))
    return d


def _run(args: argparse.Namespace, out, err) -> int:
    if args.command == "invariants":
        d = _load_diagram(args.diagram)
        out.write(invariant_summary(d).render())
        return 0

    if args.command == "apply":
        d = _load_diagram(args.diagram)
        with open(args.script, encoding="utf-8") as f:
            script = parse_script(f.read())
        result, log = moves.apply_script(d, script)
        text = serialize_diagram(result)
        out.write(text)
        out.write("\n")
        if args.log:
            for n, step in enumerate(log, start=1):
                out.write(f"step {n}: {step.pre_hash} -> {step.post_hash} : {moves.format_move(step.move)}\n")
        out.write(f"hash: {canonical_hash(result)}\n")
        if args.emit:
            with open(args.emit, "w", encoding="utf-8") as f:
                f.write(text)
        return 0

    if args.command == "gluck":
        d = _load_diagram(args.diagram)
        post = gluck_twist(d, args.sphere, args.sign)
        for prefix, diagram in (("pre", d), ("post", post)):
            for line in invariant_summary(diagram).render().splitlines():
                out.write(f"{prefix}.{line}\n")
        out.write("\n")
        out.write(serialize_diagram(post))
        return 0

    if args.command == "surger":
        d = _load_diagram(args.diagram)
        out.write(serialize_diagram(surger_sphere(d, args.sphere, args.dot)))
        return 0

    if args.command == "check":
        d = _load_diagram(args.diagram)
        cert = None
        if args.cert:
            with open(args.cert, encoding="utf-8") as f:
                cert = parse_certificate(f.read())
        verdict = check_gluck_triviality_hypothesis(d, args.sphere, cert)
        out.write(verdict.render())
        return 0 if verdict.certified else 1

    if args.command == "trivialize":
        d = _load_diagram(args.diagram)
        try:
            verdict = trivialize_gluck(d, args.sphere, args.handle, budget=args.budget)
        except ValueError as e:
            err.write(f"error: {e}\n")
            return 2
        out.write(verdict.render())
        return 0 if verdict.certified else 1

    if args.command == "selftest":
        results = golden.run_all()
        passed = 0
        for name, ok, detail in results:
            if ok:
                passed += 1
                out.write(f"selftest {name}: pass\n")
            else:
                out.write(f"selftest {name}: FAIL ({detail})\n")
        out.write(f"selftest: {passed}/{len(results)} passed\n")
        return 0 if passed == len(results) else 1

    err.write(f"error: unknown command {args.command!r}\n")
    return 2


def run(argv: list[str], stdout=None, stderr=None) -> int:
    """Run one command; returns the exit code instead of exiting."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    try:
        default_budget = int(os.environ.get("KIRBY_BUDGET", "10000"))
    except ValueError:
        err.write("error: KIRBY_BUDGET must be an integer\n")
        return 2
    parser = _build_parser(default_budget)
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    try:
        return _run(args, out, err)
    except ParseError as e:
        s = e.span
        err.write(f"error: line {s.line} col {s.column}: {e.message}\n")
        return 2
    except _CliError as e:
        err.write(f"error: {e}\n")
        return 2
    except OSError as e:
        err.write(f"error: {e}\n")
        return 2
    except CertificateError as e:
        err.write(f"error: certificate: {e}\n")
        return 3
    except MoveError as e:
        err.write(f"error: {e}\n")
        return 3


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
