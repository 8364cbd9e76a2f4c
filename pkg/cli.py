import argparse
import json
import logging
import sys
from typing import List, Optional, TextIO

from acceptance import CHECKS, run_check
from config import logging_config
from core.complex import SimplicialComplex, attach_leaf
from core.errors import MorseForgeError, ParseError
from core.families import FAMILIES, generate, leafify
from core.io import complex_to_payload, read_complex, read_poset
from core.schemas import CollapsibilityPayload, CollapseStep, ErrorPayload
from morse.builder import f, morse_complex, pure_morse_complex
from morse.catalog import algorithm1_report, load_catalog
from morse.homology import reduced_betti
from morse.strong_homotopy import core, is_minimal
from morse.symmetry import automorphism_group

logger = logging.getLogger(__name__)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so run() owns the exit code."""

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="morseforge", description="Morse complexes, strong collapses and their checks")
    verbs = parser.add_subparsers(dest="verb", required=True)

    gen = verbs.add_parser("gen", help="Generate a standard complex")
    gen.add_argument("family", choices=FAMILIES)
    gen.add_argument("param", help="Integer parameter, or an input complex for leafify")
    gen.add_argument("--leaf", nargs="?", const="", default=None, metavar="VERTEX",
                     help="Attach a leaf at VERTEX (default: the first vertex)")
    gen.add_argument("--leafify", action="store_true", help="Attach a leaf to every vertex")

    for verb, text in (
        ("morse", "Morse complex of a complex"),
        ("pure", "Pure Morse complex of a complex"),
        ("core", "Core of a complex with its collapse trace"),
        ("sc", "Strong collapsibility of a complex"),
        ("aut", "Automorphism group of a complex"),
    ):
        sub = verbs.add_parser(verb, help=text)
        sub.add_argument("input", help="Path to a .cplx or JSON file, or - for stdin")

    poset = verbs.add_parser("f", help="Morse complex of a poset")
    poset.add_argument("input", help="Path to a .poset or JSON file, or - for stdin")

    betti = verbs.add_parser("betti", help="Reduced Betti numbers")
    betti.add_argument("input")
    betti.add_argument("--coeff", choices=["z2", "z"], default="z2")

    check = verbs.add_parser("check", help="Run a named acceptance check, or all")
    check.add_argument("check_id")

    alg1 = verbs.add_parser("alg1", help="Catalog pattern scan on a graph")
    alg1.add_argument("input")
    alg1.add_argument("--catalog", help="Catalog file replacing the built-in catalog")
    alg1.add_argument("--exact", action="store_true", help="Also decide strong collapsibility exactly")
    return parser


def _read_source(source: str, stdin: TextIO) -> str:
    name = "stdin" if source == "-" else source
    try:
        if source == "-":
            return stdin.read()
        with open(source, encoding="utf-8") as handle:
            return handle.read()
    except UnicodeDecodeError as e:
        raise ParseError(f"{name} is not valid UTF-8: byte {e.object[e.start]:#04x} at offset {e.start}")
    except OSError as e:
        raise UsageError(f"Cannot read {source}: {e.strerror}")


def _generate(args, stdin: TextIO) -> SimplicialComplex:
    if args.family == "leafify":
        complex_ = leafify(read_complex(_read_source(args.param, stdin)))
    else:
        try:
            param = int(args.param)
        except ValueError:
            raise UsageError(f"{args.family} needs an integer parameter, got {args.param!r}")
        complex_ = generate(args.family, param)
    if args.leafify:
        complex_ = leafify(complex_)
    if args.leaf is not None:
        complex_ = attach_leaf(complex_, args.leaf or 0)
    return complex_


def _dispatch(args, stdin: TextIO) -> tuple:
    """Run one verb; returns (json text, exit code)."""
    if args.verb == "gen":
        return complex_to_payload(_generate(args, stdin)).model_dump_json(), 0
    if args.verb == "check":
        if args.check_id != "all" and args.check_id not in CHECKS:
            raise UsageError(f"Unknown check {args.check_id!r}; expected one of all, {', '.join(CHECKS)}")
        reports = run_check(args.check_id)
        passed = all(r.passed for r in reports)
        if len(reports) == 1:
            return reports[0].model_dump_json(), 0 if passed else 1
        body = {"passed": passed, "reports": [r.model_dump(mode="json") for r in reports]}
        return json.dumps(body), 0 if passed else 1

    text = _read_source(args.input, stdin)
    if args.verb == "f":
        return f(read_poset(text)).to_payload().model_dump_json(), 0

    K = read_complex(text)
    if args.verb == "morse":
        return morse_complex(K).to_payload().model_dump_json(), 0
    if args.verb == "pure":
        return pure_morse_complex(K).to_payload().model_dump_json(), 0
    if args.verb == "core":
        _, trace = core(K)
        return trace.to_payload().model_dump_json(), 0
    if args.verb == "sc":
        reduced, trace = core(K)
        payload = CollapsibilityPayload(
            strongly_collapsible=reduced.n_vertices == 1,
            minimal=is_minimal(K),
            core_size=reduced.n_vertices,
            steps=[CollapseStep(removed=r, witness=w) for r, w in trace.steps],
        )
        return payload.model_dump_json(), 0
    if args.verb == "betti":
        return reduced_betti(K, "Z" if args.coeff == "z" else "Z2").to_payload().model_dump_json(), 0
    if args.verb == "aut":
        return automorphism_group(K).to_payload(K.labels).model_dump_json(), 0
    if args.verb == "alg1":
        catalog = load_catalog(_read_source(args.catalog, stdin)) if args.catalog else None
        return algorithm1_report(K, catalog, exact=args.exact).model_dump_json(), 0
    raise UsageError(f"Unknown verb {args.verb!r}")


def run(argv: List[str], stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None) -> int:
    """Execute one command. Exit codes: 0 success, 1 domain error or failed check, 2 usage error."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
        output, code = _dispatch(args, stdin)
    except UsageError as e:
        stdout.write(ErrorPayload(error=str(e), kind="UsageError").model_dump_json() + "\n")
        return 2
    except MorseForgeError as e:
        logger.error(f"Error running {' '.join(argv)}: {str(e)}")
        stdout.write(ErrorPayload(error=str(e), kind=type(e).__name__).model_dump_json() + "\n")
        return 1
    stdout.write(output + "\n")
    return code


def main():
    logging.basicConfig(
        level=getattr(logging, logging_config.LEVEL),
        format=logging_config.FORMAT,
        stream=sys.stderr,
    )
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
