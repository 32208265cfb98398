#!/usr/bin/env python3
"""
MonoidKit command line.

Every command prints exactly one JSON object on stdout. Human-readable
notes go to stderr unless --json is given. Exit codes: 0 success,
2 parse or shape error, 3 I/O error, 4 failed precondition,
10 not quasi-integral, 11 undecided, 1 failed sweep or internal check.
"""

import argparse
import logging
import sys

from src import __version__
from src.config import get_settings
from src.documents import dumps, load_document, to_document, write_document
from src.errors import (
    DiagramShapeError,
    DimensionError,
    DocumentError,
    DocumentIOError,
    InvariantViolation,
    MorphismError,
    NonSalientConeError,
    PreconditionError,
)
from src.intlin import orthogonal_complement
from src.logpoint import (
    ChartMorphism,
    diagonal_rank_condition,
    is_strict_chart,
    kummer_strict_condition,
)
from src.monoid import (
    fiber_product_saturated,
    hilbert_basis,
    is_fine,
    is_fs,
    is_injective_map,
    is_local,
    is_saturated,
    is_sharp,
    saturation,
    unit_generators,
)
from src.oracle import bounded_pushout_oracle
from src.pushout import (
    NOT_QUASI_INTEGRAL,
    QUASI_INTEGRAL,
    absorption_certificate,
    construct_nonqi_extension,
    pushout_group_invariants,
    quasi_integrality,
    validate_pushout,
)
from src.sweep import FAILED, run_sweep

logger = logging.getLogger("monoidkit")

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_PARSE = 2
EXIT_IO = 3
EXIT_PRECONDITION = 4
EXIT_NOT_QUASI_INTEGRAL = 10
EXIT_UNKNOWN = 11

VERDICT_EXIT = {QUASI_INTEGRAL: EXIT_OK, NOT_QUASI_INTEGRAL: EXIT_NOT_QUASI_INTEGRAL}


# -------- Output helpers --------

class Output:
    """stdout carries one JSON object; stderr carries notes unless quiet."""

    def __init__(self, quiet):
        self.quiet = quiet

    def note(self, text):
        if not self.quiet:
            print(text, file=sys.stderr)

    def emit(self, obj):
        print(dumps(obj))


def _vectors(vs):
    return [list(v) for v in vs]


def _pair(pair):
    return [list(pair[0]), list(pair[1])]


# -------- Commands --------

def cmd_analyze(args, out):
    M = load_document(args.path, expected="monoid")
    report = {
        "ambient_dim": M.ambient_dim,
        "generator_count": len(M.generators),
        "gp_rank": len(M.gp_basis),
        "unit_rank": len(unit_generators(M)),
        "is_sharp": is_sharp(M),
        "is_saturated": is_saturated(M),
        "is_fine": is_fine(M),
        "is_fs": is_fs(M),
        "saturation_generators": _vectors(saturation(M).generators),
    }
    out.note(f"monoid in Z^{M.ambient_dim}: {len(M.generators)} generators, gp rank {report['gp_rank']}, "
             f"unit rank {report['unit_rank']}")
    out.note(f"sharp={report['is_sharp']} saturated={report['is_saturated']}")
    out.emit(report)
    return EXIT_OK


def cmd_saturate(args, out):
    M = load_document(args.path, expected="monoid")
    out.emit(to_document(saturation(M)))
    return EXIT_OK


def cmd_hilbert_basis(args, out):
    M = load_document(args.path, expected="monoid")
    if args.ambient:
        # all of Z^d inside the span of the cone
        lattice = orthogonal_complement(orthogonal_complement(M.generators, M.ambient_dim), M.ambient_dim)
    else:
        lattice = list(M.gp_basis)
    basis = hilbert_basis(M.generators, lattice) if M.generators else []
    out.note(f"{len(basis)} Hilbert basis elements")
    out.emit({"lattice": "ambient" if args.ambient else "gp", "hilbert_basis": _vectors(basis)})
    return EXIT_OK


def cmd_pushout_check(args, out):
    data = load_document(args.path, expected="pushout")
    validation = validate_pushout(data)
    group = pushout_group_invariants(data)
    report = quasi_integrality(data)
    result = {
        "validation": validation.as_dict(),
        "group": group.as_dict(),
        "quasi_integrality": report.as_dict(),
    }
    out.note(f"flags: {validation.as_dict()}")
    out.note(f"P^gp: free rank {group.free_rank}, torsion {list(group.torsion)}")
    out.note(f"verdict: {report.verdict}" + (f", witness {list(report.witness)}" if report.witness else ""))
    if args.oracle is not None:
        bound = args.oracle
        limit = get_settings().oracle_max_bound
        if bound > limit:
            logger.warning("oracle bound %d clamped to %d", bound, limit)
            bound = limit
        approx = bounded_pushout_oracle(data, bound)
        found = approx.find_absorption()
        oracle = {"bound": bound, "pairs": len(approx.ball), "exists_absorption": found is not None}
        if found is not None:
            p, q = found
            oracle["absorption"] = {"p": _pair(p), "q": _pair(q)}
        if report.verdict == NOT_QUASI_INTEGRAL:
            certificate = absorption_certificate(data, report.witness)
            oracle["certificate_bound"] = certificate.bound
            oracle["chain"] = [_pair(x) for x in certificate.chain]
        result["oracle"] = oracle
        out.note(f"oracle at bound {bound}: exists_absorption={oracle['exists_absorption']}")
    out.emit(result)
    return VERDICT_EXIT.get(report.verdict, EXIT_UNKNOWN)


def cmd_counterexample(args, out):
    data = load_document(args.path, expected="pushout")
    record = construct_nonqi_extension(data.f, data.g)
    if args.output:
        write_document(record.monoid, args.output)
        out.note(f"wrote {args.output}")
    out.note(f"n1={list(record.n1)} n2={list(record.n2)}; L has {len(record.monoid.generators)} generators")
    out.emit({"monoid": to_document(record.monoid), "transcript": record.as_dict()})
    return EXIT_OK


def cmd_fiber_product(args, out):
    phi = load_document(args.first, expected="morphism")
    psi = load_document(args.second, expected="morphism")
    W = fiber_product_saturated(phi, psi)
    out.note(f"fiber product in Z^{W.ambient_dim} with {len(W.generators)} generators")
    out.emit(to_document(W))
    return EXIT_OK


def cmd_strictness(args, out):
    phi = load_document(args.path, expected="morphism")
    local = is_local(phi)
    result = {"local": local, "injective": is_injective_map(phi)}
    if local:
        chart = ChartMorphism(phi)
        result.update({
            "strict": is_strict_chart(chart),
            "diagonal_rank_condition": diagonal_rank_condition(chart),
            "kummer_strict_condition": kummer_strict_condition(chart),
        })
    out.note(", ".join(f"{k}={v}" for k, v in result.items()))
    out.emit(result)
    return EXIT_OK


def cmd_sweep(args, out):
    summary = run_sweep(seed=args.seed, count=args.count)
    if args.csv:
        try:
            summary.to_csv(args.csv, index=False)
        except OSError as e:
            raise DocumentIOError(f"cannot write {args.csv}: {e}") from e
    out.note(summary.to_string(index=False))
    out.emit({"properties": summary.to_dict(orient="records")})
    return EXIT_INTERNAL if summary[FAILED].sum() else EXIT_OK


# -------- Argument parsing --------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="suppress human-readable notes on stderr")

    parser = argparse.ArgumentParser(prog="monoidkit", description=__doc__.strip().splitlines()[0],
                                     parents=[common])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="predicates of a monoid document")
    p.add_argument("path")
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("saturate", parents=[common], help="emit the saturation as a monoid document")
    p.add_argument("path")
    p.set_defaults(handler=cmd_saturate)

    p = sub.add_parser("hilbert-basis", parents=[common], help="Hilbert basis of the cone of a monoid")
    p.add_argument("path")
    p.add_argument("--ambient", action="store_true", help="use Z^d instead of M^gp")
    p.set_defaults(handler=cmd_hilbert_basis)

    p = sub.add_parser("pushout-check", parents=[common], help="quasi-integrality of a push-out diagram")
    p.add_argument("path")
    p.add_argument("--oracle", type=int, metavar="B", help="cross-check with the bounded oracle")
    p.set_defaults(handler=cmd_pushout_check)

    p = sub.add_parser("counterexample", parents=[common], help="non-quasi-integral extension L")
    p.add_argument("path")
    p.add_argument("--output", metavar="FILE", help="also write the L document to FILE")
    p.set_defaults(handler=cmd_counterexample)

    p = sub.add_parser("fiber-product", parents=[common], help="fiber product of two morphisms")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(handler=cmd_fiber_product)

    p = sub.add_parser("strictness", parents=[common], help="chart strictness conditions of a morphism")
    p.add_argument("path")
    p.set_defaults(handler=cmd_strictness)

    p = sub.add_parser("sweep", parents=[common], help="randomized property sweep")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(handler=cmd_sweep)
    return parser


def _failure(out, code, kind, error):
    out.note(f"error: {error}")
    body = {"error": kind, "message": str(error)}
    if isinstance(error, PreconditionError):
        body["hypothesis"] = error.hypothesis
    out.emit(body)
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=get_settings().log_level, format="%(levelname)s %(name)s: %(message)s")
    out = Output(quiet=getattr(args, "json", False))
    try:
        return args.handler(args, out)
    except DocumentIOError as e:
        return _failure(out, EXIT_IO, "io", e)
    except (DocumentError, DimensionError, MorphismError, DiagramShapeError) as e:
        return _failure(out, EXIT_PARSE, "parse", e)
    except (PreconditionError, NonSalientConeError) as e:
        return _failure(out, EXIT_PRECONDITION, "precondition", e)
    except InvariantViolation as e:
        logger.error("internal check failed: %s", e)
        return _failure(out, EXIT_INTERNAL, "invariant", e)


if __name__ == "__main__":
    sys.exit(main())
