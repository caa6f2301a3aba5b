"""Command-line front end.

Exit codes: 0 success, 1 failed ``--expect`` or nonconforming report,
2 input error, 3 size limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .betti import betti_table
from .classify import METHODS, PROPERTIES, THEOREMS, check_property, sweep, verify_theorem
from .complex import SimplicialComplex, format_complex, parse_complex, sr_dual
from .errors import InputError, SizeLimitError
from .graph import edge_ideal, load_graph
from .homology import FieldSpec, reduced_homology
from .monomial import (MonomialIdeal, compare, dim_quotient, format_ideal, minimal_primes,
                       mixed_power, parse_ideal, power, symbolic_power)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _text_or_file(arg: str) -> str:
    p = Path(arg)
    return p.read_text() if p.is_file() else arg


def _read_ideal(arg: str) -> MonomialIdeal:
    text = _text_or_file(arg)
    if "\n" not in text.strip():
        text = text.replace(",", "\n")
    return parse_ideal(text)


def _read_complex(arg: str) -> SimplicialComplex:
    text = _text_or_file(arg)
    if "\n" not in text.strip():
        text = text.replace(";", "\n")
    return parse_complex(text)


def _source_ideal(args) -> MonomialIdeal:
    given = [x for x in (args.graph, args.ideal, args.complex) if x is not None]
    if len(given) != 1:
        raise InputError("give exactly one of --graph, --ideal, --complex")
    if args.graph is not None:
        I = edge_ideal(load_graph(args.graph))
    elif args.ideal is not None:
        I = _read_ideal(args.ideal)
    else:
        I = sr_dual(_read_complex(args.complex))
    ell = getattr(args, "ell", None)
    if getattr(args, "symbolic", False):
        I = symbolic_power(I, _need_ell(ell))
    elif getattr(args, "power", False):
        I = power(I, _need_ell(ell))
    return I


def _need_ell(ell):
    if ell is None or ell < 1:
        raise InputError("--ell must be a positive integer")
    return ell


def _ideal_payload(I: MonomialIdeal) -> dict:
    out = {"ambient": list(I.ambient), "generators": format_ideal(I).splitlines()[1:],
           "count": len(I.gens)}
    if not I.is_unit:
        d, unmixed = dim_quotient(I)
        out.update(dim=d, unmixed=unmixed)
    return out


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        payload = {**payload, "version": __version__, "field": str(args.field)}
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _expect(args, value: bool) -> int:
    if args.expect is None:
        return EXIT_OK
    want = args.expect == "true"
    if value != want:
        print(f"expectation failed: got {str(value).lower()}, expected {args.expect}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_ideal(args) -> int:
    I = _source_ideal(args)
    _emit(args, _ideal_payload(I), format_ideal(I))
    return EXIT_OK


def cmd_power(args) -> int:
    args.power, args.symbolic = True, False
    return cmd_ideal(args)


def cmd_symbolic(args) -> int:
    args.power, args.symbolic = False, True
    return cmd_ideal(args)


def cmd_mixed(args) -> int:
    I = _source_ideal(args)
    primes = minimal_primes(I)
    try:
        exps = [int(e) for e in args.exps.split(",")]
    except ValueError:
        raise InputError(f"--exps must be comma-separated integers, got {args.exps!r}")
    J = mixed_power(primes, exps)
    payload = {**_ideal_payload(J), "primes": [str(P) for P in primes], "exps": exps}
    _emit(args, payload, format_ideal(J))
    return EXIT_OK


def cmd_compare(args) -> int:
    if args.right is not None:
        A = _source_ideal(args)
        B = _read_ideal(args.right)
        label = ("left", "right")
    else:
        if args.graph is None and args.ideal is None:
            raise InputError("compare needs --right, or --graph/--ideal with --ell")
        base = _source_ideal(args)
        ell = _need_ell(args.ell)
        A, B = symbolic_power(base, ell), power(base, ell)
        label = ("symbolic", "ordinary")
    rel = compare(A, B)
    _emit(args, {"relation": rel, "left": label[0], "right": label[1], "equal": rel == "equal"},
          f"{label[0]} vs {label[1]}: {rel}")
    return _expect(args, rel == "equal")


def cmd_homology(args) -> int:
    if args.complex is not None:
        D = _read_complex(args.complex)
    else:
        I = _source_ideal(args)
        if not I.is_squarefree:
            raise InputError("homology needs a squarefree ideal or a complex")
        D = sr_dual(I)
    prof = reduced_homology(D, args.field)
    ranks = {str(k - 1): r for k, r in enumerate(prof.ranks)}
    text = format_complex(D) + "\n" + "  ".join(f"H~{k}={r}" for k, r in ranks.items())
    _emit(args, {"ranks": ranks, "facets": [D.names(f) for f in D.facets]}, text)
    return EXIT_OK


def cmd_check(args) -> int:
    I = _source_ideal(args)
    res = check_property(I, args.property, args.method, args.field)
    values = set(res.values())
    agree = len(values) == 1
    text = f"{args.property}: " + ", ".join(f"{str(v).lower()} ({k})" for k, v in res.items())
    _emit(args, {"property": args.property, "results": res, "agree": agree}, text)
    if not agree:
        print("methods disagree", file=sys.stderr)
        return EXIT_FAIL
    return _expect(args, values.pop())


def cmd_betti(args) -> int:
    I = _source_ideal(args)
    table = betti_table(I, args.field)
    _emit(args, table.as_dict(), "betti: " + " ".join(str(b) for b in table.totals))
    return EXIT_OK


def cmd_verify(args) -> int:
    G = load_graph(args.graph)
    rep = verify_theorem(args.theorem, G, _need_ell(args.ell), args.field)
    if args.json:
        print(rep.to_json())
    else:
        print(f"{rep.theorem} on {rep.instance}: {rep.verdict}")
        for k, v in rep.conditions.items():
            print(f"  {k}: {'skipped' if v is None else str(v).lower()}")
        for k, v in rep.derived.items():
            print(f"  {k} (from the equivalence): {str(v).lower()}")
        for w in rep.witnesses:
            print(f"  witness: {w}")
    if not rep.ok:
        return EXIT_FAIL
    return _expect(args, rep.verdict == "conforms")


def cmd_sweep(args) -> int:
    rep = sweep(args.family, args.max_vertices, _need_ell(args.ell), args.field, args.theorem,
                min_vertices=args.min_vertices, jobs=args.jobs, sample=args.sample, seed=args.seed)
    if args.json:
        print(rep.to_json())
    else:
        print(f"{rep.theorem} over {rep.graphs} graphs ({rep.family}, <= {rep.max_vertices} vertices, "
              f"ell={rep.ell}): {rep.nonconforming} counterexamples in {rep.millis} ms")
        for k, v in rep.verdicts.items():
            print(f"  {k}: {v}")
        for c in rep.counterexamples:
            print(f"  counterexample: {c}")
    return EXIT_FAIL if rep.nonconforming else _expect(args, True)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except InputError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=None,
                        help="q (default, or $EDGEPOWERS_FIELD) or f<prime>")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--expect", choices=("true", "false"), help="exit 1 unless the answer matches")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--graph", help="construction string (K3+K2, C5, K2,2, ...) or edge-list file")
    source.add_argument("--ideal", help="generators (comma-separated or one per line) or a file")
    source.add_argument("--complex", help="facets (';'-separated or one per line) or a file")

    shaped = argparse.ArgumentParser(add_help=False)
    shaped.add_argument("--ell", type=int)
    group = shaped.add_mutually_exclusive_group()
    group.add_argument("--symbolic", action="store_true", help="use the ell-th symbolic power")
    group.add_argument("--power", action="store_true", help="use the ell-th ordinary power")

    p = _Parser(prog="edgepowers", description="Symbolic and ordinary powers of edge ideals.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("ideal", parents=[common, source, shaped], help="print an ideal")
    s.set_defaults(func=cmd_ideal)
    for name, func in (("power", cmd_power), ("symbolic", cmd_symbolic)):
        s = sub.add_parser(name, parents=[common, source], help=f"{name} power of an ideal")
        s.add_argument("--ell", type=int, required=True)
        s.set_defaults(func=func)
    s = sub.add_parser("mixed", parents=[common, source], help="intersection of powers of the minimal primes")
    s.add_argument("--exps", required=True, help="one exponent per minimal prime, comma-separated")
    s.set_defaults(func=cmd_mixed)
    s = sub.add_parser("compare", parents=[common, source], help="containment between two ideals")
    s.add_argument("--right", help="second ideal; without it compare symbolic and ordinary powers")
    s.add_argument("--ell", type=int)
    s.set_defaults(func=cmd_compare)
    s = sub.add_parser("homology", parents=[common, source], help="reduced homology of a complex")
    s.set_defaults(func=cmd_homology)
    s = sub.add_parser("check", parents=[common, source, shaped], help="test a ring property")
    s.add_argument("--property", choices=PROPERTIES, required=True)
    s.add_argument("--method", choices=METHODS, default="takayama")
    s.set_defaults(func=cmd_check)
    s = sub.add_parser("betti", parents=[common, source, shaped], help="total Betti numbers of S/I")
    s.set_defaults(func=cmd_betti)
    s = sub.add_parser("verify", parents=[common], help="verify one theorem on one graph")
    s.add_argument("--theorem", choices=THEOREMS, required=True)
    s.add_argument("--graph", required=True)
    s.add_argument("--ell", type=int, required=True)
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("sweep", parents=[common], help="verify a theorem over a graph family")
    s.add_argument("--theorem", choices=THEOREMS, required=True)
    s.add_argument("--max-vertices", type=int, required=True)
    s.add_argument("--min-vertices", type=int, default=1)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--family", choices=("all", "bipartite"), default="all")
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    s.add_argument("--sample", type=int, help="check only this many graphs, drawn with --seed")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_sweep)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.field is None:
        try:
            args.field = FieldSpec.default()
        except InputError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except SizeLimitError as e:
        print(f"size limit: {e}", file=sys.stderr)
        return EXIT_SIZE
    except (InputError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
