"""Command-line front end.

Exit status: 0 for success (or "word is trivial"), 2 when ``decide`` finds a
non-trivial word, 1 for any error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import bench, lab
from .decider import cowp_decide, machine_bank, z_values
from .errors import VWordError
from .group import bundled_higman, is_identity, read_generating_set, word_to_element
from .lz import build_lz, in_lz, lz_direct
from .pda import dumps, to_dot, validate_determinism

EXIT_OK, EXIT_ERROR, EXIT_NOT_WP = 0, 1, 2
SUITES = ("lemmas", "oracle-agreement", "all")


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors must not collide with the "not in wp" status
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def load_gens(source: str):
    if source == "higman":
        return bundled_higman()
    try:
        return read_generating_set(source)
    except OSError as exc:
        raise CliError(f"cannot read generating set {source!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{source}: invalid JSON: {exc}") from exc


def parse_word(text: str, compact: bool = False) -> list[str]:
    if compact:
        return [c for c in text if not c.isspace()]
    return text.split()


def read_word(args, gamma) -> list[str]:
    sources = [args.word is not None, args.word_opt is not None,
               args.word_file is not None, args.random is not None]
    if sum(sources) > 1:
        raise CliError("give exactly one of WORD, --word, --word-file, --random")
    if args.random is not None:
        rng = random.Random(args.seed)
        return [rng.choice(gamma.names) for _ in range(args.random)]
    if args.word_file is not None:
        try:
            with open(args.word_file) as fh:
                text = fh.read()
        except OSError as exc:
            raise CliError(f"cannot read {args.word_file}: {exc}") from exc
    else:
        text = args.word if args.word is not None else (args.word_opt or "")
    w = parse_word(text, args.compact)
    gamma.check_word(w)
    return w


def emit(args, payload: dict, text: str):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_decide(args) -> int:
    gamma = load_gens(args.gens)
    w = read_word(args, gamma)
    wit = cowp_decide(gamma, w, workers=args.parallel or 1)
    payload = {
        "in_wp": wit is None,
        "length": len(w),
        "witness": None if wit is None else {"rotation": wit.rotation_index, "z": wit.z},
    }
    lines = [f"in_wp: {str(wit is None).lower()}"]
    if wit is not None:
        lines.append(f"witness: rotation={wit.rotation_index} z={wit.z}")
    emit(args, payload, "\n".join(lines))
    return EXIT_OK if wit is None else EXIT_NOT_WP


def cmd_oracle(args) -> int:
    gamma = load_gens(args.gens)
    w = read_word(args, gamma)
    e = word_to_element(gamma, w)
    ident = is_identity(e)
    payload = {"table": [list(pq) for pq in e.entries], "identity": ident, "maxlen": e.maxlen}
    text = "\n".join([f"table: {e}", f"maxlen: {e.maxlen}", f"identity: {str(ident).lower()}"])
    emit(args, payload, text)
    return EXIT_OK


def _lengths(text: str) -> list[int]:
    try:
        ns = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise CliError(f"bad --lengths {text!r}") from None
    if ns != sorted(ns):
        raise CliError("--lengths must be ascending")
    return ns


def cmd_bench(args) -> int:
    gamma = load_gens(args.gens)
    ns = _lengths(args.lengths)
    if args.compare:
        rows = bench.compare_backends(gamma, ns, args.trials, args.seed, args.family)
        lines = [f"{'n':>6}  {'jit s':>10}  {'numpy s':>10}  speedup"]
        lines += [f"{r['n']:>6}  {r['jit']:>10.5f}  {r['numpy']:>10.5f}  {r['speedup'] or 0:.1f}x"
                  for r in rows]
        emit(args, {"rows": rows}, "\n".join(lines))
        return EXIT_OK
    res = bench.time_decider(gamma, ns, args.trials, args.seed, args.family, args.backend)
    lines = [f"{'n':>6}  {'mean s':>10}  {'median s':>10}  {'best s':>10}"]
    lines += [f"{r.n:>6}  {r.mean:>10.5f}  {r.median:>10.5f}  {r.best:>10.5f}" for r in res.rows]
    if res.slope is not None:
        lines.append(f"log-log slope: {res.slope:.3f}")
    emit(args, res.to_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_export_lz(args) -> int:
    gamma = load_gens(args.gens)
    m = build_lz(args.z, gamma).dpda
    out = dumps(m, indent=2, sort_keys=True) + "\n" if args.format == "json" else to_dot(m, f"L_{args.z}")
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(out)
        except OSError as exc:
            raise CliError(f"cannot write {args.output}: {exc}") from exc
    else:
        sys.stdout.write(out)
    return EXIT_OK


def oracle_agreement(gamma, max_length: int) -> lab.Report:
    from .decider import wp_decide
    from .group import wp_oracle

    rep = lab.Report()
    words = list(lab.words_upto(gamma.names, max_length))
    bad = sum(wp_decide(gamma, w) != wp_oracle(gamma, w) for w in words)
    rep.add("decider agrees with oracle", bad == 0, f"{bad} disagreements, |w| <= {max_length}", len(words))
    zs = z_values(gamma)
    nonempty = [w for w in words if w]
    bad = sum(in_lz(z, gamma, w) != lz_direct(z, gamma, w) for z in zs for w in nonempty)
    rep.add("recognizer agrees with direct L_z", bad == 0, f"{bad} disagreements", len(zs) * len(nonempty))
    conflicts = sum(len(validate_determinism(m)) for m in machine_bank(gamma).machines)
    rep.add("recognizers are deterministic", conflicts == 0, f"{conflicts} conflicts", len(zs))
    return rep


def cmd_check(args) -> int:
    if args.suite not in SUITES:
        raise CliError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    gamma = load_gens(args.gens)
    rep = lab.Report()
    if args.suite in ("lemmas", "all"):
        rep.results += lab.lemma_suite(gamma, seed=args.seed).results
    if args.suite in ("oracle-agreement", "all"):
        rep.results += oracle_agreement(gamma, args.max_length).results
    if args.format == "json":
        print(rep.to_json())
    else:
        print(rep.text())
    return EXIT_OK if rep.passed else EXIT_ERROR


def _word_args(p):
    p.add_argument("word", nargs="?", help="whitespace-separated generator names")
    p.add_argument("--word", dest="word_opt", metavar="STR")
    p.add_argument("--word-file", metavar="PATH")
    p.add_argument("--random", type=int, metavar="LEN", help="random word of this length")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--compact", action="store_true", help="each character is a generator name")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vword", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--gens", default="higman", metavar="PATH|higman")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("decide", help="decide whether a word is trivial in V")
    common(p)
    _word_args(p)
    p.add_argument("--parallel", type=int, nargs="?", const=os.cpu_count() or 1, default=1,
                   metavar="N", help="sweep rotations on N threads")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("oracle", help="compose the word into a table")
    common(p)
    _word_args(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="time the decider and fit the log-log slope")
    common(p)
    p.add_argument("--lengths", default=",".join(map(str, bench.DEFAULT_LENGTHS)))
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--family", choices=("wp", "random"), default="wp")
    p.add_argument("--backend", choices=("jit", "numpy"), default=None)
    p.add_argument("--compare", action="store_true", help="time both kernel backends")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export-lz", help="write the L_z recognizer as JSON or DOT")
    p.add_argument("--gens", default="higman", metavar="PATH|higman")
    p.add_argument("--z", required=True, metavar="BITS")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--output", "-o", metavar="PATH")
    p.set_defaults(func=cmd_export_lz)

    p = sub.add_parser("check", help="run invariant suites")
    common(p)
    p.add_argument("suite", help="lemmas | oracle-agreement | all")
    p.add_argument("--max-length", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, VWordError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
