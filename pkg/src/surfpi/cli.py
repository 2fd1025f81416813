"""Command-line front end.

Exit codes: 0 success, 1 verification failures, 2 parse error or invalid
name, 3 unsupported presentation or level, 4 corpus integrity failure.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import __version__, folding
from .actions import action_table, apply, level_alphabet
from .corpus import dump_dir, embedded, load_dir
from .errors import CorpusIntegrityError, SurfPiError, UnsupportedLevel, UnsupportedPresentation
from .plus import plus_expansion_map
from .surface import SurfaceKind, base_alphabet, is_trivial, parse_surface, pi1_presentation, plus_presentation
from .verify import DEFAULT_G, DEFAULT_N, SUITES, run_suite
from .words import format_word, parse_word, inv, mul

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_CORPUS = 0, 1, 2, 3, 4


def _range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _alphabet(kind: SurfaceKind, plus: bool):
    return level_alphabet(kind, "pi_plus") if plus else base_alphabet(kind)


def _subgroup_gens(args, kind: SurfaceKind):
    """Generators given with --gen, or the two-sided subgroup with --plus."""
    A = base_alphabet(kind)
    gens = [parse_word(t, A) for t in args.gen]
    if args.plus:
        gens += list(plus_expansion_map(kind).values())
    return A, gens


def cmd_reduce(args) -> int:
    kind = parse_surface(args.surface)
    print(format_word(parse_word(args.word, _alphabet(kind, args.plus))))
    return EXIT_OK


def cmd_wp(args) -> int:
    kind = parse_surface(args.surface)
    p = plus_presentation(kind) if args.plus else pi1_presentation(kind)
    w = parse_word(args.word, p.alphabet)
    if args.other is not None:
        w = mul(w, inv(parse_word(args.other, p.alphabet)))
    print("trivial" if is_trivial(w, p) else "nontrivial")
    return EXIT_OK


def cmd_apply(args) -> int:
    kind = parse_surface(args.surface)
    t = action_table(args.name, args.level, kind, _tables(args))
    w = parse_word(args.word, t.alphabet)
    print(format_word(apply(t, args.direction, w)))
    return EXIT_OK


def cmd_member(args) -> int:
    kind = parse_surface(args.surface)
    A, gens = _subgroup_gens(args, kind)
    graph = folding.build(gens, A)
    print("true" if folding.member(graph, parse_word(args.word, A)) else "false")
    return EXIT_OK


def cmd_rank(args) -> int:
    kind = parse_surface(args.surface)
    A, gens = _subgroup_gens(args, kind)
    graph = folding.build(gens, A)
    idx = folding.index(graph)
    print(f"rank: {folding.rank(graph)}")
    print(f"index: {'infinite' if idx == folding.INFINITE else idx}")
    return EXIT_OK


def _tables(args):
    if getattr(args, "corpus", None):
        return load_dir(args.corpus)[0]
    return embedded("tables")


def cmd_verify(args) -> int:
    if args.corpus:
        tables, identities = load_dir(args.corpus)
    else:
        tables, identities = embedded("tables"), embedded("identities")
    rep = run_suite(args.suite, args.g, args.n, args.jobs, tables, identities)
    text = rep.render()
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(f"{args.suite}: {rep.count('pass')} pass, {rep.count('fail')} fail, "
          f"{rep.count('skipped')} skipped", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_dump_corpus(args) -> int:
    for path in dump_dir(args.directory, embedded("tables"), embedded("identities")):
        print(path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="surfpi", description="Surface group words and mapping-class actions.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("reduce", help="freely reduce a word")
    s.add_argument("surface")
    s.add_argument("word")
    s.add_argument("--plus", action="store_true", help="word over the two-sided subgroup alphabet")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("wp", help="decide whether a word is trivial in the surface group")
    s.add_argument("surface")
    s.add_argument("word")
    s.add_argument("other", nargs="?", help="compare against this word instead of 1")
    s.add_argument("--plus", action="store_true", help="use the two-sided subgroup presentation")
    s.set_defaults(func=cmd_wp)

    s = sub.add_parser("apply", help="apply a mapping-class generator to a word")
    s.add_argument("surface")
    s.add_argument("level", choices=("pi", "pi_plus"))
    s.add_argument("name")
    s.add_argument("direction", choices=("fwd", "bwd"))
    s.add_argument("word")
    s.add_argument("--corpus", help="read tables from a dumped corpus directory")
    s.set_defaults(func=cmd_apply)

    for cmd, fn, hlp in (("member", cmd_member, "subgroup membership by folding"),
                         ("rank", cmd_rank, "rank and index of a subgroup by folding")):
        s = sub.add_parser(cmd, help=hlp)
        s.add_argument("surface")
        if cmd == "member":
            s.add_argument("word")
        s.add_argument("--gen", action="append", default=[], help="subgroup generator (repeatable)")
        s.add_argument("--plus", action="store_true", help="include the two-sided subgroup generators")
        s.set_defaults(func=fn)

    s = sub.add_parser("verify", help="run verification suites over the data corpus")
    s.add_argument("suite", choices=SUITES + ("all",))
    s.add_argument("--g", type=_range, default=DEFAULT_G, metavar="A..B")
    s.add_argument("--n", type=_range, default=DEFAULT_N, metavar="A..B")
    s.add_argument("--report", metavar="PATH", help="write the report here instead of stdout")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--corpus", metavar="DIR", help="use a dumped corpus directory")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("dump-corpus", help="write the embedded corpus and its checksums")
    s.add_argument("directory")
    s.set_defaults(func=cmd_dump_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CorpusIntegrityError as e:
        print(f"corpus error: {e}", file=sys.stderr)
        return EXIT_CORPUS
    except (UnsupportedPresentation, UnsupportedLevel) as e:
        print(f"unsupported: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except SurfPiError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
