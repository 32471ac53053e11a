"""Command-line interface: ``inca <command> ...``.

Exit status is 0 on success, 1 when an input fails validation and 2 on
I/O errors.
"""
import argparse
import bisect
import csv
import random
import sys
from fractions import Fraction

from . import io
from .balance import balance
from .blocktree import bt_access, build_blocktree, build_bt_accessor, decode_blocktree
from .bench import KINDS, bench, write_csv
from .constants import DEFAULT_W
from .contract import make_contracting
from .dspred import ZFastTrie
from .generators import (PARSE_SCHEMES, RLSLP_SCHEMES, TEXT_KINDS, generate_corpus,
                         generate_parse, generate_rlslp)
from .grammar_access import access, build_accessor
from .parse import DecodeError, decode, height_profile, min_alpha
from .parse_access import NotContracting, build_parse_accessor, parse_access
from .rlslp import (GrammarError, access_naive, balance_factor, expand, reachable,
                    validate)
from .text import repeat_profile


class ValidationFailure(Exception):
    pass


def _char(b):
    return chr(b) if 32 <= b < 127 else f"\\x{b:02x}"


# -- commands ------------------------------------------------------------------

def cmd_profile(args):
    text = io.read_text(args.file)
    w = csv.writer(sys.stdout)
    w.writerow(["q", "ell_q"])
    for q, ell in enumerate(repeat_profile(text), 1):
        w.writerow([q, ell])


def cmd_rlslp(args):
    if args.action == "balance":
        g = validate(io.read_grammar(args.file))
        out, rep = balance(g, report=True)
        io.write_grammar(out, args.out)
        if args.report:
            w = csv.writer(sys.stdout)
            w.writerow(["rules_in", "rules_out", "size_ratio", "contracting_rules",
                        "max_rhs", "balance_in", "balance_out"])
            w.writerow([rep.rules_in, rep.rules_out, f"{rep.size_ratio:.4f}",
                        rep.contracting_rules, rep.max_rhs, f"{rep.balance_in:.4f}",
                        f"{rep.balance_out:.4f}"])
        return
    g = io.read_grammar(args.file)
    if args.action == "check":
        validate(g)
        r = reachable(g)
        print(f"ok n={len(r)} g_rl={r.g_rl} balance={balance_factor(r):.4f}")
    elif args.action == "expand":
        sys.stdout.buffer.write(expand(validate(g)))
    elif args.action == "access":
        _need_pos(args)
        sym, steps = access_naive(validate(g), args.pos)
        print(_char(sym))


def _need_pos(args):
    if args.pos is None:
        raise ValidationFailure("--pos is required")


def cmd_access(args):
    g = io.read_grammar(args.file)
    acc = build_accessor(g, w=args.word_size)
    if args.all:
        w = csv.writer(sys.stdout)
        w.writerow(["q", "char", "pred_k", "descent_steps"])
        for q in range(1, len(acc) + 1):
            sym, cost = access(acc, q)
            w.writerow([q, _char(sym), cost.pred_k, cost.descent_steps])
        return
    _need_pos(args)
    sym, cost = access(acc, args.pos)
    if args.cost:
        print(f"{_char(sym)} pred_k={cost.pred_k} descent_steps={cost.descent_steps}")
    else:
        print(_char(sym))


def cmd_bt(args):
    text = io.read_text(args.file)
    tree = build_blocktree(text, args.leaf_threshold)
    if args.action == "build":
        if decode_blocktree(tree) != text:
            raise ValidationFailure("block tree does not decode to the input")
        st = tree.stats()
        print(f"ok L={st['L']} levels={st['levels']}")
    elif args.action == "stats":
        st = tree.stats()
        print(" ".join(f"{k}={v:.4f}" if isinstance(v, float) else f"{k}={v}"
                       for k, v in st.items()))
    elif args.action == "access":
        _need_pos(args)
        acc = build_bt_accessor(tree, w=args.word_size)
        sym, cost = bt_access(acc, args.pos)
        print(f"{_char(sym)} pred_k={cost.pred_k} steps={cost.steps}")


def cmd_parse(args):
    p = io.read_parse(args.file)
    if args.action == "decode":
        sys.stdout.buffer.write(decode(p))
    elif args.action == "stats":
        hp = height_profile(p)
        print(f"n={p.n} t={p.t} bidirectional={p.bidirectional} "
              f"max_height={hp.max} min_alpha={min_alpha(p)}")
    elif args.action == "access":
        _need_pos(args)
        acc = build_parse_accessor(p, alpha=_alpha(args), w=args.word_size, d=args.arity)
        sym, cost = parse_access(acc, args.pos)
        print(f"{_char(sym)} h_q={cost.h_q} pred_k={cost.pred_k} "
              f"trie_edges={cost.trie_edges}")
    elif args.action == "contract":
        if args.out is None:
            raise ValidationFailure("contract needs an output path")
        alpha = args.alpha if args.alpha is not None else 2
        if int(alpha) != alpha or alpha < 2:
            raise ValidationFailure("--alpha must be an integer >= 2")
        q, rep = make_contracting(p, int(alpha), report=True)
        io.write_parse(q, args.out)
        if args.report:
            w = csv.writer(sys.stdout)
            w.writerow(["size_in", "size_out", "size_ratio", "max_height_in",
                        "max_height_out", "min_alpha_in", "min_alpha_out"])
            w.writerow([rep.size_in, rep.size_out, f"{rep.size_ratio:.4f}",
                        rep.max_height_in, rep.max_height_out, rep.min_alpha_in,
                        rep.min_alpha_out])


def _alpha(args):
    return None if args.alpha is None else Fraction(args.alpha)


def cmd_pred(args):
    with open(args.file, encoding="utf-8") as fh:
        try:
            keys = [int(tok) for tok in fh.read().split()]
        except ValueError as exc:
            raise ValidationFailure(f"bad key: {exc}") from None
    z = ZFastTrie(keys, args.word_size)
    srt = sorted(set(keys))
    rng = random.Random(args.seed)
    w = csv.writer(sys.stdout)
    w.writerow(["q", "delta", "k", "fat_steps"])
    for _ in range(args.queries):
        q = rng.randint(1, z.universe - 1)
        ans = z.pred(q)
        i = bisect.bisect_right(srt, q)
        if ans.value != (srt[i - 1] if i else 0):
            raise ValidationFailure(f"predecessor mismatch at q={q}")
        w.writerow([q, q - ans.value, ans.k, ans.fat_steps])


def cmd_bench(args):
    text = io.read_text(args.file)
    records = bench(args.kind, text, queries=args.queries, sample=args.sample,
                    seed=args.seed, w=args.word_size, alpha=args.alpha)
    write_csv(records, sys.stdout)


def cmd_gen(args):
    if args.what == "text":
        data = generate_corpus(args.kind, args.n, args.sigma, args.seed)
        _emit(args, data)
    elif args.what == "parse":
        text = io.read_text(args.file)
        _emit(args, io.dumps_parse(generate_parse(text, args.scheme, args.seed)).encode("latin-1"))
    elif args.what == "rlslp":
        text = io.read_text(args.file)
        _emit(args, io.dumps_grammar(generate_rlslp(text, args.scheme, args.seed)).encode())


def _emit(args, data):
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)


# -- argument parsing ----------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--alpha", type=float, default=None,
                        help="contracting parameter")
    common.add_argument("--word-size", type=int, default=DEFAULT_W,
                        help="word size w of the predecessor structures")
    common.add_argument("--arity", type=int, default=None,
                        help="trie arity d (defaults to the word size)")

    # shared flags go after the (last) subcommand name
    parser = argparse.ArgumentParser(prog="inca",
                                     description="Incongruity-sensitive access to compressed texts.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", parents=[common], help="longest-repeat profile as CSV")
    p.add_argument("file")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("rlslp", parents=[common], help="grammar utilities")
    p.add_argument("action", choices=["check", "expand", "access", "balance"])
    p.add_argument("file")
    p.add_argument("out", nargs="?")
    p.add_argument("--pos", type=int)
    p.add_argument("--report", action="store_true")
    p.set_defaults(func=cmd_rlslp)

    p = sub.add_parser("access", parents=[common], help="incongruity-sensitive access")
    p.add_argument("structure", choices=["grammar"])
    p.add_argument("file")
    p.add_argument("--pos", type=int)
    p.add_argument("--cost", action="store_true")
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=cmd_access)

    p = sub.add_parser("bt", parents=[common], help="block trees over a text file")
    p.add_argument("action", choices=["build", "access", "stats"])
    p.add_argument("file")
    p.add_argument("--pos", type=int)
    p.add_argument("--leaf-threshold", type=int, default=4)
    p.set_defaults(func=cmd_bt)

    p = sub.add_parser("parse", parents=[common], help="parse utilities")
    p.add_argument("action", choices=["decode", "access", "stats", "contract"])
    p.add_argument("file")
    p.add_argument("out", nargs="?")
    p.add_argument("--pos", type=int)
    p.add_argument("--report", action="store_true")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("pred", parents=[common], help="predecessor structure")
    p.add_argument("action", choices=["bench"])
    p.add_argument("file", help="whitespace-separated integer keys")
    p.add_argument("--queries", type=int, default=10000)
    p.set_defaults(func=cmd_pred)

    p = sub.add_parser("bench", parents=[common], help="per-query cost records as CSV")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("file")
    p.add_argument("--queries", choices=["all", "sample"], default="all")
    p.add_argument("--sample", type=int, default=1000)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="generate texts, parses and grammars")
    gsub = p.add_subparsers(dest="what", required=True)
    t = gsub.add_parser("text", parents=[common])
    t.add_argument("kind", choices=TEXT_KINDS)
    t.add_argument("--n", type=int, default=1000)
    t.add_argument("--sigma", type=int, default=2)
    t.add_argument("-o", "--output")
    t = gsub.add_parser("parse", parents=[common])
    t.add_argument("file")
    t.add_argument("--scheme", choices=PARSE_SCHEMES, default="greedy-lz")
    t.add_argument("-o", "--output")
    t = gsub.add_parser("rlslp", parents=[common])
    t.add_argument("file")
    t.add_argument("--scheme", choices=RLSLP_SCHEMES, default="doubling")
    t.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except OSError as exc:
        print(f"inca: {exc}", file=sys.stderr)
        return 2
    except (ValidationFailure, GrammarError, io.FormatError, DecodeError,
            NotContracting, ValueError, IndexError) as exc:
        print(f"inca: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
