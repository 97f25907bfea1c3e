"""Command-line surface: LM training, index building, noise injection,
correction and evaluation.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import evaluation, lm as lm_mod, phrase_index
from .corrector import correct_dp, correct_fixed
from .distance import DistanceConfig
from .lexicon import SynonymLexicon, load_lexicon
from .substituter import SubstituterConfig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _read_sentences(path):
    with open(path, encoding="utf-8") as fh:
        return [lm_mod.tokenize(line) for line in fh if line.strip()]


def _open_out(path):
    if path is None or path == "-":
        # leave stdout open for the caller
        return contextlib.nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8")


def cmd_train_lm(args) -> int:
    corpus = _read_sentences(args.corpus)
    model = lm_mod.train_counts(corpus, args.order)
    with _open_out(args.out) as fh:
        fh.write(lm_mod.serialize_arpa(model))
    return EXIT_OK


def cmd_build_index(args) -> int:
    with open(args.lm, encoding="utf-8") as fh:
        model = lm_mod.parse_arpa(fh)
    if args.orders:
        orders = [int(x) for x in args.orders.split(",")]
    else:
        orders = list(range(2, model.order + 1)) or [1]
    docs = phrase_index.extract_phrases(model, orders)
    index = phrase_index.build_index(docs)
    phrase_index.save_index(index, args.out)
    return EXIT_OK


def cmd_inject_noise(args) -> int:
    sentences = _read_sentences(args.input)
    vocab = tuple(sorted({w for s in sentences for w in s}))
    spec = evaluation.NoiseSpec(
        seed=args.seed, swap_adjacent=args.swaps, delete_word=args.deletions,
        substitute_word=args.substitutions, typo_char=args.typos,
        vocabulary=vocab)
    lexicon = None
    if args.lexicon:
        with open(args.lexicon, encoding="utf-8") as fh:
            lexicon = load_lexicon(fh)
    with _open_out(args.out) as fh:
        for sent in sentences:
            fh.write(" ".join(evaluation.inject_noise(sent, spec, lexicon)) + "\n")
    return EXIT_OK


def cmd_correct(args) -> int:
    with open(args.lm, encoding="utf-8") as fh:
        model = lm_mod.parse_arpa(fh)
    sentences = _read_sentences(args.input)
    if args.lexicon:
        with open(args.lexicon, encoding="utf-8") as fh:
            lexicon = load_lexicon(fh)
    else:
        lexicon = SynonymLexicon()

    with _open_out(args.out) as fh:
        if args.algorithm == "dp":
            index = phrase_index.load_index(args.index)
            config = SubstituterConfig(
                k=args.k, t_pool=args.t_pool,
                distance=DistanceConfig(mode=args.mode, d_t=args.d_t))
            cache: dict = {}
            for sent in sentences:
                result = correct_dp(sent, index, model, lexicon, config,
                                    sub_cache=cache)
                fh.write(json.dumps(result.to_record()) + "\n")
        else:
            docs = phrase_index.load_index(args.index).docs
            for sent in sentences:
                result = correct_fixed(sent, model, docs,
                                       phrase_len=args.phrase_len)
                fh.write(json.dumps(result.to_record()) + "\n")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    with open(args.lm, encoding="utf-8") as fh:
        model = lm_mod.parse_arpa(fh)
    before = _read_sentences(args.before)
    after = _read_sentences(args.after)
    refs = _read_sentences(args.refs)
    if not len(before) == len(after) == len(refs):
        raise ValueError(
            f"aligned files required: {len(before)} before, {len(after)} after, "
            f"{len(refs)} references")
    ref_sets = [[r] for r in refs]
    report = {
        "perplexity_before": evaluation.corpus_perplexity(model, before),
        "perplexity_after": evaluation.corpus_perplexity(model, after),
        "bleu_before": evaluation.bleu(before, ref_sets),
        "bleu_after": evaluation.bleu(after, ref_sets),
        "sentence_count": len(before),
    }
    with _open_out(args.out) as fh:
        fh.write(json.dumps(report) + "\n")
    print(f"sentences: {report['sentence_count']}", file=sys.stderr)
    print(f"perplexity: {report['perplexity_before']:.3f} -> "
          f"{report['perplexity_after']:.3f}", file=sys.stderr)
    print(f"bleu: {report['bleu_before']:.3f} -> {report['bleu_after']:.3f}",
          file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="phrasefix",
                     description="Noisy sentence correction with a monolingual n-gram LM")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train-lm", help="train a Witten-Bell n-gram LM, emit ARPA")
    p.add_argument("--corpus", required=True)
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train_lm)

    p = sub.add_parser("build-index", help="build the phrase index from an ARPA LM")
    p.add_argument("--lm", required=True)
    p.add_argument("--orders", default=None,
                   help="comma-separated n-gram orders (default 2..N)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build_index)

    p = sub.add_parser("inject-noise", help="apply seeded noise to a corpus")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", default="-")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--swaps", type=int, default=0)
    p.add_argument("--deletions", type=int, default=0)
    p.add_argument("--substitutions", type=int, default=0)
    p.add_argument("--typos", type=int, default=0)
    p.add_argument("--lexicon", default=None)
    p.set_defaults(func=cmd_inject_noise)

    p = sub.add_parser("correct", help="correct sentences, one JSON record per line")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--lm", required=True)
    p.add_argument("--index", required=True)
    p.add_argument("--lexicon", default=None)
    p.add_argument("--algorithm", choices=("dp", "fixed"), default="dp")
    p.add_argument("--mode", choices=("A", "B", "C", "D"), default="C")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--t-pool", type=int, default=200)
    p.add_argument("--d-t", type=int, default=3)
    p.add_argument("--phrase-len", type=int, default=7)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_correct)

    p = sub.add_parser("evaluate", help="perplexity/BLEU report before vs after")
    p.add_argument("--before", required=True)
    p.add_argument("--after", required=True)
    p.add_argument("--refs", required=True)
    p.add_argument("--lm", required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_evaluate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"phrasefix: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
