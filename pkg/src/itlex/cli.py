"""Command-line interface: ``itlex train|add|select|eval|inspect|gen``.

A model directory holds one ``<category>.model`` count file per network,
the word-level baseline table (``baseline.tsv``) and the category map the
models were trained with (``categories.tsv``).
"""

from __future__ import annotations

import argparse
import configparser
import os
import re
import sys
import tempfile
from dataclasses import dataclass

from . import __version__
from .errors import ItlexError
from .evalkit import (
    BaselineTable,
    SyntheticSpec,
    baseline_train,
    evaluate,
    evaluate_baseline,
    format_baseline,
    gen_synthetic,
    head_pairs,
    parse_baseline,
)
from .extraction import (
    DEFAULT_CATEGORY_MAP,
    CategoryMap,
    format_category_map,
    input_heads,
    load_category_map,
    samples_from_corpus,
)
from .fstructure import load_corpus, parse
from .itnet import (
    DEFAULT_LAMBDA,
    CountStore,
    Network,
    load_store,
    merge_counts,
    networks_from_stores,
    save_store,
    train_by_category,
)

MODEL_SUFFIX = ".model"
BASELINE_FILE = "baseline.tsv"
CATEGORIES_FILE = "categories.tsv"
_SAFE_NAME = re.compile(r"[A-Za-z0-9_][A-Za-z0-9_.-]*")


class CLIError(Exception):
    pass


@dataclass
class Config:
    lam: float = DEFAULT_LAMBDA
    lam_explicit: bool = False  # set by --lambda or a config file
    category_map_path: str | None = None
    model_dir: str = "models"
    top_k: int = 5


def load_config(args: argparse.Namespace) -> Config:
    """Defaults, overridden by the ``[itlex]`` section of --config, then flags."""
    cfg = Config()
    if getattr(args, "config", None):
        parser = configparser.ConfigParser()
        if not parser.read(args.config, encoding="utf-8"):
            raise CLIError(f"cannot read config file {args.config}")
        sect = parser["itlex"] if parser.has_section("itlex") else {}
        if "lambda" in sect:
            cfg.lam, cfg.lam_explicit = float(sect["lambda"]), True
        cfg.category_map_path = sect.get("category_map", cfg.category_map_path)
        cfg.model_dir = sect.get("model_dir", cfg.model_dir)
        if "top_k" in sect:
            cfg.top_k = int(sect["top_k"])
    if getattr(args, "lam", None) is not None:
        cfg.lam, cfg.lam_explicit = args.lam, True
    if getattr(args, "category_map", None):
        cfg.category_map_path = args.category_map
    if getattr(args, "model_dir", None):
        cfg.model_dir = args.model_dir
    if getattr(args, "top_k", None) is not None:
        cfg.top_k = args.top_k
    if cfg.lam < 0:
        raise CLIError(f"--lambda must be >= 0, got {cfg.lam}")
    return cfg


def _category_map(cfg: Config, use_stored: bool = True) -> CategoryMap:
    if cfg.category_map_path:
        return load_category_map(cfg.category_map_path)
    stored = os.path.join(cfg.model_dir, CATEGORIES_FILE)
    if use_stored and os.path.exists(stored):
        return load_category_map(stored)
    return DEFAULT_CATEGORY_MAP


def _model_path(cfg: Config, category: str) -> str:
    if not _SAFE_NAME.fullmatch(category):
        raise CLIError(f"category name {category!r} cannot be used as a file name")
    return os.path.join(cfg.model_dir, category + MODEL_SUFFIX)


def _atomic_write(path: str, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".", prefix=".tmp-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_stores(cfg: Config) -> dict[str, CountStore]:
    if not os.path.isdir(cfg.model_dir):
        raise CLIError(f"model directory {cfg.model_dir} does not exist")
    stores = {}
    for name in sorted(os.listdir(cfg.model_dir)):
        if name.endswith(MODEL_SUFFIX) and not name.startswith("."):
            store = load_store(os.path.join(cfg.model_dir, name))
            stores[store.category] = store
    return stores


def _load_baseline(cfg: Config) -> BaselineTable:
    path = os.path.join(cfg.model_dir, BASELINE_FILE)
    if not os.path.exists(path):
        return BaselineTable()
    with open(path, encoding="utf-8") as fh:
        return parse_baseline(fh.read())


def _write_models(cfg: Config, stores: dict[str, CountStore], baseline: BaselineTable, cmap: CategoryMap) -> None:
    os.makedirs(cfg.model_dir, exist_ok=True)
    for cat in sorted(stores):
        save_store(stores[cat], _model_path(cfg, cat))
    _atomic_write(os.path.join(cfg.model_dir, BASELINE_FILE), format_baseline(baseline))
    _atomic_write(os.path.join(cfg.model_dir, CATEGORIES_FILE), format_category_map(cmap))


def _read_corpus(path: str):
    try:
        return load_corpus(path)
    except OSError as exc:
        raise CLIError(f"cannot read corpus {path}: {exc.strerror}") from exc


def cmd_train(args: argparse.Namespace, cfg: Config) -> int:
    corpus = _read_corpus(args.corpus)
    cmap = _category_map(cfg, use_stored=False)
    samples = samples_from_corpus(corpus, cmap)
    stores = train_by_category(samples, cfg.lam)
    if os.path.isdir(cfg.model_dir):
        for name in os.listdir(cfg.model_dir):
            if name.endswith(MODEL_SUFFIX):
                os.unlink(os.path.join(cfg.model_dir, name))
    _write_models(cfg, stores, baseline_train(head_pairs(corpus)), cmap)
    if not corpus:
        print(f"warning: {args.corpus} contains no records; no models written", file=sys.stderr)
    for cat in sorted(stores):
        print(f"{cat}\t{stores[cat].n_samples}")
    return 0


def cmd_add(args: argparse.Namespace, cfg: Config) -> int:
    existing = _load_stores(cfg)
    for store in existing.values():
        if store.lam != cfg.lam:
            raise CLIError(
                f"lambda mismatch: model {store.category!r} was trained with lambda={store.lam!r}, "
                f"refusing to add with lambda={cfg.lam!r}"
            )
    corpus = _read_corpus(args.corpus)
    cmap = _category_map(cfg)
    new = train_by_category(samples_from_corpus(corpus, cmap), cfg.lam)
    merged = dict(existing)
    for cat, store in new.items():
        merged[cat] = merge_counts(existing[cat], store) if cat in existing else store
    baseline = _load_baseline(cfg).merge(baseline_train(head_pairs(corpus)))
    _write_models(cfg, merged, baseline, cmap)
    for cat in sorted(new):
        print(f"{cat}\t+{new[cat].n_samples}\t{merged[cat].n_samples}")
    return 0


def _network(cfg: Config, category: str) -> Network:
    path = _model_path(cfg, category)
    if not os.path.exists(path):
        raise CLIError(f"no model for category {category!r} in {cfg.model_dir}")
    store = load_store(path)
    return networks_from_stores({category: store}, cfg.lam if cfg.lam_explicit else None)[category]


def cmd_select(args: argparse.Namespace, cfg: Config) -> int:
    fs = parse(args.fstructure)
    category = args.category or _category_map(cfg)(fs.label)
    net = _network(cfg, category)
    inputs = input_heads(fs)
    winner = net.select(inputs)
    act = net.activate(inputs)
    if act.unknown_inputs:
        print("unknown inputs: " + " ".join(act.unknown_inputs), file=sys.stderr)
    print(winner)
    for rank, (token, score) in enumerate(act.ranking(cfg.top_k), 1):
        print(f"{rank}\t{token}\t{score:.6f}")
    return 0


def cmd_eval(args: argparse.Namespace, cfg: Config) -> int:
    stores = _load_stores(cfg)
    nets = networks_from_stores(stores, cfg.lam if cfg.lam_explicit else None)
    cmap = _category_map(cfg)
    corpus = _read_corpus(args.corpus)
    report = evaluate(nets, corpus, cmap)
    if report.overall.total == 0:
        print("warning: no samples could be extracted from the test corpus", file=sys.stderr)
    print("network")
    print(report.table())
    blocks = [report.key_values()]
    if args.baseline:
        table = _load_baseline(cfg)
        if not table.cond:
            raise CLIError(f"no baseline table in {cfg.model_dir}")
        base = evaluate_baseline(table, corpus, cmap, cfg.lam if cfg.lam > 0 else DEFAULT_LAMBDA)
        print()
        print("baseline")
        print(base.table())
        blocks.append(base.key_values(prefix="baseline_"))
    print()
    print("\n".join(blocks))
    return 0


def cmd_inspect(args: argparse.Namespace, cfg: Config) -> int:
    net = _network(cfg, args.category)
    st = net.store
    print(f"category {st.category}")
    print(f"lambda {net.lam!r}")
    print(f"n {st.n_samples}")
    for j in net.out_vocab:
        print(f"b {j} {net.bias(j):.6f}")
    for (i, j), c in sorted(st.c_joint.items()):
        if c:
            print(f"w {i} {j} {net.weight(i, j):.6f}")
    return 0


def cmd_gen(args: argparse.Namespace, cfg: Config) -> int:
    spec = SyntheticSpec(
        n_categories=args.n_categories,
        n_source=args.n_source,
        n_target=args.n_target,
        n_classes=args.n_classes,
        n_train=args.n_train,
        n_test=args.n_test,
        noise=args.noise,
        seed=args.seed,
    )
    try:
        corpus = gen_synthetic(spec)
    except ValueError as exc:
        raise CLIError(str(exc)) from exc
    for name, path in corpus.write(args.outdir).items():
        print(f"{name}\t{path}", file=sys.stderr)
    print(f"train_samples={len(corpus.train)}")
    print(f"test_samples={len(corpus.test)}")
    print(f"bayes_rate={corpus.bayes_rate:.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI file with an [itlex] section")
    common.add_argument("--lambda", dest="lam", type=float, help=f"add-lambda smoothing (default {DEFAULT_LAMBDA})")
    common.add_argument("--category-map", help="slot-label<TAB>category file")
    common.add_argument("--model-dir", help="directory of model files (default ./models)")

    parser = argparse.ArgumentParser(prog="itlex", description="Information-theoretical lexical selection networks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", parents=[common], help="train models from a corpus of f-structure pairs")
    p.add_argument("corpus")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("add", parents=[common], help="add a corpus to existing models")
    p.add_argument("corpus")
    p.set_defaults(func=cmd_add)

    p = sub.add_parser("select", parents=[common], help="select a target head for a source structure")
    p.add_argument("fstructure", help="bracketed source f-structure")
    p.add_argument("--category", help="network to use (default: mapped from the label)")
    p.add_argument("--top-k", type=int, help="number of ranked outputs to print (default 5)")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("eval", parents=[common], help="accuracy on a held-out corpus")
    p.add_argument("corpus")
    p.add_argument("--baseline", action="store_true", help="also score the word-level baseline")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("inspect", parents=[common], help="dump biases and weights of one network")
    p.add_argument("category")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("gen", parents=[common], help="write a synthetic train/test corpus")
    p.add_argument("outdir")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--n-train", type=int, default=500)
    p.add_argument("--n-test", type=int, default=500)
    p.add_argument("--n-categories", type=int, default=5)
    p.add_argument("--n-source", type=int, default=50)
    p.add_argument("--n-target", type=int, default=50)
    p.add_argument("--n-classes", type=int, default=2)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        return args.func(args, cfg)
    except (CLIError, ItlexError, ValueError) as exc:
        print(f"itlex {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
