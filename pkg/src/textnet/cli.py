"""Command line interface.

Every subcommand reads plain files, writes JSON (or a human table behind
``--pretty``) and exits 0 on success, 2 on input problems and 3 when the
data is too degenerate for the requested computation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .cluster import export_newick, ward_cluster
from .corpus import (
    Lexicon,
    RawText,
    default_lexicon,
    load_lemmas,
    load_stopwords,
    preprocess,
)
from .errors import ManifestError, TextnetError
from .learn import feature_table_from_json, kfold_cv, ALGORITHMS
from .motifs import TRIAD_CLASSES, motif_zscores
from .network import build_network, to_edgelist, to_json_dict
from .pipeline import (
    DEFAULT_REPLICATES,
    compare_report,
    load_eval_manifest,
    mt_eval_report,
    parse_index_selection,
)
from .topo import SUMMARY_COMPONENTS, node_metrics, summarize


def _add_lexicon_args(sub):
    sub.add_argument("--language", default="en", help="resource language (default en)")
    sub.add_argument("--stopwords", help="stopword file overriding the default list")
    sub.add_argument("--lemmas", help="lemma file overriding the default table")


def _lexicon(args) -> Lexicon:
    base = default_lexicon(args.language)
    stop = load_stopwords(args.stopwords) if args.stopwords else base.stopwords
    lemmas = load_lemmas(args.lemmas) if args.lemmas else base.lemma_map
    return Lexicon(stop, lemmas)


def _read_text(path: str, language: str) -> RawText:
    p = Path(path)
    content = p.read_text(encoding="utf-8")
    return RawText(id=p.stem, language=language, content=content)


def _emit(args, data: dict | str) -> None:
    text = data if isinstance(data, str) else json.dumps(data, indent=2, sort_keys=True)
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_preprocess(args) -> int:
    doc = preprocess(_read_text(args.file, args.language), _lexicon(args))
    _emit(args, {"id": doc.id, "tokens": list(doc.tokens)})
    return 0


def cmd_build(args) -> int:
    doc = preprocess(_read_text(args.file, args.language), _lexicon(args))
    net = build_network(doc)
    if args.format == "edgelist":
        _emit(args, to_edgelist(net))
    else:
        _emit(args, to_json_dict(net))
    return 0


def cmd_metrics(args) -> int:
    doc = preprocess(_read_text(args.file, args.language), _lexicon(args))
    net = build_network(doc)
    metrics = node_metrics(net)
    summary = summarize(metrics)
    if args.pretty:
        lines = [f"{'component':<18} value"]
        for name, value in summary.as_dict().items():
            lines.append(f"{name:<18} {value:.6f}")
        _emit(args, "\n".join(lines))
        return 0
    per_node = {
        label: {
            "degree": int(metrics.degree[i]),
            "inDegree": int(metrics.in_degree[i]),
            "outDegree": int(metrics.out_degree[i]),
            "betweenness": float(metrics.betweenness[i]),
            "clustering": float(metrics.clustering[i]),
            "avgPath": float(metrics.avg_path[i]),
        }
        for i, label in enumerate(net.labels)
    }
    _emit(args, {"perNode": per_node, "summary": summary.as_dict()})
    return 0


def cmd_motifs(args) -> int:
    doc = preprocess(_read_text(args.file, args.language), _lexicon(args))
    net = build_network(doc)
    prof = motif_zscores(net, seed=args.seed, replicates=args.replicates)
    data = {
        "classes": list(TRIAD_CLASSES),
        "counts": [int(c) for c in prof.counts],
        "zscores": [float(z) for z in prof.zscores],
        "nullMean": [float(v) for v in prof.null_mean],
        "nullStd": [float(v) for v in prof.null_std],
        "degenerate": [bool(b) for b in prof.degenerate],
        "replicates": prof.replicates,
        "seed": prof.seed,
    }
    if args.pretty:
        lines = [f"{'class':<16} {'count':>8} {'z':>12}"]
        for name, c, z in zip(TRIAD_CLASSES, prof.counts, prof.zscores):
            lines.append(f"{name:<16} {int(c):>8} {float(z):>12.4f}")
        _emit(args, "\n".join(lines))
        return 0
    _emit(args, data)
    return 0


def cmd_compare(args) -> int:
    indices = parse_index_selection(args.index)
    lexicon = _lexicon(args)
    report = compare_report(
        _read_text(args.source, args.language),
        _read_text(args.target, args.language),
        lexicon,
        indices=indices,
        seed=args.seed,
        replicates=args.replicates,
        per_node=args.per_node,
    )
    if args.pretty:
        lines = [f"{'index':<12} value"]
        for key, entry in report["indices"].items():
            if "aggregate" in entry:
                value = entry["aggregate"]
            elif "gamma" in entry:
                value = entry["gamma"]
            elif "d" in entry:
                value = entry["d"]
            elif "accuracy" in entry:
                value = entry["accuracy"]
            else:
                value = float("nan")
            lines.append(f"{key.replace('_', '-'): <12} {value:.6f}")
        _emit(args, "\n".join(lines))
        return 0
    _emit(args, report)
    return 0


def cmd_mt_eval(args) -> int:
    rows = load_eval_manifest(args.manifest)
    indices = parse_index_selection(args.indices)
    gold = tuple(g.strip() for g in args.gold.split(",") if g.strip())
    report = mt_eval_report(
        rows,
        _lexicon(args),
        indices=indices,
        gold=gold,
        seed=args.seed,
        replicates=args.replicates,
        jobs=args.jobs,
    )
    if args.pretty:
        lines = [f"{'index':<12} {'gold':<6} {'pearson':>10} {'pairs':>6}"]
        for c in report["correlations"]:
            lines.append(
                f"{c['index'].replace('_', '-'): <12} {c['gold']:<6} {c['pearson']:>10.4f} {c['pairs']:>6}"
            )
        _emit(args, "\n".join(lines))
        return 0
    _emit(args, report)
    return 0


def cmd_classify(args) -> int:
    table = feature_table_from_json(Path(args.features).read_text(encoding="utf-8"))
    result = kfold_cv(table, args.algo, folds=args.folds, seed=args.seed)
    if args.pretty:
        folds = " ".join(f"{v:.3f}" for v in result.per_fold)
        _emit(args, f"algorithm {result.algorithm}\nfolds {folds}\naccuracy {result.accuracy:.4f}")
        return 0
    _emit(args, json.loads(result.to_json()))
    return 0


def cmd_cluster(args) -> int:
    table = feature_table_from_json(Path(args.features).read_text(encoding="utf-8"))
    dendrogram = ward_cluster(table.matrix(), [row.id for row in table.rows])
    newick = export_newick(dendrogram)
    if args.out:
        Path(args.out).write_text(newick + "\n", encoding="utf-8")
        summary = {
            "leaves": len(dendrogram.leaf_labels),
            "merges": len(dendrogram.merges),
            "height": dendrogram.merges[-1].height,
            "out": args.out,
        }
        sys.stdout.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(newick + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="textnet",
        description="Compare texts through their word co-occurrence networks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("preprocess", help="tokenize, remove stopwords, lemmatize")
    p.add_argument("file")
    _add_lexicon_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_preprocess)

    p = subs.add_parser("build", help="build the co-occurrence network of a text")
    p.add_argument("file")
    _add_lexicon_args(p)
    p.add_argument("--format", choices=("json", "edgelist"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_build)

    p = subs.add_parser("metrics", help="node metrics and their summary vector")
    p.add_argument("file")
    _add_lexicon_args(p)
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_metrics)

    p = subs.add_parser("motifs", help="triad census z-scores against random graphs")
    p.add_argument("file")
    _add_lexicon_args(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--replicates", type=int, default=DEFAULT_REPLICATES)
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_motifs)

    p = subs.add_parser("compare", help="similarity indices for a pair of texts")
    p.add_argument("source")
    p.add_argument("target")
    _add_lexicon_args(p)
    p.add_argument("--index", default="all", help="comma list or 'all'")
    p.add_argument("--seed", type=int, help="required when the motif index runs")
    p.add_argument("--replicates", type=int, default=DEFAULT_REPLICATES)
    p.add_argument("--per-node", action="store_true")
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare)

    p = subs.add_parser("mt-eval", help="correlate indices with BLEU and NIST")
    p.add_argument("--manifest", required=True)
    _add_lexicon_args(p)
    p.add_argument(
        "--indices",
        default="cosine,pearson,lhn,euclid,katz,topo,match-sem,match-topo",
    )
    p.add_argument("--gold", default="bleu,nist")
    p.add_argument("--seed", type=int)
    p.add_argument("--replicates", type=int, default=DEFAULT_REPLICATES)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_mt_eval)

    p = subs.add_parser("classify", help="cross-validate a classifier on features")
    p.add_argument("--features", required=True)
    p.add_argument("--algo", choices=sorted(ALGORITHMS), default="knn1")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = subs.add_parser("cluster", help="Ward dendrogram of feature rows")
    p.add_argument("--features", required=True)
    p.add_argument("--method", choices=("ward",), default="ward")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cluster)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ManifestError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TextnetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
