"""End-to-end comparison and evaluation flows behind the CLI.

Everything here is a pure function of its inputs plus the explicit seed,
so a report rendered twice from the same files and configuration is
byte-identical.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .corpus import Lexicon, RawText, preprocess
from .errors import ManifestError
from .katz import katz_similarity
from .matching import matching_similarity
from .motifs import TRIAD_CLASSES, motif_dissimilarity, motif_zscores
from .mteval import bleu, correlate, nist
from .network import WordNetwork, build_network
from .semantic import KINDS as SEMANTIC_KINDS
from .semantic import text_similarity
from .slope import slope_features
from .topo import SUMMARY_COMPONENTS, node_metrics, summarize, topo_dissimilarity

INDEX_KEYS = (
    "cosine",
    "pearson",
    "lhn",
    "euclid",
    "katz",
    "topo",
    "motifs",
    "match_sem",
    "match_topo",
    "slope",
)

# Indices producing a single number per pair; these feed correlations.
SCALAR_INDEX_KEYS = (
    "cosine",
    "pearson",
    "lhn",
    "euclid",
    "katz",
    "topo",
    "motifs",
    "match_sem",
    "match_topo",
)

DEFAULT_REPLICATES = 100


def parse_index_selection(selection: str) -> tuple[str, ...]:
    """Turn a CLI index list (commas, dashes allowed) into canonical keys."""
    if selection.strip() == "all":
        return INDEX_KEYS
    keys = []
    for part in selection.split(","):
        key = part.strip().replace("-", "_")
        if not key:
            continue
        if key not in INDEX_KEYS:
            raise ValueError(f"unknown index {part.strip()!r}; pick from all, "
                             + ", ".join(k.replace("_", "-") for k in INDEX_KEYS))
        if key not in keys:
            keys.append(key)
    if not keys:
        raise ValueError("empty index selection")
    return tuple(keys)


def _side_info(raw: RawText, net: WordNetwork, token_count: int) -> dict:
    return {
        "id": raw.id,
        "language": raw.language,
        "tokens": token_count,
        "nodes": net.n,
        "edges": int(net.w.nnz),
    }


def compare_report(
    source: RawText,
    target: RawText,
    lexicon: Lexicon,
    indices: tuple[str, ...] = INDEX_KEYS,
    seed: int | None = None,
    replicates: int = DEFAULT_REPLICATES,
    per_node: bool = False,
) -> dict:
    """All requested indices for one ordered pair of texts.

    The motif index draws on a random ensemble and demands a seed; every
    other index is seed-free.  Asymmetric indices read ``source`` as the
    reference side (denominators, regression y axis).
    """
    for key in indices:
        if key not in INDEX_KEYS:
            raise ValueError(f"unknown index {key!r}")
    if "motifs" in indices and seed is None:
        raise ValueError("the motif index needs an explicit --seed")

    doc_s = preprocess(source, lexicon)
    doc_t = preprocess(target, lexicon)
    net_s = build_network(doc_s)
    net_t = build_network(doc_t)

    metrics_s = metrics_t = None
    def metrics():
        nonlocal metrics_s, metrics_t
        if metrics_s is None:
            metrics_s = node_metrics(net_s)
            metrics_t = node_metrics(net_t)
        return metrics_s, metrics_t

    out_indices: dict[str, dict] = {}
    for key in indices:
        if key in SEMANTIC_KINDS:
            sim = text_similarity(net_s, net_t, key)
            entry = {"aggregate": sim.aggregate}
            if per_node:
                entry["perNode"] = [
                    {"label": ns.label, "shared": ns.shared, "score": ns.score}
                    for ns in sim.per_node
                ]
            out_indices[key] = entry
        elif key == "katz":
            res = katz_similarity(net_s, net_t)
            out_indices[key] = {"gamma": res.gamma, "degenerate": res.degenerate}
        elif key == "topo":
            ms, mt = metrics()
            delta, d = topo_dissimilarity(summarize(ms), summarize(mt))
            out_indices[key] = {
                "d": d,
                "delta": [float(v) for v in delta],
                "components": list(SUMMARY_COMPONENTS),
            }
        elif key == "motifs":
            prof_s = motif_zscores(net_s, seed=seed, replicates=replicates)
            prof_t = motif_zscores(net_t, seed=seed, replicates=replicates)
            delta, d = motif_dissimilarity(prof_s, prof_t)
            out_indices[key] = {
                "d": d,
                "delta": [float(v) for v in delta],
                "classes": list(TRIAD_CLASSES),
                "source": _profile_dict(prof_s),
                "target": _profile_dict(prof_t),
            }
        elif key in ("match_sem", "match_topo"):
            mode = "semantic" if key == "match_sem" else "topologic"
            ms, mt = (None, None) if mode == "semantic" else metrics()
            res = matching_similarity(net_s, net_t, mode, ms, mt)
            entry = {"accuracy": res.accuracy, "totalWeight": res.total_weight}
            if per_node:
                entry["assignment"] = list(res.assignment)
            out_indices[key] = entry
        elif key == "slope":
            ms, mt = metrics()
            descriptors = slope_features(net_s, net_t, ms, mt)
            out_indices[key] = {
                "descriptors": [
                    {
                        "metric": d.metric,
                        "intercept": d.intercept,
                        "slope": d.slope,
                        "r": d.r,
                        "support": d.support,
                        "defined": d.defined,
                    }
                    for d in descriptors
                ]
            }

    return {
        "source": _side_info(source, net_s, len(doc_s.tokens)),
        "target": _side_info(target, net_t, len(doc_t.tokens)),
        "indices": out_indices,
        "provenance": {
            "version": __version__,
            "indices": list(indices),
            "seed": seed,
            "replicates": replicates if "motifs" in indices else None,
        },
    }


def _profile_dict(prof) -> dict:
    return {
        "counts": [int(c) for c in prof.counts],
        "zscores": [float(z) for z in prof.zscores],
        "nullMean": [float(v) for v in prof.null_mean],
        "nullStd": [float(v) for v in prof.null_std],
        "degenerate": [bool(b) for b in prof.degenerate],
        "replicates": prof.replicates,
        "seed": prof.seed,
    }


@dataclass(frozen=True)
class EvalRow:
    id: str
    candidate: RawText
    references: tuple[RawText, ...]


def load_eval_manifest(path) -> list[EvalRow]:
    """Evaluation manifest: JSON array of rows with ``id``, ``candidate``
    and a nonempty ``references`` list of paths, plus optional
    ``language``."""
    manifest_path = Path(path)
    try:
        rows = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(rows, list):
        raise ManifestError(f"{path}: top level must be a JSON array")
    out = []
    seen = set()
    for i, row in enumerate(rows, 1):
        where = f"{path}: row {i}"
        if not isinstance(row, dict):
            raise ManifestError(f"{where}: expected an object")
        if not isinstance(row.get("id"), str) or not row["id"]:
            raise ManifestError(f"{where}: missing or empty 'id'")
        if row["id"] in seen:
            raise ManifestError(f"{where}: duplicate id {row['id']!r}")
        seen.add(row["id"])
        if not isinstance(row.get("candidate"), str) or not row["candidate"]:
            raise ManifestError(f"{where}: missing or empty 'candidate'")
        refs = row.get("references")
        if not isinstance(refs, list) or not refs or not all(isinstance(r, str) and r for r in refs):
            raise ManifestError(f"{where}: 'references' must be a nonempty list of paths")
        language = row.get("language", "en")
        if not isinstance(language, str):
            raise ManifestError(f"{where}: language must be a string")

        def read(rel: str, role: str) -> RawText:
            p = Path(rel)
            if not p.is_absolute():
                p = manifest_path.parent / p
            try:
                content = p.read_text(encoding="utf-8")
            except OSError as exc:
                raise ManifestError(f"{where}: cannot read {p}: {exc}") from exc
            if not content.strip():
                raise ManifestError(f"{where}: file {p} is empty")
            return RawText(id=f"{row['id']}:{role}", language=language, content=content)

        out.append(
            EvalRow(
                id=row["id"],
                candidate=read(row["candidate"], "candidate"),
                references=tuple(
                    read(r, f"ref{k}") for k, r in enumerate(refs)
                ),
            )
        )
    return out


def _eval_one(args) -> dict:
    row, lexicon, indices, seed, replicates = args
    reference = row.references[0]
    report = compare_report(
        reference,
        row.candidate,
        lexicon,
        indices=indices,
        seed=seed,
        replicates=replicates,
    )
    scores = {}
    for key in indices:
        entry = report["indices"][key]
        if key in SEMANTIC_KINDS:
            scores[key] = entry["aggregate"]
        elif key == "katz":
            scores[key] = entry["gamma"]
        elif key in ("topo", "motifs"):
            scores[key] = entry["d"]
        else:
            scores[key] = entry["accuracy"]
    ref_contents = [r.content for r in row.references]
    return {
        "id": row.id,
        "indices": scores,
        "gold": {
            "bleu": bleu(row.candidate.content, ref_contents),
            "nist": nist(row.candidate.content, ref_contents),
        },
    }


def mt_eval_report(
    rows: list[EvalRow],
    lexicon: Lexicon,
    indices: tuple[str, ...],
    gold: tuple[str, ...] = ("bleu", "nist"),
    seed: int | None = None,
    replicates: int = DEFAULT_REPLICATES,
    jobs: int = 1,
) -> dict:
    """Per-row index and gold scores plus their correlation table.

    Indices must be scalar-valued here.  The first reference of each row
    doubles as the network comparison reference; all references feed the
    gold scores.  Row order follows the manifest whatever ``jobs`` is.
    """
    for key in indices:
        if key not in SCALAR_INDEX_KEYS:
            raise ValueError(f"index {key!r} is not scalar; cannot correlate it")
    for g in gold:
        if g not in ("bleu", "nist"):
            raise ValueError(f"unknown gold score {g!r}")
    if "motifs" in indices and seed is None:
        raise ValueError("the motif index needs an explicit --seed")
    work = [(row, lexicon, indices, seed, replicates) for row in rows]
    if jobs > 1 and len(rows) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_row = list(pool.map(_eval_one, work))
    else:
        per_row = [_eval_one(w) for w in work]
    correlations = []
    for key in indices:
        xs = [r["indices"][key] for r in per_row]
        for g in gold:
            ys = [r["gold"][g] for r in per_row]
            report = correlate(xs, ys, key, g)
            correlations.append(
                {
                    "index": key,
                    "gold": g,
                    "pearson": report.pearson,
                    "pairs": report.pairs,
                }
            )
    return {
        "rows": per_row,
        "correlations": correlations,
        "provenance": {
            "version": __version__,
            "indices": list(indices),
            "gold": list(gold),
            "seed": seed,
            "replicates": replicates if "motifs" in indices else None,
        },
    }
