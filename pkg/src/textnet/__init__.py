"""Word co-occurrence networks and text (dis)similarity indices.

Texts become directed weighted networks of immediate word adjacency;
networks are compared through topology summaries, motif z-score
profiles, neighborhood overlap indices, Katz matrix correlation, optimal
node matching and regression descriptors.  A small evaluation layer
scores translations against references (BLEU, NIST), cross-validates
classifiers over feature tables and clusters texts hierarchically.
"""

__version__ = "0.1.0"

from .corpus import (
    CorpusEntry,
    Document,
    Lexicon,
    RawText,
    default_lexicon,
    load_manifest,
    preprocess,
    tokenize,
)
from .errors import (
    DegenerateSpectrumError,
    DimensionMismatchError,
    DocumentEmptyError,
    EmptyTrainError,
    InsufficientOverlapError,
    ManifestError,
    TextnetError,
    TooFewNodesError,
    TooFewRowsError,
    TooFewTokensError,
    ZeroVarianceError,
)
from .network import WordNetwork, build_network, zero_pad_align
from .topo import MetricVector, NodeMetrics, node_metrics, summarize, topo_dissimilarity
from .motifs import (
    TRIAD_CLASSES,
    MotifProfile,
    motif_census,
    motif_dissimilarity,
    motif_zscores,
    random_equivalent,
)
from .semantic import TextSimilarity, text_similarity
from .katz import KatzMatrix, KatzResult, katz_matrix, katz_similarity, leading_eigenvalue
from .matching import AssignmentProblem, MatchingResult, km_assign, matching_similarity
from .slope import ScatterDescriptor, descriptor_vector, slope_features
from .mteval import CorrelationReport, bleu, correlate, nist, pearson_correlation
from .learn import CVResult, FeatureRow, FeatureTable, kfold_cv, knn_classify
from .cluster import Dendrogram, Merge, export_newick, ward_cluster

__all__ = [name for name in dir() if not name.startswith("_")]
