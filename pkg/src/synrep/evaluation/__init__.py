from .datasets import (
    AttributeTriplets,
    DatasetError,
    LabeledTextDataset,
    SimilarityDataset,
    load_discriminative,
    load_newsgroups,
    load_np_bracketing,
    load_similarity,
    load_sst,
    load_trec,
    tokenize,
)
from .models import LinearSVM, SelectedModel, SoftmaxRegression, default_grid, train_linear
from .report import EvalReport
from .stats import SignificanceRow, corrected_paired_ttest, significance_protocol
from .sweep import size_sweep, write_sweep_csv
from .tasks import (
    TaskResult,
    featurize,
    run_classification,
    run_discriminative,
    run_np_bracketing,
    run_text_classification,
    run_word_similarity,
    sentence_features,
)
