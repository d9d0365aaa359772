"""Syntactic representations and hierarchical vectors from pretrained word embeddings."""

from .embedding_io import (
    EmbeddingMatrix,
    load_embeddings,
    load_glove_text,
    load_word2vec_binary,
    lookup,
    save_glove_text,
    save_word2vec_binary,
)
from .hierarchical import (
    ComposedVectors,
    HierarchicalTransformer,
    HierarchicalVector,
    Kind,
    compose_all,
    config_id,
    overcomplete,
    weighted,
)
from .lexicon import POS_CLASSES, PosLexicon, intersect, load_pos_lexicon, sized_word_list
from .syntax import (
    SyntacticRepr,
    SyntacticTransformer,
    TransitionMatrix,
    Variant,
    build_transition_matrix,
    normalize_interpretable,
    normalize_l2,
    project,
    project_all,
)
from .tables import VectorTable

__version__ = "0.1.0"
