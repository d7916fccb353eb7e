from .discrete import (
    conditional_entropy,
    entropy,
    mixing_stage,
    mutual_information,
    pushforward,
    random_joint,
    random_stochastic_matrix,
    verify_mi_nonincreasing,
    view_information_split,
)
from .similarity import cca_cosine_linear, cosine_similarity, kernel_cosine, scs

__all__ = [
    'cca_cosine_linear',
    'conditional_entropy',
    'cosine_similarity',
    'entropy',
    'kernel_cosine',
    'mixing_stage',
    'mutual_information',
    'pushforward',
    'random_joint',
    'random_stochastic_matrix',
    'scs',
    'verify_mi_nonincreasing',
    'view_information_split',
]
