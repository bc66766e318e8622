"""
Weyl 群与根系模块
"""

from .weyl_sl import (
    SIGMA,
    Word,
    Permutation,
    Root,
    simple_root,
    positive_roots,
    reflect_root,
    root_pairing_ratio,
    root_length_ratio,
    pairing_ratio,
    coroot,
    root_vector,
    torus_exp,
    word_to_permutation,
    inversion_set,
    length,
    is_reduced,
    longest_word,
    permutation_matrix,
    psi_embed,
    simple_refl_rep,
    word_rep,
    unipotent_param,
    torus_param
)

__all__ = [
    "SIGMA",
    "Word",
    "Permutation",
    "Root",
    "simple_root",
    "positive_roots",
    "reflect_root",
    "root_pairing_ratio",
    "root_length_ratio",
    "pairing_ratio",
    "coroot",
    "root_vector",
    "torus_exp",
    "word_to_permutation",
    "inversion_set",
    "length",
    "is_reduced",
    "longest_word",
    "permutation_matrix",
    "psi_embed",
    "simple_refl_rep",
    "word_rep",
    "unipotent_param",
    "torus_param"
]
