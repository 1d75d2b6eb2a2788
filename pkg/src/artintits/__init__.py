"""Word problem solvers for Artin-Tits groups built on cube-path normalization.

The package decides word equality in any Artin-Tits group whose
free-of-infinity standard parabolic subgroups carry word-problem oracles,
and applies this to the virtual braid groups VB_n.
"""

from .coxeter import (
    INFINITY,
    CoxeterElement,
    CoxeterGraph,
    build_graph,
    classify_finite,
    enumerate_parabolic,
    inverse,
    is_free_of_infinity,
    is_in_parabolic,
    left_descents,
    length_increases_right,
    longest_element,
    multiply,
    parabolic_decompose_left,
    reduce,
    right_descents,
)
from .words import (
    ArtinWord,
    DeltaFactor,
    WordOracle,
    artin_relators,
    delta_decompose,
    delta_word,
    iota_intersection,
    kappa,
    parse_word,
    pi_tilde,
    tau_tilde,
    theta,
)
from .garside import (
    GarsideNF,
    GarsideStructure,
    affine_A_oracle,
    build_garside,
    garside_oracle,
    oracle_for,
    product_oracle,
    to_normal_form,
)
from .cubepath import (
    Cube,
    CubePrepath,
    OracleRegistry,
    artin_equal,
    cubes_intersect,
    cubes_span,
    is_normal,
    is_trivial,
    normalize,
    word_to_prepath,
)
from .virtual_braids import (
    KnWord,
    VBWord,
    classify_components,
    gamma_vb,
    kn_to_artin,
    parse_vb_word,
    rewrite_to_semidirect,
    spherical_dimension,
    vb_equal,
)

__all__ = [name for name in dir() if not name.startswith("_")]
