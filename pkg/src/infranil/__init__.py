"""Nielsen periodic point theory for affine maps on flat infra-nilmanifolds.

Groups and maps are read with :func:`load_input` / :func:`parse_input`;
the fixed point invariants live in :mod:`nielsen`, the periodic ones in
:mod:`periodic`, and :mod:`oracle` recounts fixed points by brute force.
"""

from .classify import is_semi_hyperbolic, is_weakly_jiang, nf_equals_n_profile, wecken_prediction
from .crystal import (AffineElement, CrystalGroup, SelfMapData, build_group, build_map, load_input,
                      parse_input, validate_map_induces)
from .errors import (BoostNotWellDefined, FsharpDataRequired, InfranilError, StructuralInvariantError,
                     ValidationError)
from .nielsen import class_essential, class_nielsen, lefschetz, nielsen_number, reidemeister_finite
from .oracle import flat_fix_enumerate, torus_fix_count
from .periodic import (boost_class, equivalence_classes, export_boost_graph, iib,
                       irreducible_essential_counts, nf, np, periodic_report)
from .zeta import minimal_zeta, nielsen_zeta, probe_rationality

__all__ = [
    "AffineElement", "CrystalGroup", "SelfMapData", "build_group", "build_map", "load_input",
    "parse_input", "validate_map_induces",
    "InfranilError", "ValidationError", "FsharpDataRequired", "StructuralInvariantError",
    "BoostNotWellDefined",
    "lefschetz", "nielsen_number", "reidemeister_finite", "class_essential", "class_nielsen",
    "equivalence_classes", "boost_class", "irreducible_essential_counts", "iib", "nf", "np",
    "periodic_report", "export_boost_graph",
    "is_semi_hyperbolic", "is_weakly_jiang", "nf_equals_n_profile", "wecken_prediction",
    "nielsen_zeta", "minimal_zeta", "probe_rationality",
    "torus_fix_count", "flat_fix_enumerate",
]
