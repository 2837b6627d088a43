"""Exact-arithmetic workbench for bigraded diagram complexes.

Decorated forest diagrams on a line with asterisk markings span a family of
bigraded complexes; this package enumerates their slice bases, materializes
the integer differentials, computes homology with torsion by Smith reduction,
carries the full Hopf structure (shuffle product, cut coproduct, divided
products and powers, left-most-point gluing), and verifies the triangular
isomorphism between the horizontal and full differentials together with the
splitting of the chord-diagram bialgebra.
"""

__version__ = "0.1.0"

from .complexes import (
    DifferentialMatrix,
    SliceBasis,
    Variant,
    d_h,
    d_v,
    differential,
    differential_matrix,
    enumerate_slice,
    full_differential,
)
from .diagrams import (
    EVEN,
    ODD,
    PARITIES,
    Bigrading,
    Diagram,
    Parity,
    SignedDiagram,
    bigrading,
    canonical_monomial,
    canonicalize,
    koszul_sign,
    parse_diagram,
    serialize,
    validate,
)
from .homology import (
    HomologyGroup,
    SNFResult,
    chord_space_dims,
    dual_homology_group,
    homology_group,
    induced_map_on_homology,
    kunneth_compare,
    smith_normal_form,
)
from .hopf import (
    bracket_over,
    coproduct,
    divided_power,
    divided_product,
    iso_I,
    iso_I_hat,
    iso_I_inv,
    make_star,
    make_unit,
    make_z,
    make_zhat,
    shuffle_product,
    vdash,
)
from .lincomb import LinComb
from .relations import (
    arnold_reduce,
    is_admissible,
    quantum_binomial,
    span_rank_oracle,
)
from .rings import QQ, ZZ, PrimeField, Ring, ring_from_name
