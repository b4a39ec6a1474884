"""Exact capacities of concave toric domains with lens-space boundary.

Three mutually cross-checking routes: closed-form singular-ellipsoid spectra,
lattice-path maximization, and weight-expansion ball packing; plus the full
combinatorial contact complex (generators, grading, corounding differential,
homology over GF(2)).
"""

from .domains import (
    Domain,
    DomainError,
    Frame,
    SchemaError,
    decode_domain,
    domain_contains,
    encode_domain,
    make_singular_ellipsoid,
    scale_domain,
    support_value,
    validate_domain,
)
from .ecc import (
    ComplexSlice,
    Generator,
    boundary_pair,
    build_complex,
    capacities_from_complex,
    differential,
    ech_index,
    generators_of_index,
    homology_ranks,
    make_generator,
    no_crossing,
    roundings,
    slice_class,
)
from .geometry import (
    GeometryError,
    Vec,
    cross,
    lattice_points_in_polygon,
    polygon_area,
    primitive_decompose,
    sl2_apply,
    trivialization_vector,
)
from .indexlab import (
    IndexComponents,
    Tilted,
    cz_elliptic,
    cz_hyperbolic,
    ellipsoid_eta,
    ellipsoid_generator_index,
    ellipsoid_generator_point,
    fredholm_index,
    index_components,
    partitions,
    rotation_numbers,
    tilted,
)
from .packing import (
    WeightExpansion,
    max_plus_convolve,
    packing_capacities,
    verify_packing,
    weight_expansion,
)
from .paths import (
    ConcavePath,
    DecoratedPath,
    all_elliptic,
    capacity_by_paths,
    empty_path,
    enumerate_paths,
    lattice_count,
    omega_length,
    validate_decorated,
    validate_path,
)
from .spectrum import classical_spectrum, singular_ellipsoid_spectrum

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
