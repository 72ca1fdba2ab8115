"""Gabor frame bounds on symplectic lattices, with metaplectic deformations."""

from .framebounds import (
    FrameBounds,
    bounds_symplectic,
    certify_even_critical,
    certify_odd_critical,
    certify_odd_density2,
    finite_section_bounds,
    janssen_bounds,
    janssen_symbol,
    lattice_bounds,
    zak_bounds,
)
from .lattice import Lattice, enumerate_points, from_symplectic, separable, square
from .metaplectic import (
    apply_chain,
    apply_chirp,
    apply_dilation,
    apply_fourier,
    apply_symplectic,
    parity_preserved,
    quadratic_fourier,
)
from .symplectic import (
    Chirp,
    Dilation,
    Fourier,
    GeneratorChain,
    QuadraticForm,
    SymplecticMatrix,
    chain_product,
    decompose,
    dilation_matrix,
    free_factor,
    is_symplectic,
    shear_matrix,
    standard_J,
    symplectic_form,
)
from .tfa import TFGrid, TFPoint, ambiguity, poisson_check, stft, symplectic_ft, wigner
from .windows import (
    DEFAULT_GRID,
    Gaussian,
    Hermite,
    OddCompactBump,
    SampledWindow,
    TimeGrid,
    parity_defect,
    reflect,
    s0_diagnostic,
    sample,
)

__version__ = "0.1.0"

__all__ = [
    "FrameBounds",
    "bounds_symplectic",
    "certify_even_critical",
    "certify_odd_critical",
    "certify_odd_density2",
    "finite_section_bounds",
    "janssen_bounds",
    "janssen_symbol",
    "lattice_bounds",
    "zak_bounds",
    "Lattice",
    "enumerate_points",
    "from_symplectic",
    "separable",
    "square",
    "apply_chain",
    "apply_chirp",
    "apply_dilation",
    "apply_fourier",
    "apply_symplectic",
    "parity_preserved",
    "quadratic_fourier",
    "Chirp",
    "Dilation",
    "Fourier",
    "GeneratorChain",
    "QuadraticForm",
    "SymplecticMatrix",
    "chain_product",
    "decompose",
    "dilation_matrix",
    "free_factor",
    "is_symplectic",
    "shear_matrix",
    "standard_J",
    "symplectic_form",
    "TFGrid",
    "TFPoint",
    "ambiguity",
    "poisson_check",
    "stft",
    "symplectic_ft",
    "wigner",
    "DEFAULT_GRID",
    "Gaussian",
    "Hermite",
    "OddCompactBump",
    "SampledWindow",
    "TimeGrid",
    "parity_defect",
    "reflect",
    "s0_diagnostic",
    "sample",
]
