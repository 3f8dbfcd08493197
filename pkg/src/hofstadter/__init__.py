"""Colored Hofstadter butterflies.

Band structure of the flux-threaded hopping model at rational flux p/q,
integer Hall conductances for every spectral gap from a Diophantine
equation (both the tight-binding and the split-Landau regime), an
independent Berry-curvature oracle that closes the loop between the two,
and deterministic rendering of the colored diagrams.
"""

from .chern import CenteredResidue, GapLabel, Regime, band_cherns, centered_residue, gap_labels
from .rationals import (
    DiophantinePair,
    ReducedFraction,
    best_approximant,
    conjugate_pair,
    extended_gcd,
    farey_sequence,
)
from .render import (
    ButterflyRaster,
    RenderConfig,
    color_of,
    image_bytes,
    pixel_color,
    render_butterfly,
    write_image,
)
from .spectrum import (
    Gap,
    SpectrumAtFlux,
    band_edges,
    bands_and_gaps,
    harper_matrix,
    spectrum_at_flux,
    symmetric_eigenvalues,
)
from .verify import (
    ChernReport,
    CompositeChernReport,
    DegenerateBandError,
    OracleChern,
    band_chern_oracle,
    bloch_hamiltonian,
    multiplet_chern_oracle,
    spectrum_oracle,
    verify_labels,
    verify_labels_composite,
)

__version__ = "0.1.0"

__all__ = [
    "ReducedFraction",
    "DiophantinePair",
    "extended_gcd",
    "conjugate_pair",
    "farey_sequence",
    "best_approximant",
    "Gap",
    "SpectrumAtFlux",
    "harper_matrix",
    "symmetric_eigenvalues",
    "band_edges",
    "bands_and_gaps",
    "spectrum_at_flux",
    "Regime",
    "GapLabel",
    "CenteredResidue",
    "centered_residue",
    "gap_labels",
    "band_cherns",
    "DegenerateBandError",
    "OracleChern",
    "ChernReport",
    "CompositeChernReport",
    "bloch_hamiltonian",
    "spectrum_oracle",
    "band_chern_oracle",
    "multiplet_chern_oracle",
    "verify_labels",
    "verify_labels_composite",
    "RenderConfig",
    "ButterflyRaster",
    "color_of",
    "pixel_color",
    "render_butterfly",
    "image_bytes",
    "write_image",
]
