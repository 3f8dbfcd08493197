"""Gap labelling: integer Hall conductances from a Diophantine equation.

Each gap of flux p/q carries an integer conductance (units of e^2/h).  In
the tight-binding regime it is the centered residue of j*m modulo q, where
(m, n) solves p*m - q*n = 1 and j is the gap index.  In the split-Landau
regime the roles of p and q are interchanged: solve q*m - p*n = 1 and
reduce modulo p.  Everything here is exact integer arithmetic.

The centered residue lives in (-modulus/2, modulus/2].  For even modulus
the bound |k| <= modulus/2 admits both signs at the boundary; we keep the
positive representative and set an ``ambiguous`` flag rather than guess.
In the tight-binding regime the boundary is only reached at the central
gap of even q, which is closed (zero width), so the choice is invisible;
in the split-Landau regime it can occur at open gaps and the flag is
surfaced in exports.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

from .rationals import ReducedFraction, conjugate_pair

__all__ = [
    "Regime",
    "GapLabel",
    "CenteredResidue",
    "centered_residue",
    "gap_labels",
    "band_cherns",
]


class Regime(enum.Enum):
    """Which interaction dominates: the lattice or the magnetic field."""

    TIGHT_BINDING = "tb"
    LANDAU_SPLIT = "landau"


class CenteredResidue(NamedTuple):
    value: int
    ambiguous: bool


@dataclass(frozen=True)
class GapLabel:
    """Integer Hall conductance attached to gap ``index`` under ``regime``."""

    index: int
    sigma: int
    regime: Regime
    ambiguous: bool


def centered_residue(a: int, modulus: int) -> CenteredResidue:
    """Residue of a modulo ``modulus`` shifted into (-modulus/2, modulus/2].

    For modulus 1 the result is 0.  The ``ambiguous`` flag is set exactly
    when the modulus is even and the residue sits on the boundary
    modulus/2, where both signs satisfy |r| <= modulus/2.
    """
    if modulus < 1:
        raise ValueError(f"modulus must be >= 1, got {modulus}")
    r = a % modulus
    if 2 * r > modulus:
        r -= modulus
    return CenteredResidue(r, modulus % 2 == 0 and 2 * r == modulus)


def _label_generator(f: ReducedFraction, regime: Regime) -> tuple[int, int]:
    """Return (m, modulus) defining sigma_j = centered(j*m mod modulus)."""
    if regime is Regime.TIGHT_BINDING:
        return conjugate_pair(f).m, f.q
    if regime is Regime.LANDAU_SPLIT:
        if f.p < 1:
            raise ValueError("split-Landau labels need p >= 1 (inverse flux 0 is undefined)")
        swapped = ReducedFraction(f.q, f.p)
        return conjugate_pair(swapped).m, f.p
    raise ValueError(f"unknown regime {regime!r}")


def gap_labels(f: ReducedFraction, regime: Regime) -> list[GapLabel]:
    """Hall conductances of all q - 1 gaps of flux f, in gap order.

    Closed gaps (zero width) are labelled too; the renderer simply never
    paints them, which keeps the list length uniform.
    """
    m, modulus = _label_generator(f, regime)
    labels = []
    for j in range(1, f.q):
        sigma, ambiguous = centered_residue(j * m, modulus)
        labels.append(GapLabel(index=j, sigma=sigma, regime=regime, ambiguous=ambiguous))
    return labels


def band_cherns(labels: list[GapLabel], f: ReducedFraction, regime: Regime) -> list[int]:
    """Per-band Chern numbers as differences of adjacent gap conductances.

    Band r carries k_r - k_{r-1} where k_0 = 0 and k_q is the centered
    residue of q*m, which vanishes identically in the tight-binding regime
    (the filled band is topologically trivial) but generally not in the
    split-Landau one.
    """
    if len(labels) != f.q - 1:
        raise ValueError(f"expected {f.q - 1} labels for flux {f}, got {len(labels)}")
    m, modulus = _label_generator(f, regime)
    fences = [0] + [label.sigma for label in labels] + [centered_residue(f.q * m, modulus).value]
    return [fences[r] - fences[r - 1] for r in range(1, f.q + 1)]
