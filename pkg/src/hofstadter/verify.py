"""Independent numerical oracles for the band edges and the gap labels.

Two cross-checks, both built on the full Bloch problem rather than the
edge recipe or the Diophantine arithmetic they validate:

* :func:`spectrum_oracle` samples the q eigenvalue branches on a dense
  grid over the magnetic Brillouin zone [0, 2*pi/q) x [0, 2*pi) and
  reports per-band min/max, which must bracket towards the band edges.
* :func:`band_chern_oracle` integrates lattice Berry curvature with the
  plaquette link method: normalised eigenvector overlaps around each
  grid plaquette, principal argument of the product, summed and divided
  by 2*pi.  The sum is an exact integer up to floating-point noise, and
  the eigenvector phase gauge drops out of the plaquette product.  The
  loop orientation is the one that gives the lowest band of flux 1/3 a
  Chern number of +1, which pins the overall sign convention.

Cumulative sums of oracle Chern numbers must reproduce the tight-binding
gap labels; :func:`verify_labels` runs that comparison end to end.  The
split-Landau labels describe a different microscopic system (a weak
lattice splitting a Landau level, not this hopping Hamiltonian), so no
curvature oracle is offered for them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .chern import Regime, gap_labels
from .rationals import ReducedFraction
from .spectrum import TWO_PI, spectrum_at_flux

__all__ = [
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
]

# A gap narrower than this counts as a band touching: the plaquette method
# needs the band isolated everywhere, not just at the sampled points.
DEGENERACY_TOL = 1e-8


class DegenerateBandError(RuntimeError):
    """Raised when a requested band touches a neighbour somewhere in the zone."""


class OracleChern(NamedTuple):
    chern: int
    residual: float


@dataclass(frozen=True)
class ChernReport:
    """Outcome of checking Diophantine labels against curvature integrals."""

    flux: ReducedFraction
    band_cherns: tuple[int, ...]
    residuals: tuple[float, ...]
    cumulative: tuple[int, ...]
    labels: tuple[int, ...]
    passed: bool


@dataclass(frozen=True)
class CompositeChernReport:
    """Like :class:`ChernReport` but for bands grouped across closed gaps.

    Cumulative sums and Diophantine labels are only comparable at the open
    gaps, which is where ``cumulative`` and ``labels`` live (one entry per
    open gap, plus the final total in ``cumulative``).
    """

    flux: ReducedFraction
    groups: tuple[tuple[int, int], ...]
    group_cherns: tuple[int, ...]
    residuals: tuple[float, ...]
    open_gap_indices: tuple[int, ...]
    cumulative: tuple[int, ...]
    labels: tuple[int, ...]
    passed: bool


def bloch_hamiltonian(f: ReducedFraction, k1: float, k2: float) -> np.ndarray:
    """Complex Hermitian q x q Bloch matrix of flux f at quasi-momenta (k1, k2).

    Site n carries 2*cos(k2 + 2*pi*(p*n mod q)/q) on the diagonal, interior
    bonds are 1, and the wrap bond picks up exp(1j*q*k1).  At k1 = 0 this
    reduces to the periodic ring, at k1 = pi/q to the antiperiodic one.
    """
    q = f.q
    h = np.zeros((q, q), dtype=complex)
    for n in range(q):
        h[n, n] = 2.0 * math.cos(k2 + TWO_PI * ((f.p * n) % q) / q)
    for n in range(q - 1):
        h[n, n + 1] += 1.0
        h[n + 1, n] += 1.0
    corner = cmath.exp(1j * q * k1)
    h[q - 1, 0] += corner
    h[0, q - 1] += corner.conjugate()
    return h


def _grid_hamiltonians(f: ReducedFraction, rows: np.ndarray, n_grid: int) -> np.ndarray:
    """Stack of Bloch matrices for the given k1 row indices, all k2 columns."""
    q = f.q
    k1 = TWO_PI * rows / (q * n_grid)
    k2 = TWO_PI * np.arange(n_grid) / n_grid
    site_phase = TWO_PI * ((f.p * np.arange(q)) % q) / q
    h = np.zeros((rows.size, n_grid, q, q), dtype=complex)
    sites = np.arange(q)
    h[:, :, sites, sites] = 2.0 * np.cos(k2[None, :, None] + site_phase[None, None, :])
    if q >= 2:
        bonds = np.arange(q - 1)
        h[:, :, bonds, bonds + 1] += 1.0
        h[:, :, bonds + 1, bonds] += 1.0
    corner = np.exp(1j * q * k1)
    h[:, :, q - 1, 0] += corner[:, None]
    h[:, :, 0, q - 1] += np.conj(corner)[:, None]
    return h


def _grid_eigenvalues(f: ReducedFraction, n_grid: int, chunk: int = 64) -> np.ndarray:
    """Eigenvalues over the full grid, shape (n_grid, n_grid, q), ascending."""
    evals = np.empty((n_grid, n_grid, f.q))
    for start in range(0, n_grid, chunk):
        rows = np.arange(start, min(start + chunk, n_grid))
        evals[rows[0] : rows[-1] + 1] = np.linalg.eigvalsh(_grid_hamiltonians(f, rows, n_grid))
    return evals


def _grid_eigensystem(f: ReducedFraction, n_grid: int) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and eigenvectors over the full grid (vectors as columns)."""
    h = _grid_hamiltonians(f, np.arange(n_grid), n_grid)
    return np.linalg.eigh(h)


def spectrum_oracle(f: ReducedFraction, n_grid: int) -> list[tuple[float, float]]:
    """Per-band [min, max] of each sorted eigenvalue branch over the grid.

    The intervals tighten monotonically towards the true bands as the grid
    refines; they are the independent yardstick for the band-edge recipe.
    """
    if n_grid < 16:
        raise ValueError(f"grid size must be >= 16, got {n_grid}")
    evals = _grid_eigenvalues(f, n_grid)
    return [(float(evals[:, :, r].min()), float(evals[:, :, r].max())) for r in range(f.q)]


def _check_band_isolated(f: ReducedFraction, bands: range, evals: np.ndarray | None = None):
    """Raise DegenerateBandError unless ``bands`` is cut off by open gaps.

    Two layers: the exact gap widths from the edge recipe (a touching can
    hide between grid points, e.g. flux 1/2 on a 30-point grid misses the
    0-energy crossing), plus the sampled eigenvalue separations.
    """
    spect = spectrum_at_flux(f)
    for gap_index in (bands.start - 1, bands.stop - 1):
        if 1 <= gap_index <= f.q - 1 and spect.gaps[gap_index - 1].width <= DEGENERACY_TOL:
            raise DegenerateBandError(
                f"band group {bands.start}..{bands.stop - 1} of flux {f} touches a neighbour "
                f"(gap {gap_index} has width {spect.gaps[gap_index - 1].width:.3e})"
            )
    if evals is not None:
        lo, hi = bands.start, bands.stop - 1
        if lo >= 2:
            sep = float((evals[:, :, lo - 1] - evals[:, :, lo - 2]).min())
            if sep <= DEGENERACY_TOL:
                raise DegenerateBandError(f"sampled separation below band {lo} is {sep:.3e}")
        if hi <= f.q - 1:
            sep = float((evals[:, :, hi] - evals[:, :, hi - 1]).min())
            if sep <= DEGENERACY_TOL:
                raise DegenerateBandError(f"sampled separation above band {hi} is {sep:.3e}")


def _plaquette_chern(v: np.ndarray) -> tuple[int, float]:
    """Total lattice field strength of one band's eigenvector grid.

    ``v`` has shape (N, N, q).  Links wrap around via index rolling, so the
    torus closes exactly and the plaquette sum is an integer multiple of
    2*pi up to rounding noise.  Summation order is fixed by the array
    layout, independent of any parallelism in the caller.
    """
    u1 = np.sum(v.conj() * np.roll(v, -1, axis=0), axis=2)
    u2 = np.sum(v.conj() * np.roll(v, -1, axis=1), axis=2)
    if np.any(u1 == 0) or np.any(u2 == 0):
        raise DegenerateBandError("vanishing overlap link; refine the grid")
    plaq = u2 * np.roll(u1, -1, axis=1) * np.conj(np.roll(u2, -1, axis=0)) * np.conj(u1)
    total = float(np.angle(plaq).sum()) / TWO_PI
    chern = round(total)
    return chern, abs(total - chern)


def _multiplet_chern(vgroup: np.ndarray) -> tuple[int, float]:
    """Same as :func:`_plaquette_chern` for a subspace of several bands.

    ``vgroup`` has shape (N, N, q, nb); links are determinants of the
    overlap matrices, which makes the result gauge-invariant even when the
    bands inside the group touch each other.
    """
    rolled0 = np.roll(vgroup, -1, axis=0)
    rolled1 = np.roll(vgroup, -1, axis=1)
    u1 = np.linalg.det(np.einsum("ijsa,ijsb->ijab", vgroup.conj(), rolled0))
    u2 = np.linalg.det(np.einsum("ijsa,ijsb->ijab", vgroup.conj(), rolled1))
    if np.any(u1 == 0) or np.any(u2 == 0):
        raise DegenerateBandError("vanishing overlap link; refine the grid")
    plaq = u2 * np.roll(u1, -1, axis=1) * np.conj(np.roll(u2, -1, axis=0)) * np.conj(u1)
    total = float(np.angle(plaq).sum()) / TWO_PI
    chern = round(total)
    return chern, abs(total - chern)


def band_chern_oracle(f: ReducedFraction, band: int, n_grid: int) -> OracleChern:
    """Chern number of one band (1-based) by plaquette curvature integration.

    Refuses with :class:`DegenerateBandError` when the band touches a
    neighbour; silently regularising a touching would fabricate integers.
    """
    if not 1 <= band <= f.q:
        raise ValueError(f"band index must be in 1..{f.q}, got {band}")
    if n_grid < 4:
        raise ValueError(f"grid size must be >= 4, got {n_grid}")
    evals, evecs = _grid_eigensystem(f, n_grid)
    _check_band_isolated(f, range(band, band + 1), evals)
    chern, residual = _plaquette_chern(evecs[:, :, :, band - 1])
    return OracleChern(chern, residual)


def multiplet_chern_oracle(f: ReducedFraction, first: int, last: int, n_grid: int) -> OracleChern:
    """Composite Chern number of the contiguous band group first..last.

    The group must be isolated from the rest of the spectrum by open gaps;
    touchings inside the group are fine (flux 1/2's touching pair carries a
    well-defined total).
    """
    if not 1 <= first <= last <= f.q:
        raise ValueError(f"need 1 <= first <= last <= {f.q}, got {first}..{last}")
    if n_grid < 4:
        raise ValueError(f"grid size must be >= 4, got {n_grid}")
    evals, evecs = _grid_eigensystem(f, n_grid)
    _check_band_isolated(f, range(first, last + 1), evals)
    chern, residual = _multiplet_chern(evecs[:, :, :, first - 1 : last])
    return OracleChern(chern, residual)


def verify_labels(f: ReducedFraction, n_grid: int) -> ChernReport:
    """Check every tight-binding gap label of f against the curvature oracle.

    Requires all gaps open (odd q does it) and n_grid >= 20.  The verdict
    passes when every residual is below 0.01, every cumulative sum matches
    the Diophantine label of its gap, and the band total is zero.
    """
    if n_grid < 20:
        raise ValueError(f"grid size must be >= 20, got {n_grid}")
    spect = spectrum_at_flux(f)
    for gap in spect.gaps:
        if gap.width <= DEGENERACY_TOL:
            raise DegenerateBandError(
                f"gap {gap.index} of flux {f} is closed (width {gap.width:.3e}); "
                "use the composite oracle for touching bands"
            )
    evals, evecs = _grid_eigensystem(f, n_grid)
    cherns = []
    residuals = []
    for band in range(1, f.q + 1):
        _check_band_isolated(f, range(band, band + 1), evals)
        chern, residual = _plaquette_chern(evecs[:, :, :, band - 1])
        cherns.append(chern)
        residuals.append(residual)
    cumulative = list(np.cumsum(cherns))
    labels = [label.sigma for label in gap_labels(f, Regime.TIGHT_BINDING)]
    passed = (
        all(res < 0.01 for res in residuals)
        and all(int(cumulative[j - 1]) == labels[j - 1] for j in range(1, f.q))
        and int(cumulative[-1]) == 0
    )
    return ChernReport(
        flux=f,
        band_cherns=tuple(cherns),
        residuals=tuple(residuals),
        cumulative=tuple(int(c) for c in cumulative),
        labels=tuple(labels),
        passed=passed,
    )


def verify_labels_composite(f: ReducedFraction, n_grid: int) -> CompositeChernReport:
    """Label check that tolerates closed gaps by grouping touching bands.

    Bands between consecutive open gaps form one multiplet; its composite
    Chern number is well defined even through the internal touchings.  The
    comparison against the Diophantine labels then runs at the open gaps
    only.
    """
    if n_grid < 20:
        raise ValueError(f"grid size must be >= 20, got {n_grid}")
    spect = spectrum_at_flux(f)
    open_gaps = [gap.index for gap in spect.gaps if gap.width > DEGENERACY_TOL]
    fences = [0] + open_gaps + [f.q]
    groups = [(lo + 1, hi) for lo, hi in zip(fences[:-1], fences[1:])]
    evals, evecs = _grid_eigensystem(f, n_grid)
    cherns = []
    residuals = []
    for first, last in groups:
        _check_band_isolated(f, range(first, last + 1), evals)
        chern, residual = _multiplet_chern(evecs[:, :, :, first - 1 : last])
        cherns.append(chern)
        residuals.append(residual)
    cumulative = [int(c) for c in np.cumsum(cherns)]
    all_labels = gap_labels(f, Regime.TIGHT_BINDING)
    labels = [all_labels[j - 1].sigma for j in open_gaps]
    passed = (
        all(res < 0.01 for res in residuals)
        and all(cumulative[i] == labels[i] for i in range(len(open_gaps)))
        and cumulative[-1] == 0
    )
    return CompositeChernReport(
        flux=f,
        groups=tuple(groups),
        group_cherns=tuple(cherns),
        residuals=tuple(residuals),
        open_gap_indices=tuple(open_gaps),
        cumulative=tuple(cumulative),
        labels=tuple(labels),
        passed=passed,
    )
