"""Harper band structure at rational flux.

For flux p/q the one-dimensional hopping problem closes after q sites, and
the 2q band edges are the eigenvalues of two q x q real symmetric matrices:
the periodic ring (boundary +1, transverse phase 0) and the antiperiodic
ring carrying the transverse phase pi/q.  The second phase matters: with
phase 0 the antiperiodic eigenvalues of flux 1/2 are +-2, which sit inside
the bands, while the true inner edges are 0, 0.  Placing the antiperiodic
matrix at phase pi/q puts both quasi-momentum cosines at their extremes,
which is where band edges live; the dense-grid oracle in
:mod:`hofstadter.verify` checks this recipe wholesale.

The eigensolver is self-contained: Householder reduction to tridiagonal
form followed by implicit-shift QL iteration.  It is deterministic for a
fixed input matrix, which the byte-exact rendering contract relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .rationals import ReducedFraction

__all__ = [
    "Gap",
    "SpectrumAtFlux",
    "harper_matrix",
    "symmetric_eigenvalues",
    "band_edges",
    "bands_and_gaps",
    "spectrum_at_flux",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Gap:
    """Spectral gap between bands ``index`` and ``index + 1`` (1-based)."""

    index: int
    lo: float
    hi: float
    width: float


@dataclass(frozen=True)
class SpectrumAtFlux:
    """Band edges, bands and gaps of one rational flux.

    ``edges`` holds the 2q sorted edge energies, ``bands`` the q closed
    intervals [edges[2r-2], edges[2r-1]], and ``gaps`` the q - 1 open
    intervals between consecutive bands (width clamped at zero, so a band
    touching is an empty gap, never a negative one).
    """

    flux: ReducedFraction
    edges: np.ndarray
    bands: tuple[tuple[float, float], ...]
    gaps: tuple[Gap, ...]


def harper_matrix(f: ReducedFraction, phase: float = 0.0, boundary: int = +1) -> np.ndarray:
    """Real symmetric q x q hopping matrix of flux f = p/q.

    Parameters
    ----------
    f : ReducedFraction
        Flux through the unit cell (numerators above q are allowed; the
        matrix depends on p only through p mod q, exactly).
    phase : float
        Transverse phase added to every on-site cosine.
    boundary : int
        +1 for the periodic ring, -1 for the antiperiodic ring.

    The on-site energy of site n is 2*cos(2*pi*(p*n mod q)/q + phase); the
    reduction of p*n modulo q happens in integer arithmetic so that fluxes
    one quantum apart produce bitwise identical matrices.  Each bond
    (n, n+1 mod q) adds 1 to the symmetric off-diagonal pair except the
    wrap bond, which adds ``boundary``; for q = 1 the wrap bond couples the
    single site to itself from both sides (entry 2*cos(phase) + 2*boundary)
    and for q = 2 the interior and wrap bonds share an entry (1 + boundary).
    """
    if boundary not in (+1, -1):
        raise ValueError(f"boundary must be +1 or -1, got {boundary}")
    q = f.q
    mat = np.zeros((q, q))
    for n in range(q):
        mat[n, n] = 2.0 * math.cos(TWO_PI * ((f.p * n) % q) / q + phase)
    for n in range(q - 1):
        mat[n, n + 1] += 1.0
        mat[n + 1, n] += 1.0
    mat[q - 1, 0] += boundary
    mat[0, q - 1] += boundary
    return mat


def _tridiagonalize(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Householder reduction of a symmetric matrix to (diagonal, subdiagonal)."""
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    sub = np.zeros(n - 1 if n > 1 else 0)
    for k in range(n - 2):
        col = a[k + 1 :, k]
        tail = np.linalg.norm(col[1:])
        if tail == 0.0:
            sub[k] = col[0]
            continue
        alpha = math.hypot(col[0], tail)
        if col[0] >= 0.0:
            alpha = -alpha
        v = col.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)
        block = a[k + 1 :, k + 1 :]
        w = block @ v
        w -= (v @ w) * v
        block -= 2.0 * np.outer(v, w)
        block -= 2.0 * np.outer(w, v)
        sub[k] = alpha
    if n > 1:
        sub[n - 2] = a[n - 1, n - 2]
    return np.diagonal(a).copy(), sub


def _tridiagonal_eigenvalues(diag: np.ndarray, sub: np.ndarray) -> np.ndarray:
    """Implicit-shift QL iteration on a symmetric tridiagonal matrix."""
    d = diag.astype(float).copy()
    n = d.size
    e = np.zeros(n)
    e[: n - 1] = sub
    eps = np.finfo(float).eps
    for l in range(n):
        iterations = 0
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= eps * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            iterations += 1
            if iterations > 50:
                raise RuntimeError("QL iteration failed to converge")
            # Wilkinson-style shift from the 2x2 corner at l.
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    d.sort()
    return d


def symmetric_eigenvalues(matrix) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix, sorted ascending.

    Accuracy is bounded by O(eps * ||matrix||), far inside the 1e-10
    contract used by the band-edge assembly.  The input must be exactly
    symmetric; anything else raises ValueError.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise ValueError("expected a square matrix of order >= 1")
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not symmetric")
    diag, sub = _tridiagonalize(a)
    return _tridiagonal_eigenvalues(diag, sub)


def band_edges(f: ReducedFraction) -> np.ndarray:
    """The 2q sorted band edges of flux f.

    Half the edges are eigenvalues of the periodic ring at transverse
    phase 0, the other half eigenvalues of the antiperiodic ring at
    transverse phase pi/q (see the module docstring for why the phase is
    shifted).
    """
    periodic = symmetric_eigenvalues(harper_matrix(f, 0.0, +1))
    antiperiodic = symmetric_eigenvalues(harper_matrix(f, math.pi / f.q, -1))
    return np.sort(np.concatenate([periodic, antiperiodic]))


def bands_and_gaps(edges, f: ReducedFraction) -> SpectrumAtFlux:
    """Split a sorted edge list into the q bands and q - 1 gaps of flux f."""
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size % 2 != 0:
        raise ValueError("edge list must be one-dimensional with even length")
    if edges.size != 2 * f.q:
        raise ValueError(f"expected {2 * f.q} edges for flux {f}, got {edges.size}")
    bands = tuple((edges[2 * r], edges[2 * r + 1]) for r in range(f.q))
    gaps = tuple(
        Gap(
            index=j,
            lo=edges[2 * j - 1],
            hi=edges[2 * j],
            width=max(0.0, edges[2 * j] - edges[2 * j - 1]),
        )
        for j in range(1, f.q)
    )
    return SpectrumAtFlux(flux=f, edges=edges, bands=bands, gaps=gaps)


def spectrum_at_flux(f: ReducedFraction) -> SpectrumAtFlux:
    """Convenience wrapper: band edges plus band/gap bookkeeping for f."""
    return bands_and_gaps(band_edges(f), f)
