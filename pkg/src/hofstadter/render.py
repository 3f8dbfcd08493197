"""Deterministic rendering of colored butterfly diagrams.

Every pixel is classified by a pure function of the render configuration:
the row's flux (pixel center) is snapped to its best rational approximant
with bounded denominator, the column's energy is placed against that
fraction's band edges, and the pixel comes out white (outside the
spectral hull, or a vanishing conductance), black (inside a band), or a
palette color keyed to the gap's integer conductance.  Warm shades mean
positive conductance, cold shades negative; saturation grows linearly up
to the clip value on a fixed 230-gray ramp, so rendered bytes are
portable across platforms.

Output formats: binary PPM (P6, bit-exact by construction), lossless
truecolor PNG (stdlib zlib), and SVG built from one rectangle per maximal
horizontal run of same-colored pixels.
"""

from __future__ import annotations

import math
import struct
import zlib
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chern import Regime, gap_labels
from .rationals import ReducedFraction, best_approximant
from .spectrum import band_edges

__all__ = [
    "FORMATS",
    "RenderConfig",
    "ButterflyRaster",
    "color_of",
    "pixel_color",
    "row_fraction",
    "render_butterfly",
    "image_bytes",
    "write_image",
]

FORMATS = ("ppm", "png", "svg")
WHITE = (255, 255, 255)
BLACK = (0, 0, 0)


@dataclass(frozen=True)
class RenderConfig:
    """Geometry, regime and palette bounds of one butterfly image.

    ``flux_lo``/``flux_hi`` default to the one-quantum window [0, 1]; they
    are not exposed on the command line and exist so the vertical
    periodicity of the tight-binding diagram can be exercised directly.
    """

    regime: Regime = Regime.TIGHT_BINDING
    q_max: int = 50
    width: int = 640
    height: int = 640
    e_min: float = -4.0
    e_max: float = 4.0
    clip: int = 8
    image_format: str = "ppm"
    flux_lo: float = 0.0
    flux_hi: float = 1.0

    def __post_init__(self):
        if self.width < 2 or self.height < 2:
            raise ValueError("width and height must be at least 2 pixels")
        if not self.e_min < self.e_max:
            raise ValueError(f"need e_min < e_max, got [{self.e_min}, {self.e_max}]")
        if not 1 <= self.q_max <= 10_000:
            raise ValueError(f"q_max must be in [1, 10000], got {self.q_max}")
        if self.clip < 1:
            raise ValueError(f"clip must be >= 1, got {self.clip}")
        if self.image_format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.image_format!r}")
        if not 0.0 <= self.flux_lo < self.flux_hi:
            raise ValueError("flux window must satisfy 0 <= flux_lo < flux_hi")


@dataclass(frozen=True)
class ButterflyRaster:
    """RGB pixel grid with its affine pixel -> (energy, flux) calibration.

    ``pixels`` is (height, width, 3) uint8 with the top image row first;
    flux increases upward.
    """

    width: int
    height: int
    pixels: np.ndarray
    e_min: float
    e_max: float
    flux_lo: float
    flux_hi: float

    def energy_at(self, x: int) -> float:
        """Energy at the center of pixel column x."""
        return float(_pixel_energies(self.e_min, self.e_max, self.width)[x])

    def flux_at(self, row: int) -> float:
        """Flux at the center of image row ``row`` (0 = top row)."""
        y = self.height - 1 - row
        return float(_row_flux(self.flux_lo, self.flux_hi, self.height, y))


def color_of(sigma: int, clip: int) -> tuple[int, int, int]:
    """Palette color of an integer conductance.

    Zero is white; positive values shade towards red and negative towards
    blue, saturating at |sigma| = clip.  The gray channel is
    round(230 * (1 - min(|sigma|, clip)/clip)), rounding half up.
    """
    if clip < 1:
        raise ValueError(f"clip must be >= 1, got {clip}")
    if sigma == 0:
        return WHITE
    g = int(230.0 * (1.0 - min(abs(sigma), clip) / clip) + 0.5)
    return (255, g, g) if sigma > 0 else (g, g, 255)


def _pixel_energies(e_min: float, e_max: float, width: int) -> np.ndarray:
    """Pixel-center energies, written so that a symmetric range [-e, e]
    yields a bitwise antisymmetric grid (column W-1-x holds exactly -E_x)."""
    x = np.arange(width)
    weight_hi = 2.0 * x + 1.0
    weight_lo = 2.0 * (width - x) - 1.0
    return (e_min * weight_lo + e_max * weight_hi) / (2.0 * width)


def _row_flux(flux_lo: float, flux_hi: float, height: int, y: int) -> Fraction:
    """Exact flux at the center of upward pixel row y.

    Exact rational arithmetic here is what makes rows at Farey tie
    midpoints resolve mirror-consistently: the fluxes of rows y and
    H-1-y sum to flux_lo + flux_hi exactly, so their best approximants
    are exact mirrors of each other.
    """
    lo = Fraction(flux_lo)
    hi = Fraction(flux_hi)
    return lo + Fraction(2 * y + 1, 2 * height) * (hi - lo)


def _snap_flux(flux, q_max: int) -> ReducedFraction:
    """Best bounded-denominator approximant of a flux >= 0 (float or Fraction)."""
    whole = math.floor(flux)
    base = best_approximant(flux - whole, q_max)
    return ReducedFraction(base.p + whole * base.q, base.q)


def row_fraction(cfg: RenderConfig, y: int) -> ReducedFraction:
    """Fraction rendered on upward pixel row y of a configuration."""
    return _snap_flux(_row_flux(cfg.flux_lo, cfg.flux_hi, cfg.height, y), cfg.q_max)


class _RowCache:
    """Per-render caches: fraction spectra, labels and palette rows.

    Spectra depend on the numerator only modulo the denominator (exactly,
    by construction) and mirror exactly under p -> q - p, so the edge
    cache keys on the canonical residue min(p mod q, q - p mod q) and
    derives the reflected spectrum by negating the canonical one.  That
    makes mirror rows bitwise consistent.  Tight-binding palettes key on
    p mod q; split-Landau palettes genuinely depend on the full numerator.
    """

    def __init__(self, cfg: RenderConfig):
        self.cfg = cfg
        self._edges: dict[tuple[int, int], np.ndarray] = {}
        self._colors: dict[tuple[int, int], np.ndarray] = {}

    def row_context(self, flux):
        """(edges, gap palette) for a row at ``flux``, or None for all white."""
        f = _snap_flux(flux, self.cfg.q_max)
        if self.cfg.regime is Regime.LANDAU_SPLIT and f.p == 0:
            return None
        p_mod = f.p % f.q
        p_canon = min(p_mod, (f.q - p_mod) % f.q)
        edges = self._edges.get((p_canon, f.q))
        if edges is None:
            edges = band_edges(ReducedFraction(p_canon, f.q))
            self._edges[(p_canon, f.q)] = edges
        if p_mod != p_canon:
            edges = -edges[::-1]
        color_key = (p_mod, f.q) if self.cfg.regime is Regime.TIGHT_BINDING else (f.p, f.q)
        colors = self._colors.get(color_key)
        if colors is None:
            labels = gap_labels(ReducedFraction(*color_key), self.cfg.regime)
            colors = np.array(
                [color_of(label.sigma, self.cfg.clip) for label in labels], dtype=np.uint8
            ).reshape(f.q - 1, 3)
            self._colors[color_key] = colors
        return edges, colors


def _row_rgb(edges: np.ndarray, gap_colors: np.ndarray, energies: np.ndarray) -> np.ndarray:
    """Classify one row of pixel-center energies against a sorted edge list.

    On an edge or strictly inside a band: black.  Outside the hull: white.
    Strictly inside gap j: the gap's palette color.  Searchsorted makes the
    closed-band / open-gap distinction exact (no tolerance involved).
    """
    left = np.searchsorted(edges, energies, side="left")
    right = np.searchsorted(edges, energies, side="right")
    rgb = np.full((energies.size, 3), 255, dtype=np.uint8)
    on_edge = left != right
    interior = ~on_edge & (left > 0) & (left < edges.size)
    in_band = on_edge | (interior & (left % 2 == 1))
    rgb[in_band] = 0
    in_gap = interior & (left % 2 == 0)
    if np.any(in_gap):
        rgb[in_gap] = gap_colors[left[in_gap] // 2 - 1]
    return rgb


def pixel_color(energy: float, flux_row: float, cfg: RenderConfig) -> tuple[int, int, int]:
    """Color of a single (energy, flux) point under a configuration."""
    context = _RowCache(cfg).row_context(flux_row)
    if context is None:
        return WHITE
    edges, colors = context
    rgb = _row_rgb(edges, colors, np.array([energy], dtype=float))
    return tuple(int(v) for v in rgb[0])


def render_butterfly(cfg: RenderConfig) -> ButterflyRaster:
    """Render the full diagram; the bytes are a pure function of cfg.

    Rows are independent (each carries its own flux and fraction); they are
    evaluated bottom-up and written into the raster top row first.
    """
    energies = _pixel_energies(cfg.e_min, cfg.e_max, cfg.width)
    pixels = np.empty((cfg.height, cfg.width, 3), dtype=np.uint8)
    cache = _RowCache(cfg)
    for y in range(cfg.height):
        context = cache.row_context(_row_flux(cfg.flux_lo, cfg.flux_hi, cfg.height, y))
        if context is None:
            pixels[cfg.height - 1 - y] = 255
        else:
            edges, colors = context
            pixels[cfg.height - 1 - y] = _row_rgb(edges, colors, energies)
    return ButterflyRaster(
        width=cfg.width,
        height=cfg.height,
        pixels=pixels,
        e_min=cfg.e_min,
        e_max=cfg.e_max,
        flux_lo=cfg.flux_lo,
        flux_hi=cfg.flux_hi,
    )


def _ppm_bytes(raster: ButterflyRaster) -> bytes:
    header = f"P6\n{raster.width} {raster.height}\n255\n".encode("ascii")
    return header + raster.pixels.tobytes()


def _png_chunk(tag: bytes, payload: bytes) -> bytes:
    return (
        struct.pack(">I", len(payload))
        + tag
        + payload
        + struct.pack(">I", zlib.crc32(tag + payload))
    )


def _png_bytes(raster: ButterflyRaster) -> bytes:
    raw = b"".join(b"\x00" + raster.pixels[row].tobytes() for row in range(raster.height))
    header = struct.pack(">2I5B", raster.width, raster.height, 8, 2, 0, 0, 0)
    return (
        b"\x89PNG\r\n\x1a\n"
        + _png_chunk(b"IHDR", header)
        + _png_chunk(b"IDAT", zlib.compress(raw, 9))
        + _png_chunk(b"IEND", b"")
    )


def _svg_bytes(raster: ButterflyRaster) -> bytes:
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{raster.width}" '
        f'height="{raster.height}" viewBox="0 0 {raster.width} {raster.height}" '
        'shape-rendering="crispEdges">',
    ]
    for row in range(raster.height):
        line = raster.pixels[row]
        breaks = np.nonzero(np.any(line[1:] != line[:-1], axis=1))[0] + 1
        starts = np.concatenate(([0], breaks))
        ends = np.concatenate((breaks, [raster.width]))
        for s, e in zip(starts, ends):
            r, g, b = (int(v) for v in line[s])
            out.append(
                f'<rect x="{s}" y="{row}" width="{e - s}" height="1" fill="#{r:02X}{g:02X}{b:02X}"/>'
            )
    out.append("</svg>")
    return "\n".join(out).encode("ascii") + b"\n"


_ENCODERS = {"ppm": _ppm_bytes, "png": _png_bytes, "svg": _svg_bytes}


def image_bytes(raster: ButterflyRaster, image_format: str) -> bytes:
    """Serialized image in the requested format."""
    if image_format not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {image_format!r}")
    return _ENCODERS[image_format](raster)


def write_image(raster: ButterflyRaster, image_format: str, path) -> None:
    """Write the raster to ``path``; OS errors propagate with the path."""
    data = image_bytes(raster, image_format)
    with open(path, "wb") as fh:
        fh.write(data)
