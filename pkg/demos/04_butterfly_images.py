"""Render both butterfly diagrams and write every supported format.

The tight-binding diagram (flux on the vertical axis) has inversion
symmetry and no albino regions; the split-Landau diagram (inverse flux on
the vertical axis) has neither property.  Warm colors are positive Hall
conductances, cold colors negative, white is zero or outside the spectrum,
black is inside a band.
"""

try:
    import hofstadter  # noqa: F401
except ImportError:
    import sys
    from pathlib import Path

    sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import time
from pathlib import Path

import numpy as np

from hofstadter import Regime, RenderConfig, color_of, render_butterfly, write_image

out_dir = Path(__file__).resolve().parent / "output"
out_dir.mkdir(exist_ok=True)

print("palette (clip 8):")
for sigma in range(-4, 5):
    print(f"  sigma {sigma:+d}: rgb {color_of(sigma, 8)}")
print()

for regime, name in [(Regime.TIGHT_BINDING, "tight_binding"), (Regime.LANDAU_SPLIT, "split_landau")]:
    cfg = RenderConfig(regime=regime, q_max=25, width=320, height=320, image_format="png")
    start = time.perf_counter()
    raster = render_butterfly(cfg)
    elapsed = time.perf_counter() - start
    for fmt in ("ppm", "png"):
        write_image(raster, fmt, out_dir / f"{name}_q25.{fmt}")
    inversion = np.array_equal(raster.pixels, raster.pixels[::-1, ::-1, :])
    print(f"{name}: rendered {cfg.width}x{cfg.height} q_max={cfg.q_max} in {elapsed:.2f}s,")
    print(f"  inversion-symmetric: {inversion}")

# a small SVG, where each horizontal run of pixels becomes one rectangle
svg_cfg = RenderConfig(q_max=8, width=96, height=96, image_format="svg")
write_image(render_butterfly(svg_cfg), "svg", out_dir / "tight_binding_q8.svg")
print(f"\nwrote images to {out_dir}")
