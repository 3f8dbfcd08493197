"""Command-line front end: spectra, gap labels, images, exports, verification.

Exit codes: 0 success (and verification PASS), 1 I/O failure, 2 usage
error, 3 verification FAIL, 4 refusal to integrate a degenerate band
without --composite.  Machine-readable output goes to stdout and is a
pure function of the arguments; the render summary line goes to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

from .chern import Regime, gap_labels
from .rationals import ReducedFraction, farey_sequence
from .render import FORMATS, RenderConfig, render_butterfly, row_fraction, write_image
from .spectrum import spectrum_at_flux
from .verify import DegenerateBandError, verify_labels, verify_labels_composite

__all__ = ["main"]

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_FAIL = 3
EXIT_DEGENERATE = 4


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _flux(p: int, q: int) -> ReducedFraction:
    if math.gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    return ReducedFraction(p, q)


def _cmd_spectrum(args) -> int:
    spect = spectrum_at_flux(_flux(args.p, args.q))
    print(f"flux: {spect.flux}")
    print("edges: " + " ".join(_fmt(e) for e in spect.edges))
    for r, (lo, hi) in enumerate(spect.bands, start=1):
        print(f"band {r}: [{_fmt(lo)}, {_fmt(hi)}]")
    for gap in spect.gaps:
        print(f"gap {gap.index}: ({_fmt(gap.lo)}, {_fmt(gap.hi)}) width {_fmt(gap.width)}")
    return EXIT_OK


def _cmd_labels(args) -> int:
    f = _flux(args.p, args.q)
    labels = gap_labels(f, Regime(args.regime))
    spect = spectrum_at_flux(f)
    print(f"flux: {f} regime: {args.regime}")
    print("# j sigma width ambiguous")
    for label, gap in zip(labels, spect.gaps):
        flag = "true" if label.ambiguous else "false"
        print(f"{label.index} {label.sigma} {_fmt(gap.width)} {flag}")
    return EXIT_OK


def _cmd_butterfly(args) -> int:
    cfg = RenderConfig(
        regime=Regime(args.regime),
        q_max=args.qmax,
        width=args.width,
        height=args.height,
        e_min=args.emin,
        e_max=args.emax,
        clip=args.clip,
        image_format=args.format,
    )
    start = time.perf_counter()
    raster = render_butterfly(cfg)
    write_image(raster, cfg.image_format, args.out)
    elapsed = time.perf_counter() - start
    fractions = {row_fraction(cfg, y) for y in range(cfg.height)}
    print(
        f"wrote {args.out}: {cfg.width}x{cfg.height} {cfg.regime.value} "
        f"q_max={cfg.q_max} fractions={len(fractions)} time={elapsed:.2f}s",
        file=sys.stderr,
    )
    return EXIT_OK


def _export_rows(q_max: int) -> list[dict]:
    rows = []
    for f in farey_sequence(q_max):
        if f.q == 1:
            continue
        spect = spectrum_at_flux(f)
        tb = gap_labels(f, Regime.TIGHT_BINDING)
        landau = gap_labels(f, Regime.LANDAU_SPLIT) if f.p >= 1 else None
        for gap, tb_label in zip(spect.gaps, tb):
            rows.append(
                {
                    "p": f.p,
                    "q": f.q,
                    "j": gap.index,
                    "e_lo": float(_fmt(gap.lo)),
                    "e_hi": float(_fmt(gap.hi)),
                    "width": float(_fmt(gap.width)),
                    "sigma_tb": tb_label.sigma,
                    "sigma_landau": landau[gap.index - 1].sigma if landau else None,
                    "ambiguous_landau": landau[gap.index - 1].ambiguous if landau else None,
                }
            )
    rows.sort(key=lambda row: (row["q"], row["p"], row["j"]))
    return rows


def _cmd_export(args) -> int:
    path = args.out
    if path.endswith(".csv"):
        kind = "csv"
    elif path.endswith(".json"):
        kind = "json"
    else:
        raise ValueError(f"unknown export extension in {path!r} (use .csv or .json)")
    rows = _export_rows(args.qmax)
    if kind == "csv":
        lines = ["p,q,j,e_lo,e_hi,width,sigma_tb,sigma_landau,ambiguous_landau"]
        for row in rows:
            landau = "" if row["sigma_landau"] is None else str(row["sigma_landau"])
            ambiguous = (
                ""
                if row["ambiguous_landau"] is None
                else ("true" if row["ambiguous_landau"] else "false")
            )
            lines.append(
                f"{row['p']},{row['q']},{row['j']},{_fmt(row['e_lo'])},{_fmt(row['e_hi'])},"
                f"{_fmt(row['width'])},{row['sigma_tb']},{landau},{ambiguous}"
            )
        payload = "\n".join(lines) + "\n"
    else:
        payload = json.dumps(rows, indent=2) + "\n"
    with open(path, "w", encoding="ascii") as fh:
        fh.write(payload)
    return EXIT_OK


def _cmd_verify(args) -> int:
    f = _flux(args.p, args.q)
    if args.composite:
        report = verify_labels_composite(f, args.grid)
        print(f"flux: {f} grid: {args.grid} composite")
        for (first, last), chern, residual in zip(
            report.groups, report.group_cherns, report.residuals
        ):
            span = f"band {first}" if first == last else f"bands {first}-{last}"
            print(f"{span}: chern {chern} residual {residual:.3e}")
        for i, gap_index in enumerate(report.open_gap_indices):
            match = "match" if report.cumulative[i] == report.labels[i] else "MISMATCH"
            print(
                f"gap {gap_index}: cumulative {report.cumulative[i]} "
                f"diophantine {report.labels[i]} {match}"
            )
        print(f"total chern: {report.cumulative[-1]}")
        print("PASS" if report.passed else "FAIL")
        return EXIT_OK if report.passed else EXIT_FAIL
    report = verify_labels(f, args.grid)
    print(f"flux: {f} grid: {args.grid}")
    for band, (chern, residual) in enumerate(zip(report.band_cherns, report.residuals), start=1):
        print(f"band {band}: chern {chern} residual {residual:.3e}")
    for j in range(1, f.q):
        match = "match" if report.cumulative[j - 1] == report.labels[j - 1] else "MISMATCH"
        print(f"gap {j}: cumulative {report.cumulative[j - 1]} diophantine {report.labels[j - 1]} {match}")
    print(f"total chern: {report.cumulative[-1]}")
    print("PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_FAIL


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hofstadter",
        description="Hofstadter butterflies with Hall-conductance colored gaps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="band edges, bands and gaps of one flux p/q")
    sp.add_argument("p", type=int)
    sp.add_argument("q", type=int)
    sp.set_defaults(func=_cmd_spectrum)

    lb = sub.add_parser("labels", help="gap conductance labels of one flux p/q")
    lb.add_argument("p", type=int)
    lb.add_argument("q", type=int)
    lb.add_argument("--regime", choices=[r.value for r in Regime], default="tb")
    lb.set_defaults(func=_cmd_labels)

    bf = sub.add_parser("butterfly", help="render a colored butterfly image")
    bf.add_argument("--regime", choices=[r.value for r in Regime], default="tb")
    bf.add_argument("--qmax", type=int, default=50)
    bf.add_argument("--width", type=int, default=640)
    bf.add_argument("--height", type=int, default=640)
    bf.add_argument("--emin", type=float, default=-4.0)
    bf.add_argument("--emax", type=float, default=4.0)
    bf.add_argument("--clip", type=int, default=8)
    bf.add_argument("--format", choices=FORMATS, default="ppm")
    bf.add_argument("--out", required=True)
    bf.set_defaults(func=_cmd_butterfly)

    ex = sub.add_parser("export", help="per-gap table (CSV or JSON) over a Farey sweep")
    ex.add_argument("--qmax", type=int, required=True)
    ex.add_argument("--out", required=True)
    ex.set_defaults(func=_cmd_export)

    vf = sub.add_parser("verify", help="check Diophantine labels against the curvature oracle")
    vf.add_argument("p", type=int)
    vf.add_argument("q", type=int)
    vf.add_argument("--grid", type=int, default=30)
    vf.add_argument("--composite", action="store_true", help="group touching bands into multiplets")
    vf.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except DegenerateBandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
