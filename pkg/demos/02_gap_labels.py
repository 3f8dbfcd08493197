"""Gap labels from the Diophantine equation, in both regimes.

Solving p*m - q*n = 1 gives the generator m; gap j of flux p/q carries the
centered residue of j*m modulo q as its Hall conductance.  In the
split-Landau regime p and q trade places: solve q*m - p*n = 1 and reduce
modulo p.
"""

try:
    import hofstadter  # noqa: F401
except ImportError:
    import sys
    from pathlib import Path

    sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from hofstadter import ReducedFraction, Regime, band_cherns, conjugate_pair, gap_labels

f = ReducedFraction(2, 5)
pair = conjugate_pair(f)
print(f"flux {f}: conjugate pair m={pair.m}, n={pair.n}  ({f.p}*{pair.m} - {f.q}*{pair.n} = 1)")
labels = gap_labels(f, Regime.TIGHT_BINDING)
print("tight-binding gap labels:", [lab.sigma for lab in labels])
print("band Chern numbers:      ", band_cherns(labels, f, Regime.TIGHT_BINDING))
print()

print("split-Landau albinos: every flux 1/q carries only zero labels")
for q in (2, 3, 5, 8):
    f = ReducedFraction(1, q)
    print(f"  {f}: {[lab.sigma for lab in gap_labels(f, Regime.LANDAU_SPLIT)]}")
print()

print("split-Landau labels are not periodic in the flux:")
for p, q in [(1, 3), (4, 3), (7, 3)]:
    f = ReducedFraction(p, q)
    print(f"  {f}: {[lab.sigma for lab in gap_labels(f, Regime.LANDAU_SPLIT)]}")
print("tight-binding labels are:")
for p, q in [(1, 3), (4, 3), (7, 3)]:
    f = ReducedFraction(p, q)
    print(f"  {f}: {[lab.sigma for lab in gap_labels(f, Regime.TIGHT_BINDING)]}")
print()

print("boundary ambiguity: an even modulus admits +-modulus/2 equally;")
print("the positive representative is kept and flagged")
for lab in gap_labels(ReducedFraction(4, 5), Regime.LANDAU_SPLIT):
    flag = "  <- ambiguous" if lab.ambiguous else ""
    print(f"  gap {lab.index}: sigma {lab.sigma:+d}{flag}")
