"""Truncated inputs, a second prime, and reproducibility.

A descending tail after the plateau shrinks the generator gap but keeps the
pair incomparable.  Changing the prime or the seed moves the points, never
the diagrams.
"""

from bettiwitness.construction import WitnessConfig, build_witness_pair
from bettiwitness.oseq import OSequence

for delta in [(1, 3, 6, 9, 11, 11, 11, 9, 6, 3, 1), (1, 3, 6, 9, 11, 11, 11, 10, 8, 8, 5, 5, 5, 4, 3, 3, 1)]:
    pair = build_witness_pair(OSequence(delta, 0))
    s = pair.invariants.s
    print(f"{delta}: {len(pair.z)} points, generators in degree {s + 2}: "
          f"{pair.betti_z[(1, s + 2)]} vs {pair.betti_zprime[(1, s + 2)]}, {pair.incomparability.verdict}")

base = OSequence((1, 3, 6, 9, 11, 11, 11))
a = build_witness_pair(base, WitnessConfig(prime=32003, seed=0))
b = build_witness_pair(base, WitnessConfig(prime=31991, seed=7))
print(f"\nprime 32003 vs 31991: same diagrams = {(a.betti_z, a.betti_zprime) == (b.betti_z, b.betti_zprime)}")
print(f"same points = {a.z.to_json() == b.z.to_json()}")
again = build_witness_pair(base, WitnessConfig(prime=32003, seed=0))
print(f"rebuilt with seed 0: identical certificate = {a.to_json() == again.to_json()}")
