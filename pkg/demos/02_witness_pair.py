"""Build the smallest witness pair and look at what separates the two sets.

Both sets have 52 points and the same Hilbert function.  One has a single
extra last syzygy that no cancellation can remove, and the other has one
more minimal generator in that same degree.  The multiplication map by a
general linear form shows the same asymmetry.
"""

import time

from bettiwitness.construction import WitnessConfig, build_witness_pair
from bettiwitness.oseq import OSequence

start = time.perf_counter()
pair = build_witness_pair(OSequence((1, 3, 6, 9, 11, 11, 11)), WitnessConfig(seed=0))
print(f"built in {time.perf_counter() - start:.2f}s; {len(pair.z)} points each")
print(f"Hilbert function: {pair.hilbert_z}")

print("\nZ (union of points on lines):")
print(pair.betti_z.render())
print("\nZ' (linked through a complete intersection):")
print(pair.betti_zprime.render())

v = pair.incomparability
print(f"\nverdict: {v.verdict}, blocked in degrees {v.blocking_degrees}")

for name, wlp in (("Z", pair.wlp_z), ("Z'", pair.wlp_zprime)):
    fails = wlp.failures
    print(f"{name}: weak Lefschetz {'holds' if wlp.holds else 'fails at ' + str(fails)}")
    for i in fails:
        di, dn, r = wlp.degrees[i]
        print(f"   degree {i}: {di} -> {dn}, rank {r}")

bad = pair.failed_checks()
print(f"\n{len(pair.checks)} checks, {len(bad)} failed {bad if bad else ''}")
