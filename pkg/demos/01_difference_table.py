"""Walk through the difference table behind a witness pair.

Start from the first difference of a curve's Hilbert function, read off the
invariants d, t and s, and show the rows from which the lex ideal of the
residual scheme is taken.  Then try a complete-intersection override that
breaks the construction.
"""

from bettiwitness.construction import NotOSequence, analyze
from bettiwitness.oseq import OSequence, binomial_expansion, macaulay_bound

curve = OSequence((1, 3, 6, 9, 11, 11, 11), 11)
inv, table = analyze(curve)
print(f"input first difference: {curve}")
print(f"d = {inv.d}, t = {inv.t}, s = {inv.s}, complete intersection type {inv.ci_type}")
print(table.render())
print(f"e' (residual Hilbert function): {table.e_prime}")

# Macaulay's bound is what makes an e-row an O-sequence
print(f"\n76 in base 5: {binomial_expansion(76, 5)}, so h_6 <= {macaulay_bound(76, 5)}")

wide = OSequence((1, 3, 6, 10, 15, 19, 23, 26, 27, 28, 29), 29)
print(f"\nforcing type (4,7) on {wide}:")
try:
    analyze(wide, (4, 7))
except NotOSequence as exc:
    print(f"  rejected: {exc}")
inv, table = analyze(wide, (3, 9))
print(f"type (3,9) is fine; e' = {table.e_prime}")
