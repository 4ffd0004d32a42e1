"""
Which triangle signatures can a group of order 9n carry?
========================================================

A triangle action of a group of order 9n on a surface of genus 3n has periods
(a, b, c) with 1/a + 1/b + 1/c = 1/3 + 2/(9n). The generic solution is
(3, 9n, 9n); the loop below lists the few odd n with anything else.
"""

from fractions import Fraction

from rsaut.actions import find_vector
from rsaut.catalog import groups_of_order
from rsaut.signatures import Signature, divisors, solve_triple_period

for n in range(3, 216, 2):
    sols = solve_triple_period(Fraction(1, 3) + Fraction(2, 9 * n), divisors(9 * n))
    extra = [t for t in sols if t != (3, 9 * n, 9 * n)]
    if extra:
        print(n, extra)

# Numerical solutions need not be realized by a group. Order 45 carries none
# of the candidate signatures.
for periods in [(5, 9, 15), (5, 9, 9), (5, 5, 45)]:
    sig = Signature(0, periods)
    hits = [e.group.name for e in groups_of_order(45) if find_vector(e.group, sig) is not None]
    print(sig, hits or "not realized")
