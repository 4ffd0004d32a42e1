"""
Curves of genus g with 3g automorphisms
=======================================

For odd g the search over every group of order 3g and every admissible
signature finds a single family: the cyclic group acting with (0; 3,3g,3g).
Genus 21 is the one exception in this range.
"""

from rsaut.actions import classify_genus_order

for g in (5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25):
    report = classify_genus_order(g, 3 * g)
    for row in report.rows:
        print(f"g={g:2d}  {row.group:8s} {str(row.signature):16s} classes={row.class_count}")

# the extra signature at genus 21 comes from the non-abelian group of order 63
report = classify_genus_order(21, 63)
print([str(r.signature) for r in report.rows])
