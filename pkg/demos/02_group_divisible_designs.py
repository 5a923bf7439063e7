#!/usr/bin/env python3
"""Group divisible designs built by filling a quadruple system.

Every block A of a master SQS is replaced by a transversal design on
A x Z3 whose blocks {(a0,x),(a1,y),(a2,z),(a3,u)} satisfy a signed
congruence like x+y-z-u = 0 (mod 3).  The per-block rules are chosen so
that the derived design at every point of the result is resolvable; those
resolutions ship as data files and are re-verified from scratch here.
"""

from quadsys import catalog, derived_gdd, verify_gdd, verify_resolution
from quadsys.catalog import rule_table_24, td343

rule = rule_table_24()[0]
td = td343(rule)
print("one congruence rule expands to a TD(3,4,3):",
      len(td.design.blocks), "blocks on", td.design.v, "points,",
      "verified" if verify_gdd(td).passed else "BROKEN")

for name, points in (("rdgdd24", 24), ("rdgdd42", 42)):
    g = catalog.GENERATORS[name]()
    rep = verify_gdd(g)
    print(f"\n{name}: {len(g.design.blocks)} blocks, "
          f"type {'3^%d' % len(g.groups)}, cross coverage={rep.passed}")

    sub = derived_gdd(g, g.design.labels[0].text)
    print(f"  derived at {g.design.labels[0].text}: "
          f"{len(sub.design.blocks)} triples on {sub.design.v} points, "
          f"verified={verify_gdd(sub).passed}")

    res = (catalog.rdgdd24_resolutions() if points == 24
           else catalog.rdgdd42_resolutions())
    bad = [pt for pt, r in res.items() if not verify_resolution(r).passed]
    shape = {(len(r.classes), len(r.classes[0])) for r in res.values()}
    print(f"  shipped derived resolutions at all {len(res)} points: "
          f"{'all verify' if not bad else bad}, class shape {shape}")
