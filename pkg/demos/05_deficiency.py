"""Deficiency, boundary sets and the potential d, in exact arithmetic."""

from canvaslab.canvas import double_wheel, fix_c4e, fix_w5, icosahedron_minus_triangle
from canvaslab.deficiency import (
    PAPER_PARAMS,
    Params,
    ParamsError,
    decomposition_check,
    defbound_check,
    induced_closure,
    report,
)

print("params:", PAPER_PARAMS)
try:
    Params.parse("1/6,1/12,2/3")
except ParamsError as exc:
    print("rejected:", exc)

for t in (fix_w5(), fix_c4e(), double_wheel()):
    r = report(t)
    print(f"{t.name}: v={r.v} def={r.defi} (faces give {r.via_faces}) b={r.b} q={r.q} s={r.s} d={r.d}")

# The degree bound has exact slack #chords + sum(deg - 5); a chorded
# 4-cycle is strictly above it although it has no internal vertex.
rep = defbound_check(fix_c4e())
print("C4e defbound:", [(c.name, str(c.lhs), str(c.rhs)) for c in rep.comparisons], "|", rep.note)

# The boundary count only splits along an induced subgraph.
t = icosahedron_minus_triangle()
g2 = t.graph.without_edges([(0, 3), (0, 8), (1, 5), (3, 11), (9, 10), (9, 11)])
for label, h in (("non-induced", g2), ("induced", induced_closure(t, g2))):
    rep = decomposition_check(t, h)
    print(label, {c.name: f"{c.lhs} {c.relation} {c.rhs}" for c in rep.comparisons}, "holds" if rep.holds else "FAILS")
