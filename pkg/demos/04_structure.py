"""Chords, tripods and dividing vertices on the double wheel."""

from canvaslab.canvas import double_wheel, fix_c4e, fix_w5
from canvaslab.structure import (
    boundary_tripod_candidates,
    chord_or_tripod_witness,
    classify_dividing,
    classify_pod,
    relax,
)

t = double_wheel()
print("outer cycle:", t.outer)
print("vertices with >= 3 neighbours on C:", sorted(boundary_tripod_candidates(t)))
for v in sorted(boundary_tripod_candidates(t)):
    pod = classify_pod(t, v)
    print(f"  {v}: {pod.kind}, regular={pod.regular}, order={pod.standard_order}, pod cycle={pod.pod_cycle}")
    div = classify_dividing(t, v)
    print(f"     dividing={div.dividing} strong={div.strong} true={div.true_dividing} via {div.contacts}")

# Relaxing at the regular tripod passes to the canvas behind it.
inner = relax(t, 5)
print("after relaxing at 5:", inner.outer, "vertices", sorted(inner.graph.vertices))

# Every critical canvas has a chord or a pod vertex.
print("C4e:", chord_or_tripod_witness(fix_c4e()))
print("W5:", chord_or_tripod_witness(fix_w5()))
