"""Plane graphs as rotation systems: faces, disks and canonical keys."""

from canvaslab.canvas import cycle_graph, double_wheel, fix_w5
from canvaslab.genlab import canonical_key
from canvaslab.plane_graph import check_embedding, disk_subgraph, insert_edge

# A wheel: five rim vertices around a hub.  Each rotation lists the
# neighbours counterclockwise; faces come out of the rotation system.
g = fix_w5().graph
print("rotation:", dict(g.rotation))
for f in g.faces:
    kind = "outer" if f.id == g.outer_face_id else "inner"
    print(f"  {kind} face {f.id}: {f.vertices}")
print("embedding ok:", check_embedding(g).ok)

# Everything drawn inside a cycle is its disk subgraph.
dw = double_wheel().graph
inside = disk_subgraph(dw, (0, 5, 2, 3, 4))
print("disk of (0,5,2,3,4):", sorted(inside.vertices), "edges", len(inside.edges))

# Inserting a chord splits a face; the two chords of a 4-cycle give the
# same graph up to relabelling, and the canonical key says so.
c4 = cycle_graph(4)
a = insert_edge(c4, 0, 2, c4.internal_faces[0])
b = insert_edge(c4, 1, 3, c4.internal_faces[0])
print("C4 chords isomorphic:", canonical_key(a) == canonical_key(b))
