"""Extending boundary colorings, and Thomassen's colorer."""

import random

from canvaslab.canvas import cycle_graph, fix_k4, fix_w5
from canvaslab.colorer import enumerate_boundary_colorings, extend, thomassen_color
from canvaslab.plane_graph import insert_edge

# The wheel's rim is precolored 0..4, so the hub has nothing left.
w5 = fix_w5()
print("W5 rim 0..4 extends:", extend(w5.graph, w5.lists, {v: v for v in range(5)}))

# K4 with a 4-list at the centre: any rim coloring leaves a colour free.
k4 = fix_k4()
for phi in enumerate_boundary_colorings(k4):
    print("K4", phi, "->", extend(k4.graph, k4.lists, phi))

# Thomassen: 3-lists on the outer face, 5-lists inside, two adjacent
# precolored vertices.  No search is done; chords split the disk and
# otherwise one outer vertex is peeled off.
rng = random.Random(1)
g = cycle_graph(6)
for _ in range(6):
    f = rng.choice(g.internal_faces)
    u, v = rng.sample(f.vertices, 2)
    if not g.has_edge(u, v):
        g = insert_edge(g, u, v, f)
lists = {v: set(rng.sample(range(6), 3)) for v in g.vertices}
lists[0], lists[1] = {0}, {1}
coloring = thomassen_color(g, None, [0, 1], lists)
print("Thomassen coloring:", coloring)
print("proper:", all(coloring[a] != coloring[b] for a, b in g.edges))
