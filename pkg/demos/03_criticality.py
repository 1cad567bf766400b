"""Critical canvases, their certificates, and minimal extenders."""

from canvaslab.canvas import fix_c4e, fix_k4, fix_w5
from canvaslab.critical import extract_minimal_extender_full, is_critical_canvas

# A canvas is critical when every edge off the outer cycle is needed to
# block some boundary coloring.  The certificate stores one witness per edge.
for t in (fix_w5(), fix_c4e(), fix_k4()):
    cert = is_critical_canvas(t)
    print(f"{t.name}: critical={cert.verdict} {cert.reason}")
    for e, phi in sorted(cert.witnesses.items()):
        print(f"   edge {e}: witness {phi}")

# The minimal extender H keeps just enough of G to block the same boundary
# colorings.  It is either the bare cycle or a critical canvas.
for t in (fix_c4e(), fix_k4()):
    res = extract_minimal_extender_full(t.graph, t.outer, t.lists)
    print(f"{t.name}: H has {res.graph.n} vertices, {len(res.graph.edges)} edges, critical={res.critical}")

# With disjoint colours on the chord ends the chord is useless.
t = fix_c4e({0: {1, 2}, 1: {3, 4}, 2: {3, 4}, 3: {1, 2}})
print("C4e with disjoint chord ends:", is_critical_canvas(t).reason)
