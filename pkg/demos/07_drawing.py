"""Tutte layouts, written as SVG and DOT."""

import sys
import tempfile
from pathlib import Path

from canvaslab.canvas import icosahedron_minus_triangle
from canvaslab.draw import to_dot, to_svg, tutte_layout

t = icosahedron_minus_triangle()
for v, (x, y) in sorted(tutte_layout(t).items()):
    print(f"{v:2d}: ({x:+.3f}, {y:+.3f})")

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp())
(out / "icosahedron.svg").write_text(to_svg(t))
(out / "icosahedron.dot").write_text(to_dot(t))
print("wrote", out / "icosahedron.svg", "and", out / "icosahedron.dot")
