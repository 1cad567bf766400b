"""List-coloring canvases of plane graphs: exact checks, criticality and scans."""

from .canvas import Canvas, FIXTURES, fix_c4e, fix_k4, fix_w5, make_lists, validate
from .colorer import extend, extends, find_extension, thomassen_color
from .critical import (
    extract_minimal_extender,
    extract_minimal_extender_full,
    find_critical_subcanvas,
    is_critical_canvas,
)
from .deficiency import PAPER_PARAMS, Params, deficiency, deficiency_via_faces, report
from .fileformat import dumps, load, loads
from .genlab import GenSpec, canonical_key, enumerate_plane_graphs, generate_instances
from .plane_graph import PlaneGraph, check_embedding, disk_subgraph
from .structure import chord_or_tripod_witness, chords, classify_dividing, classify_pod, relax
from .verifier import check_instance, replay_certificate, scan

__version__ = "0.1.0"

__all__ = [
    "Canvas",
    "FIXTURES",
    "GenSpec",
    "PAPER_PARAMS",
    "Params",
    "PlaneGraph",
    "canonical_key",
    "check_embedding",
    "check_instance",
    "chord_or_tripod_witness",
    "chords",
    "classify_dividing",
    "classify_pod",
    "deficiency",
    "deficiency_via_faces",
    "disk_subgraph",
    "dumps",
    "enumerate_plane_graphs",
    "extend",
    "extends",
    "extract_minimal_extender",
    "extract_minimal_extender_full",
    "find_critical_subcanvas",
    "find_extension",
    "fix_c4e",
    "fix_k4",
    "fix_w5",
    "generate_instances",
    "is_critical_canvas",
    "load",
    "loads",
    "make_lists",
    "relax",
    "replay_certificate",
    "report",
    "scan",
    "thomassen_color",
    "validate",
]
