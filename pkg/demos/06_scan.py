"""A small theorem scan, its report, and certificate replay."""

import json

from canvaslab.genlab import GenSpec
from canvaslab.verifier import replay_certificate, scan

rep = scan([GenSpec(3, max_internal=1), GenSpec(4, max_internal=1)])
print("instances:", rep.footer["instances"], "critical:", rep.footer["critical"])
for theorem, c in sorted(rep.counts.items()):
    print(f"  {theorem:12s} pass {c['pass']:4d}  fail {c['fail']:2d}  skip {c['skip']:4d}")

# Each violation carries the canvas, so it can be replayed on its own.
for v in rep.violations:
    cert = v["certificate"]
    res = replay_certificate(json.dumps(v))
    print(f"violation {cert['theorem']} on {cert['canvas']['name']}: {cert['detail']} (replay matches: {res.matches})")
