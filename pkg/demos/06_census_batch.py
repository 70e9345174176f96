"""Batch audits over reflexive 3-polytopes.

Uses the bundled 50-polytope excerpt; point TORICHYP_CENSUS at a full PALP
list to run the real census.

Run: python3 demos/06_census_batch.py
"""

import os
from collections import Counter
from pathlib import Path

from torichyp.ingest import batch_audit, census_excerpt, emit_report, parse_palp_stream

path = os.environ.get("TORICHYP_CENSUS")
records = parse_palp_stream(Path(path).read_text()) if path else census_excerpt()
print(f"{len(records)} polytopes")

reports = batch_audit(records, "census", jobs=int(os.environ.get("TORICHYP_JOBS", 1)))
print("Gorenstein Fano:", sum(r.gorenstein and r.fano for r in reports), " smooth:", sum(r.smooth for r in reports))

deep = batch_audit(records[:8], "gorenstein3fold")
print(Counter(r.verdict.split("(")[0] for r in deep))
print(emit_report(deep[:2], "tabular"))
