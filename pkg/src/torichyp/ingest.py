"""Reading polytope census files, batch auditing, and report emission.

Census files use the PALP layout: a header line ``r c`` (any trailing text
is kept but not interpreted) followed by ``r`` lines of ``c`` integers.  The
dimension is ``min(r, c)``; when there are more columns than rows the
vertices are the columns.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Iterable, Sequence

from .audit import (
    HYPERBOLIC,
    PSEUDO,
    HyperbolicityCertificate,
    Verdict,
    conjecture_audit,
    gorenstein_3fold_audit,
    pseudo_hyperbolicity_certificate,
)
from .divisors import Divisor, canonical_divisor, is_gorenstein, is_gorenstein_fano
from .fan import is_smooth
from .polytope import LatticePolytope, face_fan

log = logging.getLogger(__name__)

MODES = ("census", "gorenstein3fold", "conjecture")
REPORT_FIELDS = (
    "record_id",
    "flags",
    "verdict",
    "exceptional_rays",
    "epsilon",
    "genus_table",
    "surjectivity_log",
    "timing_ms",
)


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


@dataclass(frozen=True)
class PolytopeRecord:
    index: int
    line_span: tuple[int, int]  # first and last line, 1-based
    vertices: tuple[tuple[int, ...], ...]
    header_extra: str = ""

    @property
    def rank(self) -> int:
        return len(self.vertices[0])


def _ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def parse_palp_stream(text: str | Iterable[str]) -> list[PolytopeRecord]:
    lines = text.splitlines() if isinstance(text, str) else [ln.rstrip("\n") for ln in text]
    records: list[PolytopeRecord] = []
    i = 0
    while i < len(lines):
        raw = lines[i].strip()
        if not raw or raw.startswith("#"):
            i += 1
            continue
        head_no = i + 1
        tokens = raw.split()
        if len(tokens) < 2:
            raise ParseError(head_no, "header needs a row and a column count")
        r, c = _ints(tokens[:2], head_no)
        if r == c or min(r, c) not in (2, 3, 4):
            raise ParseError(head_no, f"unsupported matrix shape {r}x{c}")
        rows = []
        for k in range(r):
            lineno = i + 2 + k
            if lineno > len(lines):
                raise ParseError(lineno - 1, f"matrix ended after {k} of {r} rows")
            vals = _ints(lines[lineno - 1].split(), lineno)
            if len(vals) != c:
                raise ParseError(lineno, f"expected {c} entries, found {len(vals)}")
            rows.append(tuple(vals))
        verts = tuple(zip(*rows)) if c > r else tuple(rows)
        records.append(PolytopeRecord(len(records), (head_no, i + 1 + r), verts, " ".join(tokens[2:])))
        i += 1 + r
    return records


def census_excerpt() -> list[PolytopeRecord]:
    """The bundled 50-record sample of reflexive 3-polytopes (record 0 is the P^3 simplex)."""
    text = resources.files("torichyp").joinpath("data/census_excerpt.txt").read_text()
    return parse_palp_stream(text)


def format_palp(records: Iterable[PolytopeRecord]) -> str:
    """Emit records column-wise, keeping any header annotations."""
    out = []
    for rec in records:
        n, k = rec.rank, len(rec.vertices)
        out.append(f"{n} {k}" + (f" {rec.header_extra}" if rec.header_extra else ""))
        for row in zip(*rec.vertices):
            out.append(" ".join(str(x) for x in row))
    return "\n".join(out) + ("\n" if out else "")


@dataclass(frozen=True)
class AuditReport:
    record_id: int
    gorenstein: bool
    fano: bool
    smooth: bool
    verdict: str
    exceptional_rays: tuple[int, ...] = ()
    epsilon: str | None = None
    genus_table: tuple[int, ...] = ()
    surjectivity_log: tuple[dict, ...] = ()
    timing_ms: float = 0.0
    diagnostics: str = ""
    certificate: HyperbolicityCertificate | None = field(default=None, compare=False, repr=False)

    def to_dict(self) -> dict:
        return {
            "record_id": self.record_id,
            "flags": {"gorenstein": self.gorenstein, "fano": self.fano, "smooth": self.smooth},
            "verdict": self.verdict,
            "exceptional_rays": list(self.exceptional_rays),
            "epsilon": self.epsilon,
            "genus_table": list(self.genus_table),
            "surjectivity_log": [dict(e) for e in self.surjectivity_log],
            "timing_ms": self.timing_ms,
        }


def report_from_certificate(record_id: int, cert: HyperbolicityCertificate, gorenstein: bool, fano: bool,
                            smooth: bool, timing_ms: float = 0.0, keep: bool = True) -> AuditReport:
    log_entries = tuple(
        {
            "path": list(s.path),
            "ray": s.ray,
            "h0_total": s.h0_total,
            "h0_twisted": s.h0_twisted,
            "h0_restricted": s.h0_restricted,
            "balanced": s.balanced,
            "via_qfactorialization": s.via_qfactorialization,
        }
        for s in cert.surjectivity_log
    )
    return AuditReport(
        record_id=record_id,
        gorenstein=gorenstein,
        fano=fano,
        smooth=smooth,
        verdict=str(cert.verdict),
        exceptional_rays=cert.exceptional_rays,
        epsilon=None if cert.epsilon is None else str(cert.epsilon),
        genus_table=tuple(g.genus for g in cert.genus_table),
        surjectivity_log=log_entries,
        timing_ms=timing_ms,
        diagnostics="; ".join(cert.notes),
        certificate=cert if keep else None,
    )


def _audit_record(payload) -> AuditReport:
    rec, mode, polarization = payload
    start = time.perf_counter()
    flags = (False, False, False)
    try:
        fan = face_fan(LatticePolytope.from_points(rec.vertices))
        flags = (is_gorenstein(fan), is_gorenstein_fano(fan), is_smooth(fan))
        L = -canonical_divisor(fan) if polarization is None else Divisor(fan, tuple(polarization))
        if mode == "census":
            cert = pseudo_hyperbolicity_certificate(fan, canonical_divisor(fan) + 3 * L, L)
            if cert.verdict.kind == HYPERBOLIC:
                # no genus table or surjectivity log is computed here
                cert = _downgrade(cert)
        elif mode == "gorenstein3fold":
            cert = gorenstein_3fold_audit(fan, L)
        elif mode == "conjecture":
            cert = conjecture_audit(fan, L)
        else:
            raise ValueError(f"unknown mode {mode!r}")
    except Exception as exc:  # per-record failures never abort the batch
        ms = (time.perf_counter() - start) * 1000
        return AuditReport(rec.index, *flags, verdict=f"NotCertified(error: {exc})", timing_ms=ms,
                           diagnostics=f"{type(exc).__name__}: {exc}")
    ms = (time.perf_counter() - start) * 1000
    return report_from_certificate(rec.index, cert, *flags, timing_ms=ms, keep=False)


def _downgrade(cert: HyperbolicityCertificate) -> HyperbolicityCertificate:
    return replace(cert, verdict=Verdict(PSEUDO, ()))


def batch_audit(records: Sequence[PolytopeRecord], mode: str = "census",
                polarization: Sequence[int] | None = None, jobs: int = 1) -> list[AuditReport]:
    """Audit every record; reports come back in record order whatever ``jobs`` is.

    ``polarization`` is a coefficient vector applied to every record (one
    entry per vertex); by default L = -K.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    payloads = [(rec, mode, None if polarization is None else tuple(polarization)) for rec in records]
    if jobs <= 1 or len(payloads) <= 1:
        return [_audit_record(p) for p in payloads]
    chunk = max(1, len(payloads) // (4 * jobs))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_audit_record, payloads, chunksize=chunk))


def emit_report(reports: Iterable[AuditReport], fmt: str = "structured", timing: bool = True) -> str:
    """Serialize reports.  ``timing=False`` zeroes timing fields for byte comparisons."""
    rows = [r.to_dict() for r in reports]
    if not timing:
        for row in rows:
            row["timing_ms"] = 0
    if fmt == "structured":
        doc = {"format": "torichyp-audit-report", "version": 1, "fields": list(REPORT_FIELDS),
               "count": len(rows), "reports": rows}
        return json.dumps(doc, indent=1, sort_keys=False) + "\n"
    if fmt == "tabular":
        buf = io.StringIO()
        cols = ["record_id", "gorenstein", "fano", "smooth", "verdict", "exceptional_rays", "epsilon",
                "genus_table", "surjectivity_log", "timing_ms"]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for row in rows:
            flags = row["flags"]
            surj = ";".join(
                f"{'.'.join(map(str, e['path'] + [e['ray']]))}:{e['h0_total']}/{e['h0_twisted']}/{e['h0_restricted']}"
                for e in row["surjectivity_log"]
            )
            w.writerow([
                row["record_id"], int(flags["gorenstein"]), int(flags["fano"]), int(flags["smooth"]),
                row["verdict"], " ".join(map(str, row["exceptional_rays"])),
                "" if row["epsilon"] is None else row["epsilon"],
                " ".join(map(str, row["genus_table"])), surj, f"{row['timing_ms']:.3f}",
            ])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


__all__ = [
    "AuditReport",
    "MODES",
    "ParseError",
    "PolytopeRecord",
    "REPORT_FIELDS",
    "batch_audit",
    "census_excerpt",
    "emit_report",
    "format_palp",
    "parse_palp_stream",
    "report_from_certificate",
]
