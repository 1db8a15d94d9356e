"""Text and structured (JSON) renderings of certificate reports."""

from __future__ import annotations

import json
from typing import Sequence

from .kernel_certificates import CertificateReport, aggregate_status


def format_report(reports: Sequence[CertificateReport], fmt: str = "text", include_timing: bool = False) -> bytes:
    """Render reports.  Without timing the output is byte-identical across runs."""
    if fmt == "json":
        data = [r.to_dict(include_timing) for r in reports]
        return (json.dumps(data, indent=2, sort_keys=True) + "\n").encode()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    for r in reports:
        lines.append(f"claim: {r.claim_id}")
        lines.append(f"status: {r.status}")
        for k in sorted(r.parameters):
            lines.append(f"param {k}: {json.dumps(r.parameters[k], sort_keys=True)}")
        for i, fact in enumerate(r.evidence):
            lines.append(f"evidence[{i}]: {json.dumps(fact, sort_keys=True)}")
        for note in r.notes:
            lines.append(f"note: {note}")
        if r.counterexample is not None:
            lines.append(f"counterexample: {r.counterexample}")
        if include_timing and r.duration is not None:
            lines.append(f"duration: {r.duration:.3f}s")
        lines.append("")
    if reports:
        lines.append(f"aggregate: {aggregate_status(reports)}")
    return ("\n".join(lines) + "\n").encode() if lines else b""


def parse_reports(data: bytes | str) -> list[CertificateReport]:
    """Inverse of the JSON rendering."""
    if isinstance(data, bytes):
        data = data.decode()
    return [CertificateReport.from_dict(d) for d in json.loads(data)]


def summary_lines(reports: Sequence[CertificateReport]) -> list[str]:
    return [f"[{r.status}] {r.claim_id}" for r in reports]
