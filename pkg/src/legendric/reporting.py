"""JSON and OFF serialization, run manifests and the summary table."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from legendric import __version__
from legendric.polytope import EdgeSet, LatticePolytope, edges, to_off
from legendric.rational import format_fraction
from legendric.smoothness import ClassificationReport


@dataclass
class RunManifest:
    command: list[str]
    bounds: dict = field(default_factory=dict)
    seed: int | None = None
    jobs: int = 1
    duration_s: float | None = None  # only recorded on request; breaks byte-identity
    version: str = __version__

    def to_dict(self) -> dict:
        d = {
            "command": list(self.command),
            "bounds": dict(self.bounds),
            "seed": self.seed,
            "jobs": self.jobs,
            "version": self.version,
        }
        if self.duration_s is not None:
            d["duration_s"] = round(self.duration_s, 3)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> RunManifest:
        return cls(
            command=list(d["command"]),
            bounds=dict(d.get("bounds", {})),
            seed=d.get("seed"),
            jobs=d.get("jobs", 1),
            duration_s=d.get("duration_s"),
            version=d.get("version", __version__),
        )


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def fraction_list(values: Sequence[Fraction]) -> list[str]:
    return [format_fraction(Fraction(x)) for x in values]


def parse_fraction_list(values: Sequence[str]) -> list[Fraction]:
    return [Fraction(x) for x in values]


def emit_report(report: ClassificationReport, manifest: RunManifest | None = None) -> bytes:
    body = {"manifest": manifest.to_dict() if manifest else None, "report": report.to_dict()}
    return dumps(body).encode()


def parse_report(data: bytes | str) -> ClassificationReport:
    return ClassificationReport.from_dict(json.loads(data)["report"])


def emit_reports(reports: Sequence[ClassificationReport], manifest: RunManifest) -> bytes:
    body = {
        "manifest": manifest.to_dict(),
        "reports": [r.to_dict() for r in reports],
        "summary": {
            "count": len(reports),
            "smooth": [list(r.tuple) for r in reports if r.smooth],
            "simple": [list(r.tuple) for r in reports if r.simple_polytope],
        },
    }
    return dumps(body).encode()


def parse_reports(data: bytes | str) -> list[ClassificationReport]:
    return [ClassificationReport.from_dict(d) for d in json.loads(data)["reports"]]


def summary_table(reports: Sequence[ClassificationReport], bound: int | None = None) -> str:
    """Human-readable digest derived from the reports."""
    lines = []
    if reports:
        n = len(reports[0].tuple)
        head = f"n={n}: {len(reports)} tuples"
        if bound is not None:
            head += f" with a_0 <= {bound}"
        lines.append(head)
    counts = {
        "legendrian": sum(r.legendrian for r in reports),
        "nondegenerate": sum(r.nondegenerate for r in reports),
        "star": sum(r.star_condition for r in reports),
        "simple": sum(r.simple_polytope for r in reports),
        "smooth": sum(r.smooth for r in reports),
    }
    lines.append("  " + "  ".join(f"{k}={v}" for k, v in counts.items()))
    lines.append(f"  {'tuple':<20} identification")
    for r in reports:
        if r.smooth:
            lines.append(f"  {','.join(map(str, r.tuple)):<20} {r.identification or '-'}")
    if not counts["smooth"]:
        lines.append("  (no smooth tuples)")
    return "\n".join(lines) + "\n"


def polytope_json(poly: LatticePolytope, edge_set: EdgeSet | None = None) -> dict:
    es = edges(poly) if edge_set is None else edge_set
    d = poly.to_json()
    d["edges"] = es.to_json()
    return d


def parse_polytope(data: dict) -> tuple[LatticePolytope, EdgeSet]:
    poly = LatticePolytope.from_json(data)
    es = EdgeSet.from_pairs([(tuple(p), tuple(q)) for p, q in data["edges"]], poly.vertices)
    return poly, es


def emit_polytope_off(poly: LatticePolytope) -> bytes:
    return to_off(poly).encode()
