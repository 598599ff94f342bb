"""
Report records and their serialization.

Reports are JSON lines with sorted keys and compact separators, and carry no
timing, so a run is byte-identical whatever the worker count.
"""

import csv
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional

import numpy as np
from django.core.serializers.json import DjangoJSONEncoder
from django.db import transaction

from cube.dyadic import Dyadic, format_exact
from cube.family import SetFamily
from cube.literals import family_to_literal
from symmetry.group import CubeAutomorphism

logger = logging.getLogger(__name__)

S_TABLE_HEADER = ("n", "m", "l", "s")


class ReportEncoder(DjangoJSONEncoder):
    """Dyadics and fractions as exact strings, families as literals."""

    def default(self, o):
        if isinstance(o, (Dyadic, Fraction)):
            return format_exact(o)
        if isinstance(o, SetFamily):
            return family_to_literal(o)
        if isinstance(o, CubeAutomorphism):
            return o.to_dict()
        if isinstance(o, np.bool_):
            return bool(o)
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, (frozenset, set)):
            return sorted(o)
        if hasattr(o, "to_dict"):
            return o.to_dict()
        return super().default(o)


def dumps(record, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(record, cls=ReportEncoder, sort_keys=True, indent=2, ensure_ascii=False)
    return json.dumps(record, cls=ReportEncoder, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass
class Finding:
    kind: str
    family: Optional[SetFamily] = None
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        record = {"record": "finding", "kind": self.kind, **self.data}
        if self.family is not None:
            record["family"] = self.family
        return record


@dataclass
class VerificationReport:
    kind: str
    n: Optional[int]
    passed: bool
    summary: dict = field(default_factory=dict)
    findings: List[Finding] = field(default_factory=list)

    def records(self) -> Iterable[dict]:
        yield {
            "record": "summary",
            "kind": self.kind,
            "n": self.n,
            "passed": self.passed,
            "findings": len(self.findings),
            **self.summary,
        }
        for finding in self.findings:
            yield finding.to_dict()

    def write_jsonl(self, stream, pretty: bool = False):
        for record in self.records():
            stream.write(dumps(record, pretty=pretty) + "\n")


def write_s_table_csv(rows, stream):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(S_TABLE_HEADER)
    for row in rows:
        writer.writerow(row)


def _plain(value):
    """Round-trip through the encoder so JSONField gets plain JSON."""
    return json.loads(dumps(value))


def record_report(report: VerificationReport, parameters: dict):
    """Archive a report and its findings; returns the stored run."""
    from .models import Finding as FindingRow
    from .models import VerificationRun

    with transaction.atomic():
        run = VerificationRun.objects.create(
            kind=report.kind,
            n=report.n,
            parameters=_plain(parameters),
            passed=report.passed,
            summary=_plain(report.summary),
        )
        FindingRow.objects.bulk_create(
            [
                FindingRow(
                    run=run,
                    kind=finding.kind,
                    n=finding.family.n if finding.family is not None else report.n or 0,
                    m=finding.data.get("m", finding.family.size if finding.family is not None else None),
                    excess=finding.data.get("excess"),
                    dist=finding.data.get("dist"),
                    family=_plain(finding.family) if finding.family is not None else None,
                    payload=_plain(finding.data),
                )
                for finding in report.findings
            ]
        )
    logger.info(f"✅ Archived {report.kind} run {run.pk} with {len(report.findings)} findings")
    return run
