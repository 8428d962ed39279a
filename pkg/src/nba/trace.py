"""Aggregate activity tracing during incremental encoding.

The traced quantity sums hub, working-memory and control populations,
excluding concepts, so it reflects structure building rather than lexical
access. Activity rises while a constituent is open (new bindings sustain,
relation labels stay asserted) and drops within two steps of its closure
(labels retract while the bindings persist).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .dynamics import Network, PopulationKind
from .encoder import ConstituentSpan, ControlProgram, execute
from .errors import SpanNotClosed

_TRACED_KINDS = (PopulationKind.HUB, PopulationKind.WORKING_MEMORY, PopulationKind.CONTROL)


def aggregate_activity(network: Network) -> float:
    return network.total_activation(_TRACED_KINDS)


@dataclass
class ActivityTrace:
    samples: list = field(default_factory=list)  # [(step, activity), ...]
    markers: list = field(default_factory=list)  # [(step, text), ...]

    def add_sample(self, step: int, activity: float) -> None:
        if self.samples and step <= self.samples[-1][0]:
            raise ValueError("sample step indices must be strictly increasing")
        self.samples.append((step, float(activity)))

    def activity_at(self, step: int) -> float:
        """Activity at a step; past the last sample the trace holds its level."""
        if not self.samples:
            return 0.0
        last = self.samples[0][1]
        for s, a in self.samples:
            if s > step:
                return last
            last = a
        return last

    def max_between(self, start: int, end: int) -> float:
        values = [a for s, a in self.samples if start <= s <= end]
        return max(values) if values else 0.0

    @property
    def peak(self) -> float:
        return max((a for _, a in self.samples), default=0.0)


@dataclass(frozen=True)
class PatternReport:
    rose: bool
    declined: bool
    baseline: float
    peak: float
    after_close: float


def trace_encode(program: ControlProgram, blackboard) -> tuple:
    """Like execute(), with one aggregate sample per dynamics step.

    Returns (ConnectionPathReport, ActivityTrace); the final blackboard state
    is identical to a plain execute().
    """
    trace = ActivityTrace()
    net = blackboard.network
    trace.add_sample(net.time, aggregate_activity(net))
    report = execute(
        program, blackboard, on_step=lambda n: trace.add_sample(n.time, aggregate_activity(n))
    )
    for instr, step in report.instruction_steps:
        trace.markers.append((step, str(instr)))
    return report, trace


def detect_rise_decline(
    trace: ActivityTrace,
    span: ConstituentSpan,
    *,
    settle_steps: int = 2,
    rise_eps: float = 1e-6,
    drop_eps: float = 1e-6,
) -> PatternReport:
    """Check the rise-within / decline-after pattern for one constituent span."""
    if span.open_step is None or span.close_step is None:
        raise SpanNotClosed(f"span {span.start}..{span.end} has no recorded open/close steps")
    baseline = trace.activity_at(span.open_step)
    peak = trace.max_between(span.open_step, span.close_step)
    after_close = trace.activity_at(span.close_step + settle_steps)
    rose = peak > baseline + rise_eps
    declined = after_close <= peak - drop_eps
    return PatternReport(
        rose=rose, declined=declined, baseline=baseline, peak=peak, after_close=after_close
    )


# ------------------------------------------------------------------- export

def export(trace: ActivityTrace, fmt: str) -> bytes:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["step", "activity"])
        for step, activity in trace.samples:
            writer.writerow([step, repr(activity)])
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        doc = {
            "samples": [[s, a] for s, a in trace.samples],
            "markers": [[s, m] for s, m in trace.markers],
        }
        return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("utf-8")
    raise ValueError(f"unknown trace format {fmt!r} (expected csv or json)")


def load(data: bytes, fmt: str) -> ActivityTrace:
    text = data.decode("utf-8")
    trace = ActivityTrace()
    if fmt == "csv":
        reader = csv.reader(io.StringIO(text))
        header = next(reader, None)
        if header != ["step", "activity"]:
            raise ValueError("not a trace CSV (bad header)")
        for row in reader:
            trace.add_sample(int(row[0]), float(row[1]))
        return trace
    if fmt == "json":
        doc = json.loads(text)
        for step, activity in doc.get("samples", []):
            trace.add_sample(int(step), float(activity))
        trace.markers = [(int(s), str(m)) for s, m in doc.get("markers", [])]
        return trace
    raise ValueError(f"unknown trace format {fmt!r} (expected csv or json)")
