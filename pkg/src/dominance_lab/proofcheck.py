"""Bookkeeping checker for theorem-dependency ledgers.

A ledger is a list of theorem records.  Each record declares the property
names it *requires* (its hypotheses), the names it *proves*, and an ordered
list of steps:

* ``ref <id>``  -- invoke another theorem: every requirement of the referred
  theorem must already be established here, after which its conclusions
  become established;
* ``use <p>``   -- consume an established property in the proof;
* ``mark <p>``  -- writer-asserted establishment (stands for a prose proof
  step; the checker verifies bookkeeping, not mathematics).

``check_ledger`` verifies, per theorem: every ``use``/``ref`` precondition
is established when reached (``unsatisfiedAssumption``), referenced ids
exist (``unknownReference``), the declared conclusions are established by
the end (``unprovenClaim``), every declared requirement is actually needed
by some step (``extraneousAssumption``), and the reference graph is acyclic
(``cyclicReference``).  Establishment is monotone within a theorem.

The module bundles a corpus ledger (``load_corpus``) recording which
primitive dominance properties imply each composite property, and seeded
single-fault mutations of it (``mutate_ledger``) that each trigger exactly
one violation of a known kind.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional, Sequence, Set, Tuple

__all__ = [
    "Ledger",
    "LedgerParseError",
    "LedgerReport",
    "TheoremRecord",
    "Violation",
    "check_ledger",
    "load_corpus",
    "mutate_ledger",
    "parse_ledger",
]


class LedgerParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class TheoremRecord:
    id: str
    requires: Tuple[str, ...]
    proves: Tuple[str, ...]
    steps: Tuple[Tuple[str, str], ...]   # (op, argument), op in {ref, use, mark}


@dataclass(frozen=True)
class Ledger:
    records: Tuple[TheoremRecord, ...]

    def __post_init__(self):
        ids = [r.id for r in self.records]
        if len(set(ids)) != len(ids):
            raise ValueError("theorem ids must be unique")

    def by_id(self) -> Dict[str, TheoremRecord]:
        return {r.id: r for r in self.records}

    def to_records(self) -> List[Dict[str, object]]:
        return [
            {"id": r.id, "requires": list(r.requires),
             "proves": list(r.proves),
             "steps": [{"op": op, "arg": arg} for op, arg in r.steps]}
            for r in self.records
        ]

    @classmethod
    def from_records(cls, records: Sequence[Dict[str, object]]) -> "Ledger":
        out = []
        for rec in records:
            steps = tuple((s["op"], s["arg"]) for s in rec.get("steps", ()))
            out.append(TheoremRecord(str(rec["id"]),
                                     tuple(rec.get("requires", ())),
                                     tuple(rec.get("proves", ())), steps))
        return cls(tuple(out))

    def text(self) -> str:
        lines = []
        for r in self.records:
            req = ", ".join(r.requires)
            prv = ", ".join(r.proves)
            lines.append(f"theorem {r.id} requires {{{req}}} proves {{{prv}}}")
            for op, arg in r.steps:
                lines.append(f"  {op} {arg}")
            lines.append("end")
            lines.append("")
        return "\n".join(lines)


_HEADER_RE = re.compile(
    r"^theorem\s+(?P<id>[\w.-]+)\s+requires\s*\{(?P<req>[^}]*)\}"
    r"\s+proves\s*\{(?P<prv>[^}]*)\}\s*$")
_STEP_RE = re.compile(r"^(?P<op>ref|use|mark)\s+(?P<arg>[\w.-]+)\s*$")


def _name_list(blob: str, line: int) -> Tuple[str, ...]:
    names = tuple(n.strip() for n in blob.split(",") if n.strip())
    for n in names:
        if not re.fullmatch(r"[\w.-]+", n):
            raise LedgerParseError(f"bad property name {n!r}", line)
    return names


def parse_ledger(text: str) -> Ledger:
    """Parse the line-oriented ledger format."""
    records: List[TheoremRecord] = []
    seen: Set[str] = set()
    current: Optional[Tuple[str, Tuple[str, ...], Tuple[str, ...]]] = None
    steps: List[Tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "end":
            if current is None:
                raise LedgerParseError("'end' without an open theorem", lineno)
            tid, req, prv = current
            records.append(TheoremRecord(tid, req, prv, tuple(steps)))
            current, steps = None, []
            continue
        header = _HEADER_RE.match(line)
        if header:
            if current is not None:
                raise LedgerParseError(
                    f"theorem {current[0]!r} is missing its 'end'", lineno)
            tid = header.group("id")
            if tid in seen:
                raise LedgerParseError(f"duplicate theorem id {tid!r}", lineno)
            seen.add(tid)
            current = (tid, _name_list(header.group("req"), lineno),
                       _name_list(header.group("prv"), lineno))
            continue
        step = _STEP_RE.match(line)
        if step:
            if current is None:
                raise LedgerParseError("step outside a theorem", lineno)
            steps.append((step.group("op"), step.group("arg")))
            continue
        raise LedgerParseError(f"unrecognized line {line!r}", lineno)
    if current is not None:
        raise LedgerParseError(
            f"theorem {current[0]!r} is missing its 'end'",
            len(text.splitlines()))
    return Ledger(tuple(records))


# ---------------------------------------------------------------------------
# Checking


@dataclass(frozen=True)
class Violation:
    theorem_id: str
    step_index: Optional[int]
    kind: str          # unsatisfiedAssumption | unknownReference |
    #                    unprovenClaim | extraneousAssumption | cyclicReference
    detail: str

    def to_record(self) -> Dict[str, object]:
        return {"theoremId": self.theorem_id, "stepIndex": self.step_index,
                "kind": self.kind, "detail": self.detail}


@dataclass
class LedgerReport:
    violations: List[Violation] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.violations

    def kinds(self) -> List[str]:
        return [v.kind for v in self.violations]


def _find_cycles(ledger: Ledger) -> List[List[str]]:
    graph = {r.id: [arg for op, arg in r.steps if op == "ref"]
             for r in ledger.records}
    color: Dict[str, int] = {}
    stack: List[str] = []
    cycles: List[List[str]] = []

    def visit(node: str) -> None:
        color[node] = 1
        stack.append(node)
        for nxt in graph.get(node, ()):
            if nxt not in graph:
                continue
            state = color.get(nxt, 0)
            if state == 0:
                visit(nxt)
            elif state == 1:
                cycles.append(stack[stack.index(nxt):] + [nxt])
        stack.pop()
        color[node] = 2

    for node in graph:
        if color.get(node, 0) == 0:
            visit(node)
    return cycles


def check_ledger(ledger: Ledger) -> LedgerReport:
    """Verify establishment bookkeeping for every theorem in the ledger."""
    report = LedgerReport()
    table = ledger.by_id()

    for cycle in _find_cycles(ledger):
        report.violations.append(Violation(
            cycle[0], None, "cyclicReference", " -> ".join(cycle)))

    for record in ledger.records:
        established: Set[str] = set(record.requires)
        needed: Set[str] = set()
        for index, (op, arg) in enumerate(record.steps):
            if op == "ref":
                target = table.get(arg)
                if target is None:
                    report.violations.append(Violation(
                        record.id, index, "unknownReference",
                        f"no theorem named {arg!r}"))
                    continue
                missing = [p for p in target.requires if p not in established]
                if missing:
                    report.violations.append(Violation(
                        record.id, index, "unsatisfiedAssumption",
                        f"ref {arg} needs {', '.join(missing)}"))
                needed.update(p for p in target.requires
                              if p in record.requires)
                established.update(target.proves)
            elif op == "use":
                if arg in established:
                    if arg in record.requires:
                        needed.add(arg)
                else:
                    report.violations.append(Violation(
                        record.id, index, "unsatisfiedAssumption",
                        f"use {arg}: not established"))
            else:  # mark
                established.add(arg)
        unproven = [p for p in record.proves if p not in established]
        if unproven:
            report.violations.append(Violation(
                record.id, None, "unprovenClaim",
                f"never established: {', '.join(unproven)}"))
        for prop in record.requires:
            if prop not in needed:
                report.violations.append(Violation(
                    record.id, None, "extraneousAssumption", prop))
    return report


# ---------------------------------------------------------------------------
# Bundled corpus and seeded faults


def load_corpus() -> Ledger:
    """The bundled primitive-to-composite implication ledger."""
    text = resources.files("dominance_lab").joinpath(
        "data/implied_properties.ledger").read_text(encoding="utf-8")
    return parse_ledger(text)


def mutate_ledger(ledger: Ledger, fault: str, seed: int = 0
                  ) -> Tuple[Ledger, str, str]:
    """A seeded single-fault copy: (mutated, theoremId, expectedKind).

    Faults: 'drop-require' (a used requirement disappears),
    'add-unused-require' (a fresh never-needed requirement appears),
    'drop-mark' (a conclusion-establishing mark disappears).
    """
    rng = random.Random(f"{seed}:{fault}")
    records = list(ledger.records)

    if fault == "drop-require":
        candidates = [
            (i, prop) for i, r in enumerate(records) for prop in r.requires
            if ("use", prop) in r.steps
            and not any(op == "mark" and arg == prop for op, arg in r.steps)]
        i, prop = rng.choice(candidates)
        r = records[i]
        records[i] = TheoremRecord(
            r.id, tuple(p for p in r.requires if p != prop), r.proves, r.steps)
        return Ledger(tuple(records)), r.id, "unsatisfiedAssumption"

    if fault == "add-unused-require":
        i = rng.randrange(len(records))
        r = records[i]
        records[i] = TheoremRecord(
            r.id, r.requires + ("NeverNeeded",), r.proves, r.steps)
        return Ledger(tuple(records)), r.id, "extraneousAssumption"

    if fault == "drop-mark":
        candidates = [
            (i, j) for i, r in enumerate(records)
            for j, (op, arg) in enumerate(r.steps)
            if op == "mark" and arg in r.proves]
        i, j = rng.choice(candidates)
        r = records[i]
        records[i] = TheoremRecord(
            r.id, r.requires, r.proves, r.steps[:j] + r.steps[j + 1:])
        return Ledger(tuple(records)), r.id, "unprovenClaim"

    raise ValueError(f"unknown fault {fault!r}")
