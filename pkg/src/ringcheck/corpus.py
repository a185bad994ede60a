"""Bundled example corpus: stated claims versus computed values.

Each item is a declaration file plus a list of claims in ``items.json``.  A
claim names an operation from :mod:`ringcheck.engine`; its reconciliation
status is ``match``, ``mismatch-flag`` or ``ill-posed``, and the run is
"expected" only when every status equals the versioned expectation.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .engine import evaluate, strip_private
from .lang import Program, parse_program

SCHEMA = 1


@dataclass
class Claim:
    anchor: str
    claimed: object
    op: str
    target: str
    expected: str
    at: str | None = None
    note: str | None = None


@dataclass
class CorpusItem:
    ident: str
    source: str
    claims: list[Claim] = field(default_factory=list)

    def program(self) -> Program:
        return parse_program(self.source)


def corpus_dir() -> Path:
    return Path(str(resources.files("ringcheck") / "corpus_data"))


def load_corpus(directory: Path | None = None) -> list[CorpusItem]:
    directory = Path(directory) if directory else corpus_dir()
    manifest = json.loads((directory / "items.json").read_text(encoding="utf-8"))
    items = []
    for it in manifest["items"]:
        claims = [Claim(c["anchor"], c["claimed"], c["op"], c["target"], c["expected"],
                        c.get("at"), c.get("note")) for c in it["claims"]]
        source = (directory / it["file"]).read_text(encoding="utf-8")
        items.append(CorpusItem(it["id"], source, claims))
    return sorted(items, key=lambda i: i.ident)


def _normalise(v):
    if isinstance(v, list):
        return sorted(str(x) for x in v)
    return str(v)


def reconcile(claimed, computed) -> str:
    if computed == "ill-posed":
        return "ill-posed"
    if computed == "unknown":
        return "undecided"
    return "match" if _normalise(claimed) == _normalise(computed) else "mismatch-flag"


def run_item(item: CorpusItem) -> dict:
    t0 = time.perf_counter()
    prog = item.program()
    claims, witnesses, certificates = [], [], []
    for c in item.claims:
        out = evaluate(prog, c.op, c.target, c.at)
        status = reconcile(c.claimed, out.value)
        entry = {"anchor": c.anchor, "claimed": c.claimed, "computed": out.value,
                 "status": status, "expected": c.expected, "op": c.op, "target": c.target}
        if c.at:
            entry["at"] = c.at
        if c.note:
            entry["note"] = c.note
        claims.append(entry)
        witnesses += [dict(w, anchor=c.anchor) for w in out.witnesses]
        certificates += [dict(x, anchor=c.anchor) for x in out.certificates]
    return {
        "schema": SCHEMA,
        "item": item.ident,
        "claims": claims,
        "witnesses": strip_private(witnesses),
        "certificates": strip_private(certificates),
        "expected": all(c["status"] == c["expected"] for c in claims),
        "timing_ms": round((time.perf_counter() - t0) * 1000, 1),
    }


def run_corpus(directory: Path | None = None) -> dict:
    from . import __version__
    reports = [run_item(item) for item in load_corpus(directory)]
    return {
        "schema": SCHEMA,
        "engine": __version__,
        "items": reports,
        "expected": all(r["expected"] for r in reports),
        "timing_ms": round(sum(r["timing_ms"] for r in reports), 1),
    }


VOLATILE = ("timing_ms", "timestamp")


def strip_volatile(obj):
    """Remove wall-clock fields so that two runs can be compared byte for byte."""
    if isinstance(obj, dict):
        return {k: strip_volatile(v) for k, v in obj.items() if k not in VOLATILE}
    if isinstance(obj, list):
        return [strip_volatile(v) for v in obj]
    return obj
