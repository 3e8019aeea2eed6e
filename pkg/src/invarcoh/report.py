"""Result documents, deterministic serialization, rendering, and the cache.

A run produces one ResultDocument: the echoed job, a payload dict (the only
part that must be byte-identical across reruns), a provenance block, and
timing.  Rendering writes the JSON document, a Markdown report embedding the
payload hash, CSV tables, and PNG figures next to each other.
"""
from __future__ import annotations

import csv
import hashlib
import json
import logging
import os
import time
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from . import __version__

log = logging.getLogger("invarcoh")

CACHE_ENV = "INVARCOH_CACHE_DIR"


def canonical_json(obj) -> str:
    """Deterministic JSON: sorted keys, no float-ish whitespace variance."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def payload_hash(payload) -> str:
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


@dataclass
class ResultDocument:
    command: str
    job: dict
    payload: dict
    provenance: dict = dc_field(default_factory=dict)
    timing_seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "job": self.job,
            "engine_version": __version__,
            "payload": self.payload,
            "payload_sha256": payload_hash(self.payload),
            "provenance": self.provenance,
            "timing_seconds": round(self.timing_seconds, 3),
        }


def _markdown_table(headers, rows) -> str:
    out = ["| " + " | ".join(headers) + " |", "|" + "---|" * len(headers)]
    for row in rows:
        out.append("| " + " | ".join(str(c) for c in row) + " |")
    return "\n".join(out)


def render_markdown(doc: ResultDocument, tables: dict) -> str:
    """Human-readable report; `tables` maps title -> (headers, rows)."""
    lines = [
        f"# invarcoh report: {doc.command}",
        "",
        f"- engine version: {__version__}",
        f"- payload sha256: `{payload_hash(doc.payload)}`",
        f"- timing: {doc.timing_seconds:.3f} s",
        "",
    ]
    for title, (headers, rows) in tables.items():
        lines += [f"## {title}", "", _markdown_table(headers, rows), ""]
    if doc.provenance:
        lines += ["## Provenance", "", "```json",
                  json.dumps(doc.provenance, sort_keys=True, indent=2), "```", ""]
    return "\n".join(lines)


def write_outputs(doc: ResultDocument, out_prefix: str, tables: dict, figures=None):
    """Write <prefix>.json/.md and one CSV per table; figures via callbacks.

    `figures` maps a file suffix to a callback receiving a matplotlib Axes.
    Returns the list of written paths.
    """
    prefix = Path(out_prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    written = []
    json_path = prefix.with_suffix(".json")
    json_path.write_text(json.dumps(doc.to_json(), sort_keys=True, indent=2) + "\n")
    written.append(json_path)
    md_path = prefix.with_suffix(".md")
    md_path.write_text(render_markdown(doc, tables))
    written.append(md_path)
    for title, (headers, rows) in tables.items():
        slug = "".join(c if c.isalnum() else "_" for c in title.lower())
        csv_path = prefix.parent / f"{prefix.name}_{slug}.csv"
        with csv_path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(headers)
            writer.writerows(rows)
        written.append(csv_path)
    for suffix, draw in (figures or {}).items():
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6, 4))
        draw(ax)
        fig.tight_layout()
        png_path = prefix.parent / f"{prefix.name}_{suffix}.png"
        fig.savefig(png_path, dpi=120)
        plt.close(fig)
        written.append(png_path)
    return written


def bar_figure(title, xlabel, ylabel, xs, ys):
    """Callback factory for a labelled bar chart."""

    def draw(ax):
        ax.bar([str(x) for x in xs], ys, color="#4878b0")
        ax.set_title(title)
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)

    return draw


# --- best-effort content-addressed cache ------------------------------------

def cache_dir() -> Path | None:
    d = os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def cache_key(*parts) -> str:
    return hashlib.sha256(canonical_json(list(parts)).encode("utf-8")).hexdigest()


def cache_load(key: str):
    """Return the cached value or None; tampered entries are discarded."""
    d = cache_dir()
    if d is None:
        return None
    path = d / f"{key}.json"
    if not path.exists():
        return None
    try:
        entry = json.loads(path.read_text())
        value = entry["value"]
        if entry.get("checksum") != payload_hash(value):
            log.warning("cache entry %s failed its checksum; recomputing", key)
            return None
        return value
    except (json.JSONDecodeError, KeyError, OSError) as exc:
        log.warning("cache entry %s unreadable (%s); recomputing", key, exc)
        return None


def cache_store(key: str, value):
    d = cache_dir()
    if d is None:
        return
    try:
        d.mkdir(parents=True, exist_ok=True)
        entry = {"checksum": payload_hash(value), "value": value}
        (d / f"{key}.json").write_text(canonical_json(entry))
    except OSError as exc:  # cache is best-effort, never fatal
        log.warning("cache store failed for %s: %s", key, exc)


def timed(fn):
    """Run fn(), returning (result, elapsed_seconds)."""
    start = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - start
