"""Deterministic report rendering: same inputs, byte-identical output."""

from __future__ import annotations

import json


def to_json(report: dict) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def render_human(report: dict) -> str:
    """A compact human-readable rendering of a report dict."""
    lines: list[str] = []

    def walk(obj, prefix: str) -> None:
        if isinstance(obj, dict):
            for key in sorted(obj):
                walk(obj[key], f"{prefix}{key}.")
        elif isinstance(obj, list):
            if all(not isinstance(x, (dict, list)) for x in obj):
                lines.append(f"{prefix[:-1]}: {', '.join(str(x) for x in obj)}")
            else:
                for i, x in enumerate(obj):
                    walk(x, f"{prefix}{i}.")
        else:
            lines.append(f"{prefix[:-1]}: {obj}")

    walk(report, "")
    return "\n".join(lines) + "\n"
