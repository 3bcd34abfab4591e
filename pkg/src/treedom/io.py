"""Text formats: edge lists, vertex sets, bundled fixtures, JSON helpers.

Edge-list format: first data line is ``n``; each further line is ``u v``
(0-based).  Blank lines and ``#`` comments are skipped.  A comment of the
form ``# label <id> <name>`` attaches a display name to a vertex.

Vertex-set format: vertex ids separated by whitespace or commas, same
comment rules.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .trees import Tree, tree_from_edges

__all__ = [
    "FormatError",
    "parse_edge_list",
    "read_edge_list",
    "format_edge_list",
    "parse_vertex_set",
    "read_vertex_set",
    "load_fixture",
    "FIXTURES",
    "rational_json",
    "dumps",
]

FIXTURES = ("makeminimal_example", "a2_subset_example")

_LABEL = re.compile(r"#\s*label\s+(\d+)\s+(\S+)")


class FormatError(ValueError):
    pass


def parse_edge_list(text: str) -> tuple[Tree, dict[str, int]]:
    labels: dict[str, int] = {}
    rows = []
    for raw in text.splitlines():
        lab = _LABEL.match(raw.strip())
        if lab:
            labels[lab.group(2)] = int(lab.group(1))
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise FormatError("empty edge list")
    try:
        (n,) = rows[0]
        n = int(n)
        edges = [(int(u), int(v)) for u, v in rows[1:]]
    except ValueError as exc:
        raise FormatError(f"malformed edge list: {exc}") from None
    return tree_from_edges(n, edges), labels


def read_edge_list(path: str | Path) -> tuple[Tree, dict[str, int]]:
    return parse_edge_list(Path(path).read_text())


def format_edge_list(t: Tree, labels: dict[str, int] | None = None) -> str:
    lines = []
    if labels:
        lines += [f"# label {v} {name}" for name, v in sorted(labels.items(), key=lambda kv: kv[1])]
    lines.append(str(t.n))
    lines += [f"{u} {v}" for u, v in t.edges]
    return "\n".join(lines) + "\n"


def parse_vertex_set(text: str) -> frozenset[int]:
    ids = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0]
        ids += [tok for tok in re.split(r"[\s,]+", line) if tok]
    try:
        return frozenset(int(tok) for tok in ids)
    except ValueError as exc:
        raise FormatError(f"malformed vertex set: {exc}") from None


def read_vertex_set(path: str | Path) -> frozenset[int]:
    return parse_vertex_set(Path(path).read_text())


def load_fixture(name: str) -> tuple[Tree, dict[str, int], dict[str, frozenset[int]]]:
    """Tree, labels and named vertex sets of a bundled fixture."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; have {FIXTURES}")
    root = resources.files("treedom") / "fixtures"
    tree, labels = parse_edge_list((root / f"{name}.tree").read_text())
    sets = {}
    for entry in root.iterdir():
        parts = entry.name.split(".")
        if len(parts) == 3 and parts[0] == name and parts[2] == "set":
            sets[parts[1]] = parse_vertex_set(entry.read_text())
    return tree, labels, sets


def rational_json(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def dumps(obj) -> str:
    """Stable JSON: fixed key order as built, two-space indent."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
