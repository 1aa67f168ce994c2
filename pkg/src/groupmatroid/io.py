"""Reading subgroup generator files and bundled fixtures, and writing
deterministic JSON reports.

A generator file holds one generator tuple per line, coordinates separated
by ``|`` and written in each factor's element syntax.  Blank lines and
``#`` comments are ignored; a comment of the form ``# group: <spec>`` names
the ambient product so that callers may omit it.
"""
from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .exceptions import ValidationError
from .groups import GroupProduct, Subgroup, parse_product_spec, subgroup_closure
from .hypergraph import Hypergraph, parse_hypergraph

SCHEMA_VERSION = 1
BUILTIN_PREFIX = "builtin:"

__all__ = [
    "SCHEMA_VERSION",
    "group_header",
    "parse_gens",
    "read_text",
    "load_subgroup",
    "load_hypergraph",
    "builtin_names",
    "dumps_report",
    "write_report",
]


def builtin_names() -> list[str]:
    """Names of the bundled fixtures, without extensions."""
    root = resources.files("groupmatroid") / "data"
    return sorted(p.name.rsplit(".", 1)[0] for p in root.iterdir()
                  if p.name.endswith((".gens", ".hyp")))


def read_text(ref: str, suffix: str) -> str:
    """Contents of a file path, or of a bundled fixture written ``builtin:<name>``."""
    if ref.startswith(BUILTIN_PREFIX):
        name = ref[len(BUILTIN_PREFIX):]
        res = resources.files("groupmatroid") / "data" / f"{name}{suffix}"
        if not res.is_file():
            raise ValidationError(f"no bundled fixture {name!r}; available: {', '.join(builtin_names())}")
        return res.read_text()
    path = Path(ref)
    if not path.is_file():
        raise ValidationError(f"file not found: {ref}")
    return path.read_text()


def group_header(text: str) -> str | None:
    """The ``<spec>`` of a ``# group: <spec>`` comment, if present."""
    for line in text.splitlines():
        s = line.strip()
        if s.startswith("#") and s[1:].strip().startswith("group:"):
            return s[1:].strip()[len("group:"):].strip()
    return None


def parse_gens(text: str, parent: GroupProduct) -> list[tuple]:
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            gens.append(parent.parse_element(line))
        except ValidationError as exc:
            raise ValidationError(f"line {lineno}: {exc}") from None
    return gens


def load_subgroup(gens_ref: str, group: str | None = None) -> Subgroup:
    """Subgroup generated by the tuples in ``gens_ref`` inside ``group`` (or the file's header group)."""
    text = read_text(gens_ref, ".gens")
    spec = group if group is not None else group_header(text)
    if spec is None:
        raise ValidationError(f"{gens_ref}: no --group given and no '# group:' header")
    parent = parse_product_spec(spec)
    return subgroup_closure(parent, parse_gens(text, parent))


def load_hypergraph(ref: str) -> Hypergraph:
    return parse_hypergraph(read_text(ref, ".hyp"))


def dumps_report(command: str, inputs: dict, result) -> str:
    """Canonical JSON: ``schema`` version, sorted keys, fixed separators."""
    doc = {"schema": SCHEMA_VERSION, "command": command, "inputs": inputs, "result": result}
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_report(path: str, text: str) -> None:
    if path == "-":
        print(text, end="")
    else:
        Path(path).write_text(text)
