"""Quiver files, DOT export and decomposition parsing.

A quiver file is YAML (JSON documents are accepted too)::

    vertices:
      - {id: a, dim: 1}
      - {id: b, dim: 2}
    arrows:
      - {from: a, to: b, count: 2}
      - {from: b, to: a}

``count`` defaults to 1.  Every validation error carries the line and column
of the offending node.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import yaml

from .quiver import DimensionVector, Quiver, QuiverSetting
from .simples import Decomposition


@dataclass
class ParseError(Exception):
    message: str
    line: int | None = None
    column: int | None = None
    path: str | None = None

    def __str__(self) -> str:
        where = self.path or "<input>"
        if self.line is not None:
            where += f":{self.line}:{self.column}"
        return f"{where}: {self.message}"


def _err(node, msg: str) -> ParseError:
    m = node.start_mark
    return ParseError(msg, m.line + 1, m.column + 1)


def _mapping(node, what: str) -> dict[str, yaml.Node]:
    if not isinstance(node, yaml.MappingNode):
        raise _err(node, f"{what} must be a mapping")
    out = {}
    for k, v in node.value:
        if not isinstance(k, yaml.ScalarNode):
            raise _err(k, f"{what} keys must be plain strings")
        if k.value in out:
            raise _err(k, f"duplicate key {k.value!r} in {what}")
        out[k.value] = v
    return out


def _scalar(node, what: str) -> str:
    if not isinstance(node, yaml.ScalarNode):
        raise _err(node, f"{what} must be a scalar")
    return node.value


def _int(node, what: str, minimum: int) -> int:
    text = _scalar(node, what)
    try:
        val = int(text)
    except ValueError:
        raise _err(node, f"{what} must be an integer, got {text!r}") from None
    if val < minimum:
        raise _err(node, f"{what} must be >= {minimum}, got {val}")
    return val


def parse_quiver_text(text: str, path: str | None = None) -> QuiverSetting:
    try:
        return _parse(text)
    except ParseError as e:
        e.path = path
        raise


def _parse(text: str) -> QuiverSetting:
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as e:
        m = e.problem_mark
        raise ParseError(f"syntax error: {e.problem}", m.line + 1 if m else None, m.column + 1 if m else None)
    if root is None:
        raise ParseError("empty document", 1, 1)
    top = _mapping(root, "document")
    for key, node in top.items():
        if key not in ("vertices", "arrows"):
            raise _err(node, f"unknown top-level key {key!r}")
    if "vertices" not in top:
        raise _err(root, "missing 'vertices'")

    vnode = top["vertices"]
    if not isinstance(vnode, yaml.SequenceNode):
        raise _err(vnode, "'vertices' must be a list")
    dims: dict[str, int] = {}
    for item in vnode.value:
        fields = _mapping(item, "vertex")
        for k in fields:
            if k not in ("id", "dim"):
                raise _err(fields[k], f"unknown vertex field {k!r}")
        if "id" not in fields or "dim" not in fields:
            raise _err(item, "vertex needs 'id' and 'dim'")
        vid = _scalar(fields["id"], "vertex id")
        if vid in dims:
            raise _err(fields["id"], f"duplicate vertex id {vid!r}")
        dims[vid] = _int(fields["dim"], "dim", 0)

    arrows = []
    anode = top.get("arrows")
    if anode is not None and not (isinstance(anode, yaml.ScalarNode) and anode.value in ("", "null", "~")):
        if not isinstance(anode, yaml.SequenceNode):
            raise _err(anode, "'arrows' must be a list")
        for item in anode.value:
            fields = _mapping(item, "arrow")
            for k in fields:
                if k not in ("from", "to", "count"):
                    raise _err(fields[k], f"unknown arrow field {k!r}")
            if "from" not in fields or "to" not in fields:
                raise _err(item, "arrow needs 'from' and 'to'")
            ends = []
            for key in ("from", "to"):
                vid = _scalar(fields[key], key)
                if vid not in dims:
                    raise _err(fields[key], f"arrow endpoint {vid!r} is not a declared vertex")
                ends.append(vid)
            count = _int(fields["count"], "count", 1) if "count" in fields else 1
            arrows.extend([tuple(ends)] * count)
    return QuiverSetting(Quiver(tuple(dims), tuple(arrows)), DimensionVector(dims))


def read_quiver_file(path) -> QuiverSetting:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", path=str(path)) from None
    return parse_quiver_text(text, str(path))


def _quote(v: str) -> str:
    if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_.-]*", v) and v not in ("null", "true", "false", "yes", "no", "on", "off"):
        return v
    return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_quiver_text(s: QuiverSetting) -> str:
    """Canonical YAML: vertices sorted, one arrow line per (from, to) pair with its count."""
    lines = ["vertices:"]
    for v in s.vertices:
        lines.append(f"  - {{id: {_quote(v)}, dim: {s.alpha[v]}}}")
    if s.arrows:
        lines.append("arrows:")
        for (a, b), c in sorted(s.quiver.counts.items()):
            lines.append(f"  - {{from: {_quote(a)}, to: {_quote(b)}, count: {c}}}")
    else:
        lines.append("arrows: []")
    return "\n".join(lines) + "\n"


def to_dot(s: QuiverSetting, name: str = "Q") -> str:
    """Graphviz digraph; labels ``id/dim``, one edge line per arrow."""
    def q(v: str) -> str:
        return '"' + v.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = [f"digraph {name} {{"]
    for v in s.vertices:
        lines.append(f'  {q(v)} [label="{v}/{s.alpha[v]}"];')
    for a, b in s.arrows:
        lines.append(f"  {q(a)} -> {q(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_TERM = re.compile(r"\s*(?:(\d+)\s*[x×*]\s*)?\(\s*([\d\s,]*)\)\s*")


def parse_decomposition(text: str, s: QuiverSetting) -> Decomposition:
    """Parse ``"2x(1,0) + 1x(0,1)"``; entries follow the sorted vertex order."""
    factors = []
    for part in text.split("+"):
        m = _TERM.fullmatch(part)
        if not m:
            raise ValueError(f"cannot parse decomposition term {part.strip()!r}")
        coef = int(m.group(1) or 1)
        entries = [int(x) for x in m.group(2).replace(" ", "").split(",") if x]
        if len(entries) != len(s.vertices):
            raise ValueError(f"term {part.strip()!r} has {len(entries)} entries, expected {len(s.vertices)}")
        factors.append((DimensionVector(zip(s.vertices, entries)), coef))
    return Decomposition(tuple(factors))
