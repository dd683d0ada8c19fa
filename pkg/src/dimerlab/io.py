"""Reading and writing the line-based dimer file format.

    dimer 1
    # comment
    vertex 0 0.25 0.5
    arrow x 0 0 (1,0)
    face + x y z

Vertex coordinates are optional layout hints in [0,1)^2.
"""
from __future__ import annotations

import re
from pathlib import Path as FsPath
from typing import Union

from .quiver import Arrow, DimerQuiver, Face, MINUS, PLUS

HEADER = "dimer 1"
_OFFSET = re.compile(r"^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)$")
_NAME = re.compile(r"^[^\s#()]+$")


class ParseError(ValueError):
    def __init__(self, line: int, msg: str):
        self.line = line
        super().__init__(f"line {line}: {msg}")


def _coord(x: float) -> str:
    return format(x, ".6g")


def parse(text: str) -> DimerQuiver:
    """Parse dimer file text.  Structural validity is checked separately by validate()."""
    lines = text.split("\n")
    seen_header = False
    vertices = {}
    arrows = []
    names = {}
    faces = []
    for ln, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line.split() != HEADER.split():
                raise ParseError(ln, f"expected header {HEADER!r}")
            seen_header = True
            continue
        kw, _, rest = line.partition(" ")
        rest = rest.strip()
        if kw == "vertex":
            parts = rest.split()
            if len(parts) not in (1, 3):
                raise ParseError(ln, "vertex line needs an id and optionally two coordinates")
            try:
                vid = int(parts[0])
            except ValueError:
                raise ParseError(ln, f"bad vertex id {parts[0]!r}") from None
            if vid in vertices:
                raise ParseError(ln, f"duplicate vertex id {vid}")
            if vid != len(vertices):
                raise ParseError(ln, f"vertex ids must be dense from 0; got {vid}")
            pos = None
            if len(parts) == 3:
                try:
                    pos = (float(parts[1]), float(parts[2]))
                except ValueError:
                    raise ParseError(ln, "bad vertex coordinates") from None
            vertices[vid] = pos
        elif kw == "arrow":
            m = re.match(r"^(\S+)\s+(\S+)\s+(\S+)\s+(\(.*\))$", rest)
            if not m:
                raise ParseError(ln, "arrow line must read: arrow <name> <tail> <head> (<dx>,<dy>)")
            name, t, h, off = m.groups()
            if not _NAME.match(name):
                raise ParseError(ln, f"bad arrow name {name!r}")
            if name in names:
                raise ParseError(ln, f"duplicate arrow name {name!r}")
            try:
                t, h = int(t), int(h)
            except ValueError:
                raise ParseError(ln, "arrow endpoints must be integers") from None
            for v in (t, h):
                if v not in vertices:
                    raise ParseError(ln, f"arrow {name} references undeclared vertex {v}")
            mo = _OFFSET.match(off)
            if not mo:
                raise ParseError(ln, f"bad offset {off!r}")
            names[name] = len(arrows)
            arrows.append(Arrow(name, t, h, (int(mo.group(1)), int(mo.group(2)))))
        elif kw == "face":
            parts = rest.split()
            if not parts or parts[0] not in (PLUS, MINUS):
                raise ParseError(ln, "face line must start with + or -")
            if len(parts) < 2:
                raise ParseError(ln, "face has no arrows")
            ids = []
            for nm in parts[1:]:
                if nm not in names:
                    raise ParseError(ln, f"face references undeclared arrow {nm!r}")
                ids.append(names[nm])
            faces.append(Face(tuple(ids), parts[0]))
        else:
            raise ParseError(ln, f"unknown keyword {kw!r}")
    if not seen_header:
        raise ParseError(1, "empty file")
    layout = None
    if vertices and any(p is not None for p in vertices.values()):
        layout = tuple(vertices[k] for k in range(len(vertices)))
    return DimerQuiver(len(vertices), tuple(arrows), tuple(faces), layout)


def serialize(q: DimerQuiver, comments=()) -> str:
    out = [HEADER]
    out.extend(f"# {c}" for c in comments)
    for v in range(q.vertex_count):
        p = q.layout[v] if q.layout else None
        out.append(f"vertex {v}" if p is None else f"vertex {v} {_coord(p[0])} {_coord(p[1])}")
    for a in q.arrows:
        out.append(f"arrow {a.name} {a.tail} {a.head} ({a.offset[0]},{a.offset[1]})")
    for f in q.faces:
        out.append("face " + f.orientation + " " + " ".join(q.arrows[a].name for a in f.arrows))
    return "\n".join(out) + "\n"


def read(path: Union[str, FsPath]) -> DimerQuiver:
    return parse(FsPath(path).read_text(encoding="utf-8"))


def write(q: DimerQuiver, path, comments=()):
    FsPath(path).write_text(serialize(q, comments), encoding="utf-8", newline="\n")
