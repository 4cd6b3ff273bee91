"""Line-oriented germ definition files.

::

    # the D4 normal form
    vars: u, v, w
    split: u | v w
    f1 = u
    f2 = v*w
    f3 = 2*u*v + 3*v^2 + w^2
    f4 = u*v^2 + 2*v^3 + 2*v*w^2
    order: 12          # optional
    max_degree: 24     # optional
    routes: all        # optional

``split`` is optional for germs that are not meant to be counted.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .germ import MapGerm
from .parser import ParseError, parse_polynomial
from .poly import Polynomial, UnknownVariableError, VarContext

_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_COMPONENT = re.compile(r"^f(\d+)\s*=\s*(.*)$")
_OPTION = re.compile(r"^(\w+)\s*:\s*(.*)$")
OPTION_KEYS = {"order", "max_degree", "routes"}


class GermFileError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, source: str = ""):
        super().__init__(message)
        self.message = message
        self.line = line
        self.source = source

    def __str__(self) -> str:
        where = self.source or "<input>"
        if self.line is not None:
            where += f":{self.line}"
        return f"{where}: {self.message}"


@dataclass(frozen=True)
class GermFile:
    context: VarContext
    components: tuple[Polynomial, ...]
    texts: tuple[str, ...]
    u_vars: Optional[tuple[str, ...]] = None
    v: Optional[str] = None
    w: Optional[str] = None
    options: dict = field(default_factory=dict)
    name: str = "<input>"
    digest: str = ""

    @property
    def has_split(self) -> bool:
        return self.v is not None

    def germ(self) -> MapGerm:
        return MapGerm(self.context, self.components)

    def column_order(self) -> Optional[list[str]]:
        if not self.has_split:
            return None
        return list(self.u_vars) + [self.v, self.w]


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_germ_text(text: str, name: str = "<input>") -> GermFile:
    digest = "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()
    names: Optional[list[str]] = None
    split_line = None
    split_lineno = None
    components: dict[int, tuple[str, int]] = {}
    options: dict = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue
        m = _COMPONENT.match(line)
        if m:
            idx = int(m.group(1))
            if idx in components:
                raise GermFileError(f"component f{idx} defined twice", lineno, name)
            components[idx] = (m.group(2).strip(), lineno)
            continue
        m = _OPTION.match(line)
        if not m:
            raise GermFileError(f"cannot read line {raw.strip()!r}", lineno, name)
        key, value = m.group(1), m.group(2).strip()
        if key == "vars":
            if names is not None:
                raise GermFileError("vars declared twice", lineno, name)
            names = [x.strip() for x in value.split(",") if x.strip()]
            for x in names:
                if not _NAME.match(x):
                    raise GermFileError(f"invalid variable name {x!r}", lineno, name)
            if len(set(names)) != len(names) or not names:
                raise GermFileError("variables must be distinct and nonempty", lineno, name)
        elif key == "split":
            split_line, split_lineno = value, lineno
        elif key in ("order", "max_degree"):
            try:
                options[key] = int(value)
            except ValueError:
                raise GermFileError(f"{key} must be an integer", lineno, name) from None
            if options[key] < 1:
                raise GermFileError(f"{key} must be positive", lineno, name)
        elif key == "routes":
            if value not in ("all", "corollary"):
                raise GermFileError("routes must be 'all' or 'corollary'", lineno, name)
            options[key] = value
        else:
            raise GermFileError(f"unknown key {key!r}", lineno, name)

    if names is None:
        raise GermFileError("missing 'vars:' declaration", None, name)
    ctx = VarContext(names)
    expected = list(range(1, len(names) + 2))
    if sorted(components) != expected:
        raise GermFileError(
            f"{len(names)} variables need components f1..f{len(names) + 1}, "
            f"found {', '.join(f'f{i}' for i in sorted(components)) or 'none'}",
            None,
            name,
        )

    u_vars = v = w = None
    if split_line is not None:
        if split_line.count("|") != 1:
            raise GermFileError("split must look like 'u1 u2 | v w'", split_lineno, name)
        left, right = split_line.split("|")
        u_list = left.replace(",", " ").split()
        vw = right.replace(",", " ").split()
        if len(vw) != 2:
            raise GermFileError("exactly two variables must follow '|'", split_lineno, name)
        declared = u_list + vw
        if sorted(declared) != sorted(names) or len(set(declared)) != len(declared):
            raise GermFileError(
                "split must mention every declared variable exactly once", split_lineno, name
            )
        u_vars, (v, w) = tuple(u_list), vw

    polys = []
    texts = []
    for idx in expected:
        src, lineno = components[idx]
        try:
            polys.append(parse_polynomial(src, ctx))
        except ParseError as exc:
            raise GermFileError(f"f{idx}: {exc}", lineno, name) from exc
        except UnknownVariableError as exc:
            raise GermFileError(f"f{idx}: {exc}", lineno, name) from exc
        texts.append(src)
    return GermFile(ctx, tuple(polys), tuple(texts), u_vars, v, w, options, name, digest)


def load_germ_file(path) -> GermFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise GermFileError(f"cannot read file: {exc.strerror}", None, str(path)) from exc
    return parse_germ_text(text, path.name)
