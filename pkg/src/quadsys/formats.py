"""Line-oriented text formats for designs, resolutions, and star certificates.

All files are UTF-8 with LF line endings, '#' starts a comment, tokens are
whitespace-separated.  Lines beginning with a structural keyword (KIND, T,
V, K, POINTS, GROUP, POINT, CLASS, SPECIAL, COMMON) carry structure; every
other non-empty line is a block, written as point labels.  Emission is
deterministic and canonical, so emit(parse(emit(x))) == emit(x) holds
byte-for-byte.

Resolutions and star certificates for the derived design at a point are
expressed in the ids of the parent design (the punctured point simply does
not occur); this keeps file labels, translation, and verification in one
coordinate system.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterable

from .core import (
    Block,
    Design,
    DesignError,
    Gdd,
    Label,
    Resolution,
    make_design,
    parse_label,
)
from .star import StarGroup, StarPointCertificate

_KEYWORDS = {"KIND", "T", "V", "K", "POINTS", "GROUP", "POINT", "CLASS", "SPECIAL", "COMMON"}
_DESIGN_KINDS = {"SQS", "STS", "GDD", "TD", "RAW"}


class ParseError(DesignError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _tokenized(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


# ---------------------------------------------------------------------------
# designs


def parse_design(text: str) -> Design | Gdd:
    kind = None
    t = None
    v = None
    sizes: list[int] = []
    labels: list[Label] = []
    groups: list[tuple[str, ...]] = []
    blocks: list[tuple[str, ...]] = []
    block_lines: list[int] = []
    for no, tok in _tokenized(text):
        key = tok[0]
        if key == "KIND":
            if tok[1] not in _DESIGN_KINDS:
                raise ParseError(f"unknown design kind {tok[1]!r}", no)
            kind = tok[1]
        elif key == "T":
            t = int(tok[1])
        elif key == "V":
            v = int(tok[1])
        elif key == "K":
            sizes = [int(x) for x in tok[1:]]
        elif key == "POINTS":
            labels.extend(parse_label(x) for x in tok[1:])
        elif key == "GROUP":
            groups.append(tuple(tok[1:]))
        elif key in _KEYWORDS:
            raise ParseError(f"{key} not valid in a design file", no)
        else:
            blocks.append(tuple(tok))
            block_lines.append(no)
    if kind is None or t is None or not sizes or not labels:
        raise ParseError("missing KIND, T, K, or POINTS header", 1)
    if v is not None and v != len(labels):
        raise ParseError(f"V {v} does not match {len(labels)} labels", 1)
    if len(set(labels)) != len(labels):
        raise ParseError("duplicate label in POINTS", 1)
    index = {lab.text: i for i, lab in enumerate(labels)}
    id_blocks = []
    for tok, no in zip(blocks, block_lines):
        try:
            ids = tuple(index[x] for x in tok)
        except KeyError as exc:
            raise ParseError(f"unknown label {exc.args[0]!r}", no) from None
        if len(set(ids)) != len(ids):
            raise ParseError("repeated point in block", no)
        if len(ids) not in sizes:
            raise ParseError(f"block size {len(ids)} not in K={sizes}", no)
        id_blocks.append(ids)
    design = make_design(t=t, sizes=sizes, labels=labels, blocks=id_blocks, kind=kind)
    if not groups:
        return design
    cells = []
    for cell in groups:
        try:
            cells.append(tuple(sorted(index[x] for x in cell)))
        except KeyError as exc:
            raise ParseError(f"unknown label {exc.args[0]!r} in GROUP", 1) from None
    return Gdd(design=design, groups=tuple(sorted(cells)))


def _blocks_text(design: Design, blocks: Iterable[Block]) -> list[str]:
    return [" ".join(design.labels[p].text for p in b) for b in blocks]


def emit_design(obj: Design | Gdd) -> str:
    gdd = obj if isinstance(obj, Gdd) else None
    design = gdd.design if gdd else obj
    lines = [
        f"KIND {design.kind}",
        f"T {design.t}",
        f"V {design.v}",
        "K " + " ".join(str(s) for s in sorted(design.sizes)),
        "POINTS " + " ".join(lab.text for lab in design.labels),
    ]
    if gdd:
        for cell in gdd.groups:
            lines.append("GROUP " + " ".join(design.labels[p].text for p in cell))
    lines.extend(_blocks_text(design, design.blocks))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# resolutions


def parse_resolution(text: str, companion: Design) -> dict[str, tuple[tuple[Block, ...], ...]]:
    """Per-point lists of classes, keyed by point label text.

    Classes are returned in file order; class membership of the companion
    design is *not* checked here (verification is the caller's job), but
    labels must resolve and classes within a point must not be ragged.
    """
    index = {lab.text: i for i, lab in enumerate(companion.labels)}
    sections: dict[str, list[list[Block]]] = {}
    current: list[list[Block]] | None = None
    cls: list[Block] | None = None
    last_point = None
    for no, tok in _tokenized(text):
        key = tok[0]
        if key == "KIND":
            if tok[1] != "RES":
                raise ParseError(f"expected KIND RES, got {tok[1]!r}", no)
        elif key == "POINT":
            if len(tok) != 2:
                raise ParseError("POINT takes exactly one label", no)
            _close_class(cls, no)
            if tok[1] not in index and tok[1] != "*":
                raise ParseError(f"unknown point label {tok[1]!r}", no)
            if tok[1] in sections:
                raise ParseError(f"duplicate POINT {tok[1]}", no)
            current = sections.setdefault(tok[1], [])
            last_point = tok[1]
            cls = None
        elif key == "CLASS":
            if current is None:
                raise ParseError("CLASS before any POINT", no)
            _close_class(cls, no)
            cls = []
            current.append(cls)
        elif key in _KEYWORDS:
            raise ParseError(f"{key} not valid in a resolution file", no)
        else:
            if cls is None:
                raise ParseError("block line outside a CLASS", no)
            try:
                cls.append(tuple(sorted(index[x] for x in tok)))
            except KeyError as exc:
                raise ParseError(f"unknown label {exc.args[0]!r}", no) from None
    _close_class(cls, -1)
    out = {}
    for point, classes in sections.items():
        arities = {len(c) for c in classes}
        if len(arities) > 1:
            raise ParseError(f"ragged classes at POINT {point}: sizes {sorted(arities)}", -1)
        out[point] = tuple(tuple(sorted(c)) for c in classes)
    if last_point is None:
        raise ParseError("no POINT section found", 1)
    return out


def _close_class(cls, no: int) -> None:
    if cls is not None and not cls:
        raise ParseError("empty CLASS section", no)


def emit_resolution(companion: Design, sections: dict[str, tuple[tuple[Block, ...], ...]]) -> str:
    lines = ["KIND RES"]
    for point, classes in sections.items():
        lines.append(f"POINT {point}")
        for cls in classes:
            lines.append("CLASS")
            lines.extend(_blocks_text(companion, sorted(cls)))
    return "\n".join(lines) + "\n"


def resolution_for_point(
    d: Design, x, classes: tuple[tuple[Block, ...], ...]
) -> Resolution:
    """A Resolution object for the derived design at x, in parent ids."""
    xid = d.point(x)
    ground = tuple(p for p in range(d.v) if p != xid)
    target = tuple(
        sorted(tuple(p for p in b if p != xid) for b in d.blocks if xid in b)
    )
    return Resolution(ground=ground, classes=classes, target=target)


def gdd_resolution_for_point(
    g: Gdd, x, classes: tuple[tuple[Block, ...], ...]
) -> Resolution:
    """Derived-GDD resolution frame: the whole group of x leaves the ground."""
    d = g.design
    xid = d.point(x)
    drop = set(g.groups[g.group_of[xid]])
    ground = tuple(p for p in range(d.v) if p not in drop)
    target = tuple(
        sorted(tuple(p for p in b if p != xid) for b in d.blocks if xid in b)
    )
    return Resolution(ground=ground, classes=classes, target=target)


# ---------------------------------------------------------------------------
# star certificates


def parse_star(text: str, companion: Design) -> dict[str, StarPointCertificate]:
    """Seed star-point certificates keyed by point label text."""
    index = {lab.text: i for i, lab in enumerate(companion.labels)}
    n_class = (companion.v - 1) // 3

    points: dict[str, StarPointCertificate] = {}
    point = None
    special: list[Block] | None = None
    groups: list[StarGroup] | None = None
    common: Block | None = None
    classes: list[list[Block]] | None = None
    mode = None

    def parse_block(tok, no) -> Block:
        try:
            return tuple(sorted(index[x] for x in tok))
        except KeyError as exc:
            raise ParseError(f"unknown label {exc.args[0]!r}", no) from None

    def close_group(no: int) -> None:
        nonlocal common, classes
        if common is None:
            return
        if classes is None or len(classes) != 3:
            raise ParseError("each GROUP needs exactly 3 CLASS sections", no)
        for c in classes:
            if len(c) != n_class:
                raise ParseError(
                    f"class has {len(c)} triples, expected {n_class}", no
                )
        groups.append(StarGroup(common=common, classes=tuple(tuple(c) for c in classes)))
        common, classes = None, None

    def close_point(no: int) -> None:
        nonlocal point, special, groups
        if point is None:
            return
        close_group(no)
        if special is None or len(special) != n_class:
            raise ParseError(f"SPECIAL class needs {n_class} triples", no)
        if len(groups) != n_class:
            raise ParseError(f"expected {n_class} GROUP sections, got {len(groups)}", no)
        points[point] = StarPointCertificate(
            point=index[point], special=tuple(special), groups=tuple(groups)
        )
        point, special, groups = None, None, None

    for no, tok in _tokenized(text):
        key = tok[0]
        if key == "KIND":
            if tok[1] != "STAR":
                raise ParseError(f"expected KIND STAR, got {tok[1]!r}", no)
        elif key == "POINT":
            close_point(no)
            if tok[1] not in index:
                raise ParseError(f"unknown point label {tok[1]!r}", no)
            point, special, groups = tok[1], None, []
            mode = None
        elif key == "SPECIAL":
            special = []
            mode = "special"
        elif key == "GROUP":
            close_group(no)
            mode = None
        elif key == "COMMON":
            common = parse_block(tok[1:], no)
            classes = []
            mode = None
        elif key == "CLASS":
            if classes is None:
                raise ParseError("CLASS before COMMON in a GROUP", no)
            classes.append([])
            mode = "class"
        elif key in _KEYWORDS:
            raise ParseError(f"{key} not valid in a star file", no)
        else:
            b = parse_block(tok, no)
            if mode == "special":
                special.append(b)
            elif mode == "class" and classes:
                classes[-1].append(b)
            else:
                raise ParseError("block line outside SPECIAL or CLASS", no)
    close_point(-1)
    if not points:
        raise ParseError("no POINT section found", 1)
    return points


def emit_star(companion: Design, certs: dict[str, StarPointCertificate]) -> str:
    lines = ["KIND STAR"]
    for point, cert in certs.items():
        lines.append(f"POINT {point}")
        lines.append("SPECIAL")
        lines.extend(_blocks_text(companion, cert.special))
        for gi, grp in enumerate(cert.groups, start=1):
            lines.append(f"GROUP {gi}")
            lines.append(
                "COMMON " + " ".join(companion.labels[p].text for p in grp.common)
            )
            for cls in grp.classes:
                lines.append("CLASS")
                lines.extend(_blocks_text(companion, sorted(cls)))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# data directory


def data_dir() -> Path:
    override = os.environ.get("DESIGN_DATA_DIR")
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "data"


def read_data(name: str) -> str:
    return (data_dir() / name).read_text(encoding="utf-8")
