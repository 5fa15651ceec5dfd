"""Reader for the plain-text system format.

    # comment
    vars: x1 x2 x3
    weight: 3 4 7        (optional)
    g: x1^5 + x2^3 + x3^2 - 1
    ...
"""

from __future__ import annotations

from pathlib import Path

from .errors import ContextError, ParseError
from .poly import PolySystem, parse_polynomial


def parse_system_text(text: str) -> tuple[PolySystem, tuple | None]:
    variables = None
    weight = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise ParseError("expected 'vars:', 'weight:' or 'g:'", raw, 0, lineno)
        offset = raw.index(":") + 1
        if key == "vars":
            if variables is not None:
                raise ParseError("duplicate vars line", raw, 0, lineno)
            variables = tuple(rest.split())
            if not variables:
                raise ParseError("no variables declared", raw, offset, lineno)
        elif key == "weight":
            if weight is not None:
                raise ParseError("duplicate weight line", raw, 0, lineno)
            try:
                weight = tuple(int(x) for x in rest.split())
            except ValueError:
                raise ParseError("weights must be integers", raw, offset, lineno) from None
            if any(x < 1 for x in weight):
                raise ParseError("weights must be positive", raw, offset, lineno)
        elif key == "g":
            if variables is None:
                raise ParseError("generator before the vars line", raw, 0, lineno)
            try:
                gens.append(parse_polynomial(rest, variables))
            except ParseError as exc:
                pos = None if exc.position is None else exc.position + offset
                raise ParseError(exc.reason, raw, pos, lineno) from None
        else:
            raise ParseError(f"unknown key {key!r}", raw, 0, lineno)
    if variables is None:
        raise ParseError("missing vars line")
    if weight is not None and len(weight) != len(variables):
        raise ParseError(f"weight has {len(weight)} entries for {len(variables)} variables")
    if len(gens) != len(variables):
        raise ParseError(f"{len(gens)} generators for {len(variables)} variables")
    try:
        sys = PolySystem(variables, tuple(gens))
    except ContextError as exc:
        raise ParseError(str(exc)) from None
    return sys, weight


def parse_system_file(path) -> tuple[PolySystem, tuple | None]:
    """Read a system file; returns the system and the declared weight (or None)."""
    return parse_system_text(Path(path).read_text(encoding="utf-8"))


def bundled_system(name: str = "worked_example") -> Path:
    """Path of a system file shipped with the package."""
    return Path(__file__).with_name("data") / f"{name}.sys"
