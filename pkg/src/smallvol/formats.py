"""Line-oriented text formats for gluing systems, presentations and scripts.

All three formats are UTF-8 with ``#`` comments.  Gluing files:

    tets N
    shape <idx> <re> <im>          (one per tetrahedron)
    eq a_1 .. a_n ; b_1 .. b_n ; c (any number, at least N)

Presentation files:

    gens a b c
    rel <word>                     (word syntax: ab-1a-2b-1ab2)

Script files hold one proof step per line; see the grouptool engine for
the step grammar.  Serializers emit a canonical form whose reparse is
identical to the original parse.
"""

from __future__ import annotations

from .certify import GluingEquation, GluingSystem
from .grouptool.engine import ProofScript
from .grouptool.presentation import Presentation


class FormatError(ValueError):
    """Malformed input file."""


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_gluing(text: str) -> GluingSystem:
    n = None
    shapes = {}
    equations = []
    for lineno, line in _content_lines(text):
        parts = line.split()
        try:
            if parts[0] == "tets":
                n = int(parts[1])
            elif parts[0] == "shape":
                idx = int(parts[1])
                shapes[idx] = complex(float(parts[2]), float(parts[3]))
            elif parts[0] == "eq":
                body = " ".join(parts[1:])
                a_s, b_s, c_s = (seg.strip() for seg in body.split(";"))
                equations.append(GluingEquation(
                    tuple(int(x) for x in a_s.split()),
                    tuple(int(x) for x in b_s.split()),
                    int(c_s),
                ))
            else:
                raise FormatError(f"line {lineno}: unknown directive {parts[0]!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(f"line {lineno}: {exc}") from exc
    if n is None:
        raise FormatError("missing 'tets' line")
    if sorted(shapes) != list(range(n)):
        raise FormatError(f"need shapes 0..{n - 1}, got {sorted(shapes)}")
    try:
        return GluingSystem(tuple(equations), tuple(shapes[i] for i in range(n)))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def serialize_gluing(sys: GluingSystem) -> str:
    out = [f"tets {sys.n}"]
    for i, z in enumerate(sys.shapes):
        out.append(f"shape {i} {z.real!r} {z.imag!r}")
    for eq in sys.equations:
        out.append("eq " + " ".join(str(x) for x in eq.a)
                   + " ; " + " ".join(str(x) for x in eq.b)
                   + f" ; {eq.c}")
    return "\n".join(out) + "\n"


def parse_presentation(text: str) -> Presentation:
    gens = None
    rel_texts = []
    for lineno, line in _content_lines(text):
        parts = line.split()
        if parts[0] == "gens":
            if gens is not None:
                raise FormatError(f"line {lineno}: duplicate 'gens' line")
            gens = tuple(parts[1:])
        elif parts[0] == "rel":
            if len(parts) != 2:
                raise FormatError(f"line {lineno}: 'rel' takes one word")
            rel_texts.append(parts[1])
        else:
            raise FormatError(f"line {lineno}: unknown directive {parts[0]!r}")
    if gens is None:
        raise FormatError("missing 'gens' line")
    try:
        return Presentation.from_strings(gens, rel_texts)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def serialize_presentation(p: Presentation) -> str:
    out = ["gens " + " ".join(p.generators)]
    for r in p.relators:
        out.append("rel " + p.word_text(r))
    return "\n".join(out) + "\n"


def parse_script(text: str) -> ProofScript:
    return ProofScript.parse(text)


def serialize_script(s: ProofScript) -> str:
    return s.serialize()
