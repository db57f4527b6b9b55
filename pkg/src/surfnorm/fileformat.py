"""Text surface files and JSON helpers.

Surface file (UTF-8, one surface per file)::

    surface klein
    face a b a -b
    weight b 3/2          # default 1/1
    prescribe 1/1 b       # optional: target then cycle tokens
    map project edge a.0 a    # optional audit lines written for covers

``#`` starts a comment.  Rationals are written ``p/q`` everywhere, including JSON.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import SurfaceSyntaxError
from .surface import SurfaceComplex, _token


@dataclass
class SurfaceDocument:
    surface: SurfaceComplex
    prescriptions: list = field(default_factory=list)  # [(Fraction, [tokens])]
    maps: list = field(default_factory=list)  # [(kind, cell, source, target)]


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise SurfaceSyntaxError(f"bad rational {text!r}") from None


def parse_document(text: str) -> SurfaceDocument:
    name = None
    faces = []
    weights = {}
    prescriptions = []
    maps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        where = f"line {lineno}"
        if key == "surface":
            if len(rest) != 1 or name is not None:
                raise SurfaceSyntaxError(f"{where}: expected exactly one 'surface <name>'")
            name = rest[0]
        elif key == "face":
            if not rest:
                raise SurfaceSyntaxError(f"{where}: empty face")
            faces.append([_token(t) for t in rest])
        elif key == "weight":
            if len(rest) != 2:
                raise SurfaceSyntaxError(f"{where}: expected 'weight <label> <p>/<q>'")
            lab, _ = _token(rest[0])
            if lab in weights:
                raise SurfaceSyntaxError(f"{where}: weight of {lab!r} given twice")
            weights[lab] = parse_rational(rest[1])
        elif key == "prescribe":
            if len(rest) < 2:
                raise SurfaceSyntaxError(f"{where}: expected 'prescribe <p>/<q> <tok> ...'")
            prescriptions.append((parse_rational(rest[0]), [_token(t) for t in rest[1:]]))
        elif key == "map":
            if len(rest) != 4:
                raise SurfaceSyntaxError(f"{where}: expected 'map <kind> <cell> <from> <to>'")
            maps.append(tuple(rest))
        else:
            raise SurfaceSyntaxError(f"{where}: unknown directive {key!r}")
    if not faces:
        raise SurfaceSyntaxError("no faces")
    S = SurfaceComplex.build(faces, weights, name or "surface")
    return SurfaceDocument(S, prescriptions, maps)


def parse_surface(text: str) -> SurfaceComplex:
    return parse_document(text).surface


def load_document(path) -> SurfaceDocument:
    return parse_document(Path(path).read_text(encoding="utf-8"))


def load_surface(path) -> SurfaceComplex:
    return load_document(path).surface


def _tok(lab, sign):
    return lab if sign == 1 else "-" + lab


def serialize_surface(S: SurfaceComplex, prescriptions=(), maps=()) -> str:
    lines = [f"surface {S.name}"]
    for word in S.faces:
        lines.append("face " + " ".join(_tok(l, s) for l, s in word))
    for lab, w in zip(S.labels, S.weights):
        lines.append(f"weight {lab} {w.numerator}/{w.denominator}")
    for target, toks in prescriptions:
        body = " ".join(_tok(*_token(t)) for t in toks)
        lines.append(f"prescribe {target.numerator}/{target.denominator} {body}")
    for m in maps:
        lines.append("map " + " ".join(str(x) for x in m))
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------- JSON

def rat(x) -> str:
    return str(Fraction(x))


def rats(xs) -> list:
    return [rat(x) for x in xs]


def parse_class(text: str) -> list[Fraction]:
    """``"1/2,3"`` -> [1/2, 3]."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise SurfaceSyntaxError("empty class vector")
    return [parse_rational(p) for p in parts]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# --------------------------------------------------------------- corpus

CORPUS_DIR = Path(__file__).with_name("corpus")


def corpus_names() -> list[str]:
    return sorted(p.stem for p in CORPUS_DIR.glob("*.srf"))


def corpus_path(name: str) -> Path:
    path = CORPUS_DIR / f"{name}.srf"
    if not path.exists():
        raise FileNotFoundError(path)
    return path


def load_corpus(name: str) -> SurfaceComplex:
    return load_surface(corpus_path(name))
