"""Potential functions V(x) confined between two infinite walls.

Every potential lives on a closed interval ``[a, b]``; outside of it the
potential is infinite, so only interior values are ever evaluated.

The text form accepted by :func:`parse_potential` is::

    squarewell
    harmonic
    poly:<c>*x^<k>(+<c>*x^<k>)*
    morse:<V0>,<lambda>
    table:<filepath>

Tabulated files hold one ``x V`` pair per line; ``#`` starts a comment.
"""
from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, ParseError, ValidationError

__all__ = [
    "Kind",
    "PotentialSpec",
    "evaluate",
    "parse_potential",
    "render",
    "load_table",
    "square_well",
    "harmonic",
    "polynomial",
    "morse",
    "tabulated",
]


class Kind(enum.Enum):
    SQUARE_WELL = "squarewell"
    HARMONIC = "harmonic"
    POLYNOMIAL = "poly"
    MORSE = "morse"
    TABULATED = "table"


@dataclass(frozen=True)
class PotentialSpec:
    """Declarative description of a walled potential.

    ``coefficients`` depends on ``kind``: for ``POLYNOMIAL`` it is a tuple of
    ``(exponent, coefficient)`` pairs; for ``MORSE`` it is ``(V0, lam)``;
    empty otherwise.  ``table`` is only set for ``TABULATED`` and ``source``
    remembers the file it came from.
    """

    kind: Kind
    a: float
    b: float
    coefficients: tuple = ()
    table: tuple | None = None
    source: str | None = None

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise ValidationError("walls", "wall positions must be finite")
        if not b > a:
            raise ValidationError("walls", f"need b > a, got a={a!r}, b={b!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

        if self.kind is Kind.POLYNOMIAL:
            pairs = tuple((int(k), float(c)) for k, c in self.coefficients)
            if not pairs:
                raise ValidationError("coefficients", "polynomial needs at least one term")
            for k, c in pairs:
                if k < 0:
                    raise ValidationError("coefficients", f"negative exponent {k}")
                if not math.isfinite(c):
                    raise ValidationError("coefficients", f"non-finite coefficient {c!r}")
            object.__setattr__(self, "coefficients", pairs)
        elif self.kind is Kind.MORSE:
            if len(self.coefficients) != 2:
                raise ValidationError("coefficients", "Morse takes (V0, lambda)")
            v0, lam = (float(v) for v in self.coefficients)
            if not (v0 > 0 and math.isfinite(v0)):
                raise ValidationError("V0", f"depth must be positive, got {v0!r}")
            if not (lam > 0 and math.isfinite(lam)):
                raise ValidationError("lambda", f"range parameter must be positive, got {lam!r}")
            object.__setattr__(self, "coefficients", (v0, lam))
        elif self.coefficients:
            raise ValidationError("coefficients", f"{self.kind.value} takes no coefficients")

        if self.kind is Kind.TABULATED:
            if self.table is None:
                raise ValidationError("table", "tabulated potential needs a table")
            table = tuple((float(x), float(v)) for x, v in self.table)
            _check_table(table, a, b)
            object.__setattr__(self, "table", table)
        elif self.table is not None:
            raise ValidationError("table", f"{self.kind.value} takes no table")

    @property
    def half_width(self):
        return 0.5 * (self.b - self.a)

    def __call__(self, x):
        return evaluate(self, x)


def _check_table(table, a, b):
    if len(table) < 2:
        raise ValidationError("table", "need at least two points")
    xs = np.array([p[0] for p in table])
    vs = np.array([p[1] for p in table])
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(vs))):
        raise ValidationError("table", "non-finite entry")
    if np.any(np.diff(xs) <= 0):
        raise ValidationError("table", "x values must be strictly increasing")
    if xs[0] > a or xs[-1] < b:
        raise ValidationError(
            "table", f"table spans [{xs[0]}, {xs[-1]}], which does not cover [{a}, {b}]"
        )


def square_well(a, b):
    return PotentialSpec(Kind.SQUARE_WELL, a, b)


def harmonic(a, b):
    return PotentialSpec(Kind.HARMONIC, a, b)


def polynomial(terms, a, b):
    """``terms`` is an iterable of ``(exponent, coefficient)`` pairs."""
    return PotentialSpec(Kind.POLYNOMIAL, a, b, coefficients=tuple(terms))


def morse(v0, lam, a, b):
    return PotentialSpec(Kind.MORSE, a, b, coefficients=(v0, lam))


def tabulated(table, a, b, source=None):
    return PotentialSpec(Kind.TABULATED, a, b, table=tuple(table), source=source)


def evaluate(spec: PotentialSpec, x):
    """Value of the potential at ``x`` (scalar or array) inside ``[a, b]``."""
    xa = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(xa)) or np.any(xa < spec.a) or np.any(xa > spec.b):
        raise DomainError(f"x outside the walls [{spec.a}, {spec.b}]")

    kind = spec.kind
    if kind is Kind.SQUARE_WELL:
        out = np.zeros_like(xa)
    elif kind is Kind.HARMONIC:
        out = xa * xa
    elif kind is Kind.POLYNOMIAL:
        out = np.zeros_like(xa)
        for k, c in spec.coefficients:
            out = out + c * xa**k
    elif kind is Kind.MORSE:
        v0, lam = spec.coefficients
        out = v0 * (-np.expm1(-lam * xa)) ** 2
    else:
        xs, vs = np.array(spec.table).T
        out = np.interp(xa, xs, vs)

    if np.ndim(x) == 0:
        return float(out)
    return out


def load_table(path):
    """Read ``x V`` pairs from a text file, skipping blanks and ``#`` comments."""
    rows = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValidationError("table", f"{path}:{lineno}: expected 'x V', got {line!r}")
        try:
            rows.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise ValidationError("table", f"{path}:{lineno}: not a number in {line!r}") from None
    return tuple(rows)


_NUMBER = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_TERM = re.compile(rf"({_NUMBER})\*x\^(\d+)")
_NUMBER_RE = re.compile(_NUMBER)


def _parse_poly(text, body, offset):
    terms = []
    pos = 0
    while True:
        m = _TERM.match(body, pos)
        if m is None:
            raise ParseError("expected '<c>*x^<k>'", text, offset + pos)
        terms.append((int(m.group(2)), float(m.group(1))))
        pos = m.end()
        if pos == len(body):
            return terms
        if body[pos] != "+":
            raise ParseError("expected '+' between terms", text, offset + pos)
        pos += 1


def _parse_number(text, body, offset, start):
    m = _NUMBER_RE.match(body, start)
    if m is None:
        raise ParseError("expected a number", text, offset + start)
    return float(m.group(0)), m.end()


def parse_potential(text: str, a: float = -1.0, b: float = 1.0) -> PotentialSpec:
    """Build a :class:`PotentialSpec` from its text form.

    The walls are not part of the grammar and are passed separately.

    >>> parse_potential("poly:1*x^2+1*x^6").coefficients
    ((2, 1.0), (6, 1.0))
    """
    text = text.strip()
    head, sep, body = text.partition(":")
    offset = len(head) + len(sep)

    if head in ("squarewell", "harmonic"):
        if sep:
            raise ParseError(f"{head!r} takes no arguments", text, len(head))
        return PotentialSpec(Kind(head), a, b)
    if not sep:
        raise ParseError(f"unknown potential {head!r}", text, 0)

    if head == "poly":
        return polynomial(_parse_poly(text, body, offset), a, b)
    if head == "morse":
        v0, pos = _parse_number(text, body, offset, 0)
        if pos >= len(body) or body[pos] != ",":
            raise ParseError("expected ','", text, offset + pos)
        lam, pos = _parse_number(text, body, offset, pos + 1)
        if pos != len(body):
            raise ParseError("trailing characters", text, offset + pos)
        return morse(v0, lam, a, b)
    if head == "table":
        if not body:
            raise ParseError("missing file path", text, offset)
        try:
            table = load_table(body)
        except OSError as exc:
            raise ValidationError("table", f"cannot read {body!r}: {exc}") from None
        return tabulated(table, a, b, source=body)
    raise ParseError(f"unknown potential {head!r}", text, 0)


def _fmt(v):
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


def render(spec: PotentialSpec) -> str:
    """Canonical text form; ``parse_potential(render(s), s.a, s.b) == s``."""
    if spec.kind in (Kind.SQUARE_WELL, Kind.HARMONIC):
        return spec.kind.value
    if spec.kind is Kind.POLYNOMIAL:
        return "poly:" + "+".join(f"{_fmt(c)}*x^{k}" for k, c in spec.coefficients)
    if spec.kind is Kind.MORSE:
        v0, lam = spec.coefficients
        return f"morse:{_fmt(v0)},{_fmt(lam)}"
    if spec.source is None:
        raise ValidationError("source", "tabulated potential was not loaded from a file")
    return f"table:{spec.source}"
