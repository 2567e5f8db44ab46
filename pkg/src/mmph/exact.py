"""Exact scalars over Q, Q(phi) and Q(w), plus the coordinatization container.

Every element is stored as ``a + b*t`` with rational ``a``, ``b`` where the
generator ``t`` satisfies

* ``rational``:   no generator, ``b`` is always 0
* ``golden``:     ``t = phi``, ``phi**2 = phi + 1``
* ``eisenstein``: ``t = w``,   ``w**2 = -1 - w`` (primitive cube root of unity)

Conjugation is the identity on the two real fields and ``w -> w**2`` on the
Eisenstein field, which is what the Hermitian product needs.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Literal, Mapping, Sequence, Union

Ring = Literal["rational", "golden", "eisenstein"]
RINGS: tuple[Ring, ...] = ("rational", "golden", "eisenstein")

Number = Union[int, Fraction]


class RingMismatch(TypeError):
    pass


def _check_ring(ring: str) -> Ring:
    if ring not in RINGS:
        raise ValueError(f"unknown ring {ring!r}; expected one of {', '.join(RINGS)}")
    return ring  # type: ignore[return-value]


class ExactScalar:
    """Immutable element ``a + b*t`` of one of the three supported fields."""

    __slots__ = ("ring", "a", "b", "_hash")

    def __init__(self, ring: Ring, a: Number = 0, b: Number = 0) -> None:
        ring = _check_ring(ring)
        a, b = Fraction(a), Fraction(b)
        if ring == "rational" and b:
            raise ValueError("rational scalars have no generator part")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "_hash", hash((ring, a, b)))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, ring: Ring) -> ExactScalar:
        return cls(ring)

    @classmethod
    def one(cls, ring: Ring) -> ExactScalar:
        return cls(ring, 1)

    @classmethod
    def generator(cls, ring: Ring) -> ExactScalar:
        if ring == "rational":
            raise ValueError("the rational field has no generator")
        return cls(ring, 0, 1)

    # -- helpers ----------------------------------------------------------
    def _coerce(self, other) -> ExactScalar:
        if isinstance(other, ExactScalar):
            if other.ring != self.ring:
                raise RingMismatch(f"cannot combine {self.ring} with {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar(self.ring, other)
        return NotImplemented  # type: ignore[return-value]

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not self.b

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ExactScalar(self.ring, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> ExactScalar:
        return ExactScalar(self.ring, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ExactScalar(self.ring, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.a, self.b, o.a, o.b
        if self.ring == "golden":
            # (a + b phi)(c + d phi) with phi^2 = phi + 1
            return ExactScalar("golden", a * c + b * d, a * d + b * c + b * d)
        if self.ring == "eisenstein":
            # (a + b w)(c + d w) with w^2 = -1 - w
            return ExactScalar("eisenstein", a * c - b * d, a * d + b * c - b * d)
        return ExactScalar("rational", a * c)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``x * conj_field(x)``; nonzero iff ``x`` is nonzero."""
        a, b = self.a, self.b
        if self.ring == "golden":
            return a * a + a * b - b * b
        if self.ring == "eisenstein":
            return a * a - a * b + b * b
        return a * a

    def inverse(self) -> ExactScalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        a, b, n = self.a, self.b, self.norm()
        if self.ring == "golden":
            # Galois conjugate of a + b phi is (a + b) - b phi
            return ExactScalar("golden", (a + b) / n, -b / n)
        if self.ring == "eisenstein":
            return ExactScalar("eisenstein", (a - b) / n, -b / n)
        return ExactScalar("rational", 1 / a)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int) -> ExactScalar:
        if k < 0:
            return self.inverse() ** (-k)
        result = ExactScalar.one(self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> ExactScalar:
        if self.ring == "eisenstein":
            return ExactScalar("eisenstein", self.a - self.b, -self.b)
        return self

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, ExactScalar):
            return (self.ring, self.a, self.b) == (other.ring, other.a, other.b)
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.a, self.b)

    # -- formatting -------------------------------------------------------
    def __repr__(self) -> str:
        return f"ExactScalar({self.ring!r}, {self.a}, {self.b})"

    def __str__(self) -> str:
        return format_scalar(self)

    def __complex__(self) -> complex:
        a, b = float(self.a), float(self.b)
        if self.ring == "golden":
            return complex(a + b * PHI_FLOAT)
        if self.ring == "eisenstein":
            return complex(a - b / 2, b * 3**0.5 / 2)
        return complex(a)


PHI_FLOAT = (1 + 5**0.5) / 2

_GEN_TOKEN = {"golden": "phi", "eisenstein": "w"}


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_scalar(x: ExactScalar) -> str:
    """Render in the coordinatization grammar, e.g. ``phi-1``, ``-2``, ``w2``."""
    a, b = x.a, x.b
    if x.ring == "eisenstein":
        # w^2 = -1 - w, so a + b w with a == b reads as -a * w2
        if a == b and a:
            c = -a
            if c == 1:
                return "w2"
            if c == -1:
                return "-w2"
            return f"{_fmt_coef(c)}w2"
    if not b:
        return _fmt_coef(a)
    gen = _GEN_TOKEN[x.ring]
    if b == 1:
        gen_term = gen
    elif b == -1:
        gen_term = "-" + gen
    else:
        gen_term = f"{_fmt_coef(b)}{gen}"
    if not a:
        return gen_term
    tail = f"-{_fmt_coef(-a)}" if a < 0 else f"+{_fmt_coef(a)}"
    return gen_term + tail


_TERM_RE = re.compile(r"([+-]?)(\d+(?:/\d+)?)?\*?(phi|w2|w)?")


class ScalarSyntaxError(ValueError):
    pass


def parse_scalar(text: str, ring: Ring) -> ExactScalar:
    """Parse a signed expression of at most two terms.

    Terms are integers (optionally ``p/q``), or the tokens ``phi``, ``w``,
    ``w2`` with an optional integer coefficient (``2phi``, ``3*w``).
    """
    ring = _check_ring(ring)
    s = re.sub(r"\s*([-+*/])\s*", r"\1", text.strip())
    if not s:
        raise ScalarSyntaxError("empty component")
    if any(ch.isspace() for ch in s):
        raise ScalarSyntaxError(f"stray whitespace in component {text!r}")
    pos, terms = 0, []
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ScalarSyntaxError(f"unknown token in component {text!r} at {s[pos:]!r}")
        if terms and not m.group(1):
            raise ScalarSyntaxError(f"missing operator in component {text!r}")
        terms.append(m.groups())
        pos = m.end()
    if len(terms) > 2:
        raise ScalarSyntaxError(f"component {text!r} has more than two terms")
    total = ExactScalar(ring)
    for sign, coef, tok in terms:
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        if tok is None:
            total = total + c
            continue
        if tok == "phi" and ring != "golden":
            raise ScalarSyntaxError(f"token 'phi' is not valid in ring {ring}")
        if tok in ("w", "w2") and ring != "eisenstein":
            raise ScalarSyntaxError(f"token {tok!r} is not valid in ring {ring}")
        g = ExactScalar.generator(ring)
        total = total + c * (g * g if tok == "w2" else g)
    return total


# -- vectors ----------------------------------------------------------------

ExactVector = tuple[ExactScalar, ...]


def vector(ring: Ring, values: Iterable) -> ExactVector:
    out = []
    for v in values:
        if isinstance(v, ExactScalar):
            if v.ring != ring:
                raise RingMismatch(f"component in {v.ring}, expected {ring}")
            out.append(v)
        elif isinstance(v, str):
            out.append(parse_scalar(v, ring))
        else:
            out.append(ExactScalar(ring, v))
    return tuple(out)


def is_zero_vector(v: Sequence[ExactScalar]) -> bool:
    return all(x.is_zero() for x in v)


def canonical(v: Sequence[ExactScalar]) -> ExactVector:
    """Projective representative: scale so the first nonzero component is 1."""
    for x in v:
        if not x.is_zero():
            inv = x.inverse()
            return tuple(inv * y for y in v)
    raise ValueError("the zero vector has no projective representative")


def integral_coordinates(v: Sequence[ExactScalar]) -> tuple[list[int], list[int]]:
    """Scale ``v`` by a positive integer so every ``a``/``b`` part is integral.

    Zero tests of bilinear forms are invariant under the scaling, which lets
    the orthogonality graph be computed with integer matrix products.
    """
    den = 1
    for x in v:
        den = lcm(den, x.a.denominator, x.b.denominator)
    return [int(x.a * den) for x in v], [int(x.b * den) for x in v]


def format_vector(v: Sequence[ExactScalar]) -> str:
    return "(" + ",".join(format_scalar(x) for x in v) + ")"


@dataclass(frozen=True)
class Coordinatization:
    """Map from vertex labels to exact vectors of one ring and length."""

    ring: Ring
    dimension: int
    vectors: Mapping[str, ExactVector] = field(default_factory=dict)

    def __post_init__(self) -> None:
        _check_ring(self.ring)
        for label, v in self.vectors.items():
            if len(v) != self.dimension:
                raise ValueError(
                    f"vector for {label!r} has length {len(v)}, expected {self.dimension}"
                )
            if any(x.ring != self.ring for x in v):
                raise RingMismatch(f"vector for {label!r} is not over {self.ring}")
            if is_zero_vector(v):
                raise ValueError(f"vertex {label!r} is mapped to the zero vector")

    def __getitem__(self, label: str) -> ExactVector:
        return self.vectors[label]

    def __contains__(self, label: object) -> bool:
        return label in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def restrict(self, labels: Iterable[str]) -> Coordinatization:
        return Coordinatization(
            self.ring, self.dimension, {lab: self.vectors[lab] for lab in labels}
        )
