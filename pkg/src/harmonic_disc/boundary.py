"""Dirichlet boundary data on the circle and its Fourier expansion.

Boundary data comes in two flavours:

* closed form -- a small expression tree built from constants, ``cos(k*t)``,
  ``sin(k*t)``, scalar multiples and sums (``t`` is the polar angle);
* sampled -- ``M`` intensities at the uniform angles ``2*pi*j/M``.

The constant term of a Fourier expansion is the *mean* of ``f`` throughout
this package, i.e. ``f = a0 + sum(a_n cos n t + b_n sin n t)``.
"""
from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from .errors import BoundarySpecError
from .polar import TWO_PI

# ---------------------------------------------------------------------------
# expression tree


class Node:
    """Base class of closed-form boundary expressions."""

    def value(self, theta):
        raise NotImplementedError

    def harmonics(self) -> dict[tuple[str, int], float]:
        """Flatten to ``{("const", 0) | ("cos", k) | ("sin", k): coefficient}``."""
        raise NotImplementedError

    def __add__(self, other: "Node") -> "Sum":
        return Sum((self, other))

    def __rmul__(self, scalar: float) -> "Scale":
        return Scale(float(scalar), self)


@dataclass(frozen=True)
class Const(Node):
    c: float

    def value(self, theta):
        return np.full(np.shape(theta), self.c, dtype=float) if np.ndim(theta) else self.c

    def harmonics(self):
        return {("const", 0): self.c}

    def __str__(self):
        return repr(self.c)


@dataclass(frozen=True)
class Harmonic(Node):
    kind: str  # "cos" or "sin"
    k: int

    def __post_init__(self):
        if self.kind not in ("cos", "sin"):
            raise BoundarySpecError(f"unknown harmonic {self.kind!r}")
        if not isinstance(self.k, (int, np.integer)) or isinstance(self.k, bool) or self.k < 0:
            raise BoundarySpecError(f"harmonic index must be an integer >= 0, got {self.k!r}")

    def value(self, theta):
        fn = np.cos if self.kind == "cos" else np.sin
        return fn(self.k * np.asarray(theta, dtype=float)) if np.ndim(theta) else float(fn(self.k * theta))

    def harmonics(self):
        if self.k == 0:
            return {("const", 0): 1.0} if self.kind == "cos" else {}
        return {(self.kind, int(self.k)): 1.0}

    def __str__(self):
        return f"{self.kind}({self.k}*t)"


@dataclass(frozen=True)
class Scale(Node):
    a: float
    term: Node

    def value(self, theta):
        return self.a * self.term.value(theta)

    def harmonics(self):
        return {key: self.a * c for key, c in self.term.harmonics().items()}

    def __str__(self):
        return f"{self.a!r}*({self.term})"


@dataclass(frozen=True)
class Sum(Node):
    terms: tuple

    def value(self, theta):
        total = 0.0
        for t in self.terms:
            total = total + t.value(theta)
        return total

    def harmonics(self):
        out: dict[tuple[str, int], float] = {}
        for t in self.terms:
            for key, c in t.harmonics().items():
                out[key] = out.get(key, 0.0) + c
        return out

    def __str__(self):
        return " + ".join(str(t) for t in self.terms)


# ---------------------------------------------------------------------------
# parser for  c | sin(k*t) | cos(k*t) | a*TERM | TERM + TERM

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]+)|(?P<op>[-+*()]))"
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise BoundarySpecError(f"unexpected character at {pos} in {text!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise BoundarySpecError(f"expected {value or 'a token'} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> Node:
        if not self.tokens:
            raise BoundarySpecError("empty boundary expression")
        node = self.expr()
        if self.i != len(self.tokens):
            raise BoundarySpecError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return node

    def expr(self) -> Node:
        terms = [self.term()]
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            terms.append(t if op == "+" else Scale(-1.0, t))
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> Node:
        sign = 1.0
        while self.peek()[1] in ("+", "-"):
            if self.take()[1] == "-":
                sign = -sign
        scalar, node = sign, None
        for factor in self.factors():
            if isinstance(factor, float):
                scalar *= factor
            elif node is None:
                node = factor
            else:
                raise BoundarySpecError(f"product of two non-constant terms in {self.text!r}")
        if node is None:
            return Const(scalar)
        return node if scalar == 1.0 else Scale(scalar, node)

    def factors(self):
        yield self.factor()
        while self.peek()[1] == "*":
            self.take("*")
            yield self.factor()

    def factor(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return float(val)
        if kind == "name" and val in ("sin", "cos"):
            self.take()
            self.take("(")
            k = self.harmonic_arg()
            self.take(")")
            return Harmonic(val, k)
        if kind == "name" and val == "pi":
            self.take()
            return math.pi
        if val == "(":
            self.take("(")
            node = self.expr()
            self.take(")")
            return node
        raise BoundarySpecError(f"unexpected token {val!r} in {self.text!r}")

    def harmonic_arg(self) -> int:
        kind, val = self.peek()
        if kind == "name" and val == "t":
            self.take()
            return 1
        if kind == "num":
            self.take()
            k = float(val)
            if k != int(k) or k < 0:
                raise BoundarySpecError(f"harmonic index must be a non-negative integer, got {val}")
            self.take("*")
            self.take("t")
            return int(k)
        raise BoundarySpecError(f"harmonic argument must be 't' or 'k*t' in {self.text!r}")


def parse_expression(text: str) -> Node:
    """Parse a boundary expression such as ``"cos(t) + 3*sin(3*t)"``."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# boundary specs


@dataclass(frozen=True)
class BoundarySpec:
    kind: str  # "closed_form" or "sampled"
    closed_form: Node | None = None
    samples: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind == "closed_form":
            if not isinstance(self.closed_form, Node) or self.samples is not None:
                raise BoundarySpecError("closed-form spec needs an expression tree and no samples")
        elif self.kind == "sampled":
            if self.closed_form is not None or self.samples is None:
                raise BoundarySpecError("sampled spec needs samples and no expression")
            s = np.array(self.samples, dtype=float)
            if s.ndim != 1:
                raise BoundarySpecError("samples must be one-dimensional")
            if len(s) < 4 or len(s) % 2:
                raise BoundarySpecError(f"need an even number M >= 4 of samples, got {len(s)}")
            if not np.all(np.isfinite(s)):
                raise BoundarySpecError("samples must be finite")
            s.setflags(write=False)
            object.__setattr__(self, "samples", s)
        else:
            raise BoundarySpecError(f"unknown boundary kind {self.kind!r}")

    @classmethod
    def closed(cls, expr: Union[str, Node, float]) -> "BoundarySpec":
        if isinstance(expr, str):
            expr = parse_expression(expr)
        elif isinstance(expr, (int, float)):
            expr = Const(float(expr))
        return cls("closed_form", closed_form=expr)

    @classmethod
    def sampled(cls, values: Iterable[float]) -> "BoundarySpec":
        return cls("sampled", samples=np.asarray(list(values) if not isinstance(values, np.ndarray) else values))

    @classmethod
    def from_function(cls, fn, m: int) -> "BoundarySpec":
        """Sample a vectorized callable at ``m`` uniform angles."""
        return cls.sampled(fn(sample_angles(m)))

    @property
    def m(self) -> int:
        return len(self.samples) if self.samples is not None else 0

    def __str__(self):
        return str(self.closed_form) if self.kind == "closed_form" else f"<{self.m} samples>"


def sample_angles(m: int) -> np.ndarray:
    return TWO_PI * np.arange(m) / m


def load_samples_csv(path: Union[str, Path]) -> BoundarySpec:
    """Read a single-column CSV of ``M`` boundary values at uniform angles."""
    values = []
    with open(path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), 1):
            cells = [c.strip() for c in row if c.strip()]
            if not cells:
                continue
            if len(cells) != 1:
                raise BoundarySpecError(f"{path}:{lineno}: expected a single column")
            try:
                values.append(float(cells[0]))
            except ValueError:
                if values or lineno > 1:
                    raise BoundarySpecError(f"{path}:{lineno}: not a number: {cells[0]!r}") from None
                # a header line is tolerated
    return BoundarySpec.sampled(values)


def eval_boundary(spec: BoundarySpec, theta):
    """Boundary value f(theta); sampled data is interpolated linearly (periodic)."""
    if not np.all(np.isfinite(theta)):
        raise BoundarySpecError("theta must be finite")
    theta = np.mod(theta, TWO_PI)
    if spec.kind == "closed_form":
        return spec.closed_form.value(theta)
    xp = sample_angles(spec.m)
    out = np.interp(theta, xp, spec.samples, period=TWO_PI)
    return float(out) if np.ndim(theta) == 0 else out


# ---------------------------------------------------------------------------
# Fourier coefficients


@dataclass(frozen=True)
class FourierCoefficients:
    a0: float
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        b = np.array(self.b, dtype=float)
        if a.shape != b.shape or a.ndim != 1 or len(a) < 1:
            raise BoundarySpecError("cosine and sine coefficient lists must have equal length >= 1")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "a0", float(self.a0))

    @property
    def n_max(self) -> int:
        return len(self.a)

    def series(self, theta):
        """Evaluate the truncated series at ``theta``."""
        theta = np.asarray(theta, dtype=float)
        n = np.arange(1, self.n_max + 1)
        nt = np.multiply.outer(theta, n)
        out = self.a0 + np.cos(nt) @ self.a + np.sin(nt) @ self.b
        return float(out) if out.ndim == 0 else out

    def energy(self) -> float:
        """``2*a0**2 + sum(a_n**2 + b_n**2)`` -- equals (1/pi) * integral of f**2 for full series."""
        return 2.0 * self.a0**2 + float(np.sum(self.a**2) + np.sum(self.b**2))

    def __add__(self, other):
        return FourierCoefficients(self.a0 + other.a0, self.a + other.a, self.b + other.b)

    def __rmul__(self, alpha):
        return FourierCoefficients(alpha * self.a0, alpha * self.a, alpha * self.b)


def fourier_coefficients(spec: BoundarySpec, n_max: int) -> FourierCoefficients:
    """Truncated Fourier coefficients of ``spec`` up to mode ``n_max``.

    Closed-form specs are matched term by term (harmonics above ``n_max`` are
    dropped).  Sampled specs use the trapezoid rule on their uniform grid, which
    requires ``n_max <= M/2 - 1``.
    """
    if not isinstance(n_max, (int, np.integer)) or n_max < 1:
        raise BoundarySpecError(f"n_max must be a positive integer, got {n_max!r}")
    a = np.zeros(n_max)
    b = np.zeros(n_max)
    if spec.kind == "closed_form":
        a0 = 0.0
        for (kind, k), c in spec.closed_form.harmonics().items():
            if kind == "const":
                a0 += c
            elif k <= n_max:
                (a if kind == "cos" else b)[k - 1] += c
        return FourierCoefficients(a0, a, b)

    m = spec.m
    if n_max > m // 2 - 1:
        raise BoundarySpecError(
            f"n_max={n_max} exceeds the Nyquist limit M/2 - 1 = {m // 2 - 1} for M={m} samples"
        )
    # trapezoid rule on the periodic grid == DFT
    F = np.fft.rfft(spec.samples) / m
    a0 = F[0].real
    a[:] = 2.0 * F[1 : n_max + 1].real
    b[:] = -2.0 * F[1 : n_max + 1].imag
    return FourierCoefficients(a0, a, b)


def closed_form_from_coefficients(coeffs: FourierCoefficients, *, drop_below: float = 0.0) -> BoundarySpec:
    """Rebuild a closed-form spec from coefficients (inverse of term matching)."""
    terms: list[Node] = [Const(coeffs.a0)]
    for n, (an, bn) in enumerate(zip(coeffs.a, coeffs.b), start=1):
        if abs(an) > drop_below:
            terms.append(Scale(float(an), Harmonic("cos", n)))
        if abs(bn) > drop_below:
            terms.append(Scale(float(bn), Harmonic("sin", n)))
    return BoundarySpec.closed(Sum(tuple(terms)) if len(terms) > 1 else terms[0])
