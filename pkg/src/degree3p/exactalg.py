"""Exact arithmetic: rationals, quadratic surds, integer matrices and polynomials.

Values of the form ``rat + coeff*sqrt(rad)`` cover every eigenvalue that an
association scheme of the kind studied here can produce.  Radicands are
reduced to their squarefree part on construction, so equality is structural.
Negative radicands are allowed because paired (non-self-paired) suborbits
carry complex-conjugate eigenvalues.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import sympy

from .errors import BadInput, IrreducibleCubicOrWorse, MixedRadicands, NotSquare

Rational = Union[int, Fraction]


@lru_cache(maxsize=65536)
def split_square(n: int) -> tuple[int, int]:
    """Write ``n = s*s*d`` with ``d`` squarefree; the sign of ``n`` stays on ``d``."""
    if n == 0:
        return 0, 0
    s, d = 1, -1 if n < 0 else 1
    for prime, exp in sympy.factorint(abs(n)).items():
        s *= prime ** (exp // 2)
        if exp % 2:
            d *= prime
    return s, d


def _sgn(x) -> int:
    return (x > 0) - (x < 0)


class QuadraticNumber:
    """An element ``rat + coeff*sqrt(rad)`` of a quadratic field (or of Q).

    Canonical form: ``rad`` is squarefree and not 1, and ``coeff == 0`` iff
    ``rad == 0``.
    """

    __slots__ = ("rat", "coeff", "rad")

    def __init__(self, rat: Rational = 0, coeff: Rational = 0, rad: int = 0):
        rat, coeff, rad = Fraction(rat), Fraction(coeff), int(rad)
        if coeff and rad:
            s, rad = split_square(rad)
            coeff *= s
            if rad == 1:
                rat, coeff, rad = rat + coeff, Fraction(0), 0
        if not coeff or not rad:
            coeff, rad = Fraction(0), 0
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "rad", rad)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticNumber is immutable")

    @classmethod
    def coerce(cls, x) -> QuadraticNumber:
        if isinstance(x, QuadraticNumber):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to QuadraticNumber")

    @classmethod
    def sqrt(cls, n: Rational) -> QuadraticNumber:
        """Principal square root of a rational (imaginary for negative input)."""
        n = Fraction(n)
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(0, Fraction(1, n.denominator), n.numerator * n.denominator)

    # -- predicates -------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.rad == 0

    @property
    def is_real(self) -> bool:
        return self.rad >= 0

    @property
    def is_integer(self) -> bool:
        return self.rad == 0 and self.rat.denominator == 1

    def trace(self) -> Fraction:
        """Trace over Q (twice the rational part for a genuine surd)."""
        return self.rat if self.rad == 0 else 2 * self.rat

    def norm(self) -> Fraction:
        """Field norm ``x * conj(x)``; equals ``x`` itself for rationals."""
        if self.rad == 0:
            return self.rat
        return self.rat * self.rat - self.coeff * self.coeff * self.rad

    def is_algebraic_integer(self) -> bool:
        if self.rad == 0:
            return self.rat.denominator == 1
        return self.trace().denominator == 1 and self.norm().denominator == 1

    # -- arithmetic -------------------------------------------------------
    def _rad_with(self, other: QuadraticNumber) -> int:
        if self.rad and other.rad and self.rad != other.rad:
            raise MixedRadicands(f"sqrt({self.rad}) and sqrt({other.rad}) do not mix")
        return self.rad or other.rad

    def conj(self) -> QuadraticNumber:
        """Galois conjugate: negates the surd coefficient."""
        return QuadraticNumber(self.rat, -self.coeff, self.rad)

    def complex_conjugate(self) -> QuadraticNumber:
        return self.conj() if self.rad < 0 else self

    def __add__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        rad = self._rad_with(other)
        return QuadraticNumber(self.rat + other.rat, self.coeff + other.coeff, rad)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.rat, -self.coeff, self.rad)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        rad = self._rad_with(other)
        rat = self.rat * other.rat + self.coeff * other.coeff * rad
        coeff = self.rat * other.coeff + self.coeff * other.rat
        return QuadraticNumber(rat, coeff, rad)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = QuadraticNumber.coerce(other)
        except TypeError:
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division by zero QuadraticNumber")
        if other.rad == 0:
            return QuadraticNumber(self.rat / other.rat, self.coeff / other.rat, self.rad)
        num = self * other.conj()
        den = other.norm()
        return QuadraticNumber(num.rat / den, num.coeff / den, num.rad)

    def __rtruediv__(self, other):
        return QuadraticNumber.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out, base = QuadraticNumber(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.rad == 0 and self.rat == other
        if isinstance(other, QuadraticNumber):
            return (self.rat, self.coeff, self.rad) == (other.rat, other.coeff, other.rad)
        return NotImplemented

    def __hash__(self):
        if self.rad == 0:
            return hash(self.rat)
        return hash((self.rat, self.coeff, self.rad))

    def sign(self) -> int:
        """Exact sign of a real value, with no floating point."""
        if self.rad < 0:
            raise TypeError("sign of a non-real QuadraticNumber")
        a, b = _sgn(self.rat), _sgn(self.coeff)
        if b == 0 or a == b:
            return a or b
        if a == 0:
            return b
        # opposite signs: whichever of rat^2, coeff^2*rad dominates wins
        diff = self.rat * self.rat - self.coeff * self.coeff * self.rad
        return a if diff > 0 else b

    def _cmp(self, other) -> int:
        return (self - QuadraticNumber.coerce(other)).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def abs_lt(self, bound: Rational) -> bool:
        """``|self| < bound`` for real or complex values, decided exactly."""
        bound = Fraction(bound)
        if bound <= 0:
            return False
        if self.rad < 0:
            return self.norm() < bound * bound
        return -bound < self < bound

    def __bool__(self):
        return bool(self.rat) or bool(self.coeff)

    # -- conversion -------------------------------------------------------
    def __complex__(self):
        if self.rad < 0:
            return complex(float(self.rat), float(self.coeff) * (-self.rad) ** 0.5)
        return complex(float(self))

    def __float__(self):
        if self.rad < 0:
            raise TypeError("non-real QuadraticNumber has no float value")
        return float(self.rat) + float(self.coeff) * self.rad ** 0.5

    def sort_key(self) -> tuple:
        """Total order used for deterministic listings (not numeric order)."""
        return (self.rad != 0, abs(self.rad), self.rad, -self.rat, -self.coeff)

    def __str__(self):
        return format_quadratic(self)

    def __repr__(self):
        return f"QuadraticNumber({format_quadratic(self)!r})"


def _fmt_rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_quadratic(x: QuadraticNumber) -> str:
    """Render as ``x+y*sqrt(d)``; zero parts and unit coefficients are dropped."""
    if x.rad == 0:
        return _fmt_rat(x.rat)
    mag = abs(x.coeff)
    surd = f"sqrt({x.rad})" if mag == 1 else f"{_fmt_rat(mag)}*sqrt({x.rad})"
    sign = "-" if x.coeff < 0 else "+"
    if x.rat == 0:
        return surd if sign == "+" else "-" + surd
    return f"{_fmt_rat(x.rat)}{sign}{surd}"


_RAT = r"-?\d+(?:/\d+)?"
_QUAD_RE = re.compile(
    rf"^(?P<rat>{_RAT})?(?:(?P<sign>[+-])?(?:(?P<coeff>\d+(?:/\d+)?)\*)?sqrt\((?P<rad>-?\d+)\))?$"
)


def parse_quadratic(text: str) -> QuadraticNumber:
    """Inverse of `format_quadratic`."""
    m = _QUAD_RE.match(text.strip())
    if not m or (m["rat"] is None and m["rad"] is None):
        raise BadInput(f"not a quadratic surd: {text!r}")
    rat = Fraction(m["rat"]) if m["rat"] else Fraction(0)
    if m["rad"] is None:
        return QuadraticNumber(rat)
    if m["rat"] and not m["sign"]:
        raise BadInput(f"not a quadratic surd: {text!r}")
    coeff = Fraction(m["coeff"]) if m["coeff"] else Fraction(1)
    if m["sign"] == "-":
        coeff = -coeff
    return QuadraticNumber(rat, coeff, int(m["rad"]))


def quad_arith(a: QuadraticNumber, b: QuadraticNumber | None, op: str) -> QuadraticNumber:
    """Functional front end for the four primitive operations."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "conj":
        return a.conj()
    raise BadInput(f"unknown op {op!r}")


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients in ascending degree."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c:
                mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
                mag = abs(c)
                body = f"{mag}{'*' + mono if mono else ''}" if mag != 1 or not mono else mono
                terms.append(("-" if c < 0 else "+") + body)
        if not terms:
            return "0"
        out = "".join(terms)
        return out[1:] if out[0] == "+" else out


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise BadInput("matrix dimensions inconsistent with entries")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> IntMatrix:
        entries = tuple(tuple(int(v) for v in r) for r in rows)
        return cls(len(entries), len(entries[0]) if entries else 0, entries)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise BadInput("inner dimensions differ")
        cols = list(zip(*other.entries))
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.entries]
        )

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows(zip(*self.entries))

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


_X = sympy.Symbol("x")


def charpoly(m: IntMatrix) -> IntPolynomial:
    """``det(xI - M)`` via sympy's division-free Berkowitz algorithm."""
    if m.rows != m.cols:
        raise NotSquare(f"{m.rows}x{m.cols} matrix has no characteristic polynomial")
    if m.rows == 0:
        return IntPolynomial((1,))
    poly = sympy.Matrix(m.tolist()).charpoly(_X)
    return IntPolynomial(tuple(int(c) for c in reversed(poly.all_coeffs())))


def extract_roots(f: IntPolynomial) -> list[tuple[QuadraticNumber, int]]:
    """All roots of ``f`` with multiplicity, provided they are at most quadratic.

    Rational roots come first (descending), then conjugate surd pairs.
    """
    if f.degree < 0:
        raise BadInput("the zero polynomial has no finite root list")
    _, factors = sympy.Poly(list(reversed(f.coefficients)), _X, domain="ZZ").factor_list()
    roots: list[tuple[QuadraticNumber, int]] = []
    for factor, mult in factors:
        c = [int(v) for v in factor.all_coeffs()]
        if len(c) == 2:
            roots.append((QuadraticNumber(Fraction(-c[1], c[0])), mult))
        elif len(c) == 3:
            a, b, cc = c
            disc = b * b - 4 * a * cc
            for s in (1, -1):
                roots.append((QuadraticNumber(Fraction(-b, 2 * a), Fraction(s, 2 * a), disc), mult))
        elif len(c) > 3:
            raise IrreducibleCubicOrWorse(f"irreducible factor of degree {len(c) - 1}: {factor.as_expr()}")
    roots.sort(key=lambda rm: rm[0].sort_key())
    return roots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Basis of the right kernel over whatever exact field the entries live in.

    Works for ``Fraction`` and `QuadraticNumber` entries alike.
    """
    m = [[QuadraticNumber.coerce(v) if isinstance(v, (int, Fraction)) else v for v in r] for r in rows]
    ncols = ncols if ncols is not None else (len(m[0]) if m else 0)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [QuadraticNumber(0)] * ncols
        vec[fc] = QuadraticNumber(1)
        for row, pc in enumerate(pivots):
            vec[pc] = -m[row][fc]
        basis.append(vec)
    return basis


def solve_unique(rows: Sequence[Sequence], rhs: Sequence) -> list | None:
    """Solve a square-or-tall exact system; None when it is singular or inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    n = len(rows[0])
    kernel = nullspace(aug, n + 1)
    # the unique solution appears as the single kernel vector with last entry -1
    if len(kernel) != 1 or kernel[0][n] == 0:
        return None
    v = kernel[0]
    scale = -1 / v[n]
    return [x * scale for x in v[:n]]
