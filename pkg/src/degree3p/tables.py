"""The published eigenvalue tables, evaluated from their printed formulas.

Entries are kept as the strings shown in the tables and evaluated with sympy,
so this module shares no arithmetic with the solvers it is compared against.
Golden TSV files under ``golden/`` are frozen output of ``render_golden``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import sympy

from .errors import BadInput
from .exactalg import QuadraticNumber
from .scheme import EigenvalueTable, table_from_tsv, table_to_tsv

A = sympy.Symbol("a")
ALPHA, BETA = sympy.Symbol("alpha"), sympy.Symbol("beta")
SQ2, SQ5 = "sqrt(2)", "sqrt(5)"
_NAMES = {"a": A, "alpha": ALPHA, "beta": BETA}


def _parse(text: str):
    return sympy.sympify(text, locals=_NAMES)


@dataclass(frozen=True)
class TableSpec:
    key: str
    title: str
    p: str
    multiplicities: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]  # nontrivial rows; first entry is the subdegree
    pairing: tuple[int, ...]
    a_min: int = 0
    parity: int | None = None  # required a mod 2, if any
    alpha_beta: tuple[str, str] | None = None  # (alpha + beta, alpha * beta)
    symbolic: bool = True

    def a_values(self, a_max: int) -> list[int]:
        if not self.symbolic:
            return [0]
        return [a for a in range(self.a_min, a_max + 1) if self.parity is None or a % 2 == self.parity]


TABLES: dict[str, TableSpec] = {
    t.key: t
    for t in [
        TableSpec("14.2", "Type VII(i), p=7", "7", ("8", "6", "6"),
                  (("4", "-2", f"1+{SQ2}", f"1-{SQ2}"),
                   ("8", "-1", f"-2*{SQ2}", f"2*{SQ2}"),
                   ("8", "2", f"-2+{SQ2}", f"-2-{SQ2}")), (0, 1, 2, 3), symbolic=False),
        TableSpec("14.3", "Type VII(ii), p=19", "19", ("20", "18", "18"),
                  (("6", "-3", f"(3+{SQ5})/2", f"(3-{SQ5})/2"),
                   ("20", "-1", f"-2*{SQ5}", f"2*{SQ5}"),
                   ("30", "3", f"(-5+3*{SQ5})/2", f"(-5-3*{SQ5})/2")), (0, 1, 2, 3), symbolic=False),
        TableSpec("14.4", "Type VII(iii), p=31", "31", ("32", "30", "30"),
                  (("32", "-1", f"4*{SQ2}", f"-4*{SQ2}"),
                   ("20", "5", f"-3-{SQ2}", f"-3+{SQ2}"),
                   ("40", "-5", f"2-3*{SQ2}", f"2+3*{SQ2}")), (0, 1, 2, 3), symbolic=False),
        TableSpec("14.5", "Type II(i), p=48a^2+30a+5", "48*a**2+30*a+5", ("48*a**2+30*a+5", "96*a**2+60*a+9"),
                  (("2*(8*a+3)*(3*a+1)", "-8*a-3", "4*a+1"),
                   ("8*(4*a+1)*(3*a+1)", "8*a+2", "-4*a-2")), (0, 1, 2)),
        TableSpec("14.6", "Type II(ii), p=48a^2+66a+23", "48*a**2+66*a+23", ("48*a**2+66*a+23", "96*a**2+132*a+45"),
                  (("2*(8*a+5)*(3*a+2)", "8*a+5", "-4*a-3"),
                   ("8*(4*a+3)*(3*a+2)", "-8*a-6", "4*a+2")), (0, 1, 2)),
        TableSpec("14.7", "Type III(i), p=3a^2+3a+1", "3*a**2+3*a+1", ("6*a**2+6*a+2", "3*a**2+3*a"),
                  (("a*(3*a+1)", "a", "-2*a-1"),
                   ("2*(a+1)*(3*a+1)", "-a-1", "2*a")), (0, 1, 2), a_min=2),
        TableSpec("14.8", "Type III(ii), p=3a^2+3a+1", "3*a**2+3*a+1", ("6*a**2+6*a+2", "3*a**2+3*a"),
                  (("(a+1)*(3*a+2)", "-a-1", "2*a+1"),
                   ("2*a*(3*a+2)", "a", "-2*a-2")), (0, 1, 2), a_min=1),
        TableSpec("14.9", "Type IV(i), p=3a^2+3a+1, a even", "3*a**2+3*a+1",
                  ("3*a**2+3*a+1", "3*a**2+3*a+1", "3*a**2+3*a"),
                  (("a*(3*a+1)", "a", "a", "-2*a-1"),
                   ("(a+1)*(3*a+1)", "alpha", "beta", "a"),
                   ("(a+1)*(3*a+1)", "beta", "alpha", "a")), (0, 1, 3, 2), a_min=1, parity=0,
                  alpha_beta=("-a-1", "(5*a+2)*(a+1)/2")),
        TableSpec("14.10-ii", "Type IV(ii), p=3a^2+3a+1, a odd", "3*a**2+3*a+1",
                  ("3*a**2+3*a+1", "3*a**2+3*a+1", "3*a**2+3*a"),
                  (("(a+1)*(3*a+2)", "-a-1", "-a-1", "2*a+1"),
                   ("a*(3*a+2)", "alpha", "beta", "-a-1"),
                   ("a*(3*a+2)", "beta", "alpha", "-a-1")), (0, 1, 3, 2), a_min=1, parity=1,
                  alpha_beta=("a", "a*(5*a+3)/2")),
        TableSpec("14.10-iii", "Type IV(iii), p=3a^2+3a+1, a even", "3*a**2+3*a+1",
                  ("3*a**2+3*a+1", "3*a**2+3*a+1", "3*a**2+3*a"),
                  (("(a+1)*(3*a+2)", "-a-1", "-a-1", "2*a+1"),
                   ("a*(3*a+2)", "alpha", "beta", "-a-1"),
                   ("a*(3*a+2)", "beta", "alpha", "-a-1")), (0, 1, 2, 3), a_min=1, parity=0,
                  alpha_beta=("a", "-a*(4*a+3)/2")),
    ]
}

# builtin fixture -> (table, a) it must reproduce
FIXTURE_GOLDENS = {
    "a6-pairs": ("14.5", 0),
    "a7-pairs": ("14.8", 1),
    "pgl27-sylow2": ("14.2", 0),
    "psl219-a5": ("14.3", 0),
}


def sympy_to_quadratic(expr) -> QuadraticNumber:
    """Convert r + c*sqrt(d) (d possibly negative) from sympy to a QuadraticNumber."""
    expr = sympy.expand(sympy.sympify(expr))
    rat, coeff, rad = sympy.Integer(0), sympy.Integer(0), 0
    for term in sympy.Add.make_args(expr):
        if term.is_Rational:
            rat += term
            continue
        c, rest = term.as_coeff_Mul()
        k = 1
        if rest.has(sympy.I):
            rest = rest / sympy.I
            k = -1
        base, exp = rest.as_base_exp()
        if exp != sympy.Rational(1, 2) or not base.is_Integer:
            raise BadInput(f"not a quadratic surd: {expr}")
        d = k * int(base)
        if rad and d != rad:
            raise BadInput(f"two radicands in {expr}")
        rad = d
        coeff += c
    return QuadraticNumber(_frac(rat), _frac(coeff), rad)


def _frac(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def evaluate(key: str, a: int = 0) -> EigenvalueTable:
    """The eigenvalue table `key` at parameter a, with alpha the '+' root."""
    try:
        spec = TABLES[key]
    except KeyError:
        raise BadInput(f"unknown table {key!r}; choose from {sorted(TABLES)}") from None
    if spec.symbolic and a not in spec.a_values(max(a, spec.a_min)):
        raise BadInput(f"table {key} is stated for a >= {spec.a_min}" + (f" with a = {spec.parity} mod 2" if spec.parity is not None else ""))
    subs = {A: a}
    if spec.alpha_beta:
        s, q = (_parse(x).subs(subs) for x in spec.alpha_beta)
        root = sympy.sqrt(s * s - 4 * q)
        subs[ALPHA] = (s + root) / 2
        subs[BETA] = (s - root) / 2
    p = int(_parse(spec.p).subs(subs))
    mults = (1,) + tuple(int(_parse(m).subs(subs)) for m in spec.multiplicities)
    rows = [tuple(QuadraticNumber(1) for _ in mults)]
    for row in spec.rows:
        rows.append(tuple(sympy_to_quadratic(_parse(v).subs(subs)) for v in row))
    cols = tuple(tuple(r[c] for r in rows) for c in range(len(mults)))
    subdegrees = tuple(int(r[0].rat) for r in rows)
    return EigenvalueTable(3 * p, subdegrees, mults, cols, spec.pairing)


# -- golden files ---------------------------------------------------------------

GOLDEN_A_MAX = 6


def render_golden(key: str, a_max: int = GOLDEN_A_MAX) -> str:
    spec = TABLES[key]
    blocks = [f"# Table {key}: {spec.title}\n"]
    for a in spec.a_values(a_max):
        blocks.append(f"## a={a}\n" + table_to_tsv(evaluate(key, a)))
    return "".join(blocks)


def parse_golden(text: str) -> dict[int, EigenvalueTable]:
    out: dict[int, EigenvalueTable] = {}
    current, lines = None, []
    for line in text.splitlines() + ["## end"]:
        if line.startswith("## "):
            if current is not None:
                out[current] = table_from_tsv("\n".join(lines))
            current = None if line == "## end" else int(line.split("=", 1)[1])
            lines = []
        elif not line.startswith("#") and line.strip():
            lines.append(line)
    return out


def golden_filename(key: str) -> str:
    return f"table{key}.tsv"


def read_golden(key: str) -> str:
    return resources.files("degree3p").joinpath("golden", golden_filename(key)).read_text()
