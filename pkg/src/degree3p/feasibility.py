"""Feasibility of the eight decomposition types of a degree-3p permutation character.

For each type the trace relations on eigenvalues

    linear      m_i + sum_l f_l theta_il = 0
    quadratic   sum_l f_l theta_il theta_jl = n m_i [j = i*]
    column sum  sum_i theta_il = -1
    cubic       sum_l f_l theta_il theta_jl theta_k*l = n n_k a_ijk

are solved in closed form (types II, III, IV, VII) or shown to be
contradictory (types I, V, VI, VIII).  Every emitted parameter set is
re-checked exactly by `parameter_failures`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable

import sympy

from .errors import BadInput, MixedRadicands
from .exactalg import QuadraticNumber as QN
from .scheme import EigenvalueTable, canonical_table

EXCEPTIONAL_VII = (7, 19, 31)


# -- case types ---------------------------------------------------------------

@dataclass(frozen=True)
class CaseType:
    """One row of the decomposition table: constituent degrees f(p) with multiplicities e."""

    tag: str
    rank: int
    degrees: tuple[tuple[str, Callable[[int], int], int], ...]  # (label, f(p), e)

    @property
    def commutative(self) -> bool:
        return all(e == 1 for _, _, e in self.degrees)

    def constituent_degrees(self, p: int) -> tuple[int, ...]:
        return tuple(f(p) for _, f, _ in self.degrees)

    def multiplicities(self, p: int) -> tuple[int, ...]:
        """Column multiplicities of the eigenvalue table, trivial column first."""
        if not self.commutative:
            raise BadInput(f"type {self.tag} has a repeated constituent")
        return (1,) + self.constituent_degrees(p)

    def check(self, p: int) -> bool:
        total = 1 + sum(e * f(p) for _, f, e in self.degrees)
        return total == 3 * p and 1 + sum(e * e for _, _, e in self.degrees) == self.rank


CASE_TYPES: dict[str, CaseType] = {
    c.tag: c
    for c in [
        CaseType("I", 3, (("(3p-1)/2", lambda p: (3 * p - 1) // 2, 1), ("(3p-1)/2", lambda p: (3 * p - 1) // 2, 1))),
        CaseType("II", 3, (("p", lambda p: p, 1), ("2p-1", lambda p: 2 * p - 1, 1))),
        CaseType("III", 3, (("2p", lambda p: 2 * p, 1), ("p-1", lambda p: p - 1, 1))),
        CaseType("IV", 4, (("p", lambda p: p, 1), ("p", lambda p: p, 1), ("p-1", lambda p: p - 1, 1))),
        CaseType("V", 6, (("p", lambda p: p, 2), ("p-1", lambda p: p - 1, 1))),
        CaseType("VI", 3, (("p+1", lambda p: p + 1, 1), ("2p-2", lambda p: 2 * p - 2, 1))),
        CaseType("VII", 4, (("p+1", lambda p: p + 1, 1), ("p-1", lambda p: p - 1, 1), ("p-1", lambda p: p - 1, 1))),
        CaseType("VIII", 6, (("p+1", lambda p: p + 1, 1), ("p-1", lambda p: p - 1, 2))),
    ]
}
COMMUTATIVE_TAGS = tuple(t for t, c in CASE_TYPES.items() if c.commutative)


# -- result types -------------------------------------------------------------

@dataclass(frozen=True)
class FeasibleParameters:
    tag: str
    case: str | None
    p: int
    a: int | None
    subdegrees: tuple[int, ...]
    rows: tuple[tuple[QN, ...], ...]  # row i = class i, column 0 trivial
    pairing: tuple[int, ...]
    constants: dict = field(default_factory=dict, compare=False, hash=False)
    parity_ok: bool | None = None

    @property
    def n(self) -> int:
        return 3 * self.p

    @property
    def self_paired(self) -> bool:
        return all(i == j for i, j in enumerate(self.pairing))

    def multiplicities(self) -> tuple[int, ...]:
        return CASE_TYPES[self.tag].multiplicities(self.p)

    def to_table(self) -> EigenvalueTable:
        cols = tuple(tuple(row[c] for row in self.rows) for c in range(len(self.rows[0])))
        return EigenvalueTable(self.n, self.subdegrees, self.multiplicities(), cols, self.pairing)

    def canonical(self) -> tuple:
        return (self.tag, canonical_table(self.to_table()))

    def label(self) -> str:
        return f"{self.tag}({self.case})" if self.case else self.tag


@dataclass(frozen=True)
class Refutation:
    tag: str
    p: int
    reason: str
    trace: tuple[str, ...]
    data: dict = field(default_factory=dict, compare=False, hash=False)


# -- exact validation ---------------------------------------------------------

def _zero() -> QN:
    return QN(0)


def intersection_numbers(fp: FeasibleParameters) -> dict[tuple[int, int, int], QN]:
    """Structure constants recovered from the cubic trace relation."""
    f = fp.multiplicities()
    rows, star, n, m = fp.rows, fp.pairing, fp.n, fp.subdegrees
    out = {}
    r = len(rows)
    for i, j, k in itertools.product(range(r), repeat=3):
        tot = sum((fl * x * y * z for fl, x, y, z in zip(f, rows[i], rows[j], rows[star[k]])), _zero())
        out[i, j, k] = tot / (n * m[k])
    return out


def parameter_failures(fp: FeasibleParameters) -> list[str]:
    """Everything a valid parameter set must satisfy; empty list means valid."""
    out = []
    f = fp.multiplicities()
    rows, star, n, m = fp.rows, fp.pairing, fp.n, fp.subdegrees
    r = len(rows)
    if sum(m) != n:
        out.append(f"subdegrees sum to {sum(m)}, not {n}")
    if any(row[0] != m[i] for i, row in enumerate(rows)) or any(v != 1 for v in rows[0]):
        out.append("trivial row/column malformed")
    for i in range(1, r):
        if m[i] < 3:
            out.append(f"subdegree {m[i]} < 3 cannot occur in a primitive group of composite degree")
    try:
        for i in range(1, r):
            if sum((fl * t for fl, t in zip(f, rows[i])), _zero()) != 0:
                out.append(f"linear relation fails for class {i}")
        for i, j in itertools.product(range(1, r), repeat=2):
            got = sum((fl * x * y for fl, x, y in zip(f, rows[i], rows[j])), _zero())
            if got != (n * m[i] if j == star[i] else 0):
                out.append(f"quadratic relation fails for ({i},{j})")
        for lam in range(1, len(f)):
            if sum((rows[i][lam] for i in range(1, r)), _zero()) != -1:
                out.append(f"column {lam} does not sum to -1")
        for (i, j, k), a in intersection_numbers(fp).items():
            if not a.is_integer or a < 0:
                out.append(f"a[{i}][{j}][{k}] = {a} is not a non-negative integer")
                break
    except MixedRadicands as exc:
        out.append(f"eigenvalues from different quadratic fields: {exc}")
    for i in range(1, r):
        row = rows[i]
        if any(not v.is_algebraic_integer() for v in row):
            out.append(f"class {i} has a non-integral eigenvalue")
        if tuple(v.complex_conjugate() for v in row) != rows[star[i]]:
            out.append(f"row {star[i]} is not the complex conjugate of row {i}")
        if star[i] == i and any(not v.is_real for v in row):
            out.append(f"self-paired class {i} has a non-real eigenvalue")
        for lam, v in enumerate(row[1:], start=1):
            if v == m[i] or not v.abs_lt(m[i]):
                out.append(f"Perron-Frobenius bound fails for class {i}, column {lam}")
            if v.rad and not any(f[mu] == f[lam] and row[mu] == v.conj() for mu in range(1, len(f))):
                out.append(f"surd {v} in class {i} lacks its conjugate in an equal-degree column")
    return out


def _finish(fp: FeasibleParameters) -> FeasibleParameters | None:
    return None if parameter_failures(fp) else fp


def _dedupe(found: list[FeasibleParameters]) -> list[FeasibleParameters]:
    seen, out = set(), []
    for fp in found:
        key = fp.canonical()
        if key not in seen:
            seen.add(key)
            out.append(fp)
    return out


def _pair_roots(s: Fraction, q: Fraction) -> tuple[QN, QN]:
    """Roots of x^2 - s x + q, the '+' root first."""
    disc = s * s - 4 * q
    return QN(s / 2, Fraction(1, 2), disc) if disc else QN(s / 2), QN(s / 2, Fraction(-1, 2), disc) if disc else QN(s / 2)


def _rows(*rows) -> tuple[tuple[QN, ...], ...]:
    return tuple(tuple(QN.coerce(v) if not isinstance(v, QN) else v for v in row) for row in rows)


# -- families -----------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Membership:
    family: str  # "i", "ii", "iii" (quadratic families) or "iv" (exceptional primes)
    a: int | None = None


def _square_root_exact(x: int) -> int | None:
    if x < 0:
        return None
    s = isqrt(x)
    return s if s * s == x else None


def family_a(p: int, family: str) -> int | None:
    """The integer a with p on the given quadratic family, if any."""
    if family == "i":  # p = 3a^2+3a+1  <=>  4p-1 = 3(2a+1)^2
        if (4 * p - 1) % 3:
            return None
        b = _square_root_exact((4 * p - 1) // 3)
        return (b - 1) // 2 if b and b % 2 and b >= 3 else None
    if family in ("ii", "iii"):  # 16p-5 = 3b^2 with b = 16a+5 or 16a+11
        if (16 * p - 5) % 3:
            return None
        b = _square_root_exact((16 * p - 5) // 3)
        if b is None:
            return None
        res = 5 if family == "ii" else 11
        return (b - res) // 16 if b % 16 == res and b >= res else None
    raise BadInput(f"unknown family {family!r}")


def family_prime(family: str, a: int) -> int:
    return {"i": 3 * a * a + 3 * a + 1, "ii": 48 * a * a + 30 * a + 5, "iii": 48 * a * a + 66 * a + 23}[family]


def classify_prime(p: int) -> frozenset[Membership]:
    out = set()
    for fam in ("i", "ii", "iii"):
        a = family_a(p, fam)
        if a is not None:
            out.add(Membership(fam, a))
    if p in EXCEPTIONAL_VII:
        out.add(Membership("iv"))
    return frozenset(out)


# -- type II ------------------------------------------------------------------

def type_II_parameters(case: str, a: int) -> FeasibleParameters:
    """Rank-3 parameters with constituent degrees p, 2p-1 on family (i) or (ii) of type II.

    With n_1 = p + mu_1 and lambda_1 = -2 mu_1 - 1, the quadratic relation reads
    6 mu_1^2 + 3 mu_1 + 1 - 2p = 0, so 16p - 5 = 3 b^2 and mu_1 = (-1 +- b)/4.
    """
    if case == "i":
        b = 16 * a + 5
        p, mu1 = family_prime("ii", a), (b - 1) // 4
    elif case == "ii":
        b = 16 * a + 11
        p, mu1 = family_prime("iii", a), (-1 - b) // 4
    else:
        raise BadInput(f"type II has cases i and ii, not {case!r}")
    lam1 = -2 * mu1 - 1
    n1 = p + mu1
    n2 = 3 * p - 1 - n1
    rows = _rows((1, 1, 1), (n1, lam1, mu1), (n2, -1 - lam1, -1 - mu1))
    parity_ok = (a % 2 == 0) if case == "i" else (a % 2 == 1)
    return FeasibleParameters("II", case, p, a, (1, n1, n2), rows, (0, 1, 2), parity_ok=parity_ok)


def solve_type_II(p: int) -> FeasibleParameters | Refutation:
    rhs = 16 * p - 5
    b = _square_root_exact(rhs // 3) if rhs % 3 == 0 else None
    if b is None:
        return Refutation("II", p, "not_3b2", (f"16p-5 = {rhs} is not three times a square",))
    if b % 16 not in (5, 11):
        return Refutation("II", p, "b_residue", (f"16p-5 = 3*{b}^2 but {b} mod 16 is not 5 or 11",))
    case = "i" if b % 16 == 5 else "ii"
    fp = type_II_parameters(case, (b - (5 if case == "i" else 11)) // 16)
    bad = parameter_failures(fp)
    if bad:
        return Refutation("II", p, "relations", tuple(bad))
    return fp


# -- types III and IV ---------------------------------------------------------

def type_III_candidates(a: int) -> list[FeasibleParameters]:
    """Both sign choices of mu_1 = +-(2a+1); validation decides which survive."""
    p = family_prime("i", a)
    out = []
    for case, mu1 in (("i", -(2 * a + 1)), ("ii", 2 * a + 1)):
        n1 = p + mu1
        lam1 = (-mu1 - 1) // 2
        n2 = 3 * p - 1 - n1
        rows = _rows((1, 1, 1), (n1, lam1, mu1), (n2, -1 - lam1, -1 - mu1))
        fp = FeasibleParameters("III", case, p, a, (1, n1, n2), rows, (0, 1, 2))
        ints = intersection_numbers(fp)
        out.append(FeasibleParameters("III", case, p, a, (1, n1, n2), rows, (0, 1, 2), {"a_111": ints[1, 1, 1]}))
    return out


def type_IV_candidates(a: int) -> list[FeasibleParameters]:
    """The three sub-cases: two with a paired couple of suborbits, one all self-paired."""
    p = family_prime("i", a)
    out = []
    # (i): Delta_3 = Delta_2^*, nu = (-2a-1, a, a)
    s, q = Fraction(-a - 1), Fraction((5 * a + 2) * (a + 1), 2)
    al, be = _pair_roots(s, q)
    n1, n2 = p - 2 * a - 1, p + a
    rows = _rows((1, 1, 1, 1), (n1, a, a, -2 * a - 1), (n2, al, be, a), (n2, be, al, a))
    out.append(("i", rows, (0, 1, 3, 2), s, q))
    # (ii): Delta_3 = Delta_2^*, nu = (2a+1, -a-1, -a-1)
    s, q = Fraction(a), Fraction(a * (5 * a + 3), 2)
    al, be = _pair_roots(s, q)
    n1, n2 = p + 2 * a + 1, p - a - 1
    rows = _rows((1, 1, 1, 1), (n1, -a - 1, -a - 1, 2 * a + 1), (n2, al, be, -a - 1), (n2, be, al, -a - 1))
    out.append(("ii", rows, (0, 1, 3, 2), s, q))
    # (iii): self-paired; lambda, mu = (-1 - nu +- sqrt(4p - 1 - 3 nu^2)) / 2 with signed roots summing to 0
    nus = (2 * a + 1, -a - 1, -a - 1)
    signs = (1, 1, -1)
    triples = []
    for nu, sg in zip(nus, signs):
        rad = 4 * p - 1 - 3 * nu * nu
        lam = QN(Fraction(-1 - nu, 2), Fraction(sg, 2), rad)
        mu = QN(Fraction(-1 - nu, 2), Fraction(-sg, 2), rad)
        triples.append((p + nu, lam, mu, nu))
    rows = _rows((1, 1, 1, 1), *[(n, lam, mu, nu) for n, lam, mu, nu in triples])
    s3 = triples[1][1] + triples[1][2]
    q3 = triples[1][1] * triples[1][2]
    out.append(("iii", rows, (0, 1, 2, 3), s3.rat, q3.rat))
    result = []
    for case, rows, pairing, s, q in out:
        subs = tuple(int(row[0].rat) for row in rows)
        fp = FeasibleParameters("IV", case, p, a, subs, rows, pairing)
        consts = {"alpha+beta": s, "alpha*beta": q, "a_223": intersection_numbers(fp)[2, 2, 3]}
        result.append(FeasibleParameters("IV", case, p, a, subs, rows, pairing, consts))
    return result


def solve_type_III(p: int) -> list[FeasibleParameters]:
    a = family_a(p, "i")
    if a is None:
        return []
    return [fp for fp in type_III_candidates(a) if _finish(fp)]


def solve_type_IV(p: int) -> list[FeasibleParameters]:
    a = family_a(p, "i")
    if a is None:
        return []
    return [fp for fp in type_IV_candidates(a) if _finish(fp)]


# -- type VII -----------------------------------------------------------------

def _discriminant_margin(p: int, eps: int, lam: int) -> int:
    # must be non-negative for the quadratic in mu, nu to have real roots
    return eps * (p - 1) * (6 * p - 2 * eps * p + eps) - 6 * lam * (2 * p - eps * p + eps) - (3 * p + 9) * lam * lam


def type_VII_row_candidates(p: int) -> list[tuple[int, int, int]]:
    """(eps, lambda, m) with m = eps(p-1) - 2 lambda passing the divisibility and
    discriminant conditions; |lambda| < 3 sqrt(p) / 2."""
    out = []
    lim = isqrt(9 * p // 4) + 1
    for eps in range(4):
        for lam in range(-lim, lim + 1):
            if 4 * lam * lam >= 9 * p:
                continue
            m = eps * (p - 1) - 2 * lam
            if m <= 0 or (3 * lam * (lam + 1)) % (p - 1):
                continue
            if _discriminant_margin(p, eps, lam) < 0:
                continue
            out.append((eps, lam, m))
    return out


def _vii_pair(p: int, eps: int, lam: int, m: int) -> tuple[QN, QN] | None:
    s = -eps - lam
    num = 3 * p * m - m * m - (p + 1) * lam * lam
    if num % (p - 1):
        return None
    sq = num // (p - 1)  # mu^2 + nu^2
    if (s * s - sq) % 2:
        return None
    q = (s * s - sq) // 2
    if s * s - 4 * q < 0:
        return None
    return _pair_roots(Fraction(s), Fraction(q))


def solve_type_VII(p: int) -> list[FeasibleParameters]:
    """Exhaust the bounded (eps, lambda) triples and keep valid tables."""
    cands = []
    for eps, lam, m in type_VII_row_candidates(p):
        pair = _vii_pair(p, eps, lam, m)
        if pair is not None:
            cands.append((eps, lam, m, pair))
    found = []
    for c1, c2, c3 in itertools.combinations_with_replacement(range(len(cands)), 3):
        rows = sorted([cands[c1], cands[c2], cands[c3]], key=lambda r: r[2])
        if sum(r[0] for r in rows) != 3 or sum(r[1] for r in rows) != -1:
            continue
        for flips in itertools.product((False, True), repeat=2):
            tab = [(1, 1, 1, 1)]
            for (eps, lam, m, (mu, nu)), flip in zip(rows, (False,) + flips):
                tab.append((m, lam, nu, mu) if flip else (m, lam, mu, nu))
            try:
                if any(sum((t[c] for t in tab[1:]), _zero()) != -1 for c in (2, 3)):
                    continue
            except MixedRadicands:
                continue
            subs = tuple(int(QN.coerce(t[0]).rat) for t in tab)
            fp = FeasibleParameters("VII", None, p, None, subs, _rows(*tab), (0, 1, 2, 3),
                                    {"eps": tuple(r[0] for r in rows)})
            if _finish(fp):
                found.append(fp)
    found = _dedupe(found)
    case = {7: "i", 19: "ii", 31: "iii"}.get(p)
    return [FeasibleParameters(fp.tag, case, fp.p, None, fp.subdegrees, fp.rows, fp.pairing, fp.constants)
            for fp in sorted(found, key=lambda fp: fp.subdegrees)]


# -- refutations --------------------------------------------------------------

def refute_type_I(p: int) -> Refutation:
    """Both pairing branches contradict the conjugation behaviour of the two
    constituents of degree (3p-1)/2 (taken as an axiom: complex conjugation
    swaps them iff p = 3 mod 4)."""
    f = (3 * p - 1) // 2
    trace = [f"(3p-1)/2 = {f} divides both nontrivial subdegrees, so n_1 = n_2 = {f}"]
    branches = {}
    # self-paired: lambda + mu = -1, lambda^2 + mu^2 = (3p+1)/2
    q_self = Fraction(-(3 * p - 1), 4)
    lam, mu = QN(Fraction(-1, 2), Fraction(1, 2), 3 * p), QN(Fraction(-1, 2), Fraction(-1, 2), 3 * p)
    branches["self"] = (lam, mu, Fraction(3 * p + 1, 2))
    if q_self.denominator != 1:
        trace.append(f"self-paired: lambda*mu = {q_self} is not an integer, impossible for algebraic integers")
    else:
        trace.append(f"self-paired: lambda*mu = {q_self} forces p = 3 mod 4, so the constituents are "
                     f"complex conjugate and lambda, mu must be too; but lambda, mu = {lam}, {mu} are real")
    # paired: lambda + mu = -1, lambda^2 + mu^2 = -(3p-1)/2
    q_pair = Fraction(3 * p + 1, 4)
    lam, mu = QN(Fraction(-1, 2), Fraction(1, 2), -3 * p), QN(Fraction(-1, 2), Fraction(-1, 2), -3 * p)
    branches["paired"] = (lam, mu, Fraction(-(3 * p - 1), 2))
    if q_pair.denominator != 1:
        trace.append(f"paired: lambda*mu = {q_pair} is not an integer, impossible for algebraic integers")
    else:
        trace.append(f"paired: lambda*mu = {q_pair} forces p = 1 mod 4, so the constituents are "
                     f"self-conjugate and lambda, mu must be real; but lambda, mu = {lam}, {mu} are not")
    return Refutation("I", p, "discriminant_conjugacy", tuple(trace),
                      {"branches": branches, "products": {"self": q_self, "paired": q_pair}})


def refute_type_V(p: int) -> Refutation:
    total = 3 * p - 1
    eps_sum = Fraction(total + 1, p)  # from 3p - 1 = (sum eps) p + sum nu with sum nu = -1
    trace = (
        "rank 6: five basic adjacency matrices, each with n_i = eps_i p + nu_i and eps_i >= 1",
        "so sum eps_i >= 5",
        f"column sum gives sum nu_i = -1 and {total} = (sum eps_i) * {p} - 1, so sum eps_i = {eps_sum}",
        "contradiction: 3 < 5",
    )
    return Refutation("V", p, "epsilon_count", trace, {"eps_sum": eps_sum, "eps_min": 5})


def type_VI_search(p: int) -> list[tuple[int, int, int]]:
    """All (m, lambda, mu) solving the rank-3 system with degrees p+1, 2p-2 and
    passing the Perron-Frobenius bounds for the class and its complement."""
    n = 3 * p
    out = []
    lim = isqrt(9 * p * p // (4 * (p + 1))) + 1
    mod = 2 * (p - 1)
    for lam in range(-lim, lim + 1):
        start = (-(p + 1) * lam) % mod
        for m in range(start or mod, n - 1, mod):
            num = -(m + (p + 1) * lam)
            if num % mod:
                continue
            mu = num // mod
            if m * m + (p + 1) * lam * lam + 2 * (p - 1) * mu * mu != n * m or lam == mu:
                continue
            m2, lam2, mu2 = n - 1 - m, -1 - lam, -1 - mu
            if max(abs(lam), abs(mu)) >= m or max(abs(lam2), abs(mu2)) >= m2:
                continue
            out.append((m, lam, mu))
    return out


def refute_type_VI(p: int) -> Refutation:
    sols = type_VI_search(p)
    if sols:
        return Refutation("VI", p, "search_nonempty", (f"unexpected solutions {sols}",), {"solutions": sols})
    return Refutation("VI", p, "exhaustive_search_empty", (
        "rank 3 with distinct degrees p+1, 2p-2: both suborbits self-paired, eigenvalues rational",
        f"searched every lambda with (p+1) lambda^2 <= 9p^2/4 and every m = -(p+1) lambda mod {2 * (p - 1)}",
        "no (m, lambda, mu) satisfies the linear and quadratic relations with |lambda|, |mu| < m "
        "for both the class and its complement",
    ))


def type_VIII_eps_zero(p: int) -> list[tuple[int, int]]:
    """(lambda, m) for symmetric matrices with eps = 0 and m >= 3 that pass the
    divisibility and discriminant conditions."""
    out = []
    lim = isqrt(9 * p // 4) + 1
    for lam in range(-lim, 0):
        m = -2 * lam
        if m < 3 or (3 * lam * (lam + 1)) % (p - 1) or _discriminant_margin(p, 0, lam) < 0:
            continue
        out.append((lam, m))
    return out


def refute_type_VIII(p: int) -> Refutation:
    trace = ["sum of eps_i over the symmetrised matrices is 3, and a rank-6 type forces some eps_i = 0"]
    zero = type_VIII_eps_zero(p)
    if not zero:
        trace.append(f"p = {p}: no lambda < 0 with m = -2 lambda >= 3, p-1 | 3 lambda(lambda+1) and the "
                     "discriminant bound")
        return Refutation("VIII", p, "no_epsilon_zero", tuple(trace), {"candidates": zero})
    trace.append(f"p = {p}: the eps = 0 matrix has (lambda, m) in {zero}")
    trace.append("in type VIII that matrix must be an amalgamation of a paired couple, so lambda is even")
    even = [(lam, m) for lam, m in zero if lam % 2 == 0]
    if not even:
        trace.append("every candidate lambda is odd: contradiction")
        return Refutation("VIII", p, "odd_lambda", tuple(trace), {"candidates": zero})
    trace.append(f"even candidates {even} give an original suborbit of length m/2 = "
                 f"{[m // 2 for _, m in even]}, impossible in a primitive group")
    return Refutation("VIII", p, "subdegree_two", tuple(trace), {"candidates": zero})


def refute_types(p: int, tag: str) -> Refutation:
    dispatch = {"I": refute_type_I, "V": refute_type_V, "VI": refute_type_VI, "VIII": refute_type_VIII}
    if tag not in dispatch:
        raise BadInput(f"type {tag} is not refuted; use its solver")
    return dispatch[tag](p)


# -- all types at once --------------------------------------------------------

def _require_prime(p: int) -> None:
    if p < 5 or not sympy.isprime(p):
        raise BadInput(f"p must be a prime >= 5, got {p}")


def solve_all(p: int) -> dict[str, list[FeasibleParameters] | Refutation]:
    """Feasible parameter sets (or a refutation) for every type at prime p."""
    _require_prime(p)
    out: dict[str, list[FeasibleParameters] | Refutation] = {}
    ii = solve_type_II(p)
    out["I"] = refute_types(p, "I")
    out["II"] = [ii] if isinstance(ii, FeasibleParameters) else ii
    out["III"] = solve_type_III(p)
    out["IV"] = solve_type_IV(p)
    out["V"] = refute_types(p, "V")
    out["VI"] = refute_types(p, "VI")
    out["VII"] = solve_type_VII(p)
    out["VIII"] = refute_types(p, "VIII")
    return out


def closed_form(p: int, tag: str) -> list[FeasibleParameters]:
    """Solutions from the closed-form path, refutations mapped to the empty list."""
    if tag == "II":
        r = solve_type_II(p)
        return [r] if isinstance(r, FeasibleParameters) else []
    if tag == "III":
        return solve_type_III(p)
    if tag == "IV":
        return solve_type_IV(p)
    if tag == "VII":
        return solve_type_VII(p)
    if tag in ("I", "VI"):
        refute_types(p, tag)
        return []
    raise BadInput(f"no closed form for type {tag}")


# -- normalizer bound ---------------------------------------------------------

@dataclass(frozen=True)
class NormalizerBound:
    case: str
    a: int
    p: int
    gamma: int
    gcds: tuple[int, int, int]
    bound: int

    @property
    def sharp(self) -> int:
        from math import lcm

        return lcm(*self.gcds)


def normalizer_bound_type_II(case: str, a: int) -> NormalizerBound:
    """Bound on |N(P):P| for type II at parameter a.

    q = |N(P):P| divides p-1 and one of |Gamma|, |Gamma|-1, |Gamma|-2 for the
    suborbit Gamma of length p+4a+1 (case i) or p-4a-3 (case ii).
    """
    if a < 0:
        raise BadInput("a must be non-negative")
    if case == "i":
        p = family_prime("ii", a)
        gamma = p + 4 * a + 1
        parity = a % 2 == 1
    elif case == "ii":
        p = family_prime("iii", a)
        gamma = p - 4 * a - 3
        parity = a % 2 == 0
    else:
        raise BadInput(f"case must be 'i' or 'ii', not {case!r}")
    gcds = tuple(gcd(gamma - k, p - 1) for k in range(3))
    return NormalizerBound(case, a, p, gamma, gcds, 2 if parity else 8)


# -- imprimitive expectations -------------------------------------------------

IMPRIMITIVE_EXPECTATIONS = {
    "III": [{"subdegrees": ("1", "2", "3(p-1)")}],
    "IV": [{"subdegrees": ("1", "2", "3(p-1)/2", "3(p-1)/2")},
           {"subdegrees": ("1", "1", "1", "3(p-1)")}],
    "V": [{"subdegrees": ("1", "1", "1", "p-1", "p-1", "p-1")}],
    "VII": [],
    "VIII": [{"p": 7, "subdegrees": (1, 2, 2, 4, 4, 8)}],
}


def imprimitive_expectations(tag: str) -> list[dict]:
    if tag not in IMPRIMITIVE_EXPECTATIONS:
        raise BadInput(f"no imprimitive data recorded for type {tag}")
    return IMPRIMITIVE_EXPECTATIONS[tag]
