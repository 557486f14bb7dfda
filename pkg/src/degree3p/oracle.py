"""Brute-force search for eigenvalue tables of a commutative decomposition type.

This is deliberately independent of the closed-form solvers: it enumerates
every row allowed by the Perron-Frobenius bound and the linear and quadratic
relations, assembles tables obeying the column sums, and keeps those whose
structure constants are non-negative integers.  It exists to cross-check
`feasibility`.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import isqrt

from .errors import BoundExceeded, MixedRadicands, NonCommutativeCase
from .exactalg import QuadraticNumber as QN
from .feasibility import CASE_TYPES, CaseType, FeasibleParameters

DEFAULT_BOUND = 200


def _roots(s: int, q: int) -> tuple[QN, QN]:
    disc = s * s - 4 * q
    half = Fraction(s, 2)
    if disc == 0:
        return QN(half), QN(half)
    return QN(half, Fraction(1, 2), disc), QN(half, Fraction(-1, 2), disc)


class _Layout:
    """Column layout: trivial column, integer singletons, at most one pair of equal degree."""

    def __init__(self, case: CaseType, p: int):
        self.n = 3 * p
        self.f = case.multiplicities(p)
        by_deg: dict[int, list[int]] = {}
        for c in range(1, len(self.f)):
            by_deg.setdefault(self.f[c], []).append(c)
        self.single = [cs[0] for cs in by_deg.values() if len(cs) == 1]
        pairs = [cs for cs in by_deg.values() if len(cs) == 2]
        if any(len(cs) > 2 for cs in by_deg.values()) or len(pairs) > 1:
            raise NonCommutativeCase(f"unsupported column pattern {self.f}")
        self.pair = pairs[0] if pairs else None

    def row(self, m: int, xs: dict[int, int], pair_vals: tuple[QN, QN] | None) -> tuple[QN, ...]:
        out = [QN(m)] + [QN(0)] * (len(self.f) - 1)
        for c, x in xs.items():
            out[c] = QN(x)
        if pair_vals is not None:
            out[self.pair[0]], out[self.pair[1]] = pair_vals
        return tuple(out)


def _pf_ok(row: tuple[QN, ...]) -> bool:
    m = row[0].rat
    return all(v != m and v.abs_lt(m) for v in row[1:])


def _rows_for(lay: _Layout, m: int, paired: bool) -> list[tuple[QN, ...]]:
    """All rows with first entry m satisfying the single-row linear and quadratic relations."""
    n, f = lay.n, lay.f
    out = []
    if lay.pair is None:
        if paired:
            return []
        *free, last = lay.single
        bounds = [isqrt(m * (n - m) // f[c]) for c in free]
        for xs in itertools.product(*(range(-b, b + 1) for b in bounds)):
            num = -(m + sum(f[c] * x for c, x in zip(free, xs)))
            if num % f[last]:
                continue
            vals = dict(zip(free, xs))
            vals[last] = num // f[last]
            if m * m + sum(f[c] * x * x for c, x in vals.items()) == n * m:
                out.append(lay.row(m, vals, None))
        return out
    fp = f[lay.pair[0]]
    bounds = [isqrt(m * (n - m) // f[c]) for c in lay.single]
    for xs in itertools.product(*(range(-b, b + 1) for b in bounds)):
        lin = m + sum(f[c] * x for c, x in zip(lay.single, xs))
        sq = m * m + sum(f[c] * x * x for c, x in zip(lay.single, xs))
        if lin % fp:
            continue
        s = -lin // fp
        if paired:
            # sum f theta^2 = 0 and sum f theta conj(theta) = n m
            if (n * m - sq) % (2 * fp) or sq % fp:
                continue
            q = (n * m - sq) // (2 * fp)
            if fp * (s * s - 2 * q) != -sq or s * s - 4 * q >= 0:
                continue
        else:
            if (n * m - sq) % fp:
                continue
            tot = (n * m - sq) // fp  # alpha^2 + beta^2
            if (s * s - tot) % 2:
                continue
            q = (s * s - tot) // 2
            if s * s - 4 * q < 0:
                continue
        a, b = _roots(s, q)
        for pv in ((a, b), (b, a)) if a != b else ((a, b),):
            out.append(lay.row(m, dict(zip(lay.single, xs)), pv))
    return out


def _conj(row):
    return tuple(v.complex_conjugate() for v in row)


def _complement(n: int, *rows):
    """The row completing a column-sum -1 table (the subdegree column sums to n - 1)."""
    sums = [sum(vals, QN(0)) for vals in zip(*rows)]
    return (QN(n - 1) - sums[0],) + tuple(QN(-1) - s for s in sums[1:])


def structure_constants(f, rows, pairing, n) -> dict:
    """a_ijk = (1 / (n n_k)) * sum_l f_l theta_il theta_jl conj(theta_kl)."""
    r = len(rows)
    out = {}
    for k in range(r):
        denom = n * rows[k][0].rat
        ck = rows[pairing[k]]
        for i in range(r):
            for j in range(r):
                tot = QN(0)
                for fl, x, y, z in zip(f, rows[i], rows[j], ck):
                    tot = tot + x * y * z * fl
                out[i, j, k] = tot / denom
    return out


def _table_ok(lay: _Layout, rows, pairing) -> bool:
    f, n = lay.f, lay.n
    r = len(rows)
    try:
        for c in range(1, len(f)):
            if sum((rows[i][c] for i in range(1, r)), QN(0)) != -1:
                return False
        for i in range(1, r):
            for j in range(1, r):
                tot = sum((fl * x * y for fl, x, y in zip(f, rows[i], rows[j])), QN(0))
                if tot != (n * rows[i][0].rat if pairing[i] == j else 0):
                    return False
        for v in structure_constants(f, rows, pairing, n).values():
            if not v.is_integer or v.sign() < 0:
                return False
    except MixedRadicands:
        return False
    return True


def _conjugacy_axiom(tag: str, p: int, row) -> bool:
    """Type I only: the two constituents of degree (3p-1)/2 are complex
    conjugates iff p = 3 mod 4, and real otherwise."""
    if tag != "I":
        return True
    a, b = row[1], row[2]
    if p % 4 == 3:
        return b == a.complex_conjugate()
    return a.is_real and b.is_real


def oracle_search(p: int, case: CaseType | str, bound: int = DEFAULT_BOUND) -> list[FeasibleParameters]:
    if isinstance(case, str):
        case = CASE_TYPES[case]
    if not case.commutative:
        raise NonCommutativeCase(f"type {case.tag} has a repeated constituent")
    if p > bound:
        raise BoundExceeded(f"p = {p} exceeds the oracle bound {bound}")
    lay = _Layout(case, p)
    n, r = lay.n, case.rank
    ok = lambda row: _pf_ok(row) and _conjugacy_axiom(case.tag, p, row)  # noqa: E731
    self_rows: dict[int, list] = {}
    paired_rows: dict[int, list] = {}
    for m in range(3, n - 1):
        self_rows[m] = [row for row in _rows_for(lay, m, False) if all(v.is_real for v in row) and ok(row)]
        paired_rows[m] = [row for row in _rows_for(lay, m, True) if ok(row) and ok(_conj(row))]

    found: list[FeasibleParameters] = []

    def emit(rows, pairing):
        rows = (tuple(QN(1) for _ in lay.f),) + tuple(rows)
        if _table_ok(lay, rows, pairing):
            subs = tuple(int(row[0].rat) for row in rows)
            found.append(FeasibleParameters(case.tag, None, p, None, subs, rows, pairing))

    def lookup(row, pool):
        m = row[0]
        return m.is_integer and 3 <= m.rat < n - 1 and row in pool.get(int(m.rat), ())

    if r == 3:
        for m1, cands in self_rows.items():
            for row1 in cands:
                try:
                    row2 = _complement(n, row1)
                except MixedRadicands:
                    continue
                if m1 <= row2[0].rat and lookup(row2, self_rows):
                    emit((row1, row2), (0, 1, 2))
        m = (n - 1) // 2
        if (n - 1) % 2 == 0:
            for row1 in paired_rows.get(m, []):
                emit((row1, _conj(row1)), (0, 2, 1))
    elif r == 4:
        ms = sorted(self_rows)
        for m1 in ms:
            for m2 in ms:
                if m2 < m1 or n - 1 - m1 - m2 < m2:
                    continue
                for row1, row2 in itertools.product(self_rows[m1], self_rows[m2]):
                    try:
                        row3 = _complement(n, row1, row2)
                    except MixedRadicands:
                        continue
                    if lookup(row3, self_rows):
                        emit((row1, row2, row3), (0, 1, 2, 3))
        for m1 in ms:
            if (n - 1 - m1) % 2:
                continue
            m2 = (n - 1 - m1) // 2
            for row1, row2 in itertools.product(self_rows[m1], paired_rows.get(m2, [])):
                emit((row1, row2, _conj(row2)), (0, 1, 3, 2))
    else:
        raise NonCommutativeCase(f"rank {r} is not handled")

    seen, out = set(), []
    for fp in found:
        key = (fp.canonical(), fp.self_paired)
        if key not in seen:
            seen.add(key)
            out.append(fp)
    return sorted(out, key=lambda fp: fp.subdegrees)
