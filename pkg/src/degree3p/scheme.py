"""Centralizer-algebra machinery for a transitive permutation group.

Given the orbital colouring of Ω×Ω this module computes the intersection
numbers ``a[i][j][k]`` (``B_i B_j = sum_k a[i][j][k] B_k``), checks the trace
identities they satisfy, and recovers the exact eigenvalue table together
with the multiplicities of the permutation character's constituents.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    BadInput,
    InconsistentRepresentatives,
    InvariantViolation,
    IrreducibleCubicOrWorse,
    MixedRadicands,
    NonCommutative,
    NonIntegerMultiplicity,
    NotClosedUnderPairing,
    SubdegreeOne,
)
from .exactalg import (
    IntMatrix,
    QuadraticNumber,
    charpoly,
    extract_roots,
    format_quadratic,
    nullspace,
    parse_quadratic,
    solve_unique,
)


@dataclass(frozen=True)
class OrbitalDecomposition:
    """Colour map of Ω×Ω; class 0 is the diagonal."""

    n: int
    r: int
    color: tuple[tuple[int, ...], ...]
    subdegrees: tuple[int, ...]
    pairing: tuple[int, ...]

    def __post_init__(self):
        if any(self.color[a][a] != 0 for a in range(self.n)):
            raise InvariantViolation("diagonal is not colour 0")
        if self.subdegrees[0] != 1 or sum(self.subdegrees) != self.n:
            raise InvariantViolation(f"bad subdegrees {self.subdegrees} for degree {self.n}")
        for i, j in enumerate(self.pairing):
            if self.pairing[j] != i or self.subdegrees[i] != self.subdegrees[j]:
                raise InvariantViolation(f"pairing {self.pairing} is not a length-preserving involution")

    def adjacency(self, i: int) -> np.ndarray:
        return (np.asarray(self.color) == i).astype(np.int64)

    def self_paired(self, i: int) -> bool:
        return self.pairing[i] == i


@dataclass(frozen=True)
class IntersectionTensor:
    r: int
    a: tuple[tuple[tuple[int, ...], ...], ...]
    subdegrees: tuple[int, ...]
    pairing: tuple[int, ...]

    def __getitem__(self, ijk):
        i, j, k = ijk
        return self.a[i][j][k]

    def is_commutative(self) -> bool:
        r = self.r
        return all(self.a[i][j][k] == self.a[j][i][k] for i in range(r) for j in range(r) for k in range(r))

    def invariant_failures(self, associativity: bool = True) -> list[str]:
        """Every violated structural identity, as readable strings (empty if sound)."""
        r, a, nn, star = self.r, self.a, self.subdegrees, self.pairing
        out = []
        for i, j, k in itertools.product(range(r), repeat=3):
            v = a[i][j][k]
            if v < 0:
                out.append(f"a[{i}][{j}][{k}]={v} is negative")
            if i == 0 and v != int(j == k):
                out.append(f"a[0][{j}][{k}]={v}, expected {int(j == k)}")
            if j == 0 and v != int(i == k):
                out.append(f"a[{i}][0][{k}]={v}, expected {int(i == k)}")
            if k == 0 and v != (nn[i] if j == star[i] else 0):
                out.append(f"a[{i}][{j}][0]={v}, expected {nn[i] if j == star[i] else 0}")
            if nn[k] * v != nn[i] * a[k][star[j]][i]:
                out.append(f"triangle recount fails at ({i},{j},{k})")
        for i, j in itertools.product(range(r), repeat=2):
            if sum(a[i][j][k] * nn[k] for k in range(r)) != nn[i] * nn[j]:
                out.append(f"row-sum bookkeeping fails at ({i},{j})")
        if associativity:
            for i, j, k, l in itertools.product(range(r), repeat=4):
                lhs = sum(a[i][j][v] * a[v][k][l] for v in range(r))
                rhs = sum(a[j][k][v] * a[i][v][l] for v in range(r))
                if lhs != rhs:
                    out.append(f"associativity fails at ({i},{j},{k},{l})")
        return out


def _triangle_counts(od: OrbitalDecomposition, alpha: int, beta: int) -> list[list[int]]:
    counts = [[0] * od.r for _ in range(od.r)]
    ra = od.color[alpha]
    for gamma in range(od.n):
        counts[ra[gamma]][od.color[gamma][beta]] += 1
    return counts


def intersection_tensor(od: OrbitalDecomposition) -> IntersectionTensor:
    """Count triangles over a representative edge of each colour.

    A second edge of the same colour (taken from a different row) must give
    the same counts, otherwise the colouring is not group-invariant.
    """
    r, n = od.r, od.n
    cols = [[[0] * r for _ in range(r)] for _ in range(r)]
    for k in range(r):
        edges = []
        for alpha in range(n):
            beta = next((b for b in range(n) if od.color[alpha][b] == k), None)
            if beta is not None:
                edges.append((alpha, beta))
                if len(edges) == 2:
                    break
        first = _triangle_counts(od, *edges[0])
        for other in edges[1:]:
            if _triangle_counts(od, *other) != first:
                raise InconsistentRepresentatives(f"colour {k}: edges {edges[0]} and {other} disagree")
        for i in range(r):
            for j in range(r):
                cols[i][j][k] = first[i][j]
    a = tuple(tuple(tuple(row) for row in plane) for plane in cols)
    return IntersectionTensor(r, a, od.subdegrees, od.pairing)


@dataclass
class TraceReport:
    passed: bool
    checked: int
    failures: list[str] = field(default_factory=list)

    @property
    def first_failure(self) -> str | None:
        return self.failures[0] if self.failures else None


def verify_trace_identities(od: OrbitalDecomposition, tensor: IntersectionTensor) -> TraceReport:
    """Check the linear, quadratic and cubic trace identities on the n×n side."""
    n, r, nn, star = od.n, od.r, od.subdegrees, od.pairing
    B = [od.adjacency(i) for i in range(r)]
    failures, checked = [], 0

    def expect(label, got, want):
        nonlocal checked
        checked += 1
        if got != want:
            failures.append(f"{label}: got {got}, expected {want}")

    for i in range(r):
        expect(f"tr(B{i})", int(np.trace(B[i])), n if i == 0 else 0)
    for i, j in itertools.product(range(r), repeat=2):
        # tr(XY) = sum of X * Y^T entrywise
        expect(f"tr(B{i}B{j})", int((B[i] * B[j].T).sum()), n * nn[i] if j == star[i] else 0)
    for i, j in itertools.product(range(r), repeat=2):
        prod = B[i] @ B[j]
        for k in range(r):
            got = int((prod * B[star[k]].T).sum())
            expect(f"tr(B{i}B{j}B{star[k]})", got, n * nn[k] * tensor[i, j, k])
    total = sum(B)
    checked += 1
    if not (total == 1).all():
        failures.append("sum of B_i is not the all-ones matrix")
    return TraceReport(not failures, checked, failures)


def regular_matrices(tensor: IntersectionTensor) -> list[IntMatrix]:
    """Matrices of left multiplication by each B_i in the basis B_0..B_{r-1}."""
    r = tensor.r
    return [IntMatrix.from_rows([[tensor[i, j, k] for j in range(r)] for k in range(r)]) for i in range(r)]


@dataclass(frozen=True)
class EigenvalueTable:
    """Column 0 is the trivial constituent (multiplicity 1, eigenvalue m_i)."""

    n: int
    subdegrees: tuple[int, ...]
    multiplicities: tuple[int, ...]
    columns: tuple[tuple[QuadraticNumber, ...], ...]
    pairing: tuple[int, ...] | None = None

    @property
    def r(self) -> int:
        return len(self.subdegrees)

    def row(self, i: int) -> tuple[QuadraticNumber, ...]:
        return tuple(col[i] for col in self.columns)

    def rows(self) -> list[tuple[QuadraticNumber, ...]]:
        return [self.row(i) for i in range(self.r)]

    def relation_failures(self, tensor: IntersectionTensor | None = None) -> list[str]:
        """Exact check of the linear, quadratic and (given a tensor) cubic relations."""
        n, r, f, m = self.n, self.r, self.multiplicities, self.subdegrees
        star = self.pairing or tuple(range(r))
        th = self.rows()
        out = []
        if sum(f) != n:
            out.append(f"multiplicities sum to {sum(f)}, not {n}")
        for i in range(1, r):
            if th[i][0] != m[i]:
                out.append(f"trivial column of class {i} is {th[i][0]}, not {m[i]}")
            if sum((fl * t for fl, t in zip(f, th[i])), QuadraticNumber(0)) != 0:
                out.append(f"linear relation fails for class {i}")
        for i, j in itertools.product(range(1, r), repeat=2):
            got = sum((fl * a * b for fl, a, b in zip(f, th[i], th[j])), QuadraticNumber(0))
            if got != (n * m[i] if j == star[i] else 0):
                out.append(f"quadratic relation fails for ({i},{j}): {got}")
        for lam in range(1, len(f)):
            if sum((th[i][lam] for i in range(1, r)), QuadraticNumber(0)) != -1:
                out.append(f"column {lam} does not sum to -1 over nontrivial classes")
        if tensor is not None:
            for i, j, k in itertools.product(range(r), repeat=3):
                got = sum((fl * a * b * c for fl, a, b, c in zip(f, th[i], th[j], th[star[k]])), QuadraticNumber(0))
                if got != n * m[k] * tensor[i, j, k]:
                    out.append(f"cubic relation fails for ({i},{j},{k})")
        return out


def _column_key(col: Sequence[QuadraticNumber]) -> tuple:
    return (any(v.rad for v in col), tuple(v.sort_key() for v in col))


def eigentable(od: OrbitalDecomposition, tensor: IntersectionTensor) -> EigenvalueTable:
    """Exact eigenvalue table of a commutative centralizer algebra.

    Eigenvalues come from the r×r regular matrices; columns are the common
    eigenvectors, found by refining eigenspaces one class at a time.
    """
    if not tensor.is_commutative():
        raise NonCommutative(f"rank-{tensor.r} algebra is not commutative")
    r = tensor.r
    mats = regular_matrices(tensor)
    one = QuadraticNumber(1)
    zero = QuadraticNumber(0)
    pieces = [([[one if a == b else zero for a in range(r)] for b in range(r)], [one])]
    try:
        for i in range(1, r):
            L = mats[i]
            roots = [theta for theta, _ in extract_roots(charpoly(L))]
            refined = []
            for basis, vals in pieces:
                for theta in roots:
                    # (L - theta) applied to each basis vector, as columns
                    image = [
                        [sum((L[row, c] * v[c] for c in range(r)), zero) - theta * v[row] for v in basis]
                        for row in range(r)
                    ]
                    kern = nullspace(image, len(basis))
                    if kern:
                        sub = [[sum((cf * v[row] for cf, v in zip(kv, basis)), zero) for row in range(r)] for kv in kern]
                        refined.append((sub, vals + [theta]))
            pieces = refined
    except MixedRadicands as exc:
        raise IrreducibleCubicOrWorse(f"eigenvalues span more than one quadratic field: {exc}") from exc
    if len(pieces) != r or any(len(b) != 1 for b, _ in pieces):
        raise InvariantViolation("common eigenspaces are not one-dimensional")
    cols = [tuple(vals) for _, vals in pieces]
    trivial = tuple(QuadraticNumber(m) for m in od.subdegrees)
    if trivial not in cols:
        raise InvariantViolation("no trivial column among common eigenvectors")
    rest = sorted((c for c in cols if c != trivial), key=_column_key)
    cols = [trivial] + rest
    # Σ f = n and Σ f θ_i = 0 for i ≥ 1
    system = [[one] * r] + [[c[i] for c in cols] for i in range(1, r)]
    rhs = [QuadraticNumber(od.n)] + [zero] * (r - 1)
    try:
        sol = solve_unique(system, rhs)
    except MixedRadicands as exc:
        raise IrreducibleCubicOrWorse(str(exc)) from exc
    if sol is None:
        raise NonIntegerMultiplicity("multiplicity system is singular")
    mults = []
    for f in sol:
        if not f.is_integer or f.rat <= 0:
            raise NonIntegerMultiplicity(f"multiplicity {f} is not a positive integer")
        mults.append(int(f.rat))
    return EigenvalueTable(od.n, od.subdegrees, tuple(mults), tuple(cols), od.pairing)


def perron_frobenius_check(row: Sequence, m: int | None = None) -> bool:
    """Spectral bound: m is a simple eigenvalue and every other one has |θ| < m.

    ``row`` lists one eigenvalue per column; ``m`` defaults to its first entry.
    """
    row = [QuadraticNumber.coerce(v) for v in row]
    m = int(row[0].rat) if m is None else m
    if m <= 1:
        raise SubdegreeOne(f"subdegree {m} has no Perron-Frobenius content")
    hits = sum(1 for v in row if v == m)
    return hits == 1 and all(v == m or v.abs_lt(m) for v in row)


def connectivity_primitive(od: OrbitalDecomposition) -> bool:
    """True iff every nontrivial orbital graph is connected."""
    n = od.n
    for i in range(1, od.r):
        j = od.pairing[i]
        seen = {0}
        stack = [0]
        while stack:
            a = stack.pop()
            for b, c in enumerate(od.color[a]):
                if (c == i or c == j) and b not in seen:
                    seen.add(b)
                    stack.append(b)
        if len(seen) != n:
            return False
    return True


@dataclass(frozen=True)
class AdmissibleSet:
    """Partition of the nontrivial colours; the pairing must permute its groups."""

    groups: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, groups) -> AdmissibleSet:
        return cls(tuple(tuple(sorted(g)) for g in groups))

    @classmethod
    def identity(cls, r: int) -> AdmissibleSet:
        return cls(tuple((i,) for i in range(1, r)))


@dataclass(frozen=True)
class Amalgamation:
    groups: AdmissibleSet
    subdegrees: tuple[int, ...]
    pairing: tuple[int, ...]
    rows: tuple[tuple[QuadraticNumber, ...], ...] | None


def amalgamate(od: OrbitalDecomposition, tensor: IntersectionTensor, groups: AdmissibleSet) -> Amalgamation:
    """Merge colours into an admissible set and re-verify its trace relations.

    Eigenvalue rows are summed columnwise when the algebra is commutative;
    otherwise only the subdegrees and trace checks are available.
    """
    r, n = od.r, od.n
    flat = sorted(c for g in groups.groups for c in g)
    if flat != list(range(1, r)) or any(not g for g in groups.groups):
        raise BadInput(f"groups {groups.groups} do not partition 1..{r - 1}")
    index = {c: gi for gi, g in enumerate(groups.groups) for c in g}
    star = []
    for g in groups.groups:
        images = {index[od.pairing[c]] for c in g}
        if len(images) != 1 or sorted(od.pairing[c] for c in g) != list(groups.groups[images.pop()]):
            raise NotClosedUnderPairing(f"pairing does not map group {g} onto a group")
        star.append(index[od.pairing[g[0]]] + 1)
    star = tuple([0] + star)
    subs = tuple([1] + [sum(od.subdegrees[c] for c in g) for g in groups.groups])

    color = np.asarray(od.color)
    A = [(color == 0).astype(np.int64)]
    for g in groups.groups:
        A.append(np.isin(color, g).astype(np.int64))
    t = len(A)
    for i in range(1, t):
        if int(np.trace(A[i])) != 0:
            raise InvariantViolation(f"merged class {i} has nonzero trace")
        for j in range(1, t):
            want = n * subs[i] if j == star[i] else 0
            if int((A[i] * A[j].T).sum()) != want:
                raise InvariantViolation(f"quadratic trace relation fails for merged ({i},{j})")
    if not (sum(A[1:]) == 1 - A[0]).all():
        raise InvariantViolation("merged classes do not cover W - I")

    rows = None
    if tensor.is_commutative():
        table = eigentable(od, tensor)
        rows = [table.row(0)]
        for g in groups.groups:
            rows.append(tuple(sum(vals, QuadraticNumber(0)) for vals in zip(*(table.row(c) for c in g))))
        rows = tuple(rows)
    return Amalgamation(groups, subs, star, rows)


# -- canonical form and serialisation ---------------------------------------

def _value_key(v: QuadraticNumber) -> tuple:
    return (v.rad, v.rat, v.coeff)


def canonical_table(table: EigenvalueTable) -> tuple:
    """A representative invariant under relabelling classes of equal subdegree
    and reordering columns of equal multiplicity."""
    r = table.r
    blocks: dict[int, list[int]] = {}
    for i in range(1, r):
        blocks.setdefault(table.subdegrees[i], []).append(i)
    groups = [blocks[k] for k in sorted(blocks)]
    best = None
    for perms in itertools.product(*(itertools.permutations(g) for g in groups)):
        order = [0] + [i for p in perms for i in p]
        cols = [(table.multiplicities[c], tuple(_value_key(table.columns[c][i]) for i in order)) for c in range(1, len(table.columns))]
        cand = (tuple(table.subdegrees[i] for i in order), tuple(sorted(cols)))
        if best is None or cand < best:
            best = cand
    return (table.n, best)


def tables_equivalent(a: EigenvalueTable, b: EigenvalueTable) -> bool:
    return canonical_table(a) == canonical_table(b)


def table_to_tsv(table: EigenvalueTable) -> str:
    lines = ["B\\f\t" + "\t".join(str(f) for f in table.multiplicities)]
    for i in range(table.r):
        lines.append(f"B{i}\t" + "\t".join(format_quadratic(v) for v in table.row(i)))
    if table.pairing is not None:
        lines.append("pairing\t" + "\t".join(map(str, table.pairing)))
    return "\n".join(lines) + "\n"


def table_from_tsv(text: str) -> EigenvalueTable:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    head = lines[0].split("\t")
    mults = tuple(int(v) for v in head[1:])
    pairing = None
    if lines[-1].startswith("pairing\t"):
        pairing = tuple(int(v) for v in lines.pop().split("\t")[1:])
    rows = [[parse_quadratic(v) for v in ln.split("\t")[1:]] for ln in lines[1:]]
    cols = tuple(tuple(row[c] for row in rows) for c in range(len(mults)))
    subs = tuple(int(row[0].rat) for row in rows)
    n = sum(mults)
    return EigenvalueTable(n, subs, mults, cols, pairing)


def table_to_json(table: EigenvalueTable) -> dict:
    return {
        "n": table.n,
        "subdegrees": list(table.subdegrees),
        "multiplicities": list(table.multiplicities),
        "pairing": list(table.pairing) if table.pairing else None,
        "rows": [[format_quadratic(v) for v in table.row(i)] for i in range(table.r)],
    }


def table_from_json(obj: dict | str) -> EigenvalueTable:
    if isinstance(obj, str):
        obj = json.loads(obj)
    rows = [[parse_quadratic(v) for v in row] for row in obj["rows"]]
    cols = tuple(tuple(row[c] for row in rows) for c in range(len(obj["multiplicities"])))
    pairing = tuple(obj["pairing"]) if obj.get("pairing") else None
    return EigenvalueTable(obj["n"], tuple(obj["subdegrees"]), tuple(obj["multiplicities"]), cols, pairing)
