"""Permutations, small-group enumeration, orbitals, blocks and normalizers.

Points are ``0..n-1`` and groups act on the right: ``compose(p, q)`` is
"first p, then q", so ``compose(p, q)[a] == q[p[a]]``.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    BadInput,
    CapExceeded,
    DegreeMismatch,
    NoElementOfOrderP,
    NotTransitive,
    PSquaredDividesOrder,
)
from .scheme import OrbitalDecomposition

DEFAULT_CAP = 10**5


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(len(images))):
            raise BadInput(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        img = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a] = b
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, a: int) -> int:
        return self.images[a]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for a, b in enumerate(self.images):
            inv[b] = a
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(a == b for a, b in enumerate(self.images))

    def order(self) -> int:
        from math import lcm

        seen, out = set(), 1
        for start in range(len(self.images)):
            if start in seen:
                continue
            length, a = 0, start
            while a not in seen:
                seen.add(a)
                a = self.images[a]
                length += 1
            out = lcm(out, length)
        return out

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cyc, a = [], start
            while a not in seen:
                seen.add(a)
                cyc.append(a)
                a = self.images[a]
            out.append(tuple(cyc))
        return out

    def __repr__(self):
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Permutation<{cyc or '()'} on {self.degree}>"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` first, then ``q``."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree}")
    qi = q.images
    return _trusted(tuple(qi[a] for a in p.images))


def _trusted(images: tuple[int, ...]) -> Permutation:
    # composition is the hot loop of enumeration; skip re-validating its output
    perm = object.__new__(Permutation)
    object.__setattr__(perm, "images", images)
    return perm


@dataclass(frozen=True)
class GroupData:
    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...] | None = field(default=None, compare=False)
    order: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.degree != self.degree:
                raise DegreeMismatch(f"generator of degree {g.degree} in a group of degree {self.degree}")

    @classmethod
    def from_images(cls, degree: int, gens: Iterable[Sequence[int]]) -> GroupData:
        return cls(degree, tuple(Permutation(tuple(g)) for g in gens))


def enumerate_group(g: GroupData, cap: int = DEFAULT_CAP) -> GroupData:
    """Breadth-first closure of the generators; elements come out in BFS order."""
    if g.elements is not None:
        return g
    ident = Permutation.identity(g.degree)
    seen = {ident.images}
    order = [ident]
    queue = deque([ident])
    gens = [h for h in g.generators if not h.is_identity()]
    while queue:
        x = queue.popleft()
        for h in gens:
            y = compose(x, h)
            if y.images not in seen:
                seen.add(y.images)
                order.append(y)
                queue.append(y)
                if len(order) > cap:
                    raise CapExceeded(f"group closure exceeded cap {cap}")
    return GroupData(g.degree, g.generators, tuple(order), len(order))


def point_orbit(g: GroupData, start: int = 0) -> list[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for h in g.generators:
            b = h.images[a]
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return sorted(seen)


def is_transitive(g: GroupData) -> bool:
    return len(point_orbit(g)) == g.degree


def orbital_decomposition(g: GroupData) -> OrbitalDecomposition:
    """Colour Ω×Ω by the orbits of G on ordered pairs.

    Colours are renumbered so that 0 is the diagonal and the rest are sorted
    by (subdegree, least point of the suborbit).
    """
    n = g.degree
    if not is_transitive(g):
        raise NotTransitive(f"group of degree {n} is not transitive")
    gens = [h.images for h in g.generators]
    color = [[-1] * n for _ in range(n)]
    raw = 0
    for b0 in range(n):
        if color[0][b0] >= 0:
            continue
        color[0][b0] = raw
        stack = [(0, b0)]
        while stack:
            a, b = stack.pop()
            for h in gens:
                a2, b2 = h[a], h[b]
                if color[a2][b2] < 0:
                    color[a2][b2] = raw
                    stack.append((a2, b2))
        raw += 1
    # transitivity means each orbital meets row 0, so the loop above covers Ω×Ω
    row0 = color[0]
    size = [0] * raw
    witness = [n] * raw
    for b, c in enumerate(row0):
        size[c] += 1
        witness[c] = min(witness[c], b)
    order = sorted(range(raw), key=lambda c: (size[c], witness[c]))
    relabel = {old: new for new, old in enumerate(order)}
    final = tuple(tuple(relabel[c] for c in row) for row in color)
    subdegrees = tuple(size[c] for c in order)
    pairing = tuple(final[witness[c]][0] for c in order)
    return OrbitalDecomposition(n, raw, final, subdegrees, pairing)


def minimal_block(g: GroupData, beta: int) -> list[int]:
    """Smallest block containing 0 and ``beta`` (union-find closure)."""
    n = g.degree
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    gens = [h.images for h in g.generators]
    parent[find(beta)] = find(0)
    queue = deque([(0, beta)])
    while queue:
        a, b = queue.popleft()
        for h in gens:
            ra, rb = find(h[a]), find(h[b])
            if ra != rb:
                parent[rb] = ra
                queue.append((h[a], h[b]))
    root = find(0)
    return [a for a in range(n) if find(a) == root]


def is_primitive_blocks(g: GroupData) -> bool:
    """True iff no block system other than the trivial ones exists."""
    if not is_transitive(g):
        raise NotTransitive(f"group of degree {g.degree} is not transitive")
    return all(len(minimal_block(g, b)) == g.degree for b in range(1, g.degree))


def normalizer_index(g: GroupData, p: int) -> int:
    """``|N(P):P|`` for a Sylow p-subgroup P of order p, by brute force."""
    g = enumerate_group(g)
    if g.order % p:
        raise NoElementOfOrderP(f"{p} does not divide |G| = {g.order}")
    if g.order % (p * p) == 0:
        raise PSquaredDividesOrder(f"{p}^2 divides |G| = {g.order}")
    x = next((e for e in g.elements if e.order() == p), None)
    if x is None:
        raise NoElementOfOrderP(f"no element of order {p}")
    P = {Permutation.identity(g.degree).images}
    y = x
    while not y.is_identity():
        P.add(y.images)
        y = compose(y, x)
    norm = sum(1 for e in g.elements if compose(compose(e.inverse(), x), e).images in P)
    return norm // p


def load_group_json(text: str) -> GroupData:
    """Parse ``{"degree": n, "generators": [[...], ...]}``."""
    try:
        obj = json.loads(text)
        degree = int(obj["degree"])
        gens = obj["generators"]
    except (ValueError, KeyError, TypeError) as exc:
        raise BadInput(f"malformed group fixture: {exc}") from exc
    if not gens:
        raise BadInput("group fixture has no generators")
    for img in gens:
        if len(img) != degree:
            raise DegreeMismatch(f"generator of length {len(img)} for degree {degree}")
    return GroupData.from_images(degree, gens)


def dump_group_json(g: GroupData) -> str:
    return json.dumps({"degree": g.degree, "generators": [list(h.images) for h in g.generators]})
