"""Concrete permutation groups on 3p points (and a few small sanity groups).

Every builtin is produced from explicit generators or from a fully
enumerated element list, so the constructions are reproducible bit for bit.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import sympy

from .errors import (
    BadInput,
    DegreeTooSmall,
    IndexTooLarge,
    NotASubgroup,
    NotClosed,
    NotFound,
    UnsupportedField,
)
from .permcore import GroupData, Permutation, compose, enumerate_group

Subgroup = frozenset  # of image tuples


def _induced_on_pairs(n: int, perm: Sequence[int]) -> tuple[int, ...]:
    pairs = list(itertools.combinations(range(n), 2))
    index = {pr: k for k, pr in enumerate(pairs)}
    return tuple(index[tuple(sorted((perm[a], perm[b])))] for a, b in pairs)


def pairs_action(n: int, alternating: bool = False) -> GroupData:
    """S_n or A_n acting on the n(n-1)/2 unordered pairs, listed lexicographically."""
    if n < 4:
        raise DegreeTooSmall(f"pairs action needs n >= 4, got {n}")
    three = Permutation.from_cycles(n, [(0, 1, 2)])
    if alternating:
        # (0 1 2) with an (n or n-1)-cycle of even sign generates A_n
        long = list(range(n)) if n % 2 else list(range(1, n))
        gens = [three, Permutation.from_cycles(n, [long])]
    else:
        gens = [Permutation.from_cycles(n, [(0, 1)]), Permutation.from_cycles(n, [list(range(n))])]
    return GroupData.from_images(n * (n - 1) // 2, [_induced_on_pairs(n, g.images) for g in gens])


def psl2_line_action(q: int, projective: bool = False) -> GroupData:
    """PSL(2,q) or PGL(2,q) on the projective line; point q stands for infinity."""
    if q % 2 == 0 or not sympy.isprime(q) or q > 23:
        raise UnsupportedField(f"only odd primes q <= 23 are supported, got {q}")
    inf = q
    c = int(sympy.primitive_root(q))
    scale = c if projective else c * c % q

    def mobius(f: Callable[[int], int]) -> tuple[int, ...]:
        return tuple(f(z) for z in range(q + 1))

    shift = mobius(lambda z: inf if z == inf else (z + 1) % q)
    dilate = mobius(lambda z: inf if z == inf else scale * z % q)
    invert = mobius(lambda z: 0 if z == inf else inf if z == 0 else (-pow(z, -1, q)) % q)
    return GroupData.from_images(q + 1, [shift, dilate, invert])


def _check_subgroup(subgroup: Iterable[Permutation]) -> list[Permutation]:
    elems = list(subgroup)
    keys = {e.images for e in elems}
    if not elems or Permutation.identity(elems[0].degree).images not in keys:
        raise NotASubgroup("subgroup must contain the identity")
    for a in elems:
        for b in elems:
            if compose(a, b).images not in keys:
                raise NotASubgroup("subgroup is not closed under composition")
    return elems


def coset_action(g: GroupData, subgroup: Iterable[Permutation], max_index: int = 1000) -> GroupData:
    """Right multiplication on the right cosets Hx, numbered by first appearance."""
    g = enumerate_group(g)
    H = _check_subgroup(subgroup)
    if g.order % len(H):
        raise NotASubgroup(f"|H| = {len(H)} does not divide |G| = {g.order}")
    index = g.order // len(H)
    if index > max_index:
        raise IndexTooLarge(f"index {index} exceeds {max_index}")
    coset_of: dict[tuple[int, ...], int] = {}
    reps: list[Permutation] = []
    for x in g.elements:
        if x.images in coset_of:
            continue
        k = len(reps)
        reps.append(x)
        for h in H:
            coset_of[compose(h, x).images] = k
    gens = [tuple(coset_of[compose(x, s).images] for x in reps) for s in g.generators]
    return GroupData.from_images(index, gens)


def _close(degree: int, gens: Sequence[Permutation], cap: int) -> list[Permutation] | None:
    from .errors import CapExceeded

    try:
        return list(enumerate_group(GroupData(degree, tuple(gens)), cap=cap).elements)
    except CapExceeded:
        return None


def _two_part(k: int) -> int:
    return k & -k


def _sylow2_subgroups(g: GroupData) -> list[Subgroup]:
    target = _two_part(g.order)
    ident = Permutation.identity(g.degree)
    x = next(e for e in g.elements if e.order() == 2)
    P = {ident.images, x.images}
    while len(P) < target:
        for y in g.elements:
            if y.images in P or compose(y, y).images not in P:
                continue
            yi = y.inverse()
            if all(compose(compose(yi, Permutation(e)), y).images in P for e in P):
                P |= {compose(Permutation(e), y).images for e in P}
                break
        else:
            raise NotFound("could not extend a 2-subgroup")
    family = set()
    for s in g.elements:
        si = s.inverse()
        family.add(frozenset(compose(compose(si, Permutation(e)), s).images for e in P))
    return sorted(family, key=lambda S: sorted(S))


def a5_subgroups(g: GroupData, limit: int | None = None) -> list[Subgroup]:
    """Distinct A5 subgroups containing the first involution, in search order.

    Any (2,5)-generated pair whose product has order 3 generates a quotient of
    the (2,3,5) triangle group, hence A5 itself whenever the closure has 60 elements.
    """
    g = enumerate_group(g)
    if g.order % 60:
        raise NotFound(f"|G| = {g.order} is not divisible by 60")
    x = next((e for e in g.elements if e.order() == 2), None)
    if x is None:
        raise NotFound("no involution")
    found: list[Subgroup] = []
    for y in g.elements:
        if y.order() != 5 or compose(x, y).order() != 3:
            continue
        if any(y.images in S for S in found):
            continue
        elems = _close(g.degree, [x, y], cap=60)
        if elems is not None and len(elems) == 60:
            found.append(frozenset(e.images for e in elems))
            if limit is not None and len(found) >= limit:
                break
    if not found:
        raise NotFound("no A5 subgroup")
    return found


def find_subgroup(g: GroupData, target: str) -> list[Permutation] | list[list[Permutation]]:
    """``"A5"``: the first A5 in deterministic search order.
    ``"Sylow2"``: the list of all Sylow 2-subgroups."""
    g = enumerate_group(g)
    if target == "A5":
        return [Permutation(e) for e in sorted(a5_subgroups(g, limit=1)[0])]
    if target == "Sylow2":
        return [[Permutation(e) for e in sorted(S)] for S in _sylow2_subgroups(g)]
    raise BadInput(f"unknown subgroup target {target!r}")


def are_conjugate(g: GroupData, A: Subgroup, B: Subgroup) -> bool:
    g = enumerate_group(g)
    a0 = [Permutation(e) for e in A]
    for s in g.elements:
        si = s.inverse()
        if all(compose(compose(si, e), s).images in B for e in a0):
            return True
    return False


def a5_class_representatives(g: GroupData) -> list[Subgroup]:
    """One A5 from each conjugacy class of A5 subgroups."""
    reps: list[Subgroup] = []
    for S in a5_subgroups(g):
        if not any(are_conjugate(g, S, R) for R in reps):
            reps.append(S)
    return reps


def conjugation_action(g: GroupData, family: Sequence[Iterable[Permutation]]) -> GroupData:
    """Action of the generators by conjugation ``S -> s^-1 S s`` on a family of subgroups."""
    fam = sorted({frozenset(e.images for e in S) for S in family}, key=lambda S: sorted(S))
    index = {S: k for k, S in enumerate(fam)}
    gens = []
    for s in g.generators:
        si = s.inverse()
        img = []
        for S in fam:
            T = frozenset(compose(compose(si, Permutation(e)), s).images for e in S)
            if T not in index:
                raise NotClosed("family is not closed under conjugation")
            img.append(index[T])
        gens.append(tuple(img))
    return GroupData.from_images(len(fam), gens)


def cyclic_regular(n: int) -> GroupData:
    return GroupData.from_images(n, [tuple((a + 1) % n for a in range(n))])


# -- builtin catalogue -------------------------------------------------------

@dataclass(frozen=True)
class FixtureDescriptor:
    name: str
    degree: int
    order: int
    rank: int
    subdegrees: tuple[int, ...]
    primitive: bool
    build: Callable[[], GroupData]
    golden: str | None = None
    note: str = ""

    def __post_init__(self):
        if sum(self.subdegrees) != self.degree or len(self.subdegrees) != self.rank:
            raise BadInput(f"descriptor {self.name} is inconsistent")


def _pgl27_sylow2() -> GroupData:
    G = enumerate_group(psl2_line_action(7, projective=True))
    return conjugation_action(G, find_subgroup(G, "Sylow2"))


def _psl27_sylow2() -> GroupData:
    G = enumerate_group(psl2_line_action(7))
    return conjugation_action(G, find_subgroup(G, "Sylow2"))


def _psl219_a5(which: int) -> Callable[[], GroupData]:
    def build() -> GroupData:
        G = enumerate_group(psl2_line_action(19))
        if which == 0:
            H = find_subgroup(G, "A5")
        else:
            H = [Permutation(e) for e in sorted(a5_class_representatives(G)[which])]
        return coset_action(G, H)

    return build


BUILTINS: dict[str, FixtureDescriptor] = {
    d.name: d
    for d in [
        FixtureDescriptor("a6-pairs", 15, 360, 3, (1, 6, 8), True, lambda: pairs_action(6, True), "a6-pairs"),
        FixtureDescriptor("s6-pairs", 15, 720, 3, (1, 6, 8), True, lambda: pairs_action(6, False), "a6-pairs"),
        FixtureDescriptor("a7-pairs", 21, 2520, 3, (1, 10, 10), True, lambda: pairs_action(7, True), "a7-pairs"),
        FixtureDescriptor("s7-pairs", 21, 5040, 3, (1, 10, 10), True, lambda: pairs_action(7, False), "a7-pairs"),
        FixtureDescriptor("pgl27-sylow2", 21, 336, 4, (1, 4, 8, 8), True, _pgl27_sylow2, "pgl27-sylow2"),
        FixtureDescriptor("psl27-sylow2", 21, 168, 6, (1, 2, 2, 4, 4, 8), False, _psl27_sylow2, None,
                          "imprimitive; non-commutative algebra"),
        FixtureDescriptor("psl219-a5", 57, 3420, 4, (1, 6, 20, 30), True, _psl219_a5(0), "psl219-a5"),
        FixtureDescriptor("psl219-a5b", 57, 3420, 4, (1, 6, 20, 30), True, _psl219_a5(1), "psl219-a5",
                          "coset action on the second class of A5"),
        FixtureDescriptor("psl25-line", 6, 60, 2, (1, 5), True, lambda: psl2_line_action(5)),
        FixtureDescriptor("c5-regular", 5, 5, 5, (1, 1, 1, 1, 1), True, lambda: cyclic_regular(5)),
        FixtureDescriptor("c6-regular", 6, 6, 6, (1,) * 6, False, lambda: cyclic_regular(6)),
    ]
}


def builtin(name: str) -> GroupData:
    try:
        return BUILTINS[name].build()
    except KeyError:
        raise BadInput(f"unknown builtin fixture {name!r}; choose from {sorted(BUILTINS)}") from None
