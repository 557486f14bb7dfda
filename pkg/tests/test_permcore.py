import json

import pytest

from degree3p.errors import BadInput, CapExceeded, DegreeMismatch
from degree3p.fixtures import cyclic_regular, pairs_action, psl2_line_action
from degree3p.permcore import (
    GroupData,
    Permutation,
    compose,
    dump_group_json,
    enumerate_group,
    is_primitive_blocks,
    load_group_json,
    minimal_block,
    normalizer_index,
    orbital_decomposition,
)


def test_compose_identity_and_involution():
    s = Permutation((2, 0, 3, 1))
    assert compose(Permutation.identity(4), s) == s
    t = Permutation.from_cycles(3, [(0, 1)])
    assert compose(t, t).is_identity()


def test_compose_convention_pinned():
    # left to right: apply (0 1 2) first, then (0 1)
    c = Permutation.from_cycles(3, [(0, 1, 2)])
    t = Permutation.from_cycles(3, [(0, 1)])
    assert c.images == (1, 2, 0) and t.images == (1, 0, 2)
    assert compose(c, t).images == (0, 2, 1)  # the transposition (1 2)
    # the right-to-left product would have been (0 2)
    assert compose(t, c).images == (2, 1, 0)
    assert c * t == compose(c, t)


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(Permutation.identity(3), Permutation.identity(4))


def test_permutation_validation_and_order():
    with pytest.raises(BadInput):
        Permutation((0, 0, 1))
    p = Permutation.from_cycles(6, [(0, 1, 2), (3, 4)])
    assert p.order() == 6
    assert compose(p, p.inverse()).is_identity()


def test_enumerate_orders():
    assert enumerate_group(pairs_action(6, True)).order == 360
    assert enumerate_group(psl2_line_action(19)).order == 3420
    assert enumerate_group(cyclic_regular(9)).order == 9


def test_enumerate_cap():
    with pytest.raises(CapExceeded):
        enumerate_group(pairs_action(6, False), cap=100)


def test_orbitals():
    od = orbital_decomposition(enumerate_group(pairs_action(6, True)))
    assert (od.r, sorted(od.subdegrees)) == (3, [1, 6, 8])
    od = orbital_decomposition(enumerate_group(cyclic_regular(5)))
    assert od.r == 5 and set(od.subdegrees) == {1}


def test_orbital_invariance_and_pairing(built):
    g = built("pgl27-sylow2")
    od = orbital_decomposition(g)
    n = od.n
    for s in g.generators:
        for a in range(n):
            for b in range(n):
                assert od.color[s(a)][s(b)] == od.color[a][b]
    for a in range(n):
        for b in range(n):
            assert od.color[b][a] == od.pairing[od.color[a][b]]
    assert od.pairing[0] == 0
    assert all(od.pairing[od.pairing[i]] == i for i in range(od.r))
    for i in range(od.r):
        B = od.adjacency(i)
        assert set(B.sum(axis=0)) == {od.subdegrees[i]} == set(B.sum(axis=1))


def test_primitivity_by_blocks(built):
    assert is_primitive_blocks(built("a6-pairs"))
    assert not is_primitive_blocks(built("psl27-sylow2"))
    assert not is_primitive_blocks(enumerate_group(cyclic_regular(6)))
    assert not is_primitive_blocks(enumerate_group(cyclic_regular(15)))
    assert is_primitive_blocks(enumerate_group(cyclic_regular(7)))
    blk = minimal_block(enumerate_group(cyclic_regular(6)), 3)
    assert sorted(blk) == [0, 3]


def test_normalizer_index(built):
    assert normalizer_index(built("a6-pairs"), 5) == 2
    assert normalizer_index(built("s6-pairs"), 5) == 4
    assert normalizer_index(built("pgl27-sylow2"), 7) == 6


def test_normalizer_index_errors(built):
    with pytest.raises(BadInput):
        normalizer_index(built("a6-pairs"), 7)


def test_group_json_roundtrip():
    g = pairs_action(4, False)
    h = load_group_json(dump_group_json(g))
    assert h.degree == 6 and h.generators == g.generators
    assert enumerate_group(h).order == 24
    with pytest.raises(BadInput):
        load_group_json(json.dumps({"degree": 3, "generators": [[0, 1]]}))
    with pytest.raises(BadInput):
        load_group_json("not json")


def test_from_images():
    g = GroupData.from_images(3, [[1, 2, 0]])
    assert enumerate_group(g).order == 3
