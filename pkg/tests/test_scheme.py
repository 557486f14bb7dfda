import dataclasses

import pytest

from degree3p.errors import NonCommutative, NotClosedUnderPairing
from degree3p.exactalg import QuadraticNumber as Q, charpoly, extract_roots, parse_quadratic
from degree3p.fixtures import BUILTINS
from degree3p.scheme import (
    AdmissibleSet,
    amalgamate,
    canonical_table,
    connectivity_primitive,
    eigentable,
    perron_frobenius_check,
    regular_matrices,
    table_from_json,
    table_from_tsv,
    table_to_json,
    table_to_tsv,
    verify_trace_identities,
)
from degree3p.tables import evaluate

ALL = sorted(BUILTINS)


def _class(rep, m):
    return next(i for i in range(rep.od.r) if rep.od.subdegrees[i] == m)


@pytest.mark.parametrize("name", ALL)
def test_tensor_invariants(name, analyzed):
    rep = analyzed(name)
    t = rep.tensor
    assert t.invariant_failures(associativity=t.r <= 6) == []
    for j in range(t.r):
        for k in range(t.r):
            assert t[0, j, k] == int(j == k)


@pytest.mark.parametrize("name", ALL)
def test_trace_identities(name, analyzed):
    rep = analyzed(name)
    assert rep.traces.passed, rep.traces.first_failure
    assert rep.traces.checked == rep.od.r + rep.od.r**2 + rep.od.r**3 + 1


def test_a6_valency8_triangle():
    from degree3p.fixtures import builtin
    from degree3p.analysis import analyze_group

    rep = analyze_group(builtin("a6-pairs"))
    c = _class(rep, 8)
    assert rep.tensor[c, c, c] == 4


def test_mutated_tensor_fails(analyzed):
    rep = analyzed("pgl27-sylow2")
    t = rep.tensor
    a = [[list(row) for row in plane] for plane in t.a]
    a[1][1][1] += 1
    bad = dataclasses.replace(t, a=tuple(tuple(tuple(r) for r in pl) for pl in a))
    report = verify_trace_identities(rep.od, bad)
    assert not report.passed
    assert "tr(B1B1B1)" in report.first_failure
    assert bad.invariant_failures()


def test_pgl27_cubic_trace(analyzed):
    rep = analyzed("pgl27-sylow2")
    c = _class(rep, 4)
    B = rep.od.adjacency(c)
    assert int((B @ B * B.T).sum()) == 21 * 4 * rep.tensor[c, c, c]


def test_regular_matrices(analyzed):
    rep = analyzed("a6-pairs")
    L = regular_matrices(rep.tensor)
    assert L[0].entries == tuple(tuple(int(i == j) for j in range(3)) for i in range(3))
    assert {v for v, _ in extract_roots(charpoly(L[_class(rep, 6)]))} == {Q(6), Q(-3), Q(1)}
    rep = analyzed("pgl27-sylow2")
    L = regular_matrices(rep.tensor)
    roots = {v for v, _ in extract_roots(charpoly(L[_class(rep, 4)]))}
    assert roots == {Q(4), Q(-2), Q(1, 1, 2), Q(1, -1, 2)}


def test_eigentable_a6(analyzed):
    t = analyzed("a6-pairs").table
    assert sorted(t.multiplicities) == [1, 5, 9]
    by_mult = {m: {t.subdegrees[i]: t.columns[c][i] for i in range(t.r)} for c, m in enumerate(t.multiplicities)}
    assert by_mult[5] == {1: 1, 6: -3, 8: 2}
    assert by_mult[9] == {1: 1, 6: 1, 8: -2}


def test_eigentable_pgl27(analyzed):
    t = analyzed("pgl27-sylow2").table
    assert t.multiplicities == (1, 8, 6, 6)
    assert canonical_table(t) == canonical_table(evaluate("14.2"))
    row4 = next(t.row(i) for i in range(1, t.r) if t.subdegrees[i] == 4)
    assert {str(v) for v in row4} == {"4", "-2", "1+sqrt(2)", "1-sqrt(2)"}


def test_eigentable_psl219(analyzed):
    t = analyzed("psl219-a5").table
    assert t.multiplicities == (1, 20, 18, 18)
    row6 = next(t.row(i) for i in range(1, t.r) if t.subdegrees[i] == 6)
    assert set(row6) == {Q(6), Q(-3), parse_quadratic("3/2+1/2*sqrt(5)"), parse_quadratic("3/2-1/2*sqrt(5)")}


@pytest.mark.parametrize("name", [n for n in ALL if BUILTINS[n].rank <= 4 and n != "c5-regular"])
def test_relations_on_tables(name, analyzed):
    rep = analyzed(name)
    assert rep.table is not None
    assert rep.table.relation_failures(rep.tensor) == []


def test_noncommutative_rejected(analyzed):
    rep = analyzed("psl27-sylow2")
    assert not rep.tensor.is_commutative()
    with pytest.raises(NonCommutative):
        eigentable(rep.od, rep.tensor)
    assert rep.table_error.startswith("NonCommutative")


def test_perron_frobenius():
    assert perron_frobenius_check((Q(6), Q(-3), Q(1)))
    assert perron_frobenius_check((Q(8), Q(-1), Q(0, -2, 2), Q(0, 2, 2)))
    assert not perron_frobenius_check((Q(4), Q(4), Q(-2)))
    assert not perron_frobenius_check((Q(4), Q(-4), Q(1)))


@pytest.mark.parametrize("name", [n for n in ALL if BUILTINS[n].primitive])
def test_perron_frobenius_on_primitive_fixtures(name, analyzed):
    rep = analyzed(name)
    if rep.table is not None and min(rep.od.subdegrees[1:]) > 1:
        assert all(rep.perron_frobenius)


@pytest.mark.parametrize("name", ALL)
def test_connectivity_matches_blocks(name, analyzed):
    rep = analyzed(name)
    assert rep.primitive_connectivity == rep.primitive_blocks == BUILTINS[name].primitive


def test_connectivity_examples(analyzed):
    assert connectivity_primitive(analyzed("psl219-a5").od)
    assert not connectivity_primitive(analyzed("psl27-sylow2").od)
    assert not connectivity_primitive(analyzed("c6-regular").od)


def test_amalgamate_everything(analyzed):
    rep = analyzed("pgl27-sylow2")
    am = amalgamate(rep.od, rep.tensor, AdmissibleSet.of([range(1, rep.od.r)]))
    assert am.subdegrees == (1, 20)
    assert all(v == -1 for v in am.rows[1][1:])


def test_amalgamate_identity(analyzed):
    rep = analyzed("a6-pairs")
    am = amalgamate(rep.od, rep.tensor, AdmissibleSet.identity(rep.od.r))
    assert am.subdegrees == rep.od.subdegrees
    assert am.rows == tuple(rep.table.row(i) for i in range(rep.od.r))


def test_amalgamate_paired_fours(analyzed):
    rep = analyzed("psl27-sylow2")
    od = rep.od
    fours = [i for i in range(od.r) if od.subdegrees[i] == 4]
    assert od.pairing[fours[0]] == fours[1]
    rest = [(i,) for i in range(1, od.r) if i not in fours]
    am = amalgamate(od, rep.tensor, AdmissibleSet.of(rest + [fours]))
    assert sorted(am.subdegrees) == [1, 2, 2, 8, 8]
    merged = am.subdegrees[-1]
    assert merged == 8 and am.pairing[-1] == len(am.subdegrees) - 1
    assert am.rows is None  # non-commutative: trace checks only


def test_amalgamate_not_closed(analyzed):
    rep = analyzed("psl27-sylow2")
    od = rep.od
    two = next(i for i in range(od.r) if od.subdegrees[i] == 2)
    four = next(i for i in range(od.r) if od.subdegrees[i] == 4)
    groups = [(two, four)] + [(i,) for i in range(1, od.r) if i not in (two, four)]
    with pytest.raises(NotClosedUnderPairing):
        amalgamate(od, rep.tensor, AdmissibleSet.of(groups))


@pytest.mark.parametrize("name", ["a6-pairs", "pgl27-sylow2", "psl219-a5"])
def test_serialisation_roundtrip(name, analyzed):
    t = analyzed(name).table
    assert table_from_tsv(table_to_tsv(t)) == t
    assert table_from_json(table_to_json(t)) == t


def test_canonical_ignores_conjugate_order():
    t = evaluate("14.2")
    swapped = dataclasses.replace(t, columns=(t.columns[0], t.columns[1], t.columns[3], t.columns[2]),
                                  multiplicities=(1, 8, 6, 6))
    assert canonical_table(t) == canonical_table(swapped)
    other = evaluate("14.3")
    assert canonical_table(t) != canonical_table(other)
