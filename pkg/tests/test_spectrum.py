import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from frevival.characters import character_table
from frevival.groups import abelian_sum, conjugacy_classes, cyclic, dihedral, symmetric
from frevival.spectrum import (
    CayleyGraph,
    EmptyConnectionSet,
    IdentityInConnectionSet,
    NotClassUnion,
    NotInverseClosed,
    is_connected,
    numeric_spectrum_crosscheck,
    spectrum_by_character,
    validate_connection_set,
)

from conftest import Z6XD3_S


def test_z6xd3_connection_set(z6xd3):
    G, S, classes = z6xd3.G, z6xd3.S, z6xd3.classes
    assert len(S) == 10
    reps = sorted(G.labels[classes.representatives[c]] for c in S.class_ids)
    assert reps == sorted(["(1,a)", "(5,a)", "(1,b)", "(5,b)"])
    assert is_connected(G, S)
    by_reps = validate_connection_set(G, classes, [[1, "a"], [5, "a"], [1, "b"], [5, "b"]], representatives=True)
    assert by_reps == S


@pytest.mark.parametrize(
    "raw, error, culprit",
    [
        ([], EmptyConnectionSet, None),
        ([0, 1, 3], IdentityInConnectionSet, 0),
        ([1], NotInverseClosed, 1),
    ],
)
def test_rejections_z4(raw, error, culprit):
    G = cyclic(4)
    with pytest.raises(error) as info:
        validate_connection_set(G, None, raw)
    assert info.value.element == culprit


def test_s3_single_transposition_is_not_a_class_union():
    G = symmetric(3)
    with pytest.raises(NotClassUnion) as info:
        validate_connection_set(G, None, ["(1,2)"])
    assert G.labels[info.value.element] == "(1,2)"
    assert "conjugate" in str(info.value)


def test_z4_connectivity():
    G = cyclic(4)
    assert is_connected(G, validate_connection_set(G, None, [1, 3]))
    assert not is_connected(G, validate_connection_set(G, None, [2]))


def test_adjacency_structure(z6xd3):
    G, S, A = z6xd3.G, z6xd3.S, z6xd3.graph.adjacency
    assert (A == A.T).all() and not A.diagonal().any()
    assert (A.sum(axis=1) == len(S)).all()
    for g in range(G.order):
        assert set(np.flatnonzero(A[g])) == {int(G.mult[s, g]) for s in S.elements}


def test_k2_spectrum(k2):
    assert sorted(e.exact for e in k2.spec.entries) == [-1, 1]
    assert numeric_spectrum_crosscheck(k2.graph, k2.spec).passed


def test_z4_spectrum(z4):
    assert sorted(z4.spec.expanded()) == pytest.approx([-2, 0, 0, 2])
    check = numeric_spectrum_crosscheck(z4.graph, z4.spec)
    assert check.passed and check.max_deviation < 1e-12


def test_z6xd3_spectrum(z6xd3):
    t, spec = z6xd3.table, z6xd3.spec
    lam = {r.label: e.exact for r, e in zip(t.rows, spec.entries)}
    # trivial Z6 character times the 2-dimensional D3 character
    assert lam["chi_0*rho_1"] == -2
    # the Z6 character sending 1 to exp(pi i/3) times the trivial D3 character
    assert lam["chi_1*trivial"] == 5
    assert spec.integral
    assert spec.trace() == 0
    check = numeric_spectrum_crosscheck(z6xd3.graph, spec)
    assert check.passed
    assert len(z6xd3.graph.eigensystem.values) == 36
    assert np.abs(np.linalg.eigvalsh(z6xd3.graph.adjacency.astype(float)) - spec.expanded()).max() < 1e-9


def test_non_integral_spectrum():
    G = cyclic(5)
    S = validate_connection_set(G, None, [1, 4])
    spec = spectrum_by_character(S, character_table(G))
    assert not spec.integral
    assert abs(spec.trace()) < 1e-8 * G.order
    assert numeric_spectrum_crosscheck(CayleyGraph.build(G, S), spec).passed


def test_central_generator_spectrum():
    # S = {a^2} in D4 is disconnected, but its spectrum is still defined: every
    # linear character sees +1 and the 2-dimensional one sees -2/2
    G = dihedral(4)
    S = validate_connection_set(G, None, ["a^2"])
    spec = spectrum_by_character(S, character_table(G))
    assert spec.integral
    assert sorted(e.exact for e in spec.entries) == [-1, 1, 1, 1, 1]


def random_class_union(G, rng):
    classes = conjugacy_classes(G)
    blocks = []
    seen = set()
    for c in range(1, len(classes)):
        if c in seen:
            continue
        ic = int(classes.class_of[G.inv[classes.representatives[c]]])
        seen |= {c, ic}
        blocks.append(sorted({c, ic}))
    chosen = [b for b in blocks if rng.random() < 0.5] or [blocks[0]]
    return validate_connection_set(G, classes, [x for b in chosen for c in b for x in classes.classes[c]])


groups = st.sampled_from(
    [cyclic(6), cyclic(8), abelian_sum([2, 4]), abelian_sum([3, 3]), dihedral(4), dihedral(5), dihedral(6), symmetric(4)]
)


@given(groups, st.integers(0, 2**32 - 1))
def test_spectrum_properties(G, seed):
    S = random_class_union(G, random.Random(seed))
    table = character_table(G)
    spec = spectrum_by_character(S, table)
    trivial = next(i for i, r in enumerate(table.rows) if all(v == 1 for v in r.values))
    assert spec.entries[trivial].exact == len(S)
    if spec.integral:
        assert spec.trace() == 0
    else:
        assert abs(spec.trace()) < 1e-8 * G.order
    assert sum(e.multiplicity for e in spec.entries) == G.order
    graph = CayleyGraph.build(G, S)
    check = numeric_spectrum_crosscheck(graph, spec)
    assert check.passed, check.max_deviation
    for e in spec.entries:
        if e.exact is not None:
            assert e.numeric == pytest.approx(e.exact, abs=1e-9)
