from collections import Counter

import pytest  # pyright: ignore[reportMissingImports]

from src.errors import ParameterError
from src.lattice.core import (
    Multipartition,
    Node,
    ParamEnv,
    Partition,
    Residue,
    addable_nodes,
    diagram_nodes,
    dominance_geq,
    enumerate_multipartitions,
    parse_multipartition,
    partitions_of,
    removable_nodes,
    residue_alphabet,
    residue_content,
    residue_of,
    split_blocks,
    weak_compositions,
)
from tests.golden import ARR_EXAMPLE, E, mp

ENV_4_2 = ParamEnv(p=4, k=1, ell=2)
ENV_3_2 = ParamEnv(p=3, k=1, ell=2)


# --- PARAMETERS ---
def test_param_env_derives_d_and_e():
    env = ParamEnv(p=6, k=2, ell=3)
    assert (env.d, env.e) == (3, 9)
    assert ParamEnv(p=4, ell=2).e == 8
    assert env.block_env() == ParamEnv(p=3, k=1, ell=3)


@pytest.mark.parametrize("kwargs", [{"p": 0}, {"p": 4, "k": 3}, {"p": 2, "ell": 0}, {"p": 2, "k": -1}])
def test_param_env_rejects_bad_values(kwargs):
    with pytest.raises(ParameterError):
        ParamEnv(**kwargs)


# --- PARTITIONS ---
def test_partition_validation_and_rendering():
    assert str(Partition((2, 1))) == "(2,1)"
    assert str(Partition((1, 1, 1))) == "(1^3)"
    assert str(Partition()) == "∅"
    assert Partition((3, 1)).part(2) == 1 and Partition((3, 1)).part(5) == 0
    with pytest.raises(ParameterError):
        Partition((1, 2))
    with pytest.raises(ParameterError):
        Partition((2, 0))


def test_partitions_of_small_n():
    assert partitions_of(0) == (Partition(),)
    assert [p.parts for p in partitions_of(4)] == [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)]


def test_multipartition_add_and_remove_nodes():
    lam = mp((2,), E)
    assert lam.add_node(Node(2, 1, 1)) == mp((2, 1), E)
    assert lam.add_node(Node(1, 1, 2)) == mp((2,), (1,))
    assert lam.remove_node(Node(1, 2, 1)) == mp((1,), E)
    assert lam.rows == (1, 0)
    with pytest.raises(ParameterError):
        lam.add_node(Node(2, 2, 1))
    with pytest.raises(ParameterError):
        lam.remove_node(Node(1, 1, 1))


def test_parse_multipartition_checks_component_count():
    assert parse_multipartition([[2, 1], [], [3]]) == mp((2, 1), E, (3,))
    with pytest.raises(ParameterError):
        parse_multipartition([[1]], p=2)


# --- RESIDUES ---
def test_residues_of_the_worked_example():
    """
    Residues under (p=4, ell=2): charges 0, 2, 4, 6 modulo e = 8.
    """
    assert residue_of(ENV_4_2, Node(1, 1, 1)) == Residue(0, 0)
    assert residue_of(ENV_4_2, Node(2, 1, 1)) == Residue(0, 7)
    assert residue_of(ENV_4_2, Node(1, 1, 3)) == Residue(0, 4)
    assert residue_of(ENV_4_2, Node(1, 2, 4)) == Residue(0, 7)
    assert residue_of(ENV_3_2, Node(1, 1, 1)) == Residue(0, 0)


def test_residues_split_by_orbit_when_k_is_two():
    env = ParamEnv(p=4, k=2, ell=1)
    assert residue_of(env, Node(1, 1, 3)) == Residue(1, 0)
    assert residue_of(env, Node(1, 2, 4)) == Residue(1, 0)
    assert residue_of(env, Node(1, 1, 2)) == Residue(0, 1)
    assert len(residue_alphabet(env)) == env.k * env.e


def test_residue_depends_on_content_only():
    # shifting a node e columns right keeps its residue
    for c in range(1, 5):
        for a in range(1, 4):
            assert residue_of(ENV_4_2, Node(a, 1, c)) == residue_of(ENV_4_2, Node(a, 1 + ENV_4_2.e, c))


def test_residue_of_rejects_bad_component():
    with pytest.raises(ParameterError):
        residue_of(ENV_3_2, Node(1, 1, 4))


def test_residue_content_counts_each_residue():
    content = residue_content(ENV_3_2, mp((1,), (1,), (1,)))
    assert content == Counter({Residue(0, 0): 1, Residue(0, 2): 1, Residue(0, 4): 1})


# --- NODES ---
def test_diagram_nodes():
    assert diagram_nodes(Multipartition.empty(3)) == []
    assert len(diagram_nodes(ARR_EXAMPLE)) == 10
    assert diagram_nodes(mp((1,), E, E)) == [Node(1, 1, 1)]


def test_addable_nodes_of_empty_are_bottom_up():
    found = addable_nodes(Multipartition.empty(3), ENV_3_2)
    assert found == [
        (Node(1, 1, 3), Residue(0, 4)),
        (Node(1, 1, 2), Residue(0, 2)),
        (Node(1, 1, 1), Residue(0, 0)),
    ]
    assert removable_nodes(Multipartition.empty(3), ENV_3_2) == []


def test_removable_nodes_of_the_worked_example():
    assert len(removable_nodes(ARR_EXAMPLE, ENV_4_2)) == 5
    assert removable_nodes(mp((1,), E, E), ENV_3_2) == [(Node(1, 1, 1), Residue(0, 0))]


def test_node_lists_reject_wrong_p():
    with pytest.raises(ParameterError):
        addable_nodes(mp((1,), E), ENV_3_2)


@pytest.mark.parametrize("p,n", [(1, 3), (2, 2), (3, 2)])
def test_adding_and_removing_always_gives_valid_diagrams(p, n):
    env = ParamEnv(p=p, ell=2)
    for lam in enumerate_multipartitions(p, n):
        cells = set(diagram_nodes(lam))
        for node, _ in addable_nodes(lam, env):
            assert node not in cells
            assert lam.add_node(node).size == n + 1
        for node, _ in removable_nodes(lam, env):
            assert node in cells
            assert lam.remove_node(node).size == n - 1


# --- DOMINANCE ---
def test_dominance_examples():
    assert dominance_geq(ARR_EXAMPLE, ARR_EXAMPLE)
    assert dominance_geq(mp((3,), E, E), mp(E, E, (3,)))
    assert not dominance_geq(mp(E, E, (1, 1, 1)), mp(E, E, (2, 1)))
    with pytest.raises(ParameterError):
        dominance_geq(mp((1,), E), mp((2,), E))


def test_dominance_is_a_partial_order():
    for p in (1, 2, 3):
        for n in range(5 if p < 3 else 4):
            items = enumerate_multipartitions(p, n)
            for a in items:
                for b in items:
                    if a != b and dominance_geq(a, b):
                        assert not dominance_geq(b, a)
                    for c in items:
                        if dominance_geq(a, b) and dominance_geq(b, c):
                            assert dominance_geq(a, c)


# --- ENUMERATION ---
def test_enumerate_multipartitions_counts():
    assert len(enumerate_multipartitions(1, 3)) == 3
    assert len(enumerate_multipartitions(3, 1)) == 3
    assert len(enumerate_multipartitions(3, 3)) == 22
    assert enumerate_multipartitions(2, 0) == (Multipartition.empty(2),)


def test_enumeration_matches_the_convolution_count():
    part_counts = [len(partitions_of(s)) for s in range(6)]
    for p in (1, 2, 3):
        for n in range(6):
            expected = 0
            for sizes in weak_compositions(n, p):
                term = 1
                for s in sizes:
                    term *= part_counts[s]
                expected += term
            items = enumerate_multipartitions(p, n)
            assert len(items) == len(set(items)) == expected
            assert all(lam.size == n for lam in items)
            assert list(items) == sorted(items)


def test_split_blocks():
    env = ParamEnv(p=4, k=2, ell=1)
    lam = mp((1,), E, (2,), (1, 1))
    assert split_blocks(env, lam) == (mp((1,), E), mp((2,), (1, 1)))
