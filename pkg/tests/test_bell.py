import numpy as np
import pytest

from bellmark.bell import BellOperator, bell_bounds, build, lhv_bruteforce_bound
from bellmark.errors import InvalidInputError
from bellmark.graphs import ConnectivityGraph
from bellmark.pauli import graph_stabilizers
from bellmark.tableau import StabilizerTableau

from oracles import graph_state_vector, pauli_matrix

RNG = np.random.default_rng(99)


def _dense_product_form(family: str, n: int) -> np.ndarray:
    """The closed product form built directly from dense generator matrices."""
    graph = ConnectivityGraph.star(n, 0) if family == "ghz" else ConnectivityGraph.path(n)
    g = [pauli_matrix(s) for s in graph_stabilizers(graph)]
    eye = np.eye(1 << n)
    if family == "ghz":
        out = g[0]
        for i in range(1, n):
            out = out @ (eye + g[i])
        return out
    out = eye
    for b in range(n // 3):
        out = out @ (eye + g[3 * b]) @ g[3 * b + 1] @ (eye + g[3 * b + 2])
    return out


def test_term_counts():
    assert build("ghz", n=3).M == 4
    assert build("lc", n=6).M == 16
    assert build("lc", n=51).M == 4**17


def test_bounds_examples():
    b = bell_bounds("ghz", 3)
    assert (b.Q, b.C, b.D) == (4, 2, 2)
    b = bell_bounds("ghz", 4)
    assert (b.Q, b.C, b.D) == (8, 4, 2)
    b = bell_bounds("lc", 18)
    assert (b.Q, b.C, b.D) == (4096, 64, 64)
    assert b.alpha_min == 1 / 64
    b = bell_bounds("lc", 6)
    assert (b.Q, b.C, b.D) == (16, 4, 4)


def test_m_equals_quantum_bound():
    for family, n in [("ghz", 2), ("ghz", 5), ("lc", 3), ("lc", 9)]:
        op = build(family, n=n)
        assert op.M == op.bounds().Q


def test_lc_requires_multiple_of_three():
    with pytest.raises(InvalidInputError):
        build("lc", n=5)
    with pytest.raises(InvalidInputError):
        bell_bounds("lc", 7)


def test_ghz_terms_small():
    op = build("ghz", n=3)
    assert op.term(0).label() == "+XZZ"  # empty subset: the center generator alone
    assert op.term(1).label() == "+YYZ"
    # last index: product of all three generators
    dense = pauli_matrix(op.generators[0]) @ pauli_matrix(op.generators[1]) @ pauli_matrix(op.generators[2])
    np.testing.assert_allclose(pauli_matrix(op.term(3)), dense, atol=1e-12)


def test_lc_term_block_choice():
    op = build("lc", n=3)
    g = op.generators
    # digit 3 = (s=1, t=1): g1 g2 g3
    dense = pauli_matrix(g[0]) @ pauli_matrix(g[1]) @ pauli_matrix(g[2])
    np.testing.assert_allclose(pauli_matrix(op.term(3)), dense, atol=1e-12)
    # which carries a minus sign in the Hermitian letters
    assert op.term(3).label() == "-YXY"


def test_term_index_bijection():
    for family, n in [("ghz", 4), ("ghz", 5), ("lc", 3), ("lc", 6)]:
        op = build(family, n=n)
        labels = {op.term(j).label() for j in range(op.M)}
        assert len(labels) == op.M


def test_term_out_of_range():
    op = build("ghz", n=3)
    with pytest.raises(InvalidInputError):
        op.term(4)
    with pytest.raises(InvalidInputError):
        op.term(-1)


def test_terms_are_hermitian_and_stabilize_the_state():
    rng = np.random.default_rng(17)
    for family, n in [("ghz", 4), ("ghz", 6), ("lc", 3), ("lc", 6)]:
        op = build(family, n=n)
        graph = ConnectivityGraph.star(n, 0) if family == "ghz" else ConnectivityGraph.path(n)
        t = StabilizerTableau.from_graph(graph)
        for j in range(op.M):
            term = op.term(j)
            assert term.is_hermitian
            assert t.copy().measure_pauli(term, rng) == (1, True)


def test_term_sum_equals_product_form_dense():
    for family, sizes in [("ghz", (2, 3, 4, 5, 6)), ("lc", (3, 6))]:
        for n in sizes:
            op = build(family, n=n)
            total = np.zeros((1 << n, 1 << n), dtype=complex)
            for j in range(op.M):
                total += pauli_matrix(op.term(j))
            np.testing.assert_allclose(total, _dense_product_form(family, n), atol=1e-9)


def test_expectation_on_graph_state_is_quantum_bound():
    for family, n in [("ghz", 4), ("lc", 6)]:
        op = build(family, n=n)
        graph = ConnectivityGraph.star(n, 0) if family == "ghz" else ConnectivityGraph.path(n)
        vec = graph_state_vector(graph)
        total = sum(
            float(np.vdot(vec, pauli_matrix(op.term(j)) @ vec).real) for j in range(op.M)
        )
        assert abs(total - op.bounds().Q) < 1e-9


@pytest.mark.parametrize(
    "family,n",
    [("ghz", 3), ("ghz", 4), ("ghz", 5), ("ghz", 6), ("lc", 3), ("lc", 6)],
)
def test_lhv_bruteforce_matches_closed_form(family, n):
    op = build(family, n=n)
    assert lhv_bruteforce_bound(op) == op.bounds().C


def test_lhv_budget_guard():
    op = build("lc", n=12)
    with pytest.raises(InvalidInputError):
        lhv_bruteforce_bound(op, max_variables=10)


def test_build_from_star_graph_any_center():
    star = ConnectivityGraph.star(4, center=2)
    op = build("ghz", star)
    # first generator is the center's
    assert op.generators[0].x_mask == 1 << 2
    assert op.M == 8
    with pytest.raises(InvalidInputError):
        build("ghz", ConnectivityGraph.path(4))


def test_build_from_path_graph_and_sequence():
    pg = ConnectivityGraph.from_edges(3, [(2, 0), (0, 1)])  # path 1-0-2
    op = build("lc", pg)
    assert op.n == 3
    seq_op = build("lc", [10, 11, 12])
    assert seq_op.qubit_map == (10, 11, 12)
    with pytest.raises(InvalidInputError):
        build("lc", [1, 1, 2])
