import numpy as np
import pytest

from bellmark.errors import InvalidInputError
from bellmark.graphs import ConnectivityGraph
from bellmark.pauli import PauliString, graph_stabilizers

from oracles import pauli_matrix, random_connected_graph


def test_x_times_z_is_minus_i_y():
    x = PauliString.from_label("+X")
    z = PauliString.from_label("+Z")
    prod = x * z
    assert prod.label() == "-iY"
    np.testing.assert_allclose(pauli_matrix(prod), pauli_matrix(x) @ pauli_matrix(z))


def test_two_qubit_product_against_dense():
    p = PauliString.from_label("+XZ")
    q = PauliString.from_label("+ZX")
    prod = p * q
    assert prod.label() == "+YY"
    np.testing.assert_allclose(pauli_matrix(prod), pauli_matrix(p) @ pauli_matrix(q))


def test_hermitian_square_is_identity():
    rng = np.random.default_rng(0)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        p = PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)))
        if not p.is_hermitian:
            p = PauliString(n, p.x_mask, p.z_mask, p.phase_exp + 1)
        sq = p * p
        assert sq.x_mask == 0 and sq.z_mask == 0 and sq.phase_exp == 0


def test_multiply_phase_exact_random_dense():
    rng = np.random.default_rng(5)
    for _ in range(200):
        n = int(rng.integers(1, 5))
        p = PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)), int(rng.integers(4)))
        q = PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)), int(rng.integers(4)))
        np.testing.assert_allclose(
            pauli_matrix(p * q), pauli_matrix(p) @ pauli_matrix(q), atol=1e-12
        )


def test_multiply_associative():
    rng = np.random.default_rng(6)
    for _ in range(100):
        n = int(rng.integers(1, 5))
        ps = [
            PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)), int(rng.integers(4)))
            for _ in range(3)
        ]
        assert (ps[0] * ps[1]) * ps[2] == ps[0] * (ps[1] * ps[2])


def test_size_mismatch_raises():
    with pytest.raises(InvalidInputError):
        PauliString.from_label("+X") * PauliString.from_label("+XX")
    with pytest.raises(InvalidInputError):
        PauliString.from_label("+X").commutes(PauliString.from_label("+XX"))


def test_commutes_basics():
    x = PauliString.from_label("+X")
    z = PauliString.from_label("+Z")
    assert x.commutes(x)
    assert not x.commutes(z)


def test_graph_stabilizers_commute_random():
    rng = np.random.default_rng(9)
    for _ in range(30):
        g = random_connected_graph(rng, int(rng.integers(2, 11)))
        stabs = graph_stabilizers(g)
        for i in range(len(stabs)):
            for j in range(i + 1, len(stabs)):
                assert stabs[i].commutes(stabs[j])


def test_graph_stabilizer_examples():
    path = ConnectivityGraph.path(3)
    assert graph_stabilizers(path)[1].label() == "+ZXZ"
    star = ConnectivityGraph.star(3, center=0)
    assert graph_stabilizers(star)[0].label() == "+XZZ"
    lonely = ConnectivityGraph(1)
    assert graph_stabilizers(lonely)[0].label() == "+X"


def test_label_round_trip_bit_exact():
    rng = np.random.default_rng(13)
    for _ in range(200):
        n = int(rng.integers(1, 8))
        p = PauliString(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)), int(rng.integers(4)))
        assert PauliString.from_label(p.label()) == p
    # explicit cases, including the unicode minus
    assert PauliString.from_label("+ZXZ").label() == "+ZXZ"
    assert PauliString.from_label("−YX") == PauliString.from_label("-YX")


def test_sign_and_hermiticity():
    assert PauliString.from_label("+Y").sign == 1
    assert PauliString.from_label("-Y").sign == -1
    skew = PauliString(1, 1, 1, 0)  # X.Z = -iY, not Hermitian
    assert not skew.is_hermitian
    with pytest.raises(InvalidInputError):
        _ = skew.sign


def test_support_and_weight():
    p = PauliString.from_label("+XIZY")
    assert p.support() == (0, 2, 3)
    assert p.weight == 3
    assert p.letter(3) == "Y"
