"""Graph-state preparation circuits for constrained device connectivity.

Circuits are layered: every layer is a tuple of gates with disjoint qubit
support, and one layer costs one unit of depth.  A slash-joined gate kind
like ``"SX/SDG"`` is a single physical single-qubit gate obtained by
composing the named Cliffords left to right (it arises when two consecutive
local complementations overlap and merge into one layer).

Gate counting follows the idling convention that every qubit missing from a
layer after the first contributes one identity gate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DisconnectedGraphError, InvalidInputError
from .graphs import ConnectivityGraph, dfs_tree, local_complement
from .tableau import StabilizerTableau

__all__ = [
    "Gate",
    "Circuit",
    "GateCounts",
    "gate_counts",
    "simulate",
    "prep_lc_path",
    "prep_ghz_line",
    "prep_ghz_connectivity",
    "cz_via_path",
    "prep_lc_spanning_tree",
]

_SINGLE_KINDS = {"I", "H", "S", "SDG", "SX", "SXDG", "X", "Y", "Z"}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = self.kind.split("/")
        if all(p in _SINGLE_KINDS for p in parts):
            if len(self.qubits) != 1:
                raise InvalidInputError(f"{self.kind} acts on one qubit")
        elif self.kind == "CZ":
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise InvalidInputError("CZ needs two distinct qubits")
        else:
            raise InvalidInputError(f"unknown gate kind {self.kind!r}")

    def to_json_dict(self) -> dict:
        return {"gate": self.kind, "qubits": list(self.qubits)}


@dataclass(frozen=True)
class Circuit:
    """Layered Clifford circuit on qubits 0..n_qubits-1.

    qubit_map, when set, records the device qubit behind each local index.
    """

    n_qubits: int
    layers: tuple[tuple[Gate, ...], ...]
    qubit_map: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        for layer in self.layers:
            seen: set[int] = set()
            for gate in layer:
                for q in gate.qubits:
                    if not 0 <= q < self.n_qubits:
                        raise InvalidInputError(f"qubit {q} out of range")
                    if q in seen:
                        raise InvalidInputError(f"qubit {q} used twice in one layer")
                    seen.add(q)
        if self.qubit_map is not None and len(self.qubit_map) != self.n_qubits:
            raise InvalidInputError("qubit_map length mismatch")

    @property
    def depth(self) -> int:
        return len(self.layers)

    def to_json_dict(self) -> dict:
        out = {
            "n_qubits": self.n_qubits,
            "layers": [[g.to_json_dict() for g in layer] for layer in self.layers],
        }
        if self.qubit_map is not None:
            out["qubit_map"] = list(self.qubit_map)
        return out


@dataclass(frozen=True)
class GateCounts:
    """Single-qubit count (idling identities included), CZ count, layer count."""

    n1: int
    n2: int
    depth: int


def gate_counts(c: Circuit) -> GateCounts:
    n1 = n2 = 0
    for index, layer in enumerate(c.layers):
        touched = 0
        for gate in layer:
            touched += len(gate.qubits)
            if gate.kind == "CZ":
                n2 += 1
            else:
                n1 += 1
        if index > 0:
            n1 += c.n_qubits - touched
    return GateCounts(n1, n2, len(c.layers))


def simulate(c: Circuit, tableau: StabilizerTableau | None = None) -> StabilizerTableau:
    """Apply the circuit to |0...0> (or to a given tableau, in place)."""
    t = tableau if tableau is not None else StabilizerTableau(c.n_qubits)
    for layer in c.layers:
        for gate in layer:
            t.apply(gate.kind, gate.qubits)
    return t


def _h_layer(qubits: Sequence[int]) -> tuple[Gate, ...]:
    return tuple(Gate("H", (q,)) for q in qubits)


def _parallel_cz_layers(order: Sequence[int]) -> list[tuple[Gate, ...]]:
    """Even-offset then odd-offset CZ layers along a path ordering."""
    layers = []
    for parity in (0, 1):
        layer = tuple(
            Gate("CZ", (order[i], order[i + 1]))
            for i in range(parity, len(order) - 1, 2)
        )
        if layer:
            layers.append(layer)
    return layers


def prep_lc_path(path: Sequence[int], device: ConnectivityGraph | None = None) -> Circuit:
    """Depth-3 linear-cluster preparation along a device path.

    Local qubit i of the circuit is path[i]; the Hadamard layer is followed by
    the even and odd CZ layers, which commute within themselves.
    """
    path = tuple(int(v) for v in path)
    if len(path) < 2 or len(set(path)) != len(path):
        raise InvalidInputError("path must contain at least two distinct vertices")
    if device is not None:
        for a, b in zip(path, path[1:]):
            if not device.has_edge(a, b):
                raise InvalidInputError(f"({a}, {b}) is not a device edge")
    n = len(path)
    local = list(range(n))
    layers = [_h_layer(local)] + _parallel_cz_layers(local)
    return Circuit(n, tuple(layers), qubit_map=path)


def prep_ghz_line(n: int) -> Circuit:
    """Sequential star-graph-state preparation: H layer, then one CZ per layer.

    This is the canonical fully-sequential construction used for gate-count
    accounting; every CZ shares the center qubit 0, so no two can run in the
    same layer.
    """
    if n < 2:
        raise InvalidInputError("need at least two qubits")
    layers = [_h_layer(range(n))]
    layers += [(Gate("CZ", (0, q)),) for q in range(1, n)]
    return Circuit(n, tuple(layers))


def _lc_gates(vertex: int, neighbors: Sequence[int]) -> tuple[Gate, ...]:
    """One local-complementation layer: sqrt-X on the vertex, S^dagger on its neighbors."""
    return (Gate("SX", (vertex,)),) + tuple(Gate("SDG", (u,)) for u in sorted(neighbors))


def prep_ghz_connectivity(g: ConnectivityGraph) -> tuple[Circuit, int]:
    """Grow a star graph state over all vertices of a connected device graph.

    Starts a star at the highest-degree vertex, repeatedly shifts the center
    (two local-complementation layers) to a coupled vertex that still has
    uncoupled device neighbors, and attaches those neighbors by CZ.  Returns
    the circuit and the final star center.
    """
    n = g.n_vertices
    if n < 2:
        raise InvalidInputError("need at least two qubits")
    if not g.is_connected():
        raise DisconnectedGraphError("device graph must be connected")

    center = max(range(n), key=lambda v: (g.degree(v), -v))
    layers: list[tuple[Gate, ...]] = [_h_layer(range(n))]
    coupled = {center}
    for u in g.neighbors(center):
        layers.append((Gate("CZ", (center, u)),))
        coupled.add(u)

    while len(coupled) < n:
        movable = sorted(
            v for v in coupled
            if v != center and any(u not in coupled for u in g.neighbors(v))
        )
        new_center = movable[0]
        layers.append(_lc_gates(center, sorted(coupled - {center})))
        layers.append(_lc_gates(new_center, sorted(coupled - {new_center})))
        center = new_center
        for u in g.neighbors(center):
            if u not in coupled:
                layers.append((Gate("CZ", (center, u)),))
                coupled.add(u)

    return Circuit(n, tuple(layers)), center


def _toggle_edge(g: ConnectivityGraph, a: int, b: int) -> ConnectivityGraph:
    e = (a, b) if a < b else (b, a)
    edges = set(g.edges)
    edges.symmetric_difference_update({e})
    return ConnectivityGraph(g.n_vertices, frozenset(edges))


def _fused_lc_pair(g: ConnectivityGraph, v1: int, v2: int) -> tuple[tuple[Gate, ...], ConnectivityGraph]:
    """Two consecutive local complementations merged into one physical layer."""
    ops: dict[int, list[str]] = {}

    def record(vertex: int, neighbors: Sequence[int]) -> None:
        ops.setdefault(vertex, []).append("SX")
        for u in neighbors:
            ops.setdefault(u, []).append("SDG")

    record(v1, g.neighbors(v1))
    g = local_complement(g, v1)
    record(v2, g.neighbors(v2))
    g = local_complement(g, v2)
    layer = tuple(Gate("/".join(ops[q]), (q,)) for q in sorted(ops))
    return layer, g


def cz_via_path(
    state: ConnectivityGraph,
    path: Sequence[int],
    device: ConnectivityGraph | None = None,
) -> tuple[Circuit, ConnectivityGraph]:
    """Effective CZ between the endpoints of a path of adjacent qubits.

    `state` is the graph of the graph state built so far.  All path vertices
    after the first must still be uncoupled (degree 0); the first may carry
    arbitrary edges.  Returns the circuit fragment (depth 3(m-2)+1 for m >= 3)
    and the updated state graph, in which the intermediate qubits are isolated
    again.
    """
    path = tuple(int(v) for v in path)
    if len(path) < 2 or len(set(path)) != len(path):
        raise InvalidInputError("need a path of at least two distinct vertices")
    if device is not None:
        for a, b in zip(path, path[1:]):
            if not device.has_edge(a, b):
                raise InvalidInputError(f"({a}, {b}) is not a device edge")
    for v in path[1:]:
        if state.degree(v) != 0:
            raise InvalidInputError(f"intermediate qubit {v} is already coupled")

    layers: list[tuple[Gate, ...]] = [(Gate("CZ", (path[0], path[1])),)]
    state = _toggle_edge(state, path[0], path[1])
    for k in range(1, len(path) - 1):
        a, b = path[k], path[k + 1]
        layers.append((Gate("CZ", (a, b)),))
        state = _toggle_edge(state, a, b)
        layer, state = _fused_lc_pair(state, a, b)
        layers.append(layer)
        layers.append((Gate("CZ", (a, b)),))
        state = _toggle_edge(state, a, b)
    return Circuit(state.n_vertices, tuple(layers)), state


def _postorder(tree: ConnectivityGraph, root: int) -> list[int]:
    """Post-order traversal with children visited in ascending index order."""
    order: list[int] = []
    stack: list[tuple[int, int, bool]] = [(root, -1, False)]
    while stack:
        v, parent, expanded = stack.pop()
        if expanded:
            order.append(v)
            continue
        stack.append((v, parent, True))
        children = [u for u in tree.neighbors(v) if u != parent]
        for c in reversed(children):
            stack.append((c, v, False))
    return order


def _tree_path(tree: ConnectivityGraph, a: int, b: int) -> list[int]:
    parent = {a: None}
    queue = [a]
    while queue:
        v = queue.pop(0)
        if v == b:
            break
        for u in tree.neighbors(v):
            if u not in parent:
                parent[u] = v
                queue.append(u)
    path = [b]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def prep_lc_spanning_tree(g: ConnectivityGraph) -> tuple[Circuit, tuple[int, ...]]:
    """Linear-cluster state covering every vertex of a connected device graph.

    Walks a depth-first spanning tree from its lowest-index leaf toward the
    root, coupling consecutive qubits with CZ and hopping across branch
    points with cz_via_path.  Returns the circuit and the vertex ordering
    whose path graph state it prepares.  A branch-free walk degenerates to
    the depth-3 parallel construction.
    """
    n = g.n_vertices
    if n < 1:
        raise InvalidInputError("empty graph")
    if not g.is_connected():
        raise DisconnectedGraphError("device graph must be connected")
    if n == 1:
        return Circuit(1, (_h_layer([0]),)), (0,)

    tree = dfs_tree(g, 0)
    root = min(v for v in range(n) if tree.degree(v) == 1)
    order = _postorder(tree, root)

    state = ConnectivityGraph(n, frozenset())
    layers: list[tuple[Gate, ...]] = [_h_layer(range(n))]
    jumps = 0
    for a, b in zip(order, order[1:]):
        if g.has_edge(a, b):
            layers.append((Gate("CZ", (a, b)),))
            state = _toggle_edge(state, a, b)
        else:
            fragment, state = cz_via_path(state, _tree_path(tree, a, b), device=g)
            layers.extend(fragment.layers)
            jumps += 1

    want = frozenset((min(a, b), max(a, b)) for a, b in zip(order, order[1:]))
    if state.edges != want:
        raise AssertionError("spanning-tree walk did not produce the expected path state")

    if jumps == 0:
        layers = [_h_layer(range(n))] + _parallel_cz_layers(order)
    return Circuit(n, tuple(layers)), tuple(order)
