"""Bell operators for GHZ (star) and linear-cluster (path) graph states.

Both operators are sums of M signed Pauli terms, each a product of graph-state
stabilizer generators, so terms are generated lazily from an integer index and
never materialized as a list.  The closed-form quantum bound Q, classical
bound C and noise-resistance ratio D = Q/C come with a brute-force
local-hidden-variable oracle for small systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidInputError
from .graphs import ConnectivityGraph
from .pauli import PauliString, graph_stabilizers

__all__ = ["BellBounds", "BellOperator", "bell_bounds", "build", "lhv_bruteforce_bound"]

FAMILIES = ("ghz", "lc")


@dataclass(frozen=True)
class BellBounds:
    """Quantum bound Q, classical (LHV) bound C, ratio D = Q/C."""

    Q: int
    C: int
    D: int

    @property
    def alpha_min(self) -> float:
        """White-noise fidelity weight above which a violation survives."""
        return 1.0 / self.D


def bell_bounds(family: str, n: int) -> BellBounds:
    """Closed-form bounds for the two operator families."""
    if family == "ghz":
        if n < 2:
            raise InvalidInputError("GHZ operator needs n >= 2")
        q = 2 ** (n - 1)
        c = 2 ** ((n - 1) // 2) if n % 2 else 2 ** (n // 2)
        return BellBounds(q, c, q // c)
    if family == "lc":
        if n < 3 or n % 3:
            raise InvalidInputError("LC operator is defined only for n a positive multiple of 3")
        return BellBounds(4 ** (n // 3), 2 ** (n // 3), 2 ** (n // 3))
    raise InvalidInputError(f"unknown family {family!r}")


@dataclass(frozen=True)
class BellOperator:
    """Lazily indexed family of signed Pauli terms summing to the Bell operator.

    Generators live on local qubits 0..n-1; qubit_map records which device
    qubit each local index denotes.  For GHZ, local qubit 0 is the star
    center; for LC, local indices run along the path.
    """

    family: str
    n: int
    qubit_map: tuple[int, ...]
    generators: tuple[PauliString, ...]

    @property
    def M(self) -> int:
        return 2 ** (self.n - 1) if self.family == "ghz" else 4 ** (self.n // 3)

    def bounds(self) -> BellBounds:
        return bell_bounds(self.family, self.n)

    def term(self, j: int) -> PauliString:
        """The j-th signed Pauli term; pure, O(n) per call."""
        if not 0 <= j < self.M:
            raise InvalidInputError(f"term index {j} out of range [0, {self.M})")
        g = self.generators
        if self.family == "ghz":
            # bits of j pick the subset of leaf generators multiplied onto the center one
            product = g[0]
            for leaf in range(1, self.n):
                if (j >> (leaf - 1)) & 1:
                    product = product * g[leaf]
            return product
        product = PauliString.identity(self.n)
        for block in range(self.n // 3):
            digit = (j >> (2 * block)) & 3
            s, t = digit >> 1, digit & 1
            if s:
                product = product * g[3 * block]
            product = product * g[3 * block + 1]
            if t:
                product = product * g[3 * block + 2]
        return product


def build(family: str, graph_or_path=None, n: int | None = None) -> BellOperator:
    """Construct the operator from a star/path graph, an ordered path, or just n.

    GHZ accepts a star-shaped ConnectivityGraph (any center) or a bare qubit
    count; LC accepts a path graph, an ordered vertex sequence, or a count.
    LC requires n divisible by 3.

    Given a ConnectivityGraph, the Pauli masks act on that graph's own vertex
    labels (generators ordered center-first for GHZ, along the path for LC)
    and qubit_map is the identity.  Given an ordered sequence or a bare n,
    the masks use canonical labels (center 0 / path 0..n-1) and qubit_map
    records the sequence.
    """
    if family not in FAMILIES:
        raise InvalidInputError(f"unknown family {family!r}")

    if isinstance(graph_or_path, ConnectivityGraph):
        g = graph_or_path
        n = g.n_vertices
        stabs = graph_stabilizers(g)
        if family == "ghz":
            centers = [v for v in range(n) if g.degree(v) == n - 1]
            if not centers or len(g.edges) != n - 1:
                raise InvalidInputError("GHZ operator needs a star graph")
            center = centers[0]
            order = (center,) + tuple(v for v in range(n) if v != center)
        else:
            order = g.path_order()
        bell_bounds(family, n)
        return BellOperator(family, n, tuple(range(n)), tuple(stabs[v] for v in order))

    if graph_or_path is None:
        if n is None:
            raise InvalidInputError("need a graph, a path, or a qubit count")
        qubit_map = tuple(range(n))
    else:
        # explicit device ordering: path order for LC, center-first for GHZ
        qubit_map = tuple(int(v) for v in graph_or_path)
        if len(set(qubit_map)) != len(qubit_map):
            raise InvalidInputError("qubit sequence contains repeats")
        n = len(qubit_map)

    bell_bounds(family, n)
    local = ConnectivityGraph.star(n, 0) if family == "ghz" else ConnectivityGraph.path(n)
    return BellOperator(family, n, qubit_map, tuple(graph_stabilizers(local)))


def lhv_bruteforce_bound(op: BellOperator, max_variables: int = 22) -> int:
    """Maximum of the Bell expression over deterministic +-1 assignments.

    Each (qubit, Pauli letter) pair appearing in any term is an independent
    binary variable; identity positions contribute a factor 1.  Exhaustive,
    so only feasible for small n (n <= 6 for both families).
    """
    terms = [op.term(j) for j in range(op.M)]
    variables: dict[tuple[int, str], int] = {}
    for t in terms:
        for q in t.support():
            key = (q, t.letter(q))
            if key not in variables:
                variables[key] = len(variables)
    v = len(variables)
    if v > max_variables:
        raise InvalidInputError(f"{v} assignment variables exceed the brute-force budget")

    term_masks = np.zeros((v, len(terms)), dtype=np.int64)
    signs = np.empty(len(terms), dtype=np.int64)
    for row, t in enumerate(terms):
        signs[row] = t.sign
        for q in t.support():
            term_masks[variables[(q, t.letter(q))], row] = 1

    best = None
    shifts = np.arange(v, dtype=np.uint64)[None, :]
    for start in range(0, 1 << v, 1 << 14):
        block = np.arange(start, min(start + (1 << 14), 1 << v), dtype=np.uint64)[:, None]
        bits = ((block >> shifts) & 1).astype(np.int64)
        parity = (bits @ term_masks) & 1
        values = ((1 - 2 * parity) * signs[None, :]).sum(axis=1)
        top = int(values.max())
        best = top if best is None else max(best, top)
    return best
