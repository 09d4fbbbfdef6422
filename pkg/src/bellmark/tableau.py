"""Stabilizer tableau simulator with destabilizer bookkeeping.

The tableau is stored column-major: for each qubit there is one integer whose
bit r gives the X (resp. Z) component of generator row r.  Rows 0..n-1 are
destabilizers, rows n..2n-1 stabilizers.  Row r represents the Pauli
``(-1)**sign_r * prod_q P(x, z)`` with P(1,1) = Y, so Clifford gates and
Pauli-frame updates are a constant number of word-parallel integer
operations per gate, independent of the qubit count.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError
from .graphs import ConnectivityGraph
from .pauli import PauliString, _bits

__all__ = ["StabilizerTableau", "depolarize1", "depolarize2", "readout_flip"]

_TWO_QUBIT_PAULIS = [(a, b) for a in "IXYZ" for b in "IXYZ"][1:]


class StabilizerTableau:
    """Pure stabilizer state of n qubits, initially |0...0>."""

    __slots__ = ("n", "xcols", "zcols", "signs")

    def __init__(self, n_qubits: int):
        if n_qubits < 1:
            raise InvalidInputError("need at least one qubit")
        self.n = n_qubits
        # destabilizer i = X_i, stabilizer i = Z_i
        self.xcols = [1 << q for q in range(n_qubits)]
        self.zcols = [1 << (n_qubits + q) for q in range(n_qubits)]
        self.signs = 0

    @classmethod
    def from_graph(cls, g: ConnectivityGraph) -> "StabilizerTableau":
        """Tableau of the graph state |G>: stabilizers X_i Z_N(i), destabilizers Z_i."""
        t = cls(g.n_vertices)
        n = g.n_vertices
        t.xcols = [1 << (n + q) for q in range(n)]
        t.zcols = [
            (1 << q) | sum(1 << (n + i) for i in g.neighbors(q))
            for q in range(n)
        ]
        t.signs = 0
        return t

    def copy(self) -> "StabilizerTableau":
        t = StabilizerTableau.__new__(StabilizerTableau)
        t.n = self.n
        t.xcols = list(self.xcols)
        t.zcols = list(self.zcols)
        t.signs = self.signs
        return t

    # -- single-qubit Clifford gates (conjugation action on rows) -----

    def h(self, q: int) -> None:
        x, z = self.xcols[q], self.zcols[q]
        self.signs ^= x & z
        self.xcols[q], self.zcols[q] = z, x

    def s(self, q: int) -> None:
        x, z = self.xcols[q], self.zcols[q]
        self.signs ^= x & z
        self.zcols[q] = z ^ x

    def sdg(self, q: int) -> None:
        x, z = self.xcols[q], self.zcols[q]
        self.signs ^= x & ~z
        self.zcols[q] = z ^ x

    def sx(self, q: int) -> None:
        # X -> X, Y -> Z, Z -> -Y
        x, z = self.xcols[q], self.zcols[q]
        self.signs ^= ~x & z
        self.xcols[q] = x ^ z

    def sxdg(self, q: int) -> None:
        # X -> X, Y -> -Z, Z -> Y
        x, z = self.xcols[q], self.zcols[q]
        self.signs ^= x & z
        self.xcols[q] = x ^ z

    def x(self, q: int) -> None:
        self.signs ^= self.zcols[q]

    def y(self, q: int) -> None:
        self.signs ^= self.xcols[q] ^ self.zcols[q]

    def z(self, q: int) -> None:
        self.signs ^= self.xcols[q]

    def cz(self, a: int, b: int) -> None:
        if a == b:
            raise InvalidInputError("CZ needs two distinct qubits")
        xa, za = self.xcols[a], self.zcols[a]
        xb, zb = self.xcols[b], self.zcols[b]
        self.signs ^= xa & xb & (za ^ zb)
        self.zcols[a] = za ^ xb
        self.zcols[b] = zb ^ xa

    _GATES = {
        "I": None, "H": h, "S": s, "SDG": sdg, "SX": sx, "SXDG": sxdg,
        "X": x, "Y": y, "Z": z, "CZ": cz,
    }

    def apply(self, kind: str, qubits: tuple[int, ...]) -> None:
        """Apply a named gate; slash-joined names compose left to right."""
        for part in kind.split("/"):
            try:
                fn = self._GATES[part]
            except KeyError:
                raise InvalidInputError(f"unknown gate {part!r}") from None
            if fn is not None:
                fn(self, *qubits)

    def apply_pauli(self, p: PauliString) -> None:
        """Conjugate every row by the Pauli p (its overall phase is irrelevant)."""
        flip = 0
        for q in _bits(p.x_mask):
            flip ^= self.zcols[q]
        for q in _bits(p.z_mask):
            flip ^= self.xcols[q]
        self.signs ^= flip

    # -- row access ----------------------------------------------------

    def _row_pauli(self, r: int) -> PauliString:
        x = z = 0
        for q in range(self.n):
            x |= ((self.xcols[q] >> r) & 1) << q
            z |= ((self.zcols[q] >> r) & 1) << q
        sign_bit = (self.signs >> r) & 1
        y_weight = (x & z).bit_count()
        return PauliString(self.n, x, z, (2 * sign_bit + y_weight) % 4)

    def stabilizers(self) -> list[PauliString]:
        return [self._row_pauli(self.n + i) for i in range(self.n)]

    def destabilizers(self) -> list[PauliString]:
        return [self._row_pauli(i) for i in range(self.n)]

    # -- measurement ----------------------------------------------------

    def measure_pauli(self, obs: PauliString, rng: np.random.Generator) -> tuple[int, bool]:
        """Measure a Hermitian Pauli observable jointly.

        Returns (outcome, deterministic).  Deterministic measurements leave
        the state untouched; random ones update it in the standard way.
        """
        if obs.n_qubits != self.n:
            raise InvalidInputError("observable size mismatch")
        if not obs.is_hermitian:
            raise InvalidInputError("observable must be Hermitian (sign +-1)")
        anti = self._anticommutation_mask(obs)
        stab_anti = anti >> self.n
        if stab_anti == 0:
            product = self._stabilizer_product(anti & ((1 << self.n) - 1))
            if product.x_mask != obs.x_mask or product.z_mask != obs.z_mask:
                raise InvalidInputError("observable does not act on a stabilizer state axis")
            return obs.sign * product.sign, True
        outcome = 1 if rng.integers(2) == 0 else -1
        pivot = self.n + (stab_anti & -stab_anti).bit_length() - 1
        self._collapse(anti, pivot, obs, outcome)
        return outcome, False

    def measure_z(self, q: int, rng: np.random.Generator) -> tuple[int, bool]:
        """Measure Z on one qubit; same contract as measure_pauli."""
        anti = self.xcols[q]
        stab_anti = anti >> self.n
        if stab_anti == 0:
            product = self._stabilizer_product(anti & ((1 << self.n) - 1))
            if product.x_mask != 0 or product.z_mask != 1 << q:
                raise AssertionError("tableau inconsistency in deterministic measurement")
            return product.sign, True
        outcome = 1 if rng.integers(2) == 0 else -1
        pivot = self.n + (stab_anti & -stab_anti).bit_length() - 1
        obs = PauliString(self.n, 0, 1 << q, 0)
        self._collapse(anti, pivot, obs, outcome)
        return outcome, False

    def _anticommutation_mask(self, p: PauliString) -> int:
        mask = 0
        for q in _bits(p.x_mask):
            mask ^= self.zcols[q]
        for q in _bits(p.z_mask):
            mask ^= self.xcols[q]
        return mask

    def _stabilizer_product(self, destab_hits: int) -> PauliString:
        """Product of the stabilizer generators paired with the hit destabilizers."""
        product = PauliString.identity(self.n)
        for i in _bits(destab_hits):
            product = product * self._row_pauli(self.n + i)
        return product

    def _collapse(self, anti: int, pivot: int, obs: PauliString, outcome: int) -> None:
        rows = anti & ~(1 << pivot)
        if rows:
            self._mass_multiply(rows, pivot)
        # the old pivot becomes the destabilizer paired with the new stabilizer
        self._copy_row(pivot, pivot - self.n)
        self._set_row(pivot, obs, flip_sign=(outcome < 0))

    def _mass_multiply(self, rows: int, pivot: int) -> None:
        """Row_r <- Row_r * Row_pivot for every row in the `rows` bitmask."""
        lo = hi = 0  # bit-plane counter of the i-exponent (mod 4) per row
        for q in range(self.n):
            xcol, zcol = self.xcols[q], self.zcols[q]
            xp = (xcol >> pivot) & 1
            zp = (zcol >> pivot) & 1
            if not (xp or zp):
                continue
            if xp and not zp:      # pivot X: Z*X -> +i, Y*X -> -i
                plus = ~xcol & zcol & rows
                minus = xcol & zcol & rows
            elif xp and zp:        # pivot Y: X*Y -> +i, Z*Y -> -i
                plus = xcol & ~zcol & rows
                minus = ~xcol & zcol & rows
            else:                  # pivot Z: Y*Z -> +i, X*Z -> -i
                plus = xcol & zcol & rows
                minus = xcol & ~zcol & rows
            if plus:
                carry = lo & plus
                lo ^= plus
                hi ^= carry
            if minus:
                borrow = minus & ~lo
                lo ^= minus
                hi ^= borrow
            if xp:
                self.xcols[q] = xcol ^ rows
            if zp:
                self.zcols[q] = zcol ^ rows
        flip = hi & rows
        if (self.signs >> pivot) & 1:
            flip ^= rows
        self.signs ^= flip

    def _copy_row(self, src: int, dst: int) -> None:
        dst_bit = 1 << dst
        for q in range(self.n):
            if ((self.xcols[q] >> src) ^ (self.xcols[q] >> dst)) & 1:
                self.xcols[q] ^= dst_bit
            if ((self.zcols[q] >> src) ^ (self.zcols[q] >> dst)) & 1:
                self.zcols[q] ^= dst_bit
        if ((self.signs >> src) ^ (self.signs >> dst)) & 1:
            self.signs ^= dst_bit

    def _set_row(self, r: int, p: PauliString, flip_sign: bool) -> None:
        bit = 1 << r
        for q in range(self.n):
            if (self.xcols[q] & bit) != (((p.x_mask >> q) & 1) << r):
                self.xcols[q] ^= bit
            if (self.zcols[q] & bit) != (((p.z_mask >> q) & 1) << r):
                self.zcols[q] ^= bit
        sign_bit = (p.sign < 0) ^ flip_sign
        if bool(self.signs & bit) != sign_bit:
            self.signs ^= bit

    # -- diagnostics -----------------------------------------------------

    def check_invariants(self) -> None:
        """Raise if commutation or destabilizer-pairing structure is broken."""
        stabs = self.stabilizers()
        destabs = self.destabilizers()
        for i, s in enumerate(stabs):
            if not s.is_hermitian:
                raise AssertionError(f"stabilizer {i} is not Hermitian")
            for j in range(i + 1, self.n):
                if not s.commutes(stabs[j]):
                    raise AssertionError(f"stabilizers {i} and {j} anticommute")
        for i, d in enumerate(destabs):
            for j, s in enumerate(stabs):
                expected = i != j
                if d.commutes(s) != expected:
                    raise AssertionError(f"destabilizer {i} pairing broken against stabilizer {j}")


def depolarize1(t: StabilizerTableau, q: int, p: float, rng: np.random.Generator) -> None:
    """With probability p apply one of X, Y, Z on q, chosen uniformly."""
    if not 0.0 <= p <= 1.0:
        raise InvalidInputError("probability out of range")
    if p and rng.random() < p:
        (t.x, t.y, t.z)[rng.integers(3)](q)


def depolarize2(t: StabilizerTableau, a: int, b: int, p: float, rng: np.random.Generator) -> None:
    """With probability p apply one of the 15 non-identity two-qubit Paulis."""
    if not 0.0 <= p <= 1.0:
        raise InvalidInputError("probability out of range")
    if p and rng.random() < p:
        pa, pb = _TWO_QUBIT_PAULIS[rng.integers(15)]
        for letter, q in ((pa, a), (pb, b)):
            if letter != "I":
                getattr(t, letter.lower())(q)


def readout_flip(bit: int, p_r: float, rng: np.random.Generator) -> int:
    """Flip a classical +-1 readout with probability p_r."""
    if not 0.0 <= p_r <= 1.0:
        raise InvalidInputError("probability out of range")
    if p_r and rng.random() < p_r:
        return -bit
    return bit
