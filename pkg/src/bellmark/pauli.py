"""Pauli strings with exact phase tracking on bit-packed masks.

An operator is stored as ``i**phase_exp * prod_q X_q**x Z_q**z`` with the X
factor to the left of the Z factor on every qubit.  Qubit q corresponds to
bit q of the masks.  A string is Hermitian exactly when ``phase_exp`` and the
number of Y positions (qubits with both bits set) have equal parity; its
sign as an observable is then +1 or -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import InvalidInputError
from .graphs import ConnectivityGraph

__all__ = ["PauliString", "graph_stabilizers"]

_LETTERS = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_LETTER_BITS = {v: k for k, v in _LETTERS.items()}
_PREFIXES = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_PREFIX_EXP = {"+": 0, "": 0, "+i": 1, "i": 1, "-": 2, "−": 2, "-i": 3, "−i": 3}


@dataclass(frozen=True)
class PauliString:
    """n-qubit Pauli operator with a global phase i**phase_exp."""

    n_qubits: int
    x_mask: int
    z_mask: int
    phase_exp: int = 0

    def __post_init__(self) -> None:
        limit = 1 << self.n_qubits
        if not (0 <= self.x_mask < limit and 0 <= self.z_mask < limit):
            raise InvalidInputError("mask exceeds qubit count")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    # -- constructors -------------------------------------------------

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(n_qubits, 0, 0, 0)

    @classmethod
    def single(cls, n_qubits: int, qubit: int, letter: str) -> "PauliString":
        """One X, Y, or Z on `qubit`, identity elsewhere."""
        if not (0 <= qubit < n_qubits):
            raise InvalidInputError(f"qubit {qubit} out of range")
        x, z = _LETTER_BITS[letter.upper()]
        # Y = i * X Z, so a Y position carries one factor of i
        return cls(n_qubits, x << qubit, z << qubit, 1 if (x and z) else 0)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse e.g. '+ZXZ' or '-iYX'; qubit 0 is the leftmost character."""
        text = label.strip().replace("−", "-")
        prefix = ""
        while text and text[0] in "+-i":
            prefix += text[0]
            text = text[1:]
        if prefix not in _PREFIX_EXP:
            raise InvalidInputError(f"bad phase prefix in {label!r}")
        x = z = 0
        for q, ch in enumerate(text):
            try:
                xb, zb = _LETTER_BITS[ch.upper()]
            except KeyError:
                raise InvalidInputError(f"bad Pauli letter {ch!r} in {label!r}") from None
            x |= xb << q
            z |= zb << q
        y_weight = (x & z).bit_count()
        return cls(len(text), x, z, (_PREFIX_EXP[prefix] + y_weight) % 4)

    # -- representation ----------------------------------------------

    @property
    def y_weight(self) -> int:
        return (self.x_mask & self.z_mask).bit_count()

    @property
    def sign_exp(self) -> int:
        """Phase exponent relative to the Hermitian I/X/Y/Z tensor basis."""
        return (self.phase_exp - self.y_weight) % 4

    @property
    def is_hermitian(self) -> bool:
        return self.sign_exp in (0, 2)

    @property
    def sign(self) -> int:
        """+1 or -1 for a Hermitian string."""
        se = self.sign_exp
        if se == 0:
            return 1
        if se == 2:
            return -1
        raise InvalidInputError("Pauli string is not Hermitian")

    def letter(self, qubit: int) -> str:
        return _LETTERS[(self.x_mask >> qubit) & 1, (self.z_mask >> qubit) & 1]

    def label(self) -> str:
        return _PREFIXES[self.sign_exp] + "".join(self.letter(q) for q in range(self.n_qubits))

    def __str__(self) -> str:
        return self.label()

    # -- structure ----------------------------------------------------

    @property
    def support_mask(self) -> int:
        return self.x_mask | self.z_mask

    def support(self) -> tuple[int, ...]:
        return tuple(_bits(self.support_mask))

    @property
    def weight(self) -> int:
        return self.support_mask.bit_count()

    # -- algebra ------------------------------------------------------

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n_qubits != other.n_qubits:
            raise InvalidInputError("qubit count mismatch in Pauli product")
        # Moving other's X factors past self's Z factors gives (-1) per crossing.
        phase = self.phase_exp + other.phase_exp + 2 * (self.z_mask & other.x_mask).bit_count()
        return PauliString(
            self.n_qubits,
            self.x_mask ^ other.x_mask,
            self.z_mask ^ other.z_mask,
            phase % 4,
        )

    def commutes(self, other: "PauliString") -> bool:
        if self.n_qubits != other.n_qubits:
            raise InvalidInputError("qubit count mismatch in commutator")
        anti = (self.x_mask & other.z_mask).bit_count() + (self.z_mask & other.x_mask).bit_count()
        return anti % 2 == 0

    def negate(self) -> "PauliString":
        return PauliString(self.n_qubits, self.x_mask, self.z_mask, self.phase_exp + 2)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def graph_stabilizers(g: ConnectivityGraph) -> list[PauliString]:
    """Generators X_i (x) Z over the neighborhood of i, one per vertex, sign +1."""
    return [
        PauliString(g.n_vertices, 1 << i, g.neighbor_masks[i], 0)
        for i in range(g.n_vertices)
    ]
