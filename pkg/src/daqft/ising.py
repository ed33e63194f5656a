"""Two-body ZZ coupling patterns shared by the simulator and the schedule compiler.

Qubits are numbered 1..n and couplings are stored for ordered pairs (j, k)
with j < k.  A missing pair means zero coupling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

# Dense statevectors above 2**14 amplitudes are out of scope for this package.
MAX_QUBITS = 14

Pair = tuple[int, int]


def all_pairs(n_qubits: int) -> list[Pair]:
    """All ordered pairs (j, k) with 1 <= j < k <= n_qubits."""
    return [(j, k) for j in range(1, n_qubits + 1) for k in range(j + 1, n_qubits + 1)]


@dataclass(frozen=True)
class IsingSpec:
    """A ZZ coupling pattern together with the analog resource it is built from.

    ``couplings`` holds the target strengths g_jk.  ``resource_coupling`` is the
    strength g of the homogeneous all-to-all resource Hamiltonian
    g * sum_{j<k} Z_j Z_k, and ``target_time`` is the total evolution time the
    target pattern should act for.
    """

    n_qubits: int
    couplings: dict[Pair, float] = field(default_factory=dict)
    resource_coupling: float = 1.0
    target_time: float = 1.0

    def __post_init__(self) -> None:
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in 1..{MAX_QUBITS}, got {self.n_qubits}")
        for pair, value in self.couplings.items():
            j, k = pair
            if not (1 <= j < k <= self.n_qubits):
                raise ValueError(f"coupling pair {pair} is not ordered within 1..{self.n_qubits}")
            if not math.isfinite(value):
                raise ValueError(f"coupling for pair {pair} is not finite")
        if not (math.isfinite(self.resource_coupling) and self.resource_coupling > 0):
            raise ValueError("resource_coupling must be positive and finite")
        if not math.isfinite(self.target_time):
            raise ValueError("target_time must be finite")

    @staticmethod
    def homogeneous(n_qubits: int, g: float = 1.0, target_time: float = 1.0) -> "IsingSpec":
        """All-to-all pattern with every pair coupled at strength g."""
        return IsingSpec(
            n_qubits=n_qubits,
            couplings={pair: g for pair in all_pairs(n_qubits)},
            resource_coupling=g,
            target_time=target_time,
        )

    def coupling(self, j: int, k: int) -> float:
        """Strength for pair (j, k), zero when the pair is absent."""
        if not (1 <= j < k <= self.n_qubits):
            raise ValueError(f"pair ({j}, {k}) is not ordered within 1..{self.n_qubits}")
        return self.couplings.get((j, k), 0.0)

    def is_homogeneous(self) -> bool:
        """True when every pair is present with one common strength."""
        pairs = all_pairs(self.n_qubits)
        if set(self.couplings) != set(pairs):
            return False
        values = [self.couplings[p] for p in pairs]
        return all(v == values[0] for v in values)


def coupling_diagonal(spec: IsingSpec) -> np.ndarray:
    """Energies sum_{j<k} g_jk * z_j * z_k for every computational basis state.

    Basis index i encodes qubit 1 as the most significant bit; z = +1 for bit 0
    and -1 for bit 1.
    """
    n = spec.n_qubits
    dim = 1 << n
    indices = np.arange(dim)
    z = np.empty((n + 1, dim), dtype=float)  # 1-based rows, row 0 unused
    for q in range(1, n + 1):
        bits = (indices >> (n - q)) & 1
        z[q] = 1.0 - 2.0 * bits
    energies = np.zeros(dim, dtype=float)
    for (j, k), g in spec.couplings.items():
        if g != 0.0:
            energies += g * z[j] * z[k]
    return energies
