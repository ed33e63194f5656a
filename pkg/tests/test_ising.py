"""Tests for the Ising coupling specification and its diagonal."""

import numpy as np
import pytest

from daqft.ising import IsingSpec, all_pairs, coupling_diagonal

PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]])


def dense_zz_diagonal(spec):
    """Oracle: sum of g_jk Z_j Z_k built by explicit Kronecker products."""
    dim = 2 ** spec.n_qubits
    total = np.zeros((dim, dim))
    for (j, k), g in spec.couplings.items():
        term = np.eye(1)
        for qubit in range(1, spec.n_qubits + 1):
            factor = PAULI_Z if qubit in (j, k) else np.eye(2)
            term = np.kron(term, factor)
        total = total + g * term
    return np.diag(total)


class TestAllPairs:
    """Ordered pair enumeration."""

    def test_counts(self):
        """n qubits give n(n-1)/2 pairs."""
        for n in range(1, 8):
            assert len(all_pairs(n)) == n * (n - 1) // 2

    def test_ordering(self):
        """Pairs are lexicographic with j < k."""
        assert list(all_pairs(4)) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]


class TestIsingSpec:
    """Validation and convenience accessors."""

    def test_homogeneous_factory(self):
        """Homogeneous specs couple every pair with the same strength."""
        spec = IsingSpec.homogeneous(4, 0.5)
        assert set(spec.couplings) == set(all_pairs(4))
        assert all(g == 0.5 for g in spec.couplings.values())
        assert spec.is_homogeneous()

    def test_missing_coupling_reads_zero(self):
        """Absent pairs have zero strength."""
        spec = IsingSpec(3, {(1, 2): 1.0})
        assert spec.coupling(1, 3) == 0.0
        assert spec.coupling(1, 2) == 1.0

    def test_rejects_unordered_pair(self):
        """Pairs must satisfy j < k."""
        with pytest.raises(ValueError, match="ordered"):
            IsingSpec(3, {(2, 1): 1.0})

    def test_rejects_out_of_range_qubit(self):
        """Couplings may only touch qubits 1..n."""
        with pytest.raises(ValueError):
            IsingSpec(3, {(1, 4): 1.0})

    def test_rejects_bad_sizes(self):
        """Register size is bounded."""
        with pytest.raises(ValueError):
            IsingSpec(0, {})
        with pytest.raises(ValueError):
            IsingSpec(20, {})

    def test_rejects_nonpositive_resource_coupling(self):
        """The resource strength must be positive."""
        with pytest.raises(ValueError):
            IsingSpec(2, {}, resource_coupling=0.0)


class TestCouplingDiagonal:
    """Diagonal of sum_{j<k} g_jk Z_j Z_k in the computational basis."""

    def test_two_qubits(self):
        """Single ZZ term has the textbook (+,-,-,+) pattern."""
        spec = IsingSpec(2, {(1, 2): 0.7})
        assert np.allclose(coupling_diagonal(spec), [0.7, -0.7, -0.7, 0.7])

    def test_qubit_one_is_most_significant(self):
        """Flipping qubit 1 moves by half the index range."""
        spec = IsingSpec(3, {(1, 2): 1.0})
        diag = coupling_diagonal(spec)
        # |000> and |100> differ only in qubit 1, so the ZZ sign flips
        assert diag[0] == 1.0
        assert diag[4] == -1.0

    def test_matches_kron_oracle(self):
        """Vectorized diagonal equals the explicit Kronecker construction."""
        rng = np.random.default_rng(11)
        for n in (2, 3, 4, 5):
            couplings = {pair: float(rng.normal()) for pair in all_pairs(n)}
            spec = IsingSpec(n, couplings)
            assert np.allclose(coupling_diagonal(spec), dense_zz_diagonal(spec))

    def test_additive_in_couplings(self):
        """The diagonal is linear in the coupling dictionary."""
        a = IsingSpec(3, {(1, 2): 0.3})
        b = IsingSpec(3, {(2, 3): -0.9})
        both = IsingSpec(3, {(1, 2): 0.3, (2, 3): -0.9})
        assert np.allclose(
            coupling_diagonal(both), coupling_diagonal(a) + coupling_diagonal(b)
        )
