"""Independent dense-matrix oracles for the sparse Fock engine."""

import math

import numpy as np


def dense_ladder(cutoff):
    """Annihilation operators for two modes on a (cutoff+1)**2 dense space."""
    a1 = np.diag(np.sqrt(np.arange(1, cutoff + 1)), k=1).astype(complex)
    eye = np.eye(cutoff + 1)
    return np.kron(a1, eye), np.kron(eye, a1)


def dense_vector(state, cutoff):
    v = np.zeros((cutoff + 1) ** 2, dtype=complex)
    for (na, nb), amp in state.items():
        v[na * (cutoff + 1) + nb] += amp
    return v


def dense_dose(q, bra, ket):
    """<bra| (e^dag)^q e^q |ket> / q! with explicit matrix powers."""
    cutoff = max(bra.max_photons(), ket.max_photons(), q, 1)
    a, b = dense_ladder(cutoff)
    e = (a + b) / math.sqrt(2)
    eq = np.linalg.matrix_power(e, q)
    op = eq.conj().T @ eq / math.factorial(q)
    return dense_vector(bra, cutoff).conj() @ op @ dense_vector(ket, cutoff)


