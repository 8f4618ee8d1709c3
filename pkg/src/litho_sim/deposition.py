"""Closed-form deposition rates and resolution figures of merit.

All rate functions accept a scalar phase or a numpy array of phases and
broadcast accordingly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from litho_sim.errors import PreconditionError
from litho_sim.fock import MAX_PHOTONS, NmesSpec, binomial


def _check_order(N) -> int:
    if isinstance(N, bool) or int(N) != N:
        raise PreconditionError(f"photon number must be an integer, got {N!r}")
    if N < 1:
        raise PreconditionError(f"N={N}: absorption order must be at least 1")
    if N > MAX_PHOTONS:
        raise PreconditionError(f"N={N} exceeds the photon cutoff {MAX_PHOTONS}")
    return int(N)


def deposition_mes(N: int, phi):
    """NOON-state rate ``(1 + cos N phi) / 2**N``."""
    N = _check_order(N)
    return (1.0 + np.cos(N * np.asarray(phi, dtype=float))) / 2.0**N


def deposition_nmes(N: int, gamma, phi):
    """NMES rate ``[1 + sin(2 gamma) cos(N phi)] / 2**N``.

    ``gamma`` may itself be an array (position-dependent, i.e. local,
    entanglement) broadcast against ``phi``.
    """
    N = _check_order(N)
    phi = np.asarray(phi, dtype=float)
    return (1.0 + np.sin(2.0 * np.asarray(gamma, dtype=float)) * np.cos(N * phi)) / 2.0**N


def deposition_general(spec: NmesSpec, phi):
    """Diagonal rate of the general ``(N, m)`` branch:

    ``C(N, m) / 2**N * {1 + sin(2 gamma) cos[(N - 2m) phi + theta]}``
    """
    N, m = spec.N, spec.m
    phase = (N - 2 * m) * np.asarray(phi, dtype=float) + spec.theta
    return binomial(N, m) / 2.0**N * (1.0 + math.sin(2.0 * spec.gamma) * np.cos(phase))


def matrix_element_general(N, m, m_prime, gamma, theta_m, theta_m_prime, phi):
    """Four-term closed form of ``<psi_{N m}| delta_N |psi_{N m'}>``.

    Uses the unnormalized two-ket construction, so ``m`` or ``m'`` equal to
    ``N/2`` is allowed here.
    """
    for idx in (m, m_prime):
        if int(idx) != idx or not 0 <= idx <= N:
            raise PreconditionError(f"index {idx!r} outside [0, N={N}]")
    _check_order(N)
    phi = np.asarray(phi, dtype=float)
    d = m_prime - m
    s = N - m - m_prime
    c2, s2 = math.cos(gamma) ** 2, math.sin(gamma) ** 2
    value = (
        c2 * np.exp(1j * d * phi)
        + s2 * np.exp(-1j * d * phi) * np.exp(1j * (theta_m_prime - theta_m))
        + 0.5
        * math.sin(2.0 * gamma)
        * (np.exp(1j * (s * phi + theta_m_prime)) + np.exp(-1j * (s * phi + theta_m)))
    )
    return math.sqrt(binomial(N, m) * binomial(N, m_prime)) / 2.0**N * value


def deposition_resonant(N: int, k: int, phi):
    """Rate under the resonant local entanglement ``2 gamma = k N phi``.

    ``[2 + sin((k+1) N phi) + sin((k-1) N phi)] / 2**(N+1)``
    """
    N = _check_order(N)
    if int(k) != k or k < 1:
        raise PreconditionError(f"resonance integer k={k!r} must be >= 1")
    phi = np.asarray(phi, dtype=float)
    return (2.0 + np.sin((k + 1) * N * phi) + np.sin((k - 1) * N * phi)) / 2.0 ** (N + 1)


def deposition_resonant_substituted(N: int, k: int, phi):
    """Same rate obtained by substituting ``gamma = k N phi / 2`` into the NMES rate."""
    if int(k) != k or k < 1:
        raise PreconditionError(f"resonance integer k={k!r} must be >= 1")
    phi = np.asarray(phi, dtype=float)
    return deposition_nmes(N, k * N * phi / 2.0, phi)


@dataclass(frozen=True)
class ResolutionScheme:
    """Which lithography scheme to quote a Rayleigh resolution for."""

    variant: str
    wavelength: float = 1.0
    N: int | None = None
    k: int | None = None

    def __post_init__(self):
        if self.variant not in ("classical", "mes", "resonant"):
            raise PreconditionError(f"unknown resolution scheme {self.variant!r}")
        if not self.wavelength > 0:
            raise PreconditionError(f"wavelength must be positive, got {self.wavelength}")
        if self.variant in ("mes", "resonant"):
            if self.N is None or int(self.N) != self.N or self.N < 1:
                raise PreconditionError(f"{self.variant} scheme needs N >= 1")
        if self.variant == "resonant":
            if self.k is None or int(self.k) != self.k or self.k < 1:
                raise PreconditionError("resonant scheme needs k >= 1")

    @classmethod
    def classical(cls, wavelength: float = 1.0) -> "ResolutionScheme":
        return cls("classical", wavelength)

    @classmethod
    def mes(cls, N: int, wavelength: float = 1.0) -> "ResolutionScheme":
        return cls("mes", wavelength, N=N)

    @classmethod
    def resonant(cls, N: int, k: int, wavelength: float = 1.0) -> "ResolutionScheme":
        return cls("resonant", wavelength, N=N, k=k)

    def rate(self) -> Callable:
        """Deposition rate ``phi -> value`` whose fringes this scheme describes."""
        if self.variant == "classical":
            return lambda phi: deposition_mes(1, phi)
        if self.variant == "mes":
            return lambda phi: deposition_mes(self.N, phi)
        return lambda phi: deposition_resonant(self.N, self.k, phi)


def effective_resolution(scheme: ResolutionScheme) -> float:
    """Rayleigh resolution: lambda/4, lambda/(4N) or lambda/(4(k+1)N)."""
    lam = scheme.wavelength
    if scheme.variant == "classical":
        return lam / 4
    if scheme.variant == "mes":
        return lam / (4 * scheme.N)
    return lam / (4 * (scheme.k + 1) * scheme.N)


@dataclass(frozen=True)
class DepositionCurve:
    """Sampled deposition (or exposure) values on a strictly increasing phase grid."""

    phi: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        phi = np.array(self.phi, dtype=float)
        values = np.array(self.values, dtype=float)
        if phi.ndim != 1 or phi.shape != values.shape:
            raise PreconditionError("phi grid and values must be 1-D of equal length")
        if phi.size >= 2 and not np.all(np.diff(phi) > 0):
            raise PreconditionError("phi grid must be strictly increasing")
        if np.any(values < -1e-15):
            raise PreconditionError("deposition values must be nonnegative")
        phi.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "values", values)

    def __len__(self):
        return self.phi.size


def phase_grid(phi_min: float = 0.0, phi_max: float = 2 * math.pi, samples: int = 512,
               endpoint: bool = False) -> np.ndarray:
    if samples < 2 or not phi_min < phi_max:
        raise PreconditionError("grid needs samples >= 2 and phi_min < phi_max")
    return np.linspace(phi_min, phi_max, samples, endpoint=endpoint)


def sample_curve(rate: Callable, phi_grid) -> DepositionCurve:
    phi = np.asarray(phi_grid, dtype=float)
    return DepositionCurve(phi, np.broadcast_to(rate(phi), phi.shape))
