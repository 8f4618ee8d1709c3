"""Exact two-mode Fock-space algebra and the brute-force dosing oracle.

States are sparse maps ``(n_a, n_b) -> amplitude``.  The superposition mode
``e = (a + b) / sqrt(2)`` is applied by expanding ``(a + b)**q`` binomially
with exact integer ladder factors, so every closed-form deposition rate in
:mod:`litho_sim.deposition` can be checked against first principles.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from litho_sim.errors import (
    DegenerateBranchError,
    PhotonCutoffError,
    PreconditionError,
)

MAX_PHOTONS = 20
PRUNE_THRESHOLD = 1e-15

Occupation = tuple[int, int]


def binomial(n: int, m: int) -> int:
    """Exact binomial coefficient ``n! / ((n - m)! m!)`` for ``0 <= m <= n <= 20``."""
    if isinstance(n, bool) or isinstance(m, bool) or int(n) != n or int(m) != m:
        raise PreconditionError(f"binomial needs integers, got ({n!r}, {m!r})")
    n, m = int(n), int(m)
    if n > MAX_PHOTONS:
        raise PhotonCutoffError(f"n={n} exceeds the photon cutoff {MAX_PHOTONS}")
    if not 0 <= m <= n:
        raise PreconditionError(f"binomial({n}, {m}) requires 0 <= m <= n")
    return math.comb(n, m)


def _falling(n: int, j: int) -> int:
    # n! / (n - j)!
    return math.perm(n, j)


@dataclass(frozen=True)
class TwoModeFockState:
    """Immutable sparse amplitude map over two-mode occupation pairs."""

    amplitudes: Mapping[Occupation, complex] = field(default_factory=dict)

    def __post_init__(self):
        clean: dict[Occupation, complex] = {}
        for (na, nb), amp in dict(self.amplitudes).items():
            na, nb = int(na), int(nb)
            if na < 0 or nb < 0:
                raise PreconditionError(f"negative occupation ({na}, {nb})")
            if na > MAX_PHOTONS or nb > MAX_PHOTONS:
                raise PhotonCutoffError(
                    f"occupation ({na}, {nb}) exceeds the photon cutoff {MAX_PHOTONS}"
                )
            clean[(na, nb)] = clean.get((na, nb), 0j) + complex(amp)
        object.__setattr__(self, "amplitudes", MappingProxyType(clean))

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def basis(cls, n_a: int, n_b: int, amplitude: complex = 1.0) -> "TwoModeFockState":
        return cls({(n_a, n_b): amplitude})

    @classmethod
    def zero(cls) -> "TwoModeFockState":
        return cls({})

    def __len__(self) -> int:
        return len(self.amplitudes)

    def __getitem__(self, occupation: Occupation) -> complex:
        return self.amplitudes.get(tuple(occupation), 0j)

    def items(self):
        return self.amplitudes.items()

    def norm_squared(self) -> float:
        return math.fsum(abs(a) ** 2 for a in self.amplitudes.values())

    def max_photons(self) -> int:
        """Largest total occupation in the support (``-1`` for the zero state)."""
        return max((na + nb for na, nb in self.amplitudes), default=-1)

    def inner(self, other: "TwoModeFockState") -> complex:
        """``<self|other>`` (conjugate-linear in ``self``)."""
        small, large = (self, other) if len(self) <= len(other) else (other, self)
        terms = [
            self[k].conjugate() * other[k] for k in small.amplitudes if k in large.amplitudes
        ]
        re = math.fsum(z.real for z in terms)
        im = math.fsum(z.imag for z in terms)
        return complex(re, im)

    def pruned(self, threshold: float = PRUNE_THRESHOLD) -> "TwoModeFockState":
        return TwoModeFockState(
            {k: a for k, a in self.amplitudes.items() if abs(a) >= threshold}
        )

    def __add__(self, other: "TwoModeFockState") -> "TwoModeFockState":
        if not isinstance(other, TwoModeFockState):
            return NotImplemented
        out = dict(self.amplitudes)
        for k, a in other.amplitudes.items():
            out[k] = out.get(k, 0j) + a
        return TwoModeFockState(out)

    def __sub__(self, other: "TwoModeFockState") -> "TwoModeFockState":
        return self + (-1.0) * other

    def __mul__(self, scalar: complex) -> "TwoModeFockState":
        if isinstance(scalar, TwoModeFockState):
            return NotImplemented
        return TwoModeFockState({k: scalar * a for k, a in self.amplitudes.items()})

    __rmul__ = __mul__

    def isclose(self, other: "TwoModeFockState", atol: float = 1e-12) -> bool:
        keys = set(self.amplitudes) | set(other.amplitudes)
        return all(abs(self[k] - other[k]) <= atol for k in keys)


@dataclass(frozen=True)
class NmesSpec:
    """One NMES branch: ``N`` photons split ``(N-m, m)`` / ``(m, N-m)``.

    ``gamma`` is the entanglement angle (0 = product state, pi/4 = maximal) and
    ``theta`` the relative phase of the second ket.
    """

    N: int
    m: int = 0
    gamma: float = math.pi / 4
    theta: float = 0.0

    def __post_init__(self):
        _check_split(self.N, self.m)
        if 2 * self.m == self.N:
            raise DegenerateBranchError(
                f"2m == N ({self.N}); the two kets coincide"
            )
        if not 0.0 <= self.gamma <= math.pi / 2:
            raise PreconditionError(f"gamma={self.gamma} outside [0, pi/2]")


def _check_split(N: int, m: int) -> None:
    if int(N) != N or int(m) != m:
        raise PreconditionError(f"N and m must be integers, got N={N!r}, m={m!r}")
    if N < 0 or m < 0:
        raise PreconditionError(f"N={N}, m={m} must be nonnegative")
    if m > N:
        raise PreconditionError(f"m={m} exceeds N={N}")
    if N > MAX_PHOTONS:
        raise PhotonCutoffError(f"N={N} exceeds the photon cutoff {MAX_PHOTONS}")


def nmes_kets(N: int, m: int, gamma: float, theta: float, phi: float) -> TwoModeFockState:
    """Literal two-ket construction without the degeneracy/normalization guard.

    When ``2m == N`` both terms land on the same occupation pair and are summed;
    the result is then generally unnormalized.  This is what cross-branch
    matrix elements such as ``m' = N/2`` need.
    """
    _check_split(N, m)
    first = cmath.exp(1j * m * phi) * math.cos(gamma)
    second = cmath.exp(1j * ((N - m) * phi + theta)) * math.sin(gamma)
    return TwoModeFockState({(N - m, m): first}) + TwoModeFockState({(m, N - m): second})


def make_nmes_state(spec: NmesSpec, phi: float) -> TwoModeFockState:
    """Normalized NMES ket at relative phase ``phi``.

    >>> s = make_nmes_state(NmesSpec(N=3, m=0, gamma=0.0), 1.2)
    >>> s[(3, 0)], s[(0, 3)]
    ((1+0j), 0j)
    """
    if not isinstance(spec, NmesSpec):
        raise PreconditionError("make_nmes_state expects an NmesSpec")
    return nmes_kets(spec.N, spec.m, spec.gamma, spec.theta, phi)


def superposition_state(
    branches: Iterable[tuple[int, complex, float]],
    m: int,
    gamma: float,
    phi: float,
) -> TwoModeFockState:
    """Coherent sum ``sum_n C_n |psi_{n m}>`` of branches ``(n, C_n, theta_n)``.

    Feeding this to :func:`dosing_expectation` with a single order ``N``
    gives the literal single-order dose of a mixed-photon-number state, in
    which every branch with fewer than ``N`` photons contributes nothing.
    """
    total = TwoModeFockState.zero()
    for n, amplitude, theta in branches:
        total = total + amplitude * nmes_kets(n, m, gamma, theta, phi)
    return total


def apply_e_power(
    q: int, state: TwoModeFockState, prune: float = PRUNE_THRESHOLD
) -> TwoModeFockState:
    """Return the unnormalized state ``e**q |state>`` with ``e = (a + b)/sqrt(2)``.

    ``(a + b)**q = sum_j C(q, j) a**j b**(q-j)`` because the two modes commute;
    each term lowers ``(n_a, n_b)`` to ``(n_a - j, n_b - q + j)`` with the exact
    factor ``sqrt(n_a!/(n_a-j)! * n_b!/(n_b-q+j)!)``.  Amplitudes with magnitude
    below ``prune`` are dropped.
    """
    if int(q) != q or q < 0:
        raise PreconditionError(f"q={q!r} must be a nonnegative integer")
    q = int(q)
    if q > MAX_PHOTONS:
        raise PhotonCutoffError(f"q={q} exceeds the photon cutoff {MAX_PHOTONS}")
    if q == 0:
        return state
    scale = 2.0 ** (-q / 2)
    out: dict[Occupation, complex] = {}
    for (na, nb), amp in state.items():
        for j in range(max(0, q - nb), min(q, na) + 1):
            factor = math.comb(q, j) ** 2 * _falling(na, j) * _falling(nb, q - j)
            key = (na - j, nb - q + j)
            out[key] = out.get(key, 0j) + amp * scale * math.sqrt(factor)
    return TwoModeFockState({k: a for k, a in out.items() if abs(a) >= prune})


def dosing_matrix_element(
    q: int, bra: TwoModeFockState, ket: TwoModeFockState
) -> complex:
    """``<bra| (e^dag)**q e**q |ket> / q!`` evaluated by explicit lowering."""
    lowered_ket = apply_e_power(q, ket, prune=0.0)
    lowered_bra = lowered_ket if bra is ket else apply_e_power(q, bra, prune=0.0)
    return lowered_bra.inner(lowered_ket) / math.factorial(q)


def dosing_expectation(q: int, state: TwoModeFockState) -> float:
    """q-photon deposition rate ``||e**q |state>||**2 / q!``; never negative."""
    if state.max_photons() < q:
        if int(q) != q or q < 0:
            raise PreconditionError(f"q={q!r} must be a nonnegative integer")
        return 0.0
    return apply_e_power(q, state, prune=0.0).norm_squared() / math.factorial(q)
