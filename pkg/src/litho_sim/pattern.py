"""Pseudo-Fourier pattern engineering.

A recipe is an incoherent mixture of NMES branches sharing one mode split
``m`` and one entanglement angle ``gamma``; branch ``n`` contributes its
own ``n``-photon rate, i.e. one harmonic at frequency ``|n - 2m|`` on top of
a uniform background.  :func:`fit_target` inverts that map for targets given
as truncated Fourier data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence

import numpy as np

from litho_sim.deposition import DepositionCurve, phase_grid
from litho_sim.errors import DegenerateBranchError, NoFringeError, PreconditionError
from litho_sim.fock import binomial

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class Branch:
    n: int
    weight: float
    theta: float = 0.0


@dataclass(frozen=True)
class SuperpositionRecipe:
    """Weighted NMES branches plus exposure time.

    ``weight`` is ``|C_n|**2``; amplitude phases of ``C_n`` never enter the
    exposure, so they are not stored.
    """

    branches: tuple[Branch, ...]
    m: int = 0
    gamma: float = math.pi / 4
    t: float = 1.0

    def __post_init__(self):
        branches = tuple(
            b if isinstance(b, Branch) else Branch(*b) for b in self.branches
        )
        object.__setattr__(self, "branches", branches)
        ns = [b.n for b in branches]
        if len(set(ns)) != len(ns):
            raise PreconditionError(f"branch photon numbers must be distinct, got {ns}")
        if int(self.m) != self.m or self.m < 0:
            raise PreconditionError(f"m={self.m!r} must be a nonnegative integer")
        if not 0.0 <= self.gamma <= math.pi / 2:
            raise PreconditionError(f"gamma={self.gamma} outside [0, pi/2]")
        if not self.t >= 0:
            raise PreconditionError(f"exposure time t={self.t} must be nonnegative")
        for b in branches:
            if not b.weight >= 0:
                raise PreconditionError(f"branch n={b.n} has negative weight {b.weight}")
            if int(b.n) != b.n or b.n < 0:
                raise PreconditionError(f"branch photon number {b.n!r} invalid")
            if b.weight > 0 and 2 * self.m == b.n:
                raise DegenerateBranchError(f"branch n={b.n} has 2m == n with nonzero weight")

    @classmethod
    def from_amplitudes(
        cls,
        amplitudes: Mapping[int, complex],
        thetas: Mapping[int, float] | None = None,
        m: int = 0,
        gamma: float = math.pi / 4,
        t: float = 1.0,
    ) -> "SuperpositionRecipe":
        """Build from complex coefficients ``C_n``; only ``|C_n|**2`` is kept."""
        thetas = thetas or {}
        branches = tuple(
            Branch(n, abs(c) ** 2, thetas.get(n, 0.0)) for n, c in sorted(amplitudes.items())
        )
        return cls(branches, m, gamma, t)

    @property
    def total_weight(self) -> float:
        return math.fsum(b.weight for b in self.branches)

    @property
    def n_max(self) -> int:
        return max((b.n for b in self.branches), default=0)

    def normalized(self) -> "SuperpositionRecipe":
        """Rescale weights to sum to one, folding the scale into ``t``."""
        total = self.total_weight
        if total == 0:
            raise PreconditionError("cannot normalize a recipe with zero total weight")
        branches = tuple(replace(b, weight=b.weight / total) for b in self.branches)
        return replace(self, branches=branches, t=self.t * total)

    def to_json(self) -> dict:
        return {
            "m": int(self.m),
            "gamma": float(self.gamma),
            "t": float(self.t),
            "branches": [
                {"n": int(b.n), "weight": float(b.weight), "theta": float(b.theta)}
                for b in self.branches
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SuperpositionRecipe":
        try:
            branches = tuple(
                Branch(int(b["n"]), float(b["weight"]), float(b.get("theta", 0.0)))
                for b in data["branches"]
            )
            return cls(branches, int(data.get("m", 0)), float(data.get("gamma", math.pi / 4)),
                       float(data.get("t", 1.0)))
        except (KeyError, TypeError) as exc:
            raise PreconditionError(f"malformed recipe: {exc}") from exc


def _branch_prefactor(n: int, m: int) -> float:
    # C(n, m) / 2**n: the n-photon rate scale of one branch
    return binomial(n, m) / 2.0**n


def _active(recipe: SuperpositionRecipe):
    for b in recipe.branches:
        if b.weight == 0:
            continue
        if recipe.m > b.n:
            raise PreconditionError(f"branch n={b.n} has m={recipe.m} > n")
        yield b


def exposure_curve(recipe: SuperpositionRecipe, phi_grid) -> DepositionCurve:
    """Exposure ``P(phi) = t * sum_n w_n * rate_{n m}(gamma, phi)``.

    Branches of different photon number add without interference terms.
    """
    phi = np.asarray(phi_grid, dtype=float)
    s2g = math.sin(2 * recipe.gamma)
    total = np.zeros_like(phi)
    for b in _active(recipe):
        rate = _branch_prefactor(b.n, recipe.m) * (
            1.0 + s2g * np.cos((b.n - 2 * recipe.m) * phi + b.theta)
        )
        total = total + b.weight * rate
    return DepositionCurve(phi, recipe.t * total)


@dataclass(frozen=True)
class FourierPatternSpec:
    """``P(phi) = t * (Q + sum_h a_h cos(h phi) + b_h sin(h phi))``.

    ``Q``, ``a`` and ``b`` are rates (per unit exposure time) and already
    include each branch's ``C(n, m)/2**n`` factor; index ``h`` runs ``0..N``
    with ``a[0] = b[0] = 0``.
    """

    Q: float
    a: np.ndarray
    b: np.ndarray
    t: float = 1.0

    @property
    def N(self) -> int:
        return len(self.a) - 1

    def background(self) -> float:
        return self.Q * self.t

    def oscillatory(self, phi) -> np.ndarray:
        phi = np.asarray(phi, dtype=float)
        h = np.arange(len(self.a))
        ang = np.multiply.outer(phi, h)
        return self.t * (np.cos(ang) @ self.a + np.sin(ang) @ self.b)

    def evaluate(self, phi) -> np.ndarray:
        return self.background() + self.oscillatory(phi)

    def harmonics(self, tol: float = 0.0) -> list[tuple[int, float, float]]:
        """Nonzero harmonics as ``(h, t*a_h, t*b_h)`` (target-coefficient units)."""
        return [
            (h, self.t * self.a[h], self.t * self.b[h])
            for h in range(1, len(self.a))
            if abs(self.a[h]) > tol or abs(self.b[h]) > tol
        ]


def fourier_form(recipe: SuperpositionRecipe) -> FourierPatternSpec:
    s2g = math.sin(2 * recipe.gamma)
    branches = list(_active(recipe))
    top = max((abs(b.n - 2 * recipe.m) for b in branches), default=0)
    a = np.zeros(top + 1)
    bs = np.zeros(top + 1)
    q = []
    for br in branches:
        scale = br.weight * _branch_prefactor(br.n, recipe.m)
        q.append(scale)
        freq = br.n - 2 * recipe.m
        # cos(-h phi + theta) == cos(h phi - theta)
        theta = br.theta if freq > 0 else -br.theta
        h = abs(freq)
        a[h] += scale * s2g * math.cos(theta)
        bs[h] -= scale * s2g * math.sin(theta)
    return FourierPatternSpec(math.fsum(q), a, bs, recipe.t)


@dataclass(frozen=True)
class TargetCoeffs:
    """Target pattern ``f0 + sum cos_coeff*cos(n phi) + sin_coeff*sin(n phi)``."""

    f0: float
    harmonics: tuple[tuple[int, float, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        hs = tuple((int(n), float(c), float(s)) for n, c, s in self.harmonics)
        if any(n < 1 for n, _, _ in hs):
            raise PreconditionError("target harmonics must have frequency >= 1")
        if len({n for n, _, _ in hs}) != len(hs):
            raise PreconditionError("target harmonics must be distinct")
        object.__setattr__(self, "harmonics", hs)

    def evaluate(self, phi) -> np.ndarray:
        phi = np.asarray(phi, dtype=float)
        out = np.full_like(phi, self.f0)
        for n, c, s in self.harmonics:
            out = out + c * np.cos(n * phi) + s * np.sin(n * phi)
        return out

    def to_json(self) -> dict:
        return {
            "f0": self.f0,
            "harmonics": [{"n": n, "cos": c, "sin": s} for n, c, s in self.harmonics],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "TargetCoeffs":
        try:
            hs = []
            for h in data.get("harmonics", []):
                if isinstance(h, Mapping):
                    hs.append((h["n"], h.get("cos", 0.0), h.get("sin", 0.0)))
                else:
                    hs.append(tuple(h))
            return cls(float(data.get("f0", 0.0)), tuple(hs))
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"malformed target coefficients: {exc}") from exc


def sinphi_target_coeffs(n_terms: int) -> TargetCoeffs:
    """Fourier data of ``|sin phi|`` through harmonic ``2 * n_terms``."""
    if int(n_terms) != n_terms or n_terms < 1:
        raise PreconditionError(f"n_terms={n_terms!r} must be a positive integer")
    harmonics = tuple(
        (2 * n, -4.0 / (math.pi * (4 * n * n - 1)), 0.0) for n in range(1, int(n_terms) + 1)
    )
    return TargetCoeffs(2.0 / math.pi, harmonics)


def fit_target(target: TargetCoeffs, gamma: float, t: float = 1.0) -> SuperpositionRecipe:
    """Compile target harmonics into an ``m = 0`` recipe.

    Harmonic ``n`` becomes the ``n``-photon branch with
    ``theta_n = atan2(-sin_coeff, cos_coeff)`` (so a negative cosine gives
    ``theta_n = pi``) and raw weight
    ``|coeff| * 2**n / (t * sin(2 gamma))``.  The oscillatory part of the
    resulting exposure equals the target's; the background generally does
    not match ``f0``.  The returned recipe is normalized, with the weight
    scale folded into ``t``.
    """
    if not 0.0 <= gamma <= math.pi / 2:
        raise PreconditionError(f"gamma={gamma} outside [0, pi/2]")
    s2g = math.sin(2 * gamma)
    if s2g < 1e-12:
        raise PreconditionError("sin(2 gamma) = 0: no oscillatory part is realizable")
    if not t > 0:
        raise PreconditionError(f"exposure time t={t} must be positive")
    branches = []
    for n, c, s in target.harmonics:
        amp = math.hypot(c, s)
        if amp == 0:
            continue
        theta = math.atan2(-s, c) % TWO_PI
        weight = amp / (t * s2g * _branch_prefactor(n, 0))
        branches.append(Branch(n, weight, theta))
    if not branches:
        raise PreconditionError("target has no nonzero harmonic to realize")
    return SuperpositionRecipe(tuple(branches), 0, gamma, t).normalized()


def sinphi_recipe(n_max: int, gamma: float = math.pi / 4, t: float = 1.0) -> SuperpositionRecipe:
    """``|sin phi|`` recipe using branches with at most ``n_max`` photons."""
    return fit_target(sinphi_target_coeffs(max(1, n_max // 2)), gamma, t)


def _normalize_shape(x: np.ndarray) -> np.ndarray:
    x = x - x.mean()
    peak = np.max(np.abs(x))
    return x / peak if peak > 0 else x


def pattern_error(curve, target_values: Sequence[float], normalize: bool = True) -> dict:
    """RMS and sup deviation between a curve and target samples.

    With ``normalize`` both signals are shifted to zero mean and scaled to
    unit peak magnitude first, which discards background exposure.
    """
    values = np.asarray(curve.values if isinstance(curve, DepositionCurve) else curve, dtype=float)
    target = np.asarray(target_values, dtype=float)
    if values.shape != target.shape:
        raise PreconditionError(
            f"length mismatch: curve has {values.size} samples, target {target.size}"
        )
    if normalize:
        values, target = _normalize_shape(values), _normalize_shape(target)
    diff = values - target
    return {"rms": float(np.sqrt(np.mean(diff**2))), "sup": float(np.max(np.abs(diff)))}


def _refine(phi: np.ndarray, y: np.ndarray, i: int) -> float:
    # vertex of the parabola through three neighbouring samples
    if i <= 0 or i >= len(y) - 1:
        return float(phi[i])
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    denom = y0 - 2 * y1 + y2
    if denom == 0:
        return float(phi[i])
    shift = 0.5 * (y0 - y2) / denom
    left, right = phi[i] - phi[i - 1], phi[i + 1] - phi[i]
    return float(phi[i] + shift * (right if shift > 0 else left))


def fringe_halfperiod(curve: DepositionCurve, rel_tol: float = 1e-9) -> float:
    """Phase distance from the global maximum to the nearest local minimum.

    Extrema are located on the grid and refined by parabolic interpolation.
    """
    phi, y = curve.phi, curve.values
    if len(y) < 3:
        raise NoFringeError("need at least three samples")
    span = float(np.ptp(y))
    if span <= rel_tol * max(1.0, float(np.max(np.abs(y)))):
        raise NoFringeError("curve is flat; no fringes to resolve")
    tol = rel_tol * span
    imax = int(np.argmax(y))
    interior = np.arange(1, len(y) - 1)
    is_min = (y[interior] <= y[interior - 1]) & (y[interior] <= y[interior + 1]) & (
        (y[interior] < y[interior - 1] - tol) | (y[interior] < y[interior + 1] - tol)
    )
    minima = interior[is_min]
    if minima.size == 0:
        raise NoFringeError("no interior local minimum found")
    left = minima[minima < imax]
    right = minima[minima > imax]
    pmax = _refine(phi, y, imax)
    candidates = []
    if left.size:
        candidates.append(abs(pmax - _refine(phi, y, int(left[-1]))))
    if right.size:
        candidates.append(abs(_refine(phi, y, int(right[0])) - pmax))
    half = min(candidates)
    step = float(np.min(np.diff(phi)))
    if 2 * half / step < 16:
        raise NoFringeError(
            f"fringe undersampled: {2 * half / step:.1f} points per period, need >= 16"
        )
    return half


def figure1_data(n_max_values: Iterable[int] = (2, 6, 12), gamma: float = math.pi / 4,
                 t: float = 1.0, samples: int = 512) -> dict:
    """Curves, |sin phi| reference and normalized errors for the |sin phi| fits."""
    phi = phase_grid(0.0, TWO_PI, samples)
    reference = np.abs(np.sin(phi))
    rows = []
    for n_max in n_max_values:
        recipe = sinphi_recipe(n_max, gamma, t)
        curve = exposure_curve(recipe, phi)
        err = pattern_error(curve, reference, normalize=True)
        rows.append({"n_max": n_max, "recipe": recipe, "curve": curve, **err})
    return {"phi": phi, "reference": reference, "fits": rows}
