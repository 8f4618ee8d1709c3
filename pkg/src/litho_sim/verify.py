"""Sweep the closed forms against the Fock-space oracle."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from litho_sim.deposition import deposition_general, matrix_element_general
from litho_sim.fock import (
    NmesSpec,
    dosing_expectation,
    dosing_matrix_element,
    make_nmes_state,
    nmes_kets,
)

GAMMAS = (0.0, math.pi / 8, math.pi / 6, math.pi / 4, 3 * math.pi / 8)
THETAS = (0.0, math.pi / 4, math.pi)
TOLERANCE = 1e-10


def thread_count(requested: int | None = None) -> int:
    """Worker count, capped by ``LITHO_SIM_THREADS`` when set."""
    n = requested or min(8, os.cpu_count() or 1)
    raw = os.environ.get("LITHO_SIM_THREADS")
    if raw:
        try:
            n = min(n, max(1, int(raw)))
        except ValueError:
            pass
    return n


def _expectation_block(N: int, phis: np.ndarray, gammas, thetas):
    worst, count = 0.0, 0
    for m in range(N + 1):
        if 2 * m == N:
            continue
        for gamma in gammas:
            for theta in thetas:
                spec = NmesSpec(N, m, gamma, theta)
                closed = deposition_general(spec, phis)
                for phi, ref in zip(phis, closed):
                    oracle = dosing_expectation(N, make_nmes_state(spec, float(phi)))
                    worst = max(worst, abs(oracle - ref))
                    count += 1
    return worst, count


def _matrix_block(N: int, phis: np.ndarray, gammas):
    worst, count = 0.0, 0
    for m in range(N + 1):
        for mp in range(N + 1):
            th, thp = m * math.pi / 7, mp * math.pi / 7
            for gamma in gammas:
                closed = matrix_element_general(N, m, mp, gamma, th, thp, phis)
                for phi, ref in zip(phis, closed):
                    phi = float(phi)
                    oracle = dosing_matrix_element(
                        N, nmes_kets(N, m, gamma, th, phi), nmes_kets(N, mp, gamma, thp, phi)
                    )
                    worst = max(worst, abs(oracle - ref))
                    count += 1
    return worst, count


def oracle_sweep(
    n_max: int = 12,
    samples: int = 64,
    matrix_samples: int = 16,
    gammas=GAMMAS,
    thetas=THETAS,
    threads: int | None = None,
) -> dict:
    """Max |closed form - oracle| over the diagonal and off-diagonal lattices."""
    phis = np.linspace(0.0, 2 * math.pi, samples, endpoint=False)
    mphis = np.linspace(0.0, 2 * math.pi, matrix_samples, endpoint=False)
    orders = range(1, n_max + 1)
    with ThreadPoolExecutor(max_workers=thread_count(threads)) as pool:
        diag = list(pool.map(lambda N: _expectation_block(N, phis, gammas, thetas), orders))
        off = list(pool.map(lambda N: _matrix_block(N, mphis, gammas), orders))
    diag_err = max(w for w, _ in diag)
    off_err = max(w for w, _ in off)
    return {
        "n_max": n_max,
        "expectation_checks": sum(c for _, c in diag),
        "max_abs_diff_expectation": diag_err,
        "matrix_element_checks": sum(c for _, c in off),
        "max_abs_diff_matrix_element": off_err,
        "tolerance": TOLERANCE,
        "passed": bool(diag_err <= TOLERANCE and off_err <= TOLERANCE),
    }
