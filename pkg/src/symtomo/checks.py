"""Cross-module invariant suite behind the ``check`` CLI command.

Each check exercises one identity that ties at least two independent
computation routes together; the tolerances are the package's accuracy
contract.  All random draws come from one seeded generator so runs are
reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .gaussian import (
    GaussianState,
    chord_matches_tomogram_variance,
    gaussian_wavefunction,
    gaussian_wigner_at,
    pauli_reconstruct,
    tomogram_variance,
)
from .grids import hbar_fourier, inner_product, make_grid
from .lagrangian import FramePair, is_lagrangian_frame, is_symplectic_nd
from .metaplectic import (
    FreeSymplectic,
    RotationParams,
    SymplecticMatrix,
    metaplectic_rotation,
    quadratic_fourier,
    standard_symplectic_form,
)
from .radon import (
    compute_tomogram_set,
    inverse_radon,
    radon_chirp_fft,
    radon_line_integral,
    radon_metaplectic,
)
from .wigner import marginals, wigner_transform

__all__ = ["CheckOutcome", "run_checks", "CHECK_NAMES"]


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    passed: bool
    detail: str


def _random_state(rng: np.random.Generator, hbar: float) -> GaussianState:
    sigma_xx = float(np.exp(rng.uniform(-0.7, 0.7))) * hbar
    sigma_xp = float(rng.uniform(-0.6, 0.6)) * hbar
    return GaussianState.from_position_data(sigma_xx, sigma_xp, hbar)


def _random_direction(rng: np.random.Generator, min_angle: float = 0.2):
    theta = rng.uniform(min_angle, np.pi - min_angle)
    lam = rng.uniform(0.5, 2.0)
    return lam * np.cos(theta), lam * np.sin(theta)


def _well_conditioned(s: np.ndarray, cov: np.ndarray, spread_limit: float = 2.6) -> bool:
    """Free, order-unity blocks, and the transformed state still fits the window."""
    if not 0.4 <= abs(s[0, 1]) <= 2.5:
        return False
    c = s @ cov @ s.T
    return max(c[0, 0], c[1, 1]) <= spread_limit


def _random_free_symplectic(rng: np.random.Generator, cov: np.ndarray) -> FreeSymplectic:
    while True:
        h = rng.uniform(-0.8, 0.8, size=(2, 2))
        h = 0.5 * (h + h.T)
        s = expm(standard_symplectic_form(1) @ h)
        if _well_conditioned(s, cov):
            return FreeSymplectic.from_matrix(s)


def _random_free_pair(rng: np.random.Generator, cov: np.ndarray):
    """Pair whose factors, product, and intermediate state are all representable."""
    while True:
        s2 = _random_free_symplectic(rng, cov)
        mid_cov = s2.base.matrix @ cov @ s2.base.matrix.T
        s1 = _random_free_symplectic(rng, mid_cov)
        prod = s1.base.matrix @ s2.base.matrix
        if _well_conditioned(prod, cov) and abs(prod[0, 1]) >= 0.25:
            return s1, s2


def run_checks(seed: int = 0, hbar: float = 1.0,
               fbp_constant_scale: float = 1.0) -> list[CheckOutcome]:
    """Run every named invariant check; returns one outcome per check."""
    rng = np.random.default_rng(seed)
    grid = make_grid(-16 * np.sqrt(hbar), 16 * np.sqrt(hbar), 1024, hbar)
    outcomes: list[CheckOutcome] = []

    def record(name: str, err: float, tol: float, extra: str = ""):
        detail = f"max deviation {err:.3e} (tolerance {tol:.1e})" + extra
        outcomes.append(CheckOutcome(name, bool(err <= tol), detail))

    state = _random_state(rng, hbar)
    psi = gaussian_wavefunction(state, grid)

    # Fourier core
    record("fourier_unitarity", abs(hbar_fourier(psi).norm() - psi.norm()), 1e-10)
    back = hbar_fourier(hbar_fourier(psi), "inverse")
    record("fourier_round_trip", float(np.max(np.abs(back.values - psi.values))), 1e-10)
    ground = gaussian_wavefunction(GaussianState.ground_state(hbar), grid)
    fixed = hbar_fourier(ground)
    want = (np.pi * hbar) ** (-0.25) * np.exp(-fixed.grid.points**2 / (2 * hbar))
    record("fourier_gaussian_fixed_point", float(np.max(np.abs(fixed.values - want))), 1e-7)

    # Wigner transform
    w = wigner_transform(psi)
    record("wigner_mass", abs(w.mass() - 1.0), 1e-8)
    pos, mom = marginals(w)
    err_pos = float(np.max(np.abs(pos - psi.probability_density())))
    mom_want = (2 * np.pi * state.sigma_pp) ** (-0.5) * np.exp(
        -w.p_grid.points**2 / (2 * state.sigma_pp))
    err_mom = float(np.max(np.abs(mom - mom_want)))
    record("wigner_marginals", max(err_pos, err_mom), 1e-7)

    # symplectic covariance against the closed-form rotated Gaussian
    err = 0.0
    for _ in range(10):
        mu, nu = _random_direction(rng, min_angle=0.0)
        rotated = metaplectic_rotation(psi, RotationParams(mu, nu))
        w_rot = wigner_transform(rotated)
        lam = np.hypot(mu, nu)
        u = np.array([[mu, nu], [-nu, mu]]) / lam
        ref_state = state.rotated(u)
        xs, ps = np.meshgrid(w_rot.x_grid.points, w_rot.p_grid.points, indexing="ij")
        err = max(err, float(np.max(np.abs(w_rot.values - gaussian_wigner_at(ref_state, xs, ps)))))
    record("symplectic_covariance", err, 1e-6)

    # three-route equivalence
    err_chirp = 0.0
    for _ in range(10):
        mu, nu = _random_direction(rng)
        r_meta = radon_metaplectic(psi, mu, nu)
        r_chirp = radon_chirp_fft(psi, mu, nu)
        err_chirp = max(err_chirp, float(np.max(np.abs(r_meta.values - r_chirp.values))))
    record("route_equivalence_chirp_fft", err_chirp, 1e-7)

    w_square = wigner_transform(psi, p_grid=grid)
    mu, nu = _random_direction(rng)
    r_line = radon_line_integral(w_square, mu, nu)
    r_meta = radon_metaplectic(psi, mu, nu)
    record("route_equivalence_line_integral",
           float(np.max(np.abs(r_line.values - r_meta.values))), 5e-4)

    # tomogram normalization, homogeneity, positivity
    mu, nu = _random_direction(rng)
    t = radon_metaplectic(psi, mu, nu)
    record("tomogram_mass", abs(t.mass() - 1.0), 1e-7)
    err_h = 0.0
    for s in (0.5, 2.0, 3.0):
        t_scaled = radon_metaplectic(psi, s * mu, s * nu)
        err_h = max(err_h, float(np.max(np.abs(t_scaled.values - t.values / s))))
    record("tomogram_homogeneity", err_h, 1e-7)
    record("tomogram_nonnegativity", -float(min(t.values.min(), 0.0)), 1e-10)

    # filtered back-projection round trip
    tomos = compute_tomogram_set(psi, 360)
    recon = inverse_radon(tomos, grid, constant_scale=fbp_constant_scale)
    w_ref = wigner_transform(psi, p_grid=recon.p_grid)
    record("fbp_round_trip", float(np.max(np.abs(recon.values - w_ref.values))), 1e-3)

    # Gaussian closed forms and the Pauli reconstruction
    err = 0.0
    for _ in range(10):
        st = _random_state(rng, hbar)
        sample = gaussian_wavefunction(st, grid)
        mu, nu = _random_direction(rng)
        measured = radon_chirp_fft(sample, mu, nu).moments()[1]
        err = max(err, abs(measured - tomogram_variance(st, mu, nu))
                  / tomogram_variance(st, mu, nu))
    record("gaussian_tomogram_variance", err, 1e-6)

    err = 0.0
    for _ in range(5):
        st = GaussianState.from_position_data(
            float(np.exp(rng.uniform(-0.7, 0.7))) * hbar,
            float(rng.choice([-1, 1]) * rng.uniform(0.05, 0.6)) * hbar, hbar)
        sample = gaussian_wavefunction(st, grid)
        rec = pauli_reconstruct(
            radon_metaplectic(sample, 1.0, 0.0),
            radon_metaplectic(sample, 0.0, 1.0),
            radon_chirp_fft(sample, 1.0, 1.0),
        ).state
        err = max(err, abs(rec.sigma_xx - st.sigma_xx), abs(rec.sigma_pp - st.sigma_pp),
                  abs(rec.sigma_xp - st.sigma_xp))
    record("pauli_round_trip", err, 1e-4)

    ok = all(
        chord_matches_tomogram_variance(_random_state(rng, hbar),
                                        *_random_direction(rng))
        for _ in range(50)
    )
    record("chord_variance_link", 0.0 if ok else 1.0, 0.5)

    # metaplectic unitarity and projective composition
    err_norm, err_proj = 0.0, 0.0
    for _ in range(5):
        s1, s2 = _random_free_pair(rng, state.covariance_matrix)
        direct = quadratic_fourier(psi, FreeSymplectic.from_matrix(
            s1.base.matrix @ s2.base.matrix))
        composed = quadratic_fourier(quadratic_fourier(psi, s2), s1)
        err_norm = max(err_norm, abs(composed.norm() - psi.norm()))
        overlap = inner_product(direct, composed)
        err_proj = max(err_proj, abs(abs(overlap) - 1.0))
    record("metaplectic_unitarity", err_norm, 1e-8)
    record("metaplectic_projective_composition", err_proj, 1e-7)

    # Lagrangian frames of random symplectic matrices
    disagreements = 0
    for _ in range(60):
        n = int(rng.integers(1, 4))
        h = rng.uniform(-1, 1, size=(2 * n, 2 * n))
        h = 0.5 * (h + h.T)
        s = expm(standard_symplectic_form(n) @ h)
        j = standard_symplectic_form(n)
        oracle = bool(np.max(np.abs(s @ j @ s.T - j)) <= 1e-8)
        block = bool(is_symplectic_nd(s, tol=1e-8))
        frame = bool(is_lagrangian_frame(FramePair(s[:n, :n], s[:n, n:])))
        if not (oracle and block and frame):
            disagreements += 1
    record("lagrangian_frame_oracle", float(disagreements), 0.5,
           extra=f"; {disagreements} disagreements over 60 draws")

    return outcomes


CHECK_NAMES = [
    "fourier_unitarity",
    "fourier_round_trip",
    "fourier_gaussian_fixed_point",
    "wigner_mass",
    "wigner_marginals",
    "symplectic_covariance",
    "route_equivalence_chirp_fft",
    "route_equivalence_line_integral",
    "tomogram_mass",
    "tomogram_homogeneity",
    "tomogram_nonnegativity",
    "fbp_round_trip",
    "gaussian_tomogram_variance",
    "pauli_round_trip",
    "chord_variance_link",
    "metaplectic_unitarity",
    "metaplectic_projective_composition",
    "lagrangian_frame_oracle",
]
