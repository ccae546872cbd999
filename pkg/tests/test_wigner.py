import numpy as np

from conftest import HBAR, random_gaussian_state

from symtomo import (
    GaussianState,
    SampledWavefunction,
    gaussian_wavefunction,
    hbar_fourier,
    make_grid,
    marginals,
    sample_uniform,
    wigner_transform,
)


def test_ground_state_closed_form(ground):
    w = wigner_transform(ground)
    xs, ps = np.meshgrid(w.x_grid.points, w.p_grid.points, indexing="ij")
    want = np.exp(-(xs**2 + ps**2) / HBAR) / (np.pi * HBAR)
    assert np.max(np.abs(w.values - want)) < 1e-7
    assert w.max_imag < 1e-10


def test_total_mass(grid):
    rng = np.random.default_rng(11)
    for _ in range(3):
        state = random_gaussian_state(rng)
        w = wigner_transform(gaussian_wavefunction(state, grid))
        assert abs(w.mass() - 1.0) < 1e-8


def test_chirped_gaussian_vs_brute_force_quadrature(grid):
    # oracle: direct 2-d quadrature of the defining integral at scattered
    # points, with the state evaluated analytically at off-grid arguments
    state = GaussianState.from_position_data(1.0, 0.3, HBAR)
    psi = gaussian_wavefunction(state, grid)
    w = wigner_transform(psi)

    def psi_exact(x):
        return (2 * np.pi * state.sigma_xx) ** (-0.25) * np.exp(
            -x**2 / (4 * state.sigma_xx)
            + 1j * state.sigma_xp * x**2 / (2 * HBAR * state.sigma_xx))

    y = np.linspace(-24, 24, 6001)
    dy = y[1] - y[0]
    rng = np.random.default_rng(5)
    for _ in range(25):
        i = int(rng.integers(300, 724))
        j = int(rng.integers(300, 724))
        x0, p0 = w.x_grid.points[i], w.p_grid.points[j]
        kernel = psi_exact(x0 + y / 2) * np.conj(psi_exact(x0 - y / 2))
        val = (dy / (2 * np.pi * HBAR)) * np.sum(np.exp(-1j * p0 * y / HBAR) * kernel)
        assert abs(w.values[i, j] - val.real) < 1e-6
        assert abs(val.imag) < 1e-9


def test_marginals_ground_state(ground):
    w = wigner_transform(ground)
    pos, mom = marginals(w)
    want_x = (np.pi * HBAR) ** (-0.5) * np.exp(-w.x_grid.points**2 / HBAR)
    want_p = (np.pi * HBAR) ** (-0.5) * np.exp(-w.p_grid.points**2 / HBAR)
    assert np.max(np.abs(pos - want_x)) < 1e-7
    assert np.max(np.abs(mom - want_p)) < 1e-7


def test_marginals_against_state(grid):
    state = GaussianState.from_position_data(1.0, 0.5, HBAR)
    psi = gaussian_wavefunction(state, grid)
    w = wigner_transform(psi)
    pos, mom = marginals(w)
    assert np.max(np.abs(pos - psi.probability_density())) < 1e-7
    # position marginal of this state is N(0, 1)
    want = (2 * np.pi) ** (-0.5) * np.exp(-w.x_grid.points**2 / 2)
    assert np.max(np.abs(pos - want)) < 1e-7
    # momentum density from the Fourier route, on the Wigner momentum window
    ft = hbar_fourier(psi)
    ft_vals = sample_uniform(ft, w.p_grid.x_min, w.p_grid.dx, w.p_grid.n_points)
    assert np.max(np.abs(mom - np.abs(ft_vals) ** 2)) < 1e-7


def test_momentum_variance_saturation(grid):
    # sigma_pp = (hbar^2/4 + sigma_xp^2) / sigma_xx = 0.5 for this state
    state = GaussianState.from_position_data(1.0, 0.5, HBAR)
    psi = gaussian_wavefunction(state, grid)
    _, mom = marginals(wigner_transform(psi))
    p = wigner_transform(psi).p_grid.points
    var = np.sum(p**2 * mom) / np.sum(mom)
    assert abs(var - 0.5) < 1e-7
    assert abs(var - state.sigma_pp) < 1e-7


def test_parity_covariance(grid):
    rng = np.random.default_rng(2)
    decay = np.exp(-0.3 * grid.points**2)
    vals = decay * (rng.normal(size=grid.n_points) + 1j * rng.normal(size=grid.n_points))
    psi = SampledWavefunction(grid, vals).normalize()
    flipped = SampledWavefunction(grid, np.roll(psi.values[::-1], 1))
    w = wigner_transform(psi).values
    wf = wigner_transform(flipped).values
    # W(-x, -p): reverse both axes; index 0 has no mirror partner on an
    # FFT-convention grid, so compare the interior block
    assert np.max(np.abs(wf[1:, 1:] - w[1:, 1:][::-1, ::-1])) < 1e-10


def test_reality_for_generic_state(grid):
    rng = np.random.default_rng(9)
    decay = np.exp(-0.25 * grid.points**2)
    vals = decay * (rng.normal(size=grid.n_points) + 1j * rng.normal(size=grid.n_points))
    psi = SampledWavefunction(grid, vals).normalize()
    assert wigner_transform(psi).max_imag < 1e-10


def test_edge_decay_warning():
    g = make_grid(-3, 3, 128, HBAR)
    psi = SampledWavefunction(g, np.exp(-g.points**2 / 4))
    w = wigner_transform(psi)
    assert w.accuracy_warning
    ok = wigner_transform(gaussian_wavefunction(GaussianState.ground_state(HBAR),
                                                make_grid(-16, 16, 1024, HBAR)))
    assert not ok.accuracy_warning
