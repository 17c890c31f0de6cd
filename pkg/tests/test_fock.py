"""Brute-force truncated-Fock evolution and its agreement with closed forms."""

import numpy as np
import pytest

from darwin_chain import (
    FragmentSpec,
    ModelParams,
    decoherence_exponent,
    dispersion_relation,
)
from darwin_chain.fock import (
    OracleState,
    TruncatedSpace,
    TruncationError,
    branch_overlap,
    build_hamiltonian,
    converged_state,
    crosscheck,
    destroy,
    evolve,
    initial_state,
    oracle_mutual_information,
    qubit_coherence,
    qubit_sigma_z,
    reduced_density,
    reduced_entropy,
    site_lowering,
    top_level_population,
)

P3 = ModelParams(n_sites=3, omega=3.0, coupling_g=0.3)


# ---------------------------------------------------------------------------
# space and operators


def test_space_validation():
    assert TruncatedSpace(3, 15).dim == 2 * 15**3
    with pytest.raises(ValueError):
        TruncatedSpace(4, 10)  # even chain
    with pytest.raises(ValueError):
        TruncatedSpace(3, 1)  # cutoff too small
    with pytest.raises(ValueError):
        TruncatedSpace(5, 20)  # 2 * 20^5 exceeds the dimension limit


def test_max_cutoff_is_tight():
    space = TruncatedSpace(5, 8)
    d = space.max_cutoff
    assert 2 * d**5 <= 2_000_000 < 2 * (d + 1) ** 5


def test_site_axis_ordering():
    space = TruncatedSpace(3, 4)
    assert [space.site_axis(j) for j in (-1, 0, 1)] == [1, 2, 3]
    with pytest.raises(ValueError):
        space.site_axis(2)


def test_destroy_matrix_elements():
    a = destroy(4).toarray()
    expected = np.zeros((4, 4))
    for n in range(1, 4):
        expected[n - 1, n] = np.sqrt(n)
    np.testing.assert_allclose(a, expected)


def test_sigma_z_and_lowering_commute():
    space = TruncatedSpace(3, 3)
    sz = qubit_sigma_z(space)
    low = site_lowering(space, 0)
    assert abs(sz @ low - low @ sz).max() == 0.0


def test_hamiltonian_hermitian_and_matches_params():
    space = TruncatedSpace(3, 5)
    h = build_hamiltonian(P3, space)
    assert abs(h - h.conj().T).max() == 0.0
    with pytest.raises(ValueError):
        build_hamiltonian(ModelParams(n_sites=5, omega=1.0, coupling_g=0.5), space)


def test_initial_state_occupies_vacuum_blocks():
    space = TruncatedSpace(3, 4)
    state = initial_state(P3, space)
    amp = state.amplitudes
    assert amp[0] == pytest.approx(1 / np.sqrt(2))
    assert amp[4**3] == pytest.approx(1 / np.sqrt(2))
    assert np.count_nonzero(amp) == 2
    assert state.norm == pytest.approx(1.0)


# ---------------------------------------------------------------------------
# evolution


def test_zero_g_vacuum_is_stationary():
    # with the qubit drive removed the vacuum is an exact eigenstate at
    # zero energy, so the initial state must not move at all
    p = ModelParams(n_sites=3, omega=2.0, coupling_g=0.4)
    space = TruncatedSpace(3, 4)
    drive = site_lowering(space, 0)
    drive = drive + drive.conj().T
    h = build_hamiltonian(p, space) - p.coupling_g * (qubit_sigma_z(space) @ drive)
    state = evolve(initial_state(p, space), h, 2.0)
    drift = np.abs(state.amplitudes - initial_state(p, space).amplitudes)
    assert drift.max() < 1e-10


def test_evolve_at_t_zero_is_identity():
    space = TruncatedSpace(3, 4)
    state = initial_state(P3, space)
    same = evolve(state, build_hamiltonian(P3, space), 0.0)
    assert same is state


def test_evolution_composes():
    space = TruncatedSpace(3, 10)
    h = build_hamiltonian(P3, space)
    start = initial_state(P3, space)
    two_legs = evolve(evolve(start, h, 0.7), h, 0.6)
    one_leg = evolve(start, h, 1.3)
    assert np.linalg.norm(two_legs.amplitudes - one_leg.amplitudes) < 1e-8
    assert two_legs.time == pytest.approx(1.3)


def test_evolution_preserves_norm_and_energy():
    p = ModelParams(n_sites=3, omega=1.0, coupling_g=0.4)
    space = TruncatedSpace(3, 12)
    h = build_hamiltonian(p, space)
    state = initial_state(p, space)
    e0 = np.vdot(state.amplitudes, h @ state.amplitudes).real
    scale = np.linalg.norm(h @ state.amplitudes)
    for leg in (0.5, 1.0, 1.5):
        state = evolve(state, h, leg)
        assert abs(state.norm - 1.0) < 1e-8
        energy = np.vdot(state.amplitudes, h @ state.amplitudes).real
        assert abs(energy - e0) < 1e-8 * max(scale, 1.0)


def test_truncation_leak_is_rejected():
    strong = ModelParams(n_sites=3, omega=0.5, coupling_g=1.0)
    space = TruncatedSpace(3, 2)
    with pytest.raises(TruncationError):
        evolve(initial_state(strong, space), build_hamiltonian(strong, space), 3.0)


def test_converged_state_doubles_cutoff():
    p = ModelParams(n_sites=3, omega=1.0, coupling_g=0.4)
    state = converged_state(p, 2.0)
    assert state.space.cutoff in (8, 16)
    assert top_level_population(state) < 1e-8
    pinned = converged_state(p, 1.0, cutoff=12)
    assert pinned.space.cutoff == 12


# ---------------------------------------------------------------------------
# single-oscillator anchor


def test_single_mode_matches_closed_form():
    # N = 1: one conditionally displaced oscillator, no hopping;
    # Gamma(t) = 4 g^2 (1 - cos omega t) / omega^2
    g, omega = 0.3, 1.0
    space = TruncatedSpace(1, 40)
    a = site_lowering(space, 0)
    h = (omega * (a.conj().T @ a) + g * (qubit_sigma_z(space) @ (a + a.conj().T))).tocsr()
    amp = np.zeros(space.dim, dtype=complex)
    amp[0] = amp[40] = 1 / np.sqrt(2)
    state = OracleState(amplitudes=amp, time=0.0, space=space)
    for t in (0.5, 1.0, 2.5, np.pi):
        evolved = evolve(state, h, float(t))
        gamma_oracle = -np.log(2.0 * qubit_coherence(evolved))
        expected = 4 * g * g * (1 - np.cos(omega * t)) / omega**2
        assert gamma_oracle == pytest.approx(expected, abs=1e-6)


# ---------------------------------------------------------------------------
# reductions, overlaps, entropies


def test_reduced_density_traces_and_hermiticity():
    state = converged_state(P3, 1.0, cutoff=10)
    for kwargs in (
        dict(include_qubit=True),
        dict(sites=[0]),
        dict(sites=[-1, 1], include_qubit=True),
    ):
        rho = reduced_density(state, **kwargs)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-10)
        np.testing.assert_allclose(rho, rho.conj().T, atol=1e-12)
        assert np.linalg.eigvalsh(rho).min() > -1e-12
    with pytest.raises(ValueError):
        reduced_density(state, sites=[0, 0])


def test_entropies_vanish_at_t_zero():
    space = TruncatedSpace(3, 4)
    state = initial_state(P3, space)
    assert reduced_entropy(state, include_qubit=True) == pytest.approx(0.0, abs=1e-12)
    assert reduced_entropy(state, sites=[0, 1]) == pytest.approx(0.0, abs=1e-12)


def test_joint_entropy_equals_complement():
    # global purity: S(rho_SF) = S(rho_R)
    state = converged_state(P3, 1.5, cutoff=12)
    s_sf = reduced_entropy(state, sites=[0], include_qubit=True)
    s_r = reduced_entropy(state, sites=[-1, 1])
    assert s_sf == pytest.approx(s_r, abs=1e-7)


def test_branch_overlap_matches_mode_product():
    # the chain-branch overlap equals prod_k <beta_k|-beta_k> = exp(-Gamma),
    # real up to truncation error
    p = ModelParams(n_sites=3, omega=3.0, coupling_g=0.3)
    state = converged_state(p, 1.0, cutoff=15)
    gamma = decoherence_exponent(p, dispersion_relation(p), 1.0)
    overlap = branch_overlap(state)
    assert overlap.real == pytest.approx(np.exp(-gamma), abs=1e-6)
    assert abs(overlap.imag) < 1e-6


def test_branch_overlap_rejects_pointer_state():
    space = TruncatedSpace(3, 4)
    amp = np.zeros(space.dim, dtype=complex)
    amp[0] = 1.0
    with pytest.raises(ValueError):
        branch_overlap(OracleState(amplitudes=amp, time=0.0, space=space))


def test_coherence_matches_closed_form():
    p = ModelParams(n_sites=3, omega=1.0, coupling_g=0.3)
    state = converged_state(p, 2.0, cutoff=15)
    gamma = decoherence_exponent(p, dispersion_relation(p), 2.0)
    assert qubit_coherence(state) == pytest.approx(0.5 * np.exp(-gamma), abs=1e-8)


def test_oracle_mutual_information_matches_closed_form():
    state = converged_state(P3, 1.0, cutoff=15)
    frag = FragmentSpec(3, 1)
    from darwin_chain import (
        mode_amplitudes,
        mutual_information,
        site_amplitudes,
        subsystem_entropies,
    )

    grid = dispersion_relation(P3)
    sites = site_amplitudes(mode_amplitudes(P3, grid, 1.0))
    gamma = decoherence_exponent(P3, grid, 1.0)
    exact = mutual_information(subsystem_entropies(P3, sites, frag, gamma))
    assert oracle_mutual_information(state, frag) == pytest.approx(exact, abs=1e-6)


# ---------------------------------------------------------------------------
# the tabulated crosscheck


def test_crosscheck_rows_are_tight():
    rows = crosscheck(ModelParams(n_sites=3, omega=3.0, coupling_g=0.4))
    assert len(rows) == 6  # 3 times x 2 fragment sizes
    for row in rows:
        assert row["error"] < 1e-6
        assert abs(row["overlap_imag"]) < 1e-6
    times = sorted({row["time"] for row in rows})
    assert times == [0.5, 1.0, 2.0]


def test_crosscheck_handles_lopsided_qubit():
    p = ModelParams(n_sites=3, omega=1.0, coupling_g=0.3, c0=0.6, c1=0.8)
    rows = crosscheck(p, times=(0.5, 1.0), fragment_sizes=(1,))
    assert len(rows) == 2
    for row in rows:
        assert row["error"] < 1e-6


def test_crosscheck_rejects_nonpositive_times():
    with pytest.raises(ValueError):
        crosscheck(P3, times=(0.0, 1.0))
