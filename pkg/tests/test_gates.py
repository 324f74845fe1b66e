import numpy as np
import pytest
from scipy.linalg import expm

from tanglevec import (CouplingStep, LocalStep, PhaseStep, UnknownGate, apply,
                       coupling_unitary, fidelity_up_to_phase, local_unitary,
                       make_asymmetric_w, make_ghz, named_gate, random_state,
                       sequence_from_json, sequence_to_json, sequence_unitary,
                       w_to_ghz_sequence)
from tanglevec.gates import SIGMA, step_unitary

STD_THETA = np.arccos(1 / np.sqrt(3))


def test_local_zero_angle_is_identity():
    assert np.abs(local_unitary("b", (0, 0, 0)) - np.eye(8)).max() == 0


def test_local_two_pi_is_minus_identity():
    u = local_unitary("a", (0, 0, 2 * np.pi))
    assert np.abs(u + np.eye(8)).max() < 1e-15


@pytest.mark.parametrize("qubit", "abc")
def test_local_matches_expm(qubit, rng):
    # independent route: scipy matrix exponential of the embedded generator
    th = rng.uniform(-3, 3, 3)
    gen2 = 0.5j * sum(t * s for t, s in zip(th, SIGMA))
    ops = {"a": 0, "b": 1, "c": 2}
    mats = [np.eye(2)] * 3
    mats[ops[qubit]] = expm(gen2)
    ref = np.kron(np.kron(mats[0], mats[1]), mats[2])
    assert np.abs(local_unitary(qubit, th) - ref).max() < 1e-13


@pytest.mark.parametrize("pair", ["ab", "bc", "ac", "ba", "ca"])
def test_coupling_matches_expm(pair, rng):
    th = rng.uniform(-2, 2, (3, 3))
    gen = sum(0.5j * th[n, m] * np.kron(SIGMA[n], SIGMA[m])
              for n in range(3) for m in range(3))
    u4 = expm(gen)
    got = coupling_unitary(pair, th)
    # rebuild the embedding independently
    axes = {"a": 0, "b": 1, "c": 2}
    a1, a2 = axes[pair[0]], axes[pair[1]]
    ref = np.zeros((8, 8), dtype=complex)
    t4 = u4.reshape(2, 2, 2, 2)
    for out in range(8):
        for inn in range(8):
            o = [(out >> 2) & 1, (out >> 1) & 1, out & 1]
            i = [(inn >> 2) & 1, (inn >> 1) & 1, inn & 1]
            spect = 3 - a1 - a2
            if o[spect] != i[spect]:
                continue
            ref[out, inn] = t4[o[a1], o[a2], i[a1], i[a2]]
    assert np.abs(got - ref).max() < 1e-13


def test_coupling_zero_identity():
    assert np.abs(coupling_unitary("ab", np.zeros((3, 3))) - np.eye(8)).max() < 1e-15


def test_coupling_diagonal_factorizes():
    # commuting diagonal generators: the product of single-axis factors
    alpha = np.array([0.4, -1.1, 2.2])
    u = coupling_unitary("ab", np.diag(alpha))
    f = np.eye(8, dtype=complex)
    for n in range(3):
        th = np.zeros((3, 3))
        th[n, n] = alpha[n]
        f = coupling_unitary("ab", th) @ f
    assert np.abs(u - f).max() < 1e-12


def test_unitarity_of_constructed_gates(rng):
    for _ in range(10):
        u = local_unitary(rng.choice(list("abc")), rng.uniform(-4, 4, 3))
        assert np.abs(u.conj().T @ u - np.eye(8)).max() < 1e-12
        u = coupling_unitary("bc", rng.uniform(-3, 3, (3, 3)))
        assert np.abs(u.conj().T @ u - np.eye(8)).max() < 1e-12


def test_distinct_locals_commute(rng):
    ua = local_unitary("a", rng.uniform(-3, 3, 3))
    ub = local_unitary("b", rng.uniform(-3, 3, 3))
    assert np.abs(ua @ ub - ub @ ua).max() < 1e-12


def test_adjoint_covariance():
    # conjugating a sigma_xx coupling by a z rotation turns it into sigma_yx
    xi = 0.73
    za = local_unitary("a", (0, 0, -np.pi / 2))  # exp(-i pi/4 sigma_z^a)
    th = np.zeros((3, 3))
    th[0, 0] = 2 * xi
    lhs = za @ coupling_unitary("ab", th) @ za.conj().T
    th2 = np.zeros((3, 3))
    th2[1, 0] = 2 * xi
    assert np.abs(lhs - coupling_unitary("ab", th2)).max() < 1e-12


def test_hadamard_action():
    s = np.zeros(8)
    s[0] = 1.0  # |000>
    out = apply(named_gate("H", "a"), s)
    expect = np.zeros(8)
    expect[0] = expect[4] = 1 / np.sqrt(2)
    assert np.abs(out - expect).max() < 1e-14


def test_hadamard_matrix():
    u = sequence_unitary(named_gate("H", "a"))
    h2 = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    ref = np.kron(h2, np.eye(4))
    assert np.abs(u - ref).max() < 1e-14


def test_cz_matrix():
    # multiplying out the factored form gives the diagonal gate with -1 on
    # |11> of the pair: diag(1,1,1,1,1,1,-1,-1) in the (a,b) x c ordering
    u = sequence_unitary(named_gate("CZ", "ab"))
    assert np.abs(u - np.diag([1, 1, 1, 1, 1, 1, -1, -1])).max() < 1e-14


def test_cnot_matrix():
    u = sequence_unitary(named_gate("CNOT", "ab"))
    ref = np.zeros((8, 8))
    for i in range(2):
        for j in range(2):
            for k in range(2):
                ref[4 * i + 2 * (j ^ i) + k, 4 * i + 2 * j + k] = 1
    assert np.abs(u - ref).max() < 1e-14


def test_swap_action():
    u = sequence_unitary(named_gate("SWAP", "ab"))
    for k in range(2):
        s = np.zeros(8)
        s[4 * 1 + 2 * 0 + k] = 1.0  # |10k>
        out = u @ s
        expect = np.zeros(8)
        expect[4 * 0 + 2 * 1 + k] = 1.0  # |01k>
        assert np.abs(out - expect).max() < 1e-14


def test_unknown_gate():
    with pytest.raises(UnknownGate):
        named_gate("TOFFOLI", "ab")


def test_apply_empty_sequence():
    s = random_state(1)
    assert np.array_equal(apply([], s), s)


def test_apply_inverse_pair(rng):
    s = random_state(2)
    th = rng.uniform(-2, 2, (3, 3))
    seq = [CouplingStep("ab", th), CouplingStep("ab", -th)]
    assert np.abs(apply(seq, s) - s).max() < 1e-12


def test_w_to_ghz_via_apply():
    res = w_to_ghz_sequence(STD_THETA, np.pi / 4)
    out = apply(res.sequence, make_asymmetric_w(STD_THETA, np.pi / 4))
    assert fidelity_up_to_phase(out, make_ghz()) >= 1 - 1e-10


def test_phase_step_is_scalar():
    u = step_unitary(PhaseStep(0.4))
    assert np.abs(u - np.exp(0.4j) * np.eye(8)).max() < 1e-15


def test_sequence_json_round_trip(rng):
    seq = [
        LocalStep("b", (0.1, -0.2, 0.3)),
        CouplingStep("ac", rng.uniform(-1, 1, (3, 3))),
        PhaseStep(-0.7),
    ]
    back = sequence_from_json(sequence_to_json(seq))
    assert np.abs(sequence_unitary(back) - sequence_unitary(seq)).max() < 1e-15


def test_sequence_json_rejects_malformed():
    from tanglevec import ParseError
    with pytest.raises(ParseError):
        sequence_from_json('[{"kind": "local", "target": "a", "params": [1, 2]}]')
    with pytest.raises(ParseError):
        sequence_from_json('[{"kind": "wiggle", "target": "a", "params": [1]}]')
    with pytest.raises(ParseError):
        sequence_from_json('{"kind": "local"}')
