"""Analytic control protocols and the local-equivalence metric.

Three constructions, each returning a concrete gate sequence:

  * synthesize_coupling_core — an arbitrary diagonal pair coupling
    exp(1/2 sum_n alpha_n i sigma_nn) from exactly three fixed-strength
    (pi/4, CZ-class) couplings plus four local rotations;
  * w_to_ghz_sequence — the exact asymmetric-W to GHZ transformation with
    two couplings and six local rotations;
  * maximize_three_tangle — pair-only operations driving the three-tangle
    to its invariant upper bound (the bipartite tangle of the spectator).

Plus the Fubini-Study angle (a restarted local search over the 9 local
rotation angles, reported in degrees) and a gradient-ascent oracle used to
certify the maximization bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DegenerateInput, GaugeUndefined
from .gates import (CouplingStep, LocalStep, PhaseStep, apply,
                    coupling_axis_step, sequence_unitary)
from .so6 import so3_image, su_generator
from .states import (PARTITION_PAIR, QUBIT_AXIS, as_state,
                     make_asymmetric_w, make_ghz, normalize)
from .tangles import bipartite_tangles, three_tangle
from .vectors import EPS_INV, abc_vectors, gauge_phase

#: qubit pair -> (partition, ordered pair string as carried by the 6-vector)
_PAIR_PARTITION = {
    frozenset("ab"): (3, "ab"),
    frozenset("bc"): (1, "bc"),
    frozenset("ac"): (2, "ca"),
}


@dataclass(frozen=True, eq=False)
class SynthesisResult:
    sequence: list
    achieved: float
    meta: dict = field(default_factory=dict)


def _canonical_pair(pair: str) -> tuple[int, str]:
    key = frozenset(pair)
    if key not in _PAIR_PARTITION:
        raise DegenerateInput(f"not a qubit pair: {pair!r}")
    return _PAIR_PARTITION[key]


def min_phase_distance(u: np.ndarray, v: np.ndarray) -> float:
    """max-norm distance between u and v after optimal global-phase match."""
    tr = np.trace(v.conj().T @ u)
    if abs(tr) < 1e-300:
        return float(min(np.abs(u - v).max(), np.abs(u + v).max()))
    return float(np.abs(u - (tr / abs(tr)) * v).max())


def synthesize_coupling_core(alpha, pair: str = "ab") -> SynthesisResult:
    """Realize exp(1/2 sum alpha_n i sigma_nn) with three pi/4 couplings.

    The component swaps park one vector component among the partner triple
    of the 6-vector so that a plain local rotation supplies each coupling
    angle; the three swaps are the only entangling steps and all have fixed
    CZ-class strength pi/4.
    """
    a1, a2, a3 = (float(x) for x in np.asarray(alpha, dtype=float).reshape(3))
    _, pq = _canonical_pair(pair)
    q1, q2 = pq[0], pq[1]
    seq = [
        coupling_axis_step(pq, 2, 1, -np.pi / 4),
        LocalStep(q1, (0.0, 0.0, -a1)),
        LocalStep(q2, (0.0, 0.0, a2)),
        coupling_axis_step(pq, 3, 1, np.pi / 4),
        LocalStep(q2, (0.0, a3, 0.0)),
        coupling_axis_step(pq, 2, 1, np.pi / 4),
        LocalStep(q1, (np.pi / 2, 0.0, 0.0)),
    ]
    target_theta = np.diag([a1, a2, a3])
    target = sequence_unitary([CouplingStep(pq, target_theta)])
    dist = min_phase_distance(sequence_unitary(seq), target)
    couplings = [s for s in seq if isinstance(s, CouplingStep)]
    strengths = [float(np.abs(s.theta).max()) / 2.0 for s in couplings]
    return SynthesisResult(seq, dist, {
        "coupling_steps": len(couplings),
        "coupling_strengths": strengths,
        "alpha": [a1, a2, a3],
    })


def w_to_ghz_sequence(theta: float, phi: float) -> SynthesisResult:
    """Exact two-coupling sequence taking the asymmetric W state to GHZ.

    First a bc coupling converts both two-tangles into three-tangle, two
    local z rotations remove the phi dependence, an ab coupling of angle
    pi/4 - theta equalizes the amplitudes, and local rotations plus a sign
    finish the job. theta in {0, pi/2} leaves no tripartite resource.
    """
    t_mod = theta % np.pi
    if min(abs(t_mod), abs(t_mod - np.pi), abs(t_mod - np.pi / 2)) <= EPS_INV:
        raise DegenerateInput(f"theta = {theta} gives a degenerate W state")
    seq = [
        coupling_axis_step("bc", 1, 1, np.pi / 4),
        LocalStep("b", (0.0, 0.0, -phi)),
        LocalStep("c", (0.0, 0.0, phi)),
        coupling_axis_step("ab", 2, 2, np.pi / 4 - theta),
        LocalStep("b", (np.pi / 2, 0.0, 0.0)),
        LocalStep("c", (0.0, -np.pi / 2, 0.0)),
        LocalStep("a", (0.0, -np.pi / 2, 0.0)),
        LocalStep("a", (0.0, 0.0, -np.pi / 2)),
        PhaseStep(np.pi),
    ]
    final = apply(seq, make_asymmetric_w(theta, phi))
    fid = float(abs(np.vdot(final, make_ghz())))
    couplings = sum(isinstance(s, CouplingStep) for s in seq)
    return SynthesisResult(seq, fid, {"coupling_steps": couplings,
                                      "theta": theta, "phi": phi})


# --- canonical alignment and the tangle maximum ---------------------------

def _axis_angle_local_step(qubit: str, axis, angle: float) -> LocalStep:
    # so3_image(theta) rotates by -|theta| about theta, so negate
    v = -angle * np.asarray(axis, dtype=float)
    return LocalStep(qubit, (float(v[0]), float(v[1]), float(v[2])))


def _rot_to_steps(qubit: str, src, dst) -> list:
    """Local steps rotating unit vector src onto unit vector dst."""
    u = np.asarray(src, float)
    v = np.asarray(dst, float)
    u = u / np.linalg.norm(u)
    v = v / np.linalg.norm(v)
    cross = np.cross(u, v)
    s = np.linalg.norm(cross)
    c = float(u @ v)
    if s < 1e-14:
        if c > 0:
            return []
        perp = np.array([1.0, 0, 0]) if abs(u[0]) < 0.9 else np.array([0, 1.0, 0])
        axis = np.cross(u, perp)
        axis /= np.linalg.norm(axis)
        return [_axis_angle_local_step(qubit, axis, np.pi)]
    return [_axis_angle_local_step(qubit, cross / s, float(np.arctan2(s, c)))]


def _align_vector_steps(qubit: str, vec: np.ndarray) -> list:
    """Rotate vec's real part onto +x and its imaginary part onto +z.

    Assumes Re(vec) and Im(vec) orthogonal (the gauged situation); zero
    parts align trivially.
    """
    vr = np.real(vec)
    vi = np.imag(vec)
    nr, ni = np.linalg.norm(vr), np.linalg.norm(vi)
    if nr <= 1e-13 and ni <= 1e-13:
        return []
    if nr <= 1e-13:
        return _rot_to_steps(qubit, vi, [0.0, 0.0, 1.0])
    steps = _rot_to_steps(qubit, vr, [1.0, 0.0, 0.0])
    if ni <= 1e-13:
        return steps
    r = np.eye(3)
    for st in steps:
        r = so3_image(st.theta) @ r
    vi2 = r @ vi
    ang = float(np.arctan2(vi2[1], vi2[2]))
    if abs(ang) > 1e-15:
        steps.append(_axis_angle_local_step(qubit, [1.0, 0.0, 0.0], ang))
    return steps


def align_canonical(s, pair: str = "ab") -> list:
    """Local-only steps bringing the pair's two vectors to canonical form.

    In the output state the first pair vector is (V_R, 0, i V_I) and the
    second likewise, all four scalars non-negative. Requires the gauge to
    have been applied when the three-tangle is nonzero (real and imaginary
    parts must be orthogonal).
    """
    p, pq = _canonical_pair(pair)
    first, second = PARTITION_PAIR[p]
    state = as_state(s)
    v = abc_vectors(state)
    steps = _align_vector_steps(first, v.by_qubit(first))
    state = apply(steps, state) if steps else state
    v = abc_vectors(state)
    steps2 = _align_vector_steps(second, v.by_qubit(second))
    return steps + steps2


def maximize_three_tangle(s, pair: str = "ab", variant: str = "economical") -> SynthesisResult:
    """Drive the three-tangle to the spectator's bipartite tangle.

    Gauge fix, align both pair vectors, then couple: either two "economical"
    plane rotations with angles arg(V1_R + i V2_I) and arg(V2_R + i V1_I),
    or a single pi/2 CZ-class coupling (variant="single"). When the gauge is
    undefined (zero three-tangle) the alignment alone suffices because the
    real and imaginary parts then have equal norms in any gauge.
    """
    if variant not in ("economical", "single"):
        raise ValueError(f"unknown variant {variant!r}")
    p, pq = _canonical_pair(pair)
    first, second = PARTITION_PAIR[p]
    state = normalize(s)
    seq: list = []

    info = gauge_phase(state)
    gauge_defined = info.defined
    if gauge_defined:
        seq.append(PhaseStep(-0.5 * info.phi_a))
        state = apply([seq[-1]], state)

    align = align_canonical(state, pair)
    seq.extend(align)
    state = apply(align, state) if align else state

    v = abc_vectors(state)
    v1 = v.by_qubit(first)
    v2 = v.by_qubit(second)
    r1, i1 = float(np.real(v1[0])), float(np.imag(v1[2]))
    r2, i2 = float(np.real(v2[0])), float(np.imag(v2[2]))

    if variant == "economical":
        t16 = float(np.arctan2(i2, r1))
        t34 = float(np.arctan2(i1, r2))
        couplings = []
        if abs(t16) > 1e-15:
            couplings.append(coupling_axis_step(pq, 1, 3, -t16 / 2))
        if abs(t34) > 1e-15:
            couplings.append(coupling_axis_step(pq, 3, 1, -t34 / 2))
        meta_angles = {"angle_16": t16, "angle_34": t34}
    else:
        couplings = [coupling_axis_step(pq, 3, 3, np.pi / 4)]
        meta_angles = {"angle_zz": np.pi / 2}

    seq.extend(couplings)
    state = apply(couplings, state) if couplings else state
    achieved = three_tangle(state)
    bound = dict(zip("abc", bipartite_tangles(normalize(s))))[
        ({"a", "b", "c"} - set(pair)).pop()]
    return SynthesisResult(seq, achieved, {
        "bound": bound,
        "gauge_defined": gauge_defined,
        "variant": variant,
        "coupling_steps": len(couplings),
        **meta_angles,
    })


def extremum_residual(s, pair: str = "ab") -> float:
    """Phase-alignment residual of the tangle-extremum condition.

    Zero iff every nonzero component of the pair's two vectors has phase
    equal (mod pi) to the gauge phase. Raises GaugeUndefined for zero
    three-tangle.
    """
    p, _ = _canonical_pair(pair)
    first, second = PARTITION_PAIR[p]
    state = as_state(s)
    info = gauge_phase(state)
    if not info.defined:
        raise GaugeUndefined("extremum condition needs a nonzero three-tangle")
    v = abc_vectors(state)
    worst = 0.0
    for vec in (v.by_qubit(first), v.by_qubit(second)):
        scale = max(1.0, float(np.abs(vec).max()))
        for comp in vec:
            if abs(comp) > 1e-9 * scale:
                worst = max(worst, abs(np.sin(np.angle(comp) - info.phi_a)))
    return float(worst)


# --- Fubini-Study angle ----------------------------------------------------

def _random_su2_stack(rng, n: int) -> np.ndarray:
    """(n, 3, 2, 2) Haar-ish unitaries; the first entry is the identity."""
    out = np.empty((n, 3, 2, 2), dtype=np.complex128)
    out[0] = np.eye(2)
    for r in range(1, n):
        for q in range(3):
            x = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            qmat, _ = np.linalg.qr(x)
            out[r, q] = qmat
    return out


def fubini_study_angle(s1, s2, restarts: int = 32, seed: int = 0,
                       max_sweeps: int = 5000, tol: float = 1e-10) -> float:
    """Angle (degrees) to the closest locally-equivalent state.

    arccos of the best overlap found over local unitaries on all three
    qubits, by alternating exact single-qubit maximization with `restarts`
    random starting points; a restart converges when the unitary updates
    move by less than `tol`. A stochastic search, so the result is an upper
    bound on the true minimum angle. The angle is recovered from the
    phase-matched state distance (2 arcsin(d/2)), which keeps tiny angles
    accurate where arccos of the overlap would lose half the digits.
    """
    v1 = normalize(s1)
    v2 = normalize(s2)
    inits = _random_su2_stack(np.random.default_rng(seed), max(1, restarts))
    _, us = _kernels.fs_best_overlap(v1.reshape(2, 2, 2), v2.reshape(2, 2, 2),
                                     inits, max_sweeps, tol)
    w = np.einsum("ax,by,cz,xyz->abc", us[0], us[1], us[2],
                  v2.reshape(2, 2, 2)).reshape(8)
    ov = np.vdot(v1, w)
    if abs(ov) > 1e-150:
        w = w * (np.conj(ov) / abs(ov))
    d = float(np.linalg.norm(v1 - w))
    return float(np.degrees(2.0 * np.arcsin(min(1.0, d / 2.0))))


# --- independent ascent oracle ---------------------------------------------

def _a_quadratic_forms() -> np.ndarray:
    """Symmetric 8x8 forms with A_i = psi^T Q_i psi (plain transpose)."""
    terms = {
        0: [(-1j, 0, 3), (1j, 1, 2), (-1j, 6, 5), (1j, 7, 4)],
        1: [(1, 0, 3), (-1, 1, 2), (1, 4, 7), (-1, 5, 6)],
        2: [(1j, 0, 7), (-1j, 1, 6), (1j, 4, 3), (-1j, 5, 2)],
    }
    q = np.zeros((3, 8, 8), dtype=np.complex128)
    for i, lst in terms.items():
        for coef, m, n in lst:
            q[i, m, n] += coef / 2
            q[i, n, m] += coef / 2
    return q

_A_QUADS = _a_quadratic_forms()
_PAIR_GENS = np.array([su_generator(lab) for lab in
                       ("x_a", "y_a", "z_a", "x_b", "y_b", "z_b",
                        "xx", "xy", "xz", "yx", "yy", "yz", "zx", "zy", "zz")])


def tangle_ascent_oracle(s, pair: str = "ab", restarts: int = 16, seed: int = 0,
                         max_iters: int = 400, gtol: float = 1e-10) -> float:
    """Numerically maximize the three-tangle over the pair's full SU(4).

    Independent of the analytic protocol: plain Riemannian gradient ascent
    on the 15-parameter group with random restarts. Used to certify that
    nothing exceeds the invariant bound.
    """
    p, pq = _canonical_pair(pair)
    first, second = PARTITION_PAIR[p]
    spect = ({"a", "b", "c"} - {first, second}).pop()
    t = normalize(s).reshape(2, 2, 2)
    # relabel qubits so the coupled pair occupies the leading two slots;
    # the three-tangle is relabeling-invariant
    perm = (QUBIT_AXIS[first], QUBIT_AXIS[second], QUBIT_AXIS[spect])
    psi = np.ascontiguousarray(t.transpose(perm).reshape(8))
    rng = np.random.default_rng(seed)
    inits = np.zeros((max(1, restarts), 15))
    if restarts > 1:
        inits[1:] = rng.uniform(-np.pi, np.pi, size=(restarts - 1, 15))
    return float(_kernels.tangle_ascent_best(
        psi, _PAIR_GENS, _A_QUADS, inits, max_iters, gtol))
