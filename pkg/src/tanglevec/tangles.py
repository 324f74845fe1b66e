"""Entanglement measures: three-tangle, two-tangles, bipartite tangles.

Everything is expressible through the invariant vectors:

    tau_abc   = 4|A.A| = 4|B.B| = 4|C.C|
    tau_(bc)  = 2(A.A* - |A.A|)      (and cyclic)
    tau_c(ab) = 2(A.A* + B.B*)       (and cyclic)

with an independent density-matrix route for the bipartite tangles,
tau_q(rs) = 4 det(rho_q), kept as a cross-check.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, asdict

import numpy as np

from .errors import InvariantViolation
from .states import QUBIT_AXIS, as_state
from .vectors import EPS_INV, abc_vectors

#: when true, every bipartite_tangles call is cross-checked against the
#: partial-trace oracle (enabled in the test suite; off in normal use)
CROSS_CHECK = os.environ.get("TANGLEVEC_CROSS_CHECK", "") not in ("", "0")


@dataclass(frozen=True)
class TangleSet:
    tau_abc: float
    tau_bc: float
    tau_ac: float
    tau_ab: float
    tau_a_bc: float
    tau_b_ca: float
    tau_c_ab: float

    def as_dict(self) -> dict:
        return asdict(self)


def _clamp(x: float) -> float:
    # measures are squared magnitudes; snap tiny negative noise to 0
    if -EPS_INV < x < 0.0:
        return 0.0
    return x


def three_tangle(s) -> float:
    """4|A.A|, asserting agreement with the B and C expressions."""
    v = abc_vectors(s)
    ta = 4.0 * abs(v.a @ v.a)
    tb = 4.0 * abs(v.b @ v.b)
    tc = 4.0 * abs(v.c @ v.c)
    if max(abs(ta - tb), abs(ta - tc)) > EPS_INV:
        raise InvariantViolation(
            f"three-tangle expressions disagree: {ta}, {tb}, {tc}")
    return _clamp(ta)


def two_tangles(s) -> tuple[float, float, float]:
    """(tau_bc, tau_ac, tau_ab)."""
    v = abc_vectors(s)
    t_bc = 2.0 * (np.real(v.a @ v.a.conj()) - abs(v.a @ v.a))
    t_ac = 2.0 * (np.real(v.b @ v.b.conj()) - abs(v.b @ v.b))
    t_ab = 2.0 * (np.real(v.c @ v.c.conj()) - abs(v.c @ v.c))
    return _clamp(float(t_bc)), _clamp(float(t_ac)), _clamp(float(t_ab))


def bipartite_tangles(s, cross_check: bool | None = None) -> tuple[float, float, float]:
    """(tau_a_bc, tau_b_ca, tau_c_ab) from the Hermitian vector norms."""
    v = abc_vectors(s)
    na = float(np.real(v.a @ v.a.conj()))
    nb = float(np.real(v.b @ v.b.conj()))
    nc = float(np.real(v.c @ v.c.conj()))
    out = (_clamp(2.0 * (nb + nc)), _clamp(2.0 * (nc + na)), _clamp(2.0 * (na + nb)))
    if CROSS_CHECK if cross_check is None else cross_check:
        for tau, qubit in zip(out, "abc"):
            ref = bipartite_tangle_from_density(s, qubit)
            if abs(tau - ref) > EPS_INV:
                raise InvariantViolation(
                    f"vector formula {tau} vs density route {ref} for qubit {qubit}")
    return out


def bipartite_tangle_from_density(s, qubit: str) -> float:
    """4 det(rho_qubit) by partial trace; independent of the vector formulas."""
    t = as_state(s).reshape(2, 2, 2)
    ax = QUBIT_AXIS[qubit]
    m = np.moveaxis(t, ax, 0).reshape(2, 4)
    rho = m @ m.conj().T
    det = np.real(rho[0, 0] * rho[1, 1] - rho[0, 1] * rho[1, 0])
    return _clamp(4.0 * float(det))


def ckw_residual(s) -> float:
    """Largest violation of tau_q(rs) = tau_abc + tau_(qr) + tau_(qs)."""
    tabc = three_tangle(s)
    t_bc, t_ac, t_ab = two_tangles(s)
    t_a, t_b, t_c = bipartite_tangles(s)
    return float(max(
        abs(t_c - tabc - t_bc - t_ac),
        abs(t_a - tabc - t_ab - t_ac),
        abs(t_b - tabc - t_ab - t_bc),
    ))


def tangle_set(s) -> TangleSet:
    """All seven measures in one sweep."""
    t_bc, t_ac, t_ab = two_tangles(s)
    t_a, t_b, t_c = bipartite_tangles(s)
    return TangleSet(three_tangle(s), t_bc, t_ac, t_ab, t_a, t_b, t_c)
