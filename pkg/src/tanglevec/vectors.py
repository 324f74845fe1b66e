"""The invariant vectors A, B, C and their 6-vector packings.

Each vector is a complex 3-vector of quadratic polynomials in the amplitudes.
A is unchanged by any local operation on qubits (b, c) and rotates as an
SO(3) vector under local operations on qubit a; B and C behave cyclically.
All dot products below are plain (non-Hermitian) unless stated otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GaugeUndefined
from .states import PARTITION_PAIR, as_state, parse_partition

EPS_INV = 1e-10


@dataclass(frozen=True, eq=False)
class AbcVectors:
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def by_qubit(self, qubit: str) -> np.ndarray:
        return {"a": self.a, "b": self.b, "c": self.c}[qubit]


@dataclass(frozen=True, eq=False)
class SixVector:
    """Packing (V1, -i V2) of the two pair vectors of a partition.

    partition 3 -> (A, -iB), partition 1 -> (B, -iC), partition 2 -> (C, -iA).
    """
    q: np.ndarray
    partition: int


@dataclass(frozen=True)
class GaugeInfo:
    phi_a: float
    defined: bool


def abc_vectors(s) -> AbcVectors:
    """Evaluate the nine quadratic polynomials.

    B and C follow from the A formula under the index cycles
    (i,j,k) -> (k,i,j) and (i,j,k) -> (j,k,i); they are written out here.
    Inputs need not be normalized; the output scales as the amplitude square.
    """
    c = as_state(s)
    c000, c001, c010, c011, c100, c101, c110, c111 = c

    a1 = -1j * (c000 * c011 - c001 * c010 + c110 * c101 - c111 * c100)
    a2 = (c000 * c011 - c001 * c010 + c100 * c111 - c101 * c110)
    a3 = 1j * (c000 * c111 - c001 * c110 + c100 * c011 - c101 * c010)

    b1 = -1j * (c000 * c101 - c100 * c001 + c011 * c110 - c111 * c010)
    b2 = (c000 * c101 - c100 * c001 + c010 * c111 - c110 * c011)
    b3 = 1j * (c000 * c111 - c100 * c011 + c010 * c101 - c110 * c001)

    c1 = -1j * (c000 * c110 - c010 * c100 + c101 * c011 - c111 * c001)
    c2 = (c000 * c110 - c010 * c100 + c001 * c111 - c011 * c101)
    c3 = 1j * (c000 * c111 - c010 * c101 + c001 * c110 - c011 * c100)

    return AbcVectors(np.array([a1, a2, a3]), np.array([b1, b2, b3]),
                      np.array([c1, c2, c3]))


def q_vector(s, partition) -> SixVector:
    """Six-vector (V_first, -i V_second) for the partition's qubit pair."""
    p = parse_partition(partition)
    v = abc_vectors(s)
    first, second = PARTITION_PAIR[p]
    return SixVector(np.concatenate([v.by_qubit(first), -1j * v.by_qubit(second)]), p)


def plucker_residual(s) -> float:
    """max(|A.A - B.B|, |B.B - C.C|); an algebraic identity, so ~0 always."""
    v = abc_vectors(s)
    aa, bb, cc = v.a @ v.a, v.b @ v.b, v.c @ v.c
    return float(max(abs(aa - bb), abs(bb - cc)))


def gauge_phase(s) -> GaugeInfo:
    """Half the argument of A.A, principal branch (-pi/2, pi/2].

    Undefined (flagged, not an error) when |A.A| is below EPS_INV, i.e. when
    the three-tangle vanishes.
    """
    v = abc_vectors(s)
    aa = v.a @ v.a
    if abs(aa) <= EPS_INV:
        return GaugeInfo(0.0, False)
    return GaugeInfo(0.5 * float(np.angle(aa)), True)


def apply_gauge(s) -> np.ndarray:
    """Multiply the state by exp(-i Phi/2) so that A.A becomes real >= 0.

    In the gauged state the real and imaginary parts of each of A, B, C are
    orthogonal. Raises GaugeUndefined when A.A = 0.
    """
    info = gauge_phase(s)
    if not info.defined:
        raise GaugeUndefined("A.A vanishes; no distinguished global phase")
    return as_state(s) * np.exp(-0.5j * info.phi_a)
