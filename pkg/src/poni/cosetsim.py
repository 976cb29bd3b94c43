"""Symbolic simulator for coset states.

A coset state over a subspace S with Pauli masks (x, z) is the
superposition sum_{s in S} (-1)^((s+x).z) |s+x>, tracked here purely by
its (S, x, z) description with both masks canonicalized, so value
equality coincides with physical equality up to global phase.

The protocols only ever need four physical operations: Pauli masking,
computational / Hadamard measurement, and a transversal CNOT that is
immediately followed by measurement of its target.  Each has a closed
form on (S, x, z), so no amplitudes are stored.  For cross-checking, the
module also ships a literal statevector oracle (dense complex
amplitudes, capped at 12 qubits per register) with gate-by-gate
implementations of the same operations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from poni.f2 import (
    F2Vector,
    Subspace,
    canonical_rep,
    dual,
    intersect,
    random_element,
)

__all__ = [
    "ORACLE_MAX_QUBITS",
    "CosetState",
    "MeasureOutcome",
    "Register",
    "RegisterConsumed",
    "new_coset_state",
    "apply_pauli",
    "measure_computational",
    "measure_hadamard",
    "transversal_cnot_measure",
    "state_to_bytes",
    "state_from_bytes",
    "to_statevector",
    "oracle_apply_x",
    "oracle_apply_z",
    "oracle_hadamard_all",
    "oracle_cnot",
    "oracle_measure",
    "oracle_joint_state",
    "oracle_measure_joint_target",
    "fidelity",
]

ORACLE_MAX_QUBITS = 12


@dataclass(frozen=True)
class CosetState:
    """|S_{x,z}> up to global phase; x and z are stored canonically
    (x reduced by S, z reduced by S's dual), so equal values denote the
    same physical state and vice versa."""

    space: Subspace
    x: F2Vector
    z: F2Vector

    def __post_init__(self):
        if self.x.n != self.space.n or self.z.n != self.space.n:
            raise ValueError("mask dimensions must match the ambient dimension")
        object.__setattr__(self, "x", canonical_rep(self.space, self.x))
        object.__setattr__(self, "z", canonical_rep(dual(self.space), self.z))

    @property
    def n(self) -> int:
        return self.space.n


def new_coset_state(space: Subspace, x: F2Vector, z: F2Vector) -> CosetState:
    return CosetState(space, x, z)


class RegisterConsumed(RuntimeError):
    """The register's state was already moved out by a measurement."""


class Register:
    """Move-only holder for a simulated quantum register.

    Destructive operations call take(), after which further access
    raises; honest code paths therefore cannot clone a register.
    """

    def __init__(self, state: CosetState):
        self._state: CosetState | None = state

    @property
    def consumed(self) -> bool:
        return self._state is None

    def take(self) -> CosetState:
        if self._state is None:
            raise RegisterConsumed("register already measured or moved")
        state, self._state = self._state, None
        return state


@dataclass(frozen=True)
class MeasureOutcome:
    """A measured value plus the surviving entangled register, if any."""

    value: F2Vector
    residual: CosetState | None = None

    def __iter__(self):
        return iter((self.value, self.residual))


def apply_pauli(st: CosetState, x_mask: F2Vector, z_mask: F2Vector) -> CosetState:
    return CosetState(st.space, st.x + x_mask, st.z + z_mask)


def measure_computational(st: CosetState, rng: np.random.Generator) -> F2Vector:
    """Uniform sample from S + x; the register is gone afterwards."""
    return random_element(st.space, rng) + st.x


def measure_hadamard(st: CosetState, rng: np.random.Generator) -> F2Vector:
    """Uniform sample from S-dual + z; the register is gone afterwards."""
    return random_element(dual(st.space), rng) + st.z


def transversal_cnot_measure(
    src: CosetState, tgt: CosetState, rng: np.random.Generator
) -> MeasureOutcome:
    """Bitwise CNOT from src to tgt, then computational measurement of tgt.

    The outcome v is uniform over (S + T) + x_src + x_tgt.  The source
    register survives as a coset state over S ∩ T: the surviving
    superposition runs over the members of S consistent with v, and the
    target's phase mask kicks back onto the source.
    """
    if src.n != tgt.n:
        raise ValueError("registers must share the ambient dimension")
    s0 = random_element(src.space, rng)
    t0 = random_element(tgt.space, rng)
    v = s0 + t0 + src.x + tgt.x
    residual = CosetState(intersect(src.space, tgt.space), src.x + s0, src.z + tgt.z)
    return MeasureOutcome(v, residual)


def state_to_bytes(st: CosetState) -> bytes:
    """n (2 bytes BE), dim (2 bytes BE), basis rows, x, z."""
    return st.n.to_bytes(2, "big") + st.space.to_bytes() + st.x.to_bytes() + st.z.to_bytes()


def state_from_bytes(data: bytes) -> CosetState:
    n = int.from_bytes(data[:2], "big")
    dim = int.from_bytes(data[2:4], "big")
    nbytes = (n + 7) // 8
    end = 4 + dim * nbytes
    space = Subspace.from_bytes(data[2:end], n)
    x = F2Vector.from_bytes(data[end : end + nbytes], n)
    z = F2Vector.from_bytes(data[end + nbytes : end + 2 * nbytes], n)
    if len(data) != end + 2 * nbytes:
        raise ValueError("truncated coset-state encoding")
    return CosetState(space, x, z)


# ---------------------------------------------------------------------------
# statevector oracle
# ---------------------------------------------------------------------------


def _check_oracle_size(n: int) -> None:
    if n > ORACLE_MAX_QUBITS:
        raise ValueError(f"oracle capped at {ORACLE_MAX_QUBITS} qubits, got {n}")


def to_statevector(st: CosetState) -> np.ndarray:
    """Dense amplitudes 2^(-dim/2) * (-1)^((s+x).z) at index s+x."""
    _check_oracle_size(st.n)
    amps = np.zeros(1 << st.n, dtype=complex)
    norm = 2.0 ** (-st.space.dim / 2)
    zb = st.z.bits
    for s in st.space.elements():
        v = s.bits ^ st.x.bits
        amps[v] = -norm if (v & zb).bit_count() & 1 else norm
    return amps


def oracle_apply_x(amps: np.ndarray, x: F2Vector) -> np.ndarray:
    idx = np.arange(amps.size)
    return amps[idx ^ x.bits]


def oracle_apply_z(amps: np.ndarray, z: F2Vector) -> np.ndarray:
    idx = np.arange(amps.size)
    parity = np.bitwise_count(idx & z.bits) & 1
    return amps * np.where(parity, -1.0, 1.0)


def oracle_hadamard_all(amps: np.ndarray) -> np.ndarray:
    """H on every qubit (normalized fast Walsh-Hadamard transform)."""
    out = np.array(amps, dtype=complex, copy=True)
    size = out.size
    h = 1
    while h < size:
        out = out.reshape(-1, 2 * h)
        a = out[:, :h].copy()
        out[:, :h] = a + out[:, h:]
        out[:, h:] = a - out[:, h:]
        out = out.reshape(-1)
        h *= 2
    return out / np.sqrt(size)


def oracle_joint_state(src: np.ndarray, tgt: np.ndarray) -> np.ndarray:
    """Product state over (src, tgt); index = (src_bits << n) | tgt_bits."""
    return np.kron(src, tgt)


def oracle_cnot(joint: np.ndarray, n: int) -> np.ndarray:
    """Transversal CNOT from the high (source) register onto the low one."""
    idx = np.arange(joint.size)
    src = idx >> n
    tgt = idx & ((1 << n) - 1)
    perm = (src << n) | (tgt ^ src)
    return joint[perm]


def oracle_measure(amps: np.ndarray, rng: np.random.Generator) -> tuple[int, np.ndarray]:
    """Computational-basis measurement: sampled index plus collapsed state."""
    probs = np.abs(amps) ** 2
    probs = probs / probs.sum()
    outcome = int(rng.choice(amps.size, p=probs))
    collapsed = np.zeros_like(amps)
    collapsed[outcome] = amps[outcome] / abs(amps[outcome])
    return outcome, collapsed


def oracle_measure_joint_target(
    joint: np.ndarray, n: int, rng: np.random.Generator
) -> tuple[int, np.ndarray]:
    """Measure the low (target) register of a joint state; returns the
    outcome bits and the normalized residual source statevector."""
    grid = joint.reshape(-1, 1 << n)
    probs = (np.abs(grid) ** 2).sum(axis=0)
    probs = probs / probs.sum()
    outcome = int(rng.choice(1 << n, p=probs))
    residual = grid[:, outcome]
    return outcome, residual / np.linalg.norm(residual)


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>| so global phase is ignored."""
    return abs(np.vdot(a, b))
