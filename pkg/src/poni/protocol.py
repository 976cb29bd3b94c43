"""Prover and verifier state machines for the coset-state audit.

One audit session: the verifier, who knows the tested coset S + x,
samples a fresh superspace T of dimension dim_test and obliviously
prepares the coset state over T at the prover; the prover CNOTs its
audited register into that fresh register and measures it, returning a
vector v; the verifier accepts iff v lands in T + x_T + x_osp.  An
honest register always passes and survives with only a phase mask
(known to the verifier) added to it.

Sessions walk Init -> OspDone -> GotV -> Done; anything out of order
aborts the session, which then decides Reject.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from poni.cosetsim import CosetState, Register, transversal_cnot_measure
from poni.f2 import Coset, F2Vector, Subspace, canonical_rep, sample_superspace
from poni.osp import OspSenderOutput
from poni.wire import MsgType

__all__ = [
    "Decision",
    "PoniResult",
    "ProtocolViolation",
    "SessionState",
    "AuditVerifier",
    "VerifierSession",
    "HonestProver",
    "Transcript",
    "run_poni",
    "verifier_check",
]


class Decision(enum.Enum):
    ACC = "Acc"
    REJ = "Rej"


class SessionState(enum.Enum):
    INIT = "Init"
    OSP_DONE = "OspDone"
    GOT_V = "GotV"
    DONE = "Done"


class ProtocolViolation(RuntimeError):
    """An out-of-order or malformed message; the session is dead."""


@dataclass(frozen=True)
class PoniResult:
    decision: Decision
    z_correction: F2Vector

    @property
    def accepted(self) -> bool:
        return self.decision is Decision.ACC


@dataclass(frozen=True)
class Transcript:
    """Ordered wire messages with their direction ('>' to prover,
    '<' to verifier)."""

    session_id: bytes
    messages: tuple[tuple[str, MsgType, bytes], ...]

    def prover_view(self) -> bytes:
        """Everything the prover receives over the session."""
        return b"".join(p for d, _, p in self.messages if d == ">")


class AuditVerifier:
    """Long-lived verifier knowledge: the tested coset and the test
    dimension; spawns one fresh session per audit."""

    def __init__(self, tested: Coset, dim_test: int):
        if not 0 <= dim_test <= tested.n or dim_test < tested.space.dim:
            raise ValueError("test dimension must lie between dim(S) and n")
        self.tested = tested
        self.dim_test = dim_test

    def open_session(self, session_id: bytes, rng: np.random.Generator) -> "VerifierSession":
        test_space = sample_superspace(self.tested.space, self.dim_test, rng)
        return VerifierSession(self.tested, test_space, session_id)


class VerifierSession:
    """State machine for a single audit on the verifier side."""

    def __init__(self, tested: Coset, test_space: Subspace, session_id: bytes):
        self.tested = tested
        self.test_space = test_space
        self.x_test = canonical_rep(test_space, tested.offset)
        self.session_id = session_id
        self.state = SessionState.INIT
        self.aborted = False
        self.osp_out: OspSenderOutput | None = None
        self._v: F2Vector | None = None

    def _die(self, msg: str):
        self.aborted = True
        self.state = SessionState.DONE
        raise ProtocolViolation(msg)

    def sender_input(self) -> Subspace:
        return self.test_space

    def complete_osp(self, out: OspSenderOutput) -> None:
        if self.state is not SessionState.INIT:
            self._die(f"unexpected OSP completion in state {self.state.value}")
        self.osp_out = out
        self.state = SessionState.OSP_DONE

    def receive_v(self, v: F2Vector) -> None:
        if self.state is not SessionState.OSP_DONE:
            self._die(f"unexpected response in state {self.state.value}")
        if v.n != self.tested.n:
            self._die("malformed response vector")
        self._v = v
        self.state = SessionState.GOT_V

    def decide(self) -> PoniResult:
        if self.aborted:
            return PoniResult(Decision.REJ, F2Vector.zero(self.tested.n))
        if self.state is not SessionState.GOT_V:
            self._die(f"decision requested in state {self.state.value}")
        self.state = SessionState.DONE
        shifted = self._v + self.osp_out.x_osp + self.x_test
        ok = canonical_rep(self.test_space, shifted) == F2Vector.zero(self.tested.n)
        decision = Decision.ACC if ok else Decision.REJ
        return PoniResult(decision, self.osp_out.z_osp)


def verifier_check(v: F2Vector, session: VerifierSession) -> PoniResult:
    """Feed the prover's response into a session and decide it."""
    session.receive_v(v)
    return session.decide()


class HonestProver:
    """Answers audits by the letter of the protocol: CNOT the audited
    register onto the freshly delivered one, measure, hand over v."""

    def __init__(self, register: Register):
        self.register = register

    def respond(self, delivered: CosetState, rng: np.random.Generator) -> F2Vector:
        state = self.register.take()
        outcome = transversal_cnot_measure(state, delivered, rng)
        self.register = Register(outcome.residual)
        return outcome.value


def run_poni(
    prover,
    verifier: AuditVerifier,
    osp_backend,
    rng: np.random.Generator,
    session_id: bytes = b"local-session",
) -> tuple[PoniResult, Transcript]:
    """Local driver wiring one prover and one fresh verifier session.

    The prover only needs a respond(delivered_state, rng) -> vector
    method, so adversarial strategies plug in directly.
    """
    session = verifier.open_session(session_id, rng)
    messages = [(">", MsgType.PONI_START, session_id)]
    sender_out, delivered, osp_tr = osp_backend.prepare(
        session.sender_input(), session_id, rng
    )
    session.complete_osp(sender_out)
    for mtype, payload in osp_tr.messages:
        messages.append((">" if mtype == MsgType.OSP_PREPARE else "<", mtype, payload))
    v = prover.respond(delivered, rng)
    session.receive_v(v)
    messages.append(("<", MsgType.PONI_V, v.to_bytes()))
    result = session.decide()
    messages.append(
        (">", MsgType.PONI_DECISION, b"\x01" if result.accepted else b"\x00")
    )
    return result, Transcript(session_id, tuple(messages))
