"""Oblivious state preparation for coset states, as an ideal functionality.

The sender inputs a subspace T; the receiver ends up holding the coset
state over T whose Pauli masks are uniform and known only to the sender.
This build runs the exchange through a trusted in-process functionality
with zero correctness error: the receiver-visible transcript is a
fixed-length token derived from (n, session id) alone, so it carries no
information about T.  A cryptographic two-message instantiation can
replace the backend behind the same prepare() interface.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from poni.cosetsim import CosetState
from poni.f2 import F2Vector, Subspace, canonical_rep, dual, random_vector
from poni.wire import MsgType

__all__ = ["OspSenderOutput", "OspTranscript", "IdealOsp", "receiver_token"]

TOKEN_LEN = 16


@dataclass(frozen=True)
class OspSenderOutput:
    """The Pauli masks on the delivered state; uniform over the
    canonical-representative spaces of T and its dual."""

    x_osp: F2Vector
    z_osp: F2Vector


@dataclass(frozen=True)
class OspTranscript:
    session_id: bytes
    messages: tuple[tuple[MsgType, bytes], ...]

    def receiver_view(self) -> bytes:
        """Bytes visible to the receiver: the prepare token."""
        return b"".join(p for t, p in self.messages if t == MsgType.OSP_PREPARE)


def receiver_token(n: int, session_id: bytes) -> bytes:
    return hashlib.sha256(b"osp-prepare" + n.to_bytes(2, "big") + session_id).digest()[:TOKEN_LEN]


class IdealOsp:
    """Trusted stand-in for the two-message preparation protocol."""

    def prepare(
        self, space: Subspace, session_id: bytes, rng: np.random.Generator
    ) -> tuple[OspSenderOutput, CosetState, OspTranscript]:
        x_osp = canonical_rep(space, random_vector(space.n, rng))
        z_osp = canonical_rep(dual(space), random_vector(space.n, rng))
        state = CosetState(space, x_osp, z_osp)
        transcript = OspTranscript(
            session_id,
            (
                (MsgType.OSP_PREPARE, receiver_token(space.n, session_id)),
                (MsgType.OSP_ACK, b""),
            ),
        )
        return OspSenderOutput(x_osp, z_osp), state, transcript
