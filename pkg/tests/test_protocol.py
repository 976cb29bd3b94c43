"""Tests for the coset-state audit protocol state machines."""

import numpy as np
import pytest

from poni.cosetsim import (
    CosetState,
    Register,
    fidelity,
    to_statevector,
)
from poni.f2 import (
    Coset,
    F2Vector,
    Subspace,
    canonical_rep,
    dual,
    random_vector,
    sample_subspace,
    sample_superspace,
)
from poni.osp import IdealOsp, OspSenderOutput
from poni.protocol import (
    AuditVerifier,
    Decision,
    HonestProver,
    ProtocolViolation,
    run_poni,
    verifier_check,
)


def make_instance(n, dim_secret, rng):
    space = sample_subspace(Subspace.full(n), dim_secret, rng)
    x, z = random_vector(n, rng), random_vector(n, rng)
    return CosetState(space, x, z)


class TestHonestRuns:
    def test_accepts_and_preserves_state(self):
        rng = np.random.default_rng(201)
        osp = IdealOsp()
        for _ in range(50):
            st = make_instance(12, 4, rng)
            verifier = AuditVerifier(Coset(st.space, st.x), dim_test=6)
            prover = HonestProver(Register(st))
            result, _ = run_poni(prover, verifier, osp, rng)
            assert result.decision is Decision.ACC
            residual = prover.register.take()
            assert residual == CosetState(st.space, st.x, st.z + result.z_correction)

    def test_completeness_batch(self):
        rng = np.random.default_rng(202)
        osp = IdealOsp()
        st = make_instance(24, 8, rng)
        verifier = AuditVerifier(Coset(st.space, st.x), dim_test=12)
        prover = HonestProver(Register(st))
        for _ in range(1000):
            result, _ = run_poni(prover, verifier, osp, rng)
            assert result.accepted

    def test_sequential_audits_accumulate_phase_mask_only(self):
        # k audits leave (S, x, z + sum of corrections), each accepted
        rng = np.random.default_rng(203)
        osp = IdealOsp()
        for n, k in ((10, 5), (8, 3)):
            st = make_instance(n, n // 3, rng)
            verifier = AuditVerifier(Coset(st.space, st.x), dim_test=n // 2)
            prover = HonestProver(Register(st))
            total = F2Vector.zero(n)
            for _ in range(k):
                result, _ = run_poni(prover, verifier, osp, rng)
                assert result.accepted
                total = total + result.z_correction
            residual = prover.register.take()
            expected = CosetState(st.space, st.x, st.z + total)
            assert residual == expected
            assert abs(fidelity(to_statevector(residual), to_statevector(expected)) - 1) < 1e-9


class TestDishonestProvers:
    def test_computational_remnant_still_accepted(self):
        # a prover holding only the post-measurement basis state passes:
        # the check constrains the computational basis alone
        rng = np.random.default_rng(211)
        osp = IdealOsp()
        for _ in range(200):
            st = make_instance(10, 4, rng)
            member = random_element(st.space, rng) + st.x
            remnant = CosetState(Subspace.zero(10), member, F2Vector.zero(10))
            prover = HonestProver(Register(remnant))
            verifier = AuditVerifier(Coset(st.space, st.x), dim_test=5)
            result, _ = run_poni(prover, verifier, osp, rng)
            assert result.accepted

    def test_hadamard_collapsed_rarely_accepted(self):
        # a fully Hadamard-measured register becomes a phase state over
        # the full space; its response is uniform, so acceptance is
        # |T| / 2^n = 2^-(n - dim_test)
        rng = np.random.default_rng(212)
        osp = IdealOsp()
        n, dim_secret, dim_test = 8, 2, 4
        trials, hits = 4000, 0
        for _ in range(trials):
            st = make_instance(n, dim_secret, rng)
            w = st.z + canonical_rep(dual(st.space), random_vector(n, rng))
            collapsed = CosetState(Subspace.full(n), F2Vector.zero(n), w)
            prover = HonestProver(Register(collapsed))
            verifier = AuditVerifier(Coset(st.space, st.x), dim_test=dim_test)
            result, _ = run_poni(prover, verifier, osp, rng)
            hits += result.accepted
        p = 2.0 ** -(n - dim_test)
        sigma = (trials * p * (1 - p)) ** 0.5
        assert abs(hits - trials * p) < 3 * sigma


class TestVerifierCheck:
    def _session(self, rng, n=12, dim_secret=4, dim_test=6):
        st = make_instance(n, dim_secret, rng)
        verifier = AuditVerifier(Coset(st.space, st.x), dim_test=dim_test)
        session = verifier.open_session(b"s", rng)
        out, _, _ = IdealOsp().prepare(session.sender_input(), b"s", rng)
        session.complete_osp(out)
        return session

    def test_zero_element_accepts(self):
        rng = np.random.default_rng(221)
        s = self._session(rng)
        v = s.x_test + s.osp_out.x_osp
        assert verifier_check(v, s).decision is Decision.ACC

    def test_outside_vector_rejects(self):
        rng = np.random.default_rng(222)
        s = self._session(rng)
        u = random_vector(12, rng)
        while s.test_space.contains(u):
            u = random_vector(12, rng)
        v = s.x_test + s.osp_out.x_osp + u
        assert verifier_check(v, s).decision is Decision.REJ


class TestSessionStateMachine:
    def test_response_before_osp_aborts(self):
        rng = np.random.default_rng(231)
        st = make_instance(8, 3, rng)
        session = AuditVerifier(Coset(st.space, st.x), 4).open_session(b"s", rng)
        with pytest.raises(ProtocolViolation):
            session.receive_v(random_vector(8, rng))
        assert session.decide().decision is Decision.REJ

    def test_double_osp_aborts(self):
        rng = np.random.default_rng(232)
        st = make_instance(8, 3, rng)
        session = AuditVerifier(Coset(st.space, st.x), 4).open_session(b"s", rng)
        out, _, _ = IdealOsp().prepare(session.sender_input(), b"s", rng)
        session.complete_osp(out)
        with pytest.raises(ProtocolViolation):
            session.complete_osp(out)
        assert session.decide().decision is Decision.REJ

    def test_malformed_vector_aborts(self):
        rng = np.random.default_rng(233)
        st = make_instance(8, 3, rng)
        session = AuditVerifier(Coset(st.space, st.x), 4).open_session(b"s", rng)
        out, _, _ = IdealOsp().prepare(session.sender_input(), b"s", rng)
        session.complete_osp(out)
        with pytest.raises(ProtocolViolation):
            session.receive_v(random_vector(9, rng))
        assert session.decide().decision is Decision.REJ


class TestSemanticSecurityShape:
    def test_prover_view_independent_of_test_space(self):
        # under the ideal preparation the prover-visible bytes are a
        # function of (n, session id) only, not of the audited coset
        rng = np.random.default_rng(241)
        osp = IdealOsp()
        views = []
        for dim_secret in (2, 5):
            st = make_instance(10, dim_secret, rng)
            prover = HonestProver(Register(st))
            verifier = AuditVerifier(Coset(st.space, st.x), dim_test=7)
            result, transcript = run_poni(prover, verifier, osp, rng, session_id=b"fixed")
            assert result.accepted
            views.append(transcript.prover_view())
        assert views[0] == views[1]
