"""Both kernel backends must agree with each other and with dense LAPACK."""

import math

import numpy as np
import pytest

from pstforge._kernels import pykernel

from conftest import dense_operator

try:
    from pstforge._kernels import cykernel

    BACKENDS = [pykernel, cykernel]
except ImportError:
    cykernel = None
    BACKENDS = [pykernel]


def chains():
    rng = np.random.default_rng(7)
    yield np.array([0.5])
    yield np.array([math.sqrt(0.5), math.sqrt(0.5)])
    yield np.array([1.0, math.sqrt(1.5), math.sqrt(1.5), 1.0])
    yield rng.uniform(0.2, 3.0, size=17)
    yield rng.uniform(0.2, 3.0, size=40)


@pytest.mark.parametrize("kernel", BACKENDS, ids=lambda k: k.__name__.rsplit(".", 1)[-1])
class TestKernel:
    def test_sturm_count_matches_dense(self, kernel):
        for b in chains():
            w = np.linalg.eigvalsh(dense_operator(b))
            for x in [-10.0, -1.0, -0.25, 0.0, 0.3, 1.0, 5.0, 100.0]:
                expected = int(np.sum(w < x - 1e-12))
                boundary = int(np.sum(np.abs(w - x) <= 1e-12))
                got = kernel.sturm_count(b, x)
                # exact boundary hits may legitimately count on either side
                assert expected <= got <= expected + boundary

    def test_bisect_matches_dense(self, kernel):
        for b in chains():
            n = b.size + 1
            w = np.linalg.eigvalsh(dense_operator(b))
            got = kernel.bisect_eigenvalues(b, 100 * n)
            scale = max(abs(w[0]), abs(w[-1]))
            assert np.max(np.abs(got - w)) <= 1e-13 * scale

    def test_bisect_budget_exhaustion(self, kernel):
        b = np.array([1.0, 1.0, 1.0])
        with pytest.raises(RuntimeError):
            kernel.bisect_eigenvalues(b, 3)

    def test_inverse_iteration_residuals(self, kernel):
        for b in chains():
            n = b.size + 1
            h = dense_operator(b)
            values = kernel.bisect_eigenvalues(b, 100 * n)
            scale = max(abs(values[0]), abs(values[-1]))
            v0 = np.full(n, 1.0 / math.sqrt(n))
            for lam in values:
                v = kernel.inverse_iteration(b, float(lam), v0, 3)
                assert abs(np.linalg.norm(v) - 1.0) < 1e-12
                assert np.linalg.norm(h @ v - lam * v) <= 1e-12 * scale

    def test_exactly_singular_shift(self, kernel):
        # odd zero-diagonal chains carry a structural zero eigenvalue; the
        # shifted solve must survive the resulting exact singularity
        b = np.array([1.0, 1.5, 1.5, 1.0])
        v = kernel.inverse_iteration(b, 0.0, np.full(5, 1.0 / math.sqrt(5)), 3)
        h = dense_operator(b)
        assert np.linalg.norm(h @ v) <= 1e-13


@pytest.mark.skipif(cykernel is None, reason="compiled kernel not built")
class TestBackendAgreement:
    def test_eigenvalues_agree(self):
        for b in chains():
            n = b.size + 1
            a = pykernel.bisect_eigenvalues(b, 100 * n)
            c = cykernel.bisect_eigenvalues(b, 100 * n)
            scale = max(abs(a[0]), abs(a[-1]))
            assert np.max(np.abs(a - c)) <= 1e-14 * scale

    def test_counts_agree(self):
        for b in chains():
            for x in np.linspace(-5, 5, 41):
                assert pykernel.sturm_count(b, float(x)) == cykernel.sturm_count(
                    b, float(x)
                )
