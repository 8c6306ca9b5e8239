import math

import numpy as np
import pytest

from lowsnr_cap.errors import ConvergenceError
from lowsnr_cap.quadrature import (GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, QuadratureSpec,
                                   integrate)


class TestRule:
    def test_weights_sum_to_interval_length(self):
        np.testing.assert_allclose(KRONROD_WEIGHTS.sum(), 2.0, rtol=1e-15)
        np.testing.assert_allclose(GAUSS_WEIGHTS.sum(), 2.0, rtol=1e-15)

    def test_nodes_symmetric(self):
        np.testing.assert_allclose(NODES, -NODES[::-1], atol=0)

    @pytest.mark.parametrize("k", range(0, 23))
    def test_kronrod_exact_to_degree_22(self, k):
        exact = (1 - (-1) ** (k + 1)) / (k + 1)
        np.testing.assert_allclose(np.sum(KRONROD_WEIGHTS * NODES ** k), exact, atol=1e-15)

    @pytest.mark.parametrize("k", range(0, 14))
    def test_gauss_exact_to_degree_13(self, k):
        exact = (1 - (-1) ** (k + 1)) / (k + 1)
        np.testing.assert_allclose(np.sum(GAUSS_WEIGHTS * NODES ** k), exact, atol=1e-15)


class TestIntegrate:
    def test_exponential_on_finite_range(self):
        value, err = integrate(np.exp, [0.0, 1.0])
        np.testing.assert_allclose(value, math.e - 1.0, rtol=1e-14)
        assert err < 1e-10

    def test_breakpoints_unsorted_and_duplicated(self):
        a, _ = integrate(np.cos, [0.0, 2.0, 1.0, 1.0])
        np.testing.assert_allclose(a, math.sin(2.0), rtol=1e-13)

    def test_endpoint_singularity(self):
        value, _ = integrate(lambda x: 1.0 / np.sqrt(x), [0.0, 1.0],
                             QuadratureSpec(abs_tol=1e-12, rel_tol=1e-12))
        np.testing.assert_allclose(value, 2.0, rtol=1e-9)

    def test_budget_exhaustion_raises(self):
        with pytest.raises(ConvergenceError):
            integrate(lambda x: np.sin(1.0 / (x + 1e-9)), [0.0, 1.0],
                      QuadratureSpec(abs_tol=1e-15, rel_tol=1e-15, max_subdivisions=10))

    def test_deterministic(self):
        f = lambda x: np.exp(-x) * np.log1p(x)
        assert integrate(f, [0.0, 3.0, 40.0]) == integrate(f, [0.0, 3.0, 40.0])


class TestSpecValidation:
    @pytest.mark.parametrize("kwargs", [{"abs_tol": 0.0}, {"rel_tol": -1.0}, {"max_subdivisions": 9}])
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            QuadratureSpec(**kwargs)

    def test_defaults(self):
        spec = QuadratureSpec()
        assert (spec.abs_tol, spec.rel_tol, spec.max_subdivisions) == (1e-10, 1e-9, 2000)
