import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from physent.errors import InvalidShape, NotHermitian, NotPSD
from physent.linalg import (
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Z,
    hermitian_eigenvalues,
    hermitian_eigh,
    partial_trace,
    psd_sqrt,
    tensor_product,
)

UP = np.array([1, 0], dtype=complex)
DOWN = np.array([0, 1], dtype=complex)

# LAPACK's eigvalsh loses accuracy on entries near 1e-160 (squares underflow), so flush them
finite = st.floats(min_value=-3, max_value=3, allow_nan=False, allow_infinity=False).map(
    lambda x: 0.0 if abs(x) < 1e-100 else x
)


def random_hermitian(rng, n):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (x + x.conj().T) / 2


def random_density(rng, n, rank=None):
    rank = n if rank is None else rank
    x = rng.normal(size=(n, rank)) + 1j * rng.normal(size=(n, rank))
    rho = x @ x.conj().T
    return rho / np.trace(rho).real


def bisection_roots(m, lo, hi, samples=4000, iters=200):
    """Real roots of det(m - x I) via sign changes on a fine scan, refined by bisection."""

    def charpoly(x):
        return np.linalg.det(m - x * np.eye(m.shape[0])).real

    xs = np.linspace(lo, hi, samples)
    vals = [charpoly(x) for x in xs]
    roots = []
    for (x0, f0), (x1, f1) in zip(zip(xs, vals), zip(xs[1:], vals[1:])):
        if f0 == 0.0:
            roots.append(x0)
            continue
        if f0 * f1 < 0:
            a, b, fa = x0, x1, f0
            for _ in range(iters):
                mid = 0.5 * (a + b)
                fm = charpoly(mid)
                if fa * fm <= 0:
                    b = mid
                else:
                    a, fa = mid, fm
            roots.append(0.5 * (a + b))
    return sorted(roots, reverse=True)


class TestTensorProduct:
    def test_identity(self):
        assert np.allclose(tensor_product(IDENTITY_2, IDENTITY_2), np.eye(4), atol=0)

    def test_projectors(self):
        out = tensor_product(np.diag([1, 0]), np.diag([0, 1]))
        assert np.array_equal(out, np.diag([0, 1, 0, 0]).astype(complex))

    def test_parity(self):
        zz = tensor_product(SIGMA_Z, SIGMA_Z)
        updown = tensor_product(UP, DOWN)
        assert np.allclose(zz @ updown, -updown, atol=1e-15)

    def test_block_ordering(self):
        a = np.arange(4).reshape(2, 2)
        b = np.array([[1, 10], [100, 1000]])
        out = tensor_product(a, b)
        assert out[0, 1] == a[0, 0] * b[0, 1]
        assert out[2, 1] == a[1, 0] * b[0, 1]
        assert out.shape == (4, 4)

    def test_associative_and_trace(self):
        rng = np.random.default_rng(0)
        a, b, c = (random_hermitian(rng, n) for n in (2, 3, 2))
        left = tensor_product(tensor_product(a, b), c)
        right = tensor_product(a, tensor_product(b, c))
        assert np.max(np.abs(left - right)) < 1e-14
        assert abs(np.trace(tensor_product(a, b)) - np.trace(a) * np.trace(b)) < 1e-12


class TestPartialTrace:
    def test_bell_state(self):
        phi = (tensor_product(UP, UP) + tensor_product(DOWN, DOWN)) / np.sqrt(2)
        rho = np.outer(phi, phi.conj())
        assert np.allclose(partial_trace(rho, [2, 2], 0), np.eye(2) / 2, atol=1e-15)

    def test_product_state(self):
        ket = tensor_product(UP, DOWN)
        rho = np.outer(ket, ket.conj())
        assert np.allclose(partial_trace(rho, [2, 2], 0), np.diag([0, 1]), atol=0)
        assert np.allclose(partial_trace(rho, [2, 2], 1), np.diag([1, 0]), atol=0)

    def test_full_trace(self):
        rng = np.random.default_rng(1)
        rho = random_hermitian(rng, 6)
        out = partial_trace(rho, [2, 3], [0, 1])
        assert out.shape == (1, 1)
        assert abs(out[0, 0] - np.trace(rho)) < 1e-12

    def test_matches_index_sum(self):
        rng = np.random.default_rng(2)
        dims = [2, 3, 2]
        m = random_hermitian(rng, 12)
        t = m.reshape(dims + dims)
        brute = np.zeros((4, 4), dtype=complex)
        for i in range(2):
            for k in range(2):
                for j in range(2):
                    for l in range(2):
                        brute[i * 2 + k, j * 2 + l] = sum(t[i, x, k, j, x, l] for x in range(3))
        assert np.max(np.abs(partial_trace(m, dims, 1) - brute)) < 1e-13

    @pytest.mark.parametrize("slot", [0, 1])
    def test_product_factor(self, slot):
        rng = np.random.default_rng(3)
        r1, r2 = random_hermitian(rng, 2), random_hermitian(rng, 3)
        out = partial_trace(tensor_product(r1, r2), [2, 3], slot)
        expected = np.trace(r1) * r2 if slot == 0 else np.trace(r2) * r1
        assert np.max(np.abs(out - expected)) < 1e-12

    def test_bad_dims(self):
        with pytest.raises(InvalidShape):
            partial_trace(np.eye(4), [2, 3], 0)
        with pytest.raises(InvalidShape):
            partial_trace(np.eye(4), [2, 2], 2)


class TestEigen:
    def test_diagonal(self):
        assert np.allclose(hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])), [3, 2, 1], atol=0)

    def test_sigma_x(self):
        assert np.allclose(hermitian_eigenvalues(SIGMA_X), [1, -1], atol=1e-15)

    @pytest.mark.parametrize("seed", range(5))
    def test_against_characteristic_polynomial(self, seed):
        rng = np.random.default_rng(seed)
        m = random_hermitian(rng, 4)
        bound = np.abs(m).sum() + 1
        roots = bisection_roots(m, -bound, bound)
        assert len(roots) == 4
        assert np.allclose(hermitian_eigenvalues(m), roots, atol=1e-10)

    def test_decomposition(self):
        rng = np.random.default_rng(7)
        m = random_hermitian(rng, 16)
        w, v = hermitian_eigh(m)
        assert np.all(np.diff(w) <= 0)
        assert np.max(np.abs(v.conj().T @ v - np.eye(16))) < 1e-12
        assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - m)) < 1e-12
        assert abs(w.sum() - np.trace(m).real) < 1e-10

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eigenvalues(np.array([[0, 1], [0, 0]]))

    def test_projector_spectrum(self):
        rng = np.random.default_rng(8)
        q, _ = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
        p = q[:, :2] @ q[:, :2].conj().T
        w = hermitian_eigenvalues(p)
        assert np.allclose(w, [1, 1, 0, 0, 0, 0], atol=1e-10)


class TestPsdSqrt:
    def test_identity(self):
        assert np.allclose(psd_sqrt(np.eye(4)), np.eye(4), atol=1e-15)

    def test_diag(self):
        assert np.allclose(psd_sqrt(np.diag([4.0, 9.0])), np.diag([2, 3]), atol=1e-15)

    @pytest.mark.parametrize("rank", [1, 2, 4])
    def test_multiply_back(self, rank):
        rng = np.random.default_rng(rank)
        m = random_density(rng, 4, rank)
        s = psd_sqrt(m)
        assert np.max(np.abs(s @ s - m)) < 1e-10
        assert np.max(np.abs(s - s.conj().T)) < 1e-15
        assert hermitian_eigenvalues(s)[-1] > -1e-8

    def test_rejects_negative(self):
        with pytest.raises(NotPSD):
            psd_sqrt(np.diag([1.0, -1e-6]))

    def test_clamps_roundoff(self):
        s = psd_sqrt(np.diag([1.0, -1e-13]))
        assert np.allclose(s, np.diag([1, 0]), atol=0)


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, (2, 4, 4), elements=finite))
def test_eigenvalues_property(parts):
    m = parts[0] + 1j * parts[1]
    m = m + m.conj().T
    w = hermitian_eigenvalues(m)
    assert np.all(np.diff(w) <= 1e-12)
    assert abs(w.sum() - np.trace(m).real) < 1e-10
    assert np.allclose(w, np.sort(np.linalg.eigvalsh(m))[::-1], atol=1e-10)


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, (2, 4, 4), elements=finite))
def test_double_sqrt_is_fourth_root(parts):
    # keep the spectrum off zero: a fourth root turns 1e-16 roundoff into 1e-4
    x = parts[0] + 1j * parts[1]
    m = x @ x.conj().T + 1e-3 * np.eye(4)
    w = hermitian_eigenvalues(m)
    ww = hermitian_eigenvalues(psd_sqrt(psd_sqrt(m)))
    assert np.allclose(ww, np.clip(w, 0, None) ** 0.25, atol=1e-8)
