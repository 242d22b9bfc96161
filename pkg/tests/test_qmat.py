import numpy as np
import pytest

from pqdec.qmat import (
    DimSig,
    ValidationError,
    eig_hermitian,
    expm_skew,
    kron,
    partial_trace,
    trace_distance,
    validate_density,
)


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def kron_by_loops(a, b):
    """Independent elementwise Kronecker product."""
    (ra, ca), (rb, cb) = a.shape, b.shape
    out = np.zeros((ra * rb, ca * cb), dtype=complex)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k, j * cb + l] = a[i, j] * b[k, l]
    return out


def partial_trace_by_loops(m, dims, keep_axes):
    """Independent partial trace working directly on flat indices."""
    n = len(dims)
    keep_dims = [dims[i] for i in keep_axes]
    side = int(np.prod(keep_dims)) if keep_dims else 1
    out = np.zeros((side, side), dtype=complex)

    def unflatten(f):
        digits = []
        for d in reversed(dims):
            digits.append(f % d)
            f //= d
        return list(reversed(digits))

    def project(digits):
        v = 0
        for i in keep_axes:
            v = v * dims[i] + digits[i]
        return v

    total = int(np.prod(dims))
    for r in range(total):
        for c in range(total):
            dr, dc = unflatten(r), unflatten(c)
            if all(dr[i] == dc[i] for i in range(n) if i not in keep_axes):
                out[project(dr), project(dc)] += m[r, c]
    return out


class TestDimSig:
    def test_basic_accessors(self):
        sig = DimSig((2, 3, 4), ("R", "A", "B"))
        assert sig.side == 24
        assert sig.axis("A") == 1
        assert sig.dim("B") == 4
        assert sig.subset(["B", "R"]) == DimSig((2, 4), ("R", "B"))

    def test_rejects_malformed(self):
        with pytest.raises(ValidationError):
            DimSig((2, 3), ("R",))
        with pytest.raises(ValidationError):
            DimSig((2, 0), ("R", "A"))
        with pytest.raises(ValidationError):
            DimSig((2, 2), ("R", "R"))
        with pytest.raises(KeyError):
            DimSig((2,), ("R",)).axis("A")
        with pytest.raises(KeyError):
            DimSig((2,), ("R",)).subset(["X"])


class TestKron:
    def test_identities(self):
        assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))
        got = kron(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
        assert np.array_equal(got, np.diag([0.0, 1.0, 0.0, 0.0]))

    def test_matches_loop_oracle_and_trace(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            a = random_complex(rng, (3, 3))
            b = random_complex(rng, (3, 3))
            got = kron(a, b)
            assert np.allclose(got, kron_by_loops(a, b), atol=1e-12)
            assert abs(np.trace(got) - np.trace(a) * np.trace(b)) <= 1e-12


class TestPartialTrace:
    def test_against_loop_oracle(self):
        rng = np.random.default_rng(5)
        dims = (2, 3, 2)
        sig = DimSig(dims, ("R", "A", "B"))
        m = random_complex(rng, (12, 12))
        cases = {
            ("R",): [0],
            ("A",): [1],
            ("B",): [2],
            ("R", "B"): [0, 2],
            ("A", "B"): [1, 2],
        }
        for keep, axes in cases.items():
            got = partial_trace(m, sig, keep)
            want = partial_trace_by_loops(m, list(dims), axes)
            assert np.allclose(got, want, atol=1e-12)

    def test_keep_order_is_signature_order(self):
        sig = DimSig((2, 3), ("R", "A"))
        m = np.arange(36, dtype=complex).reshape(6, 6)
        assert np.array_equal(partial_trace(m, sig, ["A", "R"]), m)

    def test_product_state_factors(self):
        rng = np.random.default_rng(7)
        a = random_complex(rng, (2, 2))
        a = a @ a.conj().T
        a /= np.trace(a).real
        b = random_complex(rng, (3, 3))
        b = b @ b.conj().T
        b /= np.trace(b).real
        sig = DimSig((2, 3), ("R", "A"))
        joint = kron(a, b)
        assert np.allclose(partial_trace(joint, sig, ["R"]), a, atol=1e-12)
        assert np.allclose(partial_trace(joint, sig, ["A"]), b, atol=1e-12)

    def test_trace_preserved(self):
        rng = np.random.default_rng(9)
        sig = DimSig((2, 2, 3), ("R", "B", "E"))
        m = random_complex(rng, (12, 12))
        for keep in (["R"], ["R", "B"], ["E"]):
            assert abs(np.trace(partial_trace(m, sig, keep)) - np.trace(m)) <= 1e-10

    def test_errors(self):
        sig = DimSig((2, 2), ("R", "A"))
        with pytest.raises(ValidationError):
            partial_trace(np.eye(3), sig, ["R"])
        with pytest.raises(KeyError):
            partial_trace(np.eye(4), sig, ["X"])


class TestEigHermitian:
    def test_reconstruction(self):
        rng = np.random.default_rng(3)
        for n in (2, 4, 8):
            h = random_complex(rng, (n, n))
            h = h + h.conj().T
            w, u = eig_hermitian(h)
            assert np.all(np.diff(w) >= -1e-12)
            recon = (u * w) @ u.conj().T
            assert np.max(np.abs(recon - h)) <= 1e-9

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValidationError):
            eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestExpmSkew:
    def test_matches_taylor_series(self):
        rng = np.random.default_rng(21)
        for n in (2, 3, 4):
            g = random_complex(rng, (n, n))
            g = 0.1 * (g - g.conj().T)
            series = np.zeros((n, n), dtype=complex)
            term = np.eye(n, dtype=complex)
            for k in range(1, 30):
                series += term
                term = term @ g / k
            assert np.max(np.abs(expm_skew(g) - series)) <= 1e-12

    def test_result_is_unitary(self):
        rng = np.random.default_rng(22)
        for n in (2, 5):
            g = random_complex(rng, (n, n))
            g = g - g.conj().T
            u = expm_skew(g)
            assert np.max(np.abs(u.conj().T @ u - np.eye(n))) <= 1e-10

    def test_zero_generator(self):
        assert np.allclose(expm_skew(np.zeros((3, 3))), np.eye(3), atol=1e-14)

    def test_rejects_non_skew(self):
        with pytest.raises(ValidationError):
            expm_skew(np.eye(2))


class TestTraceDistance:
    def test_classical_formula(self):
        # On commuting diagonal states the trace distance is half the l1
        # distance of the probability vectors.
        rng = np.random.default_rng(31)
        for _ in range(5):
            p = rng.dirichlet(np.ones(4))
            q = rng.dirichlet(np.ones(4))
            want = 0.5 * np.sum(np.abs(p - q))
            assert abs(trace_distance(np.diag(p), np.diag(q)) - want) <= 1e-12

    def test_metric_properties(self):
        rng = np.random.default_rng(32)
        mats = []
        for _ in range(3):
            m = random_complex(rng, (3, 3))
            m = m @ m.conj().T
            mats.append(m / np.trace(m).real)
        a, b, c = mats
        assert trace_distance(a, a) <= 1e-12
        assert abs(trace_distance(a, b) - trace_distance(b, a)) <= 1e-12
        assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12

    def test_orthogonal_states_distance_one(self):
        assert abs(trace_distance(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])) - 1.0) <= 1e-12


class TestValidateDensity:
    def test_clean_input_returned_unchanged(self):
        a = np.diag([0.25, 0.75]).astype(complex)
        out = validate_density(a)
        assert np.array_equal(out, a)

    def test_small_negative_eigenvalue_clamped(self):
        a = np.diag([1.0 + 5e-10, -5e-10]).astype(complex)
        out = validate_density(a)
        w = np.linalg.eigvalsh(out)
        assert w[0] >= 0.0
        assert abs(np.trace(out).real - 1.0) <= 1e-12

    def test_rejections(self):
        with pytest.raises(ValidationError):
            validate_density(np.array([[0.5, 0.5], [-0.5, 0.5]], dtype=complex))
        with pytest.raises(ValidationError):
            validate_density(np.diag([0.7, 0.7]).astype(complex))
        with pytest.raises(ValidationError):
            validate_density(np.diag([1.5, -0.5]).astype(complex))
        with pytest.raises(ValidationError):
            validate_density(np.zeros((2, 3)))
