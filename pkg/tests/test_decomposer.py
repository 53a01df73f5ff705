import numpy as np
import pytest

from hdresonator.decomposer import (
    BundleSpec,
    NoiseSpec,
    add_noise,
    bound_tuple,
    count_matches,
    decode_bundle,
    encode_bundle,
    is_success,
)
from hdresonator.hdc import make_codebook, similarity
from hdresonator.resonator import ResonatorConfig, UpdateRule, factorize


def _codebooks(F, n, D, kind, seed=0):
    rng = np.random.default_rng(seed)
    return [make_codebook(n, D, kind, rng) for _ in range(F)]


class TestBundleSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            BundleSpec(())
        with pytest.raises(ValueError):
            BundleSpec(((0, 1), (0, 1)))
        with pytest.raises(ValueError):
            BundleSpec(((0, 1), (0,)))

    def test_random_tuples_distinct(self):
        spec = BundleSpec.random([2, 2], 4, np.random.default_rng(0))
        assert sorted(spec.tuples) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        with pytest.raises(ValueError):
            BundleSpec.random([2, 2], 5, np.random.default_rng(0))


class TestEncodeBundle:
    def test_singleton(self):
        cbs = _codebooks(3, 4, 256, "fhrr")
        s = encode_bundle(cbs, BundleSpec(((1, 2, 3),)))
        t = cbs[0][1] * cbs[1][2] * cbs[2][3]
        np.testing.assert_allclose(s, t)
        assert similarity(s, t) == pytest.approx(1.0, abs=1e-12)

    def test_matches_scalar_loop(self):
        cbs = _codebooks(2, 5, 64, "bipolar", 1)
        spec = BundleSpec(((0, 1), (4, 4), (2, 0)))
        s = encode_bundle(cbs, spec)
        for c in range(64):
            ref = sum(cbs[0][a][c] * cbs[1][b][c] for a, b in spec.tuples)
            assert s[c] == pytest.approx(ref, abs=1e-10)

    def test_concentration(self):
        cbs = _codebooks(2, 10, 10_000, "bipolar", 2)
        spec = BundleSpec(((0, 1), (2, 3), (4, 5)))
        s = encode_bundle(cbs, spec)
        for t in spec.tuples:
            assert similarity(s, bound_tuple(cbs, t)) == pytest.approx(1.0, abs=0.05)
        assert similarity(s, bound_tuple(cbs, (9, 9))) == pytest.approx(0.0, abs=0.05)

    def test_bad_index(self):
        cbs = _codebooks(2, 3, 16, "bipolar")
        with pytest.raises(ValueError):
            encode_bundle(cbs, BundleSpec(((0, 3),)))


class TestNoise:
    def test_zero_sigma_is_identity(self):
        s = np.arange(4.0)
        assert add_noise(s, NoiseSpec(0.0), np.random.default_rng(0)) is s

    def test_negative_sigma(self):
        with pytest.raises(ValueError):
            NoiseSpec(-0.1)

    def test_real_variance(self):
        s = np.ones(10_000)
        eps = add_noise(s, 0.5, np.random.default_rng(1)) - s
        assert eps.var() == pytest.approx(0.25, rel=0.10)

    def test_complex_variance_split(self):
        s = np.ones(10_000, dtype=complex)
        eps = add_noise(s, 0.5, np.random.default_rng(2)) - s
        assert np.mean(np.abs(eps) ** 2) == pytest.approx(0.25, rel=0.10)
        assert eps.real.var() == pytest.approx(0.125, rel=0.10)
        assert eps.imag.var() == pytest.approx(0.125, rel=0.10)

    def test_bundle_residual_variance_grows_linearly(self):
        D = 10_000
        rng = np.random.default_rng(3)
        ratios = []
        for k in (2, 3, 5, 9):
            cbs = [make_codebook(12, D, "bipolar", rng) for _ in range(2)]
            spec = BundleSpec.random([12, 12], k, rng)
            residual = encode_bundle(cbs, spec) - bound_tuple(cbs, spec.tuples[0])
            ratios.append(residual.var() / (k - 1))
        np.testing.assert_allclose(ratios, 1.0, rtol=0.15)


class TestDecodeBundle:
    def test_k1_equals_factorize(self):
        cbs = _codebooks(3, 6, 500, "fhrr", 4)
        s = encode_bundle(cbs, BundleSpec(((1, 2, 3),)))
        cfg = ResonatorConfig(UpdateRule.ATTENTION_FHRR, max_iters=10)
        (a,) = decode_bundle(s, cbs, 1, cfg)
        b = factorize(s, cbs, cfg)
        assert a.indices == b.indices and a.iterations == b.iterations
        for x, y in zip(a.estimates, b.estimates):
            assert x.tobytes() == y.tobytes()

    def test_k_validated(self):
        cbs = _codebooks(2, 3, 16, "bipolar")
        with pytest.raises(ValueError):
            decode_bundle(np.ones(16), cbs, 0, ResonatorConfig(UpdateRule.ORIGINAL_BIPOLAR))

    def test_residual_after_correct_first_decode(self):
        D = 10_000
        hits = 0
        for seed in range(5):
            rng = np.random.default_rng(100 + seed)
            cbs = [make_codebook(10, D, "fhrr", rng) for _ in range(2)]
            spec = BundleSpec.random([10, 10], 2, rng)
            s = encode_bundle(cbs, spec)
            cfg = ResonatorConfig(UpdateRule.ATTENTION_FHRR, max_iters=20)
            first = factorize(s, cbs, cfg)
            if first.indices not in spec.tuples:
                continue
            hits += 1
            rest = [t for t in spec.tuples if t != first.indices][0]
            residual = s - bound_tuple(cbs, first.indices)
            assert similarity(residual, bound_tuple(cbs, rest)) == pytest.approx(1.0, abs=0.1)
            results = decode_bundle(s, cbs, 2, cfg)
            assert count_matches([r.indices for r in results], spec) == 2
        assert hits >= 3

    def test_telescoping_residual(self):
        D = 10_000
        rng = np.random.default_rng(7)
        cbs = [make_codebook(8, D, "bipolar", rng) for _ in range(2)]
        spec = BundleSpec(((0, 1), (2, 3), (4, 5)))
        residual = encode_bundle(cbs, spec)
        for t in spec.tuples:
            residual = residual - bound_tuple(cbs, t)
        for t in spec.tuples:
            assert abs(similarity(residual, bound_tuple(cbs, t))) <= 5 / np.sqrt(D)

    def test_unconditional_subtraction(self):
        # a wrong first decode is still subtracted
        cbs = _codebooks(2, 4, 256, "bipolar", 9)
        spec = BundleSpec(((0, 0),))
        s = encode_bundle(cbs, spec) * 0.0 + bound_tuple(cbs, (1, 1))
        cfg = ResonatorConfig(UpdateRule.ATTENTION_BIPOLAR, max_iters=10)
        r1, r2 = decode_bundle(s, cbs, 2, cfg)
        assert r1.indices == (1, 1)
        assert r2.indices != (1, 1)


class TestSuccess:
    spec = BundleSpec(((0, 1, 2), (3, 3, 3)))

    def test_any_order(self):
        assert is_success([(3, 3, 3), (0, 1, 2)], self.spec)

    def test_all_wrong(self):
        assert not is_success([(0, 1, 3), (3, 3, 0)], self.spec)

    def test_single_hit_is_enough(self):
        assert is_success([(9, 9, 9), (0, 1, 2)], self.spec)

    def test_k1_equivalent_to_full_accuracy(self):
        truth = BundleSpec(((1, 2),))
        for decoded in [(1, 2), (1, 0), (0, 2), (0, 0)]:
            acc = sum(a == b for a, b in zip(decoded, truth.tuples[0])) / 2
            assert is_success([decoded], truth) == (acc == 1.0)

    def test_matching_without_replacement(self):
        assert count_matches([(0, 1, 2), (0, 1, 2)], self.spec) == 1
