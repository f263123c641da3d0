import os

import numpy as np
import pytest

import fastsda


def mixture(seed=0, n_per=40, dim=6):
    rng = np.random.default_rng(seed)
    centres = rng.normal(scale=3.0, size=(4, dim))
    x = np.vstack([c + rng.normal(size=(n_per, dim)) for c in centres])
    y = np.repeat([0, 0, 1, 1], n_per)
    return x, y


def test_targets_are_orthonormal_and_zero_sum():
    y = [0] * 8 + [1] * 9
    sub = [0] * 3 + [1] * 5 + [0] * 4 + [1] * 5
    t = fastsda.make_targets(y, [sub], 2, 3, 1)
    assert t.shape == (3, 17)
    np.testing.assert_allclose(t @ t.T, np.eye(3), atol=1e-10)
    np.testing.assert_allclose(t.sum(axis=1), 0.0, atol=1e-10)


def test_oracle_check_passes_on_example():
    y = [0] * 8 + [1] * 9
    sub = [0] * 3 + [1] * 5 + [0] * 4 + [1] * 5
    report = fastsda.oracle_check(y, [sub], 2)
    assert report["passed"]
    assert report["rank"] == 3
    lb = fastsda.between_class_laplacian(y, [sub], 2)
    np.testing.assert_allclose(lb.sum(axis=1), 0.0, atol=1e-12)


def test_estimator_linear_and_kernel(tmp_path):
    x, y = mixture()
    for kernel in (None, "rbf", "rbf-approx"):
        est = fastsda.FastSDA(z=2, alpha=1.0, kernel=kernel, prototypes=30).fit(x, y)
        emb = est.transform(x)
        assert emb.shape == (len(x), 3)
        pred = fastsda.knn_predict(emb, y.tolist(), emb, 5)
        assert np.mean(np.array(pred) == y) > 0.8
        path = tmp_path / f"{est.model_.variant}.model"
        est.model_.save(path)
        back = fastsda.load_model(path)
        np.testing.assert_allclose(back.transform(x), emb, atol=1e-12)


def test_multiview_fit():
    x, y = mixture(seed=2)
    views = [x[:, :3].copy(), x[:, 3:].copy()]
    sub = [fastsda.assign_subclasses(v, y.tolist(), 2, 0) for v in views]
    t = fastsda.make_targets(y.tolist(), sub, 2, 7, 0)
    assert t.shape == (7, 2 * len(x))
    model = fastsda.fit_multiview_linear(views, t, 1.0)
    assert model.transform(views).shape == (len(x), 2 * 7)
    model.fusion = fastsda.Fusion.MEAN
    assert model.transform(views).shape == (len(x), 7)


def test_evaluate_and_errors():
    x, y = mixture(seed=3)
    report = fastsda.evaluate([x], y.tolist(), "fastsda-linear", [2], [1.0], seed=4)
    assert len(report["folds"]) == 5
    assert report["mean_accuracy"] > 0.8
    with pytest.raises(fastsda.FastSdaError, match="ClassTooSmall"):
        fastsda.assign_subclasses(x[:3], [0, 0, 1], 2, 0)


def test_ionosphere_if_prepared():
    path = os.path.join(os.environ.get("FASTSDA_DATA", "data"), "ionosphere.csv")
    if not os.path.exists(path):
        pytest.skip("ionosphere.csv not prepared")
    x, y, names = fastsda.load_csv(path)
    assert x.shape == (351, 33)
    assert sorted(names) == ["b", "g"]
