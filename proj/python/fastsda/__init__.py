"""Subclass discriminant analysis through target regression.

Arrays use NumPy convention: one sample per row.
"""

import numpy as np

from ._fastsda import (
    FastSdaError,
    Fusion,
    KernelSolver,
    MultiViewModel,
    Normalization,
    ProjectionModel,
    assign_subclasses,
    between_class_laplacian,
    evaluate,
    fit_approx_kernel,
    fit_kernel,
    fit_linear,
    fit_multiview_kernel,
    fit_multiview_linear,
    knn_predict,
    load_csv,
    load_model,
    make_targets,
    oracle_check,
)

__all__ = [
    "FastSDA",
    "FastSdaError",
    "Fusion",
    "KernelSolver",
    "MultiViewModel",
    "Normalization",
    "ProjectionModel",
    "assign_subclasses",
    "between_class_laplacian",
    "evaluate",
    "fit_approx_kernel",
    "fit_kernel",
    "fit_linear",
    "fit_multiview_kernel",
    "fit_multiview_linear",
    "knn_predict",
    "load_csv",
    "load_model",
    "make_targets",
    "oracle_check",
]


class FastSDA:
    """Estimator wrapper: cluster each class, draw targets, regress.

    kernel is None (linear), "rbf" (exact) or "rbf-approx" (prototypes).
    """

    def __init__(self, z=2, alpha=1.0, kernel=None, sigma=0.0, prototypes=100, seed=0):
        self.z = z
        self.alpha = alpha
        self.kernel = kernel
        self.sigma = sigma
        self.prototypes = prototypes
        self.seed = seed

    def fit(self, x, y):
        x = np.ascontiguousarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        classes, y_dense = np.unique(y, return_inverse=True)
        labels = y_dense.tolist()
        sub = assign_subclasses(x, labels, self.z, self.seed)
        n, dim = x.shape
        feature_dim = {None: dim, "rbf": n, "rbf-approx": min(self.prototypes, n)}[self.kernel]
        d = min(len(classes) * self.z - 1, feature_dim, n)
        t = make_targets(labels, [sub], self.z, d, self.seed)
        if self.kernel is None:
            self.model_ = fit_linear(x, t, self.alpha)
        elif self.kernel == "rbf":
            self.model_ = fit_kernel(x, t, self.alpha, self.sigma)
        else:
            self.model_ = fit_approx_kernel(x, t, self.alpha, self.sigma, min(self.prototypes, n), seed=self.seed)
        self.classes_ = classes
        self.subclasses_ = np.asarray(sub)
        return self

    def transform(self, x):
        return self.model_.transform(np.ascontiguousarray(x, dtype=np.float64))

    def fit_transform(self, x, y):
        return self.fit(x, y).transform(x)
