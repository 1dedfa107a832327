"""Numpy implementations of the numeric hot paths.

This module is the reference backend: the compiled extension implements the
same contracts loop-for-loop and is checked against it in the tests. Import
through textaug.kernels, which picks the fastest available backend.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.sparse import csr_matrix
from scipy.special import expit

from .errors import DivergenceError

BACKEND_NAME = "python"


def _as_csr(data, indices, indptr, n_cols) -> csr_matrix:
    n_rows = len(indptr) - 1
    return csr_matrix(
        (np.asarray(data, dtype=np.float64),
         np.asarray(indices, dtype=np.int32),
         np.asarray(indptr, dtype=np.int32)),
        shape=(n_rows, n_cols),
    )


def _bce_loss(Z: np.ndarray, Y: np.ndarray, W: np.ndarray, l2: float) -> float:
    # max(z,0) - z*y + log(1+exp(-|z|)) is the overflow-safe form of BCE on logits
    per_elem = np.maximum(Z, 0.0) - Z * Y + np.log1p(np.exp(-np.abs(Z)))
    return float(np.sum(np.mean(per_elem, axis=0)) + 0.5 * l2 * np.sum(W * W))


def logreg_fit(data, indices, indptr, n_cols, Y, lr, l2, epochs):
    """Full-batch gradient descent for one-vs-rest logistic regression.

    Features arrive as raw CSR arrays; Y is a dense N x L float64 0/1 matrix.
    Returns (W: L x V, b: L, losses: epochs+1) where losses[k] is the loss
    before the k-th update, so losses[-1] is the loss of the returned model.
    """
    X = _as_csr(data, indices, indptr, n_cols)
    Y = np.asarray(Y, dtype=np.float64)
    n_rows = X.shape[0]
    n_labels = Y.shape[1]
    W = np.zeros((n_labels, n_cols), dtype=np.float64)
    b = np.zeros(n_labels, dtype=np.float64)
    losses = np.zeros(epochs + 1, dtype=np.float64)
    for epoch in range(epochs + 1):
        Z = X @ W.T + b
        loss = _bce_loss(Z, Y, W, l2)
        if not math.isfinite(loss):
            raise DivergenceError(epoch)
        losses[epoch] = loss
        if epoch == epochs:
            break
        P = expit(Z)
        G = (X.T @ (P - Y)).T / n_rows + l2 * W
        db = np.mean(P - Y, axis=0)
        W -= lr * G
        b -= lr * db
    return W, b, losses


def logreg_loss_grad(data, indices, indptr, n_cols, Y, W, b, l2):
    """Loss and analytic gradient at an arbitrary point, for gradient checks."""
    X = _as_csr(data, indices, indptr, n_cols)
    Y = np.asarray(Y, dtype=np.float64)
    W = np.asarray(W, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n_rows = X.shape[0]
    Z = X @ W.T + b
    loss = _bce_loss(Z, Y, W, l2)
    P = expit(Z)
    dW = (X.T @ (P - Y)).T / n_rows + l2 * W
    db = np.mean(P - Y, axis=0)
    return loss, dW, db


def bertscore_scores(ref, gen, eps):
    """Greedy-matching precision, recall, and F1 over token vectors.

    ref and gen are R x d and G x d float64 matrices, one row per token.
    Recall averages, over ref rows, the best guarded cosine against any gen
    row; precision is the mirror image.
    """
    ref = np.ascontiguousarray(ref, dtype=np.float64)
    gen = np.ascontiguousarray(gen, dtype=np.float64)
    if ref.shape[1] != gen.shape[1]:
        raise ValueError(
            f"token vector dimensions differ: {ref.shape[1]} vs {gen.shape[1]}"
        )
    ref_norms = np.maximum(np.sqrt(np.sum(ref * ref, axis=1)), eps)
    gen_norms = np.maximum(np.sqrt(np.sum(gen * gen, axis=1)), eps)
    sims = (ref @ gen.T) / np.outer(ref_norms, gen_norms)
    recall = float(np.mean(np.max(sims, axis=1)))
    precision = float(np.mean(np.max(sims, axis=0)))
    if precision + recall == 0.0:
        return precision, recall, 0.0
    f1 = 2.0 * precision * recall / (precision + recall)
    return precision, recall, f1
