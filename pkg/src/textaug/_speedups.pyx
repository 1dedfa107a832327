# cython: language_level=3
"""Compiled numeric kernels: CSR logistic-regression training and
greedy-matching embedding scores.

Mirrors textaug._speedups_py contract-for-contract; the tests assert parity.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, fabs, isfinite, log1p, sqrt

from textaug.errors import DivergenceError

cnp.import_array()

BACKEND_NAME = "compiled"


def logreg_fit(double[::1] data, int[::1] indices, int[::1] indptr,
               int n_cols, double[:, ::1] Y, double lr, double l2, int epochs):
    """Full-batch gradient descent for one-vs-rest logistic regression.

    Same contract as the python backend: returns (W, b, losses) with
    losses[k] = loss before the k-th update.
    """
    cdef int n_rows = indptr.shape[0] - 1
    cdef int n_labels = Y.shape[1]
    W_arr = np.zeros((n_labels, n_cols), dtype=np.float64)
    b_arr = np.zeros(n_labels, dtype=np.float64)
    losses_arr = np.zeros(epochs + 1, dtype=np.float64)
    Z_arr = np.zeros((n_rows, n_labels), dtype=np.float64)
    G_arr = np.zeros((n_labels, n_cols), dtype=np.float64)
    db_arr = np.zeros(n_labels, dtype=np.float64)
    cdef double[:, ::1] W = W_arr
    cdef double[::1] b = b_arr
    cdef double[::1] losses = losses_arr
    cdef double[:, ::1] Z = Z_arr
    cdef double[:, ::1] G = G_arr
    cdef double[::1] db = db_arr
    cdef int epoch, i, l, k, v
    cdef double z, zmax, p, g, acc, loss

    for epoch in range(epochs + 1):
        for i in range(n_rows):
            for l in range(n_labels):
                z = b[l]
                for k in range(indptr[i], indptr[i + 1]):
                    z += data[k] * W[l, indices[k]]
                Z[i, l] = z
        loss = 0.0
        for l in range(n_labels):
            acc = 0.0
            for i in range(n_rows):
                z = Z[i, l]
                zmax = z if z > 0.0 else 0.0
                acc += zmax - z * Y[i, l] + log1p(exp(-fabs(z)))
            loss += acc / n_rows
        acc = 0.0
        for l in range(n_labels):
            for v in range(n_cols):
                acc += W[l, v] * W[l, v]
        loss += 0.5 * l2 * acc
        if not isfinite(loss):
            raise DivergenceError(epoch)
        losses[epoch] = loss
        if epoch == epochs:
            break
        G_arr.fill(0.0)
        db_arr.fill(0.0)
        for i in range(n_rows):
            for l in range(n_labels):
                z = Z[i, l]
                if z >= 0.0:
                    p = 1.0 / (1.0 + exp(-z))
                else:
                    p = exp(z) / (1.0 + exp(z))
                g = p - Y[i, l]
                db[l] += g
                for k in range(indptr[i], indptr[i + 1]):
                    G[l, indices[k]] += data[k] * g
        for l in range(n_labels):
            b[l] -= lr * db[l] / n_rows
            for v in range(n_cols):
                W[l, v] -= lr * (G[l, v] / n_rows + l2 * W[l, v])
    return W_arr, b_arr, losses_arr


def bertscore_scores(double[:, ::1] ref, double[:, ::1] gen, double eps):
    """Greedy-matching precision, recall, and F1 over token vectors."""
    cdef int n_ref = ref.shape[0]
    cdef int n_gen = gen.shape[0]
    cdef int dim = ref.shape[1]
    if gen.shape[1] != dim:
        raise ValueError(
            f"token vector dimensions differ: {dim} vs {gen.shape[1]}"
        )
    ref_norms_arr = np.zeros(n_ref, dtype=np.float64)
    gen_norms_arr = np.zeros(n_gen, dtype=np.float64)
    best_ref_arr = np.full(n_ref, -2.0, dtype=np.float64)
    best_gen_arr = np.full(n_gen, -2.0, dtype=np.float64)
    cdef double[::1] ref_norms = ref_norms_arr
    cdef double[::1] gen_norms = gen_norms_arr
    cdef double[::1] best_ref = best_ref_arr
    cdef double[::1] best_gen = best_gen_arr
    cdef int i, j, d
    cdef double acc, sim, precision, recall

    for i in range(n_ref):
        acc = 0.0
        for d in range(dim):
            acc += ref[i, d] * ref[i, d]
        acc = sqrt(acc)
        ref_norms[i] = acc if acc > eps else eps
    for j in range(n_gen):
        acc = 0.0
        for d in range(dim):
            acc += gen[j, d] * gen[j, d]
        acc = sqrt(acc)
        gen_norms[j] = acc if acc > eps else eps
    for i in range(n_ref):
        for j in range(n_gen):
            acc = 0.0
            for d in range(dim):
                acc += ref[i, d] * gen[j, d]
            sim = acc / (ref_norms[i] * gen_norms[j])
            if sim > best_ref[i]:
                best_ref[i] = sim
            if sim > best_gen[j]:
                best_gen[j] = sim
    acc = 0.0
    for i in range(n_ref):
        acc += best_ref[i]
    recall = acc / n_ref
    acc = 0.0
    for j in range(n_gen):
        acc += best_gen[j]
    precision = acc / n_gen
    if precision + recall == 0.0:
        return precision, recall, 0.0
    return precision, recall, 2.0 * precision * recall / (precision + recall)
