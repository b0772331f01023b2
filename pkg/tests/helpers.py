"""Shared randomized constructions for the test suite (all seeded)."""

import numpy as np

from ncprism.matkernel import dagger, hermitize, opnorm


def random_hermitian(rng, n):
    return hermitize(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))


def random_hermitian_contraction(rng, n, scale=None):
    h = random_hermitian(rng, n)
    norm = opnorm(h)
    if norm == 0:
        return h
    return h / norm * (scale if scale is not None else rng.uniform(0.0, 1.0))


def random_unitary(rng, n):
    raw = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(raw)
    # Fix the phase so the distribution is Haar and the output deterministic.
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_isometry(rng, n_from, n_to):
    raw = rng.standard_normal((n_to, n_from)) + 1j * rng.standard_normal((n_to, n_from))
    q, _ = np.linalg.qr(raw)
    return q


def random_psd_trace_one(rng, n):
    raw = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = raw @ dagger(raw)
    return hermitize(rho / np.trace(rho).real)
