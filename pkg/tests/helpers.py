"""Shared assertions."""
import numpy as np


def assert_close(a, b, tol):
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    assert a.shape == b.shape, f"shape {a.shape} != {b.shape}"
    err = float(np.max(np.abs(a - b))) if a.size else 0.0
    assert err <= tol, f"max abs error {err:.3e} > {tol:.1e}"


def spectrum(m):
    return np.linalg.eigvalsh(0.5 * (m + m.T))
