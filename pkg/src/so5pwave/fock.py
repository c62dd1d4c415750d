"""Fermionic Fock space of the four modes (k up, k down, -k up, -k down).

Basis states are occupation bitmasks: bit b set means mode b is occupied,
so the space has dimension 16 and the vacuum is index 0.  The mode order
is fixed once and for all as

    (k up) = 0,   (k down) = 1,   (-k up) = 2,   (-k down) = 3,

and Jordan-Wigner sign strings run over the lower mode indices.  Every
operator is a dense 16x16 complex matrix; all functions are pure and the
cached operator matrices are returned read-only.
"""

from __future__ import annotations

import functools

import numpy as np
from scipy.linalg import expm as _scipy_expm

N_MODES = 4
DIM = 16

K_UP, K_DOWN, MK_UP, MK_DOWN = 0, 1, 2, 3

_MODE_TABLE = {
    ("+k", "up"): K_UP,
    ("+k", "down"): K_DOWN,
    ("-k", "up"): MK_UP,
    ("-k", "down"): MK_DOWN,
}

# Largest entry magnitude accepted by matrix_exponential before the
# scaling-and-squaring result can no longer be trusted to 1e-12.
EXP_INPUT_LIMIT = 1e8


def mode_index(momentum_sign: str, spin: str) -> int:
    """Canonical mode index for labels like ('+k', 'up')."""
    try:
        return _MODE_TABLE[(momentum_sign, spin)]
    except KeyError:
        raise ValueError(f"unknown mode ({momentum_sign!r}, {spin!r})") from None


def _frozen(m: np.ndarray) -> np.ndarray:
    m.flags.writeable = False
    return m


@functools.lru_cache(maxsize=None)
def creation_op(mode: int) -> np.ndarray:
    """Matrix of a†_mode with the Jordan-Wigner string over lower modes."""
    if mode not in range(N_MODES):
        raise ValueError(f"mode must be 0..3, got {mode}")
    m = np.zeros((DIM, DIM), dtype=complex)
    bit = 1 << mode
    lower = bit - 1
    for state in range(DIM):
        if state & bit:
            continue
        sign = -1.0 if bin(state & lower).count("1") % 2 else 1.0
        m[state | bit, state] = sign
    return _frozen(m)


@functools.lru_cache(maxsize=None)
def annihilation_op(mode: int) -> np.ndarray:
    return _frozen(dagger(creation_op(mode)))


@functools.lru_cache(maxsize=None)
def number_op(mode: int) -> np.ndarray:
    return _frozen(creation_op(mode) @ annihilation_op(mode))


@functools.lru_cache(maxsize=None)
def total_number_op() -> np.ndarray:
    return _frozen(sum(number_op(m) for m in range(N_MODES)))


def identity() -> np.ndarray:
    return np.eye(DIM, dtype=complex)


def vacuum_state() -> np.ndarray:
    return basis_state(0)


def basis_state(mask: int) -> np.ndarray:
    """Unit vector of the occupation pattern `mask` (modes created in
    increasing index order)."""
    if mask not in range(DIM):
        raise ValueError(f"basis index must be 0..15, got {mask}")
    v = np.zeros(DIM, dtype=complex)
    v[mask] = 1.0
    return v


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b + b @ a


def matrix_exponential(m: np.ndarray) -> np.ndarray:
    """exp(m) by scaling-and-squaring with Pade approximants.

    Inputs with entries above EXP_INPUT_LIMIT in magnitude are rejected;
    for anti-Hermitian m the result is unitary to better than 1e-11.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"square matrix required, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("non-finite entries")
    peak = np.max(np.abs(m)) if m.size else 0.0
    if peak > EXP_INPUT_LIMIT:
        raise ValueError(f"entry magnitude {peak:.3g} exceeds {EXP_INPUT_LIMIT:.0e}")
    return _scipy_expm(m)


def max_abs(m: np.ndarray) -> float:
    """Max-norm used by every residual check in the package."""
    return float(np.max(np.abs(m)))
