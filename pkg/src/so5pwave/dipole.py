"""Dipole-interaction kernel in Cartesian and spherical (Wigner) form.

The Cartesian kernel is K_ij(q) = delta_ij - 3 q_i q_j for the unit
vector q along n - n'; its eigenvalues are {1, 1, -2} with -2 along q.

Spherical basis: e_{+1} = -(x + iy)/sqrt2, e_0 = z, e_{-1} = (x - iy)/sqrt2
(Condon-Shortley).  The vector-component maps used by the pair columns,

    T column:    ( T_-/2i,  i T_z/sqrt2,  i T_+/2 )     = (i/sqrt2) U T
    gap column:  ( D_upup,  sqrt2 D_updown,  D_downdown ) = sqrt2 U D

are both proportional to the same unitary U, so conjugating a Cartesian
kernel into the spherical basis is U K U† regardless of which column it
acts on.

Verified identity (kernel_equivalence):

    (1/2) I + (3/2) D1(alpha=psi, beta=2 omega, gamma=pi - psi)
        = U (3 q q^T - I) U†                      (q in polar form
          (sin omega cos psi, sin omega sin psi, cos omega)),

i.e. the Wigner form equals the spherical conjugation of *minus* the
Cartesian kernel.  CARTESIAN_KERNEL_SIGN records that overall -1; the
residual of the signed identity is uniformly zero over q.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .meanfield import DVector, MeanFieldPoint

EQUIV_TOL = 1e-10

# Overall sign relating the Wigner form to U (delta - 3qq) U†.
CARTESIAN_KERNEL_SIGN = -1.0

# Cartesian -> spherical (m = +1, 0, -1) unitary change of basis.
SPHERICAL_U = np.array([
    [-1.0 / np.sqrt(2.0), 1j / np.sqrt(2.0), 0.0],
    [0.0, 0.0, 1.0],
    [1.0 / np.sqrt(2.0), 1j / np.sqrt(2.0), 0.0],
])
# Printed column maps: coefficient rows acting on Cartesian (x, y, z).
T_COLUMN_MAP = np.array([
    [1.0 / 2j, -1j / 2j, 0.0],        # T_-/2i
    [0.0, 0.0, 1j / np.sqrt(2.0)],    # i T_z / sqrt2
    [1j / 2.0, 1j * 1j / 2.0, 0.0],   # i T_+ / 2
])
GAP_COLUMN_MAP = np.array([
    [-1.0, 1j, 0.0],                  # D_upup   = -Dx + i Dy
    [0.0, 0.0, np.sqrt(2.0)],         # sqrt2 D_updown, D_updown = Dz
    [1.0, 1j, 0.0],                   # D_downdown = Dx + i Dy
])


def qhat(n: np.ndarray, nprime: np.ndarray) -> np.ndarray:
    """Unit vector along n - n'; undefined (rejected) for n = n'."""
    n = np.asarray(n, dtype=float)
    nprime = np.asarray(nprime, dtype=float)
    diff = n - nprime
    norm = np.linalg.norm(diff)
    if norm < 1e-12:
        raise ValueError("q direction undefined for coincident momenta")
    return diff / norm


def cartesian_kernel(q: np.ndarray) -> np.ndarray:
    """delta_ij - 3 q_i q_j for unit q."""
    q = np.asarray(q, dtype=float)
    if abs(np.linalg.norm(q) - 1.0) > 1e-9:
        raise ValueError("q must be a unit vector")
    return np.eye(3) - 3.0 * np.outer(q, q)


@dataclass(frozen=True)
class EulerAngles:
    alpha: float
    beta: float
    gamma: float

    @classmethod
    def from_qhat(cls, q: np.ndarray) -> "EulerAngles":
        """alpha = psi, beta = 2 omega, gamma = pi - psi from the polar
        angles of q."""
        q = np.asarray(q, dtype=float)
        if abs(np.linalg.norm(q) - 1.0) > 1e-9:
            raise ValueError("q must be a unit vector")
        omega = np.arctan2(np.hypot(q[0], q[1]), q[2])
        psi = np.arctan2(q[1], q[0])
        return cls(alpha=psi, beta=2.0 * omega, gamma=np.pi - psi)


def wigner_small_d1(beta: float) -> np.ndarray:
    """Spin-1 small-d matrix in the (m = +1, 0, -1) ordering."""
    c, s = np.cos(beta), np.sin(beta)
    ch2 = np.cos(0.5 * beta) ** 2
    sh2 = np.sin(0.5 * beta) ** 2
    rt = s / np.sqrt(2.0)
    return np.array([
        [ch2, -rt, sh2],
        [rt, c, -rt],
        [sh2, rt, ch2],
    ])


def wigner_d1(e: EulerAngles) -> np.ndarray:
    """D1_{m'm}(alpha, beta, gamma) = e^{-i m' alpha} d1_{m'm}(beta) e^{-i m gamma}."""
    m = np.array([1.0, 0.0, -1.0])
    left = np.exp(-1j * m * e.alpha)
    right = np.exp(-1j * m * e.gamma)
    return left[:, None] * wigner_small_d1(e.beta) * right[None, :]


def rotation_z(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rotation_y(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def wigner_d1_from_cartesian(e: EulerAngles) -> np.ndarray:
    """Independent construction: conjugate R_z(a) R_y(b) R_z(g) into the
    spherical basis."""
    r = rotation_z(e.alpha) @ rotation_y(e.beta) @ rotation_z(e.gamma)
    return SPHERICAL_U @ r @ SPHERICAL_U.conj().T


def wigner_form(q: np.ndarray) -> np.ndarray:
    """(1/2) I + (3/2) D1 at the Euler angles read off q."""
    return 0.5 * np.eye(3) + 1.5 * wigner_d1(EulerAngles.from_qhat(q))


def spherical_conjugated_kernel(q: np.ndarray) -> np.ndarray:
    """U (delta - 3 q q) U†."""
    return SPHERICAL_U @ cartesian_kernel(q) @ SPHERICAL_U.conj().T


@dataclass
class EquivReport:
    q: np.ndarray
    euler: EulerAngles
    residual: float              # of the signed identity (uniformly ~0)
    residual_as_printed: float   # against +U (delta - 3qq) U†, q-dependent
    kernel_sign: float = CARTESIAN_KERNEL_SIGN

    def passed(self, tol: float = EQUIV_TOL) -> bool:
        return self.residual < tol

    def to_dict(self) -> dict:
        return {
            "q": list(map(float, self.q)),
            "euler": [self.euler.alpha, self.euler.beta, self.euler.gamma],
            "residual": self.residual,
            "residual_as_printed": self.residual_as_printed,
            "kernel_sign": self.kernel_sign,
        }


def kernel_equivalence(q: np.ndarray) -> EquivReport:
    """Compare the Wigner form with the spherical conjugation of the
    Cartesian kernel.  The identity holds with the overall sign
    CARTESIAN_KERNEL_SIGN; both residuals are reported."""
    q = np.asarray(q, dtype=float)
    e = EulerAngles.from_qhat(q)
    kw = wigner_form(q)
    kc = spherical_conjugated_kernel(q)
    return EquivReport(
        q=q,
        euler=e,
        residual=float(np.max(np.abs(kw - CARTESIAN_KERNEL_SIGN * kc))),
        residual_as_printed=float(np.max(np.abs(kw - kc))),
    )


def dipole_meanfield_point(pair_expectation: np.ndarray, q: np.ndarray,
                           gamma_const: float, epsilon: float) -> MeanFieldPoint:
    """Mean-field point with the dipole-redefined order parameter

        Delta_i = gamma_const * sum_j (delta_ij - 3 q_i q_j) <T_j>,

    ready for the usual diagonalization check."""
    tvec = np.asarray(pair_expectation, dtype=complex)
    delta = gamma_const * cartesian_kernel(q) @ tvec
    return MeanFieldPoint(epsilon=epsilon, delta=DVector(vec=delta))
