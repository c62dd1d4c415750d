"""Linearized pair Hamiltonian, its coherent-operator diagonalization, and
the closed-form coherent states for one (k, -k) quadruple.

Order parameter convention: the complex 3-vector is written in polar form

    Delta = -(1/2) |Delta| e^{i lam} d,      d real unit vector,

so its gap magnitude is |Delta| = 2 ||Delta||_2 and the quasiparticle
energy is E = sqrt(eps^2 + |Delta|^2).

With the rotation amplitude branch 2r = atan2(|Delta|, eps) in [0, pi]
the coherent operator W = exp(xi d.T† - h.c.), xi = r e^{i lam},
satisfies

    W† H(k) W = +E Q,

which makes W|vac> the lowest eigenstate, with energy -E.  (The opposite
sign would put the coherent state at +E and break the closed-form
amplitudes and the pair-expectation formula below; see the README.)

State notation |alpha, beta>: first slot is the spin content at +k, the
second at -k.  The kets are built by creating the -k constituents first,

    |alpha, beta> = a†_{-k beta} a†_{k alpha} |vac>,
    |updown, updown> = a†_{-k up} a†_{-k down} a†_{k up} a†_{k down} |vac>,

which is the ordering for which the closed-form amplitudes of
coherent_state_closed_form hold verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fock, so5
from .fock import dagger, max_abs

DIAG_TOL = 1e-10

# Pair kets in the convention of the module docstring (basis masks:
# bit0 = k up, bit1 = k down, bit2 = -k up, bit3 = -k down).
KET_EMPTY = fock.basis_state(0)
KET_UP_UP = -fock.basis_state(0b0101)
KET_UP_DOWN = -fock.basis_state(0b1001)
KET_DOWN_UP = -fock.basis_state(0b0110)
KET_DOWN_DOWN = -fock.basis_state(0b1010)
KET_FULL = fock.basis_state(0b1111)
for _k in (KET_EMPTY, KET_UP_UP, KET_UP_DOWN, KET_DOWN_UP, KET_DOWN_DOWN, KET_FULL):
    _k.flags.writeable = False


def y1m(m: int, theta: float, psi: float) -> complex:
    """Spherical harmonics Y_{1m} with the Condon-Shortley phase."""
    if m == 1:
        return -np.sqrt(3.0 / (8.0 * np.pi)) * np.sin(theta) * np.exp(1j * psi)
    if m == 0:
        return np.sqrt(3.0 / (4.0 * np.pi)) * np.cos(theta) + 0j
    if m == -1:
        return np.sqrt(3.0 / (8.0 * np.pi)) * np.sin(theta) * np.exp(-1j * psi)
    raise ValueError(f"m must be -1, 0, 1, got {m}")


@dataclass(frozen=True)
class DVector:
    """Complex 3-vector order parameter with its polar decomposition."""

    vec: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vec, dtype=complex).reshape(3)
        v.flags.writeable = False
        object.__setattr__(self, "vec", v)
        mag, lam, d = _polar_decompose(v)
        object.__setattr__(self, "_polar", (mag, lam, d))

    @property
    def magnitude(self) -> float:
        return self._polar[0]

    @property
    def lam(self) -> float:
        return self._polar[1]

    @property
    def direction(self) -> np.ndarray:
        return self._polar[2]

    @property
    def theta(self) -> float:
        # atan2 form stays accurate at the poles, unlike arccos(d_z)
        d = self.direction
        return float(np.arctan2(np.hypot(d[0], d[1]), d[2]))

    @property
    def phi(self) -> float:
        d = self.direction
        return float(np.arctan2(d[1], d[0]))

    @classmethod
    def from_polar(cls, magnitude: float, lam: float, theta: float, phi: float) -> "DVector":
        if magnitude < 0:
            raise ValueError("magnitude must be >= 0")
        d = np.array([np.sin(theta) * np.cos(phi),
                      np.sin(theta) * np.sin(phi),
                      np.cos(theta)])
        return cls(vec=-0.5 * magnitude * np.exp(1j * lam) * d)


def _polar_decompose(v: np.ndarray):
    """Split v = -(mag/2) e^{i lam} d with d real unit.  Fails for
    non-unitary vectors (those with v.v = 0 but v != 0)."""
    norm = float(np.linalg.norm(v))
    mag = 2.0 * norm
    if norm == 0.0:
        return 0.0, 0.0, np.array([0.0, 0.0, 1.0])
    lam = 0.5 * np.angle(np.dot(v, v))
    d = np.real(v * np.exp(-1j * lam)) / (-0.5 * mag)
    if np.max(np.abs(v * np.exp(-1j * lam) / (-0.5 * mag) - d)) > 1e-9:
        lam += np.pi
        d = np.real(v * np.exp(-1j * lam)) / (-0.5 * mag)
        if np.max(np.abs(v * np.exp(-1j * lam) / (-0.5 * mag) - d)) > 1e-9:
            raise ValueError("vector admits no real polar direction (non-unitary state)")
    return mag, float(lam % (2.0 * np.pi)), d


@dataclass(frozen=True)
class MeanFieldPoint:
    epsilon: float
    delta: DVector

    @property
    def energy(self) -> float:
        """Quasiparticle energy sqrt(eps^2 + |Delta|^2)."""
        return float(np.hypot(self.epsilon, self.delta.magnitude))


@dataclass(frozen=True)
class CoherentParams:
    r: float
    lam: float
    theta: float
    phi: float

    @classmethod
    def from_point(cls, point: MeanFieldPoint) -> "CoherentParams":
        # atan2 branch keeps r in [0, pi/2] and E positive on both sides
        # of the Fermi surface; eps = 0 lands on r = pi/4.
        two_r = np.arctan2(point.delta.magnitude, point.epsilon)
        d = point.delta
        return cls(r=0.5 * two_r, lam=d.lam, theta=d.theta, phi=d.phi)

    @property
    def direction(self) -> np.ndarray:
        return np.array([np.sin(self.theta) * np.cos(self.phi),
                         np.sin(self.theta) * np.sin(self.phi),
                         np.cos(self.theta)])


def build_Hk(point: MeanFieldPoint, gen: so5.GeneratorSet | None = None) -> np.ndarray:
    """H(k) = eps Q + Delta . T† + Delta* . T (Hermitian 16x16)."""
    if gen is None:
        gen = so5.build_generators()
    h = point.epsilon * gen.q.astype(complex)
    for i in range(3):
        di = point.delta.vec[i]
        h = h + di * gen.tdag[i] + np.conj(di) * gen.t[i]
    return h


def coherent_operator(p: CoherentParams, gen: so5.GeneratorSet | None = None) -> np.ndarray:
    """W = exp(xi d.T† - h.c.), xi = r e^{i lam}; unitary."""
    if gen is None:
        gen = so5.build_generators()
    xi = p.r * np.exp(1j * p.lam)
    a = np.zeros((fock.DIM, fock.DIM), dtype=complex)
    d = p.direction
    for i in range(3):
        a += xi * d[i] * gen.tdag[i]
    return fock.matrix_exponential(a - dagger(a))


def coherent_state(p: CoherentParams, gen: so5.GeneratorSet | None = None) -> np.ndarray:
    """W|vac> from the matrix exponential."""
    return coherent_operator(p, gen) @ fock.vacuum_state()


def coherent_state_closed_form(p: CoherentParams) -> np.ndarray:
    """Closed-form expansion of W|vac>:

    cos^2 r |0,0> - e^{2i lam} sin^2 r |ud,ud>
      + (i/2) e^{i lam} sin 2r { cos Th (|u,d> + |d,u>)
                                 - sin Th e^{-i Phi} |u,u>
                                 + sin Th e^{+i Phi} |d,d> }.
    """
    cos2 = np.cos(p.r) ** 2
    sin2 = np.sin(p.r) ** 2
    s2r = np.sin(2.0 * p.r)
    phase = np.exp(1j * p.lam)
    mid = 0.5j * phase * s2r
    return (
        cos2 * KET_EMPTY
        - phase ** 2 * sin2 * KET_FULL
        + mid * (np.cos(p.theta) * (KET_UP_DOWN + KET_DOWN_UP)
                 - np.sin(p.theta) * np.exp(-1j * p.phi) * KET_UP_UP
                 + np.sin(p.theta) * np.exp(1j * p.phi) * KET_DOWN_DOWN)
    )


def expectation_T(state: np.ndarray, gen: so5.GeneratorSet | None = None) -> np.ndarray:
    """<state| T_i |state> as a complex 3-vector."""
    if gen is None:
        gen = so5.build_generators()
    return np.array([np.vdot(state, gen.t[i] @ state) for i in range(3)])


def pair_expectation_formula(p: CoherentParams) -> np.ndarray:
    """<T> = sin 2r e^{i lam} d for the coherent state."""
    return np.sin(2.0 * p.r) * np.exp(1j * p.lam) * p.direction


@dataclass
class DiagReport:
    epsilon: float
    delta_magnitude: float
    lam: float
    theta: float
    phi: float
    residual: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "delta_magnitude": self.delta_magnitude,
            "angles": {"lam": self.lam, "theta": self.theta, "phi": self.phi},
            "residual": self.residual,
            "passed": self.passed,
        }


def verify_diagonalization(point: MeanFieldPoint,
                           gen: so5.GeneratorSet | None = None,
                           tol: float = DIAG_TOL) -> DiagReport:
    """Residual of W† H(k) W = E Q at the given mean-field point."""
    if gen is None:
        gen = so5.build_generators()
    p = CoherentParams.from_point(point)
    w = coherent_operator(p, gen)
    h = build_Hk(point, gen)
    resid = max_abs(dagger(w) @ h @ w - point.energy * gen.q)
    return DiagReport(
        epsilon=point.epsilon,
        delta_magnitude=point.delta.magnitude,
        lam=p.lam, theta=p.theta, phi=p.phi,
        residual=resid,
        passed=bool(resid < tol),
    )


def e_star(point: MeanFieldPoint, temperature: float = 0.0) -> float:
    """c-number offset eps - Delta . <T†> of the linearized Hamiltonian."""
    tvec = thermal_pair_expectation(point, temperature)
    return float(point.epsilon - np.real(np.dot(point.delta.vec, np.conj(tvec))))


def thermal_pair_expectation(point: MeanFieldPoint, temperature: float) -> np.ndarray:
    """<T> = sin 2r e^{i lam} tanh(E/2T) d at the mean-field point
    (tanh factor = 1 at T = 0)."""
    p = CoherentParams.from_point(point)
    th = 1.0 if temperature == 0.0 else np.tanh(point.energy / (2.0 * temperature))
    return pair_expectation_formula(p) * th


def bw_state(epsilon: float, delta_mag: float, lam: float,
             theta_k: float, psi_k: float) -> np.ndarray:
    """Pair wavefunction of the isotropic-gap branch (d along the momentum
    direction) at momentum angles (theta_k, psi_k):

    (E+eps)/2E |0,0> - e^{2i lam} (E-eps)/2E |ud,ud>
      - e^{i lam} (i |Delta| / 2E) sqrt(8 pi / 3)
        { Y11 |d,d> - Y10/sqrt2 (|u,d> + |d,u>) + Y1-1 |u,u> }.
    """
    if delta_mag < 0:
        raise ValueError("delta_mag must be >= 0")
    e = float(np.hypot(epsilon, delta_mag))
    if e == 0.0:
        return KET_EMPTY.copy()
    phase = np.exp(1j * lam)
    pref = -phase * (1j * delta_mag / (2.0 * e)) * np.sqrt(8.0 * np.pi / 3.0)
    return (
        (e + epsilon) / (2.0 * e) * KET_EMPTY
        - phase ** 2 * (e - epsilon) / (2.0 * e) * KET_FULL
        + pref * (y1m(1, theta_k, psi_k) * KET_DOWN_DOWN
                  - y1m(0, theta_k, psi_k) / np.sqrt(2.0) * (KET_UP_DOWN + KET_DOWN_UP)
                  + y1m(-1, theta_k, psi_k) * KET_UP_UP)
    )


def nonesp_state(epsilon: float, theta_k: float, psi_k: float,
                 scale: float = 1.0) -> np.ndarray:
    """Pair wavefunction of the non-equal-spin-pairing branch, where the
    gap is |Delta| e^{i(lam + pi/2)} = scale * Y11 and sin Theta = 0:

    (E+eps)/2E |0,0> + e^{2i psi} (E-eps)/2E |ud,ud>
      + scale * Y11 / 2E (|u,d> + |d,u>),

    with no equal-spin amplitudes.  Equals the coherent state at
    Theta = 0, lam = psi_k + pi/2.
    """
    y11 = scale * y1m(1, theta_k, psi_k)
    delta_mag = abs(y11)
    e = float(np.hypot(epsilon, delta_mag))
    if e == 0.0:
        return KET_EMPTY.copy()
    return (
        (e + epsilon) / (2.0 * e) * KET_EMPTY
        + np.exp(2j * psi_k) * (e - epsilon) / (2.0 * e) * KET_FULL
        + y11 / (2.0 * e) * (KET_UP_DOWN + KET_DOWN_UP)
    )


def zeeman_op(gen: so5.GeneratorSet | None = None) -> np.ndarray:
    """n_{k up} - n_{k down} + n_{-k up} - n_{-k down} (= 2 Sbar_z)."""
    if gen is None:
        gen = so5.build_generators()
    return 2.0 * gen.sbar[2]


def field_hamiltonian(point: MeanFieldPoint, mu_b: float,
                      gen: so5.GeneratorSet | None = None) -> np.ndarray:
    """H(k) minus the Zeeman coupling mu.B of both momenta of the pair."""
    if gen is None:
        gen = so5.build_generators()
    return build_Hk(point, gen) - mu_b * zeeman_op(gen)


@dataclass
class FieldDiagReport:
    epsilon: float
    delta_magnitude: float
    mu_b: float
    residual: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon,
            "delta_magnitude": self.delta_magnitude,
            "muB": self.mu_b,
            "residual": self.residual,
            "passed": self.passed,
        }


def verify_field_diagonalization(point: MeanFieldPoint, mu_b: float,
                                 gen: so5.GeneratorSet | None = None,
                                 tol: float = DIAG_TOL) -> FieldDiagReport:
    """Residual between W† H_B W (with the zero-field W) and the claimed
    diagonal form

        E/2 (1 + muB/eps)(n_{k dn} + n_{-k dn})
      + E/2 (1 - muB/eps)(n_{k up} + n_{-k up}) - E.

    This records the claim's accuracy per point; it does not assert it.
    The claimed form is singular at eps = 0, which is rejected.
    """
    if gen is None:
        gen = so5.build_generators()
    if point.epsilon == 0.0:
        raise ValueError("claimed diagonal form is singular at eps = 0")
    p = CoherentParams.from_point(point)
    w = coherent_operator(p, gen)
    hb = field_hamiltonian(point, mu_b, gen)
    e = point.energy
    ratio = mu_b / point.epsilon
    n_dn = fock.number_op(fock.K_DOWN) + fock.number_op(fock.MK_DOWN)
    n_up = fock.number_op(fock.K_UP) + fock.number_op(fock.MK_UP)
    claimed = (0.5 * e * (1.0 + ratio) * n_dn
               + 0.5 * e * (1.0 - ratio) * n_up
               - e * np.eye(fock.DIM))
    resid = max_abs(dagger(w) @ hb @ w - claimed)
    return FieldDiagReport(
        epsilon=point.epsilon,
        delta_magnitude=point.delta.magnitude,
        mu_b=mu_b,
        residual=resid,
        passed=bool(resid < tol),
    )
