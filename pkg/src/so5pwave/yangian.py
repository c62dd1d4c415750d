"""Two-spin Yangian operators and the singlet/triplet transition identities.

The states are spinor-valued functions of the unit direction k, sampled
pointwise in the basis (|uu>, |ud>, |du>, |dd>):

    Psi0(k) = sqrt(3) Y00 (|ud> - |du>)/sqrt2       (direction independent)
    Psi1(k) = (1/sqrt3) [ Y1-1 |uu> - Y10/sqrt2 (|ud> + |du>) + Y11 |dd> ]
            = (1/sqrt8pi) [ k_- |uu> - k_z (|ud> + |du>) - k_+ |dd> ],

with Condon-Shortley harmonics.  Psi1 is unit normalized; Psi0 carries
the sqrt(3) that makes the transition identities below hold with unit
prefactor (its angular norm-square is 3, not 1).

For J_a = mu1 S_a x 1 + mu2 1 x S_a - (ih/4) eps_abc (S_b x S_c - S_c x S_b)
and c+ = mu2 - mu1 + h/2, c- = mu2 - mu1 - h/2:

    k_pm J_mp Psi0 = c+ Y_{1 pm1} chi_{1 mp1}
    k_z  J_z  Psi0 = -(c+/2) Y10 chi_10
    (k.J) Psi0     = (sqrt3/2) c+ Psi1
    (k.J) Psi1     = (c-/2) Y00 chi_00   -- zero only when h = 2(mu2 - mu1).

The translation J -> J + eta S changes none of these: (k.S) annihilates
both the singlet and, pointwise in k, the total-angular-momentum-zero
state Psi1.  find_translation therefore always reports a degenerate
normal equation and returns eta = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .meanfield import y1m

EQ18_TOL = 1e-12
EQ19_TOL = 1e-10

_S_HALF = {
    "x": 0.5 * np.array([[0, 1], [1, 0]], dtype=complex),
    "y": 0.5 * np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": 0.5 * np.array([[1, 0], [0, -1]], dtype=complex),
}
_EYE2 = np.eye(2, dtype=complex)

# Total spin on the two-spin space, basis (uu, ud, du, dd).
SPIN = tuple(
    np.kron(_S_HALF[a], _EYE2) + np.kron(_EYE2, _S_HALF[a]) for a in ("x", "y", "z")
)

CHI_SINGLET = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2.0)
CHI_TRIPLET = {
    +1: np.array([1, 0, 0, 0], dtype=complex),
    0: np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2.0),
    -1: np.array([0, 0, 0, 1], dtype=complex),
}

Y00 = 1.0 / np.sqrt(4.0 * np.pi)
PSI0_NORMSQ = 3.0  # integral of |Psi0|^2 over the sphere


@dataclass(frozen=True)
class YangianOp:
    mu1: float
    mu2: float
    h: float
    j: tuple  # three 4x4 matrices
    eta: float = 0.0

    @property
    def transition_coefficient(self) -> float:
        return self.mu2 - self.mu1 + 0.5 * self.h

    @property
    def annihilation_coefficient(self) -> float:
        return self.mu2 - self.mu1 - 0.5 * self.h

    def translated(self) -> tuple:
        """J + eta S."""
        return tuple(self.j[a] + self.eta * SPIN[a] for a in range(3))


def build_yangian(mu1: float, mu2: float, h: float) -> YangianOp:
    axes = ("x", "y", "z")
    j = []
    for a in range(3):
        m = mu1 * np.kron(_S_HALF[axes[a]], _EYE2) + mu2 * np.kron(_EYE2, _S_HALF[axes[a]])
        b, c = (a + 1) % 3, (a + 2) % 3
        cross = (np.kron(_S_HALF[axes[b]], _S_HALF[axes[c]])
                 - np.kron(_S_HALF[axes[c]], _S_HALF[axes[b]]))
        j.append(m - 0.5j * h * cross)
    return YangianOp(mu1=mu1, mu2=mu2, h=h, j=tuple(j))


def adjoint_residual(op: YangianOp) -> float:
    """Largest residual of [S_a, J_b] = i eps_abc J_c."""
    worst = 0.0
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1.0
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1.0
    for a in range(3):
        for b in range(3):
            lhs = SPIN[a] @ op.j[b] - op.j[b] @ SPIN[a]
            rhs = sum(1j * eps[a, b, c] * op.j[c] for c in range(3))
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def psi0(khat=None) -> np.ndarray:
    """sqrt(3) Y00 times the singlet; the argument is accepted for
    signature symmetry with psi1 and ignored."""
    return np.sqrt(PSI0_NORMSQ) * Y00 * CHI_SINGLET


def psi1(khat) -> np.ndarray:
    """Harmonic form of the triplet J=0 state at direction khat."""
    theta = np.arctan2(np.hypot(khat[0], khat[1]), khat[2])
    psi = np.arctan2(khat[1], khat[0])
    return (y1m(-1, theta, psi) * CHI_TRIPLET[+1]
            - y1m(0, theta, psi) * CHI_TRIPLET[0]
            + y1m(1, theta, psi) * CHI_TRIPLET[-1]) / np.sqrt(3.0)


def psi1_matrix_form(khat) -> np.ndarray:
    """Direction-component form: (k_-, -k_z; -k_z, -k_+)/sqrt(8 pi),
    entries being the amplitudes of |alpha beta>."""
    kx, ky, kz = khat
    km, kp = kx - 1j * ky, kx + 1j * ky
    return np.array([km, -kz, -kz, -kp]) / np.sqrt(8.0 * np.pi)


def sample_directions(n: int, rng: np.random.Generator,
                      pole_margin: float = 1e-6) -> np.ndarray:
    """n unit vectors, uniform on the sphere, excluding the poles."""
    z = rng.uniform(-1.0 + pole_margin, 1.0 - pole_margin, size=n)
    psi = rng.uniform(0.0, 2.0 * np.pi, size=n)
    s = np.sqrt(1.0 - z * z)
    return np.stack([s * np.cos(psi), s * np.sin(psi), z], axis=-1)


@dataclass
class IdentityReport:
    identity: str
    max_residual: float
    n_samples: int
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "max_residual": self.max_residual,
            "n_samples": self.n_samples,
            "params": self.params,
        }


def _params_dict(op: YangianOp) -> dict:
    return {"mu1": op.mu1, "mu2": op.mu2, "h": op.h, "eta": op.eta}


def verify_eq18(mu1: float, mu2: float, h: float, samples: np.ndarray) -> list:
    """Pointwise residuals of the three lowering identities

        k_+ J_- Psi0 = c+ Y11 chi_{1,-1}
        k_- J_+ Psi0 = c+ Y1-1 chi_{1,+1}
        k_z J_z Psi0 = -(c+/2) Y10 chi_10
    """
    samples = np.asarray(samples, dtype=float)
    if len(samples) < 20:
        raise ValueError("need at least 20 sampled directions")
    if np.min(np.hypot(samples[:, 0], samples[:, 1])) < 1e-9:
        raise ValueError("samples must avoid the poles")
    op = build_yangian(mu1, mu2, h)
    cp = op.transition_coefficient
    jx, jy, jz = op.j
    jp, jm = jx + 1j * jy, jx - 1j * jy
    p0 = psi0()

    worst = {"raising": 0.0, "lowering": 0.0, "z": 0.0}
    for k in samples:
        theta = np.arctan2(np.hypot(k[0], k[1]), k[2])
        psi = np.arctan2(k[1], k[0])
        kp, km, kz = k[0] + 1j * k[1], k[0] - 1j * k[1], k[2]
        worst["raising"] = max(worst["raising"], float(np.max(np.abs(
            kp * (jm @ p0) - cp * y1m(1, theta, psi) * CHI_TRIPLET[-1]))))
        worst["lowering"] = max(worst["lowering"], float(np.max(np.abs(
            km * (jp @ p0) - cp * y1m(-1, theta, psi) * CHI_TRIPLET[+1]))))
        worst["z"] = max(worst["z"], float(np.max(np.abs(
            kz * (jz @ p0) + 0.5 * cp * y1m(0, theta, psi) * CHI_TRIPLET[0]))))
    return [
        IdentityReport(f"singlet-lowering-{name}", resid, len(samples), _params_dict(op))
        for name, resid in worst.items()
    ]


class DegenerateTranslation(RuntimeError):
    """(k.S) Psi1 vanishes identically, so the least-squares normal
    equation for eta has a zero coefficient."""


@dataclass
class TranslationResult:
    eta: float
    residual: float          # max ||(k.(J + eta S)) Psi1|| over samples
    degenerate: bool

    def to_dict(self) -> dict:
        return {"eta": self.eta, "residual": self.residual, "degenerate": self.degenerate}


def find_translation(op: YangianOp, samples: np.ndarray,
                     raise_on_degenerate: bool = False) -> TranslationResult:
    """Least-squares eta minimizing sum ||(k.(J + eta S)) Psi1(k)||^2.

    For these states the quadratic coefficient is identically zero
    ((k.S) Psi1 = 0 pointwise), which is reported as a degenerate normal
    equation; eta = 0 is returned and the residual is eta-independent.
    """
    if abs(op.transition_coefficient) < 1e-15:
        raise ValueError("translation search needs mu2 - mu1 + h/2 != 0")
    samples = np.asarray(samples, dtype=float)
    a_coef = 0.0
    b_coef = 0.0
    for k in samples:
        p1 = psi1(k)
        jp1 = sum(k[a] * (op.j[a] @ p1) for a in range(3))
        sp1 = sum(k[a] * (SPIN[a] @ p1) for a in range(3))
        a_coef += float(np.real(np.vdot(sp1, sp1)))
        b_coef += float(np.real(np.vdot(sp1, jp1)))
    degenerate = a_coef < 1e-24
    if degenerate and raise_on_degenerate:
        raise DegenerateTranslation("all (k.S) Psi1 projections vanish")
    eta = 0.0 if degenerate else -b_coef / a_coef
    shifted = YangianOp(op.mu1, op.mu2, op.h, op.j, eta=eta)
    resid = 0.0
    jps = shifted.translated()
    for k in samples:
        p1 = psi1(k)
        jp1 = sum(k[a] * (jps[a] @ p1) for a in range(3))
        resid = max(resid, float(np.linalg.norm(jp1)))
    return TranslationResult(eta=eta, residual=resid, degenerate=degenerate)


def verify_eq19(op: YangianOp, samples: np.ndarray) -> dict:
    """Residuals of the two direction-contracted identities with
    J' = J + eta S, plus the sphere-integrated transition coefficient.

    Returned dict keys:
      transition: max ||(k.J') Psi0 - (sqrt3/2) c+ Psi1||
      annihilation: max ||(k.J') Psi1||  (equals |c-|/2 * Y00 identically)
      annihilation_expected: the analytic value of that residual
      ratio: integral <Psi1|(k.J')|Psi0> dOmega  (= (sqrt3/2) c+ when exact)
    """
    samples = np.asarray(samples, dtype=float)
    jps = op.translated()
    cp = op.transition_coefficient
    cm = op.annihilation_coefficient
    p0 = psi0()
    worst_t, worst_a = 0.0, 0.0
    for k in samples:
        p1 = psi1(k)
        jp0 = sum(k[a] * (jps[a] @ p0) for a in range(3))
        jp1 = sum(k[a] * (jps[a] @ p1) for a in range(3))
        worst_t = max(worst_t, float(np.max(np.abs(jp0 - (np.sqrt(3.0) / 2.0) * cp * p1))))
        worst_a = max(worst_a, float(np.linalg.norm(jp1)))
    return {
        "transition": worst_t,
        "annihilation": worst_a,
        "annihilation_expected": abs(cm) * 0.5 * Y00,
        "ratio": transition_ratio(op),
        "params": _params_dict(op),
        "n_samples": len(samples),
    }


def transition_ratio(op: YangianOp, n_theta: int = 64, n_psi: int = 64) -> float:
    """Sphere quadrature of <Psi1(k)| (k.J') |Psi0>."""
    jps = op.translated()
    x, w = np.polynomial.legendre.leggauss(n_theta)
    theta = 0.5 * np.pi * (x + 1.0)
    wt = 0.5 * np.pi * w * 0.5 * np.sin(theta)
    psis = 2.0 * np.pi * np.arange(n_psi) / n_psi
    p0 = psi0()
    total = 0.0
    for th, wth in zip(theta, wt):
        for ps in psis:
            k = np.array([np.sin(th) * np.cos(ps), np.sin(th) * np.sin(ps), np.cos(th)])
            jp0 = sum(k[a] * (jps[a] @ p0) for a in range(3))
            total += wth / n_psi * np.real(np.vdot(psi1(k), jp0))
    # the quadrature measure above is dOmega/4pi; undo it
    return float(4.0 * np.pi * total)


def normalization_quadrature(n_theta: int = 64, n_psi: int = 64) -> tuple:
    """(integral |Psi0|^2 dOmega, integral ||Psi1||^2 dOmega) by product
    quadrature; the first equals PSI0_NORMSQ by convention."""
    x, w = np.polynomial.legendre.leggauss(n_theta)
    theta = 0.5 * np.pi * (x + 1.0)
    wt = 0.5 * np.pi * w * np.sin(theta)
    psis = 2.0 * np.pi * np.arange(n_psi) / n_psi
    n0 = 0.0
    n1 = 0.0
    for th, wth in zip(theta, wt):
        for ps in psis:
            k = np.array([np.sin(th) * np.cos(ps), np.sin(th) * np.sin(ps), np.cos(th)])
            n0 += wth * (2.0 * np.pi / n_psi) * float(np.real(np.vdot(psi0(k), psi0(k))))
            n1 += wth * (2.0 * np.pi / n_psi) * float(np.real(np.vdot(psi1(k), psi1(k))))
    return n0, n1
