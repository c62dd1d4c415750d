"""Self-consistent gap equations for the separable p-wave shell.

The pairing kernel is V(n, n') = -3 V1 n.n' inside the shell
|eps| <= omega_c and zero outside; the momentum sum is
N0 * int deps * int dOmega / 4pi.  All temperatures are energies (kB = 1)
and every quoted number is in units of omega_c.

Grids: Gauss-Legendre panels on [-omega_c, 0] and [0, omega_c] for the
energy (nodes are never at eps = 0), Gauss-Legendre in the polar angle
with the sin(theta) weight folded in, uniform in the azimuth.  Because
the kernel has rank 3 in the angular indices, both branch profiles are
exact eigenvectors of the discretized kernel, and a solved gap closes
nodewise under the full right-hand side.

Branch ansatz for the order-parameter field Delta(k) (polar convention
|Delta| = 2 ||Delta||, see meanfield):

    bw:      Delta(k) = -(Delta0 / 2) n(k)            gap |Delta| = Delta0
    nonesp:  Delta(k) = (i Delta0 / 2) Y11(k) z_hat   gap Delta0 sqrt(3/8pi) sin(theta)

with the overall phase constant chosen as lam = 0 for bw and
e^{i lam(k)} = i e^{i psi} for nonesp.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .meanfield import y1m

BRANCHES = ("bw", "nonesp")

SOLVER_RESIDUAL_TOL = 1e-10   # times omega_c
SOLVER_BRACKET_TOL = 1e-12    # times omega_c
TC_TOL = 1e-8                 # times omega_c
Y11_PREFACTOR = np.sqrt(3.0 / (8.0 * np.pi))


def quasiparticle_energy(epsilon, delta_mag):
    """sqrt(eps^2 + |Delta|^2)."""
    return np.hypot(epsilon, delta_mag)


def occupation(epsilon, energy, temperature):
    """Thermal mode occupation (1 - (eps/E) tanh(E/2T)) / 2.

    The E -> 0 limit uses tanh(x) ~ x; T = 0 means the sharp limit.
    """
    if temperature < 0:
        raise ValueError("temperature must be >= 0")
    epsilon = np.asarray(epsilon, dtype=float)
    energy = np.asarray(energy, dtype=float)
    if temperature == 0.0:
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(energy > 0, epsilon / np.where(energy > 0, energy, 1.0), 0.0)
        return float(0.5 * (1.0 - ratio)) if ratio.ndim == 0 else 0.5 * (1.0 - ratio)
    beta = 1.0 / temperature
    small = energy < 1e-12
    safe = np.where(small, 1.0, energy)
    factor = np.where(small, 0.5 * beta, np.tanh(0.5 * beta * safe) / safe)
    out = 0.5 * (1.0 - epsilon * factor)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class GapModel:
    """Physical and numerical parameters of one gap-equation problem."""

    v1: float = 0.25
    omega_c: float = 1.0
    n0: float = 1.0
    temperature: float = 0.0
    branch: str = "bw"
    mu_b: float = 0.0
    n_energy: int = 64
    n_theta: int = 32
    n_psi: int = 16

    def __post_init__(self):
        if self.branch not in BRANCHES:
            raise ValueError(f"branch must be one of {BRANCHES}, got {self.branch!r}")
        if self.v1 <= 0 or self.omega_c <= 0 or self.n0 <= 0:
            raise ValueError("v1, omega_c and n0 must be positive")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        for name in ("n_energy", "n_theta", "n_psi"):
            if getattr(self, name) < 8:
                raise ValueError(f"{name} must be at least 8")
        if self.n_energy % 2:
            # split energy panels need an even count; bump rather than fail
            object.__setattr__(self, "n_energy", self.n_energy + 1)

    @property
    def g(self) -> float:
        """Dimensionless coupling N0 V1."""
        return self.n0 * self.v1

    def shell(self) -> "_Shell":
        return _Shell(self)


class _Shell:
    """Quadrature grids and branch profiles for one model."""

    def __init__(self, model: GapModel):
        self.model = model
        half = model.n_energy // 2
        x, w = np.polynomial.legendre.leggauss(half)
        lo = 0.5 * model.omega_c * (x - 1.0)      # panel [-wc, 0]
        hi = 0.5 * model.omega_c * (x + 1.0)      # panel [0, wc]
        self.eps = np.concatenate([lo, hi])
        self.eps_w = np.concatenate([w, w]) * (0.5 * model.omega_c)

        xt, wt = np.polynomial.legendre.leggauss(model.n_theta)
        self.theta = 0.5 * np.pi * (xt + 1.0)
        # dOmega/4pi = (sin th dth / 2)(dpsi / 2pi)
        theta_w = 0.5 * np.pi * wt * 0.5 * np.sin(self.theta)
        self.psi = 2.0 * np.pi * np.arange(model.n_psi) / model.n_psi
        psi_w = np.full(model.n_psi, 1.0 / model.n_psi)

        tg, pg = np.meshgrid(self.theta, self.psi, indexing="ij")
        self.theta_grid = tg
        self.psi_grid = pg
        self.ang_w = np.outer(theta_w, psi_w)     # sums to ~1
        st, ct = np.sin(tg), np.cos(tg)
        self.nvec = np.stack([st * np.cos(pg), st * np.sin(pg), ct], axis=-1)

    @cached_property
    def min_abs_eps(self) -> float:
        return float(np.min(np.abs(self.eps)))

    def profile(self, delta0: float) -> np.ndarray:
        """Order-parameter field of the model's branch, shape (nt, np, 3)."""
        if self.model.branch == "bw":
            return -0.5 * delta0 * self.nvec.astype(complex)
        y11 = y1m_grid(self.theta_grid, self.psi_grid)
        out = np.zeros(self.theta_grid.shape + (3,), dtype=complex)
        out[..., 2] = 0.5j * delta0 * y11
        return out

    def gap_magnitude(self, delta_field: np.ndarray) -> np.ndarray:
        """|Delta(k)| = 2 ||Delta||_2 per angular node."""
        return 2.0 * np.linalg.norm(delta_field, axis=-1)

    def thermal_kernel(self, gap_mag: np.ndarray) -> np.ndarray:
        """I(n') = int deps tanh(E/2T)/(2E), E = sqrt(eps^2 + |Delta(n')|^2),
        evaluated per angular node."""
        e = quasiparticle_energy(self.eps[:, None, None], gap_mag[None, :, :])
        t = self.model.temperature
        th = 1.0 if t == 0.0 else np.tanh(e / (2.0 * t))
        return np.einsum("e,eij->ij", self.eps_w, th / (2.0 * e))

    def rhs(self, delta_field: np.ndarray) -> np.ndarray:
        """Full discretized right-hand side
        Delta(k) <- 3 g int (n.n') Delta(k') tanh(E'/2T)/(2E')."""
        ker = self.thermal_kernel(self.gap_magnitude(delta_field))
        weighted = (self.ang_w * ker)[..., None] * delta_field
        moment = np.einsum("ijk,ijl->kl", self.nvec, weighted)  # 3x3
        return 3.0 * self.model.g * np.einsum("ijk,kl->ijl", self.nvec, moment)

    def project(self, field_a: np.ndarray, field_b: np.ndarray) -> float:
        """Angular inner product Re<a, b> with quadrature weights."""
        return float(np.real(np.einsum("ij,ijk,ijk->", self.ang_w,
                                       np.conj(field_a), field_b)))


def y1m_grid(theta, psi):
    return -Y11_PREFACTOR * np.sin(theta) * np.exp(1j * psi)


def gap_residual(delta0: float, model: GapModel, shell: _Shell | None = None) -> float:
    """delta0 minus the branch projection of the full right-hand side."""
    if shell is None:
        shell = model.shell()
    if delta0 == 0.0:
        return 0.0
    u = shell.profile(1.0)
    rhs = shell.rhs(shell.profile(delta0))
    return delta0 - shell.project(u, rhs) / shell.project(u, u)


@dataclass
class GapSolution:
    delta0: float
    branch: str
    temperature: float
    residual: float
    converged: bool
    iterations: int
    gap_function: np.ndarray = field(repr=False)   # |Delta(k)| on the angular grid
    model: GapModel = field(repr=False, default=None)

    def to_dict(self) -> dict:
        return {
            "delta0": self.delta0,
            "branch": self.branch,
            "T": self.temperature,
            "residual": self.residual,
            "converged": self.converged,
            "iterations": self.iterations,
            "g": self.model.g if self.model else None,
            "omega_c": self.model.omega_c if self.model else None,
        }


def solve_gap(model: GapModel) -> GapSolution:
    """Largest root of the gap residual by bisection on [0, 10 omega_c].

    No sign change in the bracket means only the trivial root exists
    (normal phase): delta0 = 0 is returned as converged.
    """
    if not 0.0 < model.g < 1.0:
        raise ValueError(f"coupling g = {model.g} outside the weak-coupling range (0, 1)")
    shell = model.shell()
    wc = model.omega_c
    lo, hi = 1e-13 * wc, 10.0 * wc
    f_lo = gap_residual(lo, model, shell)
    f_hi = gap_residual(hi, model, shell)
    iterations = 0
    if f_lo > 0.0 or f_hi < 0.0:
        gap = shell.gap_magnitude(shell.profile(0.0))
        return GapSolution(0.0, model.branch, model.temperature, 0.0, True, 0, gap, model)
    while hi - lo > SOLVER_BRACKET_TOL * wc:
        mid = 0.5 * (lo + hi)
        f_mid = gap_residual(mid, model, shell)
        iterations += 1
        if f_mid <= 0.0:
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    delta0 = 0.5 * (lo + hi)
    resid = gap_residual(delta0, model, shell)
    converged = abs(resid) < SOLVER_RESIDUAL_TOL * wc and (hi - lo) <= SOLVER_BRACKET_TOL * wc
    gap = shell.gap_magnitude(shell.profile(delta0))
    return GapSolution(delta0, model.branch, model.temperature, resid,
                       bool(converged), iterations, gap, model)


class TcResolutionError(RuntimeError):
    """Raised when Tc falls below what the search bracket resolves."""


def _linearized_condition(temperature: float, model: GapModel, shell: _Shell) -> float:
    """1 - g_eff(T): the branch-projected linearized kernel condition;
    zero at the critical temperature."""
    u = shell.profile(1.0)
    e = np.abs(shell.eps)
    th = np.tanh(e / (2.0 * temperature))
    kernel = float(np.dot(shell.eps_w, th / (2.0 * e)))  # angular-independent
    weighted = (shell.ang_w * kernel)[..., None] * u
    moment = np.einsum("ijk,ijl->kl", shell.nvec, weighted)
    rhs = 3.0 * model.g * np.einsum("ijk,kl->ijl", shell.nvec, moment)
    return 1.0 - shell.project(u, rhs) / shell.project(u, u)


def critical_temperature(model: GapModel) -> float:
    """Temperature where the linearized gap kernel reaches unit gain,
    found by bisection to TC_TOL * omega_c."""
    if not 0.0 < model.g < 1.0:
        raise ValueError(f"coupling g = {model.g} outside the weak-coupling range (0, 1)")
    shell = model.shell()
    wc = model.omega_c
    lo, hi = 1e-6 * wc, wc
    if _linearized_condition(lo, model, shell) > 0.0:
        raise TcResolutionError(
            f"Tc below {lo:.1e}; coupling g = {model.g} too weak for this bracket")
    if _linearized_condition(hi, model, shell) < 0.0:
        raise TcResolutionError("Tc above omega_c; outside the weak-coupling regime")
    while hi - lo > TC_TOL * wc:
        mid = 0.5 * (lo + hi)
        if _linearized_condition(mid, model, shell) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def pair_expectation_field(delta0: float, model: GapModel,
                           shell: _Shell | None = None) -> np.ndarray:
    """<T(k)> = sin 2r e^{i lam} tanh(E/2T) d(n) on the angular grid at a
    reference energy node, expressed through the solved field:
    <T(k')> = -2 Delta(k') tanh(E'/2T) / E'. Shape (neps, nt, np, 3)."""
    if shell is None:
        shell = model.shell()
    fieldv = shell.profile(delta0)
    mag = shell.gap_magnitude(fieldv)
    e = quasiparticle_energy(shell.eps[:, None, None], mag[None, :, :])
    t = model.temperature
    th = 1.0 if t == 0.0 else np.tanh(e / (2.0 * t))
    return -2.0 * fieldv[None, ...] * (th / e)[..., None]


def field_gap_components(model: GapModel, mu_b: float):
    """Zeeman-split pair amplitudes on the angular grid.

    Evaluates, with the solved Y11-profile gap at the model temperature,

      D_upup(k)   = (1/4) sum_k' V(n,n') (|Delta'| / 2E') e^{i lam} e^{+i psi'}
                      tanh[(E'/2T)(1 - muB/eps')]
      D_downdown  = same with lam -> pi+lam, psi' -> -psi', B -> -B, times -1,

    with lam = 0.  The tanh argument changes sign across eps' = 0; grids
    never place a node there, and grids with a zero node are rejected.
    """
    if model.temperature <= 0.0:
        raise ValueError("field gap components need temperature > 0")
    nonesp = GapModel(v1=model.v1, omega_c=model.omega_c, n0=model.n0,
                      temperature=model.temperature, branch="nonesp",
                      n_energy=model.n_energy, n_theta=model.n_theta,
                      n_psi=model.n_psi)
    shell = nonesp.shell()
    _reject_zero_nodes(shell.eps)
    solution = solve_gap(nonesp)
    gap_mag = solution.gap_function

    def component(sign_psi: float, b: float, overall: complex) -> np.ndarray:
        e = quasiparticle_energy(shell.eps[:, None, None], gap_mag[None, :, :])
        beta = 1.0 / model.temperature
        arg = 0.5 * beta * e * (1.0 - b / shell.eps[:, None, None])
        eps_part = np.einsum("e,eij->ij", shell.eps_w,
                             (gap_mag[None, :, :] / (2.0 * e)) * np.tanh(arg))
        weight = shell.ang_w * eps_part * np.exp(1j * sign_psi * shell.psi_grid)
        moment = np.einsum("ijk,ij->k", shell.nvec, weight)
        kernel = -3.0 * model.g * np.einsum("ijk,k->ij", shell.nvec, moment)
        return overall * 0.25 * kernel

    up_up = component(+1.0, mu_b, 1.0 + 0.0j)
    down_down = component(-1.0, -mu_b, -np.exp(1j * np.pi))
    return up_up, down_down, solution


def _reject_zero_nodes(eps: np.ndarray, tol: float = 1e-14):
    if np.min(np.abs(eps)) < tol:
        raise ValueError("energy grid contains eps = 0 (singular field formula)")


def self_consistency_residual(solution: GapSolution) -> float:
    """Nodewise max |Delta(k) - RHS[Delta](k)| of the full (unprojected)
    discretized gap equation at the solved amplitude."""
    shell = solution.model.shell()
    fieldv = shell.profile(solution.delta0)
    return float(np.max(np.abs(fieldv - shell.rhs(fieldv))))
