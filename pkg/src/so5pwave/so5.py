"""SO(5) generator set of a (k, -k) fermion quadruple and its closure checks.

Conventions, fixed once here and inherited everywhere else:

    S_i(k)  = a†_{k alpha} (sigma_i)_{alpha beta} a_{k beta},   i = 0..3,
    T_i(k)  = a_{-k alpha} (sigma_2 sigma_i)_{alpha beta} a_{k beta},
    Sbar_i  = (S_i(k) + S_i(-k)) / 2,
    Q       = (S_0(k) + S_0(-k) - 2) / 2,

with sigma_0 the identity and sigma_1..3 the standard Pauli matrices
(sigma_3 diagonal).  Repeated spin indices are summed.

The antisymmetric 5x5 generator array is filled in the displayed layout

    row 2: -(Tx† + Tx)/2
    row 3: -(Ty† + Ty)/2,  -Sbar_z
    row 4: -(Tz† + Tz)/2,   Sbar_y,  -Sbar_x
    row 5:  Q,  (Tx - Tx†)/2i,  (Ty - Ty†)/2i,  (Tz - Tz†)/2i

with zero diagonal and the upper triangle fixed by I_ab = -I_ba.  For this
labelling the algebra closes as

    [I_ab, I_cd] = +i (d_ac I_bd + d_bd I_ac - d_ad I_bc - d_bc I_ad);

the transposed labelling I_ab -> I_ba satisfies the same relation with -i.
STRUCTURE_SIGN records the sign that holds for the layout above.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from . import fock
from .fock import commutator, dagger, max_abs

PAULI = {
    0: np.eye(2, dtype=complex),
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}

# Sign s in [I_ab, I_cd] = s*i*(d_ac I_bd + d_bd I_ac - d_ad I_bc - d_bc I_ad)
# for the displayed layout; verified numerically over all index pairs.
STRUCTURE_SIGN = +1.0

CLOSURE_TOL = 1e-12
HERMITICITY_TOL = 1e-14
CASIMIR_TOL = 1e-11


@dataclass(frozen=True)
class GeneratorSet:
    """All generators as 16x16 matrices; tuples are indexed by i-1 for i=1..3."""

    s_k: tuple          # spin operators S_1..S_3 at +k
    s_mk: tuple         # spin operators at -k
    s0_k: np.ndarray    # particle number at +k
    s0_mk: np.ndarray
    sbar: tuple
    t: tuple            # pair operators T_1..T_3
    tdag: tuple
    t0: np.ndarray      # singlet pair operator
    t0dag: np.ndarray
    q: np.ndarray


def _spin_bilinear(modes: tuple, sigma: np.ndarray) -> np.ndarray:
    """a†_{alpha} sigma_{alpha beta} a_{beta} over the two given modes."""
    up, down = modes
    ops = (fock.creation_op(up), fock.creation_op(down))
    ann = (fock.annihilation_op(up), fock.annihilation_op(down))
    out = np.zeros((fock.DIM, fock.DIM), dtype=complex)
    for a in range(2):
        for b in range(2):
            if sigma[a, b] != 0:
                out += sigma[a, b] * (ops[a] @ ann[b])
    return out


def _pair_bilinear(sigma: np.ndarray) -> np.ndarray:
    """a_{-k alpha} sigma_{alpha beta} a_{k beta}."""
    ann_mk = (fock.annihilation_op(fock.MK_UP), fock.annihilation_op(fock.MK_DOWN))
    ann_k = (fock.annihilation_op(fock.K_UP), fock.annihilation_op(fock.K_DOWN))
    out = np.zeros((fock.DIM, fock.DIM), dtype=complex)
    for a in range(2):
        for b in range(2):
            if sigma[a, b] != 0:
                out += sigma[a, b] * (ann_mk[a] @ ann_k[b])
    return out


@functools.lru_cache(maxsize=1)
def build_generators() -> GeneratorSet:
    k_modes = (fock.K_UP, fock.K_DOWN)
    mk_modes = (fock.MK_UP, fock.MK_DOWN)

    s_k = tuple(_spin_bilinear(k_modes, PAULI[i]) for i in (1, 2, 3))
    s_mk = tuple(_spin_bilinear(mk_modes, PAULI[i]) for i in (1, 2, 3))
    s0_k = _spin_bilinear(k_modes, PAULI[0])
    s0_mk = _spin_bilinear(mk_modes, PAULI[0])
    sbar = tuple(0.5 * (s_k[i] + s_mk[i]) for i in range(3))

    t = tuple(_pair_bilinear(PAULI[2] @ PAULI[i]) for i in (1, 2, 3))
    tdag = tuple(dagger(ti) for ti in t)
    t0 = _pair_bilinear(PAULI[2] @ PAULI[0])

    q = 0.5 * (s0_k + s0_mk - 2.0 * np.eye(fock.DIM))

    return GeneratorSet(
        s_k=s_k, s_mk=s_mk, s0_k=s0_k, s0_mk=s0_mk, sbar=sbar,
        t=t, tdag=tdag, t0=t0, t0dag=dagger(t0), q=q,
    )


@dataclass(frozen=True)
class SO5Matrix:
    """Antisymmetric 5x5 array of Hermitian 16x16 generator matrices."""

    entries: np.ndarray  # shape (5, 5, 16, 16)

    def entry(self, a: int, b: int) -> np.ndarray:
        """I_ab with 1-based indices a, b in 1..5."""
        if not (1 <= a <= 5 and 1 <= b <= 5):
            raise ValueError(f"indices must be 1..5, got ({a}, {b})")
        return self.entries[a - 1, b - 1]


def assemble_so5(gen: GeneratorSet | None = None) -> SO5Matrix:
    if gen is None:
        gen = build_generators()
    e = np.zeros((5, 5, fock.DIM, fock.DIM), dtype=complex)
    tx, ty, tz = gen.t
    txd, tyd, tzd = gen.tdag
    sx, sy, sz = gen.sbar

    lower = {
        (2, 1): -0.5 * (txd + tx),
        (3, 1): -0.5 * (tyd + ty),
        (4, 1): -0.5 * (tzd + tz),
        (3, 2): -sz,
        (4, 2): sy,
        (4, 3): -sx,
        (5, 1): gen.q,
        (5, 2): (tx - txd) / 2j,
        (5, 3): (ty - tyd) / 2j,
        (5, 4): (tz - tzd) / 2j,
    }
    for (a, b), m in lower.items():
        e[a - 1, b - 1] = m
        e[b - 1, a - 1] = -m
    return SO5Matrix(entries=e)


def _generator_pairs():
    return [(a, b) for a in range(1, 6) for b in range(a + 1, 6)]


@dataclass
class ClosureReport:
    """Residuals of the SO(5) closure relation for every generator pair."""

    sign: float
    max_residual: float
    pairs: list = field(default_factory=list)  # dicts {"pair": [a,b,c,d], "residual": r}

    def passed(self, tol: float = CLOSURE_TOL) -> bool:
        return self.max_residual < tol

    def to_dict(self) -> dict:
        return {
            "sign": self.sign,
            "max_residual": self.max_residual,
            "pairs": self.pairs,
        }


def verify_so5_closure(so5: SO5Matrix | None = None) -> ClosureReport:
    """Residual of [I_ab, I_cd] - s*i*(d_ac I_bd + d_bd I_ac - d_ad I_bc - d_bc I_ad)
    over all ordered pairs (a<b) x (c<d); single-momentum case, so the
    momentum delta is 1."""
    if so5 is None:
        so5 = assemble_so5()
    s = STRUCTURE_SIGN

    def I(a, b):
        return so5.entries[a - 1, b - 1]

    report = ClosureReport(sign=s, max_residual=0.0)
    for (a, b) in _generator_pairs():
        for (c, d) in _generator_pairs():
            lhs = commutator(I(a, b), I(c, d))
            rhs = np.zeros_like(lhs)
            if a == c:
                rhs += I(b, d)
            if b == d:
                rhs += I(a, c)
            if a == d:
                rhs -= I(b, c)
            if b == c:
                rhs -= I(a, d)
            resid = max_abs(lhs - s * 1j * rhs)
            report.pairs.append({"pair": [a, b, c, d], "residual": resid})
            report.max_residual = max(report.max_residual, resid)
    return report


def hermiticity_residual(so5: SO5Matrix | None = None) -> float:
    if so5 is None:
        so5 = assemble_so5()
    worst = 0.0
    for (a, b) in _generator_pairs():
        m = so5.entries[a - 1, b - 1]
        worst = max(worst, max_abs(m - dagger(m)))
    return worst


def casimir(so5: SO5Matrix | None = None) -> np.ndarray:
    """Sum over a<b of I_ab squared."""
    if so5 is None:
        so5 = assemble_so5()
    c = np.zeros((fock.DIM, fock.DIM), dtype=complex)
    for (a, b) in _generator_pairs():
        m = so5.entries[a - 1, b - 1]
        c += m @ m
    return c


def casimir_commutant_residual(so5: SO5Matrix | None = None) -> float:
    if so5 is None:
        so5 = assemble_so5()
    c = casimir(so5)
    return max(
        max_abs(commutator(c, so5.entries[a - 1, b - 1]))
        for (a, b) in _generator_pairs()
    )


def quasispin_ops(gen: GeneratorSet | None = None) -> tuple:
    """The pair quasi-spin triple (raise, lower, z) =
    ((i/sqrt2) T_3, (-i/sqrt2) T_3†, -Q)."""
    if gen is None:
        gen = build_generators()
    lam_p = (1j / np.sqrt(2.0)) * gen.t[2]
    lam_m = (-1j / np.sqrt(2.0)) * gen.tdag[2]
    lam_z = -gen.q
    return lam_p, lam_m, lam_z


@dataclass
class QuasiSpinReport:
    """SU(2) closure of the quasi-spin set plus its coupling to spin.

    In this normalisation [L+, L-] = Lz and [Lz, L±] = ±L± hold exactly;
    spin_coupling_norm is the largest |[L, S_i(k)]| entry and must stay
    far from zero (the pair ladder operators lie outside the two SU(2)s).
    """

    ladder_residual: float
    raise_residual: float
    lower_residual: float
    spin_coupling_norm: float

    def passed(self, tol: float = CLOSURE_TOL) -> bool:
        return (
            max(self.ladder_residual, self.raise_residual, self.lower_residual) < tol
            and self.spin_coupling_norm > 0.1
        )

    def to_dict(self) -> dict:
        return {
            "ladder_residual": self.ladder_residual,
            "raise_residual": self.raise_residual,
            "lower_residual": self.lower_residual,
            "spin_coupling_norm": self.spin_coupling_norm,
        }


def verify_quasispin(gen: GeneratorSet | None = None) -> QuasiSpinReport:
    if gen is None:
        gen = build_generators()
    lam_p, lam_m, lam_z = quasispin_ops(gen)
    coupling = max(
        max_abs(commutator(lam, s))
        for lam in (lam_p, lam_m, lam_z)
        for s in gen.s_k
    )
    return QuasiSpinReport(
        ladder_residual=max_abs(commutator(lam_p, lam_m) - lam_z),
        raise_residual=max_abs(commutator(lam_z, lam_p) - lam_p),
        lower_residual=max_abs(commutator(lam_z, lam_m) + lam_m),
        spin_coupling_norm=coupling,
    )


def sbar_su2_residual(gen: GeneratorSet | None = None) -> float:
    """Largest residual of [Sbar_i, Sbar_j] = i eps_ijk Sbar_k."""
    if gen is None:
        gen = build_generators()
    sx, sy, sz = gen.sbar
    return max(
        max_abs(commutator(sx, sy) - 1j * sz),
        max_abs(commutator(sy, sz) - 1j * sx),
        max_abs(commutator(sz, sx) - 1j * sy),
    )
