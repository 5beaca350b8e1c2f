"""Critical forces and post-buckling modes of the straight configuration.

Linearizing the equilibrium equations about the straight shape under a
purely axial load couples the joint angles to the transverse reaction
through reach sums of the link lengths. The result is a generalized
eigenproblem whose nonzero eigenvalues are reciprocal critical forces and
whose eigenvectors are the post-buckling mode directions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import ChainModel, Configuration, DeflectionState
from .errors import (
    ComplexSpectrumError,
    DegenerateModeError,
    DegenerateModelError,
    RankAnomalyError,
)
from .statics import EquilibriumPoint, PlanarForce

# |lambda| below this fraction of the largest magnitude counts as one of the
# two structural zero eigenvalues.
ZERO_EIGENVALUE_TOLERANCE = 1e-8
# Relative imaginary part above which an eigenvalue is reported as nonreal.
IMAG_TOLERANCE = 1e-8
# Entries smaller than this fraction of the vector norm have no usable sign.
SIGN_TOLERANCE = 1e-9
# Largest mode scaling for which the linearization is trusted.
SNAPSHOT_MU_LIMIT = 0.1


@dataclass(frozen=True)
class LinearizedSystem:
    """Matrices of the linearized straight-shape equilibrium.

    s1 is the symmetric n x n matrix of negated reach sums, s0 the n-vector
    of reach sums, and (a, b) the assembled (n+1) x (n+1) pencil whose
    eigenvalues are -1/F_x.
    """

    s1: np.ndarray
    s0: np.ndarray
    a: np.ndarray
    b: np.ndarray


@dataclass(frozen=True)
class BucklingMode:
    """One eigen solution of the linearized system.

    mode_vector has unit norm and n+1 entries: the first n span the joint
    angles, entry n is the transverse-force direction. The vector is
    canonicalized so its first nonzero angle entry is negative; the mirror
    configuration is obtained with a negative scaling factor.
    """

    eigenvalue: float
    mode_vector: np.ndarray
    axial_force: float
    energy_factor: float
    shape_label: str
    is_primary: bool


def build_reach_matrices(chain: ChainModel) -> tuple[np.ndarray, np.ndarray]:
    """Reach-sum matrices of the linearization.

    Returns:
        (s1, s0): s1[i, m] = -sum of link lengths from index max(i, m) on;
        s0[i] = sum of link lengths from index i on.
    """
    lengths = chain.link_lengths
    suffix = np.cumsum(lengths[::-1])[::-1]
    idx = np.arange(chain.n)
    s1 = -suffix[np.maximum(idx[:, None], idx[None, :])]
    return s1, suffix.copy()


def build_system(chain: ChainModel) -> LinearizedSystem:
    """Assemble the (n+1) x (n+1) eigen pencil (a, b) for the chain.

    Raises:
        DegenerateModelError: b is singular, e.g. when two or more joints
            have zero stiffness.
    """
    n = chain.n
    s1, s0 = build_reach_matrices(chain)
    a = np.zeros((n + 1, n + 1))
    a[:n, :n] = s1
    b = np.zeros((n + 1, n + 1))
    b[:n, :n] = np.diag(chain.joint_stiffness)
    b[:n, n] = s0
    b[n, :n] = s0
    svals = np.linalg.svd(b, compute_uv=False)
    if svals[-1] <= 1e-12 * svals[0]:
        raise DegenerateModelError(
            "linearized system matrix is singular; the stiffness pattern "
            "does not constrain every joint"
        )
    s1.setflags(write=False)
    s0.setflags(write=False)
    a.setflags(write=False)
    b.setflags(write=False)
    return LinearizedSystem(s1, s0, a, b)


def _direction_energy_factor(chain: ChainModel, direction: np.ndarray) -> float:
    """Energy factor of an angle direction; scale invariant."""
    v = np.asarray(direction, dtype=float)
    numerator = float(np.dot(chain.joint_stiffness, v * v))
    partial = np.cumsum(v)
    denominator = float(np.dot(chain.link_lengths, partial * partial))
    if denominator <= 0.0:
        raise DegenerateModeError(
            "mode direction produces no axial deflection; energy factor "
            "is undefined"
        )
    return numerator / denominator


def energy_factor(mode: BucklingMode, chain: ChainModel) -> float:
    """Slope of strain energy versus axial deflection for the mode.

    Computed from the angle part of the mode vector; invariant under any
    rescaling of the vector. Equals the mode's equilibrium axial force in
    the linearized model.
    """
    return _direction_energy_factor(chain, mode.mode_vector[: chain.n])


def classify_shape(angle_direction) -> str:
    """Shape label from the sign pattern of an angle direction.

    Counts sign changes s across consecutive entries: one change is the
    "U" family, n-1 changes the fully alternating "Z" family, anything in
    between "ZU(s)". Entries indistinguishable from zero make the pattern
    ambiguous and yield "unclassified".
    """
    v = np.asarray(angle_direction, dtype=float)
    norm = float(np.linalg.norm(v))
    if norm == 0.0 or np.any(np.abs(v) <= SIGN_TOLERANCE * norm):
        return "unclassified"
    signs = np.sign(v)
    changes = int(np.sum(signs[:-1] != signs[1:]))
    if changes == 1:
        return "U"
    if changes == v.size - 1:
        return "Z"
    return f"ZU({changes})"


def _real_eigenvector(column: np.ndarray) -> np.ndarray:
    """Strip the arbitrary complex phase from an eigenvector."""
    j = int(np.argmax(np.abs(column)))
    phase = column[j] / abs(column[j])
    return np.real(column / phase)


def buckling_modes(chain: ChainModel) -> list[BucklingMode]:
    """All post-buckling modes of the straight configuration.

    Solves the dense eigenproblem of the assembled pencil, discards the two
    structural zero eigenvalues, and returns the remaining n-1 modes sorted
    by descending |eigenvalue|, i.e. ascending critical force. The first
    mode is the primary (lowest-force, stable) one.

    Raises:
        DegenerateModelError: propagated from the system assembly.
        RankAnomalyError: the zero-eigenvalue count is not exactly two.
        ComplexSpectrumError: a retained eigenvalue is not numerically real.
    """
    system = build_system(chain)
    n = chain.n
    matrix = np.linalg.solve(system.b, system.a)
    eigenvalues, eigenvectors = np.linalg.eig(matrix)

    magnitudes = np.abs(eigenvalues)
    largest = float(magnitudes.max())
    if largest == 0.0:
        raise RankAnomalyError("the linearized system has only zero eigenvalues")
    zero_mask = magnitudes < ZERO_EIGENVALUE_TOLERANCE * largest
    zero_count = int(zero_mask.sum())
    if zero_count != 2:
        raise RankAnomalyError(
            f"expected exactly 2 near-zero eigenvalues, found {zero_count}"
        )

    keep = np.flatnonzero(~zero_mask)
    for i in keep:
        if abs(eigenvalues[i].imag) > IMAG_TOLERANCE * abs(eigenvalues[i]):
            raise ComplexSpectrumError(
                f"eigenvalue {eigenvalues[i]:.6g} has a nonreal part beyond "
                "tolerance; the model falls outside the validated class"
            )

    order = keep[np.argsort(-magnitudes[keep])]
    modes = []
    for rank, i in enumerate(order):
        lam = float(eigenvalues[i].real)
        vec = _real_eigenvector(eigenvectors[:, i])
        vec = vec / np.linalg.norm(vec)
        angles = vec[:n]
        nonzero = np.flatnonzero(np.abs(angles) > SIGN_TOLERANCE)
        if nonzero.size and angles[nonzero[0]] > 0.0:
            vec = -vec
        vec.setflags(write=False)
        modes.append(
            BucklingMode(
                eigenvalue=lam,
                mode_vector=vec,
                axial_force=-1.0 / lam,
                energy_factor=_direction_energy_factor(chain, vec[:n]),
                shape_label=classify_shape(vec[:n]),
                is_primary=(rank == 0),
            )
        )
    return modes


def critical_force(chain: ChainModel) -> float:
    """Smallest compressive load that buckles the straight chain."""
    return buckling_modes(chain)[0].axial_force


def mode_equilibrium_snapshot(
    mode: BucklingMode, chain: ChainModel, mu: float
) -> EquilibriumPoint:
    """Finite post-buckling equilibrium built from a mode at scaling mu.

    Within the small-angle envelope the joint angles are mu times the mode
    direction, the axial force stays at the mode's critical value, and the
    transverse force scales with mu. Deflection and strain energy are
    quadratic in mu, with the energy factor as their ratio.

    Raises:
        ValueError: |mu| exceeds the trusted envelope of 0.1 rad.
    """
    mu = float(mu)
    if abs(mu) > SNAPSHOT_MU_LIMIT:
        raise ValueError(
            f"|mu| = {abs(mu):.3g} outside the small-angle envelope "
            f"{SNAPSHOT_MU_LIMIT}"
        )
    n = chain.n
    vec = mode.mode_vector
    angles = mu * vec[:n]
    config = Configuration(angles, np.zeros(n))
    force = PlanarForce(mode.axial_force, mu * vec[n])

    partial = np.cumsum(vec[:n])
    delta_x = 0.5 * mu * mu * float(np.dot(chain.link_lengths, partial * partial))
    energy = 0.5 * mu * mu * float(np.dot(chain.joint_stiffness, vec[:n] * vec[:n]))

    s1, s0 = build_reach_matrices(chain)
    residual = (
        chain.joint_stiffness * angles
        + force.fx * (s1 @ angles)
        + force.fy * s0
    )
    return EquilibriumPoint(
        configuration=config,
        deflection=DeflectionState(delta_x=delta_x, delta_y=0.0,
                                   pre_displacement=0.0),
        force=force,
        strain_energy=energy,
        potential_energy=energy - force.fx * delta_x,
        stability="stable" if mode.is_primary else "unstable",
        residual_norm=float(np.linalg.norm(residual)),
    )
