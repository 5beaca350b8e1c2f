"""Elastic torques, energies, and static force recovery.

Sign convention: an external axial force is counted positive in
compression, and the static equilibrium residual is

    r(q, F) = J(q)^T F + K (q - q0)

which vanishes exactly at a loaded equilibrium. The elastic joint torque
reported by `joint_torques` is the restoring torque -K (q - q0), so the
residual equals J^T F minus that torque.
"""

from __future__ import annotations

from dataclasses import dataclass

import math

import numpy as np

from .chain import (
    ChainModel,
    Configuration,
    DeflectionState,
    _finite_scalar,
    check_configuration,
    jacobian,
)
from .errors import SingularConfigurationError

# Relative cutoff on singular values of J^T when deciding whether force
# recovery is well posed.
RANK_TOLERANCE = 1e-10


@dataclass(frozen=True)
class PlanarForce:
    """External force at the end-effector; fx > 0 is compressive."""

    fx: float
    fy: float

    def __post_init__(self):
        object.__setattr__(self, "fx", _finite_scalar(self.fx, "fx"))
        object.__setattr__(self, "fy", _finite_scalar(self.fy, "fy"))


@dataclass(frozen=True)
class EquilibriumPoint:
    """One loaded static equilibrium of the chain.

    stability is one of "stable", "unstable", "saddle". residual_norm is the
    Euclidean norm of the equilibrium residual, re-checked independently of
    whatever solver produced the point.
    """

    configuration: Configuration
    deflection: DeflectionState
    force: PlanarForce
    strain_energy: float
    potential_energy: float
    stability: str
    residual_norm: float

    def __post_init__(self):
        if self.stability not in ("stable", "unstable", "saddle"):
            raise ValueError(f"unknown stability tag {self.stability!r}")
        if not math.isfinite(self.strain_energy) or self.strain_energy < 0.0:
            raise ValueError("strain energy must be finite and nonnegative")


def joint_torques(chain: ChainModel, config: Configuration) -> np.ndarray:
    """Restoring elastic torque at each joint, -k_i (q_i - q_i0)."""
    check_configuration(chain, config)
    return -chain.joint_stiffness * config.displacement


def strain_energy(chain: ChainModel, config: Configuration) -> float:
    """Total spring energy, sum of k_i (q_i - q_i0)^2 / 2."""
    check_configuration(chain, config)
    d = config.displacement
    return 0.5 * float(np.dot(chain.joint_stiffness, d * d))


def potential_energy(
    chain: ChainModel,
    config: Configuration,
    force: PlanarForce,
    deflection: DeflectionState,
) -> float:
    """Strain energy minus the work of the axial force.

    The transverse force does no work because delta_y is pinned at zero
    in every constrained analysis handled here.
    """
    return strain_energy(chain, config) - force.fx * deflection.delta_x


def equilibrium_residual(
    chain: ChainModel, config: Configuration, force: PlanarForce
) -> np.ndarray:
    """Joint-space imbalance J^T F + K (q - q0); zero at an equilibrium."""
    check_configuration(chain, config)
    jac_t = jacobian(chain, config.angles).T
    f = np.array([force.fx, force.fy])
    return jac_t @ f + chain.joint_stiffness * config.displacement


def recover_force(
    chain: ChainModel, config: Configuration
) -> tuple[PlanarForce, float]:
    """Least-squares external force consistent with a configuration.

    Solves min_F || J^T F + K (q - q0) ||_2. At a true constrained
    equilibrium the attained residual is numerically zero; away from one
    it measures how far the configuration is from equilibrium.

    Returns:
        (force, residual_norm).

    Raises:
        SingularConfigurationError: J has rank < 2 (straight or otherwise
            singular configuration), so no finite force is identifiable.
    """
    check_configuration(chain, config)
    jac_t = jacobian(chain, config.angles).T
    tau = chain.joint_stiffness * config.displacement

    u, s, vt = np.linalg.svd(jac_t, full_matrices=False)
    rank = int(np.sum(s > RANK_TOLERANCE * s[0])) if s[0] > 0.0 else 0
    if rank < 2:
        raise SingularConfigurationError(
            f"Jacobian rank {rank} < 2; force recovery is undefined at a "
            "singular configuration"
        )
    f = vt.T @ ((u.T @ -tau) / s)
    residual = float(np.linalg.norm(jac_t @ f + tau))
    return PlanarForce(f[0], f[1]), residual
