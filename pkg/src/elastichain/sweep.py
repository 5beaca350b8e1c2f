"""Equilibrium paths of non-straight chains by constrained energy search.

The end-point constraint (x0 - delta_x, 0) removes two degrees of freedom
through the two-link closure, leaving the n-2 leading joint angles as free
variables of the strain energy. Minima of that reduced energy are stable
equilibria, maxima and saddles unstable ones; sweeping delta_x and chaining
the minimizer from the previous solution traces a physical loading path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .chain import (
    ChainModel,
    Configuration,
    DeflectionState,
    PlanarPoint,
    _close_chain_raw,
    check_configuration,
    close_chain,
    forward_kinematics,
)
from .errors import (
    NotApplicableError,
    SingularConfigurationError,
    SingularSampleError,
    UnreachableTargetError,
)
from .statics import EquilibriumPoint, PlanarForce, recover_force

# Eigenvalues of the reduced Hessian within this fraction of its largest
# entry are treated as zero when classifying stability.
STABILITY_TOLERANCE = 1e-6
# Central finite-difference steps for the reduced energy.
HESSIAN_STEP = 1e-4
GRADIENT_STEP = 1e-6
# Grid density of the closed-loop scan behind three_link_equilibria.
THREE_LINK_GRID = 1200
# Configurations closer than this (max angle gap, rad) count as duplicates.
DEDUPE_TOLERANCE = 1e-6


@dataclass(frozen=True)
class TwoLinkMechanism:
    """Symmetric two-link mechanism with closed-form force and energy.

    half_angle_init is the initial half-angle of the non-straight shape,
    spring_k the stiffness of each rotational spring, link_length the
    length of each of the two links.
    """

    half_angle_init: float
    spring_k: float
    link_length: float

    def __post_init__(self):
        if not (math.isfinite(self.half_angle_init)
                and math.isfinite(self.spring_k)
                and math.isfinite(self.link_length)):
            raise ValueError("mechanism parameters must be finite")
        if self.spring_k <= 0.0:
            raise ValueError("spring stiffness must be positive")
        if self.link_length <= 0.0:
            raise ValueError("link length must be positive")


def twolink_curve(mech: TwoLinkMechanism, q_samples) -> list[tuple[float, float, float]]:
    """Closed-form force-deflection curve of the two-link mechanism.

    For each configuration angle q the axial deflection, the equilibrium
    force, and the potential energy at that force are returned.

    Returns:
        List of (delta, force, potential) triples, one per sample.

    Raises:
        SingularSampleError: sin(alpha + q) vanishes at some sample, where
            the force expression is undefined.
    """
    alpha = mech.half_angle_init
    k = mech.spring_k
    length = mech.link_length
    samples = np.atleast_1d(np.asarray(q_samples, dtype=float))
    curve = []
    for index, q in enumerate(samples):
        s = math.sin(alpha + q)
        if abs(s) < 1e-12:
            raise SingularSampleError(
                f"sin(alpha + q) vanishes at sample {index} (q = {q:.6g})"
            )
        force = 2.0 * k * q / (length * s)
        delta = 2.0 * length * (math.cos(alpha) - math.cos(alpha + q))
        potential = 2.0 * k * q * q - force * delta
        curve.append((delta, force, potential))
    return curve


def twolink_critical(mech: TwoLinkMechanism) -> float:
    """Critical compressive force 2k/L of the straight two-link mechanism.

    Raises:
        NotApplicableError: the mechanism is not straight; a non-straight
            shape deflects from the first newton of load and has no
            bifurcation.
    """
    if abs(mech.half_angle_init) > 1e-12:
        raise NotApplicableError(
            "critical force is defined only for the straight mechanism "
            f"(half angle = {mech.half_angle_init:.6g})"
        )
    return 2.0 * mech.spring_k / mech.link_length


def classify_stability(hessian) -> tuple[str, bool]:
    """Stability tag from a reduced-energy Hessian.

    Eigenvalues are compared against a scale-aware tolerance. Mixed signs
    give a saddle, all-negative an unstable point, everything else stable.
    The flag reports a degenerate (near-zero) eigenvalue, which the tag
    alone cannot express.

    Returns:
        (tag, degenerate) with tag in {"stable", "unstable", "saddle"}.
    """
    h = np.atleast_2d(np.asarray(hessian, dtype=float))
    if h.shape[0] != h.shape[1]:
        raise ValueError("hessian must be square")
    eigenvalues = np.linalg.eigvalsh(0.5 * (h + h.T))
    tol = STABILITY_TOLERANCE * float(np.max(np.abs(h))) if h.size else 0.0
    positive = int(np.sum(eigenvalues > tol))
    negative = int(np.sum(eigenvalues < -tol))
    degenerate = bool(np.any(np.abs(eigenvalues) <= tol))
    if positive and negative:
        return "saddle", degenerate
    if negative and not positive:
        return "unstable", degenerate
    return "stable", degenerate


def reduced_energy(
    chain: ChainModel,
    initial_config: Configuration,
    leading_angles,
    target: PlanarPoint,
    branch: int = +1,
) -> float:
    """Strain energy of the chain closed onto `target`.

    The first n-2 angles are the free coordinates; the last two come from
    the two-link closure with the requested elbow branch. Infeasible
    closures are reported as +inf so minimizers treat them as barriers.
    """
    check_configuration(chain, initial_config)
    full = _close_chain_raw(
        tuple(chain.link_lengths),
        np.asarray(leading_angles, dtype=float).tolist(),
        target.x,
        target.y,
        int(branch),
    )
    if full is None:
        return math.inf
    reference = initial_config.reference_angles
    stiffness = chain.joint_stiffness
    total = 0.0
    for i in range(chain.n):
        dq = full[i] - reference[i]
        total += stiffness[i] * dq * dq
    return 0.5 * total


@dataclass(frozen=True)
class SweepRequest:
    """Inputs of a force-deflection sweep.

    initial_config is the actuated unloaded shape (angles equal to the
    reference angles); delta_max the largest axial displacement; steps the
    number of samples including delta_x = 0; branch_policy one of "both",
    "positive", "negative"; seeds the number of random restarts per step.
    """

    chain: ChainModel
    initial_config: Configuration
    delta_max: float
    steps: int
    branch_policy: str = "both"
    seeds: int = 8

    def __post_init__(self):
        check_configuration(self.chain, self.initial_config)
        if self.chain.n < 3:
            raise ValueError("sweeps need a chain of at least three links")
        if self.branch_policy not in ("both", "positive", "negative"):
            raise ValueError(
                f"branch_policy must be both/positive/negative, "
                f"got {self.branch_policy!r}"
            )
        steps = int(self.steps)
        if steps < 2:
            raise ValueError("a sweep needs at least two steps")
        object.__setattr__(self, "steps", steps)
        seeds = int(self.seeds)
        if seeds < 0:
            raise ValueError("seeds must be nonnegative")
        object.__setattr__(self, "seeds", seeds)
        delta_max = float(self.delta_max)
        if not math.isfinite(delta_max) or delta_max <= 0.0:
            raise ValueError("delta_max must be positive")
        x0 = forward_kinematics(self.chain, self.initial_config.angles).x
        if delta_max >= x0:
            raise ValueError(
                f"delta_max = {delta_max:.6g} reaches past the unloaded "
                f"end-point x0 = {x0:.6g}"
            )
        object.__setattr__(self, "delta_max", delta_max)

    @property
    def branches(self) -> tuple[int, ...]:
        return {"both": (1, -1), "positive": (1,), "negative": (-1,)}[
            self.branch_policy
        ]


@dataclass
class SweepStepRecord:
    """Which elbow branch and restart produced the point at delta_x."""

    delta_x: float
    branch: int
    restart: int
    note: str = ""


@dataclass(frozen=True)
class SweepAdvisory:
    """A lower-energy minimum found by a restart, disconnected from the path."""

    delta_x: float
    primary_energy: float
    alternative_energy: float
    angle_gap: float


@dataclass(frozen=True)
class SweepTruncation:
    """Marker that the sweep stopped early at delta_x."""

    delta_x: float
    reason: str


@dataclass
class SweepResult:
    """Ordered equilibrium path with quasi-buckling markers.

    points are sorted strictly increasing in delta_x. branch_log has one
    record per point. truncation is set when some delta_x admitted no
    feasible equilibrium and the sweep stopped there.
    """

    points: list[EquilibriumPoint]
    quasi_buckling_markers: list[tuple[float, float]]
    branch_log: list[SweepStepRecord]
    advisories: list[SweepAdvisory] = field(default_factory=list)
    truncation: SweepTruncation | None = None


def detect_quasi_buckling(result, drop_ratio: float = 0.1) -> list[tuple[float, float]]:
    """Stiffness-collapse markers along a force-deflection path.

    The discrete stiffness d fx / d delta_x is compared against the maximum
    stiffness seen over the initial 20% of the path; a marker is emitted at
    every downward crossing below drop_ratio times that reference.

    Args:
        result: a SweepResult, or a sequence of (delta_x, fx) pairs.
        drop_ratio: fraction of the reference stiffness that counts as
            collapsed.

    Returns:
        List of (delta_x, stiffness/reference) markers, possibly empty.
    """
    if not 0.0 < drop_ratio < 1.0:
        raise ValueError("drop_ratio must lie strictly between 0 and 1")
    if hasattr(result, "points"):
        deltas = np.array([p.deflection.delta_x for p in result.points])
        fx = np.array([p.force.fx for p in result.points])
    else:
        pairs = np.asarray(list(result), dtype=float)
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise ValueError("expected a SweepResult or (delta_x, fx) pairs")
        deltas, fx = pairs[:, 0], pairs[:, 1]
    if deltas.size < 3:
        raise ValueError("quasi-buckling detection needs at least 3 points")

    stiffness = np.gradient(fx, deltas)
    span = deltas[-1] - deltas[0]
    reference = float(np.max(stiffness[deltas <= deltas[0] + 0.2 * span]))
    if reference <= 0.0:
        return []
    threshold = drop_ratio * reference
    markers = []
    for i in range(deltas.size):
        if stiffness[i] < threshold and (i == 0 or stiffness[i - 1] >= threshold):
            markers.append((float(deltas[i]), float(stiffness[i] / reference)))
    return markers


# ---------------------------------------------------------------------------
# reduced-space minimization machinery


def _fd_gradient(f, x, step=GRADIENT_STEP):
    x = np.asarray(x, dtype=float)
    grad = np.zeros(x.size)
    for i in range(x.size):
        e = np.zeros(x.size)
        e[i] = step
        grad[i] = (f(x + e) - f(x - e)) / (2.0 * step)
    return grad


def _fd_hessian(f, x, step=HESSIAN_STEP):
    x = np.asarray(x, dtype=float)
    m = x.size
    hess = np.zeros((m, m))
    f0 = f(x)
    for i in range(m):
        ei = np.zeros(m)
        ei[i] = step
        hess[i, i] = (f(x + ei) - 2.0 * f0 + f(x - ei)) / step**2
        for j in range(i + 1, m):
            ej = np.zeros(m)
            ej[j] = step
            hess[i, j] = hess[j, i] = (
                f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)
            ) / (4.0 * step * step)
    return hess


def _newton_polish(f, x, iterations=2):
    """Sharpen a minimizer result with guarded Newton steps.

    Skips silently whenever the local Hessian is not positive definite or a
    step would leave the feasible region; the simplex result then stands.
    """
    x = np.asarray(x, dtype=float)
    for _ in range(iterations):
        grad = _fd_gradient(f, x)
        if not np.all(np.isfinite(grad)):
            return x
        hess = _fd_hessian(f, x)
        if not np.all(np.isfinite(hess)):
            return x
        try:
            np.linalg.cholesky(hess)
        except np.linalg.LinAlgError:
            return x
        step = -np.linalg.solve(hess, grad)
        size = float(np.linalg.norm(step))
        if size > 0.1:
            step *= 0.1 / size
        current = f(x)
        candidate = x + step
        value = f(candidate)
        if math.isfinite(value) and value <= current + 1e-15:
            x = candidate
        else:
            return x
    return x


def _make_objective(lengths, stiffness, reference, tx, branch):
    stiffness = tuple(float(v) for v in stiffness)

    def objective(lead):
        full = _close_chain_raw(lengths, lead.tolist(), tx, 0.0, branch)
        if full is None:
            return math.inf
        total = 0.0
        for i in range(len(lengths)):
            dq = full[i] - reference[i]
            total += stiffness[i] * dq * dq
        return 0.5 * total

    return objective


def _recover_with_guard(chain, config):
    """Force recovery that tolerates torque-free singular configurations."""
    tau = chain.joint_stiffness * config.displacement
    tiny = 1e-9 * float(np.max(chain.joint_stiffness))
    if float(np.max(np.abs(tau))) <= tiny:
        return PlanarForce(0.0, 0.0), float(np.linalg.norm(tau))
    return recover_force(chain, config)


def _snap_to_axis(chain, config, branches):
    """Project the unloaded shape onto the sweep axis.

    Tabulated shapes carry rounding of a few 1e-4 rad, leaving the end-point
    slightly off axis; the trailing two angles are re-solved so the chain
    ends exactly at (x_raw, 0).

    Returns:
        (snapped angle vector, x0, elbow branch of the unloaded shape).
    """
    angles = config.angles
    if not np.allclose(angles, config.reference_angles, atol=1e-9):
        raise ValueError(
            "the sweep starts from the relaxed shape: initial angles must "
            "equal the reference angles"
        )
    point = forward_kinematics(chain, angles)
    total = chain.total_length
    if abs(point.y) > 0.01 * total:
        raise ValueError(
            f"unloaded end-point y = {point.y:.6g} is too far off the sweep "
            "axis to snap"
        )
    target = PlanarPoint(point.x, 0.0)
    best = None
    for branch in branches:
        try:
            full = close_chain(chain, angles[: chain.n - 2], target, branch)
        except UnreachableTargetError:
            continue
        gap = float(np.max(np.abs(full - angles)))
        if best is None or gap < best[2]:
            best = (full, branch, gap)
    if best is None or best[2] > 0.05:
        raise ValueError(
            "could not reproduce the unloaded shape on the sweep axis with "
            "the allowed elbow branches"
        )
    return best[0], point.x, best[1]


def sweep_force_deflection(
    request: SweepRequest, seed: int = 0, drop_ratio: float = 0.1
) -> SweepResult:
    """Trace the force-deflection path of a non-straight chain.

    Each delta_x sample minimizes the reduced strain energy, warm-started
    from the previous point and fortified with random restarts over the
    allowed elbow branches. The path follows the warm-started basin
    (physical continuation); restarts that find lower, disconnected minima
    are logged as advisories rather than jumped to. Strain energy is
    checked for monotone growth and any violation is noted on the branch
    log. A step with no feasible closure truncates the sweep.
    """
    chain = request.chain
    n = chain.n
    lengths = tuple(float(v) for v in chain.link_lengths)
    stiffness_vec = chain.joint_stiffness
    rng = np.random.default_rng(seed)

    snapped, x0, branch0 = _snap_to_axis(
        chain, request.initial_config, request.branches
    )
    reference = tuple(float(v) for v in snapped)
    ref_config = np.asarray(snapped, dtype=float)
    pre_displacement = chain.total_length - x0

    deltas = np.linspace(0.0, request.delta_max, request.steps)
    warm_lead = np.asarray(reference[: n - 2], dtype=float)
    previous_full = ref_config.copy()
    previous_branch = branch0

    points: list[EquilibriumPoint] = []
    log: list[SweepStepRecord] = []
    advisories: list[SweepAdvisory] = []
    truncation = None

    for delta in deltas:
        tx = x0 - float(delta)
        offsets = [np.zeros(n - 2)]
        offsets.extend(
            rng.uniform(-0.5 * math.pi, 0.5 * math.pi, n - 2)
            for _ in range(request.seeds)
        )
        ordered_branches = [previous_branch] + [
            b for b in request.branches if b != previous_branch
        ]

        candidates = []
        for branch in ordered_branches:
            objective = _make_objective(lengths, stiffness_vec, reference, tx, branch)
            for restart, offset in enumerate(offsets):
                start = warm_lead + offset
                with np.errstate(invalid="ignore"):
                    fit = minimize(
                        objective,
                        start,
                        method="Nelder-Mead",
                        options={"xatol": 1e-6, "fatol": 1e-10, "maxiter": 800},
                    )
                if math.isfinite(fit.fun):
                    candidates.append((float(fit.fun), fit.x, branch, restart))

        if not candidates:
            truncation = SweepTruncation(
                delta_x=float(delta),
                reason="no feasible equilibrium found from any start or branch",
            )
            break

        note = ""
        warm = [c for c in candidates if c[3] == 0]
        if warm:
            def continuation_gap(candidate):
                full = _close_chain_raw(
                    lengths, candidate[1].tolist(), tx, 0.0, candidate[2]
                )
                return float(np.max(np.abs(np.asarray(full) - previous_full)))

            energy_min, lead, branch, restart = min(warm, key=continuation_gap)
        else:
            energy_min, lead, branch, restart = min(candidates, key=lambda c: c[0])
            note = "warm start infeasible; continued from a restart"

        objective = _make_objective(lengths, stiffness_vec, reference, tx, branch)
        lead = _newton_polish(objective, lead)
        energy_min = float(objective(lead))
        full = np.asarray(
            _close_chain_raw(lengths, lead.tolist(), tx, 0.0, branch), dtype=float
        )

        for other in candidates:
            if other[2] == branch and np.max(np.abs(other[1] - lead)) <= 1e-3:
                continue
            if other[0] < energy_min - 1e-9:
                advisories.append(
                    SweepAdvisory(
                        delta_x=float(delta),
                        primary_energy=energy_min,
                        alternative_energy=other[0],
                        angle_gap=float(np.max(np.abs(other[1] - lead))),
                    )
                )
                break

        hessian = _fd_hessian(objective, lead)
        if np.all(np.isfinite(hessian)):
            stability, degenerate = classify_stability(hessian)
            if degenerate:
                note = (note + "; " if note else "") + "degenerate stability"
        else:
            stability = "stable"
            note = (note + "; " if note else "") + "hessian stencil hit the workspace boundary"

        config = Configuration(full, ref_config)
        force, residual = _recover_with_guard(chain, config)
        deflection = DeflectionState(
            delta_x=float(delta), delta_y=0.0, pre_displacement=pre_displacement
        )
        points.append(
            EquilibriumPoint(
                configuration=config,
                deflection=deflection,
                force=force,
                strain_energy=energy_min,
                potential_energy=energy_min - force.fx * float(delta),
                stability=stability,
                residual_norm=residual,
            )
        )
        log.append(SweepStepRecord(float(delta), branch, restart, note))
        warm_lead = np.asarray(lead, dtype=float)
        previous_full = full
        previous_branch = branch

    for i in range(1, len(points)):
        drop = points[i - 1].strain_energy - points[i].strain_energy
        if drop > 1e-9 * max(1.0, abs(points[i - 1].strain_energy)):
            log[i].note = (log[i].note + "; " if log[i].note else "") + (
                f"strain energy decreased by {drop:.3g}"
            )

    markers = []
    if len(points) >= 3:
        markers = detect_quasi_buckling(
            [(p.deflection.delta_x, p.force.fx) for p in points], drop_ratio
        )
    return SweepResult(
        points=points,
        quasi_buckling_markers=markers,
        branch_log=log,
        advisories=advisories,
        truncation=truncation,
    )


# ---------------------------------------------------------------------------
# three-link enumeration


def _feasible_arcs(lengths, tx, ty):
    """First-joint intervals where the trailing pair can reach the target.

    The wrist of link 1 moves on a circle of radius L1; the closure is
    feasible where its distance to the target falls inside the annulus of
    the last two links. Returns a list of (lo, hi) angle intervals.
    """
    l1, la, lb = lengths
    distance = math.hypot(tx, ty)
    r_lo, r_hi = abs(la - lb), la + lb
    if distance < 1e-12:
        if r_lo - 1e-12 <= l1 <= r_hi + 1e-12:
            return [(-math.pi, math.pi)]
        return []
    psi = math.atan2(ty, tx)
    c_lo = (l1 * l1 + distance * distance - r_hi * r_hi) / (2.0 * l1 * distance)
    c_hi = (l1 * l1 + distance * distance - r_lo * r_lo) / (2.0 * l1 * distance)
    if c_lo > 1.0 + 1e-12 or c_hi < -1.0 - 1e-12 or c_lo > c_hi + 1e-12:
        return []
    c_lo = max(-1.0, min(1.0, c_lo))
    c_hi = max(-1.0, min(1.0, c_hi))
    inner = math.acos(c_hi)
    outer = math.acos(c_lo)
    if inner < 1e-12:
        return [(psi - outer, psi + outer)]
    return [(psi + inner, psi + outer), (psi - outer, psi - inner)]


def three_link_equilibria(
    chain: ChainModel, initial_config: Configuration, delta: float
) -> list[EquilibriumPoint]:
    """All static equilibria of a three-link chain at one axial deflection.

    With the end-point pinned, a single angle parameterizes the chain; its
    strain energy over the feasible intervals of both elbow branches forms
    closed loops. Every local minimum is a stable equilibrium and every
    local maximum an unstable one. Points are returned sorted by strain
    energy.

    Raises:
        UnreachableTargetError: no first-joint angle reaches the deflected
            end-point.
    """
    check_configuration(chain, initial_config)
    if chain.n != 3:
        raise ValueError("this enumeration is specific to three-link chains")
    delta = float(delta)
    if not math.isfinite(delta) or delta < 0.0:
        raise ValueError("delta must be nonnegative")
    angles = initial_config.angles
    if not np.allclose(angles, initial_config.reference_angles, atol=1e-9):
        raise ValueError(
            "equilibria are enumerated from the relaxed shape: initial "
            "angles must equal the reference angles"
        )
    start = forward_kinematics(chain, angles)
    total = chain.total_length
    if abs(start.y) > 1e-9 * total:
        raise ValueError(
            f"unloaded end-point y = {start.y:.6g} must lie on the axis"
        )

    lengths = tuple(float(v) for v in chain.link_lengths)
    stiffness = chain.joint_stiffness
    reference = tuple(float(v) for v in angles)
    tx = start.x - delta
    arcs = _feasible_arcs(lengths, tx, 0.0)
    if not arcs:
        raise UnreachableTargetError(
            f"no configuration reaches the deflected end-point x = {tx:.6g}"
        )

    def closed_energy(phi, branch):
        full = _close_chain_raw(lengths, [phi], tx, 0.0, branch)
        if full is None:
            return math.inf, None
        total_e = 0.0
        for i in range(3):
            dq = full[i] - reference[i]
            total_e += stiffness[i] * dq * dq
        return 0.5 * total_e, full

    found = []  # (kind, energy, full configuration)

    for lo, hi in arcs:
        span = hi - lo
        if span < 1e-10:
            phi = 0.5 * (lo + hi)
            for branch in (1, -1):
                energy, full = closed_energy(phi, branch)
                if full is not None:
                    found.append(("min", energy, np.asarray(full)))
            continue

        # walk the loop: + branch forward, then - branch backward
        def on_loop(t):
            t = t % 1.0
            if t < 0.5:
                return lo + (t / 0.5) * span, 1
            return hi - ((t - 0.5) / 0.5) * span, -1

        ts = np.linspace(0.0, 1.0, THREE_LINK_GRID, endpoint=False)
        values = np.empty(ts.size)
        for i, t in enumerate(ts):
            phi, branch = on_loop(t)
            values[i] = closed_energy(phi, branch)[0]
        finite = np.isfinite(values)
        if not finite.any():
            continue
        values[~finite] = np.inf

        count = ts.size
        for i in range(count):
            here = values[i]
            if not np.isfinite(here):
                continue
            before = values[(i - 1) % count]
            after = values[(i + 1) % count]
            if here <= before and here <= after and (here < before or here < after):
                kind = "min"
            elif here >= before and here >= after and (here > before or here > after):
                kind = "max"
            else:
                continue
            t_lo = ts[i] - 1.0 / count
            t_hi = ts[i] + 1.0 / count
            sign = 1.0 if kind == "min" else -1.0

            def along(t):
                phi, branch = on_loop(t)
                return sign * closed_energy(phi, branch)[0]

            refined = minimize_scalar(
                along, bounds=(t_lo, t_hi), method="bounded",
                options={"xatol": 1e-13},
            )
            phi, branch = on_loop(float(refined.x))
            energy, full = closed_energy(phi, branch)
            if full is not None:
                found.append((kind, energy, np.asarray(full)))

    found.sort(key=lambda item: item[1])
    unique = []
    for kind, energy, full in found:
        if all(np.max(np.abs(full - other[2])) > DEDUPE_TOLERANCE for other in unique):
            unique.append((kind, energy, full))

    reference_vec = np.asarray(reference)
    pre_displacement = total - start.x
    points = []
    for kind, energy, full in unique:
        config = Configuration(full, reference_vec)
        force, residual = _recover_with_guard(chain, config)
        points.append(
            EquilibriumPoint(
                configuration=config,
                deflection=DeflectionState(
                    delta_x=delta, delta_y=0.0, pre_displacement=pre_displacement
                ),
                force=force,
                strain_energy=energy,
                potential_energy=energy - force.fx * delta,
                stability="stable" if kind == "min" else "unstable",
                residual_norm=residual,
            )
        )
    return points
