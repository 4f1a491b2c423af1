"""Power-exponent evaluation and control.

Transmit powers are written P**r_k with r_k <= 0. All control logic runs on
exact rationals: argmin tie sets and fixed points are decided without any
tolerance, which is what makes simultaneous user fixing well defined.

Three controls are provided. The synchronous fixed-point iteration (gsfpc)
converges to a locally optimal allocation from the shortest-path start. The
K-update scheme (ggpc, single-state channels) lowers all still-active users
by the largest uniform amount that keeps every target met, freezes the users
that hit their limit, and terminates with the unique componentwise-minimal
achieving allocation; ggpc_compound is the same scheme with a worst-state
inner minimum, applicable to any channel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .channel import (
    CompoundChannel,
    RegularChannel,
    is_regular,
    regular_counterpart,
    subnetwork,
    validate,
)
from .errors import (
    GuardExceededError,
    InfeasibleTargetError,
    NonConvergenceError,
    PolyhedralViolationError,
)
from .potential import build_reduced, shortest_paths
from .rationals import parse_rational
from .region import gdof_tuple

ZERO = Fraction(0)

GSFPC_MAX_ITERATIONS = 10_000
ORACLE_MAX_POINTS = 2_000_000
ORACLE_MAX_SCALED = 1 << 40  # keeps int64 grid arithmetic overflow-free


def power_exponents(values, K: int | None = None) -> tuple[Fraction, ...]:
    """Coerce and validate a power exponent vector (entries <= 0)."""
    r = tuple(parse_rational(x) for x in values)
    if K is not None and len(r) != K:
        raise ValueError(f"expected {K} exponents, got {len(r)}")
    for x in r:
        if x > 0:
            raise ValueError(f"power exponents must be <= 0, got {x}")
    return r


def _unwrap(channel) -> CompoundChannel:
    return channel.channel if isinstance(channel, RegularChannel) else channel


def _interference(vec, r, k) -> Fraction:
    """Clamped strongest interference term at one receiver state."""
    worst = max((vec[j] + r[j] for j in range(len(r)) if j != k), default=ZERO)
    return max(worst, ZERO)


def achieved_gdof(channel, r) -> tuple[Fraction, ...]:
    """Per-user GDoF when all interference is treated as noise, worst state."""
    channel = _unwrap(channel)
    validate(channel)
    r = power_exponents(r, channel.K)
    out = []
    for k, states in enumerate(channel.receivers):
        value = min(vec[k] + r[k] - _interference(vec, r, k) for vec in states)
        out.append(max(value, ZERO))
    return tuple(out)


def achieved_gdof_polyhedral(channel, r) -> tuple[Fraction, ...]:
    """Unclamped variant; raises when some user's rate expression is negative
    (the allocation lies outside the polyhedral-valid set)."""
    channel = _unwrap(channel)
    validate(channel)
    r = power_exponents(r, channel.K)
    out = []
    for k, states in enumerate(channel.receivers):
        value, state = min(
            (vec[k] + r[k] - _interference(vec, r, k), l)
            for l, vec in enumerate(states))
        if value < 0:
            raise PolyhedralViolationError(
                f"user {k} state {state} has negative rate expression {value}",
                user=k, state=state)
        out.append(value)
    return tuple(out)


def _require_positive(d) -> None:
    if any(x == 0 for x in d):
        raise ValueError(
            "targets must be strictly positive here; deactivate zero-GDoF "
            "users first (see solve_power)")


def _initial_allocation(channel, d) -> tuple[Fraction, ...]:
    """Shortest-path start; raises with the circuit witness when infeasible."""
    sp = shortest_paths(build_reduced(channel, d))
    if not sp.feasible:
        raise InfeasibleTargetError(
            f"target {tuple(map(str, d))} is outside the polyhedral region",
            cycle=sp.negative_cycle, cycle_length=sp.cycle_length)
    return sp.l_dst


@dataclass(frozen=True)
class GsfpcTrace:
    """Fixed-point iteration history: componentwise non-increasing iterates;
    when converged the last two coincide."""

    iterates: tuple[tuple[Fraction, ...], ...]
    converged: bool
    iterations: int


def gsfpc(channel, d) -> tuple[tuple[Fraction, ...], GsfpcTrace]:
    """Synchronous fixed-point power control on any (possibly multi-state)
    channel.

    Each round sets every user's exponent to the smallest value meeting its
    target against the current interference. From the shortest-path start the
    iterates decrease and reach an exact fixed point, which is locally optimal
    and dominates every local optimum below the start.
    """
    channel = _unwrap(channel)
    validate(channel)
    d = gdof_tuple(d, channel.K)
    _require_positive(d)
    r = _initial_allocation(channel, d)
    iterates = [r]
    for n in range(GSFPC_MAX_ITERATIONS):
        nxt = tuple(
            d[k] - min(vec[k] - _interference(vec, r, k) for vec in states)
            for k, states in enumerate(channel.receivers))
        iterates.append(nxt)
        if nxt == r:
            return nxt, GsfpcTrace(tuple(iterates), True, n + 1)
        r = nxt
    trace = GsfpcTrace(tuple(iterates), False, GSFPC_MAX_ITERATIONS)
    raise NonConvergenceError(
        f"no exact fixed point within {GSFPC_MAX_ITERATIONS} iterations",
        trace=trace)


@dataclass(frozen=True)
class GgpcUpdate:
    """One update: the uniform power drop, the users newly fixed, and the
    allocation / achieved GDoF right after."""

    delta: Fraction
    fixed: tuple[int, ...]
    r: tuple[Fraction, ...]
    achieved: tuple[Fraction, ...]


@dataclass(frozen=True)
class GgpcTrace:
    r0: tuple[Fraction, ...]
    updates: tuple[GgpcUpdate, ...]


def _ggpc_core(channel: CompoundChannel, d) -> tuple[tuple[Fraction, ...], GgpcTrace]:
    d = gdof_tuple(d, channel.K)
    _require_positive(d)
    r0 = _initial_allocation(channel, d)
    r = list(r0)
    active = set(range(channel.K))
    fixed: list[int] = []
    updates: list[GgpcUpdate] = []
    while active:
        margins = {}
        for i in sorted(active):
            per_state = []
            for vec in channel.receivers[i]:
                noise = max([ZERO] + [vec[m] + r[m] for m in fixed])
                per_state.append(r[i] + vec[i] - d[i] - noise)
            margins[i] = min(per_state)
        delta = min(margins.values())
        newly = tuple(sorted(i for i in active if margins[i] == delta))
        for i in active:
            r[i] -= delta
        active -= set(newly)
        fixed.extend(newly)
        updates.append(GgpcUpdate(
            delta, newly, tuple(r), achieved_gdof(channel, r)))
    return tuple(r), GgpcTrace(r0, tuple(updates))


def ggpc(channel, d) -> tuple[tuple[Fraction, ...], GgpcTrace]:
    """K-update control for single-state channels (Nash/global optimum).

    Every update applies the largest uniform power reduction that keeps all
    still-active users at or above target, then freezes the whole argmin set.
    Terminates within K updates; each frozen user achieves its target exactly
    from the moment it is fixed.
    """
    channel = _unwrap(channel)
    validate(channel)
    if not is_regular(channel):
        raise ValueError(
            "ggpc requires a single-state channel; use ggpc_compound or the "
            "regular counterpart")
    return _ggpc_core(channel, d)


def ggpc_compound(channel, d) -> tuple[tuple[Fraction, ...], GgpcTrace]:
    """Compound variant of :func:`ggpc`: each user's margin takes the worst
    state. At termination every user has at least one state meeting its target
    exactly; the output equals ggpc on the regular counterpart."""
    channel = _unwrap(channel)
    validate(channel)
    return _ggpc_core(channel, d)


def locally_optimal(channel, r, d) -> bool:
    """True iff no user can unilaterally lower its exponent and keep its
    target: each r_k must equal its closed-form unilateral minimum."""
    channel = _unwrap(channel)
    validate(channel)
    r = power_exponents(r, channel.K)
    d = gdof_tuple(d, channel.K)
    achieved = achieved_gdof(channel, r)
    if any(a < t for a, t in zip(achieved, d)):
        raise ValueError("allocation does not achieve the target tuple")
    for k, states in enumerate(channel.receivers):
        unilateral = d[k] - min(
            vec[k] - _interference(vec, r, k) for vec in states)
        if r[k] != unilateral:
            return False
    return True


def _scaled_int(value: Fraction, scale: int) -> int:
    scaled = value * scale
    assert scaled.denominator == 1
    return int(scaled)


def oracle_globally_optimal(channel, r, d, grid_step, floor) -> bool:
    """Exhaustive grid check that nothing achieving ``d`` undercuts ``r``.

    Deliberately independent of the control algorithms: scans every grid
    allocation in [floor, 0]^K and looks for one that achieves the target with
    some coordinate strictly below r. The sweep runs on exactly scaled int64
    arrays, so it is both fast and free of rounding. Intended for small K and
    coarse grids; guarded on grid size and scale.
    """
    channel = _unwrap(channel)
    validate(channel)
    r = power_exponents(r, channel.K)
    d = gdof_tuple(d, channel.K)
    step = parse_rational(grid_step)
    bottom = parse_rational(floor)
    if step <= 0:
        raise ValueError("grid_step must be positive")
    if bottom >= 0:
        raise ValueError("floor must be negative")
    K = channel.K

    levels = []
    i = 0
    while -i * step >= bottom:
        levels.append(-i * step)
        i += 1
    if len(levels) ** K > ORACLE_MAX_POINTS:
        raise GuardExceededError(
            f"grid of {len(levels)}^{K} points exceeds the search guard")

    denoms = [step.denominator]
    denoms += [x.denominator for x in r] + [x.denominator for x in d]
    for states in channel.receivers:
        for vec in states:
            denoms += [x.denominator for x in vec]
    scale = lcm(*denoms)
    alpha = [
        [[_scaled_int(x, scale) for x in vec] for vec in states]
        for states in channel.receivers]
    if max(abs(v) for row in alpha for vec in row for v in vec) > ORACLE_MAX_SCALED:
        raise GuardExceededError("scaled strengths exceed the integer guard")

    grid = np.array([_scaled_int(v, scale) for v in levels], dtype=np.int64)
    axes = [
        grid.reshape(tuple(len(levels) if j == k else 1 for j in range(K)))
        for k in range(K)]

    feasible = None
    for k in range(K):
        per_user = None
        for vec in alpha[k]:
            if K == 1:
                interference = np.zeros(1, dtype=np.int64)
            else:
                interference = None
                for j in range(K):
                    if j == k:
                        continue
                    term = vec[j] + axes[j]
                    interference = term if interference is None else np.maximum(
                        interference, term)
                interference = np.maximum(interference, 0)
            value = vec[k] + axes[k] - interference
            per_user = value if per_user is None else np.minimum(per_user, value)
        ok = np.maximum(per_user, 0) >= _scaled_int(d[k], scale)
        feasible = ok if feasible is None else feasible & ok

    undercut = None
    for k in range(K):
        below = axes[k] < _scaled_int(r[k], scale)
        undercut = below if undercut is None else undercut | below
    return not bool(np.any(feasible & undercut))


@dataclass(frozen=True)
class PowerSolution:
    """Allocation with possibly deactivated users.

    ``allocation[i]`` is None for users switched off (zero target); they are
    reported as "silent" rather than with a finite exponent.
    """

    algorithm: str
    allocation: tuple[Fraction | None, ...]
    silent: tuple[int, ...]
    via_counterpart: bool
    trace: GgpcTrace | GsfpcTrace | None


ALGORITHMS = ("sp", "gsfpc", "ggpc", "ggpc-c")


def solve_power(channel, d, algorithm: str) -> PowerSolution:
    """Run one of the named controls, deactivating zero-target users first.

    "sp" returns the shortest-path allocation itself. "ggpc" on a multi-state
    channel routes through the regular counterpart (flagged in the result);
    "ggpc-c" runs the compound update directly.
    """
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; pick from {ALGORITHMS}")
    channel = _unwrap(channel)
    validate(channel)
    d = gdof_tuple(d, channel.K)
    active = [i for i, x in enumerate(d) if x > 0]
    silent = tuple(i for i, x in enumerate(d) if x == 0)
    if not active:
        return PowerSolution(algorithm, (None,) * channel.K, silent, False, None)
    sub = subnetwork(channel, active) if silent else channel
    d_sub = [d[i] for i in active]

    via_counterpart = False
    trace: GgpcTrace | GsfpcTrace | None = None
    if algorithm == "sp":
        r_sub = _initial_allocation(sub, gdof_tuple(d_sub))
    elif algorithm == "gsfpc":
        r_sub, trace = gsfpc(sub, d_sub)
    elif algorithm == "ggpc":
        if is_regular(sub):
            r_sub, trace = ggpc(sub, d_sub)
        else:
            via_counterpart = True
            r_sub, trace = ggpc(regular_counterpart(sub), d_sub)
    else:
        r_sub, trace = ggpc_compound(sub, d_sub)

    allocation: list[Fraction | None] = [None] * channel.K
    for pos, user in enumerate(active):
        allocation[user] = r_sub[pos]
    return PowerSolution(algorithm, tuple(allocation), silent, via_counterpart, trace)
