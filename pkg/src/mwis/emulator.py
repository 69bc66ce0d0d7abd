"""Dense state-vector emulator of a driven Rydberg atom register.

The register of N atoms (N <= 16) evolves under

    H(t) = (Omega(t)/2) sum_i sigma_x^i
           - delta(t) sum_i eps_i n_i
           + sum_{i<j} U(|r_i - r_j|) n_i n_j,

with U(r) = C6 / r^6 and hbar = 1, so angular frequencies are in rad/us,
time in us, distance in um. The detuning ramps from negative to positive:
at the start |0...0> is the ground state, and at the end the diagonal is
proportional to the penalized independent-set cost, so low-energy basis
states are heavy independent sets. Basis index k encodes the bitstring of
k with atom i at character i (atom 0 is the most significant bit).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

# C6/h = 138 GHz um^6 for the Rydberg level used; as an angular frequency
# this is 2*pi * 1.38e5 rad/us * um^6.
C6_DEFAULT = 2.0 * math.pi * 1.38e5

MAX_ATOMS = 16
NORM_TOL = 1e-6

OMEGA_MAX_DEFAULT = 2.0 * math.pi * 2.0
DELTA_FINAL_DEFAULT = 2.0 * math.pi * 4.0


def interaction(c6: float, distance: float) -> float:
    """Pairwise van der Waals interaction C6 / distance^6."""
    if distance <= 0:
        raise ValueError("distance must be positive")
    return c6 / distance**6


@dataclass(frozen=True)
class RydbergRegister:
    """Atom positions (um) with per-atom weighting of the detuning term."""

    positions: tuple[tuple[float, float], ...]
    weights: tuple[float, ...]
    c6: float = C6_DEFAULT

    def __post_init__(self) -> None:
        if len(self.positions) > MAX_ATOMS:
            raise ValueError(
                f"register capped at {MAX_ATOMS} atoms, got {len(self.positions)}"
            )
        if len(set(self.positions)) != len(self.positions):
            raise ValueError("atom positions must be pairwise distinct")
        if len(self.weights) != len(self.positions):
            raise ValueError("one weight per atom required")

    def __len__(self) -> int:
        return len(self.positions)

    def pair_interaction(self, i: int, j: int) -> float:
        (xi, yi), (xj, yj) = self.positions[i], self.positions[j]
        return interaction(self.c6, math.hypot(xi - xj, yi - yj))


@dataclass(frozen=True)
class AnnealSchedule:
    """Piecewise-linear control fields (t, Omega, delta), t in [0, total_time].

    A proper annealing schedule turns the drive off at both ends (so the
    initial ground state is |0...0> and the final Hamiltonian is the cost)
    and ramps the detuning from negative to positive. Test fixtures may
    bypass the endpoint constraints via `unchecked`.
    """

    points: tuple[tuple[float, float, float], ...]
    total_time: float

    def __post_init__(self) -> None:
        self._validate_common()
        t0, om0, d0 = self.points[0]
        tN, omN, dN = self.points[-1]
        if om0 != 0.0 or omN != 0.0:
            raise ValueError("Omega must vanish at both schedule endpoints")
        if not (d0 < 0.0 < dN):
            raise ValueError("delta must start negative and end positive")

    def _validate_common(self) -> None:
        if len(self.points) < 2:
            raise ValueError("schedule needs at least two breakpoints")
        times = [p[0] for p in self.points]
        if times[0] != 0.0:
            raise ValueError("schedule must start at t=0")
        for a, b in zip(times, times[1:]):
            if b <= a:
                raise ValueError("breakpoint times must be strictly increasing")
        if self.total_time != times[-1]:
            raise ValueError("total_time must equal the last breakpoint time")
        for _, om, _ in self.points:
            if om < 0:
                raise ValueError("Omega must be nonnegative")

    @classmethod
    def from_points(
        cls, points: list[tuple[float, float, float]]
    ) -> AnnealSchedule:
        pts = tuple((float(t), float(o), float(d)) for t, o, d in points)
        return cls(points=pts, total_time=pts[-1][0])

    @classmethod
    def unchecked(cls, points: list[tuple[float, float, float]]) -> AnnealSchedule:
        """Schedule without the endpoint constraints (for controlled tests)."""
        pts = tuple((float(t), float(o), float(d)) for t, o, d in points)
        obj = object.__new__(cls)
        object.__setattr__(obj, "points", pts)
        object.__setattr__(obj, "total_time", pts[-1][0])
        obj._validate_common()
        return obj

    def controls(self, t: float) -> tuple[float, float]:
        times = [p[0] for p in self.points]
        omegas = [p[1] for p in self.points]
        deltas = [p[2] for p in self.points]
        return (
            float(np.interp(t, times, omegas)),
            float(np.interp(t, times, deltas)),
        )

    def min_gap(self) -> float:
        times = [p[0] for p in self.points]
        return min(b - a for a, b in zip(times, times[1:]))


@dataclass(frozen=True)
class QuantumState:
    """2^N complex amplitudes, computational basis ordered by bitstring value."""

    amplitudes: np.ndarray
    n_atoms: int

    def __post_init__(self) -> None:
        if self.amplitudes.shape != (2**self.n_atoms,):
            raise ValueError("amplitude vector length must be 2^N")

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def bitstring(self, index: int) -> str:
        return format(index, f"0{self.n_atoms}b")


class _HamiltonianAction:
    """Matrix-free application of H for one register.

    Precomputes, per basis state, the weighted excitation count and the
    pairwise interaction sum; the drive term is applied as bit-flip mixing
    along each atom axis of the reshaped amplitude tensor.
    """

    def __init__(self, register: RydbergRegister):
        n = len(register)
        self.n = n
        dim = 2**n
        idx = np.arange(dim, dtype=np.uint32)
        bits = np.empty((dim, n), dtype=np.float64)
        for i in range(n):
            bits[:, i] = (idx >> (n - 1 - i)) & 1
        eps = np.asarray(register.weights)
        eps_sum = np.zeros(dim)
        for i in range(n):
            eps_sum += eps[i] * bits[:, i]
        int_sum = np.zeros(dim)
        for i in range(n):
            for j in range(i + 1, n):
                int_sum += register.pair_interaction(i, j) * bits[:, i] * bits[:, j]
        self.eps_sum = eps_sum
        self.int_sum = int_sum

    def apply(self, omega: float, delta: float, psi: np.ndarray) -> np.ndarray:
        out = (-delta * self.eps_sum + self.int_sum) * psi
        if omega != 0.0:
            tensor = psi.reshape((2,) * self.n)
            drive = np.zeros_like(tensor)
            for axis in range(self.n):
                drive += np.flip(tensor, axis=axis)
            out = out + (omega / 2.0) * drive.reshape(-1)
        return out


_ACTION_CACHE: dict[tuple, _HamiltonianAction] = {}


def _action_for(register: RydbergRegister) -> _HamiltonianAction:
    key = (register.positions, register.weights, register.c6)
    action = _ACTION_CACHE.get(key)
    if action is None:
        action = _HamiltonianAction(register)
        if len(_ACTION_CACHE) > 32:
            _ACTION_CACHE.clear()
        _ACTION_CACHE[key] = action
    return action


def apply_hamiltonian(
    register: RydbergRegister, omega: float, delta: float, state: QuantumState
) -> QuantumState:
    """Return H|psi> for the instantaneous controls (omega, delta)."""
    if len(register) != state.n_atoms:
        raise ValueError("register size does not match state size")
    action = _action_for(register)
    return QuantumState(
        amplitudes=action.apply(omega, delta, state.amplitudes),
        n_atoms=state.n_atoms,
    )


def evolve(
    register: RydbergRegister,
    schedule: AnnealSchedule,
    dt: float,
    norm_log: list[float] | None = None,
) -> QuantumState:
    """Integrate the Schroedinger equation from |0...0> over the schedule.

    Fixed-step fourth-order Runge-Kutta with the control fields interpolated
    linearly between breakpoints; the state is renormalized after each step
    and the evolution aborts if the pre-renormalization squared norm ever
    drifts by more than 1e-6. If given, `norm_log` collects the squared
    norm before renormalization at every step.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if dt > schedule.min_gap() / 10.0:
        raise ValueError(
            "dt must be at most a tenth of the smallest breakpoint gap"
        )
    n = len(register)
    action = _action_for(register)
    total = schedule.total_time
    n_steps = max(1, math.ceil(total / dt))
    step = total / n_steps

    psi = np.zeros(2**n, dtype=np.complex128)
    psi[0] = 1.0

    def deriv(t: float, y: np.ndarray) -> np.ndarray:
        omega, delta = schedule.controls(t)
        return -1j * action.apply(omega, delta, y)

    t = 0.0
    for _ in range(n_steps):
        k1 = deriv(t, psi)
        k2 = deriv(t + step / 2.0, psi + (step / 2.0) * k1)
        k3 = deriv(t + step / 2.0, psi + (step / 2.0) * k2)
        k4 = deriv(t + step, psi + step * k3)
        psi = psi + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += step
        norm_sq = float(np.sum(np.abs(psi) ** 2))
        if norm_log is not None:
            norm_log.append(norm_sq)
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise RuntimeError(
                f"norm drifted to {norm_sq} at t={t}; reduce dt"
            )
        psi = psi / math.sqrt(norm_sq)
    return QuantumState(amplitudes=psi, n_atoms=n)


def sample(state: QuantumState, n_shots: int, seed: int) -> list[str]:
    """Draw n_shots basis bitstrings i.i.d. from the Born distribution."""
    if n_shots < 1:
        raise ValueError("n_shots must be at least 1")
    norm_sq = state.norm_sq()
    if abs(norm_sq - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized (norm^2 = {norm_sq})")
    probs = state.probabilities()
    probs = probs / probs.sum()
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    draws = rng.choice(len(probs), size=n_shots, p=probs)
    return [state.bitstring(int(k)) for k in draws]


def mis_schedule(total_time: float) -> AnnealSchedule:
    """Four-breakpoint anneal: drive ramps up by 0.15 T and off after 0.85 T,
    detuning sweeps linearly from -2*pi*4 to +2*pi*4 between those times.

    The endpoint structure follows the adiabatic encoding (drive off at both
    ends, detuning from its minimum to a positive value); the interior
    magnitudes are engineering defaults.
    """
    if total_time <= 0:
        raise ValueError("total_time must be positive")
    t1 = 0.15 * total_time
    t2 = 0.85 * total_time
    return AnnealSchedule.from_points(
        [
            (0.0, 0.0, -DELTA_FINAL_DEFAULT),
            (t1, OMEGA_MAX_DEFAULT, -DELTA_FINAL_DEFAULT),
            (t2, OMEGA_MAX_DEFAULT, DELTA_FINAL_DEFAULT),
            (total_time, 0.0, DELTA_FINAL_DEFAULT),
        ]
    )


def default_mis_schedule(
    register: RydbergRegister, total_time: float
) -> AnnealSchedule:
    """Register-facing alias of mis_schedule; the values do not depend on
    the register, only the encoding structure does."""
    del register
    return mis_schedule(total_time)


def schedule_to_json(schedule: AnnealSchedule) -> dict:
    return {
        "total_time": schedule.total_time,
        "points": [[t, o, d] for t, o, d in schedule.points],
    }


def schedule_from_json(data: dict) -> AnnealSchedule:
    pts = [(float(t), float(o), float(d)) for t, o, d in data["points"]]
    sched = AnnealSchedule.from_points(pts)
    if "total_time" in data and float(data["total_time"]) != sched.total_time:
        raise ValueError("total_time does not match the last breakpoint")
    return sched


def load_schedule(path: str) -> AnnealSchedule:
    with open(path, encoding="utf-8") as fh:
        return schedule_from_json(json.load(fh))
