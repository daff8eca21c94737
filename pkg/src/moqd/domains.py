"""Benchmark objective/measure functions normalized to [0, 100].

Three domains: shifted-extremum sphere and rastrigin (bi- or tri-objective)
with clipped-coordinate-sum measures, and the planar arm (joint-angle
variance objectives, forward-kinematics tip measures). Objectives are
maximized, normalized so the reference point is the zero vector. Evaluations
are pure and deterministic; the arm reports out-of-range variances as failed
evaluations rather than raising.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CLIP_BOUND",
    "DomainSpec",
    "Evaluation",
    "clip",
    "eval_arm",
    "eval_rastrigin",
    "eval_sphere",
    "evaluate_batch",
    "make_domain",
]

CLIP_BOUND = 5.12

# Normalization spans at n=100, scaled linearly for other dimensions so
# desk-scale runs keep objectives in [0, 100].
_SPHERE_SPAN_100 = 3893.76
_RASTRIGIN_SPAN_100 = 20214.97

# Arm span: twice the expected variance of uniform joint angles in [-pi, pi];
# dimension-independent.
_ARM_SPAN = 6.58

_SHIFTS = {2: (4.0, -4.0), 3: (4.0, 0.0, -4.0)}


@dataclass(frozen=True)
class DomainSpec:
    """One benchmark domain: name, dimension, objective shifts, link length."""

    name: str
    dimension: int
    shifts: tuple[float, ...]
    link_length: float = 1.0

    @property
    def objectives(self) -> int:
        return 2 if self.name == "arm" else len(self.shifts)

    @property
    def measure_bounds(self) -> tuple[tuple[float, float], tuple[float, float]]:
        """Tightest per-dimension box containing all reachable measures."""
        if self.name == "arm":
            radius = self.dimension * self.link_length
        else:
            radius = CLIP_BOUND * (self.dimension // 2)
        return ((-radius, radius), (-radius, radius))


@dataclass(frozen=True)
class Evaluation:
    """Evaluated objectives (normalized), measures, and the failure flag."""

    objectives: np.ndarray
    measures: np.ndarray
    failed: bool = False


def make_domain(name: str, dimension: int, objectives: int = 2) -> DomainSpec:
    if name not in ("sphere", "rastrigin", "arm"):
        raise ValueError(f"unknown domain {name!r}")
    if dimension < 2 or dimension % 2 != 0:
        raise ValueError("dimension must be an even integer >= 2")
    if objectives not in (2, 3):
        raise ValueError("objectives must be 2 or 3")
    if name == "arm":
        if objectives != 2:
            raise ValueError("the arm domain is bi-objective only")
        return DomainSpec(name, dimension, ())
    return DomainSpec(name, dimension, _SHIFTS[objectives])


def clip(x):
    """Restrict a coordinate's measure contribution to [-5.12, 5.12].

    Pass-through inside the bound; 5.12/x outside (which folds large
    magnitudes toward zero).
    """
    x = np.asarray(x, dtype=np.float64)
    out = x.copy()
    over = np.abs(x) > CLIP_BOUND
    out[over] = CLIP_BOUND / x[over]
    return out if out.ndim else float(out)


def _clip_measures(X: np.ndarray) -> np.ndarray:
    half = X.shape[1] // 2
    clipped = clip(X)
    return np.column_stack([clipped[:, :half].sum(axis=1), clipped[:, half:].sum(axis=1)])


def _normalize(raw: np.ndarray, span: float) -> np.ndarray:
    return np.clip(100.0 * (1.0 + raw / span), 0.0, 100.0)


def _sphere_batch(X: np.ndarray, spec: DomainSpec):
    span = _SPHERE_SPAN_100 * spec.dimension / 100.0
    raw = np.column_stack([-((X - s) ** 2).sum(axis=1) for s in spec.shifts])
    objs = _normalize(raw, span)
    return objs, _clip_measures(X), np.zeros(X.shape[0], dtype=bool)


def _rastrigin_batch(X: np.ndarray, spec: DomainSpec):
    span = _RASTRIGIN_SPAN_100 * spec.dimension / 100.0
    raw = np.column_stack(
        [
            (10.0 * np.cos(2.0 * np.pi * (X - s)) - (X - s) ** 2).sum(axis=1)
            for s in spec.shifts
        ]
    )
    objs = _normalize(raw, span)
    return objs, _clip_measures(X), np.zeros(X.shape[0], dtype=bool)


def _arm_batch(X: np.ndarray, spec: DomainSpec):
    half = X.shape[1] // 2
    raw = np.column_stack([-X[:, :half].var(axis=1), -X[:, half:].var(axis=1)])
    failed = (raw < -_ARM_SPAN).any(axis=1)
    objs = 100.0 * (1.0 + raw / _ARM_SPAN)
    angles = np.cumsum(X, axis=1)
    measures = np.column_stack(
        [
            spec.link_length * np.cos(angles).sum(axis=1),
            spec.link_length * np.sin(angles).sum(axis=1),
        ]
    )
    return objs, measures, failed


_BATCH_FNS = {"sphere": _sphere_batch, "rastrigin": _rastrigin_batch, "arm": _arm_batch}


def evaluate_batch(X, spec: DomainSpec):
    """Evaluate a batch of solutions; returns (objectives, measures, failed)."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if X.shape[1] != spec.dimension:
        raise ValueError(f"solutions must have dimension {spec.dimension}")
    return _BATCH_FNS[spec.name](X, spec)


def _single(X, spec: DomainSpec) -> Evaluation:
    objs, measures, failed = evaluate_batch(np.asarray(X)[None, :], spec)
    return Evaluation(objs[0], measures[0], bool(failed[0]))


def eval_sphere(x, spec: DomainSpec) -> Evaluation:
    """Shifted-extremum sphere: objective j is -sum((x_i - shift_j)^2), normalized."""
    return _single(x, spec)


def eval_rastrigin(x, spec: DomainSpec) -> Evaluation:
    """Shifted rastrigin: objective j sums 10*cos(2*pi*(x_i - shift_j)) - (x_i - shift_j)^2."""
    return _single(x, spec)


def eval_arm(x, spec: DomainSpec) -> Evaluation:
    """Planar arm: negated per-half joint variances; tip position measures."""
    return _single(x, spec)
