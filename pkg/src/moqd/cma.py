"""CMA-ES engine with score-ranked adaptation, selection rules, and restarts.

A standard (mu/mu_w, lambda) CMA-ES with explicit step size, cumulative
step-size adaptation, and rank-one plus rank-mu covariance updates. The
engine is comparison-based: ``tell`` consumes candidate scores only through
their ranking, with failed evaluations ordered strictly below everything
else. Selection is either ``mu`` (top half, logarithmic weights) or
``filter`` (all inserted candidates, falling back to ``mu`` when none were
inserted). Restart triggers cover the numeric convergence conditions
(condition number, step-size blow-up, stagnation) and the archive-driven
cycle rule based on cell-visit counts.

One instance is owned by one logical thread; random streams are passed in
by the caller, so restarts never reseed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

__all__ = [
    "ArchiveVisitStats",
    "CandidateStatus",
    "CmaEs",
    "CONDITION_LIMIT",
    "STAGNATION_WINDOW",
    "STEP_BLOWUP_FACTOR",
]

# Numeric restart thresholds ("basic" rule).
CONDITION_LIMIT = 1e14
STEP_BLOWUP_FACTOR = 1e4
STAGNATION_WINDOW = 50

# Cycle restart fires when the most recently visited cell exceeds this
# multiple of the mean visit count.
CYCLE_VISIT_FACTOR = 10.0


class CandidateStatus(IntEnum):
    FAILED = -1
    REJECTED = 0
    INSERTED = 1


@dataclass(frozen=True)
class ArchiveVisitStats:
    """Visit statistics consumed by the cycle restart rule."""

    last_cell_visits: float
    mean_visits: float


def _log_weights(mu: int) -> np.ndarray:
    w = math.log(mu + 0.5) - np.log(np.arange(1, mu + 1))
    return w / w.sum()


class CmaEs:
    """One CMA-ES emitter: ask for a batch, tell ranked results, restart."""

    def __init__(self, x0, sigma0: float, batch_size: int):
        x0 = np.asarray(x0, dtype=np.float64)
        if x0.ndim != 1 or x0.shape[0] < 1:
            raise ValueError("x0 must be a 1-D vector")
        if sigma0 <= 0:
            raise ValueError("sigma0 must be positive")
        if batch_size < 1:
            raise ValueError("batch_size must be positive")
        n = x0.shape[0]
        self.n = n
        self.sigma0 = float(sigma0)
        self.batch_size = int(batch_size)
        self.chi_n = math.sqrt(n) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n))
        # Lazy eigendecomposition refresh interval, standard cost control.
        self._eig_gap = max(1, n // (10 * batch_size))
        self._init_state(x0, sigma0)

    def _init_state(self, mean: np.ndarray, sigma: float) -> None:
        self.mean = np.array(mean, dtype=np.float64)
        self.sigma = float(sigma)
        self.cov = np.eye(self.n)
        self.path_sigma = np.zeros(self.n)
        self.path_c = np.zeros(self.n)
        self.generation = 0
        self._stagnation = 0
        self._eig_vecs = np.eye(self.n)
        self._eig_vals = np.ones(self.n)
        self._eig_stale = 0
        self._eig_failed = False

    # -- sampling ---------------------------------------------------------

    def ask(self, batch: int, rng: np.random.Generator) -> np.ndarray:
        """Sample ``batch`` solutions from N(mean, sigma^2 C), deterministically."""
        if batch < 1:
            raise ValueError("batch must be positive")
        self._refresh_eig()
        z = rng.standard_normal((batch, self.n))
        y = (z * np.sqrt(self._eig_vals)) @ self._eig_vecs.T
        return self.mean + self.sigma * y

    def _refresh_eig(self) -> None:
        if self._eig_stale < self._eig_gap and not self._eig_failed:
            return
        try:
            vals, vecs = np.linalg.eigh(self.cov)
        except np.linalg.LinAlgError:
            self._eig_failed = True
            return
        if not (np.isfinite(vals).all() and vals[0] > 0):
            self._eig_failed = True
            return
        self._eig_vals = vals
        self._eig_vecs = vecs
        self._eig_stale = 0
        self._eig_failed = False

    # -- adaptation -------------------------------------------------------

    def rank(self, scores, statuses) -> list[int]:
        """Candidate indices best-first: failed strictly last, ties by index."""
        scores = np.asarray(scores, dtype=np.float64)
        statuses = np.asarray(statuses)
        if scores.shape[0] == 0:
            raise ValueError("cannot rank an empty candidate list")

        def key(i: int):
            if statuses[i] == CandidateStatus.FAILED:
                return (1, 0.0, i)
            return (0, -scores[i], i)

        return sorted(range(scores.shape[0]), key=key)

    def tell(self, solutions, scores, statuses, selection: str = "mu") -> None:
        """Adapt mean, covariance, paths, and step size from ranked candidates."""
        solutions = np.asarray(solutions, dtype=np.float64)
        if solutions.ndim != 2 or solutions.shape[0] == 0:
            raise ValueError("tell requires at least one candidate")
        if selection not in ("mu", "filter"):
            raise ValueError(f"unknown selection rule {selection!r}")
        lam = solutions.shape[0]
        statuses = np.asarray(statuses)
        order = self.rank(scores, statuses)

        if np.any(statuses == CandidateStatus.INSERTED):
            self._stagnation = 0
        else:
            self._stagnation += 1

        if selection == "filter":
            parents = [i for i in order if statuses[i] == CandidateStatus.INSERTED]
            if not parents:
                parents = order[: max(1, lam // 2)]
        else:
            parents = order[: max(1, lam // 2)]

        n = self.n
        mu = len(parents)
        weights = _log_weights(mu)
        mu_eff = 1.0 / float(np.sum(weights**2))
        c_sigma = (mu_eff + 2.0) / (n + mu_eff + 5.0)
        d_sigma = 1.0 + 2.0 * max(0.0, math.sqrt((mu_eff - 1.0) / (n + 1.0)) - 1.0) + c_sigma
        c_c = (4.0 + mu_eff / n) / (n + 4.0 + 2.0 * mu_eff / n)
        c_1 = 2.0 / ((n + 1.3) ** 2 + mu_eff)
        c_mu = min(1.0 - c_1, 2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((n + 2.0) ** 2 + mu_eff))

        y = (solutions[parents] - self.mean) / self.sigma
        y_w = weights @ y
        self.mean = self.mean + self.sigma * y_w

        self._refresh_eig()
        inv_sqrt_y = self._eig_vecs @ (
            (self._eig_vecs.T @ y_w) / np.sqrt(np.maximum(self._eig_vals, 1e-300))
        )
        self.path_sigma = (1.0 - c_sigma) * self.path_sigma + math.sqrt(
            c_sigma * (2.0 - c_sigma) * mu_eff
        ) * inv_sqrt_y

        self.generation += 1
        ps_norm = float(np.linalg.norm(self.path_sigma))
        h_sigma = ps_norm / math.sqrt(
            1.0 - (1.0 - c_sigma) ** (2.0 * self.generation)
        ) < (1.4 + 2.0 / (n + 1.0)) * self.chi_n

        self.path_c = (1.0 - c_c) * self.path_c + (
            h_sigma * math.sqrt(c_c * (2.0 - c_c) * mu_eff)
        ) * y_w

        rank_mu = (weights[:, None] * y).T @ y
        self.cov = (
            (1.0 - c_1 - c_mu) * self.cov
            + c_1
            * (
                np.outer(self.path_c, self.path_c)
                + (not h_sigma) * c_c * (2.0 - c_c) * self.cov
            )
            + c_mu * rank_mu
        )
        self.cov = (self.cov + self.cov.T) / 2.0
        self.sigma = self.sigma * math.exp(
            (c_sigma / d_sigma) * (ps_norm / self.chi_n - 1.0)
        )
        self._eig_stale += 1

    # -- restarts ---------------------------------------------------------

    def check_restart(self, rule: str, archive_stats: ArchiveVisitStats | None = None) -> bool:
        """Whether the emitter should restart under the given rule."""
        if self._eig_failed:
            return True
        if rule == "basic":
            self._refresh_eig()
            vals = self._eig_vals
            if vals[0] <= 0 or vals[-1] / vals[0] > CONDITION_LIMIT:
                return True
            if self.sigma * math.sqrt(float(vals[-1])) > STEP_BLOWUP_FACTOR * self.sigma0:
                return True
            return self._stagnation >= STAGNATION_WINDOW
        if rule == "cycle":
            if archive_stats is None:
                raise ValueError("cycle restart requires archive visit statistics")
            return (
                archive_stats.mean_visits >= 1.0
                and archive_stats.last_cell_visits
                > CYCLE_VISIT_FACTOR * archive_stats.mean_visits
            )
        raise ValueError(f"unknown restart rule {rule!r}")

    def restart(self, new_mean, sigma0: float) -> None:
        """Reset to an isotropic search at ``new_mean``; histories cleared."""
        new_mean = np.asarray(new_mean, dtype=np.float64)
        if new_mean.shape != (self.n,):
            raise ValueError("restart mean has wrong dimension")
        if sigma0 <= 0:
            raise ValueError("sigma0 must be positive")
        self._init_state(new_mean, sigma0)
