"""Multi-objective quality-diversity optimization toolkit.

Archives of per-cell Pareto sets over a CVT tessellation of measure space,
searched by hypervolume-improvement-ranked CMA-ES emitters with a
threshold-front acceptance mechanism, plus crowding-based map-elites and a
global-front emitter baseline. See ``moqd.cli`` for the benchmark harness.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .archive import CvtArchive, bisect_discount, tessellate_cvt
from .cma import CmaEs
from .domains import DomainSpec, Evaluation, make_domain
from .schedulers import (
    IterationMetrics,
    RunConfig,
    run_emitter_como,
    run_mo_cma_mae,
    run_mome,
)

__version__ = "0.1.0"

__all__ = [
    "CmaEs",
    "CvtArchive",
    "DomainSpec",
    "Evaluation",
    "IterationMetrics",
    "KERNEL_BACKEND",
    "RunConfig",
    "__version__",
    "bisect_discount",
    "make_domain",
    "run_emitter_como",
    "run_mo_cma_mae",
    "run_mome",
    "tessellate_cvt",
]
