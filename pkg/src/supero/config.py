"""Resource limits and run configuration.

All stochastic search (isomorphism candidates, splitting elements for the
Fitting decomposition) draws from a local ``random.Random(seed)`` so runs are
reproducible; the seed travels with the limits object and is embedded in
reports.
"""

from dataclasses import dataclass, field, replace

DEFAULT_SEED = 12345


@dataclass(frozen=True)
class Limits:
    """Knobs bounding the exact computations.

    max_module_dim: refuse to build explicit modules larger than this.
    max_end_dim: bound on endomorphism/radical algebra dimension.
    max_hom_vars: bound on unknowns in intertwiner/extension solves.
    iteration_budget: cap on tilting-extension passes.
    search_budget: random attempts in isomorphism / splitting searches.
    straighten_cache: entries kept per normal-ordering memo table.
    tilting_margin: extra odd-root steps below a window that the tilting
        construction is allowed to use.
    """

    max_module_dim: int = 4096
    max_end_dim: int = 512
    max_hom_vars: int = 20000
    iteration_budget: int = 48
    search_budget: int = 64
    straighten_cache: int = 200_000
    tilting_margin: int = 2
    seed: int = DEFAULT_SEED

    def with_seed(self, seed):
        return replace(self, seed=seed)


DEFAULT_LIMITS = Limits()
