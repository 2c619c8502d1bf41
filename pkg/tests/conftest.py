import pytest

from koufpt.model import KouParams
from koufpt.montecarlo import McConfig, estimate_probabilities

# Parameter set of the worked numeric example (Tables 2-4).
PAPER_PARAMS = KouParams(mu=0.1, sigma=0.2, lam=3.0, eta1=50.0, eta2=100.0 / 3.0, p=0.5)

PAPER_T = 1.0
PAPER_B = 0.3
PAPER_A = 0.2

# Reference values from the published comparison tables.
EULER_FPT = 0.2558436
EULER_JOINT = 0.223616
GAVER_N10 = 0.2558433
GAVER_N20 = 0.2558430

MC_SEEDS = tuple(range(1, 11))


@pytest.fixture(scope="session")
def paper_params() -> KouParams:
    return PAPER_PARAMS


@pytest.fixture(scope="session")
def mc_ten_seed_results():
    """The ten fixed-seed Monte Carlo runs shared by the statistical tests.

    Expensive (~25 s), so computed once per session.
    """
    results = {}
    for seed in MC_SEEDS:
        cfg = McConfig(grid_points=2000, replications=20000, seed=seed, ci_level=0.95)
        results[seed] = estimate_probabilities(PAPER_PARAMS, PAPER_T, PAPER_A, PAPER_B, cfg)
    return results
