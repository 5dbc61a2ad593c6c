"""Noncooperative stay-home/move-out incentive game.

A library and CLI for studying isolation and social-distancing incentives:
mobility-derived payoffs, dominant-strategy and Nash equilibrium checks,
lockdown sustainability projections, and seeded Monte Carlo studies.
"""

__version__ = "0.1.0"

from .errors import (CapacityError, ConfigError, DomainError, ParameterError,
                     SdgameError)
from .figures import (FIGURE_IDS, FigureDataset, GridCell, incentive_grid,
                      reproduce_figure)
from .game import (EquilibriumCertificate, GameInstance, MatrixGame, PayoffParams,
                   PlayerState, Strategy, StrategyProfile, TwoPlayerStep,
                   dominant_strategy_equilibrium, equilibrium_certificate,
                   individual_payoff, is_dominant_strategy, social_incentive,
                   two_player_matrix, verify_nash)
from .geometry import (MobilityTrace, PopulationSnapshot, Position, ProximityRule,
                       aggregate_distance, pairwise_distance, proximity_set,
                       step_deviation, total_deviation)
from .objective import (ConstraintBounds, FeasibilityReport, TinyInstance,
                        Violation, brute_force_optimum, check_constraints,
                        maxmin_objective)
from .scenarios import (EcdfCurve, MonteCarloResult, RunResult, ScenarioConfig,
                        ecdf, evaluate_payoffs, generate_scenario, measure_scenario,
                        monte_carlo, run_once, with_overrides)
from .sustainability import (DailyIncentive, LockdownProjection, ResourcePolicy,
                             daily_incentive, is_sustainable, max_lockdown_days,
                             slot_incentive)

__all__ = [name for name in dir() if not name.startswith("_")]
