"""Random clique complex process on the complete graph with uniform edge weights.

Betti-number and maximal-face processes through the critical window, their
vanishing times, spectral (Garland / Zuk) certificates and Monte Carlo
checks of the Poisson and Gumbel limit laws.
"""

__version__ = "0.1.0"

from .errors import (BudgetExceeded, DegenerateInput, InvalidFace, InvalidParameter, OutOfRegime,
                     WindowTooShort)
from .process import (EdgeWeights, EventSchedule, Graph, critical_time, event_schedule,
                      from_upper_triangle, generate_weights, graph_at, rescale_time, trial_seed,
                      weights_from_dict)
from .complex import (SimplicialComplex, clique_complex, from_faces, isolated_link_vertices,
                      link_graph, maximal_k_faces, parse_complex, remove_maximal_k_faces)
from .homology import (PRIME, RATIONAL, BoundaryMatrix, Field, StepFunction, betti, betti_numbers,
                       betti_process, boundary_matrix, euler_check)
from .maximal import (FaceCountProcess, HittingTimes, MaximalityInterval, count_Nhat, count_Nk,
                      count_Nk_star, count_R, hitting_time_generalized, hitting_time_T,
                      hitting_time_T_prime, hitting_times, jump_count, maximality_intervals, nk_process)
from .spectral import (GarlandCertificate, SpectralReport, garland_certify, giant_component, lambda2,
                       normalized_laplacian, spectral_report, zuk_certify)
from .experiments import (ExperimentConfig, TrialRecord, factorial_moments, gumbel_gof,
                          hitting_agreement, mu, nhat_curve, poisson_gof, run_trials)
