from .assignment import (
    LandmarkSet,
    assign_landmarks,
    assign_rankagg,
    assign_sampling,
    eligible_components,
    sampling_weights,
)
from .config import AssignmentConfig, ComponentRef
from .ranking import (
    TiedRanking,
    all_tied_rankings,
    consensus_ranking,
    kemeny_score,
    kendall_tau_ties,
)
from .selection import ComponentSaturated, select_landmark
