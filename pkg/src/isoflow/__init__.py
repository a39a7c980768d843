"""Curve shortening flow, isoperimetric profiles, and comparison bounds."""

from .curves import (CurveGeometry, SampledCurve, compute_geometry, hausdorff_distance,
                     normalize_to_area_pi, resample_by_arclength,
                     self_intersection_check, vertex_count)
from .support import (SupportFunction, radius_of_curvature_from_support,
                      support_of_ellipse, support_to_curve)
from .flow import FlowConfig, FlowState, csf_step, evolve, make_state, ncsf_step, \
    time_reparametrization
from .models import (expander_curve, expander_model, expander_theta_max, grim_reaper,
                     paperclip_boundary, paperclip_curvature,
                     paperclip_max_curvature_normalized, paperclip_normalized,
                     paperclip_support)
from .profiles import Profile, disk_exterior_profile, disk_profile
from .modelfamily import (expander_profile, model_profile_from_support,
                          paperclip_profile, y_family_lengths)
from .arcsearch import ArcCandidate, arc_candidates, exterior_generic_profile, \
    generic_profile, turning_tangents_check
from .fcal import FValue, G_operator, calF, calF_oracle
from .comparison import (VProfile, comparison_rhs, concave_envelope, curvature_lower_bound,
                         curvature_upper_bound, find_t0, integrate_comparison_pde,
                         pde_residual, profile_dominates)
from .fixtures import fixture_names, fixtures, get_fixture

__version__ = "0.1.0"
