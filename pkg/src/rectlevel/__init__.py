"""Exact level-complexity analysis for families of axis-parallel rectangles."""
from .arrangement import (ArrangementProfile, analyze, analyze_sweep, enumerate_vertices_oracle,
                          level_complexity)
from .bounds import BoundReport, InstanceAnalysis, exact_bound_leq_k, exact_bound_X, verify
from .classification import (ContributionRecord, SMatrix, assign_contributions,
                             check_observation_2_2, check_observation_2_3, classify_inner_extremal,
                             extract_type_L, tabulate_S)
from .estimator import RectangleLevelAnalyzer, check_rects
from .generators import gen_clustered, gen_grid, gen_random, gen_staircase, gen_tightness
from .geometry import (Family, GeneralPositionError, Rect, Vertex, contains_interior, intersects,
                       perturb_to_general_position, reflect, validate_general_position)
from .piercing import (PiercingStructure, check_floor_property, greedy_lines, packing_bounds,
                       packing_number_exact)

__version__ = "0.1.0"
