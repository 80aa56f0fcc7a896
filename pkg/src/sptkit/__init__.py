"""sptkit: exact and rigorously-bounded computation around spt(n).

Exact partition and smallest-parts counts from their generating
functions, traces of singular moduli with rigorous tail bounds, the
truncated Rademacher machinery for p(n) with Lehmer's explicit remainder,
every effective error bound of the underlying analysis, and end-to-end
verification of Chen's six spt inequalities.
"""

from .apfloat import Apfloat, PrecisionError
from .qseries import IntegerSeries, eta_series, eisenstein_E4, f_coefficients, partition_p, spt, spt_series
from .quadforms import QuadraticForm, CosetRep, act, coset_reps, discriminant_data, heegner_point, reduced_forms, select_gamma
from .exactform import MainTermProfile, bessel_I_threehalf, dedekind_sum, kloosterman_A, p_main_term, rademacher_p, spt_main_term
from .trace import TraceResult, evaluate_f_at, main_term_anchor, trace_S, trace_S_exact
from .bounds import BoundsProfile, ThresholdRecord, c_functions, class_number_bound, find_threshold, pds_envelope, q_of_n, spt2, theorem_bounds_Bk, threshold_record
from .verify import ConjectureReport, verify_all, verify_conjecture

__version__ = "0.1.0"
