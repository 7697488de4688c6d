from .types import SensingMatrix, RicEstimate, as_array
from .ric import exact_ric, sampled_ric_lower_bound, normalize_columns, colex_subsets
