from .types import SensingProblem, RecoveryOutcome, IrlsOptions
from .norms import lp_norm, lp_norm_pth_power
from .instances import make_instance, make_matrix, make_signal, make_noise, ENSEMBLES, SIGNALS
from .irls import irls_recover
