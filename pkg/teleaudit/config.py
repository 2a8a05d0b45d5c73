"""Tolerances and demo defaults shared by every module."""

# Numerical tolerances
TOL_HERMITIAN = 1e-10        # max entrywise |a - a^dagger|
TOL_EIGEN_SUM = 1e-9         # |sum(eigenvalues) - trace|
TOL_STATE = 1e-10            # normalization, PSD floor, unit trace
TOL_EQUAL = 1e-9             # trace distance below which two states are "equal"
TOL_CHANNEL = 1e-10          # partition, unitarity, projector, trace preservation, Choi PSD
TOL_UNITARY_STRICT = 1e-12   # corrections are exact Paulis
TOL_LIGHTLIKE = 1e-12        # |interval| below which a pair counts as lightlike

# No-cloning witness search
DEFECT_THRESHOLD = 1e-6
DEFAULT_RANDOM_PROBES = 16
MIXTURE_MAX_COMPONENTS = 3

# Frame audit demo events, (t, x) in natural units c = 1
DEFAULT_EVENT_I = (1.0, 0.0)
DEFAULT_EVENT_II = (1.2, 5.0)

# Exit codes
EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_BOUNDARY = 2
