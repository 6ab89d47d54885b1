SEPARATOR_LINE_LENGTH = 60

# Termination threshold on the normalized size monotone
DEFAULT_EPSILON = 5e-5

DEFAULT_EQ_TOL = 1e-7

# Multiples of eq_tol tried when the data band is too thin to solve
EQ_TOL_WIDENING = (10.0, 100.0, 1000.0)

DEFAULT_TAU_RANK = 1e-3

DEFAULT_RESTARTS = 5

# Fresh random starts per step once a previous estimate can seed the search
DEFAULT_WARM_RESTARTS = 1

DEFAULT_COPIES = 10_000

MAX_STEPS_FACTOR = 6

UNITARY_TOL = 1e-10

KRAUS_TOL = 1e-10

HERMITIAN_TOL = 1e-10

PSD_TOL = 1e-8

TRACE_TOL = 1e-8

KET_NORM_TOL = 1e-12

PROBABILITY_CLAMP = 1e-9

ENTROPY_FLOOR = 1e-12

FRANK_WOLFE_MAX_ITER = 20

FRANK_WOLFE_GAP_TOL = 1e-6

# Depolarizing weight on the CNOT target for the imperfect gate
DEFAULT_GATE_ETA = 0.05
