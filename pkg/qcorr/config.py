"""
Configuration constants for qcorr
All tolerances, defaults and file-naming rules are defined here
"""


class LinalgConfig:
    """Dense matrix core tolerances"""

    MAX_DIM = 8  # Three qubits
    ALLOWED_DIMS = (2, 4, 8)

    # Density-matrix axioms
    HERMITIAN_TOL = 1e-12  # max |rho - rho^dagger|
    TRACE_TOL = 1e-12
    PSD_TOL = 1e-10  # smallest eigenvalue allowed: -PSD_TOL
    NORM_TOL = 1e-12  # pure-state normalization

    # Jacobi eigensolver
    HERMITIAN_INPUT_TOL = 1e-10
    JACOBI_TOL = 1e-14  # off-diagonal Frobenius norm, relative to ||A||_F
    JACOBI_MAX_SWEEPS = 64
    PHASE_THRESHOLD = 1e-12  # first component above this is made real-positive

    # Entropy
    ENTROPY_CLIP = 1e-12  # eigenvalues at or below are dropped (0 log 0 = 0)


class ProjectorConfig:
    """Marginal eigen-projector construction"""

    DEGENERACY_TOL = 1e-10  # eigenvalues closer than this share an eigenspace
    GRAM_SCHMIDT_DROP = 1e-8  # projected basis vectors shorter than this are skipped
    SET_TOL = 1e-10  # completeness / orthogonality check


class ChannelConfig:
    """Noisy-channel evolution parameters"""

    MAX_STEP_FACTOR = 1e-3  # RK4 step must satisfy dt <= MAX_STEP_FACTOR / kappa
    TRACE_DRIFT_TOL = 1e-9
    DEFAULT_DT = 1e-4
    DEFAULT_KAPPA = 1.0


class OptimizerConfig:
    """Multistart Nelder-Mead settings for AMID"""

    DEFAULT_RESTARTS = 24
    DEFAULT_SEED = 42
    XATOL = 1e-6  # simplex size in angle space
    FATOL = 1e-12
    MAX_EVALS = 2000  # per restart
    INITIAL_STEP = 0.5  # radians, edge of the starting simplex
    TIE_TOL = 1e-12  # a later restart must beat the incumbent by more than this

    # Reported optima, per qubit in (theta, phi, psi) order
    GHZ_X_OPTIMUM = (1.3, 4.43, 2.31) * 3
    W_X_EARLY_OPTIMUM = (2.23, 0.0, 1.1, 1.1, 0.0, 1.1, 1.1, 0.0, 1.1)
    W_X_LATE_OPTIMUM = (2.2, 2.3, 2.2) * 3
    W_X_SWITCH_KT = 0.06
    W_Y_EARLY_OPTIMUM = (1.57,) * 9
    W_Y_LATE_OPTIMUM = (1.57, 2.22, 1.57) * 3
    W_Y_SWITCH_KT = 0.03


class SweepConfigDefaults:
    """Defaults for kt sweeps"""

    KT_MIN = 0.0
    KT_MAX = 3.0
    POINTS = 61
    FORMAT = 'csv'
    FORMATS = ('csv', 'json')
    MEASURES = ('mid', 'amid', 'both')

    # W_n family defaults reproduce |W>
    WN_N = 1.0
    WN_GAMMA = 0.0
    WN_DELTA = 0.0


class OutputConfig:
    """Output file naming and number formatting"""

    CSV_COLUMNS = ['kt', 'mid', 'amid', 'mutual_information', 's_rho', 's_pi_rho']
    FLOAT_FORMAT = '%.9g'  # 9 significant digits
    SIGNIFICANT_DIGITS = 9
    FIGURE_FILE_PATTERN = 'fig{id}_{state}_{noise}_{measure}.csv'
    JSON_INDENT = 2


class ValidationConfig:
    """Acceptance-suite parameters"""

    GRID_KT_MIN = 0.0
    GRID_KT_MAX = 3.0
    GRID_POINTS = 61
    AMID_POINTS = 61

    GHZ_X_TOL = 1e-9
    CLOSED_FORM_TOL = 1e-8
    ORACLE_TOL = 1e-6
    ORACLE_KTS = (0.1, 0.5, 1.0)
    ORACLE_DT = 1e-4
    XY_TOL = 1e-9
    NORMALIZATION_MID_TOL = 1e-9
    NORMALIZATION_AMID_TOL = 2e-3
    COINCIDENCE_TOL = 2e-3
    OVERESTIMATION_SLACK = 1e-6
    W_Y_ASYMPTOTE = 0.58
    W_Y_ASYMPTOTE_TOL = 0.02
    W_Y_ASYMPTOTE_KT = 3.0
    CROSSOVER_KT_MIN = 0.005           # branch crossover scan, W-X and W-Y
    CROSSOVER_KT_MAX = 0.3
    CROSSOVER_POINTS = 60
    SPOT_VALUE = 0.188722
    SPOT_TOL = 1e-6
    PI_W_X_KTS = (0.1, 0.5)
    PI_W_X_TOL = 1e-6
    SPARSITY_THRESHOLD = 1e-12

    # Property suites
    RANDOM_CASES = 200
    RANDOM_SEED = 20240601

    # Determinism check: figure 1 on a reduced grid, written twice
    DETERMINISM_POINTS = 5
    DETERMINISM_RESTARTS = 6


class RuntimeConfig:
    """Process-level settings"""

    THREADS_ENV_VAR = 'QCORR_THREADS'


class LoggingConfig:
    """Logging configuration"""

    # Log levels
    DEFAULT_LEVEL = 'WARNING'
    FILE_LEVEL = 'DEBUG'

    # Log format
    CONSOLE_FORMAT = '%(levelname)s: %(message)s'
    FILE_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    # Log file (written only when a log directory is requested)
    LOG_FILE = 'qcorr.log'
