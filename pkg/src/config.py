"""
Configuration management for coopgraph
"""
from pathlib import Path


class Config:
    """Application configuration"""

    # Project paths
    BASE_DIR = Path(__file__).parent.parent
    OUTPUT_DIR = BASE_DIR / 'output'

    # Application Settings
    LOG_LEVEL = 'INFO'

    # Meeting-time solver
    SOLVER_TOLERANCE = 1e-10
    SOLVER_MAX_SWEEPS = 100_000
    SOLVER_METHOD = 'auto'
    DIRECT_SOLVER_MAX_N = 120
    MEMORY_CAP_N = 3000
    ANALYZE_EXACT_MAX_N = 1000
    GAUSS_SEIDEL_OMEGA = 1.0
    IDENTITY_REL_TOLERANCE = 1e-6
    POLE_TOLERANCE = 1e-9

    # Dynamics
    MIN_COPY_WEIGHT = 1e-12
    STEP_CAP_FACTOR = 10_000
    ORACLE_MAX_N = 14
    ORACLE_FD_DELTA = 1e-4

    # Generators
    CONNECT_MAX_ATTEMPTS = 100
    UCM_RETRY_BUDGET = 50
    UCM_MAX_RESTARTS = 20
    UCM_PARITY_RETRIES = 1000

    # Experiments (desk-scale defaults)
    DEFAULT_REPLICATES = 20
    FAMILIES_PER_FAMILY = 50
    FAMILIES_MIN_N = 100
    FAMILIES_MAX_N = 500
    SWEEP_N_GRID = [20, 40, 60, 80, 100, 120, 140, 160, 180, 200, 220, 240, 260, 280, 300]
    SMALL_Q_FIT_POINTS = 3

    # Per-family parameter ranges (validated at parse time)
    FAMILY_RANGES = {
        'SBM': {
            'n': (2, None),
            'm': (1, None),
            'p': (0.0, 1.0),
            'q': (0.0, 1.0),
        },
        'ER': {
            'n': (1, None),
            'p': (0.0, 1.0),
        },
        'SmallWorld': {
            'n': (3, None),
            'lattice_degree': (2, None),
            'p_add': (0.0, 1.0),
        },
        'PAShifted': {
            'n': (2, None),
            'links_per_node': (1, 5),
            'attractiveness': (0.0, None),
        },
        'PASuperlinear': {
            'n': (2, None),
            'links_per_node': (1, 4),
            'theta': (0.0, 3.0),
        },
        'HolmeKim': {
            'n': (2, None),
            'links_per_node': (1, 5),
            'p_triad': (0.0, 1.0),
        },
        'KlemmEguiluz': {
            'n': (2, None),
            'links_per_node': (1, 5),
            'crossover': (0.0, 1.0),
        },
        'SpatialSF': {
            'n': (2, None),
            'links_per_node': (1, None),
            'r_c': (1e-12, None),
        },
        'UCM': {
            'n': (2, None),
            'gamma': (1.0, 4.0),
            'k_min': (1, None),
        },
    }

    @classmethod
    def ensure_directories(cls):
        """Create necessary directories if they don't exist"""
        cls.OUTPUT_DIR.mkdir(parents=True, exist_ok=True)

    @classmethod
    def validate(cls) -> list[str]:
        """Validate configuration and return list of warnings"""
        warnings = []

        if cls.SOLVER_TOLERANCE >= cls.IDENTITY_REL_TOLERANCE:
            warnings.append(
                "Solver tolerance is not tighter than the remeeting identity check; "
                "identity failures will be indistinguishable from solver noise."
            )

        if not 0.0 < cls.GAUSS_SEIDEL_OMEGA <= 1.0:
            warnings.append("Gauss-Seidel relaxation factor outside (0, 1]; sweeps may diverge.")

        if cls.DIRECT_SOLVER_MAX_N > 200:
            warnings.append("Direct pair-system factorization above n=200 needs several GB of memory.")

        return warnings
