"""
Configuration settings for the CoopNet simulator
Centralized configuration to avoid hardcoded values
"""

import os
from pathlib import Path

# Base directories
BASE_DIR = Path(__file__).parent
PROJECT_ROOT = BASE_DIR.parent
LOGS_DIR = Path(os.getenv("COOPNET_LOGS_DIR", str(BASE_DIR / "logs")))
OUTPUT_DIR = Path(os.getenv("COOPNET_OUT_DIR", str(PROJECT_ROOT / "results")))

LOGS_DIR.mkdir(parents=True, exist_ok=True)

# Simulation parameters (reference setup defaults)
DEFAULT_NODES = int(os.getenv("COOPNET_NODES", "30"))
DEFAULT_RADIUS = float(os.getenv("COOPNET_RADIUS", "1.0"))
DEFAULT_PATHLOSS_EXPONENT = float(os.getenv("COOPNET_ALPHA", "4.0"))
DEFAULT_NU = float(os.getenv("COOPNET_NU", "0.39"))
DEFAULT_SLOTS_PER_ITERATION = int(os.getenv("COOPNET_SLOTS", "1000"))
DEFAULT_ITERATIONS = int(os.getenv("COOPNET_ITERATIONS", "1000"))
DEFAULT_TOPOLOGIES = int(os.getenv("COOPNET_TOPOLOGIES", "1000"))

# Folded K * P_R0; only relative energies are reported
UNIT_COST = 1.0

# Fitness at the start of iteration 0 (F0)
DEFAULT_INITIAL_FITNESS = 0.0

# Seeds
DEFAULT_MASTER_SEED = 20140101
SEED_ENV_VAR = "COOPNET_SEED"

# Reporting
DEFAULT_RADIUS_BINS = 10
DEFAULT_NU_SWEEP = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
DEFAULT_ALPHA_SWEEP = (2.0, 2.5, 3.0, 3.5, 4.0)

# Worker pool
DEFAULT_WORKERS = int(os.getenv("COOPNET_WORKERS", "1"))

# Logging
LOG_LEVEL = os.getenv("COOPNET_LOG_LEVEL", "INFO")
LOG_FILE_NAME = "coopnet.log"

# Application settings
APP_NAME = "CoopNet"
APP_VERSION = "1.0.0"
