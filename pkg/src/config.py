"""
Configuration constants and environment setup.
"""
import os

from dotenv import load_dotenv

# Load environment variables once at module import
load_dotenv()

# Log level for the engines (records go to stderr)
LOG_LEVEL = os.getenv("HOLODIFF_LOG_LEVEL", "WARNING").upper()

# Langfuse configuration
LANGFUSE_BASE_URL = os.getenv("LANGFUSE_BASE_URL", "https://cloud.langfuse.com")

# Kummer action exponent used when a config omits it (tau y = zeta_n^r y)
DEFAULT_R_ACT = 1

# 64-bit linear congruential generator for reproducible sweeps
LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
LCG_MODULUS = 2**64

# Randomized oracle sweep defaults
SWEEP_SEED = int(os.getenv("HOLODIFF_SWEEP_SEED", "42"))
SWEEP_COUNT = 100
SWEEP_PRIMES = (2, 3, 5)
SWEEP_ORDERS = (1, 2, 3, 4)
SWEEP_MAX_BRANCH_VALUES = 3
SWEEP_MAX_POLE_ORDER = 7
