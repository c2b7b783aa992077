import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Enumeration and materialization caps
GARSIDE_ENUMERATION_CAP = int(os.getenv("GARSIDE_ENUMERATION_CAP", "10000000"))
GARSIDE_SIMPLES_CAP = int(os.getenv("GARSIDE_SIMPLES_CAP", "10000000"))

# Power iteration and rate comparison
GARSIDE_POWER_TOLERANCE = float(os.getenv("GARSIDE_POWER_TOLERANCE", "1e-10"))
GARSIDE_POWER_MAX_ITER = int(os.getenv("GARSIDE_POWER_MAX_ITER", "100000"))
GARSIDE_RATE_TOLERANCE = float(os.getenv("GARSIDE_RATE_TOLERANCE", "1e-8"))
GARSIDE_ALPHA_BETA_TOLERANCE = float(os.getenv("GARSIDE_ALPHA_BETA_TOLERANCE", "1e-6"))

# Heavy verification (E6 diameter, E7 witnesses, large Π automata)
GARSIDE_HEAVY = os.getenv("GARSIDE_HEAVY", "false").strip().lower() in ("1", "true", "yes", "on")

GARSIDE_FIXTURES_DIR = Path(
    os.getenv("GARSIDE_FIXTURES_DIR", str(Path(__file__).resolve().parent.parent / "fixtures"))
)

# Logging
GARSIDE_LOG_LEVEL = os.getenv("GARSIDE_LOG_LEVEL", "INFO").upper()
GARSIDE_LOG_FILE = os.getenv("GARSIDE_LOG_FILE")  # No file handler unless set

# Validate critical variables
for key, value in {
    "GARSIDE_ENUMERATION_CAP": GARSIDE_ENUMERATION_CAP,
    "GARSIDE_SIMPLES_CAP": GARSIDE_SIMPLES_CAP,
    "GARSIDE_POWER_MAX_ITER": GARSIDE_POWER_MAX_ITER,
}.items():
    if value <= 0:
        raise ValueError(f"{key} must be a positive integer in environment variables")

for key, value in {
    "GARSIDE_POWER_TOLERANCE": GARSIDE_POWER_TOLERANCE,
    "GARSIDE_RATE_TOLERANCE": GARSIDE_RATE_TOLERANCE,
    "GARSIDE_ALPHA_BETA_TOLERANCE": GARSIDE_ALPHA_BETA_TOLERANCE,
}.items():
    if not 0 < value < 1:
        raise ValueError(f"{key} must lie strictly between 0 and 1 in environment variables")

if GARSIDE_LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
    raise ValueError(f"GARSIDE_LOG_LEVEL has an unknown level: {GARSIDE_LOG_LEVEL}")
