import os
from dotenv import load_dotenv

# Load variables from the .env file in the project root
load_dotenv()


def _int_setting(name: str, default: int, minimum: int = 1) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def _float_setting(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"{name} must be a number, got {raw!r}")


# Hard stop for group enumeration and Cayley-graph search
ELEMENT_LIMIT = _int_setting("ISING_ELEMENT_LIMIT", 10_000_000)

# Largest power tried by element_order before giving up
ORDER_BOUND = _int_setting("ISING_ORDER_BOUND", 1024)

# Analytic continuation
ORACLE_STEPS = _int_setting("ISING_ORACLE_STEPS", 4096, minimum=8)
ORACLE_GAMMA = _float_setting("ISING_ORACLE_GAMMA", 0.125)
ORACLE_SEED = _int_setting("ISING_ORACLE_SEED", 20080617, minimum=0)

DATA_DIR = os.getenv("ISING_DATA_DIR", "data")
LOG_LEVEL = os.getenv("ISING_LOG_LEVEL", "WARNING").upper()
