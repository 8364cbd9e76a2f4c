from dataclasses import dataclass, field
from typing import List
import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()


def _env_int(name: str, default: int) -> int:
    """Read a positive integer from the environment, falling back to default."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}. Please check your .env file.")
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}.")
    return value


@dataclass
class MorseConfig:
    # Enumeration budget for f(P): maximum number of acyclic matchings visited
    SIMPLEX_BUDGET: int = field(default_factory=lambda: _env_int("MORSEFORGE_SIMPLEX_BUDGET", 5_000_000))

    # Largest rank-band component scanned by height2_subposets
    SUBPOSET_ELEMENT_CAP: int = 12

    # Instances k of the parameterized catalog families 2a/2b
    CATALOG_FAMILY_SIZES: List[int] = field(default_factory=lambda: [2, 3, 4])


@dataclass
class SymmetryConfig:
    AUT_VERTEX_BOUND: int = 24
    GROUP_ORDER_CAP: int = 10_000_000

    # Largest fully connected subcomplex searched by product_order_check
    EXCEPTION_SEARCH_BOUND: int = 6


@dataclass
class AcceptanceConfig:
    SEED: int = field(default_factory=lambda: _env_int("MORSEFORGE_SEED", 1729))

    # Sample sizes of the randomized checks
    UNION_PAIRS: int = 10
    UNION_MAX_EDGES: int = 4
    CONFLUENCE_COMPLEXES: int = 20
    CONFLUENCE_ORDERS: int = 5
    CONFLUENCE_MAX_VERTICES: int = 10
    PARITY_GRAPHS: int = 20
    INDEX_ONE_COMPLEXES: int = 10
    DOUBLE_LEAF_TREES: int = 5
    PURE_TREE_MAX_VERTICES: int = 6

    # Range of the Kozlov table (n = number of path vertices)
    KOZLOV_RANGE: List[int] = field(default_factory=lambda: list(range(2, 9)))

    # Path lengths t probed by the leaf-on-path check
    PATH_LEAF_RANGE: List[int] = field(default_factory=lambda: list(range(3, 7)))


@dataclass
class LoggingConfig:
    # Default logging configuration
    LEVEL: str = field(default_factory=lambda: os.getenv("MORSEFORGE_LOG_LEVEL", "INFO").upper())
    FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


# Create instances of config classes
morse_config = MorseConfig()
symmetry_config = SymmetryConfig()
acceptance_config = AcceptanceConfig()
logging_config = LoggingConfig()
