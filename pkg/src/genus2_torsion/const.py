from typing import Final

# Field arithmetic
MAX_FIELD_SIZE: Final[int] = 2**31
MAX_EXTENSION_DEGREE: Final[int] = 12
TABLE_FIELD_CAP: Final[int] = 2**16
ROOT_SEARCH_CAP: Final[int] = 2**20

# Candidate primes ℓ
AUTO_ELL_BOUND: Final[int] = 10**4

# Exhaustive computations
ENUMERATION_CAP: Final[int] = 256
SEARCH_FIELD_CAP: Final[int] = 13
SAMPLED_SPAN_CAP: Final[int] = 10**5
SAMPLING_STALE_ROUNDS: Final[int] = 64
SUPPORT_RETRIES: Final[int] = 16
DEFAULT_EMBEDDING_CAP: Final[int] = 24

# CLI exit codes
EXIT_PASS: Final[int] = 0
EXIT_INVALID: Final[int] = 1
EXIT_INCONCLUSIVE: Final[int] = 2
EXIT_MISMATCH: Final[int] = 3
