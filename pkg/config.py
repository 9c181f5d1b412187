"""
config settings for confsplit
"""

# resource guards
DEFAULT_BASIS_CEILING = 200000  # max basis elements of one E1 page
ORACLE_MAX_GENERATORS = 12  # max arrangement generators for the brute-force oracles
ORACLE_MAX_FREE_MONOMIALS = 60000  # max free-algebra monomials in the E1 oracle

# run defaults
DEFAULT_N_MAX = 3
DEFAULT_CHECKS_LEVEL = 1  # 0 = fast, 1 = oracles, 2 = full brute force
DEFAULT_SPACE = "unordered"
DEFAULT_FORMAT = "json"

# identity suite truncations
TRUNCATION_GENUS_ZERO = 5
TRUNCATION_GENUS_POSITIVE = 3

# cross-checks
PROJECTOR_MAX_N = 4  # averaging projector sums n! matrices, keep it small

# output
REPORT_SCHEMA_VERSION = 1
JSON_INDENT = 2
