ENUMERATION_CAP = 1000000  # perfect matchings listed before truncating
FACET_CAP = 2 ** 20  # maximal independent sets before the oracle gives up
FACE_CAP = 2 ** 20  # faces materialized for homology
SHELLING_FACET_CAP = 24

SWEEP_CELL_LIMIT = 16  # nA * nB for exhaustive sweeps
SWEEP_CHUNK_SIZE = 256  # grid ranks handed to one worker at a time
# Memoize oracle results per isomorphism class during sweeps
SWEEP_ORACLE_CACHE = True
CANONICAL_KEY_SIDE_LIMIT = 6

# Brute-force order searches try every pair order, so keep n small
BRUTE_FORCE_PAIR_LIMIT = 5

RANDOM_ALGORITHM = "python-mt19937"
