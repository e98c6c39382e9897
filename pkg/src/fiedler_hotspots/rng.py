"""Counter-based randomness: ``splitmix64-ctr/1``.

Every random decision is a pure function of ``(key, counter)``::

    key     = mix64(seed)
    word    = mix64(key + (counter + 1) * GOLDEN)      (mod 2**64)
    uniform = (word >> 11) * 2**-53                    in [0, 1)

where ``mix64`` is the SplitMix64 output finalizer. Nothing depends on
evaluation order, so SBM pairs can be drawn in any order or in parallel and
Monte-Carlo trial seeds can be derived independently of one another.
The version suffix changes if the construction ever does.
"""

RNG_NAME = "splitmix64-ctr/1"

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

# domain tags keep trial-seed derivation disjoint from pair draws
TRIAL_TAG = 0x7472_6961_6C73_0001


def mix64(z):
    z &= MASK64
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31)


def stream_key(seed):
    """Key used by the kernels for a user seed (any non-negative int < 2**64)."""
    seed = int(seed)
    if seed < 0 or seed > MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return mix64(seed)


def draw_word(seed, counter):
    key = stream_key(seed)
    return mix64((key + (int(counter) + 1) * GOLDEN) & MASK64)


def draw_uniform(seed, counter):
    return (draw_word(seed, counter) >> 11) * (1.0 / (1 << 53))


def trial_seed(base_seed, trial):
    """Seed of Monte-Carlo trial ``trial`` under ``base_seed``."""
    return draw_word(int(base_seed) ^ TRIAL_TAG, trial)


SUBSTREAM_TAG = 0x7375_6273_7472_0001


def substream_seed(base_seed, label):
    """Independent base seed for a labelled sub-experiment (e.g. one ``n``)."""
    return draw_word(int(base_seed) ^ SUBSTREAM_TAG, label)
