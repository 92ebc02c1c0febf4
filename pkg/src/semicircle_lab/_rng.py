"""Counter-based random streams for per-entry matrix sampling.

One 64-bit root seed expands into an unbounded family of independent
streams addressed by a stream id; stream words are produced by a keyed
avalanche hash (the splitmix64 finalizer), so word (seed, sid, k) is a pure
function of its arguments.  Entries of a matrix can therefore be generated
in any order, or in parallel, with bit-identical results.

Stream schedule used by the ensembles: upper-triangle entry (i, j), i <= j,
with row-major linear index e gets stream 2e for its magnitude draws and
stream 2e+1 for its sign.  Normals come from the Box-Muller transform and
consume exactly two uniform words (counters 0 and 1) per pair; the cosine
element of the pair is the one used.  Bit-exact streams are an
implementation property, not a cross-language contract.

Scalar arithmetic runs on Python ints masked to 64 bits (numpy scalar ops
emit overflow warnings; the wraparound here is the point), array
arithmetic on uint64 arrays, which wrap silently.
"""

import numpy as np

_GOLDEN_INT = 0x9E3779B97F4A7C15
_MIX1_INT = 0xBF58476D1CE4E5B9
_MIX2_INT = 0x94D049BB133111EB
_MASK = (1 << 64) - 1

_GOLDEN = np.uint64(_GOLDEN_INT)

_U53 = 2.0**-53


def _finalize_int(x):
    """splitmix64 avalanche of one 64-bit value (Python-int arithmetic)."""
    x &= _MASK
    x ^= x >> 30
    x = (x * _MIX1_INT) & _MASK
    x ^= x >> 27
    x = (x * _MIX2_INT) & _MASK
    x ^= x >> 31
    return x


def _finalize(x):
    """splitmix64 avalanche of a uint64 array (vectorized twin of
    _finalize_int; kept at >= 1-d so numpy stays on the silent array path)."""
    x = np.atleast_1d(np.asarray(x, dtype=np.uint64)).copy()
    x ^= x >> np.uint64(30)
    x *= np.uint64(_MIX1_INT)
    x ^= x >> np.uint64(27)
    x *= np.uint64(_MIX2_INT)
    x ^= x >> np.uint64(31)
    return x


def stream_keys(seed, sids):
    """Per-stream keys for a root seed and an array of stream ids."""
    seed_key = _finalize_int((int(seed) + _GOLDEN_INT) & _MASK)
    sids = np.atleast_1d(np.asarray(sids, dtype=np.uint64))
    sid_keys = _finalize(sids * _GOLDEN + _GOLDEN)
    return _finalize(np.uint64(seed_key) ^ sid_keys)


def stream_word(keys, counter):
    """Raw 64-bit word at a counter position of each stream."""
    keys = np.atleast_1d(np.asarray(keys, dtype=np.uint64))
    offset = ((int(counter) + 1) * _GOLDEN_INT) & _MASK
    return _finalize(keys + np.uint64(offset))


def stream_uniform(keys, counter):
    """Uniform doubles in [2^-53, 1) from one word per stream."""
    w = stream_word(keys, counter)
    u = (w >> np.uint64(11)).astype(np.float64) * _U53
    return np.maximum(u, _U53)


def stream_normal(keys):
    """One standard normal per stream via Box-Muller on counters 0 and 1."""
    u1 = stream_uniform(keys, 0)
    u2 = stream_uniform(keys, 1)
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)


def stream_sign(keys):
    """Fair signs (+1.0 / -1.0) from the top bit of counter-0 words."""
    w = stream_word(keys, 0)
    return np.where(w >> np.uint64(63) == 0, 1.0, -1.0)


def derive_root(seed, label):
    """Deterministic sub-seed for a labelled role (e.g. the two sides of a
    paired experiment); folds the label bytes into the root seed."""
    h = int(seed) & _MASK
    for byte in label.encode("utf-8"):
        h = _finalize_int((h + byte * _GOLDEN_INT + _GOLDEN_INT) & _MASK)
    return _finalize_int(h)
