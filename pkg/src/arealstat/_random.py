"""Counter-based random streams.

Every random quantity in the package is drawn from a Philox4x64-10 stream
keyed by ``seed + stream * 2**64``. Uniforms are built from the top 53 bits
of each 64-bit word and standard normals by inverse-CDF (``ndtri``), so a
given ``(seed, stream, index)`` always maps to the same number no matter how
the draws are chunked across workers.
"""

import numpy as np
from scipy.special import ndtri

from .errors import ParameterError

_MASK64 = (1 << 64) - 1
_WORDS_PER_COUNTER = 4

# Stream namespaces; unit- or replicate-specific streams add an offset.
GLOBAL_PERMUTATION = 1 << 32
LOCAL_PERMUTATION = 2 << 32
NOISE = 3 << 32
DESIGN = 4 << 32


def _key(seed, stream):
    seed = int(seed)
    stream = int(stream)
    if seed < 0 or stream < 0:
        raise ParameterError("seed and stream must be non-negative integers")
    return (seed & _MASK64) | ((stream & _MASK64) << 64)


def raw_block(seed, stream, start, count):
    """Return ``count`` raw 64-bit words starting at word ``start``."""
    bitgen = np.random.Philox(key=_key(seed, stream))
    skip, rem = divmod(int(start), _WORDS_PER_COUNTER)
    if skip:
        bitgen.advance(skip)
    if rem:
        bitgen.random_raw(rem)
    return bitgen.random_raw(int(count))


def uniforms(seed, stream, count, start=0):
    """Open-interval uniforms in (0, 1)."""
    raw = raw_block(seed, stream, start, count)
    return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def normals(seed, stream, count, start=0):
    """Standard normal variates by inverse-CDF on :func:`uniforms`."""
    return ndtri(uniforms(seed, stream, count, start))


def permutation_keys(seed, stream, n, first, stop):
    """Sort keys for permutations ``first..stop-1`` of ``n`` items.

    Row ``r`` holds the words for permutation ``first + r``; ``argsort`` of a
    row yields that permutation. Permutation ``i`` always reads words
    ``[i*n, (i+1)*n)`` so any chunking gives the same result.
    """
    raw = raw_block(seed, stream, first * n, (stop - first) * n)
    return raw.reshape(stop - first, n)


def partial_shuffles(seed, stream, n, k, count):
    """First ``k`` entries of ``count`` independent random permutations of ``range(n)``.

    Row ``r`` is a partial Fisher-Yates shuffle driven by words
    ``[r*k, (r+1)*k)`` of the stream, so it is an ordered uniform sample of
    ``k`` distinct indices. Cost is O(count * (n + k)) rather than a full sort.
    """
    u = uniforms(seed, stream, count * k).reshape(count, k)
    idx = np.tile(np.arange(n), (count, 1))
    rows = np.arange(count)
    for t in range(k):
        j = t + np.minimum((u[:, t] * (n - t)).astype(np.intp), n - t - 1)
        held = idx[rows, t].copy()
        idx[rows, t] = idx[rows, j]
        idx[rows, j] = held
    return idx[:, :k]
