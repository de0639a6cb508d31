"""Pure numpy kernels for fermionic actions on bitmask basis states.

A basis state of a stage is its serial number; bit ``k`` set means the
monadic ``e_(2**k)`` is a factor. Factors are stored high to low, so moving
generator ``k`` to the front passes every set bit above ``k``.
"""
import numpy as np

BACKEND = "python"


def sign_above(states, k):
    """``(-1) ** popcount(s >> (k + 1))`` for each state, as int8."""
    states = np.asarray(states, dtype=np.int64)
    counts = np.bitwise_count(states >> (k + 1))
    return (1 - 2 * (counts & 1)).astype(np.int8)


def apply_word(states, kinds, ks):
    """Apply a word of generators (rightmost letter first) to many states.

    ``kinds[i]`` is 0 for a creator, 1 for an annihilator. Returns the image
    states and signs; a killed state has image -1 and sign 0.
    """
    out = np.array(states, dtype=np.int64, copy=True)
    signs = np.ones(out.shape, dtype=np.int8)
    for kind, k in zip(kinds[::-1], ks[::-1]):
        alive = signs != 0
        bit = np.int64(1) << np.int64(k)
        occupied = (out & bit) != 0
        dead = occupied if kind == 0 else ~occupied
        signs = signs * sign_above(np.where(alive, out, 0), k)
        signs[dead | ~alive] = 0
        out = np.where(signs != 0, out ^ bit, -1)
    return out, signs


def frame_gamma(states, k, eps):
    """Action of ``creator_k + eps * annihilator_k``: a signed permutation."""
    states = np.asarray(states, dtype=np.int64)
    bit = np.int64(1) << np.int64(k)
    s = sign_above(states, k)
    occupied = (states & bit) != 0
    return states ^ bit, np.where(occupied, eps * s, s).astype(np.int8)


def compose(rows_a, signs_a, rows_b, signs_b):
    """Signed-permutation product ``A @ B`` (apply B, then A)."""
    alive = signs_b != 0
    idx = np.where(alive, rows_b, 0)
    rows = np.where(alive, rows_a[idx], -1)
    signs = (signs_a[idx] * signs_b).astype(np.int8)
    signs[~alive] = 0
    rows[signs == 0] = -1
    return rows, signs
