"""Pure-Python jump-chain kernel.

This is the reference implementation of the compiled ``_simcore`` module and
must stay operation-for-operation identical to it: same counter-based
generator, same floating-point expressions in the same order, so that both
backends produce bit-identical trajectories.
"""

from __future__ import annotations

import math

import numpy as np

MASK = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15
INV_2_53 = 1.0 / 9007199254740992.0

BACKEND = "python"


def mix64(x: int) -> int:
    """The SplitMix64 finalizer."""
    x &= MASK
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & MASK
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & MASK
    x ^= x >> 31
    return x


def stream_key(seed: int, stream: int) -> int:
    return mix64(mix64(seed & MASK) ^ mix64(((stream + 1) * GOLDEN) & MASK))


def uniform(key: int, counter: int) -> float:
    """Counter-based draw in the open interval (0, 1)."""
    x = mix64((key + (counter + 1) * GOLDEN) & MASK)
    return ((x >> 11) + 0.5) * INV_2_53


def _rates(params, nu, out):
    z, zp, w, wp = params
    n = len(nu)
    total = 0.0
    for i in range(n):
        li = nu[i] - i
        # up move
        r = 0.0
        if i == 0 or nu[i - 1] > nu[i]:
            x = nu[i] - i
            r = (z - x) * (zp - x)
            ratio = 1.0
            for j in range(n):
                if j != i:
                    lj = nu[j] - j
                    ratio = ratio * ((li + 1 - lj) / (li - lj))
            r = r * ratio
        out[2 * i] = r
        total = total + r
        # down move
        r = 0.0
        if i == n - 1 or nu[i] > nu[i + 1]:
            y = nu[i] - i - 1 + n
            r = (w + y) * (wp + y)
            ratio = 1.0
            for j in range(n):
                if j != i:
                    lj = nu[j] - j
                    ratio = ratio * ((li - 1 - lj) / (li - lj))
            r = r * ratio
        out[2 * i + 1] = r
        total = total + r
    return total


def _advance(params, nu, horizon, key, max_jumps, record):
    n = len(nu)
    rates = [0.0] * (2 * n)
    t = 0.0
    counter = 0
    jumps = 0
    truncated = False
    while True:
        total = _rates(params, nu, rates)
        if not total > 0.0:
            break
        u = uniform(key, counter)
        counter += 1
        dt = -math.log(u) / total
        if t + dt > horizon:
            break
        t = t + dt
        target = uniform(key, counter) * total
        counter += 1
        acc = 0.0
        choice = -1
        for k in range(2 * n):
            if rates[k] > 0.0:
                choice = k
                acc = acc + rates[k]
                if acc > target:
                    break
        i = choice // 2
        nu[i] += 1 if choice % 2 == 0 else -1
        jumps += 1
        if record is not None:
            record(t, nu)
        if jumps >= max_jumps:
            truncated = True
            break
    return jumps, truncated


def run_trajectory(params, nu0, horizon, seed, stream, max_jumps):
    """One trajectory; returns (times, states array, truncated)."""
    nu = [int(x) for x in nu0]
    times = [0.0]
    states = [tuple(nu)]

    def record(t, state):
        times.append(t)
        states.append(tuple(state))

    _, truncated = _advance(tuple(map(float, params)), nu, float(horizon), stream_key(seed, stream), max_jumps, record)
    return np.asarray(times, dtype=np.float64), np.asarray(states, dtype=np.int64).reshape(len(states), len(nu)), truncated


def run_final(params, nu0, horizon, seed, first_stream, count, max_jumps):
    """Final states of ``count`` trajectories on consecutive streams."""
    n = len(nu0)
    finals = np.empty((count, n), dtype=np.int64)
    jumps = np.empty(count, dtype=np.int64)
    truncated = np.zeros(count, dtype=bool)
    params = tuple(map(float, params))
    for k in range(count):
        nu = [int(x) for x in nu0]
        j, tr = _advance(params, nu, float(horizon), stream_key(seed, first_stream + k), max_jumps, None)
        finals[k] = nu
        jumps[k] = j
        truncated[k] = tr
    return finals, jumps, truncated
