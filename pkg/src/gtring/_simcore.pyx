# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled jump-chain kernel; mirrors ``_simcore_py`` expression for expression."""

import numpy as np
cimport numpy as cnp
from libc.math cimport log
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc

cnp.import_array()

BACKEND = "cython"

cdef uint64_t GOLDEN = 0x9E3779B97F4A7C15ULL
cdef double INV_2_53 = 1.0 / 9007199254740992.0


cdef inline uint64_t _mix64(uint64_t x) nogil:
    x ^= x >> 30
    x *= 0xBF58476D1CE4E5B9ULL
    x ^= x >> 27
    x *= 0x94D049BB133111EBULL
    x ^= x >> 31
    return x


cdef inline uint64_t _stream_key(uint64_t seed, uint64_t stream) nogil:
    return _mix64(_mix64(seed) ^ _mix64((stream + 1) * GOLDEN))


cdef inline double _uniform(uint64_t key, uint64_t counter) nogil:
    cdef uint64_t x = _mix64(key + (counter + 1) * GOLDEN)
    return (<double>(x >> 11) + 0.5) * INV_2_53


def mix64(x):
    return _mix64(<uint64_t>(x & 0xFFFFFFFFFFFFFFFF))


def stream_key(seed, stream):
    return _stream_key(<uint64_t>(seed & 0xFFFFFFFFFFFFFFFF), <uint64_t>stream)


def uniform(key, counter):
    return _uniform(<uint64_t>key, <uint64_t>counter)


cdef double _rates(double* params, int64_t* nu, int n, double* out) nogil:
    cdef double z = params[0], zp = params[1], w = params[2], wp = params[3]
    cdef double total = 0.0, r, ratio, x, y
    cdef int64_t li, lj
    cdef int i, j
    for i in range(n):
        li = nu[i] - i
        r = 0.0
        if i == 0 or nu[i - 1] > nu[i]:
            x = <double>(nu[i] - i)
            r = (z - x) * (zp - x)
            ratio = 1.0
            for j in range(n):
                if j != i:
                    lj = nu[j] - j
                    ratio = ratio * (<double>(li + 1 - lj) / <double>(li - lj))
            r = r * ratio
        out[2 * i] = r
        total = total + r
        r = 0.0
        if i == n - 1 or nu[i] > nu[i + 1]:
            y = <double>(nu[i] - i - 1 + n)
            r = (w + y) * (wp + y)
            ratio = 1.0
            for j in range(n):
                if j != i:
                    lj = nu[j] - j
                    ratio = ratio * (<double>(li - 1 - lj) / <double>(li - lj))
            r = r * ratio
        out[2 * i + 1] = r
        total = total + r
    return total


cdef int64_t _advance(double* params, int64_t* nu, int n, double horizon, uint64_t key,
                      int64_t max_jumps, double* rates, int* truncated,
                      double* times_out, int64_t* states_out, int64_t capacity) nogil:
    # Returns the jump count; when times_out is non-NULL, records up to capacity states.
    cdef double t = 0.0, total, u, dt, target, acc
    cdef uint64_t counter = 0
    cdef int64_t jumps = 0
    cdef int k, choice, i
    truncated[0] = 0
    while True:
        total = _rates(params, nu, n, rates)
        if not total > 0.0:
            break
        u = _uniform(key, counter)
        counter += 1
        dt = -log(u) / total
        if t + dt > horizon:
            break
        t = t + dt
        target = _uniform(key, counter) * total
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
        if choice % 2 == 0:
            nu[i] += 1
        else:
            nu[i] -= 1
        jumps += 1
        if times_out != NULL and jumps < capacity:
            times_out[jumps] = t
            for k in range(n):
                states_out[jumps * n + k] = nu[k]
        if jumps >= max_jumps:
            truncated[0] = 1
            break
    return jumps


def run_trajectory(params, nu0, double horizon, seed, stream, int64_t max_jumps):
    """One trajectory; returns (times, states array, truncated)."""
    cdef int n = len(nu0)
    cdef double[4] p
    cdef int i, trunc = 0
    for i in range(4):
        p[i] = float(params[i])
    cdef uint64_t key = _stream_key(<uint64_t>(seed & 0xFFFFFFFFFFFFFFFF), <uint64_t>stream)
    cdef int64_t capacity = 1024
    cdef cnp.ndarray[cnp.int64_t, ndim=1] nu
    cdef cnp.ndarray[cnp.float64_t, ndim=1] times
    cdef cnp.ndarray[cnp.int64_t, ndim=1] states
    cdef double* rates = <double*>malloc(max(2 * n, 1) * sizeof(double))
    cdef int64_t jumps
    try:
        while True:
            nu = np.asarray(nu0, dtype=np.int64).copy()
            times = np.zeros(capacity, dtype=np.float64)
            states = np.zeros(capacity * max(n, 1), dtype=np.int64)
            for i in range(n):
                states[i] = nu[i]
            jumps = _advance(p, <int64_t*>nu.data, n, horizon, key, max_jumps, rates, &trunc,
                             <double*>times.data, <int64_t*>states.data, capacity)
            if jumps < capacity:
                break
            capacity = 2 * (jumps + 1)
    finally:
        free(rates)
    return times[: jumps + 1].copy(), states[: (jumps + 1) * n].reshape(jumps + 1, n).copy(), bool(trunc)


def run_final(params, nu0, double horizon, seed, first_stream, int64_t count, int64_t max_jumps):
    """Final states of ``count`` trajectories on consecutive streams."""
    cdef int n = len(nu0)
    cdef double[4] p
    cdef int i, trunc = 0
    cdef int64_t k
    for i in range(4):
        p[i] = float(params[i])
    cdef uint64_t s = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t first = <uint64_t>first_stream
    start = np.asarray(nu0, dtype=np.int64)
    finals_arr = np.empty((count, n), dtype=np.int64)
    jumps_arr = np.empty(count, dtype=np.int64)
    trunc_arr = np.zeros(count, dtype=np.uint8)
    cdef int64_t[:, ::1] finals = finals_arr
    cdef int64_t[::1] jumps = jumps_arr
    cdef unsigned char[::1] truncs = trunc_arr
    cdef int64_t[::1] start_v = start
    cdef int64_t* nu = <int64_t*>malloc(max(n, 1) * sizeof(int64_t))
    cdef double* rates = <double*>malloc(max(2 * n, 1) * sizeof(double))
    try:
        with nogil:
            for k in range(count):
                for i in range(n):
                    nu[i] = start_v[i]
                jumps[k] = _advance(p, nu, n, horizon, _stream_key(s, first + <uint64_t>k), max_jumps,
                                    rates, &trunc, NULL, NULL, 0)
                truncs[k] = trunc
                for i in range(n):
                    finals[k, i] = nu[i]
    finally:
        free(nu)
        free(rates)
    return finals_arr, jumps_arr, trunc_arr.astype(bool)
