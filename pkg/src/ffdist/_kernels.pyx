# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; see ``_kernels_py`` for the argument layout."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int32_t i32
ctypedef cnp.int64_t i64


def count_chains(const i32[:, ::1] nbr, const i32[:, ::1] off, ts_in):
    cdef i32[::1] ts = np.ascontiguousarray(ts_in, dtype=np.int32)
    cdef Py_ssize_t n = nbr.shape[0], k = ts.shape[0]
    if k == 0:
        return n
    cdef i32[::1] path = np.zeros(k + 1, dtype=np.int32)
    cdef i32[::1] pos = np.zeros(k + 1, dtype=np.int32)
    cdef i64 total = 0
    cdef Py_ssize_t root, level
    cdef i32 v, w, t
    for root in range(n):
        path[0] = <i32>root
        level = 0
        pos[0] = off[root, ts[0]]
        while level >= 0:
            v = path[level]
            t = ts[level]
            if level == k - 1:
                total += off[v, t + 1] - off[v, t]
                level -= 1
                continue
            if pos[level] < off[v, t + 1]:
                w = nbr[v, pos[level]]
                pos[level] += 1
                level += 1
                path[level] = w
                pos[level] = off[w, ts[level]]
            else:
                level -= 1
    return total


def count_paths(const i32[:, ::1] nbr, const i32[:, ::1] off, ts_in):
    cdef i32[::1] ts = np.ascontiguousarray(ts_in, dtype=np.int32)
    cdef Py_ssize_t n = nbr.shape[0], k = ts.shape[0]
    out_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] out = out_arr
    if k == 0:
        out_arr[:] = 1
        return out_arr
    cdef i32[::1] path = np.zeros(k + 1, dtype=np.int32)
    cdef i32[::1] pos = np.zeros(k + 1, dtype=np.int32)
    cdef cnp.uint8_t[::1] visited = np.zeros(n, dtype=np.uint8)
    cdef i64 total
    cdef Py_ssize_t root, level, p
    cdef i32 v, w, t
    for root in range(n):
        visited[root] = 1
        path[0] = <i32>root
        level = 0
        pos[0] = off[root, ts[0]]
        total = 0
        while level >= 0:
            v = path[level]
            t = ts[level]
            if level == k - 1:
                for p in range(off[v, t], off[v, t + 1]):
                    if not visited[nbr[v, p]]:
                        total += 1
                visited[v] = 0
                level -= 1
                continue
            while pos[level] < off[v, t + 1] and visited[nbr[v, pos[level]]]:
                pos[level] += 1
            if pos[level] < off[v, t + 1]:
                w = nbr[v, pos[level]]
                pos[level] += 1
                visited[w] = 1
                level += 1
                path[level] = w
                pos[level] = off[w, ts[level]]
            else:
                visited[v] = 0
                level -= 1
        out[root] = total
    return out_arr


def first_path(const i32[:, ::1] nbr, const i32[:, ::1] off, ts_in):
    cdef i32[::1] ts = np.ascontiguousarray(ts_in, dtype=np.int32)
    cdef Py_ssize_t n = nbr.shape[0], k = ts.shape[0]
    if n == 0:
        return None
    if k == 0:
        return [0]
    cdef i32[::1] path = np.zeros(k + 1, dtype=np.int32)
    cdef i32[::1] pos = np.zeros(k + 1, dtype=np.int32)
    cdef cnp.uint8_t[::1] visited = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t root, level
    cdef i32 v, w, t
    for root in range(n):
        visited[root] = 1
        path[0] = <i32>root
        level = 0
        pos[0] = off[root, ts[0]]
        while level >= 0:
            v = path[level]
            t = ts[level]
            while pos[level] < off[v, t + 1] and visited[nbr[v, pos[level]]]:
                pos[level] += 1
            if pos[level] < off[v, t + 1]:
                w = nbr[v, pos[level]]
                pos[level] += 1
                level += 1
                path[level] = w
                if level == k:
                    return [int(path[i]) for i in range(k + 1)]
                visited[w] = 1
                pos[level] = off[w, ts[level]]
            else:
                visited[v] = 0
                level -= 1
    return None


def count_stars(const i32[:, ::1] nbr, const i32[:, ::1] off, ts_in):
    cdef i32[::1] ts = np.ascontiguousarray(ts_in, dtype=np.int32)
    cdef Py_ssize_t n = nbr.shape[0], k = ts.shape[0]
    out_arr = np.zeros(n, dtype=np.int64)
    cdef i64[::1] out = out_arr
    if k == 0:
        out_arr[:] = 1
        return out_arr
    cdef i32[::1] leaf = np.zeros(k, dtype=np.int32)
    cdef i32[::1] pos = np.zeros(k, dtype=np.int32)
    cdef cnp.uint8_t[::1] used = np.zeros(n, dtype=np.uint8)
    cdef i64 total
    cdef Py_ssize_t x, slot, p
    cdef i32 w, t
    for x in range(n):
        total = 0
        slot = 0
        pos[0] = off[x, ts[0]]
        while slot >= 0:
            t = ts[slot]
            if slot == k - 1:
                for p in range(off[x, t], off[x, t + 1]):
                    if not used[nbr[x, p]]:
                        total += 1
                slot -= 1
                if slot >= 0:
                    used[leaf[slot]] = 0
                continue
            while pos[slot] < off[x, t + 1] and used[nbr[x, pos[slot]]]:
                pos[slot] += 1
            if pos[slot] < off[x, t + 1]:
                w = nbr[x, pos[slot]]
                pos[slot] += 1
                used[w] = 1
                leaf[slot] = w
                slot += 1
                pos[slot] = off[x, ts[slot]]
            else:
                slot -= 1
                if slot >= 0:
                    used[leaf[slot]] = 0
        out[x] = total
    return out_arr
