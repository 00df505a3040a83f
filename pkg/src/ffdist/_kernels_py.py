"""Pure-Python enumeration kernels.

Same signatures and results as the compiled ``_kernels`` module.  All
arguments use local vertex ids ``0..n-1``:

``nbr[v]``
    every local id, sorted by (distance from ``v``, id).
``off[v, t]``
    start of the distance-``t`` block in ``nbr[v]``; ``off[v, t+1]`` is its end.
``ts``
    the prescribed distance sequence.
"""
import numpy as np


def count_chains(nbr, off, ts):
    nbr = nbr.tolist()
    off = off.tolist()
    ts = [int(t) for t in ts]
    k = len(ts)
    n = len(nbr)
    if k == 0:
        return n

    def extend(v, level):
        t = ts[level]
        lo, hi = off[v][t], off[v][t + 1]
        if level == k - 1:
            return hi - lo
        return sum(extend(w, level + 1) for w in nbr[v][lo:hi])

    return sum(extend(v, 0) for v in range(n))


def count_paths(nbr, off, ts):
    """Per-root counts of non-overlapping chains of type ``ts``."""
    nbr = nbr.tolist()
    off = off.tolist()
    ts = [int(t) for t in ts]
    k = len(ts)
    n = len(nbr)
    out = np.zeros(n, dtype=np.int64)
    if k == 0:
        out[:] = 1
        return out
    visited = [False] * n

    def extend(v, level):
        t = ts[level]
        block = nbr[v][off[v][t]:off[v][t + 1]]
        if level == k - 1:
            return sum(1 for w in block if not visited[w])
        total = 0
        for w in block:
            if not visited[w]:
                visited[w] = True
                total += extend(w, level + 1)
                visited[w] = False
        return total

    for root in range(n):
        visited[root] = True
        out[root] = extend(root, 0)
        visited[root] = False
    return out


def first_path(nbr, off, ts):
    """First non-overlapping chain in lexicographic id order, or ``None``."""
    nbr = nbr.tolist()
    off = off.tolist()
    ts = [int(t) for t in ts]
    k = len(ts)
    n = len(nbr)
    if n == 0:
        return None
    if k == 0:
        return [0]
    visited = [False] * n
    path = []

    def extend(v, level):
        t = ts[level]
        for w in nbr[v][off[v][t]:off[v][t + 1]]:
            if visited[w]:
                continue
            if level == k - 1:
                path.append(w)
                return True
            visited[w] = True
            path.append(w)
            if extend(w, level + 1):
                return True
            path.pop()
            visited[w] = False
        return False

    for root in range(n):
        visited[root] = True
        path[:] = [root]
        if extend(root, 0):
            return path
        visited[root] = False
    return None


def count_stars(nbr, off, ts):
    """Per-center counts of ordered, pairwise distinct leaf tuples."""
    nbr = nbr.tolist()
    off = off.tolist()
    ts = [int(t) for t in ts]
    k = len(ts)
    n = len(nbr)
    out = np.zeros(n, dtype=np.int64)
    if k == 0:
        out[:] = 1
        return out
    used = [False] * n

    for x in range(n):
        row = nbr[x]
        ox = off[x]

        def extend(slot):
            t = ts[slot]
            block = row[ox[t]:ox[t + 1]]
            if slot == k - 1:
                return sum(1 for w in block if not used[w])
            total = 0
            for w in block:
                if not used[w]:
                    used[w] = True
                    total += extend(slot + 1)
                    used[w] = False
            return total

        out[x] = extend(0)
    return out
