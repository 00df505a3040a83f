"""The acceptance suite: every verifier run over fixed, seeded instances.

Each criterion is a generator of :class:`~ffdist.report.Check` records.  A
run passes when no record has status ``fail`` or ``refused``; ``vacuous``
records (size hypothesis not met) are reported but assert nothing.
"""
from __future__ import annotations

import hashlib
import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import chains, paths, spectral, stars
from .ensembles import EnsembleSpec, SplitMix64, corpus, generate, random_function
from .errors import ScaleGuardError
from .field import FieldParams, PointSet, index_point, indices_of, coordinates, norm
from .graph import WORK_LIMIT, distance_table
from .report import Check, render_json, header, data_section, status

SMALL_FIELDS = [(q, d) for q in (3, 5, 7, 11, 13) for d in (2, 3)]
FOURIER_SAMPLES = 100
BILINEAR_SAMPLES = 200
ORACLE_SAMPLES = 510
MAX_RECURRENCE_K = 2
MAX_UPPER_N = 5
MAX_PATH_N = 2
MAX_CONDITIONAL_K = 4
MAX_TYPES = 32

TOL_PLANCHEREL = 1e-10
TOL_ROUNDTRIP = 1e-10
TOL_CONJUGATE = 1e-10
TOL_FAST_DIRECT = 1e-9


def _timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


def _with_time(check: Check, seconds: float) -> Check:
    check.elapsed = seconds
    return check


# 1. sphere membership, size and Fourier decay

def criterion_1():
    for q, d in SMALL_FIELDS:
        p = FieldParams(q, d)
        reference = np.array([norm(index_point(i, p)) for i in range(p.size)])
        for t in range(1, q):
            inst = f"q{q:02d}-d{d}-t{t}"
            start = time.perf_counter()
            s = spectral.sphere(t, p)
            member_ok = bool(np.array_equal(s.mask, reference == t))
            yield _with_time(Check(1, "sphere_membership", inst, status(member_ok),
                                   {"size": s.size, "reference_size": int((reference == t).sum())}),
                             time.perf_counter() - start)
            lo, hi = q ** (d - 1) / 2, 2 * q ** (d - 1)
            size_ok = lo <= s.size <= hi and (d != 2 or s.size in (q - 1, q + 1))
            yield Check(1, "sphere_size", inst, status(size_ok), {"size": s.size, "lower": lo, "upper": hi})
            rep, sec = _timed(spectral.sphere_decay_report, t, p)
            yield _with_time(Check(1, "sphere_decay", inst, status(rep.holds), {
                "max_nontrivial": rep.max_nontrivial, "argmax": rep.argmax, "bound": rep.bound,
                "ratio": rep.ratio, "zero_frequency": rep.zero_frequency,
            }), sec)


# 2. Plancherel, inversion, conjugate symmetry, fast vs direct transform

def criterion_2():
    for q, d in SMALL_FIELDS:
        p = FieldParams(q, d)
        inst = f"q{q:02d}-d{d}"
        base = q * 7919 + d
        fs = np.stack([random_function(p, base + i) for i in range(FOURIER_SAMPLES)], axis=1)
        neg = indices_of(-coordinates(p), p)
        t0 = time.perf_counter()
        fast = np.stack([spectral.dft(fs[:, i], p) for i in range(FOURIER_SAMPLES)], axis=1)
        t_fast = time.perf_counter() - t0
        defect = max(spectral.plancherel_defect(fs[:, i], p) for i in range(FOURIER_SAMPLES))
        back = np.stack([spectral.inverse_dft(fast[:, i], p) for i in range(FOURIER_SAMPLES)], axis=1)
        roundtrip = float(np.max(np.abs(back - fs)))
        conj = float(np.max(np.abs(fast[neg] - np.conj(fast))))
        t0 = time.perf_counter()
        direct = spectral.dft_direct(fs, p)
        t_direct = time.perf_counter() - t0
        dev = float(np.max(np.abs(direct - fast)))
        n = FOURIER_SAMPLES
        yield Check(2, "plancherel", inst, status(defect < TOL_PLANCHEREL),
                    {"samples": n, "max_defect": defect, "tolerance": TOL_PLANCHEREL})
        yield Check(2, "roundtrip", inst, status(roundtrip < TOL_ROUNDTRIP),
                    {"samples": n, "max_error": roundtrip, "tolerance": TOL_ROUNDTRIP})
        yield Check(2, "conjugate_symmetry", inst, status(conj < TOL_CONJUGATE),
                    {"samples": n, "max_error": conj, "tolerance": TOL_CONJUGATE})
        yield Check(2, "fast_vs_direct", inst, status(dev < TOL_FAST_DIRECT),
                    {"samples": n, "max_deviation": dev, "tolerance": TOL_FAST_DIRECT},
                    elapsed=t_fast + t_direct,
                    timing={"fast_seconds": t_fast, "direct_seconds": t_direct})


# 3. bilinear estimate, with the exhaustive double sum

def criterion_3():
    for i in range(BILINEAR_SAMPLES):
        q, d = SMALL_FIELDS[i % len(SMALL_FIELDS)]
        p = FieldParams(q, d)
        t = 1 + (i // len(SMALL_FIELDS)) % (q - 1)
        seed = 0xB111 + i
        if i % 2 == 0:
            f = generate(EnsembleSpec("random_density", seed=seed, density=0.3), p).indicator()
            g = generate(EnsembleSpec("random_density", seed=seed + 10_000, density=0.6), p).indicator()
            kind = "sets"
        else:
            f = random_function(p, seed, high=4)
            g = random_function(p, seed + 10_000, high=4)
            kind = "weights"
        start = time.perf_counter()
        rep = spectral.bilinear_distance_form(f, g, t, p)
        brute = spectral.bilinear_bruteforce(f, g, t, p)
        ok = rep.holds and rep.total == brute
        yield _with_time(Check(3, "bilinear", f"q{q:02d}-d{d}-t{t}-{kind}-{i:03d}", status(ok), {
            "total": rep.total, "exhaustive": brute, "main_term": rep.main_term,
            "remainder": rep.remainder, "bound": rep.stated_bound, "holds": rep.holds,
        }), time.perf_counter() - start)


# 4. profile recursion against tuple enumeration

def criterion_4():
    rng = SplitMix64(0x0AC1E)
    fields_ = [FieldParams(3, 2), FieldParams(5, 2), FieldParams(7, 2)]
    l2_sets = []
    for i in range(ORACLE_SAMPLES):
        p = fields_[i % 3]
        size = rng.below(min(30, p.size) + 1)
        E = generate(EnsembleSpec("random_size", seed=rng.next(), size=size), p)
        k = 1 + (i // 3) % 3
        ts = tuple(1 + rng.below(p.q - 1) for _ in range(k))
        start = time.perf_counter()
        dp, _ = chains.chain_count_dp(E, ts)
        oracle = chains.chain_count_oracle(E, ts)
        yield _with_time(Check(4, "chain_oracle", f"q{p.q:02d}-d2-n{size}-{i:03d}", status(dp == oracle),
                               {"ts": ts, "dp": dp, "oracle": oracle}), time.perf_counter() - start)
        if i < 60:
            l2_sets.append((i, E))
    for i, E in l2_sets:
        for k in (1, 2, 3):
            sq, c2k = chains.l2_identity(E, k)
            yield Check(4, "l2_identity", f"q{E.params.q:02d}-d2-n{len(E)}-{i:03d}-k{k}",
                        status(sq == c2k), {"k": k, "l2_squared": sq, "c_2k": c2k})


# 5. fixed values on the full space F_3^2

def _brute_paths(E: PointSet, k: int) -> int:
    pts = E.points()
    return sum(
        1 for tup in itertools.permutations(pts, k + 1)
        if all(norm(a - b) == 1 for a, b in zip(tup, tup[1:]))
    )


def criterion_5():
    p = FieldParams(3, 2)
    E = PointSet.full(p)
    inst = "q03-d2-full"
    table = distance_table(E)
    profile = stars.degree_profile(E)
    computed = {
        "sphere_size": (4, [spectral.sphere(1, p).size,
                            sum(1 for i in range(p.size) if norm(index_point(i, p)) == 1)]),
        "C_1": (36, [chains.chain_count_dp(E, (1,))[0], chains.chain_count_oracle(E, (1,))]),
        "C_3": (576, [chains.chain_count_dp(E, (1, 1, 1))[0], chains.chain_count_oracle(E, (1, 1, 1))]),
        "G_2": (108, [paths.nonoverlap_count(E, (1, 1)).total, _brute_paths(E, 2)]),
        "nu_2": (108, [stars.star_count_exact(E, (1, 1)), stars.star_count_bruteforce(E, (1, 1)),
                       stars.star_count_formula(E, (1, 1))]),
        "H_4": (9, [profile.tail(1, 4), int((table.degree(1) >= 4).sum())]),
        "H_5": (0, [profile.tail(1, 5), int((table.degree(1) >= 5).sum())]),
    }
    for name, (expected, got) in computed.items():
        ok = all(v == expected for v in got)
        yield Check(5, f"fixed_{name}", inst, status(ok), {"expected": expected, "computed": got})


# 6. unconditional inequalities over the corpus

def _path_budget_ok(E: PointSet, k: int) -> bool:
    if len(E) == 0:
        return True
    table = distance_table(E)
    return paths._search_estimate(table, (1,) * k) <= WORK_LIMIT


def unconditional_checks(entry):
    E = entry.build()
    inst = entry.key
    out = []
    start = time.perf_counter()
    for rep in chains.verify_recurrences(E, MAX_RECURRENCE_K):
        out.append(Check(6, "recurrence", f"{inst}-k{rep.k}", status(rep.holds), {
            "k": rep.k, "odd_remainder": rep.odd_remainder, "odd_bound": rep.odd_bound,
            "even_remainder": rep.even_remainder, "even_bound": rep.even_bound,
        }))
    for n in range(1, MAX_UPPER_N + 1):
        rep = chains.verify_upper_bound(E, n)
        out.append(Check(6, "upper_bound", f"{inst}-n{n}", status(rep.holds),
                         {"n": n, "count": rep.count, "bound": rep.bound, "margin": rep.margin}))
    for n in range(0, MAX_PATH_N + 1):
        if not _path_budget_ok(E, n + 1):
            break
        rep = paths.verify_path_recurrence(E, n)
        out.append(Check(6, "path_recurrence", f"{inst}-n{n}", status(rep.holds), {
            "n": n, "next_count": rep.next_count, "count": rep.count,
            "weighted_edges": rep.weighted_edges, "rhs": rep.rhs,
        }))
    profile = stars.degree_profile(E)
    for j in range(1, E.params.q):
        tails = profile.tails(j)
        ns = np.arange(tails.size)
        bounds = np.array([stars.tail_bound(len(E), int(n), E.params) for n in ns])
        ok = all(stars.verify_tail_bound(E, int(n), j, profile).holds for n in ns)
        out.append(Check(6, "tail_bound", f"{inst}-j{j}", status(ok), {
            "j": j, "n_max": int(ns[-1]), "min_slack": float(np.min(tails - bounds)),
            "degree_sum": profile.degree_sum(j),
            "pair_count": chains.chain_count_dp(E, (j,))[0],
        }))
        if profile.degree_sum(j) != out[-1].values["pair_count"]:
            out[-1].status = "fail"
    if out:
        out[0].elapsed = time.perf_counter() - start
    return out


# 7. conditional theorems, where the size hypothesis holds

def _types(q: int, k: int, seed: int) -> list:
    every = list(itertools.product(range(1, q), repeat=k))
    if len(every) <= MAX_TYPES:
        return every
    rng = SplitMix64(seed)
    picked = {tuple([t] * k) for t in range(1, q)}
    while len(picked) < MAX_TYPES:
        picked.add(tuple(1 + rng.below(q - 1) for _ in range(k)))
    return sorted(picked)


def conditional_checks(entry):
    E = entry.build()
    p = E.params
    inst = entry.key
    size = len(E)
    out = []
    start = time.perf_counter()
    for k in range(1, MAX_CONDITIONAL_K + 1):
        met = size > chains.chain_bound_constant(k, p)
        if not met and k > 1:
            break
        for ts in _types(p.q, k, hash_seed(inst, k)) if met else [(1,) * k]:
            rep = chains.verify_main_theorem(E, ts)
            st = "vacuous" if not rep.hypothesis_met else status(not rep.violated)
            out.append(Check(7, "chain_theorem", f"{inst}-t{_tstr(ts)}", st, {
                "k": k, "count": rep.count, "main_term": rep.main_term, "discrepancy": rep.discrepancy,
                "bound": rep.stated_bound, "holds": rep.holds, "hypothesis_met": rep.hypothesis_met,
            }))
        low = chains.verify_lower_bound(E, k)
        out.append(Check(7, "chain_lower_bound", f"{inst}-n{k}",
                         "vacuous" if low.vacuous else status(not low.violated),
                         {"n": k, "count": low.count, "bound": low.bound, "holds": low.holds}))
    for k in range(1, MAX_CONDITIONAL_K + 1):
        met = size >= paths.corollary_threshold(k, p)
        if not met and k > 1:
            break
        for ts in _types(p.q, k, hash_seed(inst, 100 + k)) if met else [(1,) * k]:
            if not met and not _path_budget_ok(E, k):
                out.append(Check(7, "path_corollary", f"{inst}-t{_tstr(ts)}", "vacuous",
                                 {"k": k, "threshold": paths.corollary_threshold(k, p), "count": None}))
                continue
            rep = paths.verify_corollary_bound(E, ts=ts)
            st = "vacuous" if rep.vacuous else status(not rep.violated)
            out.append(Check(7, "path_corollary", f"{inst}-t{_tstr(ts)}", st, {
                "k": k, "count": rep.count, "bound": rep.bound, "threshold": rep.threshold,
                "holds": rep.holds,
            }))
    thr1 = 12 * p.q ** ((p.d + 1) / 2)
    k_max = max(1, int(np.ceil(size / thr1)) - 1) if size > thr1 else 1
    for k in range(1, min(k_max, MAX_CONDITIONAL_K) + 1):
        for ts in _types(p.q, k, hash_seed(inst, 200 + k)) if size > thr1 else [(1,) * k]:
            rep = stars.verify_star_theorem(E, ts)
            st = "vacuous" if rep.vacuous else status(not rep.violated)
            out.append(Check(7, "star_theorem", f"{inst}-t{_tstr(ts)}", st, {
                "k": k, "count": rep.count, "method": rep.method, "positive": rep.positive,
                "limit_1": rep.limit_1, "applies_1": rep.applies_1,
                "limit_2": rep.limit_2, "applies_2": rep.applies_2,
                "second_moment": rep.second_moment, "second_moment_estimate": rep.second_moment_estimate,
            }))
    if out:
        out[0].elapsed = time.perf_counter() - start
    return out


def _tstr(ts) -> str:
    return "-".join(str(t) for t in ts)


def hash_seed(*parts) -> int:
    digest = hashlib.sha256("/".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(digest[:8], "little")


def workers() -> int:
    try:
        return max(1, int(os.environ.get("FFDIST_WORKERS", "1")))
    except ValueError:
        return 1


def _fan_out(fn, entries):
    n = workers()
    if n == 1:
        results = [fn(e) for e in entries]
    else:
        with ProcessPoolExecutor(max_workers=n) as pool:
            results = list(pool.map(fn, entries))
    return [c for batch in results for c in batch]


def criterion_6():
    yield from _fan_out(unconditional_checks, corpus())


def criterion_7():
    yield from _fan_out(conditional_checks, corpus())


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
}


def run(criteria=None) -> list:
    """Run the selected criteria (default 1-7); refusals become ``refused`` records."""
    checks = []
    for n in sorted(criteria or CRITERIA):
        try:
            checks.extend(CRITERIA[n]())
        except ScaleGuardError as exc:
            checks.append(Check(n, "scale_guard", "-", "refused", {"message": str(exc)}))
    return checks


def determinism_check(first: list, criteria=None) -> Check:
    """Criterion 8: a second run must reproduce the data section byte for byte."""
    second = run(criteria)
    a = data_section(render_json(first, header("acceptance", {}, "")))
    b = data_section(render_json(second, header("acceptance", {}, "")))
    ha = hashlib.sha256(a.encode()).hexdigest()
    hb = hashlib.sha256(b.encode()).hexdigest()
    return Check(8, "determinism", "data-section", status(a == b),
                 {"sha256_first": ha, "sha256_second": hb, "lines": a.count("\n") + 1})


def first_failure(checks):
    for c in checks:
        if c.status in ("fail", "refused"):
            return c
    return None


def summary(checks) -> dict:
    """Status counts per criterion."""
    out = {}
    for c in checks:
        row = out.setdefault(c.criterion, {"pass": 0, "fail": 0, "vacuous": 0, "refused": 0})
        row[c.status] += 1
    return out
