"""Command-line entry point: ``ffdist <command> [options]``.

Exit codes: 0 success, 2 invalid configuration, 3 scale-guard refusal,
4 a non-vacuous check failed.
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import acceptance, chains, faults, paths, spectral, stars
from .ensembles import CORPUS_VERSION, KINDS, EnsembleSpec, corpus, generate
from .errors import DegenerateDistanceError, ScaleGuardError
from .field import FieldParams, index_point
from .kernels import BACKEND
from .report import Check, header, render, status

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

EXIT_OK, EXIT_CONFIG, EXIT_REFUSED, EXIT_VIOLATION = 0, 2, 3, 4
DIRECT_DFT_LIMIT = 10 ** 4


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    q: int = 3
    d: int = 2
    t: tuple = None
    k: int = 1
    ensemble: EnsembleSpec = field(default_factory=lambda: EnsembleSpec("full"))
    format: str = "json"
    out: str = None
    all_t: bool = False
    criteria: tuple = None
    inject_fault: str = None
    repeat: bool = True

    def params(self) -> FieldParams:
        return FieldParams(self.q, self.d)

    def types(self) -> tuple:
        return tuple(self.t) if self.t else (1,) * self.k

    def to_dict(self) -> dict:
        out = {k: v for k, v in asdict(self).items() if k != "ensemble" and v is not None}
        out["ensemble"] = self.ensemble.to_dict()
        return out


CONFIG_KEYS = {"command", "q", "d", "t", "k", "ensemble", "format", "out", "all_t",
               "criteria", "inject_fault", "repeat", "seed"}


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(v) for v in str(text).split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")


def _points(text: str) -> tuple:
    try:
        return tuple(_int_list(p) for p in text.split(";") if p.strip())
    except argparse.ArgumentTypeError:
        raise argparse.ArgumentTypeError(f"expected points like '0,0;1,2', got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML file with run settings; flags override it")
    common.add_argument("--q", type=int, help="odd prime modulus")
    common.add_argument("--d", type=int, help="dimension")
    common.add_argument("--t", type=_int_list, help="distance type, e.g. 1,1,2")
    common.add_argument("--k", type=int, help="length of the all-ones type when --t is absent")
    common.add_argument("--ensemble", choices=KINDS, help="set generator")
    common.add_argument("--full", action="store_true", help="shorthand for --ensemble full")
    common.add_argument("--size", type=int, help="|E| for random_size")
    common.add_argument("--density", type=float, help="inclusion probability for random_density")
    common.add_argument("--codim", type=int, help="codimension for subspace")
    common.add_argument("--radii", type=_int_list, help="radii for sphere_union")
    common.add_argument("--points", type=_points, help="explicit points, e.g. '0,0;1,2'")
    common.add_argument("--seed", type=int, help="generator seed")
    common.add_argument("--format", choices=("json", "csv"), help="report format (default json)")
    common.add_argument("--out", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="ffdist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("sphere", parents=[common], help="sphere sizes and Fourier decay")
    p.add_argument("--all-t", action="store_true", help="every t != 0")
    sub.add_parser("dft", parents=[common], help="transform identities for the indicator of E")
    sub.add_parser("chains", parents=[common], help="chain counts and their estimates")
    sub.add_parser("paths", parents=[common], help="non-overlapping paths")
    sub.add_parser("stars", parents=[common], help="degrees, tails and k-stars")
    p = sub.add_parser("acceptance", parents=[common], help="run the acceptance suite")
    p.add_argument("--criteria", type=_int_list, help="subset of criteria 1-7")
    p.add_argument("--inject-fault", choices=sorted(faults.KNOWN))
    p.add_argument("--no-repeat", action="store_true", help="skip the determinism re-run")
    sub.add_parser("corpus", parents=[common], help="list the acceptance corpus")
    return parser


def resolve_config(args) -> RunConfig:
    data = {}
    if args.config:
        try:
            with open(args.config, "rb") as fh:
                data = tomllib.load(fh)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}")
        unknown = set(data) - CONFIG_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        if data.get("command", args.command) != args.command:
            raise ConfigError(f"config is for {data['command']!r}, not {args.command!r}")

    ens = dict(data.get("ensemble", {}))
    if "seed" in data:
        ens.setdefault("seed", data["seed"])
    kind = None
    if args.full:
        kind = "full"
    elif args.ensemble:
        kind = args.ensemble
    elif args.points:
        kind = "explicit"
    elif args.size is not None and "kind" not in ens:
        kind = "random_size"
    if kind and kind != ens.get("kind"):
        ens = {k: v for k, v in ens.items() if k == "seed"}
        ens["kind"] = kind
    ens.setdefault("kind", "full")
    for flag, key in (("size", "size"), ("density", "density"), ("codim", "codim"),
                      ("radii", "ts"), ("points", "points"), ("seed", "seed")):
        value = getattr(args, flag)
        if value is not None:
            ens[key] = value
    try:
        spec = EnsembleSpec.from_dict(ens)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc))

    def pick(name, default=None):
        value = getattr(args, name, None)
        if value is not None and value is not False:
            return value
        return data.get(name, default)

    t = pick("t")
    criteria = pick("criteria")
    cfg = RunConfig(
        command=args.command,
        q=pick("q", 3),
        d=pick("d", 2),
        t=tuple(t) if t else None,
        k=pick("k", 1),
        ensemble=spec,
        format=pick("format", "json"),
        out=pick("out"),
        all_t=bool(pick("all_t", False)),
        criteria=tuple(criteria) if criteria else None,
        inject_fault=pick("inject_fault"),
        repeat=not getattr(args, "no_repeat", False) and data.get("repeat", True),
    )
    if cfg.format not in ("json", "csv"):
        raise ConfigError(f"format must be json or csv, got {cfg.format!r}")
    if cfg.k < 1:
        raise ConfigError("k must be >= 1")
    try:
        cfg.params()
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc))
    if cfg.criteria and not set(cfg.criteria) <= set(acceptance.CRITERIA):
        raise ConfigError(f"criteria must be within {sorted(acceptance.CRITERIA)}")
    return cfg


def _instance(cfg: RunConfig, E=None) -> str:
    tag = f"q{cfg.q:02d}-d{cfg.d}-{cfg.ensemble.kind}"
    return tag if E is None else f"{tag}-n{len(E)}"


def _timed(fn, *args, **kw):
    start = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - start


def cmd_sphere(cfg: RunConfig) -> list:
    p = cfg.params()
    ts = tuple(range(1, p.q)) if cfg.all_t else cfg.types()
    spectral.require_nonzero(*ts, q=p.q)
    out = []
    for t in ts:
        rep, sec = _timed(spectral.sphere_decay_report, t, p)
        out.append(Check(0, "sphere", f"q{p.q:02d}-d{p.d}-t{t % p.q}", status(rep.holds), {
            "t": rep.t, "size": rep.sphere_size, "max_nontrivial": rep.max_nontrivial,
            "argmax": list(index_point(rep.argmax, p).coords), "bound": rep.bound,
            "ratio": rep.ratio, "zero_frequency": rep.zero_frequency, "holds": rep.holds,
        }, elapsed=sec))
    return out


def cmd_dft(cfg: RunConfig) -> list:
    p = cfg.params()
    E = generate(cfg.ensemble, p)
    inst = _instance(cfg, E)
    f = E.indicator(np.float64)
    fhat, t_fast = _timed(spectral.dft, f, p)
    back = spectral.inverse_dft(fhat, p)
    defect = spectral.plancherel_defect(f, p)
    rt = float(np.max(np.abs(back - f)))
    nontrivial = np.abs(fhat[1:])
    out = [
        Check(0, "spectrum", inst, "pass", {
            "zero_frequency": float(fhat[0].real),
            "max_nontrivial": float(nontrivial.max()) if nontrivial.size else 0.0,
        }, elapsed=t_fast, timing={"fast_seconds": t_fast}),
        Check(0, "plancherel", inst, status(defect < acceptance.TOL_PLANCHEREL), {"defect": defect}),
        Check(0, "roundtrip", inst, status(rt < acceptance.TOL_ROUNDTRIP), {"max_error": rt}),
    ]
    if p.size <= DIRECT_DFT_LIMIT:
        direct, t_direct = _timed(spectral.dft_direct, f, p)
        dev = float(np.max(np.abs(direct - fhat)))
        out.append(Check(0, "fast_vs_direct", inst, status(dev < acceptance.TOL_FAST_DIRECT),
                         {"max_deviation": dev}, elapsed=t_direct,
                         timing={"fast_seconds": t_fast, "direct_seconds": t_direct}))
    else:
        out.append(Check(0, "fast_vs_direct", inst, "refused",
                         {"message": f"direct transform limited to q^d <= {DIRECT_DFT_LIMIT}"}))
    return out


def cmd_chains(cfg: RunConfig) -> list:
    p = cfg.params()
    E = generate(cfg.ensemble, p)
    ts = chains.chain_type(cfg.types(), p.q)
    k = len(ts)
    inst = _instance(cfg, E)
    out = []
    (c, _), sec = _timed(chains.chain_count_dp, E, ts)
    try:
        oracle, sec2 = _timed(chains.chain_count_oracle, E, ts)
        out.append(Check(0, "chain_count", inst, status(c == oracle),
                         {"ts": ts, "count": c, "oracle": oracle}, elapsed=sec + sec2,
                         timing={"dp_seconds": sec, "oracle_seconds": sec2}))
    except ScaleGuardError as exc:
        out.append(Check(0, "chain_count", inst, "refused",
                         {"ts": ts, "count": c, "oracle": None, "message": str(exc)}, elapsed=sec))
    rep = chains.verify_main_theorem(E, ts)
    out.append(Check(0, "chain_theorem", inst, "vacuous" if not rep.hypothesis_met else status(not rep.violated), {
        "ts": ts, "count": rep.count, "main_term": rep.main_term, "discrepancy": rep.discrepancy,
        "bound": rep.stated_bound, "hypothesis_met": rep.hypothesis_met, "holds": rep.holds,
    }))
    for r in chains.verify_recurrences(E, k):
        out.append(Check(0, "recurrence", f"{inst}-k{r.k}", status(r.holds), {
            "k": r.k, "odd_remainder": r.odd_remainder, "odd_bound": r.odd_bound,
            "even_remainder": r.even_remainder, "even_bound": r.even_bound,
        }))
    for n in range(1, k + 1):
        up = chains.verify_upper_bound(E, n)
        out.append(Check(0, "upper_bound", f"{inst}-n{n}", status(up.holds),
                         {"n": n, "count": up.count, "bound": up.bound, "margin": up.margin}))
        low = chains.verify_lower_bound(E, n)
        out.append(Check(0, "lower_bound", f"{inst}-n{n}", "vacuous" if low.vacuous else status(low.holds),
                         {"n": n, "count": low.count, "bound": low.bound, "holds": low.holds}))
    sq, c2k = chains.l2_identity(E, k)
    out.append(Check(0, "l2_identity", f"{inst}-k{k}", status(sq == c2k), {"l2_squared": sq, "c_2k": c2k}))
    return out


def cmd_paths(cfg: RunConfig) -> list:
    p = cfg.params()
    E = generate(cfg.ensemble, p)
    ts = chains.chain_type(cfg.types(), p.q)
    k = len(ts)
    inst = _instance(cfg, E)
    prof, sec = _timed(paths.nonoverlap_count, E, ts)
    c, _ = chains.chain_count_dp(E, ts)
    out = [Check(0, "path_count", inst, status(prof.total <= c),
                 {"ts": ts, "count": prof.total, "chain_count": c}, elapsed=sec)]
    w, sec = _timed(paths.extract_path, E, ts)
    found = w is not None
    ok = found == (prof.total > 0) and (not found or w.is_valid())
    out.append(Check(0, "witness", inst, status(ok), {
        "ts": ts, "vertices": paths.witness_points(w) if found else None,
        "valid": w.is_valid() if found else None,
    }, elapsed=sec))
    if all(t == 1 for t in ts):
        for n in range(0, k):
            r = paths.verify_path_recurrence(E, n)
            out.append(Check(0, "path_recurrence", f"{inst}-n{n}", status(r.holds), {
                "n": n, "next_count": r.next_count, "count": r.count,
                "weighted_edges": r.weighted_edges, "rhs": r.rhs,
            }))
    cor = paths.verify_corollary_bound(E, ts=ts)
    out.append(Check(0, "path_corollary", inst, "vacuous" if cor.vacuous else status(not cor.violated), {
        "ts": ts, "count": cor.count, "bound": cor.bound, "threshold": cor.threshold, "holds": cor.holds,
    }))
    length, exhausted = paths.observed_max_length(E, ts[0])
    out.append(Check(0, "max_path_length", inst, "pass",
                     {"t": ts[0], "length": length, "exhausted": exhausted}))
    return out


def cmd_stars(cfg: RunConfig) -> list:
    p = cfg.params()
    E = generate(cfg.ensemble, p)
    ts = chains.chain_type(cfg.types(), p.q)
    inst = _instance(cfg, E)
    profile = stars.degree_profile(E)
    out = []
    try:
        nu, sec = _timed(stars.star_count_exact, E, ts)
        formula = stars.star_count_formula(E, ts, profile)
        multiset = stars.star_count_multiset(E, ts, profile)
        out.append(Check(0, "star_count", inst, status(nu == formula <= multiset),
                         {"ts": ts, "count": nu, "formula": formula, "multiset": multiset}, elapsed=sec))
    except ScaleGuardError as exc:
        out.append(Check(0, "star_count", inst, "refused", {"ts": ts, "message": str(exc)}))
    for j in sorted(set(ts)):
        pair_count, _ = chains.chain_count_dp(E, (j,))
        out.append(Check(0, "degree_profile", f"{inst}-j{j}", status(profile.degree_sum(j) == pair_count), {
            "j": j, "degree_sum": profile.degree_sum(j), "pair_count": pair_count,
            "tails": profile.tails(j),
        }))
    for j in range(1, p.q):
        tails = profile.tails(j)
        reps = [stars.verify_tail_bound(E, n, j, profile) for n in range(tails.size)]
        out.append(Check(0, "tail_bound", f"{inst}-j{j}", status(all(r.holds for r in reps)), {
            "j": j, "n_max": tails.size - 1, "min_slack": min(r.tail - r.bound for r in reps),
        }))
    rep = stars.verify_star_theorem(E, ts)
    out.append(Check(0, "star_theorem", inst, "vacuous" if rep.vacuous else status(not rep.violated), {
        "ts": ts, "count": rep.count, "method": rep.method, "positive": rep.positive,
        "limit_1": rep.limit_1, "applies_1": rep.applies_1, "limit_2": rep.limit_2, "applies_2": rep.applies_2,
        "second_moment": rep.second_moment, "second_moment_estimate": rep.second_moment_estimate,
    }))
    return out


def cmd_corpus(cfg: RunConfig) -> list:
    out = []
    for entry in corpus():
        E = entry.build()
        out.append(Check(0, "corpus_entry", entry.key, "pass", {
            "version": CORPUS_VERSION, "q": entry.params.q, "d": entry.params.d,
            "ensemble": entry.spec.to_dict(), "size": len(E), "conditional": entry.conditional,
        }))
    return out


def cmd_acceptance(cfg: RunConfig) -> list:
    def run():
        if cfg.inject_fault:
            with faults.inject(cfg.inject_fault):
                return acceptance.run(cfg.criteria)
        return acceptance.run(cfg.criteria)

    checks = run()
    if cfg.repeat:
        start = time.perf_counter()
        if cfg.inject_fault:
            with faults.inject(cfg.inject_fault):
                det = acceptance.determinism_check(checks, cfg.criteria)
        else:
            det = acceptance.determinism_check(checks, cfg.criteria)
        det.elapsed = time.perf_counter() - start
        checks.append(det)
    return checks


HANDLERS = {
    "sphere": cmd_sphere, "dft": cmd_dft, "chains": cmd_chains, "paths": cmd_paths,
    "stars": cmd_stars, "acceptance": cmd_acceptance, "corpus": cmd_corpus,
}


def exit_code(checks) -> int:
    if any(c.status == "fail" for c in checks):
        return EXIT_VIOLATION
    if any(c.status == "refused" for c in checks):
        return EXIT_REFUSED
    return EXIT_OK


def _print_acceptance(checks, stream):
    summary = acceptance.summary(checks)
    for n in sorted(summary):
        row = summary[n]
        verdict = "PASS" if row["fail"] == 0 and row["refused"] == 0 else "FAIL"
        print(f"criterion {n}: {verdict}  pass={row['pass']} fail={row['fail']} "
              f"vacuous={row['vacuous']} refused={row['refused']}", file=stream)
    bad = acceptance.first_failure(checks)
    if bad is not None:
        print(f"first failed invariant: criterion {bad.criterion} {bad.check} [{bad.instance}] "
              f"{bad.values}", file=stream)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        checks = HANDLERS[cfg.command](cfg)
    except ScaleGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (ConfigError, DegenerateDistanceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    text = render(checks, header(cfg.command, cfg.to_dict(), BACKEND), cfg.format)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg.command == "acceptance":
        _print_acceptance(checks, sys.stderr if not cfg.out else sys.stdout)
    return exit_code(checks)


if __name__ == "__main__":
    sys.exit(main())
