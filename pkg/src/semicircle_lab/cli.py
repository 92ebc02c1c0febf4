"""Batch command-line front end for the simulation toolkit.

Eight subcommands cover the full experiment surface: ensemble simulation
with histogram and distance report (``simulate``), averaged-ESD export
(``esd``), distribution distances (``distance``), exact moment tables
(``moments``), canonical-walk enumeration (``graphs``), interpolation
sweeps (``interpolate``), the block-profile counterexample
(``counterexample``) and variance-profile condition checks (``check``).

Outputs are JSON or CSV; commands that write report files also render
matplotlib figures next to them.  Exit codes: 0 success, 2 usage or config
error, 3 I/O failure, 4 threshold violation under --assert.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import semicircle
from .ensembles import (
    KINDS,
    EnsembleSpec,
    profile_from_desc,
    sample,
)
from .interpolation import DEFAULT_Z_GRID, sweep, universality_gap
from .matrices import check_conditions, lindeberg_ratio, truncation_sequence
from .metrics import as_step, kolmogorov, kolmogorov_to_semicircle, levy, semicircle_step
from .moment_graphs import (
    MAX_EXACT_DIMENSION,
    MAX_EXACT_WALK_LENGTH,
    MAX_WALK_LENGTH,
    WICK_COST_LIMIT,
    gaussian_moment_exact,
    graph_contribution,
    iter_canonical,
    wick_moment_oracle,
)
from .spectra import (
    AveragedESD,
    SpectralDistribution,
    averaged_esd,
    esd,
    esd_eval,
    default_grid,
    thread_count,
)

__all__ = ["main", "RunConfig"]

PROFILES = ("constant", "zero", "smooth", "block")
FORMATS = ("json", "csv")

# Pre-registered desk-scale thresholds used by --assert.
ASSERT_KOLMOGOROV_MAX = 0.03
ASSERT_COUNTEREXAMPLE_MIN = 0.05
ASSERT_GAP_MAX = 0.02
ASSERT_ORACLE_RTOL = 1e-10

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_ASSERT = 4


class AssertionFailure(Exception):
    """Raised when an --assert threshold is violated (exit code 4)."""


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings of one CLI invocation."""

    subcommand: str
    spec: EnsembleSpec | None
    spec_y: EnsembleSpec | None
    seeds: tuple
    grid_min: float
    grid_max: float
    grid_points: int
    fmt: str
    out: str | None
    threads: int
    do_assert: bool
    reproducible: bool
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.fmt!r}")
        if self.subcommand not in _COMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        if self.spec is not None and not self.seeds:
            raise ValueError("at least one seed is required")

    @property
    def grid(self):
        return default_grid(self.grid_min, self.grid_max, self.grid_points)


def _timestamp(cfg):
    if cfg.reproducible:
        return {}
    return {"timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds")}


def _dump_json(payload):
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(text, out_path):
    """Write text to a file (exit-3 domain) or stdout."""
    if out_path is None:
        sys.stdout.write(text)
        return
    Path(out_path).parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _fmt_float(x):
    return f"{x:.17g}"


# ---------------------------------------------------------------------------
# Argument parsing and config resolution


def _add_ensemble_flags(p, suffix=""):
    tag = " of the second ensemble" if suffix else ""
    p.add_argument(f"--kind{suffix}", choices=KINDS, default=None,
                   help=f"entry law{tag}")
    p.add_argument(f"--profile{suffix}", choices=PROFILES, default=None,
                   help=f"variance profile{tag}")
    p.add_argument(f"--alpha{suffix}", type=float, default=None,
                   help=f"modulation strength of the smooth profile{tag}")
    p.add_argument(f"--delta{suffix}", type=float, default=None,
                   help=f"coupling strength of the dependent kind{tag} "
                   "(default 0.5 for dependent, else 0)")


def _add_common_flags(p, with_grid=True):
    p.add_argument("--n", type=int, default=None, help="matrix dimension")
    p.add_argument("--seeds", type=int, default=None,
                   help="number of seeds (0..count-1)")
    p.add_argument("--seed-list", default=None,
                   help="comma-separated explicit seed list (overrides --seeds)")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: SEMICIRCLE_LAB_THREADS, else CPU count)")
    if with_grid:
        p.add_argument("--grid-min", type=float, default=None)
        p.add_argument("--grid-max", type=float, default=None)
        p.add_argument("--grid-points", type=int, default=None)
    p.add_argument("--format", choices=FORMATS, default=None, help="output format")
    p.add_argument("--out", default=None, help="output file (or directory for "
                   "multi-file commands); stdout when omitted")
    p.add_argument("--tau", type=float, default=None,
                   help="truncation level (default n^(-1/8))")
    p.add_argument("--config", default=None,
                   help="JSON config file; explicit flags win over file values")
    p.add_argument("--assert", dest="do_assert", action="store_true",
                   help="fail with exit code 4 when the subcommand's "
                   "pre-registered threshold is violated")
    p.add_argument("--reproducible", action="store_true",
                   help="omit the timestamp so reruns are byte-identical")
    p.add_argument("--no-plot", action="store_true",
                   help="skip figure rendering even when writing files")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="semicircle-lab",
        description="Seeded random-matrix experiments around the semicircle law.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("simulate", help="averaged ESD, histogram and distance report")
    _add_ensemble_flags(p)
    _add_common_flags(p)

    p = sub.add_parser("esd", help="averaged ESD table only")
    _add_ensemble_flags(p)
    _add_common_flags(p)

    p = sub.add_parser("distance", help="kolmogorov and levy distances")
    _add_ensemble_flags(p)
    _add_common_flags(p)
    p.add_argument("--csv", default=None, help="averaged-ESD CSV to measure "
                   "(default: simulate the configured ensemble)")
    p.add_argument("--csv-b", default=None,
                   help="second CSV; compare pairwise instead of against the semicircle")

    p = sub.add_parser("moments", help="exact Gaussian moment table at small n")
    _add_ensemble_flags(p)
    _add_common_flags(p, with_grid=False)
    p.add_argument("--kmax", type=int, default=None,
                   help=f"largest walk length (<= {MAX_EXACT_WALK_LENGTH})")

    p = sub.add_parser("graphs", help="canonical closed-walk table for one k")
    _add_ensemble_flags(p)
    _add_common_flags(p, with_grid=False)
    p.add_argument("--k", type=int, default=None,
                   help=f"walk length (<= {MAX_WALK_LENGTH})")

    p = sub.add_parser("interpolate", help="path sweep between two ensembles")
    _add_ensemble_flags(p)
    _add_ensemble_flags(p, suffix="-y")
    _add_common_flags(p, with_grid=False)
    p.add_argument("--phis", type=int, default=None,
                   help="number of evenly spaced path angles in [0, pi/2]")

    p = sub.add_parser("counterexample",
                       help="block-profile run where convergence fails")
    _add_common_flags(p)
    p.add_argument("--kind", choices=KINDS, default=None)

    p = sub.add_parser("check", help="variance-profile condition report")
    _add_ensemble_flags(p)
    _add_common_flags(p, with_grid=False)

    return parser


def _load_config_file(path):
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ValueError("config file must hold a JSON object")
    cfg = dict(raw)
    # An ensemble-spec shaped file maps onto the flat flag namespace.
    prof = cfg.get("profile")
    if isinstance(prof, dict):
        cfg["profile"] = prof.get("type")
        params = prof.get("params", {})
        if "alpha" in params and "alpha" not in cfg:
            cfg["alpha"] = params["alpha"]
    return cfg


_CONFIG_KEYS = (
    "kind", "profile", "alpha", "delta", "n", "seeds", "seed_list", "threads",
    "grid_min", "grid_max", "grid_points", "format", "out", "tau", "k", "kmax",
    "phis", "kind_y", "profile_y", "alpha_y", "delta_y", "csv", "csv_b",
)


def _merge_config(args):
    """Fill unset argparse values from the --config file, if any."""
    if getattr(args, "config", None) is None:
        return args
    cfg = _load_config_file(args.config)
    unknown = set(cfg) - set(_CONFIG_KEYS) - {"seed", "assert", "do_assert", "reproducible"}
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    for key in _CONFIG_KEYS:
        if key in cfg and getattr(args, key, None) is None and hasattr(args, key):
            setattr(args, key, cfg[key])
    if cfg.get("assert") or cfg.get("do_assert"):
        args.do_assert = True
    if cfg.get("reproducible"):
        args.reproducible = True
    return args


def _first(*values):
    for v in values:
        if v is not None:
            return v
    return None


def _build_spec(kind, profile_name, n, alpha, delta, seed=0):
    desc = {"type": profile_name, "params": {}}
    if profile_name == "smooth":
        desc["params"]["alpha"] = alpha
    profile = profile_from_desc(n, desc)
    return EnsembleSpec(kind=kind, profile=profile, delta=delta, seed=seed)


def _resolve_seeds(args, default_count):
    raw = getattr(args, "seed_list", None)
    if raw is not None:
        if isinstance(raw, str):
            parts = [p for p in raw.split(",") if p.strip()]
            seeds = tuple(int(p) for p in parts)
        else:
            seeds = tuple(int(p) for p in raw)
        if not seeds:
            raise ValueError("--seed-list must name at least one seed")
        return seeds
    count = _first(getattr(args, "seeds", None), default_count)
    count = int(count)
    if count < 1:
        raise ValueError(f"seed count must be positive, got {count}")
    return tuple(range(count))


def _resolve_threads(args):
    threads = getattr(args, "threads", None)
    if threads is None:
        env = os.environ.get("SEMICIRCLE_LAB_THREADS")
        threads = int(env) if env else (os.cpu_count() or 1)
    threads = int(threads)
    if threads < 1:
        raise ValueError(f"thread count must be positive, got {threads}")
    return threads


def resolve_config(args):
    """Turn parsed (and config-merged) arguments into a RunConfig."""
    sub = args.subcommand
    defaults = _SUBCOMMAND_DEFAULTS[sub]

    spec = None
    if sub == "counterexample":
        n = int(_first(getattr(args, "n", None), defaults["n"]))
        kind = _first(getattr(args, "kind", None), "gaussian")
        spec = _build_spec(kind, "block", n, 0.5, 0.0)
    elif hasattr(args, "profile"):
        n = int(_first(getattr(args, "n", None), defaults["n"]))
        kind = _first(getattr(args, "kind", None), defaults["kind"])
        profile_name = _first(getattr(args, "profile", None), defaults["profile"])
        alpha = float(_first(getattr(args, "alpha", None), 0.5))
        # An explicit --delta is passed through so a nonsensical combination
        # (delta with an independent kind) fails validation instead of being
        # silently dropped.
        delta = float(_first(getattr(args, "delta", None),
                             0.5 if kind == "dependent" else 0.0))
        spec = _build_spec(kind, profile_name, n, alpha, delta)

    spec_y = None
    if sub == "interpolate":
        kind_y = _first(getattr(args, "kind_y", None), "gaussian")
        profile_y = _first(getattr(args, "profile_y", None), spec.profile.desc["type"])
        alpha_y = float(_first(getattr(args, "alpha_y", None),
                               spec.profile.desc.get("params", {}).get("alpha", 0.5)))
        delta_y = float(_first(getattr(args, "delta_y", None),
                               0.5 if kind_y == "dependent" else 0.0))
        spec_y = _build_spec(kind_y, profile_y, spec.n, alpha_y, delta_y)

    params = {}
    for key in ("k", "kmax", "phis", "csv", "csv_b", "tau"):
        if hasattr(args, key) and getattr(args, key) is not None:
            params[key] = getattr(args, key)
    params["no_plot"] = bool(getattr(args, "no_plot", False))

    return RunConfig(
        subcommand=sub,
        spec=spec,
        spec_y=spec_y,
        seeds=_resolve_seeds(args, defaults["seeds"]),
        grid_min=float(_first(getattr(args, "grid_min", None), -3.0)),
        grid_max=float(_first(getattr(args, "grid_max", None), 3.0)),
        grid_points=int(_first(getattr(args, "grid_points", None), 401)),
        fmt=_first(getattr(args, "format", None), "json"),
        out=getattr(args, "out", None),
        threads=_resolve_threads(args),
        do_assert=bool(getattr(args, "do_assert", False)),
        reproducible=bool(getattr(args, "reproducible", False)),
        params=params,
    )


_SUBCOMMAND_DEFAULTS = {
    "simulate": {"n": 256, "kind": "gaussian", "profile": "constant", "seeds": 5},
    "esd": {"n": 256, "kind": "gaussian", "profile": "constant", "seeds": 5},
    "distance": {"n": 256, "kind": "gaussian", "profile": "constant", "seeds": 5},
    "moments": {"n": 8, "kind": "gaussian", "profile": "constant", "seeds": 1},
    "graphs": {"n": 8, "kind": "gaussian", "profile": "constant", "seeds": 1},
    "interpolate": {"n": 256, "kind": "rademacher", "profile": "constant", "seeds": 5},
    "counterexample": {"n": 1024, "kind": "gaussian", "profile": "block", "seeds": 10},
    "check": {"n": 256, "kind": "gaussian", "profile": "constant", "seeds": 5},
}


# ---------------------------------------------------------------------------
# Shared computation helpers


def _collect_spectra(spec, seeds, threads):
    """Scaled spectra of all seeds, in seed order; one eigensolve each,
    shared by the ESD, histogram and per-seed distance consumers."""

    def one(s):
        return esd(sample(spec.with_seed(int(s)))).lambdas

    workers = thread_count(threads)
    if workers == 1:
        return [one(s) for s in seeds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, seeds))


def _averaged_from_spectra(spec, seeds, spectra, grid):
    values = np.mean(np.stack([esd_eval(lam, grid) for lam in spectra]), axis=0)
    return AveragedESD(grid, values, seeds=seeds, spec=spec.to_dict())


def _histogram_table(spectra):
    """Pooled eigenvalue histogram: 401 density-normalized bins on [-3, 3]
    with the semicircle density tabulated at bin centers."""
    edges = np.linspace(-3.0, 3.0, 402)
    counts = np.zeros(401)
    total = 0
    for lam in spectra:
        counts += np.histogram(lam, bins=edges)[0]
        total += lam.size
    width = edges[1] - edges[0]
    centers = 0.5 * (edges[:-1] + edges[1:])
    heights = counts / (total * width)
    overlay = np.asarray(semicircle.density(centers))
    return centers, heights, overlay


def _distance_report_to_semicircle(averaged):
    """Kolmogorov exactly; Levy against a fine quantile discretization of G
    (its own sup-error to G is 1/8192, far below reported levels)."""
    return {
        "kolmogorov": kolmogorov_to_semicircle(averaged),
        "levy": levy(as_step(averaged), semicircle_step()),
    }


def _maybe_render(cfg, render):
    """Run a figure callback unless plotting is disabled; matplotlib import
    stays local so data-only runs never pay for it."""
    if cfg.params.get("no_plot") or cfg.out is None:
        return []
    from . import plots  # noqa: PLC0415 (deliberate lazy import)

    return render(plots)


def _out_dir(cfg):
    path = Path(cfg.out)
    path.mkdir(parents=True, exist_ok=True)
    return path


# ---------------------------------------------------------------------------
# Subcommands


def cmd_simulate(cfg):
    spectra = _collect_spectra(cfg.spec, cfg.seeds, cfg.threads)
    averaged = _averaged_from_spectra(cfg.spec, cfg.seeds, spectra, cfg.grid)
    centers, heights, overlay = _histogram_table(spectra)
    distances = _distance_report_to_semicircle(averaged)
    report = {
        "subcommand": "simulate",
        "spec": cfg.spec.to_dict(),
        "seeds": list(cfg.seeds),
        "grid": {"min": cfg.grid_min, "max": cfg.grid_max, "points": cfg.grid_points},
        "kolmogorov": distances["kolmogorov"],
        "levy": distances["levy"],
        **_timestamp(cfg),
    }
    if cfg.out is not None:
        out = _out_dir(cfg)
        averaged.to_csv(out / "esd.csv")
        _emit(_csv_text(
            ["center", "height", "semicircle_density"],
            [(_fmt_float(c), _fmt_float(h), _fmt_float(o))
             for c, h, o in zip(centers, heights, overlay)],
        ), out / "histogram.csv")
        _emit(_dump_json(report), out / "report.json")
        _maybe_render(cfg, lambda plots: [
            plots.histogram_figure(centers, heights, out / "histogram.png"),
            plots.esd_figure(averaged, out / "esd.png"),
        ])
    else:
        _emit(_dump_json(report), None)
    if cfg.do_assert and report["kolmogorov"] > ASSERT_KOLMOGOROV_MAX:
        raise AssertionFailure(
            f"kolmogorov {report['kolmogorov']:.4f} > {ASSERT_KOLMOGOROV_MAX}")
    return EXIT_OK


def cmd_esd(cfg):
    averaged = averaged_esd(cfg.spec, cfg.seeds, grid=cfg.grid, threads=cfg.threads)
    if cfg.fmt == "csv":
        _emit(averaged.to_csv_text(), cfg.out)
    else:
        _emit(averaged.to_json(), cfg.out)
    if cfg.out is not None:
        _maybe_render(cfg, lambda plots: [
            plots.esd_figure(averaged, Path(cfg.out).with_suffix(".png")),
        ])
    return EXIT_OK


def cmd_distance(cfg):
    csv_a = cfg.params.get("csv")
    csv_b = cfg.params.get("csv_b")
    if csv_b is not None and csv_a is None:
        raise ValueError("--csv-b requires --csv")
    if csv_a is not None:
        first = AveragedESD.from_csv(csv_a)
        if csv_b is not None:
            second = AveragedESD.from_csv(csv_b)
            report = {
                "target": "pair",
                "kolmogorov": kolmogorov(first, second),
                "levy": levy(as_step(first), as_step(second)),
            }
        else:
            report = {"target": "semicircle", **_distance_report_to_semicircle(first)}
    else:
        averaged = averaged_esd(cfg.spec, cfg.seeds, grid=cfg.grid, threads=cfg.threads)
        report = {
            "target": "semicircle",
            "spec": cfg.spec.to_dict(),
            "seeds": list(cfg.seeds),
            **_distance_report_to_semicircle(averaged),
        }
    report = {"subcommand": "distance", **report, **_timestamp(cfg)}
    _emit(_dump_json(report), cfg.out)
    if cfg.do_assert and report["levy"] > report["kolmogorov"] + 1e-9:
        raise AssertionFailure("levy exceeds kolmogorov")
    return EXIT_OK


def cmd_moments(cfg):
    kmax = int(cfg.params.get("kmax", 6))
    if not 1 <= kmax <= MAX_EXACT_WALK_LENGTH:
        raise ValueError(f"--kmax must be in 1..{MAX_EXACT_WALK_LENGTH}, got {kmax}")
    profile = cfg.spec.profile
    if profile.n > MAX_EXACT_DIMENSION:
        raise ValueError(
            f"exact moments need n <= {MAX_EXACT_DIMENSION}, got {profile.n}")
    rows = []
    for k in range(1, kmax + 1):
        breakdown = gaussian_moment_exact(profile, k)
        wick = None
        if profile.n**k <= WICK_COST_LIMIT:
            wick = wick_moment_oracle(profile, k)
        rows.append({
            "k": k,
            "catalan": semicircle.catalan_moment(k),
            "s1": breakdown.s1,
            "s3": breakdown.s3,
            "total": breakdown.total,
            "wick": wick,
        })
    if cfg.fmt == "csv":
        table = [
            (r["k"], r["catalan"], _fmt_float(r["s1"]), _fmt_float(r["s3"]),
             _fmt_float(r["total"]),
             "" if r["wick"] is None else _fmt_float(r["wick"]))
            for r in rows
        ]
        _emit(_csv_text(["k", "catalan", "s1", "s3", "total", "wick"], table), cfg.out)
    else:
        report = {
            "subcommand": "moments",
            "n": profile.n,
            "profile": profile.desc,
            "kmax": kmax,
            "rows": rows,
            **_timestamp(cfg),
        }
        _emit(_dump_json(report), cfg.out)
    if cfg.do_assert:
        for r in rows:
            if r["wick"] is None:
                continue
            scale = max(1.0, abs(r["wick"]))
            if abs(r["total"] - r["wick"]) > ASSERT_ORACLE_RTOL * scale:
                raise AssertionFailure(
                    f"k={r['k']}: graph total {r['total']!r} != oracle {r['wick']!r}")
    return EXIT_OK


def cmd_graphs(cfg):
    k = int(cfg.params.get("k", 4))
    if not 1 <= k <= MAX_WALK_LENGTH:
        raise ValueError(f"--k must be in 1..{MAX_WALK_LENGTH}, got {k}")
    profile = cfg.spec.profile
    with_contrib = k <= MAX_EXACT_WALK_LENGTH and profile.n <= MAX_EXACT_DIMENSION
    rows = []
    counts = [0, 0, 0]
    for graph in iter_canonical(k):
        counts[graph.category - 1] += 1
        contribution = graph_contribution(graph, profile) if with_contrib else None
        rows.append({
            "g": graph.label,
            "t": graph.t,
            "category": graph.category,
            "contribution": contribution,
        })
    if cfg.fmt == "csv":
        table = [
            (r["g"], r["t"], r["category"],
             "" if r["contribution"] is None else _fmt_float(r["contribution"]))
            for r in rows
        ]
        _emit(_csv_text(["g", "t", "category", "contribution"], table), cfg.out)
    else:
        report = {
            "subcommand": "graphs",
            "k": k,
            "n": profile.n,
            "counts": {
                "category1": counts[0],
                "category2": counts[1],
                "category3": counts[2],
                "total": sum(counts),
            },
            "graphs": rows,
            **_timestamp(cfg),
        }
        _emit(_dump_json(report), cfg.out)
    if cfg.do_assert:
        expected_c1 = semicircle.catalan_moment(k) if k % 2 == 0 else 0
        if counts[0] != expected_c1:
            raise AssertionFailure(
                f"category-1 count {counts[0]} != Catalan value {expected_c1}")
    return EXIT_OK


def cmd_interpolate(cfg):
    phis_count = int(cfg.params.get("phis", 5))
    if phis_count < 2:
        raise ValueError(f"--phis must be at least 2, got {phis_count}")
    phis = np.linspace(0.0, math.pi / 2, phis_count)
    samples = sweep(cfg.spec, cfg.spec_y, phis, seeds=cfg.seeds, threads=cfg.threads)
    gap = universality_gap(cfg.spec, cfg.spec_y, seeds=cfg.seeds, threads=cfg.threads)
    report = {
        "subcommand": "interpolate",
        "spec_x": cfg.spec.to_dict(),
        "spec_y": cfg.spec_y.to_dict(),
        "seeds": list(cfg.seeds),
        "z_grid": [[z.real, z.imag] for z in DEFAULT_Z_GRID],
        "gap": gap,
        **_timestamp(cfg),
    }
    table = _csv_text(
        ["phi", "re_z", "im_z", "re_s", "im_s", "stderr"],
        [(_fmt_float(s.phi), _fmt_float(s.z.real), _fmt_float(s.z.imag),
          _fmt_float(s.s.real), _fmt_float(s.s.imag), _fmt_float(s.stderr))
         for s in samples],
    )
    if cfg.out is not None:
        out = _out_dir(cfg)
        _emit(table, out / "sweep.csv")
        _emit(_dump_json(report), out / "summary.json")
        _maybe_render(cfg, lambda plots: [
            plots.interpolation_figure(samples, out / "path.png"),
        ])
    else:
        _emit(_dump_json(report), None)
    if cfg.do_assert and gap > ASSERT_GAP_MAX:
        raise AssertionFailure(f"universality gap {gap:.4f} > {ASSERT_GAP_MAX}")
    return EXIT_OK


def cmd_counterexample(cfg):
    spectra = _collect_spectra(cfg.spec, cfg.seeds, cfg.threads)
    per_seed = [
        {"seed": int(s), "kolmogorov": kolmogorov_to_semicircle(SpectralDistribution(lam))}
        for s, lam in zip(cfg.seeds, spectra)
    ]
    averaged = _averaged_from_spectra(cfg.spec, cfg.seeds, spectra, cfg.grid)
    centers, heights, overlay = _histogram_table(spectra)
    worst = min(r["kolmogorov"] for r in per_seed)
    report = {
        "subcommand": "counterexample",
        "spec": cfg.spec.to_dict(),
        "seeds": list(cfg.seeds),
        "per_seed": per_seed,
        "min_kolmogorov": worst,
        "averaged_kolmogorov": kolmogorov_to_semicircle(averaged),
        **_timestamp(cfg),
    }
    if cfg.out is not None:
        out = _out_dir(cfg)
        averaged.to_csv(out / "esd.csv")
        _emit(_csv_text(
            ["center", "height", "semicircle_density"],
            [(_fmt_float(c), _fmt_float(h), _fmt_float(o))
             for c, h, o in zip(centers, heights, overlay)],
        ), out / "histogram.csv")
        _emit(_dump_json(report), out / "report.json")
        _maybe_render(cfg, lambda plots: [
            plots.histogram_figure(centers, heights, out / "histogram.png",
                                   title="Block-profile spectrum (no semicircle limit)"),
            plots.esd_figure(averaged, out / "esd.png",
                             title="Block-profile averaged ESD vs semicircle CDF"),
        ])
    else:
        _emit(_dump_json(report), None)
    if cfg.do_assert and worst < ASSERT_COUNTEREXAMPLE_MIN:
        raise AssertionFailure(
            f"min per-seed kolmogorov {worst:.4f} < {ASSERT_COUNTEREXAMPLE_MIN}")
    return EXIT_OK


def cmd_check(cfg):
    profile = cfg.spec.profile
    tau = float(cfg.params.get("tau", truncation_sequence(profile.n)))
    estimates = [
        lindeberg_ratio(sample(cfg.spec.with_seed(s)), tau) for s in cfg.seeds
    ]
    lindeberg = float(np.mean(estimates))
    report_obj = check_conditions(profile, tau, lindeberg)
    report = {
        "subcommand": "check",
        "spec": cfg.spec.to_dict(),
        "seeds": list(cfg.seeds),
        "tau": tau,
        "avg_b_deviation": report_obj.avg_b_deviation,
        "max_b": report_obj.max_b,
        "max_b_deviation": report_obj.max_b_deviation,
        "lindeberg": report_obj.lindeberg,
        "verdicts": report_obj.verdicts,
        "all_pass": report_obj.all_pass,
        **_timestamp(cfg),
    }
    _emit(_dump_json(report), cfg.out)
    if cfg.do_assert and not report_obj.all_pass:
        failed = sorted(k for k, v in report_obj.verdicts.items() if not v)
        raise AssertionFailure(f"conditions failed: {', '.join(failed)}")
    return EXIT_OK


_COMMANDS = {
    "simulate": cmd_simulate,
    "esd": cmd_esd,
    "distance": cmd_distance,
    "moments": cmd_moments,
    "graphs": cmd_graphs,
    "interpolate": cmd_interpolate,
    "counterexample": cmd_counterexample,
    "check": cmd_check,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _merge_config(args)
        cfg = resolve_config(args)
    except (ValueError, TypeError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        return _COMMANDS[cfg.subcommand](cfg)
    except AssertionFailure as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
