"""Command-line driver.

Subcommands: census, filter-roots, bijection, stats, audit, cache.
Numbers are serialized at 17 significant digits (32 in double-double
mode, tagged per row); identical configuration and cache produce
byte-identical outputs at any --threads value.

Exit codes: 0 success; 2 suspected missed zero in a census scan;
3 filter-root Newton failure; 4 audit/stats I/O failure (e.g. missing
catalog); 5 invalid configuration; 6 cache verification failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import claims as cl
from . import mbfilter as mbf
from . import spectrostats as st
from . import zerocensus as zc
from .audit import ledger_json
from .errors import (
    BasinEscape,
    ChecksumMismatch,
    ConfigError,
    MbzeroError,
    MissedZeroSuspected,
    NoConvergence,
    VersionUnsupported,
)

EXIT_OK = 0
EXIT_MISSED_ZERO = 2
EXIT_NEWTON = 3
EXIT_IO = 4
EXIT_CONFIG = 5
EXIT_CACHE = 6


@dataclass
class RunConfig:
    command: str
    function: str = "zeta"
    t_max: float = 60.0
    e_max: float = 60.0
    a: float = 0.2
    abscissa: float = 0.75
    precision: str = "double"
    out_dir: str = "."
    cache_path: str = "zerocatalog.txt"
    threads: int = 1
    claims: tuple = ()

    def validate(self):
        if self.function not in ("zeta", "beta"):
            raise ConfigError(f"--function must be zeta or beta, got {self.function}")
        if not (0.0 < self.t_max <= 200.0):
            raise ConfigError("--t-max must be in (0, 200]")
        if not (0.0 < self.e_max <= 400.0):
            raise ConfigError("--e-max must be in (0, 400]")
        if not (0.0 < self.a < 1.0):
            raise ConfigError("--a must be in (0, 1)")
        if not (-8.0 < self.abscissa < 8.0):
            raise ConfigError("--abscissa out of range (-8, 8)")
        if self.precision not in ("double", "double_double"):
            raise ConfigError("--precision must be double or double_double")
        if self.threads < 1:
            raise ConfigError("--threads must be >= 1")
        unknown = [c for c in self.claims if c not in cl.REGISTRY]
        if unknown:
            raise ConfigError(f"unknown claims: {', '.join(unknown)}; "
                              f"known: {', '.join(sorted(cl.REGISTRY))}")


def _fmt(x: float, precision: str = "double") -> str:
    if precision == "double_double":
        import mpmath as mp
        return mp.nstr(mp.mpf(x), 32)
    return format(x, ".17g")


def _load_catalog_or_exit(config) -> list:
    if not os.path.exists(config.cache_path):
        print(f"error: catalog {config.cache_path} not found; "
              "run `mbzero census` first", file=sys.stderr)
        raise SystemExit(EXIT_IO)
    try:
        return zc.catalog_load(config.cache_path)
    except (ChecksumMismatch, VersionUnsupported) as exc:
        print(f"error: catalog unusable: {exc}", file=sys.stderr)
        raise SystemExit(EXIT_IO)


def cmd_census(config: RunConfig) -> int:
    try:
        records = zc.scan_zeros(config.function, config.t_max,
                                threads=config.threads)
    except MissedZeroSuspected as exc:
        print(f"error: {exc}; suspect interval {exc.interval}", file=sys.stderr)
        return EXIT_MISSED_ZERO
    if records:
        zc.catalog_store(config.cache_path, records)
    print(f"# {config.function} zeros with ordinate <= {_fmt(config.t_max)}")
    print(f"{'index':>5}  {'ordinate':>24}  {'residual':>12}")
    for r in records:
        print(f"{r.index:>5}  {_fmt(r.ordinate):>24}  {r.residual:>12.3e}")
    print(f"# {len(records)} records"
          + (f" -> {config.cache_path}" if records else " (no file written)"))
    return EXIT_OK


def cmd_filter_roots(config: RunConfig) -> int:
    catalog = _load_catalog_or_exit(config)
    kernel = "beta2s" if config.function == "beta" else "zeta2s"
    scale = mbf.KernelScale(config.a)
    rows = []
    for r in catalog:
        if 2.0 * r.ordinate > config.e_max:
            break
        guess = 2.0 * r.ordinate + 0.05
        try:
            if config.precision == "double_double":
                import mpmath as mp
                root = mbf.newton_root_dd(kernel, guess, scale)
                e_str = mp.nstr(root, 32)
                e_val = float(root)
            else:
                rec = mbf.newton_filter_root(kernel, guess, scale)
                e_val = 2.0 * rec.ordinate
                e_str = _fmt(e_val)
        except (NoConvergence, BasinEscape) as exc:
            print(f"error: Newton failed from guess {guess}: {exc}",
                  file=sys.stderr)
            return EXIT_NEWTON
        rows.append((e_str, r.ordinate, abs(e_val - 2.0 * r.ordinate)))
    out_path = os.path.join(config.out_dir, "filter_roots.csv")
    lines = ["# kernel=%s g=%s a=%s precision=%s" % (
        kernel, _fmt(config.abscissa), _fmt(config.a), config.precision),
        "E_root,paired_ordinate,abs_gap,precision"]
    for e_str, t, gap in rows:
        lines.append(",".join((e_str, _fmt(t), format(gap, ".3e"),
                               config.precision)))
    worst = max((g for _, _, g in rows), default=0.0)
    lines.append(f"# worst |E - 2t| = {worst:.3e} over {len(rows)} roots")
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
    print("\n".join(lines))
    return EXIT_OK


def cmd_bijection(config: RunConfig) -> int:
    catalog = _load_catalog_or_exit(config)
    e_max = min(config.e_max, 2.0 * catalog[-1].ordinate - 0.2)
    scale = mbf.KernelScale(config.a)
    roots = []
    for r in catalog:
        if 2.0 * r.ordinate <= e_max + 0.5:
            try:
                rec = mbf.newton_filter_root(
                    "zeta2s", 2.0 * r.ordinate + 0.05, scale,
                    precision=config.precision)
            except (NoConvergence, BasinEscape) as exc:
                print(f"error: Newton failed: {exc}", file=sys.stderr)
                return EXIT_NEWTON
            roots.append(2.0 * rec.ordinate)
    audit = zc.bijection_audit(catalog, roots, e_max)
    print(f"{'E':>12}  {'N_H':>4}  {'N_zeta':>6}  {'Delta':>5}")
    for e, nh, nz, d in zip(audit.E_grid, audit.N_H_values,
                            audit.N_zeta_values, audit.delta_values):
        print(f"{e:>12.6f}  {nh:>4}  {nz:>6}  {d:>5}")
    print(f"# verdict: {audit.verdict}")
    return EXIT_OK


def _emit_stats(config: RunConfig, catalog: list) -> None:
    spectrum = st.unfold(catalog, (0.0, catalog[-1].ordinate + 1.0))
    spacings = spectrum.spacings
    edges = np.arange(0.0, 3.2001, 0.2)
    counts, _ = np.histogram(spacings, bins=edges)
    density = counts / (len(spacings) * 0.2)
    centers = 0.5 * (edges[1:] + edges[:-1])
    wd = st.wigner_dyson_pdf(centers)
    n_zeros = len(spectrum.raw)
    hist_path = os.path.join(config.out_dir, "spacing_histogram.csv")
    with open(hist_path, "w", encoding="utf-8") as fh:
        fh.write(f"# unfolded nearest-neighbor spacings, {n_zeros} zeros\n")
        fh.write("s_center,empirical_density,wigner_dyson\n")
        for c, d, w in zip(centers, density, wd):
            fh.write(f"{_fmt(c)},{_fmt(float(d))},{_fmt(float(w))}\n")
    omega = np.arange(0.25, 3.0001, 0.125)
    est = st.pair_correlation_estimate(spectrum.unfolded, omega)
    ref = st.sine_kernel_r2(omega)
    pc_path = os.path.join(config.out_dir, "pair_correlation.csv")
    with open(pc_path, "w", encoding="utf-8") as fh:
        fh.write(f"# two-point estimator, Gaussian window 0.1, {n_zeros} zeros\n")
        fh.write("omega,estimate,sine_kernel\n")
        for o, e, r in zip(omega, est, ref):
            fh.write(f"{_fmt(float(o))},{_fmt(float(e))},{_fmt(float(r))}\n")
    gp = os.path.join(config.out_dir, "plots.gp")
    with open(gp, "w", encoding="utf-8") as fh:
        fh.write(
            "set terminal dumb\n"
            "set datafile separator ','\n"
            "set title 'nearest-neighbor spacing'\n"
            "plot 'spacing_histogram.csv' every ::1 u 1:2 w boxes "
            "t 'empirical', 'spacing_histogram.csv' every ::1 u 1:3 w lines "
            "t 'Wigner-Dyson'\n"
            "set title 'pair correlation'\n"
            "plot 'pair_correlation.csv' every ::1 u 1:2 w points "
            "t 'estimate', 'pair_correlation.csv' every ::1 u 1:3 w lines "
            "t 'sine kernel'\n"
        )


def cmd_stats(config: RunConfig) -> int:
    catalog = _load_catalog_or_exit(config)
    try:
        _emit_stats(config, catalog)
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"# spacing_histogram.csv, pair_correlation.csv, plots.gp "
          f"-> {config.out_dir}")
    return EXIT_OK


def cmd_audit(config: RunConfig) -> int:
    catalog = _load_catalog_or_exit(config)
    only = set(config.claims) or None
    try:
        reports = cl.run_claims(config, catalog, only=only)
        ledger = ledger_json(reports)
        path = os.path.join(config.out_dir, "audit_ledger.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(ledger + "\n")
        if only is None:
            _emit_stats(config, catalog)
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    for rep in sorted(reports, key=lambda r: r.claim_id):
        print(f"{rep.claim_id:<36} {rep.verdict}")
    print(f"# {len(reports)} claims -> {path}")
    return EXIT_OK


def cmd_cache(config: RunConfig) -> int:
    if not os.path.exists(config.cache_path):
        print(f"error: {config.cache_path} not found", file=sys.stderr)
        return EXIT_IO
    try:
        records = zc.catalog_load(config.cache_path)
    except (ChecksumMismatch, VersionUnsupported) as exc:
        print(f"error: cache verification failed: {exc}", file=sys.stderr)
        return EXIT_CACHE
    print(f"# {config.cache_path}: {records[0].function} catalog, "
          f"{len(records)} records, checksum ok")
    print(f"# ordinate range [{_fmt(records[0].ordinate)}, "
          f"{_fmt(records[-1].ordinate)}]")
    return EXIT_OK


_COMMANDS = {
    "census": cmd_census,
    "filter-roots": cmd_filter_roots,
    "bijection": cmd_bijection,
    "stats": cmd_stats,
    "audit": cmd_audit,
    "cache": cmd_cache,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbzero",
        description="Spectral-filter laboratory for critical-line zeros.",
        epilog="exit codes: 0 ok, 2 missed-zero suspicion, 3 Newton failure, "
               "4 I/O failure, 5 invalid config, 6 cache verification failure",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--function", default="zeta", choices=("zeta", "beta"))
        p.add_argument("--t-max", type=float, default=60.0)
        p.add_argument("--e-max", type=float, default=60.0)
        p.add_argument("--a", type=float, default=0.2)
        p.add_argument("--abscissa", type=float, default=0.75)
        p.add_argument("--precision", default="double",
                       choices=("double", "double_double"))
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--out", default=".")
        p.add_argument("--cache", default="zerocatalog.txt")
        p.add_argument("--claims", default="",
                       help="comma-separated claim ids (audit only)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(
        command=args.command, function=args.function, t_max=args.t_max,
        e_max=args.e_max, a=args.a, abscissa=args.abscissa,
        precision=args.precision, out_dir=args.out, cache_path=args.cache,
        threads=args.threads,
        claims=tuple(c for c in args.claims.split(",") if c),
    )
    try:
        config.validate()
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return _COMMANDS[config.command](config)
    except SystemExit as exc:
        return int(exc.code)
    except MbzeroError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
