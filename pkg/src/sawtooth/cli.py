"""Command-line entry point: ``sawtooth <command> [options]``.

Commands:
  sample        draw bead arrays and write them as CSV (optionally SVG too)
  render        draw one bead array as an SVG lozenge tiling
  verify        run one of the built-in identity checks, report JSON
  gue-compare   compare rescaled bottom threads with GUE eigenvalues

Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage error,
3 a resource budget was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

GUE_STREAM = 2**40
VERIFY_CHECKS = ("key-prop", "theorem2", "cumulant-identity", "sampler-exactness")
KEY_PROP_GRID = [-0.5, -0.2, 0.0, 0.3, 0.5]


class UsageError(ValueError):
    pass


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=False) + "\n"
    if out:
        Path(out).write_text(text)
    sys.stdout.write(text)


def _config(args: argparse.Namespace) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k != "func"}
    return cfg


def _load_spec(args):
    from .tilings.patterns import SawtoothSpec

    if args.spec:
        return SawtoothSpec.load(args.spec)
    if getattr(args, "N", None):
        N = args.N
        return SawtoothSpec([2 * (N - i) for i in range(1, N + 1)])
    raise UsageError("--spec (or --N for the default evenly spaced top row) is required")


# -- sample -------------------------------------------------------------------
def samples_csv(spec, samples: int, seed: int, method: str, glauber_steps: int | None, workers: int = 1):
    """CSV text (one sample per line: seed, then rows 1..N flattened) and the arrays."""
    from .tilings.sampler import sample_batch

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    arrays = []
    for p in sample_batch(spec, samples, seed, method=method, glauber_steps=glauber_steps, workers=workers):
        arrays.append(p)
        writer.writerow([seed] + p.flat())
    return buf.getvalue(), arrays


def cmd_sample(args) -> int:
    from .render import tiling_svg
    from .tilings.lozenges import pattern_to_lozenges

    spec = _load_spec(args)
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    text, arrays = samples_csv(spec, args.samples, args.seed, args.method, args.glauber_steps, args.workers)
    cfg = _config(args)
    cfg["N"] = spec.N
    cfg["top"] = list(spec.top)
    cfg["streams"] = "sample j (0-based CSV line) uses generator stream j of the seed"
    if args.out:
        out = Path(args.out)
        out.write_text(text)
        out.with_suffix(out.suffix + ".config.json").write_text(json.dumps(cfg, indent=2) + "\n")
        if args.render:
            for j, p in enumerate(arrays):
                out.with_name(f"{out.stem}.{j}.svg").write_text(tiling_svg(pattern_to_lozenges(p)))
        sys.stderr.write(json.dumps({"config": cfg}) + "\n")
    else:
        sys.stderr.write(json.dumps({"config": cfg}) + "\n")
        sys.stdout.write(text)
    return EXIT_OK


# -- render -------------------------------------------------------------------
def load_pattern(path: str, index: int = 0):
    from .tilings.patterns import BeadArray

    p = Path(path)
    text = p.read_text()
    if p.suffix == ".json":
        try:
            return BeadArray.from_json(json.loads(text))
        except (KeyError, TypeError) as exc:
            raise UsageError(f"{path} is not a bead array JSON {{\"N\": ..., \"rows\": [...]}}") from exc
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
    if not 0 <= index < len(rows):
        raise UsageError(f"{path} has {len(rows)} samples, index {index} requested")
    values = [int(v) for v in rows[index][1:]]
    N = int((math.isqrt(8 * len(values) + 1) - 1) // 2)
    return BeadArray.from_flat(values, N)


def cmd_render(args) -> int:
    from .render import tiling_svg
    from .tilings.lozenges import pattern_to_lozenges

    if not args.pattern:
        raise UsageError("render needs a pattern file (JSON bead array or sample CSV)")
    pattern = load_pattern(args.pattern, args.index)
    svg = tiling_svg(pattern_to_lozenges(pattern), title=f"rank {pattern.N}")
    if args.out:
        Path(args.out).write_text(svg)
        sys.stderr.write(json.dumps({"config": _config(args), "tiles": len(pattern_to_lozenges(pattern))}) + "\n")
    else:
        sys.stdout.write(svg)
    return EXIT_OK


# -- verify -------------------------------------------------------------------
def verify_key_prop(N: int, k: int | None, dps: int, spec=None) -> dict:
    import mpmath

    from .tilings.laplace import laplace_L, laplace_L_char
    from .tilings.patterns import SawtoothSpec

    spec = spec or SawtoothSpec([2 * (N - i) for i in range(1, N + 1)])
    ks = [k] if k else list(range(1, spec.N + 1))
    rows = []
    for kk in ks:
        for r in range(len(KEY_PROP_GRID)):
            a = [KEY_PROP_GRID[(r + j) % len(KEY_PROP_GRID)] for j in range(kk)]
            lhs = laplace_L(spec, kk, a, dps=dps)
            rhs = laplace_L_char(spec, kk, a, dps=dps)
            rel = float(abs(lhs - rhs) / abs(lhs))
            rows.append({"k": kk, "a": a, "L": mpmath.nstr(lhs, 20), "L_char": mpmath.nstr(rhs, 20),
                         "rel_error": rel, "passed": rel < 1e-9})
    return {"check": "key-prop", "top": list(spec.top), "tolerance": 1e-9,
            "passed": all(r["passed"] for r in rows), "comparisons": rows}


def _random_moments(rng: random.Random, d: int) -> list[Fraction]:
    return [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(d)]


def verify_cumulant_identity(d: int, vectors: int = 20, seed: int = 0) -> dict:
    from .cumulants import free_cumulants, monotone_K

    rng = random.Random(seed)
    rows = []
    for v in range(vectors):
        psi = _random_moments(rng, d)
        kappa = free_cumulants(psi)
        for dd in range(1, d + 1):
            lhs = monotone_K(dd, psi)
            rhs = math.factorial(dd - 1) * kappa[dd - 1]
            rows.append({"vector": v, "d": dd, "K_d": str(lhs), "(d-1)!kappa_d": str(rhs), "passed": lhs == rhs})
    return {"check": "cumulant-identity", "arithmetic": "exact rational",
            "passed": all(r["passed"] for r in rows), "comparisons": rows}


def verify_theorem2_json(N: int, d: int, g_max: int, atol: float | None, rtol: float | None) -> dict:
    from .hciz import verify_theorem2

    report = verify_theorem2(N, d, g_max, rtol=rtol, atol=atol)
    out = report.to_json()
    out["check"] = "theorem2"
    return out


def verify_sampler_exactness(specs) -> dict:
    from .tilings.patterns import child_rows
    from .tilings.sampler import RowConditional, enumeration_conditional

    rows = []
    for spec in specs:
        seen = {spec.top}
        frontier = [spec.top]
        ok = True
        checked = 0
        while frontier:
            nxt = []
            for x in frontier:
                if len(x) < 2:
                    continue
                if RowConditional(x).pmf() != enumeration_conditional(spec, x):
                    ok = False
                checked += 1
                for y in child_rows(x):
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        rows.append({"top": list(spec.top), "rows_checked": checked, "passed": ok})
    return {"check": "sampler-exactness", "arithmetic": "exact rational",
            "passed": all(r["passed"] for r in rows), "comparisons": rows}


def _random_specs(count: int, max_N: int, seed: int):
    from .tilings.patterns import SawtoothSpec

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        N = rng.randint(1, max_N)
        out.append(SawtoothSpec(sorted(rng.sample(range(-4, 9), N), reverse=True)))
    return out


def cmd_verify(args) -> int:
    from .hurwitz import BudgetExceededError
    from .tilings.patterns import EnumerationLimitError

    which = args.which
    try:
        if which == "key-prop":
            N = args.N or 4
            spec = _load_spec(args) if args.spec else None
            report = verify_key_prop(N, args.k, args.precision, spec)
        elif which == "cumulant-identity":
            report = verify_cumulant_identity(args.d or 5, seed=args.seed)
        elif which == "theorem2":
            report = verify_theorem2_json(args.N or 10, args.d or 3, args.g_max, args.atol, args.rtol)
        else:
            specs = [_load_spec(args)] if args.spec else _random_specs(20, 5, args.seed)
            report = verify_sampler_exactness(specs)
    except (BudgetExceededError, EnumerationLimitError) as exc:
        _emit({"config": _config(args), "check": which, "skipped": True, "reason": str(exc)}, args.out)
        return EXIT_BUDGET
    report["config"] = _config(args)
    report["precision"] = {"mpmath_digits": args.precision, "float": "IEEE binary64"}
    _emit(report, args.out)
    return EXIT_OK if report["passed"] else EXIT_FAIL


# -- gue-compare ---------------------------------------------------------------
def compare_threads(spec, threads, k: int, seed: int) -> dict:
    """Rescale bottom-k threads both ways and compare each with GUE eigenvalues."""
    from .rmt import compare_samples, gue_eigenvalue_samples
    from .tilings.patterns import MomentEstimate, rescale_normalizer, rescale_thread
    from .tilings.sampler import make_rng

    m = MomentEstimate.from_spec(spec)
    gue = gue_eigenvalue_samples(k, len(threads), make_rng(seed, GUE_STREAM))
    out = {"N": spec.N, "k": k, "samples": len(threads), "psi1": m.psi1, "psi2": m.psi2,
           "gue_reference_E_p2": k * k}
    for label, use_sqrt in (("sqrt", True), ("no_sqrt", False)):
        A = np.array([rescale_thread(r, spec.N, m, sqrt=use_sqrt) for r in threads])
        rep = compare_samples(A, gue)
        out[label] = {
            "normalizer": rescale_normalizer(m, use_sqrt),
            "coordinate_mean": A.mean(axis=0).tolist(),
            "coordinate_variance": A.var(axis=0, ddof=1).tolist(),
            "report": rep.to_json(),
        }
    return out


def gue_compare(spec, k: int, samples: int, seed: int, method: str = "exact",
                glauber_steps: int | None = None, workers: int = 1) -> dict:
    from .tilings.sampler import sample_batch

    if not 1 <= k <= spec.N:
        raise UsageError(f"--k must be in [1, {spec.N}]")
    threads = [p.row(k) for p in sample_batch(spec, samples, seed, method=method,
                                              glauber_steps=glauber_steps, workers=workers)]
    return compare_threads(spec, threads, k, seed)


def cmd_gue_compare(args) -> int:
    spec = _load_spec(args)
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    k = args.k or 1
    report = gue_compare(spec, k, args.samples, args.seed, args.method, args.glauber_steps, args.workers)
    report["config"] = _config(args)
    report["precision"] = {"float": "IEEE binary64", "ks_pvalues": "asymptotic Kolmogorov distribution"}
    _emit(report, args.out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sawtooth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, sampling=False):
        p.add_argument("--spec", help="JSON file {\"N\": int, \"top\": [strictly decreasing ints]}")
        p.add_argument("--N", type=int, help="rank (default spec: top row 2(N-i))")
        p.add_argument("--k", type=int, help="thread index")
        p.add_argument("--d", type=int, help="degree")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--precision", type=int, default=30, help="working decimal digits for mpmath")
        p.add_argument("--out", help="output path")
        if sampling:
            p.add_argument("--samples", type=int, default=1)
            p.add_argument("--method", choices=("exact", "glauber"), default="exact")
            p.add_argument("--glauber-steps", type=int, default=None)
            p.add_argument("--workers", type=int, default=1, help="processes for replicate sampling")

    p = sub.add_parser("sample", help="draw bead arrays as CSV")
    common(p, sampling=True)
    p.add_argument("--render", action="store_true", help="also write one SVG per sample next to --out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("render", help="SVG of one bead array")
    p.add_argument("pattern", nargs="?", help="bead array JSON or sample CSV")
    p.add_argument("--index", type=int, default=0, help="CSV line to draw")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="run an identity check")
    p.add_argument("which", choices=VERIFY_CHECKS)
    common(p)
    p.add_argument("--g-max", type=int, default=3)
    p.add_argument("--atol", type=float, default=1e-6)
    p.add_argument("--rtol", type=float, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gue-compare", help="rescaled bottom thread vs GUE eigenvalues")
    common(p, sampling=True)
    p.set_defaults(func=cmd_gue_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    from .hurwitz import BudgetExceededError
    from .tilings.patterns import EnumerationLimitError

    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except (BudgetExceededError, EnumerationLimitError) as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
