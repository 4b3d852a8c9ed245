"""Command-line front end.

Subcommands: ``forward``, ``compare``, ``matrices``, ``points``, ``bench``.
Exit codes: 0 success, 1 failed ``--verify`` check, 2 usage or parse error,
3 mathematical precondition violated (e.g. a non-invertible beta).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import numtheory as nt
from .dct import dct_forward, dct_inverse, dct_matrix
from .engine import (
    TransformReport,
    build_plan,
    forward_act,
    interpolation_op_counts,
    naive_report,
    nonzero_term_fraction,
)
from .fileio import InputError, format_number, matrix_csv, parse_vectors, table_csv
from .interpolation import InterpMethod
from .matrices import build_decomposition, divisor_matrix, mobius_matrix, weight_average_matrix

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_MATH = 3

METHODS = ("naive", "act-exact", "act-heuristic")
MATRICES = ("mobius", "divisor", "w", "c1", "c2", "dct")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    input_path: str | None = None
    output_path: str | None = None
    method: str = "act-exact"
    beta: float = 0.0
    eps: float = 0.1
    format: str = "json"
    seed: int = 0
    count: int = 256
    N: str | None = None
    which: str | None = None
    verify: bool = False

    def __post_init__(self):
        if not self.eps > 0:
            raise UsageError(f"--eps must be positive, got {self.eps}")
        if self.method not in METHODS:
            raise UsageError(f"unknown method {self.method!r}")

    def interp(self) -> InterpMethod:
        if self.method == "act-heuristic":
            return InterpMethod.heuristic(self.eps)
        return InterpMethod.direct()

    def block_length(self, minimum: int = 1) -> int:
        if self.N is None:
            raise UsageError("-N is required")
        try:
            n = int(self.N)
        except ValueError:
            raise UsageError(f"-N must be an integer, got {self.N!r}") from None
        if n < minimum:
            raise UsageError(f"-N must be at least {minimum}, got {n}")
        return n


def parse_beta(text: str) -> float:
    """Accepts decimals and fractions such as ``1/3``."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid beta {text!r}") from None


def _read_input(path: str | None) -> list[np.ndarray]:
    if path is None:
        raise UsageError("--input is required")
    if path == "-":
        return parse_vectors(sys.stdin.read(), "<stdin>")
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_vectors(text, path)


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _fmt_point(r) -> str:
    return str(r) if isinstance(r, Fraction) else format_number(r)


# ---------------------------------------------------------------------------
# forward

def _transform(v: np.ndarray, cfg: RunConfig) -> TransformReport:
    if cfg.method == "naive":
        return naive_report(v)
    return forward_act(v, cfg.beta, cfg.interp())


def _render_reports(reports: list[TransformReport], fmt: str, batch: bool) -> str:
    if fmt == "json":
        dicts = [r.to_dict() for r in reports]
        return json.dumps(dicts if batch else dicts[0]) + "\n"
    lines = []
    for i, r in enumerate(reports):
        c = r.op_counts
        lines.append(
            f"# vector={i} n={r.n} method={r.method} beta={'' if r.beta is None else format_number(r.beta)} "
            f"additions={c.additions} multiplications={c.multiplications}"
        )
    body = table_csv(
        ("vector", "k", "coefficient"),
        ((i, k, float(x)) for i, r in enumerate(reports) for k, x in enumerate(r.spectrum)),
    )
    return "\n".join(lines) + "\n" + body


def _spectra_from_output(text: str, fmt: str) -> list[np.ndarray]:
    if fmt == "json":
        data = json.loads(text)
        return [np.array(d["spectrum"]) for d in (data if isinstance(data, list) else [data])]
    rows: dict[int, list[float]] = {}
    for line in text.splitlines():
        if line.startswith("#") or line.startswith("vector") or not line:
            continue
        i, _, x = line.split(",")
        rows.setdefault(int(i), []).append(float(x))
    return [np.array(rows[i]) for i in sorted(rows)]


def _check_beta(beta: float) -> None:
    if not nt.coefficient_sequence(beta, 1).invertible:
        raise nt.NotInvertible(f"non-invertible coefficient sequence: cos(2*pi*beta) vanishes for beta = {beta:g}")


def cmd_forward(cfg: RunConfig) -> int:
    if cfg.method != "naive":
        _check_beta(cfg.beta)
    vectors = _read_input(cfg.input_path)
    reports = [_transform(v, cfg) for v in vectors]
    batch = len(vectors) > 1
    text = _render_reports(reports, cfg.format, batch)
    _write(text, cfg.output_path)
    if cfg.verify:
        spectra = _spectra_from_output(text, cfg.format)
        worst = max(float(np.max(np.abs(dct_inverse(V) - v))) for V, v in zip(spectra, vectors))
        ok = worst < 1e-9
        print(f"verify: {'ok' if ok else 'FAILED'} max round-trip error {worst:.3e}", file=sys.stderr)
        return EXIT_OK if ok else EXIT_VERIFY
    return EXIT_OK


# ---------------------------------------------------------------------------
# compare

def cmd_compare(cfg: RunConfig) -> int:
    if cfg.input_path is not None:
        vectors = _read_input(cfg.input_path)
        N = vectors[0].size
        if any(v.size != N for v in vectors):
            raise UsageError("all vectors must share one length")
        if N < 2:
            raise UsageError("the ACT needs N >= 2")
    else:
        N = cfg.block_length(2)
        if cfg.count < 1:
            raise UsageError(f"--count must be positive, got {cfg.count}")
        rng = np.random.default_rng(cfg.seed)
        vectors = [rng.uniform(0.0, 1.0, N) for _ in range(cfg.count)]
    plan = build_plan(N, cfg.beta, InterpMethod.heuristic(cfg.eps))
    mse = [forward_act(v, plan=plan).mse_vs_reference for v in vectors]
    mean = float(np.mean(mse))
    if cfg.format == "json":
        payload = {"n": N, "beta": cfg.beta, "eps": cfg.eps, "seed": cfg.seed, "count": len(mse), "mse": mse, "mean_mse": mean}
        text = json.dumps(payload) + "\n"
    else:
        text = table_csv(("vector", "mse"), ((i, m) for i, m in enumerate(mse)))
        text += f"# mean_mse={format_number(mean)}\n"
    _write(text, cfg.output_path)
    return EXIT_OK


# ---------------------------------------------------------------------------
# matrices

def cmd_matrices(cfg: RunConfig) -> int:
    which = cfg.which
    if which not in MATRICES:
        raise UsageError(f"--which must be one of {', '.join(MATRICES)}, got {which!r}")
    N = cfg.block_length(2 if which in ("w", "c1", "c2") else 1)
    if which == "mobius":
        M = mobius_matrix(N)
    elif which == "divisor":
        M = divisor_matrix(N)
    elif which == "dct":
        M = dct_matrix(N)
    elif which == "w":
        M = weight_average_matrix(N)
    else:
        bundle = build_decomposition(N)
        M = bundle.C1 if which == "c1" else bundle.C2
    _write(matrix_csv(M), cfg.output_path)
    return EXIT_OK


# ---------------------------------------------------------------------------
# points

def cmd_points(cfg: RunConfig) -> int:
    N = cfg.block_length(2)
    plan = build_plan(N, cfg.beta)
    per_k = [
        (k, m, _fmt_point(r), _fmt_point(plan.unique_points[plan.point_index[k - 1][m]]))
        for k, pts in enumerate(plan.points_per_k, start=1)
        for m, r in enumerate(pts)
    ]
    unique = sorted(plan.unique_points)
    if cfg.format == "json":
        payload = {
            "n": N,
            "beta": cfg.beta,
            "points": [{"k": k, "m": m, "raw": raw, "folded": f} for k, m, raw, f in per_k],
            "unique": [_fmt_point(r) for r in unique],
        }
        text = json.dumps(payload) + "\n"
    else:
        text = table_csv(("k", "m", "raw", "folded"), per_k)
        text += "# unique folded points\n" + "".join(_fmt_point(r) + "\n" for r in unique)
    _write(text, cfg.output_path)
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench

def _parse_range(text: str | None) -> list[int]:
    if text is None:
        return [8]
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":"))
            values = list(range(lo, hi + 1))
        else:
            values = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad -N range {text!r}; use e.g. 8, 4,8,16 or 2:32") from None
    if not values or min(values) < 2:
        raise UsageError(f"bad -N range {text!r}; block lengths must be >= 2")
    return values


def cmd_bench(cfg: RunConfig) -> int:
    sizes = _parse_range(cfg.N)
    if cfg.count < 1:
        raise UsageError(f"--count must be positive, got {cfg.count}")
    rng = np.random.default_rng(cfg.seed)
    rows = []
    for N in sizes:
        vectors = [rng.uniform(-1.0, 1.0, N) for _ in range(cfg.count)]
        for method in METHODS:
            if method == "naive":
                t0 = time.perf_counter()
                for v in vectors:
                    report = naive_report(v)
                elapsed = (time.perf_counter() - t0) / len(vectors)
                rows.append((N, method, elapsed, report.op_counts.additions, report.op_counts.multiplications, 0, 0, None))
                continue
            interp = InterpMethod.heuristic(cfg.eps) if method == "act-heuristic" else InterpMethod.direct()
            plan = build_plan(N, cfg.beta, interp)
            t0 = time.perf_counter()
            for v in vectors:
                report = forward_act(v, plan=plan)
            elapsed = (time.perf_counter() - t0) / len(vectors)
            ic = interpolation_op_counts(plan)
            rows.append((
                N, method, elapsed,
                report.op_counts.additions, report.op_counts.multiplications,
                ic.additions, ic.multiplications,
                nonzero_term_fraction(cfg.beta, N - 1),
            ))
    header = ("n", "method", "wall_time_s", "additions", "multiplications",
              "interp_additions", "interp_multiplications", "nonzero_fraction")
    if cfg.format == "json":
        text = json.dumps([dict(zip(header, row)) for row in rows]) + "\n"
    else:
        text = table_csv(header, rows)
    _write(text, cfg.output_path)
    return EXIT_OK


COMMANDS = {
    "forward": cmd_forward,
    "compare": cmd_compare,
    "matrices": cmd_matrices,
    "points": cmd_points,
    "bench": cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="actdct", description="Arithmetic cosine transform toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="json"):
        p.add_argument("--output", help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=fmt_default)

    p = sub.add_parser("forward", help="transform the vectors in a CSV/JSON file")
    p.add_argument("--input", required=True, help="CSV (one sample per line) or JSON array(s); '-' for stdin")
    p.add_argument("--method", choices=METHODS, default="act-exact")
    p.add_argument("--beta", type=parse_beta, default=0.0)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--verify", action="store_true", help="invert the written spectra and check them against the input")
    common(p)

    p = sub.add_parser("compare", help="heuristic vs naive MSE on random uniform(0,1) vectors")
    p.add_argument("-N", default="8")
    p.add_argument("--count", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--beta", type=parse_beta, default=0.0)
    p.add_argument("--input", help="compare these vectors instead of random ones")
    common(p)

    p = sub.add_parser("matrices", help="dump a transform matrix as CSV")
    p.add_argument("-N", required=True)
    p.add_argument("--which", required=True)
    p.add_argument("--output")

    p = sub.add_parser("points", help="list the fractional sample points")
    p.add_argument("-N", required=True)
    p.add_argument("--beta", type=parse_beta, default=0.0)
    common(p, "csv")

    p = sub.add_parser("bench", help="time and count operations per method")
    p.add_argument("-N", default="8", help="block lengths: 8, 4,8,16 or 2:32")
    p.add_argument("--count", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--beta", type=parse_beta, default=0.0)
    common(p, "csv")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        input_path=getattr(args, "input", None),
        output_path=getattr(args, "output", None),
        method=getattr(args, "method", "act-exact"),
        beta=getattr(args, "beta", 0.0),
        eps=getattr(args, "eps", 0.1),
        format=getattr(args, "format", "csv"),
        seed=getattr(args, "seed", 0),
        count=getattr(args, "count", 256),
        N=getattr(args, "N", None),
        which=getattr(args, "which", None),
        verify=getattr(args, "verify", False),
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](cfg)
    except (UsageError, InputError) as exc:
        print(f"actdct: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except nt.NotInvertible as exc:
        print(f"actdct: error: {exc}", file=sys.stderr)
        return EXIT_MATH
    except ValueError as exc:
        print(f"actdct: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
