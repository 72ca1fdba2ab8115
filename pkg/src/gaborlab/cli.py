"""
Command-line front end.

Exit codes: 0 success (claims hold), 1 usage error, 2 hypothesis or parity
violation, 3 numerical-diagnostic failure.  Single runs print JSON, sweeps
print CSV; floats in CSV carry 12 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import framebounds as fb
from . import lattice as lt
from . import symplectic as sp
from . import windows as wn
from ._parse import parse_number

EXIT_OK, EXIT_USAGE, EXIT_HYPOTHESIS, EXIT_NUMERIC = 0, 1, 2, 3
CERT_TOL = 1e-8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    window: str = "gauss:gamma=1"
    lattice: str = "sq:delta=2"
    N: int = 2048
    h: float = 1 / 64
    K: int = 20
    grid_n: int | None = None
    seed: int = 0
    out: str | None = None

    @property
    def grid(self) -> wn.TimeGrid:
        return wn.TimeGrid(self.N, self.h)

    def load_window(self) -> wn.SampledWindow:
        return wn.parse_window(self.window, self.grid)


def _g(x) -> str:
    return f"{float(x):.12g}"


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("GABORLAB_THREADS", "")))
    except ValueError:
        return os.cpu_count() or 1


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _parse_matrix(text: str) -> np.ndarray:
    vals = [parse_number(v) for v in text.split(",")]
    if len(vals) != 4:
        raise UsageError("S needs four row-major entries a,b,c,d")
    return np.reshape(vals, (2, 2))


# --- commands ---------------------------------------------------------------


def cmd_bounds(cfg: RunConfig) -> int:
    try:
        g = cfg.load_window()
        lat = lt.parse_lattice(cfg.lattice)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = fb.lattice_bounds(g, lat, K=cfg.K, grid_n=cfg.grid_n)
    report = res.to_dict()
    report["window"] = cfg.window
    report["lattice"] = cfg.lattice
    _emit(_json(report), cfg.out)
    return EXIT_NUMERIC if res.diagnostics.get("warning") else EXIT_OK


def _detect_parity(g) -> str | None:
    even, odd = wn.parity_defect(g)
    if even <= fb.PARITY_TOL:
        return "even"
    if odd <= fb.PARITY_TOL:
        return "odd"
    return None


def cmd_certify(cfg: RunConfig, which: str = "auto", tol: float = CERT_TOL) -> int:
    try:
        g = cfg.load_window()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    parity = _detect_parity(g)
    if which == "auto":
        if parity is None:
            raise fb.ParityError("window is neither even nor odd")
        which = parity
    if which == "even":
        res = {"even_critical": fb.certify_even_critical(g, cfg.K)}
    else:
        res = {"odd_critical": fb.certify_odd_critical(g, cfg.K),
               "odd_density2": fb.certify_odd_density2(g, cfg.K)}
    ok = all(v < tol for v in res.values())
    _emit(_json({"window": cfg.window, "K": cfg.K, "tolerance": tol,
                 "residuals": res, "pass": ok}), cfg.out)
    return EXIT_OK if ok else EXIT_NUMERIC


LYUNES_WINDOWS = ("hermite:n=1,gamma=1", "hermite:n=3,gamma=1", "oddbump")
LYUNES_CONTROL = "gauss:gamma=1"
LYUNES_COLUMNS = ["n", "delta", "window", "trial", "S11", "S12", "S21", "S22",
                  "A", "B", "not_frame", "expected_not_frame", "method", "error"]


def _lyunes_row(args):
    n, name, trial, S, g, expected, cfg = args
    delta = (n + 1) / n
    row = {"n": n, "delta": _g(delta), "window": name, "trial": trial,
           "S11": _g(S.matrix[0, 0]), "S12": _g(S.matrix[0, 1]),
           "S21": _g(S.matrix[1, 0]), "S22": _g(S.matrix[1, 1]),
           "expected_not_frame": str(expected).lower(), "error": ""}
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            res = fb.bounds_symplectic(g, S, delta, K=cfg.K, grid_n=cfg.grid_n)
        row.update(A=_g(res.A), B=_g(res.B), not_frame=str(res.not_frame).lower(), method=res.method)
    except (fb.HypothesisError, fb.TruncationError, np.linalg.LinAlgError) as exc:
        row.update(A="", B="", not_frame="", method="", error=type(exc).__name__ + ": " + str(exc))
    return row


def cmd_lyunes(cfg: RunConfig, n_max: int = 3, trials: int = 5, control: bool = True,
               max_norm: float | None = sp.WELL_CONDITIONED_NORM) -> int:
    """Odd windows on random lattices of density (n+1)/n, with a Gaussian control.

    Random S are drawn with spectral norm at most `max_norm` (None: no
    bound).  Without the bound some draws give lattices so eccentric that the
    Gaussian control itself has A < 1e-3 B.
    """
    if n_max < 1 or trials < 1:
        raise UsageError("n_max and trials must be >= 1")
    if max_norm is not None and max_norm < 1:
        raise UsageError("max_norm must be >= 1 (every symplectic S has norm >= 1)")
    rng = np.random.default_rng(cfg.seed)
    mats = [sp.random_symplectic(rng, max_norm=max_norm) for _ in range(trials)]
    names = list(LYUNES_WINDOWS) + ([LYUNES_CONTROL] if control else [])
    wins = {name: wn.parse_window(name, cfg.grid) for name in names}
    jobs = []
    for n in range(1, n_max + 1):
        for name in names:
            for trial, S in enumerate(mats):
                jobs.append((n, name, trial, S, wins[name], name != LYUNES_CONTROL, cfg))
    with ThreadPoolExecutor(_threads()) as ex:
        rows = list(ex.map(_lyunes_row, jobs))
    buf = io.StringIO()
    w = csv.DictWriter(buf, LYUNES_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    _emit(buf.getvalue(), cfg.out)
    ok = all(r["not_frame"] == r["expected_not_frame"] for r in rows)
    return EXIT_OK if ok else EXIT_HYPOTHESIS


SCAN_COLUMNS = ["alpha", "beta", "density", "A", "B", "not_frame", "method", "error"]


def _scan_cell(args):
    alpha, beta, g, cfg = args
    row = {"alpha": _g(alpha), "beta": _g(beta), "density": _g(1 / (alpha * beta)), "error": ""}
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            if alpha * beta > 1 + fb.INTEGER_TOL:
                res = fb.finite_section_bounds(g, lt.separable(alpha, beta))
                res = fb.FrameBounds(0.0, res.B, "density_below_1", res.diagnostics)
            else:
                res = fb.lattice_bounds(g, lt.separable(alpha, beta), K=cfg.K, grid_n=cfg.grid_n)
        row.update(A=_g(res.A), B=_g(res.B), not_frame=str(res.not_frame).lower(), method=res.method)
    except Exception as exc:  # per-cell failures are data, not fatal
        row.update(A="", B="", not_frame="", method="", error=type(exc).__name__ + ": " + str(exc))
    return row


def _range(text: str) -> tuple[float, float]:
    lo, sep, hi = text.partition(":")
    if not sep:
        v = parse_number(lo)
        return v, v
    return parse_number(lo), parse_number(hi)


def cmd_scan(cfg: RunConfig, alpha_range: str, beta_range: str, steps: int) -> int:
    try:
        g = cfg.load_window()
        a0, a1 = _range(alpha_range)
        b0, b1 = _range(beta_range)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if steps < 1 or min(a0, a1, b0, b1) <= 0:
        raise UsageError("ranges must be positive and steps >= 1")
    alphas = np.linspace(a0, a1, steps) if steps > 1 and a1 != a0 else np.array([a0])
    betas = np.linspace(b0, b1, steps) if steps > 1 and b1 != b0 else np.array([b0])
    jobs = [(float(a), float(b), g, cfg) for a in alphas for b in betas]
    with ThreadPoolExecutor(_threads()) as ex:
        rows = list(ex.map(_scan_cell, jobs))
    buf = io.StringIO()
    w = csv.DictWriter(buf, SCAN_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    _emit(buf.getvalue(), cfg.out)
    return EXIT_OK


def cmd_deform(cfg: RunConfig, S_text: str, delta: float, radius: float = 20.0, n_test: int = 300) -> int:
    """Bounds on delta^{-1/2} S Z^2 by reduction and by a direct route."""
    try:
        g = cfg.load_window()
        M = _parse_matrix(S_text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    S = sp.SymplecticMatrix(M)  # NotSymplecticError -> exit 2
    lat = lt.from_symplectic(S, delta)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        red = fb.bounds_symplectic(g, S, delta, K=cfg.K, grid_n=cfg.grid_n)
        B = lat.basis
        if abs(B[0, 1]) < 1e-15 and abs(B[1, 0]) < 1e-15 and B[0, 0] > 0 and B[1, 1] > 0:
            direct = fb.lattice_bounds(g, lat, K=cfg.K, grid_n=cfg.grid_n)
        else:
            direct = fb.finite_section_bounds(g, lat, radius, n_test)
    gap = max(abs(red.A - direct.A) / max(red.A, direct.A, 1e-300),
              abs(red.B - direct.B) / max(red.B, direct.B, 1e-300))
    _emit(_json({"window": cfg.window, "delta": delta, "S": S.matrix.tolist(),
                 "reduction": red.to_dict(), "direct": direct.to_dict(),
                 "relative_gap": gap}), cfg.out)
    return EXIT_OK


def cmd_factor(S_text: str, out: str | None = None) -> int:
    try:
        M = _parse_matrix(S_text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    S = sp.SymplecticMatrix(M)
    chain = sp.decompose(S)
    err = float(np.max(np.abs(chain.product().matrix - S.matrix)))
    _emit(_json({"S": S.matrix.tolist(), "free": S.is_free(), "steps": chain.describe(),
                 "reconstruction_error": err}), out)
    return EXIT_OK


# --- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--window", default="gauss:gamma=1",
                        help="gauss:gamma=v | hermite:n=k,gamma=v | oddbump | file:path")
    common.add_argument("--K", type=int, default=20, help="Janssen truncation order")
    common.add_argument("--grid-n", type=int, default=None, help="symbol grid per axis")
    common.add_argument("--N", type=int, default=2048, help="time samples (power of two)")
    common.add_argument("--h", type=float, default=1 / 64, help="time spacing")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--json", action="store_true", help="JSON output (default for single runs)")

    p = _Parser(prog="gaborlab", description="Gabor frame bounds on symplectic lattices")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("bounds", parents=[common], help="frame bounds of one system")
    b.add_argument("--lattice", required=True,
                   help="sq:delta=v | sep:alpha=a,beta=b | symp:delta=v,S=a,b,c,d")

    c = sub.add_parser("certify", parents=[common], help="vanishing-bound certificates")
    c.add_argument("--certificate", choices=("auto", "even", "odd"), default="auto")
    c.add_argument("--tol", type=float, default=CERT_TOL)

    ly = sub.add_parser("lyunes", parents=[common], help="odd windows at density (n+1)/n")
    ly.add_argument("--n-max", type=int, default=3)
    ly.add_argument("--trials", type=int, default=5)
    ly.add_argument("--no-control", action="store_true", help="skip the Gaussian control rows")
    ly.add_argument("--max-norm", type=float, default=sp.WELL_CONDITIONED_NORM,
                    help="spectral-norm bound on random S; 0 disables it")

    s = sub.add_parser("scan", parents=[common], help="separable frame-set heat map")
    s.add_argument("--alpha", required=True, help="lo:hi")
    s.add_argument("--beta", required=True, help="lo:hi")
    s.add_argument("--steps", type=int, default=8)

    d = sub.add_parser("deform", parents=[common], help="deformation invariance check")
    d.add_argument("--S", required=True, help="a,b,c,d row-major")
    d.add_argument("--delta", type=parse_number, default=2.0)
    d.add_argument("--radius", type=float, default=20.0)
    d.add_argument("--n-test", type=int, default=300)

    f = sub.add_parser("factor", help="generator chain of a symplectic matrix")
    f.add_argument("--S", required=True, help="a,b,c,d row-major")
    f.add_argument("--out", default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "factor":
            return cmd_factor(args.S, args.out)
        cfg = RunConfig(window=args.window, lattice=getattr(args, "lattice", ""), N=args.N,
                        h=args.h, K=args.K, grid_n=args.grid_n, seed=args.seed, out=args.out)
        try:
            cfg.grid
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if args.command == "bounds":
            return cmd_bounds(cfg)
        if args.command == "certify":
            return cmd_certify(cfg, args.certificate, args.tol)
        if args.command == "lyunes":
            return cmd_lyunes(cfg, args.n_max, args.trials, not args.no_control,
                              args.max_norm or None)
        if args.command == "scan":
            return cmd_scan(cfg, args.alpha, args.beta, args.steps)
        if args.command == "deform":
            return cmd_deform(cfg, args.S, args.delta, args.radius, args.n_test)
    except UsageError as exc:
        print(f"gaborlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (fb.HypothesisError, sp.NotSymplecticError) as exc:
        print(f"gaborlab: hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except fb.TruncationError as exc:
        print(f"gaborlab: numerical diagnostic failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
