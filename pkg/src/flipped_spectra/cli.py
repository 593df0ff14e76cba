"""Command-line interface: ``flipped-spectra {spectrum,order,expand,verify}``.

Options may also come from a ``key = value`` config file (``--config``);
command-line flags take precedence. Exit codes: 0 success, 1 numerical
failure (or a failed verification), 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import warnings

import numpy as np

from . import io, suites
from .catalog import GRAM_SOURCES, get_symbol, names
from .eig import singular_values, sym_eigvals
from .exceptions import (
    DegenerateWarning,
    FlippedSpectraError,
    NoRoot,
    OutOfRange,
    SizeLimitExceeded,
    SymbolParseError,
    UnsupportedKind,
)
from .grid import Grid
from .matrices import TauParams, gram, hankel, toeplitz
from .matrixless import STRATEGIES, extract_expansion, predict_eigenvalues
from .ordering import HomotopyConfig, crossing_point, homotopy_order
from .spectral import cantoni_butler_order, perfect_grid, sign_match, symbol_sort_permutation
from .symbols import absolute, modulus_squared_symbol

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def read_config(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    for num, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise UsageError(f"{path}:{num}: expected key = value")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flipped-spectra", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="key = value file with default options")
        sp.add_argument("--symbol", help=f"named symbol ({', '.join(names())}) or text form")
        sp.add_argument("--out", help="output CSV path (default: standard output)")

    sp = sub.add_parser("spectrum", help="paired spectra of T_n(f) and H_n(f)")
    common(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--singular", action="store_true", default=None,
                    help="pair singular values of T_n(f) with lambda(H_n(f))")
    sp.add_argument("--order", choices=("homotopy", "symbol"),
                    help="ordering of singular values (default homotopy)")
    sp.add_argument("--ref", help="tau reference eps,phi for the homotopy (default 0,0)")
    sp.add_argument("--steps", type=int)

    sp = sub.add_parser("order", help="homotopy ordering of the eigenvalues")
    common(sp)
    sp.add_argument("--n", type=int)
    sp.add_argument("--ref", help="tau reference eps,phi (default 0,0)")
    sp.add_argument("--steps", type=int, help="number of homotopy steps (default 100)")
    sp.add_argument("--window", type=int, help="locality window (default n // 4)")
    sp.add_argument("--gram", action="store_true", default=None,
                    help="order T_n(f)^T T_n(f) against |f|^2 (implied for non-even f)")
    sp.add_argument("--trace", help="write the homotopy trace CSV here")

    sp = sub.add_parser("expand", help="matrix-less expansion and prediction")
    common(sp)
    sp.add_argument("--n0", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--k", type=int)
    sp.add_argument("--strategy", choices=STRATEGIES)
    sp.add_argument("--boundary", choices=("zero", "extrapolate"))
    sp.add_argument("--ref", help="tau reference for --strategy homotopy")
    sp.add_argument("--predict", type=int, help="size n to predict")
    sp.add_argument("--check", action="store_true", default=None,
                    help="compare the prediction with a direct eigensolve")
    sp.add_argument("--allow-ambiguous", action="store_true", default=None,
                    help="skip the sign check of permutation-based orderings")
    sp.add_argument("--model-out", help="write the expansion model CSV here")
    sp.add_argument("--model", help="load an expansion model CSV instead of extracting")

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", help=f"one of {', '.join(suites.SUITES)} or all")
    sp.add_argument("--config")
    sp.add_argument("--n", type=int, nargs="+")
    sp.add_argument("--seed", type=int)
    return p


DEFAULTS = {
    "spectrum": {"singular": False, "order": "homotopy", "ref": "0,0", "steps": 100},
    "order": {"ref": "0,0", "steps": 100, "window": None, "gram": False, "trace": None},
    "expand": {"n0": 50, "q": 3, "k": 2, "strategy": "auto", "boundary": "zero", "ref": "0,0",
               "predict": None, "check": False, "allow_ambiguous": False, "model_out": None,
               "model": None},
    "verify": {},
}
INT_KEYS = {"n", "steps", "window", "n0", "q", "k", "predict", "seed"}
BOOL_KEYS = {"singular", "gram", "check", "allow_ambiguous"}


def _merge(args) -> argparse.Namespace:
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    merged = dict(DEFAULTS[args.command])
    for key, value in cfg.items():
        if key in INT_KEYS:
            value = int(value)
        elif key in BOOL_KEYS:
            value = value.lower() in ("1", "true", "yes", "on")
        merged[key] = value
    for key, value in vars(args).items():
        if value is not None:
            merged[key] = value
    merged.setdefault("out", "-")
    return argparse.Namespace(**merged)


def _need(ns, *keys):
    for key in keys:
        if getattr(ns, key, None) is None:
            raise UsageError(f"missing required option --{key.replace('_', '-')}")


def _note(msg):
    print(msg, file=sys.stderr)


def cmd_spectrum(ns) -> int:
    _need(ns, "symbol", "n")
    f = get_symbol(ns.symbol)
    n = ns.n
    if not ns.singular:
        if not f.is_even():
            raise UsageError("symbol is not even, so T_n(f) is not symmetric; use --singular")
        report = cantoni_butler_order(toeplitz(f, n))
        try:
            order = symbol_sort_permutation(f, Grid.uniform(n))
            ranks = np.argsort(np.argsort(report.lambda_T, kind="stable"), kind="stable")
            starts = Grid.uniform(n).points[order.pi[ranks] - 1]
            grid = perfect_grid(f, report.lambda_T, starts)
            report = report.with_xi(grid.meta["xi"])
        except (OutOfRange, NoRoot) as exc:
            _note(f"note: perfect grid unavailable ({exc})")
    else:
        A = toeplitz(f, n)
        sigma = singular_values(A)
        lam_h = sym_eigvals(hankel(f, n))
        if ns.order == "symbol":
            order = symbol_sort_permutation(absolute(f), Grid.uniform(n))
        else:
            cfg = HomotopyConfig(ns.steps, TauParams.parse(ns.ref))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", DegenerateWarning)
                order = homotopy_order(gram(A), modulus_squared_symbol(f), cfg).permutation
            order = type(order)(order.pi, order.pi_inverse, Grid.uniform(n))
        report = sign_match(sigma, lam_h, order)
        if report.mismatches:
            _note(f"sign mismatches at rows {report.mismatches}")
    io.atomic_write(ns.out, io.report_to_csv(report))
    return EXIT_OK


def cmd_order(ns) -> int:
    _need(ns, "symbol", "n")
    n = ns.n
    key = str(ns.symbol).strip()
    if key in GRAM_SOURCES:
        source = GRAM_SOURCES[key]()
        use_gram = True
    else:
        source = get_symbol(key)
        use_gram = bool(ns.gram) or not source.is_even()
    if use_gram:
        target = gram(toeplitz(source, n))
        f = modulus_squared_symbol(source)
    else:
        target = toeplitz(source, n)
        f = source
    cfg = HomotopyConfig(ns.steps, TauParams.parse(ns.ref), ns.window)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DegenerateWarning)
        trace = homotopy_order(target, f, cfg)
    for w in caught:
        _note(f"warning: {w.message}")
    if ns.trace:
        io.write_trace(ns.trace, trace)
    perm = trace.permutation
    ascending = np.sort(trace.final_values)
    rows = [[j + 1, int(perm.pi[j]), int(perm.pi_inverse[j]), io.fmt(ascending[perm.pi_inverse[j] - 1])]
            for j in range(n)]
    comments = [f"crossing step={k} curves={i},{j} gamma={io.fmt(trace.gammas[k])}"
                for k, i, j in trace.crossings]
    for _, i, j in trace.crossings[:20]:
        pt = crossing_point(trace, i, j)
        if pt:
            comments.append(f"crossing_point curves={i},{j} gamma={pt[0]:.6f} value={pt[1]:.6f}")
    text = io.rows_to_text(["j", "pi", "pi_inverse", "lambda"], rows, comments)
    io.atomic_write(ns.out, text)
    return EXIT_OK


def cmd_expand(ns) -> int:
    _need(ns, "symbol")
    f = get_symbol(ns.symbol)
    if ns.model:
        model = io.read_model(ns.model)
    else:
        model = extract_expansion(
            f, ns.n0, ns.q, ns.k, strategy=ns.strategy, boundary=ns.boundary,
            reference=TauParams.parse(ns.ref), check_signs=not ns.allow_ambiguous,
        )
    if ns.model_out:
        io.write_model(ns.model_out, model)
    lines = [f"strategy={model.strategy}", f"k={model.k}", f"n0={model.n0}",
             "sizes=" + " ".join(map(str, model.sizes)),
             f"max_abs_c={float(np.max(np.abs(model.samples), initial=0.0)):.6e}"]
    if ns.predict:
        n = ns.predict
        pred = predict_eigenvalues(model, f, n)
        theta = np.arange(1, n + 1) * math.pi / (n + 1)
        header = ["j", "theta", "lambda_pred"]
        cols = [np.arange(1, n + 1), theta, pred]
        if ns.check:
            # Compare as multisets: the prediction is in grid order.
            exact = np.sort(sym_eigvals(toeplitz(f, n)))
            ranks = np.argsort(np.argsort(pred, kind="stable"), kind="stable")
            aligned = exact[ranks]
            err = np.abs(pred - aligned)
            cols += [aligned, err]
            header += ["lambda_exact", "abs_error"]
            lines.append(f"n={n}")
            lines.append(f"max_abs_error={float(err.max()):.6e}")
            lines.append(f"h_cubed={(1.0 / (n + 1)) ** 3:.6e}")
        rows = [[int(c[0])] + [io.fmt(x) for x in c[1:]] for c in zip(*cols)]
        if ns.out != "-":
            io.atomic_write(ns.out, io.rows_to_text(header, rows))
    print("\n".join(lines))
    return EXIT_OK


def cmd_verify(ns) -> int:
    opts = {}
    if getattr(ns, "n", None):
        n = ns.n if isinstance(ns.n, list) else [int(x) for x in str(ns.n).split(",")]
        opts["n"] = tuple(n)
    if getattr(ns, "seed", None) is not None:
        opts["seed"] = ns.seed
    try:
        checks = suites.run_suite(ns.suite, **opts)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    for c in checks:
        print(c.line())
    passed = all(c.passed for c in checks)
    print(f"{'PASS' if passed else 'FAIL'} suite {ns.suite}: "
          f"{sum(c.passed for c in checks)}/{len(checks)} checks")
    return EXIT_OK if passed else EXIT_NUMERIC


COMMANDS = {"spectrum": cmd_spectrum, "order": cmd_order, "expand": cmd_expand,
            "verify": cmd_verify}


def _limit_threads():
    value = os.environ.get("FLIPPED_SPECTRA_THREADS")
    if not value:
        return None
    try:
        from threadpoolctl import threadpool_limits
    except ImportError:  # pragma: no cover - shipped with scikit-learn
        return None
    return threadpool_limits(int(value))


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    limiter = _limit_threads()
    try:
        ns = _merge(args)
        return COMMANDS[args.command](ns)
    except (UsageError, SymbolParseError, UnsupportedKind, SizeLimitExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FlippedSpectraError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if limiter is not None:
            limiter.restore_original_limits()


if __name__ == "__main__":
    sys.exit(main())
