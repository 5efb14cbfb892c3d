"""Command-line front end: verification report, dispersion and Casimir
tables, expansion coefficients, and string-ansatz fits.

Output is CSV (comma separated, mandatory header, LF line endings) or JSON
({schema: 1, meta, rows, checks, ...}).  Floats are written in shortest
round-trip form, and no timestamps or other run-varying data are emitted, so
identical configurations produce byte-identical files.

Exit status: 0 all checks passed, 1 a numerical check failed, 2 usage or
configuration error.  Flags override values from an optional TOML config
file (--config); FUZZY_CASIMIR_THREADS caps internal parallelism.
"""

import argparse
import json
import math
import platform
import sys
from dataclasses import dataclass

import numpy as np
import scipy

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from . import __version__
from . import fock_engine as fe
from .casimir import (
    CasimirConfig,
    ModePolicy,
    Summation,
    energy_closed_form,
    energy_commutative,
    energy_direct_sum,
    energy_subtracted,
    energy_taylor,
    force,
    force_casimir,
    taylor_remainder,
    taylor_terms,
)
from .luscher_fit import CurveSample, compare_coefficients, fit_luscher, sample_curve

EXIT_OK = 0
EXIT_NUMERICAL = 1
EXIT_USAGE = 2

GAMMA_EXIT_RTOL = 1e-4

_TERM_SYMBOLS = (
    "L/(pi*lambda^2)",
    "1/(2*lambda)",
    "-pi/(12*L)",
    "-pi^3*lambda^2/(720*L^3)",
)


@dataclass
class RunConfig:
    subcommand: str
    lam: float = 1.0
    L: float | None = None
    L_start: float | None = None
    L_stop: float | None = None
    L_count: int | None = None
    q_start: float | None = None
    q_stop: float | None = None
    q_count: int | None = None
    n_max: int = 8
    format: str = "csv"
    out: str | None = None
    seed: int = 0
    per_polarization: bool = False
    mode_policy: str = "floor"
    summation: str = "compensated"
    samples: str | None = None
    dump_operators: str | None = None


def _fmt(x):
    """Shortest round-trip decimal for a float."""
    return repr(float(x))


def _meta(cfg, **extra):
    meta = {
        "subcommand": cfg.subcommand,
        "lambda": float(cfg.lam),
        "versions": {
            "fuzzy-casimir": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version(),
        },
    }
    meta.update(extra)
    return meta


def _json_text(obj):
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fuzzy-casimir",
        description="Operator-algebra verification, dispersion tables, Casimir "
        "energies, expansion coefficients, and string-ansatz fits for the "
        "noncommutative coordinate model.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--lambda", dest="lam", type=float, default=None,
                       help="noncommutative length scale (default 1.0)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--config", default=None, help="TOML config file; flags override it")
        p.add_argument("--seed", type=int, default=None, help="seed for randomized checks")

    p = sub.add_parser("verify", help="run all operator-identity checks (JSON report)")
    common(p)
    p.add_argument("--n-max", dest="n_max", type=int, default=None,
                   help="Fock truncation, total occupation cutoff (default 8)")
    p.add_argument("--dump-operators", dest="dump_operators", default=None,
                   help="also write operator matrices as (row,col,re,im) JSON")

    p = sub.add_parser("dispersion", help="table of omega(q) vs the commutative line")
    common(p)
    p.add_argument("--q-start", dest="q_start", type=float, default=None)
    p.add_argument("--q-stop", dest="q_stop", type=float, default=None)
    p.add_argument("--q-count", dest="q_count", type=int, default=None)

    p = sub.add_parser("casimir", help="energy and force table over an L grid")
    common(p)
    p.add_argument("--L", dest="L", type=float, default=None, help="single segment length")
    p.add_argument("--L-start", dest="L_start", type=float, default=None)
    p.add_argument("--L-stop", dest="L_stop", type=float, default=None)
    p.add_argument("--L-count", dest="L_count", type=int, default=None)
    p.add_argument("--mode-policy", dest="mode_policy",
                   choices=("floor", "require-integer"), default=None)
    p.add_argument("--summation", choices=("naive", "compensated"), default=None)
    p.add_argument("--per-polarization", dest="per_polarization",
                   action="store_const", const=True, default=None,
                   help="halve energies and forces (one polarization)")

    p = sub.add_parser("expand", help="expansion coefficients around lambda = 0")
    common(p)
    p.add_argument("--L", dest="L", type=float, default=None, help="segment length (default 1.0)")

    p = sub.add_parser("fit", help="fit E(L) samples to T*L + C - gamma/L - delta/L^3")
    common(p)
    p.add_argument("--L-start", dest="L_start", type=float, default=None)
    p.add_argument("--L-stop", dest="L_stop", type=float, default=None)
    p.add_argument("--L-count", dest="L_count", type=int, default=None)
    p.add_argument("--samples", default=None,
                   help="CSV (L,E[,weight]) or a casimir/fit JSON file to fit instead "
                        "of sampling the closed form")
    return parser


def _load_config_file(path):
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"config file {path} must contain a table")
    return data


def resolve_config(args):
    """Merge precedence: flag > config file ([subcommand] table > flat key) > default."""
    file_cfg = {}
    if args.config is not None:
        file_cfg = _load_config_file(args.config)
    section = file_cfg.get(args.subcommand, {})
    if not isinstance(section, dict):
        raise ValueError(f"[{args.subcommand}] in the config file must be a table")

    def pick(key, default):
        flag = getattr(args, key, None)
        if flag is not None:
            return flag
        for source in (section, file_cfg):
            if key in source:
                return source[key]
        # the scale is spelled "lambda" in TOML, "lam" internally
        if key == "lam":
            for source in (section, file_cfg):
                if "lambda" in source:
                    return source["lambda"]
        return default

    cfg = RunConfig(
        subcommand=args.subcommand,
        lam=float(pick("lam", 1.0)),
        L=pick("L", None),
        L_start=pick("L_start", None),
        L_stop=pick("L_stop", None),
        L_count=pick("L_count", None),
        q_start=pick("q_start", None),
        q_stop=pick("q_stop", None),
        q_count=pick("q_count", None),
        n_max=int(pick("n_max", 8)),
        format=str(pick("format", "json" if args.subcommand in ("verify", "expand", "fit") else "csv")),
        out=pick("out", None),
        seed=int(pick("seed", 0)),
        per_polarization=bool(pick("per_polarization", False)),
        mode_policy=str(pick("mode_policy", "floor")),
        summation=str(pick("summation", "compensated")),
        samples=pick("samples", None),
        dump_operators=pick("dump_operators", None),
    )
    if not (cfg.lam > 0 and math.isfinite(cfg.lam)):
        raise ValueError(f"lambda must be positive and finite, got {cfg.lam}")
    if cfg.format not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {cfg.format!r}")
    ModePolicy(cfg.mode_policy)
    Summation(cfg.summation)
    return cfg


def _check(name, residual, tolerance):
    return {
        "name": name,
        "max_residual": float(residual),
        "tolerance": tolerance,
        "passed": bool(residual <= tolerance),
    }


def cmd_verify(cfg):
    if cfg.n_max < 2:
        raise ValueError("verify needs --n-max >= 2 (squared operators have no "
                         "interior block below that)")
    space = fe.build_space(cfg.n_max)
    lam = cfg.lam
    ops = fe.nc_operators(space, lam)
    checks = []

    checks.append(_check("ladder_commutation", fe.ladder_commutation_residual(space), 1e-14))
    checks.append(_check("coordinate_self_adjoint", fe.self_adjoint_residual(space, lam), 1e-14))
    checks.append(_check("coordinate_commutation", fe.check_commutators(space, lam), 1e-12))

    qs = (np.arange(1, 51) / 50.0) * (math.pi / lam)
    waves = [fe.plane_wave(space, q, lam) for q in qs]
    checks.append(_check(
        "plane_wave_v3",
        max(fe.eigen_residual(ops.V[2], w, math.sin(lam * q) / lam) for q, w in zip(qs, waves)),
        1e-12,
    ))
    checks.append(_check(
        "plane_wave_v4",
        max(fe.eigen_residual(ops.V4, w, math.cos(lam * q) / lam) for q, w in zip(qs, waves)),
        1e-12,
    ))
    peak = fe.plane_wave(space, math.pi / (2.0 * lam), lam)
    checks.append(_check(
        "dispersion_peak_at_inverse_lambda",
        fe.eigen_residual(ops.V[2], peak, 1.0 / lam),
        1e-12,
    ))
    checks.append(_check(
        "cutoff_identity_plane_waves",
        max(fe.check_cutoff_identity(w) for w in waves),
        1e-11,
    ))
    checks.append(_check(
        "cutoff_identity_random",
        max(fe.check_cutoff_identity(fe.random_waveop(space, lam, cfg.seed + k))
            for k in range(10)),
        1e-11,
    ))
    rng = np.random.default_rng(cfg.seed + 1000)
    lin_worst = 0.0
    for k in range(3):
        p1 = fe.random_waveop(space, lam, cfg.seed + 100 + k)
        p2 = fe.random_waveop(space, lam, cfg.seed + 200 + k)
        al, be = rng.standard_normal(2) + 1.0j * rng.standard_normal(2)
        for op in (*ops.V, ops.V4, ops.H0, *ops.X):
            lin_worst = max(lin_worst, fe.linearity_residual(op, p1, p2, al, be))
    checks.append(_check("superop_linearity", lin_worst, 1e-13))

    vac = np.zeros((space.dim, space.dim), dtype=complex)
    vac[0, 0] = 1.0
    norm = fe.trace_norm(fe.WaveOp(space=space, lam=lam, psi=vac))
    expected = 4.0 * math.pi * lam**3
    checks.append(_check("trace_norm_vacuum", abs(norm - expected) / expected, 1e-12))

    if cfg.dump_operators is not None:
        with open(cfg.dump_operators, "w") as fh:
            fh.write(_json_text(fe.dump_operators(space, lam)))

    report = {
        "schema": 1,
        "meta": _meta(cfg, n_max=cfg.n_max, seed=cfg.seed),
        "rows": [],
        "checks": checks,
    }
    code = EXIT_OK if all(c["passed"] for c in checks) else EXIT_NUMERICAL
    return code, _json_text(report)


def cmd_dispersion(cfg):
    count = cfg.q_count if cfg.q_count is not None else 100
    if count < 1:
        raise ValueError(f"--q-count must be >= 1, got {count}")
    q_hi = math.pi / cfg.lam
    start = cfg.q_start if cfg.q_start is not None else q_hi / count
    stop = cfg.q_stop if cfg.q_stop is not None else q_hi
    grid = np.linspace(start, stop, count)

    rows, skipped = [], []
    for q in grid:
        if not (0.0 < q <= q_hi * (1.0 + 1e-12)):
            skipped.append({"name": "row_skipped", "q": float(q),
                            "reason": "q outside (0, pi/lambda]", "passed": True})
            continue
        q = float(q)
        omega = math.sin(cfg.lam * q) / cfg.lam
        rows.append({"q": q, "omega_nc": omega, "omega_comm": q, "ratio": omega / q})

    if cfg.format == "csv":
        for s in skipped:
            print(f"warning: skipped q={s['q']}: {s['reason']}", file=sys.stderr)
        header = ("q", "omega_nc", "omega_comm", "ratio")
        return EXIT_OK, _csv_text(header, [tuple(r[k] for k in header) for r in rows])
    report = {"schema": 1, "meta": _meta(cfg), "rows": rows, "checks": skipped}
    return EXIT_OK, _json_text(report)


def _casimir_grid(cfg):
    if cfg.L is not None:
        return [float(cfg.L)]
    start = cfg.L_start if cfg.L_start is not None else 2.0 * cfg.lam
    stop = cfg.L_stop if cfg.L_stop is not None else 20.0 * cfg.lam
    count = cfg.L_count if cfg.L_count is not None else 10
    if count < 1:
        raise ValueError(f"--L-count must be >= 1, got {count}")
    return [float(v) for v in np.linspace(start, stop, count)]

_CASIMIR_HEADER = ("L", "E_direct", "E_closed", "E_taylor3", "E_commutative",
                   "E_subtracted", "force_full", "force_casimir")


def cmd_casimir(cfg):
    scale = 0.5 if cfg.per_polarization else 1.0
    rows, skipped = [], []
    max_rel = 0.0
    all_integer = True
    for L in _casimir_grid(cfg):
        if L < 2.0 * cfg.lam:
            skipped.append({"name": "row_skipped", "L": L,
                            "reason": "below half minimum wavelength", "passed": True})
            continue
        ccfg = CasimirConfig(lam=cfg.lam, L=L, mode_policy=cfg.mode_policy,
                             summation=cfg.summation)
        direct = energy_direct_sum(ccfg)
        closed = energy_closed_form(ccfg)
        ratio = L / (2.0 * cfg.lam)
        if abs(ratio - round(ratio)) > 1e-9 * max(1.0, ratio):
            all_integer = False
        max_rel = max(max_rel, abs(direct.value - closed.value) / abs(closed.value))
        rows.append({
            "L": L,
            "E_direct": scale * direct.value,
            "E_closed": scale * closed.value,
            "E_taylor3": scale * energy_taylor(L, cfg.lam, 3).value,
            "E_commutative": scale * energy_commutative(L).value,
            "E_subtracted": scale * energy_subtracted(L, cfg.lam),
            "force_full": scale * force(L, cfg.lam),
            "force_casimir": scale * force_casimir(L, cfg.lam),
        })
    checks = list(skipped)
    code = EXIT_OK
    if rows and all_integer:
        entry = _check("direct_matches_closed_relative", max_rel, 1e-12)
        checks.append(entry)
        if not entry["passed"]:
            code = EXIT_NUMERICAL

    if cfg.format == "csv":
        for s in skipped:
            print(f"warning: skipped L={s['L']}: {s['reason']}", file=sys.stderr)
        return code, _csv_text(
            _CASIMIR_HEADER, [tuple(r[k] for k in _CASIMIR_HEADER) for r in rows]
        )
    report = {"schema": 1,
              "meta": _meta(cfg, mode_policy=cfg.mode_policy, summation=cfg.summation,
                            per_polarization=cfg.per_polarization),
              "rows": rows, "checks": checks}
    return code, _json_text(report)


def cmd_expand(cfg):
    L = float(cfg.L) if cfg.L is not None else 1.0
    terms = taylor_terms(L, cfg.lam)
    rows = [
        {"term": f"term{k}", "symbol": _TERM_SYMBOLS[k], "value": terms[k]}
        for k in range(4)
    ]
    checks = []
    # the terms exist for any L > 0, but the closed form (hence the empirical
    # remainder) only below the mode-sum edge L >= 2 lambda
    if L >= 2.0 * cfg.lam:
        remainder = abs(taylor_remainder(L, cfg.lam))
        rows.append({"term": "remainder", "symbol": "|closed - taylor3|", "value": remainder})
    else:
        checks.append({"name": "remainder_skipped",
                       "reason": "below half minimum wavelength", "passed": True})
        if cfg.format == "csv":
            print(f"warning: remainder skipped, L={L} < 2*lambda={2 * cfg.lam}",
                  file=sys.stderr)
    if cfg.format == "csv":
        return EXIT_OK, _csv_text(
            ("term", "symbol", "value"),
            [(r["term"], r["symbol"], r["value"]) for r in rows],
        )
    report = {"schema": 1, "meta": _meta(cfg, L=L), "rows": rows, "checks": checks}
    return EXIT_OK, _json_text(report)


def _load_samples(path):
    with open(path, "r") as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        data = json.loads(text)
        if data.get("schema") != 1:
            raise ValueError(f"unsupported schema {data.get('schema')!r} in {path}")
        samples = []
        for row in data.get("rows", []):
            if "E" in row:
                e = row["E"]
            elif "E_closed" in row:
                e = row["E_closed"]
            else:
                raise ValueError(f"rows in {path} carry neither E nor E_closed")
            samples.append(CurveSample(L=float(row["L"]), E=float(e),
                                       weight=float(row.get("weight", 1.0))))
        return samples
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"no rows in {path}")
    header = [h.strip() for h in lines[0].split(",")]
    try:
        l_col = header.index("L")
        e_col = header.index("E") if "E" in header else header.index("E_closed")
    except ValueError:
        raise ValueError(f"{path} needs columns L and E (or E_closed)") from None
    w_col = header.index("weight") if "weight" in header else None
    samples = []
    for ln in lines[1:]:
        parts = ln.split(",")
        samples.append(CurveSample(
            L=float(parts[l_col]), E=float(parts[e_col]),
            weight=float(parts[w_col]) if w_col is not None else 1.0,
        ))
    return samples


def cmd_fit(cfg):
    if cfg.samples is not None:
        samples = _load_samples(cfg.samples)
    else:
        start = cfg.L_start if cfg.L_start is not None else 100.0 * cfg.lam
        stop = cfg.L_stop if cfg.L_stop is not None else 1000.0 * cfg.lam
        count = cfg.L_count if cfg.L_count is not None else 50
        if count < 4:
            raise ValueError(f"the delta fit needs at least 4 grid points, got {count}")
        samples = sample_curve(cfg.lam, np.linspace(start, stop, count))
    if len(samples) < 4:
        raise ValueError(f"the delta fit needs at least 4 samples, got {len(samples)}")

    try:
        fit = fit_luscher(samples, include_delta=True)
    except ValueError as exc:
        print(f"fit failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL, ""
    report = compare_coefficients(fit, cfg.lam)

    rows = []
    for s in sorted(samples, key=lambda s: s.L):
        e_fit = fit.T * s.L + fit.C - fit.gamma / s.L - fit.delta / s.L**3
        rows.append({"L": s.L, "E": s.E, "E_fit": e_fit, "residual": s.E - e_fit})
    gamma_err = report.relative_errors["gamma"]
    gamma_check = {
        "name": "gamma_matches_pi_over_12",
        "relative_error": gamma_err,
        "tolerance": GAMMA_EXIT_RTOL,
        "passed": bool(gamma_err <= GAMMA_EXIT_RTOL),
    }
    code = EXIT_OK if gamma_check["passed"] else EXIT_NUMERICAL

    if cfg.format == "csv":
        header = ("L", "E", "E_fit", "residual")
        return code, _csv_text(header, [tuple(r[k] for k in header) for r in rows])
    payload = {
        "schema": 1,
        "meta": _meta(cfg, n_samples=len(samples)),
        "rows": rows,
        "checks": [gamma_check],
        "fit": {
            "T": fit.T, "C": fit.C, "gamma": fit.gamma, "delta": fit.delta,
            "residual_rms": fit.residual_rms,
            "condition_estimate": fit.condition_estimate,
        },
        "theory": {
            "T": report.theory_T, "C": report.theory_C, "gamma": report.theory_gamma,
            "delta_720": report.theory_delta_720, "delta_288": report.theory_delta_288,
        },
        "relative_errors": report.relative_errors,
        "delta_verdict": report.delta_verdict,
    }
    return code, _json_text(payload)


_DISPATCH = {
    "verify": cmd_verify,
    "dispersion": cmd_dispersion,
    "casimir": cmd_casimir,
    "expand": cmd_expand,
    "fit": cmd_fit,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        code, text = _DISPATCH[cfg.subcommand](cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out is not None:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
