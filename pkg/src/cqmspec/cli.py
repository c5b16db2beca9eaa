"""Command-line front end.

Usage:
    cqmspec <classify|propagator|spectrum|eigfn|green|fourier|verify|oracle>
            --config <file.json> [--out <dir>] [--subset <ids>]

The JSON config carries all physics and numerics; outputs are CSV (RFC 4180)
and/or JSON tables plus rendered figures, with a manifest recording content
checksums for regression diffing.  Exit codes: 0 success, 1 check failure,
2 config error, 3 numeric non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from . import oracle as orc
from . import plotting
from . import transforms as tr
from .config import (
    RunConfig,
    load_config,
    parse_values,
    _expect_mapping,
    _get_int,
    _get_number,
    _reject_unknown,
)
from .errors import ConfigError, ConvergenceError, CqmspecError, NonConvergence
from .params import ClassTag, classify, dimensional_params, reduce_to_analog
from .propagators import PropagatorQuery, Schedule, radial_propagator
from .spectra import (
    GreenKind,
    elliptic_eigenfunction,
    elliptic_levels,
    green_elliptic,
    green_hyperbolic,
    green_parabolic,
    hyperbolic_eigenfunction,
    parabolic_eigenfunction,
)

COMMANDS = (
    "classify",
    "propagator",
    "spectrum",
    "eigfn",
    "green",
    "fourier",
    "verify",
    "oracle",
)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _pyval(value):
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def _cell(value):
    value = _pyval(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_table(outdir: Path, name: str, columns, rows, formats) -> list[str]:
    """Write one table in the requested formats; returns written file names."""
    written = []
    if "csv" in formats:
        buf = io.StringIO()
        writer = csv.writer(buf, quoting=csv.QUOTE_MINIMAL)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
        (outdir / f"{name}.csv").write_text(buf.getvalue(), encoding="utf-8", newline="")
        written.append(f"{name}.csv")
    if "json" in formats:
        payload = [dict(zip(columns, [_pyval(v) for v in row])) for row in rows]
        (outdir / f"{name}.json").write_text(
            json.dumps(payload, indent=1, sort_keys=False) + "\n", encoding="utf-8"
        )
        written.append(f"{name}.json")
    return written


def write_manifest(outdir: Path, cfg: RunConfig, command: str, outputs, columns_map):
    checksums = {}
    for name in sorted(outputs):
        digest = hashlib.sha256((outdir / name).read_bytes()).hexdigest()
        checksums[name] = digest
    manifest = {
        "tool_version": __version__,
        "config_hash": cfg.config_hash,
        "command": command,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "units": {"mass": cfg.params.mass, "hbar": cfg.params.hbar},
        "columns": columns_map,
        "outputs": checksums,
    }
    (outdir / "manifest.json").write_text(
        json.dumps(manifest, indent=1) + "\n", encoding="utf-8"
    )


# ---------------------------------------------------------------------------
# command implementations (each returns (exit_code, outputs, columns_map))
# ---------------------------------------------------------------------------


def _number_list(value, where, default):
    if value is None:
        return list(default)
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{where}: expected a nonempty list of numbers")
    out = []
    for i, v in enumerate(value):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"{where}[{i}]: expected a number")
        out.append(float(v))
    return out


def _int_list(value, where, default):
    if value is None:
        return list(default)
    if not isinstance(value, list) or not value:
        raise ConfigError(f"{where}: expected a nonempty list of integers")
    out = []
    for i, v in enumerate(value):
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(f"{where}[{i}]: expected an integer")
        out.append(v)
    return out


def _green_dispatch(cfg: RunConfig, analog):
    tag = analog.class_tag
    if tag is ClassTag.PARABOLIC:
        return lambda e, ri, ro, kind: green_parabolic(cfg.params, e, ri, ro, kind).value
    if tag is ClassTag.HYPERBOLIC:
        return lambda e, ri, ro, kind: green_hyperbolic(analog, e, ri, ro, kind).value
    return lambda e, ri, ro, kind: green_elliptic(analog, e, ri, ro, kind).value


def cmd_classify(cfg: RunConfig, outdir: Path, subset):
    spec = cfg.generator
    cls = classify(spec)
    analog = reduce_to_analog(spec, cfg.params)
    equivalents = {
        ClassTag.ELLIPTIC: "sigma*sqrt(|Delta|)*R",
        ClassTag.PARABOLIC: "sigma*H",
        ClassTag.HYPERBOLIC: "sigma*sqrt(Delta)*S'",
    }
    try:
        a, omega_hat = dimensional_params(spec)
    except CqmspecError:
        a, omega_hat = None, None
    columns = [
        "u", "v", "w", "discriminant", "class", "omega", "sigma",
        "sigma_degenerate", "scale", "mu", "equivalent", "a", "omega_hat",
    ]
    row = [
        spec.u, spec.v, spec.w, cls.discriminant, cls.class_tag.value,
        cls.omega_mag, cls.sigma, cls.sigma_degenerate, analog.scale,
        analog.mu, equivalents[cls.class_tag], a, omega_hat,
    ]
    outputs = write_table(outdir, "classify", columns, [row], cfg.formats)
    print(
        f"{cls.class_tag.value}: Delta={cls.discriminant!r}, omega={cls.omega_mag!r}, "
        f"sigma={cls.sigma}, equivalent: {equivalents[cls.class_tag]}"
    )
    return 0, outputs, {"classify": columns}


def _schedule_from(block, where):
    sched = block.get("schedule", "euclidean")
    if sched not in ("euclidean", "realtime"):
        raise ConfigError(f"{where}.schedule: expected 'euclidean' or 'realtime'")
    return Schedule.EUCLIDEAN if sched == "euclidean" else Schedule.REAL_TIME


def cmd_propagator(cfg: RunConfig, outdir: Path, subset):
    block = _expect_mapping(cfg.blocks.get("propagator", {}), "propagator")
    _reject_unknown(block, {"schedule", "r_in", "r_out", "time"}, "propagator")
    sched = _schedule_from(block, "propagator")
    r_ins = parse_values(block, "r_in", "propagator") or [1.0]
    r_outs = parse_values(block, "r_out", "propagator") or [1.0]
    times = parse_values(block, "time", "propagator") or [1.0]
    analog = reduce_to_analog(cfg.generator, cfg.params)
    columns = ["r_in", "r_out", "time", "schedule", "re", "im", "err"]
    rows = []
    for ri in r_ins:
        for ro in r_outs:
            for t in times:
                try:
                    q = PropagatorQuery(
                        r_in=ri, r_out=ro, time=t, params=cfg.params,
                        analog=analog, schedule=sched,
                    )
                    val = radial_propagator(q)
                    rows.append([ri, ro, t, sched.value, val.real, val.imag, ""])
                except CqmspecError as exc:
                    rows.append([ri, ro, t, sched.value, None, None, type(exc).__name__])
    outputs = write_table(outdir, "propagator", columns, rows, cfg.formats)
    if cfg.plots and len(times) > 1:
        ok = [r for r in rows if r[6] == "" and r[0] == r_ins[0] and r[1] == r_outs[0]]
        if ok:
            t = [r[2] for r in ok]
            plotting.plot_series(
                outdir / "propagator.png",
                t,
                {"Re K": [r[4] for r in ok], "Im K": [r[5] for r in ok]},
                "time",
                "kernel",
                f"{analog.class_tag.value} radial kernel ({sched.value})",
            )
            outputs.append("propagator.png")
    return 0, outputs, {"propagator": columns}


def cmd_spectrum(cfg: RunConfig, outdir: Path, subset):
    block = _expect_mapping(cfg.blocks.get("spectrum", {}), "spectrum")
    _reject_unknown(block, {"n_max"}, "spectrum")
    n_max = _get_int(block, "n_max", "spectrum", 5)
    analog = reduce_to_analog(cfg.generator, cfg.params)
    if analog.class_tag is not ClassTag.ELLIPTIC:
        raise ConfigError("spectrum: generator must be elliptic (discrete ladder)")
    levels = elliptic_levels(analog, n_max)
    columns = ["n", "r_n", "e_tilde", "e_generator", "g_eigen"]
    rows = [
        [lv.n, (1.0 + analog.mu) / 2.0 + lv.n, lv.energy_tilde, lv.energy, lv.g_eigen]
        for lv in levels
    ]
    outputs = write_table(outdir, "spectrum", columns, rows, cfg.formats)
    if cfg.plots:
        plotting.plot_levels(
            outdir / "spectrum.png",
            [r[0] for r in rows],
            [r[3] for r in rows],
            "discrete generator ladder",
        )
        outputs.append("spectrum.png")
    return 0, outputs, {"spectrum": columns}


def cmd_eigfn(cfg: RunConfig, outdir: Path, subset):
    block = _expect_mapping(cfg.blocks.get("eigfn", {}), "eigfn")
    _reject_unknown(block, {"levels", "energies", "r"}, "eigfn")
    r_vals = parse_values(block, "r", "eigfn") or list(np.linspace(0.1, 6.0, 120))
    analog = reduce_to_analog(cfg.generator, cfg.params)
    columns = ["label_kind", "label", "r", "re", "im", "err"]
    rows = []
    series = {}
    if analog.class_tag is ClassTag.ELLIPTIC:
        levels = _int_list(block.get("levels"), "eigfn.levels", [0, 1, 2])
        for n in levels:
            vals = []
            for r in r_vals:
                try:
                    u = elliptic_eigenfunction(analog, int(n), r)
                    rows.append(["n", n, r, float(u), 0.0, ""])
                    vals.append(float(u))
                except CqmspecError as exc:
                    rows.append(["n", n, r, None, None, type(exc).__name__])
                    vals.append(np.nan)
            series[f"n={n}"] = vals
    else:
        energies = parse_values(block, "energies", "eigfn") or [1.0]
        for e in energies:
            vals = []
            for r in r_vals:
                try:
                    if analog.class_tag is ClassTag.PARABOLIC:
                        u = complex(parabolic_eigenfunction(cfg.params, e, r))
                    else:
                        u = complex(hyperbolic_eigenfunction(analog, e, r))
                    rows.append(["energy", e, r, u.real, u.imag, ""])
                    vals.append(abs(u))
                except CqmspecError as exc:
                    rows.append(["energy", e, r, None, None, type(exc).__name__])
                    vals.append(np.nan)
            series[f"E={e}"] = vals
    outputs = write_table(outdir, "eigfn", columns, rows, cfg.formats)
    if cfg.plots:
        label = "U(r)" if analog.class_tag is ClassTag.ELLIPTIC else "|U(r)|"
        plotting.plot_series(
            outdir / "eigfn.png", r_vals, series, "r", label,
            f"{analog.class_tag.value} eigenfunctions",
        )
        outputs.append("eigfn.png")
    return 0, outputs, {"eigfn": columns}


def cmd_green(cfg: RunConfig, outdir: Path, subset):
    block = _expect_mapping(cfg.blocks.get("green", {}), "green")
    _reject_unknown(block, {"energies", "pairs", "kinds"}, "green")
    energies = parse_values(block, "energies", "green") or [1.0]
    pairs = block.get("pairs", [[0.8, 1.1]])
    if not isinstance(pairs, list) or not pairs:
        raise ConfigError("green.pairs: expected a nonempty list")
    kinds = block.get("kinds", ["retarded", "advanced"])
    if not isinstance(kinds, list) or not kinds:
        raise ConfigError("green.kinds: expected a nonempty list")
    for k in kinds:
        if k not in ("retarded", "advanced"):
            raise ConfigError(f"green.kinds: unknown kind {k!r}")
    analog = reduce_to_analog(cfg.generator, cfg.params)
    fn = _green_dispatch(cfg, analog)
    columns = ["energy", "r_in", "r_out", "kind", "re", "im", "err"]
    rows = []
    for e in energies:
        for pair in pairs:
            if not (isinstance(pair, list) and len(pair) == 2):
                raise ConfigError("green.pairs: expected [r_in, r_out] pairs")
            ri, ro = _number_list(pair, "green.pairs", None)
            for k in kinds:
                kind = GreenKind.RETARDED if k == "retarded" else GreenKind.ADVANCED
                try:
                    val = fn(e, ri, ro, kind)
                    rows.append([e, ri, ro, k, val.real, val.imag, ""])
                except CqmspecError as exc:
                    rows.append([e, ri, ro, k, None, None, type(exc).__name__])
    outputs = write_table(outdir, "green", columns, rows, cfg.formats)
    if cfg.plots and len(energies) > 1:
        ri, ro = float(pairs[0][0]), float(pairs[0][1])
        ok = [r for r in rows if r[6] == "" and r[1] == ri and r[2] == ro and r[3] == kinds[0]]
        if ok:
            plotting.plot_series(
                outdir / "green.png",
                [r[0] for r in ok],
                {"Re G": [r[4] for r in ok], "Im G": [r[5] for r in ok]},
                "energy",
                "resolvent",
                f"{analog.class_tag.value} Green's function ({kinds[0]})",
            )
            outputs.append("green.png")
    return 0, outputs, {"green": columns}


def _quadrature_from(block, where):
    qm = _expect_mapping(block.get("quadrature", {}), f"{where}.quadrature")
    _reject_unknown(qm, {"t_max", "n_panels", "damping_eps", "contour_offset"}, f"{where}.quadrature")
    kwargs = {}
    if "t_max" in qm:
        kwargs["t_max"] = _get_number(qm, "t_max", f"{where}.quadrature")
    if "n_panels" in qm:
        kwargs["n_panels"] = _get_int(qm, "n_panels", f"{where}.quadrature")
    if "damping_eps" in qm:
        eps = qm["damping_eps"]
        if not isinstance(eps, list) or not eps:
            raise ConfigError(f"{where}.quadrature.damping_eps: expected a nonempty list")
        kwargs["damping_eps"] = tuple(float(e) for e in eps)
    if "contour_offset" in qm:
        kwargs["contour_offset"] = _get_number(qm, "contour_offset", f"{where}.quadrature")
    try:
        return tr.QuadratureSpec(**kwargs)
    except (ValueError, CqmspecError) as exc:
        raise ConfigError(f"{where}.quadrature: {exc}") from exc


def cmd_fourier(cfg: RunConfig, outdir: Path, subset):
    block = _expect_mapping(cfg.blocks.get("fourier", {}), "fourier")
    _reject_unknown(block, {"energy", "r_in", "r_out", "quadrature"}, "fourier")
    energies = parse_values(block, "energy", "fourier") or [1.0]
    ri = _get_number(block, "r_in", "fourier", 1.0)
    ro = _get_number(block, "r_out", "fourier", 1.0)
    q = _quadrature_from(block, "fourier")
    analog = reduce_to_analog(cfg.generator, cfg.params)
    if analog.class_tag is ClassTag.ELLIPTIC:
        raise ConfigError("fourier: generator must be of a continuous class")
    columns = ["energy", "re", "im", "err"]
    rows = []
    for e in energies:
        try:
            val = tr.fourier_invert(
                analog.class_tag, cfg.params, analog, e, ri, ro, q
            )
            rows.append([e, val.real, val.imag, ""])
        except CqmspecError as exc:
            rows.append([e, None, None, type(exc).__name__])
    outputs = write_table(outdir, "fourier", columns, rows, cfg.formats)
    if cfg.plots and len(energies) > 1:
        ok = [r for r in rows if r[3] == ""]
        plotting.plot_series(
            outdir / "fourier.png",
            [r[0] for r in ok],
            {"Re F": [r[1] for r in ok], "Im F": [r[2] for r in ok]},
            "energy",
            "F(E; r'', r')",
            f"{analog.class_tag.value} spectral density product",
        )
        outputs.append("fourier.png")
    return 0, outputs, {"fourier": columns}


def cmd_verify(cfg: RunConfig, outdir: Path, subset):
    block = _expect_mapping(cfg.blocks.get("verify", {}), "verify")
    _reject_unknown(block, {"subset", "samples", "quadrature"}, "verify")
    ids = subset or block.get("subset") or list(tr.IDENTITY_IDS)
    if not isinstance(ids, list):
        raise ConfigError("verify.subset: expected a list of identity ids")
    samples = _expect_mapping(block.get("samples", {}), "verify.samples")
    for key in samples:
        if key not in tr.IDENTITY_IDS:
            raise ConfigError(f"verify.samples: unknown identity {key!r}")
    q = _quadrature_from(block, "verify")
    columns = [
        "identity_id", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
        "abs_err", "rel_err", "tolerance", "passed", "detail", "err",
    ]
    rows = []
    any_fail = False
    for ident in ids:
        if ident not in tr.IDENTITY_IDS:
            raise ConfigError(f"verify: unknown identity {ident!r}")
        try:
            rep = tr.verify_identity(ident, samples.get(ident), q)
            rows.append([
                rep.identity_id, rep.lhs.real, rep.lhs.imag, rep.rhs.real,
                rep.rhs.imag, rep.abs_err, rep.rel_err, rep.tolerance,
                rep.passed, rep.detail, "",
            ])
            any_fail = any_fail or not rep.passed
        except CqmspecError as exc:
            rows.append([ident, None, None, None, None, None, None,
                         tr.IDENTITY_TOLERANCES.get(ident), False, str(exc),
                         type(exc).__name__])
            any_fail = True
    outputs = write_table(outdir, "verify", columns, rows, cfg.formats)
    if cfg.plots:
        done = [r for r in rows if r[10] == ""]
        if done:
            plotting.plot_check_bars(
                outdir / "verify.png",
                [r[0] for r in done],
                np.array([r[6] for r in done], dtype=float),
                np.array([r[7] for r in done], dtype=float),
                "identity suite",
            )
            outputs.append("verify.png")
    for r in rows:
        status = "PASS" if r[8] else "FAIL"
        print(f"{status} {r[0]}")
    return (1 if any_fail else 0), outputs, {"verify": columns}


def _grid_from(block, where, default):
    gm = _expect_mapping(block.get("grid", {}), f"{where}.grid")
    _reject_unknown(gm, {"r_min", "r_max", "n_points"}, f"{where}.grid")
    try:
        return orc.RadialGrid(
            r_min=_get_number(gm, "r_min", f"{where}.grid", default[0]),
            r_max=_get_number(gm, "r_max", f"{where}.grid", default[1]),
            n_points=_get_int(gm, "n_points", f"{where}.grid", default[2]),
        )
    except CqmspecError as exc:
        raise ConfigError(f"{where}.grid: {exc}") from exc


def cmd_oracle(cfg: RunConfig, outdir: Path, subset):
    block = _expect_mapping(cfg.blocks.get("oracle", {}), "oracle")
    _reject_unknown(
        block, {"spectrum", "green", "timesliced", "commutators"}, "oracle"
    )
    analog = reduce_to_analog(cfg.generator, cfg.params)
    outputs = []
    columns_map = {}
    any_fail = False

    # discrete-ladder comparison
    sb = _expect_mapping(block.get("spectrum", {}), "oracle.spectrum")
    _reject_unknown(sb, {"grid", "n_eigen", "tolerance"}, "oracle.spectrum")
    if analog.class_tag is ClassTag.ELLIPTIC:
        grid = _grid_from(sb, "oracle.spectrum", (1e-3, 25.0, 12000))
        n_eigen = _get_int(sb, "n_eigen", "oracle.spectrum", 6)
        tol = _get_number(sb, "tolerance", "oracle.spectrum", 1e-3)
        fd_vals = orc.fd_spectrum(analog, grid, n_eigen)
        cols = ["n", "e_fd", "e_closed", "abs_err", "tolerance", "passed"]
        rows = []
        for n, ev in enumerate(fd_vals):
            closed = analog.hbar * analog.omega_mag * (1.0 + analog.mu + 2 * n)
            err = abs(ev - closed)
            ok = err < tol
            any_fail = any_fail or not ok
            rows.append([n, float(ev), closed, float(err), tol, ok])
        outputs += write_table(outdir, "oracle_spectrum", cols, rows, cfg.formats)
        columns_map["oracle_spectrum"] = cols

    # resolvent column vs the closed form at the same complex energy E + i eps.
    # defaults keep the Dirichlet wall damping-consistent per class: traveling
    # waves must be absorbed by eps before they return from the wall
    gb = _expect_mapping(block.get("green", {}), "oracle.green")
    _reject_unknown(gb, {"grid", "energy", "epsilon", "source", "window", "tolerance"}, "oracle.green")
    grid_defaults = {
        ClassTag.ELLIPTIC: (1e-3, 20.0, 20000),
        ClassTag.PARABOLIC: (1e-3, 3500.0, 3500000),
        ClassTag.HYPERBOLIC: (1e-3, 60.0, 60000),
    }
    eps_defaults = {
        ClassTag.ELLIPTIC: 1e-3,
        ClassTag.PARABOLIC: 1e-3,
        ClassTag.HYPERBOLIC: 0.8,
    }
    grid = _grid_from(gb, "oracle.green", grid_defaults[analog.class_tag])
    e = _get_number(gb, "energy", "oracle.green", 1.0)
    epsv = _get_number(gb, "epsilon", "oracle.green", eps_defaults[analog.class_tag])
    src = _get_number(gb, "source", "oracle.green", 1.0)
    window = _number_list(gb.get("window"), "oracle.green.window", [0.4, 4.0])
    if len(window) != 2:
        raise ConfigError("oracle.green.window: expected [lo, hi]")
    tol = _get_number(gb, "tolerance", "oracle.green", 0.02)
    fn = _green_dispatch(cfg, analog)
    r_nodes, col, j = orc.fd_green(analog, e, epsv, grid, src, GreenKind.RETARDED)
    cols = ["r", "fd_re", "fd_im", "closed_re", "closed_im", "rel_err",
            "tolerance", "compared", "passed"]
    rows = []
    sample = np.linspace(float(window[0]), float(window[1]), 25)
    idx = [int(np.argmin(np.abs(r_nodes - rs))) for rs in sample]
    e_c = complex(e, epsv)
    closed_vals = [fn(e_c, r_nodes[j], r_nodes[i], GreenKind.RETARDED) for i in idx]
    # skip points near nodes of G, where pointwise relative error is ill-posed
    floor = 0.1 * max(abs(c) for c in closed_vals)
    for i, closed in zip(idx, closed_vals):
        compared = abs(closed) >= floor
        rel = abs(col[i] - closed) / (abs(closed) if compared else floor)
        ok = (rel < tol) if compared else True
        any_fail = any_fail or not ok
        rows.append([float(r_nodes[i]), float(col[i].real), float(col[i].imag),
                     closed.real, closed.imag, float(rel), tol, compared, ok])
    outputs += write_table(outdir, "oracle_green", cols, rows, cfg.formats)
    columns_map["oracle_green"] = cols

    # time-sliced composition sweep
    tb = _expect_mapping(block.get("timesliced", {}), "oracle.timesliced")
    _reject_unknown(tb, {"grid", "r_in", "r_out", "time", "slices", "order_range"}, "oracle.timesliced")
    if analog.class_tag is ClassTag.ELLIPTIC:
        grid = _grid_from(tb, "oracle.timesliced", (1e-3, 8.0, 1600))
        ri = _get_number(tb, "r_in", "oracle.timesliced", 0.8)
        ro = _get_number(tb, "r_out", "oracle.timesliced", 1.3)
        t = _get_number(tb, "time", "oracle.timesliced", 1.0)
        slices = _int_list(tb.get("slices"), "oracle.timesliced.slices", [16, 32, 64, 128])
        order_range = _number_list(tb.get("order_range"), "oracle.timesliced.order_range", [0.8, 2.4])
        if len(order_range) != 2:
            raise ConfigError("oracle.timesliced.order_range: expected [lo, hi]")
        order_lo, order_hi = order_range
        q = PropagatorQuery(r_in=ri, r_out=ro, time=t, params=cfg.params,
                            analog=analog, schedule=Schedule.EUCLIDEAN)
        exact = radial_propagator(q).real
        cols = ["n_slices", "kernel", "exact", "abs_err"]
        rows = []
        errs = []
        for n in slices:
            kn = orc.timesliced_propagator(analog, ri, ro, t, int(n), grid)
            errs.append(abs(kn - exact))
            rows.append([int(n), kn, exact, errs[-1]])
        order = -np.polyfit(np.log(slices), np.log(errs), 1)[0]
        ok = order_lo <= order <= order_hi
        any_fail = any_fail or not ok
        rows.append(["fitted_order", float(order), None, None])
        outputs += write_table(outdir, "oracle_timesliced", cols, rows, cfg.formats)
        columns_map["oracle_timesliced"] = cols
        if cfg.plots:
            plotting.plot_convergence(
                outdir / "oracle_timesliced.png", slices,
                {"composed kernel": errs}, "slices", "time-sliced convergence",
                guide_orders=(1.0,),
            )
            outputs.append("oracle_timesliced.png")

    # commutator residuals
    cb = _expect_mapping(block.get("commutators", {}), "oracle.commutators")
    _reject_unknown(cb, {"grid", "tolerance"}, "oracle.commutators")
    grid = _grid_from(cb, "oracle.commutators", (0.5, 6.0, 5501))
    tol = _get_number(cb, "tolerance", "oracle.commutators", 1e-3)
    res = orc.commutator_check(cfg.params, grid)
    cols = ["relation", "residual", "tolerance", "passed"]
    rows = []
    for key, val in res.items():
        ok = val < tol
        any_fail = any_fail or not ok
        rows.append([key, float(val), tol, ok])
    outputs += write_table(outdir, "oracle_commutators", cols, rows, cfg.formats)
    columns_map["oracle_commutators"] = cols

    print("oracle checks:", "FAIL" if any_fail else "PASS")
    return (1 if any_fail else 0), outputs, columns_map


_DISPATCH = {
    "classify": cmd_classify,
    "propagator": cmd_propagator,
    "spectrum": cmd_spectrum,
    "eigfn": cmd_eigfn,
    "green": cmd_green,
    "fourier": cmd_fourier,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="cqmspec",
        description="Spectral toolkit for conformal-quantum-mechanics generators",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="JSON run configuration")
    parser.add_argument("--out", default="cqmspec_out", help="output directory")
    parser.add_argument(
        "--subset", default=None,
        help="comma-separated identity ids (verify command only)",
    )
    args = parser.parse_args(argv)

    subset = args.subset.split(",") if args.subset else None
    try:
        cfg = load_config(args.config)
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        code, outputs, columns_map = _DISPATCH[args.command](cfg, outdir, subset)
        write_manifest(outdir, cfg, args.command, outputs, columns_map)
        return code
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (NonConvergence, ConvergenceError) as exc:
        print(f"numeric non-convergence: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
