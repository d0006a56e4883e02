"""Parameter sweeps to CSV.

Each sweep point is an independent ``analyze`` call; points are dispatched
to a process pool when ``jobs > 1`` and written in index order either way,
so the output is byte-identical across runs and worker counts. Floats are
rendered with ``repr`` (shortest round-trip), which lets regression tests
compare files exactly and re-readers recover the binary doubles.

A quadrature failure in one row does not abort the sweep: the row keeps its
geometry columns, carries NaNs for the moments, and is marked in ``status``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .config import SweepConfig
from .harvesting import analyze
from .quadrature import QuadratureNonConvergence

__all__ = ["CSV_COLUMNS", "run_sweep", "compute_row"]

CSV_COLUMNS = (
    "index", "sweep_value", "d", "delta_t",
    "L_aa", "L_bb", "re_L_ab", "im_L_ab",
    "re_M", "im_M", "re_M_plus", "im_M_plus", "re_M_minus", "im_M_minus",
    "abs_M", "abs_M_plus", "abs_M_minus",
    "cos_dgamma", "dgamma",
    "N", "N_plus", "N_minus",
    "quad_err", "status",
)


def compute_row(cfg: SweepConfig, index: int, x: float) -> dict:
    """One sweep point as a column -> value mapping."""
    d, delta_t = cfg.point_geometry(x)
    row = {"index": index, "sweep_value": x, "d": d, "delta_t": delta_t,
           "status": "ok"}
    try:
        det_a, det_b = cfg.detectors_at(x)
        moments, report = analyze(det_a, det_b, cfg.build_background(), cfg.quad)
    except (QuadratureNonConvergence, ValueError):
        nan = math.nan
        row.update(
            L_aa=nan, L_bb=nan, re_L_ab=nan, im_L_ab=nan,
            re_M=nan, im_M=nan, re_M_plus=nan, im_M_plus=nan,
            re_M_minus=nan, im_M_minus=nan,
            abs_M=nan, abs_M_plus=nan, abs_M_minus=nan,
            cos_dgamma=nan, dgamma=nan, N=nan, N_plus=nan, N_minus=nan,
            quad_err=nan, status="quad_error",
        )
        return row
    row.update(
        L_aa=moments.L_aa.real, L_bb=moments.L_bb.real,
        re_L_ab=moments.L_ab.real, im_L_ab=moments.L_ab.imag,
        re_M=moments.M.real, im_M=moments.M.imag,
        re_M_plus=moments.M_plus.real, im_M_plus=moments.M_plus.imag,
        re_M_minus=moments.M_minus.real, im_M_minus=moments.M_minus.imag,
        abs_M=report.abs_M, abs_M_plus=report.abs_M_plus,
        abs_M_minus=report.abs_M_minus,
        cos_dgamma=report.cos_dgamma, dgamma=report.dgamma,
        N=report.N, N_plus=report.N_plus, N_minus=report.N_minus,
        quad_err=moments.err_budget,
    )
    return row


def _worker(args):
    cfg, index, x = args
    return compute_row(cfg, index, x)


def _format(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def run_sweep(cfg: SweepConfig, jobs: int = 1, out: str | None = None) -> tuple[Path, int]:
    """Run the sweep, write the CSV, return (path, number of failed rows)."""
    grid = cfg.grid()
    tasks = [(cfg, i, x) for i, x in enumerate(grid)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_worker, tasks))
    else:
        rows = [_worker(t) for t in tasks]
    rows.sort(key=lambda r: r["index"])

    path = Path(out if out is not None else (cfg.output or "sweep.csv"))
    lines = [",".join(CSV_COLUMNS)]
    lines += [",".join(_format(row[col]) for col in CSV_COLUMNS) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    failed = sum(1 for row in rows if row["status"] != "ok")
    return path, failed
