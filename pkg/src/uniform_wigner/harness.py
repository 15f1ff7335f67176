"""Error sweeps comparing the uniform approximation with reference values.

Each sweep returns a list of records; :func:`write_records` serializes them
as CSV (17 significant digits) or JSON.
"""

from dataclasses import asdict, dataclass
import json
import math
from typing import Optional

import numpy as np

from .angular_core import canonicalize, check_angle, make_index
from .errors import DomainError, QuadratureNotConverged
from .partial_wave import integral_approx, integral_exact
from .wigner_exact import d_exact, d_exact_j_range, d_series_highprec
from .wigner_uniform import d_approx

__all__ = [
    "ErrorRecord",
    "IntegralRecord",
    "SweepConfig",
    "ERROR_COLUMNS",
    "INTEGRAL_COLUMNS",
    "evaluate",
    "log_grid",
    "sweep_theta",
    "sweep_j",
    "sweep_integral",
    "format_number",
    "write_records",
]

ERROR_COLUMNS = ("two_j", "two_m1", "two_m2", "theta", "exact", "approx", "abs_error", "rel_error")
INTEGRAL_COLUMNS = ("l", "rho", "epsilon", "exact", "approx", "rel_error")


@dataclass(frozen=True)
class ErrorRecord:
    two_j: int
    two_m1: int
    two_m2: int
    theta: float
    exact: float
    approx: float
    abs_error: float
    rel_error: Optional[float]

    @classmethod
    def compare(cls, idx, theta, exact, approx):
        rel = (exact - approx) / exact if exact != 0.0 else None
        return cls(idx.two_j, idx.two_m1, idx.two_m2, float(theta), exact, approx, abs(exact - approx), rel)


@dataclass(frozen=True)
class IntegralRecord:
    l: int
    rho: float
    epsilon: float
    exact: Optional[float]
    approx: float
    rel_error: Optional[float]


@dataclass
class SweepConfig:
    """Parameters of one sweep.

    ``kind`` is ``"theta"``, ``"j"`` or ``"integral"``; only the fields that
    kind uses need to be set.
    """

    kind: str
    two_j: int = 0
    two_m1: int = 0
    two_m2: int = 0
    theta: float = 1e-3
    theta_start: float = 1e-4
    theta_stop: float = 1.0
    theta_points: int = 200
    two_j_start: int = 0
    two_j_stop: int = 0
    l_start: int = 0
    l_stop: int = 0
    l_step: int = 1
    rho: float = 1.0
    epsilon: float = 1e-3
    fmt: str = "csv"

    def validate(self):
        if self.kind not in ("theta", "j", "integral"):
            raise DomainError(f"unknown sweep kind {self.kind!r}")
        if self.fmt not in ("csv", "json"):
            raise DomainError(f"unknown format {self.fmt!r}")
        if self.kind == "theta":
            if self.theta_points < 1:
                raise DomainError("theta grid needs at least one point")
            if not (self.theta_start > 0 and self.theta_stop >= self.theta_start):
                raise DomainError("log-spaced theta grid needs 0 < start <= stop")
        elif self.kind == "j":
            if self.two_j_stop < self.two_j_start:
                raise DomainError("empty j range")
        else:
            if self.l_step < 1 or self.l_stop < self.l_start or self.l_start < 0:
                raise DomainError("empty or invalid l range")


def log_grid(start, stop, points):
    """``points`` log-spaced values from start to stop inclusive."""
    if points < 1 or not (start > 0 and stop >= start):
        raise DomainError("log-spaced grid needs 0 < start <= stop and points >= 1")
    if points == 1:
        return np.array([float(start)])
    return np.logspace(math.log10(start), math.log10(stop), points)


def evaluate(idx, theta, method):
    """Single matrix element by ``"exact"``, ``"approx"`` or ``"series"``."""
    theta = check_angle(theta)
    if method == "exact":
        return d_exact(idx, theta)
    if method == "approx":
        return d_approx(idx, theta)
    if method == "series":
        can, sign = canonicalize(idx)
        return sign * d_series_highprec(can, theta)
    raise DomainError(f"unknown method {method!r}")


def sweep_theta(config):
    """One record per theta of the log grid, ascending."""
    config.validate()
    idx = make_index(config.two_j, config.two_m1, config.two_m2)
    thetas = log_grid(config.theta_start, config.theta_stop, config.theta_points)
    records = []
    for t in thetas:
        t = check_angle(t)
        records.append(ErrorRecord.compare(idx, t, d_exact(idx, t), d_approx(idx, t)))
    return records


def sweep_j(config):
    """One record per j in [j_start, j_stop] at fixed theta and (m1, m2)."""
    config.validate()
    theta = check_angle(config.theta)
    make_index(config.two_j_start, config.two_m1, config.two_m2)
    make_index(config.two_j_stop, config.two_m1, config.two_m2)
    two_js, exact = d_exact_j_range(config.two_m1, config.two_m2, theta, config.two_j_stop)
    records = []
    for tj, ex in zip(two_js, exact):
        if tj < config.two_j_start:
            continue
        idx = make_index(int(tj), config.two_m1, config.two_m2)
        records.append(ErrorRecord.compare(idx, theta, float(ex), d_approx(idx, theta)))
    return records


def sweep_integral(config, warn=None):
    """One record per l; rows whose quadrature fails carry empty exact/rel_error."""
    config.validate()
    records = []
    for l in range(config.l_start, config.l_stop + 1, config.l_step):
        approx = integral_approx(config.rho, l, config.epsilon)
        try:
            exact = integral_exact(config.rho, l, config.epsilon)
        except QuadratureNotConverged as exc:
            if warn is not None:
                warn(f"warning: l={l}: {exc}")
            records.append(IntegralRecord(l, config.rho, config.epsilon, None, approx, None))
            continue
        rel = (exact - approx) / exact if exact != 0.0 else None
        records.append(IntegralRecord(l, config.rho, config.epsilon, exact, approx, rel))
    return records


def format_number(value):
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def write_records(records, columns, stream, fmt="csv"):
    if fmt == "csv":
        stream.write(",".join(columns) + "\n")
        for rec in records:
            row = asdict(rec)
            stream.write(",".join(format_number(row[c]) for c in columns) + "\n")
    elif fmt == "json":
        rows = [{c: asdict(rec)[c] for c in columns} for rec in records]
        json.dump(rows, stream, indent=1)
        stream.write("\n")
    else:
        raise DomainError(f"unknown format {fmt!r}")
