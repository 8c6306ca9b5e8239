"""Per-SNR capacity records and their CSV / key=value serialisation."""

import csv
import io
import math
from dataclasses import dataclass, fields

import numpy as np

from . import closed_form, optimizer

LN2 = math.log(2.0)

# Columns holding information quantities (nats), converted under bits units.
INFORMATION_FIELDS = ("capacity_nats", "c_linear", "delta", "c_lb", "c_ub")


@dataclass(frozen=True)
class CapacityRecord:
    a: float
    x1_opt: float
    p1: float
    capacity_nats: float
    c_linear: float
    delta: float
    penalty_per_snr: float
    x1_lb: float
    x1_ub: float | None
    c_lb: float | None
    c_ub: float | None
    energy_per_nat: float
    per_bit_db: float


FIELD_NAMES = tuple(f.name for f in fields(CapacityRecord))


def capacity_record(a):
    """Every quantity plotted against SNR, for one value of a."""
    opt = optimizer.solve_x1(a)
    edge = optimizer.edge_constants()
    x1 = opt.x1
    energy = closed_form.energy_per_nat(a, x1)
    if a <= edge.a0:
        x1_ub = optimizer.x1_upper_bound(a, edge)
        c_lb, c_ub = optimizer.capacity_bounds(a, edge)
    else:
        x1_ub = c_lb = c_ub = None
    return CapacityRecord(
        a=a,
        x1_opt=x1,
        p1=opt.p1,
        capacity_nats=closed_form.capacity_at(a, x1),
        c_linear=a,
        delta=closed_form.sublinear_delta(a, x1),
        penalty_per_snr=closed_form.penalty_per_snr(a, x1),
        x1_lb=optimizer.effective_lower_bound(a),
        x1_ub=x1_ub,
        c_lb=c_lb,
        c_ub=c_ub,
        energy_per_nat=energy.exact,
        per_bit_db=energy.per_bit_db,
    )


def snr_grid(a_min, a_max, points, spacing="log"):
    if spacing == "log":
        grid = np.geomspace(a_min, a_max, points)
    elif spacing == "linear":
        grid = np.linspace(a_min, a_max, points)
    else:
        raise ValueError(f"spacing must be 'log' or 'linear', got {spacing!r}")
    grid[0], grid[-1] = a_min, a_max
    return [float(a) for a in grid]


def sweep(a_min, a_max, points, spacing="log"):
    return [capacity_record(a) for a in snr_grid(a_min, a_max, points, spacing)]


def _in_units(record, units):
    values = {name: getattr(record, name) for name in FIELD_NAMES}
    if units == "bits":
        for name in INFORMATION_FIELDS:
            if values[name] is not None:
                values[name] = values[name] / LN2
    elif units != "nats":
        raise ValueError(f"units must be 'nats' or 'bits', got {units!r}")
    return values


def header(units="nats"):
    if units == "bits":
        return [("capacity_bits" if n == "capacity_nats" else n) for n in FIELD_NAMES]
    return list(FIELD_NAMES)


def format_value(value):
    return "" if value is None else f"{value:.16e}"


def to_csv(records, units="nats"):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header(units))
    for record in records:
        values = _in_units(record, units)
        writer.writerow([format_value(values[name]) for name in FIELD_NAMES])
    return buf.getvalue()


def read_csv(text):
    """Parse CSV produced by :func:`to_csv`; empty fields become None."""
    rows = list(csv.DictReader(io.StringIO(text)))
    return [{k: (float(v) if v != "" else None) for k, v in row.items()} for row in rows]


def to_key_values(record, units="nats"):
    values = _in_units(record, units)
    return "\n".join(f"{key}={format_value(values[name])}"
                     for key, name in zip(header(units), FIELD_NAMES)) + "\n"
