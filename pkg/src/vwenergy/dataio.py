"""
Landmark files and test reports.

Landmark files are UTF-8 comma-separated text. The first row is a header
``x1,y1,x2,y2,...,xk,yk``, optionally preceded by an ``id`` column; each
following row is one k-ad. LF and CRLF line endings are both accepted.
Group membership is given by the file, not by a column.

Reports carry everything needed to rerun a test: statistic, resampling
plan (method, trials, seed), p-value, critical values, group sizes, ``k``
and the distance convention. Floats are written with ``repr`` so that
reading a report back gives the same values bit for bit.
"""

import csv
import io
import json
import os
from dataclasses import dataclass

import numpy as np

from .exceptions import InputError, LandmarkParseError

__all__ = [
    "GroupedDataset",
    "LandmarkTable",
    "REPORT_FIELDS",
    "SCHEMA_VERSION",
    "load_grouped_dataset",
    "parse_landmark_file",
    "read_landmark_file",
    "read_report",
    "report_fields",
    "write_landmarks",
    "write_report",
]

SCHEMA_VERSION = 1
_ID_COLUMNS = ("id", "label")


@dataclass(frozen=True, eq=False)
class LandmarkTable:
    """``observations`` is an ``(n, k, 2)`` array; ``labels`` is optional."""

    observations: np.ndarray
    labels: tuple = None

    def __post_init__(self):
        obs = np.asarray(self.observations, dtype=float)
        if obs.ndim != 3 or obs.shape[2] != 2:
            raise InputError("observations must have shape (n, k, 2)")
        if obs.shape[1] < 3:
            raise InputError("k-ads need k >= 3 landmarks")
        if self.labels is not None and len(self.labels) != obs.shape[0]:
            raise InputError("one label per observation required")
        object.__setattr__(self, "observations", obs)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def n(self):
        return self.observations.shape[0]

    @property
    def k(self):
        return self.observations.shape[1]

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, LandmarkTable):
            return NotImplemented
        return (self.labels == other.labels
                and self.observations.shape == other.observations.shape
                and bool(np.all(self.observations == other.observations)))


@dataclass(frozen=True)
class GroupedDataset:
    group_a: LandmarkTable
    group_b: LandmarkTable
    names: tuple = ("a", "b")

    def __post_init__(self):
        if self.group_a.k != self.group_b.k:
            raise InputError("groups have different k: {} vs {}".format(
                self.group_a.k, self.group_b.k))

    @property
    def k(self):
        return self.group_a.k

    @property
    def sizes(self):
        return self.group_a.n, self.group_b.n


def _expected_header(k):
    return [c for i in range(1, k + 1) for c in ("x%d" % i, "y%d" % i)]


def _read_text(source):
    if isinstance(source, bytes):
        data = source
    elif isinstance(source, str):
        return source
    else:
        data = source.read()
        if isinstance(data, str):
            return data
    try:
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise LandmarkParseError("input is not UTF-8: {}".format(exc))


def parse_landmark_file(source):
    """
    Parse landmark text into a LandmarkTable.

    Parameters
    ----------
    source : bytes, str or file object
        File contents, or an open file in binary or text mode.

    Raises
    ------
    LandmarkParseError
        Bad header, ragged or non-numeric row, k < 3, or no data rows.
        The message names the offending 1-based line.
    """
    text = _read_text(source).lstrip("﻿")
    lines = text.splitlines()
    rows = list(csv.reader(lines))
    if not rows or not any(f.strip() for f in rows[0]):
        raise LandmarkParseError("missing header", line=1)
    header = [f.strip() for f in rows[0]]
    has_id = header[0].lower() in _ID_COLUMNS
    coords = header[1:] if has_id else header
    if len(coords) % 2 or len(coords) < 6:
        raise LandmarkParseError(
            "header needs x1,y1,...,xk,yk with k >= 3, got {} coordinate "
            "columns".format(len(coords)), line=1)
    k = len(coords) // 2
    if [c.lower() for c in coords] != _expected_header(k):
        raise LandmarkParseError(
            "header must read x1,y1,...,x{0},y{0}".format(k), line=1)

    width = len(header)
    obs, labels = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != width:
            raise LandmarkParseError("expected {} fields, found {}".format(
                width, len(row)), line=lineno)
        if has_id:
            labels.append(row[0].strip())
            row = row[1:]
        try:
            values = [float(f) for f in row]
        except ValueError:
            bad = next(f for f in row if not _is_float(f))
            raise LandmarkParseError("non-numeric field {!r}".format(bad),
                                     line=lineno) from None
        if not all(np.isfinite(values)):
            raise LandmarkParseError("non-finite coordinate", line=lineno)
        obs.append(values)
    if not obs:
        raise LandmarkParseError("no observations")
    arr = np.array(obs, dtype=float).reshape(len(obs), k, 2)
    return LandmarkTable(arr, tuple(labels) if has_id else None)


def _is_float(s):
    try:
        float(s)
    except ValueError:
        return False
    return True


def read_landmark_file(path):
    with open(path, "rb") as fh:
        return parse_landmark_file(fh)


def write_landmarks(table, labels=None):
    """
    Render k-ads in the landmark file format and return the text.

    ``table`` is a LandmarkTable or an ``(n, k, 2)`` / ``(k, 2)`` array.
    """
    if isinstance(table, LandmarkTable):
        obs, labels = table.observations, table.labels
    else:
        obs = np.asarray(table, dtype=float)
        if obs.ndim == 2:
            obs = obs[None]
        obs = LandmarkTable(obs, labels).observations
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    header = _expected_header(obs.shape[1])
    writer.writerow((["id"] + header) if labels is not None else header)
    for i, kad in enumerate(obs):
        fields = [repr(float(v)) for v in kad.ravel()]
        writer.writerow(([labels[i]] + fields) if labels is not None
                        else fields)
    return out.getvalue()


def load_grouped_dataset(path_a, path_b, names=None):
    """Read two landmark files as the two groups of a comparison."""
    a = read_landmark_file(path_a)
    b = read_landmark_file(path_b)
    if names is None:
        names = tuple(os.path.splitext(os.path.basename(os.fspath(p)))[0]
                      for p in (path_a, path_b))
    return GroupedDataset(a, b, tuple(names))


# name -> type, in output order
REPORT_FIELDS = {
    "schema_version": int,
    "command": str,
    "metric": str,
    "distance_convention": str,
    "method": str,
    "trials": int,
    "seed": int,
    "alpha": float,
    "reject": bool,
    "t_observed": float,
    "p_value": float,
    "energy": float,
    "cross_mean": float,
    "within_x_mean": float,
    "within_y_mean": float,
    "n1": int,
    "n2": int,
    "k": int,
    "group_a": str,
    "group_b": str,
}
_CONVENTIONS = {"vw": "root", "vw_squared": "squared",
                "euclidean": "euclidean"}


def report_fields(result, **context):
    """
    Flat dict of report fields for a TwoSampleResult.

    ``context`` adds or overrides entries (``k``, group names, simulation
    parameters, ...). Critical values go under ``critical_values`` keyed
    by alpha.
    """
    cal = result.calibration
    rep = result.report
    fields = {
        "schema_version": SCHEMA_VERSION,
        "command": None,
        "metric": result.metric,
        "distance_convention": _CONVENTIONS.get(result.metric, "custom"),
        "method": cal.plan.method,
        "trials": cal.plan.trials,
        "seed": cal.plan.seed,
        "alpha": result.alpha,
        "reject": result.reject,
        "t_observed": rep.t_energy,
        "p_value": cal.p_value,
        "energy": rep.energy,
        "cross_mean": rep.cross_mean,
        "within_x_mean": rep.within_x_mean,
        "within_y_mean": rep.within_y_mean,
        "n1": rep.n1,
        "n2": rep.n2,
        "k": None,
        "group_a": None,
        "group_b": None,
    }
    fields.update(context)
    fields["critical_values"] = {float(a): float(c)
                                 for a, c in cal.critical_values.items()}
    return fields


def _csv_cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_report(result, format="json", **context):
    """
    Serialize a TwoSampleResult as JSON or as a two-row CSV; returns bytes.

    In CSV each critical value becomes a column ``critical_value@<alpha>``.
    """
    fields = report_fields(result, **context)
    if format == "json":
        out = dict(fields)
        out["critical_values"] = {repr(a): c for a, c in
                                  fields["critical_values"].items()}
        return (json.dumps(out, indent=2) + "\n").encode("utf-8")
    if format == "csv":
        crit = fields.pop("critical_values")
        for a, c in crit.items():
            fields["critical_value@" + repr(a)] = c
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(fields))
        writer.writerow([_csv_cell(v) for v in fields.values()])
        return buf.getvalue().encode("utf-8")
    raise InputError("unknown report format {!r}".format(format))


def _csv_value(name, cell):
    if cell == "":
        return None
    kind = REPORT_FIELDS.get(name)
    if kind is bool or cell in ("true", "false"):
        return cell == "true"
    if kind is not None:
        return kind(cell)
    for conv in (int, float):
        try:
            return conv(cell)
        except ValueError:
            pass
    return cell


def read_report(data, format="json"):
    """Parse a report written by :func:`write_report` back into a dict."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if format == "json":
        fields = json.loads(data)
        fields["critical_values"] = {float(a): c for a, c in
                                     fields["critical_values"].items()}
        return fields
    if format == "csv":
        header, values = list(csv.reader(data.splitlines()))[:2]
        fields, crit = {}, {}
        for name, cell in zip(header, values):
            if name.startswith("critical_value@"):
                crit[float(name.split("@", 1)[1])] = float(cell)
            else:
                fields[name] = _csv_value(name, cell)
        fields["critical_values"] = crit
        return fields
    raise InputError("unknown report format {!r}".format(format))
