import csv
import os

import numpy as np

from .exceptions import ValidationError


def format_number(value):
    if value is None:
        return ''
    return '%.17g' % value


def _writer(f):
    return csv.writer(f, lineterminator = '\n')


def _ensure_dir(path):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok = True)


def write_solution_csv(path, series):
    _ensure_dir(path)
    with open(path, 'w', encoding = 'utf-8', newline = '') as f:
        writer = _writer(f)
        writer.writerow(('t', 'u'))
        for t, u in zip(series.times, series.values):
            writer.writerow((format_number(t), format_number(u)))
    return path


def read_solution_csv(path):
    with open(path, encoding = 'utf-8', newline = '') as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != ['t', 'u']:
            raise ValidationError('%s is not a solution file (header %r)' % (path, header))
        rows = [(float(t), float(u)) for t, u in reader]
    data = np.array(rows, dtype = float).reshape(-1, 2)
    return data[:, 0], data[:, 1]


def write_report_csv(path, report):
    _ensure_dir(path)
    with open(path, 'w', encoding = 'utf-8', newline = '') as f:
        writer = _writer(f)
        writer.writerow(report.HEADER)
        for row in report.table():
            writer.writerow((row[0],) + tuple(format_number(v) for v in row[1:]))
    return path


def read_report_csv(path):
    with open(path, encoding = 'utf-8', newline = '') as f:
        reader = csv.DictReader(f)
        return [dict((key, float(value) if value else None) for key, value in row.items())
                for row in reader]
