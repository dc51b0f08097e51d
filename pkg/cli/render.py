"""
Report rendering. Every format formats numbers through `format_number`, so
table, CSV and JSON carry identical values.
"""

import json
import math

import numpy as np
import pandas as pd

from metrics.degenerate import Degenerate

FORMATS = ('table', 'json', 'csv')
UNDEFINED = 'undefined'


def format_number(value):
    """10 significant digits, period decimal separator, no locale."""
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    value = float(value)
    if math.isnan(value):
        return UNDEFINED
    if value == 0:
        return '0'
    return format(value, '.10g')


def cell(value):
    if isinstance(value, Degenerate):
        return value.describe()
    if value is None:
        return UNDEFINED
    if isinstance(value, str):
        return value
    return format_number(value)


def _json_value(value):
    if value is None or isinstance(value, Degenerate):
        return None
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    text = format_number(value)
    return None if text == UNDEFINED else float(text)


def _json_row(row):
    out = {key: _json_value(value) for key, value in row.items()}
    degeneracies = {key: value.reason.value for key, value in row.items() if isinstance(value, Degenerate)}
    if degeneracies:
        out['degeneracies'] = degeneracies
    return out


def _frame(rows):
    columns = list(dict.fromkeys(key for row in rows for key in row))
    return pd.DataFrame([[cell(row.get(c)) for c in columns] for row in rows], columns=columns)


def render(rows, fmt='table'):
    """Render a list of flat row mappings."""
    if fmt == 'json':
        return json.dumps([_json_row(row) for row in rows], indent=2) + '\n'
    frame = _frame(rows)
    if fmt == 'csv':
        return frame.to_csv(index=False, lineterminator='\n')
    if frame.empty:
        return '(no rows)\n'
    return frame.to_string(index=False) + '\n'


def render_sections(sections, fmt='table'):
    """Render several named row lists as one document."""
    if fmt == 'json':
        payload = {name: [_json_row(row) for row in rows] for name, rows in sections.items()}
        return json.dumps(payload, indent=2) + '\n'
    parts = []
    for name, rows in sections.items():
        header = f"# {name}\n" if fmt == 'csv' else f"== {name} ==\n"
        parts.append(header + render(rows, fmt))
    return '\n'.join(parts)


def frame_rows(frame):
    """DataFrame -> row mappings with NaN mapped to None."""
    return [
        {key: (None if isinstance(value, float) and math.isnan(value) else value) for key, value in record.items()}
        for record in frame.to_dict(orient='records')
    ]


def emit(text, out=None):
    if out:
        with open(out, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
    else:
        print(text, end='')
