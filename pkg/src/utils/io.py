import csv
import json
import hashlib
import math
from pathlib import Path
import numpy as np
import pandas as pd
from src.utils.errors import ParseError

def load_config(path: str | Path) -> dict:
    with open(path, 'r') as file:
        config = json.load(file)

    return config

def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        # NaN / inf are not valid JSON
        return value if math.isfinite(value) else None
    return value

def save_to_json(data_dict: dict, output_file: str | Path):
    """
    Saves dictionary to a json file. numpy scalars and arrays are converted,
    non-finite floats become null.

    Args:
        data_dict (Dict): Dictionary containing data to be saved
        output_file (str | Path): Path to output file
    """
    Path(output_file).parent.mkdir(parents=True, exist_ok=True)
    with open(output_file, 'w', encoding='utf-8') as json_file:
        json.dump(_jsonable(data_dict), json_file, indent=4, sort_keys=True)
        json_file.write('\n')

def save_csv(frame: pd.DataFrame, output_file: str | Path):
    """
    Writes a DataFrame as UTF-8 CSV with a header row and a fixed float format,
    so identical data gives byte-identical files.
    """
    Path(output_file).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(output_file, index=False, float_format='%.10g',
                 lineterminator='\n', encoding='utf-8')

def config_hash(config: dict) -> str:
    canonical = json.dumps(_jsonable(config), sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()

def read_zscores(path: str | Path) -> np.ndarray:
    """
    Reads a one-column CSV of z-scores with an optional header ``z``.

    Args:
        path (str | Path): Input file

    Returns:
        np.ndarray: The z-scores

    Raises:
        ParseError: Empty file, extra columns or a non-numeric entry
            (message carries the line number)
    """
    values = []
    with open(path, 'r', encoding='utf-8', newline='') as file:
        for line_no, row in enumerate(csv.reader(file), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) != 1:
                raise ParseError(f'expected one column, found {len(row)}', line_no)
            cell = row[0].strip()
            if line_no == 1 and not values and cell.lower() == 'z':
                continue
            try:
                value = float(cell)
            except ValueError:
                raise ParseError(f'not a number: {cell!r}', line_no) from None
            if not math.isfinite(value):
                raise ParseError(f'non-finite value: {cell!r}', line_no)
            values.append(value)

    if not values:
        raise ParseError(f'no z-scores found in {path}')
    return np.asarray(values, dtype=float)
