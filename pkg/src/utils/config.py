"""
Schema validation of the per-command configuration trees.
"""
from dataclasses import dataclass
from typing import Any
from src.utils.errors import ConfigValidationError

_NUMBER = (int, float)


@dataclass(frozen=True)
class Field:
    types: tuple
    default: Any = None
    required: bool = False
    choices: tuple | None = None
    item_types: tuple | None = None # element types of list fields


SCHEMAS: dict[str, dict[str, Field]] = {
    'estimate': {
        'input': Field((str,), required=True),
        'gamma': Field(_NUMBER, 0.2),
        'null_mode': Field((str,), 'estimate', choices=('estimate', 'known')),
        'u0': Field(_NUMBER, 0.0),
        'sigma0': Field(_NUMBER, 1.0),
        'output': Field((str,)),
    },
    'simulate': {
        'setting': Field((str,), required=True),
        'n': Field((int,)),
        'replications': Field((int,)),
        'gamma': Field(_NUMBER),
        'grid': Field((list,), item_types=_NUMBER),
        'master_seed': Field((int,)),
        'workers': Field((int,)),
        'estimators': Field((list,), item_types=(str,)),
        'procedure': Field((str,), choices=('adaptive_bh', 'adaptz')),
        'alpha': Field(_NUMBER, 0.10),
        'lam': Field(_NUMBER, 0.5),
        'bandwidth_rule': Field((str,), choices=('silverman', 'loo_cv')),
        'output': Field((str,)),
    },
    'reproduce': {
        'target': Field((str,), required=True),
        'seed': Field((int,), 2009),
        'scale': Field(_NUMBER, 1.0),
        'workers': Field((int,)),
        'grid': Field((list,), item_types=_NUMBER),
        'output': Field((str,)),
    },
    'lowerbound': {
        'kind': Field((str,), 'variance', choices=('variance', 'mean', 'proportion')),
        'alpha': Field(_NUMBER, 3.0),
        'beta': Field(_NUMBER, 0.25),
        'eps0': Field(_NUMBER, 0.5),
        'q': Field(_NUMBER, 2.0),
        'a': Field(_NUMBER, 1.0),
        'A': Field(_NUMBER),
        'n': Field((int,), 10_000),
        'vartheta0': Field(_NUMBER, 0.1),
        'theta0': Field(_NUMBER, 0.1),
        'tol': Field(_NUMBER, 1e-8),
        'n_sweep': Field((list,), [1_000, 10_000, 100_000], item_types=(int,)),
        'dump_csv': Field((bool,), False),
        'output': Field((str,)),
    },
}


def _type_ok(value, types: tuple) -> bool:
    # bool is an int subclass; only accept it where asked for
    if isinstance(value, bool) and bool not in types:
        return False
    return isinstance(value, types)


def validate_config(command: str, tree: dict) -> dict:
    """
    Check a configuration tree against the command's schema and fill in
    defaults. None values count as absent.

    Args:
        command (str): 'estimate', 'simulate', 'reproduce' or 'lowerbound'
        tree (dict): Parsed configuration

    Returns:
        dict: Validated tree with every schema key present

    Raises:
        ConfigValidationError: Unknown command or key, wrong type, value
            outside its choices, or a missing required key
    """
    if command not in SCHEMAS:
        raise ConfigValidationError(f'Unknown command {command!r}; expected one of {sorted(SCHEMAS)}.')
    if not isinstance(tree, dict):
        raise ConfigValidationError(f'{command} config must be a JSON object.')

    schema = SCHEMAS[command]
    unknown = sorted(set(tree) - set(schema))
    if unknown:
        raise ConfigValidationError(f'Unknown {command} config keys: {unknown}.')

    validated = {}
    for key, spec in schema.items():
        value = tree.get(key)
        if value is None:
            if spec.required:
                raise ConfigValidationError(f'{command} config is missing required key {key!r}.')
            validated[key] = list(spec.default) if isinstance(spec.default, list) else spec.default
            continue
        if not _type_ok(value, spec.types):
            raise ConfigValidationError(
                f'{command}.{key} must be {"/".join(t.__name__ for t in spec.types)}, '
                f'got {type(value).__name__}.'
            )
        if spec.item_types and not all(_type_ok(v, spec.item_types) for v in value):
            raise ConfigValidationError(f'{command}.{key} has elements of the wrong type.')
        if spec.choices and value not in spec.choices:
            raise ConfigValidationError(f'{command}.{key} must be one of {spec.choices}, got {value!r}.')
        validated[key] = value
    return validated
