import pytest
from src.utils.config import SCHEMAS, validate_config
from src.utils.errors import ConfigValidationError

# ----------- Defaults Tests ---------- #
def test_defaults_filled():
    config = validate_config('lowerbound', {})
    assert config['kind'] == 'variance'
    assert config['n'] == 10_000
    assert config['n_sweep'] == [1_000, 10_000, 100_000]
    assert config['A'] is None
    assert set(config) == set(SCHEMAS['lowerbound'])

def test_default_lists_are_copies():
    first = validate_config('lowerbound', {})
    first['n_sweep'].append(5)
    assert validate_config('lowerbound', {})['n_sweep'] == [1_000, 10_000, 100_000]

def test_none_counts_as_absent():
    assert validate_config('estimate', {'input': 'z.csv', 'gamma': None})['gamma'] == 0.2

def test_int_accepted_for_float():
    assert validate_config('estimate', {'input': 'z.csv', 'gamma': 0})['gamma'] == 0

# ----------- Rejection Tests ---------- #
@pytest.mark.parametrize('command, tree', [
    ('estimate', {}),
    ('estimate', {'input': 'z.csv', 'colour': 'red'}),
    ('estimate', {'input': 'z.csv', 'null_mode': 'guess'}),
    ('estimate', {'input': 3}),
    ('simulate', {'setting': '1', 'n': 10.5}),
    ('simulate', {'setting': '1', 'n': True}),
    ('simulate', {'setting': '1', 'grid': [0.1, 'x']}),
    ('reproduce', {}),
    ('lowerbound', {'dump_csv': 1}),
    ('lowerbound', {'n_sweep': [1000, 2.5]}),
    ('plot', {}),
])
def test_invalid_configs(command, tree):
    with pytest.raises(ConfigValidationError):
        validate_config(command, tree)

def test_tree_must_be_object():
    with pytest.raises(ConfigValidationError):
        validate_config('estimate', ['input'])
