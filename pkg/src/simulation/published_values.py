"""
Published reference MSE values for the standard settings, keyed by
(setting id, estimator), in the units each table uses. Values are listed
in grid order.
"""

UNITS = {
    '1': 1e-4, '2': 1e-5, '3a': 1e-5, '3b': 1e-5,
    '4a': 1e-4, '4b': 1e-4, '4c': 1e-3,
}

PUBLISHED = {
    ('1', 'eps_plugin'): (15.1, 11.8, 8.58, 5.90, 4.14, 3.81, 6.33, 16.5, 46.1, 91.6, 142),
    ('1', 'u0_cj'): (0.37, 0.93, 1.79, 3.11, 5.40, 9.65, 17.8, 33.3, 63.0, 114, 204),
    ('1', 'sigma0_sq_cj'): (2.31, 1.57, 1.07, 0.78, 0.68, 0.77, 1.08, 1.70, 2.83, 4.89, 8.84),

    ('2', 'eps_plugin'): (306.6, 102.6, 43.9, 26.1, 17.7, 4.6, 1.7, 0.2),
    ('2', 'u0_cj'): (596.6, 143.8, 60.5, 31.7, 19.3, 5.8, 1.9, 0.2),
    ('2', 'sigma0_sq_cj'): (74.6, 19.6, 7.1, 3.95, 2.5, 0.6, 0.2, 0.01),

    ('3a', 'eps_cj'): (5.7, 7.7, 9.0, 9.9, 9.3, 10.3, 10.0, 11.2, 11.5, 10.1),
    ('3a', 'eps_efron'): (3.3, 14.6, 33.4, 60.3, 95.8, 139, 190, 249, 316, 394),
    ('3a', 'eps_storey'): (2.4, 8.9, 19.5, 32.9, 49.9, 72.8, 99.7, 130, 163, 195),

    ('3b', 'eps_plugin'): (67.3, 53.7, 41.8, 31.7, 24.0, 17.6, 13.2, 9.4, 7.0, 4.8),
    ('3b', 'eps_efron'): (172, 164, 153, 146, 138, 129, 122, 114, 108, 100),
    ('3b', 'eps_storey'): (89.0, 81.6, 72.2, 67.7, 61.9, 55.4, 50.3, 46.7, 43.5, 41.0),

    ('4a', 'eps_cj'): (8.17, 7.28, 6.35, 5.65, 4.92, 4.20, 3.78, 3.02, 2.51, 2.01),
    ('4a', 'eps_storey'): (3.25, 6.79, 9.76, 14.35, 19.93, 19.69, 23.68, 21.67, 21.01, 20.18),

    ('4b', 'eps_plugin'): (11.9, 10.7, 9.7, 8.7, 7.9, 7.1, 6.5, 5.8, 5.3, 4.8),
    ('4b', 'u0_cj'): (0.16, 0.18, 0.19, 0.18, 0.19, 0.19, 0.20, 0.22, 0.23, 0.23),
    ('4b', 'sigma0_sq_cj'): (4.1, 4.1, 4.2, 4.2, 4.0, 3.9, 3.7, 3.6, 3.5, 3.3),

    ('4c', 'eps_plugin'): (8.8, 10.3, 16.6, 25.2, 34.7, 43.2),
    ('4c', 'u0_cj'): (10.4, 37.5, 63.8, 94.4, 131.7, 150.0),
    ('4c', 'sigma0_cj'): (5.4, 13.5, 23.0, 34.8, 49.3, 52.1),
    ('4c', 'eps_efron'): (34.3, 34.1, 33.5, 33.2, 33.2, 32.3),
    ('4c', 'u0_efron'): (1.2, 2.8, 4.0, 5.4, 7.0, 8.8),
    ('4c', 'sigma0_efron'): (14.7, 18.1, 21.7, 28.1, 34.7, 33.5),
}


def published_mse(setting_id: str, estimator: str, grid: tuple, value) -> float | None:
    """
    Reference MSE in raw units at ``value`` of the default ``grid``, or None
    when there is no published entry.
    """
    entry = PUBLISHED.get((setting_id, estimator))
    if entry is None or value not in grid:
        return None
    index = list(grid).index(value)
    if index >= len(entry):
        return None
    return entry[index] * UNITS[setting_id]
