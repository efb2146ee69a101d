import numpy as np


def replication_seed(master_seed: int, grid_index: int, rep_index: int) -> np.random.SeedSequence:
    """Counter-style seed for one replication; streams are disjoint across tasks."""
    return np.random.SeedSequence([master_seed, grid_index, rep_index])


def replication_rng(master_seed: int, grid_index: int, rep_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(replication_seed(master_seed, grid_index, rep_index)))
