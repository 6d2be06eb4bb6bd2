"""Simulation and verification toolkit for learning with agent improvements."""

import json

from . import _improvelearn
from ._improvelearn import (
    ArgumentError,
    ImprovelearnError,
    derive_seed,
    teach,
    threshold_population_loss,
    wbce_loss,
    zero_error_sample_size,
)

__version__ = "0.1.0"


def scenario_ids():
    return list(_improvelearn.scenario_ids())


def catalogue():
    return json.loads(_improvelearn.catalogue_json())


def run_scenario(scenario, seed=0, jobs=1, **params):
    """Run a registered scenario; returns columns, rows, metrics and expectations."""
    text = _improvelearn.run_scenario_json(scenario, json.dumps(params), seed, jobs)
    return json.loads(text)


__all__ = [
    "ArgumentError",
    "ImprovelearnError",
    "catalogue",
    "derive_seed",
    "run_scenario",
    "scenario_ids",
    "teach",
    "threshold_population_loss",
    "wbce_loss",
    "zero_error_sample_size",
]
