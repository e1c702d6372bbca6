"""Longest common substrings of run-length encoded sequences."""

import json

from ._core import (
    RlematchError,
    bernoulli_cylinder_sum_exact,
    h2_rle_bernoulli,
    h2_rle_markov2,
    h2_rle_markovN,
    lcs,
    lcs_multi,
    m_rle,
    m_tilde,
    plugin_estimate,
    q2_truncated_eigen,
    rle_decode,
    rle_encode,
    run_experiment_json,
)


def run_experiment(config):
    """Run an experiment described by a dict; returns the JSON report as a dict."""
    return json.loads(run_experiment_json(json.dumps(config), "json"))


__all__ = [
    "RlematchError",
    "bernoulli_cylinder_sum_exact",
    "h2_rle_bernoulli",
    "h2_rle_markov2",
    "h2_rle_markovN",
    "lcs",
    "lcs_multi",
    "m_rle",
    "m_tilde",
    "plugin_estimate",
    "q2_truncated_eigen",
    "rle_decode",
    "rle_encode",
    "run_experiment",
    "run_experiment_json",
]
