# Copyright 2026 The Duelbias Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Bradley-Terry duel analysis: fitting, bias statistics and tag rankings."""

import json

from duelbias._core import (
    DuelbiasError,
    NumericalError,
    binomial_two_sided,
    chi_square_2x2,
    distinctive_tags,
    fit,
    kendall_tau,
    median_percentile_rank,
    normalize_tag,
    percentile_rank,
    pointwise_kl,
    rank_curve,
    rank_items,
    run_pipeline_json,
    sample_balanced_duels,
    score_bias,
    simulate_rank_recovery,
    triangle_lower_bound,
    win_probability,
)


def run_pipeline(items, duels, tags=None, **options):
    """Runs the full analysis on CSV files and returns the report as a dict."""
    return json.loads(run_pipeline_json(str(items), str(duels),
                                        None if tags is None else str(tags),
                                        **options))


__all__ = [
    "DuelbiasError",
    "NumericalError",
    "binomial_two_sided",
    "chi_square_2x2",
    "distinctive_tags",
    "fit",
    "kendall_tau",
    "median_percentile_rank",
    "normalize_tag",
    "percentile_rank",
    "pointwise_kl",
    "rank_curve",
    "rank_items",
    "run_pipeline",
    "sample_balanced_duels",
    "score_bias",
    "simulate_rank_recovery",
    "triangle_lower_bound",
    "win_probability",
]
