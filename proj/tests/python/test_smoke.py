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
"""Smoke tests for the Python bindings."""

import math
import pathlib

import pytest

import duelbias

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"


def test_win_probability():
    assert duelbias.win_probability(3.0, 1.0) == pytest.approx(0.75)
    with pytest.raises(duelbias.DuelbiasError):
        duelbias.win_probability(0.0, 1.0)


def test_two_item_fit_recovers_empirical_rate():
    outcomes = [("a", "b")] * 3 + [("b", "a")]
    table = duelbias.fit(["a", "b"], outcomes, alpha=0.0)
    assert table["converged"]
    s = table["scores"]
    assert duelbias.win_probability(s["a"], s["b"]) == pytest.approx(0.75, abs=1e-6)
    assert duelbias.rank_items(s) == ["a", "b"]


def test_kendall_and_schedule():
    assert duelbias.kendall_tau(["1", "2", "3", "4"],
                                ["1", "3", "2", "4"]) == pytest.approx(4 / 6)
    pairs = duelbias.sample_balanced_duels(["a0", "a1"], ["b0", "b1"], 3, seed=1)
    assert len(pairs) == 6


def test_exact_tests():
    assert duelbias.binomial_two_sided(0, 10)["value"] == pytest.approx(2 * 0.5**10)
    chi = duelbias.chi_square_2x2([[40, 960], [10, 990]])
    assert chi["statistic"] > 0
    assert chi["p"]["value"] < 1e-4


def test_rank_statistics():
    y = duelbias.rank_curve([2, 3, 4, 5], [1, 2, 3, 4], [25, 50, 75])
    assert y == pytest.approx([0.0, 25.0, 50.0])
    assert duelbias.triangle_lower_bound(0.52, 0.46, 0.56) == pytest.approx(
        (0.26, 0.20, 0.30))


def test_tags():
    assert duelbias.normalize_tag("Looks tasty") == ["tasty"]
    assert duelbias.normalize_tag("mouthwatering") == ["mouth-watering"]
    assert duelbias.pointwise_kl(0.02, 0.005) == pytest.approx(0.02 * math.log(4))
    ranked = duelbias.distinctive_tags({"crispy": 10, "x": 990},
                                       {"crispy": 40, "x": 960}, min_count=1)
    assert ranked["typical_b"][0]["tag"] == "crispy"


def test_simulation_is_deterministic():
    a = duelbias.simulate_rank_recovery(10, [20, 100], replicates=3, seed=4)
    b = duelbias.simulate_rank_recovery(10, [20, 100], replicates=3, seed=4)
    assert a == b


def test_pipeline_report():
    report = duelbias.run_pipeline(DATA / "items.csv", DATA / "duels.csv",
                                   DATA / "tags.csv", bootstrap=100, seed=3)
    assert len(report["tournaments"]) == 8
    assert set(report["pooled"]) == {"caloric", "healthy", "home", "tasty"}
    assert report["inputs"]["items"].startswith("sha256:")


def test_pipeline_errors_map_to_exceptions():
    with pytest.raises(duelbias.DuelbiasError, match="line 2"):
        duelbias.run_pipeline(DATA / "items.csv", DATA / "duels_bad_winner.csv",
                              bootstrap=0)
    with pytest.raises(duelbias.NumericalError):
        duelbias.run_pipeline(DATA / "items.csv", DATA / "duels_degenerate.csv",
                              bootstrap=100, seed=1, alpha=0.0)
