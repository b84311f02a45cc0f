import json
from fractions import Fraction

import pytest

from subsums.census import (TABLE1, adjacent, count_unique, enumerate_unique, extension_witness,
                            is_feasible_extension, lower_bound_from_count)
from subsums.configurations import (PartialConfiguration, all_configurations, is_unique,
                                    prefix_system)
from subsums.feasibility import strict_feasible
from subsums.numbers import gamma_half_factorial, one_decimal, truncate


def test_extension_examples():
    assert not is_feasible_extension(PartialConfiguration(3, (1,)), 2, 2)
    assert is_feasible_extension(PartialConfiguration(2), 1, 1)
    # the last window length to carry constraints, i = n - 1
    assert not is_feasible_extension(PartialConfiguration(6, (2, 4, 2, 1)), 5, 2)


def test_extension_argument_checks():
    with pytest.raises(ValueError):
        is_feasible_extension(PartialConfiguration(3, (1,)), 3, 1)
    with pytest.raises(ValueError):
        is_feasible_extension(PartialConfiguration(3, (1,)), 2, 3)
    with pytest.raises(ValueError):
        is_feasible_extension(PartialConfiguration(3), 1, 0)


def test_adjacent_both_directions():
    assert adjacent((1,), 2, 2)       # p_1 + 1 = j
    assert adjacent((3,), 2, 1)       # j + 2 = p_1
    assert not adjacent((2,), 2, 1)


def test_extension_witness_satisfies_rows():
    P = PartialConfiguration(5, (3, 3))
    w = extension_witness(P, 3, 3)
    system = prefix_system(5, (3, 3, 3))
    assert w is not None
    assert all(sum(c * x for c, x in zip(r, w)) > 0 for r in system.rows)


@pytest.mark.parametrize("n", range(1, 9))
def test_counts_match_table(n):
    assert count_unique(n).unique_count == TABLE1[n]


@pytest.mark.parametrize("n", range(1, 7))
def test_census_equals_brute_force(n):
    brute = {P.p for P in all_configurations(n) if is_unique(P).unique}
    assert len(brute) == count_unique(n).unique_count
    assert set(enumerate_unique(n)) == brute


@pytest.mark.parametrize("n", range(1, 7))
def test_adjacency_pruning_is_safe(n):
    assert enumerate_unique(n, adjacency=True).keys() == enumerate_unique(n, adjacency=False).keys()


@pytest.mark.parametrize("n", range(4, 7))
def test_infeasible_prefixes_stay_infeasible(n):
    # spot checks: once a prefix system is infeasible, every extension is too
    checked = 0
    for P in all_configurations(n):
        for cut in range(1, n - 1):
            if strict_feasible(prefix_system(n, P.p[:cut]), n).feasible:
                continue
            assert not strict_feasible(prefix_system(n, P.p[: n - 1]), n).feasible
            checked += 1
            break
    assert checked > 0


@pytest.mark.parametrize("shards", [1, 2, 3])
def test_shard_invariance(shards):
    rep = count_unique(7, shards)
    assert rep.unique_count == 586
    assert rep.to_dict(timing=False) | {"shards": 0} == count_unique(7, 1).to_dict(timing=False) | {"shards": 0}


def test_report_fields():
    rep = count_unique(6)
    assert rep.gamma == "6.00000000000000000000000000000"
    assert rep.ratio.startswith("24.66666666")
    assert rep.nodes_visited >= rep.lp_calls
    assert rep.unique_count <= 720
    assert "elapsed_seconds" not in rep.to_dict(timing=False)


def test_checkpoint_resume(tmp_path):
    ckpt = tmp_path / "c.json"
    full = count_unique(6, checkpoint=ckpt)
    doc = json.loads(ckpt.read_text())
    assert doc["version"] == 1 and doc["running_count"] == 148
    # drop half the completed units and resume
    doc["completed"] = doc["completed"][::2]
    ckpt.write_text(json.dumps(doc))
    seen = []
    resumed = count_unique(6, checkpoint=ckpt, progress=lambda d, t, c: seen.append(d))
    assert resumed.unique_count == full.unique_count == 148
    assert seen[0] == len(doc["completed"]) + 1


def test_mismatched_checkpoint_ignored(tmp_path):
    ckpt = tmp_path / "c.json"
    count_unique(5, checkpoint=ckpt)
    assert count_unique(6, checkpoint=ckpt).unique_count == 148


def test_count_unique_argument_checks():
    with pytest.raises(ValueError):
        count_unique(0)
    with pytest.raises(ValueError):
        count_unique(3, 0)


@pytest.mark.parametrize("k,h", [(1, 0), (2, 1), (3, 1), (4, 2), (9, 2), (10, 3), (71562, 11), (59049, 10)])
def test_lower_bound(k, h):
    assert lower_bound_from_count(k) == h


def test_lower_bound_rejects_zero():
    with pytest.raises(ValueError):
        lower_bound_from_count(0)


def test_published_ratio_convention():
    # U(n) over the one-decimal half-factorial, cut to 2 places
    published = ["2.00", "3.07", "6.00", "10.90", "24.66", "50.51", "116.25", "255.02",
                 "596.35", "1313.03", "3086.85", "6824.34", "15668.31"]
    ours = [truncate(TABLE1[n] / Fraction(one_decimal(gamma_half_factorial(n))), 2) for n in range(2, 15)]
    assert ours == published
