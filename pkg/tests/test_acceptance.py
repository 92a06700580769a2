"""Acceptance criteria, one test per criterion.

Each test prints a ``[PASS]``/``[FAIL]`` line; run with ``pytest -s`` (or
``python tests/test_acceptance.py``) to see them.
"""

import contextlib
import json
import math
import sys

import numpy as np
import pytest

from eprbell import (
    LambdaModel,
    Outcome,
    Scenario,
    Side,
    chsh_value,
    enumerate_strategies,
    epr_bell_derivation,
    local_polytope_membership,
    max_abs_chsh,
    mix_strategies,
    oi_check,
    orthodox_model,
    pi_check,
    planar_direction,
    sample_pairs,
    singlet_behavior,
    singlet_joint,
    singlet_marginal,
    strategy_behavior,
    two_part_argument,
)
from eprbell.cli import main
from eprbell.lhv import NOT_BELL_LOCAL

from conftest import single_pair

GRID = np.linspace(0.0, math.pi, 1000)
Z = planar_direction(0.0)


@contextlib.contextmanager
def criterion(capsys, label):
    try:
        yield
    except BaseException:
        with capsys.disabled():
            print(f"\n[FAIL] {label}")
        raise
    with capsys.disabled():
        print(f"\n[PASS] {label}")


def canonical_chsh():
    return Scenario.planar([0.0, math.pi / 2], [math.pi / 4, 3 * math.pi / 4])


def test_ac01_joint_probabilities(capsys):
    with criterion(capsys, "AC1 joint probabilities on 1000-point grid (1e-12)"):
        worst_formula = worst_norm = 0.0
        for theta in GRID:
            p = singlet_joint(Z, planar_direction(theta))
            s2, c2 = 0.5 * math.sin(theta / 2) ** 2, 0.5 * math.cos(theta / 2) ** 2
            worst_formula = max(
                worst_formula,
                abs(p.p_pp - s2), abs(p.p_mm - s2), abs(p.p_pm - c2), abs(p.p_mp - c2),
            )
            worst_norm = max(worst_norm, abs(sum(p.as_tuple()) - 1.0))
        assert worst_formula <= 1e-12
        assert worst_norm <= 1e-12


def test_ac02_marginals(capsys):
    with criterion(capsys, "AC2 marginals equal 1/2 for every direction"):
        for side in Side:
            for out in Outcome:
                assert singlet_marginal(side, out) == 0.5
        for theta in GRID:
            p = singlet_joint(Z, planar_direction(theta))
            for marginal in (p.p_pp + p.p_pm, p.p_mp + p.p_mm, p.p_pp + p.p_mp, p.p_pm + p.p_mm):
                assert abs(marginal - 0.5) <= 1e-12


def test_ac03_derivation(capsys):
    with criterion(capsys, "AC3 completeness + factorization -> all-1/4 table; theta=0 inconsistent by 0.25"):
        r0 = epr_bell_derivation(single_pair(0.0))
        assert np.all(r0.factorized_table.table == 0.25)
        assert r0.inconsistent
        assert abs(r0.max_cell_deviation - 0.25) <= 1e-12
        for premise in ("A1", "A2", "B", "C"):
            assert premise in r0.verdict
        assert "At least one of A1, A2, B, C must be false" in r0.verdict
        r90 = epr_bell_derivation(single_pair(math.pi / 2))
        assert np.all(r90.factorized_table.table == 0.25)
        assert not r90.inconsistent


def test_ac04_outcome_independence(capsys):
    with criterion(capsys, "AC4 orthodox model at theta=0: OI deviation 0.5, PI deviation 0"):
        s = single_pair(0.0)
        m = orthodox_model(s)
        assert abs(oi_check(m, s) - 0.5) <= 1e-12
        assert pi_check(m, s) <= 1e-12


def test_ac05_local_bound(capsys):
    with criterion(capsys, "AC5 max |CHSH| over 16 strategies is 2; 1000 random mixtures local"):
        s = canonical_chsh()
        strategies = enumerate_strategies(s)
        assert len(strategies) == 16
        labelings = [(0, 1, 0, 1), (1, 0, 0, 1), (0, 1, 1, 0), (1, 0, 1, 0)]
        best = max(
            abs(chsh_value(strategy_behavior(st, s), *idx)) for st in strategies for idx in labelings
        )
        assert best == 2.0

        rng = np.random.default_rng(20240601)
        for _ in range(1000):
            w = rng.dirichlet(np.full(16, rng.choice([0.1, 1.0, 10.0])))
            b = mix_strategies(s, w)
            assert max_abs_chsh(b)[0] <= 2 + 1e-9
            r = local_polytope_membership(b)
            assert r.feasible
            assert min(r.weights) >= 0.0
            assert abs(sum(r.weights) - 1.0) <= 1e-9
            recon = mix_strategies(s, r.weights).table
            assert np.abs(recon - b.table).max() <= 1e-9


def test_ac06_bell_witness(capsys):
    with criterion(capsys, "AC6 canonical CHSH singlet: |S| = 2*sqrt(2) and LP infeasible"):
        b = singlet_behavior(canonical_chsh())
        value, _ = max_abs_chsh(b)
        assert abs(value - 2 * math.sqrt(2)) <= 1e-9
        r = local_polytope_membership(b)
        assert not r.feasible
        assert r.l1_distance > 1e-6


def test_ac07_parallel_pair_is_local(capsys):
    with criterion(capsys, "AC7 theta=0 pair is reproduced by the 1/2-1/2 anti-correlated mixture"):
        s = single_pair(0.0)
        r = local_polytope_membership(singlet_behavior(s))
        assert r.feasible
        strategies = enumerate_strategies(s)
        support = {k: w for k, w in enumerate(r.weights) if w > 1e-12}
        assert set(support) == {1, 2}
        for k in support:
            assert abs(support[k] - 0.5) <= 1e-9
            st = strategies[k]
            assert st.a_outputs[0] == -st.b_outputs[0]


def test_ac08_two_part_composition(capsys):
    with criterion(capsys, "AC8 two-part argument gives not-Bell-Locality; degenerate inputs flip sub-verdicts"):
        parallel = single_pair(0.0)
        v = two_part_argument(parallel, canonical_chsh())
        assert v.conclusion == NOT_BELL_LOCAL
        assert v.part1_established and v.part2_established

        v1 = two_part_argument(single_pair(math.pi / 2), canonical_chsh())
        assert not v1.part1_established and v1.part2_established
        assert v1.conclusion != NOT_BELL_LOCAL

        flat = Scenario.planar([0.0, math.pi], [math.pi / 2, 3 * math.pi / 2])
        assert np.allclose(flat.angles(), math.pi / 2)
        v2 = two_part_argument(parallel, flat)
        assert v2.part1_established and not v2.part2_established
        assert v2.conclusion != NOT_BELL_LOCAL


def test_ac09_sampler(capsys):
    with criterion(capsys, "AC9 sampler: theta=pi/2 counts within 4 sigma, theta=0 never (+,+)"):
        n = 100_000
        bound = 4 * math.sqrt(n * 0.25 * 0.75)
        c = sample_pairs(single_pair(math.pi / 2), 0, 0, n, seed=12345)
        assert sum(c.as_tuple()) == n
        for k in c.as_tuple():
            assert abs(k - 25_000) <= bound
        c0 = sample_pairs(single_pair(0.0), 0, 0, n, seed=12345)
        assert c0.pp == 0


def _run_cli(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    assert code == 0
    return out


def test_ac10_determinism(capsys, tmp_path):
    with criterion(capsys, "AC10 repeated CLI runs produce byte-identical CSV/JSON"):
        outputs = []
        for k in range(2):
            csv_path = tmp_path / f"sweep{k}.csv"
            _run_cli(capsys, ["sweep", "--steps", "50", "--out", str(csv_path)])
            outputs.append(csv_path.read_bytes())
        assert outputs[0] == outputs[1]

        scen = tmp_path / "chsh.json"
        scen.write_text(json.dumps({
            "settings_a": [[0, 0, 1], [1, 0, 0]],
            "settings_b": [[math.sqrt(0.5), 0, math.sqrt(0.5)], [math.sqrt(0.5), 0, -math.sqrt(0.5)]],
        }))
        for argv in (
            ["--json", "lhv", "--singlet", str(scen)],
            ["--json", "epr", str(scen)],
            ["--json", "two-part"],
            ["--json", "--seed", "99", "sample", "--theta-deg", "90", "-n", "10000"],
        ):
            assert _run_cli(capsys, argv) == _run_cli(capsys, argv)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-s", "-q"]))
