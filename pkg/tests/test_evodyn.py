from __future__ import annotations

import numpy as np
import pytest
from pydantic import ValidationError

from coalescence import coalescence_report
from errors import SelectionStrengthError, StepLimitExceeded
from evodyn import (
    GameMatrix,
    StrategyState,
    TrialSummary,
    check_selection_strength,
    default_step_cap,
    estimate_fixation,
    payoffs,
    run_to_fixation,
    step,
)
from generators import Family, GeneratorSpec, ensure_connected
from graph_core import degree_moments
from utils import make_rng


def test_game_matrix() -> None:
    game = GameMatrix.donation(3.0, 1.0)
    assert (game.R, game.S, game.T, game.P) == (2.0, -1.0, 3.0, 0.0)
    assert game.as_array().tolist() == [[0.0, 3.0], [-1.0, 2.0]]
    with pytest.raises(ValidationError):
        GameMatrix(R=float('inf'), S=0.0, T=1.0, P=0.0)


def test_strategy_state() -> None:
    state = StrategyState.single(5, 2)
    assert state.cooperators == 1
    assert state.mask() == 4
    assert StrategyState.from_mask(5, 4) == state
    assert not state.is_absorbing
    assert StrategyState([1, 1, 1]).all_cooperate
    with pytest.raises(ValueError):
        StrategyState([0, 2, 1])
    with pytest.raises(ValueError):
        state.s[0] = 1


def test_uniform_states_pay_diagonal_entries(lollipop) -> None:
    game = GameMatrix(R=3.0, S=0.0, T=5.0, P=1.0)
    assert payoffs(lollipop, StrategyState([0] * 5), game) == pytest.approx([1.0] * 5)
    assert payoffs(lollipop, StrategyState([1] * 5), game) == pytest.approx([3.0] * 5)


def test_donation_payoffs_on_triangle(k3) -> None:
    f = payoffs(k3, StrategyState([1, 0, 0]), GameMatrix.donation(3.0, 1.0))
    assert f == pytest.approx([-1.0, 1.5, 1.5])


def test_absorbing_state_is_fixed_point(ring20) -> None:
    rng = make_rng(1)
    game = GameMatrix.donation(2.0)
    for state in (StrategyState([0] * 20), StrategyState([1] * 20)):
        assert step(ring20, state, game, 0.05, rng) == state


def test_neutral_step_transition_on_triangle(k3) -> None:
    rng = make_rng(2)
    start = StrategyState([1, 0, 0])
    game = GameMatrix.donation(2.0)
    extinct = sum(step(k3, start, game, 0.0, rng).cooperators == 0 for _ in range(6000))
    assert extinct / 6000 == pytest.approx(1 / 3, abs=0.025)


def test_step_flips_at_most_one_node(lollipop) -> None:
    rng = make_rng('one-flip')
    game = GameMatrix.donation(3.0)
    for _ in range(500):
        state = StrategyState(rng.integers(0, 2, size=5))
        after = step(lollipop, state, game, 0.1, rng)
        assert np.count_nonzero(after.s != state.s) <= 1
        assert abs(after.cooperators - state.cooperators) <= 1


def test_neutral_step_has_no_drift_in_degree_weighted_cooperation(lollipop) -> None:
    rng = make_rng('neutral-drift')
    k = lollipop.degrees
    game = GameMatrix.donation(2.0)
    for state in (StrategyState([1, 1, 0, 0, 0]), StrategyState([0, 0, 1, 0, 1])):
        before = k[state.s == 1].sum()
        changes = np.array([
            k[step(lollipop, state, game, 0.0, rng).s == 1].sum() - before for _ in range(20_000)
        ], dtype=float)
        assert abs(changes.mean()) < 4 * changes.std(ddof=1) / np.sqrt(len(changes))


def test_run_to_fixation_trivial_starts(k4) -> None:
    rng = make_rng(3)
    game = GameMatrix.donation(2.0)
    assert run_to_fixation(k4, StrategyState([1] * 4), game, 0.1, rng)
    assert not run_to_fixation(k4, StrategyState([0] * 4), game, 0.1, rng)


def test_step_cap(ring20) -> None:
    assert default_step_cap(20) == 4_000_000
    with pytest.raises(StepLimitExceeded):
        run_to_fixation(ring20, StrategyState.single(20, 0), GameMatrix.donation(2.0), 0.0, make_rng(4), max_steps=1)


def test_selection_strength_guard() -> None:
    game = GameMatrix.donation(2.0, 1.0)
    check_selection_strength(game, 0.5)
    with pytest.raises(SelectionStrengthError):
        check_selection_strength(game, -1.0)
    with pytest.raises(SelectionStrengthError):
        check_selection_strength(game, 1.0 + 1e-3)


def test_trial_summary() -> None:
    summary = TrialSummary(trials=400, fixations_C=100)
    assert summary.estimate == 0.25
    assert summary.std_error == pytest.approx(np.sqrt(0.25 * 0.75 / 400))
    assert summary.within(0.26, 1.0)
    with pytest.raises(ValidationError):
        TrialSummary(trials=10, fixations_C=11)


def test_neutral_fixation_on_triangle(k3) -> None:
    summary = estimate_fixation(k3, GameMatrix.donation(2.0), 0.0, 6000, placement=0, master_seed=5)
    assert summary.within(1 / 3, 4.0)


def test_neutral_uniform_placement_gives_one_over_n() -> None:
    g = ensure_connected(GeneratorSpec(family=Family.ER, params={'n': 20, 'p': 0.3}, seed=6))
    summary = estimate_fixation(g, GameMatrix.donation(2.0), 0.0, 20_000, master_seed=7)
    assert summary.within(1 / 20, 3.5)


def test_neutral_fixed_placement_follows_degree() -> None:
    g = ensure_connected(GeneratorSpec(family=Family.ER, params={'n': 20, 'p': 0.3}, seed=6))
    hub = int(np.argmax(g.degrees))
    expected = g.degrees[hub] / (g.n * degree_moments(g).mu1)
    summary = estimate_fixation(g, GameMatrix.donation(2.0), 0.0, 20_000, placement=hub, master_seed=8)
    assert summary.within(expected, 4.0)


def test_estimate_independent_of_worker_count(star4) -> None:
    game = GameMatrix.donation(4.0)
    single = estimate_fixation(star4, game, 0.05, 400, master_seed=9, workers=1)
    for workers in (3, 4, 8):
        assert estimate_fixation(star4, game, 0.05, 400, master_seed=9, workers=workers) == single


def test_placement_validation(k4) -> None:
    with pytest.raises(ValueError):
        estimate_fixation(k4, GameMatrix.donation(2.0), 0.0, 10, placement=4)
    with pytest.raises(ValueError):
        estimate_fixation(k4, GameMatrix.donation(2.0), 0.0, 0)


@pytest.mark.slow
def test_weak_selection_sign_matches_critical_ratio() -> None:
    g = ensure_connected(GeneratorSpec(family=Family.ER, params={'n': 20, 'p': 0.3}, seed=10))
    ratio = coalescence_report(g).ratio
    assert ratio.regime == 'threshold'
    above = estimate_fixation(g, GameMatrix.donation(2.0 * ratio.value), 0.025, 200_000, master_seed=11, workers=4)
    assert above.estimate - 1 / 20 > 3 * above.std_error
