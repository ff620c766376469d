from __future__ import annotations

import numpy as np
import pytest

from coalescence import fixation_coefficients, meeting_times, remeeting_times
from errors import DisconnectedGraphError, OracleSizeError, SelectionStrengthError
from evodyn import GameMatrix, StrategyState, estimate_fixation
from graph_core import from_edge_list, is_connected
from oracle import exact_fixation_markov, fixation_slope
from oracle.markov_chain import _flip_probabilities
from utils import derive_seed, make_rng


def _random_connected_small(rng: np.random.Generator, n: int):
    while True:
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]
        g = from_edge_list(n, pairs)
        if is_connected(g):
            return g


def test_neutral_star(star4) -> None:
    chain = exact_fixation_markov(star4, GameMatrix.donation(2.0), 0.0)
    assert chain.single(0) == pytest.approx(0.5)
    for leaf in (1, 2, 3):
        assert chain.single(leaf) == pytest.approx(1 / 6)
    assert chain.uniform_average() == pytest.approx(0.25)
    assert chain.max_outflow_error < 1e-12


def test_flip_rows_are_sub_stochastic(lollipop) -> None:
    flips, outflow_error = _flip_probabilities(lollipop, GameMatrix.donation(3.0), 0.2)
    assert flips.shape == (32, 5)
    assert flips.min() >= 0.0
    assert np.all(flips.sum(axis=1) <= 1.0 + 1e-12)
    assert np.all(flips[[0, 31]] == 0.0)
    assert np.all(flips[1:31].sum(axis=1) > 0.0)
    assert outflow_error < 1e-12


def test_two_node_chain_always_moves(k2) -> None:
    flips, _ = _flip_probabilities(k2, GameMatrix.donation(2.0), 0.3)
    assert flips[0b01].sum() == pytest.approx(1.0)
    assert flips[0b10].sum() == pytest.approx(1.0)


def test_neutral_fixation_is_degree_weighted(lollipop) -> None:
    chain = exact_fixation_markov(lollipop, GameMatrix.donation(3.0), 0.0)
    k = lollipop.degrees.astype(float)
    for mask in (0b00011, 0b10100, 0b01110):
        state = StrategyState.from_mask(5, mask)
        assert chain.rho(state) == pytest.approx(k[state.s == 1].sum() / k.sum(), abs=1e-10)


def test_absorbing_states(k4) -> None:
    chain = exact_fixation_markov(k4, GameMatrix.donation(2.0), 0.05)
    assert chain.rho(StrategyState([0] * 4)) == 0.0
    assert chain.rho(StrategyState([1] * 4)) == 1.0
    assert np.all((chain.rho_by_initial >= 0.0) & (chain.rho_by_initial <= 1.0))


def test_complete_graph_slope(k4) -> None:
    assert fixation_slope(k4, GameMatrix.donation(2.0, 1.0)) == pytest.approx(-5 / 12, abs=1e-6)
    assert fixation_slope(k4, GameMatrix.donation(-3.0, 1.0)) == pytest.approx(0.0, abs=1e-6)


def test_slope_matches_coalescence_coefficients() -> None:
    rng = make_rng('oracle-slope')
    for n in (4, 5, 6, 7, 8):
        g = _random_connected_small(rng, n)
        summary = remeeting_times(g, meeting_times(g))
        cost, benefit = fixation_coefficients(summary)
        b, c = 4.0, 1.0
        expected = (b * benefit - c * cost) / (2 * n)
        assert fixation_slope(g, GameMatrix.donation(b, c)) == pytest.approx(expected, abs=1e-6)


def test_slope_matches_coalescence_on_thirty_graphs() -> None:
    rng = make_rng('oracle-slope-30')
    for i in range(30):
        n = 4 + i % 5
        g = _random_connected_small(rng, n)
        summary = remeeting_times(g, meeting_times(g))
        cost, benefit = fixation_coefficients(summary)
        b, c = float(rng.uniform(-5.0, 10.0)), 1.0
        expected = (b * benefit - c * cost) / (2 * n)
        assert fixation_slope(g, GameMatrix.donation(b, c)) == pytest.approx(expected, abs=1e-6)


def test_neutral_step_preserves_degree_weighted_cooperation() -> None:
    rng = make_rng('neutral-share')
    for n in (3, 4, 5, 6):
        g = _random_connected_small(rng, n)
        k = g.degrees.astype(float)
        flips, _ = _flip_probabilities(g, GameMatrix.donation(2.0), 0.0)
        for mask in rng.integers(1, (1 << n) - 1, size=12):
            bits = (int(mask) >> np.arange(n)) & 1
            change = np.where(bits == 1, -k, k)
            assert np.dot(flips[mask], change) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.slow
@pytest.mark.parametrize('label', ['mc-0', 'mc-1', 'mc-2'])
def test_monte_carlo_matches_enumeration_under_selection(label) -> None:
    rng = make_rng(label)
    g = _random_connected_small(rng, 7)
    game = GameMatrix.donation(4.0)
    exact = exact_fixation_markov(g, game, 0.05).uniform_average()
    summary = estimate_fixation(g, game, 0.05, 40_000, master_seed=derive_seed(label), workers=4)
    assert summary.within(exact, 4.0)


def test_monte_carlo_matches_enumeration_at_hub(star4) -> None:
    game = GameMatrix.donation(3.0)
    exact = exact_fixation_markov(star4, game, 0.2).single(0)
    summary = estimate_fixation(star4, game, 0.2, 8000, placement=0, master_seed=12)
    assert summary.within(exact, 4.0)


def test_enumeration_cap() -> None:
    path = from_edge_list(15, [(i, i + 1) for i in range(14)])
    with pytest.raises(OracleSizeError):
        exact_fixation_markov(path, GameMatrix.donation(2.0), 0.0)


def test_oracle_refuses_disconnected(two_edges) -> None:
    with pytest.raises(DisconnectedGraphError):
        exact_fixation_markov(two_edges, GameMatrix.donation(2.0), 0.0)


def test_oracle_checks_selection_strength(k3) -> None:
    with pytest.raises(SelectionStrengthError):
        exact_fixation_markov(k3, GameMatrix.donation(2.0), -1.0)
