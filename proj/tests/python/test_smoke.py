"""Smoke tests for the compiled rarewalk module."""

from fractions import Fraction

import pytest

import rarewalk as rw


def test_walk_statistics():
    assert rw.rare_edge_count([1, 1, 1]) == (3, 3, 0)
    assert rw.rare_edge_count([1, -1]) == (0, 0, 0)
    assert rw.rare_edge_count([1, -1, -1]) == (1, 0, 1)
    assert rw.rare_site_count([1, 1, -1, -1]) == 1
    assert rw.hitting_time([1, -1], 1) == 1
    assert rw.hitting_time([-1, 1], 1) is None


def test_exact_expectations():
    assert rw.expectation_alpha_recursion(3) == Fraction(5, 4)
    assert rw.expectation_alpha_recursion(5) == Fraction(11, 8)
    for n in (1, 2, 7, 40):
        assert rw.expectation_alpha_ladder(n) == rw.expectation_alpha_recursion(n)
    assert rw.enum_expectation_alpha(3) == Fraction(5, 4)
    assert rw.enum_expectation_f1(9) == 2


def test_distribution_and_moments():
    dist = rw.enum_distribution_alpha(3)
    assert dist == {0: Fraction(1, 4), 1: Fraction(1, 2), 3: Fraction(1, 4)}
    assert rw.enum_moment_alpha_k(3, 2) == Fraction(3, 4)
    assert rw.expected_alpha_k(3, 2) == Fraction(3, 4)
    assert rw.expected_alpha_k(3, 2, exact=False) == pytest.approx(0.75)


def test_event_probabilities():
    assert rw.prob_c2(3) == Fraction(1, 8)
    assert rw.prob_d1(2) == Fraction(1, 2)
    assert rw.prob_d2(3) == Fraction(1, 4)
    assert rw.prob_c2(5) == rw.enum_event_probability("c2", 5)
    assert rw.double_factorial(6) == 48
    assert rw.double_factorial(-1) == 1


def test_bijections():
    assert rw.flip_after_last_visit([1, 1, -1, 1]) == [1, 1, -1, -1]
    start, steps = rw.reflect_before_first_hit([-1, 1])
    assert start == -2 and steps == [1, 1]
    report = rw.verify_injection_sets(8)
    assert report["all_pass"]


def test_monte_carlo_determinism():
    a = rw.estimate_expectation(100, 2000, 42, threads=1)
    b = rw.estimate_expectation(100, 2000, 42, threads=4)
    assert a["mean"] == b["mean"]
    assert a["std_error"] == b["std_error"]

    tail = rw.estimate_tail(64, 0.25, 2000, 7)
    assert 0 <= tail["ci_low"] <= tail["p_hat"] <= tail["ci_high"] <= 1

    s = rw.simulate_replica([1, 1, -1, -1])
    assert s["alpha"] == 0 and s["f1"] == 1 and s["terminal_position"] == 0


def test_limsup_probe():
    probe = rw.limsup_probe(1000, 2, 10, 3)
    assert len(probe["per_replica_max"]) == 10
    q = probe["quantiles"]
    assert q == tuple(sorted(q))
