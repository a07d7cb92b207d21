import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compmachine import Configuration, CycleReport, IncompleteConfiguration, NotFoundWithin, detect_cycle, orbit, step, validate_machine

from conftest import chain_doc, random_machine_doc
from oracles import ca_step
from test_machine import CONST_FIGURE, NOT_FIGURE, OR_FIGURE, RULE54_FIGURE, RULE122_FIGURE, XOR_FIGURE

# Orbit rows read off the orbit figures (arrows a1..a10).
EX1_ROWS = [
    "1101101001", "0010010011", "0111111100", "1000000110", "1100001001",
    "0010000011", "0111001100", "1000100110", "1101111001",
]
EX2_ROWS = [
    "1101101001", "1111111011", "1000011111", "1100111101", "1111111111",
    "1000011101", "1100111111", "1111111101", "1000011111", "1100111101",
]

# Neighbourhoods as listed for the example machine, as 0-based arrow indices.
N1 = [(7,)]
N2 = [(1, 2), (8, 9)]
N3 = [(5, 6), (9, 10)]
N4 = [(1, 2, 3), (2, 3, 4), (3, 4, 5), (4, 5, 6), (8, 9, 10)]


def figure_fn(figure):
    """Truth table listed all-alive first -> function of the input states."""
    arity = {2: 1, 4: 2, 8: 3}[len(figure)]
    rows = dict(zip(itertools.product((1, 0), repeat=arity), figure))
    return lambda *s: rows[s]


def oracle_table(d1, d23, d4):
    plan = [None] * 10
    for (a,) in N1:
        plan[a - 1] = (figure_fn(d1), [a - 1])
    for a, b in N2:
        plan[a - 1] = (figure_fn(d23), [a - 1, b - 1])
    for a, b in N3:
        plan[b - 1] = (figure_fn(d23), [a - 1, b - 1])
    for a, b, c in N4:
        plan[b - 1] = (figure_fn(d4), [a - 1, b - 1, c - 1])
    return plan


EX1_ORACLE = oracle_table(NOT_FIGURE, XOR_FIGURE, RULE54_FIGURE)
EX2_ORACLE = oracle_table(CONST_FIGURE, OR_FIGURE, RULE122_FIGURE)


def cfg(m, bits):
    return Configuration.from_bits(m.quiver.arrows, bits)


def test_worked_transitions(example1, example2):
    assert step(example1, cfg(example1, "1101101001")).bits == "0010010011"
    assert step(example1, cfg(example1, "0010010011")).bits == "0111111100"
    assert step(example2, cfg(example2, "1101101001")).bits == "1111111011"


def test_orbit_rows_match_figures(example1, example2):
    assert [c.bits for c in orbit(example1, None, 8).configurations] == EX1_ROWS
    assert [c.bits for c in orbit(example2, None, 9).configurations] == EX2_ROWS


def test_steps_zero(example1):
    orb = orbit(example1, None, 0)
    assert [c.bits for c in orb.configurations] == ["1101101001"]
    with pytest.raises(ValueError):
        orbit(example1, None, -1)


@pytest.mark.parametrize("which", ["ex1", "ex2"])
def test_step_matches_oracle_on_every_configuration(which, example1, example2):
    m, table = (example1, EX1_ORACLE) if which == "ex1" else (example2, EX2_ORACLE)
    for bits in itertools.product("01", repeat=10):
        bits = "".join(bits)
        assert step(m, cfg(m, bits)).bits == ca_step(bits, table)


def test_updates_are_synchronous(example1):
    # An in-place left-to-right sweep gives a different t=1 row.
    states = [int(b) for b in "1101101001"]
    for i, (fn, cells) in enumerate(EX1_ORACLE):
        states[i] = fn(*[states[j] for j in cells])
    sequential = "".join(map(str, states))
    assert sequential != "0010010011"
    assert step(example1, cfg(example1, "1101101001")).bits == "0010010011"


def test_step_is_deterministic(example1):
    c = cfg(example1, "1011001110")
    assert step(example1, c) == step(example1, c)


def test_incomplete_configuration(example1):
    with pytest.raises(IncompleteConfiguration):
        Configuration.from_bits(example1.quiver.arrows, "101")
    with pytest.raises(IncompleteConfiguration):
        Configuration.from_mapping(example1.quiver.arrows, {"a1": 1})
    with pytest.raises(IncompleteConfiguration):
        step(example1, Configuration(("a1",), (1,)))


def test_cycles(example1, example2):
    assert detect_cycle(example1, None, 10000) == CycleReport(5, 4)
    assert detect_cycle(example2, None, 10000) == CycleReport(2, 6)


def test_example1_period_four_tail(example1):
    rows = [c.bits for c in orbit(example1, None, 12).configurations]
    assert rows[5:9] == rows[9:13]
    assert len(set(rows[:9])) == 9


def test_not_found_within(example1):
    assert detect_cycle(example1, None, 8) == NotFoundWithin(8)
    assert detect_cycle(example1, None, 9) == CycleReport(5, 4)
    with pytest.raises(ValueError):
        detect_cycle(example1, None, 0)


@pytest.mark.parametrize("c0", ["101", "000", "111"])
def test_zero_rules_reach_dead_fixed_point(c0):
    m = validate_machine(chain_doc(["", "", ""], rules={"delta1": 0, "delta2": 0, "delta3": 0, "delta4": 0}, config=c0))
    report = detect_cycle(m, None, 10)
    assert report.period == 1 and report.preperiod <= 1


def brute_cycle(m, c0):
    """Pre-period/period by comparing every pair of orbit rows."""
    n = len(m.quiver.arrows)
    rows = [c.states for c in orbit(m, c0, (1 << n) + 1).configurations]
    for u in range(1, len(rows)):
        for p in range(u):
            if rows[p] == rows[u]:
                return p, u - p


@given(st.integers(0, 100_000))
@settings(max_examples=60, deadline=None)
def test_detect_cycle_matches_pairwise_search(seed):
    m = validate_machine(random_machine_doc(random.Random(seed), max_arrows=7))
    report = detect_cycle(m, None, (1 << len(m.quiver.arrows)) + 1)
    assert (report.preperiod, report.period) == brute_cycle(m, m.initial_configuration)
    assert report.preperiod + report.period <= 1 << len(m.quiver.arrows)


@given(st.integers(0, 100_000), st.integers(0, 30))
@settings(max_examples=40, deadline=None)
def test_orbit_consistency(seed, n):
    m = validate_machine(random_machine_doc(random.Random(seed)))
    orb = orbit(m, None, n)
    assert len(orb) == n + 1
    for k in range(n):
        assert orb[k + 1] == step(m, orb[k])
