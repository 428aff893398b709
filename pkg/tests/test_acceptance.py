"""Acceptance gate: one test per shipped guarantee, run with pytest -v for
one pass/fail line each.

Every expected value here is computed independently inside the test (integer
arithmetic, the published closed-form device formulas, or a second run of the
same command) rather than echoed from the implementation.
"""

import itertools
import math
import random
import time

import pytest

from conftest import sim_trits
from tritsim import (FIXTURE_NAMES, BuildConfig, Chirality, DesignVariant,
                     MetallicTube, SimConfig, SweepSpec, TernaryCellKind, Trit,
                     VoltageMap, adder_eval, base3_value, build_design, carry_gen,
                     cell_eval, cnt_diameter, delay_estimate, fixture_text,
                     from_integer, is_semiconducting, load_fixture, parse,
                     ripple_add, run_sweep, serialize, steady_state,
                     sum_node_voltage, sweep_csv, tgate_eval, threshold_voltage)
from tritsim.cli import main

from gen_netlists import random_netlist


def test_acceptance_exhaustive_adder_correctness():
    """Both behavioral variants equal base-3 addition on all 27 triples,
    and the carry/sum decomposition identity holds exactly, in under 1 s."""
    start = time.perf_counter()
    for variant in (DesignVariant.DESIGN1, DesignVariant.DESIGN2):
        for a, b, c in itertools.product(range(3), repeat=3):
            s, cout = adder_eval(variant, a, b, c)
            assert s == (a + b + c) % 3
            assert cout == (a + b + c) // 3
            assert 3 * int(cout) + int(s) == a + b + c
    assert time.perf_counter() - start < 1.0


def test_acceptance_device_formulas():
    """Diameter and threshold match a from-scratch evaluation to 1e-3
    relative; metallic chiralities are rejected; Vth*D is constant to 1e-9
    relative over 500 random semiconducting tubes."""
    for n1, n2 in ((19, 0), (13, 0), (10, 0), (7, 5)):
        c = Chirality(n1, n2)
        d_hand = 0.0783 * math.sqrt(n1 * n1 + n2 * n2 + n1 * n2)
        vth_hand = 0.43 / d_hand
        assert abs(cnt_diameter(c) - d_hand) / d_hand < 1e-3
        assert abs(threshold_voltage(c) - vth_hand) / vth_hand < 1e-3
    for n1, n2 in ((6, 3), (5, 5)):
        assert not is_semiconducting(Chirality(n1, n2))
        with pytest.raises(MetallicTube):
            threshold_voltage(Chirality(n1, n2))
    rng = random.Random(431)
    seen = 0
    while seen < 500:
        c = Chirality(rng.randint(1, 60), rng.randint(0, 60))
        if not is_semiconducting(c):
            continue
        product = threshold_voltage(c) * cnt_diameter(c)
        assert abs(product - 0.43) / 0.43 < 1e-9
        seen += 1


def test_acceptance_switch_level_matches_cell_tables():
    """steady_state on the bundled inverter and transmission-gate netlists
    reproduces the behavioral transfer tables at 0.9 V, zero mismatches."""
    cfg = SimConfig(vdd=0.9)
    levels = VoltageMap(0.9).levels()
    for name, kind in (("sti.tnl", TernaryCellKind.STI),
                       ("nti.tnl", TernaryCellKind.NTI),
                       ("pti.tnl", TernaryCellKind.PTI)):
        net = load_fixture(name)
        for x in range(3):
            sigs = steady_state(net, {"in": levels[x]}, cfg)
            want = str(int(cell_eval(kind, x)))
            assert sim_trits(sigs, cfg, "out") == (want,), f"{name} in={x}"
    tg = load_fixture("tgate.tnl")
    for x in range(3):
        sigs = steady_state(tg, {"in": levels[x], "c": 0.9, "cb": 0.0}, cfg)
        assert sim_trits(sigs, cfg, "out") == (str(int(tgate_eval(x))),)


def test_acceptance_carry_banding():
    """The band classifier maps every reachable averaged input voltage to
    the integer carry at each supported supply."""
    for vdd in (0.8, 0.9, 1.0):
        m = VoltageMap(vdd)
        for a, b, c in itertools.product(range(3), repeat=3):
            v = sum_node_voltage(a, b, c, m)
            assert carry_gen(v, m) == (a + b + c) // 3, f"vdd={vdd} {(a, b, c)}"


def _word_value(vec, carry, width: int) -> int:
    return base3_value(vec) + int(carry) * 3 ** width


def test_acceptance_ripple_adder_vs_integer_oracle():
    """Word-level addition equals integer addition: exhaustive to width 3,
    then 1000 random width-8 cases."""
    for width in (1, 2, 3):
        n = 3 ** width
        for x, y, cin in itertools.product(range(n), range(n), range(3)):
            total, carry = ripple_add(from_integer(x, width), from_integer(y, width),
                                      Trit(cin))
            assert _word_value(total, carry, width) == x + y + cin
    rng = random.Random(20260816)
    for _ in range(1000):
        x, y = rng.randrange(3 ** 8), rng.randrange(3 ** 8)
        cin = rng.randrange(3)
        total, carry = ripple_add(from_integer(x, 8), from_integer(y, 8), Trit(cin))
        assert _word_value(total, carry, 8) == x + y + cin


def test_acceptance_relative_delay_ordering():
    """With identical simulation config, the flat variant's sum settles
    strictly faster at every load from 1 to 5 fF."""
    d1 = build_design(1, BuildConfig())
    d2 = build_design(2, BuildConfig())
    for load_ff in (1, 2, 3, 4, 5):
        cfg = SimConfig(c_out_load=load_ff * 1e-15)
        assert delay_estimate(d2, "sum", cfg) < delay_estimate(d1, "sum", cfg), \
            f"load {load_ff} fF"


def test_acceptance_parser_round_trip():
    """parse/serialize is an identity on all bundled fixtures and on 100
    generated netlists, and serialization is a fixpoint."""
    for name in FIXTURE_NAMES:
        text = fixture_text(name)
        assert serialize(parse(text)) == text
    rng = random.Random(90210)
    for i in range(100):
        net = random_netlist(rng, i)
        text = serialize(net)
        again = parse(text)
        assert again == net, f"generated netlist {i}"
        assert serialize(again) == text


def test_acceptance_determinism(capsys):
    """Repeated runs of the simulated truth table and of a full sweep are
    byte-identical."""
    assert main(["truth-table", "--design", "both"]) == 0
    first = capsys.readouterr().out
    assert main(["truth-table", "--design", "both"]) == 0
    assert capsys.readouterr().out == first
    spec = SweepSpec()                    # full default load sweep, both variants
    assert sweep_csv(run_sweep(spec)) == sweep_csv(run_sweep(spec))
