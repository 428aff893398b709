"""Switch-level engine: resolution, contention, charge sharing, timing, events.

Timing expectations are frozen by hand from the RC model: a driven node
settles at max(gate arrivals along its drive path) plus the Elmore sum of
accumulated resistance (30 kOhm / tubes per device) times node capacitance.
"""

import pytest

from conftest import sim_symbol
from tritsim import (ConfigError, Measurement, NoPath, NonConvergent, SimConfig,
                     Strength, delay_estimate, measure, parse, steady_state, transient,
                     waveform_csv, waveform_vcd)

CFG = SimConfig()


def net(body: str):
    return parse("* t\n" + body + ".end\n")


# --- steady state -----------------------------------------------------------

def test_rails_and_sources_are_pinned():
    n = net("V1 h 0.45\nC1 h GND 1f\n")
    sigs = steady_state(n, {}, CFG)
    assert sigs["GND"].level == 0.0
    assert sigs["GND"].strength is Strength.SUPPLY
    assert sigs["h"].level == 0.45
    assert sigs["h"].strength is Strength.SUPPLY


def test_nfet_pulldown():
    n = net(".input a\nMn y a GND nfet 19 0 3\n")
    on = steady_state(n, {"a": 0.9}, CFG)
    assert on["y"].level == 0.0
    assert on["y"].strength is Strength.DRIVEN
    off = steady_state(n, {"a": 0.0}, CFG)
    assert off["y"].level == "z"
    assert off["y"].strength is None


def test_binary_inverter():
    n = net(".input a\nMp y a VDD pfet 19 0 3\nMn y a GND nfet 19 0 3\n")
    assert steady_state(n, {"a": 0.0}, CFG)["y"].level == pytest.approx(0.9)
    assert steady_state(n, {"a": 0.9}, CFG)["y"].level == 0.0


def test_contention_reports_x():
    n = net(".input a\n.input b\nMn y a GND nfet 19 0 1\nMp y b VDD pfet 19 0 1\n")
    sigs = steady_state(n, {"a": 0.9, "b": 0.0}, CFG)
    assert sigs["y"].level == "x"
    assert sigs["y"].strength is Strength.DRIVEN
    # the rails themselves stay clean
    assert sigs["VDD"].level == pytest.approx(0.9)
    assert sigs["GND"].level == 0.0


def test_charge_sharing_weighted_average():
    n = net(".input a\n.input b\nC1 a m 1f\nC2 b m 3f\n")
    sigs = steady_state(n, {"a": 0.9, "b": 0.0}, CFG)
    assert sigs["m"].level == pytest.approx(0.9 * 1 / 4)
    assert sigs["m"].strength is Strength.CHARGED


def test_x_propagates_through_capacitors():
    n = net(".input a\n.input b\nMn y a GND nfet 19 0 1\nMp y b VDD pfet 19 0 1\n"
            "C1 y m 1f\n")
    sigs = steady_state(n, {"a": 0.9, "b": 0.0}, CFG)
    assert sigs["m"].level == "x"
    assert sigs["m"].strength is Strength.CHARGED


def test_pass_gate_carries_a_source_level():
    n = net("V1 h 0.45\n.input c\n.input cb\n"
            "Mtn y c h nfet 19 0 1\nMtp y cb h pfet 19 0 1\n")
    on = steady_state(n, {"c": 0.9, "cb": 0.0}, CFG)
    assert on["y"].level == 0.45
    assert on["y"].strength is Strength.DRIVEN
    off = steady_state(n, {"c": 0.0, "cb": 0.9}, CFG)
    assert off["y"].level == "z"


def test_x_gate_is_non_conducting():
    # y resolves to x; the inverter it feeds must not conduct either way
    n = net(".input a\n.input b\nMn y a GND nfet 19 0 1\nMp y b VDD pfet 19 0 1\n"
            "Mq2 w y GND nfet 19 0 1\nMq1 w y VDD pfet 19 0 1\n")
    sigs = steady_state(n, {"a": 0.9, "b": 0.0}, CFG)
    assert sigs["w"].level == "z"


def test_input_validation():
    n = net(".input a\nMn y a GND nfet 19 0 1\n")
    with pytest.raises(ConfigError):
        steady_state(n, {"ghost": 0.9}, CFG)
    with pytest.raises(ConfigError):
        steady_state(n, {"a": 0.9, "GND": 0.3}, CFG)
    with pytest.raises(ConfigError):
        steady_state(n, {}, CFG)          # declared input left unassigned


def test_sim_config_validation():
    with pytest.raises(ConfigError):
        SimConfig(vdd=0.0)
    with pytest.raises(ConfigError):
        SimConfig(max_iterations=4)
    with pytest.raises(ConfigError):
        SimConfig(r_on_per_tube=0.0)
    with pytest.raises(ConfigError):
        SimConfig(level_tolerance=0.5)
    assert SimConfig(level_tolerance=0.05).tol() == 0.05
    assert SimConfig().tol() == pytest.approx(0.09)


def _inverter_chain(depth: int) -> str:
    lines = [".input a"]
    prev = "a"
    for k in range(depth):
        out = f"n{k}"
        lines.append(f"M{k}p {out} {prev} VDD pfet 19 0 1")
        lines.append(f"M{k}n {out} {prev} GND nfet 19 0 1")
        prev = out
    return "\n".join(lines) + "\n"


def test_deep_chain_needs_iterations():
    n = net(_inverter_chain(10))
    sigs = steady_state(n, {"a": 0.0}, SimConfig())
    assert sigs["n9"].level == 0.0          # ten inversions of a low input
    with pytest.raises(NonConvergent):
        steady_state(n, {"a": 0.0}, SimConfig(max_iterations=8))


def test_sweep_order_independence():
    # the same chain written in reverse device order resolves identically
    fwd = net(_inverter_chain(6))
    body = _inverter_chain(6).splitlines()
    rev = net("\n".join([body[0]] + body[:0:-1]) + "\n")
    a = steady_state(fwd, {"a": 0.9}, CFG)
    b = steady_state(rev, {"a": 0.9}, CFG)
    assert a == b


# --- timing -----------------------------------------------------------------

def test_single_stage_rc_delay():
    # R = 30k / 3 tubes = 10 kOhm, C = 1 fF -> 1e-11 s
    n = net(".input a\nMn y a GND nfet 19 0 3\nC1 y GND 1f\n")
    assert delay_estimate(n, "y", CFG, {"a": 0.9}) == pytest.approx(1e-11)


def test_probe_load_adds_to_node_capacitance():
    n = net(".input a\nMn y a GND nfet 19 0 3\nC1 y GND 1f\n.probe y\n")
    cfg = SimConfig(c_out_load=1e-15)
    assert delay_estimate(n, "y", cfg, {"a": 0.9}) == pytest.approx(2e-11)
    cfg5 = SimConfig(c_out_load=5e-15)
    assert delay_estimate(n, "y", cfg5, {"a": 0.9}) == pytest.approx(6e-11)


def test_two_stage_delays_accumulate():
    n = net(".input a\n"
            "M1p x a VDD pfet 19 0 3\nM1n x a GND nfet 19 0 3\nC1 x GND 1f\n"
            "M2n y x GND nfet 19 0 3\nC2 y GND 1f\n")
    # stage one settles at 1e-11; stage two starts there and adds its own RC
    assert delay_estimate(n, "y", CFG, {"a": 0.0}) == pytest.approx(2e-11)


def test_exhaustive_delay_skips_undriven_combinations():
    n = net(".input a\n"
            "M1p x a VDD pfet 19 0 3\nM1n x a GND nfet 19 0 3\nC1 x GND 1f\n"
            "M2n y x GND nfet 19 0 3\nC2 y GND 1f\n")
    # only a=0 drives y; a=mid shorts stage one to x, a=high floats y
    assert delay_estimate(n, "y", CFG) == pytest.approx(2e-11)


def test_series_devices_sum_resistance():
    n = net(".input a\nMn1 m a GND nfet 19 0 3\nMn2 y a m nfet 19 0 3\nC1 y GND 1f\n")
    # two 10k devices in series into 1 fF, no capacitance on the middle node
    assert delay_estimate(n, "y", CFG, {"a": 0.9}) == pytest.approx(2e-11)


def test_charged_node_tracks_its_driver():
    n = net(".input a\nC1 a m 1f\n")
    assert delay_estimate(n, "m", CFG, {"a": 0.9}) == 0.0


def test_delay_errors():
    n = net(".input a\nMn y a GND nfet 19 0 3\n")
    with pytest.raises(NoPath):
        delay_estimate(n, "ghost", CFG, {"a": 0.9})
    # with the switch off and no capacitor anywhere, y floats outright
    with pytest.raises(NoPath):
        delay_estimate(n, "y", CFG, {"a": 0.0})
    many = net("".join(f".input i{k}\n" for k in range(7)) +
               "".join(f"C{k} i{k} m 1f\n" for k in range(7)))
    with pytest.raises(ConfigError):
        delay_estimate(many, "m", CFG)              # exhaustive over 7 inputs


def test_never_driven_output_raises():
    # a (1, 0) tube has a threshold far above the supply, so the switch
    # cannot turn on at any logic level and the output is never driven
    n = net(".input a\nMn y a GND nfet 1 0 1\n")
    with pytest.raises(NoPath):
        delay_estimate(n, "y", CFG)


# --- events -----------------------------------------------------------------

def test_transient_single_inverter():
    n = net(".input a\nMp x a VDD pfet 19 0 3\nMn x a GND nfet 19 0 3\nC1 x GND 1f\n")
    w = transient(n, [(0.0, {"a": 0.0}), (1e-9, {"a": 0.9})], CFG)
    assert w.initial_levels["x"] == pytest.approx(0.9)
    assert [e.node for e in w.events] == ["a", "x"]
    ea, ex = w.events
    assert ea.time == pytest.approx(1e-9)
    assert ea.energy == 0.0                          # no capacitance on the pin
    assert ex.time == pytest.approx(1e-9 + 1e-11)
    assert (ex.old, ex.new) == (pytest.approx(0.9), 0.0)
    assert ex.energy == pytest.approx(0.5 * 1e-15 * 0.81)


def test_transient_validates_stimulus():
    n = net(".input a\nMn y a GND nfet 19 0 3\n")
    with pytest.raises(ConfigError):
        transient(n, [], CFG)
    with pytest.raises(ConfigError):
        transient(n, [(0.0, {"a": 0.0}), (0.0, {"a": 0.9})], CFG)


def test_event_times_are_monotone_per_node():
    n = net(".input a\nMp x a VDD pfet 19 0 3\nMn x a GND nfet 19 0 3\nC1 x GND 1f\n")
    stim = [(k * 1e-12, {"a": 0.9 if k % 2 else 0.0}) for k in range(6)]
    w = transient(n, stim, CFG)
    per_node: dict = {}
    for e in w.events:
        assert per_node.get(e.node, -1.0) < e.time
        per_node[e.node] = e.time


def test_measure():
    n = net(".input a\nMp x a VDD pfet 19 0 3\nMn x a GND nfet 19 0 3\nC1 x GND 1f\n")
    w = transient(n, [(0.0, {"a": 0.0}), (1e-9, {"a": 0.9})], CFG)
    m = measure(w, 2e-9)
    assert m.avg_power == pytest.approx(0.5 * 1e-15 * 0.81 / 2e-9)
    assert m.worst_delay == pytest.approx(1e-11)
    assert m.pdp == pytest.approx(m.avg_power * m.worst_delay)
    assert measure(w, 4e-9).avg_power == pytest.approx(m.avg_power / 2)


def test_measure_empty_and_invalid():
    assert measure(transient(net(".input a\nMn y a GND nfet 19 0 3\n"),
                             [(0.0, {"a": 0.9})], CFG), 1e-9) == Measurement(0, 0, 0)
    with pytest.raises(ConfigError):
        measure(transient(net(".input a\nMn y a GND nfet 19 0 3\n"),
                          [(0.0, {"a": 0.9})], CFG), 0.0)


def test_waveform_csv_golden():
    n = net(".input a\nMp x a VDD pfet 19 0 3\nMn x a GND nfet 19 0 3\nC1 x GND 1f\n")
    w = transient(n, [(0.0, {"a": 0.0}), (1e-9, {"a": 0.9})], CFG)
    assert waveform_csv(w) == (
        "time_s,node,level_v,energy_j\n"
        "1.000000e-09,a,0.9,0.000000e+00\n"
        "1.010000e-09,x,0.0,4.050000e-16\n"
    )


def test_waveform_vcd_golden():
    n = net(".input a\nMp x a VDD pfet 19 0 3\nMn x a GND nfet 19 0 3\nC1 x GND 1f\n")
    w = transient(n, [(0.0, {"a": 0.0}), (1e-9, {"a": 0.9})], CFG)
    assert waveform_vcd(w, CFG, name="pair") == (
        "$timescale 1ps $end\n"
        "$scope module pair $end\n"
        "$var wire 1 ! GND $end\n"
        '$var wire 1 " VDD $end\n'
        "$var wire 1 # a $end\n"
        "$var wire 1 $ x $end\n"
        "$upscope $end\n"
        "$enddefinitions $end\n"
        "$dumpvars\n"
        "0!\n"
        '2"\n'
        "0#\n"
        "2$\n"
        "$end\n"
        "#1000\n"
        "2#\n"
        "#1010\n"
        "0$\n"
    )


def test_steady_state_symbols_helper():
    n = net(".input a\nMp y a VDD pfet 19 0 3\nMn y a GND nfet 19 0 3\n")
    sigs = steady_state(n, {"a": 0.0}, CFG)
    assert sim_symbol(sigs["y"], CFG) == "2"
    assert sim_symbol(sigs["a"], CFG) == "0"
