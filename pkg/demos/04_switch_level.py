#!/usr/bin/env python3
"""Build the transistor-level adders, solve steady states, and replay an
input sequence into a waveform."""

import itertools

from tritsim import (BuildConfig, SimConfig, VoltageMap, build_design, full_add,
                     serialize, steady_state, transient, voltage_to_trit)

cfg = SimConfig(vdd=0.9)
levels = VoltageMap(0.9).levels()

net = build_design(2, BuildConfig())
stats = net.stats()
print(f"design2: {stats['cnfets']} transistors, {stats['capacitors']} capacitors, "
      f"{stats['nodes']} nodes")

print()
print("one steady state, a=1 b=2 cin=1 (sigma=4 -> sum 1, carry 1):")
sigs = steady_state(net, {"a": levels[1], "b": levels[2], "cin": levels[1]}, cfg)
for node in ("vsum", "s", "f", "m", "sum", "cout"):
    sig = sigs[node]
    print(f"  {node:<5} {sig.level!r:<22} {sig.strength.name.lower()}")
print("vsum holds the analog average; sum and cout are clean logic levels")

print()
print("exhaustive check of both netlists against the arithmetic:")
for variant in (1, 2):
    n = build_design(variant, BuildConfig())
    bad = 0
    for a, b, c in itertools.product(range(3), repeat=3):
        out = steady_state(n, {"a": levels[a], "b": levels[b], "cin": levels[c]}, cfg)
        want_s, want_c = full_add(a, b, c)
        if (voltage_to_trit(out["sum"].level, cfg.vmap()) != want_s or
                voltage_to_trit(out["cout"].level, cfg.vmap()) != want_c):
            bad += 1
    print(f"  design{variant}: {bad} mismatches over 27 input triples")

print()
print("short transient, three input steps 1 ns apart:")
stim = [(1e-9, {"a": levels[0], "b": levels[0], "cin": levels[0]}),
        (2e-9, {"a": levels[1], "b": levels[0], "cin": levels[0]}),
        (3e-9, {"a": levels[2], "b": levels[2], "cin": levels[1]})]
wave = transient(net, stim, cfg)
print("time_s,node,level_v,energy_j")
for ev in wave.events:
    if ev.node in ("sum", "cout"):
        print(f"{ev.time:.6e},{ev.node},{ev.new!r},{ev.energy:.6e}")

print("canonical netlist text round-trips; first lines:")
for line in serialize(net).splitlines()[:6]:
    print(f"  {line}")
