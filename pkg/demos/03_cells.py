#!/usr/bin/env python3
"""The behavioral cell library: inverter transfer tables, the capacitive
averaging node, and the band logic that turns an analog average into trits."""

import itertools

from tritsim import (DesignVariant, TernaryCellKind, VoltageMap, adder_eval,
                     carry_gen, cell_eval, datasheet_csv, sum_node_voltage)

print("inverter family on one input trit:")
print("x   STI   NTI   PTI")
for x in range(3):
    print(f"{x}   {int(cell_eval(TernaryCellKind.STI, x))}     "
          f"{int(cell_eval(TernaryCellKind.NTI, x))}     "
          f"{int(cell_eval(TernaryCellKind.PTI, x))}")

print()
m = VoltageMap(0.9)
print("three equal input capacitors average a, b, cin onto one node;")
print("seven distinct voltages encode sigma = a + b + cin:")
for sigma in range(7):
    trip = next(t for t in itertools.product(range(3), repeat=3) if sum(t) == sigma)
    v = sum_node_voltage(*trip, m)
    print(f"  sigma={sigma}: {v:.3f} V -> carry {int(carry_gen(v, m))}")
print("carry bands sit at 2.5/6 and 5.5/6 of the supply, between codes")

print()
print("both variants route the same arithmetic:")
for variant in (DesignVariant.DESIGN1, DesignVariant.DESIGN2):
    bad = sum(1 for a, b, c in itertools.product(range(3), repeat=3)
              if adder_eval(variant, a, b, c) != ((a + b + c) % 3, (a + b + c) // 3))
    print(f"  {variant.value}: {bad} mismatches over 27 input triples")

print()
print("full transfer datasheet:")
print(datasheet_csv())
