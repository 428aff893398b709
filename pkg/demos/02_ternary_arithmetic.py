#!/usr/bin/env python3
"""Base-3 addition at the trit and word level."""

import itertools

from tritsim import Trit, base3_value, from_integer, full_add, ripple_add, truth_table_csv

print("single-trit full adder, sum = (a+b+cin) mod 3, carry = (a+b+cin) div 3:")
print()
print(truth_table_csv())

# words are little-endian trit vectors
x, y = 136, 58
a = from_integer(x, 5)
b = from_integer(y, 5)
total, carry = ripple_add(a, b)
print(f"{x} in base 3 (LSB first): {tuple(int(t) for t in a)}")
print(f"{y} in base 3 (LSB first): {tuple(int(t) for t in b)}")
print(f"ripple sum: {tuple(int(t) for t in total)} carry {int(carry)}"
      f" -> {base3_value(total) + int(carry) * 3 ** 5}")

# exhaustive cross-check at width 2: every operand pair, every carry-in
mismatches = 0
for xx, yy, cin in itertools.product(range(9), range(9), range(3)):
    tot, c = ripple_add(from_integer(xx, 2), from_integer(yy, 2), Trit(cin))
    if base3_value(tot) + int(c) * 9 != xx + yy + cin:
        mismatches += 1
print(f"width-2 exhaustive check: {mismatches} mismatches in {9 * 9 * 3} cases")
