"""The outer-segment coefficients as exact multiples of 6^(1/3) and their growth.

The ratio of consecutive coefficients tends to -4/3, so the series in
s_hat**3 has radius 3/4, which is exactly where the outer segments begin.

    python demos/coefficient_table.py
"""

from airyseries.coefficients import build_ab_table, default_table

table = build_ab_table(8)
print("m   a_exact                          b_exact")
for m in range(9):
    print(f"{m:<3d} {str(table.a_exact[m]):<32s} {table.b_exact[m]}")

big = default_table()
print("\nconsecutive ratio a[m+1]/a[m]:")
for m in (10, 40, 100, 200, 400):
    print(f"  m={m:<4d} {big.a[m + 1] / big.a[m]: .6f}")
print("limit  -4/3 =", -4 / 3)
