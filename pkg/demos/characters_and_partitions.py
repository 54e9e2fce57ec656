"""Tour of the combinatorial layer: partitions, dominance, and characters.

Run as ``python3 demos/characters_and_partitions.py``.
"""

import math

from kchi import (
    MultiIndex,
    Partition,
    char_table,
    character_sum_over_stabilizer,
    class_size,
    degree,
    majorizes,
    multiplicity_partition,
    omega_of,
    partitions_of,
)


def show_partitions(m):
    print(f"partitions of {m} (reverse lexicographic):")
    for pi in partitions_of(m):
        print(f"  {pi}  length {pi.length}")


def show_dominance(m):
    print(f"\ndominance order on partitions of {m}:")
    parts = partitions_of(m)
    for a in parts:
        above = [str(b) for b in parts if majorizes(b, a) and b != a]
        print(f"  {a} is majorized by: {', '.join(above) if above else '(maximal)'}")


def show_table(m):
    table = char_table(m)
    print(f"\ncharacter table of S_{m} (rows: shapes, columns: cycle types):")
    header = "  ".join(f"{str(p):>9}" for p in table.partitions)
    print(f"{'':>9}{header}")
    for lam, row in zip(table.partitions, table.values):
        cells = "  ".join(f"{v:>9}" for v in row)
        print(f"{str(lam):>9}{cells}")
    print("class sizes:", [class_size(p) for p in table.partitions])
    total = sum(degree(lam) ** 2 for lam in table.partitions)
    print(f"sum of squared degrees: {total} = {m}! = {math.factorial(m)}")


def show_stabilizer_sums():
    print("\ncharacter sums over stabilizers decide which tensors survive:")
    chi = Partition((2, 1))
    for entries in [(1, 1, 2), (1, 2, 3), (1, 1, 1)]:
        alpha = MultiIndex(entries, 3)
        mu = multiplicity_partition(alpha)
        total = character_sum_over_stabilizer(chi, alpha)
        verdict = "kept" if total != 0 else "vanishes"
        print(
            f"  alpha={alpha}: multiplicity {mu}, "
            f"sum {total:>2} -> {verdict} "
            f"(chi majorizes mu: {majorizes(chi, mu)})"
        )
    print("  the minimal surviving index is omega(chi) =", omega_of(chi, 3))


if __name__ == "__main__":
    show_partitions(5)
    show_dominance(4)
    show_table(4)
    show_stabilizer_sums()
