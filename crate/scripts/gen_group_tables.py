#!/usr/bin/env python3
"""Writes multiplication-table fixtures for small groups.

Format: first line is the order n, then n rows of n whitespace-separated
0-based indices (row g, column h, entry g*h). Lines starting with '#' are
comments. Element 0 is always the identity.
"""
import itertools
import sys
from pathlib import Path


def perm_mul(p, q):
    # apply q first, then p
    return tuple(p[q[i]] for i in range(len(q)))


def closure(gens):
    n = len(gens[0])
    ident = tuple(range(n))
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = perm_mul(a, g)
                if b not in seen:
                    seen.add(b)
                    elems.append(b)
                    nxt.append(b)
        frontier = nxt
    return sorted(elems, key=lambda p: (p != ident, p))


def table_from_elems(elems, mul):
    index = {e: i for i, e in enumerate(elems)}
    return [[index[mul(a, b)] for b in elems] for a in elems]


def write(path, label, table, names):
    with open(path, "w") as f:
        f.write(f"# {label}\n")
        for i, nm in enumerate(names):
            f.write(f"# {i}: {nm}\n")
        f.write(f"{len(table)}\n")
        for row in table:
            f.write(" ".join(str(x) for x in row) + "\n")


def cycles(p):
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        c, j = [], i
        while j not in seen:
            seen.add(j)
            c.append(j + 1)
            j = p[j]
        out.append("(" + "".join(map(str, c)) + ")")
    return "".join(out) or "()"


def perm_group(path, label, gens):
    elems = closure(gens)
    write(path, label, table_from_elems(elems, perm_mul), [cycles(e) for e in elems])


def product_group(path, label, mods):
    elems = list(itertools.product(*[range(m) for m in mods]))
    mul = lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, mods))
    write(path, label, table_from_elems(elems, mul), [str(e) for e in elems])


def cyclic(path, n):
    elems = list(range(n))
    write(path, f"Z/{n} cyclic group", table_from_elems(elems, lambda a, b: (a + b) % n),
          [str(e) for e in elems])


def quaternion(path):
    # elements as (sign, unit) with unit in 1,i,j,k
    units = ["1", "i", "j", "k"]
    prod = {
        ("1", u): (1, u) for u in units
    }
    prod.update({(u, "1"): (1, u) for u in units})
    prod.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })
    elems = [(s, u) for u in units for s in (1, -1)]
    elems.sort(key=lambda e: (e != (1, "1"), units.index(e[1]), -e[0]))

    def mul(a, b):
        s, u = prod[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    names = [("" if s == 1 else "-") + u for s, u in elems]
    write(path, "Q8 quaternion group", table_from_elems(elems, mul), names)


def main(out):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    for n in range(1, 9):
        cyclic(out / f"z{n}.txt", n)
    perm_group(out / "s3.txt", "S3 symmetric group on 3 letters", [(1, 0, 2), (1, 2, 0)])
    perm_group(out / "d4.txt", "D4 dihedral group of order 8", [(1, 2, 3, 0), (0, 3, 2, 1)])
    quaternion(out / "q8.txt")
    product_group(out / "z2xz2.txt", "Z/2 x Z/2 Klein four-group", [2, 2])
    product_group(out / "z2xz4.txt", "Z/2 x Z/4", [2, 4])
    perm_group(out / "a5.txt", "A5 alternating group on 5 letters",
               [(1, 2, 0, 3, 4), (1, 2, 3, 4, 0)])


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "crates/core/fixtures/groups")
