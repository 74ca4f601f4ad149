"""Independent brute-force oracles used to freeze expected values in the C++ tests.

Run: python3 tests/oracles/fixtures.py
Nothing here imports or calls the C++ library.
"""
from fractions import Fraction
from itertools import combinations, product


def halfgraph_edges(n):
    k = n // 2
    return [(i, j) for i in range(1, k + 1) for j in range(k + 1, n + 1) if i <= j - k]


def min_bisection(n, edges):
    best = None
    nodes = range(1, n + 1)
    for s in combinations(nodes, n // 2):
        if 1 not in s:
            continue
        ss = set(s)
        cut = sum(1 for i, j in edges if (i in ss) != (j in ss))
        if best is None or cut < best:
            best = cut
    return Fraction(8 * best, n * n)


def halfgraph_J_partition(samples):
    # midpoint rule on a fine grid of the full square, Eq. (33) form
    def theta(x):
        return 1.0 if (x < 1 / 6) or (0.5 <= x < 5 / 6) else 0.0

    h = 1.0 / samples
    total = 0.0
    th = [theta((i + 0.5) * h) for i in range(samples)]
    for a in range(samples):
        x = (a + 0.5) * h
        for b in range(samples):
            y = (b + 0.5) * h
            if y + 0.5 <= x or x + 0.5 <= y:
                total += th[a] * (1 - th[b])
    return 8 * total * h * h


def hom_count(k, fedges, n, gedges):
    adj = set()
    for i, j in gedges:
        adj.add((i, j))
        adj.add((j, i))
    cnt = 0
    for phi in product(range(1, n + 1), repeat=k):
        if all((phi[a], phi[b]) in adj for a, b in fedges):
            cnt += 1
    return Fraction(cnt, n ** k)


def main():
    print("halfgraph min bisection (exact):")
    for n in (4, 8, 12, 16, 20):
        v = min_bisection(n, halfgraph_edges(n))
        print(f"  n={n}: {v} = {float(v):.17g}  gap={abs(float(v) - 1/3):.6g}  2/n={2/n:.6g}")
    k66 = [(i, j) for i in range(1, 7) for j in range(7, 13)]
    print("K_{6,6}:", min_bisection(12, k66))
    for n in (8, 12, 16):
        kn = list(combinations(range(1, n + 1), 2))
        print(f"K_{n}:", min_bisection(n, kn))
    print("block (1/2,1/2) n=4:", min_bisection(4, [(1, 2), (3, 4), (2, 3)]))
    print("K_{2,2}:", min_bisection(4, [(1, 3), (1, 4), (2, 3), (2, 4)]))
    k3 = [(1, 2), (1, 3), (2, 3)]
    print("t(edge,K3) =", hom_count(2, [(0, 1)], 3, k3))
    print("t(triangle,K3) =", hom_count(3, [(0, 1), (1, 2), (0, 2)], 3, k3))
    for s in (240, 480, 960):
        print(f"halfgraph J(sixths partition), midpoint {s}: {halfgraph_J_partition(s):.12f}")


if __name__ == "__main__":
    main()


def _clip_area(x0, x1, y0, y1, c):
    """Exact area of [x0,x1]x[y0,y1] intersected with {y - x >= c} (Fractions)."""
    # integrate over x the length of {y in [y0,y1] : y >= x + c}
    def seg(x):
        lo = max(y0, x + c)
        return max(Fraction(0), y1 - lo)

    # seg is piecewise linear with breakpoints where x + c = y0 or y1
    pts = sorted({x0, x1} | {p for p in (y0 - c, y1 - c) if x0 < p < x1})
    area = Fraction(0)
    for a, b in zip(pts, pts[1:]):
        area += (seg(a) + seg(b)) * (b - a) / 2
    return area


def halfgraph_J_exact(S):
    """8 * |{(x,y) : W=1, x in S, y notin S}| for a finite union S of intervals."""
    half = Fraction(1, 2)
    pts = sorted({Fraction(0), Fraction(1)} | {p for iv in S for p in iv})
    cells = list(zip(pts, pts[1:]))
    inside = [any(a >= lo and b <= hi for lo, hi in S) for a, b in cells]
    total = Fraction(0)
    for (a, b), sa in zip(cells, inside):
        for (c, d), sc in zip(cells, inside):
            if sa and not sc:
                total += _clip_area(a, b, c, d, half) + _clip_area(c, d, a, b, half)
    return 8 * total


if __name__ == "__main__":
    S = [(Fraction(0), Fraction(1, 6)), (Fraction(1, 2), Fraction(5, 6))]
    print("halfgraph J(sixths partition) exact:", halfgraph_J_exact(S))
    print("halfgraph J(theta = indicator [0,1/2)) exact:", halfgraph_J_exact([(Fraction(0), Fraction(1, 2))]))
