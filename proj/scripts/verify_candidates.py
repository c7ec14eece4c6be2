"""Cross-check the appendix candidate programs against brute-force oracles."""
import itertools
import random
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent / "fixtures" / "appendix_c"


def run(prog, inp):
    r = subprocess.run([sys.executable, str(prog)], input=inp.encode(),
                       capture_output=True, timeout=60)
    assert r.returncode == 0, (prog, r.stderr)
    return r.stdout.decode().strip()


def brute_c1(a):
    """Max simultaneous pairs (top, bottom) with 2*top <= bottom, via matching search."""
    n = len(a)
    best = 0

    def rec(used, count):
        nonlocal best
        best = max(best, count)
        free = [i for i in range(n) if not (used >> i) & 1]
        if count + len(free) // 2 <= best:
            return
        for ti in range(len(free)):
            for bi in range(ti + 1, len(free)):
                t, b = free[ti], free[bi]
                if 2 * a[t] <= a[b]:
                    rec(used | (1 << t) | (1 << b), count + 1)
            break  # first free element is either a top in some pair or unused
        # also try skipping the first free element entirely
        if free:
            rec(used | (1 << free[0]), count)

    rec(0, 0)
    return best


def brute_c2(a, b):
    """Count distinct index-set embeddings of b into a (capped at 2)."""
    n, m = len(a), len(b)
    count = 0
    for combo in itertools.combinations(range(n), m):
        if all(a[combo[k]] == b[k] for k in range(m)):
            count += 1
            if count >= 2:
                break
    return "Yes" if count >= 2 else "No"


def brute_c3(p):
    """Min cost to sort with adjacent swap at i costing i, via Dijkstra."""
    import heapq
    start = tuple(p)
    goal = tuple(sorted(p))
    dist = {start: 0}
    heap = [(0, start)]
    while heap:
        d, s = heapq.heappop(heap)
        if s == goal:
            return d
        if d > dist[s]:
            continue
        for i in range(len(s) - 1):
            t = list(s)
            t[i], t[i + 1] = t[i + 1], t[i]
            t = tuple(t)
            nd = d + i + 1  # cost of swapping positions (i+1, i+2) 1-indexed
            if nd < dist.get(t, 1 << 60):
                dist[t] = nd
                heapq.heappush(heap, (nd, t))
    raise AssertionError


def main():
    rng = random.Random(20250814)

    for trial in range(300):
        n = rng.randrange(2, 11)
        a = sorted(rng.randrange(1, 20) for _ in range(n))
        inp = f"{n}\n{' '.join(map(str, a))}\n"
        exp = str(brute_c1(a))
        for cand in ("before", "after"):
            got = run(ROOT / "c1_pair_stacking" / "candidates" / f"{cand}.py", inp)
            assert got == exp, ("c1", cand, a, got, exp)
    print("c1 ok")

    for trial in range(300):
        n = rng.randrange(1, 9)
        m = rng.randrange(1, n + 1)
        a = [rng.randrange(1, 4) for _ in range(n)]
        b = [rng.randrange(1, 4) for _ in range(m)]
        inp = f"{n} {m}\n{' '.join(map(str, a))}\n{' '.join(map(str, b))}\n"
        exp = brute_c2(a, b)
        for cand in ("before", "after"):
            got = run(ROOT / "c2_twice_subsequence" / "candidates" / f"{cand}.py", inp)
            assert got == exp, ("c2", cand, a, b, got, exp)
    print("c2 ok")

    for trial in range(120):
        n = rng.randrange(1, 7)
        p = list(range(1, n + 1))
        rng.shuffle(p)
        inp = f"{n}\n{' '.join(map(str, p))}\n"
        exp = str(brute_c3(p))
        for cand in ("before", "after"):
            got = run(ROOT / "c3_min_cost_sort" / "candidates" / f"{cand}.py", inp)
            assert got == exp, ("c3", cand, p, got, exp)
    print("c3 ok")


if __name__ == "__main__":
    main()
