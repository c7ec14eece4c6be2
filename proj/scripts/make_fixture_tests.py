"""Author bundle test files from brute-force oracles.

Expected outputs are computed by the naive oracles below, never by the
reference programs; references are then cross-checked against the frozen
files as a sanity gate.
"""
import itertools
import random
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent / "fixtures"


def run(prog, inp):
    r = subprocess.run([sys.executable, str(prog)], input=inp.encode(),
                       capture_output=True, timeout=60)
    assert r.returncode == 0, (prog, r.stderr)
    return r.stdout.decode().strip()


def write_tests(problem_dir, cases, programs):
    tests = problem_dir / "tests"
    tests.mkdir(exist_ok=True)
    for i, (inp, out) in enumerate(cases, start=1):
        (tests / f"{i:02d}.in").write_text(inp)
        (tests / f"{i:02d}.out").write_text(out + "\n")
    for prog in programs:
        for i, (inp, out) in enumerate(cases, start=1):
            got = run(problem_dir / prog, inp)
            assert got == out, (problem_dir.name, prog, i, got, out)
    print(f"{problem_dir.name}: {len(cases)} tests, checked {len(programs)} programs")


# ---------------- appendix C oracles ----------------

def brute_c1(a):
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
            break
        if free:
            rec(used | (1 << free[0]), count)

    rec(0, 0)
    return str(best)


def brute_c2(a, b):
    count = 0
    for combo in itertools.combinations(range(len(a)), len(b)):
        if all(a[combo[k]] == b[k] for k in range(len(b))):
            count += 1
            if count >= 2:
                break
    return "Yes" if count >= 2 else "No"


def brute_c3(p):
    import heapq
    start = tuple(p)
    goal = tuple(sorted(p))
    dist = {start: 0}
    heap = [(0, start)]
    while heap:
        d, s = heapq.heappop(heap)
        if s == goal:
            return str(d)
        if d > dist[s]:
            continue
        for i in range(len(s) - 1):
            t = list(s)
            t[i], t[i + 1] = t[i + 1], t[i]
            t = tuple(t)
            nd = d + i + 1
            if nd < dist.get(t, 1 << 60):
                dist[t] = nd
                heapq.heappush(heap, (nd, t))
    raise AssertionError


# ---------------- appendix B oracles ----------------

def brute_b1(nums):
    n = len(nums)
    count = 0
    for i in range(n - 1):
        tail = nums[i + 1:]
        if Fraction(nums[i]) > Fraction(sum(tail), len(tail)):
            count += 1
    return str(count)


def brute_b2(nums):
    arr = list(nums)
    while True:
        for i in range(len(arr) - 1):
            if arr[i] == arr[i + 1]:
                arr[i:i + 2] = [arr[i] * 2]
                break
        else:
            return " ".join(map(str, arr))


def brute_b3(nums, k):
    n = len(nums)
    count = 0
    for l in range(n):
        for r in range(l, n):
            window = nums[l:r + 1]
            if (max(window) - min(window)) * len(window) <= k:
                count += 1
    return str(count)


def brute_b4(nums1, nums2, k):
    if k == 0 or k > len(nums1) or k > len(nums2):
        return "0"
    best = None
    for c1 in itertools.combinations(range(len(nums1)), k):
        for c2 in itertools.combinations(range(len(nums2)), k):
            score = sum(nums1[i] * nums2[j] for i, j in zip(c1, c2))
            if best is None or score > best:
                best = score
    return str(best)


def main():
    rng = random.Random(20250814)

    # --- c1: sorted sizes ---
    cases = []
    for a in ([1, 2], [3, 3, 3], [1, 1, 2, 2, 4]):
        cases.append((f"{len(a)}\n{' '.join(map(str, a))}\n", brute_c1(a)))
    for _ in range(3):
        n = rng.randrange(6, 11)
        a = sorted(rng.randrange(1, 20) for _ in range(n))
        cases.append((f"{n}\n{' '.join(map(str, a))}\n", brute_c1(a)))
    write_tests(ROOT / "appendix_c" / "c1_pair_stacking", cases,
                ["candidates/before.py", "candidates/after.py"])

    # --- c2 ---
    cases = []
    for a, b in (([1, 2, 1, 2], [1, 2]), ([1, 2, 3], [1, 2, 3]), ([5, 5], [5])):
        cases.append((f"{len(a)} {len(b)}\n{' '.join(map(str, a))}\n"
                      f"{' '.join(map(str, b))}\n", brute_c2(a, b)))
    for _ in range(3):
        n = rng.randrange(4, 9)
        m = rng.randrange(1, n + 1)
        a = [rng.randrange(1, 4) for _ in range(n)]
        b = [rng.randrange(1, 4) for _ in range(m)]
        cases.append((f"{n} {m}\n{' '.join(map(str, a))}\n"
                      f"{' '.join(map(str, b))}\n", brute_c2(a, b)))
    write_tests(ROOT / "appendix_c" / "c2_twice_subsequence", cases,
                ["candidates/before.py", "candidates/after.py"])

    # --- c3: permutations ---
    cases = []
    for p in ([1], [2, 1], [3, 1, 2]):
        cases.append((f"{len(p)}\n{' '.join(map(str, p))}\n", brute_c3(p)))
    for _ in range(3):
        n = rng.randrange(4, 8)
        p = list(range(1, n + 1))
        rng.shuffle(p)
        cases.append((f"{n}\n{' '.join(map(str, p))}\n", brute_c3(p)))
    write_tests(ROOT / "appendix_c" / "c3_min_cost_sort", cases,
                ["candidates/before.py", "candidates/after.py"])

    # --- b1 ---
    cases = [("3\n5 1 1\n", brute_b1([5, 1, 1])),
             ("1\n7\n", "0"),
             ("4\n-1 -2 -3 -4\n", brute_b1([-1, -2, -3, -4]))]
    for _ in range(3):
        n = rng.randrange(5, 12)
        nums = [rng.randrange(-10, 11) for _ in range(n)]
        cases.append((f"{n}\n{' '.join(map(str, nums))}\n", brute_b1(nums)))
    write_tests(ROOT / "appendix_b" / "b1_dominant_indices", cases, ["reference.py"])

    # --- b2 ---
    cases = [("4\n1 1 2 4\n", brute_b2([1, 1, 2, 4])),
             ("3\n2 2 2\n", brute_b2([2, 2, 2])),
             ("5\n4 2 2 4 8\n", brute_b2([4, 2, 2, 4, 8]))]
    for _ in range(3):
        n = rng.randrange(5, 12)
        nums = [rng.choice([1, 1, 1, 2, 2, 4]) for _ in range(n)]
        cases.append((f"{n}\n{' '.join(map(str, nums))}\n", brute_b2(nums)))
    write_tests(ROOT / "appendix_b" / "b2_adjacent_merge", cases, ["reference.py"])

    # stack simulation must agree with the literal leftmost-merge rule
    for _ in range(500):
        n = rng.randrange(1, 12)
        nums = [rng.choice([1, 1, 2, 2, 3, 4, 8]) for _ in range(n)]
        inp = f"{n}\n{' '.join(map(str, nums))}\n"
        got = run(ROOT / "appendix_b" / "b2_adjacent_merge" / "reference.py", inp)
        assert got == brute_b2(nums), ("b2 stack vs naive", nums, got)
    print("b2 stack/naive agreement: 500 cases")

    # --- b3 ---
    cases = [("4 6\n1 3 2 4\n", brute_b3([1, 3, 2, 4], 6)),
             ("3 0\n9 9 9\n", brute_b3([9, 9, 9], 0)),
             ("1 0\n5\n", "1")]
    for _ in range(3):
        n = rng.randrange(5, 14)
        nums = [rng.randrange(0, 10) for _ in range(n)]
        k = rng.randrange(0, 30)
        cases.append((f"{n} {k}\n{' '.join(map(str, nums))}\n", brute_b3(nums, k)))
    write_tests(ROOT / "appendix_b" / "b3_subarray_cost_count", cases, ["reference.py"])

    # --- b4 ---
    cases = [("3 3 2\n1 2 3\n4 5 6\n", brute_b4([1, 2, 3], [4, 5, 6], 2)),
             ("2 3 3\n1 2\n3 4 5\n", "0"),
             ("3 2 1\n-1 -2 -3\n-4 -5\n", brute_b4([-1, -2, -3], [-4, -5], 1))]
    for _ in range(3):
        n = rng.randrange(3, 8)
        m = rng.randrange(3, 8)
        k = rng.randrange(1, min(n, m) + 1)
        n1 = [rng.randrange(-9, 10) for _ in range(n)]
        n2 = [rng.randrange(-9, 10) for _ in range(m)]
        cases.append((f"{n} {m} {k}\n{' '.join(map(str, n1))}\n"
                      f"{' '.join(map(str, n2))}\n", brute_b4(n1, n2, k)))
    write_tests(ROOT / "appendix_b" / "b4_k_pair_product_max", cases, ["reference.py"])


if __name__ == "__main__":
    main()
