import sys
from collections import defaultdict


def lower_bound(lst, target):
    lo, hi = 0, len(lst)
    while lo < hi:
        mid = (lo + hi) // 2
        if lst[mid] < target:
            lo = mid + 1
        else:
            hi = mid
    return lo


def main():
    data = sys.stdin.buffer.read().split()
    if not data:
        return
    it = iter(data)
    n = int(next(it))
    m = int(next(it))
    a = [int(next(it)) for _ in range(n)]
    b = [int(next(it)) for _ in range(m)]

    pos_map = defaultdict(list)
    for i, val in enumerate(a):
        pos_map[val].append(i)

    # Leftmost embedding of b into a: for each element, binary-search the
    # occurrence list for the first position after the previous match.
    left = []
    pos = -1
    for x in b:
        if x not in pos_map:
            print("No")
            return
        lst = pos_map[x]
        idx = lower_bound(lst, pos + 1)
        if idx == len(lst):
            print("No")
            return
        i = lst[idx]
        left.append(i)
        pos = i

    # Rightmost embedding, scanning b backwards.
    right = []
    pos = n
    for x in reversed(b):
        lst = pos_map[x]
        idx = lower_bound(lst, pos)
        if idx == 0:
            print("No")
            return
        i = lst[idx - 1]
        right.append(i)
        pos = i
    right.reverse()

    for l, r in zip(left, right):
        if l != r:
            print("Yes")
            return
    print("No")


if __name__ == "__main__":
    main()
