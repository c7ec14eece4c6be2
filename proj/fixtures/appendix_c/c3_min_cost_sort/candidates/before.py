import sys
import heapq


def main():
    data = sys.stdin.read().strip().split()
    if not data:
        return
    it = iter(data)
    n = int(next(it))
    p = [0] + [int(next(it)) for _ in range(n)]  # 1-indexed

    heap = []
    for i in range(1, n):
        if p[i] > p[i + 1]:
            heapq.heappush(heap, i)

    total_cost = 0
    while heap:
        i = heapq.heappop(heap)
        if not (p[i] > p[i + 1]):
            continue
        p[i], p[i + 1] = p[i + 1], p[i]
        total_cost += i
        for idx in (i - 1, i, i + 1):
            if 1 <= idx < n and p[idx] > p[idx + 1]:
                heapq.heappush(heap, idx)

    print(total_cost)


if __name__ == "__main__":
    main()
