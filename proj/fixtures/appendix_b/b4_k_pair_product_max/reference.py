import sys

NEG = float("-inf")


def main():
    data = sys.stdin.buffer.read().split()
    if not data:
        return
    it = iter(data)
    n = int(next(it))
    m = int(next(it))
    k = int(next(it))
    nums1 = [int(next(it)) for _ in range(n)]
    nums2 = [int(next(it)) for _ in range(m)]
    if k == 0 or k > n or k > m:
        print(0)
        return

    # prev[i][j]: best score using t-1 pairs from nums1[:i], nums2[:j]
    prev = [[0] * (m + 1) for _ in range(n + 1)]
    for _ in range(k):
        curr = [[NEG] * (m + 1) for _ in range(n + 1)]
        for i in range(1, n + 1):
            v1 = nums1[i - 1]
            row = curr[i]
            above = curr[i - 1]
            diag = prev[i - 1]
            for j in range(1, m + 1):
                best = above[j]
                if row[j - 1] > best:
                    best = row[j - 1]
                take = diag[j - 1] + v1 * nums2[j - 1]
                if take > best:
                    best = take
                row[j] = best
        prev = curr
    print(int(prev[n][m]))


if __name__ == "__main__":
    main()
