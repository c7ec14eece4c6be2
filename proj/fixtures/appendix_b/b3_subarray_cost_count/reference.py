import sys
from collections import deque


def main():
    data = sys.stdin.buffer.read().split()
    if not data:
        return
    it = iter(data)
    n = int(next(it))
    k = int(next(it))
    nums = [int(next(it)) for _ in range(n)]
    if n == 0 or k < 0:
        print(0)
        return

    dq_max = deque()  # indices, values non-increasing
    dq_min = deque()  # indices, values non-decreasing
    l = 0
    ans = 0
    for r in range(n):
        while dq_max and nums[dq_max[-1]] <= nums[r]:
            dq_max.pop()
        dq_max.append(r)
        while dq_min and nums[dq_min[-1]] >= nums[r]:
            dq_min.pop()
        dq_min.append(r)

        # cost = (max - min) * len is monotone in the window bounds,
        # so a sliding window is valid; a single element always costs 0.
        while (nums[dq_max[0]] - nums[dq_min[0]]) * (r - l + 1) > k:
            if dq_max[0] == l:
                dq_max.popleft()
            if dq_min[0] == l:
                dq_min.popleft()
            l += 1
        ans += r - l + 1
    print(ans)


if __name__ == "__main__":
    main()
