import sys


def main():
    data = sys.stdin.buffer.read().split()
    if not data:
        return
    n = int(data[0])
    p = list(map(int, data[1:1 + n]))

    # Fenwick tree over values, 1-indexed.
    bit = [0] * (n + 2)

    total_cost = 0
    for val in p:
        # Count values smaller than val seen so far.
        i = val - 1
        cnt = 0
        while i > 0:
            cnt += bit[i]
            i -= i & -i
        p0 = cnt + 1
        if p0 < val:
            terms = val - p0
            total_cost += (p0 + val - 1) * terms // 2
        i = val
        while i <= n:
            bit[i] += 1
            i += i & -i

    print(total_cost)


if __name__ == "__main__":
    main()
