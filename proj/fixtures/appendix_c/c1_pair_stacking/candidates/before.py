import sys


def main():
    data = sys.stdin.read().strip().split()
    if not data:
        return
    n = int(data[0])
    a = list(map(int, data[1:1 + n]))
    # Input is promised non-decreasing; sort anyway.
    a.sort()
    low = 0
    high = n // 2
    while low < high:
        mid = (low + high + 1) // 2
        ok = True
        for i in range(mid):
            if 2 * a[i] > a[n - mid + i]:
                ok = False
                break
        if ok:
            low = mid
        else:
            high = mid - 1
    print(low)


if __name__ == "__main__":
    main()
