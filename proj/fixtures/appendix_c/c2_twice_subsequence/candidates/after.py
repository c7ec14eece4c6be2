import sys


def main():
    data = sys.stdin.read().split()
    if not data:
        return
    it = iter(data)
    n = int(next(it))
    m = int(next(it))
    a = [int(next(it)) for _ in range(n)]
    b = [int(next(it)) for _ in range(m)]

    # Leftmost embedding.
    left = []
    j = 0
    for i in range(n):
        if j < m and a[i] == b[j]:
            left.append(i)
            j += 1
            if j == m:
                break
    if j < m:
        print("No")
        return

    # Rightmost embedding.
    right = []
    j = m - 1
    for i in range(n - 1, -1, -1):
        if j >= 0 and a[i] == b[j]:
            right.append(i)
            j -= 1
            if j < 0:
                break
    right.reverse()

    for k in range(m):
        if left[k] != right[k]:
            print("Yes")
            return
    print("No")


if __name__ == "__main__":
    main()
