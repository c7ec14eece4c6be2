import sys


def main():
    data = sys.stdin.read().strip().split()
    if not data:
        return
    n = int(data[0])
    a = list(map(int, data[1:1 + n]))
    i = 0
    j = n // 2
    count = 0
    half = n // 2
    while i < half and j < n:
        if a[i] * 2 <= a[j]:
            count += 1
            i += 1
            j += 1
        else:
            j += 1
    print(count)


if __name__ == "__main__":
    main()
