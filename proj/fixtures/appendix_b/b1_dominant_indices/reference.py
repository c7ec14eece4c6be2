import sys


def main():
    data = sys.stdin.buffer.read().split()
    if not data:
        return
    n = int(data[0])
    nums = list(map(int, data[1:1 + n]))
    if n <= 1:
        print(0)
        return
    count = 0
    suffix = 0
    for i in range(n - 2, -1, -1):
        suffix += nums[i + 1]
        length = n - i - 1
        # nums[i] > suffix/length without floating point
        if nums[i] * length > suffix:
            count += 1
    print(count)


if __name__ == "__main__":
    main()
