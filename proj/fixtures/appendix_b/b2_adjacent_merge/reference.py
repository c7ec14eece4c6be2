import sys


def main():
    data = sys.stdin.buffer.read().split()
    if not data:
        return
    n = int(data[0])
    nums = list(map(int, data[1:1 + n]))
    stack = []
    for num in nums:
        current = num
        # Merging can cascade leftward through the stack.
        while stack and stack[-1] == current:
            current += stack.pop()
        stack.append(current)
    print(" ".join(map(str, stack)))


if __name__ == "__main__":
    main()
