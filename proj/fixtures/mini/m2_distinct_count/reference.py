import sys


def main():
    data = sys.stdin.buffer.read().split()
    if not data:
        return
    n = int(data[0])
    print(len(set(data[1:1 + n])))


if __name__ == "__main__":
    main()
