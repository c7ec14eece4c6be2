import random
import sys


def main():
    size, seed = map(int, sys.stdin.read().split())
    n = max(1, size)
    rng = random.Random(seed)
    out = sys.stdout
    out.write(str(n))
    out.write("\n")
    out.write(" ".join(str(rng.randrange(-100, 101)) for _ in range(n)))
    out.write("\n")


if __name__ == "__main__":
    main()
