import math
import random
import sys


def main():
    size, seed = map(int, sys.stdin.read().split())
    n = max(2, int(math.isqrt(max(4, size))))  # DP is O(k*n*m); keep n*m ~ size
    m = n
    k = 2
    rng = random.Random(seed)
    out = sys.stdout
    out.write(f"{n} {m} {k}\n")
    out.write(" ".join(str(rng.randrange(-50, 51)) for _ in range(n)))
    out.write("\n")
    out.write(" ".join(str(rng.randrange(-50, 51)) for _ in range(m)))
    out.write("\n")


if __name__ == "__main__":
    main()
