import random
import sys


def main():
    size, seed = map(int, sys.stdin.read().split())
    n = max(1, size)
    rng = random.Random(seed)
    k = 5 * n  # keeps window lengths moderate at every scale
    out = sys.stdout
    out.write(f"{n} {k}\n")
    out.write(" ".join(str(rng.randrange(0, 50)) for _ in range(n)))
    out.write("\n")


if __name__ == "__main__":
    main()
