import sys

# Worst-case shape: reversed permutation, n*(n-1)/2 inversions, so the
# swap-simulating candidate performs a quadratic number of heap rounds.


def main():
    parts = sys.stdin.read().split()
    size = int(parts[0])
    n = max(1, size)
    out = sys.stdout
    out.write(str(n))
    out.write("\n")
    out.write(" ".join(str(v) for v in range(n, 0, -1)))
    out.write("\n")


if __name__ == "__main__":
    main()
