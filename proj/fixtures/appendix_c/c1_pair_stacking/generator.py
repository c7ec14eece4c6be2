import sys

# Worst-case shape: every prefix pairing is feasible, so the binary-search
# candidate re-scans full prefixes at every probe. First half 1s, second
# half 2s keeps the array non-decreasing and 2*a[i] <= a[j] for all pairs.


def main():
    parts = sys.stdin.read().split()
    size = int(parts[0])
    n = max(2, size)
    if n % 2:
        n += 1
    half = n // 2
    out = sys.stdout
    out.write(str(n))
    out.write("\n")
    out.write(" ".join(["1"] * half + ["2"] * half))
    out.write("\n")


if __name__ == "__main__":
    main()
