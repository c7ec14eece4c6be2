import sys


def main():
    size, seed = map(int, sys.stdin.read().split())
    n = max(2, size)
    m = n
    out = sys.stdout
    out.write(f"{n} {m}\n")
    out.write(" ".join(["7"] * n))
    out.write("\n")
    out.write(" ".join(["7"] * m))
    out.write("\n")


if __name__ == "__main__":
    main()
