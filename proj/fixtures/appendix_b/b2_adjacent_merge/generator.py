import sys

# All-ones input: merges cascade like a binary counter, the worst case
# for the stack simulation.


def main():
    parts = sys.stdin.read().split()
    size = int(parts[0])
    n = max(1, size)
    out = sys.stdout
    out.write(str(n))
    out.write("\n")
    out.write(" ".join(["1"] * n))
    out.write("\n")


if __name__ == "__main__":
    main()
