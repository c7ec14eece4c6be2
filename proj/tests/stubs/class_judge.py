"""External complexity-judge stub: reads one JSON request line, prints argv[1].

Pass a class token to act as a fixed judge, anything else to exercise the
protocol-error path. With --echo-reference it replies with the reference
class from the request instead.
"""
import json
import sys


def main():
    request = json.loads(sys.stdin.readline())
    if len(sys.argv) > 1 and sys.argv[1] == "--echo-reference":
        print(request["reference_class"])
    elif len(sys.argv) > 1:
        print(sys.argv[1])
    else:
        print("O(n)")


if __name__ == "__main__":
    main()
