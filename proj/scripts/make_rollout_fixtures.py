"""Build the rollout / reward / pairwise JSONL fixtures."""
import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "fixtures" / "rollouts"
PAIRS = Path(__file__).resolve().parent.parent / "fixtures" / "pairs"


def block(code, lang="python"):
    return f"```{lang}\n{code}```\n"


B1_OK = """import sys

data = sys.stdin.buffer.read().split()
n = int(data[0])
nums = list(map(int, data[1:1 + n]))
count = 0
suffix = 0
for i in range(n - 2, -1, -1):
    suffix += nums[i + 1]
    if nums[i] * (n - i - 1) > suffix:
        count += 1
print(count)
"""

B1_WRONG = B1_OK.replace("> suffix", ">= suffix")

B1_RAISES = """import sys

data = sys.stdin.read().split()
raise RuntimeError("boom")
"""

B2_OK = """import sys

data = sys.stdin.buffer.read().split()
n = int(data[0])
nums = list(map(int, data[1:1 + n]))
stack = []
for x in nums:
    cur = x
    while stack and stack[-1] == cur:
        cur += stack.pop()
    stack.append(cur)
print(" ".join(map(str, stack)))
"""

B2_ONE_PASS = """import sys

data = sys.stdin.buffer.read().split()
n = int(data[0])
nums = list(map(int, data[1:1 + n]))
out = []
i = 0
while i < len(nums):
    if i + 1 < len(nums) and nums[i] == nums[i + 1]:
        out.append(nums[i] * 2)
        i += 2
    else:
        out.append(nums[i])
        i += 1
print(" ".join(map(str, out)))
"""

B3_OK = """import sys

data = sys.stdin.buffer.read().split()
it = iter(data)
n = int(next(it))
k = int(next(it))
nums = [int(next(it)) for _ in range(n)]
ans = 0
for l in range(n):
    hi = lo = nums[l]
    for r in range(l, n):
        hi = max(hi, nums[r])
        lo = min(lo, nums[r])
        if (hi - lo) * (r - l + 1) <= k:
            ans += 1
print(ans)
"""

B3_BAD_INDEX = """import sys

data = sys.stdin.buffer.read().split()
n = int(data[0])
nums = list(map(int, data[2:2 + n]))
print(nums[n])
"""

B4_OK = """import sys

data = sys.stdin.buffer.read().split()
it = iter(data)
n = int(next(it))
m = int(next(it))
k = int(next(it))
a = [int(next(it)) for _ in range(n)]
b = [int(next(it)) for _ in range(m)]
if k == 0 or k > n or k > m:
    print(0)
else:
    NEG = float("-inf")
    prev = [[0] * (m + 1) for _ in range(n + 1)]
    for _ in range(k):
        cur = [[NEG] * (m + 1) for _ in range(n + 1)]
        for i in range(1, n + 1):
            for j in range(1, m + 1):
                cur[i][j] = max(cur[i - 1][j], cur[i][j - 1],
                                prev[i - 1][j - 1] + a[i - 1] * b[j - 1])
        prev = cur
    print(int(prev[n][m]))
"""

B4_CHATTY = B4_OK.replace("print(int(prev[n][m]))", 'print("answer:", int(prev[n][m]))')

M1_OK_A = """import sys

data = sys.stdin.buffer.read().split()
n = int(data[0])
print(sum(map(int, data[1:1 + n])))
"""

M1_OK_B = """import sys

data = sys.stdin.buffer.read().split()
n = int(data[0])
total = 0
for tok in data[1:1 + n]:
    total += int(tok)
print(total)
"""

M1_OK_C = """import sys
from functools import reduce

data = sys.stdin.buffer.read().split()
n = int(data[0])
print(reduce(lambda acc, t: acc + int(t), data[1:1 + n], 0))
"""

M1_ABS = """import sys

data = sys.stdin.buffer.read().split()
n = int(data[0])
print(sum(abs(int(t)) for t in data[1:1 + n]))
"""

M1_CONST = """print(42)
"""

M1_RAISES = """import sys

values = sys.stdin.read().split()
raise ValueError("cannot decide")
"""


def rollout(problem_id, idx, response):
    return {"problem_id": problem_id, "rollout_index": idx, "response": response}


def main():
    OUT.mkdir(exist_ok=True)
    PAIRS.mkdir(exist_ok=True)

    appendix_b = [
        rollout("b1_dominant_indices", 0,
                "Suffix sums avoid recomputing averages.\n" + block(B1_OK)),
        rollout("b1_dominant_indices", 1,
                "Compare against the mean per index.\n" + block(B1_WRONG)),
        rollout("b1_dominant_indices", 2, block(B1_RAISES)),
        rollout("b1_dominant_indices", 3,
                "The dominant count follows from the definition; no code needed.\n"),
        rollout("b2_adjacent_merge", 0, "Stack simulation.\n" + block(B2_OK)),
        rollout("b2_adjacent_merge", 1, "Single sweep suffices.\n" + block(B2_ONE_PASS)),
        rollout("b3_subarray_cost_count", 0,
                "Direct double loop over windows.\n" + block(B3_OK)),
        rollout("b3_subarray_cost_count", 1, block(B3_BAD_INDEX)),
        rollout("b4_k_pair_product_max", 0, "Layered DP.\n" + block(B4_OK)),
        rollout("b4_k_pair_product_max", 1, block(B4_CHATTY)),
    ]
    with open(OUT / "appendix_b_mixed.jsonl", "w") as f:
        for r in appendix_b:
            f.write(json.dumps(r, sort_keys=True) + "\n")

    group8 = [
        rollout("m1_interval_sum", 0, "Builtin sum.\n" + block(M1_OK_A)),
        rollout("m1_interval_sum", 1, "Accumulate in a loop.\n" + block(M1_OK_B)),
        rollout("m1_interval_sum", 2, "Fold.\n" + block(M1_OK_C)),
        rollout("m1_interval_sum", 3, "Magnitudes are what matter.\n" + block(M1_ABS)),
        rollout("m1_interval_sum", 4, block(M1_CONST)),
        rollout("m1_interval_sum", 5, block(M1_RAISES)),
        rollout("m1_interval_sum", 6, "```python\n```\nEmpty block above.\n"),
        rollout("m1_interval_sum", 7, "I would sum the integers and print the total.\n"),
    ]
    with open(OUT / "mini_group8.jsonl", "w") as f:
        for r in group8:
            f.write(json.dumps(r, sort_keys=True) + "\n")

    with open(OUT / "rewards_demo.jsonl", "w") as f:
        f.write(json.dumps({"problem_id": "demo", "rewards": [1.0, 1.0, 0.0, 0.0]},
                           sort_keys=True) + "\n")
        f.write(json.dumps({"problem_id": "flat", "rewards": [0.5, 0.5, 0.5]},
                           sort_keys=True) + "\n")

    # Linearly separable pairs: winners carry a fenced code block, losers are
    # prose-only, so the fence-count feature alone separates them.
    pairs = []
    snippets = [M1_OK_A, M1_OK_B, B2_OK, B3_OK, B1_OK, M1_OK_C]
    proses = [
        "First sort the array, then scan once keeping a running best.",
        "Use a prefix sum so each query is constant time.",
        "A greedy exchange argument shows the leftmost choice is safe.",
        "Binary search the answer and check feasibility in linear time.",
        "Model it as a shortest path and relax edges in order.",
        "Maintain a monotone deque over the sliding window.",
    ]
    contexts = [
        "Sum a list of integers from standard input.",
        "Merge adjacent equal numbers until stable.",
        "Count subarrays under a cost bound.",
    ]
    idx = 0
    for ctx in contexts:
        for i in range(len(snippets)):
            code_resp = "Solution:\n" + block(snippets[i])
            prose_resp = proses[(idx + i) % len(proses)] + "\n"
            if i % 2 == 0:
                pairs.append({"context": ctx, "response_a": code_resp,
                              "response_b": prose_resp, "outcome": "a_wins"})
            else:
                pairs.append({"context": ctx, "response_a": prose_resp,
                              "response_b": code_resp, "outcome": "b_wins"})
        idx += 1
    pairs.append({"context": contexts[0], "response_a": proses[0] + "\n",
                  "response_b": proses[0] + "\n", "outcome": "tie"})
    pairs.append({"context": contexts[1], "response_a": "Solution:\n" + block(B2_OK),
                  "response_b": "Solution:\n" + block(B2_OK), "outcome": "tie"})
    with open(PAIRS / "train.jsonl", "w") as f:
        for p in pairs:
            f.write(json.dumps(p, sort_keys=True) + "\n")

    print(f"appendix_b_mixed: {len(appendix_b)} rollouts")
    print(f"mini_group8: {len(group8)} rollouts")
    print(f"pairs/train: {len(pairs)} pairs")


if __name__ == "__main__":
    main()
