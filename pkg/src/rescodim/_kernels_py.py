"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``."""
from itertools import combinations


def closure(member, offsets, partner, result):
    mem = bytearray(1 if x else 0 for x in member)
    stack = [i for i, x in enumerate(mem) if x]
    while stack:
        a = stack.pop()
        for e in range(offsets[a], offsets[a + 1]):
            if mem[partner[e]] and not mem[result[e]]:
                mem[result[e]] = 1
                stack.append(result[e])
    return bytes(mem)


def scan_closed(n, triples, min_size):
    if n > 62:
        raise ValueError("scan_closed supports at most 62 classes")
    checks = [((1 << i) | (1 << j), 1 << k) for i, j, k in triples]
    full = (1 << n) - 1
    out = []
    # walk subsets by the classes they omit, so small-codimension scans stay cheap
    for missing in range(0, n - max(min_size, 0) + 1):
        for omit in combinations(range(n), missing):
            mask = full
            for i in omit:
                mask ^= 1 << i
            for need, target in checks:
                if mask & need == need and not mask & target:
                    break
            else:
                out.append(mask)
    out.sort()
    return len(out), out
