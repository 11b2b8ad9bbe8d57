import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rescodim.roots import RootSystemType  # noqa: E402

CLASSICAL_MIN = {"A": 1, "B": 2, "C": 2, "D": 4, "BC": 1}
EXCEPTIONAL = [("E6", 6), ("E7", 7), ("E8", 8), ("F4", 4), ("G2", 2)]


def types_up_to(max_rank=8, min_rank=1):
    out = []
    for fam, lo in CLASSICAL_MIN.items():
        out += [RootSystemType(fam, n) for n in range(max(lo, min_rank), max_rank + 1)]
    out += [RootSystemType(f, n) for f, n in EXCEPTIONAL if min_rank <= n <= max_rank]
    return out


ALL_TYPES = types_up_to(8)
HIGHER_RANK = types_up_to(8, 2)
SMALL = [RootSystemType(f, n) for f, n in
         [("A", 2), ("A", 3), ("B", 2), ("C", 2), ("B", 3), ("C", 3), ("BC", 2), ("BC", 3), ("G2", 2)]]


@pytest.fixture(params=HIGHER_RANK, ids=str)
def higher_rank_type(request):
    return request.param
