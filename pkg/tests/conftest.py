import pytest

# OA(9,4,3,2): rows (a, b, a+b, a+2b) mod 3 — every column pair realizes all
# nine value pairs exactly once.
OA_9_4_3_2 = [
    (0, 0, 0, 0),
    (0, 1, 1, 2),
    (0, 2, 2, 1),
    (1, 0, 1, 1),
    (1, 1, 2, 0),
    (1, 2, 0, 2),
    (2, 0, 2, 2),
    (2, 1, 0, 1),
    (2, 2, 1, 0),
]


@pytest.fixture
def oa9():
    return [row for row in OA_9_4_3_2]
