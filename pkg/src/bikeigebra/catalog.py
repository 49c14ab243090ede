"""Published operation matrices, kept as block-matrix text."""

from .blockmatrix import parse_matrix

MATRICES = {
    # order 2; every operation trivial, 1*1=1, 2*2=2, T swaps
    "x2": """
1 1 | 1 1 | 1 1 | 1 - | 2
2 2 | 2 2 | 2 2 | - 2 | 1
""",
    # order 4, total product
    "x4a": """
2 2 1 1 | 2 2 1 1 | 2 2 1 1 | 3 4 1 2 | 2
1 1 2 2 | 1 1 2 2 | 1 1 2 2 | 4 3 2 1 | 1
3 3 3 3 | 3 3 3 3 | 3 3 3 3 | 1 2 3 4 | 3
4 4 4 4 | 4 4 4 4 | 4 4 4 4 | 2 1 4 3 | 4
""",
    # same bikei as x4a, another virtual operation and a partial product
    "x4b": """
2 2 1 1 | 2 2 1 1 | 1 1 1 1 | - - - - | 2
1 1 2 2 | 1 1 2 2 | 2 2 2 2 | - - - - | 1
3 3 3 3 | 3 3 3 3 | 3 3 3 3 | - - 3 4 | 3
4 4 4 4 | 4 4 4 4 | 4 4 4 4 | - - 4 3 | 4
""",
    # order 4 used to separate a pair of links by twist-bar position.
    # As printed it fails tii.ii (1 v 3 = 2 but 1 v T(3) = 1 v 4 = 1).
    "x4c": """
1 1 1 2 | 1 1 2 1 | 1 1 2 1 | 1 - - - | 2
2 2 2 1 | 2 2 1 2 | 2 2 1 2 | - 2 - - | 1
3 3 4 4 | 3 3 4 4 | 3 3 3 3 | - - - - | 4
4 4 3 3 | 4 4 3 3 | 4 4 4 4 | - - - - | 3
""",
    # order 8, total product (Z2^3 labelled 1..8)
    "x8": """
1 1 1 1 1 1 1 1 | 1 1 1 1 1 1 1 1 | 1 1 1 1 1 1 1 1 | 1 2 3 4 5 6 7 8 | 1
2 6 6 2 2 6 6 2 | 2 6 2 6 2 6 2 6 | 2 2 2 2 2 2 2 2 | 2 1 4 3 6 5 8 7 | 2
3 3 7 7 3 3 7 7 | 3 7 7 3 3 7 7 3 | 3 3 7 7 3 3 7 7 | 3 4 1 2 7 8 5 6 | 4
4 8 4 8 4 8 4 8 | 4 4 8 8 4 4 8 8 | 4 4 8 8 4 4 8 8 | 4 3 2 1 8 7 6 5 | 3
5 5 5 5 5 5 5 5 | 5 5 5 5 5 5 5 5 | 5 5 5 5 5 5 5 5 | 5 6 7 8 1 2 3 4 | 5
6 2 2 6 6 2 2 6 | 6 2 6 2 6 2 6 2 | 6 6 6 6 6 6 6 6 | 6 5 8 7 2 1 4 3 | 6
7 7 3 3 7 7 3 3 | 7 3 3 7 7 3 3 7 | 7 7 3 3 7 7 3 3 | 7 8 5 6 3 4 1 2 | 8
8 4 8 4 8 4 8 4 | 8 8 4 4 8 8 4 4 | 8 8 4 4 8 8 4 4 | 8 7 6 5 4 3 2 1 | 7
""",
    # x2 with a constant under operation; breaks rii.i
    "broken": """
1 1 | 1 1 | 1 1 | 1 - | 2
1 1 | 2 2 | 2 2 | - 2 | 1
""",
}

# the four structures asserted valid as printed
VALID = ("x2", "x4a", "x4b", "x8")


def load(name: str):
    return parse_matrix(MATRICES[name], name=name)
