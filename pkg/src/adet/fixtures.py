"""Small reference patterns and inputs used by tests, demos and the CLI."""

from .pattern import ZigzagPattern


def _bits(rows):
    return [[int(c) for c in r] for r in rows]


def hexagon_pattern():
    """Six zigzags in six distinct classes, twelve crossings, three +-cells."""
    B = [[1, 1, 0, -1, -1, 0],
         [0, 1, 1, 0, -1, -1]]
    I = _bits(["110000", "100010", "010100", "000110",
               "101000", "100001", "001100", "000101",
               "011000", "010001", "001010", "000011"])
    P = ([[1, 0, 0, 0, 1, 0]] * 4
         + [[1, -1, 0, 0, 1, 1]] * 4
         + [[1, 0, 0, -1, 1, 1]] * 4)
    return ZigzagPattern(B, I, P)


def square_pattern():
    """The 2 x 2 grid of straight zigzags (n1 = n2 = 2 start pattern)."""
    B = [[1, 1, 0, 0, -1, -1, 0, 0],
         [0, 0, 1, 1, 0, 0, -1, -1]]
    I = _bits(["10100000", "10000010", "00101000", "00001010",
               "10010000", "10000001", "00011000", "00001001",
               "01100000", "01000010", "00100100", "00000110",
               "01010000", "01000001", "00010100", "00000101"])
    P = ([[1, 0, 0, 0, 0, 0, 1, 0]] * 4
         + [[1, 0, -1, 0, 0, 0, 1, 1]] * 4
         + [[1, 1, 0, 0, -1, 0, 1, 0]] * 4
         + [[1, 1, -1, 0, -1, 0, 1, 1]] * 4)
    return ZigzagPattern(B, I, P)


def single_cell_pattern():
    """Three zigzags, one crossing each way: one +-cell and one --cell.

    B columns (1,0), (0,1), (-1,-1); every pair meets once, so there are
    three crossings all on the same +-cell and --cell.
    """
    B = [[1, 0, -1],
         [0, 1, -1]]
    I = _bits(["110", "101", "011"])
    P = [[1, 1, 1]] * 3
    return ZigzagPattern(B, I, P)


def single_edge_pattern():
    """Two zigzags meeting once: the smallest matrix triple with a 1 x 1 Kasteleyn matrix.

    It is not a pattern in the strict sense (fewer than three zigzags), so
    callers pass ``check=False`` wherever validation would reject it.
    """
    return ZigzagPattern([[1, 0], [0, 1]], [[1, 1]], [[1, 1]])


# inputs for the full pipeline (2 x N relation matrices)
SQUARE_BA = [[1, 1, 0, 0, -1, -1, 0, 0],
             [0, 0, 1, 1, 0, 0, -1, -1]]
CUBIC_BA = [[1, -2, 1, 0],
            [0, 1, -2, 1]]
CUBIC_A = [[1, 1, 1, 1],
           [0, 1, 2, 3]]
HEXAGON_BA = [[1, 1, 0, -1, -1, 0],
              [0, 1, 1, 0, -1, -1]]
