"""Reference diameters of the prefix-reversal graph, degrees 2..19.

Values beyond desk scale (n >= 13) come from the published computations
and are used as fixed constants; the toolkit recomputes n <= 12 only.
"""

DIAMETERS = {
    2: 1,
    3: 3,
    4: 4,
    5: 5,
    6: 7,
    7: 8,
    8: 9,
    9: 10,
    10: 11,
    11: 13,
    12: 14,
    13: 15,
    14: 16,
    15: 17,
    16: 18,
    17: 19,
    18: 20,
    19: 22,
}
