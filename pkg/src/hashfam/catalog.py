"""Hand-checked seed families used as composition ingredients.

Both live on four rows over four symbols per row.  The first is perfect at
strength 4; the second trades perfection for a part budget of 2 while being
fractal, which is what the deeper compositions need.
"""

from __future__ import annotations

from .core import HashFamily

# Perfect at strength 4: any 4 of the 5 columns get 4 distinct symbols in
# some row (delete column j and row j keeps the rest distinct).
PHF_4_5 = HashFamily(
    (
        (0, 0, 1, 2, 3),
        (0, 1, 1, 2, 3),
        (0, 1, 2, 2, 3),
        (0, 1, 2, 3, 3),
    ),
    (4, 4, 4, 4),
    claimed_strength=4,
    claimed_parts=4,
)

# Fractal with part budget 2 at strength 4: columns are the lines of a
# 3 x 3 grid plus one extra column on the spare symbol.
DHF_4_10 = HashFamily(
    (
        (0, 0, 0, 1, 1, 1, 2, 2, 2, 3),
        (0, 1, 2, 0, 1, 2, 0, 1, 2, 3),
        (0, 1, 2, 1, 2, 0, 2, 0, 1, 3),
        (0, 1, 2, 2, 0, 1, 1, 2, 0, 3),
    ),
    (4, 4, 4, 4),
    claimed_strength=4,
    claimed_parts=2,
)
