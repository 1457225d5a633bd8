"""Published n = 3 illustration data, in MatCode form.

Only the centralizer list and the two 24-element conjugacy classes are kept.
The printed centralizer appears under both companion matrices but is the
centralizer of 396 only.
"""

from __future__ import annotations

# companion matrices of x^3+x+1 and x^3+x^2+1
COMPANION_X3_X_1 = 172
COMPANION_X3_X2_1 = 396

CENTRALIZER_396 = frozenset({106, 157, 247, 273, 379, 396, 486})

CLASS_X3_X_1 = frozenset({
    95, 335, 187, 485, 442, 500, 102, 142, 172, 226, 106, 204,
    115, 397, 157, 355, 370, 412, 247, 431, 253, 491, 382, 478,
})

CLASS_X3_X2_1 = frozenset({
    244, 426, 229, 171, 334, 94, 156, 354, 99, 141, 396, 114,
    492, 250, 486, 190, 207, 111, 379, 477, 415, 375, 499, 445,
})

# polynomial coefficient integer -> published class
CLASSES = {0b1011: CLASS_X3_X_1, 0b1101: CLASS_X3_X2_1}
