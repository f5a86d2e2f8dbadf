"""Reference targets for the two bundled reproduction examples.

Each entry pins the expected factor-filtration outcome for one input form:
the bound, the power of E_{p-1}, the witness coordinates in the monomial
basis, and the weight at which the sharpness probe must fail.
"""

from __future__ import annotations

REPRODUCTION_EXAMPLES = {
    "paper-7-8": {
        "p": 7,
        "m": 8,
        "kind": "G",
        "weight": 2026,
        "bound": 52,
        "witness-exponent": 329,
        "monomials": [(13, 0, 0), (10, 0, 1), (7, 0, 2), (4, 0, 3), (1, 0, 4)],
        "coefficients": [289118, 3330770, 1615995, 4467661, 1172952],
        "sharpness-weight": 46,
        "certified-coefficients": 170,
    },
    "paper-17-6": {
        "p": 17,
        "m": 6,
        "kind": "E",
        "weight": 1296,
        "bound": 80,
        "witness-exponent": 76,
        "monomials": [
            (20, 0, 0), (17, 0, 1), (14, 0, 2), (11, 0, 3),
            (8, 0, 4), (5, 0, 5), (2, 0, 6),
        ],
        "coefficients": [1, 17835578, 1427399, 23585491, 19629555, 23614096, 44217],
        "sharpness-weight": 64,
        "certified-coefficients": 110,
    },
}
