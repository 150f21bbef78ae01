"""Explicit DFT eigenvectors for n = 2..6, as printed in the appendix tables."""
import math

from eigenmeasure.measure import FourthRoot

ONE, I, MINUS_ONE, MINUS_I = FourthRoot

S2, S3 = math.sqrt(2), math.sqrt(3)
TAU = (1 + math.sqrt(5)) / 2
ETA = math.sqrt(2 + TAU)
BETA = math.sqrt(1.5)

APPENDIX_VECTORS = [
    (2, ONE, (1 + S2, 1)),
    (2, MINUS_ONE, (1 - S2, 1)),
    (3, ONE, (1 + S3, 1, 1)),
    (3, MINUS_ONE, (1 - S3, 1, 1)),
    (3, MINUS_I, (0, -1, 1)),
    (4, ONE, (1, 0, 1, 0)),
    (4, ONE, (2, 1, 0, 1)),
    (4, MINUS_ONE, (-1, 1, 1, 1)),
    (4, MINUS_I, (0, -1, 0, 1)),
    (5, ONE, (TAU, 1, 0, 0, 1)),
    (5, ONE, (TAU, 0, 1, 1, 0)),
    (5, I, (0, -1, TAU + ETA, -(TAU + ETA), 1)),
    (5, MINUS_I, (0, -1, TAU - ETA, -(TAU - ETA), 1)),
    (5, MINUS_ONE, (-2 / TAU, 1, 1, 1, 1)),
    (6, ONE, (BETA, 1, 0, 1 - BETA, 0, 1)),
    (6, ONE, (1 + BETA, 0, 1, BETA, 1, 0)),
    (6, MINUS_ONE, (-BETA, 1, 0, 1 + BETA, 0, 1)),
    (6, MINUS_ONE, (1 - BETA, 0, 1, -BETA, 1, 0)),
    (6, I, (0, -1, 1 + S2, 0, -(1 + S2), 1)),
    (6, MINUS_I, (0, -1, 1 - S2, 0, -(1 - S2), 1)),
]
