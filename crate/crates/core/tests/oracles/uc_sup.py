"""Exhaustive sup of |L_D - L_S| over planar LTF traces on six points.

A labeling is realizable iff y_i (w.x_i + b) >= 1 is feasible (scipy LP).
"""
from fractions import Fraction
import itertools
from scipy.optimize import linprog

pts = [(0.0, 0.0), (3.0, 1.0), (1.0, 4.0), (-2.0, 3.0), (-1.0, -3.0), (2.0, -2.0)]
labels = [0, 1, 1, 0, 0, 1]
sample = [1, 3, 3, 4]

def realizable(bits):
    A, b = [], []
    for (x, y), bit in zip(pts, bits):
        s = 1 if bit else -1
        A.append([-s * x, -s * y, -s])
        b.append(-1.0)
    r = linprog([0, 0, 0], A_ub=A, b_ub=b, bounds=[(None, None)] * 3, method="highs")
    return r.status == 0

traces = [bits for bits in itertools.product([0, 1], repeat=6) if realizable(bits)]
best = Fraction(0)
for t in traces:
    wrong = [int(a != b) for a, b in zip(t, labels)]
    true = Fraction(sum(wrong), 6)
    emp = Fraction(sum(wrong[i] for i in sample), len(sample))
    best = max(best, abs(true - emp))
print(len(traces), best, float(best))
