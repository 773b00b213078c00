#!/usr/bin/env python3
"""Independent computation of the derived constants frozen into the C++ tests.

Everything here is computed from first principles (enumeration and Fraction
arithmetic), not by calling the C++ code. Run it and diff against the constants
embedded in tests/ when touching any of them.
"""

from fractions import Fraction
from itertools import combinations
import json
import math


def positive_roots(kind, n):
    """Tuples of e-basis coefficients for the positive system."""
    roots = []
    for i, j in combinations(range(n), 2):
        for sj in (1, -1):
            v = [0] * n
            v[i] = 1
            v[j] = sj
            roots.append(tuple(v))
    for i in range(n):
        v = [0] * n
        v[i] = 2
        roots.append(tuple(v))
    if kind == "BC":
        for i in range(n):
            v = [0] * n
            v[i] = 1
            roots.append(tuple(v))
    return roots


def vertex(n, k):
    """Q_k in units of pi."""
    return tuple(Fraction(1, 2) if i < k else Fraction(0) for i in range(n))


def barycenter(n, idxs, with_apex):
    pts = [vertex(n, k) for k in idxs]
    if with_apex:
        pts.append(tuple(Fraction(0) for _ in range(n)))
    c = len(pts)
    return tuple(sum(p[i] for p in pts) / c for i in range(n))


def evaluate(root, t):
    return sum(c * ti for c, ti in zip(root, t))


def partition(kind, n, t):
    act, zero, pi = [], [], []
    for r in positive_roots(kind, n):
        v = evaluate(r, t)
        (zero if v == 0 else pi if v == 1 else act).append(r)
    return act, zero, pi


def fmt_root(r):
    terms = []
    for i, c in enumerate(r):
        if c:
            terms.append(f"{'+' if c > 0 else '-'}{abs(c)}e{i + 1}")
    return "".join(terms)


out = {}

out["positive_root_counts"] = {
    f"{kind}{n}": len(positive_roots(kind, n))
    for kind in ("C", "BC")
    for n in range(1, 7)
    if not (kind == "C" and n < 2)
}

out["pairing_examples"] = {
    # dot products; the pairing divides by d
    "dot(2e1,2e1)": 4,
    "dot(e1+e2,e1-e2)": 0,
    "dot(e1+e2,e1+e2)": 2,
    "pairing(e1+e2,e1+e2,d=3)": str(Fraction(2, 3)),
}

out["face_samples_rank2"] = {
    "{l1}": [str(x) for x in barycenter(2, [1], False)],
    "{l1,delta}": [str(x) for x in barycenter(2, [1], True)],
    "{l1,l2}": [str(x) for x in barycenter(2, [1, 2], False)],
    "{l1,l2,delta}": [str(x) for x in barycenter(2, [1, 2], True)],
    "{l2,delta}": [str(x) for x in barycenter(2, [2], True)],
}
out["face_samples_rank3"] = {
    "{l1,l3}": [str(x) for x in barycenter(3, [1, 3], False)],
    "{l2,delta}": [str(x) for x in barycenter(3, [2], True)],
    "{l1,l2,l3,delta}": [str(x) for x in barycenter(3, [1, 2, 3], True)],
}

act, zero, pi = partition("C", 2, (Fraction(1, 4), Fraction(1, 4)))
out["C2_at_quarter_quarter"] = {
    "active": sorted(fmt_root(r) for r in act),
    "zero": sorted(fmt_root(r) for r in zero),
    "pi": sorted(fmt_root(r) for r in pi),
}
act, zero, pi = partition("BC", 2, vertex(2, 1))
out["BC2_at_Q1"] = {
    "active": sorted(fmt_root(r) for r in act),
    "zero": sorted(fmt_root(r) for r in zero),
    "pi": sorted(fmt_root(r) for r in pi),
}

# dimension = rank + sum of multiplicities over the positive system
def dim_from_mults(kind, rank, m2e, mee, me):
    per_class = {2: 0, 1: 0}
    total = rank
    for r in positive_roots(kind, rank):
        s = sum(abs(c) for c in r)
        if s == 2 and max(abs(c) for c in r) == 2:
            total += m2e
        elif s == 2:
            total += mee
        else:
            total += me
    return total


out["dimension_examples"] = {
    "G2C4": dim_from_mults("C", 2, 1, 2, 0),       # 2k(n-k) = 8
    "G1C3": dim_from_mults("BC", 1, 1, 0, 2),      # CP^2 -> 4
    "G2C5": dim_from_mults("BC", 2, 1, 2, 2),      # 12
    "Sp3U3": dim_from_mults("C", 3, 1, 1, 0),      # n(n+1) = 12
    "SO8U4": dim_from_mults("C", 2, 1, 4, 0),      # n(n-1) = 12
    "SO10U5": dim_from_mults("BC", 2, 1, 4, 4),    # 20
    "OG7": dim_from_mults("C", 2, 1, 3, 0),        # 2(n-2) = 10
    "EIII": dim_from_mults("BC", 2, 1, 6, 8),      # 32
    "EVII": dim_from_mults("C", 3, 1, 8, 0),       # 54
}

# matrix model dimensions (independent closed forms)
out["model_dims"] = {
    "su4": 4 * 4 - 1,
    "so10": 10 * 9 // 2,
    "sp2": 2 * 5,
    "sp3": 3 * 7,
    "m_su4_k2": 2 * 2 * (4 - 2),
    "m_so10": 20,
    "m_sp2": 2 * 3,
}

# sasaki parameter spot values
out["sasaki_parameter"] = {
    "d=1": 0.5,
    "d=3": 2 / math.pi * math.atan(1 / math.sqrt(3)),
    "t13_exact": str(Fraction(1, 3)),
    "tan2_pi6_times_3": 3 * math.tan(math.pi / 6) ** 2,
}

# k-constant spot values via the closed formula
def k_constant(d, t):
    return (1 / d) * (1 + 2 / math.tan(t * math.pi / 2) / math.tan(t * math.pi))


out["k_constant"] = {
    "(1,1/2)": k_constant(1.0, 0.5),
    "(4,1/2)": k_constant(4.0, 0.5),
    "(3,1/3)": k_constant(3.0, 1 / 3),
}

# ricci fiber-sum cross-check: sum over polar fibers at Q1 of
# (1/4)*dot(mu,mu)*contribution, contribution values in units of d
def ricci_sum(kind, rank, mee, me, pairs_ee):
    total = Fraction(0)
    # diff fibers e1 +- e_l, l >= 3: every vector contributes 2d
    total += Fraction(1, 4) * 2 * (2 * (rank - 2)) * mee * 2
    # same fiber e1+e2, other vectors: 8d each
    total += Fraction(1, 4) * 2 * (mee - 1) * 8
    # opposite fiber e1-e2: 8d total
    total += Fraction(1, 4) * 2 * 8
    # e1 fiber (BC): 4d each
    if kind == "BC":
        total += Fraction(1, 4) * 1 * me * 4
    return total


out["ricci_fiber_sums"] = {
    "G2C4": str(ricci_sum("C", 2, 2, 0, 1)),       # 4n = 8
    "G4C8": str(ricci_sum("C", 4, 2, 0, 1)),       # 16
    "OG10": str(ricci_sum("C", 2, 2 * (5 - 2), 0, 3)),  # 4(n-4) = 24
    "OG7": str(ricci_sum("C", 2, 3, 0, 1)),        # 12
    "SO8U4": str(ricci_sum("C", 2, 4, 0, 2)),      # 4n' = 16
    "SO10U5": str(ricci_sum("BC", 2, 4, 4, 2)),    # 20
    "Sp2U2": str(ricci_sum("C", 2, 1, 0, 0)),      # 2n = 4
    "Sp5U5": str(ricci_sum("C", 5, 1, 0, 0)),      # 10
    "EIII": str(ricci_sum("BC", 2, 6, 8, 3)),      # 32
    "EVII": str(ricci_sum("C", 3, 8, 0, 4)),       # 48
}

# einstein solve: d = ricci / (2*polar_dim + 4 - ricci)
def solve(ricci, polar_dim):
    den = 2 * polar_dim + 4 - ricci
    if den <= 0:
        return None
    d = Fraction(ricci, den)
    return d if d > 0 else None


out["einstein_solutions"] = {
    "GnC2n": {n: str(solve(4 * n, 4 * (n - 1))) for n in range(2, 9)},
    "OG": {n: str(solve(4 * (n - 4), 2 * (n - 4))) for n in range(5, 11)},
    "SO2nUn": {n: str(solve(4 * n, 4 * n - 8)) for n in range(4, 9)},
    "SpnUn": {n: str(solve(2 * n, 2 * (n - 1))) for n in range(2, 9)},
    "EIII": str(solve(32, 20)),
    "EVII": str(solve(48, 32)),
}

print(json.dumps(out, indent=2))
