"""Shared builders for randomized sweeps.

Every test draws from an explicitly seeded ``random.Random``, so failures
reproduce deterministically.
"""

from fractions import Fraction

from gietlab.branches import PiecewiseLinear, SmoothParam, Translation
from gietlab.combinatorics import all_admissible_data
from gietlab.exact_iet import ExactIET
from gietlab.giet import giet_from_branches


def random_exact_iet(rng, d, max_num=60):
    datum = rng.choice(all_admissible_data("ABCDE"[:d]))
    lengths = [Fraction(rng.randint(1, max_num)) for _ in range(d)]
    return ExactIET.from_lengths(datum, lengths)


def random_lengths(rng, d, floor=0.05):
    raw = [rng.uniform(floor, 1.0) for _ in range(d)]
    total = sum(raw)
    return [x / total for x in raw]


def random_unit_giet(rng, d=None, datum=None):
    """A unit-interval GIET with mixed branch kinds.

    Some letters get translation branches (equal top and bottom lengths); the
    rest get affine, piecewise-linear or smooth branches.
    """
    if datum is None:
        datum = rng.choice(all_admissible_data("ABCDE"[:d]))
    d = datum.d
    top = random_lengths(rng, d)
    translated = [i for i in range(d) if rng.random() < 0.3 and d > 1][: d - 1]
    rest = [i for i in range(d) if i not in translated]
    budget = 1.0 - sum(top[i] for i in translated)
    raw = [rng.uniform(0.05, 1.0) for _ in rest]
    scale = budget / sum(raw)
    bottom = list(top)
    for i, r in zip(rest, raw):
        bottom[i] = r * scale

    kinds = {}
    for i, a in enumerate(datum.alphabet):
        if i in translated:
            kinds[a] = "translation"
        else:
            kinds[a] = rng.choice(("affine", "pl", "smooth"))
    ks = {a: rng.uniform(-2.0, 2.0) for a in datum.alphabet}
    mids = {a: rng.uniform(0.25, 0.75) for a in datum.alphabet}
    bends = {a: rng.uniform(0.25, 0.75) for a in datum.alphabet}

    def maker(a, dom, rng_):
        kind = kinds[a]
        if kind == "translation":
            return Translation(dom, rng_)
        if kind == "affine":
            return SmoothParam(dom, rng_, k=0.0)
        if kind == "smooth":
            return SmoothParam(dom, rng_, k=ks[a])
        mx = dom[0] + mids[a] * (dom[1] - dom[0])
        my = rng_[0] + bends[a] * (rng_[1] - rng_[0])
        return PiecewiseLinear(((dom[0], rng_[0]), (mx, my), (dom[1], rng_[1])))

    return giet_from_branches(datum, top, bottom, maker)


def random_simplex(rng, letters, floor=0.02):
    raw = {a: rng.uniform(floor, 1.0) for a in letters}
    total = sum(raw.values())
    return {a: v / total for a, v in raw.items()}
