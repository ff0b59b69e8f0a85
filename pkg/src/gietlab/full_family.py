"""The explicit deformation operator and its boundary degenerations.

Given a unit-interval GIET ``f`` and a simplex vector ``tau``, the operator
conjugates ``f`` by two piecewise-affine changes of variable so that the
critical values of the result land exactly at the positions linearly marked
by ``tau`` (consecutive partial sums along the bottom row).  The image slopes
``phi`` act on the bottom intervals, the domain slopes ``psi = phi / rescale``
on the top ones.  Applying the operator twice collapses: the second parameter
wins, so each ``f`` spans a full parameter family.

On the closed simplex, letters with ``tau = 0`` collapse to points: the
result is a degeneration made of a reduced-alphabet GIET plus one singular
point per removed letter.
"""

from __future__ import annotations

from dataclasses import dataclass

from .branches import Affine, Composite
from .combinatorics import CombinatorialDatum, reduction
from .errors import AllZero, DegenerateTau
from .giet import Giet


def _tau_dict(datum: CombinatorialDatum, tau) -> dict:
    if isinstance(tau, dict):
        return {a: float(tau[a]) for a in datum.alphabet}
    return {a: float(v) for a, v in zip(datum.alphabet, tau)}


@dataclass(frozen=True)
class FamilySlopes:
    """Per-letter image slopes, the rescaling factor, and domain slopes."""

    phi: dict
    rescale: float
    psi: dict


def slopes(f: Giet, tau) -> FamilySlopes:
    """Slope data of the deformation of ``f`` by ``tau`` (open simplex)."""
    tau = _tau_dict(f.datum, tau)
    if any(v <= 0 for v in tau.values()):
        raise DegenerateTau(f"tau must be strictly positive, got {tau}")
    return _slopes_closed(f, tau)


def _slopes_closed(f: Giet, tau: dict) -> FamilySlopes:
    assert abs(f.length - 1.0) <= 1e-9, "deformations act on unit-interval maps"
    phi = {}
    for a, lo, hi in f.bottom_intervals():
        phi[a] = tau[a] / (hi - lo)
    rescale = sum(phi[a] * (hi - lo) for a, lo, hi in f.top_intervals())
    psi = {a: phi[a] / rescale for a in f.datum.alphabet}
    return FamilySlopes(phi, rescale, psi)


def _deformed(f: Giet, tau: dict, sl: FamilySlopes, keep) -> tuple[dict, dict, dict]:
    """Breakpoints and branches of the deformed map, restricted to ``keep``."""
    datum = f.datum
    top_breaks, bottom_breaks, branches = {}, {}, {}
    acc = 0.0
    for a, lo, hi in f.top_intervals():
        if a in keep:
            top_breaks[a] = acc
            acc += sl.psi[a] * (hi - lo)
    acc = 0.0
    for a in datum.bottom:
        if a in keep:
            bottom_breaks[a] = acc
            acc += tau[a]
    for a, lo, hi in f.top_intervals():
        if a not in keep:
            continue
        new_dom = (top_breaks[a], top_breaks[a] + sl.psi[a] * (hi - lo))
        rng = f.branches[a].range_
        new_rng = (bottom_breaks[a], bottom_breaks[a] + tau[a])
        branches[a] = Composite(
            outer=Affine(rng, new_rng),
            core=f.branches[a],
            inner=Affine(new_dom, (lo, hi)),
        )
    return top_breaks, bottom_breaks, branches


def apply(f: Giet, tau) -> Giet:
    """Deform ``f`` so its critical values sit at the tau partial sums.

    Every output branch is a composite ``(outer affine) o (branch of f) o
    (inner affine)``, so the deformation preserves branch regularity.
    """
    tau = _tau_dict(f.datum, tau)
    if any(v <= 0 for v in tau.values()):
        raise DegenerateTau(f"tau must be strictly positive, got {tau}")
    sl = _slopes_closed(f, tau)
    top_breaks, bottom_breaks, branches = _deformed(f, tau, sl, set(f.datum.alphabet))
    return Giet(f.datum, 1.0, top_breaks, bottom_breaks, branches)


@dataclass(frozen=True)
class Degeneration:
    """Limit object at the simplex boundary: a reduced GIET plus singular points."""

    datum: CombinatorialDatum
    reduced_datum: CombinatorialDatum
    regular: Giet
    singular: dict

    @property
    def removed(self):
        return tuple(sorted(self.singular))


def boundary_apply(f: Giet, tau) -> Degeneration:
    """Deformation at a boundary parameter: zero entries collapse letters.

    A collapsed letter leaves the singular point its branch graph shrinks to:
    the image of its critical point under the (now non-injective) domain
    change, paired with the tau partial sum below it along the bottom row.
    Both coordinates land on breakpoints of the regular part or at 1.
    """
    tau = _tau_dict(f.datum, tau)
    if any(v < 0 for v in tau.values()):
        raise DegenerateTau(f"tau must be non-negative, got {tau}")
    zeros = {a for a, v in tau.items() if v == 0.0}
    if not zeros:
        raise DegenerateTau("boundary deformation needs at least one zero entry")
    if len(zeros) == f.datum.d:
        raise AllZero("tau vanishes identically")
    keep = set(f.datum.alphabet) - zeros
    sl = _slopes_closed(f, tau)
    top_breaks, bottom_breaks, branches = _deformed(f, tau, sl, keep)
    reduced = reduction(f.datum, keep)
    regular = Giet(reduced, 1.0, top_breaks, bottom_breaks, branches)
    psi_image = {}
    acc = 0.0
    for a, lo, hi in f.top_intervals():
        psi_image[a] = acc
        acc += sl.psi[a] * (hi - lo)
    singular = {}
    for a in zeros:
        x = psi_image[a]
        y = sum(tau[c] for c in f.datum.alphabet if f.datum.pi_b(c) <= f.datum.pi_b(a))
        singular[a] = (x, y)
    return Degeneration(f.datum, reduced, regular, singular)


def extended_distance(a, b, samples: int = 64) -> float:
    """Graph distance extended to degenerations: collapsed letters compare as points."""

    def components(obj):
        if isinstance(obj, Degeneration):
            comps = {}
            for letter in obj.datum.alphabet:
                if letter in obj.singular:
                    comps[letter] = [obj.singular[letter]]
                else:
                    comps[letter] = _graph(obj.regular, letter, samples)
            return obj.datum.alphabet, comps
        return obj.datum.alphabet, {
            letter: _graph(obj, letter, samples) for letter in obj.datum.alphabet
        }

    alpha_a, comp_a = components(a)
    alpha_b, comp_b = components(b)
    assert alpha_a == alpha_b, "objects live over different alphabets"
    total = 0.0
    for letter in alpha_a:
        total += _hausdorff(comp_a[letter], comp_b[letter])
    return total


def _graph(g: Giet, letter: str, samples: int):
    br = g.branches[letter]
    lo, hi = br.domain
    return [
        (lo + (hi - lo) * i / samples, br.eval(lo + (hi - lo) * i / samples))
        for i in range(samples + 1)
    ]


def _hausdorff(p, q):
    def one_sided(src, dst):
        worst = 0.0
        for x, y in src:
            best = min((x - u) ** 2 + (y - v) ** 2 for u, v in dst)
            worst = max(worst, best)
        return worst ** 0.5

    return max(one_sided(p, q), one_sided(q, p))
