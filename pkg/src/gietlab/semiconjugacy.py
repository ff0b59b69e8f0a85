"""Finite-order conjugating maps between GIETs and IETs sharing a path prefix.

Two maps with the same induction path to depth r generate combinatorially
equivalent order-r partitions; matching like-labeled atom endpoints and
interpolating linearly gives a monotone map h that conjugates the two up to
an error bounded by the largest atom of the target partition.  Refining r
shrinks the error, approximating the limit conjugating map.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .errors import PathMismatch
from .giet import dynamical_partition


@dataclass(frozen=True)
class MonotonePLMap:
    """Piecewise-linear non-decreasing surjection of [0, 1) onto itself."""

    nodes: tuple[tuple[float, float], ...]

    def __post_init__(self):
        assert self.nodes[0] == (0.0, 0.0) and self.nodes[-1] == (1.0, 1.0)
        xs = [p[0] for p in self.nodes]
        ys = [p[1] for p in self.nodes]
        assert all(b > a for a, b in zip(xs, xs[1:])), "node x must strictly increase"
        assert all(b >= a for a, b in zip(ys, ys[1:])), "node y must not decrease"

    def eval(self, x: float) -> float:
        xs = [p[0] for p in self.nodes[1:-1]]
        i = bisect_right(xs, x)
        (x0, y0), (x1, y1) = self.nodes[i], self.nodes[i + 1]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    __call__ = eval

    def as_table(self) -> str:
        return "\n".join(f"{x:.12f}\t{y:.12f}" for x, y in self.nodes)


def build_semiconjugacy(f, T, r: int) -> MonotonePLMap:
    """Node map from order-r atoms of ``f`` to like-labeled atoms of ``T``.

    Both maps must share the induction path to depth ``r``.
    """
    pf = dynamical_partition(f, r)
    pt = dynamical_partition(T, r)
    if pf.labels() != pt.labels():
        raise PathMismatch(f"order-{r} partitions are not combinatorially equivalent")
    nodes = [(0.0, 0.0)]
    for af, at in zip(pf.atoms, pt.atoms):
        x, y = float(af.lo), float(at.lo)
        if x > nodes[-1][0]:
            nodes.append((x, y))
    nodes.append((1.0, 1.0))
    return MonotonePLMap(tuple(nodes))


def residual(h: MonotonePLMap, f, T, sample_count: int = 128) -> float:
    """Largest conjugation defect ``|h(f(x)) - T(h(x))|`` over sample points.

    Samples are the midpoints of h's defining cells plus a uniform grid.
    """
    xs = set()
    for (x0, _), (x1, _) in zip(h.nodes, h.nodes[1:]):
        xs.add(0.5 * (x0 + x1))
    for i in range(sample_count):
        xs.add((i + 0.5) / sample_count)
    worst = 0.0
    for x in sorted(xs):
        lhs = h.eval(float(f.eval(x)))
        rhs = float(T.eval(h.eval(x)))
        worst = max(worst, abs(lhs - rhs))
    return worst
