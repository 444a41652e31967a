"""Rational polyhedral cones in small dimension via double description.

A cone is stored in V-form: a lattice basis of its lineality space (in
Hermite normal form) plus primitive extreme rays.  Rays are canonicalized by
reducing the coordinates in the lineality pivot columns to zero over Q and
rescaling to a primitive integer vector, so two descriptions of the same
cone compare equal.
"""

from fractions import Fraction
from math import gcd, lcm

from .intlinalg import primitive, row_lattice_basis, vec_dot


class Cone:
    __slots__ = ("ambient_dim", "lineality", "rays", "inequalities")

    def __init__(self, ambient_dim, lineality, rays, inequalities=None):
        self.ambient_dim = ambient_dim
        self.lineality = [list(r) for r in row_lattice_basis(lineality)]
        self.rays = sorted(_canonical_rays(rays, self.lineality, ambient_dim))
        self.inequalities = [list(a) for a in inequalities] if inequalities is not None else None

    def __eq__(self, other):
        return (isinstance(other, Cone)
                and self.ambient_dim == other.ambient_dim
                and self.lineality == other.lineality
                and self.rays == other.rays)

    def __repr__(self):
        return "Cone(dim=%d, lineality=%r, rays=%r)" % (
            self.ambient_dim, self.lineality, self.rays)

    @property
    def lineality_dim(self):
        return len(self.lineality)

    def contains(self, v):
        if self.inequalities is None:
            raise ValueError("no inequality form stored")
        return all(vec_dot(a, v) >= 0 for a in self.inequalities)


def _rref(rows, dim):
    """Reduced row echelon form over Q; returns (rref rows, pivot columns)."""
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for col in range(dim):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][col]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    return mat[:r], pivots


def _canonical_rays(rays, lineality, dim):
    rref, pivots = _rref(lineality, dim) if lineality else ([], [])
    out = set()
    for ray in rays:
        v = [Fraction(x) for x in ray]
        for row, col in zip(rref, pivots):
            if v[col] != 0:
                f = v[col]
                v = [a - f * b for a, b in zip(v, row)]
        if all(x == 0 for x in v):
            continue  # ray inside the lineality span: not a ray
        mult = lcm(*[x.denominator for x in v]) if v else 1
        iv = [int(x * mult) for x in v]
        out.add(tuple(primitive(iv)))
    return [list(t) for t in out]


def dual_cone(generators, dim):
    """The cone {w : <w, g> >= 0 for all g}, by double description.

    An empty generator list yields the full space.
    """
    lineality = [[1 if i == j else 0 for j in range(dim)] for i in range(dim)]
    rays = []
    processed = []

    def tight_set(r):
        return frozenset(i for i, a in enumerate(processed) if vec_dot(a, r) == 0)

    for a in generators:
        a = list(a)
        if all(x == 0 for x in a):
            continue
        vals = [vec_dot(a, v) for v in lineality]
        if any(vals):
            # the constraint cuts the lineality space: one basis vector
            # becomes a ray, the rest are projected into the hyperplane
            idx = next(i for i, x in enumerate(vals) if x != 0)
            v0 = lineality[idx]
            if vals[idx] < 0:
                v0 = [-x for x in v0]
            av0 = abs(vals[idx])
            new_lin = []
            for i, v in enumerate(lineality):
                if i == idx:
                    continue
                new_lin.append(primitive([av0 * x - vals[i] * y for x, y in zip(v, v0)]))
            rays = [primitive([av0 * x - vec_dot(a, r) * y for x, y in zip(r, v0)])
                    for r in rays]
            rays.append(primitive(v0))
            lineality = new_lin
        else:
            pos, zero, neg = [], [], []
            for r in rays:
                val = vec_dot(a, r)
                (pos if val > 0 else zero if val == 0 else neg).append(r)
            if neg:
                new_rays = pos + zero
                for p in pos:
                    tp = tight_set(p)
                    for m in neg:
                        common = tp & tight_set(m)
                        adjacent = not any(
                            r is not p and r is not m and common <= tight_set(r)
                            for r in rays)
                        if adjacent:
                            ap, am = vec_dot(a, p), vec_dot(a, m)
                            new_rays.append(primitive(
                                [ap * x - am * y for x, y in zip(m, p)]))
                rays = new_rays
        seen = set()
        unique = []
        for r in rays:
            t = tuple(r)
            if t not in seen:
                seen.add(t)
                unique.append(r)
        rays = unique
        processed.append(a)

    return Cone(dim, lineality, rays, inequalities=[list(g) for g in generators])
