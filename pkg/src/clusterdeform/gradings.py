"""Gradings: the M-grading (cokernel of the exchange matrix), positive
grading search, rank flags, frozen-variable augmentation, and t-degrees."""

from .cones import dual_cone
from .intlinalg import kernel_basis, smith_normal_form, transpose, vec_dot
from .seeds import ExtendedExchangeMatrix, Seed


class GradingData:
    """The universal grading by M = coker(B~) and the degrees of variables.

    deg_H maps a variable id to a pair (free part, torsion residues); the
    torsion moduli are listed in `torsion`.
    """

    __slots__ = ("free_rank", "torsion", "deg_H", "snf", "_rows", "_moduli_rows")

    def __init__(self, free_rank, torsion, deg_H, snf, rows, moduli_rows):
        self.free_rank = free_rank
        self.torsion = torsion
        self.deg_H = deg_H
        self.snf = snf
        self._rows = rows          # rows of L giving the free components
        self._moduli_rows = moduli_rows  # (modulus, row of L) for torsion

    def degree_of_vector(self, w):
        """Image in M of an arbitrary integer vector of length m."""
        free = tuple(vec_dot(row, w) for row in self._rows)
        tors = tuple(vec_dot(row, w) % d for d, row in self._moduli_rows)
        return (free, tors)

    def degree_of_monomial(self, exponents, order):
        """Degree of a monomial given by exponents over the id list `order`."""
        free = (0,) * self.free_rank
        tors = [0] * len(self.torsion)
        for v, e in zip(order, exponents):
            if e == 0:
                continue
            f, t = self.deg_H[v]
            free = tuple(a + e * b for a, b in zip(free, f))
            tors = [x + e * y for x, y in zip(tors, t)]
        tors = tuple(x % d for x, d in zip(tors, self.torsion))
        return (free, tors)


def m_grading(matrix, atlas=None):
    """M = coker(B~) via Smith normal form; degrees of the initial variables
    are the images of the standard basis vectors, and all other variables get
    deg_H = image of their g-vector."""
    m = matrix.m
    A = [list(r) for r in matrix.entries]
    snf = smith_normal_form(A)
    r = snf.rank
    moduli_rows = [(snf.diag[i], snf.left[i]) for i in range(r) if snf.diag[i] > 1]
    rows = [snf.left[i] for i in range(r, m)]
    torsion = [d for d, _ in moduli_rows]
    free_rank = m - r

    deg_H = {}
    data = GradingData(free_rank, torsion, deg_H, snf, rows, moduli_rows)
    if atlas is not None:
        for var in atlas.variables.values():
            deg_H[var.id] = data.degree_of_vector(list(var.g_vector))
    else:
        for i in range(m):
            e = [1 if j == i else 0 for j in range(m)]
            deg_H[i] = data.degree_of_vector(e)
    return data


def rank_flags(matrix):
    A = [list(r) for r in matrix.entries]
    snf = smith_normal_form(A)
    full_rank = snf.rank == matrix.n
    full_z_rank = full_rank and all(d == 1 for d in snf.diag[:snf.rank])
    return {"full_rank": full_rank, "full_Z_rank": full_z_rank}


def _positive_combination(constraint_rows, dim):
    """A mu with <a, mu> >= 1 for every constraint row, or None.

    Solved exactly by converting the homogenized feasibility problem to a
    cone and looking for a generator with positive slack coordinate."""
    gens = [list(a) + [-1] for a in constraint_rows]
    gens.append([0] * dim + [1])
    cone = dual_cone(gens, dim + 1)
    for ray in cone.rays:
        if ray[dim] > 0:
            return ray[:dim]
    return None


def find_positive_grading(atlas, strict=False):
    """Integer D with B~^T D = 0 and g . D >= 1 for every mutable g-vector.

    With strict=True every variable (frozen included) must get degree >= 1,
    which is the termination requirement of the property checkers."""
    matrix = atlas.initial_seed.matrix
    bt = transpose([list(r) for r in matrix.entries])
    basis = kernel_basis(bt)
    if not basis:
        return None
    targets = [list(v.g_vector) for v in atlas.mutable_variables]
    if strict:
        for j in range(matrix.n, matrix.m):
            targets.append([1 if i == j else 0 for i in range(matrix.m)])
    constraints = [[vec_dot(g, b) for b in basis] for g in targets]
    mu = _positive_combination(constraints, len(basis))
    if mu is None:
        return None
    D = [sum(mu[b] * basis[b][i] for b in range(len(basis))) for i in range(matrix.m)]
    assert all(vec_dot(g, D) >= 1 for g in targets)
    return D


def find_strictly_positive(atlas):
    return find_positive_grading(atlas, strict=True)


def add_frozen_for_positivity(seed, max_seeds=100000):
    """Add n frozen rows plus one balancing row so that (1,...,1) becomes a
    grading giving every cluster variable positive degree."""
    from .atlas import enumerate_atlas

    base = enumerate_atlas(seed, max_seeds=max_seeds)
    n, m = seed.matrix.n, seed.matrix.m
    c = min(sum(v.g_vector) for v in base.mutable_variables) - 1
    rows = [list(r) for r in seed.matrix.entries]
    for k in range(n):
        rows.append([-abs(c) if j == k else 0 for j in range(n)])
    # balancing row: make every column sum zero, so (1,...,1) is a grading
    rows.append([-sum(row[j] for row in rows) for j in range(n)])
    labels = list(seed.var_ids) + \
        ["aux%d" % (k + 1) for k in range(n)] + ["bal"]
    m_plus = m + n + 1
    grading = [[1] for _ in range(m_plus)]
    out = Seed(ExtendedExchangeMatrix(rows, n=n), labels, grading)

    # re-verify: every cluster variable of the augmented algebra has
    # positive degree under the all-ones grading
    check = enumerate_atlas(out, max_seeds=max_seeds)
    if any(sum(v.g_vector) < 1 for v in check.mutable_variables):
        raise RuntimeError("positivity augmentation failed verification")
    return out


def t_degrees(univ):
    """deg_T(t_i) in Z^{p+q}: exchange-monomial degree minus the degree of
    the alpha_1 side owned by t_i, over the base variable order."""
    order = univ.variable_order
    index = {v: i for i, v in enumerate(order)}
    out = {}
    for t_id in univ.t_ids:
        degs = set()
        for rel_idx, side_idx in univ.owners[t_id]:
            relation = univ.univ_relations[rel_idx]
            vec = [0] * len(order)
            for v in relation["pair"]:
                vec[index[v]] += 1
            _, z_part = relation["sides"][side_idx]
            for v, e in z_part.items():
                vec[index[v]] -= e
            degs.add(tuple(vec))
        if len(degs) != 1:
            raise ValueError("inconsistent degrees for %s: %r" % (t_id, degs))
        out[t_id] = degs.pop()
    return out
