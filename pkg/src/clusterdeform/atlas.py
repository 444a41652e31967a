"""Exhaustive exchange-graph enumeration for finite cluster type.

Each cluster variable is tracked through its principal-coefficient Laurent
expansion in the ring K[x_1^{+-},..,x_n^{+-}, x_{n+1},..,x_m, y_1,..,y_n];
g-vectors, F-polynomials and coefficient-free Laurent expansions are read
off from it, while an independent g-matrix recursion via E-matrices is run
alongside and must agree at every step.
"""

from .polynomials import Poly, exact_divide
from .seeds import ExtendedExchangeMatrix, Seed


class AtlasError(Exception):
    pass


class ClusterVariable:
    __slots__ = ("id", "g_vector", "laurent", "f_polynomial", "principal", "is_frozen")

    def __init__(self, id, g_vector, laurent, f_polynomial, principal, is_frozen):
        self.id = id
        self.g_vector = tuple(g_vector)
        self.laurent = laurent
        self.f_polynomial = f_polynomial
        self.principal = principal
        self.is_frozen = is_frozen

    def __repr__(self):
        return "ClusterVariable(%r, g=%r)" % (self.id, self.g_vector)


class ExchangePair:
    """An unordered exchangeable pair with its exchange-relation monomials.

    monomials holds the two sides of x*x' = alpha_1 + alpha_2 as exponent
    dicts over variable ids, in a canonical order.
    """

    __slots__ = ("pair", "monomials")

    def __init__(self, pair, monomials):
        self.pair = frozenset(pair)
        self.monomials = monomials

    def __repr__(self):
        return "ExchangePair(%r, %r)" % (set(self.pair), self.monomials)


class SeedState:
    """One enumerated seed: matrix, variable ids by position, g-matrix."""

    __slots__ = ("index", "matrix", "ids", "g_matrix", "pvars", "path")

    def __init__(self, index, matrix, ids, g_matrix, pvars, path):
        self.index = index
        self.matrix = matrix          # (m+n) x n principal extension rows
        self.ids = ids                # length m
        self.g_matrix = g_matrix      # m x m, columns are g-vectors
        self.pvars = pvars            # length n principal expansions
        self.path = path              # mutation sequence from the root

    def base_matrix(self, n, m):
        return ExtendedExchangeMatrix([list(r) for r in self.matrix[:m]], n=n)

    def g_vector_at(self, i):
        return tuple(row[i] for row in self.g_matrix)


def _mutate_rows(rows, n, k):
    m = len(rows)
    out = []
    for i in range(m):
        new_row = []
        for j in range(n):
            if i == k or j == k:
                new_row.append(-rows[i][j])
            else:
                bik = rows[i][k]
                sgn = (bik > 0) - (bik < 0)
                new_row.append(rows[i][j] + sgn * max(bik * rows[k][j], 0))
        out.append(tuple(new_row))
    return tuple(out)


def _e_matrix_rows(rows, m, k, sign):
    E = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    for i in range(m):
        E[i][k] = -1 if i == k else max(0, -sign * rows[i][k])
    return E


def _mat_mul(A, B):
    bt = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in bt) for row in A)


class Atlas:
    def __init__(self, initial_seed):
        self.initial_seed = initial_seed
        self.n = initial_seed.matrix.n
        self.m = initial_seed.matrix.m
        self.variables = {}
        self.id_by_g = {}
        self.seeds = []
        self.seed_graph = {}
        self.exchange_pairs = {}

    @property
    def frozen_ids(self):
        return list(self.initial_seed.var_ids[self.n:])

    @property
    def mutable_variables(self):
        return [v for v in self.variables.values() if not v.is_frozen]

    @property
    def clusters(self):
        out = []
        for state in self.seeds:
            out.append(tuple(sorted(state.ids[:self.n])) + tuple(state.ids[self.n:]))
        return out

    def laurent_expansion(self, variable_id):
        return self._get(variable_id).laurent

    def g_vector(self, variable_id):
        return self._get(variable_id).g_vector

    def _get(self, variable_id):
        if variable_id not in self.variables:
            raise KeyError("unknown variable id %r" % (variable_id,))
        return self.variables[variable_id]

    def exchange_partners(self, variable_id):
        out = []
        for pair in self.exchange_pairs:
            if variable_id in pair:
                (other,) = pair - {variable_id}
                out.append(other)
        return out


def _variable_name(g):
    return "x(" + ",".join(str(x) for x in g) + ")"


def _strip(poly, keep):
    """Project a Poly to the coordinates listed in `keep`."""
    terms = {}
    for e, c in poly.terms.items():
        key = tuple(e[i] for i in keep)
        s = terms.get(key, 0) + c
        if s == 0:
            terms.pop(key, None)
        else:
            terms[key] = s
    return Poly(len(keep), terms)


def _extract_g(principal, m, n):
    """The exponent of the unique y-free term of a principal expansion."""
    candidates = [e for e in principal.terms if all(x == 0 for x in e[m:])]
    if len(candidates) != 1:
        raise AtlasError("separation failure: y-free term not unique")
    e = candidates[0]
    if principal.terms[e] != 1:
        raise AtlasError("separation failure: y-free coefficient not 1")
    return tuple(e[:m])


def enumerate_atlas(seed, max_seeds=100000):
    """BFS over labeled seeds, deduplicated by the multiset of mutable
    g-vectors; collects all cluster variables and exchange relations."""
    n, m = seed.matrix.n, seed.matrix.m
    nv = m + n
    atlas = Atlas(seed)

    for i in range(m):
        g = tuple(1 if j == i else 0 for j in range(m))
        principal = Poly.variable(nv, i)
        var = ClusterVariable(
            seed.var_ids[i], g,
            laurent=Poly.variable(m, i),
            f_polynomial=Poly.one(n),
            principal=principal,
            is_frozen=i >= n)
        atlas.variables[var.id] = var
        atlas.id_by_g[g] = var.id

    bp0 = tuple(tuple(seed.matrix.entries[i]) for i in range(m)) + \
        tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    g0 = tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m))
    root = SeedState(0, bp0, tuple(seed.var_ids),
                     g0, tuple(Poly.variable(nv, i) for i in range(n)), ())
    atlas.seeds.append(root)
    cluster_index = {_cluster_key(atlas, root, n): 0}

    frontier = [root]
    while frontier:
        next_frontier = []
        for state in frontier:
            for k in range(n):
                if (state.index, k) in atlas.seed_graph:
                    continue
                new_state, pair_info = _mutate_state(atlas, state, k, n, m)
                key = _cluster_key(atlas, new_state, n)
                if key in cluster_index:
                    j = cluster_index[key]
                    atlas.seed_graph[(state.index, k)] = j
                    existing = atlas.seeds[j]
                    back = _find_back_index(atlas, existing, state, n)
                    if back is not None:
                        atlas.seed_graph[(j, back)] = state.index
                else:
                    if len(atlas.seeds) >= max_seeds:
                        raise AtlasError("enumeration budget exceeded")
                    new_state.index = len(atlas.seeds)
                    atlas.seeds.append(new_state)
                    cluster_index[key] = new_state.index
                    atlas.seed_graph[(state.index, k)] = new_state.index
                    atlas.seed_graph[(new_state.index, k)] = state.index
                    next_frontier.append(new_state)
                pair_key, monomials = pair_info
                if pair_key not in atlas.exchange_pairs:
                    atlas.exchange_pairs[pair_key] = ExchangePair(pair_key, monomials)
        frontier = next_frontier
    return atlas


def _cluster_key(atlas, state, n):
    return tuple(sorted(atlas.variables[state.ids[i]].g_vector for i in range(n)))


def _find_back_index(atlas, existing, origin, n):
    """Position in `existing` whose mutation returns to `origin`'s cluster."""
    origin_set = set(atlas.variables[origin.ids[i]].g_vector for i in range(n))
    exist_set = set(atlas.variables[existing.ids[i]].g_vector for i in range(n))
    diff = exist_set - origin_set
    if len(diff) != 1:
        return None
    g = diff.pop()
    for i in range(n):
        if atlas.variables[existing.ids[i]].g_vector == g:
            return i
    return None


def _mutate_state(atlas, state, k, n, m):
    nv = m + n
    rows = state.matrix

    # exchange: numerator of the new principal expansion
    plus = Poly.one(nv)
    minus = Poly.one(nv)
    for i in range(nv):
        b = rows[i][k]
        if b == 0:
            continue
        if i < n:
            base = state.pvars[i]
        else:
            base = Poly.variable(nv, i)
        if b > 0:
            plus = plus * base ** b
        else:
            minus = minus * base ** (-b)
    new_pvar = exact_divide(plus + minus, state.pvars[k])

    # g-matrix recursion: eps = common sign of the k-th c-vector
    c_col = [rows[m + i][k] for i in range(n)]
    has_pos = any(x > 0 for x in c_col)
    has_neg = any(x < 0 for x in c_col)
    if has_pos and has_neg:
        raise AtlasError("c-vector sign-coherence violated")
    eps = 1 if has_pos else -1
    E = _e_matrix_rows(rows, m, k, eps)
    new_g_matrix = _mat_mul(state.g_matrix, E)
    g_new = tuple(row[k] for row in new_g_matrix)

    g_extracted = _extract_g(new_pvar, m, n)
    if g_extracted != g_new:
        raise AtlasError("g-vector recursion disagrees with separation: %r vs %r"
                         % (g_new, g_extracted))

    if g_new in atlas.id_by_g:
        new_id = atlas.id_by_g[g_new]
    else:
        new_id = _variable_name(g_new)
        f_poly = _strip(new_pvar.specialize({i: 1 for i in range(m)}), range(m, nv))
        laurent = _strip(new_pvar.specialize({i: 1 for i in range(m, nv)}), range(m))
        var = ClusterVariable(new_id, g_new, laurent, f_poly, new_pvar, False)
        atlas.variables[new_id] = var
        atlas.id_by_g[g_new] = new_id

    # exchange-relation monomials over the current seed's variable ids
    mon_plus = {}
    mon_minus = {}
    for i in range(m):
        b = rows[i][k]
        if b > 0:
            mon_plus[state.ids[i]] = b
        elif b < 0:
            mon_minus[state.ids[i]] = -b
    pair_key = frozenset({state.ids[k], new_id})
    monomials = tuple(sorted(
        (tuple(sorted(mon_plus.items())), tuple(sorted(mon_minus.items())))))

    new_ids = list(state.ids)
    new_ids[k] = new_id
    new_pvars = list(state.pvars)
    new_pvars[k] = new_pvar
    new_state = SeedState(-1, _mutate_rows(rows, n, k), tuple(new_ids),
                          new_g_matrix, tuple(new_pvars), state.path + (k,))
    return new_state, (pair_key, monomials)


def separation_check(atlas):
    """Verify x^g * F(y_hat) = principal expansion for every variable."""
    n, m = atlas.n, atlas.m
    nv = m + n
    b0 = atlas.initial_seed.matrix.entries
    yhat = []
    for j in range(n):
        e = [0] * nv
        e[m + j] = 1
        for i in range(m):
            e[i] += b0[i][j]
        yhat.append(Poly.monomial(nv, e))
    for var in atlas.variables.values():
        f_full = Poly(nv, {(0,) * m + e: c for e, c in var.f_polynomial.terms.items()})
        rhs = f_full.compose([Poly.one(nv)] * m + yhat) if n else Poly.one(nv)
        rhs = rhs.scale_monomial(tuple(var.g_vector) + (0,) * n)
        if rhs != var.principal:
            return False
    return True


def tropical_g_vector(atlas, variable_id):
    """g-vector via the tropical evaluation of the F-polynomial (finite type)."""
    var = atlas.variables[variable_id]
    f = var.f_polynomial
    n, m = atlas.n, atlas.m
    if f.is_zero() or f == Poly.one(n):
        raise ValueError("F-polynomial is 1; tropical formula does not apply")
    b0 = atlas.initial_seed.matrix.entries
    num = []
    den = []
    for i in range(m):
        vals_num = []
        vals_den = []
        for alpha in f.terms:
            vals_num.append(sum(a * (-1 if j == i and j < n else 0)
                                for j, a in enumerate(alpha)))
            vals_den.append(sum(a * b0[i][j] for j, a in enumerate(alpha)))
        num.append(min(vals_num))
        den.append(min(vals_den))
    return tuple(x - y for x, y in zip(num, den))
