"""Equivariant order-by-order lifting of the squarefree monomial ideal to a
flat family over the coefficient parameters, with exchange-minimal
tie-breaking.  All arithmetic is exact.

Variables are indexed z first, t after; every polynomial is homogeneous for
the fine grading in which z_v has degree e_v and t_i the degree computed by
the gradings module.  Corrections at each order live in the standard-monomial
complement of the order-zero ideal, which makes each obstruction system a
small sparse rational linear system.
"""

from fractions import Fraction

from .gradings import t_degrees
from .groebner import groebner_cone
from .polynomials import Poly
from .intlinalg import vec_dot


class DeformError(Exception):
    pass


class DeformationFamily:
    __slots__ = ("univ", "z_vars", "t_vars", "t_deg", "weights", "lam",
                 "generators", "sr_leads", "exchange_flags", "order",
                 "order_zero", "_jgens")

    def __init__(self, **kw):
        for name in self.__slots__:
            setattr(self, name, kw[name])

    @property
    def nz(self):
        return len(self.z_vars)

    @property
    def nv(self):
        return len(self.z_vars) + len(self.t_vars)

    def order_key(self, e):
        return (vec_dot(self.weights, e[:self.nz]), sum(e), e)

    def lead(self, g):
        return max(g, key=self.order_key)

    def tdeg(self, e):
        return sum(e[self.nz:])

    def in_order_zero(self, e):
        """Whether the z-part of the exponent lies in the monomial ideal."""
        z = e[:self.nz]
        return any(all(a <= b for a, b in zip(j, z)) for j in self._jgens)

    def polynomials(self):
        return [Poly(self.nv, dict(g)) for g in self.generators]


def _full_degree(family, e):
    """Fine degree in Z^{p+q} of a monomial exponent over z and t."""
    nz = family.nz
    deg = list(e[:nz])
    for i, t in enumerate(family.t_vars):
        b = e[nz + i]
        if b:
            d = family.t_deg[t]
            deg = [x + b * y for x, y in zip(deg, d)]
    return tuple(deg)


def first_order(univ, J, weight=None):
    """Perturb each exchangeable-pair generator by its owned coefficients;
    all other generators start unperturbed."""
    if univ.has_isolated_vertex:
        raise DeformError("isolated vertex: no canonical first-order data")
    z_vars = list(univ.variable_order)
    t_vars = list(univ.t_ids)
    nz, nt = len(z_vars), len(t_vars)
    nv = nz + nt
    zindex = {v: i for i, v in enumerate(z_vars)}
    tindex = {t: i for i, t in enumerate(t_vars)}

    tdeg_map = t_degrees(univ)
    if weight is None:
        weight = groebner_cone(univ).interior_weight
    if any(x < 0 for x in weight):
        raise DeformError("weight vector has negative entries")
    lam = {}
    for t in t_vars:
        val = vec_dot(weight, tdeg_map[t])
        if val < 1:
            raise DeformError("weight is not positive on %s" % t)
        lam[t] = val

    jindex = {v: i for i, v in enumerate(J.variables)}
    jgens = []
    for gen in J.generators:
        e = [0] * nz
        for v, i in jindex.items():
            e[zindex[v]] = gen[i]
        jgens.append(tuple(e))
    jgens.sort()

    generators = []
    sr_leads = []
    for zgen in jgens:
        full = zgen + (0,) * nt
        generators.append({full: Fraction(1)})
        sr_leads.append(full)
    lead_index = {l: i for i, l in enumerate(sr_leads)}

    pairs = set()
    for ep in univ.base_atlas.exchange_pairs.values():
        e = [0] * nz
        for v in ep.pair:
            e[zindex[v]] += 1
        pairs.add(tuple(e) + (0,) * nt)
    exchange_flags = [l in pairs for l in sr_leads]

    for t in t_vars:
        rel_idx, side_idx = univ.owners[t][0]
        rel = univ.univ_relations[rel_idx]
        b = [0] * nv
        for v in rel["pair"]:
            b[zindex[v]] += 1
        b = tuple(b)
        if b not in lead_index:
            raise DeformError("exchange monomial %r is not an ideal "
                              "generator" % (b,))
        _, z_part = rel["sides"][side_idx]
        corr = [0] * nv
        for v, e in z_part.items():
            corr[zindex[v]] = e
        corr[nz + tindex[t]] = 1
        generators[lead_index[b]][tuple(corr)] = Fraction(-1)

    return DeformationFamily(
        univ=univ, z_vars=z_vars, t_vars=t_vars, t_deg=tdeg_map,
        weights=list(weight), lam=[lam[t] for t in t_vars],
        generators=generators, sr_leads=sr_leads,
        exchange_flags=exchange_flags, order=1, order_zero=J, _jgens=jgens)


def _spoly_data(family, i, l):
    """(cofactor_i, cofactor_l) exponents for the S-pair, or None if the
    leads are coprime."""
    a = family.sr_leads[i]
    b = family.sr_leads[l]
    lcm = tuple(max(x, y) for x, y in zip(a, b))
    if all(lcm[j] == a[j] + b[j] for j in range(family.nz)):
        return None
    mi = tuple(x - y for x, y in zip(lcm, a))
    ml = tuple(x - y for x, y in zip(lcm, b))
    return mi, ml


def _shift(g, mono, coeff=Fraction(1)):
    return {tuple(a + b for a, b in zip(e, mono)): c * coeff
            for e, c in g.items()}


def _add_into(target, source):
    for e, c in source.items():
        s = target.get(e, Fraction(0)) + c
        if s == 0:
            target.pop(e, None)
        else:
            target[e] = s


def _divide(family, f, cut):
    """Truncated division by the family generators.

    Terms of t-degree above `cut` are discarded.  Returns the remainder and
    the quotient on each generator; every remainder term has a z-part
    outside the order-zero ideal.
    """
    work = {e: c for e, c in f.items() if cut is None or family.tdeg(e) <= cut}
    remainder = {}
    quotients = [dict() for _ in family.generators]
    nz = family.nz
    while work:
        e = family.lead(work)
        c = work[e]
        hit = None
        for j, lead in enumerate(family.sr_leads):
            if all(e[x] >= lead[x] for x in range(nz)):
                hit = j
                break
        if hit is None:
            remainder[e] = c
            del work[e]
            continue
        mono = tuple(a - b for a, b in zip(e, family.sr_leads[hit]))
        _add_into(quotients[hit], {mono: c})
        piece = _shift(family.generators[hit], mono, c)
        if cut is not None:
            piece = {x: v for x, v in piece.items() if family.tdeg(x) <= cut}
        for x in list(piece):
            s = work.get(x, Fraction(0)) - piece[x]
            if s == 0:
                work.pop(x, None)
            else:
                work[x] = s
    return remainder, quotients


def _candidates(family, j, k):
    """Correction monomials for generator j at t-degree exactly k: the
    t-exponent beta determines the z-exponent by degree matching; the
    z-part must be a standard monomial."""
    nz, nt = family.nz, len(family.t_vars)
    target = family.sr_leads[j][:nz]
    budget = vec_dot(family.weights, target)
    out = []
    beta = [0] * nt
    gamma0 = list(target)

    def rec(i, left, spent, gamma):
        if left == 0:
            g = tuple(gamma)
            if all(x >= 0 for x in g) and not family.in_order_zero(
                    g + (0,) * nt):
                out.append((tuple(beta), g))
            return
        if i == nt:
            return
        lam = family.lam[i]
        d = family.t_deg[family.t_vars[i]]
        b = 0
        g = list(gamma)
        while spent + b * lam <= budget and b <= left:
            beta[i] = b
            rec(i + 1, left - b, spent + b * lam, g)
            b += 1
            g = [x - y for x, y in zip(g, d)]
        beta[i] = 0

    rec(0, k, 0, gamma0)
    return out


def _max_possible_order(family):
    min_lam = min(family.lam)
    return max(vec_dot(family.weights, l[:family.nz])
               for l in family.sr_leads) // min_lam


def _solve_affine(rows, rhs):
    """Solution space of rows . u = rhs over Q as (particular, nullspace
    basis); None if inconsistent."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    A = [[Fraction(x) for x in row] + [Fraction(rhs[i])]
         for i, row in enumerate(rows)]
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][col]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
    for i in range(r, m):
        if A[i][n] != 0:
            return None
    particular = [Fraction(0)] * n
    for row, col in enumerate(pivots):
        particular[col] = A[row][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for row, col in enumerate(pivots):
            vec[col] = -A[row][fc]
        basis.append(vec)
    return particular, basis


def _exchange_minimal(particular, basis, priority):
    """Greedy zeroing in priority order inside the affine solution space;
    remaining freedom is collapsed to the particular point."""
    p = list(particular)
    N = [list(b) for b in basis]
    for idx in priority:
        if p[idx] == 0 and all(b[idx] == 0 for b in N):
            continue
        b0 = next((b for b in N if b[idx] != 0), None)
        if b0 is None:
            continue  # forced nonzero
        f = p[idx] / b0[idx]
        p = [x - f * y for x, y in zip(p, b0)]
        N = [[x - (b[idx] / b0[idx]) * y for x, y in zip(b, b0)]
             for b in N if b is not b0]
    return p


def lift(family, max_order=16):
    """Raise the truncation order until every S-pair reduces to zero and the
    weight budget rules out further corrections."""
    budget = _max_possible_order(family)
    for k in range(2, max_order + 1):
        progressed = _lift_round(family, k)
        family.order = k
        if not progressed and k >= budget:
            break
    else:
        if _has_obstructions(family):
            raise DeformError("order budget exceeded")
    if _has_obstructions(family):
        raise DeformError("obstructed at order %d" % family.order)
    return family


def _pair_reductions(family, cut):
    out = []
    n = len(family.generators)
    for i in range(n):
        for l in range(i + 1, n):
            data = _spoly_data(family, i, l)
            if data is None:
                continue
            mi, ml = data
            s = _shift(family.generators[i], mi)
            _add_into(s, _shift(family.generators[l], ml, Fraction(-1)))
            r, q = _divide(family, s, cut)
            out.append((i, l, mi, ml, r, q))
    return out


def _has_obstructions(family):
    return any(r for _, _, _, _, r, _ in _pair_reductions(family, None))


def _lift_round(family, k):
    reductions = _pair_reductions(family, k)
    if all(not r for _, _, _, _, r, _ in reductions):
        return False
    nz = family.nz
    nt = len(family.t_vars)

    unknowns = []
    index = {}
    gen_order = sorted(range(len(family.generators)),
                       key=lambda j: (not family.exchange_flags[j],
                                      family.sr_leads[j]))
    for j in gen_order:
        for beta, gamma in _candidates(family, j, k):
            index[(j, beta)] = len(unknowns)
            unknowns.append((j, beta, gamma))
    if not unknowns:
        raise DeformError("obstructed at order %d: no correction space" % k)

    equations = {}

    def eq(pair_id, mono):
        key = (pair_id, mono)
        if key not in equations:
            equations[key] = [[Fraction(0)] * len(unknowns), Fraction(0)]
        return equations[key]

    for pair_id, (i, l, mi, ml, r, q) in enumerate(reductions):
        for e, c in r.items():
            if family.tdeg(e) != k:
                raise DeformError("residual obstruction below order %d" % k)
            eq(pair_id, e)[1] -= c
        # net degree-zero multiplier of each generator's correction
        mult = [dict() for _ in family.generators]
        _add_into(mult[i], {mi: Fraction(1)})
        _add_into(mult[l], {ml: Fraction(-1)})
        for j, qj in enumerate(q):
            _add_into(mult[j], {e: -c for e, c in qj.items()
                                if family.tdeg(e) == 0})
        for uidx, (j, beta, gamma) in enumerate(unknowns):
            mj = mult[j]
            if not mj:
                continue
            corr = gamma + beta
            for e, c in mj.items():
                tot = tuple(a + b for a, b in zip(e, corr))
                if family.in_order_zero(tot):
                    continue
                eq(pair_id, tot)[0][uidx] += c

    rows = [row for row, _ in equations.values()]
    rhs = [b for _, b in equations.values()]
    solved = _solve_affine(rows, rhs)
    if solved is None:
        raise DeformError("obstructed at order %d" % k)
    particular, basis = solved
    solution = _exchange_minimal(particular, basis, range(len(unknowns)))

    changed = False
    for (j, beta, gamma), val in zip(unknowns, solution):
        if val == 0:
            continue
        e = tuple(gamma) + tuple(beta)
        _add_into(family.generators[j], {e: val})
        changed = True
    if not changed:
        raise DeformError("obstruction without corrective action at order %d"
                          % k)
    return True


def verify_family(family, atlas=None):
    """Fiber at zero, vanishing on the cluster embedding at t = 1, and
    agreement with the universal exchange relations."""
    univ = family.univ
    if atlas is None:
        atlas = univ.base_atlas
    nz, nt = family.nz, len(family.t_vars)
    report = {}

    fiber_ok = True
    for g, lead in zip(family.generators, family.sr_leads):
        zero_part = {e: c for e, c in g.items() if family.tdeg(e) == 0}
        if zero_part != {lead: Fraction(1)}:
            fiber_ok = False
    report["fiber_at_zero"] = fiber_ok

    images = [atlas.laurent_expansion(v) for v in family.z_vars]
    laurent_ok = True
    for g in family.generators:
        at_one = Poly(family.nv, dict(g)).specialize(
            {nz + i: 1 for i in range(nt)})
        terms = {}
        for e, c in at_one.terms.items():
            key = e[:nz]
            s = terms.get(key, 0) + c
            if s == 0:
                terms.pop(key, None)
            else:
                terms[key] = s
        proj = Poly(nz, terms)
        if not proj.compose(images).is_zero():
            laurent_ok = False
    report["laurent_vanishing"] = laurent_ok

    zindex = {v: i for i, v in enumerate(family.z_vars)}
    tindex = {t: i for i, t in enumerate(family.t_vars)}
    match_ok = True
    lead_index = {l: i for i, l in enumerate(family.sr_leads)}
    for rel in univ.univ_relations:
        b = [0] * family.nv
        for v in rel["pair"]:
            b[zindex[v]] += 1
        b = tuple(b)
        expected = {b: Fraction(1)}
        for t_part, z_part in rel["sides"]:
            e = [0] * family.nv
            for v, x in z_part.items():
                e[zindex[v]] = x
            for t, x in t_part.items():
                e[nz + tindex[t]] = x
            expected[tuple(e)] = Fraction(-1)
        got = family.generators[lead_index[b]]
        if got != expected:
            match_ok = False
    report["matches_universal_relations"] = match_ok
    return report
