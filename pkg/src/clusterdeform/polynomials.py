"""Sparse multivariate Laurent polynomials over Q, monomial orders, and reduction.

Polynomials are stored as a map from integer exponent tuples to nonzero
rational coefficients.  Negative exponents are permitted; the surrounding
modules only produce them on variables they treat as invertible (the initial
mutable cluster variables).
"""

from fractions import Fraction


def _add_exp(e1, e2):
    return tuple(a + b for a, b in zip(e1, e2))


def _sub_exp(e1, e2):
    return tuple(a - b for a, b in zip(e1, e2))


class Poly:
    """A sparse polynomial (or Laurent polynomial) with rational coefficients.

    terms: dict mapping exponent tuples (length nvars) to nonzero coefficients
    (int or Fraction).  Instances are treated as immutable values.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        if terms is None:
            terms = {}
        # drop explicit zeros so that equality is structural
        self.terms = {e: c for e, c in terms.items() if c != 0}

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def one(cls, nvars):
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, nvars, exponents, coeff=1):
        return cls(nvars, {tuple(exponents): coeff})

    @classmethod
    def variable(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.nvars == other.nvars
                and all(Fraction(c) == Fraction(other.terms.get(e, 0))
                        for e, c in self.terms.items())
                and all(e in self.terms for e in other.terms))

    def __hash__(self):
        return hash((self.nvars, frozenset((e, Fraction(c)) for e, c in self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly(self.nvars, {(0,) * self.nvars: other})
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return Poly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = Poly(self.nvars, {(0,) * self.nvars: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if other == 0:
                return Poly(self.nvars)
            return Poly(self.nvars, {e: c * other for e, c in self.terms.items()})
        prod = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                s = prod.get(e, 0) + c1 * c2
                if s == 0:
                    prod.pop(e, None)
                else:
                    prod[e] = s
        return Poly(self.nvars, prod)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial")
            (e, c), = self.terms.items()
            inv_c = Fraction(1, 1) / Fraction(c)
            if inv_c.denominator == 1:
                inv_c = int(inv_c)
            return Poly(self.nvars,
                        {tuple(-x for x in e): inv_c}) ** (-k)
        result = Poly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale_monomial(self, exponents, coeff=1):
        """Multiply by a single term (supports negative exponents)."""
        exponents = tuple(exponents)
        return Poly(self.nvars,
                    {_add_exp(e, exponents): c * coeff for e, c in self.terms.items()})

    def specialize(self, assignments):
        """Substitute constants for some variables.

        assignments: dict index -> value (0 and 1 are the typical uses).
        Substituting 0 into a variable with a negative exponent is an error.
        The variable count is preserved; substituted variables simply no
        longer occur.
        """
        out = {}
        for e, c in self.terms.items():
            coeff = c
            new_e = list(e)
            ok = True
            for i, val in assignments.items():
                k = e[i]
                new_e[i] = 0
                if k == 0:
                    continue
                if val == 0:
                    if k < 0:
                        raise ZeroDivisionError("substituting 0 into a negative power")
                    ok = False
                    break
                if val == 1:
                    continue
                coeff = coeff * Fraction(val) ** k
            if not ok:
                continue
            key = tuple(new_e)
            s = out.get(key, 0) + coeff
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return Poly(self.nvars, out)

    def compose(self, images):
        """Substitute images[i] (a Poly) for variable i.

        Negative exponents are only supported when the corresponding image is
        a single term (a unit in the Laurent ring).
        """
        nvars = images[0].nvars if images else 0
        result = Poly.zero(nvars)
        cache = {}
        for e, c in self.terms.items():
            term = Poly(nvars, {(0,) * nvars: c})
            for i, k in enumerate(e):
                if k == 0:
                    continue
                key = (i, k)
                if key not in cache:
                    cache[key] = images[i] ** k
                term = term * cache[key]
            result = result + term
        return result

    def total_degrees(self, indices=None):
        """Max total degree over terms, restricted to the given variables."""
        if not self.terms:
            return 0
        if indices is None:
            return max(sum(e) for e in self.terms)
        return max(sum(e[i] for i in indices) for e in self.terms)

    def to_string(self, names):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda t: (-sum(t), tuple(-x for x in t))):
            c = self.terms[e]
            factors = []
            for name, k in zip(names, e):
                if k == 1:
                    factors.append(name)
                elif k != 0:
                    factors.append("%s^%d" % (name, k))
            mon = "*".join(factors)
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append("%s*%s" % (c, mon))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return "Poly(%d, %r)" % (self.nvars, self.terms)


class MonomialOrder:
    """Weight-vector order with graded-lexicographic tiebreak.

    Monomials compare first by the inner product with `weights`, then by
    total degree, then lexicographically on the exponent tuple.  This is a
    multiplicative total order on monomials in a fixed variable set.
    """

    __slots__ = ("weights",)

    def __init__(self, weights):
        self.weights = tuple(weights)

    def key(self, exponents):
        w = sum(a * b for a, b in zip(self.weights, exponents))
        return (w, sum(exponents), exponents)

    def leading_exponent(self, poly):
        if poly.is_zero():
            raise ValueError("zero polynomial has no leading term")
        return max(poly.terms, key=self.key)

    def leading_term(self, poly):
        e = self.leading_exponent(poly)
        return e, poly.terms[e]


def grlex_order(nvars):
    return MonomialOrder((0,) * nvars)


def _divides(e_div, e):
    return all(a <= b for a, b in zip(e_div, e))


def normal_form(f, basis, order):
    """Remainder of multivariate division of f by the list `basis`.

    No term of the result is divisible by any leading term of `basis`.
    Deterministic: terms are processed in decreasing order and divisors are
    tried in list order.  All exponents must be nonnegative.
    """
    if not basis:
        return f
    leads = [(order.leading_exponent(g), g) for g in basis if not g.is_zero()]
    work = f
    remainder = {}
    while not work.is_zero():
        e = order.leading_exponent(work)
        c = work.terms[e]
        for le, g in leads:
            if _divides(le, e):
                factor = Fraction(c) / Fraction(g.terms[le])
                if factor.denominator == 1:
                    factor = int(factor)
                work = work - g.scale_monomial(_sub_exp(e, le), factor)
                break
        else:
            remainder[e] = c
            work = Poly(work.nvars, {k: v for k, v in work.terms.items() if k != e})
    return Poly(f.nvars, remainder)


def s_polynomial(f, g, order):
    ef, cf = order.leading_term(f)
    eg, cg = order.leading_term(g)
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    uf = f.scale_monomial(_sub_exp(lcm, ef), Fraction(1) / Fraction(cf))
    ug = g.scale_monomial(_sub_exp(lcm, eg), Fraction(1) / Fraction(cg))
    return uf - ug


def buchberger(gens, order, max_basis=500):
    """Complete `gens` to a Groebner basis for the given order.

    Uses the coprime-leading-term criterion; pairs are processed by
    increasing lcm degree for determinism.  Small-scale implementation for
    validation work, not a production Groebner engine.
    """
    basis = [g for g in gens if not g.is_zero()]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)]
    while pairs:
        pairs.sort(key=lambda p: _pair_key(basis, p, order))
        i, j = pairs.pop(0)
        ei = order.leading_exponent(basis[i])
        ej = order.leading_exponent(basis[j])
        if all(min(a, b) == 0 for a, b in zip(ei, ej)):
            continue  # coprime leading terms reduce to zero
        r = normal_form(s_polynomial(basis[i], basis[j], order), basis, order)
        if not r.is_zero():
            basis.append(r)
            if len(basis) > max_basis:
                raise RuntimeError("Groebner basis budget exceeded")
            pairs.extend((len(basis) - 1, k) for k in range(len(basis) - 1))
    return basis


def _pair_key(basis, pair, order):
    ei = order.leading_exponent(basis[pair[0]])
    ej = order.leading_exponent(basis[pair[1]])
    lcm = tuple(max(a, b) for a, b in zip(ei, ej))
    return (sum(lcm), lcm)


def exact_divide(f, g):
    """Exact division of Laurent polynomials: returns q with f = q*g.

    Raises ValueError if g does not divide f.  Works by clearing negative
    exponents and doing leading-term division under graded lex.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        return Poly.zero(f.nvars)
    n = f.nvars
    shift_f = [min(e[i] for e in f.terms) for i in range(n)]
    shift_g = [min(e[i] for e in g.terms) for i in range(n)]
    fs = f.scale_monomial([-s for s in shift_f])
    gs = g.scale_monomial([-s for s in shift_g])
    order = grlex_order(n)
    le_g, lc_g = order.leading_term(gs)
    quotient = {}
    work = fs
    while not work.is_zero():
        e, c = order.leading_term(work)
        if not _divides(le_g, e):
            raise ValueError("not divisible")
        qe = _sub_exp(e, le_g)
        qc = Fraction(c) / Fraction(lc_g)
        if qc.denominator == 1:
            qc = int(qc)
        quotient[qe] = qc
        work = work - gs.scale_monomial(qe, qc)
    q = Poly(n, quotient)
    return q.scale_monomial([a - b for a, b in zip(shift_f, shift_g)])
