"""The polynomial base ring R = Q[X_1..X_r] with even generator degrees.

R-polynomials are sparse dicts {exponent tuple: Fraction}.  Buchberger's
algorithm (degrevlex, reduced normalized output) and Hilbert series live
here; they back the ideal dimension and regular sequence tests.
"""

from fractions import Fraction
from typing import Sequence

from .linalg import ONE, ZERO

RPoly = dict  # {exponents: Fraction}


class BaseRing:
    """Q[X_1..X_r], X_i of even degree degrees[i]."""

    __slots__ = ("names", "degrees", "_mono_cache")

    def __init__(self, names: Sequence[str], degrees: Sequence[int]):
        if len(names) != len(degrees):
            raise ValueError("names/degrees length mismatch")
        for n, d in zip(names, degrees):
            if d < 2 or d % 2:
                raise ValueError(f"base generator {n} must have positive even degree")
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self._mono_cache = {}

    @property
    def rank(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return (isinstance(other, BaseRing) and self.names == other.names
                and self.degrees == other.degrees)

    def __repr__(self):
        return "Q[" + ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degrees)) + "]"

    def unit_exp(self):
        return (0,) * self.rank

    def exp_degree(self, exp) -> int:
        return sum(e * d for e, d in zip(exp, self.degrees))

    def monomials(self, degree: int):
        """Exponent tuples of the given (even, weighted) degree."""
        cached = self._mono_cache.get(degree)
        if cached is not None:
            return cached
        out = []

        def rec(i, remaining, acc):
            if i == self.rank:
                if remaining == 0:
                    out.append(tuple(acc))
                return
            d = self.degrees[i]
            for e in range(remaining // d + 1):
                acc.append(e)
                rec(i + 1, remaining - e * d, acc)
                acc.pop()

        if degree >= 0:
            rec(0, degree, [])
        out.sort()
        self._mono_cache[degree] = out
        return out

    def format_exp(self, exp) -> str:
        parts = []
        for n, e in zip(self.names, exp):
            if e == 1:
                parts.append(n)
            elif e > 1:
                parts.append(f"{n}^{e}")
        return "*".join(parts) if parts else "1"

    def format_poly(self, p: RPoly) -> str:
        if not p:
            return "0"
        parts = []
        for exp in sorted(p, key=lambda t: (self.exp_degree(t), t)):
            c = p[exp]
            mono = self.format_exp(exp)
            if mono == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


def exp_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def exp_divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exp_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def exp_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def poly_add(p: RPoly, q: RPoly) -> RPoly:
    out = dict(p)
    for m, c in q.items():
        s = out.get(m, ZERO) + c
        if s:
            out[m] = s
        else:
            del out[m]
    return out


def poly_scale(c, p: RPoly) -> RPoly:
    c = Fraction(c)
    if not c:
        return {}
    return {m: c * x for m, x in p.items()}


def poly_mul(p: RPoly, q: RPoly) -> RPoly:
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = exp_mul(m1, m2)
            s = out.get(m, ZERO) + c1 * c2
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def poly_term_mul(coeff, exp, p: RPoly) -> RPoly:
    return {exp_mul(exp, m): coeff * c for m, c in p.items()}


# degrevlex: higher total exponent degree first; on ties the monomial with
# the smaller last nonzero entry of the difference wins.
def degrevlex_key(exp):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def leading_term(p: RPoly):
    """(exp, coeff) of the degrevlex leading term."""
    exp = max(p, key=degrevlex_key)
    return exp, p[exp]


def poly_reduce(p: RPoly, basis) -> RPoly:
    """Full normal form of p modulo a list of polynomials."""
    rem: RPoly = {}
    p = dict(p)
    lts = [(leading_term(g), g) for g in basis if g]
    while p:
        exp, c = leading_term(p)
        hit = None
        for (gexp, gc), g in lts:
            if exp_divides(gexp, exp):
                hit = (gexp, gc, g)
                break
        if hit is None:
            rem[exp] = c
            del p[exp]
        else:
            gexp, gc, g = hit
            p = poly_add(p, poly_term_mul(-c / gc, exp_div(exp, gexp), g))
    return rem


def s_poly(f: RPoly, g: RPoly) -> RPoly:
    (fe, fc), (ge, gc) = leading_term(f), leading_term(g)
    l = exp_lcm(fe, ge)
    return poly_add(poly_term_mul(ONE / fc, exp_div(l, fe), f),
                    poly_term_mul(-ONE / gc, exp_div(l, ge), g))


def buchberger(gens) -> list:
    """Reduced degrevlex Groebner basis, leading coefficients 1, sorted."""
    basis = [dict(g) for g in gens if g]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i)]
    while pairs:
        i, j = pairs.pop()
        fe, _ = leading_term(basis[i])
        ge, _ = leading_term(basis[j])
        if exp_lcm(fe, ge) == exp_mul(fe, ge):
            continue  # coprime leading terms: S-poly reduces to zero
        r = poly_reduce(s_poly(basis[i], basis[j]), basis)
        if r:
            basis.append(r)
            pairs.extend((len(basis) - 1, k) for k in range(len(basis) - 1))
    # minimalize: keep only polynomials with non-redundant leading terms
    basis.sort(key=lambda g: degrevlex_key(leading_term(g)[0]))
    kept = []
    for g in basis:
        e = leading_term(g)[0]
        if not any(exp_divides(leading_term(k)[0], e) for k in kept):
            kept.append(g)
    # inter-reduce tails and normalize leading coefficients to 1
    final = []
    for i, g in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        r = poly_reduce(g, others) if others else dict(g)
        _, c = leading_term(r)
        final.append(poly_scale(ONE / c, r))
    final.sort(key=lambda g: degrevlex_key(leading_term(g)[0]))
    return final


def monomial_quotient_hilbert(ring: BaseRing, lead_exps) -> list:
    """Numerator coefficients of the Hilbert series of R/(monomial ideal).

    Returns n with HS(R/I) = sum n[k] t^k / prod_i (1 - t^{deg X_i}),
    t graded by the even generator degrees.
    """

    def minimalize(exps):
        out = []
        for e in sorted(set(exps), key=sum):
            if not any(exp_divides(o, e) for o in out):
                out.append(e)
        return out

    def rec(exps):
        exps = minimalize(exps)
        if not exps:
            return {0: 1}
        if ring.unit_exp() in exps:
            return {}
        pure = all(sum(1 for x in e if x) == 1 for e in exps)
        if pure:
            # pairwise coprime pure powers: numerator = prod (1 - t^{deg})
            num = {0: 1}
            for e in exps:
                i = next(k for k, x in enumerate(e) if x)
                w = ring.degrees[i] * e[i]
                shifted = {k + w: -v for k, v in num.items()}
                for k, v in shifted.items():
                    num[k] = num.get(k, 0) + v
                num = {k: v for k, v in num.items() if v}
            return num
        # split along a variable of the first mixed generator:
        # 0 -> (R/(I:x))(-deg x) -> R/I -> R/(I + (x)) -> 0
        mixed = next(e for e in exps if sum(1 for x in e if x) > 1)
        pivot = next(k for k, x in enumerate(mixed) if x)
        d = ring.degrees[pivot]
        one = tuple(1 if k == pivot else 0 for k in range(ring.rank))
        colon = [exp_div(e, one) if e[pivot] else e for e in exps]
        plus = exps + [one]
        n_colon = rec(colon)
        n_plus = rec(plus)
        out = dict(n_plus)
        for k, v in n_colon.items():
            out[k + d] = out.get(k + d, 0) + v
        return {k: v for k, v in out.items() if v}

    num = rec([tuple(e) for e in lead_exps])
    if not num:
        return []
    top = max(num)
    return [num.get(k, 0) for k in range(top + 1)]


def hilbert_dimension(ring: BaseRing, groebner_basis) -> int:
    """Krull dimension of R/I from a Groebner basis, via the Hilbert series
    pole order at t = 1."""
    if any(leading_term(g)[0] == ring.unit_exp() for g in groebner_basis if g):
        return -1  # unit ideal, R/I = 0
    lead = [leading_term(g)[0] for g in groebner_basis if g]
    num = monomial_quotient_hilbert(ring, lead)
    if not num:
        num = [1]
    # order of vanishing of the numerator at t = 1
    coeffs = [Fraction(c) for c in num]
    order = 0
    while coeffs and sum(coeffs) == 0:
        # synthetic division by (1 - t):  q_k = sum_{j <= k} n_j
        q = []
        run = ZERO
        for c in coeffs[:-1]:
            run += c
            q.append(run)
        coeffs = q
        order += 1
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
    return ring.rank - order
