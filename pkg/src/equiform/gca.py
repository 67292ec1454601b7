"""Free graded-commutative algebras over Q with differentials.

A CDGA here is a finitely generated free graded-commutative algebra with a
degree +1 differential given on generators and extended by the signed
Leibniz rule.  The first `base_count` generators form the polynomial base
subring (all even degree, differential zero); a CDGA with a nonempty base
encodes a relative model  (R,0) -> (R (x) Lambda V, D) -> (Lambda V, d).

Monomials are kept in a single canonical form (generators in declaration
order, odd exponents at most one) and every Koszul sign is produced while
sorting into that form, so equality of elements is literal dict equality.
"""

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .linalg import ONE, ZERO

# A monomial is a tuple of (generator index, exponent) pairs, sorted by
# index, exponents positive, and at most 1 on odd generators.
UNIT = ()


class Generator:
    __slots__ = ("name", "degree", "index")

    def __init__(self, name: str, degree: int, index: int):
        if degree < 1:
            raise ValueError(f"generator {name}: degree must be >= 1")
        self.name = name
        self.degree = degree
        self.index = index

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1

    def __repr__(self):
        return f"{self.name}:{self.degree}"


class Element:
    """Sparse Q-linear combination of monomials of a fixed algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: "CDGA", terms=None):
        self.alg = alg
        self.terms = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[m] = c

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, Element) and self.alg is other.alg
                and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.alg), tuple(sorted(self.terms.items()))))

    def _check(self, other):
        if self.alg is not other.alg:
            raise ValueError("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                del out[m]
        return Element(self.alg, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) - c
            if s:
                out[m] = s
            else:
                del out[m]
        return Element(self.alg, out)

    def __neg__(self):
        return Element(self.alg, {m: -c for m, c in self.terms.items()})

    def scale(self, c) -> "Element":
        c = Fraction(c)
        if not c:
            return Element(self.alg)
        return Element(self.alg, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        alg = self.alg
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sm = alg.mono_mul(m1, m2)
                if sm is None:
                    continue
                sign, m = sm
                s = out.get(m, ZERO) + sign * c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Element(alg, out)

    __rmul__ = __mul__

    def degree(self) -> Optional[int]:
        """Degree if homogeneous (0 for the zero element), else None."""
        degs = {self.alg.mono_degree(m) for m in self.terms}
        if not degs:
            return 0
        if len(degs) > 1:
            return None
        return degs.pop()

    def homogeneous_parts(self):
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(self.alg.mono_degree(m), {})[m] = c
        return {n: Element(self.alg, t) for n, t in sorted(parts.items())}

    def __repr__(self):
        return self.alg.format_element(self)


class CDGA:
    """Free graded-commutative algebra with differential and base marker."""

    def __init__(self, generators: Sequence[tuple], base_count: int,
                 differential=None, validate_to: Optional[int] = None):
        """generators: [(name, degree)] with the first base_count spanning
        the base polynomial subring; differential: {name: Element-spec} where
        an Element-spec is {monomial: coeff} over these generators."""
        self.generators = []
        seen = set()
        for i, (name, degree) in enumerate(generators):
            if name in seen:
                raise ValueError(f"duplicate generator name {name!r}")
            seen.add(name)
            self.generators.append(Generator(name, degree, i))
        self.base_count = base_count
        for g in self.generators[:base_count]:
            if g.odd:
                raise ValueError(f"base generator {g.name} must have even degree")
        self.by_name = {g.name: g for g in self.generators}
        self._diff = {}
        differential = differential or {}
        for name, spec in differential.items():
            g = self.by_name[name]
            if g.index < base_count:
                raise ValueError(f"base generator {g.name} must have zero differential")
            elem = spec if isinstance(spec, Element) else Element(self, spec)
            if elem and elem.degree() != g.degree + 1:
                raise ValueError(
                    f"d({g.name}) must be homogeneous of degree {g.degree + 1}")
            if elem:
                self._diff[g.index] = Element(self, elem.terms)
        self._mono_cache = {}
        self._dmono_cache = {}
        self._fiber = None
        if validate_to is not None:
            self.validate(validate_to)

    # -- structural helpers -------------------------------------------------

    @property
    def base_generators(self):
        return self.generators[:self.base_count]

    @property
    def fiber_generators(self):
        return self.generators[self.base_count:]

    @property
    def base_degrees(self):
        return [g.degree for g in self.base_generators]

    def zero(self) -> Element:
        return Element(self)

    def one(self) -> Element:
        return Element(self, {UNIT: ONE})

    def gen(self, name: str) -> Element:
        g = self.by_name[name]
        return Element(self, {((g.index, 1),): ONE})

    def monomial(self, *powers) -> Element:
        """monomial(("X", 2), ("a", 1), ...) -> element X^2 a."""
        m = tuple(sorted((self.by_name[n].index, e) for n, e in powers if e))
        for i, e in m:
            if self.generators[i].odd and e > 1:
                return self.zero()
        return Element(self, {m: ONE})

    # -- monomial arithmetic -------------------------------------------------

    def mono_degree(self, m) -> int:
        return sum(self.generators[i].degree * e for i, e in m)

    def mono_mul(self, m1, m2):
        """Product of canonical monomials: (sign, monomial) or None if zero."""
        odd1 = [i for i, e in m1 if self.generators[i].odd]
        inversions = 0
        if odd1:
            for i, _ in m2:
                if self.generators[i].odd:
                    # odd generators of m1 strictly after i must hop over it
                    inversions += sum(1 for a in odd1 if a > i)
        out = dict(m1)
        for i, e in m2:
            tot = out.get(i, 0) + e
            if self.generators[i].odd and tot > 1:
                return None
            out[i] = tot
        sign = -ONE if inversions % 2 else ONE
        return sign, tuple(sorted(out.items()))

    def d_gen(self, index: int) -> Element:
        elem = self._diff.get(index)
        return Element(self, elem.terms) if elem else self.zero()

    def d_mono(self, m) -> Element:
        cached = self._dmono_cache.get(m)
        if cached is not None:
            return cached
        if not m:
            out = self.zero()
        else:
            (i, e), rest = m[0], m[1:]
            g = self.generators[i]
            head = Element(self, {((i, e),): ONE})
            dg = self.d_gen(i)
            if g.odd:
                dhead = dg
            elif dg:
                dhead = Element(self, {((i, e - 1),): Fraction(e)}) * dg if e > 1 else dg
            else:
                dhead = self.zero()
            tail = Element(self, {rest: ONE})
            out = dhead * tail
            if rest:
                dtail = self.d_mono(rest)
                if dtail:
                    sign = -ONE if (g.degree * e) % 2 else ONE
                    out = out + (head * dtail).scale(sign)
        self._dmono_cache[m] = out
        return out

    def d(self, elem: Element) -> Element:
        if elem.alg is not self:
            raise ValueError("element of a different algebra")
        out = self.zero()
        for m, c in elem.terms.items():
            out = out + self.d_mono(m).scale(c)
        return out

    def format_mono(self, m) -> str:
        if not m:
            return "1"
        parts = []
        for i, e in m:
            n = self.generators[i].name
            parts.append(n if e == 1 else f"{n}^{e}")
        return "*".join(parts)

    def format_element(self, elem: Element) -> str:
        if not elem.terms:
            return "0"
        keys = sorted(elem.terms, key=lambda m: (self.mono_degree(m), m))
        out = ""
        for m in keys:
            c = elem.terms[m]
            mono = self.format_mono(m)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not out:
                out = body if c > 0 else "-" + body
            else:
                out += (" + " if c > 0 else " - ") + body
        return out

    def validate(self, max_degree: int):
        """Check d^2 = 0 on all generators (sufficient by Leibniz) and degree
        homogeneity of every differential value.  Raises ValueError with the
        offending generator on failure."""
        for g in self.fiber_generators:
            dg = self.d_gen(g.index)
            if dg and dg.degree() != g.degree + 1:
                raise ValueError(f"d({g.name}) is not homogeneous of degree {g.degree + 1}")
            if g.degree + 2 <= max_degree + 2:
                dd = self.d(dg)
                if dd:
                    raise ValueError(f"d^2({g.name}) != 0; got {dd}")
        return self

    # -- degreewise monomial bases --------------------------------------------

    def monomials(self, degree: int):
        """All canonical monomials of the given degree, in canonical order."""
        cached = self._mono_cache.get(degree)
        if cached is not None:
            return cached
        out = []

        def rec(gi, remaining, acc):
            if remaining == 0:
                out.append(tuple(acc))
                return
            if gi >= len(self.generators):
                return
            g = self.generators[gi]
            rec(gi + 1, remaining, acc)
            cap = 1 if g.odd else remaining // g.degree
            for e in range(1, cap + 1):
                if g.degree * e <= remaining:
                    acc.append((gi, e))
                    rec(gi + 1, remaining - g.degree * e, acc)
                    acc.pop()

        if degree >= 0:
            rec(0, degree, [])
        out.sort()
        self._mono_cache[degree] = out
        return out

    # -- constructions ---------------------------------------------------------

    def fiber(self) -> "CDGA":
        """The quotient (Lambda V, d) by the ideal of positive-degree base
        elements; the base marker is dropped."""
        if self._fiber is not None:
            return self._fiber
        gens = [(g.name, g.degree) for g in self.fiber_generators]
        reindex = {g.index: k for k, g in enumerate(self.fiber_generators)}
        fib = CDGA(gens, 0)
        diff = {}
        for g in self.fiber_generators:
            dg = self.d_gen(g.index)
            terms = {}
            for m, c in dg.terms.items():
                if any(i < self.base_count for i, _ in m):
                    continue
                terms[tuple((reindex[i], e) for i, e in m)] = c
            if terms:
                diff[g.name] = terms
        fib._diff = {fib.by_name[n].index: Element(fib, t) for n, t in diff.items()}
        self._fiber = fib
        return fib

    def project_to_fiber(self, elem: Element) -> Element:
        fib = self.fiber()
        reindex = {g.index: k for k, g in enumerate(self.fiber_generators)}
        terms = {}
        for m, c in elem.terms.items():
            if any(i < self.base_count for i, _ in m):
                continue
            terms[tuple((reindex[i], e) for i, e in m)] = c
        return Element(fib, terms)

    def koszul_extension(self, names: Optional[Sequence[str]] = None) -> "CDGA":
        """Adjoin odd generators s_i with d(s_i) = X_i for every base
        generator X_i (|s_i| = |X_i| - 1)."""
        if names is None:
            names = []
            for g in self.base_generators:
                n = "s_" + g.name
                while n in self.by_name or n in names:
                    n = n + "'"
                names.append(n)
        gens = [(g.name, g.degree) for g in self.generators]
        gens += [(n, g.degree - 1) for n, g in zip(names, self.base_generators)]
        ext = CDGA(gens, self.base_count)
        diff = {}
        for g in self.fiber_generators:
            dg = self.d_gen(g.index)
            if dg:
                diff[ext.by_name[g.name].index] = Element(ext, dg.terms)
        for n, g in zip(names, self.base_generators):
            diff[ext.by_name[n].index] = Element(ext, {((g.index, 1),): ONE})
        ext._diff = diff
        return ext


def tensor(c1: CDGA, c2: CDGA, rename=None) -> CDGA:
    """Tensor product model: base R1 (x) R2, fiber V1 (+) V2.

    Colliding generator names from c2 get a prime appended unless rename
    supplies explicit replacements {old_name: new_name}.
    """
    rename = dict(rename or {})
    used = {g.name for g in c1.generators}
    names2 = {}
    for g in c2.generators:
        n = rename.get(g.name, g.name)
        while n in used:
            n = n + "'"
        used.add(n)
        names2[g.index] = n
    gens = ([(g.name, g.degree) for g in c1.base_generators]
            + [(names2[g.index], g.degree) for g in c2.base_generators]
            + [(g.name, g.degree) for g in c1.fiber_generators]
            + [(names2[g.index], g.degree) for g in c2.fiber_generators])
    out = CDGA(gens, c1.base_count + c2.base_count)

    def port1(elem):
        return Element(out, {tuple((out.by_name[c1.generators[i].name].index, e)
                                   for i, e in m): c for m, c in elem.terms.items()})

    def port2(elem):
        return Element(out, {tuple(sorted((out.by_name[names2[i]].index, e)
                                          for i, e in m)): c for m, c in elem.terms.items()})

    diff = {}
    for g in c1.fiber_generators:
        dg = c1.d_gen(g.index)
        if dg:
            diff[out.by_name[g.name].index] = port1(dg)
    for g in c2.fiber_generators:
        dg = c2.d_gen(g.index)
        if dg:
            diff[out.by_name[names2[g.index]].index] = port2(dg)
    out._diff = diff
    return out


def restrict_torus(c: CDGA, substitution, new_names: Sequence[str]) -> CDGA:
    """Restrict along a torus homomorphism: substitute each base generator
    X_i by a rational linear combination of new degree-2 generators.

    substitution: rows indexed by old base generators, one {new_name: coeff}
    per old generator.  All old base generators must have degree 2 and the
    substitution matrix must have full column rank.
    """
    from .linalg import SparseMatrix, rref as _rref
    if any(g.degree != 2 for g in c.base_generators):
        raise ValueError("restriction requires a degree-2 base")
    if len(substitution) != c.base_count:
        raise ValueError("one substitution row per base generator required")
    col = {n: j for j, n in enumerate(new_names)}
    m = SparseMatrix(len(substitution), len(new_names))
    for i, row in enumerate(substitution):
        for n, coeff in row.items():
            m[i, col[n]] = Fraction(coeff)
    _, pivots = _rref(m)
    if len(pivots) != len(new_names):
        raise ValueError("substitution matrix must have full column rank")
    gens = [(n, 2) for n in new_names] + [(g.name, g.degree) for g in c.fiber_generators]
    out = CDGA(gens, len(new_names))
    images = []
    for row in substitution:
        images.append(Element(out, {((col[n], 1),): Fraction(v)
                                    for n, v in row.items() if Fraction(v)}))

    def port(elem):
        res = out.zero()
        for mono, coeff in elem.terms.items():
            term = out.one().scale(coeff)
            for i, e in mono:
                g = c.generators[i]
                if i < c.base_count:
                    for _ in range(e):
                        term = term * images[i]
                else:
                    term = term * Element(out, {((out.by_name[g.name].index, e),): ONE})
            res = res + term
        return res

    diff = {}
    for g in c.fiber_generators:
        dg = c.d_gen(g.index)
        if dg:
            diff[out.by_name[g.name].index] = port(dg)
    out._diff = diff
    return out
