"""Differential graded modules over the polynomial base R.

Contains the Hirsch-Brown minimal model construction, minimal graded free
resolutions with Betti tables, Koszul homology, graded kernel ideals, and
the lifting machinery for module morphisms.  Everything is windowed: a
result computed up to degree N is labeled with N and never extrapolated.
"""

from fractions import Fraction
from typing import Optional, Sequence

from .gca import CDGA, Element
from .homology import CDGAComplex, Homology, SliceComplex
from .linalg import ONE, SparseMatrix, Subspace, vec_axpy
from .polyring import (BaseRing, RPoly, buchberger, hilbert_dimension,
                       leading_term, poly_term_mul)

# A module element of a free dgRm is {(generator index, exponent tuple): c}.


def base_ring_of(alg: CDGA) -> BaseRing:
    return BaseRing([g.name for g in alg.base_generators], alg.base_degrees)


class ModuleView:
    """A dgRm presented by slices: complex + multiplication by base generators."""

    def __init__(self, cpx: SliceComplex, base: BaseRing):
        self.complex = cpx
        self.base = base
        self.homology = Homology(cpx)
        self._mult = {}

    def mult_matrix(self, j: int, n: int) -> SparseMatrix:
        raise NotImplementedError

    def mult_by_exp(self, vec: dict, n: int, exp) -> tuple:
        """X^exp * vec for vec in slice n; returns (vector, degree)."""
        deg = n
        for j, e in enumerate(exp):
            for _ in range(e):
                vec = self.mult_matrix(j, deg).apply(vec)
                deg += self.base.degrees[j]
        return vec, deg


class CDGAModuleView(ModuleView):
    """A relative model (R (x) Lambda V, D) viewed as a dgRm over R."""

    def __init__(self, alg: CDGA, reverse: bool = False):
        if alg.base_count == 0:
            raise ValueError("algebra has no designated base ring")
        super().__init__(CDGAComplex(alg, reverse=reverse), base_ring_of(alg))
        self.alg = alg

    def mult_matrix(self, j: int, n: int) -> SparseMatrix:
        key = (j, n)
        m = self._mult.get(key)
        if m is None:
            cpx = self.complex
            src = cpx.basis(n)
            d = self.base.degrees[j]
            tgt_index = cpx.index(n + d)
            gen_idx = self.alg.by_name[self.base.names[j]].index
            m = SparseMatrix(len(tgt_index), len(src))
            for col, mono in enumerate(src):
                sm = self.alg.mono_mul(((gen_idx, 1),), mono)
                if sm is not None:
                    sign, prod = sm
                    m[tgt_index[prod], col] = sign
            self._mult[key] = m
        return m


class FreeDGRModule(SliceComplex):
    """Finitely generated free dgRm with differential given on generators."""

    def __init__(self, base: BaseRing):
        self.base = base
        self.gens = []   # (name, degree)
        self.diff = []   # module elements
        self._version = 0
        self._basis_cache = {}
        self._index_cache = {}

    def add_generator(self, name: str, degree: int, diff=None):
        self.gens.append((name, degree))
        self.diff.append(dict(diff or {}))
        self._version += 1
        return len(self.gens) - 1

    def basis(self, n: int):
        key = (n, self._version)
        b = self._basis_cache.get(key)
        if b is None:
            b = []
            for g, (name, deg) in enumerate(self.gens):
                if deg <= n and (n - deg) % 2 == 0:
                    b.extend((g, exp) for exp in self.base.monomials(n - deg))
            self._basis_cache[key] = b
        return b

    def index(self, n: int):
        key = (n, self._version)
        idx = self._index_cache.get(key)
        if idx is None:
            idx = {lab: i for i, lab in enumerate(self.basis(n))}
            self._index_cache[key] = idx
        return idx

    def degree_of(self, label) -> int:
        g, exp = label
        return self.gens[g][1] + self.base.exp_degree(exp)

    def d_matrix(self, n: int) -> SparseMatrix:
        from .polyring import exp_mul
        src = self.basis(n)
        tgt_index = self.index(n + 1)
        m = SparseMatrix(len(tgt_index), len(src))
        for col, (g, exp) in enumerate(src):
            for (g2, exp2), c in self.diff[g].items():
                lab = (g2, exp_mul(exp, exp2))
                m[tgt_index[lab], col] = m[tgt_index[lab], col] + c
        return m

    def element_vector(self, elem, n: int) -> dict:
        idx = self.index(n)
        return {idx[lab]: c for lab, c in elem.items()}

    def vector_element(self, vec: dict, n: int) -> dict:
        b = self.basis(n)
        return {b[i]: c for i, c in vec.items()}

    def is_minimal(self) -> bool:
        unit = self.base.unit_exp()
        return all(exp != unit for d in self.diff for (_, exp) in d)

    def rank_table(self):
        table = {}
        for _, deg in self.gens:
            table[deg] = table.get(deg, 0) + 1
        return dict(sorted(table.items()))

    def view(self) -> "FreeModuleView":
        return FreeModuleView(self)

    def __repr__(self):
        return f"FreeDGRModule({self.base!r}, {len(self.gens)} generators)"


class FreeModuleView(ModuleView):
    def __init__(self, module: FreeDGRModule):
        super().__init__(module, module.base)
        self.module = module

    def mult_matrix(self, j: int, n: int) -> SparseMatrix:
        key = (j, n, self.module._version)
        m = self._mult.get(key)
        if m is None:
            src = self.module.basis(n)
            d = self.module.base.degrees[j]
            tgt_index = self.module.index(n + d)
            m = SparseMatrix(len(tgt_index), len(src))
            for col, (g, exp) in enumerate(src):
                lifted = list(exp)
                lifted[j] += 1
                m[tgt_index[(g, tuple(lifted))], col] = ONE
            self._mult[key] = m
        return m


class WedgeComplex(SliceComplex):
    """Sum-over-Q of two slice complexes: joint unit in degree 0, direct sum
    in positive degrees."""

    def __init__(self, c1: SliceComplex, c2: SliceComplex):
        self.c1 = c1
        self.c2 = c2

    def basis(self, n: int):
        if n == 0:
            return [("*", "1")]
        return ([(0, lab) for lab in self.c1.basis(n)]
                + [(1, lab) for lab in self.c2.basis(n)])

    def d_matrix(self, n: int) -> SparseMatrix:
        tgt = self.basis(n + 1)
        src = self.basis(n)
        m = SparseMatrix(len(tgt), len(src))
        if n == 0:
            # both component units are closed in a connected model
            return m
        n1 = len(self.c1.basis(n))
        d1, d2 = self.c1.d_matrix(n), self.c2.d_matrix(n)
        t1 = len(self.c1.basis(n + 1))
        for i, j, c in d1.entries():
            m[i, j] = c
        for i, j, c in d2.entries():
            m[t1 + i, n1 + j] = c
        return m


class WedgeModule(ModuleView):
    """wedge_q of two relative models with the same base, as a dgRm."""

    def __init__(self, v1: ModuleView, v2: ModuleView):
        if v1.base != v2.base:
            raise ValueError("wedge_q requires a common base ring")
        if len(v1.complex.basis(0)) != 1 or len(v2.complex.basis(0)) != 1:
            raise ValueError("wedge_q requires connected inputs")
        super().__init__(WedgeComplex(v1.complex, v2.complex), v1.base)
        self.v1 = v1
        self.v2 = v2

    def mult_matrix(self, j: int, n: int) -> SparseMatrix:
        key = (j, n)
        m = self._mult.get(key)
        if m is not None:
            return m
        cpx = self.complex
        tgt = cpx.basis(n + self.base.degrees[j])
        src = cpx.basis(n)
        m = SparseMatrix(len(tgt), len(src))
        m1 = self.v1.mult_matrix(j, n)
        m2 = self.v2.mult_matrix(j, n)
        if n == 0:
            # (1,1) . X_j = (X_j, X_j)
            t1 = len(self.v1.complex.basis(self.base.degrees[j]))
            for i, c in m1.column(0).items():
                m[i, 0] = c
            for i, c in m2.column(0).items():
                m[t1 + i, 0] = c
            self._mult[key] = m
            return m
        n1 = len(self.v1.complex.basis(n))
        t1 = len(self.v1.complex.basis(n + self.base.degrees[j]))
        for i, jj, c in m1.entries():
            m[i, jj] = c
        for i, jj, c in m2.entries():
            m[t1 + i, n1 + jj] = c
        self._mult[key] = m
        return m


def wedge_q(c1, c2) -> WedgeModule:
    """The dg object with H^0 = Q and positive degrees the direct sum; the
    algebraic model of gluing two actions along an almost free orbit."""
    v1 = c1 if isinstance(c1, ModuleView) else CDGAModuleView(c1)
    v2 = c2 if isinstance(c2, ModuleView) else CDGAModuleView(c2)
    return WedgeModule(v1, v2)


# ---------------------------------------------------------------------------
# Hirsch-Brown minimal models


class HirschBrownModel:
    """Result of the inductive minimal-model construction."""

    def __init__(self, module: FreeDGRModule, images, target: ModuleView, window: int):
        self.module = module
        self.images = images      # generator index -> target slice vector
        self.target = target
        self.window = window      # cohomology matches target in degrees <= window

    def rank_table(self):
        return self.module.rank_table()

    def image_element(self, g: int):
        """phi(generator) as an Element when the target is a CDGA view."""
        cpx = self.target.complex
        if isinstance(cpx, CDGAComplex):
            return cpx.element_of(self.module.gens[g][1], self.images[g])
        raise TypeError("target is not a CDGA")

    def phi_vector(self, elem, n: int) -> dict:
        """Image of a module element of total degree n in the target slice."""
        out = {}
        for (g, exp), c in elem.items():
            vec, deg = self.target.mult_by_exp(dict(self.images[g]), self.module.gens[g][1], exp)
            if deg != n:
                raise ValueError("inhomogeneous module element")
            vec_axpy(out, c, vec)
        return out


def hirsch_brown(target, N: int, reverse: bool = False) -> HirschBrownModel:
    """Minimal dgRm model of a relative model (or any dgRm view), built by
    the inductive add-generator / kill-cohomology procedure.

    The output is minimal (differential lands in m.M), its cohomology agrees
    with the target in degrees <= N, and its generator ranks in degree n
    equal the target fiber cohomology ranks where the window allows.
    """
    if isinstance(target, CDGA):
        target = CDGAModuleView(target, reverse=reverse)
    ring = target.base
    H = target.homology
    model = FreeDGRModule(ring)
    images = []

    for d in range(0, N + 1):
        # surjectivity in degree d: adjoin closed generators for the cokernel
        mh = Homology(model)
        hm = HirschBrownModel(model, images, target, d)
        img_classes = []
        for k in range(mh.dim(d)):
            vec = mh.rep_vector(d, k)
            elem = model.vector_element(vec, d)
            img_classes.append(H.class_coords(hm.phi_vector(elem, d), d))
        span = Subspace(H.dim(d), img_classes)
        full = Subspace(H.dim(d), [{k: ONE} for k in range(H.dim(d))])
        coker = full.complement_in(span)
        for k, cls in enumerate(coker.basis):
            g = model.add_generator(f"u{d}_{k}", d)
            images.append(H.class_vector(d, cls))
        # injectivity in degree d+1: adjoin generators killing the kernel
        mh = Homology(model)
        kernel_classes = []
        hm = HirschBrownModel(model, images, target, d)
        for k in range(mh.dim(d + 1)):
            vec = mh.rep_vector(d + 1, k)
            elem = model.vector_element(vec, d + 1)
            cls = H.class_coords(hm.phi_vector(elem, d + 1), d + 1)
            kernel_classes.append((vec, cls))
        if kernel_classes:
            mat = SparseMatrix(H.dim(d + 1), len(kernel_classes))
            for col, (_, cls) in enumerate(kernel_classes):
                for i, c in cls.items():
                    mat[i, col] = c
            from .linalg import kernel as _kernel
            ker = _kernel(mat)
            count = 0
            for combo in ker.basis:
                vec = {}
                for col, c in combo.items():
                    vec_axpy(vec, c, kernel_classes[col][0])
                elem = model.vector_element(vec, d + 1)
                unit = ring.unit_exp()
                if any(exp == unit for (_, exp) in elem):
                    raise AssertionError("minimality violated in Hirsch-Brown step")
                target_vec = hm.phi_vector(elem, d + 1)
                y = H.primitive(target_vec, d + 1)
                if y is None:
                    raise AssertionError("expected exact image in Hirsch-Brown step")
                g = model.add_generator(f"w{d}_{count}", d, elem)
                images.append(y)
                count += 1
    return HirschBrownModel(model, images, target, N)


# ---------------------------------------------------------------------------
# Concrete graded modules and minimal free resolutions


class ConcreteGradedModule:
    """A graded R-module given by slice dimensions and multiplication maps,
    valid in degrees <= max_degree."""

    def __init__(self, base: BaseRing, max_degree: int):
        self.base = base
        self.max_degree = max_degree
        self._dims = {}
        self._mult = {}

    def dim(self, n: int) -> int:
        raise NotImplementedError

    def mult_matrix(self, j: int, n: int) -> SparseMatrix:
        raise NotImplementedError

    def mult_by_exp(self, vec: dict, n: int, exp):
        deg = n
        for j, e in enumerate(exp):
            for _ in range(e):
                vec = self.mult_matrix(j, deg).apply(vec)
                deg += self.base.degrees[j]
        return vec, deg

    def total_dim(self) -> int:
        return sum(self.dim(n) for n in range(self.max_degree + 1))


class CohomologyModule(ConcreteGradedModule):
    """H^*(view) as a graded R-module (e.g. equivariant cohomology)."""

    def __init__(self, view: ModuleView, max_degree: int):
        super().__init__(view.base, max_degree)
        self.view = view

    def dim(self, n: int) -> int:
        if n < 0 or n > self.max_degree:
            return 0
        return self.view.homology.dim(n)

    def mult_matrix(self, j: int, n: int) -> SparseMatrix:
        key = (j, n)
        m = self._mult.get(key)
        if m is None:
            H = self.view.homology
            d = self.base.degrees[j]
            m = SparseMatrix(self.dim(n + d), self.dim(n))
            for k in range(self.dim(n)):
                rep = H.rep_vector(n, k)
                prod = self.view.mult_matrix(j, n).apply(rep)
                for i, c in H.class_coords(prod, n + d).items():
                    m[i, k] = c
            self._mult[key] = m
        return m


class PresentedModule(ConcreteGradedModule):
    """coker(relations -> free module on generators), degreewise."""

    def __init__(self, base: BaseRing, gen_degrees: Sequence[int], relations,
                 max_degree: int):
        """relations: module elements {(gen index, exp): coeff}, homogeneous."""
        super().__init__(base, max_degree)
        self.gen_degrees = list(gen_degrees)
        self.relations = [dict(r) for r in relations]
        for r in self.relations:
            degs = {self.gen_degrees[g] + base.exp_degree(e) for (g, e) in r}
            if len(degs) > 1:
                raise ValueError("inhomogeneous relation")
        self._free = FreeDGRModule(base)
        for i, dg in enumerate(self.gen_degrees):
            self._free.add_generator(f"e{i}", dg)
        self._free_view = self._free.view()
        self._rel_sub = {}
        self._reps = {}

    def free_basis(self, n: int):
        return self._free.basis(n)

    def _relation_subspace(self, n: int) -> Subspace:
        sub = self._rel_sub.get(n)
        if sub is None:
            from .polyring import exp_mul
            idx = self._free.index(n)
            vectors = []
            for r in self.relations:
                if not r:
                    continue
                (g0, e0) = next(iter(r))
                dr = self.gen_degrees[g0] + self.base.exp_degree(e0)
                if dr > n or (n - dr) % 2:
                    continue
                for exp in self.base.monomials(n - dr):
                    vec = {}
                    for (g, e), c in r.items():
                        vec[idx[(g, exp_mul(exp, e))]] = c
                    vectors.append(vec)
            sub = Subspace(len(idx), vectors)
            self._rel_sub[n] = sub
        return sub

    def _rep_subspace(self, n: int) -> Subspace:
        reps = self._reps.get(n)
        if reps is None:
            rel = self._relation_subspace(n)
            total = len(self._free.basis(n))
            full = Subspace(total, [{i: ONE} for i in range(total)])
            reps = full.complement_in(rel)
            self._reps[n] = reps
        return reps

    def dim(self, n: int) -> int:
        if n < 0 or n > self.max_degree:
            return 0
        return self._rep_subspace(n).dim

    def coords(self, free_vec: dict, n: int) -> dict:
        reduced = self._relation_subspace(n).reduce(free_vec)
        coords = self._rep_subspace(n).coords(reduced)
        if coords is None:
            raise AssertionError("quotient coordinatization failed")
        return coords

    def mult_matrix(self, j: int, n: int) -> SparseMatrix:
        key = (j, n)
        m = self._mult.get(key)
        if m is None:
            d = self.base.degrees[j]
            reps = self._rep_subspace(n)
            m = SparseMatrix(self.dim(n + d), self.dim(n))
            free_mult = self._free_view.mult_matrix(j, n)
            for k, rep in enumerate(reps.basis):
                prod = free_mult.apply(rep)
                for i, c in self.coords(prod, n + d).items():
                    m[i, k] = c
            self._mult[key] = m
        return m


class FreeResolution:
    """Minimal graded free resolution ... -> F_1 -> F_0 -> M -> 0, windowed."""

    def __init__(self, module: ConcreteGradedModule, window: int):
        self.module = module
        self.window = window
        self.steps = []        # list of [(name, internal degree)] per F_i
        self.maps = []         # per F_i (i>=1): list of module elements over F_{i-1}
        self.aug = []          # F_0 generator -> module slice vector
        self.terminated = False

    def betti(self):
        """{(homological index, internal degree): count}."""
        out = {}
        for i, gens in enumerate(self.steps):
            for _, deg in gens:
                out[(i, deg)] = out.get((i, deg), 0) + 1
        return out

    def total_rank(self) -> int:
        return sum(len(g) for g in self.steps)

    def betti_by_cdga_degree(self):
        """Counts keyed by internal degree minus homological degree."""
        out = {}
        for (i, j), c in self.betti().items():
            out[j - i] = out.get(j - i, 0) + c
        return dict(sorted(out.items()))

    def free_modules(self):
        mods = []
        for gens in self.steps:
            f = FreeDGRModule(self.module.base)
            for name, deg in gens:
                f.add_generator(name, deg)
            mods.append(f)
        return mods


def minimal_free_resolution(module: ConcreteGradedModule, N: Optional[int] = None) -> FreeResolution:
    """Minimal graded free resolution, exact in internal degrees <= N."""
    if N is None:
        N = module.max_degree
    N = min(N, module.max_degree)
    res = FreeResolution(module, N)
    ring = module.base
    unit = ring.unit_exp()

    # F_0: minimal generators of the module itself
    f0 = FreeDGRModule(ring)
    aug = []  # generator -> module vector
    gen_slices = {}
    for n in range(N + 1):
        dim = module.dim(n)
        if not dim:
            gen_slices[n] = []
            continue
        spanned = []
        for j, dj in enumerate(ring.degrees):
            if n - dj < 0:
                continue
            prev = module.dim(n - dj)
            mm = module.mult_matrix(j, n - dj)
            spanned.extend(mm.column(c) for c in range(prev))
        msub = Subspace(dim, spanned)
        full = Subspace(dim, [{i: ONE} for i in range(dim)])
        new = full.complement_in(msub)
        start = len(f0.gens)
        for k, vec in enumerate(new.basis):
            f0.add_generator(f"b{n}_{k}", n)
            aug.append(dict(vec))
        gen_slices[n] = list(range(start, len(f0.gens)))
    res.steps.append(list(f0.gens))
    res.aug = aug

    def aug_matrix(n: int) -> SparseMatrix:
        basis = f0.basis(n)
        m = SparseMatrix(module.dim(n), len(basis))
        for col, (g, exp) in enumerate(basis):
            vec, deg = module.mult_by_exp(dict(aug[g]), f0.gens[g][1], exp)
            for i, c in vec.items():
                m[i, col] = c
        return m

    prev_free = f0
    prev_matrix = aug_matrix
    step = 0
    while True:
        # degreewise kernel of prev_matrix, minimal generators thereof
        kernels = {}
        for n in range(N + 1):
            basis = prev_free.basis(n)
            if not basis:
                kernels[n] = Subspace(0)
                continue
            from .linalg import kernel as _kernel
            kernels[n] = _kernel(prev_matrix(n))
        total_new = sum(k.dim for k in kernels.values())
        if total_new == 0:
            res.terminated = True
            break
        nxt = FreeDGRModule(ring)
        nxt_map = []
        any_new = False
        prev_view = prev_free.view()
        for n in range(N + 1):
            kn = kernels[n]
            if kn.dim == 0:
                continue
            spanned = []
            for j, dj in enumerate(ring.degrees):
                if n - dj < 0:
                    continue
                mm = prev_view.mult_matrix(j, n - dj)
                for v in kernels[n - dj].basis:
                    spanned.append(mm.apply(v))
            ssub = Subspace(len(prev_free.basis(n)), spanned)
            new = kn.complement_in(ssub)
            for k, vec in enumerate(new.basis):
                elem = prev_free.vector_element(vec, n)
                if any(exp == unit for (_, exp) in elem):
                    raise AssertionError("resolution differential not minimal")
                nxt.add_generator(f"s{step}_{n}_{k}", n)
                nxt_map.append(elem)
                any_new = True
        if not any_new:
            # kernels are generated in degrees beyond the window
            break
        res.steps.append(list(nxt.gens))
        res.maps.append(nxt_map)
        step += 1
        if step > ring.rank + 1:
            raise AssertionError("resolution exceeded projective dimension bound")

        this_free, this_map = nxt, nxt_map

        def mk_matrix(free, mapping, lower):
            from .polyring import exp_mul

            def matrix(n: int) -> SparseMatrix:
                basis = free.basis(n)
                low_idx = lower.index(n)
                m = SparseMatrix(len(low_idx), len(basis))
                for col, (g, exp) in enumerate(basis):
                    for (g2, e2), c in mapping[g].items():
                        lab = (g2, exp_mul(exp, e2))
                        m[low_idx[lab], col] = m[low_idx[lab], col] + c
                return m
            return matrix

        prev_matrix = mk_matrix(this_free, this_map, prev_free)
        prev_free = this_free
    return res


def tor_betti(module: ConcreteGradedModule, N: Optional[int] = None):
    """Bigraded dimensions of Tor_R(module, Q) = Betti table of the minimal
    resolution, keyed by (homological degree, internal degree)."""
    return minimal_free_resolution(module, N).betti()


def koszul_homology(module: ConcreteGradedModule, N: Optional[int] = None):
    """Homology of module (x) Lambda(s_1..s_r) with s_i |-> X_i, keyed like
    tor_betti by (exterior degree, internal degree)."""
    if N is None:
        N = module.max_degree
    N = min(N, module.max_degree)
    ring = module.base
    r = ring.rank
    subsets = [tuple(i for i in range(r) if mask >> i & 1) for mask in range(1 << r)]
    wt = {I: sum(ring.degrees[i] for i in I) for I in subsets}

    def basis(j, k):
        out = []
        for I in subsets:
            if len(I) != k:
                continue
            md = j - wt[I]
            if md < 0 or md > module.max_degree:
                continue
            out.extend((m, I) for m in range(module.dim(md)))
        return out

    def d_matrix(j, k):
        src = basis(j, k)
        tgt = {lab: i for i, lab in enumerate(basis(j, k - 1))}
        mat = SparseMatrix(len(tgt), len(src))
        for col, (m, I) in enumerate(src):
            md = j - wt[I]
            for t, i in enumerate(I):
                rest = tuple(x for x in I if x != i)
                sign = ONE if t % 2 == 0 else -ONE
                prod = module.mult_matrix(i, md).column(m)
                for row, c in prod.items():
                    lab = (row, rest)
                    if lab in tgt:
                        mat[tgt[lab], col] = mat[tgt[lab], col] + sign * c
        return mat

    out = {}
    from .linalg import kernel as _kernel, image as _image
    for j in range(N + 1):
        for k in range(r + 1):
            if not basis(j, k):
                continue
            ker = _kernel(d_matrix(j, k)) if k > 0 else Subspace(len(basis(j, 0)),
                                                                 [{i: ONE} for i in range(len(basis(j, 0)))])
            img = _image(d_matrix(j, k + 1)) if k < r else Subspace(len(basis(j, k)))
            dim = ker.dim - img.dim
            if dim:
                out[(k, j)] = dim
    return out


# ---------------------------------------------------------------------------
# Graded ideals


class GradedIdeal:
    """Homogeneous ideal of the base ring, with cached Groebner data."""

    def __init__(self, ring: BaseRing, generators, window: Optional[int] = None):
        self.ring = ring
        self.generators = [dict(g) for g in generators if g]
        self.window = window
        self._gb = None

    def groebner(self):
        if self._gb is None:
            self._gb = buchberger(self.generators)
        return self._gb

    def dimension(self) -> int:
        """Krull dimension of R/I (r for the zero ideal, -1 for the unit)."""
        if not self.generators:
            return self.ring.rank
        return hilbert_dimension(self.ring, self.groebner())

    def height(self) -> int:
        return self.ring.rank - self.dimension()

    def contains(self, p: RPoly) -> bool:
        from .polyring import poly_reduce
        return not poly_reduce(p, self.groebner())

    def generator_degrees(self):
        return sorted(self.ring.exp_degree(leading_term(g)[0]) for g in self.generators)

    def format(self):
        return [self.ring.format_poly(g) for g in self.generators]

    def __repr__(self):
        return "(" + ", ".join(self.format()) + ")" if self.generators else "(0)"


def ideal_dimension(ideal: GradedIdeal) -> int:
    return ideal.dimension()


def is_regular_sequence(ring: BaseRing, polys) -> bool:
    """Homogeneous positive-degree polynomials form a regular sequence iff
    the ideal they generate has height equal to their number (R is
    Cohen-Macaulay)."""
    polys = list(polys)
    if any(not p for p in polys):
        return False
    if not polys:
        return True
    ideal = GradedIdeal(ring, polys)
    return ideal.height() == len(polys)


def kernel_ideal(alg: CDGA, N: int, view: Optional[ModuleView] = None) -> GradedIdeal:
    """Generators of ker(R -> H^*(algebra)) in degrees <= N, minimalized."""
    if view is None:
        view = CDGAModuleView(alg)
    ring = view.base
    H = view.homology
    cpx = view.complex
    found_polys = []
    for n in range(0, N + 1, 2):
        rmonos = ring.monomials(n)
        if not rmonos:
            continue
        # map R_n -> H^n : mu -> [mu . 1]
        hdim = H.dim(n)
        idx = cpx.index(n)
        mat = SparseMatrix(hdim, len(rmonos))
        for col, exp in enumerate(rmonos):
            mono = tuple((alg.by_name[ring.names[i]].index, e)
                         for i, e in enumerate(exp) if e)
            vec = {idx[mono]: ONE}
            for i, c in H.class_coords(vec, n).items():
                mat[i, col] = c
        from .linalg import kernel as _kernel
        kn = _kernel(mat)
        if kn.dim == 0:
            continue
        rindex = {exp: i for i, exp in enumerate(rmonos)}
        spanned = []
        for g in found_polys:
            gd = ring.exp_degree(leading_term(g)[0])
            if gd > n:
                continue
            for exp in ring.monomials(n - gd):
                prod = poly_term_mul(ONE, exp, g)
                spanned.append({rindex[e]: c for e, c in prod.items()})
        ssub = Subspace(len(rmonos), spanned)
        new = kn.complement_in(ssub)
        for vec in new.basis:
            found_polys.append({rmonos[i]: c for i, c in vec.items()})
    return GradedIdeal(ring, found_polys, window=N)


# ---------------------------------------------------------------------------
# Lifting through surjective quasi-isomorphisms


class SliceMap:
    """A degreewise linear map between two slice complexes."""

    def __init__(self, source: ModuleView, target: ModuleView, matrix_fn):
        self.source = source
        self.target = target
        self.matrix_fn = matrix_fn
        self._cache = {}

    def matrix(self, n: int) -> SparseMatrix:
        m = self._cache.get(n)
        if m is None:
            m = self.matrix_fn(n)
            self._cache[n] = m
        return m

    def apply(self, vec: dict, n: int) -> dict:
        return self.matrix(n).apply(vec)


class LiftError(ValueError):
    def __init__(self, degree, message):
        super().__init__(f"degree {degree}: {message}")
        self.degree = degree


def lift_through(model: FreeDGRModule, phi_images, f: SliceMap, N: int):
    """Given phi: (model) -> M (by generator images) and a surjective
    quasi-isomorphism f: N_mod -> M, produce psi with f o psi = phi in
    degrees <= N.  Returns generator images into N_mod."""
    src = f.source      # N_mod
    dst = f.target      # M
    Hn, Hm = src.homology, dst.homology
    psi = {}

    def psi_vector(elem, n):
        out = {}
        for (g, exp), c in elem.items():
            vec, deg = src.mult_by_exp(dict(psi[g]), model.gens[g][1], exp)
            vec_axpy(out, c, vec)
        return out

    order = sorted(range(len(model.gens)), key=lambda g: model.gens[g][1])
    for g in order:
        deg = model.gens[g][1]
        if deg > N:
            continue
        # surjectivity check on the slice
        from .linalg import image as _image
        if _image(f.matrix(deg)).dim != len(dst.complex.basis(deg)):
            raise LiftError(deg, "map is not surjective on this slice")
        dx = model.diff[g]
        v = psi_vector(dx, deg + 1) if dx else {}
        y = Hn.primitive(v, deg + 1)
        if y is None:
            raise LiftError(deg, "image of differential is not exact upstairs")
        w = dict(f.apply(y, deg))
        vec_axpy(w, -ONE, dict(phi_images[g]))
        # find closed z with f(z) = w, via the cohomology matrix of f
        cls = Hm.class_coords(w, deg)
        hf = SparseMatrix(Hm.dim(deg), Hn.dim(deg))
        for k in range(Hn.dim(deg)):
            img = f.apply(Hn.rep_vector(deg, k), deg)
            for i, c in Hm.class_coords(img, deg).items():
                hf[i, k] = c
        from .linalg import solve as _solve
        pre = _solve(hf, cls)
        if pre is None:
            raise LiftError(deg, "map is not surjective on cohomology")
        a = {}
        for k, c in pre.items():
            vec_axpy(a, c, Hn.rep_vector(deg, k))
        fa = dict(f.apply(a, deg))
        vec_axpy(fa, -ONE, w)
        b = Hm.primitive(fa, deg)
        if b is None:
            raise LiftError(deg, "map is not injective on cohomology")
        c_vec = _solve(f.matrix(deg - 1), b) if deg > 0 else ({} if not b else None)
        if c_vec is None:
            raise LiftError(deg, "map is not surjective on this slice")
        z = dict(a)
        dn = src.complex.d_matrix(deg - 1) if deg > 0 else None
        if dn is not None:
            vec_axpy(z, -ONE, dn.apply(c_vec))
        out = dict(y)
        vec_axpy(out, -ONE, z)
        psi[g] = out
        # exact verification
        check = dict(f.apply(out, deg))
        vec_axpy(check, -ONE, dict(phi_images[g]))
        if check:
            raise LiftError(deg, "lift verification failed")
    return psi
