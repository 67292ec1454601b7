"""Degreewise cohomology of cochain complexes with canonical representatives.

A complex only has to expose `basis(n)` (a list of hashable labels) and
`d_matrix(n)` (the differential C^n -> C^{n+1} as a SparseMatrix in those
bases).  Everything else - kernels, images, canonical cocycle
representatives, class coordinates, primitives - is derived here and
cached, so the same slice is never row-reduced twice.
"""

from typing import Optional

from .linalg import CachedSolver, SparseMatrix, Subspace, kernel


class SliceComplex:
    """Base class: a cochain complex presented by degreewise slices."""

    def basis(self, n: int):
        raise NotImplementedError

    def d_matrix(self, n: int) -> SparseMatrix:
        raise NotImplementedError

    def dim(self, n: int) -> int:
        return len(self.basis(n))


class CDGAComplex(SliceComplex):
    """Slice view of a CDGA; optionally with reversed basis enumeration
    (used to exercise independence of pivot choices)."""

    def __init__(self, alg, reverse: bool = False):
        self.alg = alg
        self.reverse = reverse
        self._basis = {}
        self._index = {}
        self._d = {}

    def basis(self, n: int):
        b = self._basis.get(n)
        if b is None:
            b = list(self.alg.monomials(n))
            if self.reverse:
                b.reverse()
            self._basis[n] = b
            self._index[n] = {m: i for i, m in enumerate(b)}
        return b

    def index(self, n: int):
        self.basis(n)
        return self._index[n]

    def d_matrix(self, n: int) -> SparseMatrix:
        m = self._d.get(n)
        if m is None:
            src = self.basis(n)
            tgt_index = self.index(n + 1)
            m = SparseMatrix(len(tgt_index), len(src))
            for j, mono in enumerate(src):
                for tm, c in self.alg.d_mono(mono).terms.items():
                    m[tgt_index[tm], j] = c
            self._d[n] = m
        return m

    def vector_of(self, elem) -> dict:
        """Coordinates of a homogeneous element in its slice basis."""
        deg = elem.degree()
        if deg is None:
            raise ValueError("element is not homogeneous")
        idx = self.index(deg)
        return {idx[m]: c for m, c in elem.terms.items()}

    def element_of(self, n: int, vec: dict):
        from .gca import Element
        b = self.basis(n)
        return Element(self.alg, {b[i]: c for i, c in vec.items()})


class Homology:
    """Cached degreewise cohomology of a SliceComplex."""

    def __init__(self, cpx: SliceComplex):
        self.cpx = cpx
        self._ker = {}
        self._im = {}
        self._reps = {}
        self._repsub = {}
        self._solvers = {}

    def cocycles(self, n: int) -> Subspace:
        k = self._ker.get(n)
        if k is None:
            k = kernel(self.cpx.d_matrix(n))
            self._ker[n] = k
        return k

    def coboundaries(self, n: int) -> Subspace:
        b = self._im.get(n)
        if b is None:
            dim_n = self.cpx.dim(n)
            if n <= 0:
                b = Subspace(dim_n)
            else:
                d = self.cpx.d_matrix(n - 1)
                b = Subspace(dim_n, [d.column(j) for j in range(d.cols)])
            self._im[n] = b
        return b

    def representatives(self, n: int):
        """Canonical cocycle representatives of a basis of H^n."""
        reps = self._reps.get(n)
        if reps is None:
            ker = self.cocycles(n)
            im = self.coboundaries(n)
            reduced = [im.reduce(v) for v in ker.basis]
            sub = Subspace(self.cpx.dim(n), [r for r in reduced if r])
            reps = sub.basis
            self._reps[n] = reps
        return reps

    def dim(self, n: int) -> int:
        return len(self.representatives(n))

    def rep_subspace(self, n: int) -> Subspace:
        sub = self._repsub.get(n)
        if sub is None:
            sub = Subspace(self.cpx.dim(n), self.representatives(n))
            self._repsub[n] = sub
        return sub

    def class_coords(self, vec: dict, n: int) -> dict:
        """Coordinates of the class of a cocycle in the representative basis."""
        im = self.coboundaries(n)
        r = im.reduce(vec)
        coords = self.rep_subspace(n).coords(r)
        if coords is None:
            raise ValueError(f"vector is not a cocycle in degree {n}")
        # coords indexes the echelonized rep basis, which is reps itself
        return coords

    def rep_vector(self, n: int, k: int) -> dict:
        return dict(self.representatives(n)[k])

    def class_vector(self, n: int, coords: dict) -> dict:
        """Cocycle representative of a class given by coordinates."""
        reps = self.representatives(n)
        out = {}
        for k, c in coords.items():
            for i, x in reps[k].items():
                s = out.get(i, 0) + c * x
                if s:
                    out[i] = s
                else:
                    del out[i]
        return out

    def primitive(self, vec: dict, n: int) -> Optional[dict]:
        """Canonical y in C^{n-1} with d y = vec, or None if vec not exact."""
        if n <= 0:
            return None if vec else {}
        solver = self._solvers.get(n - 1)
        if solver is None:
            solver = CachedSolver(self.cpx.d_matrix(n - 1))
            self._solvers[n - 1] = solver
        return solver.solve(vec)

    def euler_characteristic(self, up_to: int):
        chi_c = sum((-1) ** n * self.cpx.dim(n) for n in range(up_to + 1))
        chi_h = sum((-1) ** n * self.dim(n) for n in range(up_to + 1))
        return chi_c, chi_h
