"""Spectral sequences of filtered cochain complexes, by exact subquotients.

Pages are computed from Z_r^{p,q} = {x in F^p, deg p+q : dx in F^{p+r}}
with plain row reduction on degreewise slices; no derived couples.  The
concrete instance used by the formality checks filters the extension
(C (x) Lambda(s_1..s_r), D s_i = X_i) by the degree coming from C.
"""

from typing import Optional

from .gca import CDGA
from .homology import CDGAComplex
from .linalg import SparseMatrix, Subspace, kernel


class FilteredComplex:
    """A CDGA slice complex with a filtration weight on each generator.

    The filtration of a monomial is the weight sum; d must not decrease it.
    """

    def __init__(self, alg: CDGA, weights, max_degree: int):
        """weights: {generator name: filtration weight}."""
        self.alg = alg
        self.cpx = CDGAComplex(alg)
        self.max_degree = max_degree
        self.weights = [0] * len(alg.generators)
        for name, w in weights.items():
            self.weights[alg.by_name[name].index] = w
        self._filt = {}
        self._z = {}

    def filtration_of(self, mono) -> int:
        return sum(self.weights[i] * e for i, e in mono)

    def filt_values(self, n: int):
        vals = self._filt.get(n)
        if vals is None:
            vals = [self.filtration_of(m) for m in self.cpx.basis(n)]
            self._filt[n] = vals
        return vals

    def check_respects_filtration(self, up_to: Optional[int] = None):
        up_to = self.max_degree if up_to is None else up_to
        for n in range(up_to):
            vals = self.filt_values(n)
            tvals = self.filt_values(n + 1)
            d = self.cpx.d_matrix(n)
            for i, j, c in d.entries():
                if tvals[i] < vals[j]:
                    raise ValueError(
                        f"differential drops filtration at degree {n}")
        return self

    # Z_r^{p,q} inside the full slice of total degree p+q
    def z_subspace(self, r: int, p: int, q: int) -> Subspace:
        key = (r, p, q)
        cached = self._z.get(key)
        if cached is not None:
            return cached
        sub = self._z_subspace(r, p, q)
        self._z[key] = sub
        return sub

    def _z_subspace(self, r: int, p: int, q: int) -> Subspace:
        n = p + q
        if n < 0 or n > self.max_degree - 1:
            return Subspace(0)
        basis = self.cpx.basis(n)
        vals = self.filt_values(n)
        cols = [j for j, v in enumerate(vals) if v >= p]
        if not cols:
            return Subspace(len(basis))
        d = self.cpx.d_matrix(n)
        tvals = self.filt_values(n + 1)
        rows = [i for i, v in enumerate(tvals) if v < p + r]
        mat = SparseMatrix(len(rows), len(cols))
        rindex = {i: k for k, i in enumerate(rows)}
        for k, j in enumerate(cols):
            for i, c in d.column(j).items():
                if i in rindex:
                    mat[rindex[i], k] = c
        ker = kernel(mat)
        vectors = []
        for v in ker.basis:
            vectors.append({cols[j]: c for j, c in v.items()})
        return Subspace(len(basis), vectors)


class SSPage:
    """One page: bigraded dimensions, differentials, and chosen bases."""

    def __init__(self, r: int):
        self.r = r
        self.dims = {}           # (p, q) -> dim
        self.reps = {}           # (p, q) -> list of slice vectors
        self.differentials = {}  # (p, q) -> SparseMatrix into (p+r, q-r+1)

    def dim(self, p: int, q: int) -> int:
        return self.dims.get((p, q), 0)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def euler_characteristic(self) -> int:
        return sum((-1) ** (p + q) * d for (p, q), d in self.dims.items())

    def nonzero_differentials(self):
        return {pq: m for pq, m in self.differentials.items()
                if any(True for _ in m.entries())}


def pages(fc: FilteredComplex, r_max: int, total_max: Optional[int] = None):
    """Pages E_0..E_{r_max} with induced differentials.

    Entries are computed for total degrees p+q <= total_max (default: one
    below the slice window, so every Z is exact); differentials d_r are
    recorded where both endpoints are inside the window.
    """
    if total_max is None:
        total_max = fc.max_degree - 1
    total_max = min(total_max, fc.max_degree - 1)
    out = []
    denom_cache = {}

    def denominator(r, p, q):
        key = (r, p, q)
        sub = denom_cache.get(key)
        if sub is None:
            n = p + q
            z1 = fc.z_subspace(r - 1, p + 1, q - 1)
            amb = z1.ambient
            vectors = list(z1.basis)
            src = fc.z_subspace(r - 1, p - r + 1, q + r - 2)
            if p + q - 1 >= 0 and src.dim:
                d = fc.cpx.d_matrix(n - 1)
                vectors += [d.apply(v) for v in src.basis]
            sub = Subspace(amb, vectors)
            denom_cache[key] = sub
        return sub

    for r in range(0, r_max + 1):
        page = SSPage(r)
        for n in range(0, total_max + 1):
            vals = fc.filt_values(n)
            if not vals:
                continue
            pmax = max(vals)
            for p in range(0, pmax + 1):
                q = n - p
                z = fc.z_subspace(r, p, q)
                den = denominator(r, p, q)
                dim = z.dim - den.dim
                if dim <= 0:
                    continue
                page.dims[(p, q)] = dim
                page.reps[(p, q)] = z.complement_in(den).basis
        # induced differentials (only where both endpoints are in the window)
        for (p, q), reps in page.reps.items():
            n = p + q
            tgt = (p + r, q - r + 1)
            if tgt not in page.dims:
                continue
            d = fc.cpx.d_matrix(n)
            tz = fc.z_subspace(r, *tgt)
            tden = denominator(r, *tgt)
            trep = Subspace(tz.ambient, page.reps[tgt])
            mat = SparseMatrix(page.dims[tgt], len(reps))
            for col, v in enumerate(reps):
                w = d.apply(v)
                red = tden.reduce(w)
                coords = trep.coords(red)
                if coords is None:
                    raise AssertionError("differential left the target page cell")
                for i, c in coords.items():
                    mat[i, col] = c
            if any(True for _ in mat.entries()):
                page.differentials[(p, q)] = mat
        out.append(page)
    return out


def koszul_filtered_complex(alg: CDGA, N: int) -> FilteredComplex:
    """The extension (C (x) Lambda S, D s_i = X_i) filtered by C-degree."""
    ext = alg.koszul_extension()
    weights = {g.name: g.degree for g in alg.generators}
    for g in ext.generators:
        if g.name not in weights:
            weights[g.name] = 0
    return FilteredComplex(ext, weights, N)


class SSReport:
    def __init__(self, kind, verdict, window, detail):
        self.kind = kind
        self.verdict = verdict   # "holds" | "fails" | "holds-up-to-window"
        self.window = window
        self.detail = detail

    @property
    def ok(self):
        return self.verdict in ("holds", "holds-up-to-window")

    def to_json(self):
        return {"kind": self.kind, "verdict": self.verdict,
                "window": self.window, "detail": self.detail}


def _max_fiber_jump(alg: CDGA) -> int:
    # an s-monomial can carry fiber degree at most sum(|X_i| - 1)
    return sum(d - 1 for d in alg.base_degrees) + 1


def e3_collapse_test(alg: CDGA, N: int, r_max: Optional[int] = None) -> SSReport:
    """Does the Koszul-extension spectral sequence degenerate at E_3?"""
    if r_max is None:
        r_max = _max_fiber_jump(alg) + 1
    fc = koszul_filtered_complex(alg, N)
    pgs = pages(fc, r_max)
    bad = []
    for page in pgs[3:]:
        for (p, q), m in page.nonzero_differentials().items():
            bad.append({"r": page.r, "p": p, "q": q})
    if bad:
        return SSReport("e3-collapse", "fails", N,
                        {"nonzero_differentials": bad,
                         "degenerates_at": max(b["r"] for b in bad) + 1})
    return SSReport("e3-collapse", "holds-up-to-window", N,
                    {"degenerates_at": 3})


def bottom_row_test(alg: CDGA, N: int, r_max: Optional[int] = None) -> SSReport:
    """Does any d_r (r >= 3) hit the bottom row E_r^{*,0}?"""
    if r_max is None:
        r_max = _max_fiber_jump(alg) + 1
    fc = koszul_filtered_complex(alg, N)
    pgs = pages(fc, r_max)
    hits = []
    for page in pgs[3:]:
        for (p, q), m in page.nonzero_differentials().items():
            if q - page.r + 1 == 0:
                hits.append({"r": page.r, "p": p, "q": q})
    if hits:
        return SSReport("bottom-row", "fails", N, {"into_bottom_row": hits})
    return SSReport("bottom-row", "holds-up-to-window", N, {"into_bottom_row": []})
