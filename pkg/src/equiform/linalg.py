"""Exact sparse linear algebra over the rationals.

Vectors are sparse dicts {index: Fraction} with no stored zeros.  All
operations are exact; there is no floating point anywhere in the package.
Pivot choice is always leftmost column first, then smallest row index, so
every echelon form (and everything built on top of one) is canonical.
"""

from fractions import Fraction
from typing import Iterable, Optional

Vec = dict  # {int: Fraction}, zero entries never stored

ZERO = Fraction(0)
ONE = Fraction(1)


def vec_add(u: Vec, v: Vec) -> Vec:
    out = dict(u)
    for j, c in v.items():
        s = out.get(j, ZERO) + c
        if s:
            out[j] = s
        else:
            out.pop(j, None)
    return out


def vec_sub(u: Vec, v: Vec) -> Vec:
    out = dict(u)
    for j, c in v.items():
        s = out.get(j, ZERO) - c
        if s:
            out[j] = s
        else:
            out.pop(j, None)
    return out


def vec_scale(c, v: Vec) -> Vec:
    c = Fraction(c)
    if not c:
        return {}
    return {j: c * x for j, x in v.items()}


def vec_axpy(out: Vec, c: Fraction, v: Vec) -> None:
    """In place: out += c*v."""
    if not c:
        return
    for j, x in v.items():
        s = out.get(j, ZERO) + c * x
        if s:
            out[j] = s
        else:
            out.pop(j, None)


def vec_lead(v: Vec) -> Optional[int]:
    return min(v) if v else None


class SparseMatrix:
    """Sparse rows x cols matrix over Q, stored row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, entries=None):
        self.rows = rows
        self.cols = cols
        self.data = {}  # row -> {col: Fraction}
        if entries:
            for (i, j), c in entries.items():
                self[i, j] = c

    def __getitem__(self, ij):
        i, j = ij
        return self.data.get(i, {}).get(j, ZERO)

    def __setitem__(self, ij, c):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry {ij} outside {self.rows}x{self.cols}")
        c = Fraction(c)
        row = self.data.setdefault(i, {})
        if c:
            row[j] = c
        else:
            row.pop(j, None)
            if not row:
                del self.data[i]

    def row(self, i: int) -> Vec:
        return dict(self.data.get(i, {}))

    def column(self, j: int) -> Vec:
        out = {}
        for i, row in self.data.items():
            c = row.get(j)
            if c:
                out[i] = c
        return out

    def entries(self):
        for i, row in self.data.items():
            for j, c in row.items():
                yield i, j, c

    def apply(self, v: Vec) -> Vec:
        """Matrix-vector product (v indexed by columns)."""
        out = {}
        for i, row in self.data.items():
            s = ZERO
            for j, c in row.items():
                x = v.get(j)
                if x:
                    s += c * x
            if s:
                out[i] = s
        return out

    def transpose(self) -> "SparseMatrix":
        t = SparseMatrix(self.cols, self.rows)
        for i, j, c in self.entries():
            t[j, i] = c
        return t

    def compose(self, other: "SparseMatrix") -> "SparseMatrix":
        """self @ other."""
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in compose")
        out = SparseMatrix(self.rows, other.cols)
        for i, row in self.data.items():
            acc = {}
            for k, c in row.items():
                orow = other.data.get(k)
                if orow:
                    for j, d in orow.items():
                        s = acc.get(j, ZERO) + c * d
                        if s:
                            acc[j] = s
                        else:
                            acc.pop(j, None)
            for j, c in acc.items():
                out[i, j] = c
        return out

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, {sum(len(r) for r in self.data.values())} entries)"

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        m = cls(n, n)
        for i in range(n):
            m[i, i] = ONE
        return m

    @classmethod
    def from_columns(cls, columns: Iterable[Vec], rows: int) -> "SparseMatrix":
        columns = list(columns)
        m = cls(rows, len(columns))
        for j, col in enumerate(columns):
            for i, c in col.items():
                m[i, j] = c
        return m


def _echelon_rows(rows):
    """Reduce a list of sparse row vectors to canonical RREF.

    Returns (reduced_rows, pivot_columns), rows sorted by pivot column,
    leading coefficient 1, pivot columns cleared in all other rows.
    """
    reduced = []   # list of (pivot_col, row); rows kept fully reduced
    lead_of = {}   # pivot column -> position in reduced
    for r in rows:
        r = dict(r)
        # clear every existing pivot coordinate; pivot rows carry no other
        # pivot columns, so one snapshot pass is enough
        for col in sorted(c for c in r if c in lead_of):
            coeff = r.get(col)
            if coeff:
                vec_axpy(r, -coeff, reduced[lead_of[col]][1])
        if r:
            lead = min(r)
            inv = ONE / r[lead]
            r = {j: inv * c for j, c in r.items()}
            # clear the new pivot column from earlier rows
            for p, pr in reduced:
                c = pr.get(lead)
                if c:
                    vec_axpy(pr, -c, r)
            lead_of[lead] = len(reduced)
            reduced.append((lead, r))
    reduced.sort(key=lambda t: t[0])
    return [r for _, r in reduced], [p for p, _ in reduced]


def rref(m: SparseMatrix):
    """Reduced row echelon form.  Returns (SparseMatrix, pivot column list)."""
    rows = [m.row(i) for i in range(m.rows)]
    reduced, pivots = _echelon_rows(rows)
    out = SparseMatrix(m.rows, m.cols)
    for i, r in enumerate(reduced):
        for j, c in r.items():
            out[i, j] = c
    return out, pivots


class Subspace:
    """Subspace of Q^n with a canonical reduced-echelon basis."""

    __slots__ = ("ambient", "basis", "_lead")

    def __init__(self, ambient: int, vectors: Iterable[Vec] = ()):
        self.ambient = ambient
        rows, pivots = _echelon_rows(vectors)
        self.basis = rows
        self._lead = {p: i for i, p in enumerate(pivots)}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Vec) -> Vec:
        """Residual of v modulo this subspace (canonical representative)."""
        r = dict(v)
        while r:
            lead = min(r)
            i = self._lead.get(lead)
            if i is None:
                # leading coordinate not a pivot; eliminate later pivots only
                break
            vec_axpy(r, -r[lead], self.basis[i])
        # continue eliminating any remaining pivot coordinates
        changed = True
        while changed:
            changed = False
            for j in sorted(r):
                i = self._lead.get(j)
                if i is not None and r.get(j):
                    vec_axpy(r, -r[j], self.basis[i])
                    changed = True
        return r

    def __contains__(self, v) -> bool:
        return not self.reduce(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(b in self for b in other.basis)

    def coords(self, v: Vec):
        """Coordinates of v in the echelon basis; None if v not in the span."""
        r = dict(v)
        coords = {}
        while r:
            lead = min(r)
            i = self._lead.get(lead)
            if i is None:
                return None
            c = r[lead]
            coords[i] = c
            vec_axpy(r, -c, self.basis[i])
        return coords

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    def complement_in(self, sub: "Subspace") -> "Subspace":
        """Canonical complement of sub inside self (sub must be contained)."""
        reduced = [sub.reduce(b) for b in self.basis]
        return Subspace(self.ambient, [r for r in reduced if r])

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.basis == other.basis)

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q^{self.ambient})"


def kernel(m: SparseMatrix) -> Subspace:
    """Canonical basis of {v : m v = 0}."""
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    vectors = []
    for f in free:
        v = {f: ONE}
        for i, p in enumerate(pivots):
            c = red[i, f]
            if c:
                v[p] = -c
        vectors.append(v)
    return Subspace(m.cols, vectors)


def image(m: SparseMatrix) -> Subspace:
    """Column space of m."""
    return Subspace(m.rows, [m.column(j) for j in range(m.cols)])


def solve(m: SparseMatrix, b: Vec) -> Optional[Vec]:
    """A particular solution of m x = b (free variables zero), or None."""
    if any(i >= m.rows for i in b):
        raise ValueError("right hand side outside row range")
    rows = []
    B = m.cols  # column index used for the right hand side
    for i in range(m.rows):
        r = m.row(i)
        c = b.get(i)
        if c:
            r[B] = c
        rows.append(r)
    reduced, pivots = _echelon_rows(rows)
    x = {}
    for p, r in zip(pivots, reduced):
        if p == B:
            return None  # inconsistent
        c = r.get(B)
        if c:
            x[p] = c
    return x


class CachedSolver:
    """Repeated particular solutions of m x = b for a fixed matrix m."""

    __slots__ = ("matrix", "_rows", "_pivots", "_tracks")

    def __init__(self, matrix: SparseMatrix):
        self.matrix = matrix
        rows = [(matrix.row(i), {i: ONE}) for i in range(matrix.rows)]
        reduced = []  # (pivot, row, track)
        for row, track in rows:
            row = dict(row)
            for p, pr, pt in reduced:
                c = row.get(p)
                if c:
                    vec_axpy(row, -c, pr)
                    track = vec_add(track, vec_scale(-c, pt))
            if row:
                lead = min(row)
                inv = ONE / row[lead]
                row = {j: inv * c for j, c in row.items()}
                track = vec_scale(inv, track)
                for p, pr, pt in reduced:
                    c = pr.get(lead)
                    if c:
                        vec_axpy(pr, -c, row)
                        vec_axpy(pt, -c, track)
                reduced.append((lead, row, track))
        reduced.sort(key=lambda t: t[0])
        self._pivots = [p for p, _, _ in reduced]
        self._rows = [r for _, r, _ in reduced]
        self._tracks = [t for _, _, t in reduced]

    def solve(self, b: Vec) -> Optional[Vec]:
        x = {}
        for p, track in zip(self._pivots, self._tracks):
            s = ZERO
            for i, c in track.items():
                v = b.get(i)
                if v:
                    s += c * v
            if s:
                x[p] = s
        # the tracked elimination is not applied to b's non-pivot rows, so
        # verify the candidate exactly
        if self.matrix.apply(x) == {i: c for i, c in b.items() if c}:
            return x
        return None


def feasible(equations):
    """Solve an affine system given as [(coeffs: Vec over unknowns, const)].

    Each item demands sum(coeffs[k]*x[k]) == const.  Returns an assignment
    {unknown: Fraction} (omitted unknowns are zero) or None if infeasible.
    """
    sol, _ = feasible_with_certificate(equations)
    return sol


def feasible_with_certificate(equations):
    """Like feasible(), but an infeasible system also returns a certificate.

    Returns (solution, None) when solvable, else (None, support) where
    support is a list of input equation indices whose combination is the
    contradiction found.
    """
    unknowns = sorted({k for coeffs, _ in equations for k in coeffs})
    col = {k: j for j, k in enumerate(unknowns)}
    B = len(unknowns)
    # rows carry (coeff part, const, tracking combination of original rows)
    work = []
    for idx, (coeffs, const) in enumerate(equations):
        row = {col[k]: Fraction(c) for k, c in coeffs.items() if c}
        work.append((row, Fraction(const), {idx: ONE}))
    reduced = []  # [pivot, row, const, track]; kept in full RREF
    lead_of = {}
    for row, const, track in work:
        row = dict(row)
        for col in sorted(c for c in row if c in lead_of):
            coeff = row.get(col)
            if coeff:
                _, pr, pc, pt = reduced[lead_of[col]]
                vec_axpy(row, -coeff, pr)
                const -= coeff * pc
                track = vec_add(track, vec_scale(-coeff, pt))
        if row:
            lead = min(row)
            inv = ONE / row[lead]
            row = {j: inv * c for j, c in row.items()}
            const *= inv
            track = vec_scale(inv, track)
            # clear the new pivot column from earlier rows
            for entry in reduced:
                c = entry[1].get(lead)
                if c:
                    vec_axpy(entry[1], -c, row)
                    entry[2] -= c * const
                    entry[3] = vec_add(entry[3], vec_scale(-c, track))
            lead_of[lead] = len(reduced)
            reduced.append([lead, row, const, track])
        elif const:
            support = sorted(track)
            return None, support
    # full RREF with free unknowns zero: x[pivot] = const
    x = {}
    for lead, _, const, _ in reduced:
        if const:
            x[lead] = const
    return {unknowns[j]: c for j, c in x.items()}, None
