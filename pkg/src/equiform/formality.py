"""Formality notions for torus actions given by a relative model.

Implemented checks: spherical, almost module-formal, module-formal (via an
affine feasibility reformulation of the splitting criterion), equivariantly
formal, hyperformal (with formally-based / formal-core corollaries),
formal-core certificate verification, the toral-rank report, and the
low-cohomogeneity shortcut.

Every verdict carries its validity window.  A "fails" is only emitted when
the obstruction lives in degrees where all participating spaces are stable
under window growth; in this setting that is every degree inside the
window, because slices of the minimal module model in degree n never change
once generators up to degree n are fixed.
"""

from fractions import Fraction
from typing import Optional, Sequence, Union

from .gca import CDGA, Element
from .dgmod import (CDGAModuleView, CohomologyModule, GradedIdeal,
                    HirschBrownModel, ModuleView, base_ring_of, hirsch_brown,
                    is_regular_sequence, kernel_ideal, minimal_free_resolution)
from .homology import CDGAComplex, Homology
from .linalg import (ONE, CachedSolver, SparseMatrix, Subspace,
                     feasible_with_certificate, vec_axpy)

HOLDS = "holds"
FAILS = "fails"
HOLDS_WINDOW = "holds-up-to-window"
INCONCLUSIVE = "inconclusive"


class CheckReport:
    """Outcome of one formality check."""

    def __init__(self, notion: str, verdict: str, window: int,
                 witness=None, details=None):
        self.notion = notion
        self.verdict = verdict
        self.window = window
        self.witness = witness
        self.details = details or {}
        if verdict == FAILS and witness is None:
            raise ValueError("a failing verdict requires a witness")

    @property
    def ok(self) -> bool:
        return self.verdict in (HOLDS, HOLDS_WINDOW)

    def to_json(self):
        return {"notion": self.notion, "verdict": self.verdict,
                "window": self.window, "witness": self.witness,
                "details": self.details}

    def __repr__(self):
        return f"CheckReport({self.notion}: {self.verdict} @ N={self.window})"


def default_window(alg: CDGA, probe: int = 16) -> int:
    """Window rule: top nonzero fiber cohomology degree (probed) plus the
    sum of the base generator degrees plus two."""
    fib = alg.fiber()
    fh = Homology(CDGAComplex(fib))
    cap = min(sum(g.degree for g in fib.generators), probe) if fib.generators else 0
    top = 0
    for n in range(cap + 1):
        if fh.dim(n):
            top = n
    return top + sum(alg.base_degrees) + 2


class ModelContext:
    """Shared caches for all checks on one relative model.

    Accepts a CDGA (full functionality) or any dgRm ModuleView (module-level
    checks only: no fiber, no kernel ideal)."""

    def __init__(self, model, N: Optional[int] = None):
        if isinstance(model, CDGA):
            self.alg = model
            self.N = default_window(model) if N is None else N
            self.view = CDGAModuleView(model)
            self.fiber = model.fiber()
            self.fiber_cpx = CDGAComplex(self.fiber)
            self.fiber_H = Homology(self.fiber_cpx)
        elif isinstance(model, ModuleView):
            if N is None:
                raise ValueError("module-view inputs need an explicit window")
            self.alg = None
            self.N = N
            self.view = model
            self.fiber = None
            self.fiber_cpx = None
            self.fiber_H = None
        else:
            raise TypeError(f"cannot build a model context from {type(model)!r}")
        self.H = self.view.homology
        self.ring = self.view.base
        self._hb = {}
        self._resolution = None
        self._kernel_ideal = None
        self._cohomology_module = None
        self._transfer = None

    def _need_alg(self, what: str) -> CDGA:
        if self.alg is None:
            raise ValueError(f"{what} requires a CDGA input, not a bare module")
        return self.alg

    def is_zero_differential(self) -> bool:
        if self.alg is not None:
            return all(not self.alg.d_gen(g.index)
                       for g in self.alg.fiber_generators)
        return all(not self.view.complex.d_matrix(n).data
                   for n in range(self.N))

    def hirsch_brown(self, reverse: bool = False) -> HirschBrownModel:
        hb = self._hb.get(reverse)
        if hb is None:
            if reverse and self.alg is not None:
                target = CDGAModuleView(self.alg, reverse=True)
            else:
                target = self.view
            hb = hirsch_brown(target, self.N)
            self._hb[reverse] = hb
        return hb

    def cohomology_module(self) -> CohomologyModule:
        if self._cohomology_module is None:
            self._cohomology_module = CohomologyModule(self.view, self.N)
        return self._cohomology_module

    def resolution(self):
        if self._resolution is None:
            self._resolution = minimal_free_resolution(self.cohomology_module(), self.N)
        return self._resolution

    def kernel_ideal(self) -> GradedIdeal:
        if self._kernel_ideal is None:
            alg = self._need_alg("the kernel ideal")
            self._kernel_ideal = kernel_ideal(alg, self.N, view=self.view)
        return self._kernel_ideal

    def transfer(self, arity_max: int = 4):
        if self._transfer is None or self._transfer[0].arity_max < arity_max:
            from .ainfty import kadeishvili_transfer
            self._transfer = kadeishvili_transfer(
                self._need_alg("homotopy transfer"), arity_max, self.N)
        return self._transfer

    def restriction_matrix(self, n: int) -> SparseMatrix:
        """H^n(total model) -> H^n(fiber), on canonical representatives."""
        alg = self._need_alg("the fiber restriction")
        m = SparseMatrix(self.fiber_H.dim(n), self.H.dim(n))
        cpx = self.view.complex
        for k in range(self.H.dim(n)):
            rep = cpx.element_of(n, self.H.rep_vector(n, k))
            res = alg.project_to_fiber(rep)
            vec = self.fiber_cpx.vector_of(res) if res else {}
            for i, c in self.fiber_H.class_coords(vec, n).items():
                m[i, k] = c
        return m

    def base_class_subspace(self, n: int) -> Subspace:
        """Image of m H^* in H^n: spans of base-generator multiples."""
        vectors = []
        for j, dj in enumerate(self.ring.degrees):
            if n - dj < 0:
                continue
            mult = self.cohomology_module().mult_matrix(j, n - dj)
            vectors.extend(mult.column(k) for k in range(self.H.dim(n - dj)))
        return Subspace(self.H.dim(n), vectors)


def _as_context(model, N) -> "ModelContext":
    if isinstance(model, ModelContext):
        return model
    return ModelContext(model, N)


def check_spherical(model, N: Optional[int] = None) -> CheckReport:
    """Is ker(H_G -> H(fiber)) exactly m . H_G, degree by degree?"""
    ctx = _as_context(model, N)
    if ctx.is_zero_differential():
        return CheckReport("spherical", HOLDS, ctx.N,
                           details={"note": "zero differential"})
    from .linalg import kernel as _kernel
    for n in range(1, ctx.N + 1):
        if ctx.H.dim(n) == 0:
            continue
        ker = _kernel(ctx.restriction_matrix(n))
        msub = ctx.base_class_subspace(n)
        for v in msub.basis:
            if v not in ker:
                raise AssertionError("m H_G escaped the restriction kernel")
        if ker.dim != msub.dim:
            extra = ker.complement_in(msub)
            witness_cls = extra.basis[0]
            vec = {}
            for k, c in witness_cls.items():
                vec_axpy(vec, c, ctx.H.rep_vector(n, k))
            elem = ctx.view.complex.element_of(n, vec)
            return CheckReport(
                "spherical", FAILS, ctx.N,
                witness={"degree": n, "element": repr(elem),
                         "kernel_dim": ker.dim, "m_multiples_dim": msub.dim},
                details={"first_failing_degree": n})
    return CheckReport("spherical", HOLDS_WINDOW, ctx.N)


def _tor_by_cdga_degree(ctx: ModelContext):
    res = ctx.resolution()
    return res, res.betti_by_cdga_degree()


def check_almost_mod_formal(model, N: Optional[int] = None) -> CheckReport:
    """Does the total Betti number of H_G match dim H(fiber)?

    Compared degree by degree in the module grading shifted by homological
    degree; by the convergence of the associated spectral sequence the
    resolution count dominates, so any excess is a definite failure.
    """
    ctx = _as_context(model, N)
    if ctx.is_zero_differential():
        return CheckReport("almost-mod-formal", HOLDS, ctx.N,
                           details={"note": "zero differential"})
    res, by_deg = _tor_by_cdga_degree(ctx)
    n_cmp = ctx.N - ctx.ring.rank
    tor_total = 0
    fiber_total = 0
    for d in range(n_cmp + 1):
        t = by_deg.get(d, 0)
        f = ctx.fiber_H.dim(d)
        tor_total += t
        fiber_total += f
        if t > f:
            return CheckReport(
                "almost-mod-formal", FAILS, ctx.N,
                witness={"degree": d, "betti_total_at_degree": t,
                         "fiber_dim_at_degree": f},
                details={"betti": {str(k): v for k, v in res.betti().items()},
                         "compare_up_to": n_cmp})
        if t < f:
            return CheckReport(
                "almost-mod-formal", INCONCLUSIVE, ctx.N,
                witness=None,
                details={"note": "window too small: resolution count fell "
                                 "below the fiber dimension",
                         "degree": d, "compare_up_to": n_cmp})
    details = {"betti_total": tor_total, "fiber_total": fiber_total,
               "compare_up_to": n_cmp,
               "betti": {str(k): v for k, v in res.betti().items()}}
    return CheckReport("almost-mod-formal", HOLDS_WINDOW, ctx.N, details=details)


def check_equivariantly_formal(model, N: Optional[int] = None) -> CheckReport:
    """Is H_G free over R (no higher Tor) within the window?"""
    ctx = _as_context(model, N)
    if ctx.is_zero_differential():
        return CheckReport("equivariantly-formal", HOLDS, ctx.N,
                           details={"note": "zero differential"})
    res = ctx.resolution()
    betti = res.betti()
    higher = {k: v for k, v in betti.items() if k[0] >= 1}
    if higher:
        (i, j), v = sorted(higher.items())[0]
        return CheckReport("equivariantly-formal", FAILS, ctx.N,
                           witness={"tor_index": i, "internal_degree": j,
                                    "dimension": v},
                           details={"betti": {str(k): c for k, c in betti.items()}})
    return CheckReport("equivariantly-formal", HOLDS_WINDOW, ctx.N,
                       details={"betti": {str(k): c for k, c in betti.items()}})


def mod_formal_system(ctx: ModelContext, reverse: bool = False):
    """The affine-linear feasibility system for the splitting criterion.

    Unknowns: entries of a degreewise map L from the fixed complement C0 of
    ker D into ker D.  For every base generator X_j and every basis vector v
    of C0 the class of  proj_ker(X_j v) + X_j L(v) - L(proj_C0(X_j v))  must
    vanish in H^{n+|X_j|}.  Returns (equations, metadata per equation,
    unknown metadata).
    """
    hb = ctx.hirsch_brown(reverse=reverse)
    module = hb.module
    view = module.view()
    mh = view.homology
    N = ctx.N
    ker = {}
    comp = {}
    split = {}
    for n in range(N + 1):
        dim = len(module.basis(n))
        if dim == 0:
            ker[n] = Subspace(0)
            comp[n] = Subspace(0)
            continue
        kn = mh.cocycles(n)
        full = Subspace(dim, [{i: ONE} for i in range(dim)])
        cn = full.complement_in(kn)
        ker[n], comp[n] = kn, cn
        cols = [dict(b) for b in kn.basis] + [dict(b) for b in cn.basis]
        split[n] = (CachedSolver(SparseMatrix.from_columns(cols, dim)), kn.dim)
    ker_classes = {}

    def kernel_class(m: int, kidx: int) -> dict:
        per = ker_classes.setdefault(m, {})
        cls = per.get(kidx)
        if cls is None:
            cls = mh.class_coords(ker[m].basis[kidx], m)
            per[kidx] = cls
        return cls

    equations = []
    eq_meta = []
    for n in range(N + 1):
        cn = comp[n]
        if cn.dim == 0:
            continue
        for j, dj in enumerate(ctx.ring.degrees):
            m = n + dj
            if m > N:
                continue
            mult = view.mult_matrix(j, n)
            # classes of X_j . (kernel basis) in H^m
            kmult_cls = [mh.class_coords(mult.apply(kv), m) for kv in ker[n].basis]
            solver, kdim_m = split[m]
            for cv, v in enumerate(cn.basis):
                w = mult.apply(v)
                coords = solver.solve(w)
                if coords is None:
                    raise AssertionError("splitting failed to decompose a slice vector")
                kpart = {}
                for i, c in coords.items():
                    if i < kdim_m:
                        vec_axpy(kpart, c, ker[m].basis[i])
                const_cls = mh.class_coords(kpart, m)
                # one scalar equation per H^m coordinate
                rows = {}
                for i, c in const_cls.items():
                    rows.setdefault(i, [{}, Fraction(0)])[1] = -c
                for kidx, cls in enumerate(kmult_cls):
                    for i, c in cls.items():
                        rows.setdefault(i, [{}, Fraction(0)])[0][("L", n, kidx, cv)] = c
                for i, c in coords.items():
                    if i < kdim_m or not c:
                        continue
                    cw = i - kdim_m
                    for kidx in range(ker[m].dim):
                        for hi, hc in kernel_class(m, kidx).items():
                            row = rows.setdefault(hi, [{}, Fraction(0)])[0]
                            key = ("L", m, kidx, cw)
                            val = row.get(key, Fraction(0)) - c * hc
                            if val:
                                row[key] = val
                            else:
                                row.pop(key, None)
                for hi, (coeffs, const) in sorted(rows.items()):
                    equations.append((coeffs, const))
                    eq_meta.append({"degree": n, "base_generator": ctx.ring.names[j],
                                    "complement_index": cv, "h_coordinate": hi})
    return equations, eq_meta


def check_mod_formal(model, N: Optional[int] = None,
                     reverse: bool = False) -> CheckReport:
    """Module-level formality via the linear feasibility reformulation."""
    ctx = _as_context(model, N)
    if ctx.is_zero_differential():
        return CheckReport("mod-formal", HOLDS, ctx.N,
                           details={"note": "zero differential, L = 0"})
    equations, eq_meta = mod_formal_system(ctx, reverse=reverse)
    sol, support = feasible_with_certificate(equations)
    if sol is not None:
        nonzero = {str(k): str(v) for k, v in sorted(sol.items())}
        verdict = HOLDS if ctx.ring.rank == 1 else HOLDS_WINDOW
        details = {"unknowns_assigned": len(nonzero), "splitting": nonzero}
        if ctx.ring.rank == 1:
            details["note"] = "rank-1 base: module formality is automatic"
        return CheckReport("mod-formal", verdict, ctx.N, details=details)
    # shrink the infeasible support to an irreducible subsystem
    support = list(support)
    changed = True
    while changed:
        changed = False
        for idx in list(support):
            trial = [equations[i] for i in support if i != idx]
            s, _ = feasible_with_certificate(trial)
            if s is None:
                support.remove(idx)
                changed = True
    if ctx.ring.rank == 1:
        raise AssertionError("rank-1 feasibility system cannot be infeasible")
    unknowns = sorted({k for i in support for k in equations[i][0]})
    witness = {
        "inconsistent_equations": [eq_meta[i] for i in support],
        "unknowns": [{"degree": k[1], "kernel_index": k[2],
                      "complement_index": k[3]} for k in unknowns],
    }
    return CheckReport("mod-formal", FAILS, ctx.N, witness=witness)


def check_hyperformal(model, N: Optional[int] = None) -> CheckReport:
    """Is ker(R -> H_G) generated by a regular sequence?  A positive answer
    also certifies the formally-based and formal-core properties."""
    ctx = _as_context(model, N)
    ideal = ctx.kernel_ideal()
    gens = ideal.generators
    if not gens:
        verdict = HOLDS if ctx.is_zero_differential() else HOLDS_WINDOW
        return CheckReport("hyperformal", verdict, ctx.N,
                           details={"kernel": [], "note": "zero kernel",
                                    "corollaries": ["formally-based", "formal-core"]})
    regular = is_regular_sequence(ctx.ring, gens)
    detail = {"kernel": ideal.format(), "height": ideal.height(),
              "minimal_generators": len(gens), "window": ideal.window}
    if regular:
        detail["corollaries"] = ["formally-based", "formal-core"]
        return CheckReport("hyperformal", HOLDS_WINDOW, ctx.N, details=detail)
    return CheckReport("hyperformal", FAILS, ctx.N,
                       witness={"minimal_generators": len(gens),
                                "height": ideal.height()},
                       details=detail)


# ---------------------------------------------------------------------------
# formal-core certificates


class FormalCoreCertificate:
    """A claimed witness that the action has formal core w.r.t. A.

    generators: [(name, degree)] for the adjoined odd generators alpha_k;
    d_values[k]: Element of the model, a polynomial in the base generators;
    psi_images[k]: Element of the model, the image of alpha_k;
    subalgebra: list of cocycle Elements of the model representing A.
    """

    def __init__(self, generators, d_values, psi_images, subalgebra):
        self.generators = list(generators)
        self.d_values = list(d_values)
        self.psi_images = list(psi_images)
        self.subalgebra = list(subalgebra)


def verify_formal_core_certificate(model, cert: FormalCoreCertificate,
                                   N: Optional[int] = None) -> CheckReport:
    """Check the three clauses of a formal-core certificate, in order:
    (1) the assignment is a chain map of R-algebras, (2) it realizes the
    inclusion of A on cohomology, (3) it stays injective on cohomology
    after dividing out the base."""
    ctx = _as_context(model, N)
    alg = ctx.alg
    # clause 1: degrees, d-values in R, chain condition
    for (name, deg), dval, img in zip(cert.generators, cert.d_values,
                                      cert.psi_images, strict=True):
        if dval and dval.degree() != deg + 1:
            return CheckReport("formal-core-certificate", FAILS, ctx.N,
                               witness={"clause": 1, "generator": name,
                                        "reason": "degree mismatch in d-value"})
        if any(i >= alg.base_count for m in dval.terms for i, _ in m):
            return CheckReport("formal-core-certificate", FAILS, ctx.N,
                               witness={"clause": 1, "generator": name,
                                        "reason": "d-value not in the base ring"})
        if img.degree() not in (None, deg) and img:
            if img.degree() != deg:
                return CheckReport("formal-core-certificate", FAILS, ctx.N,
                                   witness={"clause": 1, "generator": name,
                                            "reason": "image degree mismatch"})
        if alg.d(img) != dval:
            return CheckReport("formal-core-certificate", FAILS, ctx.N,
                               witness={"clause": 1, "generator": name,
                                        "reason": "psi does not commute with d"})
    # build C = R (x) Lambda(alpha) and the morphism psi
    cgens = [(g.name, g.degree) for g in alg.base_generators]
    cgens += [(name, deg) for name, deg in cert.generators]
    cdiff = {}
    cd = CDGA(cgens, alg.base_count)
    for (name, deg), dval in zip(cert.generators, cert.d_values):
        cdiff[cd.by_name[name].index] = Element(cd, dval.terms)
    cd._diff = cdiff
    cd.validate(ctx.N)

    def psi(elem: Element) -> Element:
        out = alg.zero()
        for mono, coeff in elem.terms.items():
            term = alg.one().scale(coeff)
            for i, e in mono:
                g = cd.generators[i]
                if i < cd.base_count:
                    term = term * Element(alg, {((alg.by_name[g.name].index, e),): ONE})
                else:
                    k = i - cd.base_count
                    for _ in range(e):
                        term = term * cert.psi_images[k]
            out = out + term
        return out

    c_cpx = CDGAComplex(cd)
    c_h = Homology(c_cpx)
    a_by_degree = {}
    for a in cert.subalgebra:
        if alg.d(a):
            return CheckReport("formal-core-certificate", FAILS, ctx.N,
                               witness={"clause": 2,
                                        "reason": f"subalgebra element {a!r} is not a cocycle"})
        deg = a.degree()
        vec = ctx.view.complex.vector_of(a) if a else {}
        a_by_degree.setdefault(deg, []).append(ctx.H.class_coords(vec, deg))
    for n in range(ctx.N + 1):
        hd = c_h.dim(n)
        amb = ctx.H.dim(n)
        mat = SparseMatrix(amb, hd)
        for k in range(hd):
            rep = c_cpx.element_of(n, c_h.rep_vector(n, k))
            img = psi(rep)
            vec = ctx.view.complex.vector_of(img) if img else {}
            for i, c in ctx.H.class_coords(vec, n).items():
                mat[i, k] = c
        from .linalg import image as _image, kernel as _kernel
        if _kernel(mat).dim:
            return CheckReport("formal-core-certificate", FAILS, ctx.N,
                               witness={"clause": 2, "degree": n,
                                        "reason": "psi not injective on cohomology"})
        img_span = _image(mat)
        a_span = Subspace(amb, a_by_degree.get(n, []))
        if n == 0:
            # A always contains the unit (image of R^0)
            a_span = a_span.sum(Subspace(amb, [ctx.H.class_coords(
                ctx.view.complex.vector_of(alg.one()), 0)]))
        if not (img_span.contains_subspace(a_span) and a_span.contains_subspace(img_span)):
            return CheckReport("formal-core-certificate", FAILS, ctx.N,
                               witness={"clause": 2, "degree": n,
                                        "reason": "image does not realize the subalgebra",
                                        "image_dim": img_span.dim,
                                        "subalgebra_dim": a_span.dim})
    # clause 3: divide out the base and test cohomological injectivity
    cbar = CDGA([(name, deg) for name, deg in cert.generators], 0)
    fib = ctx.fiber

    def psi_bar(elem: Element) -> Element:
        out = fib.zero()
        for mono, coeff in elem.terms.items():
            term = fib.one().scale(coeff)
            for i, e in mono:
                k = i
                img = alg.project_to_fiber(cert.psi_images[k])
                for _ in range(e):
                    term = term * img
            out = out + term
        return out

    cbar_cpx = CDGAComplex(cbar)
    cbar_h = Homology(cbar_cpx)
    for n in range(ctx.N + 1):
        hd = cbar_h.dim(n)
        if hd == 0:
            continue
        mat = SparseMatrix(ctx.fiber_H.dim(n), hd)
        for k in range(hd):
            rep = cbar_cpx.element_of(n, cbar_h.rep_vector(n, k))
            img = psi_bar(rep)
            vec = ctx.fiber_cpx.vector_of(img) if img else {}
            for i, c in ctx.fiber_H.class_coords(vec, n).items():
                mat[i, k] = c
        from .linalg import kernel as _kernel
        ker = _kernel(mat)
        if ker.dim:
            combo = ker.basis[0]
            vec = {}
            for k, c in combo.items():
                vec_axpy(vec, c, cbar_h.rep_vector(n, k))
            elem = cbar_cpx.element_of(n, vec)
            return CheckReport("formal-core-certificate", FAILS, ctx.N,
                               witness={"clause": 3, "degree": n,
                                        "element": repr(elem),
                                        "reason": "reduced morphism kills a class"})
    return CheckReport("formal-core-certificate", HOLDS_WINDOW, ctx.N,
                       details={"clauses": [1, 2, 3]})


# ---------------------------------------------------------------------------
# toral rank report and shortcuts


def trc_report(model, N: Optional[int] = None) -> dict:
    """Betti total vs the 2^c bound, with the equality-case diagnosis."""
    ctx = _as_context(model, N)
    ideal = ctx.kernel_ideal()
    c = ideal.height() if ideal.generators else 0
    res = ctx.resolution()
    B = res.total_rank()
    fiber_dims = {n: ctx.fiber_H.dim(n) for n in range(ctx.N + 1)
                  if ctx.fiber_H.dim(n)}
    dim_h = sum(fiber_dims.values())
    bound = 2 ** c
    report = {
        "window": ctx.N,
        "codimension": c,
        "annihilator_kernel": ideal.format(),
        "betti_total": B,
        "fiber_total_dim": dim_h,
        "fiber_dims": {str(k): v for k, v in fiber_dims.items()},
        "bound": bound,
        "dim_h_le_betti": dim_h <= B,
        "betti_ge_bound": B >= bound,
    }
    if B < bound:
        report["warning"] = ("LOWER BOUND VIOLATED: the Betti total fell "
                             "below 2^codimension; widen the window and "
                             "re-run - a genuine violation would contradict "
                             "the rank bound for resolutions")
    if dim_h == bound:
        almost = check_almost_mod_formal(ctx)
        report["equality_case"] = {"almost_mod_formal": almost.verdict}
        if almost.ok:
            gens = ideal.generators
            regular = (len(gens) == c
                       and is_regular_sequence(ctx.ring, gens))
            cyclic = (len(res.steps[0]) == 1
                      and res.steps[0][0][1] == 0)
            if regular and cyclic:
                quotient_ok = _quotient_matches(ctx, ideal)
                report["equality_case"]["h_g_is_regular_quotient"] = quotient_ok
                if quotient_ok:
                    report["equality_case"]["conclusion"] = (
                        f"fiber rationally a product of {c} odd spheres")
            else:
                report["equality_case"]["h_g_is_regular_quotient"] = False
    return report


def _quotient_matches(ctx: ModelContext, ideal: GradedIdeal) -> bool:
    """Degreewise dimension check H_G = R/(kernel ideal) within the window."""
    from .dgmod import PresentedModule
    rel = [{(0, exp): c for exp, c in g.items()} for g in ideal.generators]
    quot = PresentedModule(ctx.ring, [0], rel, ctx.N)
    return all(quot.dim(n) == ctx.H.dim(n) for n in range(ctx.N + 1))


def cohomogeneity_shortcut(model, N: Optional[int] = None,
                           almost_free: bool = False) -> CheckReport:
    """Degree-based sufficient condition for module formality.

    Requires the user's assertion that the action is almost free; the formal
    cohomogeneity is then the top nonzero degree of H_G within the window.
    """
    ctx = _as_context(model, N)
    if not almost_free:
        return CheckReport("cohomogeneity-shortcut", INCONCLUSIVE, ctx.N,
                           details={"reason": "almost-free assertion missing"})
    top = 0
    for n in range(ctx.N + 1):
        if ctx.H.dim(n):
            top = n
    c = top
    details = {"formal_cohomogeneity": c}
    if c <= 3:
        details["case"] = "cohomogeneity at most 3"
        return CheckReport("cohomogeneity-shortcut", HOLDS_WINDOW, ctx.N,
                           details=details)
    if all(d >= 4 for d in ctx.ring.degrees):
        fiber_min = min((g.degree for g in ctx.fiber.generators), default=4)
        k = min(3, fiber_min - 1)
        if k >= 0 and c <= 7 + k:
            details["case"] = f"base degrees >= 4, fiber {k}-connected, c <= {7 + k}"
            return CheckReport("cohomogeneity-shortcut", HOLDS_WINDOW, ctx.N,
                               details=details)
    details["reason"] = "outside the degree hypotheses"
    return CheckReport("cohomogeneity-shortcut", INCONCLUSIVE, ctx.N,
                       details=details)
