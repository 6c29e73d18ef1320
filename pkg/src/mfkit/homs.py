"""Morphisms of graded matrix factorisations, stable Hom spaces, mapping
cones, stable-isomorphism testing, and the twist functor along a fixed
factorisation.

A strict morphism (f0, f1): M → N satisfies f1·alpha_M = alpha_N·f0 and
f0·beta_M = beta_N·f1 on the nose; it is null-homotopic when it is
(h, s)-split as f0 = h·alpha_M + beta_N·s, f1 = alpha_N·h + s·beta_M.
Stable Hom is the quotient, computed by exact linear algebra on the
monomial coefficients of the matrix entries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce as _fold

from .errors import InputError, ValidationError
from .linalg import RowSpace, nullspace
from .mf import MatrixFactorization, assert_valid_mf, direct_sum_mf, reduce_mf, shift_mf
from .poly import GradedMatrix, Poly, validate_graded_matrix


@dataclass
class MFMorphism:
    source: MatrixFactorization
    target: MatrixFactorization
    f0: GradedMatrix
    f1: GradedMatrix

    def __eq__(self, other) -> bool:
        if not isinstance(other, MFMorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.f0 == other.f0
            and self.f1 == other.f1
        )


def verify_morphism(phi: MFMorphism) -> list[str]:
    """Report every strictness/grading violation; empty means phi is strict."""
    M, N = phi.source, phi.target
    problems: list[str] = []
    if M.ring != N.ring or M.f != N.f:
        return ["source and target do not share a ring and potential"]
    if phi.f0.source_twists != M.p0 or phi.f0.target_twists != N.p0:
        problems.append("f0 twists do not match P0(source) → P0(target)")
    if phi.f1.source_twists != M.p1 or phi.f1.target_twists != N.p1:
        problems.append("f1 twists do not match P1(source) → P1(target)")
    for i, j, msg in validate_graded_matrix(phi.f0):
        problems.append(f"f0[{i}][{j}]: {msg}")
    for i, j, msg in validate_graded_matrix(phi.f1):
        problems.append(f"f1[{i}][{j}]: {msg}")
    if problems:
        return problems
    lhs = phi.f1 * M.alpha
    rhs = N.alpha * phi.f0
    if not lhs.same_entries(rhs):
        problems.append("f1·alpha(source) != alpha(target)·f0")
    lhs = phi.f0 * M.beta
    rhs = N.beta * phi.f1
    if not lhs.same_entries(rhs):
        problems.append("f0·beta(source) != beta(target)·f1")
    return problems


def assert_strict(phi: MFMorphism, what: str = "morphism") -> None:
    problems = verify_morphism(phi)
    if problems:
        raise ValidationError(f"invalid {what}: " + "; ".join(problems))


def identity_morphism(M: MatrixFactorization) -> MFMorphism:
    ring = M.ring
    return MFMorphism(
        M, M, GradedMatrix.identity(ring, M.p0), GradedMatrix.identity(ring, M.p1)
    )


def zero_morphism(M: MatrixFactorization, N: MatrixFactorization) -> MFMorphism:
    ring = M.ring
    return MFMorphism(
        M, N, GradedMatrix.zero(ring, N.p0, M.p0), GradedMatrix.zero(ring, N.p1, M.p1)
    )


def compose_morphisms(psi: MFMorphism, phi: MFMorphism) -> MFMorphism:
    """psi∘phi for phi: M → N, psi: N → L."""
    if phi.target != psi.source:
        raise ValidationError("composition needs matching middle factorisation")
    return MFMorphism(phi.source, psi.target, psi.f0 * phi.f0, psi.f1 * phi.f1)


def scale_morphism(phi: MFMorphism, c) -> MFMorphism:
    c = phi.source.ring.field.of(c)
    f0 = GradedMatrix(
        phi.f0.ring,
        list(phi.f0.target_twists),
        list(phi.f0.source_twists),
        [[e.scale(c) for e in row] for row in phi.f0.entries],
    )
    f1 = GradedMatrix(
        phi.f1.ring,
        list(phi.f1.target_twists),
        list(phi.f1.source_twists),
        [[e.scale(c) for e in row] for row in phi.f1.entries],
    )
    return MFMorphism(phi.source, phi.target, f0, f1)


def add_morphisms(phi: MFMorphism, psi: MFMorphism) -> MFMorphism:
    if phi.source != psi.source or phi.target != psi.target:
        raise ValidationError("morphism sum needs equal sources and targets")
    return MFMorphism(phi.source, phi.target, phi.f0 + psi.f0, phi.f1 + psi.f1)


# --- stable Hom via coefficient linear algebra ------------------------------


def _matrix_slots(tag: str, ring, tgt: list[int], src: list[int], extra: int = 0):
    """Unknown coefficient slots for a graded matrix of maps, entry degree
    src[j] - tgt[i] - extra; entries of negative degree carry no slots."""
    slots = []
    for i, t in enumerate(tgt):
        for j, s in enumerate(src):
            d = s - t - extra
            if d < 0:
                continue
            for exp in ring.monomials_of_degree(d):
                slots.append((tag, i, j, exp))
    return slots


def _mul_into(row: dict, key_base, poly: Poly, exp, coef, index: dict) -> None:
    """Accumulate coef·x^exp·poly into the row at coordinates of key_base."""
    fld = poly.ring.field
    for pexp, pcoef in poly.terms.items():
        mono = tuple(a + b for a, b in zip(exp, pexp))
        col = index[key_base + (mono,)]
        c = fld.mul(coef, pcoef)
        prev = row.get(col, fld.zero)
        tot = fld.add(prev, c)
        if tot == fld.zero:
            row.pop(col, None)
        else:
            row[col] = tot


class HomProblem:
    """Coefficient coordinates for morphisms M → N and their homotopies."""

    def __init__(self, M: MatrixFactorization, N: MatrixFactorization):
        if M.ring != N.ring or M.f != N.f:
            raise ValidationError("Hom needs factorisations of the same potential")
        self.M, self.N, self.ring = M, N, M.ring
        self.slots = _matrix_slots("f0", self.ring, N.p0, M.p0) + _matrix_slots(
            "f1", self.ring, N.p1, M.p1
        )
        self.index = {k: c for c, k in enumerate(self.slots)}

    def strict_rows(self) -> list[dict]:
        M, N, ring = self.M, self.N, self.ring
        fld = ring.field
        one = fld.one
        rows: dict = {}

        def eq_row(tag, i, j, mono):
            return rows.setdefault((tag, i, j, mono), {})

        # f1·alpha_M - alpha_N·f0 = 0, an identity of maps P0(M) → P1(N)
        for i in range(len(N.p1)):
            for j in range(len(M.p0)):
                for k in range(len(M.p1)):
                    a = M.alpha.entries[k][j]
                    if a.is_zero():
                        continue
                    dh = M.p1[k] - N.p1[i]
                    if dh < 0:
                        continue
                    for exp in ring.monomials_of_degree(dh):
                        col = self.index[("f1", i, k, exp)]
                        for aexp, acoef in a.terms.items():
                            mono = tuple(x + y for x, y in zip(exp, aexp))
                            r = eq_row("a", i, j, mono)
                            r[col] = fld.add(r.get(col, fld.zero), acoef)
                for k in range(len(N.p0)):
                    a = N.alpha.entries[i][k]
                    if a.is_zero():
                        continue
                    dh = M.p0[j] - N.p0[k]
                    if dh < 0:
                        continue
                    for exp in ring.monomials_of_degree(dh):
                        col = self.index[("f0", k, j, exp)]
                        for aexp, acoef in a.terms.items():
                            mono = tuple(x + y for x, y in zip(exp, aexp))
                            r = eq_row("a", i, j, mono)
                            r[col] = fld.sub(r.get(col, fld.zero), acoef)
        # f0·beta_M - beta_N·f1 = 0, an identity of maps P1(M) → P0(N)(3)
        for i in range(len(N.p0)):
            for j in range(len(M.p1)):
                for k in range(len(M.p0)):
                    b = M.beta.entries[k][j]
                    if b.is_zero():
                        continue
                    dh = M.p0[k] - N.p0[i]
                    if dh < 0:
                        continue
                    for exp in ring.monomials_of_degree(dh):
                        col = self.index[("f0", i, k, exp)]
                        for bexp, bcoef in b.terms.items():
                            mono = tuple(x + y for x, y in zip(exp, bexp))
                            r = eq_row("b", i, j, mono)
                            r[col] = fld.add(r.get(col, fld.zero), bcoef)
                for k in range(len(N.p1)):
                    b = N.beta.entries[i][k]
                    if b.is_zero():
                        continue
                    dh = M.p1[j] - N.p1[k]
                    if dh < 0:
                        continue
                    for exp in ring.monomials_of_degree(dh):
                        col = self.index[("f1", k, j, exp)]
                        for bexp, bcoef in b.terms.items():
                            mono = tuple(x + y for x, y in zip(exp, bexp))
                            r = eq_row("b", i, j, mono)
                            r[col] = fld.sub(r.get(col, fld.zero), bcoef)
        return [r for r in rows.values() if r]

    def boundary_vectors(self) -> list[dict]:
        """Images of the homotopy parameters (h, s) in morphism coordinates."""
        M, N, ring = self.M, self.N, self.ring
        fld = ring.field
        out = []
        # h: P1(M) → P0(N), entry degree M.p1[j] - N.p0[i]
        for i in range(len(N.p0)):
            for j in range(len(M.p1)):
                d = M.p1[j] - N.p0[i]
                if d < 0:
                    continue
                for exp in ring.monomials_of_degree(d):
                    vec: dict = {}
                    for jp in range(len(M.p0)):
                        a = M.alpha.entries[j][jp]
                        if not a.is_zero():
                            _mul_into(vec, ("f0", i, jp), a, exp, fld.one, self.index)
                    for ip in range(len(N.p1)):
                        a = N.alpha.entries[ip][i]
                        if not a.is_zero():
                            _mul_into(vec, ("f1", ip, j), a, exp, fld.one, self.index)
                    if vec:
                        out.append(vec)
        # s: P0(M) → P1(N)(-3)-style, entry degree M.p0[j] - N.p1[i] - 3
        for i in range(len(N.p1)):
            for j in range(len(M.p0)):
                d = M.p0[j] - N.p1[i] - 3
                if d < 0:
                    continue
                for exp in ring.monomials_of_degree(d):
                    vec = {}
                    for ip in range(len(N.p0)):
                        b = N.beta.entries[ip][i]
                        if not b.is_zero():
                            _mul_into(vec, ("f0", ip, j), b, exp, fld.one, self.index)
                    for jp in range(len(M.p1)):
                        b = M.beta.entries[j][jp]
                        if not b.is_zero():
                            _mul_into(vec, ("f1", i, jp), b, exp, fld.one, self.index)
                    if vec:
                        out.append(vec)
        return out

    def morphism_from_vector(self, vec: dict) -> MFMorphism:
        M, N, ring = self.M, self.N, self.ring
        f0 = [[dict() for _ in M.p0] for _ in N.p0]
        f1 = [[dict() for _ in M.p1] for _ in N.p1]
        for col, coef in vec.items():
            tag, i, j, exp = self.slots[col]
            (f0 if tag == "f0" else f1)[i][j][exp] = coef
        mat0 = GradedMatrix(
            ring, list(N.p0), list(M.p0), [[ring.from_terms(e) for e in row] for row in f0]
        )
        mat1 = GradedMatrix(
            ring, list(N.p1), list(M.p1), [[ring.from_terms(e) for e in row] for row in f1]
        )
        return MFMorphism(M, N, mat0, mat1)

    def vector_from_morphism(self, phi: MFMorphism) -> dict:
        vec = {}
        fld = self.ring.field
        for tag, mat in (("f0", phi.f0), ("f1", phi.f1)):
            for i, row in enumerate(mat.entries):
                for j, e in enumerate(row):
                    for exp, coef in e.terms.items():
                        key = (tag, i, j, exp)
                        if key not in self.index:
                            raise ValidationError("morphism does not fit the Hom coordinate grid")
                        if coef != fld.zero:
                            vec[self.index[key]] = coef
        return vec


@dataclass
class StableHom:
    source: MatrixFactorization
    target: MatrixFactorization
    strict_dim: int
    boundary_rank: int
    strict_basis: list[MFMorphism]
    basis: list[MFMorphism]  # strict representatives of a stable basis
    problem: HomProblem

    @property
    def stable_dim(self) -> int:
        return self.strict_dim - self.boundary_rank


def hom_space(M: MatrixFactorization, N: MatrixFactorization) -> StableHom:
    """Strict morphism space M → N with its null-homotopic subspace split off."""
    prob = HomProblem(M, N)
    fld = prob.ring.field
    rows = prob.strict_rows()
    sols = nullspace(rows, len(prob.slots), fld)
    span = RowSpace(fld)
    for b in prob.boundary_vectors():
        span.add(b)
    boundary_rank = span.rank
    reps = []
    strict_basis = []
    for v in sols:
        phi = prob.morphism_from_vector(v)
        strict_basis.append(phi)
        if span.add(v) is not None:
            reps.append(phi)
    return StableHom(M, N, len(sols), boundary_rank, strict_basis, reps, prob)


def stable_hom_dim(M: MatrixFactorization, N: MatrixFactorization, shift: int = 0) -> int:
    return hom_space(shift_mf(M, shift), N).stable_dim


def is_null_homotopic(phi: MFMorphism) -> bool:
    assert_strict(phi)
    prob = HomProblem(phi.source, phi.target)
    vec = prob.vector_from_morphism(phi)
    span = RowSpace(prob.ring.field)
    for b in prob.boundary_vectors():
        span.add(b)
    return not span.reduce(vec)


# --- mapping cone ------------------------------------------------------------


def cone_mf(phi: MFMorphism) -> MatrixFactorization:
    """Mapping cone of a strict morphism phi: M → N.

    C0 = N0 ⊕ M1 and C1 = N1 ⊕ M0(3), with maps
    alpha_C = [[alpha_N, f1], [0, -beta_M]], beta_C = [[beta_N, f0], [0, -alpha_M]].
    """
    assert_strict(phi, "cone input")
    M, N = phi.source, phi.target
    ring = M.ring
    m_p0_tw = [a - 3 for a in M.p0]
    alpha = GradedMatrix.block(
        [
            [N.alpha, phi.f1],
            [GradedMatrix.zero(ring, m_p0_tw, N.p0), -M.beta],
        ]
    )
    beta = GradedMatrix.block(
        [
            [N.beta, phi.f0.retwist(3)],
            [GradedMatrix.zero(ring, [a - 3 for a in M.p1], N.p1), -M.alpha.retwist(3)],
        ]
    )
    C = MatrixFactorization(ring, M.f, alpha, beta)
    assert_valid_mf(C, "mapping cone")
    return C


# --- stable isomorphism ------------------------------------------------------


@dataclass
class IsoResult:
    status: str  # "yes" | "no" | "inconclusive"
    reason: str
    forward: MFMorphism | None = None
    backward: MFMorphism | None = None


def _adjugate_inverse(mat: GradedMatrix) -> GradedMatrix | None:
    """Inverse of a square graded matrix whose determinant is a nonzero
    constant; None when the determinant vanishes or is nonconstant."""
    ring = mat.ring
    n = mat.rows
    if n != mat.cols:
        return None
    det = mat.det()
    if det.is_zero() or not det.is_constant():
        return None
    dinv = ring.field.inv(det.constant_value())
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = mat.delete(i, j) if n > 1 else None
            cof = minor.det() if n > 1 else ring.one()
            if (i + j) % 2 == 1:
                cof = -cof
            row.append(cof.scale(dinv))
        entries.append(row)
    # adjugate is the transpose of the cofactor matrix
    entries = [[entries[j][i] for j in range(n)] for i in range(n)]
    return GradedMatrix(ring, list(mat.source_twists), list(mat.target_twists), entries)


def _try_certificate(phi: MFMorphism) -> IsoResult | None:
    M, N = phi.source, phi.target
    inv0 = _adjugate_inverse(phi.f0)
    inv1 = _adjugate_inverse(phi.f1)
    if inv0 is None or inv1 is None:
        return None
    psi = MFMorphism(N, M, inv0, inv1)
    if verify_morphism(psi):
        return None
    back = compose_morphisms(psi, phi)
    fwd = compose_morphisms(phi, psi)
    ring = M.ring
    if not (
        back.f0.same_entries(GradedMatrix.identity(ring, M.p0))
        and back.f1.same_entries(GradedMatrix.identity(ring, M.p1))
        and fwd.f0.same_entries(GradedMatrix.identity(ring, N.p0))
        and fwd.f1.same_entries(GradedMatrix.identity(ring, N.p1))
    ):
        return None
    return IsoResult("yes", "strict isomorphism of reduced factorisations found", phi, psi)


def is_stably_isomorphic(
    M: MatrixFactorization,
    N: MatrixFactorization,
    *,
    seed: int = 0,
    samples: int = 1000,
) -> IsoResult:
    """Decide stable isomorphism where possible.

    Reduces both sides, refutes by invariants (rank, twist multisets, stable
    Hom dimensions), and otherwise searches the strict morphism space for an
    invertible element: basis elements, a small coefficient grid when the
    space is at most 2-dimensional, then seeded random combinations. A "yes"
    always carries a verified two-sided certificate on the reduced models.
    """
    if M.ring != N.ring or M.f != N.f:
        return IsoResult("no", "different rings or potentials")
    Mr, Nr = reduce_mf(M), reduce_mf(N)
    if Mr.rank == 0 and Nr.rank == 0:
        phi = zero_morphism(Mr, Nr)
        return IsoResult("yes", "both reduce to the zero factorisation", phi, zero_morphism(Nr, Mr))
    if Mr.rank != Nr.rank:
        return IsoResult("no", f"reduced ranks differ: {Mr.rank} vs {Nr.rank}")
    if sorted(Mr.p0) != sorted(Nr.p0) or sorted(Mr.p1) != sorted(Nr.p1):
        return IsoResult("no", "reduced twist multisets differ")
    fwd = hom_space(Mr, Nr)
    if fwd.stable_dim == 0:
        return IsoResult("no", "no nonzero stable morphism from left to right")
    bwd_dim = hom_space(Nr, Mr).stable_dim
    if bwd_dim == 0:
        return IsoResult("no", "no nonzero stable morphism from right to left")

    fld = M.ring.field
    candidates = list(fwd.strict_basis)
    D = fwd.strict_dim
    if 1 <= D <= 2:
        small = [fld.of(v) for v in (-2, -1, 0, 1, 2)]
        combos = []
        if D == 1:
            combos = [(c,) for c in small if c != fld.zero]
        else:
            combos = [
                (c1, c2)
                for c1 in small
                for c2 in small
                if not (c1 == fld.zero and c2 == fld.zero)
            ]
        for coefs in combos:
            phi = scale_morphism(fwd.strict_basis[0], coefs[0])
            for c, base in zip(coefs[1:], fwd.strict_basis[1:]):
                phi = add_morphisms(phi, scale_morphism(base, c))
            candidates.append(phi)
    rng = random.Random(seed)
    for _ in range(samples):
        phi = None
        for base in fwd.strict_basis:
            c = fld.sample(rng)
            piece = scale_morphism(base, c)
            phi = piece if phi is None else add_morphisms(phi, piece)
        if phi is not None:
            candidates.append(phi)
    for phi in candidates:
        res = _try_certificate(phi)
        if res is not None:
            return res
    return IsoResult(
        "inconclusive",
        "invariants agree but no invertible strict morphism was found within the search budget",
    )


# --- twist functor -----------------------------------------------------------


def _graded_pieces(C: MatrixFactorization, X: MatrixFactorization, contravariant: bool):
    """Stable Hom data Hom(C[i], X) (or Hom(X, C[i])) for i in -3..3."""
    pieces = {}
    for i in range(-3, 4):
        Ci = shift_mf(C, i)
        pieces[i] = hom_space(X, Ci) if contravariant else hom_space(Ci, X)
    return pieces


def _twist_support(pieces) -> list[int]:
    dims = {i: pieces[i].stable_dim for i in pieces}
    if dims[-3] != 0 or dims[3] != 0:
        raise InputError(
            f"twist functor guard failed: nonzero stable Hom at shift ±3 ({dims})"
        )
    support = [i for i in range(-2, 3) if dims[i] > 0]
    if len(support) > 2 or (len(support) == 2 and support[1] - support[0] != 1):
        raise InputError(
            f"twist functor guard failed: stable Hom supported at shifts {support}"
        )
    return support


def twist_functor(C: MatrixFactorization, X: MatrixFactorization) -> MatrixFactorization:
    """T_C(X): cone over the evaluation ⊕_i C[i] ⊗ Hom(C[i], X) → X, reduced."""
    pieces = _graded_pieces(C, X, contravariant=False)
    support = _twist_support(pieces)
    reps: list[MFMorphism] = []
    for i in support:
        reps.extend(pieces[i].basis)
    if not reps:
        # no stable maps out of C: the evaluation source is the zero object
        # and the cone is X itself
        return reduce_mf(X)
    source = reps[0].source
    for r in reps[1:]:
        source = direct_sum_mf(source, r.source)
    f0 = _fold(GradedMatrix.hstack, [r.f0 for r in reps])
    f1 = _fold(GradedMatrix.hstack, [r.f1 for r in reps])
    ev = MFMorphism(source, X, f0, f1)
    return reduce_mf(cone_mf(ev))


def inverse_twist_functor(C: MatrixFactorization, X: MatrixFactorization) -> MatrixFactorization:
    """T_C^{-1}(X): shifted cone over the coevaluation X → ⊕_i C[i]."""
    pieces = _graded_pieces(C, X, contravariant=True)
    support = _twist_support(pieces)
    reps = []
    for i in support:
        reps.extend(pieces[i].basis)
    if not reps:
        # no stable maps into C: the shifted cone over the zero coevaluation
        # is X itself
        return reduce_mf(X)
    target = reps[0].target
    for r in reps[1:]:
        target = direct_sum_mf(target, r.target)
    f0 = GradedMatrix.block([[r.f0] for r in reps])
    f1 = GradedMatrix.block([[r.f1] for r in reps])
    coev = MFMorphism(X, target, f0, f1)
    return reduce_mf(shift_mf(cone_mf(coev), -1))
