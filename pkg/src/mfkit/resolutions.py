"""Finitely presented graded modules over the hypersurface ring A = R/(f):
minimal free resolutions, Hilbert functions, truncation, subquotient and
Hom-module presentations.

A Presentation is a cokernel description coker(relations: ⊕A(-s_k) → ⊕A(-t_i));
resolutions are built by iterated kernel computation plus minimal-generator
selection, so minimality holds entrywise by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import ValidationError
from .groebner import (
    ColumnSpan,
    GroebnerBasis,
    _entrywise_nf,
    _f_unit_vectors,
    columns_as_vectors,
    groebner_basis,
    kernel_of_map,
    mingens,
    vec_degree,
    vectors_as_columns,
)
from .poly import GradedMatrix, Poly, PolyRing, assert_graded


@dataclass
class Presentation:
    """Graded A-module given as coker(relations) with A = R/(f)."""

    ring: PolyRing
    f: Poly
    ambient: list[int]
    relations: GradedMatrix
    _hf_gb: GroebnerBasis | None = dc_field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.ambient = list(self.ambient)
        if self.relations.target_twists != self.ambient:
            raise ValidationError("relation matrix target twists must equal the ambient twists")
        assert_graded(self.relations, "relation matrix")

    @classmethod
    def free(cls, ring: PolyRing, f: Poly, twists) -> "Presentation":
        return cls(ring, f, list(twists), GradedMatrix.zero(ring, list(twists), []))

    def copy(self) -> "Presentation":
        return Presentation(self.ring, self.f, list(self.ambient), self.relations)


def minimize_presentation(P: Presentation) -> Presentation:
    """Equivalent presentation with no unit entries and minimal relations."""
    ring, f = P.ring, P.f
    fld = ring.field
    gb_f = groebner_basis([f], ring=ring)
    ambient = list(P.ambient)
    cols = [_entrywise_nf(v, gb_f) for v in columns_as_vectors(P.relations)]
    cols = [c for c in cols if c]
    rel = vectors_as_columns(ring, ambient, cols)

    while True:
        pivot = None
        for i in range(rel.rows):
            for j in range(rel.cols):
                e = rel.entries[i][j]
                if not e.is_zero() and rel.source_twists[j] == rel.target_twists[i] and e.is_constant():
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        u = rel.entries[i][j].constant_value()
        # clear the pivot row by column operations, then drop generator i
        # and the relation j that expressed it
        for k in range(rel.cols):
            if k == j or rel.entries[i][k].is_zero():
                continue
            c = fld.div(rel.entries[i][k].constant_value(), u) if rel.entries[i][k].is_constant() else None
            coefpoly = rel.entries[i][k]
            factor = coefpoly.scale(fld.inv(u)) if c is None else ring.const(c)
            for m in range(rel.rows):
                rel.entries[m][k] = rel.entries[m][k] - factor * rel.entries[m][j]
        rel = rel.delete(i, j)
        ambient = rel.target_twists

    cols = [_entrywise_nf(v, gb_f) for v in columns_as_vectors(rel)]
    cols = [c for c in cols if c]
    cols = mingens(cols, ambient, ring, over="A", f=f)
    return Presentation(ring, f, ambient, vectors_as_columns(ring, ambient, cols))


@dataclass
class Resolution:
    """Chain F_L → ... → F_1 → F_0 of graded free A-modules with d∘d = 0."""

    ring: PolyRing
    f: Poly
    twists: list[list[int]]  # F_0 .. F_L
    diffs: list[GradedMatrix]  # d^1 .. d^L, d^k: F_k → F_{k-1}
    minimal: bool = True

    @property
    def length(self) -> int:
        return len(self.diffs)

    def rank(self, k: int) -> int:
        return len(self.twists[k])


def minimal_resolution(P: Presentation, length: int) -> Resolution:
    """Minimal graded free resolution of coker(P) to the requested length."""
    if length < 1:
        raise ValidationError("resolution length must be >= 1")
    ring, f = P.ring, P.f
    P0 = minimize_presentation(P)
    twists = [list(P0.ambient)]
    diffs: list[GradedMatrix] = []
    current = P0.relations
    for _ in range(length):
        diffs.append(current)
        twists.append(list(current.source_twists))
        if len(diffs) == length:
            break
        if current.cols == 0:
            current = GradedMatrix.zero(ring, [], [])
            continue
        ker = kernel_of_map(current, over="A", f=f)
        kept = mingens(columns_as_vectors(ker), ker.target_twists, ring, over="A", f=f)
        current = vectors_as_columns(ring, current.source_twists, kept)
    res = Resolution(ring, f, twists, diffs)
    _assert_minimal(res)
    return res


def _assert_minimal(res: Resolution) -> None:
    for k, d in enumerate(res.diffs, start=1):
        for i in range(d.rows):
            for j in range(d.cols):
                e = d.entries[i][j]
                if not e.is_zero() and d.source_twists[j] == d.target_twists[i]:
                    raise ValidationError(
                        f"resolution not minimal: unit entry at d^{k}[{i}][{j}]"
                    )


def _module_gb(P: Presentation) -> GroebnerBasis:
    if P._hf_gb is None:
        P._hf_gb = groebner_basis(P.relations, over="A", f=P.f)
    return P._hf_gb


def hilbert_function(P: Presentation, i: int) -> int:
    """dim_K of the degree-i piece of coker(P)."""
    gb = _module_gb(P)
    lead_by_pos: dict[int, list] = {}
    for (pos, exp), _c in gb.lts:
        lead_by_pos.setdefault(pos, []).append(exp)
    total = 0
    for j, t in enumerate(P.ambient):
        d = i - t
        if d < 0:
            continue
        leads = lead_by_pos.get(j, [])
        for exp in P.ring.monomials_of_degree(d):
            if not any(all(a >= b for a, b in zip(exp, le)) for le in leads):
                total += 1
    return total


def free_hilbert_function(ring: PolyRing, f: Poly, twists, i: int) -> int:
    """dim_K of the degree-i piece of the free module ⊕A(-t_j)."""
    return hilbert_function(Presentation.free(ring, f, twists), i)


def present_subquotient(
    ring: PolyRing, f: Poly, twists, u_vecs, v_vecs
) -> Presentation:
    """Presentation of (⟨U⟩ + ⟨V⟩)/⟨V⟩ inside ⊕A(-t_i), generators the U-images."""
    n = len(u_vecs)
    cols = list(u_vecs) + list(v_vecs) + _f_unit_vectors(f, twists)
    span = ColumnSpan(ring, list(twists), cols)
    rels = [{t: c for t, c in v.items() if t[0] < n} for v in span.syzygies()]
    rels = [r for r in rels if r]
    u_twists = []
    for u in u_vecs:
        d = vec_degree(u, twists)
        u_twists.append(d if d is not None else 0)
    rel_matrix = vectors_as_columns(ring, u_twists, rels)
    return minimize_presentation(Presentation(ring, f, u_twists, rel_matrix))


def truncate_geq(P: Presentation, i: int) -> Presentation:
    """Presentation of the truncation tr_{≥i}(coker P)."""
    ring = P.ring
    one = ring.field.one
    u_vecs = []
    for j, t in enumerate(P.ambient):
        if t >= i:
            u_vecs.append({(j, (0,) * ring.nvars): one})
        else:
            for exp in ring.monomials_of_degree(i - t):
                u_vecs.append({(j, exp): one})
    return present_subquotient(ring, P.f, P.ambient, u_vecs, columns_as_vectors(P.relations))


def hom_presentation(P: Presentation, Q: Presentation) -> Presentation:
    """Presentation of the graded Hom-module Hom_A(coker P, coker Q).

    A homomorphism is a g0×f0 matrix (column j lands in coker Q) killing the
    relations of P modulo those of Q; coordinates are flattened column-major
    with ambient twist G0_i - F0_j, so generator degrees may be negative.
    """
    if P.ring != Q.ring or P.f != Q.f:
        raise ValidationError("Hom needs modules over the same hypersurface ring")
    ring, f = P.ring, P.f
    F0, G0 = P.ambient, Q.ambient
    f0, g0 = len(F0), len(G0)
    f1 = P.relations.cols
    t1 = P.relations.source_twists
    hom_twists = [G0[i] - F0[j] for j in range(f0) for i in range(g0)]

    if f1 == 0:
        w_gens = [{(k, (0,) * ring.nvars): ring.field.one} for k in range(f0 * g0)]
    else:
        tgt_twists = [G0[i] - t1[c] for c in range(f1) for i in range(g0)]
        phi_cols = []
        for j in range(f0):
            for i in range(g0):
                v = {}
                for c in range(f1):
                    for exp, coef in P.relations.entries[j][c].terms.items():
                        v[(c * g0 + i, exp)] = coef
                phi_cols.append(v)
        allowed = []
        for c in range(f1):
            for q in columns_as_vectors(Q.relations):
                allowed.append({(c * g0 + pos, exp): coef for (pos, exp), coef in q.items()})
        cols = phi_cols + allowed + _f_unit_vectors(f, tgt_twists)
        span = ColumnSpan(ring, tgt_twists, cols)
        w_gens = [
            {t: c for t, c in v.items() if t[0] < f0 * g0} for v in span.syzygies()
        ]
        w_gens = [w for w in w_gens if w]

    trivial = []
    for j in range(f0):
        for q in columns_as_vectors(Q.relations):
            trivial.append({(j * g0 + pos, exp): coef for (pos, exp), coef in q.items()})
    return present_subquotient(ring, f, hom_twists, w_gens, trivial)
