"""Graded matrix factorisations of a degree-3 potential f over R = K[X,Y,Z].

A factorisation is a pair alpha: P0 → P1, beta: P1 → P0(3) of graded maps of
free modules with beta∘alpha = f·id and alpha(3)∘beta = f·id.  Twist lists use
the convention that entry a stands for the summand R(-a), and the twist
operation (n) sends a to a - n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, ValidationError
from .groebner import (
    ColumnSpan,
    columns_as_vectors,
    mingens,
    vectors_as_columns,
)
from .poly import GradedMatrix, Poly, PolyRing, exact_divide, validate_graded_matrix
from .resolutions import Presentation, Resolution, hilbert_function, minimal_resolution


@dataclass
class MatrixFactorization:
    ring: PolyRing
    f: Poly
    alpha: GradedMatrix
    beta: GradedMatrix

    @property
    def p0(self) -> list[int]:
        return self.alpha.source_twists

    @property
    def p1(self) -> list[int]:
        return self.alpha.target_twists

    @property
    def rank(self) -> int:
        return len(self.p0)

    @classmethod
    def from_strings(cls, ring: PolyRing, f, p0, p1, alpha_rows, beta_rows) -> "MatrixFactorization":
        fpoly = ring.parse(f) if isinstance(f, str) else f
        p0, p1 = list(p0), list(p1)
        alpha = GradedMatrix.from_strings(ring, p1, p0, alpha_rows)
        beta = GradedMatrix.from_strings(ring, [a - 3 for a in p0], p1, beta_rows)
        return cls(ring, fpoly, alpha, beta)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixFactorization):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.f == other.f
            and self.alpha == other.alpha
            and self.beta == other.beta
        )


def verify_mf(M: MatrixFactorization) -> list[str]:
    """Report every axiom violation; an empty list means M is a factorisation."""
    problems: list[str] = []
    ring = M.ring
    if M.f.is_zero() or not M.f.is_homogeneous() or M.f.degree() != 3:
        problems.append("potential must be nonzero homogeneous of degree 3")
    p0, p1 = M.p0, M.p1
    if len(p0) != len(p1):
        problems.append(f"rank mismatch: |P0| = {len(p0)} but |P1| = {len(p1)}")
    if M.beta.source_twists != p1:
        problems.append("beta source twists do not match P1")
    if M.beta.target_twists != [a - 3 for a in p0]:
        problems.append("beta target twists do not match P0(3)")
    for i, j, msg in validate_graded_matrix(M.alpha):
        problems.append(f"alpha[{i}][{j}]: {msg}")
    for i, j, msg in validate_graded_matrix(M.beta):
        problems.append(f"beta[{i}][{j}]: {msg}")
    if problems:
        return problems
    n = len(p0)
    ba = [
        [
            sum(
                (M.beta.entries[i][m] * M.alpha.entries[m][j] for m in range(n)),
                ring.zero(),
            )
            for j in range(n)
        ]
        for i in range(n)
    ]
    ab = [
        [
            sum(
                (M.alpha.entries[i][m] * M.beta.entries[m][j] for m in range(n)),
                ring.zero(),
            )
            for j in range(n)
        ]
        for i in range(n)
    ]
    for i in range(n):
        for j in range(n):
            want = M.f if i == j else ring.zero()
            if ba[i][j] != want:
                problems.append(f"(beta*alpha)[{i}][{j}] != {'f' if i == j else '0'}")
            if ab[i][j] != want:
                problems.append(f"(alpha*beta)[{i}][{j}] != {'f' if i == j else '0'}")
    return problems


def assert_valid_mf(M: MatrixFactorization, what: str = "matrix factorisation") -> None:
    problems = verify_mf(M)
    if problems:
        raise ValidationError(f"invalid {what}: " + "; ".join(problems))


def trivial_mf(ring: PolyRing, f: Poly) -> MatrixFactorization:
    alpha = GradedMatrix(ring, [0], [0], [[ring.one()]])
    beta = GradedMatrix(ring, [-3], [0], [[f]])
    return MatrixFactorization(ring, f, alpha, beta)


def twist_mf(M: MatrixFactorization, n: int) -> MatrixFactorization:
    """M(n): subtract n from every twist; the matrices are unchanged."""
    return MatrixFactorization(M.ring, M.f, M.alpha.retwist(n), M.beta.retwist(n))


def shift_mf(M: MatrixFactorization, k: int = 1) -> MatrixFactorization:
    """Suspension M[k]; [1] swaps the maps, and [2] equals the twist (3)."""
    out = M
    while k > 0:
        out = MatrixFactorization(out.ring, out.f, out.beta, out.alpha.retwist(3))
        k -= 1
    while k < 0:
        out = MatrixFactorization(out.ring, out.f, out.beta.retwist(-3), out.alpha)
        k += 1
    return out


def transpose_mf(M: MatrixFactorization) -> MatrixFactorization:
    """Duality (alpha, beta) ↦ (alpha^t, beta^t); an exact involution."""
    new_p0 = [6 - b for b in M.p1]
    new_p1 = [6 - a for a in M.p0]
    alpha = M.alpha.transpose_entries(new_p1, new_p0)
    beta = M.beta.transpose_entries([a - 3 for a in new_p0], new_p1)
    return MatrixFactorization(M.ring, M.f, alpha, beta)


def direct_sum_mf(M: MatrixFactorization, N: MatrixFactorization) -> MatrixFactorization:
    if M.ring != N.ring or M.f != N.f:
        raise ValidationError("direct sum needs factorisations of the same potential")
    ring = M.ring
    alpha = GradedMatrix.block(
        [
            [M.alpha, GradedMatrix.zero(ring, M.p1, N.p0)],
            [GradedMatrix.zero(ring, N.p1, M.p0), N.alpha],
        ]
    )
    beta = GradedMatrix.block(
        [
            [M.beta, GradedMatrix.zero(ring, [a - 3 for a in M.p0], N.p1)],
            [GradedMatrix.zero(ring, [a - 3 for a in N.p0], M.p1), N.beta],
        ]
    )
    return MatrixFactorization(ring, M.f, alpha, beta)


def _find_unit(mat: GradedMatrix):
    for i in range(mat.rows):
        for j in range(mat.cols):
            e = mat.entries[i][j]
            if not e.is_zero() and mat.source_twists[j] == mat.target_twists[i]:
                return i, j
    return None


def _split_unit(ring, A: GradedMatrix, B: GradedMatrix, i: int, j: int, f: Poly):
    """Clear row i / column j of A around the unit pivot, mirroring inverse
    operations on B, then drop the split-off trivial summand from both."""
    fld = ring.field
    u = A.entries[i][j].constant_value()
    uinv = fld.inv(u)
    # column operations on A (basis change of the common source of A / target of B)
    for k in range(A.cols):
        if k == j or A.entries[i][k].is_zero():
            continue
        g = A.entries[i][k].scale(uinv)
        for m in range(A.rows):
            A.entries[m][k] = A.entries[m][k] - g * A.entries[m][j]
        for c in range(B.cols):
            B.entries[j][c] = B.entries[j][c] + g * B.entries[k][c]
    # row operations on A (basis change of the target of A / source of B)
    for m in range(A.rows):
        if m == i or A.entries[m][j].is_zero():
            continue
        g = A.entries[m][j].scale(uinv)
        for k in range(A.cols):
            A.entries[m][k] = A.entries[m][k] - g * A.entries[i][k]
        for r in range(B.rows):
            B.entries[r][i] = B.entries[r][i] + g * B.entries[r][m]
    quot = f.scale(uinv) if u != fld.one else f
    for k in range(B.cols):
        want = quot if k == i else ring.zero()
        if B.entries[j][k] != want:
            raise ValidationError("reduction invariant failed: complementary map not split")
    return A.delete(i, j), B.delete(j, i)


def reduce_mf(M: MatrixFactorization) -> MatrixFactorization:
    """Split off trivial summands until neither map has a unit entry.

    Scans alpha first, then beta, row-major, and repeats until clean; the
    result is the reduced representative of the stable isomorphism class.
    """
    ring, f = M.ring, M.f
    alpha = GradedMatrix(ring, list(M.p1), list(M.p0), [row[:] for row in M.alpha.entries])
    beta = GradedMatrix(
        ring, list(M.beta.target_twists), list(M.beta.source_twists), [row[:] for row in M.beta.entries]
    )
    while True:
        hit = _find_unit(alpha)
        if hit is not None:
            i, j = hit
            alpha, beta = _split_unit(ring, alpha, beta, i, j, f)
            continue
        hit = _find_unit(beta)
        if hit is not None:
            i, j = hit
            beta, alpha = _split_unit(ring, beta, alpha, i, j, f)
            continue
        break
    return MatrixFactorization(ring, f, alpha, beta)


def cokernel_module(M: MatrixFactorization) -> Presentation:
    """The graded A-module coker(beta), presented by beta itself."""
    return Presentation(M.ring, M.f, list(M.beta.target_twists), M.beta)


def _constant_matrix(ring: PolyRing, mat: GradedMatrix):
    """Entries as field constants, or None if some entry is not constant."""
    out = []
    for row in mat.entries:
        vals = []
        for e in row:
            if e.is_zero():
                vals.append(ring.field.zero)
            elif e.is_constant():
                vals.append(e.constant_value())
            else:
                return None
        out.append(vals)
    return out


def _invert_field_matrix(fld, rows):
    """Inverse of a square matrix of field scalars, or None if singular."""
    n = len(rows)
    aug = [list(r) + [fld.one if i == k else fld.zero for k in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != fld.zero), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = fld.inv(aug[col][col])
        aug[col] = [fld.mul(inv, x) for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != fld.zero:
                c = aug[r][col]
                aug[r] = [fld.sub(x, fld.mul(c, y)) for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def mf_from_pair(res: Resolution, s: int) -> MatrixFactorization:
    """Factorisation (d^s, d^{s+1}·U^{-1}) from consecutive differentials.

    Requires 1 <= s and s+1 <= length, equal ranks at steps s-1, s, s+1, and
    twists(F_{s+1}) = twists(F_{s-1}) + 3; the composite d^s∘d^{s+1} equals
    f·U for a constant matrix U, which must be invertible.
    """
    ring, f = res.ring, res.f
    if s < 1 or s + 1 > res.length:
        raise InputError(f"periodic pair needs 1 <= s and s+1 <= {res.length}; got s = {s}")
    lo, mid, hi = res.twists[s - 1], res.twists[s], res.twists[s + 1]
    if not (len(lo) == len(mid) == len(hi)) or len(mid) == 0:
        raise InputError(
            f"ranks {len(lo)}, {len(mid)}, {len(hi)} at steps {s - 1}..{s + 1} are not equal and positive"
        )
    if hi != [t + 3 for t in lo]:
        raise InputError(f"twists at step {s + 1} are {hi}, expected {[t + 3 for t in lo]}")
    alpha = res.diffs[s - 1]
    beta0 = res.diffs[s]
    n = len(lo)
    u_entries = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = sum(
                (alpha.entries[i][m] * beta0.entries[m][j] for m in range(n)),
                ring.zero(),
            )
            row.append(ring.zero() if prod.is_zero() else exact_divide(prod, f))
        u_entries.append(row)
    u_const = _constant_matrix(ring, GradedMatrix(ring, lo, lo, u_entries))
    if u_const is None:
        raise InputError("composite d^s∘d^{s+1} is not f times a constant matrix")
    u_inv = _invert_field_matrix(ring.field, u_const)
    if u_inv is None:
        raise InputError("normalisation matrix for d^s∘d^{s+1} is not invertible")
    beta_entries = [
        [
            sum(
                (
                    beta0.entries[i][k].scale(u_inv[k][j])
                    for k in range(n)
                    if u_inv[k][j] != ring.field.zero
                ),
                ring.zero(),
            )
            for j in range(n)
        ]
        for i in range(n)
    ]
    beta = GradedMatrix(ring, [t - 3 for t in mid], list(lo), beta_entries)
    M = MatrixFactorization(ring, f, alpha, beta)
    assert_valid_mf(M, "factorisation from resolution pair")
    return M


def detect_periodicity(res: Resolution):
    """Smallest s with a valid factorisation (d^s, d^{s+1}), or None."""
    for s in range(1, res.length):
        try:
            return s, mf_from_pair(res, s)
        except InputError:
            continue
    return None


def _solve_beta(ring: PolyRing, f: Poly, alpha: GradedMatrix) -> GradedMatrix:
    """The unique beta with alpha·beta = f·id, found by lifting f·e_c."""
    span = ColumnSpan(ring, list(alpha.target_twists), columns_as_vectors(alpha))
    cols = []
    for c, t in enumerate(alpha.target_twists):
        lift = span.lift({(c, exp): coef for exp, coef in f.terms.items()})
        if lift is None:
            raise InputError("potential multiple of a generator is not in the column span")
        cols.append(lift)
    beta = vectors_as_columns(ring, [a - 3 for a in alpha.source_twists], cols, source_twists=list(alpha.target_twists))
    return beta


def extract_mf(P: Presentation, mode: str, s: int | None = None) -> MatrixFactorization:
    """Stabilise a module presentation into a matrix factorisation.

    Modes: "point" (Hilbert function must be constantly 1), "structure-sheaf"
    (recognises the residue field and the irrelevant-ideal module by their
    Hilbert functions), and "raw" (periodic pair at the given step s).
    """
    ring, f = P.ring, P.f
    mode = mode.replace("_", "-")
    if mode == "raw":
        if s is None or s < 1:
            raise InputError("raw extraction needs a step s >= 1")
        res = minimal_resolution(P, s + 1)
        return mf_from_pair(res, s)
    if mode == "point":
        hf = [hilbert_function(P, i) for i in range(7)]
        if any(v != 1 for v in hf):
            raise InputError(
                f"cohomology-not-concentrated: point extraction needs Hilbert function 1 in degrees 0..6, got {hf}"
            )
        res = minimal_resolution(P, 2)
        M = _stabilise(ring, f, res, 2)
        return twist_mf(M, -1)
    if mode == "structure-sheaf":
        hf = [hilbert_function(P, i) for i in range(4)]
        if hf == [1, 0, 0, 0]:
            res = minimal_resolution(P, 3)
            return _stabilise(ring, f, res, 3)
        if hf == [0, 3, 6, 9]:
            res = minimal_resolution(P, 2)
            return _stabilise(ring, f, res, 2)
        raise InputError(
            f"cohomology-not-concentrated: structure-sheaf extraction does not recognise Hilbert function {hf}"
        )
    raise InputError(f"unknown extraction mode {mode!r}")


def _stabilise(ring: PolyRing, f: Poly, res: Resolution, s: int) -> MatrixFactorization:
    """alpha = minimal generators over R of im(d^s) + f·F_{s-1}, beta by lifting."""
    d = res.diffs[s - 1]
    p1 = list(d.target_twists)
    candidates = columns_as_vectors(d)
    for c in range(len(p1)):
        candidates.append({(c, exp): coef for exp, coef in f.terms.items()})
    kept = mingens(candidates, p1, ring, over="R")
    alpha = vectors_as_columns(ring, p1, kept)
    beta = _solve_beta(ring, f, alpha)
    M = MatrixFactorization(ring, f, alpha, beta)
    assert_valid_mf(M, "stabilised factorisation")
    return M
