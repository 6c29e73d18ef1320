"""Sparse exact linear algebra over Q and F_p.

Vectors are dicts {column index: nonzero coefficient}.  Everything here is
plain Gaussian elimination kept in fully reduced form, which is all the
Hom-space and isomorphism-search computations need.
"""

from __future__ import annotations

from .fields import Field


class RowSpace:
    """Incrementally built row space in fully reduced echelon form."""

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, dict[int, object]] = {}  # pivot column -> row

    def reduce(self, vec: dict) -> dict:
        """Fully reduce vec against the stored rows (pure; vec untouched)."""
        fld = self.field
        v = dict(vec)
        for piv, row in self.rows.items():
            c = v.get(piv)
            if not c:
                continue
            for j, x in row.items():
                s = fld.sub(v.get(j, fld.zero), fld.mul(c, x))
                if s:
                    v[j] = s
                else:
                    v.pop(j, None)
        return v

    def add(self, vec: dict) -> dict | None:
        """Insert vec; return its reduced form if it enlarged the space, else None."""
        fld = self.field
        v = self.reduce(vec)
        if not v:
            return None
        piv = min(v)
        inv = fld.inv(v[piv])
        v = {j: fld.mul(c, inv) for j, c in v.items()}
        for p, row in self.rows.items():
            c = row.get(piv)
            if not c:
                continue
            for j, x in v.items():
                s = fld.sub(row.get(j, fld.zero), fld.mul(c, x))
                if s:
                    row[j] = s
                else:
                    row.pop(j, None)
        self.rows[piv] = v
        return v

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


def rank(rows: list[dict], field: Field) -> int:
    space = RowSpace(field)
    for r in rows:
        space.add(r)
    return space.rank


def nullspace(rows: list[dict], ncols: int, field: Field) -> list[dict]:
    """Basis of {x : row·x = 0 for all rows}, one vector per free column."""
    space = RowSpace(field)
    for r in rows:
        space.add(r)
    pivots = space.rows
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = {free: field.one}
        for piv, row in pivots.items():
            c = row.get(free)
            if c:
                vec[piv] = field.neg(c)
        basis.append(vec)
    return basis
