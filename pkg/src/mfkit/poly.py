"""Graded multivariate polynomials and twist-aware matrices over them.

Exact coefficients (Q or F_p), standard grading deg(x_i) = 1, and the
degree-reverse-lexicographic order with the declared variable order used
everywhere (leading terms, canonical printing).

Twist convention, fixed once: a twist list entry ``a`` denotes the free
summand R(-a), whose generator sits in degree a; the twist functor (n)
sends the entry a to a - n.  A matrix with source twists a_j and target
twists b_i is degree-zero exactly when entry (i, j) is zero or homogeneous
of degree a_j - b_i.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction

from .errors import ParseError, ValidationError
from .fields import Field

Exp = tuple[int, ...]


def grevlex_key(exp: Exp):
    """Sort key for degrevlex: larger key = larger monomial."""
    return (sum(exp), tuple(-e for e in reversed(exp)))


class PolyRing:
    """A polynomial ring K[x_0, ..., x_n] with all variables in degree 1."""

    __slots__ = ("field", "vars", "_index")

    def __init__(self, field: Field, names=("X", "Y", "Z")):
        names = tuple(names)
        if not names or len(set(names)) != len(names):
            raise ValueError("variable names must be nonempty and distinct")
        self.field = field
        self.vars = names
        self._index = {v: i for i, v in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def from_terms(self, terms: dict) -> "Poly":
        """Build a Poly, dropping zero coefficients."""
        return Poly(self, {e: c for e, c in terms.items() if c})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        c = self.field.of(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "Poly":
        if name not in self._index:
            raise ParseError(f"unknown variable {name!r} in ring {self.vars}")
        exp = [0] * self.nvars
        exp[self._index[name]] = 1
        return Poly(self, {tuple(exp): self.field.one})

    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.var(v) for v in self.vars)

    def monomial(self, exp: Exp, c=1) -> "Poly":
        c = self.field.of(c)
        return Poly(self, {tuple(exp): c} if c else {})

    def monomials_of_degree(self, d: int) -> list[Exp]:
        """All exponent tuples of total degree d, descending in degrevlex."""
        if d < 0:
            return []
        n = self.nvars
        exps = []
        for bars in itertools.combinations(range(d + n - 1), n - 1):
            prev = -1
            exp = []
            for b in bars:
                exp.append(b - prev - 1)
                prev = b
            exp.append(d + n - 2 - prev)
            exps.append(tuple(exp))
        exps.sort(key=grevlex_key, reverse=True)
        return exps

    def parse(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.vars == self.vars
        )

    def __hash__(self):
        return hash((self.field, self.vars))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.vars)}]"


class Poly:
    """Immutable sparse polynomial: {exponent tuple: nonzero coefficient}."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Total degree, or None for the zero polynomial."""
        return max(sum(e) for e in self.terms) if self.terms else None

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_degree(self):
        """Degree if homogeneous (None for zero); raises otherwise."""
        degs = {sum(e) for e in self.terms}
        if len(degs) > 1:
            raise ValidationError(f"polynomial is not homogeneous: {self}")
        return degs.pop() if degs else None

    def lt(self):
        """Leading (exponent, coefficient) under degrevlex; None for zero."""
        if not self.terms:
            return None
        e = max(self.terms, key=grevlex_key)
        return e, self.terms[e]

    def coeff(self, exp: Exp):
        return self.terms.get(tuple(exp), self.ring.field.zero)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    # -- arithmetic ----------------------------------------------------
    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise ValidationError("polynomials from different rings")

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.const(other)
        self._check(other)
        fld = self.ring.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = fld.add(out.get(e, fld.zero), c)
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        neg = self.ring.field.neg
        return Poly(self.ring, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly):
            other = self.ring.const(other)
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return self.ring.const(other).__sub__(self)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        fld = self.ring.field
        char = fld.char
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = out.get(e, 0) + c1 * c2
                if char:
                    c %= char
                if c:
                    out[e] = c
                else:
                    out.pop(e, None)
        return Poly(self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Poly":
        c = self.ring.field.of(c)
        if not c:
            return self.ring.zero()
        mul = self.ring.field.mul
        return Poly(self.ring, {e: mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and other.ring == self.ring
            and other.terms == self.terms
        )

    __hash__ = None  # mutable-dict payload; equality is structural

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)})"


def exact_divide(p: Poly, q: Poly) -> Poly:
    """Return p / q when q divides p exactly; raise ValidationError otherwise."""
    p._check(q)
    if q.is_zero():
        raise ValidationError("division by the zero polynomial")
    ring = p.ring
    fld = ring.field
    eq, cq = q.lt()
    rem = p
    quot: dict = {}
    while not rem.is_zero():
        ep, cp = rem.lt()
        diff = tuple(a - b for a, b in zip(ep, eq))
        if any(d < 0 for d in diff):
            raise ValidationError("division is not exact")
        c = fld.div(cp, cq)
        quot[diff] = c
        rem = rem - ring.monomial(diff, c) * q
    return ring.from_terms(quot)


# ---------------------------------------------------------------------------
# parsing / printing


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos and not text[pos:].strip():
            break
        if not m.group(0).strip():
            pos = m.end()
            continue
        if m.group(1):
            tokens.append(("int", m.group(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2)))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError(f"unexpected character {text[pos:].strip()[0]!r} in polynomial")
    return tokens


class _Parser:
    def __init__(self, tokens, ring: PolyRing):
        self.tokens = tokens
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expr(self) -> Poly:
        p = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.factor()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            _, op = self.take()
            q = self.factor()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError("division only by nonzero constants")
                try:
                    p = p.scale(self.ring.field.inv(q.constant_value()))
                except ZeroDivisionError as exc:
                    raise ParseError(str(exc)) from exc
        return p

    def factor(self) -> Poly:
        sign = 1
        while self.peek() == ("op", "-") or self.peek() == ("op", "+"):
            _, op = self.take()
            if op == "-":
                sign = -sign
        p = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer")
            p = p ** int(val)
        return p if sign == 1 else -p

    def atom(self) -> Poly:
        kind, val = self.take()
        if kind == "int":
            return self.ring.const(int(val))
        if kind == "name":
            return self.ring.var(val)
        if (kind, val) == ("op", "("):
            p = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError("unbalanced parentheses")
            return p
        raise ParseError(f"unexpected token {val!r} in polynomial")


def parse_poly(text: str, ring: PolyRing) -> Poly:
    """Parse `+ - * / ^`-arithmetic over integers, rationals p/q, and ring variables."""
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial text")
    parser = _Parser(tokens, ring)
    p = parser.expr()
    if parser.i != len(tokens):
        raise ParseError(f"trailing input after polynomial: {tokens[parser.i:]}")
    return p


def _format_monomial(ring: PolyRing, exp: Exp) -> str:
    parts = []
    for name, e in zip(ring.vars, exp):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    """Canonical text: terms in descending degrevlex, explicit `*`."""
    if p.is_zero():
        return "0"
    fld = p.ring.field
    out = []
    for exp in sorted(p.terms, key=grevlex_key, reverse=True):
        c = p.terms[exp]
        mono = _format_monomial(p.ring, exp)
        if fld.char == 0 and c < 0:
            sign, mag = "-", -c
        else:
            sign, mag = "+", c
        if not mono:
            body = str(mag)
        elif mag == fld.one:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# graded matrices


class GradedMatrix:
    """Matrix of homogeneous polynomials between twisted free modules.

    Maps ⊕_j R(-a_j) → ⊕_i R(-b_i); degree-zero iff entry (i, j) is zero or
    homogeneous of degree a_j - b_i.
    """

    __slots__ = ("ring", "target_twists", "source_twists", "entries")

    def __init__(self, ring, target_twists, source_twists, entries):
        self.ring = ring
        self.target_twists = list(target_twists)
        self.source_twists = list(source_twists)
        self.entries = [list(row) for row in entries]
        if len(self.entries) != len(self.target_twists) or any(
            len(row) != len(self.source_twists) for row in self.entries
        ):
            raise ValidationError("matrix shape does not match twist vectors")

    @property
    def rows(self) -> int:
        return len(self.target_twists)

    @property
    def cols(self) -> int:
        return len(self.source_twists)

    @classmethod
    def from_strings(cls, ring, target_twists, source_twists, rows) -> "GradedMatrix":
        entries = [[ring.parse(s) if isinstance(s, str) else s for s in row] for row in rows]
        return cls(ring, target_twists, source_twists, entries)

    @classmethod
    def zero(cls, ring, target_twists, source_twists) -> "GradedMatrix":
        z = ring.zero()
        return cls(
            ring,
            target_twists,
            source_twists,
            [[z for _ in source_twists] for _ in target_twists],
        )

    @classmethod
    def identity(cls, ring, twists) -> "GradedMatrix":
        one, z = ring.one(), ring.zero()
        n = len(twists)
        return cls(ring, twists, twists, [[one if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, f: Poly, twists) -> "GradedMatrix":
        """f·Id as a degree-zero map ⊕R(-a_j) → ⊕R(-(a_j - deg f))."""
        d = f.homogeneous_degree() or 0
        z = f.ring.zero()
        n = len(twists)
        return cls(
            f.ring,
            [a - d for a in twists],
            list(twists),
            [[f if i == j else z for j in range(n)] for i in range(n)],
        )

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i][j]

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)

    def column(self, j: int) -> list[Poly]:
        return [row[j] for row in self.entries]

    def __mul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.ring != other.ring:
            raise ValidationError("matrices over different rings")
        if self.cols != other.rows:
            raise ValidationError("matrix shapes do not compose")
        z = self.ring.zero()
        out = []
        for i in range(self.rows):
            row = []
            for k in range(other.cols):
                acc = z
                for j in range(self.cols):
                    e = self.entries[i][j]
                    g = other.entries[j][k]
                    if e.terms and g.terms:
                        acc = acc + e * g
                row.append(acc)
            out.append(row)
        return GradedMatrix(self.ring, self.target_twists, other.source_twists, out)

    def __add__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.rows != other.rows or self.cols != other.cols:
            raise ValidationError("matrix shapes do not match")
        return GradedMatrix(
            self.ring,
            self.target_twists,
            self.source_twists,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
        )

    def __neg__(self) -> "GradedMatrix":
        return GradedMatrix(
            self.ring,
            self.target_twists,
            self.source_twists,
            [[-e for e in row] for row in self.entries],
        )

    def __sub__(self, other: "GradedMatrix") -> "GradedMatrix":
        return self.__add__(other.__neg__())

    def __eq__(self, other):
        return (
            isinstance(other, GradedMatrix)
            and other.ring == self.ring
            and other.target_twists == self.target_twists
            and other.source_twists == self.source_twists
            and other.entries == self.entries
        )

    __hash__ = None

    def same_entries(self, other: "GradedMatrix") -> bool:
        """Entrywise equality, ignoring twist vectors."""
        return self.entries == other.entries

    def transpose_entries(self, target_twists, source_twists) -> "GradedMatrix":
        return GradedMatrix(
            self.ring,
            target_twists,
            source_twists,
            [[self.entries[j][i] for j in range(self.rows)] for i in range(self.cols)],
        )

    def retwist(self, n: int) -> "GradedMatrix":
        """Apply the twist functor (n): same entries, all twists lowered by n."""
        return GradedMatrix(
            self.ring,
            [b - n for b in self.target_twists],
            [a - n for a in self.source_twists],
            self.entries,
        )

    def with_twists(self, target_twists, source_twists) -> "GradedMatrix":
        return GradedMatrix(self.ring, target_twists, source_twists, self.entries)

    def delete(self, row: int, col: int) -> "GradedMatrix":
        return GradedMatrix(
            self.ring,
            [b for i, b in enumerate(self.target_twists) if i != row],
            [a for j, a in enumerate(self.source_twists) if j != col],
            [
                [e for j, e in enumerate(r) if j != col]
                for i, r in enumerate(self.entries)
                if i != row
            ],
        )

    def select_columns(self, cols) -> "GradedMatrix":
        return GradedMatrix(
            self.ring,
            self.target_twists,
            [self.source_twists[j] for j in cols],
            [[row[j] for j in cols] for row in self.entries],
        )

    @classmethod
    def hstack(cls, left: "GradedMatrix", right: "GradedMatrix") -> "GradedMatrix":
        if left.target_twists != right.target_twists:
            raise ValidationError("hstack needs identical target twists")
        return cls(
            left.ring,
            left.target_twists,
            left.source_twists + right.source_twists,
            [r1 + r2 for r1, r2 in zip(left.entries, right.entries)],
        )

    @classmethod
    def block(cls, rows_of_blocks) -> "GradedMatrix":
        """Assemble from a 2D grid of GradedMatrix blocks (twists concatenate)."""
        ring = rows_of_blocks[0][0].ring
        target = [b for row in rows_of_blocks for b in row[0].target_twists]
        source = [a for blk in rows_of_blocks[0] for a in blk.source_twists]
        entries = []
        for row in rows_of_blocks:
            for i in range(row[0].rows):
                entries.append([e for blk in row for e in blk.entries[i]])
        return cls(ring, target, source, entries)

    def det(self) -> Poly:
        """Determinant by cofactor expansion (small matrices only)."""
        n = self.rows
        if n != self.cols:
            raise ValidationError("determinant of a non-square matrix")
        if n == 0:
            return self.ring.one()
        if n == 1:
            return self.entries[0][0]
        acc = self.ring.zero()
        for j in range(n):
            e = self.entries[0][j]
            if e.is_zero():
                continue
            minor = GradedMatrix(
                self.ring,
                self.target_twists[1:],
                self.source_twists[:j] + self.source_twists[j + 1 :],
                [row[:j] + row[j + 1 :] for row in self.entries[1:]],
            )
            term = e * minor.det()
            acc = acc + (term if j % 2 == 0 else -term)
        return acc

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return (
            f"GradedMatrix({self.target_twists} <- {self.source_twists}: [{body}])"
        )


def validate_graded_matrix(M: GradedMatrix) -> list[tuple[int, int, str]]:
    """Report (row, col, message) for every entry violating the grading."""
    bad = []
    for i in range(M.rows):
        for j in range(M.cols):
            e = M.entries[i][j]
            if e.is_zero():
                continue
            want = M.source_twists[j] - M.target_twists[i]
            if not e.is_homogeneous():
                bad.append((i, j, f"entry ({i},{j}) is not homogeneous: {e}"))
            elif e.homogeneous_degree() != want:
                bad.append(
                    (
                        i,
                        j,
                        f"entry ({i},{j}) has degree {e.homogeneous_degree()}, "
                        f"expected {want}",
                    )
                )
    return bad


def assert_graded(M: GradedMatrix, what: str = "matrix") -> None:
    bad = validate_graded_matrix(M)
    if bad:
        raise ValidationError(f"{what} fails grading: " + "; ".join(m for _, _, m in bad))
