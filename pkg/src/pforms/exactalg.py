"""Exact linear algebra over the integers and rationals.

Everything here is arbitrary precision: integer matrices use Python ints,
rational matrices use Fraction entries.  No floating point enters this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class ExactAlgebraError(Exception):
    pass


class Mat:
    """Dense matrix with exact (int / Fraction) entries.

    Multiplication skips zero entries, which matters for the sparse
    coboundary and star matrices this package mostly deals with.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ExactAlgebraError("ragged rows")

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, m: int, n: int) -> "Mat":
        return cls([[0] * n for _ in range(m)])

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, entries: Sequence) -> "Mat":
        n = len(entries)
        m = cls.zeros(n, n)
        for i, e in enumerate(entries):
            m.rows[i][i] = e
        return m

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Mat":
        if not cols:
            return cls.zeros(0, 0)
        n = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def copy(self) -> "Mat":
        return Mat([list(r) for r in self.rows])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __setitem__(self, ij, v):
        i, j = ij
        self.rows[i][j] = v

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.shape == other.shape
            and all(self.rows[i][j] == other.rows[i][j]
                    for i in range(self.nrows) for j in range(self.ncols))
        )

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Mat[{self.nrows}x{self.ncols}]({body})"

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ExactAlgebraError("shape mismatch in add")
        return Mat([[a + b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other: "Mat") -> "Mat":
        if self.shape != other.shape:
            raise ExactAlgebraError("shape mismatch in sub")
        return Mat([[a - b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "Mat":
        return Mat([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.ncols != other.nrows:
            raise ExactAlgebraError(
                f"shape mismatch in matmul: {self.shape} @ {other.shape}")
        out = [[0] * other.ncols for _ in range(self.nrows)]
        orows = other.rows
        for i, row in enumerate(self.rows):
            acc = out[i]
            for k, a in enumerate(row):
                if a == 0:
                    continue
                orow = orows[k]
                for j, b in enumerate(orow):
                    if b != 0:
                        acc[j] += a * b
        return Mat(out)

    def mul_vec(self, v: Sequence) -> list:
        if len(v) != self.ncols:
            raise ExactAlgebraError("shape mismatch in mul_vec")
        out = [0] * self.nrows
        for i, row in enumerate(self.rows):
            s = 0
            for a, x in zip(row, v):
                if a != 0 and x != 0:
                    s += a * x
            out[i] = s
        return out

    def transpose(self) -> "Mat":
        return Mat([[self.rows[i][j] for i in range(self.nrows)]
                    for j in range(self.ncols)])

    def hstack(self, other: "Mat") -> "Mat":
        if self.nrows != other.nrows:
            raise ExactAlgebraError("shape mismatch in hstack")
        return Mat([r1 + r2 for r1, r2 in zip(self.rows, other.rows)])

    def vstack(self, other: "Mat") -> "Mat":
        if self.ncols != other.ncols:
            raise ExactAlgebraError("shape mismatch in vstack")
        return Mat([list(r) for r in self.rows] + [list(r) for r in other.rows])

    def column(self, j: int) -> list:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.ncols)]

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "Mat":
        cols = list(cols)
        return Mat([[self.rows[i][j] for j in cols] for i in rows])

    def to_fractions(self) -> "Mat":
        return Mat([[Fraction(a) for a in r] for r in self.rows])

    def to_float_rows(self) -> list[list[float]]:
        return [[float(a) for a in r] for r in self.rows]

    def is_integral(self) -> bool:
        return all(Fraction(a).denominator == 1 for r in self.rows for a in r)

    def max_denominator(self) -> int:
        d = 1
        for r in self.rows:
            for a in r:
                if isinstance(a, Fraction):
                    d = max(d, a.denominator)
        return d


def block_matrix(blocks: Sequence[Sequence[Mat | None]],
                 row_sizes: Sequence[int], col_sizes: Sequence[int]) -> Mat:
    """Assemble a matrix from a grid of blocks; None means a zero block."""
    out = Mat.zeros(sum(row_sizes), sum(col_sizes))
    r0 = 0
    for bi, rs in enumerate(row_sizes):
        c0 = 0
        for bj, cs in enumerate(col_sizes):
            b = blocks[bi][bj]
            if b is not None:
                if b.shape != (rs, cs):
                    raise ExactAlgebraError(
                        f"block ({bi},{bj}) has shape {b.shape}, wanted {(rs, cs)}")
                for i in range(rs):
                    row = out.rows[r0 + i]
                    brow = b.rows[i]
                    for j in range(cs):
                        row[c0 + j] = brow[j]
            c0 += cs
        r0 += rs
    return out


# ---------------------------------------------------------------------------
# Rational elimination
# ---------------------------------------------------------------------------

def rref(m: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form over the rationals; returns (R, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in m.rows]
    nr, nc = m.nrows, m.ncols
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return Mat(a), pivots


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def solve(a: Mat, b: Sequence) -> list | None:
    """One rational solution x of a x = b, or None if inconsistent."""
    aug = a.hstack(Mat([[x] for x in b]))
    r, pivots = rref(aug)
    if a.ncols in pivots:
        return None
    x = [Fraction(0)] * a.ncols
    for i, c in enumerate(pivots):
        x[c] = r.rows[i][a.ncols]
    return x

def solve_matrix(a: Mat, b: Mat) -> Mat | None:
    """Rational solution X of a X = b (columnwise), or None."""
    cols = []
    for j in range(b.ncols):
        x = solve(a, b.column(j))
        if x is None:
            return None
        cols.append(x)
    if not cols:
        return Mat.zeros(a.ncols, 0)
    return Mat.from_columns(cols)


def kernel_basis(m: Mat) -> Mat:
    """Columns form a basis of the rational kernel."""
    r, pivots = rref(m)
    free = [c for c in range(m.ncols) if c not in pivots]
    cols = []
    for fc in free:
        v = [Fraction(0)] * m.ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -r.rows[i][fc]
        cols.append(v)
    if not cols:
        return Mat.zeros(m.ncols, 0)
    return Mat.from_columns(cols)


def column_space_basis(m: Mat) -> Mat:
    _, pivots = rref(m)
    return m.submatrix(range(m.nrows), pivots) if pivots else Mat.zeros(m.nrows, 0)


def inverse(m: Mat) -> Mat:
    if m.nrows != m.ncols:
        raise ExactAlgebraError("inverse of non-square matrix")
    aug = m.hstack(Mat.identity(m.nrows))
    r, pivots = rref(aug)
    if pivots[: m.nrows] != list(range(m.nrows)):
        raise ExactAlgebraError("matrix is singular")
    return r.submatrix(range(m.nrows), range(m.nrows, 2 * m.nrows))


def rational_pseudoinverse(m: Mat) -> Mat:
    """Exact reflexive generalized inverse: m g m = m and g m g = g.

    Computed from a full-rank factorization m = C F with C a column-space
    basis and F the pivot rows of the rref.
    """
    r, pivots = rref(m)
    k = len(pivots)
    if k == 0:
        return Mat.zeros(m.ncols, m.nrows)
    c = m.submatrix(range(m.nrows), pivots)            # nrows x k
    f = r.submatrix(range(k), range(m.ncols))          # k x ncols
    ct, ft = c.transpose(), f.transpose()
    left = ft @ inverse(f @ ft)                        # ncols x k
    right = inverse(ct @ c) @ ct                       # k x nrows
    return left @ right


# ---------------------------------------------------------------------------
# Integer normal forms
# ---------------------------------------------------------------------------

def _check_int(m: Mat) -> None:
    for r in m.rows:
        for a in r:
            if not isinstance(a, int):
                raise ExactAlgebraError("integer matrix required")


def smith_normal_form(m: Mat) -> tuple[Mat, Mat, Mat]:
    """Smith normal form: returns (U, D, V) with U m V = D.

    U and V are unimodular, D is diagonal with d1 | d2 | ... and nonnegative
    diagonal.  Pivots are chosen with minimal absolute value to keep
    intermediate entries small.
    """
    _check_int(m)
    a = [list(r) for r in m.rows]
    nr, nc = m.nrows, m.ncols
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(nr, nc):
        # locate minimal nonzero entry in the working block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        # clear the edging; pivoting may reintroduce entries, so loop
        while True:
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t] != 0:  # remainder smaller than pivot: swap up
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
                u[t] = [-x for x in u[t]]
            if not dirty and all(a[i][t] == 0 for i in range(t + 1, nr)) \
                    and all(a[t][j] == 0 for j in range(t + 1, nc)):
                break
        # enforce divisibility: fold any bad entry into the pivot block
        bad = None
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if a[i][j] % a[t][t] != 0:
                    bad = (i, j)
                    break
            if bad:
                break
        if bad is not None:
            row_op(t, bad[0], -1)  # add row bad[0] to row t
            continue               # redo this pivot
        t += 1

    return Mat(u), Mat(a), Mat(v)


@dataclass(frozen=True)
class FgAbGroup:
    """Finitely generated abelian group in invariant factor form."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ExactAlgebraError("negative free rank")
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise ExactAlgebraError("torsion entries must be >= 2")
            if i + 1 < len(self.torsion) and self.torsion[i + 1] % d != 0:
                raise ExactAlgebraError("torsion divisibility chain violated")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def cokernel(m: Mat) -> FgAbGroup:
    """coker(m) = Z^rows / im(m) in invariant factor form."""
    return cokernel_with_basis(m)[0]


def cokernel_with_basis(m: Mat) -> tuple[FgAbGroup, Mat, list[int]]:
    """Cokernel plus a presentation.

    Returns (group, B, orders) where the columns of B are generators of
    Z^rows whose classes generate the cokernel; orders[i] is the order of
    the i-th generator (0 for infinite).  Torsion generators come first,
    in invariant-factor order, then free generators.
    """
    u, d, _ = smith_normal_form(m)
    diag = [d.rows[i][i] for i in range(min(d.nrows, d.ncols))]
    uinv = _unimodular_inverse(u)
    tors_idx = [i for i, x in enumerate(diag) if x >= 2]
    free_idx = [i for i, x in enumerate(diag) if x == 0] + \
               list(range(len(diag), m.nrows))
    torsion = tuple(diag[i] for i in tors_idx)
    group = FgAbGroup(len(free_idx), torsion)
    cols = [uinv.column(i) for i in tors_idx + free_idx]
    basis = Mat.from_columns(cols) if cols else Mat.zeros(m.nrows, 0)
    orders = [diag[i] for i in tors_idx] + [0] * len(free_idx)
    return group, basis, orders


def _unimodular_inverse(u: Mat) -> Mat:
    inv = inverse(u.to_fractions())
    return Mat([[int(x) for x in r] for r in inv.rows])


def determinant(m: Mat):
    """Exact determinant by fraction-free-ish elimination on Fractions."""
    if m.nrows != m.ncols:
        raise ExactAlgebraError("determinant of non-square matrix")
    a = [[Fraction(x) for x in r] for r in m.rows]
    n = m.nrows
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def integer_kernel_basis(m: Mat) -> Mat:
    """Columns form a saturated Z-basis of ker(m)."""
    _check_int(m)
    _, d, v = smith_normal_form(m)
    r = sum(1 for i in range(min(d.nrows, d.ncols)) if d.rows[i][i] != 0)
    cols = [v.column(j) for j in range(r, m.ncols)]
    if not cols:
        return Mat.zeros(m.ncols, 0)
    return Mat.from_columns(cols)


def integer_solve(a: Mat, b: Sequence[int]) -> list[int] | None:
    """One integer solution of a x = b, or None."""
    _check_int(a)
    u, d, v = smith_normal_form(a)
    ub = u.mul_vec(list(b))
    y = [0] * a.ncols
    for i in range(a.nrows):
        di = d.rows[i][i] if i < min(d.nrows, d.ncols) else 0
        if di == 0:
            if ub[i] != 0:
                return None
        else:
            if ub[i] % di != 0:
                return None
            if i < a.ncols:
                y[i] = ub[i] // di
    return v.mul_vec(y)


def integer_solve_matrix(a: Mat, b: Mat) -> Mat | None:
    cols = []
    for j in range(b.ncols):
        x = integer_solve(a, b.column(j))
        if x is None:
            return None
        cols.append(x)
    if not cols:
        return Mat.zeros(a.ncols, 0)
    return Mat.from_columns(cols)


def lattice_basis(generators: Mat) -> Mat:
    """Z-basis (columns) of the subgroup of Q^n generated by the columns.

    Clears denominators, computes a column Hermite-style basis via SNF, and
    rescales back; the result has full column rank.
    """
    if generators.ncols == 0:
        return generators.copy()
    den = 1
    for r in generators.rows:
        for x in r:
            den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
    scaled = Mat([[int(Fraction(x) * den) for x in r] for r in generators.rows])
    u, d, _ = smith_normal_form(scaled)
    r = sum(1 for i in range(min(d.nrows, d.ncols)) if d.rows[i][i] != 0)
    uinv = _unimodular_inverse(u)
    cols = []
    for i in range(r):
        di = d.rows[i][i]
        col = [Fraction(di * uinv.rows[j][i], den) for j in range(generators.nrows)]
        cols.append(col)
    if not cols:
        return Mat.zeros(generators.nrows, 0)
    return Mat.from_columns(cols)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@dataclass
class GroupHom:
    """Homomorphism between presented groups.

    `source` is an FgAbGroup; `target` is an FgAbGroup or an integer
    dimension of a real vector space (used by the integral-to-real
    comparison maps).  The matrix acts on chosen generators, torsion
    generators last on the source side.
    """

    source: FgAbGroup
    target: FgAbGroup | int
    matrix: Mat

    def check(self) -> bool:
        src_orders = [0] * self.source.free_rank + list(self.source.torsion)
        if self.matrix.ncols != len(src_orders):
            return False
        if isinstance(self.target, int):
            # maps into a rational/real vector space: torsion must die
            for j, d in enumerate(src_orders):
                if d != 0 and any(self.matrix.rows[i][j] != 0
                                  for i in range(self.matrix.nrows)):
                    return False
            return True
        tgt_orders = [0] * self.target.free_rank + list(self.target.torsion)
        if self.matrix.nrows != len(tgt_orders):
            return False
        for j, dj in enumerate(src_orders):
            if dj == 0:
                continue
            for i, di in enumerate(tgt_orders):
                x = dj * self.matrix.rows[i][j]
                if di == 0:
                    if x != 0:
                        return False
                elif x % di != 0:
                    return False
        return True
