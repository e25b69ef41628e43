"""Exact linear algebra over Q(i): matrices, subspaces, quotients.

Everything is immutable and hashable so results of the more expensive
canonical constructions (complements, quotient presentations, annihilators)
can be memoized.  Vectors are plain tuples of :class:`~fhodge.scalars.Scalar`;
subspaces are kept in a canonical reduced row echelon basis so that equal
subspaces compare equal as Python objects.

Zero-dimensional shapes (0 x n, n x 0) are first-class citizens: quotients by
the full space and maps out of the zero space occur constantly downstream.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import MalformedInput
from .scalars import I, ONE, Scalar, ZERO, rat


def _coerce_entry(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar(rat(x))
    raise MalformedInput(f"matrix entry must be a scalar or int, got {type(x).__name__}")


class Matrix:
    """Immutable matrix over Q(i), stored as a tuple of row tuples."""

    __slots__ = ("nrows", "ncols", "rows", "_hash")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(_coerce_entry(x) for x in r) for r in rows)
        if rows:
            ncols_found = len(rows[0])
            if any(len(r) != ncols_found for r in rows):
                raise MalformedInput("ragged matrix rows")
            if ncols is not None and ncols != ncols_found:
                raise MalformedInput("ncols disagrees with row length")
            ncols = ncols_found
        elif ncols is None:
            ncols = 0
        object.__setattr__(self, "nrows", len(rows))
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def _raw(nrows, ncols, rows):
        m = object.__new__(Matrix)
        object.__setattr__(m, "nrows", nrows)
        object.__setattr__(m, "ncols", ncols)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "_hash", None)
        return m

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix._raw(
            n, n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))
        )

    @staticmethod
    def zero(nrows: int, ncols: int) -> "Matrix":
        row = (ZERO,) * ncols
        return Matrix._raw(nrows, ncols, (row,) * nrows)

    @staticmethod
    def from_columns(cols, nrows=None) -> "Matrix":
        cols = [tuple(_coerce_entry(x) for x in c) for c in cols]
        if cols:
            nrows = len(cols[0])
        elif nrows is None:
            nrows = 0
        return Matrix._raw(
            nrows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(nrows))
        )

    @staticmethod
    def diagonal(entries) -> "Matrix":
        entries = tuple(_coerce_entry(x) for x in entries)
        n = len(entries)
        return Matrix._raw(
            n, n, tuple(tuple(entries[i] if i == j else ZERO for j in range(n)) for i in range(n))
        )

    # -- access ------------------------------------------------------------

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.col(j) for j in range(self.ncols)]

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i][j]

    def submatrix(self, row_idx, col_idx) -> "Matrix":
        row_idx, col_idx = tuple(row_idx), tuple(col_idx)
        return Matrix._raw(
            len(row_idx),
            len(col_idx),
            tuple(tuple(self.rows[i][j] for j in col_idx) for i in row_idx),
        )

    # -- arithmetic ----------------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise MalformedInput(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        ocols = other.ncols
        orows = other.rows
        out = []
        for r in self.rows:
            acc = [ZERO] * ocols
            for k, a in enumerate(r):
                if a.is_zero():
                    continue
                ok = orows[k]
                acc = [acc[j] + a * ok[j] for j in range(ocols)]
            out.append(tuple(acc))
        return Matrix._raw(self.nrows, ocols, tuple(out))

    def apply(self, v) -> tuple:
        """Multiply by a column vector given as a tuple."""
        if len(v) != self.ncols:
            raise MalformedInput(f"vector length {len(v)} != ncols {self.ncols}")
        out = []
        for r in self.rows:
            s = ZERO
            for a, x in zip(r, v):
                if not a.is_zero() and not (isinstance(x, Scalar) and x.is_zero()):
                    s = s + a * x
            out.append(s)
        return tuple(out)

    def __add__(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise MalformedInput("shape mismatch in matrix addition")
        return Matrix._raw(
            self.nrows,
            self.ncols,
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)),
        )

    def __sub__(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise MalformedInput("shape mismatch in matrix subtraction")
        return Matrix._raw(
            self.nrows,
            self.ncols,
            tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)),
        )

    def __neg__(self):
        return Matrix._raw(
            self.nrows, self.ncols, tuple(tuple(-a for a in r) for r in self.rows)
        )

    def scale(self, s) -> "Matrix":
        s = _coerce_entry(s)
        return Matrix._raw(
            self.nrows, self.ncols, tuple(tuple(s * a for a in r) for r in self.rows)
        )

    def transpose(self) -> "Matrix":
        return Matrix._raw(
            self.ncols, self.nrows,
            tuple(tuple(self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols)),
        )

    def conj(self) -> "Matrix":
        return Matrix._raw(
            self.nrows, self.ncols, tuple(tuple(a.conj() for a in r) for r in self.rows)
        )

    def is_zero(self) -> bool:
        return all(a.is_zero() for r in self.rows for a in r)

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and self == Matrix.identity(self.nrows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.nrows == other.nrows and self.ncols == other.ncols and self.rows == other.rows
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.nrows, self.ncols, self.rows))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: {body})"

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise MalformedInput("only square matrices can be inverted")
        n = self.nrows
        aug = hstack(self, Matrix.identity(n))
        red, pivots = rref(aug)
        if tuple(pivots) != tuple(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return red.submatrix(range(n), range(n, 2 * n))

    def det(self) -> Scalar:
        if self.nrows != self.ncols:
            raise MalformedInput("determinant of a non-square matrix")
        n = self.nrows
        rows = [list(r) for r in self.rows]
        d = ONE
        for c in range(n):
            pr = None
            for i in range(c, n):
                if not rows[i][c].is_zero():
                    pr = i
                    break
            if pr is None:
                return ZERO
            if pr != c:
                rows[c], rows[pr] = rows[pr], rows[c]
                d = -d
            pv = rows[c][c]
            d = d * pv
            inv = ONE / pv
            rows[c] = [inv * x for x in rows[c]]
            for i in range(c + 1, n):
                f = rows[i][c]
                if not f.is_zero():
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
        return d


def hstack(*ms: Matrix) -> Matrix:
    ms = [m for m in ms]
    if not ms:
        raise MalformedInput("hstack of nothing")
    nrows = ms[0].nrows
    if any(m.nrows != nrows for m in ms):
        raise MalformedInput("hstack row count mismatch")
    ncols = sum(m.ncols for m in ms)
    rows = tuple(
        tuple(x for m in ms for x in (m.rows[i] if m.rows else ())) for i in range(nrows)
    )
    return Matrix._raw(nrows, ncols, rows)


def vstack(*ms: Matrix) -> Matrix:
    ms = [m for m in ms]
    if not ms:
        raise MalformedInput("vstack of nothing")
    ncols = ms[0].ncols
    if any(m.ncols != ncols for m in ms):
        raise MalformedInput("vstack column count mismatch")
    rows = tuple(r for m in ms for r in m.rows)
    return Matrix._raw(len(rows), ncols, rows)


def block_diag(*ms: Matrix) -> Matrix:
    nrows = sum(m.nrows for m in ms)
    ncols = sum(m.ncols for m in ms)
    out = [[ZERO] * ncols for _ in range(nrows)]
    r0 = c0 = 0
    for m in ms:
        for i, row in enumerate(m.rows):
            for j, x in enumerate(row):
                out[r0 + i][c0 + j] = x
        r0 += m.nrows
        c0 += m.ncols
    return Matrix._raw(nrows, ncols, tuple(tuple(r) for r in out))


def kron(a: Matrix, b: Matrix) -> Matrix:
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append(tuple(x * y for x in ra for y in rb))
    return Matrix._raw(a.nrows * b.nrows, a.ncols * b.ncols, tuple(rows))


def vec(m: Matrix) -> tuple:
    """Column-major flattening, so that vec(A X B) = (B^T kron A) vec(X)."""
    return tuple(m.rows[i][j] for j in range(m.ncols) for i in range(m.nrows))


def unvec(v, nrows: int, ncols: int) -> Matrix:
    if len(v) != nrows * ncols:
        raise MalformedInput("unvec length mismatch")
    return Matrix._raw(
        nrows, ncols, tuple(tuple(v[j * nrows + i] for j in range(ncols)) for i in range(nrows))
    )


# -- vectors -----------------------------------------------------------------


def zero_vector(n: int) -> tuple:
    return (ZERO,) * n


def std_vector(n: int, j: int) -> tuple:
    return tuple(ONE if k == j else ZERO for k in range(n))


def vec_add(u, v) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(s, v) -> tuple:
    s = _coerce_entry(s)
    return tuple(s * a for a in v)


def vec_conj(v) -> tuple:
    return tuple(a.conj() for a in v)


def vec_is_zero(v) -> bool:
    return all(a.is_zero() for a in v)


def dot(u, v) -> Scalar:
    """Plain bilinear pairing sum u_j v_j (no conjugation)."""
    s = ZERO
    for a, b in zip(u, v):
        s = s + a * b
    return s


# -- echelon forms, kernels, solving ------------------------------------------


def rref(m: Matrix):
    """Reduced row echelon form.  Returns (reduced matrix, pivot columns)."""
    nr, nc = m.nrows, m.ncols
    rows = [list(r) for r in m.rows]
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        pr = None
        for i in range(r, nr):
            if not rows[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        if pv != ONE:
            inv = ONE / pv
            rows[r] = [inv * x for x in rows[r]]
        rr = rows[r]
        for i in range(nr):
            if i != r:
                f = rows[i][c]
                if not f.is_zero():
                    rows[i] = [a - f * b for a, b in zip(rows[i], rr)]
        pivots.append(c)
        r += 1
    return Matrix._raw(nr, nc, tuple(tuple(row) for row in rows)), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel(m: Matrix) -> "Subspace":
    """Right kernel {v : m v = 0}, as a canonical subspace of the column space."""
    red, pivots = rref(m)
    n = m.ncols
    pivot_set = set(pivots)
    free = [j for j in range(n) if j not in pivot_set]
    basis = []
    for j in free:
        v = [ZERO] * n
        v[j] = ONE
        for r_idx, c in enumerate(pivots):
            v[c] = -red.rows[r_idx][j]
        basis.append(tuple(v))
    return Subspace.span(n, basis)


def solve(m: Matrix, y) -> tuple | None:
    """One solution of m x = y with all free coordinates set to zero.

    Returns None when the system is inconsistent.
    """
    aug = hstack(m, Matrix.from_columns([y], nrows=m.nrows))
    red, pivots = rref(aug)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [ZERO] * m.ncols
    for r_idx, c in enumerate(pivots):
        x[c] = red.rows[r_idx][m.ncols]
    return tuple(x)


def solve_matrix(m: Matrix, b: Matrix) -> Matrix | None:
    """One solution X of m X = b (columnwise, free coordinates zero)."""
    if m.nrows != b.nrows:
        raise MalformedInput("shape mismatch in solve_matrix")
    aug = hstack(m, b)
    red, pivots = rref(aug)
    if pivots and pivots[-1] >= m.ncols:
        return None
    cols = []
    for j in range(b.ncols):
        x = [ZERO] * m.ncols
        for r_idx, c in enumerate(pivots):
            x[c] = red.rows[r_idx][m.ncols + j]
        cols.append(tuple(x))
    return Matrix.from_columns(cols, nrows=m.ncols)


# -- subspaces ----------------------------------------------------------------


class Subspace:
    """A subspace of K^n in canonical form.

    The basis is stored as the rows of a reduced row echelon matrix with no
    zero rows, so two subspaces are equal iff their canonical bases coincide.
    """

    __slots__ = ("ambient", "basis", "_hash")

    def __init__(self, ambient: int, basis):
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("Subspace is immutable")

    @staticmethod
    def span(ambient: int, vectors) -> "Subspace":
        vectors = [tuple(_coerce_entry(x) for x in v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise MalformedInput(f"vector length {len(v)} != ambient {ambient}")
        red, pivots = rref(Matrix._raw(len(vectors), ambient, tuple(vectors)))
        return Subspace(ambient, red.rows[: len(pivots)])

    @staticmethod
    def zero(ambient: int) -> "Subspace":
        return Subspace(ambient, ())

    @staticmethod
    def full(ambient: int) -> "Subspace":
        return Subspace(ambient, Matrix.identity(ambient).rows)

    @staticmethod
    def from_columns(m: Matrix) -> "Subspace":
        """Column span of a matrix, i.e. the image of the map it defines."""
        return Subspace.span(m.nrows, m.columns())

    # -- inspection ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple:
        out = []
        for row in self.basis:
            for j, x in enumerate(row):
                if not x.is_zero():
                    out.append(j)
                    break
        return tuple(out)

    def basis_matrix(self) -> Matrix:
        """Basis vectors as the columns of an ambient x dim matrix."""
        return Matrix._raw(len(self.basis), self.ambient, self.basis).transpose()

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient

    def reduce(self, v) -> tuple:
        """Remainder of v after eliminating all pivot coordinates."""
        v = list(v)
        for row, p in zip(self.basis, self.pivots):
            f = v[p]
            if not f.is_zero():
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, v) -> bool:
        if len(v) != self.ambient:
            raise MalformedInput("vector/ambient mismatch")
        return vec_is_zero(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def coords_of(self, v) -> tuple | None:
        """Coefficients of v in the canonical basis, or None if outside."""
        sol = solve(self.basis_matrix(), v)
        if sol is None:
            return None
        return sol

    # -- constructions --------------------------------------------------------

    def add(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise MalformedInput("ambient mismatch in subspace sum")
        return Subspace.span(self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.ambient != other.ambient:
            raise MalformedInput("ambient mismatch in subspace intersection")
        return annihilator(annihilator(self).add(annihilator(other)))

    def conj(self) -> "Subspace":
        return Subspace.span(self.ambient, [vec_conj(v) for v in self.basis])

    def image_under(self, m: Matrix) -> "Subspace":
        if m.ncols != self.ambient:
            raise MalformedInput("matrix/ambient mismatch in image")
        return Subspace.span(m.nrows, [m.apply(v) for v in self.basis])

    def preimage_under(self, m: Matrix) -> "Subspace":
        """{x : m x lies in this subspace} as a subspace of the source."""
        if m.nrows != self.ambient:
            raise MalformedInput("matrix/ambient mismatch in preimage")
        proj, _ = quotient_map(self)
        return kernel(proj * m)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.ambient, self.basis))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        vecs = ", ".join("(" + ", ".join(str(x) for x in v) + ")" for v in self.basis)
        return f"Subspace({self.ambient}; {vecs})"


@lru_cache(maxsize=None)
def complement(s: Subspace) -> Subspace:
    """The coordinate complement spanned by standard vectors at non-pivot columns."""
    pivot_set = set(s.pivots)
    vecs = [std_vector(s.ambient, j) for j in range(s.ambient) if j not in pivot_set]
    return Subspace(s.ambient, tuple(vecs))


@lru_cache(maxsize=None)
def annihilator(s: Subspace) -> Subspace:
    """Functionals vanishing on s, in dual coordinates: the kernel of the basis."""
    return kernel(Matrix._raw(len(s.basis), s.ambient, s.basis))


@lru_cache(maxsize=None)
def _coord_split(s: Subspace):
    """Invert [basis columns | complement standard columns] once for reuse."""
    n, k = s.ambient, s.dim
    comp_cols = [j for j in range(n) if j not in set(s.pivots)]
    cols = [v for v in s.basis] + [std_vector(n, j) for j in comp_cols]
    m = Matrix.from_columns(cols, nrows=n)
    inv = m.inverse() if n else Matrix.identity(0)
    pi = inv.submatrix(range(k), range(n))
    proj = inv.submatrix(range(k, n), range(n))
    lift = Matrix.from_columns([std_vector(n, j) for j in comp_cols], nrows=n)
    return pi, proj, lift


def quotient_map(s: Subspace):
    """A presentation (proj, lift) of the quotient of the ambient space by s.

    proj is (n-k) x n with kernel exactly s; lift is n x (n-k) with
    proj * lift = identity.  The lift lands in the coordinate complement, so
    the pair is deterministic given the canonical basis of s.
    """
    _, proj, lift = _coord_split(s)
    return proj, lift


def projection_onto(s: Subspace) -> Matrix:
    """Coordinates in the canonical basis of s of the projection onto s
    along the coordinate complement: a dim x ambient matrix pi with
    pi * basis = identity and pi * complement = 0."""
    return _coord_split(s)[0]


def section_into(s: Subspace, comp: Subspace) -> Matrix:
    """The section of the quotient by s landing in a chosen complement comp.

    Returns an ambient x (n-k) matrix L with proj * L = identity and
    image(L) = comp; the default quotient lift is section_into(s, complement(s)).
    """
    proj, _ = quotient_map(s)
    bc = comp.basis_matrix()
    square = proj * bc
    return bc * square.inverse()


def complement_reversed(s: Subspace) -> Subspace:
    """A coordinate complement built greedily from the highest index down.

    Used to exercise section independence: in general it differs from
    complement(s), which scans non-pivot columns upward.
    """
    chosen = []
    current = s
    for j in range(s.ambient - 1, -1, -1):
        if current.is_full():
            break
        v = std_vector(s.ambient, j)
        if not current.contains(v):
            chosen.append(v)
            current = current.add(Subspace.span(s.ambient, [v]))
    return Subspace.span(s.ambient, chosen)


# -- rational structure -------------------------------------------------------


def realify_vector(v) -> tuple:
    """K^n -> Q^(2n), interleaving real and imaginary parts."""
    out = []
    for x in v:
        out.append(Scalar(x.re))
        out.append(Scalar(x.im))
    return tuple(out)


def realify_span(vectors, ambient: int) -> Subspace:
    """The Q-span of vectors in K^n, realified into K^(2n) with rational basis.

    For rational input vectors, rank and intersection behaviour over Q match
    the realified span over K, so the usual subspace calculus applies.
    """
    return Subspace.span(2 * ambient, [realify_vector(v) for v in vectors])


def realify_k_subspace(s: Subspace) -> Subspace:
    """The realification of a K-subspace: Q-span of basis and i * basis."""
    vecs = []
    for v in s.basis:
        vecs.append(realify_vector(v))
        vecs.append(realify_vector(vec_scale(I, v)))
    return Subspace.span(2 * s.ambient, vecs)


def rational_slice(n: int) -> Subspace:
    """Inside the realified K^(2n): the copy of Q^n with imaginary parts zero."""
    return Subspace(2 * n, tuple(std_vector(2 * n, 2 * j) for j in range(n)))


def rational_points(s: Subspace) -> Subspace:
    """Vectors with rational coordinates inside a K-subspace, realified back.

    Returns the Q-span (as a realified subspace) of the fixed points of
    conjugation on s; take even coordinates to read vectors in Q^n.
    """
    return realify_k_subspace(s).intersect(rational_slice(s.ambient))


def derealify_vector(v) -> tuple:
    """Inverse of realify_vector on the rational slice (even coords only)."""
    n = len(v) // 2
    return tuple(Scalar(v[2 * j].re, v[2 * j + 1].re) for j in range(n))
