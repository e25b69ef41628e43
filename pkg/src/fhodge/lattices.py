"""Finitely generated abelian groups via integer matrix normal forms.

Groups are presented by invariant factors (Smith normal form), sublattices by
canonical Hermite bases, and homomorphisms by integer matrices on chosen
generators.  Kernels and cokernels are computed presentation-style so that
torsion sources and targets work uniformly.

All Smith/Hermite routines are deterministic: pivot choice is by minimal
absolute value with lexicographic tie-break, so equal inputs give equal
transforms byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import NamedTuple

from .errors import InternalError, MalformedInput, NotFree, ValidationFailure
from .linalg import Matrix, Subspace, annihilator
from .scalars import Scalar, rat


class IntMatrix:
    """Immutable integer matrix (arbitrary precision)."""

    __slots__ = ("nrows", "ncols", "rows", "_hash")

    def __init__(self, rows, ncols=None):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if rows:
            ncols_found = len(rows[0])
            if any(len(r) != ncols_found for r in rows):
                raise MalformedInput("ragged integer matrix")
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
        raise AttributeError("IntMatrix is immutable")

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(
            tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n
        )

    @staticmethod
    def zero(nrows: int, ncols: int) -> "IntMatrix":
        return IntMatrix(((0,) * ncols,) * nrows, ncols)

    @staticmethod
    def from_columns(cols, nrows=None) -> "IntMatrix":
        cols = [tuple(int(x) for x in c) for c in cols]
        if cols:
            nrows = len(cols[0])
        elif nrows is None:
            nrows = 0
        return IntMatrix(
            tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols)
        )

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.col(j) for j in range(self.ncols)]

    def submatrix(self, row_idx, col_idx) -> "IntMatrix":
        row_idx, col_idx = tuple(row_idx), tuple(col_idx)
        return IntMatrix(
            tuple(tuple(self.rows[i][j] for j in col_idx) for i in row_idx),
            len(col_idx),
        )

    def __mul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise MalformedInput("shape mismatch in integer matrix product")
        out = []
        for r in self.rows:
            acc = [0] * other.ncols
            for k, a in enumerate(r):
                if a:
                    ok = other.rows[k]
                    acc = [acc[j] + a * ok[j] for j in range(other.ncols)]
            out.append(tuple(acc))
        return IntMatrix(tuple(out), other.ncols)

    def __add__(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise MalformedInput("shape mismatch in integer matrix sum")
        return IntMatrix(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)),
            self.ncols,
        )

    def __neg__(self):
        return IntMatrix(tuple(tuple(-a for a in r) for r in self.rows), self.ncols)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(c * a for a in r) for r in self.rows), self.ncols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            tuple(tuple(self.rows[i][j] for i in range(self.nrows)) for j in range(self.ncols)),
            self.nrows,
        )

    def apply(self, v) -> tuple:
        if len(v) != self.ncols:
            raise MalformedInput("vector length mismatch")
        return tuple(sum(a * x for a, x in zip(r, v)) for r in self.rows)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def to_k(self) -> Matrix:
        return Matrix(tuple(tuple(Scalar(rat(a)) for a in r) for r in self.rows), self.ncols)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
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
        return f"IntMatrix({self.nrows}x{self.ncols}: {self.rows})"


def int_hstack(*ms: IntMatrix) -> IntMatrix:
    nrows = ms[0].nrows
    if any(m.nrows != nrows for m in ms):
        raise MalformedInput("hstack row mismatch")
    rows = tuple(
        tuple(x for m in ms for x in (m.rows[i] if m.rows else ())) for i in range(nrows)
    )
    return IntMatrix(rows, sum(m.ncols for m in ms))


def int_vstack(*ms: IntMatrix) -> IntMatrix:
    ncols = ms[0].ncols
    if any(m.ncols != ncols for m in ms):
        raise MalformedInput("vstack column mismatch")
    return IntMatrix(tuple(r for m in ms for r in m.rows), ncols)


class SNFResult(NamedTuple):
    u: IntMatrix
    d: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix


def smith_normal_form(a: IntMatrix) -> SNFResult:
    """U a V = D diagonal, nonnegative, with divisibility chain.

    All four transforms are returned; U, V are unimodular by construction.
    """
    m, n = a.nrows, a.ncols
    M = [list(r) for r in a.rows]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    Ui = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    Vi = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def row_add(i, j, c):
        # R_i += c R_j; inverse transform gets the column update
        M[i] = [x + c * y for x, y in zip(M[i], M[j])]
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]
        for row in Ui:
            row[j] -= c * row[i]

    def row_neg(i):
        M[i] = [-x for x in M[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    def col_swap(j, k):
        for row in M:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]
        Vi[j], Vi[k] = Vi[k], Vi[j]

    def col_add(j, k, c):
        # C_j += c C_k
        for row in M:
            row[j] += c * row[k]
        for row in V:
            row[j] += c * row[k]
        Vi[k] = [x - c * y for x, y in zip(Vi[k], Vi[j])]

    def col_neg(j):
        for row in M:
            row[j] = -row[j]
        for row in V:
            row[j] = -row[j]
        Vi[j] = [-x for x in Vi[j]]

    # Alternate row and column Hermite passes until the matrix is diagonal,
    # then restore the divisibility chain.  Each pass reduces against the
    # smallest entry and clears earlier pivot lines, which keeps intermediate
    # entries near determinant size; single-pivot Euclidean sweeps blow up.

    def row_pass():
        r = 0
        for c in range(n):
            if r >= m:
                break
            while True:
                nz = [i for i in range(r, m) if M[i][c]]
                if len(nz) <= 1:
                    break
                nz.sort(key=lambda i: (abs(M[i][c]), i))
                i0 = nz[0]
                for i in nz[1:]:
                    q = M[i][c] // M[i0][c]
                    if q:
                        row_add(i, i0, -q)
            if not nz:
                continue
            if nz[0] != r:
                row_swap(r, nz[0])
            if M[r][c] < 0:
                row_neg(r)
            for i in range(r):
                q = M[i][c] // M[r][c]
                if q:
                    row_add(i, r, -q)
            r += 1

    def col_pass():
        r = 0
        for rr in range(m):
            if r >= n:
                break
            while True:
                nz = [j for j in range(r, n) if M[rr][j]]
                if len(nz) <= 1:
                    break
                nz.sort(key=lambda j: (abs(M[rr][j]), j))
                j0 = nz[0]
                for j in nz[1:]:
                    q = M[rr][j] // M[rr][j0]
                    if q:
                        col_add(j, j0, -q)
            if not nz:
                continue
            if nz[0] != r:
                col_swap(r, nz[0])
            if M[rr][r] < 0:
                col_neg(r)
            for j in range(r):
                q = M[rr][j] // M[rr][r]
                if q:
                    col_add(j, r, -q)
            r += 1

    def off_diagonal():
        return any(M[i][j] for i in range(m) for j in range(n) if i != j)

    rounds = 0
    while True:
        rounds += 1
        if rounds > 10000:
            raise InternalError("smith reduction did not converge")
        row_pass()
        if off_diagonal():
            col_pass()
            if off_diagonal():
                continue
        bad = None
        for t in range(min(m, n) - 1):
            if M[t][t] == 0:
                break
            if M[t + 1][t + 1] % M[t][t]:
                bad = t
                break
        if bad is None:
            break
        # fold the offending invariant into the previous pivot's column so the
        # next row pass replaces it with the gcd of the pair
        col_add(bad, bad + 1, 1)
    return SNFResult(
        IntMatrix(U, m), IntMatrix(M, n), IntMatrix(V, n), IntMatrix(Ui, m), IntMatrix(Vi, n)
    )


def snf_diagonal(a: IntMatrix) -> tuple:
    d = smith_normal_form(a).d
    out = []
    for i in range(min(d.nrows, d.ncols)):
        if d.rows[i][i]:
            out.append(d.rows[i][i])
    return tuple(out)


def hnf_rows(vectors, ncols: int) -> tuple:
    """Canonical row Hermite basis of the lattice spanned by the given rows.

    Pivots positive at increasing columns, entries above a pivot reduced into
    [0, pivot); zero rows dropped.  Unique for a given row lattice.
    """
    rows = [list(v) for v in vectors]
    if any(len(v) != ncols for v in rows):
        raise MalformedInput("row length mismatch in hnf")
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][c]]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: (abs(rows[i][c]), i))
            i0 = nz[0]
            for i in nz[1:]:
                q = rows[i][c] // rows[i0][c]
                if q:
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[i0])]
        if not nz:
            continue
        i0 = nz[0]
        rows[r], rows[i0] = rows[i0], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-a for a in rows[r]]
        p = rows[r][c]
        for i in range(r):
            q = rows[i][c] // p
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return tuple(tuple(row) for row in rows[:r])


def int_kernel(a: IntMatrix) -> tuple:
    """Canonical (Hermite) basis of {x integer : a x = 0}."""
    snf = smith_normal_form(a)
    rho = sum(
        1 for i in range(min(a.nrows, a.ncols)) if snf.d.rows[i][i]
    )
    basis = [snf.v.col(j) for j in range(rho, a.ncols)]
    return hnf_rows(basis, a.ncols)


def int_solve(a: IntMatrix, y) -> tuple | None:
    """One integer solution of a x = y, or None."""
    if len(y) != a.nrows:
        raise MalformedInput("rhs length mismatch")
    snf = smith_normal_form(a)
    uy = snf.u.apply(y)
    z = [0] * a.ncols
    for k in range(a.nrows):
        dk = snf.d.rows[k][k] if k < min(a.nrows, a.ncols) else 0
        if dk:
            if uy[k] % dk:
                return None
            z[k] = uy[k] // dk
        elif uy[k]:
            return None
    return snf.v.apply(tuple(z))


def saturate_columns(a: IntMatrix) -> tuple:
    """Hermite basis of the saturation of the column span of a."""
    snf = smith_normal_form(a)
    rho = sum(1 for i in range(min(a.nrows, a.ncols)) if snf.d.rows[i][i])
    return hnf_rows([snf.u_inv.col(j) for j in range(rho)], a.nrows)


# -- bridging exact K-linear data to integer lattices -------------------------


def rational_int_rows(m: Matrix) -> list:
    """Scale the rational rows of a K-matrix to integer rows (per-row lcm)."""
    out = []
    for r in m.rows:
        if any(x.im != 0 for x in r):
            raise InternalError("expected rational matrix rows")
        den = lcm(*(int(x.re.denominator) for x in r)) if r else 1
        out.append(tuple(int(x.re.numerator) * (den // int(x.re.denominator)) for x in r))
    return out


def k_matrix_int_rows(m: Matrix) -> list:
    """Integer rows equivalent to 'm x = 0' for integer x: real and imaginary
    parts of each row, denominators cleared."""
    out = []
    for r in m.rows:
        for part in ("re", "im"):
            vals = [getattr(x, part) for x in r]
            if all(v == 0 for v in vals):
                continue
            den = lcm(*(int(v.denominator) for v in vals)) if vals else 1
            out.append(tuple(int(v.numerator) * (den // int(v.denominator)) for v in vals))
    return out


def int_kernel_of_k_matrix(m: Matrix) -> tuple:
    """Canonical basis of {x integer : m x = 0} for a K-entry matrix."""
    rows = k_matrix_int_rows(m)
    return int_kernel(IntMatrix(tuple(rows), m.ncols))


def integer_points(s: Subspace) -> tuple:
    """Hermite basis of (rational subspace) ∩ Z^n, for s with rational basis."""
    ann = annihilator(s)
    rows = k_matrix_int_rows(Matrix(ann.basis, s.ambient))
    return int_kernel(IntMatrix(tuple(rows), s.ambient))


# -- groups and maps -----------------------------------------------------------


@dataclass(frozen=True)
class FgAbGroup:
    """Free-first presentation: rank free generators, then one generator per
    invariant factor (each >= 2, dividing the next)."""

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.rank < 0:
            raise ValidationFailure("bad_rank", "negative rank")
        for i, t in enumerate(self.torsion):
            if t < 2:
                raise ValidationFailure("bad_invariant_factor", f"factor {t} < 2")
            if i and self.torsion[i] % self.torsion[i - 1]:
                raise ValidationFailure(
                    "bad_invariant_factor", "factors do not divide in sequence"
                )

    @property
    def ngens(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def is_free(self) -> bool:
        return not self.torsion

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def orders(self) -> tuple:
        return (0,) * self.rank + self.torsion

    def relation_matrix(self) -> IntMatrix:
        cols = []
        for i, t in enumerate(self.torsion):
            col = [0] * self.ngens
            col[self.rank + i] = t
            cols.append(tuple(col))
        return IntMatrix.from_columns(cols, nrows=self.ngens)

    def reduce_element(self, x) -> tuple:
        if len(x) != self.ngens:
            raise MalformedInput("element length mismatch")
        out = list(int(v) for v in x)
        for i, t in enumerate(self.torsion):
            out[self.rank + i] %= t
        return tuple(out)


ZERO_GROUP = FgAbGroup(0)


def free_group(rank: int) -> FgAbGroup:
    return FgAbGroup(rank)


@dataclass(frozen=True)
class LatticeMap:
    """Homomorphism between finitely generated abelian groups.

    The matrix acts on generator coordinates; torsion target rows are kept
    reduced modulo their invariant factor, so equality is syntactic.
    """

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        m = self.matrix
        if m.nrows != self.target.ngens or m.ncols != self.source.ngens:
            raise ValidationFailure(
                "lattice_map_shape",
                f"matrix {m.nrows}x{m.ncols} for map "
                f"{self.source.ngens} -> {self.target.ngens} generators",
            )
        rows = [list(r) for r in m.rows]
        for i, t in enumerate(self.target.torsion):
            ridx = self.target.rank + i
            rows[ridx] = [v % t for v in rows[ridx]]
        object.__setattr__(self, "matrix", IntMatrix(tuple(tuple(r) for r in rows), m.ncols))
        src_orders = self.source.orders()
        for j in range(self.source.ngens):
            d = src_orders[j]
            if not d:
                continue
            for i in range(self.target.ngens):
                val = d * self.matrix.rows[i][j]
                order = 0 if i < self.target.rank else self.target.torsion[i - self.target.rank]
                if (order and val % order) or (not order and val):
                    raise ValidationFailure(
                        "lattice_map_not_well_defined",
                        f"generator {j} of order {d} maps to an element of larger order",
                    )

    @staticmethod
    def identity(g: FgAbGroup) -> "LatticeMap":
        return LatticeMap(g, g, IntMatrix.identity(g.ngens))

    @staticmethod
    def zero(source: FgAbGroup, target: FgAbGroup) -> "LatticeMap":
        return LatticeMap(source, target, IntMatrix.zero(target.ngens, source.ngens))

    def compose(self, other: "LatticeMap") -> "LatticeMap":
        """self after other."""
        if other.target != self.source:
            raise MalformedInput("lattice maps not composable")
        return LatticeMap(other.source, self.target, self.matrix * other.matrix)

    def __add__(self, other: "LatticeMap") -> "LatticeMap":
        if self.source != other.source or self.target != other.target:
            raise MalformedInput("lattice map sum shape mismatch")
        return LatticeMap(self.source, self.target, self.matrix + other.matrix)

    def __neg__(self) -> "LatticeMap":
        return LatticeMap(self.source, self.target, -self.matrix)

    def scale(self, c: int) -> "LatticeMap":
        return LatticeMap(self.source, self.target, self.matrix.scale(c))

    def apply(self, x) -> tuple:
        return self.target.reduce_element(self.matrix.apply(self.source.reduce_element(x)))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def free_block(self) -> IntMatrix:
        """Action on free generators modulo torsion: the map of free quotients."""
        return self.matrix.submatrix(range(self.target.rank), range(self.source.rank))

    def free_block_k(self) -> Matrix:
        return self.free_block().to_k()

    def transpose_free(self) -> "LatticeMap":
        if not (self.source.is_free and self.target.is_free):
            raise NotFree("transpose requires free source and target")
        return LatticeMap(
            FgAbGroup(self.target.rank), FgAbGroup(self.source.rank), self.matrix.transpose()
        )


class KernelData(NamedTuple):
    group: FgAbGroup
    embed: LatticeMap


class CokernelData(NamedTuple):
    group: FgAbGroup
    project: LatticeMap
    lift: IntMatrix


def _regroup_from_snf(k: int, rel: IntMatrix):
    """Split Z^k modulo the columns of rel into free-first canonical generators.

    Returns (group, gen_columns, proj_rows): gen_columns expresses the new
    generators in the old ones; proj_rows gives old coordinates -> new.
    """
    snf = smith_normal_form(rel)
    diag = [snf.d.rows[i][i] for i in range(min(k, rel.ncols))]
    rho = sum(1 for d in diag if d)
    free_idx = list(range(rho, k))
    tors_idx = [i for i in range(rho) if diag[i] > 1]
    group = FgAbGroup(len(free_idx), tuple(diag[i] for i in tors_idx))
    order = free_idx + tors_idx
    gen_cols = IntMatrix.from_columns([snf.u_inv.col(i) for i in order], nrows=k)
    proj_rows = IntMatrix(tuple(snf.u.rows[i] for i in order), k)
    return group, gen_cols, proj_rows


def kernel_lattice_map(f: LatticeMap) -> KernelData:
    na = f.source.ngens
    rel_b = f.target.relation_matrix()
    pairs = int_kernel(int_hstack(f.matrix, rel_b)) if na + rel_b.ncols else ()
    xs = hnf_rows([p[:na] for p in pairs], na)
    k = len(xs)
    gens = IntMatrix.from_columns([tuple(x) for x in xs], nrows=na)
    rel_a = f.source.relation_matrix()
    zw = int_kernel(int_hstack(gens, rel_a)) if k + rel_a.ncols else ()
    rel = IntMatrix.from_columns(
        [tuple(p[:k]) for p in zw], nrows=k
    )
    group, gen_cols, _ = _regroup_from_snf(k, rel)
    embed = LatticeMap(group, f.source, gens * gen_cols)
    return KernelData(group, embed)


def cokernel_lattice_map(f: LatticeMap) -> CokernelData:
    nb = f.target.ngens
    rel = int_hstack(f.matrix, f.target.relation_matrix())
    group, gen_cols, proj_rows = _regroup_from_snf(nb, rel)
    project = LatticeMap(f.target, group, proj_rows)
    return CokernelData(group, project, gen_cols)


def image_generators(f: LatticeMap) -> IntMatrix:
    """Columns generating the image subgroup inside the target."""
    return f.matrix


def in_subgroup(ambient: FgAbGroup, gens: IntMatrix, x) -> bool:
    """Does x (generator coordinates) lie in the subgroup generated by gens?"""
    if gens.nrows != ambient.ngens:
        raise MalformedInput("generator/ambient mismatch")
    m = int_hstack(gens, ambient.relation_matrix())
    return int_solve(m, ambient.reduce_element(x)) is not None


def subgroups_equal(ambient: FgAbGroup, gens_a: IntMatrix, gens_b: IntMatrix) -> bool:
    return all(
        in_subgroup(ambient, gens_b, gens_a.col(j)) for j in range(gens_a.ncols)
    ) and all(in_subgroup(ambient, gens_a, gens_b.col(j)) for j in range(gens_b.ncols))


def factor_through_kernel(ker: KernelData, g: LatticeMap) -> LatticeMap | None:
    """Given g into ker.embed's target with (original f)∘g = 0, find h with
    embed∘h = g."""
    if g.target != ker.embed.target:
        raise MalformedInput("factorization target mismatch")
    e = ker.embed.matrix
    rel = ker.embed.target.relation_matrix()
    m = int_hstack(e, rel)
    cols = []
    for j in range(g.source.ngens):
        sol = int_solve(m, g.matrix.col(j))
        if sol is None:
            return None
        cols.append(sol[: e.ncols])
    h = LatticeMap(g.source, ker.group, IntMatrix.from_columns(cols, nrows=e.ncols))
    if ker.embed.compose(h) != g:
        return None
    return h


def factor_through_cokernel(coker: CokernelData, f: LatticeMap, g: LatticeMap) -> LatticeMap | None:
    """Given g out of f's target with g∘f = 0, find h with h∘project = g."""
    if g.source != f.target:
        raise MalformedInput("factorization source mismatch")
    if not g.compose(f).is_zero():
        return None
    h = LatticeMap(coker.group, g.target, g.matrix * coker.lift)
    if h.compose(coker.project) != g:
        return None
    return h


def solve_in_group(group: FgAbGroup, gens: IntMatrix, y: tuple[int, ...]) -> tuple[int, ...] | None:
    """Express y as an integer combination of gens inside group (mod torsion)."""
    if group.ngens != len(y) or gens.nrows != group.ngens:
        raise MalformedInput("generator matrix does not match the group")
    rel = group.relation_matrix()
    sol = int_solve(int_hstack(gens, rel), y)
    if sol is None:
        return None
    return sol[: gens.ncols]


def lattice_map_inverse(f: LatticeMap) -> LatticeMap | None:
    """A two-sided inverse group map, or None when f is not an isomorphism."""
    cols = []
    for i in range(f.target.ngens):
        e = tuple(1 if k == i else 0 for k in range(f.target.ngens))
        sol = solve_in_group(f.target, f.matrix, e)
        if sol is None:
            return None
        cols.append(sol)
    g = LatticeMap(f.target, f.source, IntMatrix.from_columns(cols, nrows=f.source.ngens))
    if g.compose(f) != LatticeMap.identity(f.source) or f.compose(g) != LatticeMap.identity(f.target):
        return None
    return g


def saturate(sub: LatticeMap) -> LatticeMap:
    """Smallest saturated sublattice containing the image of an embedding.

    Requires a free source and an injective matrix; the result is a canonical
    embedding whose cokernel is free.
    """
    if not sub.source.is_free or not sub.target.is_free:
        raise NotFree("saturation needs free source and target")
    if len(int_kernel(sub.matrix)) != 0:
        raise ValidationFailure("not_injective", "embedding matrix has a kernel")
    basis = saturate_columns(sub.matrix)
    gens = IntMatrix.from_columns([tuple(b) for b in basis], nrows=sub.target.ngens)
    return LatticeMap(FgAbGroup(len(basis)), sub.target, gens)
