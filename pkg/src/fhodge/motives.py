"""Motives of level <= 1 with a formal infinitesimal part, linearly presented.

A motive is stored through the exponential uniformization of its group
part: lieG = K^n with two marked subspaces add <= toradd (the additive
Lie part and the Lie of torus x additive), a lattice embedding
lam : Z^w -> lieG presenting the semiabelian quotient, a chosen logarithm
ell : Z^r -> lieG for the etale formal part, and u0 : K^s -> lieG for the
infinitesimal formal part.  Validity pins the shape: lam is Z-injective
and misses add rationally, exactly t = dim toradd - dim add lattice
directions fall into toradd and span it over add, and the remaining 2g
directions fill the abelian quotient over the reals.

Equality of motives is literal on the presentation; shifting ell by a
lattice vector gives an isomorphic motive, witnessed by ell_shift_iso.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    InternalError,
    MalformedInput,
    NotAlternatingError,
    NotComposable,
    NotEtale,
    NotSpecial,
    ValidationFailure,
)
from .lattices import (
    IntMatrix,
    LatticeMap,
    free_group,
    int_kernel_of_k_matrix,
    lattice_map_inverse,
)
from .linalg import (
    Matrix,
    Subspace,
    hstack,
    kernel,
    projection_onto,
    quotient_map,
    realify_k_subspace,
    realify_span,
    realify_vector,
    solve,
    std_vector,
)
from .fhs import make_iso
from .mhs import MHS1, check_polarization
from .scalars import Scalar, rat


def _as_int(s) -> int | None:
    if not s.im == 0:
        return None
    if s.re.denominator != 1:
        return None
    return int(s.re.numerator)


def _int_column_coords(cols: Matrix, targets: Matrix) -> IntMatrix | None:
    """Integer matrices a with cols * a = targets, solved over the rationals.

    cols has Z-independent columns, so the realified rational system has at
    most one solution per target column; None when any solution fails to
    exist or to be integral.
    """
    rmat = Matrix.from_columns(
        [realify_vector(c) for c in cols.columns()], nrows=2 * cols.nrows
    )
    out = []
    for y in targets.columns():
        sol = solve(rmat, realify_vector(y))
        if sol is None:
            return None
        ints = [_as_int(x) for x in sol]
        if any(v is None for v in ints):
            return None
        out.append(tuple(ints))
    return IntMatrix.from_columns(out, nrows=cols.ncols)


@dataclass(frozen=True)
class Motive:
    """lie_f0_dim = s, fet_rank = r, lie_g_dim = n plus uniformization data."""

    lie_f0_dim: int
    fet_rank: int
    lie_g_dim: int
    add: Subspace
    toradd: Subspace
    lam: Matrix
    ell: Matrix
    u0: Matrix
    polarization: IntMatrix | None = field(default=None, compare=False)

    def __post_init__(self):
        s, r, n = self.lie_f0_dim, self.fet_rank, self.lie_g_dim
        if s < 0 or r < 0 or n < 0:
            raise MalformedInput("negative dimension")
        if self.add.ambient != n or self.toradd.ambient != n:
            raise MalformedInput("Lie filtration ambient does not match lie_g_dim")
        if self.lam.nrows != n:
            raise MalformedInput("lambda has wrong height")
        if self.ell.nrows != n or self.ell.ncols != r:
            raise MalformedInput("ell has wrong shape")
        if self.u0.nrows != n or self.u0.ncols != s:
            raise MalformedInput("u0 has wrong shape")
        if not self.toradd.contains_subspace(self.add):
            raise ValidationFailure("bad_filtration", "add is not contained in toradd")
        w = self.lam.ncols
        lam_real = realify_span(list(self.lam.columns()), n)
        if lam_real.dim != w:
            raise ValidationFailure(
                "lattice_not_injective", "lambda columns are Z-dependent"
            )
        if not lam_real.intersect(realify_k_subspace(self.add)).is_zero():
            raise ValidationFailure(
                "lattice_meets_additive", "lattice rationally meets the additive part"
            )
        t = self.toradd.dim - self.add.dim
        p_tor, _ = quotient_map(self.toradd)
        tor_pts = int_kernel_of_k_matrix(p_tor * self.lam)
        if len(tor_pts) != t:
            raise ValidationFailure(
                "torus_rank_mismatch",
                f"lattice meets toradd in rank {len(tor_pts)}, expected {t}",
            )
        if tor_pts:
            tor_vecs = self.lam * IntMatrix.from_columns(tor_pts, nrows=w).to_k()
            tor_span = Subspace.from_columns(tor_vecs)
        else:
            tor_span = Subspace.zero(n)
        if tor_span.add(self.add) != self.toradd:
            raise ValidationFailure(
                "torus_not_spanning", "torus directions do not span toradd over add"
            )
        q = n - self.toradd.dim
        ab_cols = p_tor * self.lam
        if w - t != 2 * q or realify_span(list(ab_cols.columns()), q).dim != w - t:
            raise ValidationFailure(
                "abelian_part_deficient",
                "abelian block is not a full lattice in its quotient",
            )
        if self.polarization is not None:
            p_add, _ = quotient_map(self.add)
            h = _hodge_from_etale_data(
                p_add * self.lam, p_add * self.ell, self.toradd.image_under(p_add)
            )
            try:
                ok = check_polarization(h, self.polarization)
            except (ValidationFailure, NotAlternatingError) as exc:
                raise ValidationFailure("polarization_rejected", str(exc)) from exc
            if not ok:
                raise ValidationFailure(
                    "polarization_rejected", "pairing is not a polarization"
                )

    @property
    def lam_rank(self) -> int:
        return self.lam.ncols

    @property
    def additive_dim(self) -> int:
        return self.add.dim

    @property
    def torus_rank(self) -> int:
        return self.toradd.dim - self.add.dim

    @property
    def abelian_genus(self) -> int:
        return self.lie_g_dim - self.toradd.dim

    def ranks(self) -> dict:
        return {
            "lie_f0_dim": self.lie_f0_dim,
            "etale_rank": self.fet_rank,
            "additive_dim": self.additive_dim,
            "torus_rank": self.torus_rank,
            "abelian_genus": self.abelian_genus,
            "lie_g_dim": self.lie_g_dim,
            "lattice_rank": self.lam_rank,
        }

    def is_etale(self) -> bool:
        return self.lie_f0_dim == 0 and self.add.is_zero()

    def is_connected(self) -> bool:
        return (
            self.add.is_full()
            and self.toradd.is_full()
            and self.lam.ncols == 0
            and self.fet_rank == 0
        )

    def is_special(self) -> bool:
        return all(self.add.contains(c) for c in self.u0.columns())


def motive_zero() -> Motive:
    z = Subspace.zero(0)
    return Motive(0, 0, 0, z, z, Matrix.zero(0, 0), Matrix.zero(0, 0), Matrix.zero(0, 0))


def formal_only(s: int) -> Motive:
    """The motive [F0 -> 0] with an s-dimensional infinitesimal part."""
    z = Subspace.zero(0)
    return Motive(s, 0, 0, z, z, Matrix.zero(0, 0), Matrix.zero(0, 0), Matrix.zero(0, s))


def connected_motive(u0: Matrix) -> Motive:
    """[F0 -> vector group]: add = toradd = lieG, no lattice data."""
    n, s = u0.nrows, u0.ncols
    return Motive(
        s,
        0,
        n,
        Subspace.full(n),
        Subspace.full(n),
        Matrix.zero(n, 0),
        Matrix.zero(n, 0),
        u0,
    )


def _hodge_from_etale_data(lam: Matrix, ell: Matrix, toradd: Subspace) -> MHS1:
    """The mixed structure on Z^w + Z^r defined by quotient uniformization data."""
    w, r = lam.ncols, ell.ncols
    m = w + r
    w_m1 = Subspace.span(m, [std_vector(m, j) for j in range(w)])
    p_tor, _ = quotient_map(toradd)
    tor_pts = int_kernel_of_k_matrix(p_tor * lam)
    emb = [
        tuple(_kint(c) for c in z) + tuple(_kint(0) for _ in range(r))
        for z in tor_pts
    ]
    w_m2 = Subspace.span(m, emb)
    f0 = kernel(hstack(lam, ell))
    try:
        return MHS1(free_group(m), w_m2, w_m1, f0, 0)
    except ValidationFailure as exc:
        raise InternalError(f"realized mixed structure invalid: {exc.code}") from exc


def _kint(c: int) -> Scalar:
    return Scalar(rat(int(c), 1), rat(0, 1))


def etale_motive(m: Motive) -> Motive:
    """The etale quotient: divide lieG by the additive part, drop the F0 part."""
    p_add, _ = quotient_map(m.add)
    n = m.lie_g_dim - m.add.dim
    try:
        return Motive(
            0,
            m.fet_rank,
            n,
            Subspace.zero(n),
            m.toradd.image_under(p_add),
            p_add * m.lam,
            p_add * m.ell,
            Matrix.zero(n, 0),
            m.polarization,
        )
    except ValidationFailure as exc:
        raise InternalError(f"etale quotient invalid: {exc.code}") from exc


def connected_part(m: Motive) -> Motive:
    """The connected subobject [F0 -> additive part]; needs m special."""
    if not m.is_special():
        raise NotSpecial("u0 does not land in the additive part")
    pi = projection_onto(m.add)
    return connected_motive(pi * m.u0)


def quotient_by_additive(m: Motive) -> Motive:
    """Divide lieG by the additive part but keep the formal F0 part."""
    p_add, _ = quotient_map(m.add)
    n = m.lie_g_dim - m.add.dim
    try:
        return Motive(
            m.lie_f0_dim,
            m.fet_rank,
            n,
            Subspace.zero(n),
            m.toradd.image_under(p_add),
            p_add * m.lam,
            p_add * m.ell,
            p_add * m.u0,
            m.polarization,
        )
    except ValidationFailure as exc:
        raise InternalError(f"additive quotient invalid: {exc.code}") from exc


@dataclass(frozen=True)
class MotiveMorphism:
    """(f0 on F0 parts, fet on etale formal lattices, g on lieG).

    The induced integer map on the uniformization lattices and the integer
    shift absorbing the logarithm choice are derived during validation.
    """

    source: Motive
    target: Motive
    f0: Matrix
    fet: IntMatrix
    g: Matrix
    lam_map: IntMatrix = field(init=False, compare=False, repr=False)
    ell_shift: IntMatrix = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        x, y = self.source, self.target
        if self.f0.nrows != y.lie_f0_dim or self.f0.ncols != x.lie_f0_dim:
            raise MalformedInput("f0 has wrong shape")
        if self.fet.nrows != y.fet_rank or self.fet.ncols != x.fet_rank:
            raise MalformedInput("fet has wrong shape")
        if self.g.nrows != y.lie_g_dim or self.g.ncols != x.lie_g_dim:
            raise MalformedInput("g has wrong shape")
        a = _int_column_coords(y.lam, self.g * x.lam)
        if a is None:
            raise ValidationFailure(
                "lattice_not_carried", "g does not map the lattice into the target lattice"
            )
        shift = self.g * x.ell - y.ell * self.fet.to_k()
        b = _int_column_coords(y.lam, shift)
        if b is None:
            raise ValidationFailure(
                "etale_not_carried",
                "g moves the etale logarithm outside a lattice shift",
            )
        if not all(y.add.contains(self.g.apply(v)) for v in x.add.basis):
            raise ValidationFailure("filtration_not_carried", "g(add) exceeds add")
        if not all(y.toradd.contains(self.g.apply(v)) for v in x.toradd.basis):
            raise ValidationFailure("filtration_not_carried", "g(toradd) exceeds toradd")
        if self.g * x.u0 != y.u0 * self.f0:
            raise ValidationFailure("formal_square_broken", "u0 square does not commute")
        object.__setattr__(self, "lam_map", a)
        object.__setattr__(self, "ell_shift", b)

    @staticmethod
    def identity(m: Motive) -> "MotiveMorphism":
        return MotiveMorphism(
            m,
            m,
            Matrix.identity(m.lie_f0_dim),
            IntMatrix.identity(m.fet_rank),
            Matrix.identity(m.lie_g_dim),
        )

    @staticmethod
    def zero(x: Motive, y: Motive) -> "MotiveMorphism":
        return MotiveMorphism(
            x,
            y,
            Matrix.zero(y.lie_f0_dim, x.lie_f0_dim),
            IntMatrix.zero(y.fet_rank, x.fet_rank),
            Matrix.zero(y.lie_g_dim, x.lie_g_dim),
        )

    def compose(self, other: "MotiveMorphism") -> "MotiveMorphism":
        """self after other."""
        if other.target != self.source:
            raise NotComposable("morphism endpoints do not match")
        return MotiveMorphism(
            other.source,
            self.target,
            self.f0 * other.f0,
            self.fet * other.fet,
            self.g * other.g,
        )

    def is_zero(self) -> bool:
        return self.f0.is_zero() and self.fet.is_zero() and self.g.is_zero()

    def is_identity(self) -> bool:
        return (
            self.source == self.target
            and self.f0.is_identity()
            and self.fet == IntMatrix.identity(self.fet.nrows)
            and self.g.is_identity()
        )


def invert_motive_morphism(phi: MotiveMorphism) -> MotiveMorphism | None:
    if phi.f0.nrows != phi.f0.ncols or phi.g.nrows != phi.g.ncols:
        return None
    if phi.fet.nrows != phi.fet.ncols:
        return None
    fet_inv = lattice_map_inverse(
        LatticeMap(free_group(phi.fet.ncols), free_group(phi.fet.nrows), phi.fet)
    )
    if fet_inv is None:
        return None
    try:
        return MotiveMorphism(
            phi.target,
            phi.source,
            phi.f0.inverse(),
            fet_inv.matrix,
            phi.g.inverse(),
        )
    except (ZeroDivisionError, ValidationFailure):
        return None


def ell_shift_iso(m: Motive, p: IntMatrix):
    """Witness that replacing ell by ell + lam * p changes nothing.

    Returns (shifted motive, verified Iso with identity components); the
    lattice shift is absorbed into the derived ell_shift of the morphism.
    """
    if p.nrows != m.lam_rank or p.ncols != m.fet_rank:
        raise MalformedInput("shift matrix has wrong shape")
    shifted = Motive(
        m.lie_f0_dim,
        m.fet_rank,
        m.lie_g_dim,
        m.add,
        m.toradd,
        m.lam,
        m.ell + m.lam * p.to_k(),
        m.u0,
        m.polarization,
    )
    fwd = MotiveMorphism(
        m,
        shifted,
        Matrix.identity(m.lie_f0_dim),
        IntMatrix.identity(m.fet_rank),
        Matrix.identity(m.lie_g_dim),
    )
    bwd = MotiveMorphism(
        shifted,
        m,
        Matrix.identity(m.lie_f0_dim),
        IntMatrix.identity(m.fet_rank),
        Matrix.identity(m.lie_g_dim),
    )
    return shifted, make_iso(fwd, bwd)


def seq_special_motive(m: Motive):
    """0 -> M0 -> M -> M_et -> 0 for special m, exactness certified by transport."""
    m0 = connected_part(m)
    met = etale_motive(m)
    p_add, _ = quotient_map(m.add)
    m1 = MotiveMorphism(
        m0,
        m,
        Matrix.identity(m.lie_f0_dim),
        IntMatrix.zero(m.fet_rank, 0),
        m.add.basis_matrix(),
    )
    m2 = MotiveMorphism(
        m,
        met,
        Matrix.zero(0, m.lie_f0_dim),
        IntMatrix.identity(m.fet_rank),
        p_add,
    )
    from .realize import check_exact_motives

    report = check_exact_motives([m1, m2], short=True)
    if not report["exact"]:
        raise InternalError("special motive sequence failed transported exactness")
    return m1, m2


def seq_formal_quotient(m: Motive):
    """0 -> M_et -> M/(additive) -> [F0 -> 0] -> 0, certified by transport."""
    met = etale_motive(m)
    mq = quotient_by_additive(m)
    tail = formal_only(m.lie_f0_dim)
    nq = mq.lie_g_dim
    m1 = MotiveMorphism(
        met,
        mq,
        Matrix.zero(m.lie_f0_dim, 0),
        IntMatrix.identity(m.fet_rank),
        Matrix.identity(nq),
    )
    m2 = MotiveMorphism(
        mq,
        tail,
        Matrix.identity(m.lie_f0_dim),
        IntMatrix.zero(0, m.fet_rank),
        Matrix.zero(0, nq),
    )
    from .realize import check_exact_motives

    report = check_exact_motives([m1, m2], short=True)
    if not report["exact"]:
        raise InternalError("formal quotient sequence failed transported exactness")
    return m1, m2


def universal_vector_extension(met: Motive) -> Motive:
    """The universal additive extension of an etale motive.

    The group Lie algebra becomes the full realization H_K; the lattice
    sits as the first coordinate block, the etale logarithm as the second,
    so the combined uniformization map is the identity matrix.
    """
    if not met.is_etale():
        raise NotEtale("universal vector extension needs an etale motive")
    h = _hodge_from_etale_data(met.lam, met.ell, met.toradd)
    m = h.rank
    w = met.lam_rank
    lam = Matrix.from_columns([std_vector(m, j) for j in range(w)], nrows=m)
    ell = Matrix.from_columns([std_vector(m, w + j) for j in range(met.fet_rank)], nrows=m)
    try:
        return Motive(
            0,
            met.fet_rank,
            m,
            h.f0,
            h.f0.add(h.w_m2),
            lam,
            ell,
            Matrix.zero(m, 0),
        )
    except ValidationFailure as exc:
        raise InternalError(f"universal extension invalid: {exc.code}") from exc


def cartier_dual(m: Motive) -> Motive:
    """Duality by transport through the formal realization."""
    from .realize import arrow, t_formal
    from .fhs import dual_fhs

    return arrow(dual_fhs(t_formal(m)))


def cartier_dual_morphism(phi: MotiveMorphism) -> MotiveMorphism:
    from .realize import arrow_morphism, t_formal_morphism
    from .fhs import dual_morphism

    return arrow_morphism(dual_morphism(t_formal_morphism(phi)))


def cartier_double_dual(m: Motive):
    """A verified isomorphism from m to its double Cartier dual."""
    from .realize import arrow_morphism, roundtrip_fm, roundtrip_mf, t_formal
    from .fhs import double_dual_compare, dual_fhs, dual_morphism

    a = t_formal(m)
    y = dual_fhs(a)
    rho = roundtrip_fm(y)  # forward: t_formal(arrow(y)) -> y
    eta = double_dual_compare(a)  # forward: a -> dual(y)
    dd_fwd = dual_morphism(rho.forward).compose(eta.forward)
    dd_bwd = eta.backward.compose(dual_morphism(rho.backward))
    base = roundtrip_mf(m)  # forward: m -> arrow(t_formal(m))
    fwd = arrow_morphism(dd_fwd).compose(base.forward)
    bwd = base.backward.compose(arrow_morphism(dd_bwd))
    return make_iso(fwd, bwd)


def hom_motive(x: Motive, y: Motive):
    """Hom(x, y) transported from the formal realization.

    Returns (z_basis, k_basis) of MotiveMorphisms mirroring fhs.HomSpace;
    each basis morphism is pulled back through the roundtrip isomorphisms.
    """
    from .realize import arrow_morphism, roundtrip_mf, t_formal
    from .fhs import hom_group

    hs = hom_group(t_formal(x), t_formal(y))
    rx = roundtrip_mf(x)
    ry = roundtrip_mf(y)

    def pull(psi):
        return ry.backward.compose(arrow_morphism(psi)).compose(rx.forward)

    zb = tuple(pull(psi) for psi in hs.z_basis)
    kb = tuple(pull(psi) for psi in hs.k_basis)
    return zb, kb
