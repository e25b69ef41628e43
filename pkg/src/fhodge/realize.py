"""Realization functors connecting motives and formal Hodge structures.

t_hodge sends an etale motive to the mixed structure its uniformization
defines on Z^w + Z^r.  t_formal sends any motive to a formal structure,
presented in normalized coordinates: the Lie space of the group part is
rewritten through theta = [additive basis | periods]^(-1) so that the
additive part becomes the leading coordinate block and the comparison
matrix becomes the identity.  arrow goes back: it reads the lattice of
weight <= -1 integer points off the etale component, completes it to a
basis of the ambient lattice through Smith reduction, and evaluates the
lattice map on the two blocks to recover lam and ell.

roundtrip_fm / roundtrip_mf certify both composites on concrete inputs by
returning verified isomorphisms; naturality_check does the same for
morphism squares.
"""

from __future__ import annotations

from .errors import InternalError, MalformedInput, NotEtale, NotFree, ValidationFailure
from .fhs import (
    FHS1Morphism,
    FHS1Object,
    Iso,
    canonical_etale,
    check_exact,
    embed_vector,
    make_iso,
)
from .lattices import (
    IntMatrix,
    LatticeMap,
    free_group,
    int_hstack,
    int_vstack,
    integer_points,
    smith_normal_form,
)
from .linalg import Matrix, Subspace, hstack, quotient_map, std_vector
from .mhs import MHS1, MHSMorphism
from .motives import (
    Motive,
    MotiveMorphism,
    _hodge_from_etale_data,
    etale_motive,
    invert_motive_morphism,
    universal_vector_extension,
)


# ---------------------------------------------------------------------------
# Hodge realization of etale motives


def t_hodge(met: Motive) -> MHS1:
    """The mixed structure on the uniformization lattice of an etale motive."""
    if not met.is_etale():
        raise NotEtale("Hodge realization needs an etale motive")
    return _hodge_from_etale_data(met.lam, met.ell, met.toradd)


def t_hodge_morphism(phi: MotiveMorphism) -> MHSMorphism:
    """Functoriality on lattice generators: [[lam_map, ell_shift], [0, fet]]."""
    h_src = t_hodge(phi.source)
    h_tgt = t_hodge(phi.target)
    w_t, r_t = phi.target.lam_rank, phi.target.fet_rank
    w_s, r_s = phi.source.lam_rank, phi.source.fet_rank
    mat = int_vstack(
        int_hstack(phi.lam_map, phi.ell_shift),
        int_hstack(IntMatrix.zero(r_t, w_s), phi.fet),
    )
    f = LatticeMap(free_group(w_s + r_s), free_group(w_t + r_t), mat)
    try:
        return MHSMorphism(h_src, h_tgt, f)
    except ValidationFailure as exc:
        raise InternalError(f"realized lattice map invalid: {exc.code}") from exc


# ---------------------------------------------------------------------------
# formal realization


def _t_formal_data(m: Motive):
    """(object, theta, theta_inverse) for the normalized formal realization."""
    n, a = m.lie_g_dim, m.add.dim
    p_add, _ = quotient_map(m.add)
    h = _hodge_from_etale_data(
        p_add * m.lam, p_add * m.ell, m.toradd.image_under(p_add)
    )
    v_raw = hstack(m.lam, m.ell)
    _, l_h = quotient_map(h.f0)
    nmat = hstack(m.add.basis_matrix(), v_raw * l_h)
    try:
        theta = nmat.inverse()
    except ZeroDivisionError as exc:
        raise InternalError("uniformization periods are degenerate") from exc
    v0 = Subspace.span(n, [std_vector(n, j) for j in range(a)])
    v1 = m.toradd.image_under(theta)
    try:
        x = FHS1Object(
            m.lie_f0_dim,
            h,
            n,
            v0,
            v1,
            theta * m.u0,
            theta * v_raw,
            Matrix.identity(n - a),
        )
    except ValidationFailure as exc:
        raise InternalError(f"formal realization invalid: {exc.code}") from exc
    return x, theta, nmat


def t_formal(m: Motive) -> FHS1Object:
    """The formal realization, in theta-normalized Lie coordinates."""
    return _t_formal_data(m)[0]


def t_formal_morphism(phi: MotiveMorphism) -> FHS1Morphism:
    """Transport of a motive morphism; exact on every component."""
    x, _, nmat_s = _t_formal_data(phi.source)
    y, theta_t, _ = _t_formal_data(phi.target)
    w_t, r_t = phi.target.lam_rank, phi.target.fet_rank
    w_s, r_s = phi.source.lam_rank, phi.source.fet_rank
    mat = int_vstack(
        int_hstack(phi.lam_map, phi.ell_shift),
        int_hstack(IntMatrix.zero(r_t, w_s), phi.fet),
    )
    fz = LatticeMap(free_group(w_s + r_s), free_group(w_t + r_t), mat)
    try:
        return FHS1Morphism(x, y, phi.f0, fz, theta_t * phi.g * nmat_s)
    except ValidationFailure as exc:
        raise InternalError(f"transported morphism invalid: {exc.code}") from exc


# ---------------------------------------------------------------------------
# the inverse construction


def _arrow_data(x: FHS1Object):
    """(motive, b1, section, mun, mun_inv): lattice-basis bookkeeping for arrow."""
    if not x.is_free():
        raise NotFree("inverse construction needs a torsion-free lattice")
    m = x.het.rank
    pts = integer_points(x.het.w_m1)
    w = len(pts)
    b1 = IntMatrix.from_columns(list(pts), nrows=m)
    snf = smith_normal_form(b1)
    if any(snf.d.rows[j][j] != 1 for j in range(w)):
        raise InternalError("weight lattice is not saturated")
    section = snf.u_inv.submatrix(range(m), range(w, m))
    mun = int_hstack(b1, section)
    blk = int_vstack(
        int_hstack(snf.v, IntMatrix.zero(w, m - w)),
        int_hstack(IntMatrix.zero(m - w, w), IntMatrix.identity(m - w)),
    )
    mun_inv = blk * snf.u
    if mun * mun_inv != IntMatrix.identity(m) or mun_inv * mun != IntMatrix.identity(m):
        raise InternalError("lattice basis completion is not unimodular")
    vz = x.vz_free()
    lam = vz * b1.to_k()
    ell = vz * section.to_k()
    try:
        motive = Motive(
            x.h0_dim, m - w, x.v_dim, x.v0, x.v1, lam, ell, x.v0_map
        )
    except ValidationFailure as exc:
        raise InternalError(f"inverse construction invalid: {exc.code}") from exc
    return motive, b1, section, mun, mun_inv


def arrow(x: FHS1Object) -> Motive:
    """The motive presented by a free formal structure."""
    return _arrow_data(x)[0]


def arrow_morphism(phi: FHS1Morphism) -> MotiveMorphism:
    """Transport of a morphism through the inverse construction."""
    src, _, _, mun_s, _ = _arrow_data(phi.source)
    tgt, _, _, _, mun_inv_t = _arrow_data(phi.target)
    w_t = tgt.lam_rank
    coords = mun_inv_t * phi.fz.matrix * mun_s
    m_t, m_s = coords.nrows, coords.ncols
    w_s = src.lam_rank
    lower_left = coords.submatrix(range(w_t, m_t), range(w_s))
    if not lower_left.is_zero():
        raise InternalError("lattice map does not respect the weight filtration")
    fet = coords.submatrix(range(w_t, m_t), range(w_s, m_s))
    try:
        return MotiveMorphism(src, tgt, phi.f0, fet, phi.g)
    except ValidationFailure as exc:
        raise InternalError(f"inverse-transported morphism invalid: {exc.code}") from exc


# ---------------------------------------------------------------------------
# roundtrips


def roundtrip_fm(x: FHS1Object) -> Iso:
    """Verified isomorphism t_formal(arrow(x)) -> x (forward direction)."""
    motive, _, _, mun, mun_inv = _arrow_data(x)
    back, theta, nmat = _t_formal_data(motive)
    fz_fwd = LatticeMap(back.lattice, x.lattice, mun)
    fz_bwd = LatticeMap(x.lattice, back.lattice, mun_inv)
    s = x.h0_dim
    try:
        fwd = FHS1Morphism(back, x, Matrix.identity(s), fz_fwd, nmat)
        bwd = FHS1Morphism(x, back, Matrix.identity(s), fz_bwd, theta)
    except ValidationFailure as exc:
        raise InternalError(f"roundtrip comparison invalid: {exc.code}") from exc
    return make_iso(fwd, bwd)


def _int_inverse(a: IntMatrix) -> IntMatrix:
    inv = a.to_k().inverse()
    rows = []
    for i in range(inv.nrows):
        row = []
        for j in range(inv.ncols):
            s = inv.entry(i, j)
            if not s.im == 0 or s.re.denominator != 1:
                raise InternalError("matrix is not unimodular over the integers")
            row.append(int(s.re.numerator))
        rows.append(tuple(row))
    return IntMatrix(tuple(rows), inv.ncols)


def roundtrip_mf(m: Motive) -> Iso:
    """Verified isomorphism m -> arrow(t_formal(m)) (forward direction)."""
    x, theta, nmat = _t_formal_data(m)
    back, b1, section, _, _ = _arrow_data(x)
    w, r = m.lam_rank, m.fet_rank
    if b1 != int_vstack(IntMatrix.identity(w), IntMatrix.zero(r, w)):
        raise InternalError("weight lattice of the realization moved")
    s_bot = section.submatrix(range(w, w + r), range(r))
    s_bot_inv = _int_inverse(s_bot)
    s0 = m.lie_f0_dim
    try:
        fwd = MotiveMorphism(m, back, Matrix.identity(s0), s_bot_inv, theta)
        bwd = MotiveMorphism(back, m, Matrix.identity(s0), s_bot, nmat)
    except ValidationFailure as exc:
        raise InternalError(f"roundtrip comparison invalid: {exc.code}") from exc
    return make_iso(fwd, bwd)


def naturality_check(phi, tag: str) -> bool:
    """Do the roundtrip isomorphisms commute with a transported morphism?"""
    if tag == "fm":
        rho_s = roundtrip_fm(phi.source)
        rho_t = roundtrip_fm(phi.target)
        transported = t_formal_morphism(arrow_morphism(phi))
        return phi.compose(rho_s.forward) == rho_t.forward.compose(transported)
    if tag == "mf":
        rho_s = roundtrip_mf(phi.source)
        rho_t = roundtrip_mf(phi.target)
        transported = arrow_morphism(t_formal_morphism(phi))
        return transported.compose(rho_s.forward) == rho_t.forward.compose(phi)
    raise MalformedInput("tag must be 'fm' or 'mf'")


# ---------------------------------------------------------------------------
# the universal-extension square


def periods_square(met: Motive) -> dict:
    """Transcript for the universal additive extension of an etale motive.

    Builds M-sharp, checks that its combined uniformization map is the
    identity, that the quotient square down to the original motive
    commutes and is an isomorphism on the semiabelian part, and that the
    realized extension by the Hodge filtration is short exact.
    """
    checks: dict[str, bool] = {}
    h = t_hodge(met)
    sharp = universal_vector_extension(met)
    checks["univ_ext_valid"] = True
    checks["v_sharp_identity"] = hstack(sharp.lam, sharp.ell).is_identity()
    _, l_h = quotient_map(h.f0)
    psi = hstack(met.lam, met.ell) * l_h
    p_h, _ = quotient_map(h.f0)
    checks["quotient_square_commutes"] = psi * p_h == hstack(met.lam, met.ell)
    try:
        down = MotiveMorphism(
            etale_motive(sharp),
            met,
            Matrix.zero(0, 0),
            IntMatrix.identity(met.fet_rank),
            psi,
        )
        checks["semiabelian_quotient_iso"] = invert_motive_morphism(down) is not None
    except ValidationFailure:
        checks["semiabelian_quotient_iso"] = False
    x_sharp = t_formal(sharp)
    f = h.f0.dim
    ve = embed_vector(f)
    e1 = FHS1Morphism(
        ve,
        x_sharp,
        Matrix.zero(0, 0),
        LatticeMap.zero(ve.lattice, x_sharp.lattice),
        Matrix.from_columns(
            [std_vector(h.rank, j) for j in range(f)], nrows=h.rank
        ),
    )
    et = canonical_etale(h)
    e2 = FHS1Morphism(
        x_sharp,
        et,
        Matrix.zero(0, 0),
        LatticeMap.identity(x_sharp.lattice),
        hstack(Matrix.zero(h.rank - f, f), Matrix.identity(h.rank - f)),
    )
    report = check_exact([e1, e2], short=True)
    checks["extension_exact"] = report["exact"]
    checks["universal_additive_dim"] = (
        sharp.add.dim == met.abelian_genus + met.fet_rank
    )
    return {"checks": checks, "ok": all(checks.values()), "exactness": report}


def check_exact_motives(morphisms, short: bool = True) -> dict:
    """Exactness of a motive sequence, defined through the exact realization."""
    return check_exact([t_formal_morphism(p) for p in morphisms], short=short)


def kernel_motive(phi: MotiveMorphism):
    """(kernel motive, embedding), computed through the exact realization."""
    from .fhs import fhs_kernel

    _, emb = fhs_kernel(t_formal_morphism(phi))
    rho = roundtrip_mf(phi.source)
    emb_m = rho.backward.compose(arrow_morphism(emb))
    return emb_m.source, emb_m


def cokernel_motive(phi: MotiveMorphism):
    """(cokernel motive, projection); fails when the quotient picks up torsion."""
    from .fhs import fhs_cokernel

    _, proj = fhs_cokernel(t_formal_morphism(phi))
    rho = roundtrip_mf(phi.target)
    proj_m = arrow_morphism(proj).compose(rho.forward)
    return proj_m.target, proj_m
