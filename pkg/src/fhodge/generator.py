"""Deterministic generators for randomized verification runs.

Objects are built from templates that are valid by construction in a
standard coordinate frame (additive block first, then torus directions,
then abelian pairs alpha*e, beta*i*e), then scrambled: an invertible
change of Lie coordinates, a unimodular remix of the lattice basis, and a
lattice shift of the etale logarithm.  Every generator is a pure function
of (profile, seed), so corpora are reproducible across runs.

Scrambles preserve validity: a coordinate change transports every
constraint, a lattice remix only rebases Z^w, and logarithm shifts move
within one isomorphism class by design.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import MalformedInput
from .fhs import (
    FHS1Morphism,
    FHS1Object,
    etale_part,
    hom_group,
    linear_to_connected,
    pi_connected,
    special_part,
)
from .lattices import FgAbGroup, IntMatrix
from .linalg import Matrix, Subspace, quotient_map, std_vector, vec_add, vec_scale
from .mhs import MHS1
from .motives import Motive, _hodge_from_etale_data, connected_motive
from .scalars import ONE, Scalar, rat


@dataclass(frozen=True)
class GenConfig:
    """Size bounds: each structural part gets dimension <= max_part and
    scalar entries with numerator/denominator height <= max_height."""

    max_part: int = 2
    max_height: int = 4


DEFAULT = GenConfig()

FHS_PROFILES = ("etale", "connected", "special", "general")
MOTIVE_PROFILES = ("etale", "connected", "special", "general", "elliptic")


def _rng(kind: str, seed: int) -> random.Random:
    return random.Random(f"{kind}:{seed}")


def _rand_rat(rng, height: int, nonzero: bool = False):
    while True:
        q = rat(rng.randint(-height, height), rng.randint(1, height))
        if q != 0 or not nonzero:
            return q


def _rand_scalar(rng, height: int) -> Scalar:
    return Scalar(_rand_rat(rng, height), _rand_rat(rng, height))


def _rand_matrix(rng, nrows: int, ncols: int, height: int) -> Matrix:
    return Matrix(
        tuple(
            tuple(_rand_scalar(rng, height) for _ in range(ncols))
            for _ in range(nrows)
        ),
        ncols,
    )


def _rand_invertible(rng, n: int, height: int) -> Matrix:
    """Unit-triangular factors times a permutation: invertible, modest height."""
    lower = [[Scalar() for _ in range(n)] for _ in range(n)]
    upper = [[Scalar() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        lower[i][i] = ONE
        upper[i][i] = ONE
        for j in range(i):
            if rng.random() < 0.5:
                lower[i][j] = _rand_scalar(rng, height)
            if rng.random() < 0.5:
                upper[j][i] = _rand_scalar(rng, height)
    perm = list(range(n))
    rng.shuffle(perm)
    pmat = Matrix.from_columns([std_vector(n, j) for j in perm], nrows=n)
    lmat = Matrix(tuple(tuple(r) for r in lower), n)
    umat = Matrix(tuple(tuple(r) for r in upper), n)
    return pmat * lmat * umat


def _rand_unimodular(rng, n: int) -> IntMatrix:
    lower = [[0] * n for _ in range(n)]
    upper = [[0] * n for _ in range(n)]
    for i in range(n):
        lower[i][i] = 1
        upper[i][i] = 1
        for j in range(i):
            if rng.random() < 0.5:
                lower[i][j] = rng.randint(-2, 2)
            if rng.random() < 0.5:
                upper[j][i] = rng.randint(-2, 2)
    perm = list(range(n))
    rng.shuffle(perm)
    pmat = IntMatrix.from_columns(
        [tuple(1 if k == j else 0 for k in range(n)) for j in perm], nrows=n
    )
    return pmat * IntMatrix(tuple(tuple(r) for r in lower), n) * IntMatrix(
        tuple(tuple(r) for r in upper), n
    )


def _std_polarization(genus: int) -> IntMatrix:
    rows = [[0] * (2 * genus) for _ in range(2 * genus)]
    for k in range(genus):
        rows[2 * k][2 * k + 1] = 1
        rows[2 * k + 1][2 * k] = -1
    return IntMatrix(tuple(tuple(r) for r in rows), 2 * genus)


def _motive_template(rng, cfg: GenConfig, profile: str) -> Motive:
    m = cfg.max_part
    hgt = cfg.max_height
    if profile == "connected":
        n = rng.randint(0, m)
        s = rng.randint(0, m)
        return connected_motive(_rand_matrix(rng, n, s, hgt))
    if profile == "elliptic":
        a, t, g = 0, 0, 1
        r = rng.randint(0, 1)
        s = 0
    else:
        a = rng.randint(0, m)
        t = rng.randint(0, m)
        g = rng.randint(0, m)
        r = rng.randint(0, m)
        s = rng.randint(0, m)
        if profile == "etale":
            a, s = 0, 0
    n = a + t + g
    w = t + 2 * g
    add = Subspace.span(n, [std_vector(n, j) for j in range(a)])
    toradd = Subspace.span(n, [std_vector(n, j) for j in range(a + t)])
    lam_cols = []
    for j in range(t):
        col = vec_scale(_kint(rng.randint(1, 3)), std_vector(n, a + j))
        for k in range(a):
            col = vec_add(col, vec_scale(_rand_scalar(rng, hgt), std_vector(n, k)))
        lam_cols.append(col)
    for k in range(g):
        alpha = _kint(rng.randint(1, hgt))
        beta = Scalar(rat(0, 1), rat(rng.randint(1, hgt), 1))
        base = std_vector(n, a + t + k)
        ca, cb = vec_scale(alpha, base), vec_scale(beta, base)
        for j in range(a + t):
            if rng.random() < 0.4:
                ca = vec_add(ca, vec_scale(_rand_scalar(rng, hgt), std_vector(n, j)))
            if rng.random() < 0.4:
                cb = vec_add(cb, vec_scale(_rand_scalar(rng, hgt), std_vector(n, j)))
        lam_cols.extend([ca, cb])
    lam = Matrix.from_columns(lam_cols, nrows=n)
    ell = _rand_matrix(rng, n, r, hgt)
    u0 = _rand_matrix(rng, n, s, hgt)
    if profile in ("special",):
        rows = [
            tuple(u0.entry(i, j) if i < a else Scalar() for j in range(s))
            for i in range(n)
        ]
        u0 = Matrix(tuple(rows), s)
    pol = None
    if profile == "elliptic" or (t == 0 and rng.random() < 0.5):
        pol = _std_polarization(g)
    return Motive(s, r, n, add, toradd, lam, ell, u0, pol)


def _kint(c: int) -> Scalar:
    return Scalar(rat(c, 1), rat(0, 1))


def gen_motive(profile: str, seed: int, cfg: GenConfig = DEFAULT) -> Motive:
    """A valid motive of the requested profile, deterministic in the seed."""
    if profile not in MOTIVE_PROFILES:
        raise MalformedInput(f"unknown motive profile {profile!r}")
    rng = _rng(f"motive-{profile}", seed)
    m = _motive_template(rng, cfg, profile)
    tmat = _rand_invertible(rng, m.lie_g_dim, 2)
    lam = tmat * m.lam
    if m.polarization is None and m.lam_rank > 0 and rng.random() < 0.5:
        lam = lam * _rand_unimodular(rng, m.lam_rank).to_k()
    ell = tmat * m.ell
    if m.lam_rank and m.fet_rank and rng.random() < 0.5:
        shift = IntMatrix(
            tuple(
                tuple(rng.randint(-2, 2) for _ in range(m.fet_rank))
                for _ in range(m.lam_rank)
            ),
            m.fet_rank,
        )
        ell = ell + lam * shift.to_k()
    return Motive(
        m.lie_f0_dim,
        m.fet_rank,
        m.lie_g_dim,
        m.add.image_under(tmat),
        m.toradd.image_under(tmat),
        lam,
        ell,
        tmat * m.u0,
        m.polarization,
    )


def transport_vector_coords(x: FHS1Object, tmat: Matrix) -> FHS1Object:
    """The isomorphic object after an invertible change of V-coordinates."""
    v0 = x.v0.image_under(tmat)
    v1 = x.v1.image_under(tmat)
    _, l_old = quotient_map(x.v0)
    p_new, _ = quotient_map(v0)
    return FHS1Object(
        x.h0_dim,
        x.het,
        x.v_dim,
        v0,
        v1,
        tmat * x.v0_map,
        tmat * x.vz_map,
        (p_new * tmat * l_old) * x.sigma,
    )


def gen_fhs(profile: str, seed: int, cfg: GenConfig = DEFAULT) -> FHS1Object:
    """A valid free formal structure: realize a motive, then move coordinates."""
    if profile not in FHS_PROFILES:
        raise MalformedInput(f"unknown structure profile {profile!r}")
    from .realize import t_formal

    rng = _rng(f"fhs-{profile}", seed)
    if profile == "connected":
        v = rng.randint(0, cfg.max_part)
        s = rng.randint(0, cfg.max_part)
        x = linear_to_connected(_rand_matrix(rng, v, s, cfg.max_height))
    else:
        x = t_formal(gen_motive(profile, seed, cfg))
    tmat = _rand_invertible(rng, x.v_dim, 2)
    return transport_vector_coords(x, tmat)


def gen_mhs(seed: int, cfg: GenConfig = DEFAULT, torsion: bool = True) -> MHS1:
    """A valid mixed structure; the lattice may pick up torsion factors."""
    rng = _rng("mhs", seed)
    met = gen_motive("etale", seed, cfg)
    h = _hodge_from_etale_data(met.lam, met.ell, met.toradd)
    if not torsion or rng.random() < 0.5:
        return h
    k = rng.randint(1, 2)
    tors = []
    d = rng.choice([2, 3, 4])
    for _ in range(k):
        tors.append(d)
        d = d * rng.choice([1, 2])
    return MHS1(FgAbGroup(h.rank, tuple(tors)), h.w_m2, h.w_m1, h.f0, h.tate_tag)


def gen_morphism(x: FHS1Object, y: FHS1Object, seed: int) -> FHS1Morphism | None:
    """Sample from Hom(x, y) with bounded coefficients; None when Hom = 0."""
    rng = _rng("morphism", seed)
    hs = hom_group(x, y)
    if hs.is_trivial():
        return None
    z = [rng.randint(-2, 2) for _ in range(hs.z_rank)]
    k = [_rand_scalar(rng, 2) for _ in range(hs.k_dim)]
    return hs.combine(z, k)


def gen_fhs_morphism(seed: int, cfg: GenConfig = GenConfig(max_part=1)) -> FHS1Morphism:
    """A morphism sampled from the integral Hom of a related object pair."""
    rng = _rng("fhs-mor", seed)
    profile = FHS_PROFILES[rng.randrange(len(FHS_PROFILES))]
    x = gen_fhs(profile, rng.randint(0, 10**6), cfg)
    pool = [x, etale_part(x), pi_connected(x)]
    if x.is_special():
        pool.append(special_part(x))
    src = pool[rng.randrange(len(pool))]
    tgt = pool[rng.randrange(len(pool))]
    hs = hom_group(src, tgt)
    z = [rng.randint(-2, 2) for _ in range(hs.z_rank)]
    k = [_rand_scalar(rng, 2) for _ in range(hs.k_dim)]
    return hs.combine(z, k)


def gen(kind: str, seed: int, cfg: GenConfig = DEFAULT):
    """Profile dispatcher for the command line: bare names are structure
    profiles, motive-* and mhs-* select the other categories."""
    if kind in FHS_PROFILES:
        return gen_fhs(kind, seed, cfg)
    if kind.startswith("motive-") and kind[7:] in MOTIVE_PROFILES:
        return gen_motive(kind[7:], seed, cfg)
    if kind == "mhs-free":
        return gen_mhs(seed, cfg, torsion=False)
    if kind == "mhs-torsion":
        return gen_mhs(seed, cfg, torsion=True)
    if kind == "morphism":
        return gen_fhs_morphism(seed)
    raise MalformedInput(f"unknown profile {kind!r}")
