"""Formal structures: functors, sequences, hom spaces, abelian operations."""

import pytest

from fhodge.errors import NotSpecial, ValidationFailure
from fhodge.fhs import (
    FHS1Morphism,
    FHS1Object,
    canonical_etale,
    check_exact,
    corestrict_to_special,
    direct_sum,
    etale_part,
    extend_from_special,
    factor_through_fhs_cokernel,
    factor_through_fhs_kernel,
    fhs_cokernel,
    fhs_image,
    fhs_kernel,
    fhs_zero,
    hom_group,
    invert_morphism,
    lift_along_etale,
    linear_to_connected,
    multiplication,
    pi_connected,
    seq_around_v0,
    seq_special,
    special_part,
    special_part_embedding,
)
from fhodge.generator import gen_fhs, gen_fhs_morphism, gen_morphism
from fhodge.linalg import Matrix, Subspace
from fhodge.mhs import tate

from conftest import sc

from test_mhs import elliptic_mhs


def test_profile_flags():
    assert gen_fhs("etale", 0).is_etale()
    assert gen_fhs("connected", 0).is_connected()
    assert gen_fhs("special", 0).is_special()
    for seed in range(6):
        x = gen_fhs("general", seed)
        assert x.v0.dim <= x.v1.dim


def test_validation_guards():
    x = canonical_etale(elliptic_mhs())
    with pytest.raises(ValidationFailure) as exc:
        FHS1Object(
            x.h0_dim, x.het, x.v_dim, Subspace.full(x.v_dim), x.v1,
            x.v0_map, x.vz_map, x.sigma,
        )
    assert exc.value.code == "bad_filtration"
    with pytest.raises(ValidationFailure) as exc:
        FHS1Object(
            x.h0_dim, x.het, x.v_dim, x.v0, x.v1, x.v0_map, x.vz_map,
            Matrix.zero(x.sigma.nrows, x.sigma.ncols),
        )
    assert exc.value.code == "sigma_not_iso"


def test_etale_of_canonical_is_identity():
    h = elliptic_mhs()
    e = canonical_etale(h)
    assert e.is_etale()
    assert etale_part(e) == e


def test_connected_projection_is_identity():
    u = Matrix([[sc(1)], [sc(2)]], 1)
    c = linear_to_connected(u)
    assert c.is_connected()
    assert pi_connected(c) == c


def test_special_part_embedding():
    for seed in range(4):
        x = gen_fhs("special", seed)
        iota = special_part_embedding(x)
        assert iota.source == special_part(x)
        assert iota.target == x
        assert iota.source.is_special() and iota.source.lattice.rank == 0


def test_quotient_sequence_exact():
    for prof in ("general", "special", "etale", "connected"):
        for seed in range(3):
            m1, m2 = seq_around_v0(gen_fhs(prof, seed))
            assert check_exact([m1, m2], short=True)["exact"]


def test_special_sequence_exact_and_guard():
    for seed in range(3):
        x = gen_fhs("special", seed)
        iota, m2 = seq_special(x)
        assert check_exact([iota, m2], short=True)["exact"]
    bad = next(x for s in range(40) if not (x := gen_fhs("general", s)).is_special())
    with pytest.raises(NotSpecial):
        seq_special(bad)


def test_kernel_cokernel_image_universal():
    for seed in range(8):
        phi = gen_fhs_morphism(seed)
        ker, emb = fhs_kernel(phi)
        cok, proj = fhs_cokernel(phi)
        im, into, onto = fhs_image(phi)
        assert phi.compose(emb).is_zero()
        assert proj.compose(phi).is_zero()
        assert into.compose(onto) == phi
        assert check_exact([emb, onto], short=True)["exact"]
        assert check_exact([into, proj], short=True)["exact"]
        # factor a multiple of the embedding through the kernel
        psi = emb.compose(multiplication(ker, 3))
        chi = factor_through_fhs_kernel(emb, psi)
        assert chi is not None and emb.compose(chi) == psi
        rho = multiplication(cok, 2).compose(proj)
        chi2 = factor_through_fhs_cokernel(phi, proj, rho)
        assert chi2 is not None and chi2.compose(proj) == rho


def test_hom_group_weight_gap():
    z0 = canonical_etale(tate(0))
    z1 = canonical_etale(tate(1))
    assert hom_group(z0, z1).is_trivial()
    assert not hom_group(z0, z0).is_trivial()
    assert gen_morphism(z0, z1, 0) is None


def test_hom_group_contains_identity():
    for seed in range(3):
        x = gen_fhs("general", seed)
        hs = hom_group(x, x)
        assert hs.contains(FHS1Morphism.identity(x))


def test_hom_restriction_injective_bijective_when_special():
    # restriction to the etale part never collapses morphisms, and every
    # morphism to an etale target lifts back exactly when the source is special
    for seed in range(6):
        x = gen_fhs("special", seed)
        y = etale_part(gen_fhs("general", seed + 50))
        hs_full = hom_group(x, y)
        hs_res = hom_group(etale_part(x), y)
        assert (hs_full.z_rank, hs_full.k_dim) == (hs_res.z_rank, hs_res.k_dim)
        for psi in hs_res.z_basis[:2]:
            lifted = lift_along_etale(x, psi)
            assert lifted.source == x and lifted.target == y


def test_connected_special_adjunction():
    for seed in range(6):
        y = gen_fhs("special", seed)
        c = pi_connected(y)
        hs = hom_group(c, y)
        for phi in (hs.z_basis + hs.k_basis)[:3]:
            phi0 = corestrict_to_special(phi)
            back = extend_from_special(phi0, y)
            assert back == phi


def test_direct_sum_projections():
    x, y = gen_fhs("etale", 1), gen_fhs("connected", 2)
    xy, inj1, inj2, prj1, prj2 = direct_sum(x, y)
    assert prj1.compose(inj1).is_identity()
    assert prj2.compose(inj2).is_identity()
    assert prj2.compose(inj1).is_zero()
    assert xy.v_dim == x.v_dim + y.v_dim


def test_invert_morphism():
    x = gen_fhs("general", 3)
    assert invert_morphism(FHS1Morphism.identity(x)).is_identity()
    assert invert_morphism(multiplication(x, 2)) is None or x.lattice.rank == 0


def test_zero_object():
    z = fhs_zero()
    assert z.is_etale() and z.is_connected() and z.is_special()
