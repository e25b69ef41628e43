"""The duality involution and its compatibilities."""

import pytest

from fhodge.errors import NotFree
from fhodge.fhs import (
    alt_section,
    canonical_etale,
    dual_fhs,
    dual_morphism,
    dual_splitting_iso,
    double_dual_compare,
    linear_to_connected,
    pi_connected,
    seq_special,
    check_exact,
)
from fhodge.generator import gen_fhs, gen_fhs_morphism, gen_mhs, gen_morphism
from fhodge.linalg import Matrix, projection_onto
from fhodge.mhs import ihom_tate

from conftest import sc

from test_mhs import elliptic_mhs

PROFILES = ("general", "special", "etale", "connected")


def test_dual_of_connected_is_transpose():
    u = Matrix([[sc(2), sc(0, 1)], [sc(1), sc(3)]], 2)
    c = linear_to_connected(u)
    d = dual_fhs(c)
    assert d.is_connected()
    assert d.v0_map == u.transpose()


def test_dual_of_etale_matches_twisted_hom():
    for seed in range(6):
        h = gen_mhs(seed, torsion=False)
        assert dual_fhs(canonical_etale(h)) == canonical_etale(ihom_tate(h))


def test_dual_rank_bookkeeping():
    for prof in PROFILES:
        x = gen_fhs(prof, 2)
        y = dual_fhs(x)
        assert y.h0_dim == x.v0.dim
        assert y.v0.dim == x.h0_dim
        assert y.het.rank == x.het.rank


def test_double_dual_comparison_iso():
    for prof in PROFILES:
        for seed in range(4):
            x = gen_fhs(prof, seed)
            iso = double_dual_compare(x)
            assert iso.forward.source == x
            assert iso.forward.target == dual_fhs(dual_fhs(x))
            # the canonical comparison negates the lattice
            assert iso.forward.fz.matrix == -iso.forward.fz.matrix.identity(x.het.rank)
            assert iso.forward.f0.is_identity()


def test_double_dual_naturality():
    for seed in range(8):
        phi = gen_fhs_morphism(seed)
        cx = double_dual_compare(phi.source).forward
        cy = double_dual_compare(phi.target).forward
        dd = dual_morphism(dual_morphism(phi))
        assert cy.compose(phi) == dd.compose(cx)


def test_dual_contravariant():
    for seed in range(8):
        phi = gen_fhs_morphism(seed)
        psi = gen_morphism(phi.target, gen_fhs("general", seed + 17), seed)
        if psi is None:
            continue
        assert dual_morphism(psi.compose(phi)) == dual_morphism(phi).compose(
            dual_morphism(psi)
        )


def test_splitting_independence():
    for prof in PROFILES:
        for seed in range(3):
            x = gen_fhs(prof, seed)
            iso = dual_splitting_iso(x)
            assert iso.forward.source == dual_fhs(x)
            assert iso.forward.target == dual_fhs(x, alt_section(x.het))


def test_alt_section_differs():
    h = elliptic_mhs()
    from fhodge.fhs import _check_section
    assert alt_section(h) != _check_section(h, None)


def test_dual_special_sequence_exact():
    for seed in range(4):
        x = gen_fhs("special", seed)
        iota, m2 = seq_special(x)
        assert check_exact([dual_morphism(m2), dual_morphism(iota)], short=True)[
            "exact"
        ]


def test_dual_needs_free_lattice():
    from fhodge.fhs import FHS1Object
    from fhodge.lattices import FgAbGroup
    from fhodge.linalg import Subspace
    from fhodge.mhs import MHS1

    torsion_h = MHS1(
        FgAbGroup(1, (2,)), Subspace.zero(1), Subspace.zero(1), Subspace.full(1)
    )
    x = FHS1Object(
        0,
        torsion_h,
        0,
        Subspace.zero(0),
        Subspace.zero(0),
        Matrix.zero(0, 0),
        Matrix.zero(0, 2),
        Matrix.zero(0, 0),
    )
    with pytest.raises(NotFree):
        dual_fhs(x)
