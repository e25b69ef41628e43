"""Linear presentations of formal one-motives, parts, duality, extensions."""

import pytest

from fhodge.errors import NotEtale, NotSpecial, ValidationFailure
from fhodge.lattices import IntMatrix
from fhodge.linalg import Matrix, Subspace
from fhodge.motives import (
    Motive,
    cartier_double_dual,
    cartier_dual,
    connected_motive,
    connected_part,
    etale_motive,
    formal_only,
    hom_motive,
    motive_zero,
    quotient_by_additive,
    seq_formal_quotient,
    seq_special_motive,
    universal_vector_extension,
)
from fhodge.generator import gen_motive

from conftest import sc


def kummer_motive():
    """Rank one over the torus: lattice generator mapped to the point 1/2."""
    return Motive(
        0,
        1,
        1,
        Subspace.zero(1),
        Subspace.full(1),
        Matrix([[sc(1)]], 1),
        Matrix([[sc(1, 0, 2)]], 1),
        Matrix.zero(1, 0),
    )


def elliptic_motive():
    """Genus one with period lattice Z + Zi and no extra parts."""
    return Motive(
        0,
        0,
        1,
        Subspace.zero(1),
        Subspace.zero(1),
        Matrix([[sc(1), sc(0, 1)]], 2),
        Matrix.zero(1, 0),
        Matrix.zero(1, 0),
    )


def test_kummer_shape():
    m = kummer_motive()
    r = m.ranks()
    assert r["etale_rank"] == 1 and r["torus_rank"] == 1
    assert r["abelian_genus"] == 0 and r["additive_dim"] == 0
    assert m.is_etale() and m.is_special()


def test_elliptic_shape():
    m = elliptic_motive()
    r = m.ranks()
    assert r["abelian_genus"] == 1 and r["torus_rank"] == 0
    assert r["lattice_rank"] == 2
    assert m.is_etale()


def test_validator_lattice_meets_additive():
    with pytest.raises(ValidationFailure) as exc:
        Motive(
            0,
            0,
            1,
            Subspace.full(1),
            Subspace.full(1),
            Matrix([[sc(1)]], 1),
            Matrix.zero(1, 0),
            Matrix.zero(1, 0),
        )
    assert exc.value.code == "lattice_meets_additive"


def test_validator_torus_rank_mismatch():
    # toradd claims a torus direction the lattice does not provide
    with pytest.raises(ValidationFailure) as exc:
        Motive(
            0,
            0,
            1,
            Subspace.zero(1),
            Subspace.full(1),
            Matrix([[sc(1), sc(0, 1)]], 2),
            Matrix.zero(1, 0),
            Matrix.zero(1, 0),
        )
    assert exc.value.code == "torus_rank_mismatch"


def test_etale_and_connected_parts():
    for seed in range(4):
        m = gen_motive("special", seed)
        assert etale_motive(m).is_etale()
        assert connected_part(m).is_connected()
        assert quotient_by_additive(m).additive_dim == 0
    non_special = next(
        m for s in range(40) if not (m := gen_motive("general", s)).is_special()
    )
    with pytest.raises(NotSpecial):
        connected_part(non_special)


def test_motive_sequences():
    for seed in range(3):
        m = gen_motive("special", seed)
        m1, m2 = seq_special_motive(m)
        assert m2.compose(m1).is_zero()
    for seed in range(3):
        m = gen_motive("general", seed)
        q1, q2 = seq_formal_quotient(m)
        assert q2.compose(q1).is_zero()


def test_universal_extension_dimensions():
    for m in (kummer_motive(), elliptic_motive()):
        ext = universal_vector_extension(m)
        r = m.ranks()
        assert ext.additive_dim == r["abelian_genus"] + r["etale_rank"]
        assert ext.abelian_genus == r["abelian_genus"]
        assert ext.torus_rank == r["torus_rank"]
    with pytest.raises(NotEtale):
        universal_vector_extension(connected_motive(Matrix([[sc(1)]], 1)))


def test_cartier_rank_swap():
    for prof in ("general", "special", "etale", "connected", "elliptic"):
        for seed in range(3):
            m = gen_motive(prof, seed)
            a, b = m.ranks(), cartier_dual(m).ranks()
            assert b["etale_rank"] == a["torus_rank"]
            assert b["torus_rank"] == a["etale_rank"]
            assert b["lie_f0_dim"] == a["additive_dim"]
            assert b["additive_dim"] == a["lie_f0_dim"]
            assert b["abelian_genus"] == a["abelian_genus"]


def test_kummer_dual_is_kummer_shaped():
    d = cartier_dual(kummer_motive())
    r = d.ranks()
    assert r["etale_rank"] == 1 and r["torus_rank"] == 1
    assert r["abelian_genus"] == 0 and r["additive_dim"] == 0


def test_picard_sharp_dual_shape():
    # the universal extension of an elliptic curve dualizes to a motive with
    # a one dimensional infinitesimal formal part over the curve itself, and
    # that dual is not special
    pic = universal_vector_extension(elliptic_motive())
    d = cartier_dual(pic)
    r = d.ranks()
    assert r["lie_f0_dim"] == 1
    assert r["additive_dim"] == 0
    assert r["etale_rank"] == 0 and r["torus_rank"] == 0
    assert r["abelian_genus"] == 1
    assert not d.is_special()


def test_cartier_double_dual():
    for prof in ("general", "etale", "connected"):
        for seed in range(3):
            m = gen_motive(prof, seed)
            iso = cartier_double_dual(m)
            assert iso.forward.source == m


def test_cartier_dual_of_connected_transposes():
    u = Matrix([[sc(2), sc(1)], [sc(0), sc(3)]], 2)
    d = cartier_dual(connected_motive(u))
    assert d.is_connected()
    assert d.u0 == u.transpose()


def test_hom_motive_identity():
    m = kummer_motive()
    zb, kb = hom_motive(m, m)
    assert any(not phi.is_zero() for phi in zb)


def test_zero_and_formal_only():
    z = motive_zero()
    assert z.is_etale() and z.is_connected()
    f = formal_only(2)
    assert f.lie_f0_dim == 2 and f.lie_g_dim == 0
