"""The two realizations, the inverse arrow, and their compatibilities."""

import pytest

from fhodge.errors import MalformedInput, NotFree
from fhodge.fhs import canonical_etale, etale_part
from fhodge.generator import gen_fhs_morphism, gen_motive
from fhodge.linalg import Matrix, Subspace
from fhodge.motives import Motive, etale_motive, universal_vector_extension
from fhodge.realize import (
    arrow,
    arrow_morphism,
    cokernel_motive,
    kernel_motive,
    naturality_check,
    periods_square,
    roundtrip_fm,
    roundtrip_mf,
    t_formal,
    t_hodge,
)


def gen_motive_morphism(seed):
    # the inverse arrow needs torsion-free lattices on both ends
    phi = gen_fhs_morphism(seed)
    while not (phi.source.is_free() and phi.target.is_free()):
        seed += 1000
        phi = gen_fhs_morphism(seed)
    return arrow_morphism(phi)

from conftest import sc

from test_motives import elliptic_motive, kummer_motive


def kummer_with_additive():
    """Kummer data pushed into a group with one additive direction."""
    return Motive(
        0,
        1,
        2,
        Subspace.span(2, [(sc(0), sc(1))]),
        Subspace.full(2),
        Matrix([[sc(1)], [sc(0)]], 1),
        Matrix([[sc(1, 0, 2)], [sc(1)]], 1),
        Matrix.zero(2, 0),
    )


def test_hodge_realization_kummer_oracle():
    h = t_hodge(kummer_motive())
    assert h.rank == 2
    # Hodge line through (etale generator) - (1/2)(lattice generator)
    assert h.f0 == Subspace.span(2, [(sc(-1, 0, 2), sc(1))])
    assert h.w_m2 == Subspace.span(2, [(sc(1), sc(0))])
    assert h.w_m1 == h.w_m2


def test_hodge_realization_elliptic_oracle():
    h = t_hodge(elliptic_motive())
    assert h.rank == 2
    assert h.f0 == Subspace.span(2, [(sc(0, -1), sc(1))])
    assert h.w_m2.is_zero() and h.w_m1.is_full()


def test_formal_realization_etale_agrees_with_hodge():
    for seed in range(5):
        m = gen_motive("etale", seed)
        assert t_formal(m) == canonical_etale(t_hodge(m))


def test_formal_realization_splits_off_additive():
    m = kummer_with_additive()
    x = t_formal(m)
    assert etale_part(x) == canonical_etale(t_hodge(etale_motive(m)))
    assert x.v0.dim == 1


def test_roundtrips_are_isomorphisms():
    for prof in ("general", "special", "etale", "connected"):
        for seed in range(4):
            x = t_formal(gen_motive(prof, seed))
            iso = roundtrip_fm(x)
            assert iso.forward.source == t_formal(arrow(x))
            assert iso.forward.target == x
    for prof in ("general", "special", "etale", "connected", "elliptic"):
        for seed in range(4):
            m = gen_motive(prof, seed)
            iso = roundtrip_mf(m)
            assert iso.forward.source == m
            assert iso.forward.target == arrow(t_formal(m))


def test_naturality_both_directions():
    for seed in range(6):
        phi = gen_motive_morphism(seed)
        assert naturality_check(phi, "mf")
    for seed in range(6):
        phi = gen_motive_morphism(seed)
        from fhodge.realize import t_formal_morphism

        assert naturality_check(t_formal_morphism(phi), "fm")
    with pytest.raises(MalformedInput):
        naturality_check(gen_motive_morphism(0), "xy")


def test_periods_square_oracles():
    for m in (kummer_motive(), elliptic_motive()):
        out = periods_square(m)
        assert out["ok"], out
        assert out["checks"]["universal_additive_dim"]
    for seed in range(4):
        out = periods_square(gen_motive("etale", seed))
        assert out["ok"], out


def test_motive_kernel_cokernel_transport():
    checked = 0
    seed = 0
    while checked < 5:
        phi = gen_motive_morphism(seed)
        seed += 1
        try:
            ker, emb = kernel_motive(phi)
            cok, proj = cokernel_motive(phi)
        except NotFree:
            # quotient picked up torsion; such a pair has no motive model here
            continue
        assert phi.compose(emb).is_zero()
        assert proj.compose(phi).is_zero()
        checked += 1
