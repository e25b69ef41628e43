"""Level <= 1 mixed structures: validation, twists, internal Hom, kernels."""

import pytest

from fhodge.errors import NotAlternatingError, ValidationFailure
from fhodge.lattices import FgAbGroup, IntMatrix, LatticeMap, free_group
from fhodge.linalg import Subspace
from fhodge.mhs import (
    MHS1,
    MHSMorphism,
    check_polarization,
    ihom_tate,
    ihom_tate_morphism,
    mhs_cokernel,
    mhs_kernel,
    mhs_zero,
    tate,
)

from conftest import sc


def elliptic_mhs():
    """Rank 2, pure weight -1, period lattice Z + Zi."""
    return MHS1(
        free_group(2),
        Subspace.zero(2),
        Subspace.full(2),
        Subspace.span(2, [(sc(0, -1), sc(1))]),
    )


def test_tate_objects():
    z0, z1 = tate(0), tate(1)
    assert z0.f0.is_full() and z0.w_m1.is_zero()
    assert z1.f0.is_zero() and z1.w_m2.is_full()
    assert z1.tate_tag == 1
    with pytest.raises(ValidationFailure):
        tate(2)


def test_validator_rejects_unsplit_graded():
    # F0 equal to its own conjugate cannot split gr_-1
    with pytest.raises(ValidationFailure) as exc:
        MHS1(
            free_group(2),
            Subspace.zero(2),
            Subspace.full(2),
            Subspace.span(2, [(sc(1), sc(0))]),
        )
    assert exc.value.code == "hodge_gr_not_split"


def test_validator_rejects_broken_weight_chain():
    with pytest.raises(ValidationFailure):
        MHS1(
            free_group(2),
            Subspace.span(2, [(sc(1), sc(0))]),
            Subspace.zero(2),
            Subspace.span(2, [(sc(0, -1), sc(1))]),
        )


def test_morphism_weight_and_hodge_guards():
    one = IntMatrix([[1]], 1)
    with pytest.raises(ValidationFailure):
        MHSMorphism(tate(1), tate(0), LatticeMap(free_group(1), free_group(1), one))
    with pytest.raises(ValidationFailure):
        MHSMorphism(tate(0), tate(1), LatticeMap(free_group(1), free_group(1), one))
    MHSMorphism.identity(elliptic_mhs())


def test_ihom_tate_elliptic_oracle():
    h = elliptic_mhs()
    hy = ihom_tate(h)
    # the dual Hodge line annihilates the original one
    assert hy.f0 == Subspace.span(2, [(sc(1), sc(0, 1))])
    assert hy.w_m1.is_full() and hy.w_m2.is_zero()
    assert hy.tate_tag == h.tate_tag + 1
    assert ihom_tate(hy) == h


def test_ihom_tate_functorial():
    h = elliptic_mhs()
    two = MHSMorphism(h, h, LatticeMap(h.lattice, h.lattice, IntMatrix([[2, 0], [0, 2]], 2)))
    dual2 = ihom_tate_morphism(two)
    assert dual2.source == ihom_tate(h) and dual2.target == ihom_tate(h)
    assert dual2.f.matrix == IntMatrix([[2, 0], [0, 2]], 2)


def test_kernel_cokernel_multiplication():
    z0 = tate(0)
    two = MHSMorphism(z0, z0, LatticeMap(z0.lattice, z0.lattice, IntMatrix([[2]], 1)))
    ker, emb = mhs_kernel(two)
    assert ker.rank == 0
    cok, proj = mhs_cokernel(two)
    assert cok.rank == 0 and tuple(cok.lattice.torsion) == (2,)
    assert proj.compose(two).is_zero()


def test_cokernel_mixed_invariants():
    h = MHS1(free_group(2), Subspace.zero(2), Subspace.zero(2), Subspace.full(2))
    d = MHSMorphism(h, h, LatticeMap(h.lattice, h.lattice, IntMatrix([[2, 0], [0, 3]], 2)))
    cok, _ = mhs_cokernel(d)
    assert tuple(cok.lattice.torsion) == (6,)


def test_polarization_sign_oracle():
    h = elliptic_mhs()
    q = IntMatrix([[0, 1], [-1, 0]], 2)
    assert check_polarization(h, q) is True
    assert check_polarization(h, -q) is False
    with pytest.raises(NotAlternatingError):
        check_polarization(h, IntMatrix([[1, 0], [0, 1]], 2))


def test_zero_structure():
    z = mhs_zero()
    assert z.rank == 0
    assert ihom_tate(z).rank == 0
