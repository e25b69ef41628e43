"""Level <= 1 mixed Hodge structures on finitely generated lattices.

An object carries a weight chain W_-2 ⊆ W_-1 of rational subspaces and a
Hodge subspace F0 over K, all living on the free quotient of the lattice.
Rational subspaces are stored as K-subspaces with rational canonical bases;
conjugation in lattice coordinates is then the correct real structure.

The twist tag counts Tate twists for bookkeeping only; it never enters
equality or validation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InternalError, NotAlternatingError, NotFree, ValidationFailure
from .lattices import (
    FgAbGroup,
    IntMatrix,
    LatticeMap,
    _regroup_from_snf,
    cokernel_lattice_map,
    int_solve,
    integer_points,
    kernel_lattice_map,
)
from .linalg import Matrix, Subspace, annihilator, quotient_map, solve
from .scalars import I, Scalar


def _require_rational(s: Subspace, what: str) -> None:
    for v in s.basis:
        if any(x.im != 0 for x in v):
            raise ValidationFailure(f"{what}_not_rational", f"{what} has a non-rational basis")


@dataclass(frozen=True)
class MHS1:
    lattice: FgAbGroup
    w_m2: Subspace
    w_m1: Subspace
    f0: Subspace
    tate_tag: int = field(default=0, compare=False)

    def __post_init__(self):
        n = self.lattice.rank
        for s, name in ((self.w_m2, "w_m2"), (self.w_m1, "w_m1"), (self.f0, "f0")):
            if s.ambient != n:
                raise ValidationFailure(
                    "ambient_mismatch", f"{name} lives in dimension {s.ambient}, lattice rank {n}"
                )
        _require_rational(self.w_m2, "w_m2")
        _require_rational(self.w_m1, "w_m1")
        if not self.w_m1.contains_subspace(self.w_m2):
            raise ValidationFailure("weight_chain_broken", "W_-2 is not contained in W_-1")
        if not self.f0.intersect(self.w_m2).is_zero():
            raise ValidationFailure("hodge_f0_meets_w2", "F0 meets W_-2 ⊗ K")
        if not self.f0.add(self.w_m1).is_full():
            raise ValidationFailure("hodge_f0_plus_w1", "F0 + W_-1 ⊗ K is not everything")
        proj2, _ = quotient_map(self.w_m2)
        gr = self.w_m1.image_under(proj2)
        f_tilde = self.f0.intersect(self.w_m1).image_under(proj2)
        f_conj = f_tilde.conj()
        if not (f_tilde.add(f_conj) == gr and f_tilde.intersect(f_conj).is_zero()):
            raise ValidationFailure(
                "hodge_gr_not_split", "gr_-1 is not the sum of the F-part and its conjugate"
            )
        expected = (n - self.w_m1.dim) + (self.w_m1.dim - self.w_m2.dim) // 2
        if self.f0.dim != expected:
            raise InternalError(f"F0 dimension {self.f0.dim} != forced value {expected}")

    # -- derived views -------------------------------------------------------

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def gr_ranks(self) -> dict:
        return {
            "gr0": self.rank - self.w_m1.dim,
            "gr_m1": self.w_m1.dim - self.w_m2.dim,
            "gr_m2": self.w_m2.dim,
        }

    def f_tilde(self) -> Subspace:
        """Image of F0 ∩ W_-1 ⊗ K in the canonical gr_-1 coordinates."""
        proj2, _ = quotient_map(self.w_m2)
        return self.f0.intersect(self.w_m1).image_under(proj2)


def mhs_zero() -> MHS1:
    return MHS1(FgAbGroup(0), Subspace.zero(0), Subspace.zero(0), Subspace.zero(0))


def tate(n: int) -> MHS1:
    """The rank-1 structure of pure weight 0 (n = 0) or -2 (n = 1)."""
    if n not in (0, 1):
        raise ValidationFailure("bad_twist", "only twists 0 and 1 exist here")
    lat = FgAbGroup(1)
    if n == 0:
        return MHS1(lat, Subspace.zero(1), Subspace.zero(1), Subspace.full(1), 0)
    return MHS1(lat, Subspace.full(1), Subspace.full(1), Subspace.zero(1), 1)


@dataclass(frozen=True)
class MHSMorphism:
    source: MHS1
    target: MHS1
    f: LatticeMap

    def __post_init__(self):
        if self.f.source != self.source.lattice or self.f.target != self.target.lattice:
            raise ValidationFailure("morphism_lattice_mismatch", "lattice map endpoints differ")
        fq = self.f.free_block_k()
        if not self.target.w_m1.contains_subspace(self.source.w_m1.image_under(fq)):
            raise ValidationFailure("weight_not_preserved", "f(W_-1) exceeds W'_-1")
        if not self.target.w_m2.contains_subspace(self.source.w_m2.image_under(fq)):
            raise ValidationFailure("weight_not_preserved", "f(W_-2) exceeds W'_-2")
        if not self.target.f0.contains_subspace(self.source.f0.image_under(fq)):
            raise ValidationFailure("hodge_not_preserved", "f(F0) exceeds F'0")

    @staticmethod
    def identity(x: MHS1) -> "MHSMorphism":
        return MHSMorphism(x, x, LatticeMap.identity(x.lattice))

    @staticmethod
    def zero(x: MHS1, y: MHS1) -> "MHSMorphism":
        return MHSMorphism(x, y, LatticeMap.zero(x.lattice, y.lattice))

    def compose(self, other: "MHSMorphism") -> "MHSMorphism":
        if other.target != self.source:
            raise ValidationFailure("not_composable", "morphism endpoints do not match")
        return MHSMorphism(other.source, self.target, self.f.compose(other.f))

    def __add__(self, other: "MHSMorphism") -> "MHSMorphism":
        return MHSMorphism(self.source, self.target, self.f + other.f)

    def is_zero(self) -> bool:
        return self.f.is_zero()


def mhs_kernel(phi: MHSMorphism):
    """Kernel object with its embedding; induced filtrations are preimages."""
    kd = kernel_lattice_map(phi.f)
    eq = kd.embed.free_block_k()
    src = phi.source
    try:
        ker = MHS1(
            kd.group,
            src.w_m2.preimage_under(eq),
            src.w_m1.preimage_under(eq),
            src.f0.preimage_under(eq),
            src.tate_tag,
        )
        emb = MHSMorphism(ker, src, kd.embed)
    except ValidationFailure as exc:
        raise InternalError(f"induced kernel data invalid: {exc.code}") from exc
    return ker, emb


def mhs_cokernel(phi: MHSMorphism):
    """Cokernel object with its projection; induced filtrations are images."""
    ck = cokernel_lattice_map(phi.f)
    pq = ck.project.free_block_k()
    tgt = phi.target
    try:
        cok = MHS1(
            ck.group,
            tgt.w_m2.image_under(pq),
            tgt.w_m1.image_under(pq),
            tgt.f0.image_under(pq),
            tgt.tate_tag,
        )
        proj = MHSMorphism(tgt, cok, ck.project)
    except ValidationFailure as exc:
        raise InternalError(f"induced cokernel data invalid: {exc.code}") from exc
    return cok, proj


def ihom_tate(x: MHS1) -> MHS1:
    """Internal Hom into the twist: annihilator filtrations on the dual lattice."""
    if not x.lattice.is_free:
        raise NotFree("internal Hom needs a torsion-free lattice")
    return MHS1(
        x.lattice,
        annihilator(x.w_m1),
        annihilator(x.w_m2),
        annihilator(x.f0),
        1 - x.tate_tag,
    )


def ihom_tate_morphism(phi: MHSMorphism) -> MHSMorphism:
    """Contravariant action: the transposed lattice map between the duals."""
    return MHSMorphism(
        ihom_tate(phi.target), ihom_tate(phi.source), phi.f.transpose_free()
    )


def mhs_transport(x: MHS1, u: LatticeMap) -> MHS1:
    """Push the structure through an isomorphism of lattices (new = u(old))."""
    uq = u.free_block_k()
    return MHS1(
        u.target,
        x.w_m2.image_under(uq),
        x.w_m1.image_under(uq),
        x.f0.image_under(uq),
        x.tate_tag,
    )


def gr_m1_lattice_basis(x: MHS1):
    """Canonical generators of the saturated gr_-1 lattice.

    Returns (b1, proj, section): b1 embeds the W_-1 integer points, proj maps
    their coordinates onto canonical gr_-1 coordinates, section lifts back.
    """
    l1 = integer_points(x.w_m1)
    b1 = IntMatrix.from_columns([tuple(v) for v in l1], nrows=x.rank)
    l2 = integer_points(x.w_m2)
    cols = []
    for v in l2:
        sol = int_solve(b1, v)
        if sol is None:
            raise InternalError("W_-2 integer points do not sit inside the W_-1 lattice")
        cols.append(sol)
    b2 = IntMatrix.from_columns(cols, nrows=b1.ncols)
    group, section, proj = _regroup_from_snf(b1.ncols, b2)
    if group.torsion:
        raise InternalError("gr_-1 lattice came out non-free")
    return b1, proj, section


def check_polarization(x: MHS1, q: IntMatrix) -> bool:
    """Witness check: q polarizes the weight -1 graded piece.

    q is an integer alternating form on the canonical gr_-1 lattice basis;
    the check is Q(F, F) = 0 plus positive definiteness of i*Q(v, conj w)
    on the F-part, by leading principal minors.
    """
    b1, proj, _ = gr_m1_lattice_basis(x)
    g = proj.nrows
    if q.nrows != g or q.ncols != g:
        raise ValidationFailure("polarization_shape", f"form must be {g}x{g}")
    if q.transpose() != -q:
        raise NotAlternatingError("form is not alternating")
    if g == 0:
        return True
    b1k = b1.to_k()
    projk = proj.to_k()
    f_vecs = []
    for v in x.f0.intersect(x.w_m1).basis:
        coords = solve(b1k, v)
        if coords is None:
            raise InternalError("F-part escapes W_-1 over K")
        f_vecs.append(projk.apply(coords))
    qk = q.to_k()
    for u in f_vecs:
        for v in f_vecs:
            if not sum((a * b for a, b in zip(u, qk.apply(v))), Scalar()).is_zero():
                return False
    h = len(f_vecs)
    herm = [
        [
            I * sum((a * b for a, b in zip(f_vecs[i], qk.apply(tuple(c.conj() for c in f_vecs[j])))), Scalar())
            for j in range(h)
        ]
        for i in range(h)
    ]
    for k in range(1, h + 1):
        minor = Matrix([row[:k] for row in herm[:k]], k).det()
        if minor.im != 0:
            raise InternalError("hermitian minor came out non-real")
        if not minor.re > 0:
            return False
    return True
