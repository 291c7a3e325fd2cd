//! Seeded random elements for tests, self-checks and heuristic searches.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::ancoords::ANElement;
use crate::linalg::RVec;
use crate::scalars::{CMat, FieldTag, Scalar};
use crate::sunf::{GroupContext, GroupMatrix};

pub type Prng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Prng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

/// Standard Gaussian scalar in F.
pub fn scalar<R: Rng + ?Sized>(field: FieldTag, rng: &mut R) -> Scalar {
    match field {
        FieldTag::Real => Scalar::new(normal(rng), 0.0),
        FieldTag::Complex => Scalar::new(normal(rng), normal(rng)),
    }
}

/// Element of a + n with independent Gaussian real coordinates.
pub fn random_an<R: Rng + ?Sized>(ctx: GroupContext, rng: &mut R) -> ANElement {
    let dim = ANElement::real_dim(&ctx);
    let v = RVec::from_fn(dim, |_, _| normal(rng));
    ANElement::from_real(ctx, &v).expect("dimension matches")
}

/// Element of n with independent Gaussian real coordinates.
pub fn random_nilpotent<R: Rng + ?Sized>(ctx: GroupContext, rng: &mut R) -> ANElement {
    random_an(ctx, rng).nilpotent_part()
}

/// Gaussian combination of the given elements, normalized to unit norm.
pub fn random_combination<R: Rng + ?Sized>(basis: &[ANElement], rng: &mut R) -> Option<ANElement> {
    let first = basis.first()?;
    let mut acc = ANElement::zero(first.ctx);
    for b in basis {
        acc = acc + b.clone() * normal(rng);
    }
    let n = acc.norm();
    (n > 0.0).then(|| acc * (1.0 / n))
}

/// Haar-distributed element of U(k) (or O(k) over R) from the QR
/// factorization of a Gaussian matrix with phases fixed.
pub fn random_unitary<R: Rng + ?Sized>(k: usize, field: FieldTag, rng: &mut R) -> CMat {
    let g = CMat::from_fn(k, k, |_, _| scalar(field, rng));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..k {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            let mut col = q.column_mut(j);
            col *= phase;
        }
    }
    q
}

/// Unitary change of basis diagonalizing the form: columns span the
/// positive eigenspace first, then the two-dimensional negative one.
fn form_eigenbasis(ctx: &GroupContext) -> CMat {
    let s = ctx.size();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut c = CMat::zeros(s, s);
    c[(0, 0)] = Scalar::new(h, 0.0);
    c[(s - 1, 0)] = Scalar::new(h, 0.0);
    c[(1, 1)] = Scalar::new(h, 0.0);
    c[(s - 2, 1)] = Scalar::new(h, 0.0);
    for k in 2..s - 2 {
        c[(k, k)] = Scalar::new(1.0, 0.0);
    }
    c[(0, s - 2)] = Scalar::new(h, 0.0);
    c[(s - 1, s - 2)] = Scalar::new(-h, 0.0);
    c[(1, s - 1)] = Scalar::new(h, 0.0);
    c[(s - 2, s - 1)] = Scalar::new(-h, 0.0);
    c
}

/// Random element of the maximal compact subgroup K = G ∩ U(n+2).
pub fn random_k<R: Rng + ?Sized>(ctx: GroupContext, rng: &mut R) -> GroupMatrix {
    let n = ctx.n;
    let s = ctx.size();
    let mut block = CMat::zeros(s, s);
    let mut un = random_unitary(n, ctx.field, rng);
    let u2 = random_unitary(2, ctx.field, rng);
    let det = un.determinant() * u2.determinant();
    // Rescale one column so that the total determinant is 1.
    let fix = det.conj() / det.norm();
    let mut col = un.column_mut(0);
    col *= fix;
    block.view_mut((0, 0), (n, n)).copy_from(&un);
    block.view_mut((n, n), (2, 2)).copy_from(&u2);
    let c = form_eigenbasis(&ctx);
    GroupMatrix { ctx, entries: &c * block * c.adjoint() }
}

/// Random group element `k1 exp(scale * u) k2` with `u` Gaussian in a + n.
pub fn random_group<R: Rng + ?Sized>(ctx: GroupContext, scale: f64, rng: &mut R) -> GroupMatrix {
    let u = random_an(ctx, rng) * scale;
    let k1 = random_k(ctx, rng);
    let k2 = random_k(ctx, rng);
    k1.mul(&u.exp_general()).mul(&k2)
}
