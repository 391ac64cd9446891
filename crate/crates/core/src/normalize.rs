//! Normalization of a quartic so its quadratic contravariant becomes
//! u (v2^2 - v1 v3): the substitution-chain transform for quadrics, its
//! integral variant, and the randomized driver for quartics.

use crate::dixmier_ohno::{DOCtx, Tower};
use crate::matrix::Matrix;
use crate::rng::SplitMix64;
use crate::scalar::{Field, FieldSqrt, Quad};
use crate::ternary::{TernaryError, TernaryForm, TernaryQuadric};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalizeError {
    /// a = 0, delta = 0 or Delta = 0: the chain's preconditions fail.
    DegenerateQuadric,
    /// I12 = 0: rho degenerates, nothing to normalize onto.
    RhoDegenerate,
    /// Randomized escapes kept hitting degenerate configurations.
    RetryBudgetExhausted,
    /// The needed square root does not exist and extension was not allowed.
    NeedsExtension,
    Ternary(TernaryError),
}

impl From<TernaryError> for NormalizeError {
    fn from(e: TernaryError) -> Self {
        NormalizeError::Ternary(e)
    }
}

impl core::fmt::Display for NormalizeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            NormalizeError::DegenerateQuadric => write!(f, "quadric violates a != 0, delta != 0, Delta != 0"),
            NormalizeError::RhoDegenerate => write!(f, "I12 = 0: rho is degenerate"),
            NormalizeError::RetryBudgetExhausted => write!(f, "randomized normalization retries exhausted"),
            NormalizeError::NeedsExtension => write!(f, "square root requires a quadratic extension"),
            NormalizeError::Ternary(e) => write!(f, "{}", e),
        }
    }
}

/// The substitution chain sending Q to a (x2^2 - x1 x3), as one matrix for
/// the right action, over a domain already containing r with r^2 = -a Delta.
///
/// Steps: kill the x2 x1 / x2 x3 cross terms, kill x1 x3, rotate the
/// (x1, x3) plane through r, then fix the x1 x3 coefficient to -a.
pub fn normalize_chain_matrix<F: Field>(
    q: &TernaryQuadric<F>,
    r: &F,
) -> Result<Matrix<F>, NormalizeError> {
    let a = &q.a;
    if a.is_zero() {
        return Err(NormalizeError::DegenerateQuadric);
    }
    let delta = q.delta();
    let disc = q.disc();
    if delta.is_zero() || disc.is_zero() {
        return Err(NormalizeError::DegenerateQuadric);
    }
    debug_assert_eq!(r.mul(r), a.mul(&disc).neg(), "r^2 = -a Delta");
    let ctx = a;
    let zero = ctx.zero_like();
    let one = ctx.one_like();
    let half = ctx.from_ratio_like(1, 2);
    let eta = q.eta();
    let s1 = Matrix::from_rows(vec![
        vec![one.clone(), zero.clone(), zero.clone()],
        vec![
            q.b.div(&ctx.from_i64_like(2).mul(a)).neg(),
            one.clone(),
            q.c.div(&ctx.from_i64_like(2).mul(a)).neg(),
        ],
        vec![zero.clone(), zero.clone(), one.clone()],
    ]);
    let s2 = Matrix::from_rows(vec![
        vec![one.clone(), zero.clone(), eta.div(&ctx.from_i64_like(2).mul(&delta)).neg()],
        vec![zero.clone(), one.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), one.clone()],
    ]);
    let rinv2 = delta.div(&ctx.from_i64_like(2).mul(r));
    let s3 = Matrix::from_rows(vec![
        vec![half.clone(), zero.clone(), half.clone()],
        vec![zero.clone(), one.clone(), zero.clone()],
        vec![rinv2.clone(), zero.clone(), rinv2.neg()],
    ]);
    let s4 = Matrix::from_rows(vec![
        vec![a.mul(a).div(&delta).neg(), zero.clone(), zero.clone()],
        vec![zero.clone(), one.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), one],
    ]);
    Ok(s1.mul_mat(&s2).mul_mat(&s3).mul_mat(&s4))
}

/// normalize_quadric: the transform and the multiplier u = a. Requires the
/// radicand -a Delta to be a square in the domain; callers taking the
/// extension route wrap the quadric into `Quad` first.
pub fn normalize_quadric<F: Field + FieldSqrt>(
    q: &TernaryQuadric<F>,
) -> Result<(Matrix<F>, F), NormalizeError> {
    let a = q.a.clone();
    if a.is_zero() || q.delta().is_zero() || q.disc().is_zero() {
        return Err(NormalizeError::DegenerateQuadric);
    }
    let radicand = a.mul(&q.disc()).neg();
    let r = radicand.sqrt().ok_or(NormalizeError::NeedsExtension)?;
    let m = normalize_chain_matrix(q, &r)?;
    Ok((m, a))
}

/// Same, passing to the quadratic extension by the radicand unconditionally.
pub fn normalize_quadric_ext<F: Field>(
    q: &TernaryQuadric<F>,
) -> Result<(Matrix<Quad<F>>, Quad<F>), NormalizeError> {
    let a = q.a.clone();
    if a.is_zero() || q.delta().is_zero() || q.disc().is_zero() {
        return Err(NormalizeError::DegenerateQuadric);
    }
    let s = a.mul(&q.disc()).neg();
    let lift = |x: &F| Quad::base(x.clone(), &s);
    let q2 = TernaryQuadric {
        a: lift(&q.a),
        b: lift(&q.b),
        c: lift(&q.c),
        d: lift(&q.d),
        e: lift(&q.e),
        f: lift(&q.f),
    };
    let r = Quad::gen(&s);
    let m = normalize_chain_matrix(&q2, &r)?;
    Ok((m, lift(&a)))
}

/// The denominator-free transform a^3 delta^2 T0 (entries polynomial in the
/// quadric coefficients and r).
pub fn integral_transform<F: Field>(
    q: &TernaryQuadric<F>,
    r: &F,
) -> Result<Matrix<F>, NormalizeError> {
    let t0 = t0_matrix(q, r)?;
    let a3d2 = q.a.pow_u(3).mul(&q.delta().pow_u(2));
    Ok(t0.scale(&a3d2))
}

/// The inverse of the substitution chain: the matrix whose inverse-action
/// normalizes the quadric. det(T0)^2 = 4 r^2 / a^4.
pub fn t0_matrix<F: Field>(q: &TernaryQuadric<F>, r: &F) -> Result<Matrix<F>, NormalizeError> {
    let m = normalize_chain_matrix(q, r)?;
    m.inverse().map_err(|_| NormalizeError::DegenerateQuadric)
}

/// Result of normalizing a quartic: the substitution, the image, and the
/// multiplier with rho(F_norm) = u (v2^2 - v1 v3).
#[derive(Clone, Debug)]
pub struct Normalization<F: Field> {
    pub transform: Matrix<F>,
    pub quartic: TernaryForm<F>,
    pub u: F,
    pub retries: u32,
}

/// Read rho as a quadric in the dual variables, normalize it, and transport
/// the substitution back to the quartic: rho(F . T) = det(T)^6 rho(F) . T, so
/// the dual substitution S normalizing rho corresponds to T = (S^T)^{-1}.
fn quartic_step<F: Field + FieldSqrt>(
    f: &TernaryForm<F>,
    rho: &TernaryForm<F>,
) -> Result<Normalization<F>, NormalizeError> {
    let q = TernaryQuadric::from_form(rho);
    let (s, _a) = normalize_quadric(&q)?;
    let t = s.transpose().inverse().map_err(|_| NormalizeError::DegenerateQuadric)?;
    let quartic = f.act(&t);
    Ok(Normalization { transform: t, quartic, u: f.ctx().zero_like(), retries: 0 })
}

/// Normalize a quartic over a domain with square roots, retrying with seeded
/// unimodular substitutions when the quadric degenerates or the radicand is
/// not a square. Checks and returns the multiplier read off the normalized
/// contravariant.
pub fn normalize_quartic<F: Field + FieldSqrt>(
    ctx: &DOCtx<F>,
    f: &TernaryForm<F>,
    seed: u64,
    budget: u32,
) -> Result<Normalization<F>, NormalizeError> {
    let tower = ctx.tower(f)?;
    let i12 = crate::dixmier_ohno::j03(&tower.rho);
    if i12.is_zero() {
        return Err(NormalizeError::RhoDegenerate);
    }
    let mut rng = SplitMix64::new(seed ^ 0x6e6f726d);
    let mut g = f.clone();
    let mut tacc = Matrix::identity(3, f.ctx());
    let mut tower_g: Tower<F> = tower;
    for attempt in 0..budget {
        match quartic_step(&g, &tower_g.rho) {
            Ok(mut norm) => {
                let full = tacc.mul_mat(&norm.transform);
                let quartic = f.act(&full);
                let rho_n = ctx.tower(&quartic)?.rho;
                let u = check_normalized(&rho_n)?;
                norm.transform = full;
                norm.quartic = quartic;
                norm.u = u;
                norm.retries = attempt;
                return Ok(norm);
            }
            Err(NormalizeError::DegenerateQuadric) | Err(NormalizeError::NeedsExtension) => {
                // seeded unimodular escape
                let m = random_unimodular(f.ctx(), &mut rng);
                tacc = tacc.mul_mat(&m);
                g = f.act(&tacc);
                tower_g = ctx.tower(&g)?;
            }
            Err(e) => return Err(e),
        }
    }
    Err(NormalizeError::RetryBudgetExhausted)
}

/// The multiplier, or an error if the coefficient pattern is not
/// u (v2^2 - v1 v3).
pub fn check_normalized<F: Field>(rho: &TernaryForm<F>) -> Result<F, NormalizeError> {
    let q = TernaryQuadric::from_form(rho);
    let u = q.a.clone();
    if u.is_zero()
        || !q.b.is_zero()
        || !q.c.is_zero()
        || !q.d.is_zero()
        || !q.f.is_zero()
        || q.e != u.neg()
    {
        return Err(NormalizeError::DegenerateQuadric);
    }
    Ok(u)
}

pub fn random_unimodular<F: Field>(ctx: &F, rng: &mut SplitMix64) -> Matrix<F> {
    let mut m = Matrix::identity(3, ctx);
    for _ in 0..4 {
        let i = rng.below(3) as usize;
        let j = rng.below(3) as usize;
        if i == j {
            continue;
        }
        let mut e = Matrix::identity(3, ctx);
        e.set(i, j, ctx.from_i64_like(1 + rng.below(40) as i64));
        m = m.mul_mat(&e);
    }
    m
}
