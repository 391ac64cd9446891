//! Conic-and-quartic reconstruction of a binary octic from its nine basis
//! invariants.
//!
//! From three order-2 covariants q1, q2, q3 of the generic octic one forms
//! the transvectant matrix R_ij = (q_i, q_j)_2 and the plane quartic
//! curve with coefficients (q^alpha, f)_8; both consist of invariants, so
//! they evaluate from the invariant values alone through the frozen tables.
//! The image conic of z -> (q1 : q2 : q3)(z) is the adjugate of R; a point
//! and a line pencil give a degree-2 parametrization, and the quartic pulls
//! back to a binary octic in the same orbit as the original.

use crate::binary::BinaryForm;
use crate::matrix::Matrix;
use crate::mestre_tables::{load_tables, MestreTable};
use crate::olive::octic_invariants;
use crate::rng::SplitMix64;
use crate::scalar::{Field, FieldRand, FieldSqrt, Quad};
use crate::ternary::TernaryForm;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MestreError {
    /// The conic degenerated for every configured covariant triple.
    DegenerateConic,
    /// The invariant point sits on the excluded (multiplicity >= 4) locus.
    NonGenericOctic,
    /// Self-check failed: the reconstructed octic's invariants do not match.
    SelfCheckFailed,
    /// No conic point found within the retry budget (finite fields only;
    /// should not occur).
    PointSearchExhausted,
    /// Table coefficients do not reduce into this field.
    BadCharacteristic,
}

impl core::fmt::Display for MestreError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MestreError::DegenerateConic => write!(f, "conic degenerate for all covariant triples"),
            MestreError::NonGenericOctic => write!(f, "octic invariants on the non-generic locus"),
            MestreError::SelfCheckFailed => write!(f, "reconstructed octic failed the invariant self-check"),
            MestreError::PointSearchExhausted => write!(f, "no rational conic point found"),
            MestreError::BadCharacteristic => write!(f, "table denominators vanish in this characteristic"),
        }
    }
}

/// Evaluate one frozen polynomial-in-invariants table entry.
fn eval_table<F: Field>(terms: &[(Vec<u8>, num_rational::BigRational)], j: &[F]) -> Option<F> {
    let ctx = &j[0];
    let mut acc = ctx.zero_like();
    for (exps, q) in terms {
        let mut term = crate::interpolate::reduce_rational(q, ctx)?;
        for (k, &e) in exps.iter().enumerate() {
            if e > 0 {
                term = term.mul(&j[k].pow_u(e as u64));
            }
        }
        acc = acc.add(&term);
    }
    Some(acc)
}

/// The conic Gram matrix and ternary quartic determined by the invariant
/// point, for one covariant triple table.
pub fn conic_and_quartic<F: Field>(
    table: &MestreTable,
    j: &[F],
) -> Option<(Matrix<F>, TernaryForm<F>)> {
    let ctx = &j[0];
    // symmetric R, then its adjugate as the conic Gram matrix
    let mut r = Matrix::identity(3, ctx);
    let mut idx = 0;
    for i in 0..3 {
        for k in i..3 {
            let v = eval_table(&table.r_entries[idx], j)?;
            r.set(i, k, v.clone());
            r.set(k, i, v);
            idx += 1;
        }
    }
    // the quartic curve lives in the dual frame, whose conic Gram matrix is
    // R itself (the q-image conic is its adjugate)
    let conic = r;
    let mut h = TernaryForm::zero(4, ctx);
    for (mono_idx, terms) in table.h_entries.iter().enumerate() {
        let v = eval_table(terms, j)?;
        let e = crate::ternary::monomials(4)[mono_idx];
        *h.coeff_mut(e) = v;
    }
    Some((conic, h))
}

/// A rational point on the conic y^T A y = 0 over a field with square roots,
/// by the standard line-slicing search. Deterministic in the seed.
pub fn conic_point<F: Field + FieldRand + FieldSqrt>(
    a: &Matrix<F>,
    seed: u64,
) -> Option<Vec<F>> {
    let ctx = a.ctx();
    let mut rng = SplitMix64::new(seed ^ 0xc041c);
    for _ in 0..256 {
        // slice with y = (1, t, y3) (or permutations when coefficients die)
        let t = ctx.random_like(&mut rng);
        // quadratic in y3: A33 y3^2 + 2(A13 + t A23) y3 + (A11 + 2 t A12 + t^2 A22)
        let a33 = a.at(2, 2).clone();
        let b = a.at(0, 2).add(&t.mul(a.at(1, 2)));
        let c = a
            .at(0, 0)
            .add(&t.mul(a.at(0, 1)).mul(&ctx.from_i64_like(2)))
            .add(&t.mul(&t).mul(a.at(1, 1)));
        if a33.is_zero() {
            // linear: 2 b y3 + c = 0
            if b.is_zero() {
                continue;
            }
            let y3 = c.div(&b.mul(&ctx.from_i64_like(2))).neg();
            return Some(vec![ctx.one_like(), t, y3]);
        }
        let disc = b.mul(&b).sub(&a33.mul(&c));
        if let Some(s) = disc.sqrt() {
            let y3 = b.neg().add(&s).div(&a33);
            return Some(vec![ctx.one_like(), t, y3]);
        }
    }
    None
}

/// Same search but passing to the quadratic extension defined by the first
/// slice discriminant (the route over the rationals).
pub fn conic_point_ext<F: Field + FieldRand>(a: &Matrix<F>, seed: u64) -> Option<Vec<Quad<F>>> {
    let ctx = a.ctx();
    let mut rng = SplitMix64::new(seed ^ 0x011f);
    for _ in 0..64 {
        let t = ctx.random_like(&mut rng);
        let a33 = a.at(2, 2).clone();
        let b = a.at(0, 2).add(&t.mul(a.at(1, 2)));
        let c = a
            .at(0, 0)
            .add(&t.mul(a.at(0, 1)).mul(&ctx.from_i64_like(2)))
            .add(&t.mul(&t).mul(a.at(1, 1)));
        if a33.is_zero() {
            continue;
        }
        let disc = b.mul(&b).sub(&a33.mul(&c));
        if disc.is_zero() {
            continue;
        }
        // y3 = (-b + sqrt(disc)) / a33 inside K(sqrt(disc))
        let s = disc;
        let lift = |x: &F| Quad::base(x.clone(), &s);
        let y3 = lift(&b.neg()).add(&Quad::gen(&s)).div(&lift(&a33));
        return Some(vec![lift(&ctx.one_like()), lift(&t), y3]);
    }
    None
}

/// Degree-2 parametrization of the conic through the point p0 and pullback
/// of the quartic: the returned binary octic has the conic-quartic
/// intersection as its roots.
pub fn pull_back_octic<F: Field>(
    conic: &Matrix<F>,
    quartic: &TernaryForm<F>,
    p0: &[F],
) -> BinaryForm<F> {
    let ctx = conic.ctx();
    // complete p0 to a basis with two coordinate vectors
    let lead = (0..3).find(|&i| !p0[i].is_zero()).expect("nonzero point");
    let (i1, i2) = ((lead + 1) % 3, (lead + 2) % 3);
    let unit = |i: usize| -> Vec<F> {
        (0..3)
            .map(|k| if k == i { ctx.one_like() } else { ctx.zero_like() })
            .collect()
    };
    let u = unit(i1);
    let v = unit(i2);
    // X(z) = 2 (U^T A p0) U - (U^T A U) p0 with U = z1 u + z2 v, coordinates
    // quadratic in z
    let bilin = |x: &[F], y: &[F]| -> F {
        let mut acc = ctx.zero_like();
        for i in 0..3 {
            for k in 0..3 {
                acc = acc.add(&conic.at(i, k).mul(&x[i]).mul(&y[k]));
            }
        }
        acc
    };
    let two = ctx.from_i64_like(2);
    // U^T A p0 = z1 (u A p0) + z2 (v A p0): linear in z
    let up = bilin(&u, p0);
    let vp = bilin(&v, p0);
    // U^T A U = z1^2 (uAu) + 2 z1 z2 (uAv) + z2^2 (vAv)
    let uu = bilin(&u, &u);
    let uv = bilin(&u, &v);
    let vv = bilin(&v, &v);
    // coordinates of X as binary quadratics
    let mut coords: Vec<BinaryForm<F>> = Vec::with_capacity(3);
    for i in 0..3 {
        // 2 (z1 up + z2 vp)(z1 u_i + z2 v_i) - (z1^2 uu + 2 z1z2 uv + z2^2 vv) p0_i
        let lin1 = BinaryForm::new(vec![up.clone(), vp.clone()]);
        let lin2 = BinaryForm::new(vec![u[i].clone(), v[i].clone()]);
        let quad = BinaryForm::new(vec![uu.clone(), uv.mul(&two), vv.clone()]);
        let x = lin1.mul(&lin2).scale(&two).sub(&quad.scale(&p0[i]));
        coords.push(x);
    }
    // substitute into the ternary quartic: sum over monomials of products
    let mut out = BinaryForm::zero(8, ctx);
    for (idx, e) in crate::ternary::monomials(4).iter().enumerate() {
        let c = &quartic.coeffs()[idx];
        if c.is_zero() {
            continue;
        }
        let mut term = BinaryForm::new(vec![ctx.one_like()]);
        for (i, &cnt) in [e.0, e.1, e.2].iter().enumerate() {
            for _ in 0..cnt {
                term = term.mul(&coords[i]);
            }
        }
        out = out.add(&term.scale(c));
    }
    out
}

/// Do the octic's invariants match the targets up to the weighted scaling
/// j_d -> lam^d j_d?
pub fn invariants_weighted_match<F: Field>(got: &[F], target: &[F]) -> bool {
    debug_assert_eq!(got.len(), 9);
    let degrees: [u64; 9] = [2, 3, 4, 5, 6, 7, 8, 9, 10];
    let mut ratios: Vec<Option<F>> = Vec::new();
    for k in 0..9 {
        match (got[k].is_zero(), target[k].is_zero()) {
            (true, true) => ratios.push(None),
            (false, false) => ratios.push(Some(target[k].div(&got[k]))),
            _ => return false,
        }
    }
    let nz: Vec<usize> = (0..9).filter(|&k| ratios[k].is_some()).collect();
    for (pos, &k) in nz.iter().enumerate() {
        for &l in &nz[pos + 1..] {
            let rk = ratios[k].as_ref().unwrap();
            let rl = ratios[l].as_ref().unwrap();
            if rk.pow_u(degrees[l]) != rl.pow_u(degrees[k]) {
                return false;
            }
        }
    }
    true
}

/// Reconstruct an octic with the given invariants (up to weighted scaling)
/// over a field with square roots, trying the configured covariant triples
/// in order. The output is gated by the invariant self-check.
pub fn reconstruct_octic<F: Field + FieldRand + FieldSqrt>(
    j: &[F],
    seed: u64,
) -> Result<BinaryForm<F>, MestreError> {
    if !crate::olive::octic_is_generic(j) {
        return Err(MestreError::NonGenericOctic);
    }
    let tables = load_tables();
    let mut saw_degenerate = false;
    for table in tables.iter() {
        let Some((conic, quartic)) = conic_and_quartic(table, j) else {
            return Err(MestreError::BadCharacteristic);
        };
        if conic.det().is_zero() {
            saw_degenerate = true;
            continue;
        }
        let Some(p0) = conic_point(&conic, seed) else {
            return Err(MestreError::PointSearchExhausted);
        };
        let octic = pull_back_octic(&conic, &quartic, &p0);
        if octic.is_zero() {
            saw_degenerate = true;
            continue;
        }
        let got = octic_invariants(&octic).map_err(|_| MestreError::BadCharacteristic)?;
        if invariants_weighted_match(&got, j) {
            return Ok(octic);
        }
        return Err(MestreError::SelfCheckFailed);
    }
    let _ = saw_degenerate;
    Err(MestreError::DegenerateConic)
}

/// The scalar matching an octic's invariants exactly onto target values:
/// j_d(lam * b) = lam^d j_d(b) = target_d for every d. Requires the nonzero
/// weights to generate the unit ideal.
pub fn match_scale<F: Field>(got: &[F], target: &[F]) -> Option<F> {
    let degrees: [i64; 9] = [2, 3, 4, 5, 6, 7, 8, 9, 10];
    let mut g: i64 = 0;
    let mut lam = got[0].one_like();
    for k in 0..9 {
        match (got[k].is_zero(), target[k].is_zero()) {
            (true, true) => continue,
            (false, false) => {}
            _ => return None,
        }
        let r = target[k].div(&got[k]);
        let (gg, a, b) = ext_gcd(g, degrees[k]);
        lam = lam.pow_i(a).mul(&r.pow_i(b));
        g = gg;
        if g == 1 {
            break;
        }
    }
    if g != 1 {
        return None;
    }
    // verify
    for k in 0..9 {
        if got[k].is_zero() {
            continue;
        }
        if got[k].mul(&lam.pow_u(degrees[k] as u64)) != target[k] {
            return None;
        }
    }
    Some(lam)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if a == 0 {
        return (b, 0, 1);
    }
    let (g, x, y) = ext_gcd(b % a, a);
    (g, y - (b / a) * x, x)
}
