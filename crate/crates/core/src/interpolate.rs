//! Expressing joint invariants as polynomials in the thirteen fundamental
//! invariants: monomial enumeration, the sampling pipeline producing matrix
//! rows and targets, per-prime solving, and function-level verification.
//!
//! The coefficient vectors are not unique (the invariants satisfy relations);
//! determinism of the particular solution comes entirely from the solver's
//! lexicographic pivot rule, which makes per-prime solutions reductions of
//! one rational vector and CRT assembly coherent.

use crate::dixmier_ohno::{DOCtx, DOTuple, DO_DEGREES};
use crate::matrix::{solve_linear, Matrix};
use crate::normalize::{normalize_quartic, NormalizeError};
use crate::olive::{joint_invariants, label_index, JointTuple, J_DEFS};
use crate::rng::SplitMix64;
use crate::scalar::{Field, FieldRand, FieldSqrt};
use crate::ternary::TernaryForm;
use crate::vanrijnswou::{Variant, VrMaps};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_rational::BigRational;

pub type Exponents = [u8; 13];

/// Exponent vectors with given weights summing to `total`, in descending
/// lexicographic order (the serialization and pivot order).
pub fn enumerate_weighted(weights: &[u64], total: u64) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; weights.len()];
    fn rec(weights: &[u64], pos: usize, remaining: u64, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if pos == weights.len() {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[pos];
        let maxe = (remaining / w).min(255) as u8;
        for e in (0..=maxe).rev() {
            cur[pos] = e;
            rec(weights, pos + 1, remaining - e as u64 * w, cur, out);
        }
        cur[pos] = 0;
    }
    rec(weights, 0, total, &mut cur, &mut out);
    out
}

/// All exponent vectors of weighted degree 9d over the invariant degrees, in
/// descending lexicographic order.
pub fn enumerate_monomials(d: usize) -> Vec<Exponents> {
    enumerate_weighted(&DO_DEGREES, 9 * d as u64)
        .into_iter()
        .map(|v| {
            let mut e = [0u8; 13];
            e.copy_from_slice(&v);
            e
        })
        .collect()
}

/// Monomial count via the generating series coefficient of x^(9d) in
/// prod 1/(1 - x^deg): the independent oracle for the enumeration.
pub fn monomial_count_series(d: usize) -> u64 {
    let n = 9 * d + 1;
    let mut coeffs = vec![0u64; n];
    coeffs[0] = 1;
    for &deg in DO_DEGREES.iter() {
        let deg = deg as usize;
        for k in deg..n {
            coeffs[k] += coeffs[k - deg];
        }
    }
    coeffs[9 * d]
}

pub fn eval_monomial<F: Field>(inv: &[F], exps: &Exponents) -> F {
    let mut acc = inv[0].one_like();
    for (k, &e) in exps.iter().enumerate() {
        if e > 0 {
            acc = acc.mul(&inv[k].pow_u(e as u64));
        }
    }
    acc
}

/// One accepted sample: a random quartic in the generic locus together with
/// everything row building needs.
pub struct Sample<F: Field> {
    pub invariants: Vec<F>,
    /// I9 / b0 on the normalized representative; equals 5 u^2.
    pub ratio: F,
    pub joint: JointTuple<F>,
}

/// Draw one random quartic, keep it when the generic-locus conditions hold,
/// and package invariants, joint invariants and the target ratio.
pub fn draw_sample<F: Field + FieldRand + FieldSqrt>(
    ctx: &DOCtx<F>,
    vr: &VrMaps<F>,
    rng: &mut SplitMix64,
) -> Option<Sample<F>> {
    let proto = ctx_element(ctx);
    let f = TernaryForm::new(4, (0..15).map(|_| proto.random_like(rng)).collect::<Vec<F>>());
    let inv = ctx.invariants(&f).ok()?;
    if inv.i12().is_zero() || inv.i9().is_zero() {
        return None;
    }
    let norm = match normalize_quartic(ctx, &f, rng.next_u64(), 24) {
        Ok(n) => n,
        Err(NormalizeError::RhoDegenerate) => return None,
        Err(_) => return None,
    };
    let triple = vr.split(&norm.quartic, Variant::LStar);
    if triple.b0.is_zero() {
        return None;
    }
    // internal coherence: I9 = 5 u^2 b0 on every accepted sample
    let five_u2 = proto.from_i64_like(5).mul(&norm.u.pow_u(2));
    debug_assert_eq!(inv.i9().clone(), five_u2.mul(&triple.b0));
    let joint = joint_invariants(&triple.b8, &triple.b4, &triple.b0).ok()?;
    let ratio = inv.i9().div(&triple.b0);
    Some(Sample { invariants: inv.values, ratio, joint })
}

fn ctx_element<F: Field>(ctx: &DOCtx<F>) -> F {
    ctx.proto().clone()
}

/// Target value for one label at one sample: j * (I9/b0)^d.
pub fn sample_target<F: Field>(s: &Sample<F>, label: &str) -> F {
    let idx = label_index(label).expect("label");
    let d = (J_DEFS[idx].d8 + J_DEFS[idx].d4) as u64;
    s.joint.values[idx].mul(&s.ratio.pow_u(d))
}

/// Solved relation for one label over one prime: the deterministic particular
/// solution on the enumerated monomials.
pub struct SolvedRelation<F: Field> {
    pub label: String,
    pub degree: usize,
    pub coeffs: Vec<F>,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InterpolateError {
    RankUnstable,
    Inconsistent,
    ReconstructionFailed,
    NotEnoughSamples,
}

impl core::fmt::Display for InterpolateError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            InterpolateError::RankUnstable => write!(f, "evaluation matrix rank did not stabilize"),
            InterpolateError::Inconsistent => write!(f, "interpolation system inconsistent"),
            InterpolateError::ReconstructionFailed => write!(f, "rational reconstruction failed; add primes"),
            InterpolateError::NotEnoughSamples => write!(f, "fewer samples than required"),
        }
    }
}

/// Solve, over one field, the interpolation systems of one degree for several
/// labels sharing the same monomial matrix.
pub fn solve_degree<F: Field>(
    samples: &[Sample<F>],
    monomials: &[Exponents],
    labels: &[&str],
) -> Result<Vec<SolvedRelation<F>>, InterpolateError> {
    if samples.is_empty() {
        return Err(InterpolateError::NotEnoughSamples);
    }
    let rows: Vec<Vec<F>> = samples
        .iter()
        .map(|s| monomials.iter().map(|m| eval_monomial(&s.invariants, m)).collect())
        .collect();
    let a = Matrix::from_rows(rows);
    let mut out = Vec::with_capacity(labels.len());
    for &label in labels {
        let idx = label_index(label).expect("label");
        let degree = (J_DEFS[idx].d8 + J_DEFS[idx].d4) as usize;
        let b: Vec<F> = samples.iter().map(|s| sample_target(s, label)).collect();
        let sol = solve_linear(&a, &b).map_err(|_| InterpolateError::Inconsistent)?;
        out.push(SolvedRelation {
            label: String::from(label),
            degree,
            coeffs: sol.solution,
            rank: sol.rank,
            pivot_cols: sol.pivot_cols,
        });
    }
    Ok(out)
}

/// A relation with exact rational coefficients (what the database stores).
#[derive(Clone, Debug)]
pub struct Relation {
    pub label: String,
    pub degree: usize,
    pub terms: Vec<(Exponents, BigRational)>,
    pub primes_used: Vec<u64>,
    pub samples: usize,
    pub rank: usize,
    pub verified: bool,
}

impl Relation {
    /// Specialize the rational coefficients into a working field.
    pub fn specialize<F: Field>(&self, ctx: &F) -> Option<Vec<(Exponents, F)>> {
        self.terms
            .iter()
            .map(|(e, q)| reduce_rational(q, ctx).map(|c| (*e, c)))
            .collect()
    }

    pub fn evaluate<F: Field>(&self, inv: &[F]) -> Option<F> {
        let ctx = &inv[0];
        let mut acc = ctx.zero_like();
        for (e, q) in &self.terms {
            let c = reduce_rational(q, ctx)?;
            acc = acc.add(&c.mul(&eval_monomial(inv, e)));
        }
        Some(acc)
    }
}

/// Reduce an exact rational into any field; None if the characteristic
/// divides the denominator.
pub fn reduce_rational<F: Field>(q: &BigRational, ctx: &F) -> Option<F> {
    let embed_bigint = |n: &num_bigint::BigInt| -> F {
        let mut acc = ctx.zero_like();
        let base = ctx.from_i64_like(1i64 << 32);
        let (sign, digits) = n.to_u32_digits();
        for &d in digits.iter().rev() {
            acc = acc.mul(&base).add(&ctx.from_i64_like(d as i64));
        }
        if sign == num_bigint::Sign::Minus {
            acc.neg()
        } else {
            acc
        }
    };
    let den = embed_bigint(q.denom());
    let num = embed_bigint(q.numer());
    den.inv().map(|d| num.mul(&d))
}

/// Database of solved relations, keyed by label.
#[derive(Clone, Debug, Default)]
pub struct RelationDb {
    pub relations: Vec<Relation>,
}

impl RelationDb {
    pub fn get(&self, label: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.label == label)
    }

    pub fn insert(&mut self, rel: Relation) {
        if let Some(slot) = self.relations.iter_mut().find(|r| r.label == rel.label) {
            *slot = rel;
        } else {
            self.relations.push(rel);
        }
    }
}

/// Full pipeline for one degree over several word primes: per-prime
/// deterministic solves, deviant-pivot discard, CRT, and rational
/// reconstruction. Sequential reference implementation; the CLI job drives
/// the same steps with a Montgomery kernel for the large degrees.
pub fn solve_relations_multiprime(
    degree: usize,
    labels: &[&str],
    primes: &[u64],
    extra_samples: usize,
    seed: u64,
) -> Result<Vec<Relation>, InterpolateError> {
    use crate::crt::{crt_combine, rational_reconstruct};
    use num_bigint::BigInt;

    let monomials = enumerate_monomials(degree);
    let need = monomials.len() + extra_samples;
    let mut per_prime: Vec<(u64, Vec<SolvedRelation<crate::scalar::Fp64>>)> = Vec::new();
    for (pi, &p) in primes.iter().enumerate() {
        let fp0 = crate::scalar::Fp64::new(0, p);
        let ctx = DOCtx::new(&fp0).map_err(|_| InterpolateError::Inconsistent)?;
        let vr = VrMaps::new(&fp0).map_err(|_| InterpolateError::Inconsistent)?;
        let mut rng = SplitMix64::new(seed ^ (0xabcd + pi as u64));
        let mut samples = Vec::with_capacity(need);
        let mut guard = 0usize;
        while samples.len() < need {
            guard += 1;
            if guard > 60 * need + 1000 {
                return Err(InterpolateError::NotEnoughSamples);
            }
            if let Some(s) = draw_sample(&ctx, &vr, &mut rng) {
                samples.push(s);
            }
        }
        let solved = solve_degree(&samples, &monomials, labels)?;
        per_prime.push((p, solved));
    }
    // majority pivot set per label; discard deviant primes
    let mut out = Vec::with_capacity(labels.len());
    for (li, &label) in labels.iter().enumerate() {
        let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new(); // (pivots, prime idxs)
        for (i, (_, solved)) in per_prime.iter().enumerate() {
            let piv = &solved[li].pivot_cols;
            match groups.iter_mut().find(|(g, _)| g == piv) {
                Some((_, idxs)) => idxs.push(i),
                None => groups.push((piv.clone(), vec![i])),
            }
        }
        groups.sort_by_key(|(_, idxs)| usize::MAX - idxs.len());
        let (_pivots, kept) = &groups[0];
        if kept.len() < per_prime.len().div_ceil(2) {
            return Err(InterpolateError::RankUnstable);
        }
        let rank = per_prime[kept[0]].1[li].rank;
        let mut terms: Vec<(Exponents, BigRational)> = Vec::new();
        for (mi, mono) in monomials.iter().enumerate() {
            let residues: Vec<(BigInt, BigInt)> = kept
                .iter()
                .map(|&i| {
                    let (p, solved) = &per_prime[i];
                    (BigInt::from(solved[li].coeffs[mi].value()), BigInt::from(*p))
                })
                .collect();
            let (x, m) = crt_combine(&residues).map_err(|_| InterpolateError::Inconsistent)?;
            let q = rational_reconstruct(&x, &m).ok_or(InterpolateError::ReconstructionFailed)?;
            if !crate::scalar::Field::is_zero(&q) {
                terms.push((*mono, q));
            }
        }
        out.push(Relation {
            label: String::from(label),
            degree,
            terms,
            primes_used: kept.iter().map(|&i| per_prime[i].0).collect(),
            samples: need,
            rank,
            verified: false,
        });
    }
    Ok(out)
}

/// Function-level verification on fresh samples: the stored relation must
/// reproduce j (I9/b0)^d exactly at every accepted sample.
pub fn verify_relation<F: Field + FieldRand + FieldSqrt>(
    ctx: &DOCtx<F>,
    vr: &VrMaps<F>,
    rel: &Relation,
    fresh: usize,
    rng: &mut SplitMix64,
) -> bool {
    let spec = match rel.specialize(&ctx_element(ctx)) {
        Some(s) => s,
        None => return false,
    };
    let mut done = 0;
    let mut tries = 0;
    while done < fresh {
        tries += 1;
        if tries > 50 * fresh + 100 {
            return false;
        }
        let Some(s) = draw_sample(ctx, vr, rng) else { continue };
        let mut lhs = s.invariants[0].zero_like();
        for (e, c) in &spec {
            lhs = lhs.add(&c.mul(&eval_monomial(&s.invariants, e)));
        }
        if lhs != sample_target(&s, &rel.label) {
            return false;
        }
        done += 1;
    }
    true
}

/// Convenience: invariants as a DOTuple.
pub fn tuple_from_values<F: Field>(values: Vec<F>) -> DOTuple<F> {
    DOTuple::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp64;

    #[test]
    fn monomial_counts_match_series() {
        // degree-1 slice: I3^3, I3 I6, I9, J9
        let m1 = enumerate_monomials(1);
        assert_eq!(m1.len(), 4);
        assert_eq!(m1[0][0], 3);
        for d in 1..=5 {
            assert_eq!(
                enumerate_monomials(d).len() as u64,
                monomial_count_series(d),
                "degree {}",
                d
            );
        }
        assert_eq!(monomial_count_series(2), 19);
        assert_eq!(monomial_count_series(3), 67);
        assert_eq!(monomial_count_series(4), 206);
        assert_eq!(monomial_count_series(5), 557);
        assert_eq!(monomial_count_series(10), 27398);
    }

    #[test]
    fn monomials_lex_descending_and_unique() {
        let m = enumerate_monomials(3);
        for w in m.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    /// Solve the degree-2 relations over two primes and compare against the
    /// published closed forms as functions on fresh quartics:
    /// P_{j0_2} = (100 I9^2 - 300 I18)/49 and the fifteen-term P_{j2_0}.
    #[test]
    fn degree_two_relations_match_printed_formulas() {
        let primes = [1073741827u64, 1073741831];
        let rels = solve_relations_multiprime(2, &["j0_2", "j2_0"], &primes, 30, 1234).unwrap();
        for check_prime in [29u64, 10007] {
            let fp0 = Fp64::new(0, check_prime);
            let ctx = DOCtx::new(&fp0).unwrap();
            let vr = VrMaps::new(&fp0).unwrap();
            let mut rng = SplitMix64::new(777);
            let mut done = 0;
            while done < 25 {
                let Some(s) = draw_sample(&ctx, &vr, &mut rng) else { continue };
                let iv = &s.invariants;
                // j0_2 * (I9/b0)^2 = (100 I9^2 - 300 I18) / 49
                let i9 = &iv[2];
                let i12 = &iv[4];
                let i15 = &iv[6];
                let i18 = &iv[8];
                let expect = fp0
                    .from_i64_like(100)
                    .mul(&i9.mul(i9))
                    .sub(&fp0.from_i64_like(300).mul(i18))
                    .div(&fp0.from_i64_like(49));
                let got = rels[0].evaluate(iv).unwrap();
                assert_eq!(got, expect, "j0_2 relation at p = {}", check_prime);
                assert_eq!(got, sample_target(&s, "j0_2"));
                // fifteen-term j2_0 numerator over 2^5 3^4 7^2
                let (i3, i6, j9, j12, j15, j18) = (&iv[0], &iv[1], &iv[3], &iv[5], &iv[7], &iv[9]);
                let c = |v: i64| fp0.from_i64_like(v);
                let num = c(2 * 5 * 7 * 13)
                    .mul(&i3.pow_u(4))
                    .mul(i6)
                    .sub(&c(5).mul(&i3.pow_u(3)).mul(i9))
                    .sub(&c(45).mul(&i3.pow_u(3)).mul(j9))
                    .add(&c(64 * 5 * 7 * 29).mul(&i3.pow_u(2)).mul(&i6.mul(i6)))
                    .sub(&c(2 * 5 * 23).mul(&i3.pow_u(2)).mul(i12))
                    .add(&c(4 * 3 * 5).mul(&i3.pow_u(2)).mul(j12))
                    .sub(&c(16 * 9 * 5 * 17).mul(i3).mul(&i6.mul(i9)))
                    .add(&c(16 * 27 * 25).mul(i3).mul(&i6.mul(j9)))
                    .add(&c(64 * 5 * 7).mul(i3).mul(j15))
                    .add(&c(512 * 9 * 25 * 7).mul(&i6.pow_u(3)))
                    .add(&c(32 * 9 * 5 * 113).mul(i6).mul(i12))
                    .sub(&c(64 * 9 * 25).mul(i6).mul(j12))
                    .add(&c(32 * 9).mul(&i9.mul(i9)))
                    .sub(&c(8 * 9 * 5).mul(i18))
                    .sub(&c(8 * 9 * 5 * 7).mul(j18));
                let expect = num.div(&c(32 * 81 * 49));
                let got = rels[1].evaluate(iv).unwrap();
                assert_eq!(got, expect, "j2_0 relation at p = {}", check_prime);
                assert_eq!(got, sample_target(&s, "j2_0"));
                let _ = i15;
                done += 1;
            }
        }
    }

    /// Degree-3: P_{j0_3} = (-1000 I9^3 + 4500 I9 I18 - 13500 I12 I15)/343.
    #[test]
    fn degree_three_relation_matches_printed_formula() {
        let primes = [1073741827u64, 1073741831];
        let rels = solve_relations_multiprime(3, &["j0_3"], &primes, 30, 99).unwrap();
        let fp0 = Fp64::new(0, 10007);
        let ctx = DOCtx::new(&fp0).unwrap();
        let vr = VrMaps::new(&fp0).unwrap();
        let mut rng = SplitMix64::new(778);
        let mut done = 0;
        while done < 25 {
            let Some(s) = draw_sample(&ctx, &vr, &mut rng) else { continue };
            let iv = &s.invariants;
            let (i9, i12, i15, i18) = (&iv[2], &iv[4], &iv[6], &iv[8]);
            let c = |v: i64| fp0.from_i64_like(v);
            let expect = c(-1000)
                .mul(&i9.pow_u(3))
                .add(&c(4500).mul(i9).mul(i18))
                .sub(&c(13500).mul(i12).mul(i15))
                .div(&c(343));
            let got = rels[0].evaluate(iv).unwrap();
            assert_eq!(got, expect);
            assert_eq!(got, sample_target(&s, "j0_3"));
            done += 1;
        }
    }

    /// A corrupted coefficient is caught by function-level verification.
    #[test]
    fn corrupted_relation_fails_verification() {
        let primes = [1073741827u64, 1073741831];
        let mut rels = solve_relations_multiprime(2, &["j0_2"], &primes, 30, 55).unwrap();
        let fp0 = Fp64::new(0, 10007);
        let ctx = DOCtx::new(&fp0).unwrap();
        let vr = VrMaps::new(&fp0).unwrap();
        let mut rng = SplitMix64::new(66);
        assert!(verify_relation(&ctx, &vr, &rels[0], 20, &mut rng));
        // corrupt one coefficient
        let one = num_traits::One::one();
        rels[0].terms[0].1 = &rels[0].terms[0].1 + &BigRational::from_integer(one);
        assert!(!verify_relation(&ctx, &vr, &rels[0], 20, &mut rng));
    }

    #[test]
    fn samples_accepted_over_f29() {
        let fp0 = Fp64::new(0, 29);
        let ctx = DOCtx::new(&fp0).unwrap();
        let vr = VrMaps::new(&fp0).unwrap();
        let mut rng = SplitMix64::new(7);
        let mut got = 0;
        for _ in 0..200 {
            if draw_sample(&ctx, &vr, &mut rng).is_some() {
                got += 1;
            }
        }
        assert!(got > 20, "acceptance rate too low: {}", got);
    }
}

#[cfg(test)]
mod debug_dump {
    use super::*;

    #[test]
    #[ignore = "debugging aid"]
    fn dump_j20_coefficients() {
        let primes = [1073741827u64, 1073741831, 1073741833];
        let rels = solve_relations_multiprime(2, &["j2_0", "j0_2"], &primes, 30, 1234).unwrap();
        for rel in &rels {
            std::println!("=== {} rank {} of {} monomials ===", rel.label, rel.rank, enumerate_monomials(rel.degree).len());
            for (e, q) in &rel.terms {
                let names = crate::dixmier_ohno::DO_NAMES;
                let mut mono = alloc::string::String::new();
                for (k, &ex) in e.iter().enumerate() {
                    if ex > 0 {
                        mono.push_str(names[k]);
                        if ex > 1 {
                            mono.push('^');
                            mono.push_str(&alloc::format!("{}", ex));
                        }
                        mono.push(' ');
                    }
                }
                std::println!("  {} : {}", mono, crate::scalar::Field::render(q));
            }
        }
    }
}
