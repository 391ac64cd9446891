//! Reconstruction of a plane quartic from a generic invariant tuple: joint
//! invariants from the relation database, the octic via the conic method,
//! exact scale matching, the linear solve for the quartic component, and the
//! final transport back with self-certification.

use crate::binary::BinaryForm;
use crate::dixmier_ohno::{weighted_projective_equal, DOCtx, DOTuple};
use crate::interpolate::RelationDb;
use crate::matrix::{solve_linear, Matrix};
use crate::mestre::{match_scale, reconstruct_octic, MestreError};
use crate::olive::{
    is_stable_pair, joint_invariants, label_index, octic_is_generic, JointTuple, J_DEFS, NUM_J,
};
use crate::scalar::{Field, FieldRand, FieldSqrt};
use crate::ternary::TernaryForm;
use crate::vanrijnswou::{Triple, Variant, VrMaps};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReconstructError {
    /// Assumption (i): I12 != 0 fails.
    RhoDegenerate,
    /// The b0 normalization needs I9 != 0 or a unique cube root of -4 I12.
    NormalizationFails,
    /// A needed relation is missing from the database.
    MissingRelation(String),
    /// A relation coefficient does not reduce into this field.
    BadCharacteristic,
    /// Assumption (ii): the octic invariants sit on the excluded locus.
    NonGenericOctic,
    Mestre(MestreError),
    /// No consistent exact scale for the octic.
    NoConsistentScale,
    /// Assumption (iii): the linear forms for b4 have rank < 5 and the
    /// fallback could not finish.
    RankDeficient,
    /// The b4 system is inconsistent: upstream invariants not realizable.
    Inconsistent,
    /// Final certification failed (should not happen; indicates a bug or a
    /// non-generic input slipping through).
    CertificationFailed,
}

impl From<MestreError> for ReconstructError {
    fn from(e: MestreError) -> Self {
        match e {
            MestreError::NonGenericOctic => ReconstructError::NonGenericOctic,
            other => ReconstructError::Mestre(other),
        }
    }
}

impl core::fmt::Display for ReconstructError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ReconstructError::RhoDegenerate => write!(f, "assumption (i) violated: I12 = 0"),
            ReconstructError::NormalizationFails => {
                write!(f, "b0 normalization failed: I9 = 0 and -4 I12 has no unique cube root")
            }
            ReconstructError::MissingRelation(l) => write!(f, "relation database lacks {}", l),
            ReconstructError::BadCharacteristic => write!(f, "relation denominators vanish here"),
            ReconstructError::NonGenericOctic => {
                write!(f, "assumption (ii) violated: octic on the excluded locus")
            }
            ReconstructError::Mestre(e) => write!(f, "octic reconstruction: {}", e),
            ReconstructError::NoConsistentScale => write!(f, "no consistent octic scale"),
            ReconstructError::RankDeficient => {
                write!(f, "assumption (iii) violated: linear forms have rank < 5")
            }
            ReconstructError::Inconsistent => write!(f, "b4 system inconsistent"),
            ReconstructError::CertificationFailed => write!(f, "output failed certification"),
        }
    }
}

/// The labels the pipeline consumes from the database.
pub fn required_labels() -> Vec<&'static str> {
    let mut v = vec![
        "j2_0", "j3_0", "j4_0", "j5_0", "j6_0", "j7_0", "j8_0", "j9_0", "j10_0",
    ];
    v.extend([
        "j2_1", "j3_1", "j4_1", "j4_1p", "j5_1", "j5_1p", "j6_1", "j6_1p", "j7_1", "j7_1p",
        "j8_1", "j8_1p", "j9_1",
    ]);
    v.extend(["j0_2", "j0_3"]);
    v
}

/// Joint invariants evaluated from an invariant tuple through the relation
/// database. With I9 != 0 the triple is normalized so b0 = I9; on the I9 = 0
/// locus the multiplier route is used instead (unique cube roots only).
pub fn joint_from_do<F: Field>(
    tuple: &DOTuple<F>,
    db: &RelationDb,
) -> Result<JointTuple<F>, ReconstructError> {
    if tuple.i12().is_zero() {
        return Err(ReconstructError::RhoDegenerate);
    }
    let ctx = &tuple.values[0];
    // scale factor c with j_label = P(I) * c^degree
    let (c, b0) = if !tuple.i9().is_zero() {
        (
            tuple.i9().inv().expect("nonzero"),
            tuple.i9().clone(),
        )
    } else {
        // u^3 = -4 I12; representative on the normalized locus with b0 = 0
        let u = cube_root(&tuple.i12().mul(&ctx.from_i64_like(-4)))
            .ok_or(ReconstructError::NormalizationFails)?;
        (u.mul(&u).inv().expect("nonzero"), ctx.zero_like())
    };
    let mut values = vec![ctx.zero_like(); NUM_J];
    for (k, def) in J_DEFS.iter().enumerate() {
        let rel = match db.get(def.label) {
            Some(r) => r,
            None => {
                if def.label == "j10_1" {
                    continue; // never required
                }
                if required_labels().contains(&def.label) {
                    return Err(ReconstructError::MissingRelation(String::from(def.label)));
                }
                continue;
            }
        };
        let p_val = rel
            .evaluate(&tuple.values)
            .ok_or(ReconstructError::BadCharacteristic)?;
        let d = (def.d8 + def.d4) as u64;
        values[k] = p_val.mul(&c.pow_u(d));
    }
    Ok(JointTuple { values, b0 })
}

/// Unique cube root when the domain canonically provides one.
pub fn cube_root<F: Field>(x: &F) -> Option<F> {
    x.cube_root()
}

/// Solve for b4 from the degree-1 joint linear forms. `targets` holds the
/// wanted value per label present; rows are built by linearity in the b4
/// coefficients.
pub fn solve_b4<F: Field + FieldSqrt>(
    b8: &BinaryForm<F>,
    b0: &F,
    targets: &[(&str, F)],
    vr: &VrMaps<F>,
    doctx: &DOCtx<F>,
) -> Result<BinaryForm<F>, ReconstructError> {
    let ctx = b8.ctx();
    let basis: Vec<BinaryForm<F>> = (0..5)
        .map(|k| {
            let mut c = vec![ctx.zero_like(); 5];
            c[k] = ctx.one_like();
            BinaryForm::new(c)
        })
        .collect();
    // coefficient matrix: j_label(b8, e_k) by linearity in b4
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(targets.len());
    let mut rhs: Vec<F> = Vec::with_capacity(targets.len());
    for (label, want) in targets {
        let idx = label_index(label).expect("label");
        let mut row = Vec::with_capacity(5);
        for e in &basis {
            let j = joint_invariants(b8, e, b0).map_err(|_| ReconstructError::BadCharacteristic)?;
            row.push(j.values[idx].clone());
        }
        rows.push(row);
        rhs.push(want.clone());
    }
    let a = Matrix::from_rows(rows.clone());
    let sol = solve_linear(&a, &rhs).map_err(|_| ReconstructError::Inconsistent)?;
    if sol.rank >= 5 {
        let b4 = BinaryForm::new(sol.solution);
        return Ok(b4);
    }
    // Fallback: complement with the normalized-contravariant conditions on
    // the merged quartic, along the solution line (rank-4 case).
    if sol.rank == 4 {
        if let Some(b4) = fallback_line_solve(b8, b0, &a, &rhs, &sol.solution, vr, doctx) {
            return Ok(b4);
        }
    }
    Err(ReconstructError::RankDeficient)
}

/// Rank-4 fallback: parametrize b4 = particular + t * kernel and demand that
/// rho of the merged quartic is proportional to v2^2 - v1 v3; the resulting
/// one-variable polynomial conditions are intersected by gcd.
fn fallback_line_solve<F: Field + FieldSqrt>(
    b8: &BinaryForm<F>,
    b0: &F,
    a: &Matrix<F>,
    rhs: &[F],
    particular: &[F],
    vr: &VrMaps<F>,
    doctx: &DOCtx<F>,
) -> Option<BinaryForm<F>> {
    let ctx = b8.ctx();
    // kernel vector of the rank-4 system: solve A k = 0 with one free var
    let zero_rhs = vec![ctx.zero_like(); rhs.len()];
    let _ = zero_rhs;
    // find the free column: the one not among pivots of A
    let sol = solve_linear(a, &vec![ctx.zero_like(); a.rows]).ok()?;
    let free: Vec<usize> = (0..5).filter(|c| !sol.pivot_cols.contains(c)).collect();
    if free.len() != 1 {
        return None;
    }
    let fc = free[0];
    // kernel vector: set free var to 1, solve pivots
    let mut kernel = vec![ctx.zero_like(); 5];
    kernel[fc] = ctx.one_like();
    // back-substitute: A (particular + t*kernel) = rhs for all t requires
    // A kernel = 0; recompute kernel properly via elimination
    let col: Vec<F> = (0..a.rows).map(|r| a.at(r, fc).clone()).collect();
    let reduced = solve_linear(
        &drop_column(a, fc),
        &col.iter().map(|x| x.neg()).collect::<Vec<_>>(),
    )
    .ok()?;
    let mut kk = 0;
    for c in 0..5 {
        if c == fc {
            continue;
        }
        kernel[c] = reduced.solution[kk].clone();
        kk += 1;
    }
    // rho(merge(b8, b4(t), b0)) coefficients are quartic polynomials in t;
    // sample five points and interpolate each condition polynomial
    let ts: Vec<F> = (0..5).map(|k| ctx.from_i64_like(k as i64)).collect();
    let mut conds: Vec<Vec<F>> = vec![Vec::new(); 5];
    for t in &ts {
        let b4 = BinaryForm::new(
            (0..5)
                .map(|k| particular[k].add(&t.mul(&kernel[k])))
                .collect::<Vec<F>>(),
        );
        let f = vr.merge(&Triple { b8: b8.clone(), b4, b0: b0.clone() }, Variant::LStar);
        let rho = doctx.tower(&f).ok()?.rho;
        let q = crate::ternary::TernaryQuadric::from_form(&rho);
        let vals = [
            q.b.clone(),
            q.c.clone(),
            q.d.clone(),
            q.f.clone(),
            q.e.add(&q.a),
        ];
        for (i, v) in vals.into_iter().enumerate() {
            conds[i].push(v);
        }
    }
    // Lagrange-interpolate each condition as a degree-4 polynomial in t,
    // combine by gcd, and read a root off a linear (or quadratic) factor.
    let polys: Vec<Vec<F>> = conds.iter().map(|v| lagrange(&ts, v)).collect();
    let mut g = polys[0].clone();
    for p in &polys[1..] {
        g = poly_gcd(&g, p);
    }
    let root = match g.len() {
        2 => Some(g[0].div(&g[1]).neg()),
        3 => {
            // quadratic: (-b +- sqrt(b^2 - 4ac)) / 2a
            let (c0, c1, c2) = (&g[0], &g[1], &g[2]);
            let disc = c1.mul(c1).sub(&c0.mul(c2).mul(&ctx.from_i64_like(4)));
            disc.sqrt().map(|s| {
                c1.neg().add(&s).div(&c2.mul(&ctx.from_i64_like(2)))
            })
        }
        _ => None,
    }?;
    let b4 = BinaryForm::new(
        (0..5)
            .map(|k| particular[k].add(&root.mul(&kernel[k])))
            .collect::<Vec<F>>(),
    );
    Some(b4)
}

fn drop_column<F: Field>(a: &Matrix<F>, col: usize) -> Matrix<F> {
    let rows: Vec<Vec<F>> = (0..a.rows)
        .map(|r| {
            (0..a.cols)
                .filter(|&c| c != col)
                .map(|c| a.at(r, c).clone())
                .collect()
        })
        .collect();
    Matrix::from_rows(rows)
}

/// Coefficients (ascending) of the polynomial with given values at the given
/// points.
fn lagrange<F: Field>(xs: &[F], ys: &[F]) -> Vec<F> {
    let n = xs.len();
    let ctx = &xs[0];
    let mut acc = vec![ctx.zero_like(); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut num = vec![ctx.one_like()];
        let mut den = ctx.one_like();
        for j in 0..n {
            if j == i {
                continue;
            }
            num = poly_mul_linear(&num, &xs[j].neg());
            den = den.mul(&xs[i].sub(&xs[j]));
        }
        let scale = ys[i].div(&den);
        for (k, c) in num.iter().enumerate() {
            acc[k] = acc[k].add(&c.mul(&scale));
        }
    }
    while acc.len() > 1 && acc.last().unwrap().is_zero() {
        acc.pop();
    }
    acc
}

fn poly_mul_linear<F: Field>(p: &[F], c0: &F) -> Vec<F> {
    // p(x) * (x + c0)
    let ctx = &p[0];
    let mut out = vec![ctx.zero_like(); p.len() + 1];
    for (k, c) in p.iter().enumerate() {
        out[k] = out[k].add(&c.mul(c0));
        out[k + 1] = out[k + 1].add(c);
    }
    out
}

fn poly_gcd<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let fa = BinaryForm::new(a.iter().rev().cloned().collect::<Vec<F>>());
    let fb = BinaryForm::new(b.iter().rev().cloned().collect::<Vec<F>>());
    fa.gcd_dehom(&fb)
}

/// Everything the pipeline produced, for audit.
#[derive(Clone, Debug)]
pub struct ReconstructionReport<F: Field> {
    pub input: DOTuple<F>,
    pub joint: JointTuple<F>,
    pub octic_raw: BinaryForm<F>,
    pub scale: F,
    pub b8: BinaryForm<F>,
    pub b4: BinaryForm<F>,
    pub b0: F,
    pub quartic: TernaryForm<F>,
    pub certified: DOTuple<F>,
    pub stable: bool,
    pub exact: bool,
}

pub struct ReconstructOptions {
    pub seed: u64,
    pub exact: bool,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        ReconstructOptions { seed: 1, exact: false }
    }
}

/// The full pipeline from an invariant tuple to a certified quartic.
pub fn reconstruct_quartic<F: Field + FieldRand + FieldSqrt>(
    doctx: &DOCtx<F>,
    vr: &VrMaps<F>,
    tuple: &DOTuple<F>,
    db: &RelationDb,
    options: &ReconstructOptions,
) -> Result<ReconstructionReport<F>, ReconstructError> {
    let joint = joint_from_do(tuple, db)?;
    reconstruct_from_joint(doctx, vr, tuple, &joint, options)
}

/// The post-relation half of the pipeline, also used database-free when the
/// joint invariants come straight from a split triple.
pub fn reconstruct_from_joint<F: Field + FieldRand + FieldSqrt>(
    doctx: &DOCtx<F>,
    vr: &VrMaps<F>,
    tuple: &DOTuple<F>,
    joint: &JointTuple<F>,
    options: &ReconstructOptions,
) -> Result<ReconstructionReport<F>, ReconstructError> {
    let octic_targets = joint.octic_part();
    if !octic_is_generic(&octic_targets) {
        return Err(ReconstructError::NonGenericOctic);
    }
    let octic_raw = reconstruct_octic(&octic_targets, options.seed)?;
    let got = crate::olive::octic_invariants(&octic_raw)
        .map_err(|_| ReconstructError::BadCharacteristic)?;
    let scale = match_scale(&got, &octic_targets).ok_or(ReconstructError::NoConsistentScale)?;
    let b8 = octic_raw.scale(&scale);
    // self-check: exact invariant match now
    let check = crate::olive::octic_invariants(&b8)
        .map_err(|_| ReconstructError::BadCharacteristic)?;
    if check != octic_targets {
        return Err(ReconstructError::NoConsistentScale);
    }
    let b0 = joint.b0.clone();
    let d1_labels = [
        "j2_1", "j3_1", "j4_1", "j4_1p", "j5_1", "j5_1p", "j6_1", "j6_1p", "j7_1", "j7_1p",
        "j8_1", "j8_1p", "j9_1",
    ];
    let targets: Vec<(&str, F)> = d1_labels
        .iter()
        .map(|l| (*l, joint.get(l).clone()))
        .collect();
    let b4 = solve_b4(&b8, &b0, &targets, vr, doctx)?;
    // residual check on all used equations
    let jt = joint_invariants(&b8, &b4, &b0).map_err(|_| ReconstructError::BadCharacteristic)?;
    for (l, want) in &targets {
        if jt.get(l) != want {
            return Err(ReconstructError::Inconsistent);
        }
    }
    let stable = is_stable_pair(&b8, &b4);
    let quartic = vr.merge(
        &Triple { b8: b8.clone(), b4: b4.clone(), b0: b0.clone() },
        Variant::LStar,
    );
    let certified = doctx
        .invariants(&quartic)
        .map_err(|_| ReconstructError::BadCharacteristic)?;
    if weighted_projective_equal(&certified, tuple).is_none() {
        return Err(ReconstructError::CertificationFailed);
    }
    let mut report = ReconstructionReport {
        input: tuple.clone(),
        joint: joint.clone(),
        octic_raw,
        scale,
        b8,
        b4,
        b0,
        quartic,
        certified,
        stable,
        exact: false,
    };
    if options.exact {
        if let Ok(better) = crate::dixmier_ohno::exact_rescale(doctx, &report.quartic, tuple) {
            report.certified = doctx
                .invariants(&better)
                .map_err(|_| ReconstructError::BadCharacteristic)?;
            report.quartic = better;
            report.exact = true;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normalize::normalize_quartic;
    use crate::rng::SplitMix64;
    use crate::scalar::Fp64;

    fn fp29(v: i64) -> Fp64 {
        Fp64::new(v, 29)
    }

    /// Which rescaling of the printed octic merges (with the printed b4 and
    /// b0 = 0) to the printed reconstructed quartic? The worked text says
    /// "replace b8 by 26 b8", but its own invariant identity forces 1/26;
    /// this test pins the actual data relationship.
    #[test]
    fn worked_triple_merges_to_printed_quartic() {
        let vr = VrMaps::new(&fp29(0)).unwrap();
        let b8_raw = BinaryForm::new(
            [15i64, 9, 6, 19, 28, 16, 4, 25, 20].iter().map(|&c| fp29(c)).collect::<Vec<_>>(),
        );
        let b4 = BinaryForm::new(
            [9i64, 8, 19, 17, 23].iter().map(|&c| fp29(c)).collect::<Vec<_>>(),
        );
        let printed = TernaryForm::from_ints(
            4,
            &[24, 13, 1, 21, 22, 28, 7, 23, 27, 10, 4, 24, 2, 20, 3],
            &fp29(0),
        );
        let candidates = [(26i64, "26"), (19, "19 = 1/26")];
        let mut matched = None;
        for (lam, name) in candidates {
            let t = Triple {
                b8: b8_raw.scale(&fp29(lam)),
                b4: b4.clone(),
                b0: fp29(0),
            };
            if vr.merge(&t, Variant::LStar) == printed {
                matched = Some(name);
            }
        }
        assert_eq!(matched, Some("19 = 1/26"));
    }

    /// The printed quartic splits back into the lambda-corrected octic, the
    /// printed b4, and b0 = 0.
    #[test]
    fn printed_quartic_splits_to_worked_triple() {
        let vr = VrMaps::new(&fp29(0)).unwrap();
        let printed = TernaryForm::from_ints(
            4,
            &[24, 13, 1, 21, 22, 28, 7, 23, 27, 10, 4, 24, 2, 20, 3],
            &fp29(0),
        );
        let t = vr.split(&printed, Variant::LStar);
        assert!(t.b0.is_zero());
        let b8_expected = BinaryForm::new(
            [15i64, 9, 6, 19, 28, 16, 4, 25, 20].iter().map(|&c| fp29(c)).collect::<Vec<_>>(),
        )
        .scale(&fp29(19));
        assert_eq!(t.b8, b8_expected);
        let b4_expected = BinaryForm::new(
            [9i64, 8, 19, 17, 23].iter().map(|&c| fp29(c)).collect::<Vec<_>>(),
        );
        assert_eq!(t.b4, b4_expected);
    }

    /// Octic reconstruction self-check on random squarefree-ish octics.
    #[test]
    fn octic_roundtrip_f10007() {
        let p = 10007;
        let mut rng = SplitMix64::new(500);
        let mut done = 0;
        let mut seed = 0;
        while done < 10 {
            seed += 1;
            let b8 = BinaryForm::new(
                (0..9).map(|_| Fp64::new(rng.below(p) as i64, p)).collect::<Vec<_>>(),
            );
            let j = crate::olive::octic_invariants(&b8).unwrap();
            if !crate::olive::octic_is_generic(&j) {
                continue;
            }
            let rec = match reconstruct_octic(&j, seed) {
                Ok(r) => r,
                Err(MestreError::DegenerateConic) => continue,
                Err(e) => panic!("unexpected: {}", e),
            };
            // exact match after scaling
            let got = crate::olive::octic_invariants(&rec).unwrap();
            let lam = match_scale(&got, &j).expect("weights 2..10 generate Z");
            let exact = crate::olive::octic_invariants(&rec.scale(&lam)).unwrap();
            assert_eq!(exact, j);
            done += 1;
        }
    }

    /// The worked example's octic stage: from targets (4,19,...,8) over F_29
    /// the reconstruction yields an octic whose invariants match the
    /// targets up to weighted scaling, and scale matching makes them exact.
    #[test]
    fn worked_octic_stage() {
        let targets: Vec<Fp64> =
            [4i64, 19, 4, 20, 19, 9, 24, 24, 8].iter().map(|&v| fp29(v)).collect();
        let rec = reconstruct_octic(&targets, 11).unwrap();
        let got = crate::olive::octic_invariants(&rec).unwrap();
        let lam = match_scale(&got, &targets).unwrap();
        let exact = crate::olive::octic_invariants(&rec.scale(&lam)).unwrap();
        assert_eq!(exact, targets);
    }

    /// Database-free roundtrip: split a random generic quartic, take the
    /// joint invariants of its normalized triple, run the downstream
    /// pipeline, and certify weighted-projective equality of invariants.
    #[test]
    fn db_free_roundtrip() {
        for p in [29u64, 10007] {
            let fp0 = Fp64::new(0, p);
            let doctx = DOCtx::new(&fp0).unwrap();
            let vr = VrMaps::new(&fp0).unwrap();
            let mut rng = SplitMix64::new(600 + p);
            let mut done = 0;
            let mut seed = 0u64;
            while done < 6 {
                seed += 1;
                let f = TernaryForm::new(
                    4,
                    (0..15).map(|_| Fp64::new(rng.below(p) as i64, p)).collect::<Vec<_>>(),
                );
                let tuple = doctx.invariants(&f).unwrap();
                if tuple.i12().is_zero() || tuple.i9().is_zero() {
                    continue;
                }
                let Ok(norm) = normalize_quartic(&doctx, &f, seed, 30) else { continue };
                let triple = vr.split(&norm.quartic, Variant::LStar);
                let joint =
                    joint_invariants(&triple.b8, &triple.b4, &triple.b0).unwrap();
                let options = ReconstructOptions { seed: seed ^ 0xaa, exact: false };
                let report = match reconstruct_from_joint(&doctx, &vr, &tuple, &joint, &options) {
                    Ok(r) => r,
                    Err(ReconstructError::NonGenericOctic)
                    | Err(ReconstructError::Mestre(_)) => continue,
                    Err(e) => panic!("pipeline failed: {}", e),
                };
                assert!(weighted_projective_equal(&report.certified, &tuple).is_some());
                assert!(report.stable);
                done += 1;
            }
        }
    }
}
