//! The equivariant linear isomorphisms between ternary quartics and triples
//! (b8, b4, b0) of binary forms, for the two embeddings of SL2 into SL3.
//!
//! The two 15x15 matrices are exact rational constants; `VrMaps` specializes
//! them (and their inverses) into a working domain once, since split/merge
//! sit inside hot sampling loops.

use crate::binary::BinaryForm;
use crate::matrix::Matrix;
use crate::scalar::Field;
use crate::ternary::{TernaryError, TernaryForm};
use alloc::vec;
use alloc::vec::Vec;

/// (b8, b4, b0): the image of a ternary quartic under either equivariant map.
#[derive(Clone, Debug, PartialEq)]
pub struct Triple<F: Field> {
    pub b8: BinaryForm<F>,
    pub b4: BinaryForm<F>,
    pub b0: F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// Covariant side: intertwines with h.
    L,
    /// Contravariant side: intertwines with h*; the reconstruction pipeline
    /// uses this one.
    LStar,
}

/// Sparse rational entries (row, col, num, den) of the matrix giving the map
/// by right action on the coefficient row vector. Rows follow the quartic
/// monomial order, columns are z1^8..z2^8, z1^4..z2^4, 1.
const L_ENTRIES: &[(usize, usize, i64, u64)] = &[
    (0, 0, 1, 1),
    (1, 1, 1, 1),
    (2, 2, 1, 1),
    (2, 9, 6, 7),
    (3, 2, 1, 1),
    (3, 9, -1, 7),
    (4, 3, 1, 1),
    (4, 10, 4, 7),
    (5, 4, 1, 1),
    (5, 11, 8, 7),
    (5, 14, 8, 15),
    (6, 3, 1, 1),
    (6, 10, -3, 7),
    (7, 4, 1, 1),
    (7, 11, 1, 7),
    (7, 14, -2, 15),
    (8, 5, 1, 1),
    (8, 12, 4, 7),
    (9, 6, 1, 1),
    (9, 13, 6, 7),
    (10, 4, 1, 1),
    (10, 11, -6, 7),
    (10, 14, 1, 5),
    (11, 5, 1, 1),
    (11, 12, -3, 7),
    (12, 6, 1, 1),
    (12, 13, -1, 7),
    (13, 7, 1, 1),
    (14, 8, 1, 1),
];

const LSTAR_ENTRIES: &[(usize, usize, i64, u64)] = &[
    (0, 0, 1, 1),
    (1, 1, 2, 1),
    (2, 2, 1, 1),
    (2, 9, -3, 14),
    (3, 2, 4, 1),
    (3, 9, 1, 7),
    (4, 3, 2, 1),
    (4, 10, -2, 7),
    (5, 4, 1, 1),
    (5, 11, -2, 7),
    (5, 14, 1, 30),
    (6, 3, 8, 1),
    (6, 10, 6, 7),
    (7, 4, 4, 1),
    (7, 11, -1, 7),
    (7, 14, -1, 30),
    (8, 5, 2, 1),
    (8, 12, -2, 7),
    (9, 6, 1, 1),
    (9, 13, -3, 14),
    (10, 4, 16, 1),
    (10, 11, 24, 7),
    (10, 14, 1, 5),
    (11, 5, 8, 1),
    (11, 12, 6, 7),
    (12, 6, 4, 1),
    (12, 13, 1, 7),
    (13, 7, 2, 1),
    (14, 8, 1, 1),
];

/// The induced 3x3 image of a 2x2 matrix under the embedding fixing
/// x2^2 - x1 x3 up to scale.
pub fn h_map<F: Field>(t: &Matrix<F>) -> Matrix<F> {
    assert_eq!((t.rows, t.cols), (2, 2));
    let (a, b, c, d) = (t.at(0, 0), t.at(0, 1), t.at(1, 0), t.at(1, 1));
    let two = a.from_i64_like(2);
    Matrix::from_rows(vec![
        vec![a.mul(a), two.mul(&a.mul(b)), b.mul(b)],
        vec![a.mul(c), a.mul(d).add(&b.mul(c)), b.mul(d)],
        vec![c.mul(c), two.mul(&c.mul(d)), d.mul(d)],
    ])
}

/// The dual embedding, fixing v2^2 - v1 v3 up to scale.
pub fn h_star_map<F: Field>(t: &Matrix<F>) -> Matrix<F> {
    assert_eq!((t.rows, t.cols), (2, 2));
    let (a, b, c, d) = (t.at(0, 0), t.at(0, 1), t.at(1, 0), t.at(1, 1));
    let two = a.from_i64_like(2);
    Matrix::from_rows(vec![
        vec![a.mul(a), a.mul(b), b.mul(b)],
        vec![two.mul(&a.mul(c)), a.mul(d).add(&b.mul(c)), two.mul(&b.mul(d))],
        vec![c.mul(c), c.mul(d), d.mul(d)],
    ])
}

/// Specialized transport matrices for one coefficient domain.
pub struct VrMaps<F: Field> {
    l: Matrix<F>,
    lstar: Matrix<F>,
    l_inv: Matrix<F>,
    lstar_inv: Matrix<F>,
}

impl<F: Field> VrMaps<F> {
    pub fn new(ctx: &F) -> Result<Self, TernaryError> {
        for d in [2u64, 3, 5, 7] {
            if ctx.char_divides(d) {
                return Err(TernaryError::CharacteristicTooSmall);
            }
        }
        let build = |entries: &[(usize, usize, i64, u64)]| {
            let mut data = vec![ctx.zero_like(); 15 * 15];
            for &(r, c, num, den) in entries {
                data[r * 15 + c] = ctx.from_ratio_like(num, den);
            }
            Matrix::new(15, 15, data)
        };
        let l = build(L_ENTRIES);
        let lstar = build(LSTAR_ENTRIES);
        let l_inv = l.inverse().expect("transport matrix is invertible");
        let lstar_inv = lstar.inverse().expect("transport matrix is invertible");
        Ok(VrMaps { l, lstar, l_inv, lstar_inv })
    }

    fn mat(&self, variant: Variant) -> &Matrix<F> {
        match variant {
            Variant::L => &self.l,
            Variant::LStar => &self.lstar,
        }
    }

    fn mat_inv(&self, variant: Variant) -> &Matrix<F> {
        match variant {
            Variant::L => &self.l_inv,
            Variant::LStar => &self.lstar_inv,
        }
    }

    /// Split a quartic into its (b8, b4, b0) components.
    pub fn split(&self, f: &TernaryForm<F>, variant: Variant) -> Triple<F> {
        assert_eq!(f.degree(), 4);
        let m = self.mat(variant);
        // row vector times matrix
        let mut out = vec![f.ctx().zero_like(); 15];
        for (i, c) in f.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..15 {
                let e = m.at(i, j);
                if e.is_zero() {
                    continue;
                }
                out[j] = out[j].add(&c.mul(e));
            }
        }
        Triple {
            b8: BinaryForm::new(out[0..9].to_vec()),
            b4: BinaryForm::new(out[9..14].to_vec()),
            b0: out[14].clone(),
        }
    }

    /// Inverse transport: reassemble the quartic from a triple.
    pub fn merge(&self, t: &Triple<F>, variant: Variant) -> TernaryForm<F> {
        assert_eq!(t.b8.degree(), 8);
        assert_eq!(t.b4.degree(), 4);
        let m = self.mat_inv(variant);
        let mut vec_in: Vec<F> = Vec::with_capacity(15);
        vec_in.extend(t.b8.coeffs().iter().cloned());
        vec_in.extend(t.b4.coeffs().iter().cloned());
        vec_in.push(t.b0.clone());
        let mut out = vec![t.b0.zero_like(); 15];
        for (i, c) in vec_in.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..15 {
                let e = m.at(i, j);
                if e.is_zero() {
                    continue;
                }
                out[j] = out[j].add(&c.mul(e));
            }
        }
        TernaryForm::new(4, out)
    }
}

/// Componentwise right SL2 action on a triple.
pub fn triple_act<F: Field>(t: &Triple<F>, m2: &Matrix<F>) -> Triple<F> {
    Triple {
        b8: t.b8.act(m2),
        b4: t.b4.act(m2),
        b0: t.b0.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use crate::scalar::Fp64;

    const P: u64 = 10007;

    fn fp(v: i64) -> Fp64 {
        Fp64::new(v, P)
    }

    fn rand_quartic(rng: &mut SplitMix64) -> TernaryForm<Fp64> {
        TernaryForm::new(4, (0..15).map(|_| fp(rng.below(P) as i64)).collect::<Vec<_>>())
    }

    fn rand_sl2(rng: &mut SplitMix64) -> Matrix<Fp64> {
        // random a,b,c with a != 0; d = (1 + b c)/a
        loop {
            let a = fp(rng.below(P) as i64);
            if a.is_zero() {
                continue;
            }
            let b = fp(rng.below(P) as i64);
            let c = fp(rng.below(P) as i64);
            let d = fp(1).add(&b.mul(&c)).div(&a);
            return Matrix::from_rows(vec![vec![a, b], vec![c, d]]);
        }
    }

    #[test]
    fn h_of_identity() {
        let id = Matrix::identity(2, &fp(0));
        assert_eq!(h_map(&id), Matrix::identity(3, &fp(0)));
        assert_eq!(h_star_map(&id), Matrix::identity(3, &fp(0)));
    }

    #[test]
    fn h_of_shear() {
        // [[1, e],[0, 1]] maps to [[1, 2e, e^2],[0, 1, e],[0, 0, 1]]
        let e = fp(17);
        let t = Matrix::from_rows(vec![vec![fp(1), e], vec![fp(0), fp(1)]]);
        let h = h_map(&t);
        assert_eq!(h.at(0, 1), &e.add(&e));
        assert_eq!(h.at(0, 2), &e.mul(&e));
        assert_eq!(h.at(1, 2), &e);
        assert_eq!(h.at(2, 2), &fp(1));
    }

    #[test]
    fn h_multiplicative_and_det_cubes() {
        let mut rng = SplitMix64::new(31);
        for _ in 0..25 {
            let s = rand_sl2(&mut rng);
            let t = rand_sl2(&mut rng);
            assert_eq!(h_map(&s.mul_mat(&t)), h_map(&s).mul_mat(&h_map(&t)));
            assert_eq!(h_star_map(&s.mul_mat(&t)), h_star_map(&s).mul_mat(&h_star_map(&t)));
            let d = s.det();
            assert_eq!(h_map(&s).det(), d.mul(&d).mul(&d));
        }
    }

    #[test]
    fn h_star_fixes_dual_conic() {
        // (v2^2 - v1 v3) . h*(T) = v2^2 - v1 v3 for det T = 1; dual variables
        // transform by the inverse transpose substitution
        let mut rng = SplitMix64::new(77);
        let mut conic = TernaryForm::zero(2, &fp(0));
        *conic.coeff_mut((0, 2, 0)) = fp(1);
        *conic.coeff_mut((1, 0, 1)) = fp(-1);
        for _ in 0..50 {
            let t = rand_sl2(&mut rng);
            assert_eq!(conic.act_dual(&h_star_map(&t)), conic);
        }
    }

    #[test]
    fn h_fixes_x_conic() {
        let mut rng = SplitMix64::new(78);
        let mut conic = TernaryForm::zero(2, &fp(0));
        *conic.coeff_mut((0, 2, 0)) = fp(1);
        *conic.coeff_mut((1, 0, 1)) = fp(-1);
        for _ in 0..50 {
            let t = rand_sl2(&mut rng);
            assert_eq!(conic.act(&h_map(&t)), conic);
        }
    }

    #[test]
    fn split_x1_fourth() {
        let vr = VrMaps::new(&fp(0)).unwrap();
        let f = TernaryForm::monomial(4, (4, 0, 0), &fp(0));
        let t = vr.split(&f, Variant::LStar);
        assert_eq!(t.b8, BinaryForm::monomial_z1(8, &fp(0)));
        assert!(t.b4.is_zero());
        assert!(t.b0.is_zero());
    }

    #[test]
    fn split_x2_fourth() {
        // x2^4 -> (16 z1^4 z2^4, 24/7 z1^2 z2^2, 1/5)
        let vr = VrMaps::new(&fp(0)).unwrap();
        let f = TernaryForm::monomial(4, (0, 4, 0), &fp(0));
        let t = vr.split(&f, Variant::LStar);
        assert_eq!(t.b8.coeff(4), &fp(16));
        assert_eq!(t.b8.coeffs().iter().filter(|c| !c.is_zero()).count(), 1);
        assert_eq!(t.b4.coeff(2), &fp(0).from_ratio_like(24, 7));
        assert_eq!(t.b0, fp(0).from_ratio_like(1, 5));
    }

    #[test]
    fn b0_linear_form() {
        // b0 = a202/30 - a121/30 + a040/5
        let vr = VrMaps::new(&fp(0)).unwrap();
        let mut rng = SplitMix64::new(4);
        let f = rand_quartic(&mut rng);
        let t = vr.split(&f, Variant::LStar);
        let expected = f
            .coeff((2, 0, 2))
            .mul(&fp(0).from_ratio_like(1, 30))
            .sub(&f.coeff((1, 2, 1)).mul(&fp(0).from_ratio_like(1, 30)))
            .add(&f.coeff((0, 4, 0)).mul(&fp(0).from_ratio_like(1, 5)));
        assert_eq!(t.b0, expected);
    }

    #[test]
    fn merge_inverts_split() {
        let vr = VrMaps::new(&fp(0)).unwrap();
        let mut rng = SplitMix64::new(12);
        for _ in 0..100 {
            let f = rand_quartic(&mut rng);
            for variant in [Variant::L, Variant::LStar] {
                let t = vr.split(&f, variant);
                assert_eq!(vr.merge(&t, variant), f);
            }
        }
    }

    #[test]
    fn merge_z1_octic() {
        let vr = VrMaps::new(&fp(0)).unwrap();
        let t = Triple {
            b8: BinaryForm::monomial_z1(8, &fp(0)),
            b4: BinaryForm::zero(4, &fp(0)),
            b0: fp(0),
        };
        let f = vr.merge(&t, Variant::LStar);
        assert_eq!(f, TernaryForm::monomial(4, (4, 0, 0), &fp(0)));
    }

    #[test]
    fn equivariance_both_variants() {
        let vr = VrMaps::new(&fp(0)).unwrap();
        let mut rng = SplitMix64::new(55);
        for _ in 0..50 {
            let f = rand_quartic(&mut rng);
            let t2 = rand_sl2(&mut rng);
            // l*(F . h*(T)) = l*(F) . T
            let lhs = vr.split(&f.act(&h_star_map(&t2)), Variant::LStar);
            let rhs = triple_act(&vr.split(&f, Variant::LStar), &t2);
            assert_eq!(lhs, rhs);
            // l(F . h(T)) = l(F) . T
            let lhs = vr.split(&f.act(&h_map(&t2)), Variant::L);
            let rhs = triple_act(&vr.split(&f, Variant::L), &t2);
            assert_eq!(lhs, rhs);
        }
    }

    /// Highest-weight re-derivation of the covariant transport: the vectors
    /// x1^4, x1^3 x3 - x1^2 x2^2, x1^2 x3^2 - 2 x1 x2^2 x3 + x2^4 must map to
    /// multiples of z1^8, z1^4, 1 respectively.
    #[test]
    fn highest_weight_vectors() {
        let vr = VrMaps::new(&fp(0)).unwrap();
        let hw8 = TernaryForm::monomial(4, (4, 0, 0), &fp(0));
        let t = vr.split(&hw8, Variant::L);
        assert_eq!(t.b8, BinaryForm::monomial_z1(8, &fp(0)));
        assert!(t.b4.is_zero() && t.b0.is_zero());

        let mut hw4 = TernaryForm::zero(4, &fp(0));
        *hw4.coeff_mut((3, 0, 1)) = fp(1);
        *hw4.coeff_mut((2, 2, 0)) = fp(-1);
        let t = vr.split(&hw4, Variant::L);
        assert!(t.b8.is_zero());
        assert!(t.b0.is_zero());
        assert!(!t.b4.coeff(0).is_zero());
        assert!(t.b4.coeffs()[1..].iter().all(|c| c.is_zero()));

        let mut hw0 = TernaryForm::zero(4, &fp(0));
        *hw0.coeff_mut((2, 0, 2)) = fp(1);
        *hw0.coeff_mut((1, 2, 1)) = fp(-2);
        *hw0.coeff_mut((0, 4, 0)) = fp(1);
        let t = vr.split(&hw0, Variant::L);
        assert!(t.b8.is_zero() && t.b4.is_zero());
        assert!(!t.b0.is_zero());
    }
}
