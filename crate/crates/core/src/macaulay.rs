//! Macaulay resultant of three ternary cubics, used for the quartic
//! discriminant (resultant of the three partial derivatives).

use crate::matrix::Matrix;
use crate::rng::SplitMix64;
use crate::scalar::Field;
use crate::ternary::{monomial_index, monomials, TernaryForm};
use alloc::vec;
use alloc::vec::Vec;

/// Macaulay matrix determinant quotient for three cubics at critical degree
/// 7. Returns None when the extraneous minor vanishes for this particular
/// specialization (caller re-randomizes).
pub fn resultant_three_cubics<F: Field>(f: &[TernaryForm<F>; 3]) -> Option<F> {
    for fi in f {
        assert_eq!(fi.degree(), 3);
    }
    let ctx = f[0].ctx();
    let cols = monomials(7);
    let ncols = cols.len(); // 36
    let col_of = |e: (usize, usize, usize)| monomial_index(7, e);

    // class of a degree-7 monomial: the first variable with exponent >= 3
    let class_of = |e: (usize, usize, usize)| -> usize {
        if e.0 >= 3 {
            0
        } else if e.1 >= 3 {
            1
        } else {
            debug_assert!(e.2 >= 3);
            2
        }
    };
    // reduced: exactly one variable has exponent >= 3
    let is_reduced = |e: (usize, usize, usize)| -> bool {
        let hits = [e.0 >= 3, e.1 >= 3, e.2 >= 3].iter().filter(|&&b| b).count();
        hits == 1
    };

    let mons3 = monomials(3);
    let mut data = vec![ctx.zero_like(); ncols * ncols];
    for (row, &alpha) in cols.iter().enumerate() {
        let i = class_of(alpha);
        let mut quot = alpha;
        match i {
            0 => quot.0 -= 3,
            1 => quot.1 -= 3,
            _ => quot.2 -= 3,
        }
        // row = coefficients of x^quot * f_i in degree-7 monomials
        for (k, &e) in mons3.iter().enumerate() {
            let c = &f[i].coeffs()[k];
            if c.is_zero() {
                continue;
            }
            let target = (quot.0 + e.0, quot.1 + e.1, quot.2 + e.2);
            data[row * ncols + col_of(target)] = c.clone();
        }
    }
    let m = Matrix::new(ncols, ncols, data);
    let det = m.det();

    // extraneous minor: rows/cols of non-reduced monomials
    let non_reduced: Vec<usize> = cols
        .iter()
        .enumerate()
        .filter(|(_, &e)| !is_reduced(e))
        .map(|(i, _)| i)
        .collect();
    let k = non_reduced.len();
    let mut sub = Vec::with_capacity(k * k);
    for &r in &non_reduced {
        for &c in &non_reduced {
            sub.push(m.at(r, c).clone());
        }
    }
    let minor = Matrix::new(k, k, sub).det();
    let minor_inv = minor.inv()?;
    Some(det.mul(&minor_inv))
}

/// Discriminant-grade resultant of the partial derivatives of a quartic, up
/// to the global normalization fixed in the invariant layer. Deterministic:
/// degenerate extraneous minors are escaped by seeded unimodular changes of
/// variables (which leave the resultant of the partials invariant).
pub fn quartic_partials_resultant<F: Field>(f: &TernaryForm<F>) -> F {
    assert_eq!(f.degree(), 4);
    let ctx = f.ctx();
    let mut rng = SplitMix64::new(0x9d1c_u64);
    let mut g = f.clone();
    for _attempt in 0..64 {
        let partials = [
            g.derivative((1, 0, 0)),
            g.derivative((0, 1, 0)),
            g.derivative((0, 0, 1)),
        ];
        if let Some(r) = resultant_three_cubics(&partials) {
            return r;
        }
        // unimodular substitution: resultant of the partials has weight 36,
        // so det = 1 leaves it unchanged
        let mut m = Matrix::identity(3, ctx);
        loop {
            let i = rng.below(3) as usize;
            let j = rng.below(3) as usize;
            if i != j {
                m.set(i, j, ctx.from_i64_like(1 + rng.below(20) as i64));
                break;
            }
        }
        g = g.act(&m);
    }
    // The extraneous minor divides the full determinant as polynomials, so a
    // vanishing minor forces a vanishing determinant. A system whose whole
    // unimodular orbit keeps the minor zero is degenerate: its resultant
    // vanishes.
    ctx.zero_like()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{big_ratio, Fp64};
    use num_rational::BigRational;

    fn fp(v: i64, p: u64) -> Fp64 {
        Fp64::new(v, p)
    }

    #[test]
    fn resultant_of_coordinate_cubes() {
        // Res(x^3, y^3, z^3) = 1 up to sign for the pure power system
        let one = big_ratio(1, 1);
        let f = [
            TernaryForm::monomial(3, (3, 0, 0), &one),
            TernaryForm::monomial(3, (0, 3, 0), &one),
            TernaryForm::monomial(3, (0, 0, 3), &one),
        ];
        let r = resultant_three_cubics(&f).unwrap();
        assert!(r == big_ratio(1, 1) || r == big_ratio(-1, 1));
    }

    #[test]
    fn resultant_vanishes_on_common_zero() {
        // all three vanish at (0, 0, 1)
        let p = 10007;
        let mut rng = crate::rng::SplitMix64::new(9);
        for _ in 0..5 {
            let mut f = [
                TernaryForm::zero(3, &fp(0, p)),
                TernaryForm::zero(3, &fp(0, p)),
                TernaryForm::zero(3, &fp(0, p)),
            ];
            for fi in f.iter_mut() {
                for e in monomials(3) {
                    if e.2 == 3 {
                        continue; // kill the z^3 coefficient
                    }
                    *fi.coeff_mut(e) = fp(rng.below(p) as i64, p);
                }
            }
            let r = resultant_three_cubics(&f).unwrap();
            assert!(r.is_zero());
        }
    }

    #[test]
    fn multiplicativity_degree_check() {
        // Res is degree 9 in each argument: scaling one cubic by c scales
        // the resultant by c^9
        let p = 10007;
        let mut rng = crate::rng::SplitMix64::new(10);
        let rand_cubic = |rng: &mut crate::rng::SplitMix64| {
            TernaryForm::new(
                3,
                (0..10).map(|_| fp(rng.below(p) as i64, p)).collect::<Vec<_>>(),
            )
        };
        let f = [rand_cubic(&mut rng), rand_cubic(&mut rng), rand_cubic(&mut rng)];
        let r = resultant_three_cubics(&f).unwrap();
        let c = fp(5, p);
        let g = [f[0].scale(&c), f[1].clone(), f[2].clone()];
        let r2 = resultant_three_cubics(&g).unwrap();
        assert_eq!(r2, r.mul(&c.pow_u(9)));
    }

    #[test]
    fn singular_quartic_has_zero_disc() {
        // x1^4 is singular: partials share zeros
        let one: BigRational = big_ratio(1, 1);
        let f = TernaryForm::monomial(4, (4, 0, 0), &one);
        assert!(quartic_partials_resultant(&f).is_zero());
    }

    #[test]
    fn fermat_quartic_nonsingular() {
        let p = 10007;
        let mut f = TernaryForm::zero(4, &fp(0, p));
        *f.coeff_mut((4, 0, 0)) = fp(1, p);
        *f.coeff_mut((0, 4, 0)) = fp(1, p);
        *f.coeff_mut((0, 0, 4)) = fp(1, p);
        assert!(!quartic_partials_resultant(&f).is_zero());
    }

    #[test]
    fn invariance_under_unimodular() {
        let p = 10007;
        let mut rng = crate::rng::SplitMix64::new(11);
        let f = TernaryForm::new(
            4,
            (0..15).map(|_| fp(rng.below(p) as i64, p)).collect::<Vec<_>>(),
        );
        let mut m = Matrix::identity(3, &fp(0, p));
        m.set(0, 1, fp(3, p));
        m.set(2, 0, fp(-2, p));
        let r1 = quartic_partials_resultant(&f);
        let r2 = quartic_partials_resultant(&f.act(&m));
        assert_eq!(r1, r2);
    }
}
