//! Ternary homogeneous forms, substitution actions, and the contraction
//! pairing between forms in the point variables x and forms in the dual
//! variables v.
//!
//! Coefficients are stored in graded order with the exponent of x1
//! descending, then the exponent of x2 descending: for quartics this is
//! x1^4, x1^3 x2, x1^3 x3, x1^2 x2^2, x1^2 x2 x3, x1^2 x3^2, x1 x2^3,
//! x1 x2^2 x3, x1 x2 x3^2, x1 x3^3, x2^4, x2^3 x3, x2^2 x3^2, x2 x3^3, x3^4.
//! This order is also the serialization order.

use crate::matrix::Matrix;
use crate::scalar::Field;
use alloc::vec;
use alloc::vec::Vec;

/// Exponent triples of degree n in the pinned order.
pub fn monomials(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::with_capacity((n + 1) * (n + 2) / 2);
    for i1 in (0..=n).rev() {
        for i2 in (0..=(n - i1)).rev() {
            out.push((i1, i2, n - i1 - i2));
        }
    }
    out
}

/// Index of (i1, i2, i3) inside `monomials(n)`.
pub fn monomial_index(n: usize, e: (usize, usize, usize)) -> usize {
    let (i1, i2, _) = e;
    // monomials with first exponent > i1 come first
    let mut idx = 0;
    for j in (i1 + 1)..=n {
        idx += n - j + 1;
    }
    idx + (n - i1 - i2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TernaryForm<F: Field> {
    degree: usize,
    coeffs: Vec<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TernaryError {
    DegreeError,
    DomainMismatch,
    CharacteristicTooSmall,
}

impl core::fmt::Display for TernaryError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            TernaryError::DegreeError => write!(f, "contraction degree exceeds form degree"),
            TernaryError::DomainMismatch => write!(f, "operands live in different domains"),
            TernaryError::CharacteristicTooSmall => {
                write!(f, "field characteristic divides a structure constant")
            }
        }
    }
}

impl<F: Field> TernaryForm<F> {
    pub fn new(degree: usize, coeffs: Vec<F>) -> Self {
        assert_eq!(coeffs.len(), (degree + 1) * (degree + 2) / 2);
        TernaryForm { degree, coeffs }
    }

    pub fn zero(degree: usize, ctx: &F) -> Self {
        TernaryForm {
            degree,
            coeffs: vec![ctx.zero_like(); (degree + 1) * (degree + 2) / 2],
        }
    }

    pub fn from_ints(degree: usize, vals: &[i64], ctx: &F) -> Self {
        TernaryForm::new(degree, vals.iter().map(|&v| ctx.from_i64_like(v)).collect())
    }

    pub fn monomial(degree: usize, e: (usize, usize, usize), ctx: &F) -> Self {
        let mut f = Self::zero(degree, ctx);
        let idx = monomial_index(degree, e);
        f.coeffs[idx] = ctx.one_like();
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, e: (usize, usize, usize)) -> &F {
        &self.coeffs[monomial_index(self.degree, e)]
    }

    pub fn coeff_mut(&mut self, e: (usize, usize, usize)) -> &mut F {
        let idx = monomial_index(self.degree, e);
        &mut self.coeffs[idx]
    }

    pub fn ctx(&self) -> &F {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &F) -> Self {
        TernaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree, rhs.degree);
        TernaryForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.degree, rhs.degree);
        TernaryForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.degree + rhs.degree;
        let mut out = TernaryForm::zero(n, self.ctx());
        let ma = monomials(self.degree);
        let mb = monomials(rhs.degree);
        for (ia, ea) in ma.iter().enumerate() {
            if self.coeffs[ia].is_zero() {
                continue;
            }
            for (ib, eb) in mb.iter().enumerate() {
                if rhs.coeffs[ib].is_zero() {
                    continue;
                }
                let e = (ea.0 + eb.0, ea.1 + eb.1, ea.2 + eb.2);
                let idx = monomial_index(n, e);
                out.coeffs[idx] = out.coeffs[idx].add(&self.coeffs[ia].mul(&rhs.coeffs[ib]));
            }
        }
        out
    }

    pub fn eval(&self, x: &[F; 3]) -> F {
        let mut out = self.ctx().zero_like();
        for (idx, e) in monomials(self.degree).iter().enumerate() {
            if self.coeffs[idx].is_zero() {
                continue;
            }
            let term = self.coeffs[idx]
                .mul(&x[0].pow_u(e.0 as u64))
                .mul(&x[1].pow_u(e.1 as u64))
                .mul(&x[2].pow_u(e.2 as u64));
            out = out.add(&term);
        }
        out
    }

    /// Right substitution action F(x . T): x_i <- sum_j T[i][j] x_j.
    /// Composition law: act(act(F, S), T) = act(F, S * T).
    pub fn act(&self, t: &Matrix<F>) -> Self {
        assert_eq!((t.rows, t.cols), (3, 3));
        let n = self.degree;
        let lin: Vec<TernaryForm<F>> = (0..3)
            .map(|i| {
                let mut l = TernaryForm::zero(1, self.ctx());
                l.coeffs[0] = t.at(i, 0).clone();
                l.coeffs[1] = t.at(i, 1).clone();
                l.coeffs[2] = t.at(i, 2).clone();
                l
            })
            .collect();
        // cache powers of each substituted linear form
        let one = TernaryForm::new(0, vec![self.ctx().one_like()]);
        let mut pows: Vec<Vec<TernaryForm<F>>> = Vec::with_capacity(3);
        for l in &lin {
            let mut pl = vec![one.clone()];
            for k in 1..=n {
                pl.push(pl[k - 1].mul(l));
            }
            pows.push(pl);
        }
        let mut out = TernaryForm::zero(n, self.ctx());
        for (idx, e) in monomials(n).iter().enumerate() {
            if self.coeffs[idx].is_zero() {
                continue;
            }
            let term = pows[0][e.0]
                .mul(&pows[1][e.1])
                .mul(&pows[2][e.2])
                .scale(&self.coeffs[idx]);
            out = out.add(&term);
        }
        out
    }

    /// Contravariant transport: substitute by the inverse transpose, the
    /// action dual variables inherit from F . T.
    pub fn act_dual(&self, t: &Matrix<F>) -> Self {
        let tinv = t.inverse().expect("invertible substitution");
        self.act(&tinv.transpose())
    }

    /// Partial derivative d^(a1+a2+a3) / dx1^a1 dx2^a2 dx3^a3.
    pub fn derivative(&self, a: (usize, usize, usize)) -> Self {
        let total = a.0 + a.1 + a.2;
        if total > self.degree {
            return TernaryForm::zero(0, self.ctx());
        }
        let m = self.degree - total;
        let mut out = TernaryForm::zero(m, self.ctx());
        for (idx, e) in monomials(m).iter().enumerate() {
            let src = (e.0 + a.0, e.1 + a.1, e.2 + a.2);
            let c = self.coeff(src);
            if c.is_zero() {
                continue;
            }
            let mut mult = 1i64;
            for (base, da) in [(src.0, a.0), (src.1, a.1), (src.2, a.2)] {
                for t in 0..da {
                    mult *= (base - t) as i64;
                }
            }
            out.coeffs[idx] = c.mul(&self.ctx().from_i64_like(mult));
        }
        out
    }

    /// Apply `op` (a form in the dual variables) as a differential operator
    /// to `self` (a form in x): each monomial v^J of op becomes d^|J|/dx^J.
    /// Requires deg(op) <= deg(self); the classical contraction D.
    pub fn contract(&self, op: &TernaryForm<F>) -> Result<TernaryForm<F>, TernaryError> {
        if op.degree > self.degree {
            return Err(TernaryError::DegreeError);
        }
        let mut out = TernaryForm::zero(self.degree - op.degree, self.ctx());
        for (idx, e) in monomials(op.degree).iter().enumerate() {
            if op.coeffs[idx].is_zero() {
                continue;
            }
            let d = self.derivative(*e).scale(&op.coeffs[idx]);
            out = out.add(&d);
        }
        Ok(out)
    }

    /// Hessian matrix H(Q)_{ij} = (1/2) d^2 Q / dx_i dx_j, entries are forms
    /// of degree deg - 2.
    pub fn hessian(&self) -> Result<[[TernaryForm<F>; 3]; 3], TernaryError> {
        if self.ctx().char_divides(2) {
            return Err(TernaryError::CharacteristicTooSmall);
        }
        let half = self.ctx().from_ratio_like(1, 2);
        let e = |i: usize| match i {
            0 => (1, 0, 0),
            1 => (0, 1, 0),
            _ => (0, 0, 1),
        };
        let entry = |i: usize, j: usize| {
            let a = e(i);
            let b = e(j);
            self.derivative((a.0 + b.0, a.1 + b.1, a.2 + b.2)).scale(&half)
        };
        Ok([
            [entry(0, 0), entry(0, 1), entry(0, 2)],
            [entry(1, 0), entry(1, 1), entry(1, 2)],
            [entry(2, 0), entry(2, 1), entry(2, 2)],
        ])
    }

    /// Determinant of the Hessian matrix as a form of degree 3(deg - 2).
    pub fn det_hessian(&self) -> Result<TernaryForm<F>, TernaryError> {
        let h = self.hessian()?;
        let m = |i: usize, j: usize| &h[i][j];
        let det = m(0, 0)
            .mul(&m(1, 1).mul(m(2, 2)).sub(&m(1, 2).mul(m(2, 1))))
            .sub(&m(0, 1).mul(&m(1, 0).mul(m(2, 2)).sub(&m(1, 2).mul(m(2, 0)))))
            .add(&m(0, 2).mul(&m(1, 0).mul(m(2, 1)).sub(&m(1, 1).mul(m(2, 0)))));
        Ok(det)
    }
}

/// The quadric a x2^2 + b x2 x1 + c x2 x3 + d x1^2 + e x1 x3 + f x3^2, in the
/// labeling the normalization machinery works with.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryQuadric<F: Field> {
    pub a: F,
    pub b: F,
    pub c: F,
    pub d: F,
    pub e: F,
    pub f: F,
}

impl<F: Field> TernaryQuadric<F> {
    pub fn from_form(q: &TernaryForm<F>) -> Self {
        assert_eq!(q.degree(), 2);
        TernaryQuadric {
            a: q.coeff((0, 2, 0)).clone(),
            b: q.coeff((1, 1, 0)).clone(),
            c: q.coeff((0, 1, 1)).clone(),
            d: q.coeff((2, 0, 0)).clone(),
            e: q.coeff((1, 0, 1)).clone(),
            f: q.coeff((0, 0, 2)).clone(),
        }
    }

    pub fn to_form(&self) -> TernaryForm<F> {
        let mut q = TernaryForm::zero(2, &self.a);
        *q.coeff_mut((0, 2, 0)) = self.a.clone();
        *q.coeff_mut((1, 1, 0)) = self.b.clone();
        *q.coeff_mut((0, 1, 1)) = self.c.clone();
        *q.coeff_mut((2, 0, 0)) = self.d.clone();
        *q.coeff_mut((1, 0, 1)) = self.e.clone();
        *q.coeff_mut((0, 0, 2)) = self.f.clone();
        q
    }

    /// delta = a d - b^2/4
    pub fn delta(&self) -> F {
        let quarter = self.a.from_ratio_like(1, 4);
        self.a.mul(&self.d).sub(&self.b.mul(&self.b).mul(&quarter))
    }

    /// eta = a e - b c / 2
    pub fn eta(&self) -> F {
        let half = self.a.from_ratio_like(1, 2);
        self.a.mul(&self.e).sub(&self.b.mul(&self.c).mul(&half))
    }

    /// Discriminant a d f - a e^2/4 - b^2 f/4 + b c e/4 - c^2 d/4; equals the
    /// determinant of the symmetric Gram matrix.
    pub fn disc(&self) -> F {
        let quarter = self.a.from_ratio_like(1, 4);
        let adf = self.a.mul(&self.d).mul(&self.f);
        let ae2 = self.a.mul(&self.e).mul(&self.e);
        let b2f = self.b.mul(&self.b).mul(&self.f);
        let bce = self.b.mul(&self.c).mul(&self.e);
        let c2d = self.c.mul(&self.c).mul(&self.d);
        adf.sub(&ae2.mul(&quarter))
            .sub(&b2f.mul(&quarter))
            .add(&bce.mul(&quarter))
            .sub(&c2d.mul(&quarter))
    }
}

/// Symmetric Gram matrix of a quadric form (x ordering x1, x2, x3).
pub fn gram<F: Field>(q: &TernaryForm<F>) -> Matrix<F> {
    assert_eq!(q.degree(), 2);
    let half = q.ctx().from_ratio_like(1, 2);
    let full = |e: (usize, usize, usize)| q.coeff(e).clone();
    let halfc = |e: (usize, usize, usize)| q.coeff(e).mul(&half);
    Matrix::from_rows(vec![
        vec![full((2, 0, 0)), halfc((1, 1, 0)), halfc((1, 0, 1))],
        vec![halfc((1, 1, 0)), full((0, 2, 0)), halfc((0, 1, 1))],
        vec![halfc((1, 0, 1)), halfc((0, 1, 1)), full((0, 0, 2))],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{big_ratio, Fp64};
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        big_ratio(n, d)
    }

    fn one() -> BigRational {
        q(1, 1)
    }

    #[test]
    fn monomial_order_quartic() {
        let m = monomials(4);
        assert_eq!(m.len(), 15);
        assert_eq!(m[0], (4, 0, 0));
        assert_eq!(m[1], (3, 1, 0));
        assert_eq!(m[2], (3, 0, 1));
        assert_eq!(m[3], (2, 2, 0));
        assert_eq!(m[10], (0, 4, 0));
        assert_eq!(m[14], (0, 0, 4));
        for (i, e) in m.iter().enumerate() {
            assert_eq!(monomial_index(4, *e), i);
        }
    }

    #[test]
    fn act_diag_scales() {
        // F = x1^4, T = diag(2,1,1) -> 16 x1^4
        let f = TernaryForm::monomial(4, (4, 0, 0), &one());
        let t = Matrix::from_rows(vec![
            vec![q(2, 1), q(0, 1), q(0, 1)],
            vec![q(0, 1), q(1, 1), q(0, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1)],
        ]);
        let g = f.act(&t);
        assert_eq!(g.coeff((4, 0, 0)), &q(16, 1));
        assert_eq!(
            g.coeffs().iter().filter(|c| !c.is_zero()).count(),
            1
        );
    }

    #[test]
    fn act_identity_fixes() {
        let mut rng = crate::rng::SplitMix64::new(5);
        let p = 10007;
        let ctx = Fp64::new(0, p);
        let f = TernaryForm::new(
            4,
            (0..15).map(|_| Fp64::new(rng.below(p) as i64, p)).collect::<Vec<_>>(),
        );
        let id = Matrix::identity(3, &ctx);
        assert_eq!(f.act(&id), f);
    }

    #[test]
    fn act_composition_random() {
        let p = 10007;
        let mut rng = crate::rng::SplitMix64::new(8);
        let mk = |rng: &mut crate::rng::SplitMix64| {
            Matrix::from_rows(
                (0..3)
                    .map(|_| (0..3).map(|_| Fp64::new(rng.below(p) as i64, p)).collect())
                    .collect::<Vec<Vec<Fp64>>>(),
            )
        };
        for _ in 0..10 {
            let f = TernaryForm::new(
                4,
                (0..15).map(|_| Fp64::new(rng.below(p) as i64, p)).collect::<Vec<_>>(),
            );
            let s = mk(&mut rng);
            let t = mk(&mut rng);
            assert_eq!(f.act(&s).act(&t), f.act(&s.mul_mat(&t)));
        }
    }

    #[test]
    fn contraction_examples() {
        // D(x1^4, v1^4) = 24
        let f = TernaryForm::monomial(4, (4, 0, 0), &one());
        let op = TernaryForm::monomial(4, (4, 0, 0), &one());
        let d = f.contract(&op).unwrap();
        assert_eq!(d.coeffs(), &[q(24, 1)]);

        // D(x1^2 x2^2, v1 v2) = 4 x1 x2
        let f = TernaryForm::monomial(4, (2, 2, 0), &one());
        let op = TernaryForm::monomial(2, (1, 1, 0), &one());
        let d = f.contract(&op).unwrap();
        assert_eq!(d.coeff((1, 1, 0)), &q(4, 1));
        assert_eq!(d.coeffs().iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn contraction_degree_guard() {
        let f = TernaryForm::monomial(2, (2, 0, 0), &one());
        let op = TernaryForm::monomial(4, (4, 0, 0), &one());
        assert_eq!(f.contract(&op).unwrap_err(), TernaryError::DegreeError);
    }

    #[test]
    fn hessian_of_round_quadric() {
        // Q = x1^2 + x2^2 + x3^2: H = identity, det = 1
        let mut f = TernaryForm::zero(2, &one());
        *f.coeff_mut((2, 0, 0)) = one();
        *f.coeff_mut((0, 2, 0)) = one();
        *f.coeff_mut((0, 0, 2)) = one();
        let det = f.det_hessian().unwrap();
        assert_eq!(det.coeffs(), &[q(1, 1)]);
        let g = gram(&f);
        assert_eq!(g, Matrix::identity(3, &one()));
    }

    #[test]
    fn hessian_of_conic() {
        // Q = x2^2 - x1 x3: Gram [[0,0,-1/2],[0,1,0],[-1/2,0,0]], det -1/4
        let mut f = TernaryForm::zero(2, &one());
        *f.coeff_mut((0, 2, 0)) = one();
        *f.coeff_mut((1, 0, 1)) = q(-1, 1);
        let det = f.det_hessian().unwrap();
        assert_eq!(det.coeffs(), &[q(-1, 4)]);
        let g = gram(&f);
        assert_eq!(g.at(0, 2), &q(-1, 2));
        assert_eq!(g.at(1, 1), &q(1, 1));
        assert_eq!(g.det(), q(-1, 4));
    }

    #[test]
    fn gram_adjugate_identity() {
        // H(Q) * H(Q)* = det H(Q) * I on random quadrics
        let p = 10007;
        let mut rng = crate::rng::SplitMix64::new(21);
        for _ in 0..50 {
            let f = TernaryForm::new(
                2,
                (0..6).map(|_| Fp64::new(rng.below(p) as i64, p)).collect::<Vec<_>>(),
            );
            let g = gram(&f);
            let adj = g.adjugate3();
            assert_eq!(g.mul_mat(&adj), Matrix::identity(3, g.ctx()).scale(&g.det()));
        }
    }

    #[test]
    fn quadric_roundtrip_and_disc() {
        let vals = TernaryQuadric {
            a: q(3, 1),
            b: q(-1, 1),
            c: q(2, 1),
            d: q(5, 1),
            e: q(7, 1),
            f: q(-4, 1),
        };
        let f = vals.to_form();
        assert_eq!(TernaryQuadric::from_form(&f), vals);
        // disc equals Gram determinant
        assert_eq!(vals.disc(), gram(&f).det());
    }
}
