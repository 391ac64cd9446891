//! Direct construction of the two classical contravariants of a ternary
//! quartic: the order-4 degree-2 and order-6 degree-3 equivariant projections,
//! realized by the omega-process on two resp. three copies of the form.
//!
//! These are the unique (up to scale) equivariant maps of their type, so any
//! nonzero output of the construction IS the classical contravariant up to a
//! scale that the invariant normalization fixes elsewhere. This direct path
//! is exercised by tests; the hot path evaluates the frozen polynomial tables
//! generated from it by polarization.

use crate::scalar::Field;
use crate::ternary::{monomial_index, monomials, TernaryForm};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

/// Sparse polynomial in v (3 vars) and up to three copy groups of ternary
/// variables. Key: (v-exps, y-exps, z-exps, w-exps).
type Key = ([u8; 3], [u8; 3], [u8; 3], [u8; 3]);
type Poly<F> = BTreeMap<Key, F>;

fn add_term<F: Field>(p: &mut Poly<F>, k: Key, v: F) {
    if v.is_zero() {
        return;
    }
    match p.get_mut(&k) {
        Some(slot) => {
            *slot = slot.add(&v);
            if slot.is_zero() {
                p.remove(&k);
            }
        }
        None => {
            p.insert(k, v);
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Group {
    Y,
    Z,
    W,
}

fn group_exps(k: &Key, g: Group) -> [u8; 3] {
    match g {
        Group::Y => k.1,
        Group::Z => k.2,
        Group::W => k.3,
    }
}

fn with_group(mut k: Key, g: Group, e: [u8; 3]) -> Key {
    match g {
        Group::Y => k.1 = e,
        Group::Z => k.2 = e,
        Group::W => k.3 = e,
    }
    k
}

/// Differentiate one term with respect to variable `i` of group `g`.
fn diff_term<F: Field>(k: &Key, c: &F, g: Group, i: usize) -> Option<(Key, F)> {
    let e = group_exps(k, g);
    if e[i] == 0 {
        return None;
    }
    let mut e2 = e;
    e2[i] -= 1;
    let nk = with_group(*k, g, e2);
    Some((nk, c.mul(&c.from_i64_like(e[i] as i64))))
}

/// Apply the pair operator v1 (da2 db3 - da3 db2) - v2 (da1 db3 - da3 db1)
/// + v3 (da1 db2 - da2 db1) to the polynomial.
fn apply_pair_op<F: Field>(p: &Poly<F>, ga: Group, gb: Group) -> Poly<F> {
    let mut out = Poly::new();
    // (v index, a-var, b-var, sign)
    let pieces: [(usize, usize, usize, i64); 6] = [
        (0, 1, 2, 1),
        (0, 2, 1, -1),
        (1, 0, 2, -1),
        (1, 2, 0, 1),
        (2, 0, 1, 1),
        (2, 1, 0, -1),
    ];
    for (k, c) in p.iter() {
        for &(vi, ai, bi, sign) in pieces.iter() {
            let Some((k1, c1)) = diff_term(k, c, ga, ai) else { continue };
            let Some((k2, c2)) = diff_term(&k1, &c1, gb, bi) else { continue };
            let mut nk = k2;
            nk.0[vi] += 1;
            let val = if sign > 0 { c2 } else { c2.neg() };
            add_term(&mut out, nk, val);
        }
    }
    out
}

fn insert_copy<F: Field>(p: &Poly<F>, f: &TernaryForm<F>, g: Group) -> Poly<F> {
    let mut out = Poly::new();
    let mons = monomials(f.degree());
    for (k, c) in p.iter() {
        for (idx, e) in mons.iter().enumerate() {
            let fc = &f.coeffs()[idx];
            if fc.is_zero() {
                continue;
            }
            let nk = with_group(*k, g, [e.0 as u8, e.1 as u8, e.2 as u8]);
            add_term(&mut out, nk, c.mul(fc));
        }
    }
    out
}

fn collect_v<F: Field>(p: &Poly<F>, order: usize, ctx: &F) -> TernaryForm<F> {
    let mut out = TernaryForm::zero(order, ctx);
    for (k, c) in p.iter() {
        assert_eq!(k.1, [0, 0, 0]);
        assert_eq!(k.2, [0, 0, 0]);
        assert_eq!(k.3, [0, 0, 0]);
        let e = (k.0[0] as usize, k.0[1] as usize, k.0[2] as usize);
        let idx = monomial_index(order, e);
        let cur = out.coeffs()[idx].clone();
        *out.coeff_mut(e) = cur.add(c);
    }
    out
}

/// Degree-2 order-4 contravariant of a quartic, unnormalized: the fourth
/// power of the (v, dy, dz) determinant operator applied to F(y) F(z).
pub fn sigma_raw<F: Field>(f: &TernaryForm<F>) -> TernaryForm<F> {
    assert_eq!(f.degree(), 4);
    let ctx = f.ctx();
    let mut p: Poly<F> = Poly::new();
    p.insert(([0; 3], [0; 3], [0; 3], [0; 3]), ctx.one_like());
    let p = insert_copy(&p, f, Group::Y);
    let mut p = insert_copy(&p, f, Group::Z);
    for _ in 0..4 {
        p = apply_pair_op(&p, Group::Y, Group::Z);
    }
    collect_v(&p, 4, ctx)
}

/// Degree-3 order-6 contravariant of a quartic, unnormalized: the squares of
/// the three pairwise determinant operators on F(y) F(z) F(w).
pub fn psi_raw<F: Field>(f: &TernaryForm<F>) -> TernaryForm<F> {
    assert_eq!(f.degree(), 4);
    let ctx = f.ctx();
    let mut p: Poly<F> = Poly::new();
    p.insert(([0; 3], [0; 3], [0; 3], [0; 3]), ctx.one_like());
    let p = insert_copy(&p, f, Group::Y);
    let p = insert_copy(&p, f, Group::Z);
    let mut p = insert_copy(&p, f, Group::W);
    for pair in [
        (Group::Y, Group::Z),
        (Group::Y, Group::Z),
        (Group::Y, Group::W),
        (Group::Y, Group::W),
        (Group::Z, Group::W),
        (Group::Z, Group::W),
    ] {
        p = apply_pair_op(&p, pair.0, pair.1);
    }
    collect_v(&p, 6, ctx)
}

/// Polarize a quadratic map into its symmetric coefficient table:
/// entries ((i, j), value) with i <= j such that q(a) = sum value * a_i a_j.
pub fn polarize_quadratic<F: Field>(
    eval: impl Fn(&TernaryForm<F>) -> TernaryForm<F>,
    ctx: &F,
) -> Vec<((usize, usize), TernaryForm<F>)> {
    let n = 15;
    let basis: Vec<TernaryForm<F>> = monomials(4)
        .iter()
        .map(|&e| TernaryForm::monomial(4, e, ctx))
        .collect();
    let singles: Vec<TernaryForm<F>> = basis.iter().map(&eval).collect();
    let mut out = Vec::new();
    for i in 0..n {
        if !singles[i].is_zero() {
            out.push(((i, i), singles[i].clone()));
        }
        for j in (i + 1)..n {
            let pair = eval(&basis[i].add(&basis[j]));
            let cross = pair.sub(&singles[i]).sub(&singles[j]);
            if !cross.is_zero() {
                out.push(((i, j), cross));
            }
        }
    }
    out
}

/// Polarize a cubic map into terms ((i, j, k), value), i <= j <= k, such that
/// t(a) = sum value * a_i a_j a_k.
pub fn polarize_cubic<F: Field>(
    eval: impl Fn(&TernaryForm<F>) -> TernaryForm<F>,
    ctx: &F,
) -> Vec<((usize, usize, usize), TernaryForm<F>)> {
    let n = 15;
    let basis: Vec<TernaryForm<F>> = monomials(4)
        .iter()
        .map(|&e| TernaryForm::monomial(4, e, ctx))
        .collect();
    let singles: Vec<TernaryForm<F>> = basis.iter().map(&eval).collect();
    let mut out = Vec::new();
    let two = ctx.from_i64_like(2);
    let two_inv = two.inv().unwrap();
    for i in 0..n {
        if !singles[i].is_zero() {
            out.push(((i, i, i), singles[i].clone()));
        }
        for j in (i + 1)..n {
            // t(a e_i + e_j) = a^3 c_iii + a^2 c_iij + a c_ijj + c_jjj
            // evaluate at a = 1 and a = 2 to separate c_iij and c_ijj
            let t1 = eval(&basis[i].add(&basis[j]));
            let t2 = eval(&basis[i].scale(&two).add(&basis[j]));
            // u1 = t1 - c_iii - c_jjj = c_iij + c_ijj
            // u2 = t2 - 8 c_iii - c_jjj = 4 c_iij + 2 c_ijj
            let u1 = t1.sub(&singles[i]).sub(&singles[j]);
            let u2 = t2
                .sub(&singles[i].scale(&ctx.from_i64_like(8)))
                .sub(&singles[j]);
            // c_iij = (u2 - 2 u1) / 2 ; c_ijj = u1 - c_iij
            let ciij = u2.sub(&u1.scale(&two)).scale(&two_inv);
            let cijj = u1.sub(&ciij);
            if !ciij.is_zero() {
                out.push(((i, i, j), ciij));
            }
            if !cijj.is_zero() {
                out.push(((i, j, j), cijj));
            }
            for k in (j + 1)..n {
                // full inclusion-exclusion for the multilinear part
                let tijk = eval(&basis[i].add(&basis[j]).add(&basis[k]));
                let tij = eval(&basis[i].add(&basis[j]));
                let tik = eval(&basis[i].add(&basis[k]));
                let tjk = eval(&basis[j].add(&basis[k]));
                let c = tijk
                    .sub(&tij)
                    .sub(&tik)
                    .sub(&tjk)
                    .add(&singles[i])
                    .add(&singles[j])
                    .add(&singles[k]);
                if !c.is_zero() {
                    out.push(((i, j, k), c));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use crate::scalar::{Field, Fp64};
    use crate::matrix::Matrix;

    const P: u64 = 10007;

    fn fp(v: i64) -> Fp64 {
        Fp64::new(v, P)
    }

    fn fermat() -> TernaryForm<Fp64> {
        let mut f = TernaryForm::zero(4, &fp(0));
        *f.coeff_mut((4, 0, 0)) = fp(1);
        *f.coeff_mut((0, 4, 0)) = fp(1);
        *f.coeff_mut((0, 0, 4)) = fp(1);
        f
    }

    #[test]
    fn sigma_fermat_shape() {
        // must be a combination of {v_i^4} and {v_i^2 v_j^2} with matching
        // coefficients within each orbit, nonzero
        let s = sigma_raw(&fermat());
        assert!(!s.is_zero());
        let pure = [s.coeff((4, 0, 0)), s.coeff((0, 4, 0)), s.coeff((0, 0, 4))];
        assert!(pure[0] == pure[1] && pure[1] == pure[2]);
        let mixed = [s.coeff((2, 2, 0)), s.coeff((2, 0, 2)), s.coeff((0, 2, 2))];
        assert!(mixed[0] == mixed[1] && mixed[1] == mixed[2]);
        for e in monomials(4) {
            let in_orbit = matches!(e, (4, 0, 0) | (0, 4, 0) | (0, 0, 4) | (2, 2, 0) | (2, 0, 2) | (0, 2, 2));
            if !in_orbit {
                assert!(s.coeff(e).is_zero(), "unexpected term at {:?}", e);
            }
        }
    }

    #[test]
    fn psi_fermat_nonzero() {
        let p = psi_raw(&fermat());
        assert!(!p.is_zero());
    }

    fn rand_sl3(rng: &mut SplitMix64) -> Matrix<Fp64> {
        // random unimodular: product of elementary shears
        let mut m = Matrix::identity(3, &fp(0));
        for _ in 0..6 {
            let i = rng.below(3) as usize;
            let j = rng.below(3) as usize;
            if i == j {
                continue;
            }
            let mut e = Matrix::identity(3, &fp(0));
            e.set(i, j, fp(rng.small_int(50)));
            m = m.mul_mat(&e);
        }
        m
    }

    /// Contravariant weight law with n=4, d=2, r=4: sigma(F.T) =
    /// det(T)^4 sigma(F).T, dual variables substituting by inverse transpose.
    #[test]
    fn sigma_weight_law() {
        let mut rng = SplitMix64::new(60);
        for _ in 0..10 {
            let f = TernaryForm::new(
                4,
                (0..15).map(|_| fp(rng.below(P) as i64)).collect::<Vec<_>>(),
            );
            let t = rand_sl3(&mut rng);
            // also a non-unimodular scale
            let mut t = t;
            let c = fp(2 + rng.below(50) as i64);
            t.set(0, 0, t.at(0, 0).mul(&c));
            t.set(0, 1, t.at(0, 1).mul(&c));
            t.set(0, 2, t.at(0, 2).mul(&c));
            let lhs = sigma_raw(&f.act(&t));
            let det4 = t.det().pow_u(4);
            let rhs = sigma_raw(&f).act_dual(&t).scale(&det4);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn psi_weight_law() {
        let mut rng = SplitMix64::new(61);
        for _ in 0..5 {
            let f = TernaryForm::new(
                4,
                (0..15).map(|_| fp(rng.below(P) as i64)).collect::<Vec<_>>(),
            );
            let t = rand_sl3(&mut rng);
            let lhs = psi_raw(&f.act(&t));
            let det6 = t.det().pow_u(6);
            let rhs = psi_raw(&f).act_dual(&t).scale(&det6);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn polarized_tables_reproduce_direct() {
        let mut rng = SplitMix64::new(62);
        let ctx = fp(0);
        let sig_table = polarize_quadratic(|f| sigma_raw(f), &ctx);
        let psi_table = polarize_cubic(|f| psi_raw(f), &ctx);
        for _ in 0..5 {
            let f = TernaryForm::new(
                4,
                (0..15).map(|_| fp(rng.below(P) as i64)).collect::<Vec<_>>(),
            );
            let a = f.coeffs();
            let mut sig = TernaryForm::zero(4, &ctx);
            for ((i, j), val) in sig_table.iter() {
                sig = sig.add(&val.scale(&a[*i].mul(&a[*j])));
            }
            assert_eq!(sig, sigma_raw(&f));
            let mut psi = TernaryForm::zero(6, &ctx);
            for ((i, j, k), val) in psi_table.iter() {
                psi = psi.add(&val.scale(&a[*i].mul(&a[*j]).mul(&a[*k])));
            }
            assert_eq!(psi, psi_raw(&f));
        }
    }
}
