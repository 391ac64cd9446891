//! The minimal basis of 63 joint invariants of a binary octic/quartic pair,
//! built from transvectant chains encoded as data, plus the stability and
//! genericity predicates the reconstruction relies on.
//!
//! Chain data is transcribed from the published covariant table; indices are
//! labels only (some numbers are absent there). All transvectants here use
//! the table normalization (`transvectant_scaled`).

use crate::binary::{transvectant, transvectant_scaled, BinaryError, BinaryForm};
use crate::matrix::Matrix;
use crate::scalar::Field;
use alloc::vec;
use alloc::vec::Vec;

/// One step of the octic covariant chain: f[id] = (product of f[left], f1)_idx
/// with the expected (degree, order) from the table.
struct FDef {
    id: usize,
    left: &'static [usize],
    idx: usize,
    deg: usize,
    ord: usize,
}

const F_DEFS: &[FDef] = &[
    FDef { id: 3, left: &[1], idx: 6, deg: 2, ord: 4 },
    FDef { id: 4, left: &[1], idx: 4, deg: 2, ord: 8 },
    FDef { id: 5, left: &[1], idx: 2, deg: 2, ord: 12 },
    FDef { id: 7, left: &[5], idx: 8, deg: 3, ord: 4 },
    FDef { id: 8, left: &[5], idx: 7, deg: 3, ord: 6 },
    FDef { id: 9, left: &[5], idx: 6, deg: 3, ord: 8 },
    FDef { id: 10, left: &[5], idx: 5, deg: 3, ord: 10 },
    FDef { id: 11, left: &[5], idx: 4, deg: 3, ord: 12 },
    FDef { id: 12, left: &[5], idx: 3, deg: 3, ord: 14 },
    FDef { id: 13, left: &[5], idx: 1, deg: 3, ord: 18 },
    FDef { id: 15, left: &[11], idx: 8, deg: 4, ord: 4 },
    FDef { id: 16, left: &[10], idx: 7, deg: 4, ord: 4 },
    FDef { id: 17, left: &[12], idx: 8, deg: 4, ord: 6 },
    FDef { id: 18, left: &[12], idx: 7, deg: 4, ord: 8 },
    FDef { id: 19, left: &[13], idx: 8, deg: 4, ord: 10 },
    FDef { id: 20, left: &[12], idx: 6, deg: 4, ord: 10 },
    FDef { id: 21, left: &[13], idx: 7, deg: 4, ord: 12 },
    FDef { id: 22, left: &[13], idx: 6, deg: 4, ord: 14 },
    FDef { id: 23, left: &[13], idx: 4, deg: 4, ord: 18 },
    FDef { id: 25, left: &[20], idx: 8, deg: 5, ord: 2 },
    FDef { id: 26, left: &[21], idx: 8, deg: 5, ord: 4 },
    FDef { id: 27, left: &[20], idx: 7, deg: 5, ord: 4 },
    FDef { id: 28, left: &[22], idx: 8, deg: 5, ord: 6 },
    FDef { id: 29, left: &[21], idx: 7, deg: 5, ord: 6 },
    FDef { id: 30, left: &[22], idx: 7, deg: 5, ord: 8 },
    FDef { id: 31, left: &[23], idx: 8, deg: 5, ord: 10 },
    FDef { id: 32, left: &[22], idx: 6, deg: 5, ord: 10 },
    FDef { id: 33, left: &[21], idx: 5, deg: 5, ord: 10 },
    FDef { id: 34, left: &[23], idx: 6, deg: 5, ord: 14 },
    FDef { id: 36, left: &[33], idx: 8, deg: 6, ord: 2 },
    FDef { id: 37, left: &[33], idx: 7, deg: 6, ord: 4 },
    FDef { id: 38, left: &[32], idx: 7, deg: 6, ord: 4 },
    FDef { id: 39, left: &[34], idx: 8, deg: 6, ord: 6 },
    FDef { id: 40, left: &[33], idx: 6, deg: 6, ord: 6 },
    FDef { id: 41, left: &[32], idx: 6, deg: 6, ord: 6 },
    FDef { id: 42, left: &[34], idx: 7, deg: 6, ord: 8 },
    FDef { id: 43, left: &[34], idx: 6, deg: 6, ord: 10 },
    FDef { id: 45, left: &[43], idx: 8, deg: 7, ord: 2 },
    FDef { id: 46, left: &[42], idx: 7, deg: 7, ord: 2 },
    FDef { id: 47, left: &[43], idx: 7, deg: 7, ord: 4 },
    FDef { id: 48, left: &[42], idx: 6, deg: 7, ord: 4 },
    FDef { id: 49, left: &[43], idx: 6, deg: 7, ord: 6 },
    FDef { id: 50, left: &[42], idx: 5, deg: 7, ord: 6 },
    FDef { id: 51, left: &[41], idx: 4, deg: 7, ord: 6 },
    FDef { id: 53, left: &[51], idx: 6, deg: 8, ord: 2 },
    FDef { id: 54, left: &[50], idx: 6, deg: 8, ord: 2 },
    FDef { id: 55, left: &[51], idx: 5, deg: 8, ord: 4 },
    FDef { id: 56, left: &[50], idx: 5, deg: 8, ord: 4 },
    FDef { id: 57, left: &[51], idx: 4, deg: 8, ord: 6 },
    FDef { id: 58, left: &[50], idx: 4, deg: 8, ord: 6 },
    FDef { id: 60, left: &[58], idx: 6, deg: 9, ord: 2 },
    FDef { id: 61, left: &[57], idx: 6, deg: 9, ord: 2 },
    FDef { id: 62, left: &[16, 17], idx: 8, deg: 9, ord: 2 },
    FDef { id: 63, left: &[58], idx: 5, deg: 9, ord: 4 },
    FDef { id: 65, left: &[17, 27], idx: 8, deg: 10, ord: 2 },
    FDef { id: 66, left: &[17, 26], idx: 8, deg: 10, ord: 2 },
    FDef { id: 67, left: &[27, 29], idx: 8, deg: 11, ord: 2 },
    FDef { id: 68, left: &[27, 28], idx: 8, deg: 11, ord: 2 },
    FDef { id: 69, left: &[29, 38], idx: 8, deg: 12, ord: 2 },
];

/// Factor in a joint-invariant operand: an octic-chain or quartic-chain
/// covariant.
#[derive(Clone, Copy, Debug)]
pub enum Cov {
    F(usize),
    G(usize),
}

/// One basis invariant: (product(left), product(right))_idx of bidegree
/// (d8, d4).
pub struct JDef {
    pub label: &'static str,
    pub d8: usize,
    pub d4: usize,
    left: &'static [Cov],
    right: &'static [Cov],
    idx: usize,
}

use Cov::{F, G};

/// All 63 basis invariants, in the canonical serialization order.
pub const J_DEFS: &[JDef] = &[
    JDef { label: "j0_2", d8: 0, d4: 2, left: &[G(1)], right: &[G(1)], idx: 4 },
    JDef { label: "j0_3", d8: 0, d4: 3, left: &[G(2)], right: &[G(1)], idx: 4 },
    JDef { label: "j2_0", d8: 2, d4: 0, left: &[F(1)], right: &[F(1)], idx: 8 },
    JDef { label: "j3_0", d8: 3, d4: 0, left: &[F(4)], right: &[F(1)], idx: 8 },
    JDef { label: "j4_0", d8: 4, d4: 0, left: &[F(9)], right: &[F(1)], idx: 8 },
    JDef { label: "j5_0", d8: 5, d4: 0, left: &[F(3), F(3)], right: &[F(1)], idx: 8 },
    JDef { label: "j6_0", d8: 6, d4: 0, left: &[F(3), F(7)], right: &[F(1)], idx: 8 },
    JDef { label: "j7_0", d8: 7, d4: 0, left: &[F(7), F(7)], right: &[F(1)], idx: 8 },
    JDef { label: "j8_0", d8: 8, d4: 0, left: &[F(7), F(16)], right: &[F(1)], idx: 8 },
    JDef { label: "j9_0", d8: 9, d4: 0, left: &[F(15), F(16)], right: &[F(1)], idx: 8 },
    JDef { label: "j10_0", d8: 10, d4: 0, left: &[F(17), F(25)], right: &[F(1)], idx: 8 },
    JDef { label: "j1_2", d8: 1, d4: 2, left: &[F(1)], right: &[G(1), G(1)], idx: 8 },
    JDef { label: "j2_1", d8: 2, d4: 1, left: &[F(3)], right: &[G(1)], idx: 4 },
    JDef { label: "j1_3", d8: 1, d4: 3, left: &[F(1)], right: &[G(1), G(2)], idx: 8 },
    JDef { label: "j2_2", d8: 2, d4: 2, left: &[F(4)], right: &[G(1), G(1)], idx: 8 },
    JDef { label: "j2_2p", d8: 2, d4: 2, left: &[F(3)], right: &[G(2)], idx: 4 },
    JDef { label: "j3_1", d8: 3, d4: 1, left: &[F(7)], right: &[G(1)], idx: 4 },
    JDef { label: "j1_4", d8: 1, d4: 4, left: &[F(1)], right: &[G(2), G(2)], idx: 8 },
    JDef { label: "j2_3", d8: 2, d4: 3, left: &[F(4)], right: &[G(1), G(2)], idx: 8 },
    JDef { label: "j2_3p", d8: 2, d4: 3, left: &[F(5)], right: &[G(1), G(1), G(1)], idx: 12 },
    JDef { label: "j3_2", d8: 3, d4: 2, left: &[F(7)], right: &[G(2)], idx: 4 },
    JDef { label: "j3_2p", d8: 3, d4: 2, left: &[F(9)], right: &[G(1), G(1)], idx: 8 },
    JDef { label: "j4_1", d8: 4, d4: 1, left: &[F(15)], right: &[G(1)], idx: 4 },
    JDef { label: "j4_1p", d8: 4, d4: 1, left: &[F(16)], right: &[G(1)], idx: 4 },
    JDef { label: "j2_4", d8: 2, d4: 4, left: &[F(4)], right: &[G(2), G(2)], idx: 8 },
    JDef { label: "j2_4p", d8: 2, d4: 4, left: &[F(5)], right: &[G(1), G(1), G(2)], idx: 12 },
    JDef { label: "j3_3", d8: 3, d4: 3, left: &[F(11)], right: &[G(1), G(1), G(1)], idx: 12 },
    JDef { label: "j3_3p", d8: 3, d4: 3, left: &[F(9)], right: &[G(1), G(2)], idx: 8 },
    JDef { label: "j3_3pp", d8: 3, d4: 3, left: &[F(8)], right: &[G(3)], idx: 6 },
    JDef { label: "j4_2", d8: 4, d4: 2, left: &[F(15)], right: &[G(2)], idx: 4 },
    JDef { label: "j4_2p", d8: 4, d4: 2, left: &[F(18)], right: &[G(1), G(1)], idx: 8 },
    JDef { label: "j4_2pp", d8: 4, d4: 2, left: &[F(16)], right: &[G(2)], idx: 4 },
    JDef { label: "j5_1", d8: 5, d4: 1, left: &[F(26)], right: &[G(1)], idx: 4 },
    JDef { label: "j5_1p", d8: 5, d4: 1, left: &[F(27)], right: &[G(1)], idx: 4 },
    JDef { label: "j2_5", d8: 2, d4: 5, left: &[F(5)], right: &[G(1), G(2), G(2)], idx: 12 },
    JDef { label: "j3_4", d8: 3, d4: 4, left: &[F(10)], right: &[G(1), G(3)], idx: 10 },
    JDef { label: "j3_4p", d8: 3, d4: 4, left: &[F(11)], right: &[G(1), G(1), G(2)], idx: 12 },
    JDef { label: "j4_3", d8: 4, d4: 3, left: &[F(18)], right: &[G(1), G(2)], idx: 8 },
    JDef { label: "j4_3p", d8: 4, d4: 3, left: &[F(17)], right: &[G(3)], idx: 6 },
    JDef { label: "j4_3pp", d8: 4, d4: 3, left: &[F(21)], right: &[G(1), G(1), G(1)], idx: 12 },
    JDef { label: "j5_2", d8: 5, d4: 2, left: &[F(30)], right: &[G(1), G(1)], idx: 8 },
    JDef { label: "j5_2p", d8: 5, d4: 2, left: &[F(27)], right: &[G(2)], idx: 4 },
    JDef { label: "j5_2pp", d8: 5, d4: 2, left: &[F(26)], right: &[G(2)], idx: 4 },
    JDef { label: "j6_1", d8: 6, d4: 1, left: &[F(37)], right: &[G(1)], idx: 4 },
    JDef { label: "j6_1p", d8: 6, d4: 1, left: &[F(38)], right: &[G(1)], idx: 4 },
    JDef { label: "j6_2", d8: 6, d4: 2, left: &[F(37)], right: &[G(2)], idx: 4 },
    JDef { label: "j6_2p", d8: 6, d4: 2, left: &[F(38)], right: &[G(2)], idx: 4 },
    JDef { label: "j6_2pp", d8: 6, d4: 2, left: &[F(42)], right: &[G(1), G(1)], idx: 8 },
    JDef { label: "j7_1", d8: 7, d4: 1, left: &[F(47)], right: &[G(1)], idx: 4 },
    JDef { label: "j7_1p", d8: 7, d4: 1, left: &[F(48)], right: &[G(1)], idx: 4 },
    JDef { label: "j3_5", d8: 3, d4: 5, left: &[F(11)], right: &[G(1), G(2), G(2)], idx: 12 },
    JDef { label: "j4_4", d8: 4, d4: 4, left: &[F(20)], right: &[G(1), G(3)], idx: 10 },
    JDef { label: "j4_4p", d8: 4, d4: 4, left: &[F(21)], right: &[G(1), G(1), G(2)], idx: 12 },
    JDef { label: "j5_3", d8: 5, d4: 3, left: &[F(29)], right: &[G(3)], idx: 6 },
    JDef { label: "j5_3p", d8: 5, d4: 3, left: &[F(30)], right: &[G(1), G(2)], idx: 8 },
    JDef { label: "j6_3", d8: 6, d4: 3, left: &[F(8), F(8)], right: &[G(1), G(1), G(1)], idx: 12 },
    JDef { label: "j7_2", d8: 7, d4: 2, left: &[F(48)], right: &[G(2)], idx: 4 },
    JDef { label: "j7_2p", d8: 7, d4: 2, left: &[F(47)], right: &[G(2)], idx: 4 },
    JDef { label: "j8_1", d8: 8, d4: 1, left: &[F(55)], right: &[G(1)], idx: 4 },
    JDef { label: "j8_1p", d8: 8, d4: 1, left: &[F(56)], right: &[G(1)], idx: 4 },
    JDef { label: "j8_2", d8: 8, d4: 2, left: &[F(56)], right: &[G(2)], idx: 4 },
    JDef { label: "j9_1", d8: 9, d4: 1, left: &[F(63)], right: &[G(1)], idx: 4 },
    JDef { label: "j10_1", d8: 10, d4: 1, left: &[F(25), F(25)], right: &[G(1)], idx: 4 },
];

pub const NUM_J: usize = 63;

pub fn label_index(label: &str) -> Option<usize> {
    J_DEFS.iter().position(|d| d.label == label)
}

/// The 63 invariant values in `J_DEFS` order, plus the constant b0.
#[derive(Clone, Debug, PartialEq)]
pub struct JointTuple<F: Field> {
    pub values: Vec<F>,
    pub b0: F,
}

impl<F: Field> JointTuple<F> {
    pub fn get(&self, label: &str) -> &F {
        &self.values[label_index(label).expect("unknown joint invariant label")]
    }

    /// The pure octic invariants (j2_0 ... j10_0).
    pub fn octic_part(&self) -> Vec<F> {
        (2..=10)
            .map(|d| {
                let mut lbl = alloc::string::String::from("j");
                lbl.push_str(itoa(d));
                lbl.push_str("_0");
                self.values[label_index(&lbl).unwrap()].clone()
            })
            .collect()
    }
}

fn itoa(d: usize) -> &'static str {
    match d {
        2 => "2",
        3 => "3",
        4 => "4",
        5 => "5",
        6 => "6",
        7 => "7",
        8 => "8",
        9 => "9",
        10 => "10",
        _ => unreachable!(),
    }
}

/// All intermediate covariants of one (b8, b4) pair, reusable across the 63
/// invariant evaluations.
pub struct CovariantCache<F: Field> {
    f: Vec<Option<BinaryForm<F>>>,
    g: Vec<Option<BinaryForm<F>>>,
}

fn product<F: Field>(f: &[Option<BinaryForm<F>>], ids: &[usize]) -> BinaryForm<F> {
    let mut it = ids.iter();
    let first = f[*it.next().unwrap()].as_ref().expect("chain order").clone();
    it.fold(first, |acc, &id| acc.mul(f[id].as_ref().expect("chain order")))
}

impl<F: Field> CovariantCache<F> {
    pub fn new(b8: &BinaryForm<F>, b4: &BinaryForm<F>) -> Result<Self, BinaryError> {
        assert_eq!(b8.degree(), 8);
        assert_eq!(b4.degree(), 4);
        let mut f: Vec<Option<BinaryForm<F>>> = vec![None; 70];
        f[1] = Some(b8.clone());
        for def in F_DEFS {
            let left = product(&f, def.left);
            let t = transvectant_scaled(&left, f[1].as_ref().unwrap(), def.idx)?;
            debug_assert_eq!(t.degree(), def.ord);
            f[def.id] = Some(t);
        }
        let mut g: Vec<Option<BinaryForm<F>>> = vec![None; 4];
        g[1] = Some(b4.clone());
        let g2 = transvectant_scaled(g[1].as_ref().unwrap(), g[1].as_ref().unwrap(), 2)?;
        g[2] = Some(g2);
        // the degree-3 order-6 covariant is the Jacobian-style first
        // transvectant of g2 with g1
        let g3 = transvectant_scaled(g[2].as_ref().unwrap(), g[1].as_ref().unwrap(), 1)?;
        g[3] = Some(g3);
        Ok(CovariantCache { f, g })
    }

    pub fn f_cov(&self, id: usize) -> &BinaryForm<F> {
        self.f[id].as_ref().expect("covariant index present in the table")
    }

    pub fn g_cov(&self, id: usize) -> &BinaryForm<F> {
        self.g[id].as_ref().expect("covariant index present in the table")
    }

    fn operand(&self, factors: &[Cov]) -> BinaryForm<F> {
        let mut it = factors.iter();
        let first = match it.next().unwrap() {
            Cov::F(i) => self.f_cov(*i).clone(),
            Cov::G(i) => self.g_cov(*i).clone(),
        };
        it.fold(first, |acc, c| match c {
            Cov::F(i) => acc.mul(self.f_cov(*i)),
            Cov::G(i) => acc.mul(self.g_cov(*i)),
        })
    }

    pub fn invariant(&self, def: &JDef) -> Result<F, BinaryError> {
        let left = self.operand(def.left);
        let right = self.operand(def.right);
        let t = transvectant_scaled(&left, &right, def.idx)?;
        debug_assert_eq!(t.degree(), 0);
        Ok(t.coeff(0).clone())
    }

    /// (degree, order) of every cached covariant, for the type assertions.
    pub fn f_types(&self) -> Vec<(usize, usize, usize)> {
        F_DEFS.iter().map(|d| (d.id, d.deg, d.ord)).collect()
    }
}

/// All 63 joint invariants of (b8, b4) plus the carried constant b0.
pub fn joint_invariants<F: Field>(
    b8: &BinaryForm<F>,
    b4: &BinaryForm<F>,
    b0: &F,
) -> Result<JointTuple<F>, BinaryError> {
    let cache = CovariantCache::new(b8, b4)?;
    let mut values = Vec::with_capacity(NUM_J);
    for def in J_DEFS {
        values.push(cache.invariant(def)?);
    }
    Ok(JointTuple { values, b0: b0.clone() })
}

/// Only the pure octic invariants (j2_0 .. j10_0) of an octic.
pub fn octic_invariants<F: Field>(b8: &BinaryForm<F>) -> Result<Vec<F>, BinaryError> {
    let b4 = BinaryForm::zero(4, b8.ctx());
    let cache = CovariantCache::new(b8, &b4)?;
    let mut out = Vec::with_capacity(9);
    for def in J_DEFS.iter().filter(|d| d.d4 == 0 && d.d8 >= 2) {
        out.push(cache.invariant(def)?);
    }
    Ok(out)
}

/// Not stable iff b8 and b4 share a projective root with multiplicity >= 4
/// in b8 and >= 2 in b4.
pub fn is_stable_pair<F: Field>(b8: &BinaryForm<F>, b4: &BinaryForm<F>) -> bool {
    assert_eq!(b8.degree(), 8);
    assert_eq!(b4.degree(), 4);
    // the root at (1:0): leading coefficients vanish
    let inf8 = b8.coeffs()[0..4].iter().all(|c| c.is_zero());
    let inf4 = b4.coeffs()[0..2].iter().all(|c| c.is_zero());
    if inf8 && inf4 {
        return false;
    }
    // finite roots: common factor of the multiplicity-4 part of b8 and the
    // multiplicity-2 part of b4 (dehomogenized at z2 = 1). A root has
    // multiplicity >= m exactly when all partials of order < m vanish there.
    let mut g8 = b8.gcd_dehom(&b8.derivative(1, 0));
    for d in [
        b8.derivative(0, 1),
        b8.derivative(2, 0),
        b8.derivative(1, 1),
        b8.derivative(0, 2),
        b8.derivative(3, 0),
        b8.derivative(2, 1),
        b8.derivative(1, 2),
        b8.derivative(0, 3),
    ] {
        g8 = gcd_vec(&g8, &d.gcd_dehom(&d), b8.ctx());
    }
    let g4 = b4.gcd_dehom(&b4.derivative(1, 0));
    let d01 = b4.derivative(0, 1);
    let g4b = gcd_vec(&g4, &d01.gcd_dehom(&d01), b4.ctx());
    let shared = gcd_vec(&g8, &g4b, b8.ctx());
    shared.len() <= 1
}

fn gcd_vec<F: Field>(a: &[F], b: &[F], ctx: &F) -> Vec<F> {
    // univariate gcd on ascending-coefficient vectors via the helper on forms
    let fa = BinaryForm::new(a.iter().rev().cloned().collect());
    let fb = BinaryForm::new(b.iter().rev().cloned().collect());
    let _ = ctx;
    fa.gcd_dehom(&fb)
}

/// Octic genericity: false iff all expressions of the excluded locus vanish
/// (the locus where some root of b8 has multiplicity at least 4).
pub fn octic_is_generic<F: Field>(j: &[F]) -> bool {
    assert_eq!(j.len(), 9, "expects (j2_0 ... j10_0)");
    let c = |v: i64| j[0].from_i64_like(v);
    let j2 = &j[0];
    let j3 = &j[1];
    let j4 = &j[2];
    let j5 = &j[3];
    let j6 = &j[4];
    let j7 = &j[5];
    let exprs = [
        c(49).mul(&j3.mul(j3)).sub(&c(81).mul(&j2.pow_u(3))),
        c(33).mul(j4).sub(&c(25).mul(&j2.mul(j2))),
        c(27).mul(j5).sub(&c(20).mul(&j3.mul(j2))),
        c(77).mul(j6).sub(&c(50).mul(&j2.pow_u(3))),
        c(363).mul(j7).sub(&c(125).mul(&j3.mul(&j2.mul(j2)))),
        j[6].clone(),
        j[7].clone(),
        j[8].clone(),
    ];
    exprs.iter().any(|e| !e.is_zero())
}

/// Classical chain for the nine octic invariants in the Cayley normalization;
/// the independent oracle behind the frozen conversion table.
pub fn shioda_invariants_oracle<F: Field>(f: &BinaryForm<F>) -> Result<Vec<F>, BinaryError> {
    assert_eq!(f.degree(), 8);
    let g = transvectant(f, f, 4)?;
    let k = transvectant(f, f, 6)?;
    let h = transvectant(&k, &k, 2)?;
    let m = transvectant(f, &k, 4)?;
    let n = transvectant(f, &h, 4)?;
    let p = transvectant(&g, &k, 4)?;
    let q = transvectant(&g, &h, 4)?;
    let scalar = |b: BinaryForm<F>| b.coeff(0).clone();
    Ok(vec![
        scalar(transvectant(f, f, 8)?),
        scalar(transvectant(f, &g, 8)?),
        scalar(transvectant(&k, &k, 4)?),
        scalar(transvectant(&m, &k, 4)?),
        scalar(transvectant(&k, &h, 4)?),
        scalar(transvectant(&m, &h, 4)?),
        scalar(transvectant(&p, &h, 4)?),
        scalar(transvectant(&n, &h, 4)?),
        scalar(transvectant(&q, &h, 4)?),
    ])
}

/// Shioda's nine invariants from the Olive octic invariants, via the frozen
/// conversion polynomials.
pub fn shioda_from_olive<F: Field>(j: &[F]) -> Vec<F> {
    assert_eq!(j.len(), 9);
    let ctx = &j[0];
    crate::shioda_tables::SHIODA_ROWS
        .iter()
        .map(|raw| {
            let terms = crate::shioda_tables::parse_terms(raw);
            let mut acc = ctx.zero_like();
            for (exps, q) in &terms {
                let mut term = crate::interpolate::reduce_rational(q, ctx)
                    .expect("characteristic divides a conversion denominator");
                for (k, &e) in exps.iter().enumerate() {
                    if e > 0 {
                        term = term.mul(&j[k].pow_u(e as u64));
                    }
                }
                acc = acc.add(&term);
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;
    use crate::scalar::Fp64;

    fn worked_octic(p: u64) -> BinaryForm<Fp64> {
        BinaryForm::new(
            [15i64, 9, 6, 19, 28, 16, 4, 25, 20]
                .iter()
                .map(|&c| Fp64::new(c, p))
                .collect::<Vec<_>>(),
        )
    }

    /// The nine pure octic invariants of the worked example octic over F_29.
    #[test]
    fn worked_octic_invariants() {
        let j = octic_invariants(&worked_octic(29)).unwrap();
        let got: Vec<u64> = j.iter().map(|x| x.value()).collect();
        assert_eq!(got, vec![7, 9, 5, 12, 18, 8, 23, 18, 11]);
    }

    /// Rescaling by 1/26 = 19 mod 29 produces the target invariant vector of
    /// the worked reconstruction.
    #[test]
    fn rescaled_octic_hits_targets() {
        let b = worked_octic(29).scale(&Fp64::new(19, 29));
        let j = octic_invariants(&b).unwrap();
        let got: Vec<u64> = j.iter().map(|x| x.value()).collect();
        assert_eq!(got, vec![4, 19, 4, 20, 19, 9, 24, 24, 8]);
    }

    #[test]
    fn covariant_types_all_match_table() {
        let p = 10007;
        let mut rng = SplitMix64::new(40);
        let b8 = BinaryForm::new(
            (0..9).map(|_| Fp64::new(rng.below(p) as i64, p)).collect::<Vec<_>>(),
        );
        let b4 = BinaryForm::new(
            (0..5).map(|_| Fp64::new(rng.below(p) as i64, p)).collect::<Vec<_>>(),
        );
        let cache = CovariantCache::new(&b8, &b4).unwrap();
        for def in F_DEFS {
            let cov = cache.f_cov(def.id);
            assert_eq!(cov.degree(), def.ord, "f{} order", def.id);
            // degree in the octic coefficients: check bihomogeneity by
            // scaling b8 by 2
            let b8s = b8.scale(&Fp64::new(2, p));
            let cache2 = CovariantCache::new(&b8s, &b4).unwrap();
            let expected = cov.scale(&Fp64::new(2, p).pow_u(def.deg as u64));
            assert_eq!(cache2.f_cov(def.id), &expected, "f{} degree", def.id);
        }
        assert_eq!(cache.g_cov(2).degree(), 4);
        assert_eq!(cache.g_cov(3).degree(), 6);
    }

    #[test]
    fn bihomogeneity_of_labels() {
        let p = 10007;
        let mut rng = SplitMix64::new(41);
        let b8 = BinaryForm::new(
            (0..9).map(|_| Fp64::new(rng.below(p) as i64, p)).collect::<Vec<_>>(),
        );
        let b4 = BinaryForm::new(
            (0..5).map(|_| Fp64::new(rng.below(p) as i64, p)).collect::<Vec<_>>(),
        );
        let lam = Fp64::new(3, p);
        let mu = Fp64::new(7, p);
        let j0 = joint_invariants(&b8, &b4, &Fp64::new(1, p)).unwrap();
        let j1 = joint_invariants(&b8.scale(&lam), &b4.scale(&mu), &Fp64::new(1, p)).unwrap();
        for (k, def) in J_DEFS.iter().enumerate() {
            let expected = j0.values[k]
                .mul(&lam.pow_u(def.d8 as u64))
                .mul(&mu.pow_u(def.d4 as u64));
            assert_eq!(j1.values[k], expected, "{}", def.label);
        }
    }

    #[test]
    fn sl2_invariance() {
        let p = 10007;
        let mut rng = SplitMix64::new(42);
        for _ in 0..10 {
            let b8 = BinaryForm::new(
                (0..9).map(|_| Fp64::new(rng.below(p) as i64, p)).collect::<Vec<_>>(),
            );
            let b4 = BinaryForm::new(
                (0..5).map(|_| Fp64::new(rng.below(p) as i64, p)).collect::<Vec<_>>(),
            );
            // random SL2 element
            let t = loop {
                let a = Fp64::new(rng.below(p) as i64, p);
                if a.is_zero() {
                    continue;
                }
                let b = Fp64::new(rng.below(p) as i64, p);
                let c = Fp64::new(rng.below(p) as i64, p);
                let d = Fp64::new(1, p).add(&b.mul(&c)).div(&a);
                break Matrix::from_rows(vec![vec![a, b], vec![c, d]]);
            };
            let one = Fp64::new(1, p);
            let j0 = joint_invariants(&b8, &b4, &one).unwrap();
            let j1 = joint_invariants(&b8.act(&t), &b4.act(&t), &one).unwrap();
            assert_eq!(j0, j1);
        }
    }

    #[test]
    fn octic_zero_kills_octic_degrees() {
        let p = 29;
        let b8 = BinaryForm::zero(8, &Fp64::new(0, p));
        let mut rng = SplitMix64::new(43);
        let b4 = BinaryForm::new(
            (0..5).map(|_| Fp64::new(rng.below(p) as i64, p)).collect::<Vec<_>>(),
        );
        let j = joint_invariants(&b8, &b4, &Fp64::new(1, p)).unwrap();
        for (k, def) in J_DEFS.iter().enumerate() {
            if def.d8 >= 1 {
                assert!(j.values[k].is_zero(), "{}", def.label);
            }
        }
    }

    /// j1_2 of (z1^8, z2^4) is 140 / (2^9 3^2 5^2 7^2) = 1/8!.
    #[test]
    fn j12_closed_form_value() {
        use crate::scalar::big_ratio;
        let one = big_ratio(1, 1);
        let b8 = BinaryForm::monomial_z1(8, &one);
        let mut c4 = vec![big_ratio(0, 1); 5];
        c4[4] = one.clone();
        let b4 = BinaryForm::new(c4);
        let j = joint_invariants(&b8, &b4, &one).unwrap();
        assert_eq!(j.get("j1_2"), &big_ratio(140, 5644800));
    }

    #[test]
    fn stability_examples() {
        let p = 10007;
        let el = |v: i64| Fp64::new(v, p);
        // b8 = z1^4 (z1^4 + z2^4), b4 = z1^2 (z1^2 + z2^2): shared root (0:1)
        // of multiplicities 4 and 2
        let b8 = BinaryForm::new(vec![el(1), el(0), el(0), el(0), el(1), el(0), el(0), el(0), el(0)]);
        let b4 = BinaryForm::new(vec![el(1), el(0), el(1), el(0), el(0)]);
        assert!(!is_stable_pair(&b8, &b4));

        // squarefree octic: stable regardless of b4
        let b8 = BinaryForm::new(vec![el(1), el(0), el(0), el(0), el(0), el(0), el(0), el(0), el(1)]);
        let b4 = BinaryForm::new(vec![el(1), el(0), el(0), el(0), el(1)]);
        assert!(is_stable_pair(&b8, &b4));

        // 4-fold root of b8 not shared by b4
        let b8 = BinaryForm::new(vec![el(1), el(0), el(0), el(0), el(1), el(0), el(0), el(0), el(0)]);
        let b4 = BinaryForm::new(vec![el(1), el(0), el(0), el(0), el(4)]);
        assert!(is_stable_pair(&b8, &b4));

        // shared root at infinity: (1:0) with high multiplicity on both
        let b8 = BinaryForm::new(vec![el(0), el(0), el(0), el(0), el(1), el(0), el(0), el(0), el(1)]);
        let b4 = BinaryForm::new(vec![el(0), el(0), el(1), el(0), el(1)]);
        assert!(!is_stable_pair(&b8, &b4));
    }

    /// The conversion rows reproduce the classical invariants computed by
    /// the direct transvectant chain, on random octics.
    #[test]
    fn shioda_conversion_matches_oracle() {
        let p = 10007;
        let mut rng = SplitMix64::new(44);
        for _ in 0..50 {
            let b8 = BinaryForm::new(
                (0..9).map(|_| Fp64::new(rng.below(p) as i64, p)).collect::<Vec<_>>(),
            );
            let j = octic_invariants(&b8).unwrap();
            let via_tables = shioda_from_olive(&j);
            let direct = shioda_invariants_oracle(&b8).unwrap();
            assert_eq!(via_tables, direct);
        }
    }

    /// The published conversion values: J2 = 2^7 3^2 5 7 j2_0 and
    /// J4 = 2^13 3^3 5^2 (50 j2_0^2 - 33 j4_0).
    #[test]
    fn shioda_conversion_published_rows() {
        let p = 1000003;
        let fp = |v: i64| Fp64::new(v, p);
        // j2_0 = 1, rest 0
        let mut j = vec![fp(0); 9];
        j[0] = fp(1);
        let s = shioda_from_olive(&j);
        assert_eq!(s[0], fp(40320));
        assert_eq!(s[1], fp(0));
        assert_eq!(s[2], fp(2i64.pow(13) * 27 * 25 * 50));
        // all zero maps to all zero
        let z = vec![fp(0); 9];
        assert!(shioda_from_olive(&z).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn genericity_examples() {
        let p = 10007;
        let zero = vec![Fp64::new(0, p); 9];
        assert!(!octic_is_generic(&zero));
        // a squarefree octic is generic
        let b8 = BinaryForm::new(
            [1i64, 2, 0, 1, 7, 0, 0, 1, 3]
                .iter()
                .map(|&c| Fp64::new(c, p))
                .collect::<Vec<_>>(),
        );
        let j = octic_invariants(&b8).unwrap();
        assert!(octic_is_generic(&j));
        // z1^4 z2^4 has two 4-fold roots: in the excluded locus
        let mut c = vec![Fp64::new(0, p); 9];
        c[4] = Fp64::new(1, p);
        let b8 = BinaryForm::new(c);
        let j = octic_invariants(&b8).unwrap();
        assert!(!octic_is_generic(&j));
    }
}
