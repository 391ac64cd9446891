//! Frozen conversion from the nine octic basis invariants (j2_0 .. j10_0) to
//! the classical nine invariants (J2 .. J10).
//!
//! Rows are generated by the `gentables` tool in the CLI crate by exact
//! linear algebra against `olive::shioda_invariants_oracle`; the first three
//! rows agree with the published closed forms, which the generator asserts.
//! Row d-2 holds J_d as (exponents of j2_0..j10_0, "num/den") terms.

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;

pub type RawTerm = (&'static [u8], &'static str);

pub fn parse_terms(raw: &[RawTerm]) -> Vec<(Vec<u8>, BigRational)> {
    raw.iter()
        .map(|(exps, txt)| {
            let mut it = txt.splitn(2, '/');
            let num = BigInt::parse_bytes(it.next().unwrap().as_bytes(), 10).unwrap();
            let den = match it.next() {
                Some(d) => BigInt::parse_bytes(d.as_bytes(), 10).unwrap(),
                None => BigInt::from(1),
            };
            (exps.to_vec(), BigRational::new(num, den))
        })
        .collect()
}

pub static SHIODA_ROWS: [&[RawTerm]; 9] = [
    &[(&[1, 0, 0, 0, 0, 0, 0, 0, 0], "40320"), ],
    &[(&[0, 1, 0, 0, 0, 0, 0, 0, 0], "967680"), ],
    &[(&[2, 0, 0, 0, 0, 0, 0, 0, 0], "276480000"), (&[0, 0, 1, 0, 0, 0, 0, 0, 0], "-182476800"), ],
    &[(&[0, 0, 0, 1, 0, 0, 0, 0, 0], "20901888000"), ],
    &[(&[3, 0, 0, 0, 0, 0, 0, 0, 0], "-1859803545600"), (&[1, 0, 1, 0, 0, 0, 0, 0, 0], "1287556300800"), (&[0, 2, 0, 0, 0, 0, 0, 0, 0], "-39016857600"), (&[0, 0, 0, 0, 1, 0, 0, 0, 0], "2483144294400"), ],
    &[(&[2, 1, 0, 0, 0, 0, 0, 0, 0], "-26754416640000"), (&[1, 0, 0, 1, 0, 0, 0, 0, 0], "-98322481152000"), (&[0, 1, 1, 0, 0, 0, 0, 0, 0], "17657914982400"), (&[0, 0, 0, 0, 0, 1, 0, 0, 0], "466168955535360"), ],
    &[(&[4, 0, 0, 0, 0, 0, 0, 0, 0], "-46292784906240000/7"), (&[2, 0, 1, 0, 0, 0, 0, 0, 0], "74950281422438400/7"), (&[1, 0, 0, 0, 1, 0, 0, 0, 0], "6568744373452800"), (&[0, 1, 0, 1, 0, 0, 0, 0, 0], "-337105649664000"), (&[0, 0, 2, 0, 0, 0, 0, 0, 0], "-29302048633651200/7"), (&[0, 0, 0, 0, 0, 0, 1, 0, 0], "419552059981824000"), ],
    &[(&[3, 1, 0, 0, 0, 0, 0, 0, 0], "-441265944526848000"), (&[2, 0, 0, 1, 0, 0, 0, 0, 0], "1724275332218880000"), (&[1, 1, 1, 0, 0, 0, 0, 0, 0], "276699527774208000"), (&[1, 0, 0, 0, 0, 1, 0, 0, 0], "-1699352331839078400"), (&[0, 3, 0, 0, 0, 0, 0, 0, 0], "9438958190592000"), (&[0, 1, 0, 0, 1, 0, 0, 0, 0], "244650412081152000"), (&[0, 0, 1, 1, 0, 0, 0, 0, 0], "-495682899148800000"), (&[0, 0, 0, 0, 0, 0, 0, 1, 0], "30904504418304000000"), ],
    &[(&[5, 0, 0, 0, 0, 0, 0, 0, 0], "44176892755968000000"), (&[3, 0, 1, 0, 0, 0, 0, 0, 0], "-63059945985146880000"), (&[2, 2, 0, 0, 0, 0, 0, 0, 0], "-154105439846400000"), (&[2, 0, 0, 0, 1, 0, 0, 0, 0], "-146163946229858304000"), (&[1, 1, 0, 1, 0, 0, 0, 0, 0], "-3398024948613120000"), (&[1, 0, 2, 0, 0, 0, 0, 0, 0], "22376109865697280000"), (&[1, 0, 0, 0, 0, 0, 1, 0, 0], "-704847460769464320000"), (&[0, 2, 1, 0, 0, 0, 0, 0, 0], "101709590298624000"), (&[0, 1, 0, 0, 0, 1, 0, 0, 0], "18795932287185715200"), (&[0, 0, 1, 0, 1, 0, 0, 0, 0], "89184780750422016000"), (&[0, 0, 0, 2, 0, 0, 0, 0, 0], "54611115245568000000"), (&[0, 0, 0, 0, 0, 0, 0, 0, 1], "131372369891827384320000/37"), ],
];
