#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qsigma_core::scalar::{LaurentFraction, LaurentPoly};
use qsigma_core::uqg::Generator;

pub fn poly() -> impl Strategy<Value = LaurentPoly> {
    (-3i32..=1, prop::collection::vec(-4i64..=4, 1..4)).prop_map(|(low, cs)| {
        LaurentPoly::from_terms(cs.into_iter().enumerate().map(|(i, c)| (low + i as i32, BigInt::from(c))))
    })
}

pub fn fraction() -> impl Strategy<Value = LaurentFraction> {
    (poly(), poly()).prop_filter_map("zero denominator", |(n, d)| LaurentFraction::new(n, d).ok())
}

pub fn nonzero_fraction() -> impl Strategy<Value = LaurentFraction> {
    fraction().prop_filter("zero", |f| !f.is_zero())
}

pub fn generator(rank: usize) -> impl Strategy<Value = Generator> {
    (0..rank, 0u8..4).prop_map(|(i, kind)| match kind {
        0 => Generator::E(i),
        1 => Generator::F(i),
        2 => Generator::K(i, 1),
        _ => Generator::K(i, -1),
    })
}

pub fn word(rank: usize) -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(generator(rank), 0..=3)
}

pub fn points() -> Vec<BigRational> {
    vec![BigRational::from_integer(2.into()), BigRational::new(7.into(), 3.into())]
}
