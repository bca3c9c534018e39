//! Recovering `D` from the regular degree of `G(X, D)`.
//!
//! On `Z_q^n` the degree is `(q-1)·Σ q^{d-1}`, so `degree / (q-1)` written in
//! base `q` has digit 1 exactly at the positions `d - 1`. On `S_n` the degree
//! is `Σ (d-1)·(d-1)!`, a factorial-base number whose digits are all 0 or 1.
//! Both representations are unique, which is what makes the inversion
//! well defined.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::space::DistanceSet;

pub fn recover_distance_set_zq(q: u32, degree: &BigUint) -> Result<DistanceSet> {
    if q < 2 {
        return Err(Error::InvalidSpace(format!("q must be >= 2, got {q}")));
    }
    let step = BigUint::from(q - 1);
    if !(degree % &step).is_zero() {
        return Err(Error::NoPreimage(format!(
            "degree {degree} is not a multiple of q-1 = {step}"
        )));
    }
    let mut rest = degree / &step;
    let base = BigUint::from(q);
    let mut values = Vec::new();
    let mut position = 1usize;
    while !rest.is_zero() {
        let digit = (&rest % &base).to_u32().expect("digit is below q");
        match digit {
            0 => {}
            1 => values.push(position),
            _ => {
                return Err(Error::NoPreimage(format!(
                    "degree {degree}: base-{q} digit {digit} at position {position} of degree/(q-1)"
                )))
            }
        }
        rest /= &base;
        position += 1;
    }
    DistanceSet::new(values)
}

pub fn recover_distance_set_sn(degree: &BigUint) -> Result<DistanceSet> {
    // terms[i] = (d-1)(d-1)! for d = i + 2, up to the first term above degree
    let mut terms: Vec<BigUint> = Vec::new();
    let mut factorial = BigUint::one();
    for d in 2usize.. {
        if d > 2 {
            factorial *= BigUint::from(d - 1);
        }
        let term = BigUint::from(d - 1) * &factorial;
        if &term > degree {
            break;
        }
        terms.push(term);
    }

    let mut rest = degree.clone();
    let mut values = Vec::new();
    for (i, term) in terms.iter().enumerate().rev() {
        if &rest >= term {
            rest -= term;
            values.push(i + 2);
        }
    }
    if !rest.is_zero() {
        return Err(Error::NoPreimage(format!(
            "degree {degree} is not a sum of distinct (d-1)(d-1)!, remainder {rest}"
        )));
    }
    values.reverse();
    DistanceSet::new(values)
}
