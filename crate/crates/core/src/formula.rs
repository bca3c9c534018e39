//! Closed-form structure of RT distance graphs.
//!
//! All three space families are handled through their mixed-radix view (see
//! [`SpaceSpec::radices`]): with radices `r_1, …, r_n` and
//! `D = {d_1 < … < d_k}`, the distance graph `G(X, D)` is
//!
//! ```text
//! P(d_k+1..n) * [ P(d_{k-1}+1..d_k-1) * [ … [ P(d_1+1..d_2-1) * K_{r_{d_1}}(P(1..d_1-1)) ]^{r_{d_2}} … ]^{r_{d_k}}
//! ```
//!
//! where `P(a..b)` is the product of the radices at positions `a..=b` (1 when
//! the range is empty). For `Z_q^n` every radix is `q`; for `S_n` position `i`
//! has radix `i`.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::Result;
use crate::expr::GraphExpr;
use crate::space::{DistanceSet, SpaceSpec};

fn radix_product(radices: &[u64], first: usize, last: usize) -> BigUint {
    // 1-based inclusive range
    (first..=last).fold(BigUint::one(), |acc, i| acc * BigUint::from(radices[i - 1]))
}

/// Structure expression for `G(space, D)`, normalized. The empty set gives
/// the edgeless graph `K_1(|X|)`.
pub fn structure_expr(space: &SpaceSpec, distances: &DistanceSet) -> Result<GraphExpr> {
    distances.check_for(space)?;
    let radices = space.radices();
    let n = radices.len();
    let d = distances.values();
    let Some((&first, rest)) = d.split_first() else {
        return Ok(GraphExpr::multipartite(1u32, space.cardinality()));
    };

    let mut expr = GraphExpr::multipartite(radices[first - 1], radix_product(&radices, 1, first - 1));
    let mut previous = first;
    for &next in rest {
        let gap = radix_product(&radices, previous + 1, next - 1);
        expr = GraphExpr::join_power(GraphExpr::copies(gap, expr), radices[next - 1]);
        previous = next;
    }
    expr = GraphExpr::copies(radix_product(&radices, previous + 1, n), expr);
    Ok(expr.normalize())
}

pub fn structure_expr_zq(q: u32, n: usize, distances: &DistanceSet) -> Result<GraphExpr> {
    structure_expr(&SpaceSpec::zq(q, n)?, distances)
}

pub fn structure_expr_sn(n: usize, distances: &DistanceSet) -> Result<GraphExpr> {
    structure_expr(&SpaceSpec::sn(n)?, distances)
}

pub fn structure_expr_product(sizes: &[u32], distances: &DistanceSet) -> Result<GraphExpr> {
    structure_expr(&SpaceSpec::product(sizes.to_vec())?, distances)
}

/// Regular degree `Σ (r_d - 1)·r_1⋯r_{d-1}`: `(q-1)Σ q^{d-1}` on `Z_q^n` and
/// `Σ (d-1)(d-1)!` on `S_n`.
pub fn regular_degree(space: &SpaceSpec, distances: &DistanceSet) -> Result<BigUint> {
    distances.check_for(space)?;
    let radices = space.radices();
    Ok(distances
        .values()
        .iter()
        .map(|&d| BigUint::from(radices[d - 1] - 1) * radix_product(&radices, 1, d - 1))
        .sum())
}

/// `r_{d_k+1}⋯r_n`, or `|X|` for the empty set.
pub fn component_count(space: &SpaceSpec, distances: &DistanceSet) -> Result<BigUint> {
    distances.check_for(space)?;
    let radices = space.radices();
    let top = distances.largest().unwrap_or(0);
    Ok(radix_product(&radices, top + 1, radices.len()))
}

/// `r_1⋯r_{d_k}`, or 1 for the empty set.
pub fn component_size(space: &SpaceSpec, distances: &DistanceSet) -> Result<BigUint> {
    distances.check_for(space)?;
    let radices = space.radices();
    Ok(radix_product(&radices, 1, distances.largest().unwrap_or(0)))
}

/// `Π r_{d_i}`: `q^k` on `Z_q^n`, `d_1⋯d_k` on `S_n`.
pub fn chromatic_number(space: &SpaceSpec, distances: &DistanceSet) -> Result<BigUint> {
    distances.check_for(space)?;
    let radices = space.radices();
    Ok(distances
        .values()
        .iter()
        .fold(BigUint::one(), |acc, &d| acc * BigUint::from(radices[d - 1])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(text: &str) -> DistanceSet {
        text.parse().unwrap()
    }

    fn zq(q: u32, n: usize, d: &str) -> String {
        structure_expr_zq(q, n, &ds(d)).unwrap().to_string()
    }

    fn sn(n: usize, d: &str) -> String {
        structure_expr_sn(n, &ds(d)).unwrap().to_string()
    }

    fn product(sizes: &[u32], d: &str) -> String {
        structure_expr_product(sizes, &ds(d)).unwrap().to_string()
    }

    #[test]
    fn zq_expressions() {
        assert_eq!(zq(2, 3, "3"), "K_2(4)");
        assert_eq!(zq(3, 4, "1,3"), "3*[3*K_3(1)]^3");
        assert_eq!(zq(2, 2, "1,2"), "[K_2(1)]^2");
        assert_eq!(zq(2, 3, "1"), "4*K_2(1)");
        assert_eq!(zq(2, 4, "2,3"), "2*[K_2(2)]^2");
    }

    #[test]
    fn product_expressions() {
        assert_eq!(product(&[2, 3], "2"), "K_3(2)");
        assert_eq!(product(&[2, 3, 2], "2"), "2*K_3(2)");
        assert_eq!(product(&[2, 3, 2], "1,3"), "[3*K_2(1)]^2");
        for d in DistanceSet::all_nonempty_for(&SpaceSpec::zq(3, 4).unwrap()) {
            assert_eq!(
                structure_expr_product(&[3, 3, 3, 3], &d).unwrap(),
                structure_expr_zq(3, 4, &d).unwrap()
            );
        }
    }

    #[test]
    fn sn_expressions() {
        assert_eq!(sn(3, "2"), "3*K_2(1)");
        assert_eq!(sn(3, "2,3"), "[K_2(1)]^3");
        assert_eq!(sn(4, "3"), "4*K_3(2)");
        assert_eq!(sn(4, "2,4"), "[3*K_2(1)]^4");
        assert!(structure_expr_sn(3, &ds("1,2")).is_err());
    }

    #[test]
    fn empty_distance_set() {
        assert_eq!(zq(2, 3, ""), "K_1(8)");
        assert_eq!(sn(1, ""), "K_1(1)");
    }

    #[test]
    fn closed_forms() {
        let z34 = SpaceSpec::zq(3, 4).unwrap();
        assert_eq!(regular_degree(&z34, &ds("1,3")).unwrap(), BigUint::from(20u32));
        assert_eq!(component_count(&z34, &ds("1,3")).unwrap(), BigUint::from(3u32));
        assert_eq!(component_size(&z34, &ds("1,3")).unwrap(), BigUint::from(27u32));
        assert_eq!(chromatic_number(&z34, &ds("1,3")).unwrap(), BigUint::from(9u32));

        let s4 = SpaceSpec::sn(4).unwrap();
        assert_eq!(regular_degree(&s4, &ds("2,4")).unwrap(), BigUint::from(19u32));
        assert_eq!(chromatic_number(&s4, &ds("2,4")).unwrap(), BigUint::from(8u32));
        assert_eq!(component_count(&s4, &ds("3")).unwrap(), BigUint::from(4u32));

        let x = SpaceSpec::product(vec![2, 3, 2]).unwrap();
        // (3-1)·2 + (2-1)·6
        assert_eq!(regular_degree(&x, &ds("2,3")).unwrap(), BigUint::from(10u32));
    }

    #[test]
    fn expression_statistics_agree_with_closed_forms() {
        for space in [
            SpaceSpec::zq(2, 5).unwrap(),
            SpaceSpec::zq(3, 4).unwrap(),
            SpaceSpec::sn(6).unwrap(),
            SpaceSpec::product(vec![2, 2, 3, 2]).unwrap(),
        ] {
            for d in DistanceSet::all_nonempty_for(&space) {
                let e = structure_expr(&space, &d).unwrap();
                assert_eq!(e.vertex_count(), space.cardinality());
                assert_eq!(e.degree(), regular_degree(&space, &d).unwrap());
                assert_eq!(e.component_count(), component_count(&space, &d).unwrap());
                assert_eq!(e.chromatic_number(), chromatic_number(&space, &d).unwrap());
            }
        }
    }

    #[test]
    fn chromatic_number_of_z2_5_is_two_to_the_size() {
        let space = SpaceSpec::zq(2, 5).unwrap();
        let all = DistanceSet::all_nonempty_for(&space);
        assert_eq!(all.len(), 31);
        for d in all {
            let e = structure_expr(&space, &d).unwrap();
            assert_eq!(e.chromatic_number(), BigUint::from(1u32 << d.len()));
        }
        let s4 = structure_expr_sn(4, &ds("2,4")).unwrap();
        assert_eq!(s4.chromatic_number(), BigUint::from(8u32));
    }

    #[test]
    fn large_counts_are_exact() {
        let space = SpaceSpec::sn(30).unwrap();
        let e = structure_expr(&space, &ds("2,30")).unwrap();
        assert_eq!(e.vertex_count(), space.cardinality());
        assert_eq!(
            e.degree(),
            BigUint::from(1u32) + BigUint::from(29u32) * (1..=29u32).map(BigUint::from).product::<BigUint>()
        );
    }
}
