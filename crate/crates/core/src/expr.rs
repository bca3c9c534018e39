//! Symbolic graph expressions built from complete multipartite atoms,
//! disjoint copies and join powers.
//!
//! Text form:
//!
//! ```text
//! Expr := INT "*" Expr | "[" Expr "]^" INT | "K_" INT "(" INT ")"
//! ```
//!
//! `c*E` is `c` disjoint copies of `E`, `[E]^m` is the `m`-fold join of `E`
//! with itself and `K_r(m)` is the complete `r`-partite graph with parts of
//! size `m`. Whitespace is ignored.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GraphExpr {
    /// `K_r(m)`: `parts` independent sets of `part_size` vertices, every pair
    /// of vertices in distinct parts adjacent.
    CompleteMultipartite { parts: BigUint, part_size: BigUint },
    /// Disjoint union of `count` copies.
    Copies { count: BigUint, inner: Box<GraphExpr> },
    /// `[inner]^power`: `power` copies plus every edge between distinct copies.
    JoinPower { inner: Box<GraphExpr>, power: BigUint },
}

impl GraphExpr {
    pub fn multipartite(parts: impl Into<BigUint>, part_size: impl Into<BigUint>) -> Self {
        GraphExpr::CompleteMultipartite {
            parts: parts.into(),
            part_size: part_size.into(),
        }
    }

    pub fn copies(count: impl Into<BigUint>, inner: GraphExpr) -> Self {
        GraphExpr::Copies {
            count: count.into(),
            inner: Box::new(inner),
        }
    }

    pub fn join_power(inner: GraphExpr, power: impl Into<BigUint>) -> Self {
        GraphExpr::JoinPower {
            inner: Box::new(inner),
            power: power.into(),
        }
    }

    /// Checks that every multiplicity is at least 1.
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidGraph(format!("{what} must be >= 1 in {self}")));
        match self {
            GraphExpr::CompleteMultipartite { parts, part_size } => {
                if parts.is_zero() {
                    return bad("number of parts");
                }
                if part_size.is_zero() {
                    return bad("part size");
                }
                Ok(())
            }
            GraphExpr::Copies { count, inner } => {
                if count.is_zero() {
                    return bad("copy count");
                }
                inner.validate()
            }
            GraphExpr::JoinPower { inner, power } => {
                if power.is_zero() {
                    return bad("join power");
                }
                inner.validate()
            }
        }
    }

    /// Elides `1*E` and `[E]^1`.
    pub fn normalize(&self) -> GraphExpr {
        match self {
            GraphExpr::CompleteMultipartite { .. } => self.clone(),
            GraphExpr::Copies { count, inner } => {
                let inner = inner.normalize();
                if count.is_one() {
                    inner
                } else {
                    GraphExpr::copies(count.clone(), inner)
                }
            }
            GraphExpr::JoinPower { inner, power } => {
                let inner = inner.normalize();
                if power.is_one() {
                    inner
                } else {
                    GraphExpr::join_power(inner, power.clone())
                }
            }
        }
    }

    pub fn vertex_count(&self) -> BigUint {
        match self {
            GraphExpr::CompleteMultipartite { parts, part_size } => parts * part_size,
            GraphExpr::Copies { count, inner } => count * inner.vertex_count(),
            GraphExpr::JoinPower { inner, power } => power * inner.vertex_count(),
        }
    }

    /// Common vertex degree; every expression in this algebra is regular.
    pub fn degree(&self) -> BigUint {
        match self {
            GraphExpr::CompleteMultipartite { parts, part_size } => {
                (parts - BigUint::one()) * part_size
            }
            GraphExpr::Copies { inner, .. } => inner.degree(),
            GraphExpr::JoinPower { inner, power } => {
                inner.degree() + (power - BigUint::one()) * inner.vertex_count()
            }
        }
    }

    pub fn component_count(&self) -> BigUint {
        match self {
            GraphExpr::CompleteMultipartite { parts, part_size } => {
                if parts.is_one() {
                    part_size.clone()
                } else {
                    BigUint::one()
                }
            }
            GraphExpr::Copies { count, inner } => count * inner.component_count(),
            GraphExpr::JoinPower { inner, power } => {
                if power.is_one() {
                    inner.component_count()
                } else {
                    BigUint::one()
                }
            }
        }
    }

    /// Chromatic number: `χ(K_r(m)) = r`, copies leave it unchanged, and a
    /// join power multiplies it.
    pub fn chromatic_number(&self) -> BigUint {
        match self {
            GraphExpr::CompleteMultipartite { parts, .. } => parts.clone(),
            GraphExpr::Copies { inner, .. } => inner.chromatic_number(),
            GraphExpr::JoinPower { inner, power } => power * inner.chromatic_number(),
        }
    }

    pub fn edge_count(&self) -> BigUint {
        self.vertex_count() * self.degree() / BigUint::from(2u32)
    }

    /// Concrete graph with block numbering: children are laid out one after
    /// another, and the parts of a multipartite atom are consecutive runs of
    /// `part_size` vertices.
    pub fn evaluate(&self, max_vertices: usize, max_edges: usize) -> Result<Graph> {
        self.validate()?;
        let vertices = self.vertex_count();
        let n = match vertices.to_usize() {
            Some(n) if n <= max_vertices => n,
            _ => {
                return Err(Error::SizeLimit {
                    what: format!("expression {self}"),
                    size: vertices.to_string(),
                    limit: max_vertices,
                })
            }
        };
        let edges = self.edge_count();
        if edges.to_usize().is_none_or(|e| e > max_edges) {
            return Err(Error::SizeLimit {
                what: format!("edges of {self}"),
                size: edges.to_string(),
                limit: max_edges,
            });
        }
        let mut neighbors: Vec<Vec<u32>> = vec![Vec::new(); n];
        let laid_out = self.emit(0, &mut neighbors);
        debug_assert_eq!(laid_out, n);
        for row in &mut neighbors {
            row.sort_unstable();
        }
        Ok(Graph::from_sorted_neighbors(neighbors))
    }

    /// Writes this block's edges starting at vertex `offset`; returns its size.
    fn emit(&self, offset: usize, neighbors: &mut [Vec<u32>]) -> usize {
        let small = |v: &BigUint| v.to_usize().expect("sizes were bounded before emitting");
        match self {
            GraphExpr::CompleteMultipartite { parts, part_size } => {
                let (r, m) = (small(parts), small(part_size));
                let size = r * m;
                for u in 0..size {
                    let part = u / m;
                    let row = &mut neighbors[offset + u];
                    row.extend(
                        (0..size)
                            .filter(|v| v / m != part)
                            .map(|v| (offset + v) as u32),
                    );
                }
                size
            }
            GraphExpr::Copies { count, inner } => {
                let mut size = 0;
                for _ in 0..small(count) {
                    size += inner.emit(offset + size, neighbors);
                }
                size
            }
            GraphExpr::JoinPower { inner, power } => {
                let m = small(power);
                let block = inner.emit(offset, neighbors);
                for copy in 1..m {
                    inner.emit(offset + copy * block, neighbors);
                }
                let size = m * block;
                for u in 0..size {
                    let home = u / block;
                    neighbors[offset + u].extend(
                        (0..size)
                            .filter(|v| v / block != home)
                            .map(|v| (offset + v) as u32),
                    );
                }
                size
            }
        }
    }

    /// JSON embedding `{"expr": "<text>"}`.
    pub fn to_json(&self) -> String {
        serde_json::json!({ "expr": self.to_string() }).to_string()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Embedded {
            expr: String,
        }
        let embedded: Embedded =
            serde_json::from_str(text).map_err(|e| Error::parse(0, format!("malformed expression JSON: {e}")))?;
        embedded.expr.parse()
    }
}

impl fmt::Display for GraphExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphExpr::CompleteMultipartite { parts, part_size } => write!(f, "K_{parts}({part_size})"),
            GraphExpr::Copies { count, inner } => write!(f, "{count}*{inner}"),
            GraphExpr::JoinPower { inner, power } => write!(f, "[{inner}]^{power}"),
        }
    }
}

impl FromStr for GraphExpr {
    type Err = Error;

    /// Parses the text form and returns the normalized expression.
    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser { text: s.as_bytes(), pos: 0 };
        let expr = parser.expr()?;
        parser.skip_whitespace();
        if parser.pos != parser.text.len() {
            return Err(Error::parse(parser.pos, "unexpected trailing input"));
        }
        Ok(expr.normalize())
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_whitespace(&mut self) {
        while self.text.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_whitespace();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        match self.peek() {
            Some(b) if b == byte => {
                self.pos += 1;
                Ok(())
            }
            Some(b) => Err(Error::parse(
                self.pos,
                format!("expected {:?}, found {:?}", byte as char, b as char),
            )),
            None => Err(Error::parse(self.pos, format!("expected {:?}, found end of input", byte as char))),
        }
    }

    fn positive_integer(&mut self) -> Result<BigUint> {
        self.skip_whitespace();
        let start = self.pos;
        while self.text.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(start, "expected an integer"));
        }
        let digits = std::str::from_utf8(&self.text[start..self.pos]).expect("digits are ASCII");
        let value: BigUint = digits.parse().expect("nonempty digit string");
        if value.is_zero() {
            return Err(Error::parse(start, "multiplicities must be >= 1"));
        }
        Ok(value)
    }

    fn expr(&mut self) -> Result<GraphExpr> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b']')?;
                self.expect(b'^')?;
                let power = self.positive_integer()?;
                Ok(GraphExpr::join_power(inner, power))
            }
            Some(b'K') => {
                self.pos += 1;
                self.expect(b'_')?;
                let parts = self.positive_integer()?;
                self.expect(b'(')?;
                let part_size = self.positive_integer()?;
                self.expect(b')')?;
                Ok(GraphExpr::multipartite(parts, part_size))
            }
            Some(b) if b.is_ascii_digit() => {
                let count = self.positive_integer()?;
                self.expect(b'*')?;
                let inner = self.expr()?;
                Ok(GraphExpr::copies(count, inner))
            }
            Some(b) => Err(Error::parse(
                self.pos,
                format!("expected an integer, '[' or 'K_', found {:?}", b as char),
            )),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k(r: u32, m: u32) -> GraphExpr {
        GraphExpr::multipartite(r, m)
    }

    fn eval(e: &GraphExpr) -> Graph {
        e.evaluate(100_000, 10_000_000).unwrap()
    }

    #[test]
    fn rendering() {
        let e = GraphExpr::copies(3u32, GraphExpr::join_power(GraphExpr::copies(3u32, k(3, 1)), 3u32));
        assert_eq!(e.to_string(), "3*[3*K_3(1)]^3");
    }

    #[test]
    fn parsing() {
        assert_eq!("K_2(4)".parse::<GraphExpr>().unwrap(), k(2, 4));
        assert_eq!(
            "2*[K_2(1)]^2".parse::<GraphExpr>().unwrap(),
            GraphExpr::copies(2u32, GraphExpr::join_power(k(2, 1), 2u32))
        );
        assert_eq!(
            " 3 * [ 3*K_3 (1) ] ^ 3 ".parse::<GraphExpr>().unwrap().to_string(),
            "3*[3*K_3(1)]^3"
        );
        assert_eq!("1*[K_2(1)]^1".parse::<GraphExpr>().unwrap(), k(2, 1));
    }

    #[test]
    fn parse_errors_carry_positions() {
        for (text, position) in [("K_2(", 4), ("[K_2(1)]", 8), ("0*K_2(1)", 0), ("K_2(1) x", 7), ("", 0), ("*", 0)] {
            match text.parse::<GraphExpr>() {
                Err(Error::Parse { position: p, .. }) => assert_eq!(p, position, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn evaluation_small_cases() {
        let k2 = eval(&k(2, 1));
        assert_eq!((k2.vertex_count(), k2.edge_count()), (2, 1));

        let c4 = eval(&k(2, 2));
        assert_eq!((c4.vertex_count(), c4.edge_count()), (4, 4));
        assert_eq!(c4.is_regular(), Some(2));

        let three_edges = eval(&GraphExpr::copies(3u32, k(2, 1)));
        assert_eq!((three_edges.vertex_count(), three_edges.edge_count()), (6, 3));
        assert_eq!(three_edges.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3), (4, 5)]);

        let k4 = eval(&GraphExpr::join_power(k(2, 1), 2u32));
        assert_eq!(k4.edge_count(), 6);
    }

    #[test]
    fn block_numbering() {
        // parts of K_2(2) are {0,1} and {2,3}
        let g = eval(&k(2, 2));
        assert!(!g.has_edge(0, 1) && !g.has_edge(2, 3));
        assert!(g.has_edge(0, 2) && g.has_edge(1, 3));
        // [2*K_1(1)]^2: copies {0,1} and {2,3}, each edgeless inside
        let j = eval(&GraphExpr::join_power(GraphExpr::copies(2u32, k(1, 1)), 2u32));
        assert_eq!(j.edges().collect::<Vec<_>>(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
    }

    #[test]
    fn structural_counts() {
        let e: GraphExpr = "3*[3*K_3(1)]^3".parse().unwrap();
        assert_eq!(e.vertex_count(), BigUint::from(81u32));
        assert_eq!(e.degree(), BigUint::from(20u32));
        assert_eq!(e.component_count(), BigUint::from(3u32));
        assert_eq!(e.chromatic_number(), BigUint::from(9u32));
        assert_eq!(k(1, 5).component_count(), BigUint::from(5u32));
        assert_eq!(k(1, 5).chromatic_number(), BigUint::one());
    }

    #[test]
    fn evaluation_limits() {
        let e: GraphExpr = "K_1000(1000)".parse().unwrap();
        assert!(matches!(e.evaluate(100_000, 1_000_000), Err(Error::SizeLimit { .. })));
        let huge: GraphExpr = "123456789012345678901234567890*K_2(1)".parse().unwrap();
        assert!(huge.evaluate(100_000, 1_000_000).is_err());
    }

    #[test]
    fn json_embedding() {
        let e: GraphExpr = "2*K_3(2)".parse().unwrap();
        assert_eq!(e.to_json(), r#"{"expr":"2*K_3(2)"}"#);
        assert_eq!(GraphExpr::from_json(&e.to_json()).unwrap(), e);
    }

    fn arb_expr() -> impl Strategy<Value = GraphExpr> {
        let leaf = (1u32..4, 1u32..4).prop_map(|(r, m)| k(r, m));
        leaf.prop_recursive(3, 12, 2, |inner| {
            prop_oneof![
                (1u32..4, inner.clone()).prop_map(|(c, e)| GraphExpr::copies(c, e)),
                (inner, 1u32..4).prop_map(|(e, m)| GraphExpr::join_power(e, m)),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_rendering_up_to_normalization(e in arb_expr()) {
            prop_assert_eq!(e.to_string().parse::<GraphExpr>().unwrap(), e.normalize());
        }

        #[test]
        fn normalization_is_idempotent_and_preserves_evaluation(e in arb_expr()) {
            let once = e.normalize();
            prop_assert_eq!(once.normalize(), once.clone());
            prop_assert_eq!(eval(&e), eval(&once));
        }

        #[test]
        fn structural_recursion_matches_evaluated_graph(e in arb_expr()) {
            let g = eval(&e);
            prop_assert_eq!(BigUint::from(g.vertex_count()), e.vertex_count());
            prop_assert_eq!(g.is_regular().map(BigUint::from), Some(e.degree()));
            prop_assert_eq!(
                BigUint::from(g.connected_components().component_count()),
                e.component_count()
            );
        }
    }
}
