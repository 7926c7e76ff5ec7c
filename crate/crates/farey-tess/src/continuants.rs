//! The three-term polynomial recurrence and the germ sequence built on it.
//!
//! `p` is the continuant family defined by `p_{-1} = 0`, `p_0 = 1` and
//! `p_r(X_1..X_r) = X_r * p_{r-1}(X_1..X_{r-1}) - p_{r-2}(X_1..X_{r-2})`.
//! The recurrence is the definition; printed expansions are only used as
//! independent oracles in tests.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::geometry::AffineForm;
use crate::rational::Rational;

/// An ordered tuple of positive integer valences; may be empty (the root
/// of the refinement tree).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValenceChain {
    values: Vec<u64>,
}

impl ValenceChain {
    /// Build a chain, rejecting zero components.
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.contains(&0) {
            return Err(Error::ZeroValence);
        }
        Ok(ValenceChain { values })
    }

    pub fn empty() -> Self {
        ValenceChain { values: Vec::new() }
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The norm: the largest component. Undefined (None) for the empty chain.
    pub fn norm(&self) -> Option<u64> {
        self.values.iter().copied().max()
    }

    pub fn reversed(&self) -> ValenceChain {
        let mut values = self.values.clone();
        values.reverse();
        ValenceChain { values }
    }

    /// Chain extended by one more valence on the right.
    pub fn extended(&self, k: u64) -> Result<ValenceChain> {
        if k == 0 {
            return Err(Error::ZeroValence);
        }
        let mut values = self.values.clone();
        values.push(k);
        Ok(ValenceChain { values })
    }

    /// Continuant value `p_r` of this chain.
    pub fn continuant(&self) -> BigInt {
        eval_p_iter(self.values.iter().map(|&k| BigInt::from(k)))
    }

    /// Parse a comma-separated list of positive integers, e.g. `2,1,6`.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Ok(ValenceChain::empty());
        }
        let values = trimmed
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad valence `{part}`")))
            })
            .collect::<Result<Vec<u64>>>()?;
        ValenceChain::new(values)
    }
}

impl fmt::Display for ValenceChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// Evaluate `p_r` at the given integer values by the recurrence, with
/// bases `p_{-1} = 0` and `p_0 = 1`. The empty list yields `p_0 = 1`.
pub fn eval_p(values: &[i64]) -> BigInt {
    eval_p_iter(values.iter().map(|&v| BigInt::from(v)))
}

fn eval_p_iter<I: Iterator<Item = BigInt>>(values: I) -> BigInt {
    let mut prev = BigInt::from(0); // p_{j-2}
    let mut cur = BigInt::from(1); // p_{j-1}
    for v in values {
        let next = v * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// The germ sequence of a chain as affine forms in `(x, y)`:
/// `[x_{-1}, x_0, x_1, ..., x_r]` with `x_{-1} = x`, `x_0 = y` and
/// `x_j = k_j * x_{j-1} - x_{j-2}`.
pub fn germ_forms(chain: &ValenceChain) -> Vec<AffineForm> {
    let mut forms = Vec::with_capacity(chain.len() + 2);
    forms.push(AffineForm::coord_x());
    forms.push(AffineForm::coord_y());
    for &k in chain.values() {
        let n = forms.len();
        let k_rat = Rational::from_integer(BigInt::from(k));
        let next = forms[n - 1].scaled(&k_rat).sub(&forms[n - 2]);
        forms.push(next);
    }
    forms
}

/// Self-test of the order-reduction identity
/// `p_r(k_1..k_r) = k_1 * p_{r-1}(k_2..k_r) - p_{r-2}(k_3..k_r)`.
/// Requires length >= 2; must hold for every chain.
pub fn reduction_identity_check(chain: &ValenceChain) -> Result<bool> {
    if chain.len() < 2 {
        return Err(Error::ChainTooShort(2));
    }
    let k = chain.values();
    let lhs = chain.continuant();
    let head = BigInt::from(k[0]);
    let tail1 = eval_p_iter(k[1..].iter().map(|&v| BigInt::from(v)));
    let tail2 = eval_p_iter(k[2..].iter().map(|&v| BigInt::from(v)));
    Ok(lhs == head * tail1 - tail2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn chain(values: &[u64]) -> ValenceChain {
        ValenceChain::new(values.to_vec()).unwrap()
    }

    // Printed low-order expansions, used as an oracle independent of the
    // recurrence. p_6 is deliberately absent: only the recurrence defines it.
    fn p1(x: &[i64]) -> i64 {
        x[0]
    }
    fn p2(x: &[i64]) -> i64 {
        x[0] * x[1] - 1
    }
    fn p3(x: &[i64]) -> i64 {
        x[0] * x[1] * x[2] - x[0] - x[2]
    }
    fn p4(x: &[i64]) -> i64 {
        x[0] * x[1] * x[2] * x[3] - x[0] * x[1] - x[0] * x[3] - x[2] * x[3] + 1
    }
    fn p5(x: &[i64]) -> i64 {
        x[0] * x[1] * x[2] * x[3] * x[4]
            - x[0] * x[1] * x[2]
            - x[0] * x[1] * x[4]
            - x[0] * x[3] * x[4]
            - x[2] * x[3] * x[4]
            + x[0]
            + x[2]
            + x[4]
    }

    #[test]
    fn base_cases() {
        assert_eq!(eval_p(&[]), BigInt::from(1));
        assert_eq!(eval_p(&[3]), BigInt::from(3));
    }

    #[test]
    fn matches_frozen_values() {
        // Evaluated by hand from the printed expansions above.
        assert_eq!(eval_p(&[1, 2, 3]), BigInt::from(2));
        assert_eq!(eval_p(&[2, 3]), BigInt::from(5));
    }

    #[test]
    fn recurrence_agrees_with_printed_expansions() {
        let samples: &[&[i64]] = &[
            &[4],
            &[2, 2],
            &[7, -3],
            &[1, 2, 3],
            &[5, 5, 5],
            &[1, 1, 1, 1],
            &[3, -2, 4, 1],
            &[2, 9, 4, 7, 3],
            &[-1, 6, 0, 2, 8],
        ];
        for &x in samples {
            let expected = match x.len() {
                1 => p1(x),
                2 => p2(x),
                3 => p3(x),
                4 => p4(x),
                5 => p5(x),
                _ => unreachable!(),
            };
            assert_eq!(eval_p(x), BigInt::from(expected), "input {x:?}");
        }
    }

    #[test]
    fn germ_forms_small_chains() {
        // Chain (1): forms [x, y, y - x].
        let forms = germ_forms(&chain(&[1]));
        assert_eq!(forms.len(), 3);
        assert_eq!(forms[2], AffineForm::new(rat(-1, 1), rat(1, 1), rat(0, 1)));

        // Chain (2,2): x_2 = 3y - 2x, coefficients (-p_1(2), p_2(2,2)).
        let forms = germ_forms(&chain(&[2, 2]));
        assert_eq!(forms[3], AffineForm::new(rat(-2, 1), rat(3, 1), rat(0, 1)));
    }

    #[test]
    fn germ_forms_at_unit_germ_reproduce_continuants() {
        // At (x, y) = (0, 1) the germ sequence equals [0, 1, p_1, ..., p_r].
        let c = chain(&[3, 1, 4, 1, 5]);
        let p = Point::new(rat(0, 1), rat(1, 1));
        let forms = germ_forms(&c);
        assert_eq!(forms[0].eval(&p), rat(0, 1));
        assert_eq!(forms[1].eval(&p), rat(1, 1));
        for j in 1..=c.len() {
            let expect = eval_p_iter(c.values()[..j].iter().map(|&v| BigInt::from(v)));
            assert_eq!(forms[j + 1].eval(&p), Rational::from_integer(expect));
        }
    }

    #[test]
    fn reduction_identity_frozen_cases() {
        for values in [&[1, 2, 3][..], &[2, 2][..], &[5, 1, 4, 1][..]] {
            let c = ValenceChain::new(values.to_vec()).unwrap();
            assert!(reduction_identity_check(&c).unwrap(), "failed on {c}");
        }
        assert!(matches!(
            reduction_identity_check(&chain(&[7])),
            Err(Error::ChainTooShort(2))
        ));
    }

    #[test]
    fn chain_basics() {
        assert!(ValenceChain::new(vec![1, 0, 2]).is_err());
        let c = chain(&[2, 1, 6]);
        assert_eq!(c.norm(), Some(6));
        assert_eq!(c.reversed().values(), &[6, 1, 2]);
        assert_eq!(ValenceChain::empty().norm(), None);
        assert_eq!(ValenceChain::parse("2, 1,6").unwrap(), c);
        assert_eq!(c.to_string(), "(2,1,6)");
        assert!(ValenceChain::parse("2,x").is_err());
    }

    proptest! {
        // Symmetry of the recurrence: p is invariant under reversal.
        #[test]
        fn symmetry_under_reversal(values in proptest::collection::vec(1i64..=12, 0..=8)) {
            let mut rev = values.clone();
            rev.reverse();
            prop_assert_eq!(eval_p(&values), eval_p(&rev));
        }

        // The recurrence agrees with the printed expansions on random
        // integer inputs of every covered order.
        #[test]
        fn printed_expansions_on_random_inputs(values in proptest::collection::vec(-9i64..=9, 1..=5)) {
            let expected = match values.len() {
                1 => p1(&values),
                2 => p2(&values),
                3 => p3(&values),
                4 => p4(&values),
                5 => p5(&values),
                _ => unreachable!(),
            };
            prop_assert_eq!(eval_p(&values), BigInt::from(expected));
        }

        // The order-reduction identity holds for every chain.
        #[test]
        fn reduction_identity_always_holds(values in proptest::collection::vec(1u64..=12, 2..=8)) {
            let c = ValenceChain::new(values).unwrap();
            prop_assert!(reduction_identity_check(&c).unwrap());
        }

        // Iterating the germ recurrence numerically at a rational point
        // agrees with evaluating the symbolic affine forms.
        #[test]
        fn germ_forms_match_numeric_iteration(
            values in proptest::collection::vec(1u64..=9, 1..=6),
            xn in 0i64..=16, yn in 1i64..=16,
        ) {
            let c = ValenceChain::new(values).unwrap();
            let p = Point::new(rat(xn, 17), rat(yn, 16));
            let forms = germ_forms(&c);
            let mut prev = p.x.clone();
            let mut cur = p.y.clone();
            for (j, &k) in c.values().iter().enumerate() {
                let next = Rational::from_integer(BigInt::from(k)) * &cur - &prev;
                prev = cur;
                cur = next;
                prop_assert_eq!(&forms[j + 2].eval(&p), &cur);
            }
        }
    }
}
