//! Brute-force ground truth from actual Farey sequences.
//!
//! Everything here works on the integer side: generate F_Q by the
//! neighbor recurrence, slide windows of consecutive denominators,
//! derive their valences, and decide admissibility by exhibiting a
//! concrete window. The geometric modules are cross-checked against this
//! one; neither trusts the other.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;

use crate::continuants::{eval_p, ValenceChain};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A reduced fraction `a/q` in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FareyFraction {
    pub a: u64,
    pub q: u64,
}

impl FareyFraction {
    pub fn value(&self) -> Rational {
        Rational::new(BigInt::from(self.a), BigInt::from(self.q))
    }
}

impl fmt::Display for FareyFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.q)
    }
}

/// Iterator over the Farey sequence of order `Q`, ascending from `0/1`
/// to `1/1`, generated by the classic neighbor recurrence
/// `t = floor((Q + q') / q'')`, `next = (t*a'' - a', t*q'' - q')`.
pub struct FareySequence {
    q_order: u64,
    state: SeqState,
}

enum SeqState {
    Start,
    Mid { prev: (u64, u64), cur: (u64, u64) },
    Done,
}

impl FareySequence {
    pub fn new(q_order: u64) -> Result<Self> {
        if q_order < 1 {
            return Err(Error::InvalidOrder);
        }
        Ok(FareySequence {
            q_order,
            state: SeqState::Start,
        })
    }
}

impl Iterator for FareySequence {
    type Item = FareyFraction;

    fn next(&mut self) -> Option<FareyFraction> {
        match self.state {
            SeqState::Start => {
                self.state = SeqState::Mid {
                    prev: (0, 1),
                    cur: (1, self.q_order),
                };
                Some(FareyFraction { a: 0, q: 1 })
            }
            SeqState::Mid { prev, cur } => {
                let out = FareyFraction { a: cur.0, q: cur.1 };
                if cur == (1, 1) {
                    self.state = SeqState::Done;
                } else {
                    let t = (self.q_order + prev.1) / cur.1;
                    let next = (t * cur.0 - prev.0, t * cur.1 - prev.1);
                    self.state = SeqState::Mid {
                        prev: cur,
                        cur: next,
                    };
                }
                Some(out)
            }
            SeqState::Done => None,
        }
    }
}

/// A run of `r + 2` consecutive denominators of `F_Q` together with the
/// `r` valences they generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareyWindow {
    pub q_order: u64,
    pub denominators: Vec<u64>,
    pub valences: ValenceChain,
}

impl FareyWindow {
    /// Validate a candidate window: neighbor denominators coprime, each
    /// neighbor sum exceeds the order, and each valence
    /// `k_j = (q_{j-1} + q_{j+1}) / q_j` is a positive integer.
    pub fn try_new(q_order: u64, denominators: Vec<u64>) -> Result<Self> {
        if q_order < 1 {
            return Err(Error::InvalidOrder);
        }
        if denominators.len() < 3 {
            return Err(Error::InvalidArgument(
                "window needs at least 3 denominators".into(),
            ));
        }
        if denominators.iter().any(|&q| q == 0 || q > q_order) {
            return Err(Error::InvalidArgument(format!(
                "denominators must lie in 1..={q_order}"
            )));
        }
        for pair in denominators.windows(2) {
            if gcd(pair[0], pair[1]) != 1 {
                return Err(Error::InvalidArgument(format!(
                    "neighbors {} and {} are not coprime",
                    pair[0], pair[1]
                )));
            }
            if pair[0] + pair[1] <= q_order {
                return Err(Error::InvalidArgument(format!(
                    "neighbor sum {} + {} does not exceed {q_order}",
                    pair[0], pair[1]
                )));
            }
        }
        let valences = window_valences(&denominators).ok_or_else(|| {
            Error::InvalidArgument("denominator run admits no integer valences".into())
        })?;
        Ok(FareyWindow {
            q_order,
            denominators,
            valences,
        })
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Valences of a denominator run, or None when some quotient is not integral.
fn window_valences(denominators: &[u64]) -> Option<ValenceChain> {
    let r = denominators.len() - 2;
    let mut values = Vec::with_capacity(r);
    for j in 1..=r {
        let sum = denominators[j - 1] + denominators[j + 1];
        if !sum.is_multiple_of(denominators[j]) {
            return None;
        }
        values.push(sum / denominators[j]);
    }
    ValenceChain::new(values).ok()
}

/// Every distinct chain arising from `r + 2` consecutive denominators of
/// `F_Q`. Windows never wrap around the ends of the sequence.
pub fn valence_windows(q_order: u64, r: usize) -> Result<BTreeSet<ValenceChain>> {
    if r < 1 {
        return Err(Error::InvalidArgument(
            "window length r must be >= 1".into(),
        ));
    }
    let mut out = BTreeSet::new();
    scan_windows(q_order, r, |values, _, _| {
        out.insert(ValenceChain::new(values.to_vec()).expect("positive valences"));
        true
    })?;
    Ok(out)
}

/// All length-`r` windows of `F_Q` in reading order, with their
/// denominator runs.
pub fn windows(q_order: u64, r: usize) -> Result<Vec<FareyWindow>> {
    if r < 1 {
        return Err(Error::InvalidArgument(
            "window length r must be >= 1".into(),
        ));
    }
    let need = r + 2;
    let mut run: VecDeque<u64> = VecDeque::with_capacity(need);
    let mut out = Vec::new();
    for f in FareySequence::new(q_order)? {
        run.push_back(f.q);
        if run.len() > need {
            run.pop_front();
        }
        if run.len() == need {
            let denominators: Vec<u64> = run.iter().copied().collect();
            let valences = window_valences(&denominators)
                .expect("consecutive denominators always have integral valences");
            out.push(FareyWindow {
                q_order,
                denominators,
                valences,
            });
        }
    }
    Ok(out)
}

/// Stream all length-`r` valence windows of `F_Q` in reading order.
/// The callback receives the chain and the germ pair `(q_0, q_1)` of the
/// window; returning `false` stops the scan.
fn scan_windows<F>(q_order: u64, r: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&[u64], u64, u64) -> bool,
{
    let need = r + 2;
    let mut denoms: VecDeque<u64> = VecDeque::with_capacity(need);
    let mut vals: VecDeque<u64> = VecDeque::with_capacity(r);
    let mut chain_buf: Vec<u64> = Vec::with_capacity(r);
    for f in FareySequence::new(q_order)? {
        denoms.push_back(f.q);
        if denoms.len() > need {
            denoms.pop_front();
        }
        // A new valence is determined once its right neighbor exists.
        if denoms.len() >= 3 {
            let n = denoms.len();
            let (ql, qm, qr) = (denoms[n - 3], denoms[n - 2], denoms[n - 1]);
            debug_assert_eq!((ql + qr) % qm, 0, "non-integral valence in F_{q_order}");
            vals.push_back((ql + qr) / qm);
            if vals.len() > r {
                vals.pop_front();
            }
            if vals.len() == r && denoms.len() == need {
                chain_buf.clear();
                chain_buf.extend(vals.iter());
                if !visit(&chain_buf, denoms[0], denoms[1]) {
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}

/// A concrete admissibility witness: the order and the germ pair that
/// starts the matching window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub q_order: u64,
    pub q0: u64,
    pub q1: u64,
}

/// Outcome of the one-sided brute-force search. `NotFoundBelow` is a
/// value, not a proof of inadmissibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    AdmissibleWithWitness(Witness),
    NotFoundBelow(u64),
}

impl OracleOutcome {
    pub fn witness(&self) -> Option<Witness> {
        match self {
            OracleOutcome::AdmissibleWithWitness(w) => Some(*w),
            OracleOutcome::NotFoundBelow(_) => None,
        }
    }
}

/// Search `Q = 1..=q_max` for a window generating `chain`; the first
/// witness in (ascending Q, reading order) is returned.
pub fn oracle_is_admissible(chain: &ValenceChain, q_max: u64) -> Result<OracleOutcome> {
    if chain.is_empty() {
        return Err(Error::EmptyChain);
    }
    let found = find_witnesses(std::slice::from_ref(chain), 1..=q_max)?;
    Ok(match found.get(chain) {
        Some(w) => OracleOutcome::AdmissibleWithWitness(*w),
        None => OracleOutcome::NotFoundBelow(q_max),
    })
}

/// First witness for each target chain, scanning `Q` ascending through
/// the given range and stopping as soon as every target is found.
pub fn find_witnesses(
    targets: &[ValenceChain],
    q_range: std::ops::RangeInclusive<u64>,
) -> Result<BTreeMap<ValenceChain, Witness>> {
    let mut remaining: HashSet<Vec<u64>> = targets
        .iter()
        .filter(|c| !c.is_empty())
        .map(|c| c.values().to_vec())
        .collect();
    let lengths: BTreeSet<usize> = remaining.iter().map(|v| v.len()).collect();
    let mut found = BTreeMap::new();
    for q_order in q_range {
        if remaining.is_empty() {
            break;
        }
        for &r in &lengths {
            scan_windows(q_order, r, |values, q0, q1| {
                if let Some(hit) = remaining.take(values) {
                    let chain = ValenceChain::new(hit).expect("positive valences");
                    found.insert(chain, Witness { q_order, q0, q1 });
                }
                !remaining.is_empty()
            })?;
        }
    }
    Ok(found)
}

/// Exhaustive survey: the first witness of every distinct chain of each
/// length in `1..=r_max` over all orders `Q <= q_max`.
pub fn survey_windows(q_max: u64, r_max: usize) -> Result<BTreeMap<ValenceChain, Witness>> {
    let mut seen: HashMap<Vec<u64>, Witness> = HashMap::new();
    for q_order in 1..=q_max {
        for r in 1..=r_max {
            scan_windows(q_order, r, |values, q0, q1| {
                if !seen.contains_key(values) {
                    seen.insert(values.to_vec(), Witness { q_order, q0, q1 });
                }
                true
            })?;
        }
    }
    Ok(seen
        .into_iter()
        .map(|(values, w)| (ValenceChain::new(values).expect("positive valences"), w))
        .collect())
}

/// Verify, for every window of `r + 2` consecutive fractions of `F_Q`,
/// the exact identity
/// `a_{r+1}/q_{r+1} - a_0/q_0 = p_r(k) / (q_0 * q_{r+1})`.
pub fn difference_formula_check(q_order: u64, r: usize) -> Result<bool> {
    if r < 1 {
        return Err(Error::InvalidArgument(
            "window length r must be >= 1".into(),
        ));
    }
    let need = r + 2;
    let mut window: VecDeque<FareyFraction> = VecDeque::with_capacity(need);
    for f in FareySequence::new(q_order)? {
        window.push_back(f);
        if window.len() > need {
            window.pop_front();
        }
        if window.len() == need {
            let denoms: Vec<u64> = window.iter().map(|f| f.q).collect();
            let chain = window_valences(&denoms)
                .ok_or_else(|| Error::InvalidArgument("non-integral valence".into()))?;
            let k: Vec<i64> = chain.values().iter().map(|&v| v as i64).collect();
            let first = window.front().unwrap();
            let last = window.back().unwrap();
            let lhs = last.value() - first.value();
            let rhs = Rational::new(eval_p(&k), BigInt::from(first.q) * BigInt::from(last.q));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The 23 fractions of F_8, frozen.
    pub(crate) const F8: &[(u64, u64)] = &[
        (0, 1),
        (1, 8),
        (1, 7),
        (1, 6),
        (1, 5),
        (1, 4),
        (2, 7),
        (1, 3),
        (3, 8),
        (2, 5),
        (3, 7),
        (1, 2),
        (4, 7),
        (3, 5),
        (5, 8),
        (2, 3),
        (5, 7),
        (3, 4),
        (4, 5),
        (5, 6),
        (6, 7),
        (7, 8),
        (1, 1),
    ];

    fn chain(values: &[u64]) -> ValenceChain {
        ValenceChain::new(values.to_vec()).unwrap()
    }

    #[test]
    fn f8_matches_the_frozen_sequence() {
        let got: Vec<(u64, u64)> = FareySequence::new(8).unwrap().map(|f| (f.a, f.q)).collect();
        assert_eq!(got, F8);
    }

    #[test]
    fn f1_is_the_two_endpoints() {
        let got: Vec<(u64, u64)> = FareySequence::new(1).unwrap().map(|f| (f.a, f.q)).collect();
        assert_eq!(got, vec![(0, 1), (1, 1)]);
        assert!(FareySequence::new(0).is_err());
    }

    #[test]
    fn recurrence_step_after_3_8_and_2_5() {
        // From (3/8, 2/5): t = floor((8 + 8) / 5) = 3, next = 3/7.
        let seq: Vec<FareyFraction> = FareySequence::new(8).unwrap().collect();
        let i = seq.iter().position(|f| (f.a, f.q) == (2, 5)).unwrap();
        assert_eq!((seq[i - 1].a, seq[i - 1].q), (3, 8));
        assert_eq!((seq[i + 1].a, seq[i + 1].q), (3, 7));
    }

    #[test]
    fn adjacency_identities_hold_up_to_q_100() {
        for q_order in 1..=100u64 {
            let seq: Vec<FareyFraction> = FareySequence::new(q_order).unwrap().collect();
            for pair in seq.windows(2) {
                let (l, r) = (pair[0], pair[1]);
                assert_eq!(
                    r.a as i128 * l.q as i128 - l.a as i128 * r.q as i128,
                    1,
                    "unimodularity broke at {l}, {r} in F_{q_order}"
                );
                assert!(l.q + r.q > q_order, "{l}, {r} in F_{q_order}");
            }
        }
    }

    #[test]
    fn numerator_and_denominator_integrality_agree() {
        for q_order in 2..=60u64 {
            let seq: Vec<FareyFraction> = FareySequence::new(q_order).unwrap().collect();
            for w in seq.windows(3) {
                let qsum = w[0].q + w[2].q;
                assert_eq!(qsum % w[1].q, 0);
                let k = qsum / w[1].q;
                if w[1].a != 0 {
                    let asum = w[0].a + w[2].a;
                    assert_eq!(asum % w[1].a, 0);
                    assert_eq!(asum / w[1].a, k, "numerator form disagrees");
                }
            }
        }
    }

    #[test]
    fn sequence_length_matches_totient_sum() {
        // |F_Q| = 1 + sum of phi(q) for q <= Q, phi by direct gcd counting.
        for q_order in 1..=100u64 {
            let count = FareySequence::new(q_order).unwrap().count() as u64;
            let phi_sum: u64 = (1..=q_order)
                .map(|q| (1..=q).filter(|&a| gcd(a, q) == 1).count() as u64)
                .sum();
            assert_eq!(count, 1 + phi_sum, "length of F_{q_order}");
        }
    }

    #[test]
    fn window_chains_of_f8() {
        let got = valence_windows(8, 1).unwrap();
        let want: BTreeSet<ValenceChain> =
            [1u64, 2, 3, 5, 7].iter().map(|&k| chain(&[k])).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn window_structs_cover_the_whole_sequence() {
        // 23 fractions of F_8 yield 21 windows of length 1, each a valid
        // run agreeing with the chain set.
        let ws = windows(8, 1).unwrap();
        assert_eq!(ws.len(), 21);
        let mut seen = BTreeSet::new();
        for w in &ws {
            assert_eq!(w.denominators.len(), 3);
            let revalidated = FareyWindow::try_new(8, w.denominators.clone()).unwrap();
            assert_eq!(revalidated.valences, w.valences);
            seen.insert(w.valences.clone());
        }
        assert_eq!(seen, valence_windows(8, 1).unwrap());
    }

    #[test]
    fn window_chains_of_tiny_orders() {
        // F_2 denominators are 1,2,1: the single window has valence 1.
        let got = valence_windows(2, 1).unwrap();
        let want: BTreeSet<ValenceChain> = [chain(&[1])].into_iter().collect();
        assert_eq!(got, want);

        // F_4 denominators are 1,4,3,2,3,4,1 with valences 1,2,3,2,1.
        let got = valence_windows(4, 1).unwrap();
        let want: BTreeSet<ValenceChain> = [1u64, 2, 3].iter().map(|&k| chain(&[k])).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn full_length_window_of_f8_is_the_palindromic_chain() {
        let got = valence_windows(8, 21).unwrap();
        let want = chain(&[
            1, 2, 2, 2, 3, 1, 5, 1, 3, 1, 7, 1, 3, 1, 5, 1, 3, 2, 2, 2, 1,
        ]);
        assert_eq!(got.len(), 1);
        assert!(got.contains(&want));
        assert_eq!(want.reversed(), want, "full chain should be palindromic");
    }

    #[test]
    fn oracle_examples() {
        let no = oracle_is_admissible(&chain(&[1, 1]), 200).unwrap();
        assert_eq!(no, OracleOutcome::NotFoundBelow(200));

        let yes = oracle_is_admissible(&chain(&[2, 4]), 200).unwrap();
        assert!(yes.witness().is_some());

        let yes = oracle_is_admissible(&chain(&[2, 1, 6]), 200).unwrap();
        let w = yes.witness().expect("(2,1,6) must be admissible");
        // The witness window must itself be a valid Farey run generating
        // the chain.
        let mut denoms = vec![w.q0, w.q1];
        for &k in chain(&[2, 1, 6]).values() {
            let n = denoms.len();
            denoms.push(k * denoms[n - 1] - denoms[n - 2]);
        }
        let window = FareyWindow::try_new(w.q_order, denoms).unwrap();
        assert_eq!(window.valences, chain(&[2, 1, 6]));

        assert!(matches!(
            oracle_is_admissible(&ValenceChain::empty(), 10),
            Err(Error::EmptyChain)
        ));
    }

    #[test]
    fn the_example_window_for_2_1_6_is_valid() {
        // Unrolling (q0, q1) = (37, 67) at Q = 100 gives 37,67,97,30,83.
        let window = FareyWindow::try_new(100, vec![37, 67, 97, 30, 83]).unwrap();
        assert_eq!(window.valences, chain(&[2, 1, 6]));
    }

    #[test]
    fn window_validation_rejects_bad_runs() {
        assert!(FareyWindow::try_new(10, vec![2, 4, 6]).is_err()); // not coprime
        assert!(FareyWindow::try_new(10, vec![3, 4, 5]).is_err()); // sum <= Q
        assert!(FareyWindow::try_new(10, vec![7, 9]).is_err()); // too short
        assert!(FareyWindow::try_new(3, vec![2, 3, 4]).is_err()); // q > Q
    }

    #[test]
    fn windows_are_their_own_witnesses() {
        for q_order in [5u64, 8, 13] {
            for r in 1..=3usize {
                for c in valence_windows(q_order, r).unwrap() {
                    let out = oracle_is_admissible(&c, q_order).unwrap();
                    let w = out.witness().unwrap_or_else(|| {
                        panic!("window chain {c} of F_{q_order} lost by the oracle")
                    });
                    assert!(w.q_order <= q_order);
                }
            }
        }
    }

    #[test]
    fn difference_formula_small_orders() {
        // The window (1/8, 1/7, 1/6) gives k = (2): 1/6 - 1/8 = 2/48.
        assert!(difference_formula_check(8, 1).unwrap());
        assert!(difference_formula_check(8, 2).unwrap());
        // No window of length 3 exists in F_1: vacuously true.
        assert!(difference_formula_check(1, 1).unwrap());
        for q_order in 1..=30u64 {
            for r in 1..=4usize {
                assert!(
                    difference_formula_check(q_order, r).unwrap(),
                    "difference formula failed at Q={q_order}, r={r}"
                );
            }
        }
    }

    #[test]
    fn survey_agrees_with_single_chain_oracle() {
        let map = survey_windows(30, 2).unwrap();
        for (c, w) in &map {
            let single = oracle_is_admissible(c, 30).unwrap().witness().unwrap();
            assert_eq!(&single, w, "survey and oracle disagree on {c}");
        }
        // (1,1) must not appear anywhere.
        assert!(!map.contains_key(&chain(&[1, 1])));
    }
}
