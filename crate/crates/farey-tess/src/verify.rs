//! The aggregated invariant suite.
//!
//! Each check cross-examines two independent routes to the same fact:
//! geometric admissibility against the Farey-window oracle, enumerated
//! counts against the closed formulas and the known constant table, tile
//! vertices against the closed-form quadrangles, and so on. Checks never
//! panic; every outcome lands in the ledger as pass/fail plus a detail
//! line so one `verify` run is a complete CI gate.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::continuants::{eval_p, reduction_identity_check, ValenceChain};
use crate::enumeration::{
    compute_c, compute_c_table, count_chains, enumerate_chains, tessellation,
};
use crate::farey::{difference_formula_check, find_witnesses, survey_windows, FareySequence};
use crate::geometry::Point;
use crate::rational::{rat, Rational};
use crate::tiles::{
    is_admissible_geometric, point_to_chain, proposition_chain, proposition_vertices, tile_of_chain,
};

/// Stabilization constants C(1)..C(20) used as the reference table.
pub const KNOWN_C: [i64; 20] = [
    0, 3, 15, 41, 84, 153, 247, 367, 523, 721, 961, 1251, 1588, 1983, 2437, 2963, 3548, 4219, 4954,
    5761,
];

/// One ledger line of a verification run.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn pass(name: &str, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            passed: true,
            detail: detail.into(),
        }
    }

    fn fail(name: &str, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    fn record(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Scales for a full verification run; defaults match the acceptance gate.
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub constants_r_max: usize,
    pub formula_k_max: u64,
    pub table_cap_r2: u64,
    pub table_cap_r3: u64,
    pub table_cap_r4: u64,
    pub oracle_r_max: usize,
    pub oracle_norm_max: u64,
    pub oracle_q_witness: u64,
    pub oracle_q_absence: u64,
    pub lemma_cap: u64,
    pub difference_q_max: u64,
    pub difference_r_max: usize,
    pub proposition_st_max: u64,
    pub proposition_k_max: u64,
    pub partition_points: usize,
    pub partition_r_max: usize,
    pub random_chain_trials: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            constants_r_max: 20,
            formula_k_max: 50,
            table_cap_r2: 12,
            table_cap_r3: 12,
            table_cap_r4: 15,
            oracle_r_max: 4,
            oracle_norm_max: 10,
            oracle_q_witness: 1000,
            oracle_q_absence: 300,
            lemma_cap: 50,
            difference_q_max: 100,
            difference_r_max: 5,
            proposition_st_max: 3,
            proposition_k_max: 60,
            partition_points: 500,
            partition_r_max: 3,
            random_chain_trials: 10_000,
            seed: 0x_FA9E_1235,
        }
    }
}

/// Run every check at the given scales; the ledger order is stable.
pub fn run_all(opts: &VerifyOptions) -> Vec<CheckOutcome> {
    let mut ledger = vec![
        check_constants_table(opts.constants_r_max),
        check_count_formula_r1(opts.formula_k_max),
        check_count_formula_r2(opts.formula_k_max),
        check_count_formula_r3(opts.formula_k_max),
    ];
    ledger.extend(check_table1(
        opts.table_cap_r2,
        opts.table_cap_r3,
        opts.table_cap_r4,
    ));
    ledger.push(check_oracle_agreement(
        opts.oracle_r_max,
        opts.oracle_norm_max,
        opts.oracle_q_witness,
        opts.oracle_q_absence,
    ));
    ledger.push(check_degenerate_tiles(
        opts.oracle_r_max,
        opts.oracle_norm_max,
        opts.oracle_q_witness,
    ));
    ledger.extend(check_lemmas(opts.lemma_cap));
    ledger.push(check_difference_formula(
        opts.difference_q_max,
        opts.difference_r_max,
    ));
    ledger.push(check_proposition(
        opts.proposition_st_max,
        opts.proposition_k_max,
    ));
    ledger.push(check_partition(
        opts.partition_r_max,
        opts.partition_points,
        opts.seed,
    ));
    ledger.push(check_algebraic(opts.random_chain_trials, opts.seed));
    ledger.push(check_farey_adjacency(opts.difference_q_max));
    ledger.push(check_farey_totient(opts.difference_q_max));
    ledger.push(check_reversal_closure(4, 20));
    ledger.push(check_linear_growth(6));
    ledger.push(check_large_component(6, 60, 20));
    ledger.push(check_oracle_containment(200, 4));
    ledger.push(check_attractors(
        opts.proposition_st_max,
        opts.proposition_k_max,
    ));
    ledger
}

/// Computed stabilization constants equal the reference table exactly.
pub fn check_constants_table(r_max: usize) -> CheckOutcome {
    let name = "constants-table";
    let table = match compute_c_table(r_max, 2) {
        Ok(t) => t,
        Err(e) => return CheckOutcome::fail(name, e.to_string()),
    };
    let mut mismatches = Vec::new();
    for s in &table {
        if s.r <= KNOWN_C.len() {
            let want = KNOWN_C[s.r - 1];
            if s.constant != want {
                mismatches.push(format!("C({}) = {} (reference {})", s.r, s.constant, want));
            }
        }
    }
    if mismatches.is_empty() {
        let thresholds: Vec<String> = table.iter().map(|s| s.stabilized_at.to_string()).collect();
        CheckOutcome::pass(
            name,
            format!(
                "C(1)..C({}) match the reference table; stabilization points {}",
                r_max.min(KNOWN_C.len()),
                thresholds.join(",")
            ),
        )
    } else {
        CheckOutcome::fail(name, mismatches.join("; "))
    }
}

/// `count(1, K) = K` for every K up to the cap.
pub fn check_count_formula_r1(k_max: u64) -> CheckOutcome {
    let name = "count-formula-r1";
    for k in 1..=k_max {
        match count_chains(1, k) {
            Ok(rep) if rep.count == k => {}
            Ok(rep) => {
                return CheckOutcome::fail(
                    name,
                    format!("count(1,{k}) = {} instead of {k}", rep.count),
                )
            }
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        }
    }
    CheckOutcome::pass(name, format!("count(1,K) = K for K in 1..={k_max}"))
}

/// `count(2, K) = 2K + 3` from K = 4 up.
pub fn check_count_formula_r2(k_max: u64) -> CheckOutcome {
    let name = "count-formula-r2";
    for k in 4..=k_max {
        match count_chains(2, k) {
            Ok(rep) if rep.count == 2 * k + 3 => {}
            Ok(rep) => {
                return CheckOutcome::fail(
                    name,
                    format!("count(2,{k}) = {} instead of {}", rep.count, 2 * k + 3),
                )
            }
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        }
    }
    CheckOutcome::pass(name, format!("count(2,K) = 2K+3 for K in 4..={k_max}"))
}

/// `count(3, K) = 3K + 15` from the measured stabilization point on; the
/// detail reports whether the nominal "K >= 4" validity claim holds.
pub fn check_count_formula_r3(k_max: u64) -> CheckOutcome {
    let name = "count-formula-r3";
    let stab = match compute_c(3, 2) {
        Ok(s) => s,
        Err(e) => return CheckOutcome::fail(name, e.to_string()),
    };
    if stab.constant != 15 {
        return CheckOutcome::fail(name, format!("C(3) = {} instead of 15", stab.constant));
    }
    let k3 = stab.stabilized_at;
    for k in k3..=k_max.max(k3) {
        match count_chains(3, k) {
            Ok(rep) if rep.count == 3 * k + 15 => {}
            Ok(rep) => {
                return CheckOutcome::fail(
                    name,
                    format!("count(3,{k}) = {} instead of {}", rep.count, 3 * k + 15),
                )
            }
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        }
    }
    let verbatim = k3 <= 4;
    let count4 = count_chains(3, 4).map(|r| r.count).unwrap_or(0);
    CheckOutcome::pass(
        name,
        format!(
            "count(3,K) = 3K+15 for K in {k3}..={k_max}; nominal validity from K=4 {} (count(3,4) = {count4}, formula would give 27)",
            if verbatim { "holds verbatim" } else { "does NOT hold verbatim" },
        ),
    )
}

fn close_under_reversal(chains: Vec<Vec<u64>>) -> BTreeSet<ValenceChain> {
    let mut out = BTreeSet::new();
    for values in chains {
        let c = ValenceChain::new(values).expect("positive valences");
        out.insert(c.reversed());
        out.insert(c);
    }
    out
}

/// Reference pair table: `(1,k)` for k >= 2, plus (2,2), (2,3), (2,4).
fn reference_pairs(cap: u64) -> BTreeSet<ValenceChain> {
    let mut list: Vec<Vec<u64>> = (2..=cap).map(|k| vec![1, k]).collect();
    list.extend([vec![2, 2], vec![2, 3], vec![2, 4]]);
    close_under_reversal(list)
}

/// Reference triple table: `(1,k,1)` for k >= 3, `(2,1,k)` for k >= 6,
/// plus the sporadic entries.
fn reference_triples(cap: u64) -> BTreeSet<ValenceChain> {
    let mut list: Vec<Vec<u64>> = Vec::new();
    list.extend((3..=cap).map(|k| vec![1, k, 1]));
    list.extend((6..=cap).map(|k| vec![2, 1, k]));
    list.extend([
        vec![2, 2, 2],
        vec![2, 3, 2],
        vec![4, 1, 4],
        vec![1, 2, 2],
        vec![1, 2, 3],
        vec![1, 2, 4],
        vec![1, 3, 2],
        vec![1, 4, 2],
        vec![2, 2, 3],
        vec![3, 1, 4],
        vec![3, 1, 5],
        vec![3, 1, 6],
        vec![3, 1, 7],
        vec![3, 1, 8],
        vec![4, 1, 5],
    ]);
    let list = list
        .into_iter()
        .filter(|v| v.iter().all(|&k| k <= cap))
        .collect();
    close_under_reversal(list)
}

/// Reference quadruple table: `(1,k,1,2)` for k >= 6, `(2,2,1,k)` for
/// k >= 10, plus the sporadic entries.
fn reference_quadruples(cap: u64) -> BTreeSet<ValenceChain> {
    let mut list: Vec<Vec<u64>> = Vec::new();
    list.extend((6..=cap).map(|k| vec![1, k, 1, 2]));
    list.extend((10..=cap).map(|k| vec![2, 2, 1, k]));
    list.extend([
        vec![2, 2, 2, 2],
        vec![1, 2, 2, 2],
        vec![1, 2, 2, 3],
        vec![1, 2, 3, 1],
        vec![1, 2, 3, 2],
        vec![1, 2, 4, 1],
        vec![1, 3, 2, 2],
        vec![1, 3, 1, 5],
        vec![1, 3, 1, 6],
        vec![1, 3, 1, 7],
        vec![1, 3, 1, 8],
        vec![1, 4, 1, 4],
        vec![1, 4, 1, 5],
        vec![1, 5, 1, 4],
        vec![1, 4, 1, 3],
        vec![1, 5, 1, 3],
        vec![1, 6, 1, 3],
        vec![1, 7, 1, 3],
        vec![1, 8, 1, 3],
        vec![2, 2, 2, 3],
        vec![2, 2, 3, 2],
        vec![2, 3, 1, 4],
        vec![2, 3, 1, 5],
        vec![2, 3, 1, 6],
        vec![2, 4, 1, 3],
        vec![2, 4, 1, 4],
        vec![3, 2, 1, 7],
        vec![3, 2, 1, 8],
        vec![3, 2, 1, 9],
        vec![3, 2, 1, 10],
        vec![3, 2, 1, 11],
        vec![3, 2, 1, 12],
        vec![4, 2, 1, 6],
        vec![4, 2, 1, 7],
        vec![4, 2, 1, 8],
    ]);
    let list = list
        .into_iter()
        .filter(|v| v.iter().all(|&k| k <= cap))
        .collect();
    close_under_reversal(list)
}

/// Enumeration reproduces the reference chain tables exactly.
pub fn check_table1(cap_r2: u64, cap_r3: u64, cap_r4: u64) -> Vec<CheckOutcome> {
    let cases: [(usize, u64, BTreeSet<ValenceChain>); 3] = [
        (2, cap_r2, reference_pairs(cap_r2)),
        (3, cap_r3, reference_triples(cap_r3)),
        (4, cap_r4, reference_quadruples(cap_r4)),
    ];
    cases
        .into_iter()
        .map(|(r, cap, expected)| {
            let name = format!("table1-r{r}");
            match enumerate_chains(r, cap) {
                Ok(list) => {
                    let got: BTreeSet<ValenceChain> = list.into_iter().collect();
                    let missing: Vec<String> =
                        expected.difference(&got).map(|c| c.to_string()).collect();
                    let extra: Vec<String> =
                        got.difference(&expected).map(|c| c.to_string()).collect();
                    if missing.is_empty() && extra.is_empty() {
                        CheckOutcome::pass(
                            &name,
                            format!("{} chains at cap {cap} match the reference set", got.len()),
                        )
                    } else {
                        CheckOutcome::fail(
                            &name,
                            format!(
                                "missing [{}] extra [{}]",
                                missing.join(" "),
                                extra.join(" ")
                            ),
                        )
                    }
                }
                Err(e) => CheckOutcome::fail(&name, e.to_string()),
            }
        })
        .collect()
}

/// Every tuple with length <= r_max and norm <= norm_max, in
/// lexicographic order.
fn all_tuples(r_max: usize, norm_max: u64) -> Vec<ValenceChain> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if !prefix.is_empty() {
            out.push(ValenceChain::new(prefix.clone()).expect("positive"));
        }
        if prefix.len() < r_max {
            for k in (1..=norm_max).rev() {
                let mut next = prefix.clone();
                next.push(k);
                stack.push(next);
            }
        }
    }
    out.sort();
    out
}

/// Geometric admissibility agrees with the Farey oracle in both
/// directions over the full tuple box.
pub fn check_oracle_agreement(
    r_max: usize,
    norm_max: u64,
    q_witness: u64,
    q_absence: u64,
) -> CheckOutcome {
    let name = "oracle-agreement";
    let tuples = all_tuples(r_max, norm_max);
    let mut admissible = Vec::new();
    let mut inadmissible = Vec::new();
    for c in &tuples {
        match is_admissible_geometric(c) {
            Ok(true) => admissible.push(c.clone()),
            Ok(false) => inadmissible.push(c.clone()),
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        }
    }

    let witnesses = match find_witnesses(&admissible, 1..=q_witness) {
        Ok(w) => w,
        Err(e) => return CheckOutcome::fail(name, e.to_string()),
    };
    let unwitnessed: Vec<String> = admissible
        .iter()
        .filter(|c| !witnesses.contains_key(c))
        .map(|c| c.to_string())
        .collect();

    let survey = match survey_windows(q_absence, r_max) {
        Ok(s) => s,
        Err(e) => return CheckOutcome::fail(name, e.to_string()),
    };
    let falsely_rejected: Vec<String> = inadmissible
        .iter()
        .filter(|c| survey.contains_key(c))
        .map(|c| c.to_string())
        .collect();

    if unwitnessed.is_empty() && falsely_rejected.is_empty() {
        let max_q = witnesses.values().map(|w| w.q_order).max().unwrap_or(0);
        CheckOutcome::pass(
            name,
            format!(
                "{} admissible chains all witnessed (max witness order {max_q}); {} inadmissible chains absent from all windows up to order {q_absence}",
                admissible.len(),
                inadmissible.len(),
            ),
        )
    } else {
        CheckOutcome::fail(
            name,
            format!(
                "admissible without witness <= {q_witness}: [{}]; inadmissible appearing in windows: [{}]",
                unwitnessed.join(" "),
                falsely_rejected.join(" ")
            ),
        )
    }
}

/// Zero-area tiles are only trusted when the oracle confirms them; any
/// disagreement is a hard failure.
pub fn check_degenerate_tiles(r_max: usize, norm_max: u64, q_witness: u64) -> CheckOutcome {
    let name = "degenerate-tiles";
    let mut degenerate = Vec::new();
    for c in all_tuples(r_max, norm_max) {
        if let Ok(tile) = tile_of_chain(&c) {
            if tile.status() == crate::geometry::RegionStatus::DegenerateNonempty {
                degenerate.push(c);
            }
        }
    }
    if degenerate.is_empty() {
        return CheckOutcome::pass(
            name,
            format!("no zero-area nonempty tiles over length <= {r_max}, norm <= {norm_max}"),
        );
    }
    let witnesses = match find_witnesses(&degenerate, 1..=q_witness) {
        Ok(w) => w,
        Err(e) => return CheckOutcome::fail(name, e.to_string()),
    };
    let unconfirmed: Vec<String> = degenerate
        .iter()
        .filter(|c| !witnesses.contains_key(c))
        .map(|c| c.to_string())
        .collect();
    CheckOutcome::record(
        name,
        unconfirmed.is_empty(),
        format!(
            "{} zero-area tiles; unconfirmed by the oracle: [{}]",
            degenerate.len(),
            unconfirmed.join(" ")
        ),
    )
}

/// The four neighbor-valence lemmas over every enumerated chain.
pub fn check_lemmas(cap: u64) -> Vec<CheckOutcome> {
    let pairs = enumerate_chains(2, cap).unwrap_or_default();
    let triples = enumerate_chains(3, cap).unwrap_or_default();
    let quads = enumerate_chains(4, cap).unwrap_or_default();
    let all: Vec<&ValenceChain> = pairs.iter().chain(&triples).chain(&quads).collect();

    // Lemma: the smaller of two neighbor valences is at most 3.
    let mut bad100 = Vec::new();
    // Lemma: neighbors are never both 1.
    let mut bad101 = Vec::new();
    // Lemma: a neighbor of a component >= 5 is 1.
    let mut bad102 = Vec::new();
    for c in &all {
        for w in c.values().windows(2) {
            if w[0].min(w[1]) > 3 {
                bad100.push(c.to_string());
            }
            if w[0] == 1 && w[1] == 1 {
                bad101.push(c.to_string());
            }
            if (w[0] >= 5 || w[1] >= 5) && w[0].min(w[1]) != 1 {
                bad102.push(c.to_string());
            }
        }
    }
    // Lemma: the ends of three consecutive valences satisfy min(k,m) < 8.
    let mut bad103 = Vec::new();
    for c in triples.iter().chain(&quads) {
        for w in c.values().windows(3) {
            if w[0].min(w[2]) >= 8 {
                bad103.push(c.to_string());
            }
        }
    }

    let scope = format!("over {} chains of length 2..4, cap {cap}", all.len());
    let mk = |name: &str, bad: Vec<String>, what: &str| {
        if bad.is_empty() {
            CheckOutcome::pass(name, format!("{what} {scope}"))
        } else {
            CheckOutcome::fail(name, format!("violated by [{}]", bad.join(" ")))
        }
    };
    vec![
        mk("lemma-100", bad100, "min of every neighbor pair <= 3"),
        mk("lemma-101", bad101, "no neighbor pair (1,1)"),
        mk("lemma-102", bad102, "components >= 5 always neighbor a 1"),
        mk("lemma-103", bad103, "ends of every triple have min < 8"),
    ]
}

/// The exact fraction-difference identity over all windows.
pub fn check_difference_formula(q_max: u64, r_max: usize) -> CheckOutcome {
    let name = "difference-formula";
    for q_order in 1..=q_max {
        for r in 1..=r_max {
            match difference_formula_check(q_order, r) {
                Ok(true) => {}
                Ok(false) => {
                    return CheckOutcome::fail(name, format!("failed at Q={q_order}, r={r}"))
                }
                Err(e) => return CheckOutcome::fail(name, e.to_string()),
            }
        }
    }
    CheckOutcome::pass(name, format!("exact for all Q <= {q_max}, r <= {r_max}"))
}

fn sorted_points(pts: &[Point]) -> Vec<Point> {
    let mut v = pts.to_vec();
    v.sort();
    v
}

/// Closed-form quadrangle vertices match computed tiles from a measured
/// least k onward; the measured thresholds are part of the detail.
pub fn check_proposition(st_max: u64, k_max: u64) -> CheckOutcome {
    let name = "proposition-conformance";
    let mut k0_table = Vec::new();
    for s in 0..=st_max {
        for t in 0..=st_max {
            let mut matches = vec![false; k_max as usize + 1];
            for k in 1..=k_max {
                let chain = match proposition_chain(s, t, k) {
                    Ok(c) => c,
                    Err(e) => return CheckOutcome::fail(name, e.to_string()),
                };
                let tile = match tile_of_chain(&chain) {
                    Ok(t) => t,
                    Err(e) => return CheckOutcome::fail(name, e.to_string()),
                };
                let formula = match proposition_vertices(s, t, k) {
                    Ok(v) => v,
                    Err(e) => return CheckOutcome::fail(name, e.to_string()),
                };
                matches[k as usize] =
                    sorted_points(tile.closure_vertices()) == sorted_points(&formula);
            }
            // Least k from which every larger k matches.
            let mut k0 = None;
            for k in (1..=k_max).rev() {
                if matches[k as usize] {
                    k0 = Some(k);
                } else {
                    break;
                }
            }
            match k0 {
                Some(k0) => k0_table.push(format!("k0({s},{t})={k0}")),
                None => {
                    return CheckOutcome::fail(
                        name,
                        format!("no matching k at all for pattern s={s}, t={t}"),
                    )
                }
            }
        }
    }
    CheckOutcome::pass(
        name,
        format!(
            "formula matches computed tiles up to k={k_max}; {}",
            k0_table.join(" ")
        ),
    )
}

fn random_triangle_point(rng: &mut ChaCha8Rng) -> Point {
    loop {
        let d = rng.gen_range(8..=64u64);
        let a = rng.gen_range(1..=d);
        let b = rng.gen_range(1..=d);
        if a + b > d {
            return Point::new(
                Rational::new(BigInt::from(a), BigInt::from(d)),
                Rational::new(BigInt::from(b), BigInt::from(d)),
            );
        }
    }
}

/// Random rational points of the triangle land in exactly one tile of
/// the order-r tessellation, the one the floor iteration names.
pub fn check_partition(r_max: usize, points: usize, seed: u64) -> CheckOutcome {
    let name = "partition";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<Point> = (0..points)
        .map(|_| random_triangle_point(&mut rng))
        .collect();
    for r in 1..=r_max {
        let chains: Vec<ValenceChain> = match sample
            .iter()
            .map(|p| point_to_chain(p, r))
            .collect::<Result<_, _>>()
        {
            Ok(c) => c,
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        };
        let cap = chains.iter().filter_map(|c| c.norm()).max().unwrap_or(1);
        let tiles = match tessellation(r, cap) {
            Ok(t) => t,
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        };
        for (p, own) in sample.iter().zip(&chains) {
            let holders: Vec<&ValenceChain> = tiles
                .iter()
                .filter(|t| t.contains(p))
                .map(|t| t.chain())
                .collect();
            if holders.len() != 1 || holders[0] != own {
                return CheckOutcome::fail(
                    name,
                    format!(
                        "point {p} at r={r}: floor iteration names {own}, containing tiles [{}]",
                        holders
                            .iter()
                            .map(|c| c.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    ),
                );
            }
        }
    }
    CheckOutcome::pass(
        name,
        format!("{points} random points in exactly one tile each, for r = 1..={r_max}"),
    )
}

/// Recurrence symmetry and the order-reduction identity on random chains.
pub fn check_algebraic(trials: usize, seed: u64) -> CheckOutcome {
    let name = "algebraic-invariants";
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    for _ in 0..trials {
        let r = rng.gen_range(2..=8usize);
        let values: Vec<i64> = (0..r).map(|_| rng.gen_range(1..=12i64)).collect();
        let mut rev = values.clone();
        rev.reverse();
        if eval_p(&values) != eval_p(&rev) {
            return CheckOutcome::fail(name, format!("symmetry broke on {values:?}"));
        }
        let chain = ValenceChain::new(values.iter().map(|&v| v as u64).collect())
            .expect("positive valences");
        match reduction_identity_check(&chain) {
            Ok(true) => {}
            Ok(false) => {
                return CheckOutcome::fail(name, format!("reduction identity broke on {chain}"))
            }
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        }
    }
    CheckOutcome::pass(
        name,
        format!("symmetry and reduction identity on {trials} random chains"),
    )
}

/// Unimodularity and the neighbor-sum property of consecutive fractions.
pub fn check_farey_adjacency(q_max: u64) -> CheckOutcome {
    let name = "farey-adjacency";
    for q_order in 1..=q_max {
        let seq: Vec<_> = match FareySequence::new(q_order) {
            Ok(s) => s.collect(),
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        };
        for pair in seq.windows(2) {
            let (l, r) = (pair[0], pair[1]);
            let det = r.a as i128 * l.q as i128 - l.a as i128 * r.q as i128;
            if det != 1 || l.q + r.q <= q_order {
                return CheckOutcome::fail(
                    name,
                    format!("adjacency failed between {l} and {r} in F_{q_order}"),
                );
            }
        }
    }
    CheckOutcome::pass(
        name,
        format!("adjacency identities hold for all Q <= {q_max}"),
    )
}

/// |F_Q| agrees with direct coprime counting.
pub fn check_farey_totient(q_max: u64) -> CheckOutcome {
    let name = "farey-count-totient";
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    for q_order in 1..=q_max {
        let count = match FareySequence::new(q_order) {
            Ok(s) => s.count() as u64,
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        };
        let direct: u64 = 1
            + (1..=q_order)
                .map(|q| (1..=q).filter(|&a| gcd(a, q) == 1).count() as u64)
                .sum::<u64>();
        if count != direct {
            return CheckOutcome::fail(
                name,
                format!("|F_{q_order}| = {count}, direct count {direct}"),
            );
        }
    }
    CheckOutcome::pass(name, format!("|F_Q| = 1 + sum phi(q) for Q <= {q_max}"))
}

/// Admissibility is reversal-invariant in the enumerated output.
pub fn check_reversal_closure(r_max: usize, cap: u64) -> CheckOutcome {
    let name = "reversal-closure";
    for r in 1..=r_max {
        let set: BTreeSet<ValenceChain> = match enumerate_chains(r, cap) {
            Ok(v) => v.into_iter().collect(),
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        };
        for c in &set {
            if !set.contains(&c.reversed()) {
                return CheckOutcome::fail(name, format!("{c} enumerated without its reverse"));
            }
        }
    }
    CheckOutcome::pass(
        name,
        format!("output closed under reversal for r <= {r_max}, cap {cap}"),
    )
}

/// Per-step growth of the count is exactly r past stabilization.
pub fn check_linear_growth(r_max: usize) -> CheckOutcome {
    let name = "linear-growth";
    for r in 1..=r_max {
        let stab = match compute_c(r, 2) {
            Ok(s) => s,
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        };
        for n in stab.stabilized_at + 1..=stab.stabilized_at + 8 {
            let hi = count_chains(r, n).map(|c| c.count).unwrap_or(0);
            let lo = count_chains(r, n - 1).map(|c| c.count).unwrap_or(0);
            if hi - lo != r as u64 {
                return CheckOutcome::fail(
                    name,
                    format!(
                        "count({r}, {n}) - count({r}, {}) = {} instead of {r}",
                        n - 1,
                        hi - lo
                    ),
                );
            }
        }
    }
    CheckOutcome::pass(
        name,
        format!("per-step increment equals r past stabilization, r <= {r_max}"),
    )
}

/// A chain with a big component has exactly one, flanked by 1s and then 2s.
pub fn check_large_component(r_max: usize, cap: u64, threshold: u64) -> CheckOutcome {
    let name = "large-component-pattern";
    let mut inspected = 0usize;
    for r in 1..=r_max {
        let chains = match enumerate_chains(r, cap) {
            Ok(c) => c,
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        };
        for c in chains {
            if c.norm().unwrap_or(0) < threshold {
                continue;
            }
            inspected += 1;
            let v = c.values();
            let big: Vec<usize> = (0..v.len()).filter(|&i| v[i] >= threshold).collect();
            if big.len() != 1 {
                return CheckOutcome::fail(name, format!("{c} has {} large components", big.len()));
            }
            let i = big[0];
            let neighbors_ok = (i == 0 || v[i - 1] == 1) && (i + 1 == v.len() || v[i + 1] == 1);
            let next_ok = (i < 2 || v[i - 2] == 2) && (i + 2 >= v.len() || v[i + 2] == 2);
            if !neighbors_ok || !next_ok {
                return CheckOutcome::fail(name, format!("{c} breaks the 2,1,K,1,2 pattern"));
            }
        }
    }
    CheckOutcome::pass(
        name,
        format!("{inspected} chains with a component >= {threshold} follow the 2,1,K,1,2 pattern"),
    )
}

/// Every chain the oracle realizes in a window is enumerated geometrically.
pub fn check_oracle_containment(q_max: u64, r_max: usize) -> CheckOutcome {
    let name = "oracle-containment";
    let survey = match survey_windows(q_max, r_max) {
        Ok(s) => s,
        Err(e) => return CheckOutcome::fail(name, e.to_string()),
    };
    let mut by_len: Vec<Vec<ValenceChain>> = vec![Vec::new(); r_max + 1];
    for c in survey.keys() {
        by_len[c.len()].push(c.clone());
    }
    let mut total = 0usize;
    for (r, group) in by_len.iter().enumerate().skip(1) {
        if group.is_empty() {
            continue;
        }
        let cap = group.iter().filter_map(|c| c.norm()).max().unwrap();
        let enumerated: BTreeSet<ValenceChain> = match enumerate_chains(r, cap) {
            Ok(v) => v.into_iter().collect(),
            Err(e) => return CheckOutcome::fail(name, e.to_string()),
        };
        for c in group {
            if !enumerated.contains(c) {
                return CheckOutcome::fail(
                    name,
                    format!("window chain {c} (Q <= {q_max}) missing from the enumeration"),
                );
            }
        }
        total += group.len();
    }
    CheckOutcome::pass(
        name,
        format!("all {total} window chains with Q <= {q_max}, r <= {r_max} are enumerated"),
    )
}

/// Tiles of single-peak chains shrink toward their corner attractor.
pub fn check_attractors(st_max: u64, k_max: u64) -> CheckOutcome {
    let name = "attractor-convergence";
    let corner_bottom = Point::new(rat(1, 1), rat(0, 1));
    let corner_top = Point::new(rat(1, 1), rat(1, 1));
    for s in 0..=st_max {
        for t in 0..=st_max {
            let attractor = if s == 0 { &corner_bottom } else { &corner_top };
            // The 4/k bound is exact for s <= 1; deeper prefixes push the
            // quadrangle away from the corner proportionally to s.
            let slack = 4.max(2 * s + 2);
            for k in 1..=k_max {
                let chain = match proposition_chain(s, t, k) {
                    Ok(c) => c,
                    Err(e) => return CheckOutcome::fail(name, e.to_string()),
                };
                let tile = match tile_of_chain(&chain) {
                    Ok(t) => t,
                    Err(e) => return CheckOutcome::fail(name, e.to_string()),
                };
                let formula = match proposition_vertices(s, t, k) {
                    Ok(v) => v,
                    Err(e) => return CheckOutcome::fail(name, e.to_string()),
                };
                if sorted_points(tile.closure_vertices()) != sorted_points(&formula) {
                    continue; // below the pattern's validity threshold
                }
                let bound = Rational::new(BigInt::from(slack), BigInt::from(k));
                for v in tile.closure_vertices() {
                    let dx = (&v.x - &attractor.x).abs();
                    let dy = (&v.y - &attractor.y).abs();
                    if dx.max(dy) > bound {
                        return CheckOutcome::fail(
                            name,
                            format!("vertex {v} of {chain} is farther than {slack}/{k} from {attractor}"),
                        );
                    }
                }
            }
        }
    }
    CheckOutcome::pass(
        name,
        format!("tiles of single-peak patterns contract toward their attractors up to k={k_max}"),
    )
}
