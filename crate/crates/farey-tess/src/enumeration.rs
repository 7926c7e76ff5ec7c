//! Depth-first enumeration of admissible chains and the stabilization
//! constants of the counting law.
//!
//! The refinement tree is explored tile by tile: a node's children are
//! the valences admitted by its tile, so every admissible chain below
//! the norm cap is reached exactly once and pruning is exact. Counting
//! keeps one norm histogram per depth; a single pass at cap `N` then
//! yields `count(r, n)` for every `n <= N` by prefix sums.

use rayon::prelude::*;

use crate::continuants::ValenceChain;
use crate::error::{Error, Result};
use crate::tiles::{child_valences_of_tile, ConvexTile};

/// Counting summary for chains of length `r` with norm up to `norm_cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub r: usize,
    pub norm_cap: u64,
    pub count: u64,
    /// `count - r * norm_cap`.
    pub delta: i64,
    /// Least cap from which `delta` stays constant; filled by the
    /// stabilization search, not by plain counting.
    pub stabilized_at: Option<u64>,
}

/// Result of the stabilization search for one chain length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilization {
    pub r: usize,
    /// The eventual constant value of `count(r, n) - r * n`.
    pub constant: i64,
    /// Least `n` from which the delta never changes again (within the
    /// verified window).
    pub stabilized_at: u64,
    /// Norm cap the search actually explored to confirm the window.
    pub cap_used: u64,
}

/// Hard ceiling for the stabilization ladder; reaching it is reported as
/// a budget error, never as a wrong constant.
const MAX_STABILIZATION_CAP: u64 = 4096;

fn check_args(r: usize, norm_cap: u64) -> Result<()> {
    if r < 1 {
        return Err(Error::InvalidArgument("chain length r must be >= 1".into()));
    }
    if norm_cap < 1 {
        return Err(Error::InvalidArgument("norm cap must be >= 1".into()));
    }
    Ok(())
}

/// Walk the refinement tree under `tile` up to `depth_limit`, calling
/// the visitor on every node strictly below the root. Children are
/// visited in increasing valence order, so chains appear lexicographically.
fn dfs<F: FnMut(&ConvexTile, u64)>(
    tile: &ConvexTile,
    norm: u64,
    depth_limit: usize,
    cap: u64,
    visit: &mut F,
) {
    let depth = tile.chain().len();
    if depth > 0 {
        visit(tile, norm);
    }
    if depth == depth_limit {
        return;
    }
    for k in child_valences_of_tile(tile, cap) {
        let child = tile.extended(k).expect("child valence is positive");
        dfs(&child, norm.max(k), depth_limit, cap, visit);
    }
}

/// Run independent subtree computations over the root's children and
/// merge in ascending valence order. Deterministic for any worker count.
fn map_root_subtrees<T, F>(cap: u64, per_subtree: F) -> Vec<T>
where
    T: Send,
    F: Fn(&ConvexTile, u64) -> T + Sync,
{
    let root = ConvexTile::root();
    let first = child_valences_of_tile(&root, cap);
    first
        .into_par_iter()
        .map(|k| {
            let child = root.extended(k).expect("child valence is positive");
            per_subtree(&child, k)
        })
        .collect()
}

/// All admissible chains of length `r` with norm at most `norm_cap`,
/// in lexicographic order.
pub fn enumerate_chains(r: usize, norm_cap: u64) -> Result<Vec<ValenceChain>> {
    check_args(r, norm_cap)?;
    let per_subtree = |child: &ConvexTile, _k: u64| {
        let mut chains = Vec::new();
        dfs(
            child,
            child.chain().norm().unwrap(),
            r,
            norm_cap,
            &mut |tile, _| {
                if tile.chain().len() == r {
                    chains.push(tile.chain().clone());
                }
            },
        );
        chains
    };
    Ok(map_root_subtrees(norm_cap, per_subtree)
        .into_iter()
        .flatten()
        .collect())
}

/// Tiles of the full order-`r` tessellation up to the norm cap, in the
/// same lexicographic order as `enumerate_chains`.
pub fn tessellation(r: usize, norm_cap: u64) -> Result<Vec<ConvexTile>> {
    check_args(r, norm_cap)?;
    let per_subtree = |child: &ConvexTile, _k: u64| {
        let mut tiles = Vec::new();
        dfs(
            child,
            child.chain().norm().unwrap(),
            r,
            norm_cap,
            &mut |tile, _| {
                if tile.chain().len() == r {
                    tiles.push(tile.clone());
                }
            },
        );
        tiles
    };
    Ok(map_root_subtrees(norm_cap, per_subtree)
        .into_iter()
        .flatten()
        .collect())
}

/// `hist[d][m]` counts admissible chains of length `d` whose norm is
/// exactly `m`, for all `d <= r_max`, `m <= cap`, from one tree walk.
fn norm_histograms(r_max: usize, cap: u64) -> Vec<Vec<u64>> {
    let width = cap as usize + 1;
    let per_subtree = |child: &ConvexTile, _k: u64| {
        let mut hist = vec![vec![0u64; width]; r_max + 1];
        dfs(
            child,
            child.chain().norm().unwrap(),
            r_max,
            cap,
            &mut |tile, norm| {
                hist[tile.chain().len()][norm as usize] += 1;
            },
        );
        hist
    };
    let mut total = vec![vec![0u64; width]; r_max + 1];
    for part in map_root_subtrees(cap, per_subtree) {
        for (row_t, row_p) in total.iter_mut().zip(part) {
            for (t, p) in row_t.iter_mut().zip(row_p) {
                *t += p;
            }
        }
    }
    total
}

/// Count admissible chains of length `r` with norm at most `norm_cap`.
pub fn count_chains(r: usize, norm_cap: u64) -> Result<CountReport> {
    check_args(r, norm_cap)?;
    let hist = norm_histograms(r, norm_cap);
    let count: u64 = hist[r].iter().sum();
    Ok(CountReport {
        r,
        norm_cap,
        count,
        delta: count as i64 - (r as u64 * norm_cap) as i64,
        stabilized_at: None,
    })
}

/// Per-cap deltas `count(r, n) - r*n` for `n = 1..=cap` from a histogram row.
fn deltas_of_row(r: usize, row: &[u64]) -> Vec<i64> {
    let mut acc = 0i64;
    (1..row.len())
        .map(|n| {
            acc += row[n] as i64;
            acc - (r * n) as i64
        })
        .collect()
}

/// The stabilization point of a delta series: least `n` from which the
/// value never changes again, plus that value.
fn stabilization_of(deltas: &[i64]) -> (u64, i64) {
    let last = *deltas.last().expect("cap >= 1");
    let mut n_star = deltas.len();
    while n_star > 1 && deltas[n_star - 2] == last {
        n_star -= 1;
    }
    (n_star as u64, last)
}

/// Find the constant `C(r)` that `count(r, n) - r*n` settles on, growing
/// the explored cap until the delta is constant over
/// `[n*, confirm_window * n*]` (and in fact up to the whole explored cap).
pub fn compute_c(r: usize, confirm_window: u64) -> Result<Stabilization> {
    Ok(compute_c_table(r, confirm_window)?.pop().expect("r >= 1"))
}

/// Stabilization constants for every length `1..=r_max`, sharing one
/// tree walk per ladder step.
pub fn compute_c_table(r_max: usize, confirm_window: u64) -> Result<Vec<Stabilization>> {
    if r_max < 1 {
        return Err(Error::InvalidArgument("chain length r must be >= 1".into()));
    }
    if confirm_window < 2 {
        return Err(Error::InvalidConfirmWindow);
    }
    let mut cap = 32u64;
    loop {
        let hists = norm_histograms(r_max, cap);
        let mut out = Vec::with_capacity(r_max);
        for (r, row) in hists.iter().enumerate().skip(1) {
            let deltas = deltas_of_row(r, row);
            let (n_star, constant) = stabilization_of(&deltas);
            if n_star.saturating_mul(confirm_window) <= cap {
                out.push(Stabilization {
                    r,
                    constant,
                    stabilized_at: n_star,
                    cap_used: cap,
                });
            } else {
                break;
            }
        }
        if out.len() == r_max {
            return Ok(out);
        }
        cap *= 2;
        if cap > MAX_STABILIZATION_CAP {
            return Err(Error::StabilizationBudget {
                r: out.len() + 1,
                cap: MAX_STABILIZATION_CAP,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::valence_windows;

    fn chain(values: &[u64]) -> ValenceChain {
        ValenceChain::new(values.to_vec()).unwrap()
    }

    fn chains(list: &[&[u64]]) -> Vec<ValenceChain> {
        list.iter().map(|v| chain(v)).collect()
    }

    #[test]
    fn every_positive_integer_is_a_valence() {
        let got = enumerate_chains(1, 7).unwrap();
        let want: Vec<ValenceChain> = (1..=7).map(|k| chain(&[k])).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn pairs_up_to_norm_four() {
        let got = enumerate_chains(2, 4).unwrap();
        let want = chains(&[
            &[1, 2],
            &[1, 3],
            &[1, 4],
            &[2, 1],
            &[2, 2],
            &[2, 3],
            &[2, 4],
            &[3, 1],
            &[3, 2],
            &[4, 1],
            &[4, 2],
        ]);
        assert_eq!(got, want);
    }

    #[test]
    fn output_is_lexicographic_and_reversal_closed() {
        for r in 2..=4usize {
            let got = enumerate_chains(r, 6).unwrap();
            let mut sorted = got.clone();
            sorted.sort();
            assert_eq!(got, sorted, "r={r} output not lexicographic");
            for c in &got {
                assert!(
                    got.binary_search(&c.reversed()).is_ok(),
                    "reverse of {c} missing at r={r}"
                );
            }
        }
    }

    #[test]
    fn counts_match_the_small_order_formulas() {
        let report = count_chains(1, 7).unwrap();
        assert_eq!((report.count, report.delta), (7, 0));

        let report = count_chains(2, 9).unwrap();
        assert_eq!((report.count, report.delta), (21, 3));

        let report = count_chains(3, 10).unwrap();
        assert_eq!((report.count, report.delta), (45, 15));
    }

    #[test]
    fn triple_count_below_saturation_disagrees_with_the_formula() {
        // At cap 4 the (2,1,k) and (3,1,k) families have not entered yet:
        // the count is 19, not 3*4 + 15.
        let report = count_chains(3, 4).unwrap();
        assert_eq!(report.count, 19);
        assert_eq!(report.delta, 7);
    }

    #[test]
    fn stabilization_of_small_orders() {
        let s = compute_c(1, 2).unwrap();
        assert_eq!((s.constant, s.stabilized_at), (0, 1));

        let s = compute_c(2, 2).unwrap();
        assert_eq!((s.constant, s.stabilized_at), (3, 4));

        let s = compute_c(3, 2).unwrap();
        assert_eq!((s.constant, s.stabilized_at), (15, 8));

        let s = compute_c(4, 2).unwrap();
        assert_eq!((s.constant, s.stabilized_at), (41, 12));
    }

    #[test]
    fn table_rows_agree_with_single_computations() {
        let table = compute_c_table(4, 2).unwrap();
        assert_eq!(table.len(), 4);
        for (i, row) in table.iter().enumerate() {
            let single = compute_c(i + 1, 2).unwrap();
            assert_eq!(row.constant, single.constant);
            assert_eq!(row.stabilized_at, single.stabilized_at);
        }
    }

    #[test]
    fn growth_is_linear_past_stabilization() {
        for r in 1..=5usize {
            let s = compute_c(r, 2).unwrap();
            for n in (s.stabilized_at + 1)..=(2 * s.stabilized_at).max(s.stabilized_at + 4) {
                let hi = count_chains(r, n).unwrap().count;
                let lo = count_chains(r, n - 1).unwrap().count;
                assert_eq!(hi - lo, r as u64, "increment at r={r}, n={n}");
            }
        }
    }

    #[test]
    fn window_chains_are_enumerated() {
        // Everything the Farey oracle sees must appear in the enumeration.
        for q_order in [5u64, 8, 12, 20] {
            for r in 1..=3usize {
                let windows = valence_windows(q_order, r).unwrap();
                let cap = windows.iter().filter_map(|c| c.norm()).max().unwrap();
                let enumerated = enumerate_chains(r, cap).unwrap();
                for w in windows {
                    assert!(
                        enumerated.binary_search(&w).is_ok(),
                        "window chain {w} of F_{q_order} missing"
                    );
                }
            }
        }
    }

    #[test]
    fn tessellation_tiles_match_enumeration() {
        let tiles = tessellation(2, 4).unwrap();
        let chains_list = enumerate_chains(2, 4).unwrap();
        assert_eq!(tiles.len(), chains_list.len());
        for (tile, c) in tiles.iter().zip(&chains_list) {
            assert_eq!(tile.chain(), c);
            assert!(tile.status().is_nonempty());
        }
    }

    #[test]
    fn tiles_are_pairwise_interior_disjoint() {
        use crate::geometry::{HalfPlane, Relation};

        // Intersect one tile's region with the closed version of
        // another's constraints; distinct tiles may share at most an
        // edge, never area.
        fn closed(h: &HalfPlane) -> HalfPlane {
            let relation = match h.relation {
                Relation::Lt => Relation::Le,
                Relation::Gt => Relation::Ge,
                other => other,
            };
            HalfPlane::new(h.form.clone(), relation, h.bound.clone())
        }

        for (r, cap) in [(1usize, 6u64), (2, 4)] {
            let tiles = tessellation(r, cap).unwrap();
            for (i, a) in tiles.iter().enumerate() {
                for b in &tiles[i + 1..] {
                    let mut common = a.region().clone();
                    for h in b.region().constraints() {
                        common = common.clip(&closed(h));
                    }
                    assert!(
                        !common.status().has_interior(),
                        "tiles {} and {} overlap with positive area",
                        a.chain(),
                        b.chain()
                    );
                }
            }
        }
    }

    #[test]
    fn neighbor_lemmas_hold_at_cap_fifty() {
        // Pairwise: min <= 3, never (1,1), a big component forces 1.
        for c in enumerate_chains(2, 50).unwrap() {
            let v = c.values();
            let (k, l) = (v[0], v[1]);
            assert!(k.min(l) <= 3, "min of pair {c} exceeds 3");
            assert!(!(k == 1 && l == 1), "neighbor ones {c}");
            if k >= 5 || l >= 5 {
                assert!(k.min(l) == 1, "large component without a 1 in {c}");
            }
        }
        // Triples: the ends cannot both be large.
        for c in enumerate_chains(3, 50).unwrap() {
            let v = c.values();
            assert!(v[0].min(v[2]) < 8, "min(k,m) >= 8 in {c}");
        }
    }

    #[test]
    fn argument_validation() {
        assert!(enumerate_chains(0, 5).is_err());
        assert!(enumerate_chains(2, 0).is_err());
        assert!(compute_c(0, 2).is_err());
        assert!(compute_c(2, 1).is_err());
    }

    #[test]
    fn unreachable_confirm_window_reports_a_budget_error() {
        // delta(2, n) settles at n = 4, so a window of 2000 would need a
        // cap of 8000, past the ladder's ceiling; the outcome must be the
        // distinct budget error, never a made-up constant.
        assert!(matches!(
            compute_c(2, 2000),
            Err(crate::error::Error::StabilizationBudget { r: _, cap: 4096 })
        ));
    }
}
