//! Tiles of the Farey triangle.
//!
//! The triangle `T = {x + y > 1, 0 < x, y <= 1}` is carved by the germ
//! sequence: the tile of a chain `(k_1..k_r)` is the set of points whose
//! floor iteration `k_j = floor((1 + x_{j-2}) / x_{j-1})` reproduces the
//! chain. Each floor condition unfolds into the pair of half-planes
//! `x_j <= 1` and `x_{j-1} + x_j > 1`, so tiles are exact convex polygons
//! with mixed open and closed edges, and a chain is admissible exactly
//! when its tile is nonempty.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::continuants::{germ_forms, ValenceChain};
use crate::error::{Error, Result};
use crate::geometry::{AffineForm, ConvexRegion, HalfPlane, Point, RegionStatus};
use crate::rational::{floor_int, rat_str, rat_u, Rational};

/// The Farey triangle `{(x, y) : x + y > 1, 0 < x <= 1, 0 < y <= 1}`,
/// with closure triangle `{(0,1), (1,0), (1,1)}`.
pub fn farey_triangle() -> ConvexRegion {
    let z = Rational::zero;
    let o = Rational::one;
    let square = ConvexRegion::from_closure(
        vec![
            Point::new(z(), z()),
            Point::new(o(), z()),
            Point::new(o(), o()),
            Point::new(z(), o()),
        ],
        vec![
            HalfPlane::gt(AffineForm::coord_x(), z()),
            HalfPlane::le(AffineForm::coord_x(), o()),
            HalfPlane::gt(AffineForm::coord_y(), z()),
            HalfPlane::le(AffineForm::coord_y(), o()),
        ],
    );
    square.clip(&HalfPlane::gt(
        AffineForm::coord_x().add(&AffineForm::coord_y()),
        o(),
    ))
}

/// A tile together with its chain and the germ forms `x_{-1}..x_r`.
#[derive(Clone, Debug)]
pub struct ConvexTile {
    chain: ValenceChain,
    region: ConvexRegion,
    forms: Vec<AffineForm>,
}

impl ConvexTile {
    /// The root tile: the whole triangle, empty chain, forms `[x, y]`.
    pub fn root() -> ConvexTile {
        ConvexTile {
            chain: ValenceChain::empty(),
            region: farey_triangle(),
            forms: germ_forms(&ValenceChain::empty()),
        }
    }

    pub fn chain(&self) -> &ValenceChain {
        &self.chain
    }

    pub fn region(&self) -> &ConvexRegion {
        &self.region
    }

    /// Germ forms `[x_{-1}, x_0, .., x_r]` of the chain.
    pub fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    pub fn status(&self) -> RegionStatus {
        self.region.status()
    }

    pub fn closure_vertices(&self) -> &[Point] {
        self.region.closure_vertices()
    }

    /// Exact membership with the tile's open/closed edges honored.
    pub fn contains(&self, p: &Point) -> bool {
        self.region.contains(p)
    }

    /// The tile of the chain extended by one more valence: two more
    /// half-plane clips on this tile's region.
    pub fn extended(&self, k: u64) -> Result<ConvexTile> {
        if k == 0 {
            return Err(Error::ZeroValence);
        }
        let n = self.forms.len();
        let next = self.forms[n - 1].scaled(&rat_u(k)).sub(&self.forms[n - 2]);
        let region = self
            .region
            .clip(&HalfPlane::le(next.clone(), Rational::one()))
            .clip(&HalfPlane::gt(
                self.forms[n - 1].add(&next),
                Rational::one(),
            ));
        let mut forms = self.forms.clone();
        forms.push(next);
        Ok(ConvexTile {
            chain: self.chain.extended(k)?,
            region,
            forms,
        })
    }
}

/// The half-plane pairs `{x_j <= 1, x_{j-1} + x_j > 1}` for `j = 1..r`,
/// equivalent to `k_j = floor((1 + x_{j-2}) / x_{j-1})` wherever
/// `x_{j-1} > 0` (which holds throughout the triangle).
pub fn tile_constraints(chain: &ValenceChain) -> Result<Vec<HalfPlane>> {
    if chain.is_empty() {
        return Err(Error::EmptyChain);
    }
    let forms = germ_forms(chain);
    let mut out = Vec::with_capacity(2 * chain.len());
    for j in 1..=chain.len() {
        let cur = &forms[j + 1];
        let prev = &forms[j];
        out.push(HalfPlane::le(cur.clone(), Rational::one()));
        out.push(HalfPlane::gt(prev.add(cur), Rational::one()));
    }
    Ok(out)
}

/// Build the tile of a chain by clipping the triangle constraint pair by
/// constraint pair.
pub fn tile_of_chain(chain: &ValenceChain) -> Result<ConvexTile> {
    if chain.is_empty() {
        return Err(Error::EmptyChain);
    }
    let mut tile = ConvexTile::root();
    for &k in chain.values() {
        tile = tile.extended(k)?;
    }
    Ok(tile)
}

/// Two-sided geometric admissibility: the tile holds at least one point.
pub fn is_admissible_geometric(chain: &ValenceChain) -> Result<bool> {
    Ok(tile_of_chain(chain)?.status().is_nonempty())
}

/// Run the floor iteration at a point of the triangle, returning the
/// length-`r` chain whose tile contains the point.
pub fn point_to_chain(p: &Point, r: usize) -> Result<ValenceChain> {
    if !farey_triangle().contains(p) {
        return Err(Error::PointOutsideTriangle(rat_str(&p.x), rat_str(&p.y)));
    }
    let mut prev = p.x.clone();
    let mut cur = p.y.clone();
    let mut values = Vec::with_capacity(r);
    for _ in 0..r {
        let ratio = (Rational::one() + &prev) / &cur;
        let k_int: BigInt = floor_int(&ratio);
        let k = u64::try_from(&k_int)
            .map_err(|_| Error::InvalidArgument(format!("valence {k_int} out of range")))?;
        let next = rat_u(k) * &cur - &prev;
        prev = cur;
        cur = next;
        values.push(k);
    }
    ValenceChain::new(values)
}

/// All `k <= cap` whose extension of `chain` has a nonempty tile.
///
/// Candidates are bracketed by evaluating `(1 + x_{r-1}) / x_r` at the
/// closure vertices of the parent tile (the extrema of an affine ratio
/// over a convex polygon sit at vertices; a vanishing denominator flags
/// the bracket as unbounded), then each candidate is confirmed by an
/// exact emptiness test.
pub fn child_valences(chain: &ValenceChain, cap: u64) -> Result<Vec<u64>> {
    let tile = if chain.is_empty() {
        ConvexTile::root()
    } else {
        tile_of_chain(chain)?
    };
    Ok(child_valences_of_tile(&tile, cap))
}

pub(crate) fn child_valences_of_tile(tile: &ConvexTile, cap: u64) -> Vec<u64> {
    let Some((lo, hi)) = child_bracket(tile, cap) else {
        return Vec::new();
    };
    (lo..=hi)
        .filter(|&k| {
            tile.extended(k)
                .map(|child| child.status().is_nonempty())
                .unwrap_or(false)
        })
        .collect()
}

/// Inclusive candidate range for the next valence, or None when the tile
/// is empty.
fn child_bracket(tile: &ConvexTile, cap: u64) -> Option<(u64, u64)> {
    if !tile.status().is_nonempty() {
        return None;
    }
    let n = tile.forms().len();
    let numer_form = &tile.forms()[n - 2];
    let denom_form = &tile.forms()[n - 1];
    let mut lo: Option<BigInt> = None;
    let mut hi: Option<BigInt> = None;
    let mut unbounded = false;
    for v in tile.closure_vertices() {
        let den = denom_form.eval(v);
        if den.is_zero() {
            unbounded = true;
            continue;
        }
        debug_assert!(den.is_positive(), "denominator form negative on closure");
        let ratio = (Rational::one() + numer_form.eval(v)) / den;
        let f = floor_int(&ratio);
        if lo.as_ref().is_none_or(|cur| &f < cur) {
            lo = Some(f.clone());
        }
        if hi.as_ref().is_none_or(|cur| &f > cur) {
            hi = Some(f);
        }
    }
    let lo = lo
        .and_then(|f| u64::try_from(f).ok())
        .unwrap_or(1)
        .max(1)
        .min(cap);
    let hi = if unbounded {
        cap
    } else {
        hi.and_then(|f| u64::try_from(f).ok())
            .unwrap_or(cap)
            .min(cap)
    };
    (lo <= hi).then_some((lo, hi))
}

/// Closed-form quadrangle vertices for the chains
/// `(2,..,2,1 [s components], k, 1,2,..,2 [t components])`, valid from an
/// empirically determined least `k`; below it the formula may leave the
/// triangle. The four points are returned in the source order; the `t`
/// block does not enter the formula.
pub fn proposition_vertices(s: u64, _t: u64, k: u64) -> Result<Vec<Point>> {
    if k == 0 {
        return Err(Error::ZeroValence);
    }
    let k = i64::try_from(k)
        .map_err(|_| Error::InvalidArgument(format!("peak valence {k} out of range")))?;
    let s = i64::try_from(s)
        .map_err(|_| Error::InvalidArgument(format!("prefix length {s} out of range")))?;
    let frac = |num: i64, den: i64| Rational::new(BigInt::from(num), BigInt::from(den));
    let points = if s == 0 {
        vec![
            Point::new(frac(k, k + 2), frac(2, k + 2)),
            Point::new(frac(k + 1, k + 1), frac(2, k + 1)),
            Point::new(frac(k, k), frac(2, k)),
            Point::new(frac(k - 1, k + 1), frac(2, k + 1)),
        ]
    } else {
        vec![
            Point::new(frac(k - 2 * s, k + 2), frac(k - 2 * s + 2, k + 2)),
            Point::new(frac(k - 2 * s + 1, k + 1), frac(k - 2 * s + 3, k + 1)),
            Point::new(frac(k - 2 * s, k), frac(k - 2 * s + 2, k)),
            Point::new(frac(k - 2 * s - 1, k + 1), frac(k - 2 * s + 1, k + 1)),
        ]
    };
    Ok(points)
}

/// The chain `(2,..,2,1 [s components], k, 1,2,..,2 [t components])`
/// described by the closed-form vertices.
pub fn proposition_chain(s: u64, t: u64, k: u64) -> Result<ValenceChain> {
    if k == 0 {
        return Err(Error::ZeroValence);
    }
    let mut values = Vec::with_capacity((s + t + 1) as usize);
    if s >= 1 {
        values.extend(std::iter::repeat_n(2, (s - 1) as usize));
        values.push(1);
    }
    values.push(k);
    if t >= 1 {
        values.push(1);
        values.extend(std::iter::repeat_n(2, (t - 1) as usize));
    }
    ValenceChain::new(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Relation;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn chain(values: &[u64]) -> ValenceChain {
        ValenceChain::new(values.to_vec()).unwrap()
    }

    fn pt(xn: i64, xd: i64, yn: i64, yd: i64) -> Point {
        Point::new(rat(xn, xd), rat(yn, yd))
    }

    fn sorted(pts: &[Point]) -> Vec<Point> {
        let mut v = pts.to_vec();
        v.sort();
        v
    }

    #[test]
    fn triangle_closure_and_membership() {
        let t = farey_triangle();
        assert_eq!(
            t.closure_vertices(),
            &[pt(0, 1, 1, 1), pt(1, 1, 0, 1), pt(1, 1, 1, 1)]
        );
        assert_eq!(t.status(), RegionStatus::NonemptyWithInterior);
        assert!(t.contains(&pt(1, 1, 1, 1)));
        assert!(!t.contains(&pt(1, 2, 1, 2)), "x + y = 1 must be excluded");
        assert!(!t.contains(&pt(0, 1, 1, 1)), "x = 0 must be excluded");
    }

    #[test]
    fn clipping_the_triangle_by_a_band_boundary() {
        // y > (x+1)/2, i.e. 2y - x > 1, cuts the triangle down to the
        // closure {(1/3,2/3), (0,1), (1,1)}; the two line intersections
        // were solved by hand: x+y=1 with y=(x+1)/2 meets at (1/3,2/3).
        let t = farey_triangle();
        let cut = t.clip(&HalfPlane::gt(
            AffineForm::new(rat(-1, 1), rat(2, 1), rat(0, 1)),
            rat(1, 1),
        ));
        assert_eq!(
            sorted(cut.closure_vertices()),
            sorted(&[pt(1, 3, 2, 3), pt(0, 1, 1, 1), pt(1, 1, 1, 1)])
        );
        assert_eq!(cut.status(), RegionStatus::NonemptyWithInterior);

        // A constraint missing the unit square empties the region.
        let gone = t.clip(&HalfPlane::gt(AffineForm::coord_y(), rat(2, 1)));
        assert_eq!(gone.status(), RegionStatus::Empty);
        assert!(gone.closure_vertices().is_empty());
    }

    #[test]
    fn constraints_of_length_one_chain() {
        // For (k): k*y - x <= 1 and (k+1)*y - x > 1.
        let cs = tile_constraints(&chain(&[3])).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(
            cs[0].form,
            AffineForm::new(rat(-1, 1), rat(3, 1), rat(0, 1))
        );
        assert_eq!(cs[0].relation, Relation::Le);
        assert_eq!(
            cs[1].form,
            AffineForm::new(rat(-1, 1), rat(4, 1), rat(0, 1))
        );
        assert_eq!(cs[1].relation, Relation::Gt);
    }

    #[test]
    fn constraints_of_deeper_chains() {
        // (1, k): second pair is k(y-x) - y <= 1 and (k+1)(y-x) - y > 1.
        let k = 4;
        let cs = tile_constraints(&chain(&[1, k])).unwrap();
        assert_eq!(
            cs[2].form,
            AffineForm::new(rat(-(k as i64), 1), rat(k as i64 - 1, 1), rat(0, 1))
        );
        assert_eq!(
            cs[3].form,
            AffineForm::new(rat(-(k as i64 + 1), 1), rat(k as i64, 1), rat(0, 1))
        );

        // (2, 2): x_2 = 3y - 2x and x_1 + x_2 = 5y - 3x.
        let cs = tile_constraints(&chain(&[2, 2])).unwrap();
        assert_eq!(
            cs[2].form,
            AffineForm::new(rat(-2, 1), rat(3, 1), rat(0, 1))
        );
        assert_eq!(
            cs[3].form,
            AffineForm::new(rat(-3, 1), rat(5, 1), rat(0, 1))
        );
    }

    #[test]
    fn tile_of_2_is_the_known_quadrangle() {
        let tile = tile_of_chain(&chain(&[2])).unwrap();
        let want = vec![
            pt(1, 2, 1, 2),
            pt(1, 1, 2, 3),
            pt(1, 1, 1, 1),
            pt(1, 3, 2, 3),
        ];
        assert_eq!(sorted(tile.closure_vertices()), sorted(&want));
        assert_eq!(tile.status(), RegionStatus::NonemptyWithInterior);
    }

    #[test]
    fn neighbor_ones_are_impossible() {
        let tile = tile_of_chain(&chain(&[1, 1])).unwrap();
        assert!(!tile.status().is_nonempty());
        assert!(!is_admissible_geometric(&chain(&[1, 1])).unwrap());
    }

    #[test]
    fn admissibility_spot_checks() {
        assert!(is_admissible_geometric(&chain(&[2, 3])).unwrap());
        assert!(!is_admissible_geometric(&chain(&[2, 5])).unwrap());
        assert!(!is_admissible_geometric(&chain(&[2, 1, 5])).unwrap());
        for k in 3..=10 {
            assert!(
                is_admissible_geometric(&chain(&[1, k, 1])).unwrap(),
                "(1,{k},1) should be admissible"
            );
        }
    }

    #[test]
    fn singleton_tiles_are_never_empty() {
        for k in 1..=200 {
            assert!(
                is_admissible_geometric(&chain(&[k])).unwrap(),
                "tile of ({k}) is empty"
            );
        }
    }

    #[test]
    fn first_tile_is_a_triangle() {
        let tile = tile_of_chain(&chain(&[1])).unwrap();
        let want = vec![pt(0, 1, 1, 1), pt(1, 3, 2, 3), pt(1, 1, 1, 1)];
        assert_eq!(sorted(tile.closure_vertices()), sorted(&want));
    }

    #[test]
    fn floor_iteration_reproduces_farey_window() {
        // Scaled consecutive F_8 denominators (8, 7) give the germ
        // (1, 7/8) whose first two valences are (2, 2).
        let got = point_to_chain(&pt(1, 1, 7, 8), 2).unwrap();
        assert_eq!(got, chain(&[2, 2]));
    }

    #[test]
    fn every_scaled_window_is_a_germ_of_its_own_chain() {
        // (q0/Q, q1/Q) for consecutive denominators must replay the
        // window's valences through the floor iteration, and land in
        // the matching tile.
        for q_order in [5u64, 8, 11] {
            for r in 1..=3usize {
                for w in crate::farey::windows(q_order, r).unwrap() {
                    let p = Point::new(
                        rat(w.denominators[0] as i64, q_order as i64),
                        rat(w.denominators[1] as i64, q_order as i64),
                    );
                    let got = point_to_chain(&p, r).unwrap();
                    assert_eq!(got, w.valences, "germ replay failed for {w:?}");
                    assert!(tile_of_chain(&got).unwrap().contains(&p));
                }
            }
        }
    }

    #[test]
    fn points_just_inside_a_tile_recover_its_first_valence() {
        // A small step from the corner (1/3, 2/3) into the tile of (2):
        // (1/3 + 1/50, 2/3 + 1/200) keeps 2y - x <= 1 < 3y - x.
        let p = pt(53, 150, 403, 600);
        assert!(tile_of_chain(&chain(&[2])).unwrap().contains(&p));
        assert_eq!(point_to_chain(&p, 1).unwrap(), chain(&[2]));
    }

    #[test]
    fn floor_iteration_near_the_left_corner_starts_with_one() {
        for den in [10i64, 100, 1000] {
            let got = point_to_chain(&Point::new(rat(1, den), rat(1, 1)), 1).unwrap();
            assert_eq!(got, chain(&[1]));
        }
    }

    #[test]
    fn points_outside_the_triangle_are_rejected() {
        assert!(matches!(
            point_to_chain(&pt(1, 2, 1, 2), 1),
            Err(Error::PointOutsideTriangle(..))
        ));
        assert!(point_to_chain(&pt(2, 1, 1, 1), 1).is_err());
    }

    #[test]
    fn point_lands_in_its_own_tile() {
        let p = pt(5, 8, 6, 8);
        let c = point_to_chain(&p, 3).unwrap();
        let tile = tile_of_chain(&c).unwrap();
        assert!(tile.contains(&p));
    }

    #[test]
    fn children_of_the_root_are_all_valences() {
        assert_eq!(
            child_valences(&ValenceChain::empty(), 5).unwrap(),
            vec![1, 2, 3, 4, 5]
        );
    }

    #[test]
    fn children_respect_the_neighbor_lemmas() {
        // (1,1) is inadmissible, so (1) has no child below 2.
        assert_eq!(child_valences(&chain(&[1]), 1).unwrap(), Vec::<u64>::new());
        // A component >= 5 forces its neighbor to be 1.
        assert_eq!(child_valences(&chain(&[5]), 10).unwrap(), vec![1]);
        // Empty parents have no children.
        assert_eq!(
            child_valences(&chain(&[1, 1]), 10).unwrap(),
            Vec::<u64>::new()
        );
    }

    #[test]
    fn proposition_first_case_matches_known_tiles() {
        let got = proposition_vertices(0, 0, 2).unwrap();
        let want = vec![
            pt(1, 2, 1, 2),
            pt(1, 1, 2, 3),
            pt(1, 1, 1, 1),
            pt(1, 3, 2, 3),
        ];
        assert_eq!(sorted(&got), sorted(&want));

        // Below the validity threshold the formula leaves the triangle.
        let low = proposition_vertices(0, 0, 1).unwrap();
        assert!(low.contains(&pt(1, 1, 2, 1)));
        assert!(!farey_triangle().contains(&pt(1, 1, 2, 1)));
    }

    #[test]
    fn proposition_second_case_frozen_point() {
        let got = proposition_vertices(1, 0, 5).unwrap();
        let want = vec![
            pt(3, 7, 5, 7),
            pt(2, 3, 1, 1),
            pt(3, 5, 1, 1),
            pt(1, 3, 2, 3),
        ];
        assert_eq!(sorted(&got), sorted(&want));
    }

    #[test]
    fn proposition_chains_have_the_advertised_shape() {
        assert_eq!(proposition_chain(0, 0, 9).unwrap(), chain(&[9]));
        assert_eq!(proposition_chain(1, 0, 9).unwrap(), chain(&[1, 9]));
        assert_eq!(proposition_chain(0, 2, 9).unwrap(), chain(&[9, 1, 2]));
        assert_eq!(
            proposition_chain(3, 2, 9).unwrap(),
            chain(&[2, 2, 1, 9, 1, 2])
        );
    }

    #[test]
    fn proposition_matches_computed_tiles_for_small_patterns() {
        for (s, t, k0) in [(0u64, 0u64, 2u64), (0, 1, 5), (1, 0, 5), (1, 1, 7)] {
            for k in k0..=(k0 + 12) {
                let c = proposition_chain(s, t, k).unwrap();
                let tile = tile_of_chain(&c).unwrap();
                let formula = proposition_vertices(s, t, k).unwrap();
                assert_eq!(
                    sorted(tile.closure_vertices()),
                    sorted(&formula),
                    "vertex mismatch at s={s}, t={t}, k={k}"
                );
            }
        }
    }

    fn triangle_point_strategy() -> impl Strategy<Value = Point> {
        // Random rational point of T: x in (0,1], y in (0,1], x+y > 1.
        (1i64..=64, 1i64..=64, 1i64..=64).prop_filter_map("inside the triangle", |(xn, yn, den)| {
            let p = Point::new(rat(xn.min(den), den), rat(yn.min(den), den));
            farey_triangle().contains(&p).then_some(p)
        })
    }

    proptest! {
        // The implementable content of the floor/half-plane equivalence:
        // a point satisfies a chain's constraints iff the floor
        // iteration reproduces exactly that chain.
        #[test]
        fn constraints_equivalent_to_floor_iteration(
            p in triangle_point_strategy(),
            probe in proptest::collection::vec(1u64..=5, 1..=4),
        ) {
            let r = probe.len();
            let own = point_to_chain(&p, r).unwrap();
            let own_tile = tile_of_chain(&own).unwrap();
            prop_assert!(own_tile.contains(&p), "point escaped its own tile");

            let probe_chain = ValenceChain::new(probe).unwrap();
            let probe_tile = tile_of_chain(&probe_chain).unwrap();
            prop_assert_eq!(probe_tile.contains(&p), probe_chain == own, "partition violated");
        }

        // Tiles shrink monotonically along the chain.
        #[test]
        fn extension_only_shrinks_tiles(values in proptest::collection::vec(1u64..=6, 1..=5)) {
            let c = ValenceChain::new(values).unwrap();
            let tile = tile_of_chain(&c).unwrap();
            let parent = farey_triangle();
            for v in tile.closure_vertices() {
                prop_assert!(parent.closure_contains(v));
            }
        }
    }
}
