//! Exact 2-D convex-region kernel.
//!
//! Regions are intersections of half-planes with mixed strict and
//! non-strict boundaries. The closed closure polygon is maintained
//! exactly under clipping; strictness is kept per constraint and only
//! consulted when deciding whether a degenerate closure still contains a
//! point of the region. All predicates are exact rational arithmetic,
//! no epsilon anywhere.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{rat_str, Rational};

/// A point of the plane with exact rational coordinates.
///
/// The derived ordering is lexicographic (x, then y), which is the
/// canonical vertex order used by closure polygons.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rat_str(&self.x), rat_str(&self.y))
    }
}

/// The affine form `a*x + b*y + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineForm {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl AffineForm {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        AffineForm { a, b, c }
    }

    /// The coordinate form `x`.
    pub fn coord_x() -> Self {
        AffineForm::new(Rational::one(), Rational::zero(), Rational::zero())
    }

    /// The coordinate form `y`.
    pub fn coord_y() -> Self {
        AffineForm::new(Rational::zero(), Rational::one(), Rational::zero())
    }

    pub fn constant(c: Rational) -> Self {
        AffineForm::new(Rational::zero(), Rational::zero(), c)
    }

    /// Exact evaluation at a point.
    pub fn eval(&self, p: &Point) -> Rational {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    pub fn add(&self, other: &AffineForm) -> AffineForm {
        AffineForm::new(&self.a + &other.a, &self.b + &other.b, &self.c + &other.c)
    }

    pub fn sub(&self, other: &AffineForm) -> AffineForm {
        AffineForm::new(&self.a - &other.a, &self.b - &other.b, &self.c - &other.c)
    }

    pub fn scaled(&self, k: &Rational) -> AffineForm {
        AffineForm::new(k * &self.a, k * &self.b, k * &self.c)
    }

    /// True when the form has no x or y dependence.
    pub fn is_constant(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// Comparison relation of a half-plane constraint; strictness is exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Ge,
    Gt,
}

impl Relation {
    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Lt | Relation::Gt)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        };
        f.write_str(s)
    }
}

/// The constraint `form REL bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    pub form: AffineForm,
    pub relation: Relation,
    pub bound: Rational,
}

impl HalfPlane {
    pub fn new(form: AffineForm, relation: Relation, bound: Rational) -> Self {
        HalfPlane {
            form,
            relation,
            bound,
        }
    }

    pub fn le(form: AffineForm, bound: Rational) -> Self {
        HalfPlane::new(form, Relation::Le, bound)
    }

    pub fn lt(form: AffineForm, bound: Rational) -> Self {
        HalfPlane::new(form, Relation::Lt, bound)
    }

    pub fn ge(form: AffineForm, bound: Rational) -> Self {
        HalfPlane::new(form, Relation::Ge, bound)
    }

    pub fn gt(form: AffineForm, bound: Rational) -> Self {
        HalfPlane::new(form, Relation::Gt, bound)
    }

    pub fn is_strict(&self) -> bool {
        self.relation.is_strict()
    }

    /// The residual form `g` with the constraint rewritten as `g >= 0`
    /// (non-strict relations) or `g > 0` (strict relations).
    pub fn residual(&self) -> AffineForm {
        let shifted = AffineForm::new(
            self.form.a.clone(),
            self.form.b.clone(),
            &self.form.c - &self.bound,
        );
        match self.relation {
            Relation::Ge | Relation::Gt => shifted,
            Relation::Le | Relation::Lt => shifted.scaled(&-Rational::one()),
        }
    }

    /// Exact membership, honoring strictness.
    pub fn satisfied_by(&self, p: &Point) -> bool {
        let g = self.residual().eval(p);
        if self.is_strict() {
            g.is_positive()
        } else {
            !g.is_negative()
        }
    }

    /// Membership in the closed version of the constraint.
    pub fn closed_satisfied_by(&self, p: &Point) -> bool {
        !self.residual().eval(p).is_negative()
    }
}

/// Emptiness classification of a region.
///
/// The closure polygon decides between positive area, a segment or point,
/// and void; for degenerate closures a relative-interior witness decides
/// whether the strict constraints leave any point behind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionStatus {
    NonemptyWithInterior,
    DegenerateNonempty,
    DegenerateEmpty,
    Empty,
}

impl RegionStatus {
    /// True when the region contains at least one point.
    pub fn is_nonempty(self) -> bool {
        matches!(
            self,
            RegionStatus::NonemptyWithInterior | RegionStatus::DegenerateNonempty
        )
    }

    pub fn has_interior(self) -> bool {
        self == RegionStatus::NonemptyWithInterior
    }
}

impl fmt::Display for RegionStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegionStatus::NonemptyWithInterior => "nonempty-with-interior",
            RegionStatus::DegenerateNonempty => "degenerate-nonempty",
            RegionStatus::DegenerateEmpty => "degenerate-empty",
            RegionStatus::Empty => "empty",
        };
        f.write_str(s)
    }
}

/// A convex region: the exact closure polygon of the closed constraint
/// intersection, plus the constraint list with per-constraint strictness.
///
/// Closure vertices are canonical: counter-clockwise, starting from the
/// lexicographically smallest vertex, no duplicates, no collinear
/// middles. A segment stores its two endpoints (smaller first), a single
/// point just itself, and a void closure is the empty list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexRegion {
    closure: Vec<Point>,
    constraints: Vec<HalfPlane>,
    status: RegionStatus,
}

impl ConvexRegion {
    /// Region builder for seed polygons whose closure is known to match
    /// the closed intersection of `constraints`.
    pub(crate) fn from_closure(closure: Vec<Point>, constraints: Vec<HalfPlane>) -> Self {
        let closure = canonicalize(closure);
        let status = compute_status(&closure, &constraints);
        ConvexRegion {
            closure,
            constraints,
            status,
        }
    }

    /// The closed unit square `[0,1] x [0,1]`, a convenient clipping seed.
    pub fn unit_square() -> Self {
        let z = || Rational::zero();
        let o = || Rational::one();
        let closure = vec![
            Point::new(z(), z()),
            Point::new(o(), z()),
            Point::new(o(), o()),
            Point::new(z(), o()),
        ];
        let constraints = vec![
            HalfPlane::ge(AffineForm::coord_x(), z()),
            HalfPlane::le(AffineForm::coord_x(), o()),
            HalfPlane::ge(AffineForm::coord_y(), z()),
            HalfPlane::le(AffineForm::coord_y(), o()),
        ];
        ConvexRegion::from_closure(closure, constraints)
    }

    pub fn closure_vertices(&self) -> &[Point] {
        &self.closure
    }

    pub fn constraints(&self) -> &[HalfPlane] {
        &self.constraints
    }

    pub fn status(&self) -> RegionStatus {
        self.status
    }

    /// Exact membership test honoring every constraint's strictness.
    pub fn contains(&self, p: &Point) -> bool {
        self.constraints.iter().all(|h| h.satisfied_by(p))
    }

    /// Membership in the closure (all constraints in closed form).
    pub fn closure_contains(&self, p: &Point) -> bool {
        self.constraints.iter().all(|h| h.closed_satisfied_by(p))
    }

    /// Intersect with one more half-plane. The closure is recomputed
    /// exactly; the constraint (with its strictness) is recorded; the
    /// emptiness status is refreshed. An empty result is a valid region.
    pub fn clip(&self, h: &HalfPlane) -> ConvexRegion {
        let g = h.residual();
        let mut constraints = self.constraints.clone();
        constraints.push(h.clone());

        let closure = if g.is_constant() {
            let satisfiable = if h.is_strict() {
                g.c.is_positive()
            } else {
                !g.c.is_negative()
            };
            if satisfiable {
                self.closure.clone()
            } else {
                Vec::new()
            }
        } else {
            match self.closure.len() {
                0 => Vec::new(),
                1 => clip_point(&self.closure[0], &g),
                2 => clip_segment(&self.closure[0], &self.closure[1], &g),
                _ => clip_polygon(&self.closure, &g),
            }
        };

        let closure = canonicalize(closure);
        let status = compute_status(&closure, &constraints);
        ConvexRegion {
            closure,
            constraints,
            status,
        }
    }
}

fn compute_status(closure: &[Point], constraints: &[HalfPlane]) -> RegionStatus {
    match closure.len() {
        0 => RegionStatus::Empty,
        // Canonical closures with three or more vertices have positive
        // area, and no non-constant strict constraint can annul a full-
        // dimensional closure (its zero set is a line).
        n if n >= 3 => RegionStatus::NonemptyWithInterior,
        _ => {
            let witness = if closure.len() == 1 {
                closure[0].clone()
            } else {
                midpoint(&closure[0], &closure[1])
            };
            let alive = constraints
                .iter()
                .filter(|h| h.is_strict())
                .all(|h| h.satisfied_by(&witness));
            if alive {
                RegionStatus::DegenerateNonempty
            } else {
                RegionStatus::DegenerateEmpty
            }
        }
    }
}

fn midpoint(a: &Point, b: &Point) -> Point {
    let half = Rational::new(1.into(), 2.into());
    Point::new(&half * (&a.x + &b.x), &half * (&a.y + &b.y))
}

/// Point on segment `a..b` at parameter `t` in [0,1].
fn segment_point(a: &Point, b: &Point, t: &Rational) -> Point {
    Point::new(&a.x + t * (&b.x - &a.x), &a.y + t * (&b.y - &a.y))
}

fn clip_point(p: &Point, g: &AffineForm) -> Vec<Point> {
    if g.eval(p).is_negative() {
        Vec::new()
    } else {
        vec![p.clone()]
    }
}

fn clip_segment(a: &Point, b: &Point, g: &AffineForm) -> Vec<Point> {
    let ga = g.eval(a);
    let gb = g.eval(b);
    match (ga.is_negative(), gb.is_negative()) {
        (false, false) => vec![a.clone(), b.clone()],
        (true, true) => Vec::new(),
        (false, true) => {
            let t = &ga / (&ga - &gb);
            vec![a.clone(), segment_point(a, b, &t)]
        }
        (true, false) => {
            let t = &ga / (&ga - &gb);
            vec![segment_point(a, b, &t), b.clone()]
        }
    }
}

/// Sutherland-Hodgman against the closed half-plane `g >= 0`.
fn clip_polygon(polygon: &[Point], g: &AffineForm) -> Vec<Point> {
    let vals: Vec<Rational> = polygon.iter().map(|p| g.eval(p)).collect();
    let n = polygon.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let j = (i + 1) % n;
        let (gp, gq) = (&vals[i], &vals[j]);
        if !gp.is_negative() {
            out.push(polygon[i].clone());
        }
        // Emit the crossing point only on a strict sign change; a vertex
        // sitting exactly on the line is emitted by the branch above.
        if (gp.is_positive() && gq.is_negative()) || (gp.is_negative() && gq.is_positive()) {
            let t = gp / (gp - gq);
            out.push(segment_point(&polygon[i], &polygon[j], &t));
        }
    }
    out
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

fn signed_area_doubled(pts: &[Point]) -> Rational {
    let n = pts.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        let j = (i + 1) % n;
        acc = acc + &pts[i].x * &pts[j].y - &pts[j].x * &pts[i].y;
    }
    acc
}

/// Bring a raw clip output into canonical form: dedup, collapse collinear
/// chains, orient counter-clockwise, rotate to the lexicographic minimum.
fn canonicalize(mut pts: Vec<Point>) -> Vec<Point> {
    pts.dedup();
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    if pts.len() < 3 {
        return canonical_degenerate(pts);
    }

    // All vertices collinear: the polygon is really a segment (or point).
    let all_collinear = (2..pts.len()).all(|i| cross(&pts[0], &pts[1], &pts[i]).is_zero());
    if all_collinear {
        let min = pts.iter().min().unwrap().clone();
        let max = pts.iter().max().unwrap().clone();
        return canonical_degenerate(vec![min, max]);
    }

    // Drop vertices that sit between their neighbors.
    loop {
        let n = pts.len();
        if n < 3 {
            return canonical_degenerate(pts);
        }
        let mut removed = false;
        let mut keep = Vec::with_capacity(n);
        for i in 0..n {
            let prev = &pts[(i + n - 1) % n];
            let next = &pts[(i + 1) % n];
            if cross(prev, &pts[i], next).is_zero() {
                removed = true;
            } else {
                keep.push(pts[i].clone());
            }
        }
        pts = keep;
        if !removed {
            break;
        }
    }

    if signed_area_doubled(&pts).is_negative() {
        pts.reverse();
    }
    let start = pts
        .iter()
        .enumerate()
        .min_by(|(_, p), (_, q)| p.cmp(q))
        .map(|(i, _)| i)
        .unwrap();
    pts.rotate_left(start);
    pts
}

fn canonical_degenerate(mut pts: Vec<Point>) -> Vec<Point> {
    pts.dedup();
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    if pts.len() == 2 {
        if pts[0] > pts[1] {
            pts.swap(0, 1);
        }
        if pts[0] == pts[1] {
            pts.pop();
        }
    }
    pts
}
