//! Static SVG rendering of tessellations.
//!
//! Geometry stays exact until the last moment: closure vertices are
//! scaled to the viewport as rationals and only then printed as decimals
//! with 9 significant digits, rounded half-even. Output bytes are a pure
//! function of the input, so renders are reproducible.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::rational::{round_half_even, Rational};
use crate::tiles::{farey_triangle, ConvexTile};

const SIGNIFICANT_DIGITS: u32 = 9;

/// Fill colors keyed to the chain's last valence (1-based, cycled).
const PALETTE: [&str; 12] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
    "#9c755f", "#bab0ac", "#86bcb6", "#d37295",
];

/// Render tiles into an SVG document of `viewport` x `viewport` pixels.
/// The y axis is flipped so `(1,1)` sits at the top right; the triangle
/// outline is always drawn, even over an empty tile list.
pub fn render_svg(tiles: &[ConvexTile], viewport: u32) -> Result<String> {
    if viewport == 0 {
        return Err(Error::InvalidArgument("viewport must be positive".into()));
    }
    let mut doc = String::new();
    writeln!(
        doc,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{viewport}\" height=\"{viewport}\" viewBox=\"0 0 {viewport} {viewport}\">"
    )
    .expect("string write");
    for tile in tiles {
        // Degenerate closures have no area to paint.
        if tile.closure_vertices().len() < 3 {
            continue;
        }
        let last = *tile.chain().values().last().unwrap_or(&1);
        let fill = PALETTE[((last - 1) % PALETTE.len() as u64) as usize];
        writeln!(
            doc,
            "<path d=\"{}\" fill=\"{}\" stroke=\"#333333\" stroke-width=\"0.5\"/>",
            path_data(tile.closure_vertices(), viewport),
            fill,
        )
        .expect("string write");
    }
    writeln!(
        doc,
        "<path d=\"{}\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>",
        path_data(farey_triangle().closure_vertices(), viewport),
    )
    .expect("string write");
    doc.push_str("</svg>\n");
    Ok(doc)
}

fn path_data(vertices: &[Point], viewport: u32) -> String {
    let scale = Rational::from_integer(BigInt::from(viewport));
    let mut d = String::new();
    for (i, v) in vertices.iter().enumerate() {
        let sx = &v.x * &scale;
        let sy = (Rational::one() - &v.y) * &scale;
        let _ = write!(
            d,
            "{}{} {}",
            if i == 0 { "M " } else { " L " },
            format_decimal(&sx, SIGNIFICANT_DIGITS),
            format_decimal(&sy, SIGNIFICANT_DIGITS),
        );
    }
    d.push_str(" Z");
    d
}

/// Fixed-precision decimal rendering: `sig` significant digits, ties to
/// even, trailing fractional zeros trimmed.
fn format_decimal(value: &Rational, sig: u32) -> String {
    assert!(sig >= 1);
    if value.is_zero() {
        return "0".to_owned();
    }
    let negative = value.is_negative();
    let a = if negative {
        -value.clone()
    } else {
        value.clone()
    };

    // Decimal exponent e with 10^e <= a < 10^(e+1).
    let ten = BigInt::from(10);
    let int_part: BigInt = a.numer() / a.denom();
    let e: i64 = if int_part.is_zero() {
        let mut m = 1i64;
        let mut scaled = a.numer() * &ten;
        while scaled < *a.denom() {
            scaled *= &ten;
            m += 1;
        }
        -m
    } else {
        int_part.to_string().len() as i64 - 1
    };

    let shift = sig as i64 - 1 - e;
    let scaled = if shift >= 0 {
        a * Rational::from_integer(ten.pow(shift as u32))
    } else {
        a / Rational::from_integer(ten.pow((-shift) as u32))
    };
    let mut mantissa = round_half_even(&scaled);
    let mut e = e;
    if mantissa == ten.pow(sig) {
        mantissa /= &ten;
        e += 1;
    }
    let digits = mantissa.to_string();
    debug_assert_eq!(digits.len(), sig as usize);

    let body = if e >= sig as i64 - 1 {
        let zeros = (e - sig as i64 + 1) as usize;
        format!("{digits}{}", "0".repeat(zeros))
    } else if e >= 0 {
        let split = (e + 1) as usize;
        let frac = digits[split..].trim_end_matches('0');
        if frac.is_empty() {
            digits[..split].to_owned()
        } else {
            format!("{}.{}", &digits[..split], frac)
        }
    } else {
        let leading = (-e - 1) as usize;
        let frac = format!("{}{}", "0".repeat(leading), digits);
        let frac = frac.trim_end_matches('0');
        format!("0.{frac}")
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}
