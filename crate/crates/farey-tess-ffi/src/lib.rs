//! C ABI over the farey-tess engine.
//!
//! Conventions: every fallible call returns an [`FtStatus`] code and
//! writes results through out-pointers; tiles travel as opaque handles
//! created by `ft_tile_new` and released by `ft_tile_free`; strings are
//! NUL-terminated, allocated by this library and released by
//! `ft_string_free`. Rationals cross the boundary as `num/den` strings,
//! never as floating point.

use std::ffi::CString;
use std::os::raw::c_char;

use farey_tess::continuants::{eval_p, ValenceChain};
use farey_tess::enumeration::{compute_c, count_chains, tessellation};
use farey_tess::farey::oracle_is_admissible;
use farey_tess::geometry::{Point, RegionStatus};
use farey_tess::rational::{rat_str, Rational};
use farey_tess::svg::render_svg;
use farey_tess::tiles::{point_to_chain, tile_of_chain, ConvexTile};

/// Result code of a fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FtStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// An argument was out of range (zero valence, zero length, ...).
    InvalidArgument = 2,
    /// The search finished without finding the requested object.
    NotFound = 3,
    /// An internal computation exceeded its resource budget.
    BudgetExceeded = 4,
}

/// Emptiness classification of a tile region.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FtRegionStatus {
    NonemptyWithInterior = 0,
    DegenerateNonempty = 1,
    DegenerateEmpty = 2,
    Empty = 3,
}

impl From<RegionStatus> for FtRegionStatus {
    fn from(s: RegionStatus) -> Self {
        match s {
            RegionStatus::NonemptyWithInterior => FtRegionStatus::NonemptyWithInterior,
            RegionStatus::DegenerateNonempty => FtRegionStatus::DegenerateNonempty,
            RegionStatus::DegenerateEmpty => FtRegionStatus::DegenerateEmpty,
            RegionStatus::Empty => FtRegionStatus::Empty,
        }
    }
}

/// Opaque tile handle.
pub struct FtTile {
    inner: ConvexTile,
}

fn alloc_string(s: String) -> *mut c_char {
    CString::new(s).map_or(std::ptr::null_mut(), CString::into_raw)
}

unsafe fn chain_from_raw(values: *const u64, len: usize) -> Option<ValenceChain> {
    if values.is_null() || len == 0 {
        return None;
    }
    let slice = std::slice::from_raw_parts(values, len);
    ValenceChain::new(slice.to_vec()).ok()
}

/// Free a string allocated by this library. NULL is ignored.
///
/// # Safety
/// `s` must have been returned by a `ft_*` function of this library and
/// not freed before.
#[no_mangle]
pub unsafe extern "C" fn ft_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Evaluate the recurrence polynomial on an integer tuple and return its
/// value as a decimal string (arbitrary precision). The empty tuple is
/// allowed and yields "1". Returns NULL only if `values` is NULL with a
/// nonzero `len`.
///
/// # Safety
/// When `len > 0`, `values` must point to `len` readable `int64_t`s.
#[no_mangle]
pub unsafe extern "C" fn ft_eval_p(values: *const i64, len: usize) -> *mut c_char {
    if len == 0 {
        return alloc_string(eval_p(&[]).to_string());
    }
    if values.is_null() {
        return std::ptr::null_mut();
    }
    let slice = std::slice::from_raw_parts(values, len);
    alloc_string(eval_p(slice).to_string())
}

/// Decide admissibility of a chain geometrically (exact arithmetic).
///
/// # Safety
/// `values` must point to `len` readable `uint64_t`s; `out_admissible`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_chain_is_admissible(
    values: *const u64,
    len: usize,
    out_admissible: *mut bool,
) -> FtStatus {
    if out_admissible.is_null() {
        return FtStatus::NullPointer;
    }
    let Some(chain) = chain_from_raw(values, len) else {
        return if values.is_null() {
            FtStatus::NullPointer
        } else {
            FtStatus::InvalidArgument
        };
    };
    match farey_tess::tiles::is_admissible_geometric(&chain) {
        Ok(v) => {
            *out_admissible = v;
            FtStatus::Ok
        }
        Err(_) => FtStatus::InvalidArgument,
    }
}

/// Count admissible chains of length `r` with norm at most `cap`;
/// `out_delta` receives `count - r*cap`.
///
/// # Safety
/// `out_count` and `out_delta` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_count_chains(
    r: usize,
    cap: u64,
    out_count: *mut u64,
    out_delta: *mut i64,
) -> FtStatus {
    if out_count.is_null() || out_delta.is_null() {
        return FtStatus::NullPointer;
    }
    match count_chains(r, cap) {
        Ok(rep) => {
            *out_count = rep.count;
            *out_delta = rep.delta;
            FtStatus::Ok
        }
        Err(_) => FtStatus::InvalidArgument,
    }
}

/// Compute the stabilization constant C(r) and the least cap it holds from.
///
/// # Safety
/// `out_c` and `out_stabilized_at` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_compute_c(
    r: usize,
    confirm_window: u64,
    out_c: *mut i64,
    out_stabilized_at: *mut u64,
) -> FtStatus {
    if out_c.is_null() || out_stabilized_at.is_null() {
        return FtStatus::NullPointer;
    }
    match compute_c(r, confirm_window) {
        Ok(s) => {
            *out_c = s.constant;
            *out_stabilized_at = s.stabilized_at;
            FtStatus::Ok
        }
        Err(farey_tess::error::Error::StabilizationBudget { .. }) => FtStatus::BudgetExceeded,
        Err(_) => FtStatus::InvalidArgument,
    }
}

/// Search Farey sequences of order 1..=q_max for a window generating the
/// chain. On success writes the witness order and its germ pair; returns
/// `NotFound` when no window exists below the bound (which is not a
/// proof of inadmissibility).
///
/// # Safety
/// `values` must point to `len` readable `uint64_t`s; the out-pointers
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_oracle_witness(
    values: *const u64,
    len: usize,
    q_max: u64,
    out_q: *mut u64,
    out_q0: *mut u64,
    out_q1: *mut u64,
) -> FtStatus {
    if out_q.is_null() || out_q0.is_null() || out_q1.is_null() {
        return FtStatus::NullPointer;
    }
    let Some(chain) = chain_from_raw(values, len) else {
        return if values.is_null() {
            FtStatus::NullPointer
        } else {
            FtStatus::InvalidArgument
        };
    };
    match oracle_is_admissible(&chain, q_max) {
        Ok(outcome) => match outcome.witness() {
            Some(w) => {
                *out_q = w.q_order;
                *out_q0 = w.q0;
                *out_q1 = w.q1;
                FtStatus::Ok
            }
            None => FtStatus::NotFound,
        },
        Err(_) => FtStatus::InvalidArgument,
    }
}

/// Run the floor iteration at the exact rational point
/// `(x_num/x_den, y_num/y_den)` and write the first `r` valences.
///
/// # Safety
/// `out_values` must point to `r` writable `uint64_t`s.
#[no_mangle]
pub unsafe extern "C" fn ft_point_to_chain(
    x_num: i64,
    x_den: i64,
    y_num: i64,
    y_den: i64,
    r: usize,
    out_values: *mut u64,
) -> FtStatus {
    if out_values.is_null() {
        return FtStatus::NullPointer;
    }
    if x_den <= 0 || y_den <= 0 || r == 0 {
        return FtStatus::InvalidArgument;
    }
    let p = Point::new(
        Rational::new(x_num.into(), x_den.into()),
        Rational::new(y_num.into(), y_den.into()),
    );
    match point_to_chain(&p, r) {
        Ok(chain) => {
            let out = std::slice::from_raw_parts_mut(out_values, r);
            out.copy_from_slice(chain.values());
            FtStatus::Ok
        }
        Err(_) => FtStatus::InvalidArgument,
    }
}

/// Build the tile of a chain. On success writes a heap handle that must
/// be released with `ft_tile_free`.
///
/// # Safety
/// `values` must point to `len` readable `uint64_t`s; `out_tile` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn ft_tile_new(
    values: *const u64,
    len: usize,
    out_tile: *mut *mut FtTile,
) -> FtStatus {
    if out_tile.is_null() {
        return FtStatus::NullPointer;
    }
    let Some(chain) = chain_from_raw(values, len) else {
        return if values.is_null() {
            FtStatus::NullPointer
        } else {
            FtStatus::InvalidArgument
        };
    };
    match tile_of_chain(&chain) {
        Ok(tile) => {
            *out_tile = Box::into_raw(Box::new(FtTile { inner: tile }));
            FtStatus::Ok
        }
        Err(_) => FtStatus::InvalidArgument,
    }
}

/// Release a tile handle. NULL is ignored.
///
/// # Safety
/// `tile` must come from `ft_tile_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn ft_tile_free(tile: *mut FtTile) {
    if !tile.is_null() {
        drop(Box::from_raw(tile));
    }
}

/// Emptiness status of a tile. A NULL handle reads as `Empty`.
///
/// # Safety
/// `tile` must be NULL or a live handle from `ft_tile_new`.
#[no_mangle]
pub unsafe extern "C" fn ft_tile_status(tile: *const FtTile) -> FtRegionStatus {
    match tile.as_ref() {
        Some(t) => t.inner.status().into(),
        None => FtRegionStatus::Empty,
    }
}

/// Number of closure vertices of a tile (0 for NULL or empty tiles).
///
/// # Safety
/// `tile` must be NULL or a live handle from `ft_tile_new`.
#[no_mangle]
pub unsafe extern "C" fn ft_tile_vertex_count(tile: *const FtTile) -> usize {
    tile.as_ref()
        .map_or(0, |t| t.inner.closure_vertices().len())
}

/// Fetch one closure vertex as a pair of reduced `num/den` strings
/// (release both with `ft_string_free`).
///
/// # Safety
/// `tile` must be a live handle; `out_x` and `out_y` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ft_tile_vertex(
    tile: *const FtTile,
    index: usize,
    out_x: *mut *mut c_char,
    out_y: *mut *mut c_char,
) -> FtStatus {
    if out_x.is_null() || out_y.is_null() {
        return FtStatus::NullPointer;
    }
    let Some(t) = tile.as_ref() else {
        return FtStatus::NullPointer;
    };
    let Some(v) = t.inner.closure_vertices().get(index) else {
        return FtStatus::InvalidArgument;
    };
    *out_x = alloc_string(rat_str(&v.x));
    *out_y = alloc_string(rat_str(&v.y));
    FtStatus::Ok
}

/// Render the order-`r` tessellation up to the norm cap as an SVG
/// document (release with `ft_string_free`). Returns NULL on invalid
/// arguments.
#[no_mangle]
pub extern "C" fn ft_render_tessellation_svg(r: usize, cap: u64, viewport: u32) -> *mut c_char {
    let Ok(tiles) = tessellation(r, cap) else {
        return std::ptr::null_mut();
    };
    match render_svg(&tiles, viewport) {
        Ok(svg) => alloc_string(svg),
        Err(_) => std::ptr::null_mut(),
    }
}
