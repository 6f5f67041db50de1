//! Combinatorics of one six-way subdivision.
//!
//! Points are numbered `0..11`: corners `UL UR DR DL`, side midpoints
//! `U R D L`, inner vertices `A B C`.

pub const POINT_NAMES: [&str; 11] = ["UL", "UR", "DR", "DL", "U", "R", "D", "L", "A", "B", "C"];

pub(crate) const P_U: usize = 4;
pub(crate) const P_R: usize = 5;
pub(crate) const P_D: usize = 6;
pub(crate) const P_L: usize = 7;
pub(crate) const P_A: usize = 8;
pub(crate) const P_B: usize = 9;
pub(crate) const P_C: usize = 10;

/// The six faces, each as `UL, UR, DR, DL` of the child macrotile.
///
/// Along a parent side the first half is a `U` side of a child and the
/// second half an `L` side, except on the lower and right sides, whose
/// halves are `U, R` and `U, L`.
pub const FACE_CORNERS: [[usize; 4]; 6] = [
    [0, P_U, P_A, P_L],
    [1, P_R, P_B, P_U],
    [P_A, P_U, P_B, P_C],
    [3, P_L, P_A, P_C],
    [2, P_C, P_B, P_R],
    [2, P_D, 3, P_C],
];

/// Internal edges `1..=8` in positive direction:
/// `U→A, U→B, L→A, A→C, C→B, B→R, DL→C, DR→C`.
pub const INTERNAL_EDGES: [[usize; 2]; 8] = [
    [P_U, P_A],
    [P_U, P_B],
    [P_L, P_A],
    [P_A, P_C],
    [P_C, P_B],
    [P_B, P_R],
    [3, P_C],
    [2, P_C],
];

/// Where a child's side lies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideRef {
    /// Half of the parent's side.
    Parent(super::Side),
    /// One of the parent's internal edges (`1..=8`).
    Internal(u8),
}

use super::Side::{D as SD, L as SL, R as SR, U as SU};
use SideRef::{Internal as I, Parent as P};

/// Child sides `U, R, D, L` for each face of `FACE_CORNERS`.
pub const CHILD_SIDES: [[SideRef; 4]; 6] = [
    [P(SU), I(1), I(3), P(SL)],
    [P(SR), I(6), I(2), P(SU)],
    [I(1), I(2), I(5), I(4)],
    [P(SL), I(3), I(4), I(7)],
    [I(8), I(5), I(6), P(SR)],
    [P(SD), P(SD), I(7), I(8)],
];

/// Which corner role each point plays in each child, if any.
pub fn child_corner_roles(point: usize) -> Vec<(usize, super::Corner)> {
    let mut out = Vec::new();
    for (child, corners) in FACE_CORNERS.iter().enumerate() {
        for (k, &p) in corners.iter().enumerate() {
            if p == point {
                out.push((child, super::Corner::ALL[k]));
            }
        }
    }
    out
}

/// Undirected edges of one subdivided square: 8 boundary halves and the 8
/// internal edges.
pub fn template_edges() -> Vec<[usize; 2]> {
    let mut out = vec![
        [0, P_U],
        [P_U, 1],
        [1, P_R],
        [P_R, 2],
        [2, P_D],
        [P_D, 3],
        [3, P_L],
        [P_L, 0],
    ];
    out.extend_from_slice(&INTERNAL_EDGES);
    out
}
