//! Horizontal transfer `(a, b+1_i| = (a+1_i, b| + AB_i (a, b|`.
//!
//! The relation only involves the geometry, so it applies to primitive and
//! contracted quantities alike and to any operator that does not act on
//! the bra coordinates.

use alloc::vec;
use alloc::vec::Vec;

use crate::basis::{cartesian_components, cumulative_components, shell_size, AngularIndex};
use crate::Vec3;

/// Transfers angular momentum from the first to the second center.
///
/// `src[e * width + w]` holds `(e, 0|` for every `e` with
/// `la <= l(e) <= la + lb`, addressed by cumulative position (lower rows
/// are ignored). Returns `(a, b|` as `out[(ia * nb + ib) * width + w]` with
/// `ia`, `ib` canonical positions in shells `la` and `lb`.
pub(crate) fn transfer(src: &[f64], width: usize, la: u32, lb: u32, ab: &Vec3) -> Vec<f64> {
    let e_all = cumulative_components(la + lb);
    let ne = e_all.len();
    debug_assert!(src.len() >= ne * width);
    if lb == 0 {
        let start = AngularIndex::new(la, 0, 0).cumulative_position();
        return src[start * width..(start + shell_size(la)) * width].to_vec();
    }

    // prev[(e * nb_prev + ib) * width + w] over e in cumulative order
    let mut prev: Vec<f64> = src[..ne * width].to_vec();
    let mut prev_nb = 1;
    for lvl in 1..=lb {
        let bs = cartesian_components(lvl);
        let nb = bs.len();
        let e_hi = la + lb - lvl;
        let mut next = vec![0.0; ne * nb * width];
        for (ib, b) in bs.iter().enumerate() {
            let axis = b.first_nonzero_axis().unwrap_or(crate::basis::Axis::X);
            let b_prev = match b.lowered(axis) {
                Ok(x) => x.shell_position(),
                Err(_) => unreachable!("component of a shell with l >= 1"),
            };
            let shift = ab[axis as usize];
            for e in e_all.iter().filter(|e| e.l() >= la && e.l() <= e_hi) {
                let ie = e.cumulative_position();
                let iu = e.raised(axis).cumulative_position();
                let dst = (ie * nb + ib) * width;
                let up = (iu * prev_nb + b_prev) * width;
                let same = (ie * prev_nb + b_prev) * width;
                for w in 0..width {
                    next[dst + w] = prev[up + w] + shift * prev[same + w];
                }
            }
        }
        prev = next;
        prev_nb = nb;
    }

    let na = shell_size(la);
    let start = AngularIndex::new(la, 0, 0).cumulative_position();
    let nb = prev_nb;
    let mut out = vec![0.0; na * nb * width];
    for ia in 0..na {
        let src_row = ((start + ia) * nb) * width;
        out[ia * nb * width..(ia + 1) * nb * width].copy_from_slice(&prev[src_row..src_row + nb * width]);
    }
    out
}
