use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::grid::Distribution;

/// A strict local minimum of a grid function, refined below cell resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalMinimum {
    pub omega: f64,
    pub b: f64,
    pub value: f64,
}

/// Neighbour excess, relative to `max(w)`, below which a dip is treated as
/// round-off rather than a minimum.
pub const MINIMUM_NOISE_FLOOR: f64 = 1e-13;

/// Interior nodes below `rel_threshold · max(w)` whose eight neighbours all
/// exceed them by more than `MINIMUM_NOISE_FLOOR · max(w)`, sorted by
/// refined value.
///
/// Each node is refined with the quadratic model built from central
/// differences on its 3×3 neighbourhood; the offset is clamped to half a cell.
pub fn find_local_minima(w: &Distribution, rel_threshold: f64) -> Result<Vec<LocalMinimum>> {
    if !(rel_threshold > 0.0 && rel_threshold < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "rel_threshold must lie in (0,1), got {rel_threshold}"
        )));
    }
    let grid = w.grid();
    let (nw, nb) = (grid.omega.count(), grid.b.count());
    let (hw, hb) = (grid.omega.step(), grid.b.step());
    let cutoff = rel_threshold * w.max();
    let floor = MINIMUM_NOISE_FLOOR * w.max();
    let mut found = Vec::new();
    for i in 1..nw.saturating_sub(1) {
        for j in 1..nb.saturating_sub(1) {
            let f0 = w.value(i, j);
            if f0 >= cutoff {
                continue;
            }
            let strict = (0..3).all(|di| {
                (0..3).all(|dj| (di == 1 && dj == 1) || w.value(i + di - 1, j + dj - 1) - f0 > floor)
            });
            if !strict {
                continue;
            }
            let at = |di: isize, dj: isize| {
                w.value((i as isize + di) as usize, (j as isize + dj) as usize)
            };
            let gw = (at(1, 0) - at(-1, 0)) / (2.0 * hw);
            let gb = (at(0, 1) - at(0, -1)) / (2.0 * hb);
            let hww = (at(1, 0) - 2.0 * f0 + at(-1, 0)) / (hw * hw);
            let hbb = (at(0, 1) - 2.0 * f0 + at(0, -1)) / (hb * hb);
            let hwb = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * hw * hb);
            let det = hww * hbb - hwb * hwb;
            let (mut dw, mut db) = (0.0, 0.0);
            if hww > 0.0 && det > 0.0 {
                dw = -(hbb * gw - hwb * gb) / det;
                db = -(hww * gb - hwb * gw) / det;
                dw = dw.clamp(-0.5 * hw, 0.5 * hw);
                db = db.clamp(-0.5 * hb, 0.5 * hb);
            }
            let model = f0
                + gw * dw
                + gb * db
                + 0.5 * (hww * dw * dw + 2.0 * hwb * dw * db + hbb * db * db);
            let (omega, b) = grid.node(i, j);
            found.push(LocalMinimum {
                omega: omega + dw,
                b: b + db,
                value: model.clamp(0.0, f0),
            });
        }
    }
    found.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(found)
}
