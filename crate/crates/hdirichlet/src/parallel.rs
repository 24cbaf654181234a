//! Grid evaluations spread over a thread pool, merged into a deterministic order.

use crate::Result;
use hdirichlet_core::coefficients::coeff_residue;
use hdirichlet_core::wallach::{scan_cell, sort_records, ScanGrid, ScanRecord};
use rayon::prelude::*;

/// Parallel version of [`hdirichlet_core::wallach::scan`]; identical output.
pub fn scan(grid: &ScanGrid) -> Result<Vec<ScanRecord>> {
    let id = grid.id();
    let points = grid.points();
    let cells: Vec<(usize, f64)> = (1..=grid.max_mode)
        .flat_map(|m| points.iter().map(move |&s| (m, s)))
        .collect();
    let mut records = cells
        .into_par_iter()
        .map(|(m, s)| scan_cell(grid.n, m, s, &id))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    sort_records(&mut records);
    Ok(records)
}

/// Residues at `s0` for each mode, in input order.
pub fn residues(n: usize, modes: &[usize], s0: f64) -> Result<Vec<f64>> {
    Ok(modes
        .par_iter()
        .map(|&m| coeff_residue(n, m, s0))
        .collect::<std::result::Result<Vec<_>, _>>()?)
}
