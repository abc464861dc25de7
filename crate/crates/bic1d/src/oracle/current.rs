//! Probability current j(x) = Im(ψ* ψ′) of a tabulated complex state.
//!
//! The constant ħ/m prefactor is dropped (h2m = 1 convention); a stationary
//! scattering state of a real potential carries an x-independent current,
//! which is the invariant the tests lean on.

use crate::model::WavefunctionTable;

/// Current at every grid point, centered differences in the interior and
/// second-order one-sided differences at the two ends. Assumes the uniform
/// grid promised by the table contract.
pub fn probability_current(table: &WavefunctionTable) -> Vec<f64> {
    let n = table.xs.len();
    if n < 3 {
        return vec![0.0; n];
    }
    let h = table.xs[1] - table.xs[0];
    let v = &table.values;
    let mut j = Vec::with_capacity(n);
    j.push((v[0].conj() * (-1.5 * v[0] + 2.0 * v[1] - 0.5 * v[2]) / h).im);
    for i in 1..n - 1 {
        j.push((v[i].conj() * (v[i + 1] - v[i - 1]) / (2.0 * h)).im);
    }
    j.push((v[n - 1].conj() * (1.5 * v[n - 1] - 2.0 * v[n - 2] + 0.5 * v[n - 3]) / h).im);
    j
}
