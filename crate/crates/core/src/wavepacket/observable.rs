use std::sync::Arc;

use num_complex::Complex64;

use super::grid::QuadratureGrid;
use super::packet::{inner_product, WavePacket};
use super::WaveError;
use crate::momentum::{
    hermitization, position_operator, DerivIndex, DiffOperator, FVariant, Point, PositionChoice, Realization,
};

type Mat = [[Complex64; 2]; 2];

/// A differential operator evaluated on a grid at fixed `z` and `m`.
#[derive(Debug, Clone)]
pub struct NumericObservable {
    pub label: String,
    grid: Arc<QuadratureGrid>,
    terms: Vec<(DerivIndex, Vec<Mat>)>,
}

impl NumericObservable {
    /// At `z = 0` the operator's classical limit is used.
    pub fn compile(
        label: impl Into<String>,
        op: &DiffOperator,
        grid: Arc<QuadratureGrid>,
        z: f64,
        m: f64,
    ) -> Result<Self, WaveError> {
        let op = if z == 0.0 { op.classical_limit()? } else { op.clone() };
        let mut terms = Vec::new();
        for (idx, mat) in op.terms() {
            let entries: Vec<_> = mat.0.iter().flatten().map(|c| c.numeric()).collect();
            let values = grid
                .points()
                .map(|p| {
                    let pt = Point { z, p_plus: p[0], p1: p[1], p2: p[2], m };
                    let e = |k: usize| if entries[k].is_zero() { Complex64::new(0.0, 0.0) } else { entries[k].eval(&pt) };
                    [[e(0), e(1)], [e(2), e(3)]]
                })
                .collect();
            terms.push((*idx, values));
        }
        Ok(NumericObservable { label: label.into(), grid, terms })
    }

    pub fn apply(&self, psi: &WavePacket) -> Result<WavePacket, WaveError> {
        if !Arc::ptr_eq(&self.grid, &psi.grid) && *self.grid != *psi.grid {
            return Err(WaveError::GridMismatch);
        }
        let n = self.grid.len();
        let mut out = [vec![Complex64::new(0.0, 0.0); n], vec![Complex64::new(0.0, 0.0); n]];
        for (idx, mats) in &self.terms {
            let mut d = psi.psi.clone();
            for axis in 0..3 {
                for _ in 0..idx[axis] {
                    d = [self.grid.derivative(&d[0], axis), self.grid.derivative(&d[1], axis)];
                }
            }
            for k in 0..n {
                let m = &mats[k];
                out[0][k] += m[0][0] * d[0][k] + m[0][1] * d[1][k];
                out[1][k] += m[1][0] * d[0][k] + m[1][1] * d[1][k];
            }
        }
        Ok(psi.with_components(out))
    }
}

/// Hermitian observables by name: `P+ P1 P2 P- K3 J3 E1 E2`, the position
/// operators `Q1 Q2`, and `[Q1,P1]`.
pub fn observable(
    name: &str,
    grid: &Arc<QuadratureGrid>,
    z: f64,
    m: f64,
    choice: &PositionChoice,
) -> Result<NumericObservable, WaveError> {
    let r = Realization::quantum(FVariant::Printed)?;
    let op = match name {
        "Q1" => position_operator(&r, 1, choice)?,
        "Q2" => position_operator(&r, 2, choice)?,
        "[Q1,P1]" => position_operator(&r, 1, choice)?.commutator(r.generator("P1")?),
        other => hermitization(&r, other)?,
    };
    NumericObservable::compile(name, &op, grid.clone(), z, m)
}

/// `<psi|A psi> / <psi|psi>`
pub fn expectation(a: &NumericObservable, psi: &WavePacket, z: f64) -> Result<Complex64, WaveError> {
    let apsi = a.apply(psi)?;
    Ok(inner_product(psi, &apsi, z)? / inner_product(psi, psi, z)?.re)
}

/// Standard deviation `|| (A - <A>) psi || / || psi ||` of a hermitian observable.
pub fn spread(a: &NumericObservable, psi: &WavePacket, z: f64) -> Result<f64, WaveError> {
    let mean = expectation(a, psi, z)?.re;
    let apsi = a.apply(psi)?;
    let mut shifted = apsi.psi.clone();
    for h in 0..2 {
        for (v, p) in shifted[h].iter_mut().zip(&psi.psi[h]) {
            *v -= p * mean;
        }
    }
    let d = psi.with_components(shifted);
    Ok((inner_product(&d, &d, z)?.re / inner_product(psi, psi, z)?.re).sqrt())
}

/// `|<phi|A psi> - <A phi|psi>|`
pub fn hermiticity_check(a: &NumericObservable, phi: &WavePacket, psi: &WavePacket, z: f64) -> Result<f64, WaveError> {
    let left = inner_product(phi, &a.apply(psi)?, z)?;
    let right = inner_product(&a.apply(phi)?, psi, z)?;
    Ok((left - right).norm())
}

/// `<f(p)>` for a pointwise scalar function.
pub fn moment(psi: &WavePacket, z: f64, f: impl Fn([f64; 3]) -> f64) -> Result<f64, WaveError> {
    let g = &psi.grid;
    let mut weighted = psi.clone();
    for k in 0..g.len() {
        let v = f(g.point(k));
        weighted.psi[0][k] *= v;
        weighted.psi[1][k] *= v;
    }
    Ok(inner_product(psi, &weighted, z)?.re / inner_product(psi, psi, z)?.re)
}
