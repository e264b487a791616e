use std::io::Write;
use std::sync::Arc;

use serde::Serialize;

use super::grid::QuadratureGrid;
use super::observable::{expectation, moment, observable, spread};
use super::packet::{evolve, free_hamiltonian, GaussianParams, WavePacket};
use super::WaveError;
use crate::momentum::PositionChoice;

/// Uncertainty product of `Q1`, `P1` against the readings of the bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub choice: String,
    pub z: f64,
    pub dq: f64,
    pub dp: f64,
    pub product: f64,
    /// `|<[Q1, P1]>| / 2`
    pub robertson: f64,
    /// `<cosh(z p+)> / 2`
    pub half_mean_cosh: f64,
    /// `Delta(cosh(z p+)) / 2`, the variance reading of the bound.
    pub variance_reading: f64,
    /// `(1 + z^2 <p+^2> / 2) / 2`
    pub second_moment_series: f64,
    /// `(1 + z^2 (Delta p+)^2 / 2) / 2`
    pub spread_series: f64,
    pub satisfied: bool,
}

pub fn uncertainty_report(
    choice: &PositionChoice,
    psi: &WavePacket,
    z: f64,
    m: f64,
    tol: f64,
) -> Result<UncertaintyReport, WaveError> {
    let g = &psi.grid;
    let q = observable("Q1", g, z, m, choice)?;
    let p = observable("P1", g, z, m, choice)?;
    let comm = observable("[Q1,P1]", g, z, m, choice)?;
    let dq = spread(&q, psi, z)?;
    let dp = spread(&p, psi, z)?;
    let robertson = 0.5 * expectation(&comm, psi, z)?.norm();
    let cosh1 = moment(psi, z, |x| (z * x[0]).cosh())?;
    let cosh2 = moment(psi, z, |x| (z * x[0]).cosh().powi(2))?;
    let pp1 = moment(psi, z, |x| x[0])?;
    let pp2 = moment(psi, z, |x| x[0] * x[0])?;
    let product = dq * dp;
    Ok(UncertaintyReport {
        choice: choice.name().to_string(),
        z,
        dq,
        dp,
        product,
        robertson,
        half_mean_cosh: 0.5 * cosh1,
        variance_reading: 0.5 * (cosh2 - cosh1 * cosh1).max(0.0).sqrt(),
        second_moment_series: 0.5 * (1.0 + 0.5 * z * z * pp2),
        spread_series: 0.5 * (1.0 + 0.5 * z * z * (pp2 - pp1 * pp1)),
        satisfied: product >= robertson - tol,
    })
}

/// Finite-difference drift of `<Q1>` against the commutator prediction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EhrenfestReport {
    pub tau: f64,
    pub fd_slope: f64,
    /// `<i [P-, Q1]>`
    pub predicted: f64,
    /// `<z p1 / sinh(z p+)>` (or `<z p1 / tanh(z p+)>` for the tanh choice).
    pub velocity: f64,
}

pub fn ehrenfest(
    choice: &PositionChoice,
    psi0: &WavePacket,
    z: f64,
    m: f64,
    tau: f64,
    h: f64,
) -> Result<EhrenfestReport, WaveError> {
    let g = &psi0.grid;
    let q = observable("Q1", g, z, m, choice)?;
    let at = |t: f64| -> Result<f64, WaveError> { Ok(expectation(&q, &evolve(psi0, t, z, m)?, z)?.re) };
    let fd_slope = (at(tau + h)? - at(tau - h)?) / (2.0 * h);
    let psi = evolve(psi0, tau, z, m)?;
    let hp = observable("P-", g, z, m, choice)?;
    let qpsi = q.apply(&psi)?;
    let hpsi = hp.apply(&psi)?;
    // <i[H,Q]> = i(<H psi|Q psi> - <Q psi|H psi>) for hermitian H, Q
    let a = super::packet::inner_product(&hpsi, &qpsi, z)?;
    let b = super::packet::inner_product(&qpsi, &hpsi, z)?;
    let predicted = (num_complex::Complex64::i() * (a - b)).re / super::packet::inner_product(&psi, &psi, z)?.re;
    let tanh = matches!(choice, PositionChoice::TanhOverZ);
    let velocity = moment(&psi, z, |x| {
        let v = if z == 0.0 { x[1] / x[0] } else { z * x[1] / (z * x[0]).sinh() };
        if tanh {
            v * (z * x[0]).cosh()
        } else {
            v
        }
    })?;
    Ok(EhrenfestReport { tau, fd_slope, predicted, velocity })
}

/// Richardson fit of `(P-(z) - H0) / z^2` as `z -> 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplitFit {
    /// Extrapolated limit divided by `p+ (m^2 + p_T^2)`.
    pub coefficient: f64,
    /// `(z, (P-(z) - H0) / z^2)`
    pub samples: Vec<(f64, f64)>,
    /// Residual after subtracting `H0 + V_z`, per sample.
    pub residuals: Vec<(f64, f64)>,
    /// `log(r_k / r_{k+1}) / log(z_k / z_{k+1})` for consecutive residuals.
    pub residual_orders: Vec<f64>,
}

pub fn hamiltonian_split_check(p: [f64; 3], m: f64, zs: &[f64]) -> Result<SplitFit, WaveError> {
    let mass_shell = m * m + p[1] * p[1] + p[2] * p[2];
    if mass_shell == 0.0 {
        return Err(WaveError::Degenerate("m^2 + p_T^2 = 0 makes the split 0/0".into()));
    }
    if p[0] <= 0.0 || zs.len() < 2 || zs.iter().any(|&z| z <= 0.0) {
        return Err(WaveError::Degenerate("need p+ > 0 and at least two positive z values".into()));
    }
    let h0 = free_hamiltonian(0.0, m, p);
    let samples: Vec<(f64, f64)> = zs.iter().map(|&z| (z, (free_hamiltonian(z, m, p) - h0) / (z * z))).collect();
    // Neville extrapolation to z^2 = 0.
    let xs: Vec<f64> = zs.iter().map(|z| z * z).collect();
    let mut t: Vec<f64> = samples.iter().map(|s| s.1).collect();
    for k in 1..t.len() {
        for i in (k..t.len()).rev() {
            t[i] = (xs[i - k] * t[i] - xs[i] * t[i - 1]) / (xs[i - k] - xs[i]);
        }
    }
    let limit = *t.last().unwrap();
    let vz = |z: f64| -z * z * p[0] * mass_shell / 12.0;
    let residuals: Vec<(f64, f64)> = zs.iter().map(|&z| (z, free_hamiltonian(z, m, p) - h0 - vz(z))).collect();
    let residual_orders =
        residuals.windows(2).map(|w| (w[0].1.abs() / w[1].1.abs()).ln() / (w[0].0 / w[1].0).ln()).collect();
    Ok(SplitFit { coefficient: limit / (p[0] * mass_shell), samples, residuals, residual_orders })
}

/// One row of the evolution table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvolutionRow {
    pub tau: f64,
    pub norm: f64,
    pub q1: f64,
    pub p1: f64,
    pub dq1: f64,
    pub dp1: f64,
    pub bound: f64,
}

pub fn evolution_table(
    psi0: &WavePacket,
    choice: &PositionChoice,
    z: f64,
    m: f64,
    taus: &[f64],
) -> Result<Vec<EvolutionRow>, WaveError> {
    let g = &psi0.grid;
    let q = observable("Q1", g, z, m, choice)?;
    let p = observable("P1", g, z, m, choice)?;
    let comm = observable("[Q1,P1]", g, z, m, choice)?;
    taus.iter()
        .map(|&tau| {
            let psi = evolve(psi0, tau, z, m)?;
            Ok(EvolutionRow {
                tau,
                norm: psi.norm(z)?,
                q1: expectation(&q, &psi, z)?.re,
                p1: expectation(&p, &psi, z)?.re,
                dq1: spread(&q, &psi, z)?,
                dp1: spread(&p, &psi, z)?,
                bound: 0.5 * expectation(&comm, &psi, z)?.norm(),
            })
        })
        .collect()
}

pub fn write_csv<W: Write, T: Serialize>(rows: &[T], out: W) -> Result<(), WaveError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| WaveError::Output(e.to_string()))?;
    }
    w.flush().map_err(|e| WaveError::Output(e.to_string()))
}

/// A quantity on the base grid and on the grid with doubled node counts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateEntry {
    pub name: String,
    pub base: f64,
    pub refined: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateReport {
    pub tol: f64,
    pub entries: Vec<GateEntry>,
}

impl GateReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| (e.base - e.refined).abs() <= self.tol)
    }
}

fn gate_quantities(
    grid: Arc<QuadratureGrid>,
    params: &GaussianParams,
    choice: &PositionChoice,
    z: f64,
    m: f64,
    tau: f64,
) -> Result<Vec<(String, f64)>, WaveError> {
    let psi0 = WavePacket::gaussian(grid, params, z)?;
    let row = &evolution_table(&psi0, choice, z, m, &[tau])?[0];
    let u = uncertainty_report(choice, &psi0, z, m, 0.0)?;
    Ok(vec![
        ("norm".into(), row.norm),
        ("q1".into(), row.q1),
        ("p1".into(), row.p1),
        ("dq1".into(), row.dq1),
        ("dp1".into(), row.dp1),
        ("bound".into(), row.bound),
        ("product".into(), u.product),
        ("variance_reading".into(), u.variance_reading),
    ])
}

/// Compares the reported quantities on a grid and on its refinement.
pub fn convergence_gate(
    grid: &QuadratureGrid,
    params: &GaussianParams,
    choice: &PositionChoice,
    z: f64,
    m: f64,
    tau: f64,
    tol: f64,
) -> Result<GateReport, WaveError> {
    let base = gate_quantities(Arc::new(grid.clone()), params, choice, z, m, tau)?;
    let refined = gate_quantities(Arc::new(grid.refined()?), params, choice, z, m, tau)?;
    let entries = base
        .into_iter()
        .zip(refined)
        .map(|((name, b), (_, r))| GateEntry { name, base: b, refined: r })
        .collect();
    Ok(GateReport { tol, entries })
}
