use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::grid::QuadratureGrid;
use super::WaveError;

/// Gaussian packet parameters. Amplitudes are
/// `a_h exp(-(p - mu)^2 / (4 sigma^2)) exp(-i q . p_T)`, so `sigma` is the
/// momentum spread of `|psi|^2` and `q` the transverse position offset.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianParams {
    pub mean: [f64; 3],
    pub width: [f64; 3],
    pub offset: [f64; 2],
    /// Amplitudes of helicity `+1/2` and `-1/2`.
    pub helicity: [Complex64; 2],
}

impl Default for GaussianParams {
    fn default() -> Self {
        GaussianParams {
            mean: [5.0, 0.5, 0.0],
            width: [0.5, 1.0, 1.0],
            offset: [0.0, 0.0],
            helicity: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        }
    }
}

impl GaussianParams {
    /// Grid covering `mean +- span * width` on each axis.
    pub fn grid(&self, span: f64, n: [usize; 3]) -> Result<QuadratureGrid, WaveError> {
        let r = |k: usize| (self.mean[k] - span * self.width[k], self.mean[k] + span * self.width[k]);
        QuadratureGrid::new(r(0), r(1), r(2), n)
    }

    /// Like [`grid`](Self::grid) with an explicit `p+` range.
    pub fn grid_with_plus(&self, plus: (f64, f64), span: f64, n: [usize; 3]) -> Result<QuadratureGrid, WaveError> {
        let r = |k: usize| (self.mean[k] - span * self.width[k], self.mean[k] + span * self.width[k]);
        QuadratureGrid::new(plus, r(1), r(2), n)
    }
}

/// Helicity components on a quadrature grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WavePacket {
    pub grid: Arc<QuadratureGrid>,
    pub psi: [Vec<Complex64>; 2],
    pub params: Option<GaussianParams>,
}

/// `z / (2 sinh(z p+))`, with the limit `1 / (2 p+)` at `z = 0`.
pub fn measure_density(z: f64, p_plus: f64) -> f64 {
    if z == 0.0 {
        0.5 / p_plus
    } else {
        z / (2.0 * (z * p_plus).sinh())
    }
}

/// `z (m^2 + p_T^2) / (2 sinh(z p+))`
pub fn free_hamiltonian(z: f64, m: f64, p: [f64; 3]) -> f64 {
    (m * m + p[1] * p[1] + p[2] * p[2]) * measure_density(z, p[0])
}

fn check_z(z: f64) -> Result<(), WaveError> {
    if z < 0.0 || !z.is_finite() {
        Err(WaveError::BadDeformation(z))
    } else {
        Ok(())
    }
}

impl WavePacket {
    pub fn from_fn(grid: Arc<QuadratureGrid>, f: impl Fn([f64; 3]) -> [Complex64; 2]) -> Self {
        let mut psi = [Vec::with_capacity(grid.len()), Vec::with_capacity(grid.len())];
        for p in grid.points() {
            let v = f(p);
            psi[0].push(v[0]);
            psi[1].push(v[1]);
        }
        WavePacket { grid, psi, params: None }
    }

    /// Gaussian normalized under the measure at deformation `z`.
    pub fn gaussian(grid: Arc<QuadratureGrid>, params: &GaussianParams, z: f64) -> Result<Self, WaveError> {
        let p0 = params.clone();
        let mut w = Self::from_fn(grid, move |p| {
            let mut g = 0.0;
            for k in 0..3 {
                g -= (p[k] - p0.mean[k]).powi(2) / (4.0 * p0.width[k].powi(2));
            }
            let phase = Complex64::from_polar(g.exp(), -(p0.offset[0] * p[1] + p0.offset[1] * p[2]));
            [p0.helicity[0] * phase, p0.helicity[1] * phase]
        });
        w.params = Some(params.clone());
        let n = w.norm(z)?;
        if n == 0.0 || !n.is_finite() {
            return Err(WaveError::Degenerate("packet has zero norm on the grid".into()));
        }
        Ok(w.scaled(1.0 / n))
    }

    pub fn scaled(&self, k: f64) -> Self {
        let mut out = self.clone();
        for comp in &mut out.psi {
            for v in comp.iter_mut() {
                *v *= k;
            }
        }
        out
    }

    pub fn with_components(&self, psi: [Vec<Complex64>; 2]) -> Self {
        WavePacket { grid: self.grid.clone(), psi, params: None }
    }

    pub fn norm(&self, z: f64) -> Result<f64, WaveError> {
        Ok(inner_product(self, self, z)?.re.sqrt())
    }
}

/// `(2 pi)^-3 sum_h int z d^3p / (2 sinh(z p+)) conj(phi_h) psi_h`
pub fn inner_product(phi: &WavePacket, psi: &WavePacket, z: f64) -> Result<Complex64, WaveError> {
    check_z(z)?;
    if !Arc::ptr_eq(&phi.grid, &psi.grid) && phi.grid != psi.grid {
        return Err(WaveError::GridMismatch);
    }
    let g = &phi.grid;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..g.len() {
        let p = g.point(k);
        let w = g.weight(k) * measure_density(z, p[0]);
        acc += (phi.psi[0][k].conj() * psi.psi[0][k] + phi.psi[1][k].conj() * psi.psi[1][k]) * w;
    }
    Ok(acc / (2.0 * PI).powi(3))
}

/// Free evolution: multiplication by `exp(-i tau P-(p))`.
pub fn evolve(psi0: &WavePacket, tau: f64, z: f64, m: f64) -> Result<WavePacket, WaveError> {
    check_z(z)?;
    let g = &psi0.grid;
    let mut out = psi0.clone();
    for k in 0..g.len() {
        let phase = Complex64::from_polar(1.0, -tau * free_hamiltonian(z, m, g.point(k)));
        out.psi[0][k] *= phase;
        out.psi[1][k] *= phase;
    }
    Ok(out)
}
