//! Free evolution and the uncertainty product for a Gaussian packet.

use std::sync::Arc;

use nullplane::momentum::PositionChoice;
use nullplane::wavepacket::*;

fn main() {
    let (z, m) = (0.1, 1.0);
    let params = GaussianParams::default();
    let grid = Arc::new(params.grid(9.0, [32, 40, 40]).unwrap());
    let psi = WavePacket::gaussian(grid, &params, z).unwrap();

    let taus: Vec<f64> = (0..=4).map(|k| 2.5 * k as f64).collect();
    let rows = evolution_table(&psi, &PositionChoice::SinhOverZ, z, m, &taus).unwrap();
    write_csv(&rows, std::io::stdout()).unwrap();

    for choice in [PositionChoice::SinhOverZ, PositionChoice::TanhOverZ] {
        let u = uncertainty_report(&choice, &psi, z, m, EXPECTATION_TOL).unwrap();
        println!("{}: dQ dP = {:.8}, bound {:.8}, satisfied {}", u.choice, u.product, u.robertson, u.satisfied);
    }
}
