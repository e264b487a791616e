use std::sync::Arc;

use num_complex::Complex64 as C;
use proptest::prelude::*;

use nullplane::momentum::{Coeff, DiffOperator, FVariant, PositionChoice, Realization};
use nullplane::wavepacket::*;

const M: f64 = 1.0;

fn small_grid(params: &GaussianParams) -> Arc<QuadratureGrid> {
    Arc::new(params.grid(9.0, [32, 40, 40]).unwrap())
}

/// Composite Simpson rule, used as an independent quadrature.
fn simpson(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        s += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn raw_gaussian(grid: Arc<QuadratureGrid>, p: &GaussianParams) -> WavePacket {
    let p = p.clone();
    WavePacket::from_fn(grid, move |x| {
        let mut g = 0.0;
        for k in 0..3 {
            g -= (x[k] - p.mean[k]).powi(2) / (4.0 * p.width[k].powi(2));
        }
        [C::new(g.exp(), 0.0), C::new(0.0, 0.0)]
    })
}

#[test]
fn norm_matches_an_independent_quadrature() {
    let params = GaussianParams::default();
    let grid = small_grid(&params);
    let psi = raw_gaussian(grid, &params);
    for z in [0.0, 0.1, 0.5] {
        let got = inner_product(&psi, &psi, z).unwrap().re;
        // transverse factors integrate to sqrt(2 pi) sigma each
        let transverse = 2.0 * std::f64::consts::PI * params.width[1] * params.width[2];
        let (mu, sg) = (params.mean[0], params.width[0]);
        let plus = simpson(mu - 9.0 * sg, mu + 9.0 * sg, 4000, |x| {
            let dens = if z == 0.0 { 0.5 / x } else { z / (2.0 * (z * x).sinh()) };
            dens * (-(x - mu).powi(2) / (2.0 * sg * sg)).exp()
        });
        let want = transverse * plus / (2.0 * std::f64::consts::PI).powi(3);
        assert!((got - want).abs() < EXPECTATION_TOL * want, "z = {z}: {got} vs {want}");
    }
}

#[test]
fn normalized_packets_have_unit_norm() {
    let params = GaussianParams::default();
    let grid = small_grid(&params);
    for z in [0.0, 0.1, 0.5] {
        let psi = WavePacket::gaussian(grid.clone(), &params, z).unwrap();
        assert!((inner_product(&psi, &psi, z).unwrap().re - 1.0).abs() < 1e-12);
    }
}

#[test]
fn small_z_reproduces_the_undeformed_product() {
    let params = GaussianParams::default();
    let grid = small_grid(&params);
    let psi = raw_gaussian(grid, &params);
    let base = inner_product(&psi, &psi, 0.0).unwrap().re;
    let rel: Vec<f64> =
        [0.04, 0.02, 0.01].iter().map(|&z| (inner_product(&psi, &psi, z).unwrap().re / base - 1.0).abs()).collect();
    for w in rel.windows(2) {
        // relative difference is O(z^2)
        assert!((w[0] / w[1] - 4.0).abs() < 0.05, "{rel:?}");
    }
    assert!(rel[2] < 1e-3);
}

#[test]
fn evolution_conserves_the_norm() {
    let params = GaussianParams::default();
    let grid = small_grid(&params);
    for z in [0.0, 0.1, 0.5] {
        let psi = WavePacket::gaussian(grid.clone(), &params, z).unwrap();
        assert_eq!(evolve(&psi, 0.0, z, M).unwrap(), psi);
        for k in 0..=20 {
            let tau = 0.5 * k as f64;
            let drift = (evolve(&psi, tau, z, M).unwrap().norm(z).unwrap() - 1.0).abs();
            assert!(drift < 1e-12, "z = {z}, tau = {tau}: {drift:e}");
        }
    }
}

#[test]
fn ehrenfest_drift_matches_the_velocity() {
    let params = GaussianParams::default();
    let grid = small_grid(&params);
    for z in [0.0, 0.1, 0.5] {
        let psi = WavePacket::gaussian(grid.clone(), &params, z).unwrap();
        for choice in [PositionChoice::SinhOverZ, PositionChoice::TanhOverZ] {
            let e = ehrenfest(&choice, &psi, z, M, 2.0, 1e-3).unwrap();
            assert!((e.fd_slope - e.velocity).abs() < 1e-5, "{} z={z}: {e:?}", choice.name());
            assert!((e.predicted - e.velocity).abs() < 1e-8, "{} z={z}: {e:?}", choice.name());
        }
    }
}

#[test]
fn split_recovers_minus_one_twelfth() {
    let f = hamiltonian_split_check([1.0, 0.5f64.sqrt(), 0.0], 1.0, &[0.2, 0.1, 0.05, 0.025]).unwrap();
    assert!((f.coefficient + 1.0 / 12.0).abs() < 1e-6, "{}", f.coefficient);
    for order in &f.residual_orders {
        assert!((order - 4.0).abs() < 0.05, "{:?}", f.residual_orders);
    }
    assert!(matches!(hamiltonian_split_check([1.0, 0.0, 0.0], 0.0, &[0.1, 0.05]), Err(WaveError::Degenerate(_))));
}

#[test]
fn gaussian_saturates_heisenberg_at_z_zero() {
    let params = GaussianParams::default();
    let grid = small_grid(&params);
    let psi = WavePacket::gaussian(grid, &params, 0.0).unwrap();
    for choice in [PositionChoice::SinhOverZ, PositionChoice::TanhOverZ] {
        let u = uncertainty_report(&choice, &psi, 0.0, M, 1e-8).unwrap();
        assert!((u.product - 0.5).abs() < 1e-6, "{u:?}");
        assert!((u.robertson - 0.5).abs() < 1e-12);
    }
}

#[test]
fn tanh_choice_bound_exceeds_one_half() {
    let params = GaussianParams { mean: [5.0, 0.0, 0.0], width: [0.5, 1.0, 1.0], ..Default::default() };
    let grid = small_grid(&params);
    let psi = WavePacket::gaussian(grid, &params, 0.1).unwrap();
    let u = uncertainty_report(&PositionChoice::TanhOverZ, &psi, 0.1, M, 1e-8).unwrap();
    assert!(u.robertson > 0.5);
    assert!(u.satisfied);
    assert!((u.robertson - u.half_mean_cosh).abs() < 1e-8);
    // Expansion of <cosh z p+>/2 through z^2 uses the raw second moment.
    assert!((u.robertson - u.second_moment_series).abs() < 0.2 * 0.1f64.powi(4) * 5.5f64.powi(4));
    // The variance reading vanishes as z -> 0 and sits far below 1/2 here.
    assert!(u.variance_reading < 0.05);
}

#[test]
fn sinh_choice_is_undeformed() {
    let params = GaussianParams::default();
    let grid = small_grid(&params);
    let products: Vec<f64> = [0.0, 0.1, 0.5]
        .iter()
        .map(|&z| {
            let psi = WavePacket::gaussian(grid.clone(), &params, z).unwrap();
            uncertainty_report(&PositionChoice::SinhOverZ, &psi, z, M, 1e-8).unwrap().product
        })
        .collect();
    for p in &products {
        assert!((p - products[0]).abs() < 1e-9, "{products:?}");
    }
}

#[test]
fn hermiticity_residuals() {
    let params = GaussianParams::default();
    let grid = small_grid(&params);
    let z = 0.3;
    let psi = WavePacket::gaussian(grid.clone(), &params, z).unwrap();
    let phi = WavePacket::from_fn(grid.clone(), |p| {
        let g = (-(p[0] - 5.2f64).powi(2) - (p[1] - 0.3f64).powi(2) / 2.0 - p[2] * p[2] / 3.0).exp();
        [C::new(g, 0.3 * g * p[1]), C::new(0.2 * g * p[2], g)]
    });
    let p1 = observable("P1", &grid, z, M, &PositionChoice::SinhOverZ).unwrap();
    assert!(hermiticity_check(&p1, &phi, &psi, z).unwrap() < 1e-15);
    for choice in [PositionChoice::SinhOverZ, PositionChoice::TanhOverZ] {
        for name in ["Q1", "Q2", "P-", "P+", "K3", "J3", "E1", "E2"] {
            let a = observable(name, &grid, z, M, &choice).unwrap();
            let r = hermiticity_check(&a, &phi, &psi, z).unwrap();
            assert!(r < 1e-8, "{name} ({}): {r:e}", choice.name());
        }
    }
}

#[test]
fn compiled_operators_act_exactly_on_polynomials() {
    let params = GaussianParams::default();
    let grid = small_grid(&params);
    let (z, m) = (0.4, 1.3);
    let f = |p: [f64; 3]| [C::new(p[0] * p[0] * p[1], p[2]), C::new(p[1] * p[2] - p[0], 0.0)];
    let psi = WavePacket::from_fn(grid.clone(), f);
    let r = Realization::quantum(FVariant::Printed).unwrap();
    let k3 = NumericObservable::compile("K3", r.generator("K3").unwrap(), grid.clone(), z, m).unwrap();
    let f1 = NumericObservable::compile("F1", r.generator("F1").unwrap(), grid.clone(), z, m).unwrap();
    let out_k3 = k3.apply(&psi).unwrap();
    let out_f1 = f1.apply(&psi).unwrap();
    for (k, p) in grid.points().enumerate().step_by(997) {
        let (sh, ch) = ((z * p[0]).sinh(), (z * p[0]).cosh());
        let want = [C::new(sh / z * 2.0 * p[0] * p[1], 0.0), C::new(-sh / z, 0.0)];
        assert!((out_k3.psi[0][k] - want[0]).norm() < 1e-9 && (out_k3.psi[1][k] - want[1]).norm() < 1e-9);
        // F1 = p1 d+ + z(m^2+pT^2) c/(2s) d1 - z/s (m S2 + p2 c S3), S_k = -(i/2) sigma_k
        let v = f(p);
        let dplus = [C::new(2.0 * p[0] * p[1], 0.0), C::new(-1.0, 0.0)];
        let d1 = [C::new(p[0] * p[0], 0.0), C::new(p[2], 0.0)];
        let a = z * (m * m + p[1] * p[1] + p[2] * p[2]) * ch / (2.0 * sh);
        let s2v = [C::new(-0.5, 0.0) * v[1], C::new(0.5, 0.0) * v[0]];
        let s3v = [C::new(0.0, -0.5) * v[0], C::new(0.0, 0.5) * v[1]];
        for h in 0..2 {
            let want = dplus[h] * p[1] + d1[h] * a - (s2v[h] * m + s3v[h] * p[2] * ch) * (z / sh);
            assert!((out_f1.psi[h][k] - want).norm() < 1e-8 * (1.0 + want.norm()), "F1 at {p:?}");
        }
    }
}

#[test]
fn grid_convergence_gate() {
    let params = GaussianParams::default();
    let grid = params.grid(9.0, [32, 40, 40]).unwrap();
    for choice in [PositionChoice::SinhOverZ, PositionChoice::TanhOverZ] {
        let g = convergence_gate(&grid, &params, &choice, 0.1, M, 1.0, EXPECTATION_TOL).unwrap();
        assert!(g.passed(), "{g:?}");
    }
}

#[test]
fn z_zero_rows_agree_across_choices() {
    let params = GaussianParams::default();
    let grid = small_grid(&params);
    let psi = WavePacket::gaussian(grid, &params, 0.0).unwrap();
    let taus = [0.0, 1.0, 2.0];
    let a = evolution_table(&psi, &PositionChoice::SinhOverZ, 0.0, M, &taus).unwrap();
    let b = evolution_table(&psi, &PositionChoice::TanhOverZ, 0.0, M, &taus).unwrap();
    assert_eq!(a, b);
}

#[test]
fn csv_columns() {
    let params = GaussianParams::default();
    let grid = small_grid(&params);
    let psi = WavePacket::gaussian(grid, &params, 0.1).unwrap();
    let rows = evolution_table(&psi, &PositionChoice::SinhOverZ, 0.1, M, &[0.0, 1.0]).unwrap();
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().next().unwrap(), "tau,norm,q1,p1,dq1,dp1,bound");
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn invalid_inputs_are_rejected() {
    assert!(matches!(QuadratureGrid::new((0.0, 1.0), (-1.0, 1.0), (-1.0, 1.0), [4, 4, 4]), Err(WaveError::InvalidGrid(_))));
    let params = GaussianParams::default();
    let a = WavePacket::gaussian(small_grid(&params), &params, 0.1).unwrap();
    let other = Arc::new(params.grid(8.0, [32, 40, 40]).unwrap());
    let b = WavePacket::gaussian(other, &params, 0.1).unwrap();
    assert_eq!(inner_product(&a, &b, 0.1), Err(WaveError::GridMismatch));
    assert!(matches!(inner_product(&a, &a, -0.1), Err(WaveError::BadDeformation(_))));
    let custom = PositionChoice::Custom(Coeff::s());
    assert!(observable("Q1", &a.grid, 0.1, M, &custom).is_err());
    let _ = DiffOperator::zero();
}

fn arb_packet(grid: Arc<QuadratureGrid>) -> impl Strategy<Value = WavePacket> {
    proptest::collection::vec(-1.0f64..1.0, 8).prop_map(move |c| {
        WavePacket::from_fn(grid.clone(), |p| {
            let g = (-(p[0] - 5.0).powi(2) - p[1] * p[1] / 4.0 - p[2] * p[2] / 4.0).exp();
            [C::new(c[0] + c[1] * p[1], c[2] * p[2] + c[3]) * g, C::new(c[4] * p[0], c[5] + c[6] * p[1] * c[7]) * g]
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn inner_product_is_sesquilinear(
        (phi, psi, a) in {
            let grid = Arc::new(GaussianParams::default().grid(9.0, [8, 10, 10]).unwrap());
            (arb_packet(grid.clone()), arb_packet(grid), -2.0f64..2.0)
        },
        z in 0.0f64..0.6,
    ) {
        let pq = inner_product(&phi, &psi, z).unwrap();
        let qp = inner_product(&psi, &phi, z).unwrap();
        prop_assert!((pq - qp.conj()).norm() <= 1e-12 * (1.0 + pq.norm()));
        let scaled = psi.scaled(a);
        let lhs = inner_product(&phi, &scaled, z).unwrap();
        prop_assert!((lhs - pq * a).norm() <= 1e-12 * (1.0 + lhs.norm()));
        let nn = inner_product(&psi, &psi, z).unwrap();
        prop_assert!(nn.re >= 0.0 && nn.im.abs() <= 1e-14 * (1.0 + nn.re));
    }
}
