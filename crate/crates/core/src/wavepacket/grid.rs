use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use super::WaveError;

/// Gauss-Legendre rule on one interval with its Lagrange differentiation
/// matrix (exact on polynomials of degree below the node count).
#[derive(Debug, Clone, PartialEq)]
pub struct AxisRule {
    pub lo: f64,
    pub hi: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    diff: Vec<f64>,
}

impl AxisRule {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self, WaveError> {
        if !(lo < hi) || n < 2 {
            return Err(WaveError::InvalidGrid(format!("axis [{lo}, {hi}] with {n} nodes")));
        }
        let rule = GaussLegendre::new(n.try_into().expect("n >= 2"));
        let mut pairs: Vec<(f64, f64)> = rule.iter().copied().collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        // Barycentric weights of Gauss-Legendre points: (-1)^j sqrt((1 - x_j^2) w_j).
        let bary: Vec<f64> = pairs
            .iter()
            .enumerate()
            .map(|(j, (x, w))| if j % 2 == 0 { 1.0 } else { -1.0 } * ((1.0 - x * x) * w).sqrt())
            .collect();
        let xs: Vec<f64> = pairs.iter().map(|(x, _)| x).copied().collect();
        let mut diff = vec![0.0; n * n];
        for i in 0..n {
            let mut diag = 0.0;
            for j in 0..n {
                if i != j {
                    let d = bary[j] / bary[i] / (xs[i] - xs[j]) / half;
                    diff[i * n + j] = d;
                    diag -= d;
                }
            }
            diff[i * n + i] = diag;
        }
        Ok(AxisRule {
            lo,
            hi,
            nodes: xs.iter().map(|x| mid + half * x).collect(),
            weights: pairs.iter().map(|(_, w)| half * w).collect(),
            diff,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn d(&self, i: usize, j: usize) -> f64 {
        self.diff[i * self.nodes.len() + j]
    }
}

/// Tensor-product grid over `(p+, p1, p2)` with `p+ > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    pub axes: [AxisRule; 3],
}

impl QuadratureGrid {
    pub fn new(plus: (f64, f64), t1: (f64, f64), t2: (f64, f64), n: [usize; 3]) -> Result<Self, WaveError> {
        if plus.0 <= 0.0 {
            return Err(WaveError::InvalidGrid(format!("p+ range must lie in p+ > 0, got lower bound {}", plus.0)));
        }
        Ok(QuadratureGrid {
            axes: [AxisRule::new(plus.0, plus.1, n[0])?, AxisRule::new(t1.0, t1.1, n[1])?, AxisRule::new(t2.0, t2.1, n[2])?],
        })
    }

    pub fn shape(&self) -> [usize; 3] {
        [self.axes[0].len(), self.axes[1].len(), self.axes[2].len()]
    }

    pub fn len(&self) -> usize {
        self.shape().iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Same bounds with every node count doubled.
    pub fn refined(&self) -> Result<Self, WaveError> {
        let b = |k: usize| (self.axes[k].lo, self.axes[k].hi);
        let n = self.shape().map(|k| 2 * k);
        Self::new(b(0), b(1), b(2), n)
    }

    fn strides(&self) -> [usize; 3] {
        let [_, n1, n2] = self.shape();
        [n1 * n2, n2, 1]
    }

    pub fn point(&self, flat: usize) -> [f64; 3] {
        let s = self.strides();
        let [_, n1, n2] = self.shape();
        let i0 = flat / s[0];
        let i1 = (flat / s[1]) % n1;
        let i2 = flat % n2;
        [self.axes[0].nodes[i0], self.axes[1].nodes[i1], self.axes[2].nodes[i2]]
    }

    pub fn points(&self) -> impl Iterator<Item = [f64; 3]> + '_ {
        (0..self.len()).map(|k| self.point(k))
    }

    /// Product quadrature weight at a flat index.
    pub fn weight(&self, flat: usize) -> f64 {
        let s = self.strides();
        let [_, n1, n2] = self.shape();
        self.axes[0].weights[flat / s[0]] * self.axes[1].weights[(flat / s[1]) % n1] * self.axes[2].weights[flat % n2]
    }

    /// Derivative along one axis of a field stored in flat order.
    pub fn derivative(&self, field: &[Complex64], axis: usize) -> Vec<Complex64> {
        let s = self.strides()[axis];
        let rule = &self.axes[axis];
        let n = rule.len();
        let mut out = vec![Complex64::new(0.0, 0.0); field.len()];
        for (flat, slot) in out.iter_mut().enumerate() {
            let i = (flat / s) % n;
            let start = flat - i * s;
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += field[start + j * s] * rule.d(i, j);
            }
            *slot = acc;
        }
        out
    }
}
