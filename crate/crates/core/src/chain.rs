//! The rational functions `A_k, Ã_k, B_k, B̃_k` of the Schur recursion,
//! evaluated pointwise by a 2x2 matrix recurrence.
//!
//! Stage `k + 1` is obtained from stage `k` by left multiplication with
//!
//! ```text
//! | T_{-z_{k+1}}(z)            conj(d_{k+1}) |
//! | d_{k+1} T_{-z_{k+1}}(z)    1             |
//! ```
//!
//! starting from `[[conj(d_0), 1], [1, d_0]]`, where `d_k` is the k-th
//! diagonal entry of the divided-difference table (or `γ_k` in the
//! confluent setting, where every node equals `z0`). The checks at the
//! bottom of the module return residuals of the algebraic identities these
//! functions satisfy.

use num_complex::Complex64;

use crate::divided::node_factor;
use crate::error::{Error, Result};
use crate::hyperbolic::Tolerances;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Debug, Clone, PartialEq)]
pub enum ChainMode {
    /// Distinct nodes `z_1..z_{n+1}`.
    Multipoint(Vec<Complex64>),
    /// A single node `z0` repeated `multiplicity` times.
    Confluent { z0: Complex64, multiplicity: usize },
}

/// Inputs of the recurrence: the nodes and the diagonal `d_0..d_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainConfig {
    mode: ChainMode,
    diagonal: Vec<Complex64>,
}

impl ChainConfig {
    pub fn multipoint(nodes: Vec<Complex64>, diagonal: Vec<Complex64>, tol: &Tolerances) -> Result<Self> {
        if nodes.iter().any(|z| !(z.norm() < 1.0)) {
            return Err(Error::InvalidData("chain nodes must lie inside the unit disk".into()));
        }
        Self::validated(ChainMode::Multipoint(nodes), diagonal, tol)
    }

    pub fn confluent(z0: Complex64, gamma: Vec<Complex64>, tol: &Tolerances) -> Result<Self> {
        if !(z0.norm() < 1.0) {
            return Err(Error::InvalidData(format!("base point {z0} is not inside the unit disk")));
        }
        let multiplicity = gamma.len();
        Self::validated(ChainMode::Confluent { z0, multiplicity }, gamma, tol)
    }

    fn validated(mode: ChainMode, diagonal: Vec<Complex64>, tol: &Tolerances) -> Result<Self> {
        let len = match &mode {
            ChainMode::Multipoint(nodes) => nodes.len(),
            ChainMode::Confluent { multiplicity, .. } => *multiplicity,
        };
        if diagonal.is_empty() || diagonal.len() != len {
            return Err(Error::InvalidData(format!(
                "diagonal has {} entries for {len} nodes",
                diagonal.len()
            )));
        }
        let last = diagonal.len() - 1;
        for (k, d) in diagonal.iter().enumerate() {
            let ok = if k < last { tol.is_interior(*d) } else { d.norm() <= 1.0 + tol.boundary };
            if !ok || !d.is_finite() {
                return Err(Error::InvalidData(format!("diagonal entry {k} = {d} is out of range")));
            }
        }
        Ok(Self { mode, diagonal })
    }

    pub fn mode(&self) -> &ChainMode {
        &self.mode
    }

    pub fn diagonal(&self) -> &[Complex64] {
        &self.diagonal
    }

    pub fn n(&self) -> usize {
        self.diagonal.len() - 1
    }

    /// Node `z_ℓ` for `ℓ = 1..=n+1`.
    pub fn node(&self, ell: usize) -> Complex64 {
        match &self.mode {
            ChainMode::Multipoint(nodes) => nodes[ell - 1],
            ChainMode::Confluent { z0, .. } => *z0,
        }
    }

    pub fn nodes(&self) -> Vec<Complex64> {
        (1..=self.diagonal.len()).map(|ell| self.node(ell)).collect()
    }

    /// `prod_{ℓ=0}^{k} (1 - |d_ℓ|^2)` for every `k`.
    pub fn weights(&self) -> Vec<f64> {
        self.diagonal
            .iter()
            .scan(1.0, |acc, d| {
                *acc *= 1.0 - d.norm_sqr();
                Some(*acc)
            })
            .collect()
    }
}

/// The four chain values at one stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainStage {
    pub a: Complex64,
    pub a_tilde: Complex64,
    pub b: Complex64,
    pub b_tilde: Complex64,
}

impl ChainStage {
    fn initial(d0: Complex64) -> Self {
        Self { a: d0.conj(), a_tilde: ONE, b: ONE, b_tilde: d0 }
    }

    fn advance(&self, t: Complex64, d: Complex64) -> Self {
        let dc = d.conj();
        let td = t * d;
        Self {
            a: t * self.a + dc * self.b,
            a_tilde: t * self.a_tilde + dc * self.b_tilde,
            b: td * self.a + self.b,
            b_tilde: td * self.a_tilde + self.b_tilde,
        }
    }
}

/// Every stage `k = 0..=n` of the chain at a single point `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainEvaluation {
    pub z: Complex64,
    pub stages: Vec<ChainStage>,
    /// `T_{-z_ℓ}(z)` for `ℓ = 1..=n+1`.
    pub node_factors: Vec<Complex64>,
    /// `prod_{ℓ=1}^{k} T_{-z_ℓ}(z)` for `k = 0..=n`.
    pub factor_products: Vec<Complex64>,
    /// `prod_{ℓ=0}^{k} (1 - |d_ℓ|^2)` for `k = 0..=n`.
    pub weights: Vec<f64>,
    pub diagonal: Vec<Complex64>,
}

impl ChainEvaluation {
    pub fn n(&self) -> usize {
        self.stages.len() - 1
    }

    pub fn last(&self) -> &ChainStage {
        self.stages.last().expect("at least one stage")
    }

    /// `T_{-z_{n+1}}(z)`, the factor multiplying the free parameter.
    pub fn free_factor(&self) -> Complex64 {
        self.node_factors[self.n()]
    }
}

/// Evaluates the chain at `|z| <= 1`.
pub fn evaluate_chain(config: &ChainConfig, z: Complex64) -> Result<ChainEvaluation> {
    if !(z.norm() <= 1.0 + crate::hyperbolic::DEFAULT_BOUNDARY_TOL) {
        return Err(Error::Domain(format!("query point {z} lies outside the closed unit disk")));
    }
    Ok(evaluate_chain_raw(config, z))
}

/// The same recurrence at any point of the plane; the chain functions are
/// rational, so this is their algebraic continuation.
pub fn evaluate_chain_raw(config: &ChainConfig, z: Complex64) -> ChainEvaluation {
    let diag = config.diagonal();
    let node_factors: Vec<Complex64> = config.nodes().iter().map(|&a| node_factor(a, z)).collect();
    let mut stages = Vec::with_capacity(diag.len());
    let mut factor_products = Vec::with_capacity(diag.len());
    let mut stage = ChainStage::initial(diag[0]);
    let mut product = ONE;
    stages.push(stage);
    factor_products.push(product);
    for k in 0..config.n() {
        stage = stage.advance(node_factors[k], diag[k + 1]);
        product *= node_factors[k];
        stages.push(stage);
        factor_products.push(product);
    }
    ChainEvaluation { z, stages, node_factors, factor_products, weights: config.weights(), diagonal: diag.to_vec() }
}

/// The last stage computed by first multiplying all factor matrices
/// together and then applying the product to the initial matrix.
pub fn evaluate_chain_product_form(config: &ChainConfig, z: Complex64) -> ChainStage {
    let diag = config.diagonal();
    // [[m00, m01], [m10, m11]], accumulated as F_n ... F_1
    let mut m = [[ONE, Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), ONE]];
    for k in 0..config.n() {
        let t = node_factor(config.node(k + 1), z);
        let d = diag[k + 1];
        let f = [[t, d.conj()], [d * t, ONE]];
        m = [
            [f[0][0] * m[0][0] + f[0][1] * m[1][0], f[0][0] * m[0][1] + f[0][1] * m[1][1]],
            [f[1][0] * m[0][0] + f[1][1] * m[1][0], f[1][0] * m[0][1] + f[1][1] * m[1][1]],
        ];
    }
    let init = ChainStage::initial(diag[0]);
    ChainStage {
        a: m[0][0] * init.a + m[0][1] * init.b,
        a_tilde: m[0][0] * init.a_tilde + m[0][1] * init.b_tilde,
        b: m[1][0] * init.a + m[1][1] * init.b,
        b_tilde: m[1][0] * init.a_tilde + m[1][1] * init.b_tilde,
    }
}

fn relative(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / (1.0 + rhs.norm())
}

// differences of products: measure against the size of the terms
fn scaled(lhs: Complex64, rhs: Complex64, magnitude: f64) -> f64 {
    (lhs - rhs).norm() / (1.0 + rhs.norm().max(magnitude))
}

/// Max over `k` of the residual of
/// `Ã_k B_k - A_k B̃_k = prod_{ℓ<=k} T_{-z_ℓ}(z) * prod (1 - |d_ℓ|^2)`.
pub fn check_determinant_identity(ev: &ChainEvaluation) -> f64 {
    ev.stages
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let lhs = s.a_tilde * s.b - s.a * s.b_tilde;
            relative(lhs, ev.factor_products[k] * ev.weights[k])
        })
        .fold(0.0, f64::max)
}

/// Residual of the reflection formulas relating the chain at `z` and at
/// `1 / conj(z)`, together with the reflected determinant identities.
pub fn check_reflection_identity(config: &ChainConfig, z: Complex64) -> Result<f64> {
    let near_node = config.nodes().iter().any(|&a| (ONE - a.conj() / z.conj()).norm() < 1e-13);
    if z.norm() < 1e-13 || near_node {
        return Err(Error::Pole(z));
    }
    let inner = evaluate_chain_raw(config, z);
    let outer = evaluate_chain_raw(config, ONE / z.conj());
    let mut worst = 0.0_f64;
    for k in 0..=config.n() {
        let s = inner.stages[k];
        let r = outer.stages[k];
        let p = inner.factor_products[k];
        let w = Complex64::new(inner.weights[k], 0.0);
        let residuals = [
            relative(s.a_tilde, r.b.conj() * p),
            relative(s.b_tilde, r.a.conj() * p),
            relative(s.a, r.b_tilde.conj() * p),
            relative(s.b, r.a_tilde.conj() * p),
            scaled(
                s.a_tilde * r.a_tilde.conj() - s.a * r.a.conj(),
                w,
                (s.a_tilde * r.a_tilde).norm() + (s.a * r.a).norm(),
            ),
            scaled(
                s.b * r.b.conj() - s.b_tilde * r.b_tilde.conj(),
                w,
                (s.b * r.b).norm() + (s.b_tilde * r.b_tilde).norm(),
            ),
        ];
        for res in residuals {
            if !res.is_finite() {
                return Err(Error::Pole(z));
            }
            worst = worst.max(res);
        }
    }
    Ok(worst)
}

/// Max residual of the two neighbour identities
/// `Ã_k A_{k+1} - A_k Ã_{k+1} = conj(d_{k+1}) P_k W_k` and
/// `B_k B̃_{k+1} - B̃_k B_{k+1} = d_{k+1} T_{-z_{k+1}}(z) P_k W_k`,
/// where `P_k = prod_{ℓ=1}^k T_{-z_ℓ}(z)` and `W_k = prod_{ℓ=0}^k (1 - |d_ℓ|^2)`.
pub fn check_neighbor_identities(ev: &ChainEvaluation) -> f64 {
    let mut worst = 0.0_f64;
    for k in 0..ev.n() {
        let (s, t) = (ev.stages[k], ev.stages[k + 1]);
        let pw = ev.factor_products[k] * ev.weights[k];
        let d = ev.diagonal[k + 1];
        let lhs_a = s.a_tilde * t.a - s.a * t.a_tilde;
        let lhs_b = s.b * t.b_tilde - s.b_tilde * t.b;
        worst = worst
            .max(relative(lhs_a, d.conj() * pw))
            .max(relative(lhs_b, d * ev.node_factors[k] * pw));
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapReport {
    /// `min_k (|B_k|^2 - |A_k|^2 - W_k)`; non-negative on the closed disk.
    pub min_slack: f64,
    /// `max_k |B̃_k| / |B_k|`; below one on the closed disk.
    pub max_tilde_ratio: f64,
}

pub fn check_coefficient_gap(ev: &ChainEvaluation) -> GapReport {
    let mut min_slack = f64::INFINITY;
    let mut max_tilde_ratio = 0.0_f64;
    for (k, s) in ev.stages.iter().enumerate() {
        min_slack = min_slack.min(s.b.norm_sqr() - s.a.norm_sqr() - ev.weights[k]);
        max_tilde_ratio = max_tilde_ratio.max(s.b_tilde.norm() / s.b.norm());
    }
    GapReport { min_slack, max_tilde_ratio }
}
