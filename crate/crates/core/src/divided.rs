//! Hyperbolic divided differences.
//!
//! Two routes to the same numbers: [`build_table`] runs the Schur-algorithm
//! recursion on interpolation data `z_j -> w_j`, while [`delta_operator`] and
//! [`iterated_divided_difference`] apply the operator
//! `Δ_{z0} f(z) = [f(z), f(z0)] / [z, z0]` to an actual function. The
//! confluent limit of the operator gives the higher-order hyperbolic
//! derivatives, estimated by [`hyperbolic_derivative_estimate`].

use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::DiskMap;
use crate::hyperbolic::{bracket_raw, mobius_raw, ExtendedComplex, Tolerances};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Largest order accepted by [`hyperbolic_derivative_estimate`].
pub const MAX_DERIVATIVE_ORDER: usize = 8;

/// Base step of the confluent-limit estimator, relative to `1 - |z0|`.
pub const DEFAULT_STEP_SCALE: f64 = 0.1;

/// Successive Richardson extrapolants further apart than this are reported
/// as non-convergence.
pub const LIMIT_SPREAD_TOL: f64 = 1e-5;

/// Nodes `z_1..z_{n+1}` in the open disk and target values in the closed disk.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationData {
    nodes: Vec<Complex64>,
    values: Vec<Complex64>,
    tolerances: Tolerances,
}

impl InterpolationData {
    pub fn new(nodes: Vec<Complex64>, values: Vec<Complex64>, tolerances: Tolerances) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidData("at least one interpolation node is required".into()));
        }
        if nodes.len() != values.len() {
            return Err(Error::InvalidData(format!(
                "{} nodes but {} values",
                nodes.len(),
                values.len()
            )));
        }
        for (j, z) in nodes.iter().enumerate() {
            if !z.is_finite() || z.norm() >= 1.0 {
                return Err(Error::InvalidData(format!("node {} = {z} is not inside the unit disk", j + 1)));
            }
        }
        for (j, w) in values.iter().enumerate() {
            if !w.is_finite() || w.norm() > 1.0 + tolerances.boundary {
                return Err(Error::InvalidData(format!("value {} = {w} lies outside the closed unit disk", j + 1)));
            }
        }
        for i in 0..nodes.len() {
            for j in 0..i {
                let d = bracket_raw(nodes[i], nodes[j]).norm();
                if d <= tolerances.separation {
                    return Err(Error::InvalidData(format!(
                        "nodes {} and {} coincide (pseudo-hyperbolic distance {d:.3e})",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(Self { nodes, values, tolerances })
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tolerances
    }

    /// Number of constraints minus one.
    pub fn n(&self) -> usize {
        self.nodes.len() - 1
    }
}

/// Base point `z0` with prescribed values `γ_0 = f(z0)` and `γ_k = H^k f(z0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchurParameter {
    pub z0: Complex64,
    pub gamma: Vec<Complex64>,
}

impl SchurParameter {
    pub fn new(z0: Complex64, gamma: Vec<Complex64>) -> Result<Self> {
        if !z0.is_finite() || z0.norm() >= 1.0 {
            return Err(Error::InvalidData(format!("base point {z0} is not inside the unit disk")));
        }
        if gamma.is_empty() {
            return Err(Error::InvalidData("the parameter list must not be empty".into()));
        }
        if let Some(g) = gamma.iter().find(|g| !g.is_finite()) {
            return Err(Error::InvalidData(format!("non-finite parameter {g}")));
        }
        Ok(Self { z0, gamma })
    }

    pub fn n(&self) -> usize {
        self.gamma.len() - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryStatus {
    Interior,
    Boundary,
    Infinite,
}

impl EntryStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            EntryStatus::Interior => "interior",
            EntryStatus::Boundary => "boundary",
            EntryStatus::Infinite => "infinite",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableEntry {
    pub value: ExtendedComplex,
    pub status: EntryStatus,
    /// Set when the entry was forced to zero because both inputs were the
    /// same unimodular number.
    pub boundary_exception: bool,
}

impl TableEntry {
    fn classify(v: Complex64, tol: &Tolerances) -> Self {
        let status = if tol.is_interior(v) { EntryStatus::Interior } else { EntryStatus::Boundary };
        Self { value: ExtendedComplex::Finite(v), status, boundary_exception: false }
    }

    fn infinite() -> Self {
        Self { value: ExtendedComplex::Infinity, status: EntryStatus::Infinite, boundary_exception: false }
    }
}

/// Triangular array `Δ_j^k`, `0 <= k < j <= n + 1`.
///
/// Entries that depend on an infinite entry are left unset.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceTable {
    nodes: Vec<Complex64>,
    /// `columns[k][i]` holds `Δ_{k+1+i}^k`.
    columns: Vec<Vec<Option<TableEntry>>>,
    feasible: bool,
}

impl DifferenceTable {
    pub fn n(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    /// `Δ_j^k` with the 1-based row index `j` used in the recursion.
    pub fn get(&self, j: usize, k: usize) -> Option<&TableEntry> {
        if k >= self.columns.len() || j <= k || j > self.nodes.len() {
            return None;
        }
        self.columns[k][j - k - 1].as_ref()
    }

    pub fn column(&self, k: usize) -> &[Option<TableEntry>] {
        &self.columns[k]
    }

    /// False when some entry is infinite: no Schur function fits the data.
    pub fn is_feasible(&self) -> bool {
        self.feasible
    }
}

/// Runs the divided-difference recursion column by column.
pub fn build_table(data: &InterpolationData) -> DifferenceTable {
    let tol = data.tolerances();
    let nodes = data.nodes().to_vec();
    let size = nodes.len();
    let mut columns: Vec<Vec<Option<TableEntry>>> = Vec::with_capacity(size);
    columns.push(data.values().iter().map(|&w| Some(TableEntry::classify(w, &tol))).collect());
    let mut feasible = true;

    for k in 1..size {
        let prev = &columns[k - 1];
        // pivot Δ_k^{k-1} sits first in the previous column
        let pivot = prev[0];
        let mut column = Vec::with_capacity(size - k);
        for j in (k + 1)..=size {
            let current = prev[j - k];
            let entry = match (current, pivot) {
                (Some(a), Some(b)) => divided_entry(a, b, nodes[j - 1], nodes[k - 1], &tol),
                _ => None,
            };
            if entry.map_or(false, |e| e.status == EntryStatus::Infinite) {
                feasible = false;
            }
            column.push(entry);
        }
        columns.push(column);
    }
    if columns[0].iter().flatten().any(|e| e.status == EntryStatus::Infinite) {
        feasible = false;
    }
    DifferenceTable { nodes, columns, feasible }
}

fn divided_entry(
    current: TableEntry,
    pivot: TableEntry,
    zj: Complex64,
    zk: Complex64,
    tol: &Tolerances,
) -> Option<TableEntry> {
    let (a, b) = match (current.value, pivot.value) {
        (ExtendedComplex::Finite(a), ExtendedComplex::Finite(b)) => (a, b),
        _ => return None,
    };
    if current.status == EntryStatus::Boundary
        && pivot.status == EntryStatus::Boundary
        && (a - b).norm() <= tol.boundary
    {
        return Some(TableEntry {
            value: ExtendedComplex::Finite(ZERO),
            status: EntryStatus::Interior,
            boundary_exception: true,
        });
    }
    let num = match bracket_raw(a, b) {
        ExtendedComplex::Finite(v) => v,
        ExtendedComplex::Infinity => return Some(TableEntry::infinite()),
    };
    let den = (zj - zk) / (ONE - zk.conj() * zj);
    let q = num / den;
    let m = q.norm();
    if !m.is_finite() || m > 1.0 + tol.boundary {
        Some(TableEntry::infinite())
    } else if m >= 1.0 - tol.boundary {
        Some(TableEntry {
            value: ExtendedComplex::Finite(q / m),
            status: EntryStatus::Boundary,
            boundary_exception: false,
        })
    } else {
        Some(TableEntry::classify(q, tol))
    }
}

/// `(Δ_1^0, Δ_2^1, ..., Δ_{n+1}^n)`; unset entries are reported as infinite.
pub fn table_diagonal(table: &DifferenceTable) -> Vec<TableEntry> {
    table
        .columns
        .iter()
        .map(|col| col.first().copied().flatten().unwrap_or_else(TableEntry::infinite))
        .collect()
}

/// Estimates `lim_{z -> z0} q(z)` for `q` analytic in a punctured
/// neighbourhood with a removable singularity at `z0`.
///
/// Averages over the four points `z0 ± h`, `z0 ± ih`, which cancels every
/// Laurent term except powers divisible by four, then eliminates the `h^4`
/// and `h^8` terms by Richardson extrapolation over `h, h/2, h/4`.
pub fn estimate_limit<F>(q: F, z0: Complex64, h: f64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Complex64,
{
    let star = |r: f64| {
        let dirs = [Complex64::new(r, 0.0), Complex64::new(-r, 0.0), Complex64::new(0.0, r), Complex64::new(0.0, -r)];
        dirs.iter().map(|&d| q(z0 + d)).sum::<Complex64>() / 4.0
    };
    let a0 = star(h);
    let a1 = star(h / 2.0);
    let a2 = star(h / 4.0);
    let b1 = (a1 * 16.0 - a0) / 15.0;
    let b2 = (a2 * 16.0 - a1) / 15.0;
    let c = (b2 * 256.0 - b1) / 255.0;
    let spread = (c - b2).norm();
    if !c.is_finite() || spread > LIMIT_SPREAD_TOL {
        return Err(Error::NonConvergence { at: z0, spread });
    }
    Ok(c)
}

/// The function `Δ_{z0} f`.
pub struct DeltaQuotient {
    f: Arc<dyn DiskMap>,
    base: Complex64,
    base_value: Complex64,
    degenerate: bool,
    step_scale: f64,
    at_base: OnceLock<Result<Complex64>>,
}

impl std::fmt::Debug for DeltaQuotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DeltaQuotient")
            .field("base", &self.base)
            .field("base_value", &self.base_value)
            .field("degenerate", &self.degenerate)
            .finish()
    }
}

impl DeltaQuotient {
    pub fn base(&self) -> Complex64 {
        self.base
    }

    /// `f(z0)`.
    pub fn base_value(&self) -> Complex64 {
        self.base_value
    }

    /// True when `|f(z0)| = 1`, so `f` is a unimodular constant and the
    /// quotient is identically zero.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    fn quotient(&self, z: Complex64) -> Complex64 {
        let w = self.f.eval(z);
        let num = (w - self.base_value) / (ONE - self.base_value.conj() * w);
        num * (ONE - self.base.conj() * z) / (z - self.base)
    }

    /// `(1 - |z0|^2) f'(z0) / (1 - |f(z0)|^2)`, from the exact derivative when
    /// available and from the confluent limit otherwise.
    pub fn value_at_base(&self) -> Result<Complex64> {
        if self.degenerate {
            return Ok(ZERO);
        }
        self.at_base
            .get_or_init(|| match self.f.derivative(self.base) {
                Some(d) => Ok(d * (1.0 - self.base.norm_sqr()) / (1.0 - self.base_value.norm_sqr())),
                None => {
                    let h = self.step_scale * (1.0 - self.base.norm());
                    estimate_limit(|z| self.quotient(z), self.base, h)
                }
            })
            .clone()
    }
}

impl DiskMap for DeltaQuotient {
    fn eval(&self, z: Complex64) -> Complex64 {
        if self.degenerate {
            return ZERO;
        }
        if (z - self.base).norm() <= f64::EPSILON * (1.0 + self.base.norm()) {
            return self.value_at_base().unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        }
        self.quotient(z)
    }
}

/// Builds `Δ_{z0} f`.
pub fn delta_operator(f: Arc<dyn DiskMap>, z0: Complex64) -> Result<DeltaQuotient> {
    delta_operator_with_step(f, z0, DEFAULT_STEP_SCALE)
}

pub fn delta_operator_with_step(f: Arc<dyn DiskMap>, z0: Complex64, step_scale: f64) -> Result<DeltaQuotient> {
    if !z0.is_finite() || z0.norm() >= 1.0 {
        return Err(Error::Domain(format!("base point {z0} is not inside the unit disk")));
    }
    let base_value = f.eval(z0);
    let m = base_value.norm();
    if !m.is_finite() || m > 1.0 + crate::hyperbolic::DEFAULT_BOUNDARY_TOL {
        return Err(Error::Domain(format!("f({z0}) = {base_value} lies outside the closed unit disk")));
    }
    Ok(DeltaQuotient {
        f,
        base: z0,
        base_value,
        degenerate: m >= 1.0 - crate::hyperbolic::DEFAULT_BOUNDARY_TOL,
        step_scale,
        at_base: OnceLock::new(),
    })
}

/// Estimates `H^order f(z0)` by iterating the operator at `z0`.
pub fn hyperbolic_derivative_estimate(f: Arc<dyn DiskMap>, z0: Complex64, order: usize) -> Result<Complex64> {
    hyperbolic_derivatives(f, z0, order).map(|v| v[order - 1])
}

/// `(H^1 f(z0), ..., H^order f(z0))` from a single chain of quotients.
pub fn hyperbolic_derivatives(f: Arc<dyn DiskMap>, z0: Complex64, order: usize) -> Result<Vec<Complex64>> {
    if order == 0 || order > MAX_DERIVATIVE_ORDER {
        return Err(Error::Domain(format!("order must be in 1..={MAX_DERIVATIVE_ORDER}, got {order}")));
    }
    let mut g = f;
    let mut out = Vec::with_capacity(order);
    for _ in 0..order {
        let q = delta_operator(g, z0)?;
        out.push(q.value_at_base()?);
        g = Arc::new(q);
    }
    Ok(out)
}

/// `Δ^j f(z; z_j, ..., z_1)`: the operator applied at `params[0]`, then
/// `params[1]`, and so on, evaluated at `z`.
pub fn iterated_divided_difference(f: Arc<dyn DiskMap>, z: Complex64, params: &[Complex64]) -> Result<ExtendedComplex> {
    let mut levels: Vec<Arc<dyn DiskMap>> = vec![f];
    for (i, &p) in params.iter().enumerate() {
        if params[..i].iter().any(|&q| (q - p).norm() <= crate::hyperbolic::DEFAULT_SEPARATION_TOL) {
            return Err(Error::InvalidData(format!("parameter {p} is repeated")));
        }
        let prev = levels.last().expect("non-empty").clone();
        let w = prev.eval(p);
        if !w.is_finite() || w.norm() > 1.0 + crate::hyperbolic::DEFAULT_BOUNDARY_TOL {
            return Ok(ExtendedComplex::Infinity);
        }
        levels.push(Arc::new(delta_operator(prev, p)?));
    }
    if params.iter().any(|&p| (p - z).norm() <= crate::hyperbolic::DEFAULT_SEPARATION_TOL) {
        return Err(Error::InvalidData(format!("evaluation point {z} coincides with a parameter")));
    }
    for level in &levels {
        let v = level.eval(z);
        if !v.is_finite() || v.norm() > 1.0 + crate::hyperbolic::DEFAULT_BOUNDARY_TOL {
            return Ok(ExtendedComplex::Infinity);
        }
    }
    Ok(ExtendedComplex::Finite(levels.last().expect("non-empty").eval(z)))
}

/// `T_{-a}(z)`, the factor that vanishes at the node `a`.
#[inline]
pub(crate) fn node_factor(a: Complex64, z: Complex64) -> Complex64 {
    mobius_raw(-a, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{Blaschke, NestedChain, SchurFunction};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn data(nodes: &[(f64, f64)], values: &[(f64, f64)]) -> InterpolationData {
        InterpolationData::new(
            nodes.iter().map(|&(a, b)| c(a, b)).collect(),
            values.iter().map(|&(a, b)| c(a, b)).collect(),
            Tolerances::default(),
        )
        .unwrap()
    }

    fn in_disk(rng: &mut impl Rng, r: f64) -> Complex64 {
        Complex64::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen::<f64>() * std::f64::consts::TAU)
    }

    fn random_blaschke(rng: &mut impl Rng, degree: usize) -> SchurFunction {
        let zeros = (0..degree).map(|_| in_disk(rng, 0.9)).collect();
        SchurFunction::Blaschke(Blaschke::new(Complex64::from_polar(1.0, rng.gen::<f64>() * 6.0), zeros))
    }

    #[test]
    fn table_two_point_interior() {
        let t = build_table(&data(&[(0.0, 0.0), (0.5, 0.0)], &[(0.0, 0.0), (0.25, 0.0)]));
        assert!(t.is_feasible());
        let d = t.get(2, 1).unwrap();
        assert_eq!(d.status, EntryStatus::Interior);
        assert!((d.value.finite().unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        let diag: Vec<_> = table_diagonal(&t).iter().map(|e| e.value.finite().unwrap()).collect();
        assert_eq!(diag.len(), 2);
        assert_eq!(diag[0], c(0.0, 0.0));
        assert!((diag[1] - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn table_boundary_exception() {
        let t = build_table(&data(&[(0.0, 0.0), (0.5, 0.0)], &[(1.0, 0.0), (1.0, 0.0)]));
        let d = t.get(2, 1).unwrap();
        assert!(d.boundary_exception);
        assert_eq!(d.value, ExtendedComplex::Finite(c(0.0, 0.0)));
        assert!(t.is_feasible());
        assert_eq!(t.get(1, 0).unwrap().status, EntryStatus::Boundary);
    }

    #[test]
    fn table_infinite_entry() {
        let t = build_table(&data(&[(0.0, 0.0), (0.5, 0.0)], &[(0.0, 0.0), (0.9, 0.0)]));
        assert!(!t.is_feasible());
        assert_eq!(t.get(2, 1).unwrap().status, EntryStatus::Infinite);
        assert!(table_diagonal(&t)[1].value.is_infinite());
    }

    #[test]
    fn infinite_entries_leave_later_columns_unset() {
        // Δ_3^1 blows up while Δ_2^1 stays interior
        let t = build_table(&data(&[(0.0, 0.0), (0.5, 0.0), (0.1, 0.0)], &[(0.0, 0.0), (0.2, 0.0), (0.5, 0.0)]));
        assert_eq!(t.get(2, 1).unwrap().status, EntryStatus::Interior);
        assert_eq!(t.get(3, 1).unwrap().status, EntryStatus::Infinite);
        assert!(t.get(3, 2).is_none());
        assert!(!t.is_feasible());
        assert!(table_diagonal(&t)[2].value.is_infinite());
    }

    #[test]
    fn tie_is_boundary() {
        // |[w2, w1]| = |[z2, z1]| exactly: f(z) = z
        let t = build_table(&data(&[(0.0, 0.0), (0.5, 0.0)], &[(0.0, 0.0), (0.5, 0.0)]));
        let e = t.get(2, 1).unwrap();
        assert_eq!(e.status, EntryStatus::Boundary);
        assert!(t.is_feasible());
    }

    #[test]
    fn single_node_table() {
        let t = build_table(&data(&[(0.3, 0.0)], &[(0.1, 0.2)]));
        assert_eq!(t.n(), 0);
        let d = table_diagonal(&t);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].value, ExtendedComplex::Finite(c(0.1, 0.2)));
    }

    #[test]
    fn coincident_nodes_rejected() {
        let r = InterpolationData::new(vec![c(0.2, 0.0), c(0.2, 0.0)], vec![c(0.0, 0.0); 2], Tolerances::default());
        assert!(matches!(r, Err(Error::InvalidData(_))));
        let r = InterpolationData::new(vec![c(0.2, 0.0)], vec![c(1.5, 0.0)], Tolerances::default());
        assert!(r.is_err());
    }

    #[test]
    fn delta_of_square_is_identity() {
        let f: Arc<dyn DiskMap> = Arc::new(SchurFunction::Polynomial(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]));
        let g = delta_operator(f, c(0.0, 0.0)).unwrap();
        for z in [c(0.3, 0.1), c(-0.5, 0.2), c(0.0, 0.0)] {
            assert!((g.eval(z) - z).norm() < 1e-14);
        }
    }

    #[test]
    fn delta_of_constant_and_identity() {
        let k: Arc<dyn DiskMap> = Arc::new(SchurFunction::Constant(c(0.3, -0.4)));
        let g = delta_operator(k, c(0.2, 0.1)).unwrap();
        assert_eq!(g.eval(c(0.5, 0.0)), c(0.0, 0.0));
        assert_eq!(g.value_at_base().unwrap(), c(0.0, 0.0));

        let id: Arc<dyn DiskMap> = Arc::new(SchurFunction::identity());
        let a = c(0.4, -0.3);
        let g = delta_operator(id, a).unwrap();
        assert!((g.eval(c(-0.2, 0.6)) - c(1.0, 0.0)).norm() < 1e-14);
        assert!((g.eval(a) - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn unimodular_base_value_is_degenerate() {
        let k: Arc<dyn DiskMap> = Arc::new(SchurFunction::Constant(c(0.0, 1.0)));
        let g = delta_operator(k, c(0.2, 0.0)).unwrap();
        assert!(g.is_degenerate());
        assert_eq!(g.eval(c(0.7, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn derivative_estimates_of_square() {
        let f: Arc<dyn DiskMap> = Arc::new(SchurFunction::Polynomial(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]));
        let h = hyperbolic_derivatives(f, c(0.0, 0.0), 2).unwrap();
        assert!(h[0].norm() < 1e-12);
        assert!((h[1] - c(1.0, 0.0)).norm() < 1e-9);
        let k: Arc<dyn DiskMap> = Arc::new(SchurFunction::Constant(c(0.5, 0.0)));
        for order in 1..=3 {
            assert!(hyperbolic_derivative_estimate(k.clone(), c(0.1, 0.2), order).unwrap().norm() < 1e-12);
        }
        let f: Arc<dyn DiskMap> = Arc::new(SchurFunction::Constant(c(0.5, 0.0)));
        assert!(hyperbolic_derivative_estimate(f, c(0.0, 0.0), 9).is_err());
    }

    #[test]
    fn derivative_estimates_recover_chain_parameters() {
        let gamma = [c(0.3, 0.0), c(-0.2, 0.0), c(0.1, 0.1)];
        let z0 = c(0.25, 0.0);
        let f = NestedChain::confluent(z0, &gamma, SchurFunction::Constant(c(0.0, 0.5)));
        let f: Arc<dyn DiskMap> = Arc::new(SchurFunction::NestedChain(f));
        assert!((f.eval(z0) - gamma[0]).norm() < 1e-15);
        let h = hyperbolic_derivatives(f, z0, 2).unwrap();
        for (k, hk) in h.iter().enumerate() {
            assert!((hk - gamma[k + 1]).norm() < 1e-6, "order {}: {hk}", k + 1);
        }
    }

    #[test]
    fn first_order_estimate_matches_symbolic_derivative() {
        // numeric route: hide the exact derivative behind a wrapper
        struct Opaque(SchurFunction);
        impl DiskMap for Opaque {
            fn eval(&self, z: Complex64) -> Complex64 {
                self.0.eval(z)
            }
        }
        let p = SchurFunction::Polynomial(vec![c(0.1, 0.05), c(0.3, -0.1), c(0.2, 0.0), c(0.0, 0.15)]);
        for z0 in [c(0.0, 0.0), c(0.4, -0.2), c(-0.6, 0.5)] {
            let w = p.eval(z0);
            let expected = p.derivative(z0).unwrap() * (1.0 - z0.norm_sqr()) / (1.0 - w.norm_sqr());
            let got = hyperbolic_derivative_estimate(Arc::new(Opaque(p.clone())), z0, 1).unwrap();
            assert!((got - expected).norm() < 1e-8, "{got} vs {expected}");
        }
    }

    #[test]
    fn iterated_difference_examples() {
        let id: Arc<dyn DiskMap> = Arc::new(SchurFunction::identity());
        let v = iterated_divided_difference(id, c(0.1, 0.7), &[c(-0.3, 0.2)]).unwrap();
        assert!((v.finite().unwrap() - c(1.0, 0.0)).norm() < 1e-14);

        let b: Arc<dyn DiskMap> = Arc::new(SchurFunction::Blaschke(Blaschke::new(
            Complex64::from_polar(1.0, 0.3),
            vec![c(0.0, 0.0), c(0.5, 0.0)],
        )));
        let mut first = None;
        for z in [c(0.2, 0.3), c(-0.6, 0.1), c(0.0, -0.8)] {
            let v = iterated_divided_difference(b.clone(), z, &[c(0.0, 0.0), c(0.5, 0.0)]).unwrap().finite().unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-12);
            let f0 = *first.get_or_insert(v);
            assert!((v - f0).norm() < 1e-12);
        }
    }

    #[test]
    fn table_matches_operator_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..40 {
            let f = random_blaschke(&mut rng, 4);
            let nodes: Vec<Complex64> = (0..4).map(|_| in_disk(&mut rng, 0.9)).collect();
            let values: Vec<Complex64> = nodes.iter().map(|&z| f.eval(z)).collect();
            let table = build_table(&InterpolationData::new(nodes.clone(), values, Tolerances::default()).unwrap());
            let f: Arc<dyn DiskMap> = Arc::new(f);
            for k in 0..4 {
                for j in (k + 1)..=4 {
                    let entry = table.get(j, k).unwrap();
                    if entry.status != EntryStatus::Interior {
                        continue;
                    }
                    let direct = iterated_divided_difference(f.clone(), nodes[j - 1], &nodes[..k]).unwrap();
                    let err = (direct.finite().unwrap() - entry.value.finite().unwrap()).norm();
                    assert!(err < 1e-10, "Δ_{j}^{k}: {err:e}");
                }
            }
        }
    }

    #[test]
    fn chain_rule_for_quotients() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..50 {
            let f = random_blaschke(&mut rng, 3);
            let g = SchurFunction::ScaledBlaschke {
                scale: 0.9,
                blaschke: Blaschke::new(c(1.0, 0.0), vec![in_disk(&mut rng, 0.8), in_disk(&mut rng, 0.8)]),
            };
            let z0 = in_disk(&mut rng, 0.8);
            let z = in_disk(&mut rng, 0.9);
            let fg: Arc<dyn DiskMap> = Arc::new(SchurFunction::compose(f.clone(), g.clone()));
            let lhs = delta_operator(fg, z0).unwrap().eval(z);
            let df = delta_operator(Arc::new(f), g.eval(z0)).unwrap();
            let dg = delta_operator(Arc::new(g.clone()), z0).unwrap();
            let rhs = df.eval(g.eval(z)) * dg.eval(z);
            assert!((lhs - rhs).norm() < 1e-9);
        }
    }

    #[test]
    fn quotient_stays_in_disk() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let f: Arc<dyn DiskMap> = Arc::new(random_blaschke(&mut rng, 5));
        let g = delta_operator(f, c(0.3, -0.4)).unwrap();
        for _ in 0..1000 {
            let z = in_disk(&mut rng, 1.0);
            assert!(g.eval(z).norm() <= 1.0 + 1e-10);
        }
    }
}
