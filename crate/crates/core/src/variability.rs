//! Variability regions of `f(z)` over all Schur functions meeting the
//! constraints, extremal functions, and the solvability classification of
//! the one-point problem.

use num_complex::Complex64;

use crate::chain::{evaluate_chain, ChainConfig, ChainEvaluation};
use crate::divided::{build_table, node_factor, table_diagonal, EntryStatus, InterpolationData, SchurParameter};
use crate::error::{Error, Result};
use crate::function::{ChainLayer, DiskMap, NestedChain, SchurFunction};
use crate::hyperbolic::{ClosedDisk, Tolerances};

/// Smallest admissible value of `|B_n|^2 - |T|^2 |A_n|^2`.
pub const DENOMINATOR_FLOOR: f64 = 1e-13;

/// Agreement required between the nested and rational forms of `f_ε`.
pub const EXTREMAL_AGREEMENT_TOL: f64 = 1e-11;

/// Trailing parameters below this modulus count as zero.
pub const ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionKind {
    Disk(ClosedDisk),
    Point(Complex64),
    Empty,
}

/// Which case of the classification produced a region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// All divided differences (or parameters) inside the disk.
    InteriorDisk,
    /// The query coincides with an interpolation node.
    AtNode,
    /// A unimodular divided difference forces a unique Blaschke product.
    UniqueBlaschke { degree: usize },
    /// Some divided difference is infinite, or a parameter pattern admits no solution.
    NoSolution,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariabilityRegion {
    pub kind: RegionKind,
    pub provenance: Provenance,
}

impl VariabilityRegion {
    fn disk(center: Complex64, radius: f64, provenance: Provenance) -> Self {
        // zero-radius disks are reported as points
        let kind = if radius > 0.0 {
            RegionKind::Disk(ClosedDisk { center, radius })
        } else {
            RegionKind::Point(center)
        };
        Self { kind, provenance }
    }

    fn point(w: Complex64, provenance: Provenance) -> Self {
        Self { kind: RegionKind::Point(w), provenance }
    }

    fn empty() -> Self {
        Self { kind: RegionKind::Empty, provenance: Provenance::NoSolution }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.kind, RegionKind::Empty)
    }

    /// Distance by which `w` lies outside the region (`+inf` when empty).
    pub fn overhang(&self, w: Complex64) -> f64 {
        match self.kind {
            RegionKind::Disk(d) => d.overhang(w),
            RegionKind::Point(p) => (w - p).norm(),
            RegionKind::Empty => f64::INFINITY,
        }
    }
}

/// Center and radius of the disk described by an interior chain at `z`.
fn chain_disk(ev: &ChainEvaluation) -> Result<(Complex64, f64)> {
    let s = ev.last();
    let t = ev.free_factor();
    let t2 = t.norm_sqr();
    let den = s.b.norm_sqr() - t2 * s.a.norm_sqr();
    if !(den >= DENOMINATOR_FLOOR) {
        return Err(Error::Conditioning { z: ev.z, value: den });
    }
    let center = (s.b.conj() * s.b_tilde - s.a.conj() * s.a_tilde * t2) / den;
    let numerator: f64 = ev
        .node_factors
        .iter()
        .zip(&ev.diagonal)
        .map(|(tk, d)| tk.norm() * (1.0 - d.norm_sqr()))
        .product();
    Ok((center, numerator / den))
}

/// `T_{d_0}(T_{-z_1}(z) T_{d_1}(... T_{-z_j}(z) tail))` for a prefix of the diagonal.
fn nested_prefix(nodes: &[Complex64], diagonal: &[Complex64], tail: Complex64) -> NestedChain {
    let layers = nodes
        .iter()
        .zip(diagonal)
        .map(|(&node, &parameter)| ChainLayer { node, parameter })
        .collect();
    NestedChain::new(layers, SchurFunction::Constant(tail))
}

/// Result of running the divided-difference table on interpolation data.
#[derive(Debug, Clone, PartialEq)]
pub enum MultipointClass {
    /// Every diagonal entry inside the disk; the chain parametrizes all solutions.
    Interior(ChainConfig),
    /// `Δ_{j+1}^j` unimodular with all later diagonal entries zero.
    UniqueBlaschke { degree: usize, function: SchurFunction },
    NoSolution,
}

/// A multi-point problem with its table already reduced.
#[derive(Debug, Clone)]
pub struct MultipointProblem {
    data: InterpolationData,
    class: MultipointClass,
}

impl MultipointProblem {
    pub fn new(data: InterpolationData) -> Result<Self> {
        let table = build_table(&data);
        let class = if !table.is_feasible() {
            MultipointClass::NoSolution
        } else {
            let diag = table_diagonal(&table);
            let values: Vec<Complex64> = diag.iter().map(|e| e.value.finite().unwrap_or(Complex64::new(f64::NAN, 0.0))).collect();
            match diag.iter().position(|e| e.status != EntryStatus::Interior) {
                None => MultipointClass::Interior(ChainConfig::multipoint(
                    data.nodes().to_vec(),
                    values,
                    &data.tolerances(),
                )?),
                Some(j) if diag[j].status == EntryStatus::Boundary && values[j + 1..].iter().all(|v| v.norm() <= ZERO_TOL) => {
                    let chain = nested_prefix(&data.nodes()[..j], &values[..j], values[j]);
                    MultipointClass::UniqueBlaschke { degree: j, function: SchurFunction::NestedChain(chain) }
                }
                Some(_) => MultipointClass::NoSolution,
            }
        };
        Ok(Self { data, class })
    }

    pub fn data(&self) -> &InterpolationData {
        &self.data
    }

    pub fn class(&self) -> &MultipointClass {
        &self.class
    }

    pub fn chain_config(&self) -> Option<&ChainConfig> {
        match &self.class {
            MultipointClass::Interior(cfg) => Some(cfg),
            _ => None,
        }
    }

    pub fn region(&self, z: Complex64) -> Result<VariabilityRegion> {
        if !(z.norm() < 1.0) {
            return Err(Error::Domain(format!("query point {z} is not inside the unit disk")));
        }
        if let MultipointClass::NoSolution = self.class {
            return Ok(VariabilityRegion::empty());
        }
        let sep = self.data.tolerances().separation;
        if let Some(j) = self.data.nodes().iter().position(|&a| node_factor(a, z).norm() <= sep) {
            return Ok(VariabilityRegion::point(self.data.values()[j], Provenance::AtNode));
        }
        match &self.class {
            MultipointClass::Interior(cfg) => {
                let (center, radius) = chain_disk(&evaluate_chain(cfg, z)?)?;
                Ok(VariabilityRegion::disk(center, radius, Provenance::InteriorDisk))
            }
            MultipointClass::UniqueBlaschke { degree, function } => {
                Ok(VariabilityRegion::point(function.eval(z), Provenance::UniqueBlaschke { degree: *degree }))
            }
            MultipointClass::NoSolution => unreachable!(),
        }
    }
}

/// Region of `f(z)` over all Schur functions with `f(z_j) = w_j`.
pub fn multipoint_region(data: &InterpolationData, z: Complex64) -> Result<VariabilityRegion> {
    MultipointProblem::new(data.clone())?.region(z)
}

/// Region of `f(z)` over all Schur functions with `f(z0) = γ_0` and
/// `H^k f(z0) = γ_k`, for parameters strictly inside the disk.
pub fn hyperbolic_region(param: &SchurParameter, z: Complex64, tol: &Tolerances) -> Result<VariabilityRegion> {
    if let Some(index) = param.gamma.iter().position(|g| !tol.is_interior(*g)) {
        return Err(Error::BoundaryParameter { index });
    }
    if !(z.norm() < 1.0) {
        return Err(Error::Domain(format!("query point {z} is not inside the unit disk")));
    }
    if node_factor(param.z0, z).norm() <= tol.separation {
        return Ok(VariabilityRegion::point(param.gamma[0], Provenance::AtNode));
    }
    let cfg = ChainConfig::confluent(param.z0, param.gamma.clone(), tol)?;
    let (center, radius) = chain_disk(&evaluate_chain(&cfg, z)?)?;
    Ok(VariabilityRegion::disk(center, radius, Provenance::InteriorDisk))
}

/// The three cases of the one-point interpolation problem.
#[derive(Debug, Clone, PartialEq)]
pub enum SolvabilityClass {
    InfinitelyMany,
    UniqueBlaschke { degree: usize, function: SchurFunction },
    NoSolution,
}

pub fn schur_solvability(param: &SchurParameter, tol: &Tolerances) -> SolvabilityClass {
    let gamma = &param.gamma;
    let Some(j) = gamma.iter().position(|g| !tol.is_interior(*g)) else {
        return SolvabilityClass::InfinitelyMany;
    };
    if !tol.is_boundary(gamma[j]) || gamma[j + 1..].iter().any(|g| g.norm() > ZERO_TOL) {
        return SolvabilityClass::NoSolution;
    }
    let unimodular = gamma[j] / gamma[j].norm();
    let chain = NestedChain::confluent(param.z0, &gamma[..j], SchurFunction::Constant(unimodular));
    SolvabilityClass::UniqueBlaschke { degree: j, function: SchurFunction::NestedChain(chain) }
}

/// Total version of [`hyperbolic_region`]: boundary parameters give a point
/// or the empty set according to [`schur_solvability`].
pub fn schur_region(param: &SchurParameter, z: Complex64, tol: &Tolerances) -> Result<VariabilityRegion> {
    match schur_solvability(param, tol) {
        SolvabilityClass::InfinitelyMany => hyperbolic_region(param, z, tol),
        SolvabilityClass::UniqueBlaschke { degree, function } => {
            if !(z.norm() < 1.0) {
                return Err(Error::Domain(format!("query point {z} is not inside the unit disk")));
            }
            Ok(VariabilityRegion::point(function.eval(z), Provenance::UniqueBlaschke { degree }))
        }
        SolvabilityClass::NoSolution => Ok(VariabilityRegion::empty()),
    }
}

fn require_interior(config: &ChainConfig) -> Result<()> {
    if let Some(index) = config.diagonal().iter().position(|d| !(d.norm() < 1.0 - crate::hyperbolic::DEFAULT_BOUNDARY_TOL)) {
        return Err(Error::BoundaryParameter { index });
    }
    Ok(())
}

/// The extremal function `f_ε` as a nested Möbius chain.
pub fn extremal_function(config: &ChainConfig, epsilon: Complex64) -> SchurFunction {
    SchurFunction::NestedChain(nested_prefix(&config.nodes(), config.diagonal(), epsilon))
}

/// `f_ε(z)`, computed from the nested form and from the chain ratio
/// `(ε T Ã_n + B̃_n) / (ε T A_n + B_n)`; the two must agree.
pub fn extremal_eval(config: &ChainConfig, epsilon: Complex64, z: Complex64) -> Result<Complex64> {
    require_interior(config)?;
    if !(epsilon.norm() <= 1.0 + crate::hyperbolic::DEFAULT_BOUNDARY_TOL) {
        return Err(Error::Domain(format!("ε = {epsilon} lies outside the closed unit disk")));
    }
    let ev = evaluate_chain(config, z)?;
    let rational = chain_ratio(&ev, epsilon);
    let nested = extremal_function(config, epsilon).eval(z);
    let gap = (rational - nested).norm();
    if !(gap <= EXTREMAL_AGREEMENT_TOL) {
        return Err(Error::Consistency(format!(
            "nested and rational forms of f_ε differ by {gap:.3e} at z = {z}"
        )));
    }
    Ok(rational)
}

fn chain_ratio(ev: &ChainEvaluation, free: Complex64) -> Complex64 {
    let s = ev.last();
    let u = ev.free_factor() * free;
    (u * s.a_tilde + s.b_tilde) / (u * s.a + s.b)
}

/// The interpolant obtained from the free parameter function `fstar`.
pub fn interpolant_eval(config: &ChainConfig, fstar: &dyn DiskMap, z: Complex64) -> Result<Complex64> {
    require_interior(config)?;
    let ev = evaluate_chain(config, z)?;
    Ok(chain_ratio(&ev, fstar.eval(z)))
}

/// Inverts the chain ratio: the value `f*(z)` for which the interpolant takes
/// the value `f_value` at `z`.
pub fn recover_free_parameter(config: &ChainConfig, f_value: Complex64, z: Complex64) -> Result<Complex64> {
    require_interior(config)?;
    let ev = evaluate_chain(config, z)?;
    let s = ev.last();
    let t = ev.free_factor();
    let den = t * (s.a_tilde - s.a * f_value);
    if den.norm() < DENOMINATOR_FLOOR {
        return Err(Error::Conditioning { z, value: den.norm() });
    }
    Ok((s.b * f_value - s.b_tilde) / den)
}

/// Tolerance of the derivative-estimate checks in [`conjugate_to_origin`].
pub const CONJUGATION_CHECK_TOL: f64 = 1e-5;

/// `g = f ∘ T_{z0}`, which carries the same parameters at the origin.
///
/// Both the input parameters at `z0` and the output parameters at `0` are
/// verified with derivative estimates.
pub fn conjugate_to_origin(param: &SchurParameter, f: &SchurFunction) -> Result<SchurFunction> {
    use std::sync::Arc;
    let check = |g: &SchurFunction, at: Complex64, what: &str| -> Result<()> {
        let value = g.eval(at);
        let mut worst = (value - param.gamma[0]).norm();
        if param.n() > 0 {
            let h = crate::divided::hyperbolic_derivatives(Arc::new(g.clone()), at, param.n())?;
            for (est, want) in h.iter().zip(&param.gamma[1..]) {
                worst = worst.max((est - want).norm());
            }
        }
        if worst > CONJUGATION_CHECK_TOL {
            return Err(Error::Verification(format!("{what} parameters differ from γ by {worst:.3e}")));
        }
        Ok(())
    };
    check(f, param.z0, "input")?;
    if param.z0 == Complex64::new(0.0, 0.0) {
        return Ok(f.clone());
    }
    let g = SchurFunction::compose(f.clone(), SchurFunction::automorphism(param.z0));
    check(&g, Complex64::new(0.0, 0.0), "conjugated")?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::Blaschke;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn data(nodes: &[Complex64], values: &[Complex64]) -> InterpolationData {
        InterpolationData::new(nodes.to_vec(), values.to_vec(), tol()).unwrap()
    }

    fn disk(r: VariabilityRegion) -> ClosedDisk {
        match r.kind {
            RegionKind::Disk(d) => d,
            other => panic!("expected a disk, got {other:?}"),
        }
    }

    #[test]
    fn schwarz_lemma_disk() {
        let d = disk(multipoint_region(&data(&[c(0.0, 0.0)], &[c(0.0, 0.0)]), c(0.5, 0.0)).unwrap());
        assert!(d.center.norm() < 1e-15);
        assert!((d.radius - 0.5).abs() < 1e-15);
    }

    #[test]
    fn schwarz_pick_disk() {
        // c = w(1 - t^2) / (1 - w^2 t^2) = 0.5 * 0.75 / 0.9375, ρ = 0.75 * 0.5 / 0.9375
        let d = disk(multipoint_region(&data(&[c(0.0, 0.0)], &[c(0.5, 0.0)]), c(0.5, 0.0)).unwrap());
        assert!((d.center - c(0.4, 0.0)).norm() < 1e-15);
        assert!((d.radius - 0.4).abs() < 1e-15);
    }

    #[test]
    fn two_point_disk() {
        // z1 = w1 = 0, z2 = 0.5, w2 = 0.25, z = -0.5: t = T_{-0.5}(-0.5) = -0.8, q = |w2/z2| = 0.5
        // c = (1 - 0.64) / (1 - 0.16) * (-0.25) = -0.107142857..., ρ = 0.4 * 0.75 / 0.84
        let r = multipoint_region(&data(&[c(0.0, 0.0), c(0.5, 0.0)], &[c(0.0, 0.0), c(0.25, 0.0)]), c(-0.5, 0.0)).unwrap();
        let d = disk(r);
        assert!((d.center - c(-0.36 / 0.84 * 0.25, 0.0)).norm() < 1e-15);
        assert!((d.center.re + 0.10714286).abs() < 1e-8);
        assert!((d.radius - 0.3 / 0.84).abs() < 1e-15);
        assert!((d.radius - 0.35714286).abs() < 1e-8);
    }

    #[test]
    fn infeasible_data_is_empty() {
        let r = multipoint_region(&data(&[c(0.0, 0.0), c(0.5, 0.0)], &[c(0.0, 0.0), c(0.9, 0.0)]), c(0.1, 0.1)).unwrap();
        assert!(r.is_empty());
        assert_eq!(r.provenance, Provenance::NoSolution);
    }

    #[test]
    fn query_at_node_gives_value() {
        let d = data(&[c(0.0, 0.0), c(0.5, 0.0)], &[c(0.0, 0.0), c(0.25, 0.0)]);
        let r = multipoint_region(&d, c(0.5, 0.0)).unwrap();
        assert_eq!(r.kind, RegionKind::Point(c(0.25, 0.0)));
        assert_eq!(r.provenance, Provenance::AtNode);
    }

    #[test]
    fn unimodular_last_difference_gives_point() {
        // data from f(z) = z^2 at three nodes: Δ_3^2 is unimodular
        let nodes = [c(0.1, 0.0), c(-0.3, 0.2), c(0.4, 0.4)];
        let values: Vec<_> = nodes.iter().map(|z| z * z).collect();
        let p = MultipointProblem::new(data(&nodes, &values)).unwrap();
        assert!(matches!(p.class(), MultipointClass::UniqueBlaschke { degree: 2, .. }));
        for z in [c(0.2, -0.5), c(-0.7, 0.1)] {
            match p.region(z).unwrap().kind {
                RegionKind::Point(w) => assert!((w - z * z).norm() < 1e-12),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn unimodular_data_gives_constant() {
        let u = Complex64::from_polar(1.0, 0.7);
        let p = MultipointProblem::new(data(&[c(0.0, 0.0), c(0.5, 0.0), c(0.2, 0.3)], &[u, u, u])).unwrap();
        assert!(matches!(p.class(), MultipointClass::UniqueBlaschke { degree: 0, .. }));
        assert_eq!(p.region(c(-0.4, 0.0)).unwrap().kind, RegionKind::Point(u));
    }

    #[test]
    fn degenerate_point_matches_epsilon_limit_and_tilde_ratio() {
        let b = SchurFunction::Blaschke(Blaschke::new(Complex64::from_polar(1.0, -0.4), vec![c(0.3, 0.1), c(-0.2, 0.5)]));
        let nodes = [c(0.1, 0.0), c(-0.3, 0.2), c(0.4, 0.4)];
        let values: Vec<_> = nodes.iter().map(|&z| b.eval(z)).collect();
        let d = data(&nodes, &values);
        let table = build_table(&d);
        let diag: Vec<_> = table_diagonal(&table).iter().map(|e| e.value.finite().unwrap()).collect();
        assert_eq!(table_diagonal(&table)[2].status, EntryStatus::Boundary);
        let cfg = ChainConfig::multipoint(nodes.to_vec(), diag, &tol()).unwrap();
        let p = MultipointProblem::new(d).unwrap();
        for z in [c(0.6, -0.1), c(-0.5, -0.5)] {
            let RegionKind::Point(w) = p.region(z).unwrap().kind else { panic!() };
            assert!((w - b.eval(z)).norm() < 1e-12);
            // every ε gives the same value once the last difference is unimodular
            for eps in [c(0.0, 0.0), c(0.5, 0.5), c(-1.0, 0.0)] {
                assert!((extremal_function(&cfg, eps).eval(z) - w).norm() < 1e-12);
            }
            let s = *evaluate_chain(&cfg, z).unwrap().last();
            assert!((s.b_tilde / s.b - w).norm() < 1e-12);
        }
    }

    #[test]
    fn rogosinski_cases() {
        let p = SchurParameter::new(c(0.0, 0.0), vec![c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let d = disk(hyperbolic_region(&p, c(0.5, 0.0), &tol()).unwrap());
        assert!(d.center.norm() < 1e-15);
        assert!((d.radius - 0.25).abs() < 1e-15);

        let p = SchurParameter::new(c(0.0, 0.0), vec![c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
        let d = disk(hyperbolic_region(&p, c(0.5, 0.0), &tol()).unwrap());
        assert!((d.center - c(0.2, 0.0)).norm() < 1e-15);
        assert!((d.radius - 0.2).abs() < 1e-15);
    }

    #[test]
    fn hyperbolic_region_rejects_boundary_parameters() {
        let p = SchurParameter::new(c(0.0, 0.0), vec![c(0.5, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(hyperbolic_region(&p, c(0.3, 0.0), &tol()), Err(Error::BoundaryParameter { index: 1 })));
        let r = schur_region(&p, c(0.3, 0.0), &tol()).unwrap();
        match r.kind {
            RegionKind::Point(w) => assert!((w - c(0.8 / 1.15, 0.0)).norm() < 1e-15),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn radius_bound() {
        let p = SchurParameter::new(c(0.2, -0.1), vec![c(0.3, 0.4), c(-0.5, 0.1), c(0.2, 0.2)]).unwrap();
        for z in [c(0.0, 0.0), c(0.5, 0.5), c(-0.8, 0.1)] {
            let d = disk(hyperbolic_region(&p, z, &tol()).unwrap());
            assert!(d.radius <= node_factor(p.z0, z).norm().powi(3) + 1e-12);
        }
    }

    #[test]
    fn solvability_examples() {
        let z0 = c(0.2, 0.1);
        let class = |g: Vec<Complex64>| schur_solvability(&SchurParameter::new(z0, g).unwrap(), &tol());
        match class(vec![c(0.5, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]) {
            SolvabilityClass::UniqueBlaschke { degree, function } => {
                assert_eq!(degree, 1);
                let z = c(-0.3, 0.4);
                let expected = crate::hyperbolic::mobius_raw(c(0.5, 0.0), node_factor(z0, z));
                assert!((function.eval(z) - expected).norm() < 1e-15);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(class(vec![c(0.5, 0.0), c(1.0, 0.0), c(0.2, 0.0), c(0.0, 0.0)]), SolvabilityClass::NoSolution);
        assert_eq!(class(vec![c(0.3, 0.0), c(-0.2, 0.0), c(0.1, 0.0)]), SolvabilityClass::InfinitelyMany);
        assert_eq!(class(vec![c(1.2, 0.0)]), SolvabilityClass::NoSolution);
    }

    #[test]
    fn extremal_examples() {
        let cfg = ChainConfig::confluent(c(0.0, 0.0), vec![c(0.0, 0.0)], &tol()).unwrap();
        let eps = c(0.3, -0.6);
        let z = c(0.4, 0.2);
        assert!((extremal_eval(&cfg, eps, z).unwrap() - eps * z).norm() < 1e-15);

        let cfg = ChainConfig::confluent(c(0.1, 0.2), vec![c(0.3, 0.0), c(-0.1, 0.4), c(0.2, -0.2)], &tol()).unwrap();
        let ev = evaluate_chain(&cfg, z).unwrap();
        let s = ev.last();
        assert!((extremal_eval(&cfg, c(0.0, 0.0), z).unwrap() - s.b_tilde / s.b).norm() < 1e-15);
    }

    #[test]
    fn free_parameter_round_trip() {
        let cfg = ChainConfig::multipoint(
            vec![c(0.1, 0.2), c(-0.5, 0.1), c(0.3, -0.6)],
            vec![c(0.2, 0.3), c(-0.4, 0.1), c(0.6, 0.0)],
            &tol(),
        )
        .unwrap();
        let fstar = SchurFunction::Blaschke(Blaschke::new(c(0.0, 1.0), vec![c(0.2, -0.2), c(0.7, 0.1)]));
        for z in [c(0.6, 0.6), c(-0.2, -0.1)] {
            let f = interpolant_eval(&cfg, &fstar, z).unwrap();
            let back = recover_free_parameter(&cfg, f, z).unwrap();
            assert!((back - fstar.eval(z)).norm() < 1e-9);
        }
        assert!(recover_free_parameter(&cfg, c(0.0, 0.0), c(0.3, -0.6)).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let p = SchurParameter::new(c(0.0, 0.0), vec![c(0.3, 0.0)]).unwrap();
        let f = SchurFunction::Constant(c(0.3, 0.0));
        assert_eq!(conjugate_to_origin(&p, &f).unwrap(), f);

        let z0 = c(0.3, 0.0);
        let gamma = vec![c(0.2, 0.0), c(0.1, 0.0)];
        let p = SchurParameter::new(z0, gamma.clone()).unwrap();
        let cfg = ChainConfig::confluent(z0, gamma, &tol()).unwrap();
        let f = extremal_function(&cfg, c(0.0, 0.8));
        let g = conjugate_to_origin(&p, &f).unwrap();
        assert!((g.eval(c(0.0, 0.0)) - c(0.2, 0.0)).norm() < 1e-15);

        let wrong = SchurParameter::new(z0, vec![c(0.2, 0.0), c(0.3, 0.0)]).unwrap();
        assert!(matches!(conjugate_to_origin(&wrong, &f), Err(Error::Verification(_))));

        let k = SchurFunction::Constant(c(0.4, 0.1));
        let p = SchurParameter::new(c(0.5, 0.2), vec![c(0.4, 0.1), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let g = conjugate_to_origin(&p, &k).unwrap();
        assert_eq!(g.eval(c(0.3, 0.3)), c(0.4, 0.1));
    }
}
