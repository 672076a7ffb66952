//! Evaluatable Schur-class functions with declared structure.

use num_complex::Complex64;

use crate::hyperbolic::{mobius_derivative, mobius_raw};

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// An analytic map of the unit disk that can be evaluated pointwise.
pub trait DiskMap: Send + Sync {
    fn eval(&self, z: Complex64) -> Complex64;

    /// Exact derivative, when the structure of the map provides one.
    fn derivative(&self, _z: Complex64) -> Option<Complex64> {
        None
    }
}

impl<T: DiskMap + ?Sized> DiskMap for &T {
    fn eval(&self, z: Complex64) -> Complex64 {
        (**self).eval(z)
    }

    fn derivative(&self, z: Complex64) -> Option<Complex64> {
        (**self).derivative(z)
    }
}

impl<T: DiskMap + ?Sized> DiskMap for std::sync::Arc<T> {
    fn eval(&self, z: Complex64) -> Complex64 {
        (**self).eval(z)
    }

    fn derivative(&self, z: Complex64) -> Option<Complex64> {
        (**self).derivative(z)
    }
}

impl<T: DiskMap + ?Sized> DiskMap for Box<T> {
    fn eval(&self, z: Complex64) -> Complex64 {
        (**self).eval(z)
    }

    fn derivative(&self, z: Complex64) -> Option<Complex64> {
        (**self).derivative(z)
    }
}

/// Finite Blaschke product `rotation * prod (z - a) / (1 - conj(a) z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Blaschke {
    /// Unimodular factor `e^{iθ}`.
    pub rotation: Complex64,
    pub zeros: Vec<Complex64>,
}

impl Blaschke {
    pub fn new(rotation: Complex64, zeros: Vec<Complex64>) -> Self {
        Self { rotation, zeros }
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    fn value_and_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        // product rule, factor by factor; stays finite at the zeros
        let mut v = self.rotation;
        let mut dv = ZERO;
        for &a in &self.zeros {
            let den = ONE - a.conj() * z;
            let phi = (z - a) / den;
            let dphi = Complex64::new(1.0 - a.norm_sqr(), 0.0) / (den * den);
            dv = dv * phi + v * dphi;
            v *= phi;
        }
        (v, dv)
    }
}

/// One layer `T_parameter(T_{-node}(z) * inner)` of a nested Möbius chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainLayer {
    pub node: Complex64,
    pub parameter: Complex64,
}

/// `T_{p_1}(T_{-a_1}(z) T_{p_2}(T_{-a_2}(z) ... T_{p_m}(T_{-a_m}(z) tail(z))))`.
#[derive(Debug, Clone, PartialEq)]
pub struct NestedChain {
    pub layers: Vec<ChainLayer>,
    pub tail: Box<SchurFunction>,
}

impl NestedChain {
    pub fn new(layers: Vec<ChainLayer>, tail: SchurFunction) -> Self {
        Self { layers, tail: Box::new(tail) }
    }

    /// Every node equal to `z0`, parameters `gamma` in order.
    pub fn confluent(z0: Complex64, gamma: &[Complex64], tail: SchurFunction) -> Self {
        let layers = gamma.iter().map(|&parameter| ChainLayer { node: z0, parameter }).collect();
        Self::new(layers, tail)
    }

    fn value_and_derivative(&self, z: Complex64) -> (Complex64, Option<Complex64>) {
        let mut v = self.tail.eval(z);
        let mut dv = self.tail.derivative(z);
        for layer in self.layers.iter().rev() {
            let t = mobius_raw(-layer.node, z);
            let u = t * v;
            let next = mobius_raw(layer.parameter, u);
            dv = dv.map(|d| {
                let du = mobius_derivative(-layer.node, z) * v + t * d;
                let den = ONE + layer.parameter.conj() * u;
                Complex64::new(1.0 - layer.parameter.norm_sqr(), 0.0) / (den * den) * du
            });
            v = next;
        }
        (v, dv)
    }
}

/// A Schur-class function with known structure.
#[derive(Debug, Clone, PartialEq)]
pub enum SchurFunction {
    Blaschke(Blaschke),
    /// `scale * B(z)` with `0 < scale <= 1`.
    ScaledBlaschke { scale: f64, blaschke: Blaschke },
    Constant(Complex64),
    /// Polynomial with coefficients in increasing degree; Schur when the
    /// coefficient moduli sum to at most one.
    Polynomial(Vec<Complex64>),
    NestedChain(NestedChain),
    /// `outer(inner(z))`.
    Compose { outer: Box<SchurFunction>, inner: Box<SchurFunction> },
}

impl SchurFunction {
    pub fn identity() -> Self {
        SchurFunction::Blaschke(Blaschke::new(ONE, vec![ZERO]))
    }

    /// The automorphism `T_a` as a degree-one Blaschke product.
    pub fn automorphism(a: Complex64) -> Self {
        SchurFunction::Blaschke(Blaschke::new(ONE, vec![-a]))
    }

    pub fn compose(outer: SchurFunction, inner: SchurFunction) -> Self {
        SchurFunction::Compose { outer: Box::new(outer), inner: Box::new(inner) }
    }
}

impl DiskMap for SchurFunction {
    fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            SchurFunction::Blaschke(b) => b.value_and_derivative(z).0,
            SchurFunction::ScaledBlaschke { scale, blaschke } => blaschke.value_and_derivative(z).0 * *scale,
            SchurFunction::Constant(c) => *c,
            SchurFunction::Polynomial(coeffs) => coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c),
            SchurFunction::NestedChain(chain) => chain.value_and_derivative(z).0,
            SchurFunction::Compose { outer, inner } => outer.eval(inner.eval(z)),
        }
    }

    fn derivative(&self, z: Complex64) -> Option<Complex64> {
        match self {
            SchurFunction::Blaschke(b) => Some(b.value_and_derivative(z).1),
            SchurFunction::ScaledBlaschke { scale, blaschke } => Some(blaschke.value_and_derivative(z).1 * *scale),
            SchurFunction::Constant(_) => Some(ZERO),
            SchurFunction::Polynomial(coeffs) => Some(
                coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .rev()
                    .fold(ZERO, |acc, (k, &c)| acc * z + c * k as f64),
            ),
            SchurFunction::NestedChain(chain) => chain.value_and_derivative(z).1,
            SchurFunction::Compose { outer, inner } => {
                let w = inner.eval(z);
                Some(outer.derivative(w)? * inner.derivative(z)?)
            }
        }
    }
}
