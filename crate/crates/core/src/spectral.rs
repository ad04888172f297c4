//! Eigendecomposition of Δ, graph Fourier analysis and Paley-Wiener spaces.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphId, MeasureMode, Signal};
use crate::linalg::{symmetric_eigen, Matrix};
use crate::scalar::Real;

/// Eigenvalues (ascending) and an orthonormal eigenbasis of Δ.
///
/// The basis is stored in Euclidean coordinates `u_j = sqrt(m) e_j`, where
/// `m` is the vertex measure, so that it is an orthogonal matrix in both
/// measure modes.
#[derive(Debug, Clone)]
pub struct Spectrum<T> {
    eigenvalues: Vec<T>,
    basis: Matrix<T>,
    scale: Vec<T>,
    graph: GraphId,
    mode: MeasureMode,
}

/// Full spectrum of the graph Laplacian in the graph's measure mode.
pub fn eigendecompose<T: Real>(graph: &Graph<T>) -> Result<Spectrum<T>> {
    let lap = graph.laplacian_matrix()?;
    let eig = symmetric_eigen(&lap.symmetric)?;
    let mut eigenvalues = eig.values;
    let top = eigenvalues
        .last()
        .copied()
        .unwrap_or_else(T::zero)
        .max(T::zero());
    let floor = -T::tol(1e-10) * top;
    if let Some(&low) = eigenvalues.first() {
        if low < floor {
            return Err(Error::NumericalFailure(format!(
                "negative eigenvalue {low:e} of a positive semidefinite operator"
            )));
        }
    }
    let snap = T::epsilon() * T::lit(64.0) * top.max(T::one());
    for lambda in &mut eigenvalues {
        if *lambda < snap {
            *lambda = T::zero();
        }
    }
    Ok(Spectrum {
        eigenvalues,
        basis: eig.vectors,
        scale: lap.scale,
        graph: graph.id(),
        mode: graph.mode(),
    })
}

impl<T: Real> Spectrum<T> {
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    pub fn mode(&self) -> MeasureMode {
        self.mode
    }

    pub fn lambda_max(&self) -> T {
        self.eigenvalues.last().copied().unwrap_or_else(T::zero)
    }

    /// Tolerance for every `lambda <= omega` style comparison.
    pub fn tol_lambda(&self) -> T {
        T::tol(1e-9) * T::one().max(self.lambda_max())
    }

    /// Euclidean-coordinate eigenbasis; column `j` pairs with `eigenvalues()[j]`.
    pub fn orthogonal_basis(&self) -> &Matrix<T> {
        &self.basis
    }

    /// `sqrt` of the vertex measure.
    pub fn scale(&self) -> &[T] {
        &self.scale
    }

    /// `e_j(v)`.
    pub fn eigenvector_entry(&self, j: usize, v: usize) -> T {
        self.basis[(v, j)] / self.scale[v]
    }

    pub fn eigenvector(&self, j: usize) -> Signal<T> {
        Signal::from_parts(
            self.graph,
            (0..self.len())
                .map(|v| Complex::new(self.eigenvector_entry(j, v), T::zero()))
                .collect(),
        )
    }

    /// `dim PW_omega`: the number of eigenvalues `<= omega` (up to `tol_lambda`).
    pub fn band_dimension(&self, omega: T) -> usize {
        let cut = omega + self.tol_lambda();
        self.eigenvalues.iter().take_while(|&&l| l <= cut).count()
    }

    pub(crate) fn check(&self, f: &Signal<T>) -> Result<()> {
        if f.graph_id() != self.graph {
            return Err(Error::GraphMismatch);
        }
        Ok(())
    }

    /// `sum_j h(lambda_j) c_j(f) e_j`.
    pub fn apply_function(&self, f: &Signal<T>, h: impl Fn(T) -> Complex<T>) -> Result<Signal<T>> {
        let c = self.coefficients(f)?;
        let weighted: Vec<Complex<T>> = c
            .iter()
            .zip(&self.eigenvalues)
            .map(|(&cj, &l)| cj * h(l))
            .collect();
        Ok(self.synthesize(&weighted))
    }

    /// `Δ^p f` for real `p >= 0`, computed spectrally.
    pub fn laplacian_power(&self, f: &Signal<T>, p: T) -> Result<Signal<T>> {
        self.apply_function(f, |l| {
            let v = if l == T::zero() {
                if p == T::zero() {
                    T::one()
                } else {
                    T::zero()
                }
            } else {
                l.powf(p)
            };
            Complex::new(v, T::zero())
        })
    }

    pub(crate) fn coefficients(&self, f: &Signal<T>) -> Result<Vec<Complex<T>>> {
        self.check(f)?;
        let n = self.len();
        let scaled: Vec<Complex<T>> = f
            .values()
            .iter()
            .zip(&self.scale)
            .map(|(&x, &s)| x * s)
            .collect();
        Ok((0..n)
            .map(|j| {
                (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, v| {
                    acc + scaled[v] * self.basis[(v, j)]
                })
            })
            .collect())
    }

    pub(crate) fn synthesize(&self, c: &[Complex<T>]) -> Signal<T> {
        let values = self
            .basis
            .mul_complex(c)
            .into_iter()
            .zip(&self.scale)
            .map(|(x, &s)| x / s)
            .collect();
        Signal::from_parts(self.graph, values)
    }
}

/// `c_j(f) = <f, e_j>` in the graph's inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoefficients<T> {
    pub coefficients: Vec<Complex<T>>,
    graph: GraphId,
}

impl<T: Real> FourierCoefficients<T> {
    /// Sum of squared moduli; equals `||f||^2` by Parseval.
    pub fn energy(&self) -> T {
        self.coefficients
            .iter()
            .fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }
}

pub fn fourier<T: Real>(
    graph: &Graph<T>,
    spectrum: &Spectrum<T>,
    f: &Signal<T>,
) -> Result<FourierCoefficients<T>> {
    if graph.id() != spectrum.graph_id() {
        return Err(Error::GraphMismatch);
    }
    Ok(FourierCoefficients {
        coefficients: spectrum.coefficients(f)?,
        graph: spectrum.graph_id(),
    })
}

pub fn inverse_fourier<T: Real>(
    spectrum: &Spectrum<T>,
    c: &FourierCoefficients<T>,
) -> Result<Signal<T>> {
    if c.graph != spectrum.graph_id() {
        return Err(Error::GraphMismatch);
    }
    if c.coefficients.len() != spectrum.len() {
        return Err(Error::LengthMismatch {
            expected: spectrum.len(),
            got: c.coefficients.len(),
        });
    }
    Ok(spectrum.synthesize(&c.coefficients))
}

/// Orthogonal projection onto `PW_omega` and that space's dimension.
#[derive(Debug, Clone)]
pub struct PwProjection<T> {
    pub signal: Signal<T>,
    pub dimension: usize,
}

pub fn pw_project<T: Real>(
    spectrum: &Spectrum<T>,
    f: &Signal<T>,
    omega: T,
) -> Result<PwProjection<T>> {
    if omega < T::zero() {
        return Err(Error::InvalidArgument("omega must be nonnegative".into()));
    }
    let d = spectrum.band_dimension(omega);
    let mut c = spectrum.coefficients(f)?;
    for cj in c.iter_mut().skip(d) {
        *cj = Complex::new(T::zero(), T::zero());
    }
    Ok(PwProjection {
        signal: spectrum.synthesize(&c),
        dimension: d,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BernsteinCheck<T> {
    pub holds: bool,
    /// `||Δ^k f|| / (omega^k ||f||)`.
    pub ratio: T,
}

/// Tests `||Δ^k f|| <= omega^k ||f||`.
pub fn bernstein_check<T: Real>(
    spectrum: &Spectrum<T>,
    f: &Signal<T>,
    omega: T,
    k: u32,
) -> Result<BernsteinCheck<T>> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "Bernstein power must be >= 1".into(),
        ));
    }
    let c = spectrum.coefficients(f)?;
    let norm = c.iter().fold(T::zero(), |a, x| a + x.norm_sqr()).sqrt();
    if norm == T::zero() {
        return Err(Error::ZeroSignal);
    }
    let pow = |x: T| x.powi(k as i32);
    let top = c
        .iter()
        .zip(spectrum.eigenvalues())
        .fold(T::zero(), |a, (x, &l)| {
            let s = pow(l);
            a + x.norm_sqr() * s * s
        })
        .sqrt();
    let ratio = if top == T::zero() {
        T::zero()
    } else {
        top / (pow(omega) * norm)
    };
    Ok(BernsteinCheck {
        holds: ratio <= T::one() + T::tol(1e-9),
        ratio,
    })
}

/// Endpoint closure for [`eigenvalue_count`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Closed,
    Open,
}

/// Number of eigenvalues in the interval from `a` to `b`.
///
/// A closed endpoint admits eigenvalues within `tol_lambda` outside of it; an
/// open endpoint excludes eigenvalues within `tol_lambda` of it.
pub fn eigenvalue_count<T: Real>(
    spectrum: &Spectrum<T>,
    a: T,
    b: T,
    lower: Endpoint,
    upper: Endpoint,
) -> Result<usize> {
    if a > b {
        return Err(Error::InvalidArgument(format!("empty interval [{a}, {b}]")));
    }
    let tol = spectrum.tol_lambda();
    Ok(spectrum
        .eigenvalues()
        .iter()
        .filter(|&&l| match lower {
            Endpoint::Closed => l >= a - tol,
            Endpoint::Open => l > a + tol,
        })
        .filter(|&&l| match upper {
            Endpoint::Closed => l <= b + tol,
            Endpoint::Open => l < b - tol,
        })
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn p3() -> Graph<f64> {
        build_graph([("0", "1", 1.0), ("1", "2", 1.0)], MeasureMode::Counting).unwrap()
    }

    fn k53() -> Graph<f64> {
        let mut edges = Vec::new();
        for a in 0..5 {
            for b in 5..8 {
                edges.push((a.to_string(), b.to_string(), 1.0));
            }
        }
        build_graph(edges, MeasureMode::Counting).unwrap()
    }

    #[test]
    fn path_spectrum() {
        let s = eigendecompose(&p3()).unwrap();
        for (got, want) in s.eigenvalues().iter().zip([0.0, 1.0, 3.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert_eq!(s.eigenvalues()[0], 0.0);
    }

    #[test]
    fn single_vertex() {
        let g = Graph::<f64>::new(
            ["v"],
            Vec::<(&str, &str, f64)>::new(),
            MeasureMode::Counting,
        )
        .unwrap();
        let s = eigendecompose(&g).unwrap();
        assert_eq!(s.eigenvalues(), &[0.0]);
        assert_eq!(s.eigenvector(0).values(), &[c(1.0)]);
    }

    #[test]
    fn bipartite_spectrum() {
        let s = eigendecompose(&k53()).unwrap();
        let want = [0.0, 3.0, 3.0, 3.0, 3.0, 5.0, 5.0, 8.0];
        for (got, want) in s.eigenvalues().iter().zip(want) {
            assert!((got - want).abs() < 1e-9, "{got} vs {want}");
        }
    }

    #[test]
    fn unit_coefficients_of_eigenvectors() {
        let g = k53();
        let s = eigendecompose(&g).unwrap();
        for j in 0..8 {
            let cf = fourier(&g, &s, &s.eigenvector(j)).unwrap();
            for (i, x) in cf.coefficients.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((x - c(want)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn constant_has_only_mean_coefficient() {
        let g = p3();
        let s = eigendecompose(&g).unwrap();
        let cf = fourier(&g, &s, &Signal::constant(&g, c(2.0))).unwrap();
        assert!((cf.coefficients[0].norm() - 2.0 * 3f64.sqrt()).abs() < 1e-12);
        assert!(cf.coefficients[1..].iter().all(|x| x.norm() < 1e-12));
    }

    #[test]
    fn projection_edge_cases() {
        let g = k53();
        let s = eigendecompose(&g).unwrap();
        let f = Signal::from_real(&g, &[1.0, -2.0, 0.5, 3.0, 0.0, 1.0, 2.0, -1.0]).unwrap();
        let full = pw_project(&s, &f, 8.0).unwrap();
        assert_eq!(full.dimension, 8);
        assert!(full.signal.sub(&f).unwrap().max_abs() < 1e-12);
        let p = pw_project(&s, &f, 4.0).unwrap();
        assert_eq!(p.dimension, 5);
        let mean = pw_project(&s, &f, 0.0).unwrap();
        assert_eq!(mean.dimension, 1);
        for x in mean.signal.values() {
            assert!((x - c(4.5 / 8.0)).norm() < 1e-12);
        }
        assert!(pw_project(&s, &f, -1.0).is_err());
    }

    #[test]
    fn bernstein_examples() {
        let g = k53();
        let s = eigendecompose(&g).unwrap();
        let top = s.eigenvector(7);
        let r = bernstein_check(&s, &top, 4.0, 1).unwrap();
        assert!((r.ratio - 2.0).abs() < 1e-12);
        assert!(!r.holds);
        let r = bernstein_check(&s, &Signal::constant(&g, c(1.0)), 0.5, 3).unwrap();
        assert!(r.ratio < 1e-12);
        assert!(r.holds);
        assert_eq!(
            bernstein_check(&s, &Signal::zeros(&g), 1.0, 1).unwrap_err(),
            Error::ZeroSignal
        );
    }

    #[test]
    fn counting_examples() {
        let s = eigendecompose(&k53()).unwrap();
        use Endpoint::*;
        assert_eq!(eigenvalue_count(&s, 0.0, 5.0, Closed, Open).unwrap(), 5);
        assert_eq!(eigenvalue_count(&s, 5.0, 8.0, Closed, Closed).unwrap(), 3);
        assert_eq!(eigenvalue_count(&s, 0.0, 8.0, Closed, Closed).unwrap(), 8);
        assert_eq!(eigenvalue_count(&s, 3.0, 5.0, Open, Open).unwrap(), 0);
        assert!(eigenvalue_count(&s, 2.0, 1.0, Closed, Closed).is_err());
    }

    #[test]
    fn degree_mode_basis_is_orthonormal_in_weighted_product() {
        let g = build_graph(
            [
                ("0", "1", 2.0),
                ("1", "2", 0.5),
                ("2", "0", 1.0),
                ("2", "3", 3.0),
            ],
            MeasureMode::Degree,
        )
        .unwrap();
        let s = eigendecompose(&g).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let ip = g
                    .inner_product(&s.eigenvector(i), &s.eigenvector(j))
                    .unwrap();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - c(want)).norm() < 1e-12);
            }
            let lhs = g.apply_laplacian(&s.eigenvector(i)).unwrap();
            let rhs = s.eigenvector(i).scaled(c(s.eigenvalues()[i]));
            assert!(lhs.sub(&rhs).unwrap().max_abs() < 1e-12);
        }
    }
}
