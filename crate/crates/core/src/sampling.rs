//! Sampling-set certification and dual-frame reconstruction on `PW_omega`.
//!
//! Constants are always named by the set they belong to: `poincare_constant(U)`
//! is the Poincaré constant of functions supported on `U`, and the sampling
//! threshold of a set `S` is the Poincaré constant of its complement.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::graph::{Graph, Signal, VertexSet};
use crate::linalg::{symmetric_eigen, Matrix};
use crate::scalar::Real;
use crate::spectral::Spectrum;

/// Connectivity between a set `S` and its complement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Connectivity<T> {
    /// `K_S = min_{v in S^c} w_S(v)`.
    pub k_s: T,
    /// `D_S = max_{s in S} w_{S^c}(s)`.
    pub d_s: T,
}

fn check_set<T: Real>(graph: &Graph<T>, set: &VertexSet) -> Result<()> {
    if set.graph_id() != graph.id() {
        return Err(Error::GraphMismatch);
    }
    Ok(())
}

fn check_spectrum<T: Real>(graph: &Graph<T>, spectrum: &Spectrum<T>) -> Result<()> {
    if spectrum.graph_id() != graph.id() {
        return Err(Error::GraphMismatch);
    }
    Ok(())
}

/// Total edge weight from vertex `v` into `set`.
fn weight_into<T: Real>(graph: &Graph<T>, v: usize, set: &VertexSet) -> T {
    graph
        .neighbors(v)
        .iter()
        .filter(|&&(u, _)| set.contains(u))
        .fold(T::zero(), |acc, &(_, w)| acc + w)
}

pub fn connectivity_measures<T: Real>(
    graph: &Graph<T>,
    set: &VertexSet,
) -> Result<Connectivity<T>> {
    check_set(graph, set)?;
    set.require_proper()?;
    let complement = set.complement();
    let k_s = complement
        .indices()
        .iter()
        .map(|&v| weight_into(graph, v, set))
        .fold(T::infinity(), T::min);
    let d_s = set
        .indices()
        .iter()
        .map(|&s| weight_into(graph, s, &complement))
        .fold(T::zero(), T::max);
    Ok(Connectivity { k_s, d_s })
}

/// Poincaré constant of `U` together with a unit function attaining it.
#[derive(Debug, Clone)]
pub struct PoincareExtremal<T> {
    pub constant: T,
    /// Supported on `U`, unit norm, `||Δφ|| = constant`.
    pub minimizer: Signal<T>,
}

/// `Λ(U) = min ||Δφ|| / ||φ||` over nonzero `φ` supported on `U`.
pub fn poincare_constant<T: Real>(
    graph: &Graph<T>,
    spectrum: &Spectrum<T>,
    support: &VertexSet,
) -> Result<T> {
    if support.is_full() && !support.is_empty() {
        check_set(graph, support)?;
        return Ok(T::zero());
    }
    Ok(poincare_extremal(graph, spectrum, support)?.constant)
}

pub fn poincare_extremal<T: Real>(
    graph: &Graph<T>,
    spectrum: &Spectrum<T>,
    support: &VertexSet,
) -> Result<PoincareExtremal<T>> {
    check_set(graph, support)?;
    check_spectrum(graph, spectrum)?;
    if support.is_empty() {
        return Err(Error::EmptySet);
    }
    let lap = graph.laplacian_matrix()?;
    let all: Vec<usize> = (0..graph.vertex_count()).collect();
    // In Euclidean coordinates φ restricted to U meets the columns U of the
    // symmetric form; the constant is the smallest singular value of that block.
    let columns = lap.symmetric.select(&all, support.indices());
    let eig = symmetric_eigen(&columns.gram())?;
    let constant = eig.values[0].max(T::zero()).sqrt();
    let mut values = vec![Complex::new(T::zero(), T::zero()); graph.vertex_count()];
    for (r, &v) in support.indices().iter().enumerate() {
        values[v] = Complex::new(eig.vectors[(r, 0)] / lap.scale[v], T::zero());
    }
    let constant = if support.is_full() {
        T::zero()
    } else {
        constant
    };
    Ok(PoincareExtremal {
        constant,
        minimizer: Signal::new(graph, values)?,
    })
}

/// Norm of `f` restricted to `set`, in the graph's measure.
pub fn restricted_norm<T: Real>(graph: &Graph<T>, f: &Signal<T>, set: &VertexSet) -> T {
    set.indices()
        .iter()
        .fold(T::zero(), |acc, &v| {
            acc + f[v].norm_sqr() * graph.measure_at(v)
        })
        .sqrt()
}

/// Both sides of the connectivity inequality for one function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MainInequality<T> {
    /// `||f||`.
    pub lhs: T,
    /// `K_S^{-1/2} ||Δ^{1/2} f|| + (D_S / K_S)^{1/2} ||f|_{S^c}||`.
    pub rhs: T,
    pub holds: bool,
    /// `||f|_{S^c}||`.
    pub complement_lhs: T,
    /// `K_S^{-1/2} ||Δ^{1/2} f|| + (D_S / K_S)^{1/2} ||f|_S||`.
    pub complement_rhs: T,
    pub complement_holds: bool,
}

/// Evaluates the connectivity inequality in two forms.
///
/// `lhs <= rhs` is the form bounding all of `||f||`; it fails for functions
/// that are nearly constant or concentrated on `S`, so it is only reported.
/// The complement form bounds the mass on `S^c` by the Dirichlet energy and the
/// mass on `S`; it holds for every `f` in counting mode and, restricted to
/// functions vanishing on `S`, gives `Λ(S^c) >= K_S`.
pub fn main_inequality_check<T: Real>(
    graph: &Graph<T>,
    spectrum: &Spectrum<T>,
    set: &VertexSet,
    f: &Signal<T>,
) -> Result<MainInequality<T>> {
    check_spectrum(graph, spectrum)?;
    let conn = connectivity_measures(graph, set)?;
    if conn.k_s <= T::zero() {
        return Err(Error::KZero);
    }
    let energy = graph.norm(&spectrum.laplacian_power(f, T::lit(0.5))?)?;
    let complement = set.complement();
    let lead = energy / conn.k_s.sqrt();
    let ratio = (conn.d_s / conn.k_s).sqrt();
    let slack = T::tol(1e-9);

    let lhs = graph.norm(f)?;
    let rhs = lead + ratio * restricted_norm(graph, f, &complement);
    let complement_lhs = restricted_norm(graph, f, &complement);
    let complement_rhs = lead + ratio * restricted_norm(graph, f, set);
    Ok(MainInequality {
        lhs,
        rhs,
        holds: lhs <= rhs + slack,
        complement_lhs,
        complement_rhs,
        complement_holds: complement_lhs <= complement_rhs + slack,
    })
}

/// Matrix of Δ with the rows and columns of `set` replaced by zeros.
pub fn reduced_laplacian<T: Real>(graph: &Graph<T>, set: &VertexSet) -> Result<Matrix<T>> {
    check_set(graph, set)?;
    let mut m = graph.laplacian_matrix()?.operator;
    let n = graph.vertex_count();
    for &s in set.indices() {
        for k in 0..n {
            m[(s, k)] = T::zero();
            m[(k, s)] = T::zero();
        }
    }
    Ok(m)
}

/// Smallest positive eigenvalue of the reduced Laplacian.
///
/// On a connected graph the nonzero part of the reduced matrix is the
/// `S^c x S^c` block of Δ, which is positive definite, so this is that
/// block's smallest eigenvalue.
pub fn reduced_laplacian_cutoff<T: Real>(graph: &Graph<T>, set: &VertexSet) -> Result<T> {
    check_set(graph, set)?;
    set.require_proper()?;
    if !graph.is_connected() {
        return Err(Error::DisconnectedGraph);
    }
    let complement = set.complement();
    let block = graph
        .laplacian_matrix()?
        .symmetric
        .select(complement.indices(), complement.indices());
    let eig = symmetric_eigen(&block)?;
    Ok(eig.values[0])
}

/// `|rows| x d` matrix of `e_j(v)` for `v` in `rows`, `j < d`.
pub fn restricted_eigenbasis<T: Real>(
    spectrum: &Spectrum<T>,
    rows: &[usize],
    d: usize,
) -> Matrix<T> {
    Matrix::from_fn(rows.len(), d, |r, j| spectrum.eigenvector_entry(j, rows[r]))
}

/// Extreme eigenvalues of `A*A` for the sampling map `A f = (f(s))_{s in S}` on `PW_omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameBounds<T> {
    /// Lower frame bound; exactly zero when the sampling map is rank deficient.
    pub lower: T,
    pub upper: T,
    /// `dim PW_omega`.
    pub dimension: usize,
    /// Rank threshold `1e-8 * upper` below which `lower` is set to zero.
    pub threshold: T,
}

impl<T: Real> FrameBounds<T> {
    pub fn is_sampling(&self) -> bool {
        self.lower > T::zero()
    }
}

struct SamplingGram<T> {
    bounds: FrameBounds<T>,
    restricted: Matrix<T>,
    inverse: Option<Matrix<T>>,
}

fn sampling_gram<T: Real>(
    spectrum: &Spectrum<T>,
    set: &VertexSet,
    omega: T,
) -> Result<SamplingGram<T>> {
    spectrum_set_check(spectrum, set)?;
    if omega < T::zero() {
        return Err(Error::InvalidArgument("omega must be nonnegative".into()));
    }
    let d = spectrum.band_dimension(omega);
    let restricted = restricted_eigenbasis(spectrum, set.indices(), d);
    let eig = symmetric_eigen(&restricted.gram())?;
    let upper = eig.values[d - 1].max(T::zero());
    let threshold = T::tol(1e-8) * upper;
    let raw = eig.values[0];
    let lower = if raw <= threshold || set.len() < d {
        T::zero()
    } else {
        raw
    };
    let inverse = (lower > T::zero()).then(|| {
        Matrix::from_fn(d, d, |i, j| {
            (0..d).fold(T::zero(), |acc, k| {
                acc + eig.vectors[(i, k)] * eig.vectors[(j, k)] / eig.values[k]
            })
        })
    });
    Ok(SamplingGram {
        bounds: FrameBounds {
            lower,
            upper,
            dimension: d,
            threshold,
        },
        restricted,
        inverse,
    })
}

fn spectrum_set_check<T: Real>(spectrum: &Spectrum<T>, set: &VertexSet) -> Result<()> {
    if set.graph_id() != spectrum.graph_id() {
        return Err(Error::GraphMismatch);
    }
    Ok(())
}

pub fn frame_bounds<T: Real>(
    spectrum: &Spectrum<T>,
    set: &VertexSet,
    omega: T,
) -> Result<FrameBounds<T>> {
    Ok(sampling_gram(spectrum, set, omega)?.bounds)
}

/// Canonical dual frame `{Φ_s}`: `f = sum_s f(s) Φ_s` for every `f` in `PW_omega`.
#[derive(Debug, Clone)]
pub struct DualFrame<T> {
    pub set: VertexSet,
    pub omega: T,
    /// `frames[r]` is `Φ_s` for `s = set.indices()[r]`.
    pub frames: Vec<Signal<T>>,
}

impl<T: Real> DualFrame<T> {
    /// `sum_s samples[s] Φ_s`, samples in the order of `set.indices()`.
    pub fn reconstruct(&self, samples: &[Complex<T>]) -> Result<Signal<T>> {
        if samples.len() != self.frames.len() {
            return Err(Error::LengthMismatch {
                expected: self.frames.len(),
                got: samples.len(),
            });
        }
        let n = self.frames[0].len();
        let mut acc = vec![Complex::new(T::zero(), T::zero()); n];
        for (phi, &y) in self.frames.iter().zip(samples) {
            for (a, &p) in acc.iter_mut().zip(phi.values()) {
                *a = *a + p * y;
            }
        }
        Ok(Signal::from_parts(self.frames[0].graph_id(), acc))
    }

    /// Reconstruction from the values of `f` on the set. Returns the
    /// band-limited projection of `f` only when `f` lies in `PW_omega`.
    pub fn reconstruct_signal(&self, f: &Signal<T>) -> Result<Signal<T>> {
        if f.graph_id() != self.set.graph_id() {
            return Err(Error::GraphMismatch);
        }
        let samples: Vec<Complex<T>> = self.set.indices().iter().map(|&s| f[s]).collect();
        self.reconstruct(&samples)
    }
}

pub fn dual_frame<T: Real>(
    spectrum: &Spectrum<T>,
    set: &VertexSet,
    omega: T,
) -> Result<DualFrame<T>> {
    let gram = sampling_gram(spectrum, set, omega)?;
    let inverse = gram.inverse.ok_or_else(|| Error::NotSamplingSet {
        c: gram.bounds.lower.to_f64().unwrap_or(f64::NAN),
        threshold: gram.bounds.threshold.to_f64().unwrap_or(f64::NAN),
    })?;
    let d = gram.bounds.dimension;
    let n = spectrum.len();
    // coefficient map G^{-1} E_S^T, d x |S|
    let coeff = inverse.mul(&gram.restricted.transpose());
    let frames = (0..set.len())
        .map(|r| {
            let values = (0..n)
                .map(|v| {
                    let x = (0..d).fold(T::zero(), |acc, j| {
                        acc + spectrum.eigenvector_entry(j, v) * coeff[(j, r)]
                    });
                    Complex::new(x, T::zero())
                })
                .collect();
            Signal::from_parts(spectrum.graph_id(), values)
        })
        .collect();
    Ok(DualFrame {
        set: set.clone(),
        omega,
        frames,
    })
}

/// `dim(L2(U) ∩ PW_omega)`: band-limited functions vanishing off `U`.
pub fn band_limited_support_dimension<T: Real>(
    spectrum: &Spectrum<T>,
    support: &VertexSet,
    omega: T,
) -> Result<usize> {
    spectrum_set_check(spectrum, support)?;
    let d = spectrum.band_dimension(omega);
    let outside = support.complement();
    if outside.is_empty() {
        return Ok(d);
    }
    let restricted = restricted_eigenbasis(spectrum, outside.indices(), d);
    let eig = symmetric_eigen(&restricted.gram())?;
    let top = eig.values[d - 1].max(T::zero());
    let rank = eig
        .values
        .iter()
        .filter(|&&g| g > T::tol(1e-8) * top && g > T::zero())
        .count();
    Ok(d - rank)
}

#[derive(Debug, Clone, PartialEq)]
pub struct UncertaintyReport<T> {
    /// `dim(L2(S) ∩ PW_omega)`.
    pub intersection_dim: usize,
    /// Band-limited functions whose zero set contains `S`: `dim(L2(S^c) ∩ PW_omega)`.
    pub zero_set_dim: usize,
    /// `Λ(S)`.
    pub poincare_set: T,
    /// `Λ(S^c)`.
    pub poincare_complement: T,
    /// `omega * Λ(S^c) > 1`.
    pub literal_u1: bool,
    /// `omega * Λ(S) > 1`.
    pub literal_u2: bool,
    /// `intersection_dim > 0` implies `Λ(S) <= omega`.
    pub derived_support_holds: bool,
    /// `zero_set_dim > 0` implies `Λ(S^c) <= omega`.
    pub derived_zero_set_holds: bool,
}

pub fn uncertainty_report<T: Real>(
    graph: &Graph<T>,
    spectrum: &Spectrum<T>,
    set: &VertexSet,
    omega: T,
) -> Result<UncertaintyReport<T>> {
    check_set(graph, set)?;
    check_spectrum(graph, spectrum)?;
    set.require_proper()?;
    let complement = set.complement();
    let intersection_dim = band_limited_support_dimension(spectrum, set, omega)?;
    let zero_set_dim = band_limited_support_dimension(spectrum, &complement, omega)?;
    let poincare_set = poincare_constant(graph, spectrum, set)?;
    let poincare_complement = poincare_constant(graph, spectrum, &complement)?;
    let tol = spectrum.tol_lambda();
    Ok(UncertaintyReport {
        intersection_dim,
        zero_set_dim,
        poincare_set,
        poincare_complement,
        literal_u1: omega * poincare_complement > T::one(),
        literal_u2: omega * poincare_set > T::one(),
        derived_support_holds: intersection_dim == 0 || poincare_set <= omega + tol,
        derived_zero_set_holds: zero_set_dim == 0 || poincare_complement <= omega + tol,
    })
}

/// Everything known about `S` as a sampling set for `PW_omega`.
#[derive(Debug, Clone)]
pub struct SamplingCertificate<T> {
    pub set: VertexSet,
    pub omega: T,
    pub k_s: T,
    pub d_s: T,
    /// `Λ(S^c)`.
    pub poincare_complement: T,
    /// Smallest positive eigenvalue of the reduced Laplacian.
    pub sigma: T,
    pub frame: FrameBounds<T>,
    /// Present iff `frame.lower > 0`.
    pub dual_frame: Option<DualFrame<T>>,
}

impl<T: Real> SamplingCertificate<T> {
    /// `omega` lies strictly below the reduced-Laplacian cut-off.
    pub fn certified_by_cutoff(&self, tol_lambda: T) -> bool {
        self.omega < self.sigma - tol_lambda
    }
}

pub fn certify<T: Real>(
    graph: &Graph<T>,
    spectrum: &Spectrum<T>,
    set: &VertexSet,
    omega: T,
) -> Result<SamplingCertificate<T>> {
    check_spectrum(graph, spectrum)?;
    let conn = connectivity_measures(graph, set)?;
    let sigma = reduced_laplacian_cutoff(graph, set)?;
    let poincare_complement = poincare_constant(graph, spectrum, &set.complement())?;
    let frame = frame_bounds(spectrum, set, omega)?;
    let dual = if frame.is_sampling() {
        Some(dual_frame(spectrum, set, omega)?)
    } else {
        None
    };
    Ok(SamplingCertificate {
        set: set.clone(),
        omega,
        k_s: conn.k_s,
        d_s: conn.d_s,
        poincare_complement,
        sigma,
        frame,
        dual_frame: dual,
    })
}
