//! Deterministic graph and signal generators plus brute-force oracles.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, MeasureMode, Signal, VertexSet};
use crate::linalg::Matrix;
use crate::sampling::{
    connectivity_measures, frame_bounds, poincare_constant, reduced_laplacian_cutoff,
    restricted_eigenbasis,
};
use crate::scalar::Real;
use crate::spectral::{eigendecompose, eigenvalue_count, pw_project, Endpoint, Spectrum};

/// Weight range of the random family.
pub const DEFAULT_WEIGHT_RANGE: (f64, f64) = (0.5, 2.0);

const MAX_CONNECT_ATTEMPTS: u64 = 10_000;

/// Replayable description of a generated graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GeneratorSpec {
    CompleteBipartite {
        n: usize,
        m: usize,
    },
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    ErdosRenyiWeighted {
        n: usize,
        p: f64,
        w_min: f64,
        w_max: f64,
        seed: u64,
    },
}

impl GeneratorSpec {
    pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Self {
        let (w_min, w_max) = DEFAULT_WEIGHT_RANGE;
        GeneratorSpec::ErdosRenyiWeighted {
            n,
            p,
            w_min,
            w_max,
            seed,
        }
    }

    /// Replaces the seed of a random family; fixed families are unchanged.
    pub fn with_seed(self, new_seed: u64) -> Self {
        match self {
            GeneratorSpec::ErdosRenyiWeighted {
                n, p, w_min, w_max, ..
            } => GeneratorSpec::ErdosRenyiWeighted {
                n,
                p,
                w_min,
                w_max,
                seed: new_seed,
            },
            other => other,
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::CompleteBipartite { n, m } => write!(f, "complete-bipartite:{n}:{m}"),
            GeneratorSpec::Path { n } => write!(f, "path:{n}"),
            GeneratorSpec::Cycle { n } => write!(f, "cycle:{n}"),
            GeneratorSpec::ErdosRenyiWeighted {
                n,
                p,
                w_min,
                w_max,
                seed,
            } => write!(f, "erdos-renyi:{n}:{p}:{w_min}:{w_max}:{seed}"),
        }
    }
}

/// Parses `complete-bipartite:N:M`, `path:N`, `cycle:N` and
/// `erdos-renyi:N:P[:WMIN:WMAX[:SEED]]`.
impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad generator spec {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let int = |i: usize| -> Result<usize> {
            parts.get(i).ok_or_else(bad)?.parse().map_err(|_| bad())
        };
        let real =
            |i: usize| -> Result<f64> { parts.get(i).ok_or_else(bad)?.parse().map_err(|_| bad()) };
        match (parts[0], parts.len()) {
            ("complete-bipartite", 3) => Ok(GeneratorSpec::CompleteBipartite {
                n: int(1)?,
                m: int(2)?,
            }),
            ("path", 2) => Ok(GeneratorSpec::Path { n: int(1)? }),
            ("cycle", 2) => Ok(GeneratorSpec::Cycle { n: int(1)? }),
            ("erdos-renyi", 3 | 5 | 6) => {
                let (w_min, w_max) = if parts.len() >= 5 {
                    (real(3)?, real(4)?)
                } else {
                    DEFAULT_WEIGHT_RANGE
                };
                let seed = if parts.len() == 6 {
                    parts[5].parse().map_err(|_| bad())?
                } else {
                    0
                };
                Ok(GeneratorSpec::ErdosRenyiWeighted {
                    n: int(1)?,
                    p: real(2)?,
                    w_min,
                    w_max,
                    seed,
                })
            }
            _ => Err(bad()),
        }
    }
}

/// A generated graph and, for random families, the sub-seed that produced it.
#[derive(Debug, Clone)]
pub struct Generated<T> {
    pub graph: Graph<T>,
    pub subseed: Option<u64>,
}

pub fn generate<T: Real>(spec: &GeneratorSpec, mode: MeasureMode) -> Result<Generated<T>> {
    let fixed = |graph| Generated {
        graph,
        subseed: None,
    };
    match *spec {
        GeneratorSpec::CompleteBipartite { n, m } => {
            Ok(fixed(make_complete_bipartite(n, m, mode)?.0))
        }
        GeneratorSpec::Path { n } => {
            if n == 0 {
                return Err(Error::BadSizes("path needs at least one vertex".into()));
            }
            let edges = (1..n).map(|i| ((i - 1).to_string(), i.to_string(), T::one()));
            Ok(fixed(Graph::new(["0"], edges, mode)?))
        }
        GeneratorSpec::Cycle { n } => {
            if n < 3 {
                return Err(Error::BadSizes(
                    "cycle needs at least three vertices".into(),
                ));
            }
            let edges = (0..n).map(|i| (i.to_string(), ((i + 1) % n).to_string(), T::one()));
            Ok(fixed(Graph::new(
                std::iter::empty::<String>(),
                edges,
                mode,
            )?))
        }
        GeneratorSpec::ErdosRenyiWeighted {
            n,
            p,
            w_min,
            w_max,
            seed,
        } => {
            if n < 2 {
                return Err(Error::BadSizes(
                    "random graph needs at least two vertices".into(),
                ));
            }
            if !(0.0..=1.0).contains(&p) || !(0.0 < w_min && w_min <= w_max) {
                return Err(Error::InvalidArgument(format!(
                    "bad random-graph parameters p = {p}, weights [{w_min}, {w_max}]"
                )));
            }
            for attempt in 0..MAX_CONNECT_ATTEMPTS {
                let subseed = seed.wrapping_add(attempt);
                let graph = erdos_renyi_once(n, p, w_min, w_max, subseed, mode)?;
                if graph.is_connected() {
                    return Ok(Generated {
                        graph,
                        subseed: Some(subseed),
                    });
                }
            }
            Err(Error::InvalidArgument(format!(
                "no connected sample in {MAX_CONNECT_ATTEMPTS} attempts (p = {p} too small?)"
            )))
        }
    }
}

fn erdos_renyi_once<T: Real>(
    n: usize,
    p: f64,
    w_min: f64,
    w_max: f64,
    subseed: u64,
    mode: MeasureMode,
) -> Result<Graph<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(subseed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                let w = if w_min == w_max {
                    w_min
                } else {
                    rng.random_range(w_min..w_max)
                };
                edges.push((i.to_string(), j.to_string(), T::lit(w)));
            }
        }
    }
    Graph::new((0..n).map(|i| i.to_string()), edges, mode)
}

/// `K_{N,M}` with unit weights; vertices `0..N` form `S`, `N..N+M` its complement.
pub fn make_complete_bipartite<T: Real>(
    n: usize,
    m: usize,
    mode: MeasureMode,
) -> Result<(Graph<T>, VertexSet)> {
    if !(n > m && m >= 1) {
        return Err(Error::BadSizes(format!(
            "need N > M >= 1, got N = {n}, M = {m}"
        )));
    }
    let mut edges = Vec::with_capacity(n * m);
    for a in 0..n {
        for b in n..n + m {
            edges.push((a.to_string(), b.to_string(), T::one()));
        }
    }
    let graph = Graph::new(std::iter::empty::<String>(), edges, mode)?;
    let set = VertexSet::from_ids(&graph, (0..n).map(|i| i.to_string()))?;
    Ok((graph, set))
}

/// Laplacian spectrum of `K_{N,M}` as `(eigenvalue, multiplicity)`, ascending.
pub fn bipartite_reference_spectrum<T: Real>(n: usize, m: usize) -> Result<Vec<(T, usize)>> {
    if !(n > m && m >= 1) {
        return Err(Error::BadSizes(format!(
            "need N > M >= 1, got N = {n}, M = {m}"
        )));
    }
    Ok([(0, 1), (m, n - 1), (n, m - 1), (n + m, 1)]
        .into_iter()
        .filter(|&(_, mult)| mult > 0)
        .map(|(l, mult)| (T::of_usize(l), mult))
        .collect())
}

/// Groups ascending eigenvalues into clusters whose neighbours differ by at most `tol`.
pub fn cluster_eigenvalues<T: Real>(values: &[T], tol: T) -> Vec<(T, usize)> {
    let mut out: Vec<(T, usize, T)> = Vec::new();
    for &l in values {
        match out.last_mut() {
            Some((sum, count, last)) if (l - *last).abs() <= tol => {
                *sum = *sum + l;
                *count += 1;
                *last = l;
            }
            _ => out.push((l, 1, l)),
        }
    }
    out.into_iter()
        .map(|(sum, count, _)| (sum / T::of_usize(count), count))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaItem<T> {
    pub name: &'static str,
    pub pass: bool,
    pub residual: T,
}

/// Checks of the sharp bipartite example, with `S` the larger side.
#[derive(Debug, Clone)]
pub struct LemmaReport<T> {
    pub n: usize,
    pub m: usize,
    pub items: Vec<LemmaItem<T>>,
    /// Frame lower bound on `PW_N`, which must vanish since `dim PW_N > N`.
    pub sharpness: LemmaItem<T>,
}

impl<T: Real> LemmaReport<T> {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.pass) && self.sharpness.pass
    }
}

pub fn lemma_sharpness_report<T: Real>(n: usize, m: usize) -> Result<LemmaReport<T>> {
    let (graph, set) = make_complete_bipartite::<T>(n, m, MeasureMode::Counting)?;
    let spectrum = eigendecompose(&graph)?;
    let tol = T::tol(1e-9);
    let big_n = T::of_usize(n);
    let lambda_max = spectrum.lambda_max();

    let poincare = poincare_constant(&graph, &spectrum, &set.complement())?;
    let k_s = connectivity_measures(&graph, &set)?.k_s;
    let sigma = reduced_laplacian_cutoff(&graph, &set)?;
    let r1 = (poincare - big_n)
        .abs()
        .max((k_s - big_n).abs())
        .max((sigma - big_n).abs());

    let low_span = restricted_eigenbasis(&spectrum, set.indices(), n);
    let rank = brute_force_rank(&low_span, T::tol(1e-8));
    let r2 = T::of_usize(n - rank);

    let below = eigenvalue_count(
        &spectrum,
        T::zero(),
        big_n,
        Endpoint::Closed,
        Endpoint::Open,
    )?;
    let above = eigenvalue_count(
        &spectrum,
        big_n,
        lambda_max,
        Endpoint::Closed,
        Endpoint::Closed,
    )?;
    let lambda_n = spectrum.eigenvalues()[n];
    let r5 = (lambda_n - big_n).abs();

    let at_n = frame_bounds(&spectrum, &set, big_n)?;

    let count_item = |name, got: usize, want: usize| LemmaItem {
        name,
        pass: got == want,
        residual: T::of_i64(got as i64 - want as i64).abs(),
    };
    Ok(LemmaReport {
        n,
        m,
        items: vec![
            LemmaItem {
                name: "poincare(S^c) = K_S = sigma = N",
                pass: r1 <= tol,
                residual: r1,
            },
            LemmaItem {
                name: "S is a uniqueness set for span(e_0..e_{N-1})",
                pass: rank == n,
                residual: r2,
            },
            count_item("count[0, N) = N", below, n),
            count_item("count[N, lambda_max] = M", above, m),
            LemmaItem {
                name: "lambda_N = N",
                pass: r5 <= tol,
                residual: r5,
            },
        ],
        sharpness: LemmaItem {
            name: "frame lower bound on PW_N vanishes",
            pass: at_n.lower == T::zero() && at_n.dimension > n,
            residual: at_n.lower,
        },
    })
}

/// Rank by Gaussian elimination with complete pivoting; pivots at or below
/// `rel_tol * max|a_ij|` count as zero.
pub fn brute_force_rank<T: Real>(a: &Matrix<T>, rel_tol: T) -> usize {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let cutoff = rel_tol * m.max_abs();
    if m.max_abs() == T::zero() {
        return 0;
    }
    let mut rank = 0;
    for step in 0..rows.min(cols) {
        let mut best = (step, step, T::zero());
        for i in step..rows {
            for j in step..cols {
                if m[(i, j)].abs() > best.2 {
                    best = (i, j, m[(i, j)].abs());
                }
            }
        }
        if best.2 <= cutoff {
            break;
        }
        let (pi, pj, _) = best;
        for j in 0..cols {
            let tmp = m[(step, j)];
            m[(step, j)] = m[(pi, j)];
            m[(pi, j)] = tmp;
        }
        for i in 0..rows {
            let tmp = m[(i, step)];
            m[(i, step)] = m[(i, pj)];
            m[(i, pj)] = tmp;
        }
        let pivot = m[(step, step)];
        for i in (step + 1)..rows {
            let factor = m[(i, step)] / pivot;
            if factor == T::zero() {
                continue;
            }
            for j in step..cols {
                m[(i, j)] = m[(i, j)] - factor * m[(step, j)];
            }
        }
        rank += 1;
    }
    rank
}

/// Monte-Carlo bound on a Poincaré constant from above.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareOracle<T> {
    /// `min ||Δφ||` over the sampled unit `φ` supported on `U`.
    pub upper_bound: T,
    /// Sampled `φ` with `||φ|| > ||Δφ|| / candidate` (beyond `1e-9`).
    pub violations: usize,
    pub trials: usize,
}

/// Samples random unit functions on `U` and evaluates Δ edge by edge.
pub fn oracle_poincare<T: Real>(
    graph: &Graph<T>,
    support: &VertexSet,
    trials: usize,
    seed: u64,
    candidate: T,
) -> Result<PoincareOracle<T>> {
    support.require_proper()?;
    if support.graph_id() != graph.id() {
        return Err(Error::GraphMismatch);
    }
    let slack = T::tol(1e-9);
    let mut upper_bound = T::infinity();
    let mut violations = 0;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let mut values = vec![Complex::new(T::zero(), T::zero()); graph.vertex_count()];
        for &v in support.indices() {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            values[v] = Complex::new(T::lit(re), T::lit(im));
        }
        let phi = Signal::new(graph, values)?;
        let norm = graph.norm(&phi)?;
        if norm == T::zero() {
            continue;
        }
        let phi = phi.scaled(Complex::new(norm.recip(), T::zero()));
        let energy = graph.norm(&graph.apply_laplacian(&phi)?)?;
        upper_bound = upper_bound.min(energy);
        if candidate > T::zero() && T::one() > energy / candidate + slack {
            violations += 1;
        }
    }
    Ok(PoincareOracle {
        upper_bound,
        violations,
        trials,
    })
}

/// Signal with independent standard complex normal entries.
pub fn random_signal<T: Real, R: Rng + ?Sized>(graph: &Graph<T>, rng: &mut R) -> Signal<T> {
    let values = (0..graph.vertex_count())
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex::new(T::lit(re), T::lit(im))
        })
        .collect();
    Signal::new(graph, values).expect("length matches graph")
}

/// Projection of a random signal onto `PW_omega`.
pub fn random_pw_signal<T: Real, R: Rng + ?Sized>(
    graph: &Graph<T>,
    spectrum: &Spectrum<T>,
    omega: T,
    rng: &mut R,
) -> Result<Signal<T>> {
    Ok(pw_project(spectrum, &random_signal(graph, rng), omega)?.signal)
}

/// Random subset of `0..n` with between 1 and `n - 1` members.
pub fn random_proper_subset<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    assert!(n >= 2, "a proper nonempty subset needs two vertices");
    let size = rng.random_range(1..n);
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(size);
    all.sort_unstable();
    all
}
