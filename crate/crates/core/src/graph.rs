//! Weighted undirected graphs, vertex measures and the weighted Laplacian.
//!
//! A [`Graph`] fixes a canonical vertex order (sorted identifiers, integers
//! compared numerically) that every matrix and signal in the crate uses. The
//! Hilbert structure on vertex functions depends on the graph's
//! [`MeasureMode`]:
//!
//! * `Counting`: `<f, g> = sum_v f(v) conj(g(v))`, `(Δf)(v) = sum_u (f(v) - f(u)) w(v, u)`.
//! * `Degree`: `<f, g> = sum_v f(v) conj(g(v)) mu(v)`, and the Laplacian is
//!   divided by `mu(v)` so that it stays self-adjoint.
//!
//! In both modes the map `f -> sqrt(m) * f` (with `m` the vertex measure) is an
//! isometry onto Euclidean space under which Δ becomes a real symmetric
//! matrix; [`LaplacianMatrix::symmetric`] is that matrix.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Real;

/// Which vertex measure the inner product on `L2(G)` uses.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureMode {
    /// `mu = 1`, combinatorial Laplacian `D - W`.
    #[default]
    Counting,
    /// `mu = degree`, random-walk Laplacian `I - D^{-1} W`.
    Degree,
}

impl fmt::Display for MeasureMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasureMode::Counting => "counting",
            MeasureMode::Degree => "degree",
        })
    }
}

impl FromStr for MeasureMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "counting" => Ok(MeasureMode::Counting),
            "degree" => Ok(MeasureMode::Degree),
            other => Err(Error::InvalidArgument(format!(
                "unknown measure mode {other:?}"
            ))),
        }
    }
}

/// Content fingerprint of a graph; signals and sets carry it to detect mix-ups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GraphId(u64);

/// Canonical vertex order: pure integers numerically and before everything
/// else, remaining identifiers lexicographically.
pub fn compare_vertex_ids(a: &str, b: &str) -> Ordering {
    fn as_int(s: &str) -> Option<(bool, &str)> {
        let (neg, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let trimmed = digits.trim_start_matches('0');
        Some((neg && !trimmed.is_empty(), trimmed))
    }
    fn magnitude(a: &str, b: &str) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| a.cmp(b))
    }
    match (as_int(a), as_int(b)) {
        (Some((na, da)), Some((nb, db))) => {
            let by_value = match (na, nb) {
                (true, false) => Ordering::Less,
                (false, true) => Ordering::Greater,
                (false, false) => magnitude(da, db),
                (true, true) => magnitude(db, da),
            };
            by_value.then_with(|| a.cmp(b))
        }
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => a.cmp(b),
    }
}

/// Finite weighted undirected graph.
#[derive(Debug, Clone)]
pub struct Graph<T> {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    // neighbor lists sorted by neighbor index
    adjacency: Vec<Vec<(usize, T)>>,
    degrees: Vec<T>,
    mode: MeasureMode,
    id: GraphId,
}

/// Builds a graph whose vertex set is the union of the edge endpoints.
///
/// Edges may be listed in one or both orientations; listing both with
/// different weights is an error, as is listing the same orientation twice.
/// Zero-weight edges are accepted and dropped.
pub fn build_graph<T, I, U, V>(edges: I, mode: MeasureMode) -> Result<Graph<T>>
where
    T: Real,
    I: IntoIterator<Item = (U, V, T)>,
    U: Into<String>,
    V: Into<String>,
{
    Graph::new(std::iter::empty::<String>(), edges, mode)
}

impl<T: Real> Graph<T> {
    /// Like [`build_graph`], with additional (possibly isolated) vertices.
    pub fn new<I, U, V, X, S>(extra_vertices: X, edges: I, mode: MeasureMode) -> Result<Self>
    where
        I: IntoIterator<Item = (U, V, T)>,
        U: Into<String>,
        V: Into<String>,
        X: IntoIterator<Item = S>,
        S: Into<String>,
    {
        // ordered pair -> weight, exactly as listed
        let mut listed: BTreeMap<(String, String), T> = BTreeMap::new();
        let mut names: Vec<String> = extra_vertices.into_iter().map(Into::into).collect();
        for (u, v, w) in edges {
            let (u, v) = (u.into(), v.into());
            if !w.is_finite() {
                return Err(Error::NonFiniteWeight { u, v });
            }
            if w < T::zero() {
                let weight = w.to_f64().unwrap_or(f64::NAN);
                return Err(Error::NegativeWeight { u, v, weight });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if let Some(&back) = listed.get(&(v.clone(), u.clone())) {
                if back != w {
                    return Err(Error::AsymmetricWeight {
                        forward: back.to_f64().unwrap_or(f64::NAN),
                        backward: w.to_f64().unwrap_or(f64::NAN),
                        u: v,
                        v: u,
                    });
                }
            }
            names.push(u.clone());
            names.push(v.clone());
            if listed.insert((u.clone(), v.clone()), w).is_some() {
                return Err(Error::DuplicateEdge { u, v });
            }
        }
        names.sort_by(|a, b| compare_vertex_ids(a, b));
        names.dedup();
        if names.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if let Some(bad) = names
            .iter()
            .find(|s| s.is_empty() || s.chars().any(char::is_whitespace))
        {
            return Err(Error::InvalidArgument(format!(
                "vertex identifier {bad:?} is empty or contains whitespace"
            )));
        }
        let index: HashMap<String, usize> = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();

        let n = names.len();
        let mut adjacency: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
        for ((u, v), w) in &listed {
            if *w == T::zero() {
                continue;
            }
            let (i, j) = (index[u], index[v]);
            // a pair listed both ways is stored once
            if listed.contains_key(&(v.clone(), u.clone())) && i > j {
                continue;
            }
            adjacency[i].push((j, *w));
            adjacency[j].push((i, *w));
        }
        for row in &mut adjacency {
            row.sort_by_key(|&(j, _)| j);
        }
        let degrees = adjacency
            .iter()
            .map(|row| row.iter().fold(T::zero(), |acc, &(_, w)| acc + w))
            .collect();

        let mut hasher = DefaultHasher::new();
        mode.hash(&mut hasher);
        names.hash(&mut hasher);
        for (i, row) in adjacency.iter().enumerate() {
            for &(j, w) in row {
                (i, j, w.to_f64().unwrap_or(f64::NAN).to_bits()).hash(&mut hasher);
            }
        }
        let id = GraphId(hasher.finish());

        Ok(Self {
            vertices: names,
            index,
            adjacency,
            degrees,
            mode,
            id,
        })
    }

    /// Same vertices and edges under a different measure mode.
    pub fn with_mode(&self, mode: MeasureMode) -> Self {
        let edges: Vec<(String, String, T)> = self
            .edges()
            .map(|(i, j, w)| (self.vertices[i].clone(), self.vertices[j].clone(), w))
            .collect();
        Graph::new(self.vertices.clone(), edges, mode).expect("re-labelled valid graph")
    }

    pub fn id(&self) -> GraphId {
        self.id
    }

    pub fn mode(&self) -> MeasureMode {
        self.mode
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &str {
        &self.vertices[i]
    }

    pub fn index_of(&self, v: &str) -> Result<usize> {
        self.index
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    /// `(neighbor, weight)` pairs of vertex `i`, sorted by neighbor.
    pub fn neighbors(&self, i: usize) -> &[(usize, T)] {
        &self.adjacency[i]
    }

    /// `w(i, j)`, zero when there is no edge.
    pub fn weight(&self, i: usize, j: usize) -> T {
        self.adjacency[i]
            .binary_search_by_key(&j, |&(k, _)| k)
            .map(|pos| self.adjacency[i][pos].1)
            .unwrap_or_else(|_| T::zero())
    }

    /// Each undirected edge once, as `(i, j, w)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .filter(move |&&(j, _)| j > i)
                .map(move |&(j, w)| (i, j, w))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// `mu(v)`, the total weight of edges at `v`.
    pub fn degree(&self, v: &str) -> Result<T> {
        Ok(self.degrees[self.index_of(v)?])
    }

    pub fn degree_at(&self, i: usize) -> T {
        self.degrees[i]
    }

    /// Vertex measure of the inner product: 1 or `mu(v)`.
    pub fn measure_at(&self, i: usize) -> T {
        match self.mode {
            MeasureMode::Counting => T::one(),
            MeasureMode::Degree => self.degrees[i],
        }
    }

    fn require_positive_measure(&self) -> Result<()> {
        if self.mode == MeasureMode::Degree {
            if let Some(i) = self.degrees.iter().position(|&d| d <= T::zero()) {
                return Err(Error::IsolatedVertex(self.vertices[i].clone()));
            }
        }
        Ok(())
    }

    /// `sqrt(measure)` per vertex: the isometry onto Euclidean coordinates.
    pub fn isometry_scale(&self) -> Result<Vec<T>> {
        self.require_positive_measure()?;
        Ok((0..self.vertex_count())
            .map(|i| self.measure_at(i).sqrt())
            .collect())
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(i) = stack.pop() {
                for &(j, _) in &self.adjacency[i] {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    fn check(&self, f: &Signal<T>) -> Result<()> {
        if f.graph != self.id {
            return Err(Error::GraphMismatch);
        }
        Ok(())
    }

    /// Inner product of the graph's measure mode.
    pub fn inner_product(&self, f: &Signal<T>, g: &Signal<T>) -> Result<Complex<T>> {
        self.check(f)?;
        self.check(g)?;
        Ok(f.values
            .iter()
            .zip(&g.values)
            .enumerate()
            .fold(Complex::new(T::zero(), T::zero()), |acc, (i, (a, b))| {
                acc + a * b.conj() * self.measure_at(i)
            }))
    }

    pub fn norm(&self, f: &Signal<T>) -> Result<T> {
        self.check(f)?;
        Ok(f.values
            .iter()
            .enumerate()
            .fold(T::zero(), |acc, (i, a)| {
                acc + a.norm_sqr() * self.measure_at(i)
            })
            .sqrt())
    }

    /// `Δf`, evaluated edge by edge.
    pub fn apply_laplacian(&self, f: &Signal<T>) -> Result<Signal<T>> {
        self.check(f)?;
        self.require_positive_measure()?;
        let values = (0..self.vertex_count())
            .map(|v| {
                let fv = f.values[v];
                let sum = self.adjacency[v]
                    .iter()
                    .fold(Complex::new(T::zero(), T::zero()), |acc, &(u, w)| {
                        acc + (fv - f.values[u]) * w
                    });
                match self.mode {
                    MeasureMode::Counting => sum,
                    MeasureMode::Degree => sum / self.degrees[v],
                }
            })
            .collect();
        Ok(Signal {
            values,
            graph: self.id,
        })
    }

    /// Dense matrix of Δ together with its symmetrized form.
    pub fn laplacian_matrix(&self) -> Result<LaplacianMatrix<T>> {
        let scale = self.isometry_scale()?;
        let n = self.vertex_count();
        let mut combinatorial = Matrix::zeros(n, n);
        for i in 0..n {
            combinatorial[(i, i)] = self.degrees[i];
            for &(j, w) in &self.adjacency[i] {
                combinatorial[(i, j)] = -w;
            }
        }
        let (operator, symmetric) = match self.mode {
            MeasureMode::Counting => (combinatorial.clone(), combinatorial),
            MeasureMode::Degree => (
                Matrix::from_fn(n, n, |i, j| combinatorial[(i, j)] / self.degrees[i]),
                Matrix::from_fn(n, n, |i, j| combinatorial[(i, j)] / (scale[i] * scale[j])),
            ),
        };
        Ok(LaplacianMatrix {
            operator,
            symmetric,
            scale,
        })
    }
}

/// Matrix forms of Δ.
#[derive(Debug, Clone)]
pub struct LaplacianMatrix<T> {
    /// `M` with `M f = Δf` in vertex coordinates (`D - W` in counting mode).
    pub operator: Matrix<T>,
    /// `diag(scale) M diag(scale)^{-1}`, symmetric; equal to `operator` in counting mode.
    pub symmetric: Matrix<T>,
    /// `sqrt` of the vertex measure.
    pub scale: Vec<T>,
}

impl<T: Real> LaplacianMatrix<T> {
    pub fn apply(&self, f: &Signal<T>) -> Signal<T> {
        Signal {
            values: self.operator.mul_complex(&f.values),
            graph: f.graph,
        }
    }
}

/// Complex-valued function on the vertices, in canonical vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal<T> {
    values: Vec<Complex<T>>,
    graph: GraphId,
}

impl<T: Real> Signal<T> {
    pub fn new(graph: &Graph<T>, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != graph.vertex_count() {
            return Err(Error::LengthMismatch {
                expected: graph.vertex_count(),
                got: values.len(),
            });
        }
        Ok(Self {
            values,
            graph: graph.id(),
        })
    }

    pub fn from_real(graph: &Graph<T>, values: &[T]) -> Result<Self> {
        Self::new(
            graph,
            values.iter().map(|&x| Complex::new(x, T::zero())).collect(),
        )
    }

    pub fn zeros(graph: &Graph<T>) -> Self {
        Self::constant(graph, Complex::new(T::zero(), T::zero()))
    }

    pub fn constant(graph: &Graph<T>, value: Complex<T>) -> Self {
        Self {
            values: vec![value; graph.vertex_count()],
            graph: graph.id(),
        }
    }

    /// Indicator of vertex index `i`.
    pub fn delta(graph: &Graph<T>, i: usize) -> Self {
        let mut s = Self::zeros(graph);
        s.values[i] = Complex::new(T::one(), T::zero());
        s
    }

    pub(crate) fn from_parts(graph: GraphId, values: Vec<Complex<T>>) -> Self {
        Self { values, graph }
    }

    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scaled(&self, a: Complex<T>) -> Self {
        Self {
            values: self.values.iter().map(|&x| x * a).collect(),
            graph: self.graph,
        }
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: Complex<T>, other: &Signal<T>) -> Result<Self> {
        if self.graph != other.graph {
            return Err(Error::GraphMismatch);
        }
        Ok(Self {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&x, &y)| x + y * a)
                .collect(),
            graph: self.graph,
        })
    }

    pub fn sub(&self, other: &Signal<T>) -> Result<Self> {
        self.axpy(Complex::new(-T::one(), T::zero()), other)
    }

    /// Sup-norm, independent of the measure mode.
    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, x| m.max(x.norm()))
    }
}

impl<T> std::ops::Index<usize> for Signal<T> {
    type Output = Complex<T>;
    fn index(&self, i: usize) -> &Complex<T> {
        &self.values[i]
    }
}

/// Subset of a graph's vertices, stored as sorted canonical indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    members: Vec<usize>,
    universe: usize,
    graph: GraphId,
}

impl VertexSet {
    pub fn from_ids<T: Real, S: AsRef<str>>(
        graph: &Graph<T>,
        ids: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let idx = ids
            .into_iter()
            .map(|s| graph.index_of(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(graph, idx)
    }

    pub fn from_indices<T: Real>(
        graph: &Graph<T>,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let n = graph.vertex_count();
        let mut members: Vec<usize> = indices.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&i| i >= n) {
            return Err(Error::UnknownVertex(format!("#{bad}")));
        }
        members.sort_unstable();
        members.dedup();
        Ok(Self {
            members,
            universe: n,
            graph: graph.id(),
        })
    }

    pub fn all<T: Real>(graph: &Graph<T>) -> Self {
        Self {
            members: (0..graph.vertex_count()).collect(),
            universe: graph.vertex_count(),
            graph: graph.id(),
        }
    }

    pub fn complement(&self) -> Self {
        let mut inside = vec![false; self.universe];
        for &i in &self.members {
            inside[i] = true;
        }
        Self {
            members: (0..self.universe).filter(|&i| !inside[i]).collect(),
            universe: self.universe,
            graph: self.graph,
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.members
    }

    pub fn ids<'a, T: Real>(&self, graph: &'a Graph<T>) -> Vec<&'a str> {
        self.members.iter().map(|&i| graph.vertex(i)).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.universe
    }

    pub fn graph_id(&self) -> GraphId {
        self.graph
    }

    /// Errors unless the set is nonempty and not the whole vertex set.
    pub fn require_proper(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptySet)
        } else if self.is_full() {
            Err(Error::FullSet)
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn p3(mode: MeasureMode) -> Graph<f64> {
        build_graph([("0", "1", 1.0), ("1", "2", 1.0)], mode).unwrap()
    }

    #[test]
    fn single_edge() {
        let g = build_graph([("a", "b", 1.0)], MeasureMode::Counting).unwrap();
        assert_eq!(g.vertices(), ["a", "b"]);
        assert_eq!(g.degree("a").unwrap(), 1.0);
        assert_eq!(g.degree("b").unwrap(), 1.0);
    }

    #[test]
    fn path_degrees() {
        let g = p3(MeasureMode::Counting);
        let mu: Vec<f64> = g.vertices().iter().map(|v| g.degree(v).unwrap()).collect();
        assert_eq!(mu, vec![1.0, 2.0, 1.0]);
        assert_eq!(g.degree("1").unwrap(), 2.0);
    }

    #[test]
    fn construction_errors() {
        let asym = build_graph([("a", "b", 1.0), ("b", "a", 2.0)], MeasureMode::Counting);
        assert!(matches!(asym, Err(Error::AsymmetricWeight { .. })));
        let dup = build_graph([("a", "b", 1.0), ("a", "b", 1.0)], MeasureMode::Counting);
        assert!(matches!(dup, Err(Error::DuplicateEdge { .. })));
        let neg = build_graph([("a", "b", -1.0)], MeasureMode::Counting);
        assert!(matches!(neg, Err(Error::NegativeWeight { .. })));
        let lp = build_graph([("a", "a", 1.0)], MeasureMode::Counting);
        assert_eq!(lp.unwrap_err(), Error::SelfLoop("a".into()));
        let nan = build_graph([("a", "b", f64::NAN)], MeasureMode::Counting);
        assert!(matches!(nan, Err(Error::NonFiniteWeight { .. })));
        let empty = build_graph(Vec::<(&str, &str, f64)>::new(), MeasureMode::Counting);
        assert_eq!(empty.unwrap_err(), Error::EmptyGraph);
    }

    #[test]
    fn both_orientations_with_equal_weight_are_one_edge() {
        let g = build_graph([("a", "b", 2.0), ("b", "a", 2.0)], MeasureMode::Counting).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree("a").unwrap(), 2.0);
    }

    #[test]
    fn zero_weight_edges_are_dropped() {
        let g = build_graph([("a", "b", 0.0), ("b", "c", 1.0)], MeasureMode::Counting).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 1);
        assert!(!g.is_connected());
    }

    #[test]
    fn canonical_order_is_numeric_aware() {
        let g = build_graph(
            [
                ("10", "9", 1.0),
                ("2", "x", 1.0),
                ("b", "a", 1.0),
                ("-3", "2", 1.0),
            ],
            MeasureMode::Counting,
        )
        .unwrap();
        assert_eq!(g.vertices(), ["-3", "2", "9", "10", "a", "b", "x"]);
    }

    #[test]
    fn inner_products_by_mode() {
        let g = p3(MeasureMode::Counting);
        let one = Signal::constant(&g, c(1.0));
        assert_eq!(g.inner_product(&one, &one).unwrap(), c(3.0));
        let g = p3(MeasureMode::Degree);
        let one = Signal::constant(&g, c(1.0));
        assert_eq!(g.inner_product(&one, &one).unwrap(), c(4.0));
    }

    #[test]
    fn inner_product_is_conjugate_linear_in_second_slot() {
        let g = p3(MeasureMode::Counting);
        let f = Signal::new(&g, vec![Complex::new(0.0, 1.0), c(0.0), c(0.0)]).unwrap();
        let one = Signal::constant(&g, c(1.0));
        assert_eq!(g.inner_product(&f, &one).unwrap(), Complex::new(0.0, 1.0));
        assert_eq!(g.inner_product(&one, &f).unwrap(), Complex::new(0.0, -1.0));
    }

    #[test]
    fn laplacian_of_delta_on_path() {
        let g = p3(MeasureMode::Counting);
        let lf = g.apply_laplacian(&Signal::delta(&g, 0)).unwrap();
        assert_eq!(lf.values(), &[c(1.0), c(-1.0), c(0.0)]);
        let lf = g
            .apply_laplacian(&Signal::constant(&g, Complex::new(2.0, -1.0)))
            .unwrap();
        assert_eq!(lf.max_abs(), 0.0);
    }

    #[test]
    fn path_matrix() {
        let g = p3(MeasureMode::Counting);
        let m = g.laplacian_matrix().unwrap();
        let want = [[1.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 1.0]];
        for (i, row) in want.iter().enumerate() {
            for (j, &w) in row.iter().enumerate() {
                assert_eq!(m.operator[(i, j)], w);
            }
        }
        assert_eq!(m.operator, m.symmetric);
    }

    #[test]
    fn degree_mode_matrix_is_similar_to_symmetric_form() {
        let g = build_graph([("0", "1", 2.0), ("1", "2", 0.5)], MeasureMode::Degree).unwrap();
        let m = g.laplacian_matrix().unwrap();
        assert!(m.symmetric.is_symmetric(1e-15));
        for i in 0..3 {
            for j in 0..3 {
                let back: f64 = m.symmetric[(i, j)] * m.scale[j] / m.scale[i];
                assert!((back - m.operator[(i, j)]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn isolated_vertex_in_degree_mode() {
        let g = Graph::new(["z"], [("a", "b", 1.0)], MeasureMode::Degree).unwrap();
        let f = Signal::zeros(&g);
        assert_eq!(
            g.apply_laplacian(&f).unwrap_err(),
            Error::IsolatedVertex("z".into())
        );
        assert!(g.laplacian_matrix().is_err());
        let g = g.with_mode(MeasureMode::Counting);
        assert!(g.apply_laplacian(&Signal::zeros(&g)).is_ok());
    }

    #[test]
    fn mismatched_signal() {
        let g = p3(MeasureMode::Counting);
        let h = build_graph([("0", "1", 1.0), ("1", "2", 2.0)], MeasureMode::Counting).unwrap();
        let f = Signal::zeros(&h);
        assert_eq!(g.apply_laplacian(&f).unwrap_err(), Error::GraphMismatch);
        assert_eq!(g.inner_product(&f, &f).unwrap_err(), Error::GraphMismatch);
        assert!(Signal::new(&g, vec![c(1.0)]).is_err());
    }

    #[test]
    fn vertex_sets() {
        let g = p3(MeasureMode::Counting);
        let s = VertexSet::from_ids(&g, ["2", "0", "2"]).unwrap();
        assert_eq!(s.indices(), &[0, 2]);
        assert_eq!(s.complement().indices(), &[1]);
        assert!(s.require_proper().is_ok());
        assert_eq!(VertexSet::all(&g).require_proper(), Err(Error::FullSet));
        assert_eq!(
            VertexSet::from_indices(&g, []).unwrap().require_proper(),
            Err(Error::EmptySet)
        );
        assert!(VertexSet::from_ids(&g, ["q"]).is_err());
    }
}
