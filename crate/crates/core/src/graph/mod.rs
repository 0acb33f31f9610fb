//! Weighted graphs over `Z/dZ` and the graph-theoretic quantities that feed
//! the sector-length formulas.
//!
//! Vertices are 0-based in the API and 1-based in every text format.

mod family;
mod io;
mod random;

pub use family::{make_family, Family};
pub use io::{parse_edge_list, parse_graph6, parse_graph_json, to_graph6, GraphDump};
pub(crate) use io::line_col_offset as io_offset;
pub use random::{sample_erdos_renyi, sample_erdos_renyi_stream};

use crate::error::{Error, Result};

/// Largest qudit dimension a [`Graph`] can carry (weights are stored as bytes).
pub const MAX_DIMENSION: u32 = 256;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    d: u32,
    /// Row-major symmetric weight matrix, zero diagonal.
    weights: Vec<u8>,
    /// Per-vertex neighbour bitmasks; only populated for `d == 2, n <= 64`.
    bit_rows: Vec<u64>,
}

impl Graph {
    pub fn edgeless(n: usize, d: u32) -> Result<Self> {
        Self::from_edges(n, d, &[])
    }

    /// Builds a graph from 0-based `(i, j, weight)` triples. Later duplicates
    /// overwrite earlier ones; a weight of zero removes the edge.
    pub fn from_edges(n: usize, d: u32, edges: &[(usize, usize, u32)]) -> Result<Self> {
        check_dims(n, d)?;
        let mut weights = vec![0u8; n * n];
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::invalid(format!(
                    "edge ({}, {}) out of range for n = {n}",
                    i + 1,
                    j + 1
                )));
            }
            if i == j {
                return Err(Error::invalid(format!("self-loop at vertex {}", i + 1)));
            }
            if w >= d {
                return Err(Error::invalid(format!("weight {w} not below d = {d}")));
            }
            weights[i * n + j] = w as u8;
            weights[j * n + i] = w as u8;
        }
        Ok(Self::assemble(n, d, weights))
    }

    /// Builds a graph from a full row-major `n x n` matrix, validating symmetry,
    /// the zero diagonal, and the entry range.
    pub fn from_matrix(n: usize, d: u32, matrix: &[u32]) -> Result<Self> {
        check_dims(n, d)?;
        if matrix.len() != n * n {
            return Err(Error::invalid(format!(
                "matrix has {} entries, expected {}",
                matrix.len(),
                n * n
            )));
        }
        for i in 0..n {
            if matrix[i * n + i] != 0 {
                return Err(Error::invalid(format!("nonzero diagonal at vertex {}", i + 1)));
            }
            for j in 0..n {
                let w = matrix[i * n + j];
                if w >= d {
                    return Err(Error::invalid(format!("weight {w} not below d = {d}")));
                }
                if w != matrix[j * n + i] {
                    return Err(Error::invalid(format!(
                        "matrix not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        let weights = matrix.iter().map(|&w| w as u8).collect();
        Ok(Self::assemble(n, d, weights))
    }

    fn assemble(n: usize, d: u32, weights: Vec<u8>) -> Self {
        let bit_rows = if d == 2 && n <= 64 {
            (0..n)
                .map(|i| {
                    (0..n).fold(0u64, |acc, j| {
                        if weights[i * n + j] != 0 {
                            acc | (1 << j)
                        } else {
                            acc
                        }
                    })
                })
                .collect()
        } else {
            Vec::new()
        };
        Graph {
            n,
            d,
            weights,
            bit_rows,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> u32 {
        self.weights[i * self.n + j] as u32
    }

    /// Row `i` of the weight matrix.
    pub fn row(&self, i: usize) -> &[u8] {
        &self.weights[i * self.n..(i + 1) * self.n]
    }

    /// Neighbour bitmask of vertex `i`, available for qubit graphs with at
    /// most 64 vertices.
    pub fn bit_row(&self, i: usize) -> Option<u64> {
        self.bit_rows.get(i).copied()
    }

    pub fn bit_rows(&self) -> Option<&[u64]> {
        if self.bit_rows.len() == self.n {
            Some(&self.bit_rows)
        } else {
            None
        }
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.row(i)
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0)
            .map(|(j, &w)| (j, w as u32))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().filter(|&&w| w != 0).count()
    }

    /// Edges as 0-based `(i, j, weight)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                let w = self.weight(i, j);
                if w != 0 {
                    out.push((i, j, w));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.weights.iter().filter(|&&w| w != 0).count() / 2
    }

    /// Qubit local complementation at `v`: toggles every edge between two
    /// neighbours of `v`.
    pub fn local_complement(&self, v: usize) -> Result<Graph> {
        if self.d != 2 {
            return Err(Error::unsupported(format!(
                "local complementation is implemented for d = 2, got d = {}",
                self.d
            )));
        }
        if v >= self.n {
            return Err(Error::invalid(format!("vertex {} out of range", v + 1)));
        }
        let nbrs: Vec<usize> = self.neighbors(v).map(|(j, _)| j).collect();
        let mut weights = self.weights.clone();
        for (a, &i) in nbrs.iter().enumerate() {
            for &j in &nbrs[a + 1..] {
                weights[i * self.n + j] ^= 1;
                weights[j * self.n + i] ^= 1;
            }
        }
        Ok(Self::assemble(self.n, self.d, weights))
    }

    pub fn properties(&self) -> GraphProperties {
        properties(self)
    }

    pub fn kernel_certificate(&self) -> Result<KernelCertificate> {
        kernel_certificate(self)
    }
}

fn check_dims(n: usize, d: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("graph needs at least one vertex"));
    }
    if !(2..=MAX_DIMENSION).contains(&d) {
        return Err(Error::invalid(format!(
            "dimension d = {d} outside 2..={MAX_DIMENSION}"
        )));
    }
    Ok(())
}

/// Counts that the low-order sector lengths are built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphProperties {
    /// Vertices with an all-zero row.
    pub isolated: usize,
    /// Vertices with exactly one neighbour.
    pub leaves: usize,
    /// Vertex pairs whose neighbourhoods agree outside the pair itself.
    pub twins: usize,
    /// `twins_by_shared[m]` counts twin pairs with exactly `m` common
    /// neighbours, for `m = 0..=n-2`.
    pub twins_by_shared: Vec<usize>,
    /// Maximum of `deg(i) + deg(j)` over edges, `None` for edgeless graphs.
    pub max_adjacent_degree_sum: Option<usize>,
    pub edge_count: usize,
}

/// Neighbourhoods are compared by support (zero vs nonzero weight), which is
/// plain equality for qubits.
pub fn properties(g: &Graph) -> GraphProperties {
    let n = g.n();
    let degrees: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    let isolated = degrees.iter().filter(|&&k| k == 0).count();
    let leaves = degrees.iter().filter(|&&k| k == 1).count();

    let mut twins_by_shared = vec![0usize; n.saturating_sub(1)];
    let mut twins = 0;
    for i in 0..n {
        for j in i + 1..n {
            let mut shared = 0;
            let mut twin = true;
            for k in (0..n).filter(|&k| k != i && k != j) {
                let a = g.weight(i, k) != 0;
                let b = g.weight(j, k) != 0;
                if a != b {
                    twin = false;
                    break;
                }
                if a {
                    shared += 1;
                }
            }
            if twin {
                twins += 1;
                twins_by_shared[shared] += 1;
            }
        }
    }

    let max_adjacent_degree_sum = g
        .edges()
        .iter()
        .map(|&(i, j, _)| degrees[i] + degrees[j])
        .max();

    GraphProperties {
        isolated,
        leaves,
        twins,
        twins_by_shared,
        max_adjacent_degree_sum,
        edge_count: g.edge_count(),
    }
}

/// Null space dimension of the adjacency matrix over GF(2), plus (when one
/// exists) a colouring `r` in which every vertex has an odd number of black
/// neighbours, i.e. `Γ r = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCertificate {
    pub kernel_dim: usize,
    pub all_odd_solution: Option<Vec<u8>>,
}

pub fn kernel_certificate(g: &Graph) -> Result<KernelCertificate> {
    if g.d() != 2 {
        return Err(Error::unsupported(format!(
            "kernel certificate needs d = 2, got d = {}",
            g.d()
        )));
    }
    let n = g.n();
    // augmented matrix [Γ | 1]; column n is the right-hand side
    let words = (n + 1).div_ceil(64);
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut row = vec![0u64; words];
            for (j, _) in g.neighbors(i) {
                row[j / 64] |= 1 << (j % 64);
            }
            row[n / 64] |= 1 << (n % 64);
            row
        })
        .collect();
    let bit = |row: &[u64], c: usize| (row[c / 64] >> (c % 64)) & 1 == 1;

    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).find(|&r| bit(&rows[r], col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && bit(row, col) {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }

    let consistent = rows[rank..].iter().all(|row| !bit(row, n));
    let all_odd_solution = consistent.then(|| {
        let mut r = vec![0u8; n];
        for (row, &col) in rows.iter().zip(&pivots) {
            r[col] = bit(row, n) as u8;
        }
        r
    });
    Ok(KernelCertificate {
        kernel_dim: n - rank,
        all_odd_solution,
    })
}
