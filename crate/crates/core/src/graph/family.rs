use super::Graph;
use crate::error::{Error, Result};

/// Named graph families. Grid families carry their own shape; the vertex
/// count passed to [`make_family`] is ignored for them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Edgeless,
    Complete,
    /// Vertex 1 joined to every other vertex.
    Star,
    Path,
    Cycle,
    /// Vertex 1 joined to 2, 3, 4; vertex 2 joined to 1, 5, ..., n.
    Pusteblume,
    /// `rows x cols` nearest-neighbour lattice, vertices numbered row-major.
    Grid2d(usize, usize),
    Grid3d(usize, usize, usize),
    /// The weighted four-cycle with weights (+1, +1, +1, -1).
    Rc4,
}

impl Family {
    pub fn min_vertices(&self) -> usize {
        match self {
            Family::Cycle => 3,
            Family::Pusteblume => 5,
            Family::Rc4 => 4,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Edgeless => "edgeless",
            Family::Complete => "complete",
            Family::Star => "star",
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Pusteblume => "pusteblume",
            Family::Grid2d(..) => "grid2d",
            Family::Grid3d(..) => "grid3d",
            Family::Rc4 => "rc4",
        }
    }
}

pub fn make_family(family: Family, n: usize, d: u32) -> Result<Graph> {
    let n = match family {
        Family::Grid2d(l, m) => l * m,
        Family::Grid3d(l, m, k) => l * m * k,
        Family::Rc4 => 4,
        _ => n,
    };
    if n < family.min_vertices() {
        return Err(Error::invalid(format!(
            "{} needs at least {} vertices, got {n}",
            family.name(),
            family.min_vertices()
        )));
    }
    let mut edges: Vec<(usize, usize, u32)> = Vec::new();
    match family {
        Family::Edgeless => {}
        Family::Complete => {
            for i in 0..n {
                for j in i + 1..n {
                    edges.push((i, j, 1));
                }
            }
        }
        Family::Star => edges.extend((1..n).map(|j| (0, j, 1))),
        Family::Path => edges.extend((1..n).map(|j| (j - 1, j, 1))),
        Family::Cycle => edges.extend((0..n).map(|j| (j, (j + 1) % n, 1))),
        Family::Pusteblume => {
            edges.extend([(0, 1, 1), (0, 2, 1), (0, 3, 1)]);
            edges.extend((4..n).map(|j| (1, j, 1)));
        }
        Family::Grid2d(rows, cols) => {
            let at = |r: usize, c: usize| r * cols + c;
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        edges.push((at(r, c), at(r, c + 1), 1));
                    }
                    if r + 1 < rows {
                        edges.push((at(r, c), at(r + 1, c), 1));
                    }
                }
            }
        }
        Family::Grid3d(a, b, c) => {
            let at = |x: usize, y: usize, z: usize| (x * b + y) * c + z;
            for x in 0..a {
                for y in 0..b {
                    for z in 0..c {
                        if z + 1 < c {
                            edges.push((at(x, y, z), at(x, y, z + 1), 1));
                        }
                        if y + 1 < b {
                            edges.push((at(x, y, z), at(x, y + 1, z), 1));
                        }
                        if x + 1 < a {
                            edges.push((at(x, y, z), at(x + 1, y, z), 1));
                        }
                    }
                }
            }
        }
        Family::Rc4 => {
            edges.extend([(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, d - 1)]);
        }
    }
    Graph::from_edges(n, d, &edges)
}
