#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sldkit::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each pair gets an edge with probability `q`, weight uniform in `1..d`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, d: u32, q: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < q {
                edges.push((i, j, rng.random_range(1..d)));
            }
        }
    }
    Graph::from_edges(n, d, &edges).unwrap()
}

/// `swt(r, Γr)` histogram by direct matrix-vector products over every
/// colouring, with no incremental state.
pub fn naive_sld(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let d = g.d() as usize;
    let mut hist = vec![0u64; n + 1];
    let mut r = vec![0usize; n];
    loop {
        let weight = (0..n)
            .filter(|&i| {
                let s: usize = (0..n).map(|j| g.weight(i, j) as usize * r[j]).sum::<usize>() % d;
                r[i] != 0 || s != 0
            })
            .count();
        hist[weight] += 1;
        let mut i = 0;
        loop {
            if i == n {
                return hist;
            }
            r[i] = (r[i] + 1) % d;
            if r[i] != 0 {
                break;
            }
            i += 1;
        }
    }
}

pub fn integers(sld: &sldkit::Sld) -> Vec<u64> {
    sld.integers()
        .expect("integral distribution")
        .iter()
        .map(|v| v.try_into().unwrap())
        .collect()
}

type Matrix = Vec<Vec<Complex64>>;

fn zero(dim: usize) -> Matrix {
    vec![vec![Complex64::new(0.0, 0.0); dim]; dim]
}

/// Single-qubit Pauli `(x, z)` applied to qubit `site` of a basis state,
/// returning the image index and phase (`X` flips, `Z` signs, `Y = iXZ`).
fn pauli_on_basis(x: bool, z: bool, site: usize, index: usize) -> (usize, Complex64) {
    let bit = (index >> site) & 1;
    let mut phase = Complex64::new(1.0, 0.0);
    if z && bit == 1 {
        phase = -phase;
    }
    if x && z {
        phase *= Complex64::new(0.0, 1.0);
    }
    let out = if x { index ^ (1 << site) } else { index };
    (out, phase)
}

/// `P ρ P†` for a Pauli string with X part `xs` and Z part `zs` (bitmasks).
fn conjugate(rho: &Matrix, xs: usize, zs: usize, n: usize) -> Matrix {
    let dim = rho.len();
    let apply = |index: usize| {
        let mut idx = index;
        let mut phase = Complex64::new(1.0, 0.0);
        for site in 0..n {
            let (next, ph) = pauli_on_basis((xs >> site) & 1 == 1, (zs >> site) & 1 == 1, site, idx);
            idx = next;
            phase *= ph;
        }
        (idx, phase)
    };
    let images: Vec<(usize, Complex64)> = (0..dim).map(apply).collect();
    let mut out = zero(dim);
    for a in 0..dim {
        for b in 0..dim {
            let (ia, pa) = images[a];
            let (ib, pb) = images[b];
            out[ia][ib] += pa * rho[a][b] * pb.conj();
        }
    }
    out
}

/// Explicit Kraus application of local or global white noise to
/// `|ψ><ψ|`, then `A_k = Σ_{wt P = k} |Tr(ρ P)|²` over all `4^n` Paulis.
pub fn noisy_sld_dense(amplitudes: &[Complex64], n: usize, local: bool, p: f64) -> Vec<f64> {
    let dim = 1 << n;
    let mut rho = zero(dim);
    for a in 0..dim {
        for b in 0..dim {
            rho[a][b] = amplitudes[a] * amplitudes[b].conj();
        }
    }
    if local {
        for site in 0..n {
            let mut next = zero(dim);
            let terms = [(0usize, 0usize, 1.0 - 0.75 * p), (1, 0, p / 4.0), (0, 1, p / 4.0), (1, 1, p / 4.0)];
            for (x, z, w) in terms {
                let img = conjugate(&rho, x << site, z << site, n);
                for a in 0..dim {
                    for b in 0..dim {
                        next[a][b] += img[a][b] * w;
                    }
                }
            }
            rho = next;
        }
    } else {
        for (a, row) in rho.iter_mut().enumerate() {
            for (b, v) in row.iter_mut().enumerate() {
                *v *= 1.0 - p;
                if a == b {
                    *v += p / dim as f64;
                }
            }
        }
    }
    let mut hist = vec![0.0; n + 1];
    for xs in 0..dim {
        for zs in 0..dim {
            let mut trace = Complex64::new(0.0, 0.0);
            for col in 0..dim {
                let mut idx = col;
                let mut phase = Complex64::new(1.0, 0.0);
                for site in 0..n {
                    let (next, ph) =
                        pauli_on_basis((xs >> site) & 1 == 1, (zs >> site) & 1 == 1, site, idx);
                    idx = next;
                    phase *= ph;
                }
                // (ρ P)_{col,col} = Σ_j ρ[col][j] P[j][col]; P|col> = phase |idx>
                trace += rho[col][idx] * phase;
            }
            let weight = ((xs | zs) as u32).count_ones() as usize;
            hist[weight] += trace.norm_sqr();
        }
    }
    hist
}
