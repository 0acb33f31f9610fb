//! Generalized Pauli operators in symplectic form, stabilizer groups, and
//! their weight distributions.

mod surface;
mod text;

pub use surface::{rotated_surface_code_logical_generators, Logical};
pub use text::{format_generators, parse_generators};

use std::fmt;

use rayon::prelude::*;

use crate::arith::is_prime;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sld::{Sld, Source};

/// `X^r Z^s` up to phase; entries live in `0..d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticPauli {
    d: u32,
    r: Vec<u8>,
    s: Vec<u8>,
}

impl SymplecticPauli {
    pub fn new(d: u32, r: Vec<u8>, s: Vec<u8>) -> Result<Self> {
        if !(2..=crate::graph::MAX_DIMENSION).contains(&d) {
            return Err(Error::invalid(format!("dimension d = {d} out of range")));
        }
        if r.len() != s.len() {
            return Err(Error::invalid(format!(
                "X part has {} sites but Z part has {}",
                r.len(),
                s.len()
            )));
        }
        if let Some(&bad) = r.iter().chain(&s).find(|&&x| x as u32 >= d) {
            return Err(Error::invalid(format!("exponent {bad} is not below d = {d}")));
        }
        Ok(SymplecticPauli { d, r, s })
    }

    pub fn identity(n: usize, d: u32) -> Result<Self> {
        Self::new(d, vec![0; n], vec![0; n])
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn r(&self) -> &[u8] {
        &self.r
    }

    pub fn s(&self) -> &[u8] {
        &self.s
    }

    /// Sites where the operator is not the identity.
    pub fn weight(&self) -> usize {
        symplectic_weight(self)
    }

    /// `r·s' - s·r' mod d`; zero iff the operators commute.
    pub fn symplectic_form(&self, other: &SymplecticPauli) -> u32 {
        let d = self.d as u64;
        let mut acc = 0u64;
        for i in 0..self.n() {
            acc += self.r[i] as u64 * other.s[i] as u64;
            acc += (d - self.s[i] as u64) * other.r[i] as u64;
        }
        (acc % d) as u32
    }

    /// Phase-free product `X^{r+r'} Z^{s+s'}`.
    pub fn mul(&self, other: &SymplecticPauli) -> SymplecticPauli {
        let d = self.d;
        let add = |a: &[u8], b: &[u8]| -> Vec<u8> {
            a.iter().zip(b).map(|(&x, &y)| ((x as u32 + y as u32) % d) as u8).collect()
        };
        SymplecticPauli {
            d,
            r: add(&self.r, &other.r),
            s: add(&self.s, &other.s),
        }
    }

    /// `self^c`, phase-free.
    pub fn pow(&self, c: u32) -> SymplecticPauli {
        let d = self.d;
        let scale = |a: &[u8]| -> Vec<u8> {
            a.iter().map(|&x| ((x as u64 * c as u64) % d as u64) as u8).collect()
        };
        SymplecticPauli {
            d,
            r: scale(&self.r),
            s: scale(&self.s),
        }
    }
}

impl fmt::Display for SymplecticPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::format_pauli(self))
    }
}

/// Number of sites `i` with `(r_i, s_i) != (0, 0)`.
pub fn symplectic_weight(p: &SymplecticPauli) -> usize {
    p.r.iter().zip(&p.s).filter(|&(&a, &b)| a != 0 || b != 0).count()
}

/// A commuting, independent set of generators on `n` sites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerGroup {
    n: usize,
    d: u32,
    generators: Vec<SymplecticPauli>,
}

impl StabilizerGroup {
    /// Checks site counts, pairwise commutation, and (for prime `d`) linear
    /// independence over `Z/dZ`.
    pub fn new(n: usize, d: u32, generators: Vec<SymplecticPauli>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("stabilizer group needs n >= 1"));
        }
        if generators.len() > n {
            return Err(Error::InvalidGroup(format!(
                "{} generators on {n} sites cannot be independent",
                generators.len()
            )));
        }
        for (k, p) in generators.iter().enumerate() {
            if p.n() != n || p.d() != d {
                return Err(Error::invalid(format!(
                    "generator {k} acts on {} sites with d = {}, expected {n} sites with d = {d}",
                    p.n(),
                    p.d()
                )));
            }
        }
        for a in 0..generators.len() {
            for b in a + 1..generators.len() {
                if generators[a].symplectic_form(&generators[b]) != 0 {
                    return Err(Error::InvalidGroup(format!(
                        "generators {a} and {b} do not commute"
                    )));
                }
            }
        }
        if is_prime(d) && rank_mod_prime(&generators, d) < generators.len() {
            return Err(Error::InvalidGroup("generators are linearly dependent".into()));
        }
        Ok(StabilizerGroup { n, d, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn generators(&self) -> &[SymplecticPauli] {
        &self.generators
    }

    /// `Π_i g_i^{c_i}` without phase.
    pub fn element(&self, coefficients: &[u32]) -> Result<SymplecticPauli> {
        if coefficients.len() != self.generators.len() {
            return Err(Error::invalid(format!(
                "expected {} coefficients, got {}",
                self.generators.len(),
                coefficients.len()
            )));
        }
        let mut acc = SymplecticPauli::identity(self.n, self.d)?;
        for (g, &c) in self.generators.iter().zip(coefficients) {
            acc = acc.mul(&g.pow(c));
        }
        Ok(acc)
    }
}

fn rank_mod_prime(generators: &[SymplecticPauli], d: u32) -> usize {
    let d = d as u64;
    let mut rows: Vec<Vec<u64>> = generators
        .iter()
        .map(|g| g.r.iter().chain(&g.s).map(|&x| x as u64).collect())
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = mod_pow(rows[rank][c], d - 2, d);
        let pivot: Vec<u64> = rows[rank].iter().map(|&x| x * inv % d).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + (d - f) * y) % d;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Generator `i` is `X^{e_i} Z^{Γ e_i}`.
pub fn graph_stabilizer_generators(g: &Graph) -> StabilizerGroup {
    let n = g.n();
    let generators = (0..n)
        .map(|i| {
            let mut r = vec![0u8; n];
            r[i] = 1;
            let s = (0..n).map(|j| g.weight(j, i) as u8).collect();
            SymplecticPauli { d: g.d(), r, s }
        })
        .collect();
    StabilizerGroup {
        n,
        d: g.d(),
        generators,
    }
}

const BLOCK_BITS: u32 = 10;

/// Weight histogram over all `d^g` group elements.
///
/// With `g = n` this is the sector-length distribution of the stabilizer
/// state; with fewer generators it is the weight enumerator of the group.
pub fn group_weight_distribution(group: &StabilizerGroup, limits: &Limits) -> Result<Sld> {
    let g = group.generators.len();
    if g > limits.max_generators {
        return Err(Error::ResourceCap {
            what: "group enumeration",
            requested: format!("{g} generators"),
            limit: format!("{} generators", limits.max_generators),
        });
    }
    let d = group.d;
    if d > 2 && !is_prime(d) {
        return Err(Error::unsupported(format!(
            "group enumeration needs prime d, got d = {d}"
        )));
    }
    let hist = if d == 2 && group.n <= 64 {
        qubit_histogram(group)
    } else {
        let states = (d as u128).pow(g as u32);
        if states > 1u128 << 40 {
            return Err(Error::ResourceCap {
                what: "group enumeration",
                requested: format!("{d}^{g} elements"),
                limit: "2^40 elements".into(),
            });
        }
        odometer_histogram(group)
    };
    Sld::from_integers(group.n, d, hist, Source::Group)
}

fn qubit_histogram(group: &StabilizerGroup) -> Vec<u64> {
    let n = group.n;
    let pack = |v: &[u8]| v.iter().enumerate().fold(0u64, |m, (i, &x)| m | (x as u64) << i);
    let xs: Vec<u64> = group.generators.iter().map(|p| pack(&p.r)).collect();
    let zs: Vec<u64> = group.generators.iter().map(|p| pack(&p.s)).collect();
    let g = xs.len() as u32;
    let block_bits = if g as usize <= crate::sld::SEQUENTIAL_BITS { 0 } else { BLOCK_BITS.min(g) };
    let block_len = 1u64 << (g - block_bits);
    (0..1u64 << block_bits)
        .into_par_iter()
        .map(|b| {
            let start = b * block_len;
            let mut code = start ^ (start >> 1);
            let (mut r, mut s) = (0u64, 0u64);
            while code != 0 {
                let j = code.trailing_zeros() as usize;
                r ^= xs[j];
                s ^= zs[j];
                code &= code - 1;
            }
            let mut hist = vec![0u64; n + 1];
            let mut i = start;
            loop {
                hist[(r | s).count_ones() as usize] += 1;
                i += 1;
                if i == start + block_len {
                    break;
                }
                let j = i.trailing_zeros() as usize;
                r ^= xs[j];
                s ^= zs[j];
            }
            hist
        })
        .reduce(|| vec![0u64; n + 1], add_hist)
}

fn odometer_histogram(group: &StabilizerGroup) -> Vec<u64> {
    let n = group.n;
    let d = group.d as u64;
    let g = group.generators.len();
    let mut t = 0;
    let mut blocks = 1u64;
    let small = (d as u128).pow(g as u32) <= 1 << crate::sld::SEQUENTIAL_BITS;
    while !small && t < g && blocks < 1 << BLOCK_BITS {
        blocks *= d;
        t += 1;
    }
    let inner = g - t;
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let du = d as u32;
            let mut coeffs = vec![0u32; g];
            let mut rest = b;
            for c in coeffs.iter_mut().skip(inner) {
                *c = (rest % d) as u32;
                rest /= d;
            }
            let mut r = vec![0u32; n];
            let mut s = vec![0u32; n];
            for (gen, &c) in group.generators.iter().zip(&coeffs) {
                for i in 0..n {
                    r[i] = (r[i] + gen.r[i] as u32 * c) % du;
                    s[i] = (s[i] + gen.s[i] as u32 * c) % du;
                }
            }
            let supports: Vec<Vec<usize>> = group
                .generators
                .iter()
                .map(|p| (0..n).filter(|&i| p.r[i] != 0 || p.s[i] != 0).collect())
                .collect();
            let mut weight = (0..n).filter(|&i| r[i] != 0 || s[i] != 0).count();
            let mut hist = vec![0u64; n + 1];
            'outer: loop {
                hist[weight] += 1;
                let mut j = 0;
                loop {
                    if j == inner {
                        break 'outer;
                    }
                    let gen = &group.generators[j];
                    for &i in &supports[j] {
                        let before = r[i] != 0 || s[i] != 0;
                        r[i] = (r[i] + gen.r[i] as u32) % du;
                        s[i] = (s[i] + gen.s[i] as u32) % du;
                        let after = r[i] != 0 || s[i] != 0;
                        weight = weight + after as usize - before as usize;
                    }
                    coeffs[j] = (coeffs[j] + 1) % du;
                    if coeffs[j] != 0 {
                        break;
                    }
                    j += 1;
                }
            }
            hist
        })
        .reduce(|| vec![0u64; n + 1], add_hist)
}

fn add_hist(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_family, Family};

    fn pauli(d: u32, r: &[u8], s: &[u8]) -> SymplecticPauli {
        SymplecticPauli::new(d, r.to_vec(), s.to_vec()).unwrap()
    }

    fn ints(s: &Sld) -> Vec<i64> {
        s.integers().unwrap().iter().map(|v| v.try_into().unwrap()).collect()
    }

    #[test]
    fn weights() {
        assert_eq!(symplectic_weight(&pauli(2, &[0, 0, 0], &[0, 0, 0])), 0);
        assert_eq!(symplectic_weight(&pauli(2, &[0, 1, 0], &[1, 0, 1])), 3);
        assert_eq!(symplectic_weight(&pauli(3, &[1, 0], &[0, 2])), 2);
        assert!(SymplecticPauli::new(2, vec![2], vec![0]).is_err());
        assert!(SymplecticPauli::new(2, vec![1], vec![0, 0]).is_err());
    }

    #[test]
    fn graph_generators() {
        let p3 = make_family(Family::Path, 3, 2).unwrap();
        let group = graph_stabilizer_generators(&p3);
        let text: Vec<String> = group.generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(text, ["XZI", "ZXZ", "IZX"]);
        let e = Graph::edgeless(2, 2).unwrap();
        let text: Vec<String> =
            graph_stabilizer_generators(&e).generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(text, ["XI", "IX"]);
        let c4 = make_family(Family::Cycle, 4, 2).unwrap();
        assert_eq!(graph_stabilizer_generators(&c4).generators()[0].to_string(), "XZIZ");
    }

    #[test]
    fn group_distribution_examples() {
        let lim = Limits::default();
        let ghz = parse_generators("XXX\nZZI\nIZZ\n", 2).unwrap();
        assert_eq!(ints(&group_weight_distribution(&ghz, &lim).unwrap()), vec![1, 0, 3, 4]);
        let p3 = make_family(Family::Path, 3, 2).unwrap();
        let group = graph_stabilizer_generators(&p3);
        assert_eq!(ints(&group_weight_distribution(&group, &lim).unwrap()), vec![1, 0, 3, 4]);
        let x = parse_generators("X", 2).unwrap();
        assert_eq!(ints(&group_weight_distribution(&x, &lim).unwrap()), vec![1, 1]);
        let rc4 = make_family(Family::Rc4, 4, 3).unwrap();
        let group = graph_stabilizer_generators(&rc4);
        assert_eq!(ints(&group_weight_distribution(&group, &lim).unwrap()), vec![1, 0, 0, 32, 48]);
    }

    #[test]
    fn invalid_groups() {
        assert!(matches!(parse_generators("XI\nZI\n", 2), Err(Error::InvalidGroup(_))));
        assert!(matches!(parse_generators("XX\nXX\n", 2), Err(Error::InvalidGroup(_))));
        assert!(matches!(parse_generators("X\nZ\nY\n", 2), Err(Error::InvalidGroup(_))));
        let lim = Limits { max_generators: 2, ..Limits::default() };
        let ghz = parse_generators("XXX\nZZI\nIZZ\n", 2).unwrap();
        assert!(matches!(group_weight_distribution(&ghz, &lim), Err(Error::ResourceCap { .. })));
        let g = Graph::from_edges(2, 4, &[(0, 1, 2)]).unwrap();
        let group = graph_stabilizer_generators(&g);
        assert!(matches!(
            group_weight_distribution(&group, &Limits::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn elements() {
        let p3 = make_family(Family::Path, 3, 2).unwrap();
        let group = graph_stabilizer_generators(&p3);
        let e = group.element(&[1, 0, 1]).unwrap();
        assert_eq!(e.to_string(), "XIX");
        assert_eq!(e.weight(), 2);
        assert!(group.element(&[1]).is_err());
    }
}
