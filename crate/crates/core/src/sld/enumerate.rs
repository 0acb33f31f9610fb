use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use super::{Sld, Source};
use crate::arith::{self, gcd, is_prime};
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphProperties};

/// Blocks per parallel enumeration; fixed so the merge order never depends
/// on the worker count.
const BLOCK_BITS: u32 = 10;

/// Inputs this small are enumerated on the calling thread.
pub(crate) const SEQUENTIAL_BITS: usize = 14;

/// Qubit sector lengths by walking all `2^n` colourings in Gray-code order.
///
/// `A[k]` counts colourings `r` with `swt(r, Γr) = k`. Flipping bit `j` of
/// `r` toggles row `j` of `Γ` into the running syndrome `s = Γr`.
pub fn brute_force_sld(g: &Graph, limits: &Limits) -> Result<Sld> {
    if g.d() != 2 {
        return Err(Error::unsupported(
            "brute_force_sld handles qubits; use brute_force_sld_qudit for d > 2",
        ));
    }
    let n = g.n();
    if n > limits.max_qubits || n > 63 {
        return Err(Error::ResourceCap {
            what: "qubit enumeration",
            requested: format!("n = {n}"),
            limit: format!("n <= {}", limits.max_qubits.min(63)),
        });
    }
    let rows = g.bit_rows().expect("qubit graph with n <= 63 has bit rows");
    let total: u64 = 1 << n;
    if n <= SEQUENTIAL_BITS {
        return Sld::from_integers(n, 2, gray_block(rows, n, 0, total), Source::BruteForce);
    }
    let block_bits = BLOCK_BITS.min(n as u32);
    let block_len = total >> block_bits;

    let hist = (0..1u64 << block_bits)
        .into_par_iter()
        .map(|b| gray_block(rows, n, b * block_len, (b + 1) * block_len))
        .reduce(|| vec![0u64; n + 1], merge);
    Sld::from_integers(n, 2, hist, Source::BruteForce)
}

fn gray_block(rows: &[u64], n: usize, start: u64, end: u64) -> Vec<u64> {
    let mut hist = vec![0u64; n + 1];
    let mut r = start ^ (start >> 1);
    let mut s = 0u64;
    let mut bits = r;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        s ^= rows[j];
        bits &= bits - 1;
    }
    let mut i = start;
    loop {
        hist[(r | s).count_ones() as usize] += 1;
        i += 1;
        if i == end {
            break;
        }
        let j = i.trailing_zeros() as usize;
        r ^= 1 << j;
        s ^= rows[j];
    }
    hist
}

fn merge(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Qudit sector lengths over all `d^n` colourings `r`, counting
/// `swt_d(r, Γr)`. Digits advance odometer-style; incrementing digit `j`
/// adds row `j` to the running `Γr` modulo `d`.
pub fn brute_force_sld_qudit(g: &Graph, limits: &Limits) -> Result<Sld> {
    let n = g.n();
    let d = g.d() as u64;
    let states = (d as u128).checked_pow(n as u32);
    match states {
        Some(s) if s <= limits.max_qudit_states as u128 => {}
        _ => {
            return Err(Error::ResourceCap {
                what: "qudit enumeration",
                requested: format!("d^n = {d}^{n}"),
                limit: format!("{}", limits.max_qudit_states),
            })
        }
    }
    let neighbors: Vec<Vec<(usize, u32)>> = (0..n).map(|i| g.neighbors(i).collect()).collect();
    if states.is_some_and(|s| s <= 1 << SEQUENTIAL_BITS) {
        let hist = odometer_block(g, &neighbors, n, 0);
        return Sld::from_integers(n, g.d(), hist, Source::BruteForce);
    }

    // fix the top `t` digits per block
    let mut t = 0;
    let mut blocks = 1u64;
    while t < n && blocks < 1 << BLOCK_BITS {
        blocks *= d;
        t += 1;
    }
    let inner = n - t;
    let hist = (0..blocks)
        .into_par_iter()
        .map(|b| odometer_block(g, &neighbors, inner, b))
        .reduce(|| vec![0u64; n + 1], merge);
    Sld::from_integers(n, g.d(), hist, Source::BruteForce)
}

fn odometer_block(g: &Graph, neighbors: &[Vec<(usize, u32)>], inner: usize, block: u64) -> Vec<u64> {
    let n = g.n();
    let d = g.d();
    let mut r = vec![0u32; n];
    let mut rest = block;
    for digit in r.iter_mut().skip(inner) {
        *digit = (rest % d as u64) as u32;
        rest /= d as u64;
    }
    let mut s = vec![0u32; n];
    for (j, &rj) in r.iter().enumerate() {
        if rj != 0 {
            for &(i, w) in &neighbors[j] {
                s[i] = (s[i] + w * rj) % d;
            }
        }
    }
    let mut weight = (0..n).filter(|&i| r[i] != 0 || s[i] != 0).count();
    let mut hist = vec![0u64; n + 1];
    loop {
        hist[weight] += 1;
        // advance the odometer over the inner digits
        let mut j = 0;
        loop {
            if j == inner {
                return hist;
            }
            let before = r[j] != 0 || s[j] != 0;
            r[j] = (r[j] + 1) % d;
            let after = r[j] != 0 || s[j] != 0;
            weight = weight + after as usize - before as usize;
            for &(i, w) in &neighbors[j] {
                let before = r[i] != 0 || s[i] != 0;
                s[i] = (s[i] + w) % d;
                let after = r[i] != 0 || s[i] != 0;
                weight = weight + after as usize - before as usize;
            }
            if r[j] != 0 {
                break;
            }
            j += 1;
        }
    }
}

/// Dispatches to the qubit or qudit kernel.
pub fn graph_sld(g: &Graph, limits: &Limits) -> Result<Sld> {
    if g.d() == 2 {
        brute_force_sld(g, limits)
    } else {
        brute_force_sld_qudit(g, limits)
    }
}

/// Exact `A_0..=A_{k_max}` from colourings with at most `k_max` non-white
/// vertices; no other colouring can reach weight `<= k_max`.
pub fn low_weight_sectors(g: &Graph, k_max: usize) -> Result<Vec<u128>> {
    let n = g.n();
    if k_max > n {
        return Err(Error::invalid(format!("k_max = {k_max} exceeds n = {n}")));
    }
    let d = g.d();
    let neighbors: Vec<Vec<(usize, u32)>> = (0..n).map(|i| g.neighbors(i).collect()).collect();
    let mut hist = vec![0u128; k_max + 1];
    hist[0] = 1;
    let mut support: Vec<(usize, u32)> = Vec::with_capacity(k_max);
    let mut s = vec![0u32; n];
    extend_support(&neighbors, d, k_max, 0, &mut support, &mut s, &mut hist);
    Ok(hist)
}

fn extend_support(
    neighbors: &[Vec<(usize, u32)>],
    d: u32,
    k_max: usize,
    first: usize,
    support: &mut Vec<(usize, u32)>,
    s: &mut [u32],
    hist: &mut [u128],
) {
    if support.len() == k_max {
        return;
    }
    for j in first..neighbors.len() {
        for value in 1..d {
            for &(i, w) in &neighbors[j] {
                s[i] = (s[i] + w * value) % d;
            }
            support.push((j, value));
            let black = support.len();
            // white vertices with a nonzero syndrome
            let lit = s
                .iter()
                .enumerate()
                .filter(|&(i, &si)| si != 0 && !support.iter().any(|&(v, _)| v == i))
                .count();
            if black + lit <= k_max {
                hist[black + lit] += 1;
            }
            extend_support(neighbors, d, k_max, j + 1, support, s, hist);
            support.pop();
            for &(i, w) in &neighbors[j] {
                s[i] = (s[i] + (d - (w * value) % d)) % d;
            }
        }
    }
}

/// `A_1 = Σ_i |Ann(Γ e_i) \ {0}|`, where the annihilator of column `i` in
/// `Z/dZ` has exactly `gcd(d, γ_1i, ..., γ_ni)` elements.
pub fn a1_exact_qudit(g: &Graph) -> BigRational {
    let d = g.d();
    let total: u64 = (0..g.n())
        .map(|i| {
            let content = g.row(i).iter().fold(d, |acc, &w| gcd(acc, w as u32));
            (content - 1) as u64
        })
        .sum();
    arith::int(total)
}

/// Bracket on `A_2` for prime `d` from leaves and twin pairs:
/// `T_0 (d-1)^2 + (L + T_1)(d-1) <= A_2 <= T_0 (d-1)^2 + (L + Σ_{m>=1} T_m)(d-1)`.
pub fn a2_bounds_prime(g: &Graph) -> Result<(BigRational, BigRational)> {
    let d = g.d();
    if !is_prime(d) {
        return Err(Error::unsupported(format!(
            "A_2 bounds need prime d, got d = {d}"
        )));
    }
    let GraphProperties {
        leaves,
        twins_by_shared,
        ..
    } = g.properties();
    let t = |m: usize| twins_by_shared.get(m).copied().unwrap_or(0) as i64;
    let dm1 = BigInt::from(d - 1);
    let base = BigInt::from(t(0)) * &dm1 * &dm1;
    let lower = &base + BigInt::from(leaves as i64 + t(1)) * &dm1;
    let all: i64 = twins_by_shared.iter().skip(1).map(|&x| x as i64).sum();
    let upper = &base + BigInt::from(leaves as i64 + all) * &dm1;
    Ok((arith::int(lower), arith::int(upper)))
}
