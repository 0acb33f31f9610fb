use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{Sld, Source};
use crate::arith;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Entries within this distance of an integer are reported as that integer.
pub const SNAP_TOLERANCE: f64 = 1e-6;

const NORM_TOLERANCE: f64 = 1e-10;

fn system_size(len: usize, d: u32) -> Result<usize> {
    if d < 2 {
        return Err(Error::invalid(format!("dimension d = {d} must be at least 2")));
    }
    let mut n = 0;
    let mut size = 1usize;
    while size < len {
        size *= d as usize;
        n += 1;
    }
    if size != len || n == 0 {
        return Err(Error::invalid(format!(
            "amplitude vector of length {len} is not a power d^n of d = {d} with n >= 1"
        )));
    }
    Ok(n)
}

/// Floating sector lengths `A_k = Σ_{swt(r,s)=k} |<ψ|X^r Z^s|ψ>|^2` without
/// snapping. Basis index `j = Σ_i j_i d^i`.
pub fn statevector_sld_raw(amplitudes: &[Complex64], d: u32, limits: &Limits) -> Result<Vec<f64>> {
    let dim = amplitudes.len();
    if dim > limits.max_statevector_dim {
        return Err(Error::ResourceCap {
            what: "statevector dimension",
            requested: dim.to_string(),
            limit: limits.max_statevector_dim.to_string(),
        });
    }
    let n = system_size(dim, d)?;
    let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::invalid(format!("state is not normalized: <ψ|ψ> = {norm}")));
    }
    let du = d as usize;
    let digits: Vec<Vec<usize>> = (0..dim)
        .map(|mut j| {
            (0..n)
                .map(|_| {
                    let digit = j % du;
                    j /= du;
                    digit
                })
                .collect()
        })
        .collect();
    let support: Vec<u64> = digits
        .iter()
        .map(|ds| ds.iter().enumerate().filter(|(_, &x)| x != 0).fold(0, |m, (i, _)| m | 1 << i))
        .collect();
    let shift = |j: usize, r: usize| -> usize {
        let mut idx = 0;
        let mut place = 1;
        for i in 0..n {
            idx += ((digits[j][i] + digits[r][i]) % du) * place;
            place *= du;
        }
        idx
    };
    let roots: Vec<Complex64> = (0..du)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64))
        .collect();

    let hist = (0..dim)
        .into_par_iter()
        .map(|r| {
            // v_j = conj(ψ_{j+r}) ψ_j, then transform over every axis
            let mut v: Vec<Complex64> =
                (0..dim).map(|j| amplitudes[shift(j, r)].conj() * amplitudes[j]).collect();
            let mut scratch = vec![Complex64::new(0.0, 0.0); du];
            let mut stride = 1;
            for _ in 0..n {
                for base in 0..dim {
                    if (base / stride) % du != 0 {
                        continue;
                    }
                    for (s, out) in scratch.iter_mut().enumerate() {
                        *out = (0..du).map(|j| v[base + j * stride] * roots[(j * s) % du]).sum();
                    }
                    for (s, &value) in scratch.iter().enumerate() {
                        v[base + s * stride] = value;
                    }
                }
                stride *= du;
            }
            let mut h = vec![0.0; n + 1];
            for (s, value) in v.iter().enumerate() {
                h[(support[r] | support[s]).count_ones() as usize] += value.norm_sqr();
            }
            h
        })
        .reduce(
            || vec![0.0; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    Ok(hist)
}

/// [`statevector_sld_raw`] with every entry near an integer snapped to it;
/// any other entry is kept as the exact rational value of its float.
pub fn statevector_sld(amplitudes: &[Complex64], d: u32, limits: &Limits) -> Result<Sld> {
    let raw = statevector_sld_raw(amplitudes, d, limits)?;
    let n = raw.len() - 1;
    let values = raw
        .iter()
        .map(|&x| {
            let rounded = x.round();
            if (x - rounded).abs() <= SNAP_TOLERANCE {
                arith::from_f64(rounded.max(0.0))
            } else {
                arith::from_f64(x.max(0.0))
            }
        })
        .collect();
    Sld::new(n, d, values, Source::Statevector)
}

/// `ψ_x = d^{-n/2} ω^{Σ_{i<j} γ_ij x_i x_j}`.
pub fn graph_state_amplitudes(g: &Graph, limits: &Limits) -> Result<Vec<Complex64>> {
    let n = g.n();
    let d = g.d() as usize;
    let dim = d
        .checked_pow(n as u32)
        .filter(|&dim| dim <= limits.max_statevector_dim)
        .ok_or_else(|| Error::ResourceCap {
            what: "statevector dimension",
            requested: format!("{d}^{n}"),
            limit: limits.max_statevector_dim.to_string(),
        })?;
    let edges = g.edges();
    let scale = (dim as f64).sqrt().recip();
    Ok((0..dim)
        .map(|x| {
            let digit = |i: usize| x / d.pow(i as u32) % d;
            let phase: usize = edges.iter().map(|&(i, j, w)| w as usize * digit(i) * digit(j)).sum();
            Complex64::from_polar(scale, 2.0 * PI * (phase % d) as f64 / d as f64)
        })
        .collect())
}

/// `(|0...0> + |1...1> + ... + |d-1...d-1>) / √d`.
pub fn ghz_amplitudes(n: usize, d: u32) -> Result<Vec<Complex64>> {
    if n == 0 || d < 2 {
        return Err(Error::invalid("GHZ state needs n >= 1 and d >= 2"));
    }
    let du = d as usize;
    let dim = du.pow(n as u32);
    let mut v = vec![Complex64::new(0.0, 0.0); dim];
    let step = (dim - 1) / (du - 1);
    let amp = (d as f64).sqrt().recip();
    for k in 0..du {
        v[k * step] = Complex64::new(amp, 0.0);
    }
    Ok(v)
}

/// Uniform superposition of the `n` single-excitation qubit basis states.
pub fn w_state_amplitudes(n: usize) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::invalid("W state needs n >= 1"));
    }
    let mut v = vec![Complex64::new(0.0, 0.0); 1 << n];
    let amp = (n as f64).sqrt().recip();
    for i in 0..n {
        v[1 << i] = Complex64::new(amp, 0.0);
    }
    Ok(v)
}
