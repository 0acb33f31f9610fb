//! Exact sector-length distributions of named state families, valid far
//! beyond the reach of enumeration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{self, binom, pow, BinomialTable};
use crate::error::{Error, Result};
use crate::graph::Family;
use crate::sld::{Sld, Source};

fn closed(n: usize, d: u32, values: Vec<BigInt>) -> Result<Sld> {
    Sld::new(n, d, values.into_iter().map(arith::int).collect(), Source::ClosedForm)
}

fn check_dimension(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::invalid(format!("dimension d = {d} must be at least 2")));
    }
    Ok(())
}

/// `A_k = C(n, k) (d-1)^k`.
pub fn sld_fully_separable(n: usize, d: u32) -> Result<Sld> {
    check_dimension(d)?;
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    let values = (0..=n)
        .map(|k| binom(n as i64, k as i64) * pow(d as u64 - 1, k as u32))
        .collect();
    closed(n, d, values)
}

/// `A_k = C(n, k) [k even] + 2^{n-1} [k = n]`.
pub fn sld_ghz(n: usize) -> Result<Sld> {
    sld_ghz_qudit(n, 2)
}

/// `A_k = C(n, k) ((d-1)^k + (-1)^k (d-1)) / d + [k = n] (d-1) d^{n-1}`.
pub fn sld_ghz_qudit(n: usize, d: u32) -> Result<Sld> {
    check_dimension(d)?;
    if n < 2 {
        return Err(Error::invalid(format!("GHZ state needs n >= 2, got {n}")));
    }
    let dm1 = BigInt::from(d - 1);
    let values = (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { dm1.clone() } else { -dm1.clone() };
            let mut a = binom(n as i64, k as i64) * (pow(d as u64 - 1, k as u32) + sign) / d;
            if k == n {
                a += &dm1 * pow(d as u64, n as u32 - 1);
            }
            a
        })
        .collect();
    closed(n, d, values)
}

/// `A_k = (C(n-3, k-3) + 3 C(n-2, k-2) + C(n-3, k)) [k even]
/// + 3·2^{n-4} [k = n-2] + 5·2^{n-4} [k = n]`.
pub fn sld_pusteblume(n: usize) -> Result<Sld> {
    if n < 5 {
        return Err(Error::invalid(format!("Pusteblume state needs n >= 5, got {n}")));
    }
    let (ni, p) = (n as i64, pow(2, n as u32 - 4));
    let values = (0..=n)
        .map(|k| {
            let ki = k as i64;
            let mut a = if k % 2 == 0 {
                binom(ni - 3, ki - 3) + 3 * binom(ni - 2, ki - 2) + binom(ni - 3, ki)
            } else {
                BigInt::zero()
            };
            if k == n - 2 {
                a += 3 * &p;
            }
            if k == n {
                a += 5 * &p;
            }
            a
        })
        .collect();
    closed(n, 2, values)
}

/// Ring cluster (cycle graph) state; `A_0 = 1` and for `k >= 1`
///
/// `A_k = (n/k) C(k, n-k) + Σ_{m=1}^{⌊(k-1)/2⌋} (n/m) C(k-2m-1, m-1)
///        Σ_{l=0}^{n-k} C(k-3m, n-k-l) C(l+m-1, l)`.
///
/// Panics if the last entry disagrees with [`ring_cluster_an`].
pub fn sld_ring_cluster(n: usize) -> Result<Sld> {
    if n < 3 {
        return Err(Error::invalid(format!("ring cluster state needs n >= 3, got {n}")));
    }
    let table = BinomialTable::new(2 * n);
    let c = |a: i64, b: i64| table.get_ref(a, b);
    let ni = n as i64;
    let values: Vec<BigRational> = (0..=ni)
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                return BigRational::one();
            }
            let mut total = BigRational::zero();
            if let Some(b) = c(k, ni - k) {
                total += BigRational::new(b * ni, BigInt::from(k));
            }
            for m in 1..=(k - 1) / 2 {
                let Some(outer) = c(k - 2 * m - 1, m - 1) else {
                    continue;
                };
                // C(k-3m, n-k-l) vanishes unless n-2k+3m <= l
                let mut inner = BigInt::zero();
                for l in (ni - 2 * k + 3 * m).max(0)..=ni - k {
                    if let (Some(a), Some(b)) = (c(k - 3 * m, ni - k - l), c(l + m - 1, l)) {
                        inner += a * b;
                    }
                }
                if !inner.is_zero() {
                    total += BigRational::new(outer * inner * ni, BigInt::from(m));
                }
            }
            total
        })
        .collect();
    let an = ring_cluster_an(n);
    assert_eq!(values[n], arith::int(an), "ring cluster A_n disagrees with the direct count");
    Sld::new(n, 2, values, Source::ClosedForm)
}

/// `A_n = 1 + Σ_{k=1}^{⌊n/3⌋} C(n-2k-1, k-1) n/k` for the ring cluster.
pub fn ring_cluster_an(n: usize) -> BigInt {
    let ni = n as i64;
    let mut total = BigRational::one();
    for k in 1..=ni / 3 {
        total += BigRational::new(binom(ni - 2 * k - 1, k - 1) * ni, BigInt::from(k));
    }
    assert!(total.is_integer());
    total.to_integer()
}

/// `A_k = C(n, k) (1 + (4k/n²)(2k - n - 1))`, exact rationals.
pub fn sld_w_state(n: usize) -> Result<Sld> {
    if n < 2 {
        return Err(Error::invalid(format!("W state needs n >= 2, got {n}")));
    }
    let ni = n as i64;
    let values = (0..=ni)
        .map(|k| {
            let factor = BigRational::one() + arith::ratio(4 * k * (2 * k - ni - 1), ni * ni);
            arith::int(binom(ni, k)) * factor
        })
        .collect();
    Sld::new(n, 2, values, Source::ClosedForm)
}

/// Four-qudit absolutely maximally entangled ring state, odd `d`:
/// `(1, 0, 0, 4(d²-1), d⁴ - 4(d²-1) - 1)`.
pub fn sld_rc4_qudit(d: u32) -> Result<Sld> {
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::invalid(format!("RC_d(4) closed form needs odd d >= 3, got {d}")));
    }
    let d2 = BigInt::from(d) * d;
    let a3 = 4 * (&d2 - 1);
    let a4 = &d2 * &d2 - &a3 - 1;
    closed(4, d, vec![BigInt::one(), BigInt::zero(), BigInt::zero(), a3, a4])
}

/// Closed form for a named graph family when one is known.
pub fn family_sld(family: Family, n: usize, d: u32) -> Option<Result<Sld>> {
    match (family, d) {
        (Family::Edgeless, _) => Some(sld_fully_separable(n, d)),
        (Family::Star, _) if n >= 2 => Some(sld_ghz_qudit(n, d)),
        (Family::Complete, 2) if n >= 2 => Some(sld_ghz(n)),
        (Family::Cycle, 2) => Some(sld_ring_cluster(n)),
        (Family::Pusteblume, 2) => Some(sld_pusteblume(n)),
        (Family::Rc4, d) if d % 2 == 1 => Some(sld_rc4_qudit(d)),
        _ => None,
    }
}

/// `b_k = C(n, k) p^k (1-p)^{n-k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialDistribution {
    pub n: usize,
    pub p: BigRational,
    pub values: Vec<BigRational>,
}

pub fn binomial_distribution(n: usize, p: &BigRational) -> Result<BinomialDistribution> {
    if *p < BigRational::zero() || *p > BigRational::one() {
        return Err(Error::invalid(format!(
            "probability {} outside [0, 1]",
            arith::format_rational(p)
        )));
    }
    let q = BigRational::one() - p;
    let ni = n as i64;
    let values = (0..=ni)
        .map(|k| {
            arith::int(binom(ni, k))
                * num_traits::pow(p.clone(), k as usize)
                * num_traits::pow(q.clone(), (ni - k) as usize)
        })
        .collect();
    Ok(BinomialDistribution {
        n,
        p: p.clone(),
        values,
    })
}

/// Floating binomial probabilities, evaluated in log space so large `n`
/// neither overflows nor underflows prematurely.
pub fn binomial_distribution_f64(n: usize, p: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("probability {p} outside [0, 1]")));
    }
    let mut out = vec![0.0; n + 1];
    if p == 0.0 {
        out[0] = 1.0;
        return Ok(out);
    }
    if p == 1.0 {
        out[n] = 1.0;
        return Ok(out);
    }
    let (lp, lq) = (p.ln(), (1.0 - p).ln());
    let mut log_c = 0.0f64;
    for (k, slot) in out.iter_mut().enumerate() {
        if k > 0 {
            log_c += ((n - k + 1) as f64).ln() - (k as f64).ln();
        }
        *slot = (log_c + k as f64 * lp + (n - k) as f64 * lq).exp();
    }
    Ok(out)
}
