use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{low_weight_sectors, Sld};
use crate::arith::{self, BinomialTable};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// First and second moment of the normalized distribution `a_k = A_k / d^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moments {
    pub mean: BigRational,
    pub second_moment: BigRational,
    pub variance: BigRational,
}

impl Moments {
    fn new(mean: BigRational, second_moment: BigRational) -> Self {
        let variance = &second_moment - &mean * &mean;
        Moments {
            mean,
            second_moment,
            variance,
        }
    }
}

/// Moments of a graph state from its low-order sectors alone.
///
/// Qubits use the isolated/leaf/twin counts directly; larger `d` takes
/// `A_1`, `A_2` from [`low_weight_sectors`].
pub fn moments_from_graph(g: &Graph) -> Result<Moments> {
    let n = g.n() as i64;
    if g.d() == 2 {
        let p = g.properties();
        let i = p.isolated as i64;
        let lt = (p.leaves + p.twins) as i64;
        let mean = arith::ratio(3 * n - i, 4);
        let variance = arith::ratio(3 * n - (i - 2) * i + 2 * lt, 16);
        let second = &variance + &mean * &mean;
        return Ok(Moments {
            mean,
            second_moment: second,
            variance,
        });
    }
    let low = low_weight_sectors(g, 2.min(g.n()))?;
    let a1 = BigInt::from(low[1]);
    let a2 = BigInt::from(low.get(2).copied().unwrap_or(0));
    let d = BigInt::from(g.d());
    let d2 = &d * &d;
    let d4 = &d2 * &d2;
    let nb = BigInt::from(n);

    let mean = BigRational::new((&d2 - 1u32) * &nb - &a1, d2.clone());
    let second = &d4 * &nb * &nb - &d2 * (2 * &nb - 1) * &nb + &nb * (&nb - 1)
        + (2 * (&nb - 1) - &d2 * (2 * &nb - 1)) * &a1
        + 2 * &a2;
    Ok(Moments::new(mean, BigRational::new(second, d4)))
}

/// Exact moments of `a = A / d^n`; only defined for pure-state
/// normalization `Σ A_k = d^n`.
pub fn moments_from_sld(sld: &Sld) -> Result<Moments> {
    if !sld.is_pure_normalized() {
        return Err(Error::invalid(format!(
            "moments need a pure-state SLD with total {}, got {}",
            sld.pure_total(),
            arith::format_rational(&sld.total())
        )));
    }
    let total = arith::int(sld.pure_total());
    let mut mean = BigRational::zero();
    let mut second = BigRational::zero();
    for (k, a) in sld.values().iter().enumerate() {
        let k = arith::int(k as u64);
        mean += &k * a;
        second += &k * &k * a;
    }
    Ok(Moments::new(mean / &total, second / total))
}

/// `residual[m] = Σ_{k<=m} C(n-k, m-k) A_k - d^{2m-n} Σ_k C(n-k, m) A_k`,
/// all zero for the distribution of any pure state.
pub fn macwilliams_residuals(sld: &Sld) -> Vec<BigRational> {
    let n = sld.n();
    let d = sld.d() as u64;
    let table = BinomialTable::new(n);
    let c = |a: usize, b: usize| arith::int(table.get(a as i64, b as i64));
    let a = sld.values();
    let dn = arith::int(arith::pow(d, n as u32));
    (0..=n)
        .map(|m| {
            let lhs: BigRational = (0..=m).map(|k| c(n - k, m - k) * &a[k]).sum();
            let inner: BigRational = (0..=n - m).map(|k| c(n - k, m) * &a[k]).sum();
            let scale = arith::int(arith::pow(d, 2 * m as u32));
            lhs - inner * scale / &dn
        })
        .collect()
}

/// `A_0 <= 1` and `A_k <= Σ_{b=1}^{k} C(n, b) (d-1)^b` for `k >= 1`.
pub fn coarse_bound_check(sld: &Sld) -> bool {
    let n = sld.n();
    let table = BinomialTable::new(n);
    let dm1 = BigInt::from(sld.d() - 1);
    let mut bound = BigInt::zero();
    let mut power = BigInt::one();
    for (k, a) in sld.values().iter().enumerate() {
        if k == 0 {
            if *a > BigRational::one() {
                return false;
            }
            continue;
        }
        power *= &dm1;
        bound += table.get(n as i64, k as i64) * &power;
        if *a > arith::int(bound.clone()) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;
    use crate::graph::{make_family, sample_erdos_renyi, Family};
    use crate::sld::{graph_sld, Source};

    fn sld(d: u32, a: &[i64]) -> Sld {
        Sld::from_integers(a.len() - 1, d, a.iter().copied(), Source::Input).unwrap()
    }

    #[test]
    fn five_vertex_moments() {
        let g = Graph::from_edges(5, 2, &[(1, 4, 1), (3, 4, 1), (2, 3, 1), (2, 4, 1)]).unwrap();
        let m = moments_from_graph(&g).unwrap();
        assert_eq!(m.mean, arith::ratio(7, 2));
        assert_eq!(m.variance, arith::ratio(5, 4));
    }

    #[test]
    fn sld_moments() {
        let m = moments_from_sld(&sld(2, &[1, 0, 3, 4])).unwrap();
        assert_eq!(m.mean, arith::ratio(9, 4));
        let m = moments_from_sld(&sld(2, &[1, 2, 1])).unwrap();
        assert_eq!(m.mean, arith::int(1));
        assert!(moments_from_sld(&sld(2, &[1, 0, 0])).is_err());
        let path = make_family(Family::Path, 8, 2).unwrap();
        assert_eq!(moments_from_graph(&path).unwrap().mean, arith::int(6));
        let e = Graph::edgeless(4, 2).unwrap();
        assert_eq!(moments_from_graph(&e).unwrap().mean, arith::int(2));
    }

    #[test]
    fn graph_moments_match_enumeration() {
        for d in [2u32, 3, 5] {
            for seed in 0..10u64 {
                let n = if d == 2 { 7 } else { 4 };
                let q = sample_erdos_renyi(n, 0.5, seed).unwrap();
                // scale weights so qudit cases see non-unit entries
                let edges: Vec<_> = q
                    .edges()
                    .into_iter()
                    .map(|(i, j, _)| (i, j, 1 + ((i + j + seed as usize) as u32 % (d - 1))))
                    .collect();
                let g = Graph::from_edges(n, d, &edges).unwrap();
                let s = graph_sld(&g, &Limits::default()).unwrap();
                assert_eq!(moments_from_graph(&g).unwrap(), moments_from_sld(&s).unwrap());
            }
        }
        let single = Graph::edgeless(1, 3).unwrap();
        let s = graph_sld(&single, &Limits::default()).unwrap();
        assert_eq!(moments_from_graph(&single).unwrap(), moments_from_sld(&s).unwrap());
    }

    #[test]
    fn residuals() {
        assert!(macwilliams_residuals(&sld(2, &[1, 0, 3, 4])).iter().all(Zero::is_zero));
        assert!(macwilliams_residuals(&sld(3, &[1, 0, 8])).iter().all(Zero::is_zero));
        let mixed = Sld::maximally_mixed(3, 2).unwrap();
        assert!(!macwilliams_residuals(&mixed)[1].is_zero());
    }

    #[test]
    fn coarse_bound() {
        assert!(coarse_bound_check(&sld(2, &[1, 0, 15, 0, 15, 0, 33])));
        assert!(!coarse_bound_check(&sld(2, &[1, 4, 3, 0])));
        assert!(coarse_bound_check(&sld(2, &[1, 3, 3, 1])));
    }
}
