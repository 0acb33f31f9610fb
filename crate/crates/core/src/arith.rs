//! Exact-arithmetic helpers shared by the enumeration and closed-form code.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Binomial coefficient with the convention `C(a, b) = 0` whenever `a < 0`,
/// `b < 0` or `b > a`.
pub fn binom(a: i64, b: i64) -> BigInt {
    if a < 0 || b < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= BigUint::from((a - i) as u64);
        acc /= BigUint::from((i + 1) as u64);
    }
    BigInt::from(acc)
}

/// Same convention as [`binom`], in machine integers. Panics on overflow.
pub fn binom_u128(a: i64, b: i64) -> u128 {
    if a < 0 || b < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc
            .checked_mul((a - i) as u128)
            .expect("binomial coefficient overflows u128")
            / (i + 1) as u128;
    }
    acc
}

/// Pascal triangle of exact binomials, used where many coefficients with
/// bounded top argument are needed.
pub struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(a, b)` with the zero convention; falls back to direct evaluation
    /// beyond the table.
    pub fn get(&self, a: i64, b: i64) -> BigInt {
        if a < 0 || b < 0 || b > a {
            return BigInt::zero();
        }
        match self.rows.get(a as usize) {
            Some(row) => row[b as usize].clone(),
            None => binom(a, b),
        }
    }

    pub fn get_ref(&self, a: i64, b: i64) -> Option<&BigInt> {
        if a < 0 || b < 0 || b > a {
            return None;
        }
        self.rows.get(a as usize).map(|row| &row[b as usize])
    }
}

pub fn pow(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Converts `num / den` to the nearest-ish `f64` without overflowing on
/// operands far outside the `f64` range.
pub fn ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    assert!(!den.is_zero(), "division by zero");
    if num.is_zero() {
        return 0.0;
    }
    let negative = (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus);
    let (n, d) = (num.magnitude(), den.magnitude());
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    // keep 64 significant bits of each operand
    let ns = (nb - 64).max(0);
    let ds = (db - 64).max(0);
    let nt = (n >> ns as usize).to_f64().unwrap_or(f64::INFINITY);
    let dt = (d >> ds as usize).to_f64().unwrap_or(f64::INFINITY);
    let shift = ns - ds;
    let mut value = nt / dt;
    // split the power of two so intermediate factors stay finite
    let mut remaining = shift;
    while remaining != 0 {
        let step = remaining.clamp(-1000, 1000);
        value *= 2f64.powi(step as i32);
        remaining -= step;
    }
    if negative {
        -value
    } else {
        value
    }
}

/// Natural logarithm of a positive rational, finite even when the value
/// itself lies far outside the `f64` range.
pub fn ln_positive(q: &BigRational) -> f64 {
    assert!(q.is_positive(), "logarithm of a non-positive value");
    ln_magnitude(q.numer()) - ln_magnitude(q.denom())
}

fn ln_magnitude(x: &BigInt) -> f64 {
    let m = x.magnitude();
    let shift = (m.bits() as i64 - 64).max(0);
    let top = (m >> shift as usize).to_f64().expect("64-bit value fits f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn to_f64(q: &BigRational) -> f64 {
    ratio_to_f64(q.numer(), q.denom())
}

/// Exact rational from a finite `f64`.
pub fn from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Renders an exact rational as `"p"` or `"p/q"`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `"p"`, `"-p"`, or `"p/q"` with `q > 0`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (text, None),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = match den {
        Some(den) => {
            if !den.bytes().all(|b| b.is_ascii_digit()) || den.is_empty() {
                return None;
            }
            den.parse().ok()?
        }
        None => BigInt::one(),
    };
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

pub fn is_prime(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut i = 2u32;
    while i * i <= d {
        if d.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

pub fn gcd(a: u32, b: u32) -> u32 {
    a.gcd(&b)
}

pub fn is_nonnegative(q: &BigRational) -> bool {
    !q.is_negative()
}
