use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Result};

/// Integer power series in `x`, known exactly below `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order, BigInt::zero());
        IntSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        let mut c = vec![BigInt::zero(); order];
        if order > 0 {
            c[0] = BigInt::one();
        }
        IntSeries { coeffs: c }
    }

    /// Generating function of the Catalan numbers, `(1 - sqrt(1-4x)) / 2x`.
    pub fn catalan(order: usize) -> Self {
        let mut c: Vec<BigInt> = Vec::with_capacity(order);
        for n in 0..order {
            if n == 0 {
                c.push(BigInt::one());
            } else {
                let s: BigInt = (0..n).map(|i| &c[i] * &c[n - 1 - i]).sum();
                c.push(s);
            }
        }
        IntSeries { coeffs: c }
    }

    /// `1 / sqrt(1 - 4x)`, the central binomial coefficients.
    pub fn inverse_sqrt_one_minus_4x(order: usize) -> Self {
        let mut c: Vec<BigInt> = Vec::with_capacity(order);
        for n in 0..order {
            if n == 0 {
                c.push(BigInt::one());
            } else {
                let prev = &c[n - 1];
                c.push(prev * (4 * n - 2) / n);
            }
        }
        IntSeries { coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> Option<&BigInt> {
        self.coeffs.get(i)
    }

    pub fn mul(&self, other: &IntSeries) -> IntSeries {
        let order = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        IntSeries { coeffs: out }
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn inverse(&self) -> Result<IntSeries> {
        let order = self.order();
        if order == 0 {
            return Ok(self.clone());
        }
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || *c0 == -BigInt::one()) {
            return invalid("series inverse needs constant term +-1");
        }
        let mut inv: Vec<BigInt> = Vec::with_capacity(order);
        inv.push(c0.clone());
        for n in 1..order {
            let s: BigInt = (1..=n).map(|i| &self.coeffs[i] * &inv[n - i]).sum();
            inv.push(-(s * c0));
        }
        Ok(IntSeries { coeffs: inv })
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, e: i32) -> Result<IntSeries> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = IntSeries::one(self.order());
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }
}

/// Binomial coefficient, zero for a negative lower index.
pub fn binomial(n: i64, r: i64) -> BigInt {
    if r < 0 {
        return BigInt::zero();
    }
    if n < 0 {
        // (-1)^r C(r-n-1, r)
        let v = binomial(r - n - 1, r);
        return if r % 2 == 0 { v } else { -v };
    }
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn catalan_number(n: u64) -> BigInt {
    binomial(2 * n as i64, n as i64) / (n + 1)
}

/// `[C(x)^j]_i` where `C` is the Catalan generating function.
pub fn catalan_series_coefficient(j: i32, i: usize) -> BigInt {
    IntSeries::catalan(i + 1)
        .pow(j)
        .expect("Catalan series has unit constant term")
        .coeffs[i]
        .clone()
}

/// Checks `[C(x)^(k-1) / sqrt(1-4x)]_(s-k) = C(2s-k, s-k) - C(2s-k-1, s-k-1)`, both as a series
/// product and as the convolution against `(i+1) C_i`.
pub fn series_sqrt_inverse_identity(s: u32, k: u32) -> bool {
    if k > s {
        return false;
    }
    let d = (s - k) as usize;
    let order = d + 1;
    let cpow = IntSeries::catalan(order).pow(k as i32 - 1).expect("unit constant term");
    let lhs = IntSeries::inverse_sqrt_one_minus_4x(order).mul(&cpow).coeffs[d].clone();
    let conv: BigInt = (0..=d)
        .map(|i| catalan_number(i as u64) * (i as u64 + 1) * &cpow.coeffs[d - i])
        .sum();
    let (s, k) = (s as i64, k as i64);
    let rhs = binomial(2 * s - k, s - k) - binomial(2 * s - k - 1, s - k - 1);
    lhs == rhs && conv == rhs
}
