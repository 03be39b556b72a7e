//! Coefficient extraction by averaging over scaled roots of unity.
//!
//! For `zeta = exp(2 pi i / l)` with `l > max(deg f, i)` and any `r > 0`,
//!
//! ```text
//! coeff_i(f) = (1/l) * sum_{j=0}^{l-1} f(r zeta^j) / (r^i zeta^(ij))
//! ```
//!
//! The exact coefficient DP never calls into this module; it exists to check
//! that DP through an unrelated floating-point route.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Imaginary residue allowed on an extracted coefficient before scaling.
pub const IMAG_TOL: f64 = 1e-6;

/// `zeta^k` for `k = 0..l`, each computed directly from its angle.
fn roots_of_unity<T: Real>(l: usize) -> Vec<Complex<T>> {
    let step = T::TAU() / T::count(l as u64);
    (0..l)
        .map(|k| Complex::from_polar(T::one(), step * T::count(k as u64)))
        .collect()
}

/// Raw complex value of `sum_{j=0}^{l-1} zeta^(h j)`.
pub fn geometric_sum<T: Real>(l: usize, h: i64) -> Result<Complex<T>> {
    if l == 0 {
        return Err(Error::domain("root-of-unity order must be at least 1"));
    }
    let roots = roots_of_unity::<T>(l);
    let h = h.rem_euclid(l as i64) as usize;
    Ok((0..l).map(|j| roots[(h * j) % l]).fold(Complex::new(T::zero(), T::zero()), |a, b| a + b))
}

/// `l` if `l` divides `h`, else `0`, computed by complex summation and
/// rounding. Fails if the rounded sum disagrees with the divisibility rule.
pub fn geometric_sum_filter(l: usize, h: i64) -> Result<i64> {
    let sum = geometric_sum::<f64>(l, h)?;
    let rounded = sum.re.round() as i64;
    let expected = if h.rem_euclid(l as i64) == 0 { l as i64 } else { 0 };
    if rounded != expected || sum.im.abs() > 0.5 {
        return Err(Error::Numerical(format!(
            "geometric sum for l={l}, h={h} evaluated to {sum}, expected {expected}"
        )));
    }
    Ok(rounded)
}

/// Input to [`extract_coeff`].
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffOracleQuery<T> {
    /// Coefficients of `f`, lowest degree first.
    pub f: Vec<T>,
    pub i: usize,
    pub l: usize,
    pub r: T,
}

impl<T: Real> CoeffOracleQuery<T> {
    pub fn new(f: Vec<T>, i: usize, l: usize, r: T) -> Result<Self> {
        let q = Self { f, i, l, r };
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<()> {
        if self.f.is_empty() {
            return Err(Error::domain("polynomial must have at least one coefficient"));
        }
        let degree = self.f.len() - 1;
        if self.l <= degree.max(self.i) {
            return Err(Error::domain(format!(
                "need l > max(deg f, i): l = {}, deg f = {degree}, i = {}",
                self.l, self.i
            )));
        }
        if !(self.r > T::zero()) || !self.r.is_finite() {
            return Err(Error::domain(format!("radius must be positive, got {}", self.r)));
        }
        Ok(())
    }
}

fn horner<T: Real>(f: &[T], z: Complex<T>) -> Complex<T> {
    f.iter()
        .rev()
        .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * z + Complex::new(c, T::zero()))
}

/// Real part of the root-of-unity average; the imaginary residue must stay
/// below `IMAG_TOL` scaled by the magnitude of the largest summand.
pub fn extract_coeff<T: Real>(query: &CoeffOracleQuery<T>) -> Result<T> {
    query.validate()?;
    let CoeffOracleQuery { f, i, l, r } = query;
    let (i, l, r) = (*i, *l, *r);
    let roots = roots_of_unity::<T>(l);
    let r_pow_i = r.powi(i as i32);

    let mut sum = Complex::new(T::zero(), T::zero());
    let mut largest = T::zero();
    for j in 0..l {
        let value = horner(f, roots[j] * r);
        // zeta^(-ij) = conj(zeta^(ij))
        let term = value * roots[(i * j) % l].conj() / r_pow_i;
        largest = largest.max(term.norm());
        sum = sum + term;
    }
    let avg = sum / T::count(l as u64);

    let roundoff = T::lit(1e3) * T::epsilon() * T::count(l as u64) * largest;
    let allowed = T::lit(IMAG_TOL).max(roundoff);
    if avg.im.abs() > allowed {
        return Err(Error::Numerical(format!(
            "imaginary residue {} exceeds {allowed}",
            avg.im
        )));
    }
    Ok(avg.re)
}
