//! The rate function
//!
//! ```text
//! C(r, q) = (1 + r + ... + r^(q-1)) / r^((q-1)/3),   0 < r < 1,
//! ```
//!
//! which bounds `m_{(q-1)n/3} <= C(r, q)^n` for every admissible `r`, its
//! minimization over `r`, and the checks of the growth inequalities that
//! compare exact monomial counts against floating-point powers of `C`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::coeffs::{coeff_row, RationalDegree};
use crate::error::{Error, Result};
use crate::scalar::{big_le_real, Real};

/// Relative guard band applied to the floating side of every growth check.
pub const GROWTH_GUARD: f64 = 1e-9;
/// Default bracket width for [`minimize_crq`].
pub const DEFAULT_TOL: f64 = 1e-10;
/// Distance kept from the open ends of `(0, 1)` during minimization.
pub const EDGE_EPS: f64 = 1e-6;
/// Number of points in the bracketing pre-scan.
pub const GRID_POINTS: usize = 64;
const MAX_GOLDEN_ITERS: usize = 400;

fn check_r<T: Real>(r: T) -> Result<()> {
    if !(r > T::zero() && r < T::one()) {
        return Err(Error::domain(format!("r must lie in (0, 1), got {r}")));
    }
    Ok(())
}

fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::domain(format!("q must be at least 2, got {q}")));
    }
    Ok(())
}

fn rate_exponent<T: Real>(q: u32) -> T {
    T::count(q as u64 - 1) / T::lit(3.0)
}

/// `C(r, q)` evaluated from the geometric sum `1 + r + ... + r^(q-1)`.
pub fn crq<T: Real>(r: T, q: u32) -> Result<T> {
    check_q(q)?;
    check_r(r)?;
    let mut sum = T::zero();
    let mut power = T::one();
    for _ in 0..q {
        sum = sum + power;
        power = power * r;
    }
    Ok(sum / r.powf(rate_exponent(q)))
}

/// `C(r, q)` evaluated from the closed form `(1 - r^q) / ((1 - r) r^((q-1)/3))`.
pub fn crq_closed<T: Real>(r: T, q: u32) -> Result<T> {
    check_q(q)?;
    check_r(r)?;
    let one = T::one();
    Ok((one - r.powi(q as i32)) / ((one - r) * r.powf(rate_exponent(q))))
}

/// Minimizer of the rate function for one `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateReport<T> {
    pub q: u32,
    pub r_star: T,
    pub c_star: T,
    /// `C(r*, q)^2 / (1 - r*)`, the prefactor of the coefficient-extraction bound.
    pub appendix_b: T,
}

/// Minimizes `C(r, q)` over `r` in `(EDGE_EPS, 1 - EDGE_EPS)`.
///
/// A 64-point grid locates the best sample; golden-section search then
/// shrinks the bracket formed by its neighbours to width `tol`. Returns an
/// error if the minimum found is not below `q`, which would contradict the
/// existence of an admissible `r` with `C(r, q) < q`.
pub fn minimize_crq<T: Real>(q: u32, tol: T) -> Result<RateReport<T>> {
    check_q(q)?;
    if !(tol > T::zero()) {
        return Err(Error::domain(format!("tolerance must be positive, got {tol}")));
    }
    let f = |r: T| crq(r, q).expect("r kept inside (0, 1)");
    let eps = T::lit(EDGE_EPS);
    let span = T::one() - eps - eps;
    let last = GRID_POINTS - 1;
    let grid: Vec<T> = (0..GRID_POINTS)
        .map(|i| eps + span * T::count(i as u64) / T::count(last as u64))
        .collect();
    let (best, _) = grid
        .iter()
        .enumerate()
        .map(|(i, &x)| (i, f(x)))
        .fold((0, T::infinity()), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });

    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(last)];
    let (mut r_star, mut c_star) = golden_section(f, lo, hi, tol);
    let grid_val = f(grid[best]);
    if grid_val < c_star {
        r_star = grid[best];
        c_star = grid_val;
    }

    if !(c_star < T::count(q as u64)) {
        return Err(Error::Violation(format!(
            "no r in (0, 1) found with C(r, {q}) < {q}; best was C({r_star}) = {c_star}"
        )));
    }
    Ok(RateReport {
        q,
        r_star,
        c_star,
        appendix_b: c_star * c_star / (T::one() - r_star),
    })
}

fn golden_section<T: Real, F: Fn(T) -> T>(f: F, mut a: T, mut b: T, tol: T) -> (T, T) {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut c = b - (b - a) * inv_phi;
    let mut d = a + (b - a) * inv_phi;
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iters = 0;
    while (b - a) > tol && iters < MAX_GOLDEN_ITERS {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = f(d);
        }
        iters += 1;
    }
    let mid = (a + b) / T::lit(2.0);
    (mid, f(mid))
}

/// The `q = 3` minimizer `r = (sqrt(33) - 1) / 8` and the minimum
/// `((3/8)^3 (207 + 33 sqrt(33)))^(1/3)`, both from their closed forms.
pub fn q3_closed_form<T: Real>() -> (T, T) {
    let s33 = T::lit(33.0).sqrt();
    let r = (s33 - T::one()) / T::lit(8.0);
    let c = (T::lit(0.375).powi(3) * (T::lit(207.0) + T::lit(33.0) * s33)).cbrt();
    (r, c)
}

/// One side-by-side comparison of an exact count against a real bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport<T> {
    pub q: u32,
    pub n: u32,
    #[serde(with = "crate::json")]
    pub lhs: BigUint,
    pub rhs: T,
    pub holds: bool,
}

/// Compares `m_{(q-1)n/3}` with `C(r, q)^n`.
pub fn check_growth<T: Real>(q: u32, n: u32, r: T) -> Result<GrowthReport<T>> {
    let c = crq(r, q)?;
    let lhs = coeff_row(q, n)?.m_value(RationalDegree::third_of_max(q, n))?;
    let rhs = c.powi(n as i32);
    let holds = big_le_real(&lhs, rhs, GROWTH_GUARD);
    Ok(GrowthReport { q, n, lhs, rhs, holds })
}

/// Both inequalities of the coefficient-extraction route:
///
/// * `m_{(q-1)N}` in `3N` variables `<= C^(3N) / (1 - r)`, and
/// * `m_{(q-1)n/3}` in `n` variables `<= B C^n` with `B = C^2 / (1 - r)`,
///   evaluated for `n = 3N, 3N + 1, 3N + 2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppendixReport<T> {
    pub q: u32,
    pub big_n: u32,
    pub r: T,
    pub b_const: T,
    pub divisible: GrowthReport<T>,
    pub general: Vec<GrowthReport<T>>,
}

impl<T> AppendixReport<T> {
    pub fn holds(&self) -> bool {
        self.divisible.holds && self.general.iter().all(|g| g.holds)
    }
}

pub fn appendix_bound_check<T: Real>(q: u32, big_n: u32, r: T) -> Result<AppendixReport<T>> {
    let c = crq(r, q)?;
    let one = T::one();
    let b_const = c * c / (one - r);

    let vars = 3 * big_n;
    let degree = RationalDegree::integer((q as i64 - 1) * big_n as i64);
    let lhs = coeff_row(q, vars)?.m_value(degree)?;
    let rhs = c.powi(vars as i32) / (one - r);
    let divisible = GrowthReport {
        q,
        n: vars,
        holds: big_le_real(&lhs, rhs, GROWTH_GUARD),
        lhs,
        rhs,
    };

    let general = (vars..vars + 3)
        .map(|n| {
            let lhs = coeff_row(q, n)?.m_value(RationalDegree::third_of_max(q, n))?;
            let rhs = b_const * c.powi(n as i32);
            Ok(GrowthReport {
                q,
                n,
                holds: big_le_real(&lhs, rhs, GROWTH_GUARD),
                lhs,
                rhs,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(AppendixReport {
        q,
        big_n,
        r,
        b_const,
        divisible,
        general,
    })
}
