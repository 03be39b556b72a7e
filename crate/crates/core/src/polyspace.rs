//! Spaces of reduced monomials over `F_p`, their evaluation matrices, and
//! rank computations that check the dimension inequalities of the
//! polynomial method on concrete instances.
//!
//! A monomial is reduced when every exponent is at most `q - 1`; such
//! monomials are linearly independent as functions on `F_q^n`.

use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::coeffs::{coeff_row, max_degree, RationalDegree};
use crate::error::{Error, Result};
use crate::ffld::{
    all_points, is_progression_free_quadratic, FieldVector, PointSet, PrimeField, ProgressionSpec,
};

/// Largest `q^n` for which the lab enumerates the whole space.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

/// Exponent vector of a reduced monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(q: u32, exponents: Vec<u32>) -> Result<Self> {
        if let Some(e) = exponents.iter().find(|&&e| e >= q) {
            return Err(Error::domain(format!("exponent {e} exceeds q - 1 = {}", q - 1)));
        }
        Ok(Self { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn total_degree(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }

    /// Value at `point`, with `0^0 = 1`.
    pub fn eval(&self, field: PrimeField, point: &FieldVector) -> u32 {
        self.exponents
            .iter()
            .zip(point.entries())
            .fold(1 % field.p(), |acc, (&e, &x)| field.mul(acc, field.pow(x, e as u64)))
    }
}

/// Reduced monomials of total degree at most `d`.
///
/// Ordering is graded: by total degree ascending, and within one degree by
/// exponent vector in descending lexicographic order, so that for `n = 2`
/// the list starts `1, x1, x2, x1^2, x1 x2, x2^2, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    q: u32,
    n: usize,
    d: RationalDegree,
    monomials: Vec<Monomial>,
}

impl MonomialBasis {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> RationalDegree {
        self.d
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Evaluates `sum_i coeffs[i] * monomial_i` at `point`.
    pub fn eval_combination(&self, coeffs: &[u32], point: &FieldVector) -> Result<u32> {
        if coeffs.len() != self.len() {
            return Err(Error::mismatch(format!(
                "{} coefficients for a basis of size {}",
                coeffs.len(),
                self.len()
            )));
        }
        let field = PrimeField::new(self.q)?;
        Ok(self
            .monomials
            .iter()
            .zip(coeffs)
            .filter(|(_, &c)| c != 0)
            .fold(0, |acc, (m, &c)| field.add(acc, field.mul(c, m.eval(field, point)))))
    }
}

fn push_with_sum(q: u32, n: usize, sum: u64, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if prefix.len() == n {
        if sum == 0 {
            out.push(Monomial { exponents: prefix.clone() });
        }
        return;
    }
    let remaining = (n - prefix.len() - 1) as u64 * (q as u64 - 1);
    let hi = sum.min(q as u64 - 1);
    let lo = sum.saturating_sub(remaining);
    for e in (lo..=hi).rev() {
        prefix.push(e as u32);
        push_with_sum(q, n, sum - e, prefix, out);
        prefix.pop();
    }
}

/// Enumerates the reduced monomials in `n` variables of total degree `<= d`.
pub fn monomial_basis(q: u32, n: usize, d: RationalDegree) -> Result<MonomialBasis> {
    PrimeField::new(q)?;
    if d.is_negative() {
        return Err(Error::domain(format!("degree must be nonnegative, got {d}")));
    }
    let top = (d.floor() as u64).min(max_degree(q, n as u32));
    let mut monomials = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    for t in 0..=top {
        push_with_sum(q, n, t, &mut prefix, &mut monomials);
    }
    Ok(MonomialBasis { q, n, d, monomials })
}

/// Dense matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Result<Self> {
        Ok(Self {
            field: PrimeField::new(p)?,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(p: u32, size: usize) -> Result<Self> {
        let mut m = Self::zeros(p, size, size)?;
        for i in 0..size {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    /// Builds a matrix from rows, reducing each entry modulo `p`.
    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::mismatch("rows have different lengths"));
        }
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&x| field.reduce(x)).collect(),
        })
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.field.p();
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![0; self.data.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[c * self.rows + r] = self.get(r, c);
            }
        }
        Self {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// `M v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::mismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// Reduced row echelon form and its pivot columns. Pivots are chosen as
    /// the first nonzero entry at or below the current row, scanning columns
    /// left to right.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..m.cols {
                    m.data.swap(pr * m.cols + c, row * m.cols + c);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for c in col..m.cols {
                let v = f.mul(inv, m.get(row, c));
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                let factor = m.get(r, col);
                if r == row || factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (k, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(k, free));
                }
                v
            })
            .collect()
    }
}

pub fn rank(m: &FpMatrix) -> usize {
    m.rank()
}

pub fn null_space(m: &FpMatrix) -> Vec<Vec<u32>> {
    m.null_space()
}

/// Entry `(i, j)` is monomial `i` evaluated at point `j`.
pub fn eval_matrix(basis: &MonomialBasis, points: &[FieldVector]) -> Result<FpMatrix> {
    let field = PrimeField::new(basis.q)?;
    if let Some(pt) = points.iter().find(|pt| pt.p() != basis.q || pt.dim() != basis.n) {
        return Err(Error::mismatch(format!(
            "point {pt} is not in F_{}^{}",
            basis.q, basis.n
        )));
    }
    let mut m = FpMatrix::zeros(basis.q, basis.len(), points.len())?;
    for (i, mono) in basis.monomials.iter().enumerate() {
        for (j, pt) in points.iter().enumerate() {
            m.set(i, j, mono.eval(field, pt));
        }
    }
    Ok(m)
}

fn guard(p: u32, n: usize) -> Result<u64> {
    let size = (p as u128).pow(n as u32);
    if size > ENUMERATION_LIMIT as u128 {
        return Err(Error::GuardExceeded {
            size,
            limit: ENUMERATION_LIMIT as u128,
        });
    }
    Ok(size as u64)
}

fn m_small(q: u32, n: usize, d: RationalDegree) -> Result<u64> {
    let m = coeff_row(q, n as u32)?.m_value(d)?;
    m.to_u64()
        .ok_or_else(|| Error::Numerical(format!("m = {m} does not fit in 64 bits")))
}

fn check_spec(a: &PointSet, spec: &ProgressionSpec) -> Result<()> {
    if a.p() != spec.p() {
        return Err(Error::mismatch(format!(
            "point set over F_{} but coefficients over F_{}",
            a.p(),
            spec.p()
        )));
    }
    Ok(())
}

/// Dimensions of the space of polynomials in the span of the degree-`d`
/// reduced monomials that vanish outside `-gamma A`, with both sides of the
/// sandwich `m_d - q^n + |A| <= dim V <= 2 m_{d/2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubspaceReport {
    pub q: u32,
    pub n: usize,
    pub d: RationalDegree,
    #[serde(rename = "dim_S")]
    pub dim_s: u64,
    #[serde(rename = "dim_V")]
    pub dim_v: u64,
    pub lower: i64,
    pub upper: u64,
    pub holds: bool,
}

/// Computes `dim V` by rank-nullity on the evaluation matrix at the points
/// outside `-gamma A`. The rank-nullity bound `q^n + dim V >= m_d + |A|` is
/// asserted on every call.
pub fn dim_v(a: &PointSet, d: RationalDegree, spec: &ProgressionSpec) -> Result<SubspaceReport> {
    check_spec(a, spec)?;
    let (q, n) = (a.p(), a.n());
    let total = guard(q, n)?;
    let field = spec.field();
    let neg_gamma = field.neg(spec.gamma);
    let image = PointSet::new(q, n, a.points().iter().map(|x| x.scale(field, neg_gamma)).collect())?;
    let outside: Vec<FieldVector> = all_points(q, n).filter(|x| !image.contains(x)).collect();

    let basis = monomial_basis(q, n, d)?;
    let dim_s = basis.len() as u64;
    let dim_v = dim_s - eval_matrix(&basis, &outside)?.rank() as u64;

    if total + dim_v < dim_s + a.len() as u64 {
        return Err(Error::Violation(format!(
            "rank-nullity bound failed: {total} + {dim_v} < {dim_s} + {}",
            a.len()
        )));
    }
    let lower = dim_s as i64 - total as i64 + a.len() as i64;
    let upper = 2 * m_small(q, n, d.half())?;
    let holds = lower.max(0) as u64 <= dim_v && dim_v <= upper.min(dim_s);
    Ok(SubspaceReport {
        q,
        n,
        d,
        dim_s,
        dim_v,
        lower,
        upper,
        holds,
    })
}

/// Outcome of the support-size check on polynomials vanishing at every
/// mix `alpha a + beta b` with `a != b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop2Report {
    pub q: u32,
    pub n: usize,
    pub d: RationalDegree,
    /// Dimension of the solution space; zero means only `P = 0` qualifies.
    pub solutions: usize,
    /// Largest `|{a in A : P(-gamma a) != 0}|` over the solution basis.
    pub count: usize,
    pub bound: u64,
    /// Every `A x A` matrix `B(x, y) = P(alpha x + beta y)` was diagonal with
    /// rank equal to its support count.
    pub diagonal_ok: bool,
    pub holds: bool,
}

/// Solves for the polynomials `P` of degree `<= d` with `P(alpha a + beta b) = 0`
/// for all distinct `a, b` in `A`, and checks each basis solution against
/// `2 m_{d/2}`.
pub fn proposition2_check(
    a: &PointSet,
    d: RationalDegree,
    spec: &ProgressionSpec,
) -> Result<Prop2Report> {
    check_spec(a, spec)?;
    let (q, n) = (a.p(), a.n());
    guard(q, n)?;
    let field = spec.field();
    let pts = a.points();

    let mut mixes = Vec::new();
    for x in pts {
        for y in pts {
            if x != y {
                mixes.push(combine2(field, spec.alpha, x, spec.beta, y));
            }
        }
    }
    mixes.sort();
    mixes.dedup();

    let basis = monomial_basis(q, n, d)?;
    // coefficient vectors c with c^T E = 0
    let solutions = eval_matrix(&basis, &mixes)?.transpose().null_space();

    let neg_gamma = field.neg(spec.gamma);
    let mut count = 0;
    let mut diagonal_ok = true;
    for coeffs in &solutions {
        let support = pts
            .iter()
            .map(|x| basis.eval_combination(coeffs, &x.scale(field, neg_gamma)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|&v| v != 0)
            .count();
        count = count.max(support);

        let mut b = FpMatrix::zeros(q, pts.len(), pts.len())?;
        for (i, x) in pts.iter().enumerate() {
            for (j, y) in pts.iter().enumerate() {
                let v = basis.eval_combination(coeffs, &combine2(field, spec.alpha, x, spec.beta, y))?;
                b.set(i, j, v);
                if i != j && v != 0 {
                    diagonal_ok = false;
                }
            }
        }
        if b.rank() != support {
            diagonal_ok = false;
        }
    }

    let bound = 2 * m_small(q, n, d.half())?;
    Ok(Prop2Report {
        q,
        n,
        d,
        solutions: solutions.len(),
        count,
        bound,
        diagonal_ok,
        holds: count as u64 <= bound && diagonal_ok,
    })
}

fn combine2(field: PrimeField, a: u32, x: &FieldVector, b: u32, y: &FieldVector) -> FieldVector {
    let entries: Vec<i64> = x
        .entries()
        .iter()
        .zip(y.entries())
        .map(|(&u, &v)| field.add(field.mul(a, u), field.mul(b, v)) as i64)
        .collect();
    FieldVector::reduced(field, &entries)
}

/// Both sides of `q^n <= m_{(q-1)n - d} + m_d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombinatorialReport {
    pub q: u32,
    pub n: u32,
    pub d: RationalDegree,
    #[serde(with = "crate::json")]
    pub lhs: BigUint,
    #[serde(with = "crate::json")]
    pub m_complement: BigUint,
    #[serde(with = "crate::json")]
    pub m_d: BigUint,
    pub holds: bool,
}

pub fn combinatorial_bound_check(q: u32, n: u32, d: RationalDegree) -> Result<CombinatorialReport> {
    let top = max_degree(q, n) as i64;
    if d.is_negative() || d > RationalDegree::integer(top) {
        return Err(Error::domain(format!("d = {d} outside [0, {top}]")));
    }
    let row = coeff_row(q, n)?;
    let lhs = BigUint::from(q).pow(n);
    let m_complement = row.m_value(d.complement_in(top))?;
    let m_d = row.m_value(d)?;
    let holds = lhs <= &m_complement + &m_d;
    Ok(CombinatorialReport {
        q,
        n,
        d,
        lhs,
        m_complement,
        m_d,
        holds,
    })
}

/// Greedy random progression-free set: visits `F_p^n` in a random order and
/// keeps each point that preserves the property, stopping at `target` points.
pub fn random_progression_free<R: Rng + ?Sized>(
    n: usize,
    spec: &ProgressionSpec,
    target: usize,
    rng: &mut R,
) -> Result<PointSet> {
    let p = spec.p();
    guard(p, n)?;
    let mut order: Vec<FieldVector> = all_points(p, n).collect();
    order.shuffle(rng);
    let mut chosen = PointSet::empty(p, n)?;
    for pt in order {
        if chosen.len() >= target {
            break;
        }
        let mut pts = chosen.points().to_vec();
        pts.push(pt);
        let candidate = PointSet::new(p, n, pts)?;
        if is_progression_free_quadratic(&candidate, spec)? {
            chosen = candidate;
        }
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::m_value;
    use crate::ffld::is_progression_free;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rd(s: &str) -> RationalDegree {
        s.parse().unwrap()
    }

    fn exps(b: &MonomialBasis) -> Vec<Vec<u32>> {
        b.monomials().iter().map(|m| m.exponents().to_vec()).collect()
    }

    #[test]
    fn basis_examples() {
        let b = monomial_basis(3, 2, rd("1")).unwrap();
        assert_eq!(exps(&b), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        let b = monomial_basis(5, 3, rd("0")).unwrap();
        assert_eq!(exps(&b), vec![vec![0, 0, 0]]);
        let b = monomial_basis(3, 1, rd("2")).unwrap();
        assert_eq!(exps(&b), vec![vec![0], vec![1], vec![2]]);
        let b = monomial_basis(3, 2, rd("2")).unwrap();
        assert_eq!(
            exps(&b),
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        assert!(monomial_basis(4, 2, rd("1")).is_err());
        assert!(monomial_basis(3, 2, rd("-1")).is_err());
        assert!(Monomial::new(3, vec![3]).is_err());
    }

    #[test]
    fn basis_size_matches_m() {
        for q in [2u32, 3, 5] {
            for n in 0..=6usize {
                for num in 0..=(3 * (q as i64 - 1) * n as i64) {
                    let d = RationalDegree::new(num, 3).unwrap();
                    let b = monomial_basis(q, n, d).unwrap();
                    assert_eq!(BigUint::from(b.len()), m_value(q, n as u32, d).unwrap());
                    assert!(b.monomials().iter().all(|m| m.total_degree() as i64 <= d.floor()));
                }
            }
        }
    }

    #[test]
    fn eval_examples() {
        let pts: Vec<_> = all_points(3, 1).collect();
        let ones = eval_matrix(&monomial_basis(3, 1, rd("0")).unwrap(), &pts).unwrap();
        assert_eq!(ones.row(0), &[1, 1, 1]);
        let m = eval_matrix(&monomial_basis(3, 1, rd("1")).unwrap(), &pts).unwrap();
        assert_eq!(m.row(0), &[1, 1, 1]);
        assert_eq!(m.row(1), &[0, 1, 2]);
        let wrong = vec![FieldVector::zero(5, 1)];
        assert!(eval_matrix(&monomial_basis(3, 1, rd("1")).unwrap(), &wrong).is_err());
    }

    #[test]
    fn full_basis_is_invertible() {
        for (q, n) in [(2u32, 3usize), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1)] {
            let top = RationalDegree::integer(max_degree(q, n as u32) as i64);
            let pts: Vec<_> = all_points(q, n).collect();
            let m = eval_matrix(&monomial_basis(q, n, top).unwrap(), &pts).unwrap();
            assert_eq!(m.rows(), pts.len());
            assert_eq!(m.rank(), pts.len());
        }
    }

    #[test]
    fn rank_examples() {
        let id = FpMatrix::identity(3, 5).unwrap();
        assert_eq!(id.rank(), 5);
        assert!(id.null_space().is_empty());
        let z = FpMatrix::zeros(3, 3, 4).unwrap();
        assert_eq!(z.rank(), 0);
        assert_eq!(z.null_space().len(), 4);
        let m = FpMatrix::from_rows(5, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        assert_eq!(m.mul_vec(&ns[0]).unwrap(), vec![0, 0, 0]);
    }

    // Independent route: same rows in shuffled order, eliminated with plain
    // forward elimination (no back substitution).
    fn forward_rank(p: u32, rows: &mut [Vec<u32>]) -> usize {
        let f = PrimeField::new(p).unwrap();
        let cols = rows.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows.len()).rev().find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, piv);
            let inv = f.inv(rows[r][c]).unwrap();
            for i in r + 1..rows.len() {
                let k = f.mul(rows[i][c], inv);
                for j in c..cols {
                    rows[i][j] = f.sub(rows[i][j], f.mul(k, rows[r][j]));
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn random_rank_against_reordered_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..200 {
            let rows_n = 6;
            let deficient = trial % 3;
            let mut rows: Vec<Vec<i64>> = (0..rows_n)
                .map(|_| (0..6).map(|_| rng.gen_range(0..5)).collect())
                .collect();
            for k in 0..deficient {
                let a = rng.gen_range(0..5);
                rows[rows_n - 1 - k] = rows[0].iter().zip(&rows[1]).map(|(x, y)| a * x + y).collect();
            }
            let m = FpMatrix::from_rows(5, &rows).unwrap();
            let mut shuffled: Vec<Vec<u32>> = (0..rows_n).map(|r| m.row(r).to_vec()).collect();
            shuffled.shuffle(&mut rng);
            let rank = m.rank();
            assert_eq!(rank, forward_rank(5, &mut shuffled));
            let ns = m.null_space();
            assert_eq!(rank + ns.len(), 6);
            for v in ns {
                assert!(m.mul_vec(&v).unwrap().iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn dim_v_examples() {
        let cap = ProgressionSpec::cap();
        let full = PointSet::full(3, 2).unwrap();
        for d in ["0", "1", "4/3", "2", "4"] {
            let rep = dim_v(&full, rd(d), &cap).unwrap();
            assert_eq!(rep.dim_v, rep.dim_s);
        }
        let empty = PointSet::empty(3, 2).unwrap();
        let rep = dim_v(&empty, rd("4"), &cap).unwrap();
        assert_eq!(rep.dim_v, 0);
        assert_eq!(rep.dim_s, 9);

        let a = PointSet::from_keys(3, 2, &[0, 1, 3, 4]).unwrap();
        assert!(is_progression_free(&a, &cap).unwrap());
        let rep = dim_v(&a, rd("2"), &cap).unwrap();
        assert!(rep.holds, "{rep:?}");
        assert_eq!(rep.upper, 6);
    }

    #[test]
    fn dim_v_guard() {
        let spec = ProgressionSpec::arithmetic(2).unwrap();
        let a = PointSet::empty(2, 21).unwrap();
        assert!(matches!(dim_v(&a, rd("1"), &spec), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn report_json_shape() {
        let a = PointSet::from_keys(3, 2, &[0, 1]).unwrap();
        let rep = dim_v(&a, rd("4/3"), &ProgressionSpec::cap()).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        for key in ["q", "n", "d", "dim_S", "dim_V", "lower", "upper", "holds"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["d"], "4/3");
    }

    #[test]
    fn proposition2_examples() {
        let cap = ProgressionSpec::cap();
        let a = PointSet::from_keys(3, 2, &[0, 1, 3, 4]).unwrap();
        let rep = proposition2_check(&a, rd("2"), &cap).unwrap();
        assert_eq!(rep.bound, 6);
        assert!(rep.holds, "{rep:?}");

        let a = PointSet::from_keys(3, 2, &[2, 7]).unwrap();
        let rep = proposition2_check(&a, rd("4"), &cap).unwrap();
        assert!(rep.diagonal_ok && rep.holds);
        assert!(rep.solutions > 0);

        // d = 0: only constants; a constant vanishing on a mix is zero
        let a = PointSet::from_keys(3, 2, &[0, 1]).unwrap();
        let rep = proposition2_check(&a, rd("0"), &cap).unwrap();
        assert_eq!(rep.solutions, 0);
        assert_eq!(rep.count, 0);
        assert!(rep.holds);
    }

    #[test]
    fn combinatorial_examples() {
        let r = combinatorial_bound_check(3, 2, rd("4/3")).unwrap();
        assert_eq!((r.lhs.clone(), r.m_complement.clone(), r.m_d.clone()), (9u32.into(), 6u32.into(), 3u32.into()));
        assert!(r.holds);
        let r = combinatorial_bound_check(5, 3, rd("0")).unwrap();
        assert_eq!(r.m_complement, BigUint::from(125u32));
        assert_eq!(r.m_d, BigUint::from(1u32));
        let r = combinatorial_bound_check(3, 4, rd("4")).unwrap();
        assert_eq!((r.lhs.clone(), r.m_complement.clone(), r.m_d.clone()), (81u32.into(), 50u32.into(), 50u32.into()));
        assert!(combinatorial_bound_check(3, 2, rd("9/2")).is_err());
        assert!(combinatorial_bound_check(3, 2, rd("-1/2")).is_err());
    }

    #[test]
    fn random_sets_are_progression_free_and_reproducible() {
        let cap = ProgressionSpec::cap();
        let a = random_progression_free(2, &cap, 9, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        let b = random_progression_free(2, &cap, 9, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert_eq!(a, b);
        assert!(is_progression_free(&a, &cap).unwrap());
        assert!(a.len() <= 4);
    }

    #[test]
    fn sandwich_on_random_sets_over_f5() {
        let spec = ProgressionSpec::arithmetic(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let target = rng.gen_range(1..=8);
            let a = random_progression_free(2, &spec, target, &mut rng).unwrap();
            for d in ["2", "8/3", "4", "16/3"] {
                assert!(dim_v(&a, rd(d), &spec).unwrap().holds);
                assert!(proposition2_check(&a, rd(d), &spec).unwrap().holds);
            }
        }
    }
}
