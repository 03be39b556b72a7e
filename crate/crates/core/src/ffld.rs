//! Prime-field arithmetic, vectors over `F_p^n`, and the progression-free
//! predicate.

use std::collections::HashSet;
use std::fmt;
use std::io::{Read, Write};

use crate::error::{Error, Result};

/// Sets larger than this always use the quadratic predicate.
pub const CUBIC_PREDICATE_LIMIT: usize = 64;

/// `Z/pZ` for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        let a = a % self.p;
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }
}

/// A vector in `F_p^n` with every entry in `[0, p)`.
///
/// Vectors order lexicographically by entries, which coincides with the
/// order of their packed keys.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldVector {
    p: u32,
    entries: Vec<u32>,
}

impl FieldVector {
    pub fn new(p: u32, entries: Vec<u32>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|&&e| e >= p) {
            return Err(Error::domain(format!("entry {bad} not reduced modulo {p}")));
        }
        Ok(Self { p, entries })
    }

    /// Builds a vector from arbitrary integers, reducing each modulo `p`.
    pub fn reduced(field: PrimeField, values: &[i64]) -> Self {
        Self {
            p: field.p(),
            entries: values.iter().map(|&v| field.reduce(v)).collect(),
        }
    }

    pub fn zero(p: u32, n: usize) -> Self {
        Self { p, entries: vec![0; n] }
    }

    /// Inverse of [`FieldVector::key`].
    pub fn from_key(p: u32, n: usize, mut key: u64) -> Self {
        let mut entries = vec![0; n];
        for slot in entries.iter_mut().rev() {
            *slot = (key % p as u64) as u32;
            key /= p as u64;
        }
        Self { p, entries }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Base-`p` number whose most significant digit is the first entry.
    pub fn key(&self) -> u64 {
        self.entries
            .iter()
            .fold(0u64, |acc, &e| acc * self.p as u64 + e as u64)
    }

    pub fn scale(&self, field: PrimeField, c: u32) -> Self {
        Self {
            p: self.p,
            entries: self.entries.iter().map(|&e| field.mul(c, e)).collect(),
        }
    }
}

impl fmt::Display for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Every vector of `F_p^n` in key order.
pub fn all_points(p: u32, n: usize) -> impl Iterator<Item = FieldVector> {
    let total = (p as u64).pow(n as u32);
    (0..total).map(move |k| FieldVector::from_key(p, n, k))
}

/// Pointwise `a x + b y + c z` modulo `p`.
pub fn vec_combine(
    a: u32,
    x: &FieldVector,
    b: u32,
    y: &FieldVector,
    c: u32,
    z: &FieldVector,
) -> Result<FieldVector> {
    if x.p != y.p || x.p != z.p {
        return Err(Error::mismatch("vectors live over different fields"));
    }
    if x.dim() != y.dim() || x.dim() != z.dim() {
        return Err(Error::mismatch(format!(
            "dimensions differ: {}, {}, {}",
            x.dim(),
            y.dim(),
            z.dim()
        )));
    }
    let field = PrimeField::new(x.p)?;
    let entries = (0..x.dim())
        .map(|i| {
            let s = field.add(field.mul(a, x.entries[i]), field.mul(b, y.entries[i]));
            field.add(s, field.mul(c, z.entries[i]))
        })
        .collect();
    Ok(FieldVector { p: x.p, entries })
}

/// Coefficients `(alpha, beta, gamma)` with `alpha + beta + gamma = 0` and
/// `gamma != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProgressionSpec {
    field: PrimeField,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
}

impl ProgressionSpec {
    pub fn new(p: u32, alpha: i64, beta: i64, gamma: i64) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let (alpha, beta, gamma) = (field.reduce(alpha), field.reduce(beta), field.reduce(gamma));
        if field.add(field.add(alpha, beta), gamma) != 0 {
            return Err(Error::domain(format!(
                "alpha + beta + gamma = {alpha} + {beta} + {gamma} is not 0 mod {p}"
            )));
        }
        if gamma == 0 {
            return Err(Error::domain("gamma must be nonzero"));
        }
        Ok(Self { field, alpha, beta, gamma })
    }

    /// `(1, 1, 1)`, which is admissible only over `F_3`.
    pub fn cap() -> Self {
        Self::new(3, 1, 1, 1).expect("1 + 1 + 1 = 0 mod 3")
    }

    /// `(1, -2, 1)`: solutions are three-term arithmetic progressions.
    pub fn arithmetic(p: u32) -> Result<Self> {
        Self::new(p, 1, -2, 1)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn coefficients(&self) -> [u32; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    /// The unique `z` with `alpha x + beta y + gamma z = 0`.
    pub fn solve_third(&self, x: &FieldVector, y: &FieldVector) -> FieldVector {
        let f = self.field;
        let neg_inv = f.neg(f.inv(self.gamma).expect("gamma != 0"));
        let entries = x
            .entries
            .iter()
            .zip(&y.entries)
            .map(|(&a, &b)| f.mul(neg_inv, f.add(f.mul(self.alpha, a), f.mul(self.beta, b))))
            .collect();
        FieldVector { p: x.p, entries }
    }
}

/// A finite set of distinct vectors sharing `(p, n)`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    p: u32,
    n: usize,
    points: Vec<FieldVector>,
}

impl PointSet {
    pub fn new(p: u32, n: usize, mut points: Vec<FieldVector>) -> Result<Self> {
        PrimeField::new(p)?;
        for v in &points {
            if v.p != p || v.dim() != n {
                return Err(Error::mismatch(format!(
                    "point {v} does not belong to F_{p}^{n}"
                )));
            }
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::domain(format!("duplicate point {}", w[0])));
        }
        Ok(Self { p, n, points })
    }

    pub fn empty(p: u32, n: usize) -> Result<Self> {
        Self::new(p, n, Vec::new())
    }

    pub fn full(p: u32, n: usize) -> Result<Self> {
        Self::new(p, n, all_points(p, n).collect())
    }

    pub fn from_keys(p: u32, n: usize, keys: &[u64]) -> Result<Self> {
        Self::new(p, n, keys.iter().map(|&k| FieldVector::from_key(p, n, k)).collect())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[FieldVector] {
        &self.points
    }

    pub fn contains(&self, v: &FieldVector) -> bool {
        self.points.binary_search(v).is_ok()
    }

    pub fn keys(&self) -> Vec<u64> {
        self.points.iter().map(FieldVector::key).collect()
    }

    /// Writes the set as CSV: a `p=<p>,n=<n>` header, then one point per line.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
        w.write_record([format!("p={}", self.p), format!("n={}", self.n)])?;
        for v in &self.points {
            w.write_record(v.entries.iter().map(u32::to_string))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is ascii")
    }

    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(input);
        let mut records = rdr.records();
        let header = records
            .next()
            .ok_or_else(|| Error::parse("missing p=<p>,n=<n> header"))??;
        let field = |rec: &csv::StringRecord, idx: usize, key: &str| -> Result<u64> {
            rec.get(idx)
                .and_then(|s| s.strip_prefix(key))
                .and_then(|s| s.strip_prefix('='))
                .ok_or_else(|| Error::parse(format!("header must be p=<p>,n=<n>, got {rec:?}")))?
                .parse::<u64>()
                .map_err(|e| Error::parse(format!("bad header value: {e}")))
        };
        if header.len() != 2 {
            return Err(Error::parse(format!("header must be p=<p>,n=<n>, got {header:?}")));
        }
        let p = u32::try_from(field(&header, 0, "p")?).map_err(|e| Error::parse(e.to_string()))?;
        let n = field(&header, 1, "n")? as usize;

        let mut points = Vec::new();
        for (line, rec) in records.enumerate() {
            let rec = rec?;
            if rec.len() == 1 && rec.get(0) == Some("") {
                continue;
            }
            if rec.len() != n {
                return Err(Error::parse(format!(
                    "point on line {} has {} coordinates, expected {n}",
                    line + 2,
                    rec.len()
                )));
            }
            let entries = rec
                .iter()
                .map(|s| s.parse::<u32>().map_err(|e| Error::parse(format!("line {}: {e}", line + 2))))
                .collect::<Result<Vec<_>>>()?;
            points.push(FieldVector::new(p, entries)?);
        }
        PointSet::new(p, n, points)
    }

    pub fn from_csv_str(s: &str) -> Result<Self> {
        Self::read_csv(s.as_bytes())
    }
}

fn check_shared_field(a: &PointSet, spec: &ProgressionSpec) -> Result<()> {
    if a.p != spec.p() {
        return Err(Error::mismatch(format!(
            "point set over F_{} but coefficients over F_{}",
            a.p,
            spec.p()
        )));
    }
    Ok(())
}

/// Checks every ordered triple of `A^3`.
pub fn is_progression_free_cubic(a: &PointSet, spec: &ProgressionSpec) -> Result<bool> {
    check_shared_field(a, spec)?;
    let [al, be, ga] = spec.coefficients();
    for x in &a.points {
        for y in &a.points {
            for z in &a.points {
                if x == y && x == z {
                    continue;
                }
                if vec_combine(al, x, be, y, ga, z)?.entries.iter().all(|&e| e == 0) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Checks every ordered pair `(x, y)` by solving for the third point.
pub fn is_progression_free_quadratic(a: &PointSet, spec: &ProgressionSpec) -> Result<bool> {
    check_shared_field(a, spec)?;
    let members: HashSet<&FieldVector> = a.points.iter().collect();
    for x in &a.points {
        for y in &a.points {
            let z = spec.solve_third(x, y);
            if members.contains(&z) && !(x == y && *x == z) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff `alpha x + beta y + gamma z = 0` with `x, y, z` in `A` forces
/// `x = y = z`.
pub fn is_progression_free(a: &PointSet, spec: &ProgressionSpec) -> Result<bool> {
    if a.len() > CUBIC_PREDICATE_LIMIT {
        is_progression_free_quadratic(a, spec)
    } else {
        is_progression_free_cubic(a, spec)
    }
}
