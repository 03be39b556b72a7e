//! The reproduction table: each row recomputes one claim end to end and
//! reports pass/fail together with its wall-clock budget.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Pow;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::asymptotics::{appendix_bound_check, check_growth, minimize_crq, q3_closed_form, DEFAULT_TOL};
use crate::coeff_oracle::{extract_coeff, geometric_sum_filter, CoeffOracleQuery};
use crate::coeffs::{cf_step, coeff_row, eg_bound, max_degree, CoeffRow, RationalDegree};
use crate::error::Result;
use crate::ffld::{all_points, ProgressionSpec};
use crate::polyspace::{
    combinatorial_bound_check, dim_v, eval_matrix, monomial_basis, proposition2_check,
    random_progression_free,
};
use crate::search::{
    find_valid_triples, max_progression_free, sample_cards, DEFAULT_NODE_BUDGET, SAMPLE_TWELVE_CAP,
    SAMPLE_VALID_TRIPLE,
};

/// Upper bound on `C(r*, 3)`.
pub const Q3_RATE_CEILING: f64 = 2.755105;
/// Upper bound on `C(r*, 3)^2 / (1 - r*)`.
pub const APPENDIX_CONSTANT_CEILING: f64 = 198.0;
pub const LAB_TRIALS: usize = 50;

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<28} {:>9.3}s / {:>4}s  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

type Check = fn(u64) -> Result<(bool, String)>;

const TABLE: [(u8, &str, u64, Check); 11] = [
    (1, "rate constant q=3", 1, rate_constant),
    (2, "rate below q", 1, rate_existence),
    (3, "growth inequality", 5, growth),
    (4, "coefficient identities", 5, coefficient_identities),
    (5, "complementary counts", 5, complementary_counts),
    (6, "polynomial-method lab", 120, polynomial_lab),
    (7, "basis and rank facts", 30, basis_rank),
    (8, "exhaustive maxima", 600, exhaustive_maxima),
    (9, "root-of-unity oracle", 5, root_of_unity_oracle),
    (10, "extraction-route bounds", 1, appendix_bounds),
    (11, "card game", 1, card_game),
];

/// Runs every row; `seed` drives the randomized lab instances.
pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    TABLE.iter().map(|&(id, name, secs, check)| run_one(id, name, secs, check, seed)).collect()
}

pub fn run_by_id(id: u8, seed: u64) -> Option<CriterionOutcome> {
    TABLE
        .iter()
        .find(|row| row.0 == id)
        .map(|&(id, name, secs, check)| run_one(id, name, secs, check, seed))
}

fn run_one(id: u8, name: &'static str, secs: u64, check: Check, seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let result = check(seed);
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(secs);
    let (ok, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionOutcome {
        id,
        name,
        passed: ok && elapsed <= limit,
        detail,
        elapsed,
        limit,
    }
}

fn rate_constant(_: u64) -> Result<(bool, String)> {
    let rep = minimize_crq::<f64>(3, DEFAULT_TOL)?;
    let (r, c) = q3_closed_form::<f64>();
    let ok = (rep.c_star - c).abs() < 1e-7 && rep.c_star < Q3_RATE_CEILING && (rep.r_star - r).abs() < 1e-6;
    Ok((ok, format!("r*={:.9} c*={:.9}", rep.r_star, rep.c_star)))
}

fn rate_existence(_: u64) -> Result<(bool, String)> {
    let mut parts = Vec::new();
    let mut ok = true;
    for q in [2u32, 3, 4, 5, 7, 8] {
        let rep = minimize_crq::<f64>(q, DEFAULT_TOL)?;
        ok &= rep.r_star > 0.0 && rep.r_star < 1.0 && rep.c_star < q as f64;
        parts.push(format!("q{q}:{:.4}", rep.c_star));
    }
    Ok((ok, parts.join(" ")))
}

fn growth(_: u64) -> Result<(bool, String)> {
    let mut checked = 0;
    let mut failed = Vec::new();
    for q in [2u32, 3, 5] {
        let r = minimize_crq::<f64>(q, DEFAULT_TOL)?.r_star;
        for n in 0..=30 {
            checked += 1;
            if !check_growth(q, n, r)?.holds {
                failed.push(format!("q={q},n={n}"));
            }
        }
    }
    Ok((failed.is_empty(), format!("{checked} cases, failures: {failed:?}")))
}

fn coefficient_identities(_: u64) -> Result<(bool, String)> {
    let mut checked = 0;
    for q in 2u32..=5 {
        let mut stepped = CoeffRow::unit(q)?;
        for n in 0u32..=12 {
            if n > 0 {
                stepped = cf_step(q, &stepped)?;
            }
            let row = coeff_row(q, n)?;
            let v = row.values();
            let sum: BigUint = v.iter().sum();
            let symmetric = (0..v.len()).all(|j| v[j] == v[v.len() - 1 - j]);
            if sum != BigUint::from(q).pow(n) || !symmetric || stepped != row {
                return Ok((false, format!("identity failed at q={q}, n={n}")));
            }
            checked += 1;
        }
    }
    Ok((true, format!("{checked} rows")))
}

fn degree_grid(q: u32, n: u32) -> Vec<RationalDegree> {
    let top = max_degree(q, n) as i64;
    (0..=12)
        .map(|k| RationalDegree::new(k * top, 12).expect("positive denominator"))
        .collect()
}

fn complementary_counts(_: u64) -> Result<(bool, String)> {
    let mut checked = 0;
    let mut violations = 0;
    for q in [2u32, 3, 5] {
        for n in 0u32..=6 {
            for d in degree_grid(q, n) {
                checked += 1;
                if !combinatorial_bound_check(q, n, d)?.holds {
                    violations += 1;
                }
            }
        }
    }
    Ok((violations == 0, format!("{checked} cases, {violations} violations")))
}

fn polynomial_lab(seed: u64) -> Result<(bool, String)> {
    let spec = ProgressionSpec::cap();
    let degrees = ["1", "4/3", "2", "8/3"].map(|s| s.parse::<RationalDegree>().expect("literal"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut runs = 0;
    let mut failures = 0;
    for n in [1usize, 2] {
        let total = 3usize.pow(n as u32);
        for _ in 0..LAB_TRIALS {
            let target = rng.gen_range(1..=total);
            let a = random_progression_free(n, &spec, target, &mut rng)?;
            for &d in &degrees {
                runs += 1;
                let sandwich = dim_v(&a, d, &spec)?;
                let prop = proposition2_check(&a, d, &spec)?;
                if !sandwich.holds || !prop.holds {
                    failures += 1;
                }
            }
        }
    }
    Ok((failures == 0, format!("{runs} instance checks, {failures} failures")))
}

fn basis_rank(_: u64) -> Result<(bool, String)> {
    let mut checked = 0;
    for q in [2u32, 3, 5] {
        for n in 0u32..=6 {
            let row = coeff_row(q, n)?;
            for d in degree_grid(q, n) {
                checked += 1;
                if BigUint::from(monomial_basis(q, n as usize, d)?.len()) != row.m_value(d)? {
                    return Ok((false, format!("basis size mismatch at q={q}, n={n}, d={d}")));
                }
            }
        }
    }
    for (q, n) in [(3u32, 1usize), (3, 2), (5, 1)] {
        let top = RationalDegree::integer(max_degree(q, n as u32) as i64);
        let pts: Vec<_> = all_points(q, n).collect();
        let rank = eval_matrix(&monomial_basis(q, n, top)?, &pts)?.rank();
        if rank != pts.len() {
            return Ok((false, format!("rank {rank} != {} for q={q}, n={n}", pts.len())));
        }
    }
    Ok((true, format!("{checked} basis sizes, 3 full-rank matrices")))
}

fn exhaustive_maxima(_: u64) -> Result<(bool, String)> {
    let spec = ProgressionSpec::cap();
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, want) in [(1usize, 2usize), (2, 4), (3, 9)] {
        let res = max_progression_free(3, n, &spec, DEFAULT_NODE_BUDGET)?;
        let bound = eg_bound(3, n as u32)?;
        ok &= res.exhaustive && res.max_size == want && BigUint::from(res.max_size) <= bound;
        parts.push(format!("n={n}: {} <= {bound}", res.max_size));
    }
    Ok((ok, parts.join(", ")))
}

fn root_of_unity_oracle(_: u64) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for n in 0u32..=8 {
        let row = coeff_row(3, n)?;
        let f: Vec<f64> = row.values().iter().map(|c| c.to_string().parse().expect("decimal")).collect();
        let l = max_degree(3, n) as usize + 1;
        for (i, &exact) in f.iter().enumerate() {
            let got = extract_coeff(&CoeffOracleQuery::new(f.clone(), i, l, 0.6)?)?;
            worst = worst.max((got - exact).abs() / exact);
        }
    }
    for l in 1..=64usize {
        for h in -512i64..=512 {
            let want = if h % l as i64 == 0 { l as i64 } else { 0 };
            if geometric_sum_filter(l, h)? != want {
                return Ok((false, format!("filter mismatch at l={l}, h={h}")));
            }
        }
    }
    Ok((worst <= 1e-5, format!("worst relative error {worst:.2e}")))
}

fn appendix_bounds(_: u64) -> Result<(bool, String)> {
    let r = minimize_crq::<f64>(3, DEFAULT_TOL)?.r_star;
    let mut ok = true;
    let mut b = 0.0;
    for big_n in 0..=8 {
        let rep = appendix_bound_check(3, big_n, r)?;
        ok &= rep.divisible.holds;
        b = rep.b_const;
    }
    ok &= b <= APPENDIX_CONSTANT_CEILING;
    Ok((ok, format!("B = {b:.4}")))
}

fn card_game(_: u64) -> Result<(bool, String)> {
    let twelve = find_valid_triples(&sample_cards(&SAMPLE_TWELVE_CAP))?.len();
    let three = find_valid_triples(&sample_cards(&SAMPLE_VALID_TRIPLE))?.len();
    Ok((twelve == 0 && three == 1, format!("12 cards: {twelve} triples, 3 cards: {three}")))
}
