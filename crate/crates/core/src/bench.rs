//! Example families, placement evaluation and comparison tables.

use std::fmt::{self, Write as _};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{eigenvalues, qr_decompose, ComplexScalar, DenseMatrix, DenseVector, PrecisionMode};
use crate::placement::{place_with_precision, Algorithm, Gain, PoleSpec, StateSpace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BenchError {
    #[error("the integer family needs n >= 3, got {0}")]
    FamilyTooSmall(usize),
    #[error("dimension must be at least 1")]
    ZeroDimension,
}

/// Imaginary parts above `1e-10 * max(1, |lambda|)` count as a complex pair.
pub const PAIR_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyKind {
    IntegerFamily,
    ScaledDiagonal,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::IntegerFamily => "integer",
            FamilyKind::ScaledDiagonal => "diag",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExampleFamily {
    pub kind: FamilyKind,
    pub n: usize,
    /// Similarity seed; used by the scaled-diagonal family only.
    pub seed: Option<u64>,
}

impl ExampleFamily {
    pub fn integer(n: usize) -> Self {
        Self {
            kind: FamilyKind::IntegerFamily,
            n,
            seed: None,
        }
    }

    pub fn scaled_diagonal(n: usize, seed: Option<u64>) -> Self {
        Self {
            kind: FamilyKind::ScaledDiagonal,
            n,
            seed,
        }
    }

    pub fn system(&self) -> Result<StateSpace<f64>, BenchError> {
        match self.kind {
            FamilyKind::IntegerFamily => gen_integer_example(self.n),
            FamilyKind::ScaledDiagonal => gen_scaled_diagonal(self.n, self.seed),
        }
    }

    /// The poles used for this family: `-1..-n` for the integer family,
    /// `-0.01 * (1..n)` for the scaled diagonal one.
    pub fn default_poles(&self) -> Vec<f64> {
        let step = match self.kind {
            FamilyKind::IntegerFamily => 1.0,
            FamilyKind::ScaledDiagonal => 0.01,
        };
        (1..=self.n).map(|k| -(k as f64) * step).collect()
    }
}

/// First row `1..n`, then `[I_(n-1), 1]`, with `-1` in the first column from
/// the third row on; `B` all ones.
pub fn gen_integer_example(n: usize) -> Result<StateSpace<f64>, BenchError> {
    if n < 3 {
        return Err(BenchError::FamilyTooSmall(n));
    }
    let a = DenseMatrix::from_fn(n, n, |i, j| {
        if i == 0 {
            (j + 1) as f64
        } else if j == 0 && i >= 2 {
            -1.0
        } else if j == n - 1 || j == i - 1 {
            1.0
        } else {
            0.0
        }
    });
    Ok(StateSpace::new(a, DenseVector::filled(n, 1.0)).expect("valid family"))
}

/// Integer entries of [`gen_integer_example`], for the exact oracle.
pub fn integer_example_entries(n: usize) -> Result<(Vec<Vec<i64>>, Vec<i64>), BenchError> {
    let sys = gen_integer_example(n)?;
    let a = sys.a().to_rows().into_iter().map(|r| r.into_iter().map(|x| x as i64).collect()).collect();
    Ok((a, vec![1; n]))
}

/// Orthogonal factor of the QR factorisation of a seeded standard normal matrix.
pub fn random_orthogonal(n: usize, seed: u64) -> DenseMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = DenseMatrix::from_fn(n, n, |_, _| StandardNormal.sample(&mut rng));
    qr_decompose(&g).q
}

/// `diag(1, 1/4, ..., 1/n^2)` with `B` all ones, optionally transformed by a
/// seeded random orthogonal similarity `A = Q^T Abar Q`, `B = Q^T Bbar`.
pub fn gen_scaled_diagonal(n: usize, seed: Option<u64>) -> Result<StateSpace<f64>, BenchError> {
    if n == 0 {
        return Err(BenchError::ZeroDimension);
    }
    let d: Vec<f64> = (1..=n).map(|k| 1.0 / (k * k) as f64).collect();
    let a = DenseMatrix::diagonal(&d);
    let b = DenseVector::filled(n, 1.0);
    let (a, b) = match seed {
        None => (a, b),
        Some(s) => {
            let q = random_orthogonal(n, s);
            let qt = q.transpose();
            (&(&qt * &a) * &q, qt.matvec(&b))
        }
    };
    Ok(StateSpace::new(a, b).expect("valid family"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PoleOrder {
    Forward,
    Reversed,
}

impl fmt::Display for PoleOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PoleOrder::Forward => "fwd",
            PoleOrder::Reversed => "rev",
        })
    }
}

/// One row of a comparison table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub family: FamilyKind,
    pub algorithm: Algorithm,
    pub n: usize,
    pub precision: PrecisionMode,
    pub pole_order: PoleOrder,
    pub achieved: Vec<ComplexScalar>,
    pub max_abs_error: f64,
    pub complex_pair_count: usize,
    pub gain: Vec<f64>,
    /// Set when the algorithm failed; the numeric fields are then empty or NaN.
    pub failure: Option<String>,
}

/// Number of conjugate pairs with a significant imaginary part.
pub fn count_complex_pairs(ev: &[ComplexScalar]) -> usize {
    ev.iter()
        .filter(|e| e.im > PAIR_TOLERANCE * e.abs().max(1.0))
        .count()
}

/// Largest distance over a greedy matching: targets in order, each taking the
/// nearest unused achieved eigenvalue.
pub fn matched_max_error(achieved: &[ComplexScalar], targets: &[ComplexScalar]) -> f64 {
    let mut used = vec![false; achieved.len()];
    let mut worst = 0.0f64;
    let mut sorted = targets.to_vec();
    sorted.sort_by(ComplexScalar::cmp_re_im);
    for t in sorted {
        let best = (0..achieved.len())
            .filter(|&i| !used[i])
            .min_by(|&i, &j| achieved[i].dist(t).total_cmp(&achieved[j].dist(t)));
        match best {
            Some(i) => {
                used[i] = true;
                worst = worst.max(achieved[i].dist(t));
            }
            None => return f64::INFINITY,
        }
    }
    worst
}

/// Eigenvalues of `A - B K` at 64 bits.
pub fn closed_loop_eigenvalues(sys: &StateSpace<f64>, gain: &Gain<f64>) -> Vec<ComplexScalar> {
    eigenvalues(&sys.closed_loop(gain)).unwrap_or_default()
}

/// Scores a gain; the eigenvalues are always computed at 64 bits.
pub fn evaluate_placement(
    sys: &StateSpace<f64>,
    spec: &PoleSpec,
    gain: &Gain<f64>,
    precision: PrecisionMode,
) -> BenchRecord {
    let targets = spec.poles().unwrap_or_default();
    let achieved = closed_loop_eigenvalues(sys, gain);
    BenchRecord {
        family: FamilyKind::IntegerFamily,
        algorithm: Algorithm::Ackermann,
        n: sys.n(),
        precision,
        pole_order: PoleOrder::Forward,
        max_abs_error: matched_max_error(&achieved, &targets),
        complex_pair_count: count_complex_pairs(&achieved),
        achieved,
        gain: gain.k.to_f64(),
        failure: None,
    }
}

/// Places with `algo` and scores the result.
pub fn run_one(
    family: &ExampleFamily,
    algo: Algorithm,
    precision: PrecisionMode,
    order: PoleOrder,
) -> Result<BenchRecord, BenchError> {
    let sys = family.system()?;
    let mut poles = family.default_poles();
    if order == PoleOrder::Reversed {
        poles.reverse();
    }
    let spec = PoleSpec::real(&poles);
    let mut rec = match place_with_precision(&sys, &spec, algo, precision) {
        Ok(k) => evaluate_placement(&sys, &spec, &k, precision),
        Err(e) => BenchRecord {
            family: family.kind,
            algorithm: algo,
            n: family.n,
            precision,
            pole_order: order,
            achieved: Vec::new(),
            max_abs_error: f64::NAN,
            complex_pair_count: 0,
            gain: Vec::new(),
            failure: Some(e.to_string()),
        },
    };
    rec.family = family.kind;
    rec.algorithm = algo;
    rec.pole_order = order;
    Ok(rec)
}

/// A grid of families x algorithms x precisions x orders.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub families: Vec<ExampleFamily>,
    pub algorithms: Vec<Algorithm>,
    pub precisions: Vec<PrecisionMode>,
    pub orders: Vec<PoleOrder>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub records: Vec<BenchRecord>,
}

/// Runs every configuration in key order; failures become rows.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport, BenchError> {
    let mut records = Vec::new();
    for family in &config.families {
        for &algo in &config.algorithms {
            for &precision in &config.precisions {
                for &order in &config.orders {
                    records.push(run_one(family, algo, precision, order)?);
                }
            }
        }
    }
    Ok(SuiteReport { records })
}

const COLUMNS: [&str; 8] = [
    "family",
    "algorithm",
    "n",
    "precision",
    "order",
    "max_abs_error",
    "complex_pairs",
    "status",
];

impl SuiteReport {
    fn cells(&self) -> Vec<[String; 8]> {
        self.records
            .iter()
            .map(|r| {
                [
                    r.family.to_string(),
                    r.algorithm.to_string(),
                    r.n.to_string(),
                    r.precision.to_string(),
                    r.pole_order.to_string(),
                    format!("{:e}", r.max_abs_error),
                    r.complex_pair_count.to_string(),
                    r.failure.clone().unwrap_or_else(|| "ok".into()),
                ]
            })
            .collect()
    }

    pub fn render_csv(&self) -> String {
        let mut out = COLUMNS.join(",");
        out.push('\n');
        for row in self.cells() {
            let escaped: Vec<String> = row
                .iter()
                .map(|c| if c.contains(',') { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.clone() })
                .collect();
            out.push_str(&escaped.join(","));
            out.push('\n');
        }
        out
    }

    pub fn render_text(&self) -> String {
        let rows = self.cells();
        let mut widths: Vec<usize> = COLUMNS.iter().map(|c| c.len()).collect();
        for row in &rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        let line = |cells: Vec<&str>, out: &mut String| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(COLUMNS.to_vec(), &mut out);
        for row in &rows {
            line(row.iter().map(String::as_str).collect(), &mut out);
        }
        out
    }
}
