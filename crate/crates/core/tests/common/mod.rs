#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use poleplace::bench::{evaluate_placement, integer_example_entries};
use poleplace::linalg::{DenseMatrix, DenseVector, PrecisionMode};
use poleplace::placement::{Gain, PoleSpec, StateSpace};
use poleplace::exact::{place_exact_roots, ExactMatrix};

pub const KK8: &[&str] = &[
    "519515210277/36638795621",
    "2078221618718/36638795621",
    "9399790968804/36638795621",
    "23883421055437/36638795621",
    "27614625334253/36638795621",
    "-3862903459832/36638795621",
    "-36774234975734/36638795621",
    "-21466161518325/36638795621",
];

pub const KK11: &[&str] = &[
    "7817883664811469804057/297365203664055278341",
    "66347135266209260491107/297365203664055278341",
    "715307440643594285832987/297365203664055278341",
    "5108463570029711309325053/297365203664055278341",
    "24279372098464306568093845/297365203664055278341",
    "74798168434160582892384569/297365203664055278341",
    "136845070738935394124936213/297365203664055278341",
    "106617412978197400238773250/297365203664055278341",
    "-69104192347823610988017594/297365203664055278341",
    "-186582984738415277335631860/297365203664055278341",
    "-92730562359273966067064439/297365203664055278341",
];

pub const KK12: &[&str] = &[
    "3140867001984180016036461/100701343380251789934337",
    "32463700215024014546326491/100701343380251789934337",
    "433968633546560213091669147/100701343380251789934337",
    "3931398036873040592316764237/100701343380251789934337",
    "24528600373899823370244217765/100701343380251789934337",
    "104772649587412878088636414193/100701343380251789934337",
    "295598922877646668386365328773/100701343380251789934337",
    "499124346841391853303086344214/100701343380251789934337",
    "344789964075341274989916614646/100701343380251789934337",
    "-290515578148790898307469121652/100701343380251789934337",
    "-665350044862049195830462375466/100701343380251789934337",
    "-317341775875018592857093471849/100701343380251789934337",
];

pub fn parse_rationals(v: &[&str]) -> Vec<BigRational> {
    v.iter().map(|s| s.parse().expect("rational literal")).collect()
}

/// Exact gain of the integer family for poles -1..-n.
pub fn exact_integer_gain(n: usize) -> Vec<BigRational> {
    let (a, b) = integer_example_entries(n).unwrap();
    let a = ExactMatrix::from_i64_rows(&a).unwrap();
    let b: Vec<BigInt> = b.into_iter().map(BigInt::from).collect();
    let roots: Vec<i64> = (1..=n as i64).map(|k| -k).collect();
    place_exact_roots(&a, &b, &roots).unwrap().simplify().ratio().unwrap()
}

/// Eigenvalue residual the rounded oracle gain must reach for a draw to count.
pub const WELL_POSED: f64 = 1e-8;

pub struct IntegerSystem {
    pub a: Vec<Vec<i64>>,
    pub b: Vec<i64>,
    pub poles: Vec<i64>,
}

fn matmul_i(x: &[Vec<i64>], y: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = x.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect())
        .collect()
}

/// `A = T D T^-1` with `T` a product of unit triangular integer factors, so
/// `A` is integral with distinct integer eigenvalues; `B` and the poles are
/// random small integers, disjoint from the spectrum. Draws are rejected until
/// the system is controllable and the oracle gain, rounded to f64, places the
/// poles within [`WELL_POSED`].
pub fn random_integer_system(seed: u64) -> IntegerSystem {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(2..=6usize);
        let mut eig: Vec<i64> = (-6..=6).collect();
        eig.shuffle(&mut rng);
        let eig = &eig[..n];
        let mut l = vec![vec![0i64; n]; n];
        let mut u = vec![vec![0i64; n]; n];
        for i in 0..n {
            l[i][i] = 1;
            u[i][i] = 1;
            for j in 0..i {
                l[i][j] = rng.gen_range(-1..=1);
                u[j][i] = rng.gen_range(-1..=1);
            }
        }
        // inverses of unit triangular integer matrices by substitution
        let inv_lower = |m: &Vec<Vec<i64>>| {
            let mut r = vec![vec![0i64; n]; n];
            for c in 0..n {
                for i in 0..n {
                    let s: i64 = (0..i).map(|k| m[i][k] * r[k][c]).sum();
                    r[i][c] = i64::from(i == c) - s;
                }
            }
            r
        };
        let transpose = |m: &Vec<Vec<i64>>| (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect::<Vec<Vec<i64>>>();
        let t = matmul_i(&l, &u);
        let t_inv = matmul_i(&transpose(&inv_lower(&transpose(&u))), &inv_lower(&l));
        let d: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { eig[i] } else { 0 }).collect()).collect();
        let a = matmul_i(&matmul_i(&t, &d), &t_inv);
        let b: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        let mut poles: Vec<i64> = (1..=12).map(|k| -k).filter(|p| !eig.contains(p)).collect();
        poles.shuffle(&mut rng);
        poles.truncate(n);
        let am = ExactMatrix::from_i64_rows(&a).expect("square");
        let bb: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
        let Ok(gain) = place_exact_roots(&am, &bb, &poles) else {
            continue;
        };
        let sys = IntegerSystem { a, b, poles };
        if oracle_residual(&sys, &gain.to_f64().expect("nonzero denominator")) <= WELL_POSED {
            return sys;
        }
    }
}

impl IntegerSystem {
    pub fn state_space(&self) -> StateSpace<f64> {
        let n = self.b.len();
        let a = DenseMatrix::new(n, n, self.a.iter().flatten().map(|&x| x as f64).collect()).expect("square");
        let b = DenseVector::new(self.b.iter().map(|&x| x as f64).collect()).expect("finite");
        StateSpace::new(a, b).expect("consistent")
    }

    pub fn spec(&self) -> PoleSpec {
        PoleSpec::real(&self.poles.iter().map(|&p| p as f64).collect::<Vec<_>>())
    }

    pub fn exact_gain(&self) -> Vec<BigRational> {
        let am = ExactMatrix::from_i64_rows(&self.a).expect("square");
        let bb: Vec<BigInt> = self.b.iter().map(|&x| BigInt::from(x)).collect();
        place_exact_roots(&am, &bb, &self.poles)
            .and_then(|g| g.ratio())
            .expect("controllable by construction")
    }
}

/// Largest distance from the target poles of `eig(A - B K)`.
pub fn oracle_residual(sys: &IntegerSystem, k: &[f64]) -> f64 {
    let gain = Gain::new(DenseVector::new(k.to_vec()).expect("finite"));
    evaluate_placement(&sys.state_space(), &sys.spec(), &gain, PrecisionMode::Bits64).max_abs_error
}
