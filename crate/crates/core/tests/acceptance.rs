//! One line per acceptance criterion. Runs without the libtest harness so
//! that the lines are printed on success too; exits nonzero if any
//! attainable check fails. The literal statements that cannot hold are
//! asserted in `tests/unattainable.rs` and reported here as FAIL.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;

use cfree::cumulants::{
    ct_coefficients_multi, ct_from_moments, cumulants_from_moments, moments_from_ct, moments_from_cumulants,
    moments_from_t, t_from_moments, MatrixSequence, MultiIndexedValues, ScalarSequence,
};
use cfree::divisibility::{
    ct_matches_b, haar_property, haar_specs, sqrt_counterexample, toeplitz_psd, UnitaryDistribution, PSD_TOLERANCE,
};
use cfree::exactalg::{CMatrix, CScalar};
use cfree::model::{nonvanishing_mixed, JointModel};
use cfree::partitions::{class_members, enumerate_nc, enumerate_ncl_parity, NcPartition};
use cfree::random::{cfree_spec, nonzero_scalar, rng, small_matrix, small_scalar, unit_disk_scalar};
use cfree::transforms::{cfree_multiply, tree_route};
use cfree::trees::{enumerate_bicolor, enumerate_trees, in_lambda_domain, lambda, lambda_inv, theta, theta_inv};
use cfree::verify::{self, Suite, SuiteConfig};

struct Line {
    passed: bool,
    /// Part of the criterion that holds.
    detail: String,
    /// Part of the literal criterion that cannot hold, if any.
    unattainable: Option<String>,
}

impl Line {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Line { passed, detail: detail.into(), unattainable: None }
    }
}

fn criterion(id: u32, title: &str, f: impl FnOnce() -> Line) -> bool {
    let start = Instant::now();
    let line = f();
    let secs = start.elapsed().as_secs_f64();
    let literal_ok = line.unattainable.is_none();
    let status = if line.passed && literal_ok { "PASS" } else { "FAIL" };
    let mut text = format!("criterion {id} [{status}] {title}: {} ({secs:.2} s)", line.detail);
    if let Some(why) = &line.unattainable {
        text.push_str(&format!("; literal statement unattainable: {why}"));
    }
    println!("{text}");
    line.passed
}

fn kreweras() -> Line {
    let start = Instant::now();
    let mut checked = 0;
    let mut ok = true;
    for n in 1..=8 {
        for g in enumerate_nc(n).unwrap() {
            ok &= g.num_blocks() + g.kreweras().num_blocks() == n + 1;
            checked += 1;
        }
    }
    let fast = start.elapsed() < Duration::from_secs(10);
    Line::new(ok && fast, format!("{checked} partitions of NC(n), n <= 8, under 10 s: {}", ok && fast))
}

fn bijections() -> Line {
    let mut theta_ok = true;
    for n in 1..=7 {
        let class = class_members(&NcPartition::one(n)).unwrap();
        theta_ok &= class.len() == enumerate_trees(n).unwrap().len();
        for sigma in &class {
            theta_ok &= theta_inv(&theta(sigma).unwrap()).unwrap() == *sigma;
        }
        for tree in enumerate_trees(n).unwrap() {
            theta_ok &= theta(&theta_inv(&tree).unwrap()).unwrap() == tree;
        }
    }
    let mut lambda_ok = true;
    let mut outside = 0;
    for n in 1..=4 {
        let parity = enumerate_ncl_parity(n).unwrap();
        let domain: Vec<_> = parity.iter().filter(|s| in_lambda_domain(s)).collect();
        outside += parity.len() - domain.len();
        lambda_ok &= domain.len() == enumerate_bicolor(n).unwrap().len();
        for sigma in domain {
            lambda_ok &= lambda_inv(&lambda(sigma).unwrap()).unwrap() == *sigma;
        }
        for tree in enumerate_bicolor(n).unwrap() {
            lambda_ok &= lambda(&lambda_inv(&tree).unwrap()).unwrap() == tree;
        }
    }
    let mut line = Line::new(
        theta_ok && lambda_ok,
        format!("Theta on [1_n], n <= 7: {theta_ok}; Lambda on the class-of-NC_0 part of NCL_S(2n), n <= 4: {lambda_ok}"),
    );
    line.unattainable = Some(format!(
        "|NCL_S(4)| = {} exceeds |B(2)| = {}, so Lambda cannot be a bijection on NCL_S(2n) ({outside} partitions outside its domain)",
        enumerate_ncl_parity(2).unwrap().len(),
        enumerate_bicolor(2).unwrap().len()
    ));
    line
}

fn conversions() -> Line {
    let mut ok = true;
    for seed in 0..100u64 {
        let dim = 1 + (seed % 3) as usize;
        let mut r = rng(1000 + seed);
        let phi = ScalarSequence((0..8).map(|i| if i == 0 { nonzero_scalar(&mut r) } else { small_scalar(&mut r) }).collect());
        let big_phi = MatrixSequence((0..8).map(|_| small_matrix(&mut r, dim)).collect());
        let (k, ck) = cumulants_from_moments(&phi, &big_phi).unwrap();
        ok &= moments_from_cumulants(&k, &ck).unwrap() == (phi.clone(), big_phi.clone());
        let t = t_from_moments(&phi).unwrap();
        let ct = ct_from_moments(&big_phi, &phi).unwrap();
        ok &= moments_from_t(&t).unwrap() == phi;
        ok &= moments_from_ct(&ct, &t).unwrap() == big_phi;
    }
    Line::new(ok, format!("100 distributions, N = 8, k in {{1, 2, 3}}, zero residual: {ok}"))
}

fn suite(s: Suite, order: usize, trials: usize, seed: u64) -> (bool, usize) {
    let report = verify::run(s, &SuiteConfig { order, dim: 2, trials, seed, n: 0 }).unwrap();
    (report.passed(), report.checked_up_to)
}

fn lemma22() -> Line {
    let (ok, n) = suite(Suite::Lemma22, 10, 20, 2200);
    Line::new(ok, format!("Kreweras product formulas against the joint model, n <= {n}, k = 2, 20 pairs: {ok}"))
}

fn prop23() -> Line {
    let (ok, n) = suite(Suite::Prop23, 6, 3, 2300);
    Line::new(ok, format!("both sums over [1_n] on all two-letter words, n <= {n}: {ok}"))
}

fn prop24() -> Line {
    let (ok, n) = suite(Suite::Prop24, 8, 30, 2400);
    Line::new(ok, format!("T and cT functional equations to degree {n}, 30 bundles: {ok}"))
}

fn prop25() -> Line {
    let (ok, n) = suite(Suite::Prop25, 5, 5, 2500);
    // negative control: Y is X under another name
    let mut r = rng(2501);
    let single = JointModel::new([cfree_spec(&mut r, 'X', 5, 2)]).unwrap();
    let mut phi = MultiIndexedValues::new();
    let mut big_phi = MultiIndexedValues::new();
    for w in cfree::cumulants::all_words(&['X', 'Y'], 5) {
        let same = "X".repeat(w.len());
        phi.insert(w.clone(), single.phi_word(&same).unwrap());
        big_phi.insert(w, single.big_phi_word(&same).unwrap());
    }
    let (t, ct) = ct_coefficients_multi(&phi, &big_phi).unwrap();
    let control = !nonvanishing_mixed(&t, CScalar::is_zero).is_empty() && !nonvanishing_mixed(&ct, CMatrix::is_zero).is_empty();
    Line::new(
        ok && control,
        format!("mixed t/cT coefficients vanish to length {n}, 5 pairs: {ok}; correlated control detected: {control}"),
    )
}

fn theorem31() -> Line {
    let start = Instant::now();
    let mut ok = true;
    let mut degree = 0;
    for seed in 0..100u64 {
        let mut r = rng(3100 + seed);
        let x = cfree_spec(&mut r, 'X', 12, 2);
        let y = cfree_spec(&mut r, 'Y', 12, 2);
        let report = cfree_multiply(&x, &y).unwrap();
        ok &= report.passed();
        degree = report.order;
    }
    let elapsed = start.elapsed();
    let fast = elapsed < Duration::from_secs(120);
    let mut r = rng(3200);
    let x = cfree_spec(&mut r, 'X', 10, 2);
    let y = cfree_spec(&mut r, 'Y', 10, 2);
    let trees = tree_route(&x, &y, 5).unwrap().iter().all(|c| c.passed);
    Line::new(
        ok && fast && trees,
        format!(
            "100 pairs, N = 12, k = 2, T and cT equal through degree {degree} (6 coefficients) in {:.1} s: {}; tree route n <= 5: {trees}",
            elapsed.as_secs_f64(),
            ok && fast
        ),
    )
}

fn unitary(seed: u64) -> UnitaryDistribution {
    let mut r = rng(seed);
    let big_a = (0..8).map(|_| small_matrix(&mut r, 2)).collect();
    let a = (0..8)
        .map(|i| loop {
            let s = unit_disk_scalar(&mut r);
            if i > 0 || !s.is_zero() {
                break s;
            }
        })
        .collect();
    UnitaryDistribution::new(big_a, a).unwrap()
}

fn unitaries() -> Line {
    let ct_ok = (0..10).all(|s| ct_matches_b(&unitary(4000 + s)).unwrap().is_empty());
    let mut r = rng(4100);
    let mut haar_ok = true;
    for dim in 1..=2 {
        let (u1, u2) = haar_specs(&mut r, dim, 8, false);
        haar_ok &= haar_property(&u1, &u2, 4).unwrap().passed();
    }
    let (u1, u2) = haar_specs(&mut r, 2, 8, true);
    haar_ok &= !haar_property(&u1, &u2, 4).unwrap().passed();
    let psd = |d: &UnitaryDistribution, depth| toeplitz_psd(d, depth, PSD_TOLERANCE).unwrap().psd;
    let a1_two = serde_json::from_str::<UnitaryDistribution>(r#"{"A":[[[2]]],"a":[0]}"#).unwrap();
    let toeplitz_ok = psd(&UnitaryDistribution::haar(4, 2), 4) && psd(&UnitaryDistribution::point_mass(4, 1), 4) && !psd(&a1_two, 1);
    let grid: Vec<Complex64> = (1..=10).map(|k| Complex64::from_polar(0.02 * k as f64, 0.6 * k as f64)).collect();
    let reports: Vec<_> = grid.iter().map(|&l| sqrt_counterexample(l)).collect();
    let verdict = reports.iter().all(|r| r.applicable && r.no_contractive_root && r.squares_to_b[0]);
    let worst = reports.iter().map(|r| (r.root_norms[0] - r.stated_norm).abs()).fold(0.0, f64::max);
    let ok = ct_ok && haar_ok && toeplitz_ok && verdict;
    let mut line = Line::new(
        ok,
        format!(
            "cT(m) = B to degree 7: {ct_ok}; Haar n <= 4, k <= 2 with control: {haar_ok}; Toeplitz fixtures: {toeplitz_ok}; \
             ||B|| < 1 and every square root of norm > 1 on a 10-point grid: {verdict}"
        ),
    );
    let b = sqrt_counterexample(Complex64::new(0.1, 0.0));
    line.unattainable = Some(format!(
        "the root norm is (1 + sqrt(1 + 4|l|^2))/2, not sqrt(1 + |l|^2) (largest gap {worst:.3e} > 1e-10); \
         at l = 0.1 the norms are {:.7} and ||B|| = {:.4}; [[-l,1],[0,-l]] does not square to B",
        b.root_norms[0], b.b_norm
    ));
    line
}

fn main() -> ExitCode {
    let results = [
        criterion(1, "Kreweras block count", kreweras),
        criterion(2, "bijections Theta and Lambda", bijections),
        criterion(3, "moment/cumulant/t-coefficient roundtrips", conversions),
        criterion(4, "cumulants of products", lemma22),
        criterion(5, "cumulants as sums of t-coefficients", prop23),
        criterion(6, "transform functional equations", prop24),
        criterion(7, "mixed coefficients of c-free pairs", prop25),
        criterion(8, "multiplicativity of T and cT", theorem31),
        criterion(9, "unitaries", unitaries),
    ];
    if results.iter().all(|&ok| ok) { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
