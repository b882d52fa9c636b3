//! Acceptance panel: one line per criterion, non-zero exit on any failure.
//!
//! Criteria 1-10 come from the built-in suite. Criterion 11 compares
//! syzygies with a dense linear-algebra kernel computed here, independent of
//! the Gröbner machinery; criterion 12 drives the built binary.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use torsionlab::report::strip_timing;
use torsionlab::suite::{self, CheckResult};
use torsionlab_core::poly::monomial::{monomials_of_degree, Monomial};
use torsionlab_core::{Matrix, Polynomial, PrimeField, RingContext};

const P: u32 = 5;
/// Degree up to which the truncated kernel is compared.
const TRUNCATION: i64 = 6;
const ORACLE_SEED: u64 = 11;
const ORACLE_CASES: usize = 50;

fn reduce_rows(rows: &mut Vec<Vec<u32>>) -> usize {
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = mod_inv(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % P;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let c = rows[i][col];
                for j in 0..width {
                    rows[i][j] = (rows[i][j] + P * P - c * rows[rank][j] % P) % P;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rank
}

fn mod_inv(a: u32) -> u32 {
    (1..P).find(|b| a * b % P == 1).expect("nonzero residues are invertible")
}

/// Basis of `⊕_j k[x,y]_{deg - shift_j}` as (component, monomial) pairs.
fn graded_basis(shifts: &[i64], deg: i64) -> Vec<(usize, Monomial)> {
    let mut out = Vec::new();
    for (j, &s) in shifts.iter().enumerate() {
        if deg >= s {
            for m in monomials_of_degree(&[1, 1], (deg - s) as u64) {
                out.push((j, m));
            }
        }
    }
    out
}

fn coords(v: &[Polynomial<PrimeField>], basis: &[(usize, Monomial)]) -> Vec<u32> {
    basis.iter().map(|(j, m)| v[*j].coefficient(m)).collect()
}

/// Dimension of the kernel of `a` in degree `deg`, by dense elimination.
fn kernel_dim(a: &Matrix<PrimeField>, deg: i64) -> usize {
    let src = graded_basis(a.col_degrees(), deg);
    let dst = graded_basis(a.row_degrees(), deg);
    let mut images = Vec::new();
    for (j, m) in &src {
        let col: Vec<Polynomial<PrimeField>> = (0..a.rows()).map(|i| a.get(i, *j).mul_monomial(m)).collect();
        images.push(coords(&col, &dst));
    }
    src.len() - reduce_rows(&mut images)
}

/// Dimension of the degree-`deg` part of the module generated by `s`.
fn span_dim(s: &Matrix<PrimeField>, shifts: &[i64], deg: i64) -> usize {
    let basis = graded_basis(shifts, deg);
    let mut rows = Vec::new();
    for k in 0..s.cols() {
        let d = s.col_degrees()[k];
        if d > deg {
            continue;
        }
        for m in monomials_of_degree(&[1, 1], (deg - d) as u64) {
            let v: Vec<Polynomial<PrimeField>> = s.column(k).components().iter().map(|p| p.mul_monomial(&m)).collect();
            rows.push(coords(&v, &basis));
        }
    }
    reduce_rows(&mut rows)
}

fn random_matrix(ring: &RingContext<PrimeField>, rng: &mut ChaCha8Rng) -> Matrix<PrimeField> {
    let fld = ring.field();
    let rows = rng.gen_range(1..=3);
    let cols = rng.gen_range(1..=3);
    let row_deg: Vec<i64> = (0..rows).map(|_| rng.gen_range(0..=1)).collect();
    let col_deg: Vec<i64> = (0..cols).map(|_| rng.gen_range(1..=2)).collect();
    let mut m = Matrix::zero(fld, 2, row_deg.clone(), col_deg.clone());
    for i in 0..rows {
        for j in 0..cols {
            let d = col_deg[j] - row_deg[i];
            if !(0..=2).contains(&d) || rng.gen_bool(0.2) {
                continue;
            }
            let terms = monomials_of_degree(&[1, 1], d as u64).into_iter().map(|mo| (mo, rng.gen_range(0..P)));
            m.set(i, j, Polynomial::from_terms(fld, 2, terms));
        }
    }
    m
}

fn criterion_11() -> CheckResult {
    let start = Instant::now();
    let ring = RingContext::polynomial_ring(PrimeField::new(P).unwrap(), &["x", "y"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let mut failures = Vec::new();
    for case in 0..ORACLE_CASES {
        let a = random_matrix(&ring, &mut rng);
        let s = match ring.syzygies(&a) {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("#{case}: {e}"));
                continue;
            }
        };
        if !a.mul(&s).is_zero() {
            failures.push(format!("#{case}: A·S ≠ 0"));
        }
        for deg in 0..=TRUNCATION {
            let (k, g) = (kernel_dim(&a, deg), span_dim(&s, a.col_degrees(), deg));
            if k != g {
                failures.push(format!("#{case} degree {deg}: kernel {k}, syzygies span {g}"));
            }
        }
    }
    CheckResult {
        id: 11,
        title: "syzygies agree with the truncated linear-algebra kernel",
        passed: failures.is_empty(),
        detail: if failures.is_empty() { format!("{ORACLE_CASES} matrices, D = {TRUNCATION}") } else { failures.join("; ") },
        millis: start.elapsed().as_millis(),
    }
}

const DETERMINISM_SCRIPT: &str = "\
ring R = QQ[x,y];
module K = coker [[x],[y]] over R;
verify thm2.8 R (x,y);
assert torsion_free(K);
assert torsion_free(tensor_power(K, 2)) == false;
print betti(tensor_power(K, 2), 3);
ring N = GF(2)[x,y] / (x*y) with minimal_primes [(x),(y)] reduced ci;
module M = coker [[x]] over N;
assert pd(M) == infinite;
print torF(M, 1, 1);
verify thm3.5 M e=1;
ring S = GF(5)[x,y];
print explore(S, panel=3, cap=2);
";

fn run_cli(dir: &Path, script: &Path, tag: &str, cache: Option<&Path>) -> Result<(String, serde_json::Value), String> {
    let out = dir.join(format!("{tag}.json"));
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_torsionlab"));
    cmd.arg("run").arg(script).arg("--json").arg(&out).arg("--seed").arg("7");
    match cache {
        Some(c) => cmd.arg("--cache").arg(c),
        None => cmd.arg("--no-cache"),
    };
    let status = cmd.env_remove("TORSIONLAB_CACHE").output().map_err(|e| e.to_string())?;
    let text = std::fs::read_to_string(&out).map_err(|e| format!("{tag}: {e}; stderr: {}", String::from_utf8_lossy(&status.stderr)))?;
    let full: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let stripped = strip_timing(&text).map_err(|e| e.to_string())?;
    Ok((stripped, full))
}

fn criterion_12() -> CheckResult {
    let start = Instant::now();
    let outcome = (|| -> Result<Vec<String>, String> {
        let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
        let script = tmp.path().join("panel.tl");
        std::fs::write(&script, DETERMINISM_SCRIPT).map_err(|e| e.to_string())?;
        let cache = tmp.path().join("cache");
        let (cold, cold_full) = run_cli(tmp.path(), &script, "cold", Some(&cache))?;
        let (warm, warm_full) = run_cli(tmp.path(), &script, "warm", Some(&cache))?;
        let (none, _) = run_cli(tmp.path(), &script, "none", None)?;
        let (again, _) = run_cli(tmp.path(), &script, "again", None)?;
        let mut problems = Vec::new();
        if cold != warm {
            problems.push("cold and warm cache reports differ".to_string());
        }
        if cold != none {
            problems.push("cached and uncached reports differ".to_string());
        }
        if none != again {
            problems.push("repeated runs differ".to_string());
        }
        let writes = cold_full["timing"]["cache"]["writes"].as_u64().unwrap_or(0);
        let hits = warm_full["timing"]["cache"]["hits"].as_u64().unwrap_or(0);
        if writes == 0 || hits == 0 {
            problems.push(format!("cache not exercised: {writes} writes, {hits} hits"));
        }
        if cold_full["summary"]["errors"].as_u64() != Some(0) || cold_full["summary"]["fail"].as_u64() != Some(0) {
            problems.push(format!("script did not run cleanly: {}", cold_full["summary"]));
        }
        Ok(problems)
    })();
    let (passed, detail) = match outcome {
        Ok(p) if p.is_empty() => (true, "4 runs byte-identical modulo timing".to_string()),
        Ok(p) => (false, p.join("; ")),
        Err(e) => (false, e),
    };
    CheckResult { id: 12, title: "CLI determinism and cache soundness", passed, detail, millis: start.elapsed().as_millis() }
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<CheckResult> = suite::BUILTIN_SUITE.iter().map(|c| c()).collect();
    results.push(criterion_11());
    results.push(criterion_12());
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} of {} criteria passed in {:.1} s", results.len() - failed, results.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
