//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};

use infolab_cli::reproduce::{biased_key_model, example1_posteriors, example1_prior, example2_model, table1_joint};
use infolab_cli::run_args;
use infolab_core::analysis::{composition_count, dist_entropy_change};
use infolab_core::otp::{ciphertext_plaintext_joint, secrecy_entropy_verdict};
use infolab_core::sample::SimplexSampler;
use infolab_core::*;
use num_traits::{One, Zero};
use serde_json::Value;

/// Reported-value tolerance.
const REPORT_TOL: f64 = 1e-6;
const SEED: u64 = 20_070_718;
const RANDOM_JOINTS: usize = 10_000;

// Oracle values: 40-digit evaluations of the closed-form sums.
const H_Y: f64 = 0.881_290_899_230_692_6;
const H_POINTWISE_0: f64 = 0.970_950_594_454_668_6;
const H_AVG: f64 = 0.846_439_344_671_015_5;
const H_JOINT: f64 = 1.846_439_344_671_015_5;
const POINTWISE_EXCESS: f64 = 0.089_659_695_223_976_02;
const AVG_SLACK: f64 = 0.034_851_554_559_677_12;
const H_PRIOR_OTP: f64 = 0.468_995_593_589_281_2;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn close(name: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure((got - want).abs() < tol, format!("{name} = {got:.9}, expected {want:.9} within {tol:e}"))
}

fn d(numers: &[i64], denom: i64) -> Dist {
    Dist::from_ratios(numers, denom).unwrap()
}

fn p(n: i64, den: i64) -> Prob {
    Prob::ratio(n, den).unwrap()
}

fn cli(args: &[&str]) -> Result<String, String> {
    let mut full = vec!["infolab"];
    full.extend_from_slice(args);
    let out = run_args(full);
    if out.status == 0 {
        Ok(out.stdout)
    } else {
        Err(format!("{args:?} exited {}: {}", out.status, out.stderr.trim()))
    }
}

fn criterion_1() -> Outcome {
    let t = table1_joint();
    ensure(marginal(&t, Axis::Y) == d(&[3, 7], 10), "y-marginal is not exactly (3/10, 7/10)")?;
    ensure(conditional_slice(&t, 0).unwrap() == d(&[2, 3], 5), "conditional at x=0 is not exactly (2/5, 3/5)")?;
    ensure(mix_update(&t, &d(&[1, 0], 1)).unwrap() == d(&[2, 3], 5), "update with q=(1,0) is not (2/5, 3/5)")?;
    let hy = shannon_entropy(&marginal(&t, Axis::Y));
    let pw = pointwise_conditional_entropy(&t, 0).unwrap();
    let avg = conditional_entropy_avg(&t);
    let hj = joint_entropy(&t);
    close("H(y)", hy, H_Y, REPORT_TOL)?;
    close("H(y|x=0)", pw, H_POINTWISE_0, REPORT_TOL)?;
    close("H_x(y)", avg, H_AVG, REPORT_TOL)?;
    close("H(x,y)", hj, H_JOINT, REPORT_TOL)?;

    let report: Value = serde_json::from_str(&cli(&["reproduce", "table1", "--format", "json"])?).unwrap();
    let sec = &report["result"]["table1"];
    ensure(sec["marginal_y"]["exact"] == serde_json::json!(["3/10", "7/10"]), "report y-marginal")?;
    ensure(sec["pointwise"][0]["conditional"]["exact"] == serde_json::json!(["2/5", "3/5"]), "report conditional")?;
    close("report H(y)", sec["entropy_y"].as_f64().unwrap(), H_Y, REPORT_TOL)?;
    close("report H_x(y)", sec["conditional_entropy_avg"].as_f64().unwrap(), H_AVG, REPORT_TOL)?;
    close("report H(x,y)", sec["joint_entropy"].as_f64().unwrap(), H_JOINT, REPORT_TOL)?;
    Ok(format!("H(y)={hy:.6} H(y|x=0)={pw:.6} H_x(y)={avg:.6} H(x,y)={hj:.6}"))
}

fn criterion_2() -> Outcome {
    let t = table1_joint();
    let hy = shannon_entropy(&marginal(&t, Axis::Y));
    let excess = pointwise_conditional_entropy(&t, 0).unwrap() - hy;
    close("pointwise excess", excess, POINTWISE_EXCESS, REPORT_TOL)?;
    ensure(excess > 0.0, "pointwise entropy did not increase")?;
    let v = check_conditioning_reduces_avg(&t);
    ensure(v.holds, "averaged inequality failed on the table")?;
    close("averaged slack", v.slack, AVG_SLACK, REPORT_TOL)?;
    Ok(format!("pointwise - H(y) = {excess:+.6}, averaged slack = {:.6}", v.slack))
}

fn criterion_3() -> Outcome {
    let mut sampler = SimplexSampler::new(SEED);
    let mut joints: Vec<JointDist> = (0..RANDOM_JOINTS).map(|_| sampler.joint_up_to(5, 5)).collect();
    let grid = search_pointwise_increase(2, 2, &Rational::new(1.into(), 10.into())).map_err(|e| e.to_string())?;
    ensure(grid.certificate.joints_checked == 286, format!("grid has {} joints", grid.certificate.joints_checked))?;

    let mut violations = 0usize;
    let mut iff_failures = 0usize;
    for j in &joints {
        let chain = check_chain_rule(j);
        let sub = check_subadditivity(j);
        let avg = check_conditioning_reduces_avg(j);
        if !chain.equality || !sub.holds || !avg.holds {
            violations += 1;
        }
        if sub.equality != is_independent(j) {
            iff_failures += 1;
        }
    }
    let c = &grid.certificate;
    let grid_violations = c.chain_rule_violations + c.subadditivity_violations + c.averaged_inequality_violations;
    ensure(violations == 0, format!("{violations} random joints violated an identity"))?;
    ensure(grid_violations == 0, format!("{grid_violations} grid violations"))?;

    // product fixtures: subadditivity is tight exactly when the joint is independent
    joints.clear();
    for k in 0..200 {
        let px = sampler.dist(1 + k % 4);
        let py = sampler.dist(1 + (k / 4) % 4);
        joints.push(JointDist::product(&px, &py));
    }
    joints.push(JointDist::product(&d(&[1, 2], 3), &d(&[3, 7], 10)));
    for j in &joints {
        ensure(is_independent(j), "product fixture not independent")?;
        ensure(check_subadditivity(j).equality, "product fixture not tight")?;
    }
    for j in [table1_joint(), validate_joint(&[vec![Rational::new(1.into(), 2.into()), Rational::zero()], vec![Rational::zero(), Rational::new(1.into(), 2.into())]]).unwrap()] {
        ensure(!is_independent(&j) && !check_subadditivity(&j).equality, "dependent fixture reported tight")?;
    }
    ensure(iff_failures == 0, format!("{iff_failures} random joints broke equality <=> independence"))?;
    Ok(format!(
        "{RANDOM_JOINTS} random joints (seed {SEED}) + {} grid joints, 0 violations, max chain-rule error {:.1e}",
        c.joints_checked, c.max_chain_rule_error
    ))
}

fn criterion_4() -> Outcome {
    let args = ["search", "--rows", "2", "--cols", "2", "--step", "1/10", "--format", "json"];
    let first = cli(&args)?;
    let second = cli(&args)?;
    ensure(first == second, "search output differs between runs")?;
    let v: Value = serde_json::from_str(&first).unwrap();
    let r = &v["result"];
    ensure(r["certificate"]["joints_checked"] == 286, "joint count is not 286")?;
    ensure(r["grid_points"] == composition_count(10, 4).to_string(), "grid point count")?;
    ensure(r["certificate"]["averaged_inequality_violations"] == 0, "averaged violations reported")?;
    let hits = r["hits"].as_array().unwrap();
    ensure(!hits.is_empty(), "no hits")?;
    let table1 = serde_json::json!([["1/5", "3/10"], ["1/10", "2/5"]]);
    ensure(hits.iter().any(|h| h["joint"]["cells"] == table1 && h["row"] == 0), "table joint (row 0) not among hits")?;
    let table = cli(&["search", "--rows", "2", "--cols", "2", "--step", "1/10"])?;
    ensure(table.contains("0 averaged-inequality violations"), "table certificate line missing")?;
    Ok(format!("{} hits, table joint included, 0 violations, byte-identical reruns", hits.len()))
}

fn criterion_5() -> Outcome {
    let prior = example1_prior();
    ensure(prior == p(1, 100), "prior is not 1/100")?;
    let expected = [
        (p(5, 100), EntropyChange::Increased),
        (p(3, 10), EntropyChange::Increased),
        (p(1, 2), EntropyChange::Increased),
        (p(9, 10), EntropyChange::Increased),
        (p(99, 100), EntropyChange::Unchanged),
        (p(995, 1000), EntropyChange::Decreased),
    ];
    for (q, want) in &expected {
        let got = entropy_change_verdict(&prior, q).change;
        ensure(got == *want, format!("posterior {q}: {got:?}, expected {want:?}"))?;
    }
    ensure(example1_posteriors().len() == expected.len(), "fixture posteriors")?;
    let v = entropy_change_verdict(&prior, &p(995, 1000));
    close("H2(0.995)", v.posterior_entropy, 0.045_414_692_333_794_1, REPORT_TOL)?;
    Ok("Increased at 0.05/0.3/0.5/0.9, Unchanged at 0.99, Decreased at 0.995".into())
}

fn criterion_6() -> Outcome {
    let model = example2_model();
    ensure(model.plaintext_prior() == &d(&[9, 1], 10) && model.key_dist() == &d(&[1, 1], 2), "fixture model")?;
    ensure(ciphertext_dist(&model) == d(&[1, 1], 2), "ciphertext distribution is not (1/2, 1/2)")?;
    for c in 0..2 {
        let post = posterior_plaintext(&model, c).map_err(|e| e.to_string())?;
        ensure(&post.posterior == model.plaintext_prior(), format!("posterior at c={c} differs from prior"))?;
    }
    ensure(perfect_secrecy_check(&model).perfect, "uniform key not perfectly secret")?;
    let joint = ciphertext_plaintext_joint(&model);
    let avg = conditional_entropy_avg(&joint);
    let prior_h = shannon_entropy(model.plaintext_prior());
    close("H(m|c) - H(m)", avg - prior_h, 0.0, REPORT_TOL)?;
    close("H(m)", prior_h, H_PRIOR_OTP, REPORT_TOL)?;
    ensure(secrecy_entropy_verdict(&model).equality, "averaged verdict not tight")?;

    let biased = biased_key_model();
    ensure(!perfect_secrecy_check(&biased).perfect, "biased key reported perfectly secret")?;
    let post = posterior_plaintext(&biased, 0).map_err(|e| e.to_string())?;
    ensure(post.posterior == d(&[72, 2], 74), format!("biased posterior {:?}", post.posterior.to_f64_vec()))?;
    Ok(format!("posterior = prior exactly, H(m|c) = H(m) = {prior_h:.6}; biased key posterior(c=0) = 72/74, 2/74"))
}

fn criterion_7() -> Outcome {
    let prior = d(&[9, 1], 10);
    let uniform = d(&[1, 1], 2);
    let h_prior = shannon_entropy(&prior);
    close("H(p)", h_prior, H_PRIOR_OTP, REPORT_TOL)?;
    let mut min_gain = f64::INFINITY;
    for l in 1..=100 {
        let lambda = p(l, 100);
        let blend = blend_beliefs(&prior, &uniform, &lambda).map_err(|e| e.to_string())?;
        let change = dist_entropy_change(&prior, &blend);
        ensure(change.change == EntropyChange::Increased, format!("lambda {lambda}: {:?}", change.change))?;
        min_gain = min_gain.min(change.posterior_entropy - h_prior);
        for ((x, a), b) in blend.weights().iter().zip(prior.weights()).zip(uniform.weights()) {
            ensure(x >= a.min(b) && x <= a.max(b), format!("lambda {lambda}: component {x} out of bounds"))?;
        }
    }
    Ok(format!("entropy rises above {h_prior:.6} for all 100 lambdas (min gain {min_gain:.6}), bounds hold exactly"))
}

fn criterion_8() -> Outcome {
    let mut sampler = SimplexSampler::new(SEED ^ 1);
    for _ in 0..500 {
        let j = sampler.joint_up_to(5, 5);
        for axis in [Axis::X, Axis::Y] {
            let total: Rational = marginal(&j, axis).weights().iter().map(Prob::value).sum();
            ensure(total.is_one(), "marginal mass is not exactly one")?;
        }
    }
    for model in [example2_model(), biased_key_model()] {
        let pc = ciphertext_dist(&model);
        let mut acc = vec![Rational::zero(); model.alphabet_size()];
        for c in 0..model.alphabet_size() {
            if let Ok(post) = posterior_plaintext(&model, c) {
                for (a, w) in acc.iter_mut().zip(post.posterior.weights()) {
                    *a += pc.weights()[c].value() * w.value();
                }
            }
        }
        let prior: Vec<Rational> = model.plaintext_prior().weights().iter().map(|w| w.value().clone()).collect();
        ensure(acc == prior, "posterior does not average back to the prior")?;
    }
    let (pp, qq) = (sampler.dist(4), sampler.dist(4));
    for l in 0..=20 {
        let b = blend_beliefs(&pp, &qq, &p(l, 20)).map_err(|e| e.to_string())?;
        let total: Rational = b.weights().iter().map(Prob::value).sum();
        ensure(total.is_one(), "blend mass is not exactly one")?;
    }

    let table1 = format!("{}/tests/fixtures/valid/table1.csv", env!("CARGO_MANIFEST_DIR"));
    let model = format!("{}/tests/fixtures/valid/otp_uniform.json", env!("CARGO_MANIFEST_DIR"));
    let runs: Vec<Vec<&str>> = vec![
        vec!["reproduce", "all"],
        vec!["entropy", &table1],
        vec!["check", &table1, "--samples", "300"],
        vec!["otp", "--model", &model, "--ciphertext", "0", "--blend", "1/4"],
        vec!["search", "--rows", "1", "--cols", "3", "--step", "1/5"],
    ];
    for args in runs {
        let mut full = args.clone();
        full.extend(["--format", "json", "--seed", "77"]);
        let a = cli(&full)?;
        let b = cli(&full)?;
        ensure(a == b, format!("{args:?} not byte-stable"))?;
        let v: Value = serde_json::from_str(&a).unwrap();
        ensure(v["schema_version"] == "1" && v["seed"] == 77, format!("{args:?} envelope"))?;
    }
    Ok("exact marginals, posterior averaging, mixture mass; 5 commands byte-stable under seed 77".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("table reproduction", criterion_1),
        ("pointwise increase with averaged inequality intact", criterion_2),
        ("Shannon identity property suite", criterion_3),
        ("search certificate", criterion_4),
        ("binary entropy change verdicts", criterion_5),
        ("one-time pad exact Bayes", criterion_6),
        ("blend heuristic", criterion_7),
        ("exactness and determinism", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
