//! One-time pad over `Z_s`: ciphertext `c = (m + k) mod s`.
//!
//! Posteriors are computed by exact Bayes, `p(m | c) ∝ p(m) p(k = c - m)`.
//! [`blend_beliefs`] separately implements a mixture rule for reconciling
//! two beliefs, which is not a Bayesian update.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::analysis::{check_conditioning_reduces_avg, Verdict};
use crate::dist::{Dist, JointDist};
use crate::entropy::{shannon_entropy, Bits};
use crate::error::Error;
use crate::prob::{Prob, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CipherModel {
    plaintext_prior: Dist,
    key_dist: Dist,
}

impl CipherModel {
    pub fn plaintext_prior(&self) -> &Dist {
        &self.plaintext_prior
    }

    pub fn key_dist(&self) -> &Dist {
        &self.key_dist
    }

    pub fn alphabet_size(&self) -> usize {
        self.plaintext_prior.len()
    }

    pub fn encrypt(&self, plaintext: usize, key: usize) -> usize {
        (plaintext + key) % self.alphabet_size()
    }

    /// The unique key taking `plaintext` to `ciphertext`.
    pub fn key_for(&self, plaintext: usize, ciphertext: usize) -> usize {
        let s = self.alphabet_size();
        (ciphertext + s - plaintext % s) % s
    }

    fn likelihood(&self, plaintext: usize, ciphertext: usize) -> &Rational {
        self.key_dist.weights()[self.key_for(plaintext, ciphertext)].value()
    }
}

pub fn build_model(plaintext_prior: Dist, key_dist: Dist) -> Result<CipherModel, Error> {
    if plaintext_prior.len() != key_dist.len() {
        return Err(Error::LengthMismatch { expected: plaintext_prior.len(), found: key_dist.len() });
    }
    if plaintext_prior.len() < 2 {
        return Err(Error::AlphabetTooSmall { size: plaintext_prior.len() });
    }
    Ok(CipherModel { plaintext_prior, key_dist })
}

/// `p(c) = Σ_m p(m) p(k = c - m)`.
pub fn ciphertext_dist(model: &CipherModel) -> Dist {
    let s = model.alphabet_size();
    let weights = (0..s)
        .map(|c| {
            let total: Rational = model
                .plaintext_prior
                .weights()
                .iter()
                .enumerate()
                .map(|(m, pm)| pm.value() * model.likelihood(m, c))
                .sum();
            Prob::from_unchecked(total)
        })
        .collect();
    Dist::from_weights_unchecked(weights)
}

/// The joint `p(c, m)` with ciphertexts on rows and plaintexts on columns.
pub fn ciphertext_plaintext_joint(model: &CipherModel) -> JointDist {
    let s = model.alphabet_size();
    let grid: Vec<Vec<Rational>> = (0..s)
        .map(|c| {
            (0..s)
                .map(|m| model.plaintext_prior.weights()[m].value() * model.likelihood(m, c))
                .collect()
        })
        .collect();
    crate::dist::validate_joint(&grid).expect("product of two distributions has unit mass")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PosteriorReport {
    pub ciphertext: usize,
    pub posterior: Dist,
    pub prior_entropy: Bits,
    pub posterior_entropy: Bits,
    /// `posterior_entropy - prior_entropy`
    pub delta: Bits,
}

pub fn posterior_plaintext(model: &CipherModel, ciphertext: usize) -> Result<PosteriorReport, Error> {
    let s = model.alphabet_size();
    if ciphertext >= s {
        return Err(Error::IndexOutOfRange { index: ciphertext, len: s });
    }
    let unnormalized: Vec<Rational> = model
        .plaintext_prior
        .weights()
        .iter()
        .enumerate()
        .map(|(m, pm)| pm.value() * model.likelihood(m, ciphertext))
        .collect();
    let evidence: Rational = unnormalized.iter().sum();
    if evidence.is_zero() {
        return Err(Error::ImpossibleCiphertext { symbol: ciphertext });
    }
    let posterior =
        Dist::from_weights_unchecked(unnormalized.into_iter().map(|u| Prob::from_unchecked(u / &evidence)).collect());
    let prior_entropy = shannon_entropy(&model.plaintext_prior);
    let posterior_entropy = shannon_entropy(&posterior);
    Ok(PosteriorReport { ciphertext, posterior, prior_entropy, posterior_entropy, delta: posterior_entropy - prior_entropy })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SecrecyReport {
    /// Posterior equals prior, exactly, for every possible ciphertext.
    pub perfect: bool,
    /// One report per ciphertext of positive probability.
    pub reports: Vec<PosteriorReport>,
}

pub fn perfect_secrecy_check(model: &CipherModel) -> SecrecyReport {
    let reports: Vec<PosteriorReport> =
        (0..model.alphabet_size()).filter_map(|c| posterior_plaintext(model, c).ok()).collect();
    let perfect = reports.iter().all(|r| &r.posterior == model.plaintext_prior());
    SecrecyReport { perfect, reports }
}

/// `H(m | c) <= H(m)` on the induced ciphertext/plaintext joint.
pub fn secrecy_entropy_verdict(model: &CipherModel) -> Verdict {
    check_conditioning_reduces_avg(&ciphertext_plaintext_joint(model))
}

/// `(1 - lambda) p + lambda q`. Each component lands between the
/// corresponding components of `p` and `q`.
pub fn blend_beliefs(p: &Dist, q: &Dist, lambda: &Prob) -> Result<Dist, Error> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch { expected: p.len(), found: q.len() });
    }
    let keep = Rational::one() - lambda.value();
    let weights = p
        .weights()
        .iter()
        .zip(q.weights())
        .map(|(a, b)| Prob::from_unchecked(&keep * a.value() + lambda.value() * b.value()))
        .collect();
    Ok(Dist::from_weights_unchecked(weights))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(numers: &[i64], denom: i64) -> Dist {
        Dist::from_ratios(numers, denom).unwrap()
    }

    fn skewed_prior_model() -> CipherModel {
        build_model(d(&[9, 1], 10), d(&[1, 1], 2)).unwrap()
    }

    fn biased_model() -> CipherModel {
        build_model(d(&[9, 1], 10), d(&[8, 2], 10)).unwrap()
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            build_model(d(&[1, 1], 2), d(&[1, 1, 1], 3)),
            Err(Error::LengthMismatch { expected: 2, found: 3 })
        );
        assert_eq!(build_model(d(&[1], 1), d(&[1], 1)), Err(Error::AlphabetTooSmall { size: 1 }));
    }

    #[test]
    fn encryption_is_a_bijection_per_ciphertext() {
        let m = build_model(Dist::uniform(5).unwrap(), Dist::uniform(5).unwrap()).unwrap();
        for c in 0..5 {
            let mut keys: Vec<usize> = (0..5).map(|p| m.key_for(p, c)).collect();
            assert!((0..5).all(|p| m.encrypt(p, m.key_for(p, c)) == c));
            keys.sort();
            assert_eq!(keys, vec![0, 1, 2, 3, 4]);
        }
        // s = 2 is xor
        let b = skewed_prior_model();
        for (p, k) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            assert_eq!(b.encrypt(p, k), p ^ k);
        }
    }

    #[test]
    fn ciphertext_distributions() {
        assert_eq!(ciphertext_dist(&skewed_prior_model()), d(&[1, 1], 2));
        let uniform = build_model(d(&[1, 1], 2), d(&[1, 1], 2)).unwrap();
        assert_eq!(ciphertext_dist(&uniform), d(&[1, 1], 2));
        assert_eq!(ciphertext_dist(&biased_model()), d(&[74, 26], 100));
    }

    #[test]
    fn posteriors() {
        let rep = posterior_plaintext(&skewed_prior_model(), 0).unwrap();
        assert_eq!(rep.posterior, d(&[9, 1], 10));
        assert_eq!(rep.delta, 0.0);

        let uniform = build_model(d(&[1, 1], 2), d(&[1, 1], 2)).unwrap();
        let rep = posterior_plaintext(&uniform, 1).unwrap();
        assert_eq!(rep.posterior, d(&[1, 1], 2));
        assert_eq!(rep.delta, 0.0);

        let rep = posterior_plaintext(&biased_model(), 0).unwrap();
        assert_eq!(rep.posterior, d(&[72, 2], 74));
        assert!(rep.delta < 0.0);
        assert!((rep.posterior.to_f64_vec()[0] - 0.972_973).abs() < 1e-6);
        assert!((rep.delta - (rep.posterior_entropy - rep.prior_entropy)).abs() < 1e-12);
    }

    #[test]
    fn impossible_ciphertext() {
        let m = build_model(d(&[1, 0], 1), d(&[1, 0], 1)).unwrap();
        assert_eq!(posterior_plaintext(&m, 1), Err(Error::ImpossibleCiphertext { symbol: 1 }));
        assert!(posterior_plaintext(&m, 2).is_err());
        // only c = 0 is reported
        let check = perfect_secrecy_check(&m);
        assert_eq!(check.reports.len(), 1);
        assert!(check.perfect);
    }

    #[test]
    fn secrecy() {
        assert!(perfect_secrecy_check(&skewed_prior_model()).perfect);
        let uniform = build_model(d(&[1, 1], 2), d(&[1, 1], 2)).unwrap();
        assert!(perfect_secrecy_check(&uniform).perfect);
        let biased = perfect_secrecy_check(&biased_model());
        assert!(!biased.perfect);
        assert_eq!(biased.reports[0].posterior, d(&[72, 2], 74));
    }

    #[test]
    fn secrecy_verdicts() {
        let v = secrecy_entropy_verdict(&skewed_prior_model());
        assert!(v.equality);
        assert!((v.rhs - 0.468_995_593_589_281_2).abs() < 1e-12);
        let v = secrecy_entropy_verdict(&biased_model());
        assert!(v.holds && !v.equality);
    }

    #[test]
    fn blends() {
        let p = d(&[9, 1], 10);
        let q = d(&[1, 1], 2);
        let half = Prob::ratio(1, 2).unwrap();
        let mid = blend_beliefs(&p, &q, &half).unwrap();
        assert_eq!(mid, d(&[7, 3], 10));
        assert!((shannon_entropy(&mid) - 0.881_290_899_230_692_6).abs() < 1e-12);
        assert!(shannon_entropy(&mid) > shannon_entropy(&p));
        assert_eq!(blend_beliefs(&p, &q, &Prob::zero()).unwrap(), p);
        assert_eq!(blend_beliefs(&p, &q, &Prob::one()).unwrap(), q);
        assert!(blend_beliefs(&p, &Dist::uniform(3).unwrap(), &half).is_err());
    }
}
