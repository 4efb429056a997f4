//! Exact discrete distributions and the entropy functionals built on them.
//!
//! Probabilities are exact rationals ([`Prob`]); distributions ([`Dist`],
//! [`JointDist`]) sum to one by rational equality. Entropies are reported in
//! bits as `f64`. On top of that sit inequality verdicts and an exhaustive
//! simplex search ([`analysis`]), one-time-pad posterior analysis ([`otp`]),
//! seeded random joints ([`sample`]) and CSV/JSON ingestion ([`io`]).

pub mod analysis;
pub mod dist;
pub mod entropy;
pub mod error;
pub mod io;
pub mod otp;
pub mod prob;
pub mod sample;

pub use analysis::{
    check_chain_rule, check_conditioning_reduces_avg, check_subadditivity,
    entropy_change_verdict, is_independent, search_pointwise_increase, Certificate, Claim,
    EntropyChange, EntropyChangeVerdict, SearchHit, SearchOutcome, Verdict,
};
pub use dist::{conditional_slice, marginal, mix_update, validate_joint, Axis, Dist, JointDist};
pub use entropy::{
    binary_entropy, conditional_entropy_avg, joint_entropy, pointwise_conditional_entropy,
    shannon_entropy, updated_entropy, Bits, JointEntropies, TOLERANCE,
};
pub use error::{Error, LoadError, ParseError};
pub use otp::{
    blend_beliefs, build_model, ciphertext_dist, perfect_secrecy_check, posterior_plaintext,
    CipherModel, PosteriorReport, SecrecyReport,
};
pub use prob::{parse_rational, Prob, Rational};
