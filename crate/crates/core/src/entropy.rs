//! The natural-log entropy function `h(p) = -p ln p - (1-p) ln(1-p)` and
//! three analytic upper bounds on it.
//!
//! Everything here is evaluated in double precision; exact rationals from the
//! combinatorial side are converted at this boundary. The two parametrizations
//! are `p ∈ [0,1]` and the bias `x = 2p - 1 ∈ [-1,1]`.

use crate::{Error, Result};

const LN_2: f64 = std::f64::consts::LN_2;

fn check_prob(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::ProbabilityOutOfRange(p))
    }
}

fn check_bias(x: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::BiasOutOfRange(x))
    }
}

/// `-t ln t` with the convention `0 ln 0 = 0`.
fn neg_t_ln_t(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        -t * t.ln()
    }
}

pub(crate) fn h_core(p: f64) -> f64 {
    neg_t_ln_t(p) + neg_t_ln_t(1.0 - p)
}

pub(crate) fn biased_core(p: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else {
        p * (1.0 - p.ln())
    }
}

/// Entropy in nats. Symmetric (`h(p) = h(1-p)`), zero at the endpoints,
/// maximal at `h(1/2) = ln 2`.
pub fn h(p: f64) -> Result<f64> {
    check_prob(p)?;
    Ok(h_core(p))
}

/// Second-order bound `ln 2 - x²/2 ≥ h((1+x)/2)`, the head of the expansion
/// of `h` around `p = 1/2`; equality at `x = 0`.
pub fn taylor_bound(x: f64) -> Result<f64> {
    check_bias(x)?;
    Ok(LN_2 - x * x / 2.0)
}

/// Truncation `ln 2 - Σ_{t=2,4,…,T} x^t / (t(t-1))` of the expansion of
/// `h((1+x)/2)` around `x = 0`.
///
/// All dropped terms are nonnegative, so every even truncation is an upper
/// bound on `h((1+x)/2)`, non-increasing in `T`, and converges to it for
/// `|x| < 1`. `T` must be even and at least 2; `T = 2` equals
/// [`taylor_bound`].
pub fn taylor_partial(x: f64, order: u32) -> Result<f64> {
    check_bias(x)?;
    if order < 2 || order % 2 != 0 {
        return Err(Error::TaylorOrder(order));
    }
    let mut sum = 0.0;
    let x2 = x * x;
    let mut power = 1.0;
    let mut t = 2u32;
    while t <= order {
        power *= x2;
        sum += power / (t as f64 * (t - 1) as f64);
        t += 2;
    }
    Ok(LN_2 - sum)
}

/// The small-p bound `h(p) ≤ p(1 - ln p)`, with value 0 at `p = 0`.
/// Tight as `p → 0`.
pub fn biased_bound_p(p: f64) -> Result<f64> {
    check_prob(p)?;
    Ok(biased_core(p))
}

/// The bias form of [`biased_bound_p`] combined with its mirror image:
/// `h((1+x)/2) ≤ ((1-|x|)/2)(1 - ln((1-|x|)/2))`. Exact at `|x| = 1`.
pub fn biased_bound_x(x: f64) -> Result<f64> {
    check_bias(x)?;
    Ok(biased_core((1.0 - x.abs()) / 2.0))
}
