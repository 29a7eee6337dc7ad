//! Falsification-style naturalness checks for continuous groups.
//!
//! A verdict of "natural" means no counterexample turned up among the drawn
//! pairs at the given tolerances; it is not a proof. Pairs with equal
//! parameter value are built analytically per formula, so the search never
//! relies on accidental near-coincidences.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Roundoff allowance, in ulps of the compared magnitude.
const ROUNDOFF_ULPS: f64 = 64.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingConfig {
    pub n_samples: usize,
    /// Largest `|θ(φ1) - θ(φ2)|` (relative to magnitude) for a pair to count as equal.
    pub match_tol: f64,
    /// Smallest `|θ(φ1 g) - θ(φ2 g)|` (relative to magnitude) that counts as a violation.
    pub check_tol: f64,
    pub seed: u64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig { n_samples: 10_000, match_tol: 0.0, check_tol: 1e-9, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Natural,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledNaturalnessReport<P, G> {
    pub verdict: Verdict,
    pub counterexample: Option<(P, P, G)>,
    /// Pairs that passed the equality test and were checked.
    pub samples_used: usize,
    /// Draws discarded because the sampler gave no valid equal pair.
    pub pairs_rejected: usize,
    pub match_tol: f64,
    pub tolerance: f64,
}

fn scale<T: Scalar>(a: T, b: T) -> T {
    let one = T::one();
    let m = if a.abs() > b.abs() { a.abs() } else { b.abs() };
    if m > one {
        m
    } else {
        one
    }
}

/// Generic sampled search for `(φ1, φ2, g)` with `θ(φ1) = θ(φ2)` but
/// `θ(φ1 g) ≠ θ(φ2 g)`. Stops at the first counterexample.
#[allow(clippy::too_many_arguments)]
pub fn is_natural_sampled<T, P, G, R>(
    theta: impl Fn(&P) -> T,
    act: impl Fn(&P, &G) -> P,
    mut pair_sampler: impl FnMut(&mut R) -> Option<(P, P)>,
    mut group_sampler: impl FnMut(&mut R) -> G,
    rng: &mut R,
    n_samples: usize,
    match_tol: f64,
    check_tol: f64,
) -> Result<SampledNaturalnessReport<P, G>>
where
    T: Scalar,
    R: Rng,
{
    const OP: &str = "is_natural_sampled";
    if n_samples == 0 {
        return Err(Error::input(OP, "n_samples must be at least 1"));
    }
    if !(match_tol >= 0.0) || !(check_tol > 0.0) {
        return Err(Error::input(OP, "tolerances must be nonnegative (match) and positive (check)"));
    }
    let slack = T::machine_epsilon() * T::of(ROUNDOFF_ULPS);
    let (match_t, check_t) = (T::of(match_tol), T::of(check_tol));
    let mut used = 0;
    let mut rejected = 0;
    for _ in 0..n_samples {
        let Some((p1, p2)) = pair_sampler(rng) else {
            rejected += 1;
            continue;
        };
        let (t1, t2) = (theta(&p1), theta(&p2));
        if !t1.is_finite() || !t2.is_finite() || (t1 - t2).abs() > (match_t + slack) * scale(t1, t2) {
            rejected += 1;
            continue;
        }
        used += 1;
        let g = group_sampler(rng);
        let (q1, q2) = (act(&p1, &g), act(&p2, &g));
        let (u1, u2) = (theta(&q1), theta(&q2));
        let violated = if u1.is_finite() && u2.is_finite() {
            (u1 - u2).abs() > (check_t + slack) * scale(u1, u2)
        } else {
            // one side blows up while the other stays finite
            u1.is_finite() != u2.is_finite()
        };
        if violated {
            return Ok(SampledNaturalnessReport {
                verdict: Verdict::Counterexample,
                counterexample: Some((p1, p2, g)),
                samples_used: used,
                pairs_rejected: rejected,
                match_tol,
                tolerance: check_tol,
            });
        }
    }
    if used == 0 {
        return Err(Error::input(OP, "sampler produced no valid equal-value pairs"));
    }
    Ok(SampledNaturalnessReport {
        verdict: Verdict::Natural,
        counterexample: None,
        samples_used: used,
        pairs_rejected: rejected,
        match_tol,
        tolerance: check_tol,
    })
}

/// A point `(μ, σ)` with `σ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocationScale<T> {
    pub mu: T,
    pub sigma: T,
}

/// `(μ, σ) ↦ (shift + scale·μ, scale·σ)` with `scale > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineElement<T> {
    pub shift: T,
    pub scale: T,
}

impl<T: Scalar> AffineElement<T> {
    pub fn apply(&self, p: &LocationScale<T>) -> LocationScale<T> {
        LocationScale { mu: self.shift + self.scale * p.mu, sigma: self.scale * p.sigma }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocationScaleGroup {
    TranslationScale,
    PureScale,
    PureTranslation,
}

impl LocationScaleGroup {
    pub const ALL: [LocationScaleGroup; 3] =
        [LocationScaleGroup::TranslationScale, LocationScaleGroup::PureScale, LocationScaleGroup::PureTranslation];

    pub fn id(&self) -> &'static str {
        match self {
            LocationScaleGroup::TranslationScale => "translation-scale",
            LocationScaleGroup::PureScale => "scale",
            LocationScaleGroup::PureTranslation => "translation",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|g| g.id() == s)
            .ok_or_else(|| Error::input("LocationScaleGroup::parse", format!("unknown group '{s}'")))
    }

    pub fn sample<T: Scalar, R: Rng>(&self, rng: &mut R) -> AffineElement<T> {
        let shift = rng.random_range(-2.0..2.0);
        let scale = rng.random_range(0.5..2.0);
        let (shift, scale) = match self {
            LocationScaleGroup::TranslationScale => (shift, scale),
            LocationScaleGroup::PureScale => (0.0, scale),
            LocationScaleGroup::PureTranslation => (shift, 1.0),
        };
        AffineElement { shift: T::of(shift), scale: T::of(scale) }
    }
}

/// Catalog of one-dimensional focus parameters of `(μ, σ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FocusFormula {
    Mu,
    Sigma,
    MuCubed,
    MuPlusSigma,
    MuPlus3Sigma,
    MuPlusSigmaSquared,
    SigmaExpMu,
    TanMuOverSinSigma,
    CoefficientOfVariation,
}

impl FocusFormula {
    pub const ALL: [FocusFormula; 9] = [
        FocusFormula::Mu,
        FocusFormula::Sigma,
        FocusFormula::MuCubed,
        FocusFormula::MuPlusSigma,
        FocusFormula::MuPlus3Sigma,
        FocusFormula::MuPlusSigmaSquared,
        FocusFormula::SigmaExpMu,
        FocusFormula::TanMuOverSinSigma,
        FocusFormula::CoefficientOfVariation,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            FocusFormula::Mu => "mu",
            FocusFormula::Sigma => "sigma",
            FocusFormula::MuCubed => "mu^3",
            FocusFormula::MuPlusSigma => "mu+sigma",
            FocusFormula::MuPlus3Sigma => "mu+3sigma",
            FocusFormula::MuPlusSigmaSquared => "mu+sigma^2",
            FocusFormula::SigmaExpMu => "sigma*exp(mu)",
            FocusFormula::TanMuOverSinSigma => "tan(mu)/sin(sigma)",
            FocusFormula::CoefficientOfVariation => "cv",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let alias = match s {
            "sigma/mu" => "cv",
            "mu3" => "mu^3",
            other => other,
        };
        Self::ALL
            .into_iter()
            .find(|f| f.id() == alias)
            .ok_or_else(|| Error::input("FocusFormula::parse", format!("unknown formula '{s}'")))
    }

    pub fn eval<T: Scalar>(&self, p: &LocationScale<T>) -> T {
        let (mu, sigma) = (p.mu, p.sigma);
        match self {
            FocusFormula::Mu => mu,
            FocusFormula::Sigma => sigma,
            FocusFormula::MuCubed => mu * mu * mu,
            FocusFormula::MuPlusSigma => mu + sigma,
            FocusFormula::MuPlus3Sigma => mu + T::of(3.0) * sigma,
            FocusFormula::MuPlusSigmaSquared => mu + sigma * sigma,
            FocusFormula::SigmaExpMu => sigma * mu.exp(),
            FocusFormula::TanMuOverSinSigma => mu.tan() / sigma.sin(),
            FocusFormula::CoefficientOfVariation => sigma / mu,
        }
    }

    /// A second point with the same value `theta`, given a freely chosen
    /// coordinate (`σ` for most formulas, `μ` for `sigma`).
    pub fn partner<T: Scalar>(&self, theta: T, free: T) -> Option<LocationScale<T>> {
        let zero = T::zero();
        let p = match self {
            FocusFormula::Mu => LocationScale { mu: theta, sigma: free },
            FocusFormula::Sigma => LocationScale { mu: free, sigma: theta },
            FocusFormula::MuCubed => {
                let r = theta.abs().powf(T::one() / T::of(3.0));
                LocationScale { mu: if theta < zero { -r } else { r }, sigma: free }
            }
            FocusFormula::MuPlusSigma => LocationScale { mu: theta - free, sigma: free },
            FocusFormula::MuPlus3Sigma => LocationScale { mu: theta - T::of(3.0) * free, sigma: free },
            FocusFormula::MuPlusSigmaSquared => LocationScale { mu: theta - free * free, sigma: free },
            FocusFormula::SigmaExpMu => {
                if theta <= zero {
                    return None;
                }
                LocationScale { mu: (theta / free).ln(), sigma: free }
            }
            FocusFormula::TanMuOverSinSigma => LocationScale { mu: (theta * free.sin()).atan(), sigma: free },
            FocusFormula::CoefficientOfVariation => {
                if theta == zero {
                    return None;
                }
                LocationScale { mu: free / theta, sigma: free }
            }
        };
        (p.sigma > zero && p.mu.is_finite()).then_some(p)
    }
}

pub type LocationScaleReport<T> = SampledNaturalnessReport<LocationScale<T>, AffineElement<T>>;

/// Sampled naturalness of a catalog formula under one of the location/scale
/// groups, with `μ ~ U(-2, 2)` and `σ ~ U(0.25, 2)`.
pub fn classify_location_scale<T: Scalar>(
    formula: FocusFormula,
    group: LocationScaleGroup,
    config: &SamplingConfig,
) -> Result<LocationScaleReport<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let draw = |rng: &mut ChaCha8Rng| LocationScale {
        mu: T::of(rng.random_range(-2.0..2.0)),
        sigma: T::of(rng.random_range(0.25..2.0)),
    };
    let pair_sampler = |rng: &mut ChaCha8Rng| {
        let p1 = draw(rng);
        let free = if formula == FocusFormula::Sigma { draw(rng).mu } else { draw(rng).sigma };
        formula.partner(formula.eval(&p1), free).map(|p2| (p1, p2))
    };
    is_natural_sampled(
        |p: &LocationScale<T>| formula.eval(p),
        |p, g: &AffineElement<T>| g.apply(p),
        pair_sampler,
        |rng: &mut ChaCha8Rng| group.sample::<T, _>(rng),
        &mut rng,
        config.n_samples,
        config.match_tol,
        config.check_tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partners_have_equal_value() {
        let p = LocationScale { mu: 0.7f64, sigma: 1.3 };
        for f in FocusFormula::ALL {
            let free = if f == FocusFormula::Sigma { -0.4 } else { 0.9 };
            let q = f.partner(f.eval(&p), free).unwrap();
            assert!((f.eval(&q) - f.eval(&p)).abs() < 1e-12, "{}", f.id());
        }
    }

    #[test]
    fn location_scale_examples() {
        let cfg = SamplingConfig::default();
        let natural = |f, g| classify_location_scale::<f64>(f, g, &cfg).unwrap().verdict == Verdict::Natural;
        assert!(natural(FocusFormula::MuPlus3Sigma, LocationScaleGroup::TranslationScale));
        assert!(!natural(FocusFormula::SigmaExpMu, LocationScaleGroup::TranslationScale));
        assert!(natural(FocusFormula::CoefficientOfVariation, LocationScaleGroup::PureScale));
    }

    #[test]
    fn degenerate_sampler_is_an_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = is_natural_sampled(
            |x: &f64| *x,
            |x, _g: &()| *x,
            |_rng: &mut ChaCha8Rng| None::<(f64, f64)>,
            |_rng| (),
            &mut rng,
            10,
            0.0,
            1e-9,
        );
        assert!(matches!(r, Err(Error::Input { .. })));
    }

    #[test]
    fn parse_round_trip() {
        for f in FocusFormula::ALL {
            assert_eq!(FocusFormula::parse(f.id()).unwrap(), f);
        }
        assert!(FocusFormula::parse("sigma^mu").is_err());
        assert_eq!(LocationScaleGroup::parse("scale").unwrap(), LocationScaleGroup::PureScale);
    }
}
