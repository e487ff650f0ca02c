//! Floating-point evaluation of `eta`, `F`, `G` on the upper half plane, used
//! to check exact multiplier values against the transformation law.
//!
//! Nothing here depends on the exact multiplier formulas; the expected value
//! is passed in and compared with a ratio of series evaluations.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiplier::{membership, nu, nu_eta, Level};
use crate::report::Verdict;
use crate::root24::Root24;
use crate::sl2z::Mat2;

/// A point `tau` with `Im tau > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HalfPlanePoint(#[serde(serialize_with = "ser_complex")] Complex64);

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

impl HalfPlanePoint {
    pub fn new(tau: Complex64) -> Result<Self> {
        if tau.im > 0.0 && tau.re.is_finite() && tau.im.is_finite() {
            Ok(HalfPlanePoint(tau))
        } else {
            Err(Error::NotInUpperHalfPlane(tau.im))
        }
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    pub fn tau(self) -> Complex64 {
        self.0
    }

    /// `q = exp(2 pi i tau)`.
    pub fn q(self) -> Complex64 {
        (Complex64::i() * 2.0 * PI * self.0).exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OracleConfig {
    /// Series terms below this magnitude are dropped.
    pub truncation_eps: f64,
    /// A check passes when the residual is below this.
    pub compare_tol: f64,
    /// Smallest `Im tau` at which `eta` is evaluated.
    pub im_floor: f64,
    pub base_point: HalfPlanePoint,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            truncation_eps: 1e-16,
            compare_tol: 1e-9,
            im_floor: 0.01,
            base_point: HalfPlanePoint(Complex64::new(0.0, 2.0)),
            seed: 0,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.truncation_eps > 0.0 && self.truncation_eps < self.compare_tol) {
            return Err(Error::InvalidConfig(format!(
                "need 0 < truncation_eps < compare_tol, got {:e} and {:e}",
                self.truncation_eps, self.compare_tol
            )));
        }
        if self.im_floor.is_nan() || self.im_floor <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "im_floor must be positive, got {}",
                self.im_floor
            )));
        }
        Ok(())
    }

    /// Smallest `Im tau` at which `F` (level 3) or `G` (level 4) is evaluated.
    pub fn quotient_floor(&self, level: Level) -> f64 {
        f64::from(level.modulus()) * self.im_floor
    }
}

fn check_floor(tau: Complex64, floor: f64) -> Result<()> {
    if tau.im < floor {
        Err(Error::BelowFloor { im: tau.im, floor })
    } else {
        Ok(())
    }
}

/// `exp(pi i tau m)` for an integer `m >= 0`, with `Re tau` in `[-1/2, 1/2]`.
fn pentagonal_term(tau: Complex64, m: u64) -> Complex64 {
    let m = m as f64;
    Complex64::from_polar((-PI * tau.im * m).exp(), PI * tau.re * m)
}

/// `eta(tau) = e^{pi i tau/12} sum_n (-1)^n e^{pi i tau n(3n-1)}`.
///
/// The sum is periodic in `Re tau` with period 1, so it is evaluated at the
/// nearest point with `|Re tau| <= 1/2`; the prefactor uses `tau` itself.
pub fn eta(tau: HalfPlanePoint, cfg: &OracleConfig) -> Result<Complex64> {
    let t = tau.tau();
    check_floor(t, cfg.im_floor)?;
    let reduced = Complex64::new(t.re - t.re.round(), t.im);
    let mut sum = Complex64::new(1.0, 0.0);
    let mut n: u64 = 1;
    loop {
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let lead = pentagonal_term(reduced, n * (3 * n - 1));
        let next = pentagonal_term(reduced, n * (3 * n + 1));
        sum += (lead + next) * sign;
        if lead.norm() < cfg.truncation_eps {
            break;
        }
        n += 1;
    }
    Ok((Complex64::i() * PI * t / 12.0).exp() * sum)
}

/// `eta((tau - 1)/N) eta((tau + 1)/N)`: `F` for `N = 3`, `G` for `N = 4`.
pub fn quotient_eval(tau: HalfPlanePoint, level: Level, cfg: &OracleConfig) -> Result<Complex64> {
    let t = tau.tau();
    check_floor(t, cfg.quotient_floor(level))?;
    let n = f64::from(level.modulus());
    let left = HalfPlanePoint::new((t - 1.0) / n)?;
    let right = HalfPlanePoint::new((t + 1.0) / n)?;
    Ok(eta(left, cfg)? * eta(right, cfg)?)
}

pub fn f_eval(tau: HalfPlanePoint, cfg: &OracleConfig) -> Result<Complex64> {
    quotient_eval(tau, Level::Three, cfg)
}

pub fn g_eval(tau: HalfPlanePoint, cfg: &OracleConfig) -> Result<Complex64> {
    quotient_eval(tau, Level::Four, cfg)
}

/// One transformation-law comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub matrix: Mat2,
    /// `null` for the eta check.
    pub level: Option<Level>,
    /// Expected multiplier as `"k/24"`.
    pub nu_exact: String,
    /// Measured `[re, im]` of the normalised ratio.
    pub ratio: [f64; 2],
    pub residual: f64,
    pub verdict: Verdict,
}

fn report(
    m: &Mat2,
    level: Option<Level>,
    expected: Root24,
    ratio: Complex64,
    cfg: &OracleConfig,
) -> VerificationReport {
    let residual = (ratio - expected.to_complex()).norm();
    VerificationReport {
        matrix: m.clone(),
        level,
        nu_exact: expected.fraction(),
        ratio: [ratio.re, ratio.im],
        residual,
        verdict: Verdict::from_bool(residual < cfg.compare_tol),
    }
}

/// `Q(M tau) / ((c tau + d) Q(tau))` at the base point, `Q = F` or `G`.
pub fn transformation_ratio(m: &Mat2, level: Level, cfg: &OracleConfig) -> Result<Complex64> {
    if !membership(m, level.modulus())? {
        return Err(Error::NotMember {
            matrix: m.to_string(),
            level: level.modulus(),
        });
    }
    let tau = cfg.base_point;
    let image = HalfPlanePoint::new(m.moebius(tau.tau())?)?;
    let top = quotient_eval(image, level, cfg)?;
    let bottom = m.automorphy(tau.tau()) * quotient_eval(tau, level, cfg)?;
    Ok(top / bottom)
}

/// Compares the exact multiplier with the measured ratio.
///
/// Fails with [`Error::BelowFloor`] when `M tau` is too close to the real
/// axis to evaluate; that is distinct from a mismatch, which is reported as
/// a `Fail` verdict.
pub fn check_transformation(
    m: &Mat2,
    level: Level,
    cfg: &OracleConfig,
) -> Result<VerificationReport> {
    let expected = nu(m, level)?;
    check_against(m, level, expected, cfg)
}

/// As [`check_transformation`] with an arbitrary expected value; used to
/// test competing closed forms.
pub fn check_against(
    m: &Mat2,
    level: Level,
    expected: Root24,
    cfg: &OracleConfig,
) -> Result<VerificationReport> {
    let ratio = transformation_ratio(m, level, cfg)?;
    Ok(report(m, Some(level), expected, ratio, cfg))
}

/// `eta(M tau) / ((c tau + d)^{1/2} eta(tau))` against the eta multiplier,
/// principal square root, `c > 0` only.
pub fn check_eta_transformation(m: &Mat2, cfg: &OracleConfig) -> Result<VerificationReport> {
    if !m.c().is_positive() {
        return Err(Error::NonPositiveC(m.c().clone()));
    }
    let tau = cfg.base_point;
    let image = HalfPlanePoint::new(m.moebius(tau.tau())?)?;
    let ratio = eta(image, cfg)? / (m.automorphy(tau.tau()).sqrt() * eta(tau, cfg)?);
    Ok(report(m, None, nu_eta(m), ratio, cfg))
}

/// Whether `m` can be checked at the base point: `|c| <= max_c` and the
/// image point clears the floor for `level` (or the plain floor when `None`).
pub fn evaluable(m: &Mat2, level: Option<Level>, max_c: u32, cfg: &OracleConfig) -> bool {
    if m.c().abs() > max_c.into() {
        return false;
    }
    let floor = level.map_or(cfg.im_floor, |l| cfg.quotient_floor(l));
    m.moebius(cfg.base_point.tau())
        .map(|z| z.im >= floor)
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplier::membership;
    use crate::sl2z::Sampler;
    use rand::Rng;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    fn point(re: f64, im: f64) -> HalfPlanePoint {
        HalfPlanePoint::from_parts(re, im).unwrap()
    }

    /// `eta` from the product `q^{1/24} prod (1 - q^n)`, independent of the series.
    fn eta_product(tau: Complex64) -> Complex64 {
        let q = (Complex64::i() * 2.0 * PI * tau).exp();
        let mut prod = Complex64::new(1.0, 0.0);
        let mut qn = q;
        while qn.norm() > 1e-18 {
            prod *= Complex64::new(1.0, 0.0) - qn;
            qn *= q;
        }
        (Complex64::i() * PI * tau / 12.0).exp() * prod
    }

    #[test]
    fn eta_at_i() {
        // Gamma(1/4) / (2 pi^{3/4})
        let expected = 0.768_225_422_326_056_6;
        let z = eta(point(0.0, 1.0), &cfg()).unwrap();
        assert!((z.re - expected).abs() < 1e-15, "{z}");
        assert!(z.im.abs() < 1e-15);
    }

    #[test]
    fn eta_translation_and_large_im() {
        let base = eta(point(0.0, 1.0), &cfg()).unwrap();
        let shifted = eta(point(1.0, 1.0), &cfg()).unwrap();
        let phase = Complex64::from_polar(1.0, PI / 12.0);
        assert!((shifted - phase * base).norm() < 1e-15);
        let high = eta(point(0.0, 10.0), &cfg()).unwrap();
        let lead = (-10.0 * PI / 12.0).exp();
        assert!((high.re - lead).abs() / lead < 1e-15);
    }

    #[test]
    fn eta_matches_product_formula() {
        let mut rng = Sampler::new(1, 1);
        for _ in 0..50 {
            let re = rng.rng().random_range(-3.0..3.0);
            let im = rng.rng().random_range(0.2..3.0);
            let tau = point(re, im);
            let series = eta(tau, &cfg()).unwrap();
            assert!((series - eta_product(tau.tau())).norm() < 1e-12, "{tau:?}");
        }
    }

    #[test]
    fn eta_translation_law_at_random_points() {
        let mut rng = Sampler::new(2, 1);
        let phase = Complex64::from_polar(1.0, PI / 12.0);
        for _ in 0..50 {
            let re = rng.rng().random_range(-5.0..5.0);
            let im = rng.rng().random_range(0.05..2.0);
            let a = eta(point(re, im), &cfg()).unwrap();
            let b = eta(point(re + 1.0, im), &cfg()).unwrap();
            assert!((b - phase * a).norm() < 1e-12);
        }
    }

    #[test]
    fn truncation_is_honest() {
        let fine = OracleConfig {
            truncation_eps: 5e-17,
            ..cfg()
        };
        for (re, im) in [(0.0, 2.0), (0.3, 0.05), (-0.4, 0.011), (2.5, 0.4)] {
            let a = eta(point(re, im), &cfg()).unwrap();
            let b = eta(point(re, im), &fine).unwrap();
            assert!((a - b).norm() < cfg().compare_tol / 100.0);
        }
    }

    #[test]
    fn floor_and_config_validation() {
        assert!(matches!(
            eta(point(0.0, 0.001), &cfg()),
            Err(Error::BelowFloor { .. })
        ));
        assert!(f_eval(point(0.0, 0.02), &cfg()).is_err());
        assert!(HalfPlanePoint::from_parts(0.0, -1.0).is_err());
        let bad = OracleConfig {
            truncation_eps: 1e-8,
            ..cfg()
        };
        assert!(bad.validate().is_err());
        assert!(cfg().validate().is_ok());
    }

    #[test]
    fn quotient_translations() {
        let tau = point(0.2, 1.5);
        let sixth = Complex64::from_polar(1.0, PI / 6.0);
        let f = f_eval(tau, &cfg()).unwrap();
        let f3 = f_eval(point(3.2, 1.5), &cfg()).unwrap();
        assert!((f3 / f - sixth).norm() < 1e-12);
        let g = g_eval(tau, &cfg()).unwrap();
        let g4 = g_eval(point(4.2, 1.5), &cfg()).unwrap();
        assert!((g4 / g - sixth).norm() < 1e-12);
        let unfolded =
            eta(point(0.0, 1.0), &cfg()).unwrap() * eta(point(2.0 / 3.0, 1.0), &cfg()).unwrap();
        assert!((f_eval(point(1.0, 3.0), &cfg()).unwrap() - unfolded).norm() < 1e-14);
    }

    #[test]
    fn transformation_examples() {
        for level in Level::ALL {
            let r = check_transformation(&Mat2::identity(), level, &cfg()).unwrap();
            assert!(r.residual < 1e-14);
            let r = check_transformation(&Mat2::t(), level, &cfg()).unwrap();
            assert_eq!(r.nu_exact, "18/24");
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
        assert!(check_transformation(&Mat2::s(), Level::Three, &cfg()).is_err());
    }

    #[test]
    fn eta_transformation_examples() {
        let r = check_eta_transformation(&Mat2::t(), &cfg()).unwrap();
        assert_eq!(r.nu_exact, "21/24");
        assert_eq!(r.verdict, Verdict::Pass);
        for e in [[1, 0, 1, 1], [2, 1, 1, 1]] {
            let m = Mat2::from_small(e);
            assert_eq!(
                check_eta_transformation(&m, &cfg()).unwrap().verdict,
                Verdict::Pass
            );
        }
        assert!(matches!(
            check_eta_transformation(&Mat2::s(), &cfg()),
            Err(Error::NonPositiveC(_))
        ));
    }

    #[test]
    fn random_members_pass() {
        for level in Level::ALL {
            let mut sampler = Sampler::with_stream(23, u64::from(level.modulus()), 20);
            for _ in 0..40 {
                let m = sampler.next_where(|m| {
                    membership(m, level.modulus()).unwrap() && evaluable(m, Some(level), 20, &cfg())
                });
                let r = check_transformation(&m, level, &cfg()).unwrap();
                assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let r = check_transformation(&Mat2::t(), Level::Three, &cfg()).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["matrix"], "0,-1,1,0");
        assert_eq!(json["level"], 3);
        assert_eq!(json["nu_exact"], "18/24");
        assert_eq!(json["verdict"], "PASS");
        assert!(json["ratio"].as_array().unwrap().len() == 2);
    }
}
