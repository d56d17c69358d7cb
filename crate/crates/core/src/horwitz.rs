//! Coefficient of variation against concentration.
//!
//! Sampling `n` elemental units at mass fraction `p` gives
//! `CV = √((1 − p)/(np))`. If the effort grows as `n = 2500·p^{-0.7}`, the
//! curve reduces to the empirical Horwitz form `CV = 0.02·p^{-0.15}`.

use crate::error::{domain, Result};

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(domain(format!("p must lie in (0, 1), got {p}")))
    }
}

pub fn cv_theoretical(p: f64, n: f64) -> Result<f64> {
    check_p(p)?;
    if !(n > 0.0 && n.is_finite()) {
        return Err(domain(format!("n must be positive and finite, got {n}")));
    }
    Ok(((1.0 - p) / (n * p)).sqrt())
}

pub fn horwitz_cv(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(0.02 * p.powf(-0.15))
}

/// Sample size that puts `(np)^{-1/2}` on the Horwitz curve.
pub fn hall_selinger_n(p: f64) -> Result<f64> {
    check_p(p)?;
    Ok(2500.0 * p.powf(-0.7))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CvPoint {
    pub p: f64,
    pub n: f64,
    pub cv: f64,
    pub cv_horwitz: f64,
}

/// Log-spaced rows from `p_min` to `p_max`, endpoints included exactly.
pub fn horwitz_table(p_min: f64, p_max: f64, points: usize) -> Result<Vec<CvPoint>> {
    check_p(p_min)?;
    check_p(p_max)?;
    if !(p_min < p_max) {
        return Err(domain(format!(
            "need p_min < p_max, got {p_min} and {p_max}"
        )));
    }
    if points < 2 {
        return Err(domain(format!("need at least 2 points, got {points}")));
    }
    let (a, b) = (p_min.ln(), p_max.ln());
    (0..points)
        .map(|i| {
            let p = match i {
                0 => p_min,
                i if i == points - 1 => p_max,
                i => (a + (b - a) * i as f64 / (points - 1) as f64).exp(),
            };
            let n = hall_selinger_n(p)?;
            Ok(CvPoint {
                p,
                n,
                cv: cv_theoretical(p, n)?,
                cv_horwitz: horwitz_cv(p)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert!((cv_theoretical(1e-4, 1e6).unwrap() - 0.099_995).abs() < 5e-7);
        assert_eq!(cv_theoretical(0.5, 1.0).unwrap(), 1.0);
        assert!((horwitz_cv(1e-6).unwrap() - 0.158_865_646_944_856_312).abs() < 1e-15);
        assert!((hall_selinger_n(1e-6).unwrap() / 39_622_329.811_527_772_3 - 1.0).abs() < 1e-13);
        assert!((horwitz_cv(1.0 - 1e-12).unwrap() - 0.02).abs() < 1e-12);
        assert!((hall_selinger_n(1.0 - 1e-12).unwrap() - 2500.0).abs() < 1e-6);
        assert!(cv_theoretical(0.0, 1.0).is_err());
        assert!(horwitz_cv(1.0).is_err());
    }

    #[test]
    fn small_p_neglects_the_complement() {
        for p in [1e-3f64, 1e-5, 1e-8] {
            let n = 1234.0f64;
            let plain = (n * p).powf(-0.5);
            assert!(((cv_theoretical(p, n).unwrap() - plain) / plain).abs() <= p);
        }
    }

    #[test]
    fn effort_law_reproduces_horwitz() {
        for e in 0..=50 {
            let p = 10f64.powf(-8.0 + 5.0 * e as f64 / 50.0);
            let ratio =
                cv_theoretical(p, hall_selinger_n(p).unwrap()).unwrap() / horwitz_cv(p).unwrap();
            assert!((1.0 - 1e-3..=1.0).contains(&ratio), "p = {p}: {ratio}");
        }
    }

    #[test]
    fn table_shape() {
        let t = horwitz_table(1e-8, 1e-1, 2).unwrap();
        assert_eq!((t[0].p, t[1].p), (1e-8, 1e-1));
        let t = horwitz_table(1e-8, 1e-1, 30).unwrap();
        for w in t.windows(2) {
            assert!(w[1].p > w[0].p && w[1].cv < w[0].cv && w[1].cv_horwitz < w[0].cv_horwitz);
        }
        assert!(horwitz_table(1e-1, 1e-8, 5).is_err());
        assert!(horwitz_table(1e-8, 1e-1, 1).is_err());
    }
}
