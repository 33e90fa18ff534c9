//! Exponent functions `p(·)`, `q(·)`, `α(·)`.
//!
//! The analytic family is `p(x) = p_∞ + (p₀ − p_∞) / ln(e + |x|)`, which is
//! log-Hölder at the origin and at infinity with constant `|p₀ − p_∞|`.
//! Derived exponents (conjugates, reciprocal sums, sums) carry bounds and
//! log-Hölder constants computed from their parts.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use crate::dilation::Point;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Exponent {
    Constant {
        value: f64,
    },
    LogFamily {
        at_origin: f64,
        at_infinity: f64,
    },
    /// `inner` on `|x| < radius`, `outer` elsewhere.
    Step {
        inner: f64,
        outer: f64,
        radius: f64,
    },
    /// Piecewise constant in the first coordinate: `values[i]` on
    /// `[breaks[i-1], breaks[i])`.
    Piecewise {
        breaks: Vec<f64>,
        values: Vec<f64>,
    },
    /// Pointwise `p/(p-1)`.
    Conjugate {
        of: Box<Exponent>,
    },
    /// `1/p = 1/a + 1/b`.
    Harmonic {
        a: Box<Exponent>,
        b: Box<Exponent>,
    },
    /// `a + b`.
    Sum {
        a: Box<Exponent>,
        b: Box<Exponent>,
    },
}

fn euclid(x: &Point) -> f64 {
    x[0].hypot(x[1])
}

fn conj(p: f64) -> f64 {
    p / (p - 1.0)
}

impl Exponent {
    pub fn constant(value: f64) -> Self {
        Exponent::Constant { value }
    }

    pub fn log_family(at_origin: f64, at_infinity: f64) -> Self {
        Exponent::LogFamily {
            at_origin,
            at_infinity,
        }
    }

    pub fn piecewise(breaks: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.len() != breaks.len() + 1 || breaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadParams(
                "piecewise exponent needs increasing breaks and one more value than breaks".into(),
            ));
        }
        Ok(Exponent::Piecewise { breaks, values })
    }

    pub fn eval(&self, x: &Point) -> f64 {
        match self {
            Exponent::Constant { value } => *value,
            Exponent::LogFamily {
                at_origin,
                at_infinity,
            } => at_infinity + (at_origin - at_infinity) / (E + euclid(x)).ln(),
            Exponent::Step {
                inner,
                outer,
                radius,
            } => {
                if euclid(x) < *radius {
                    *inner
                } else {
                    *outer
                }
            }
            Exponent::Piecewise { breaks, values } => {
                let i = breaks.partition_point(|&b| b <= x[0]);
                values[i]
            }
            Exponent::Conjugate { of } => conj(of.eval(x)),
            Exponent::Harmonic { a, b } => 1.0 / (1.0 / a.eval(x) + 1.0 / b.eval(x)),
            Exponent::Sum { a, b } => a.eval(x) + b.eval(x),
        }
    }

    /// Essential infimum over ℝⁿ.
    pub fn minus(&self) -> f64 {
        match self {
            Exponent::Constant { value } => *value,
            Exponent::LogFamily {
                at_origin,
                at_infinity,
            } => at_origin.min(*at_infinity),
            Exponent::Step { inner, outer, .. } => inner.min(*outer),
            Exponent::Piecewise { values, .. } => {
                values.iter().copied().fold(f64::INFINITY, f64::min)
            }
            Exponent::Conjugate { of } => conj(of.plus()),
            Exponent::Harmonic { a, b } => 1.0 / (1.0 / a.minus() + 1.0 / b.minus()),
            Exponent::Sum { a, b } => a.minus() + b.minus(),
        }
    }

    /// Essential supremum over ℝⁿ.
    pub fn plus(&self) -> f64 {
        match self {
            Exponent::Constant { value } => *value,
            Exponent::LogFamily {
                at_origin,
                at_infinity,
            } => at_origin.max(*at_infinity),
            Exponent::Step { inner, outer, .. } => inner.max(*outer),
            Exponent::Piecewise { values, .. } => {
                values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            }
            Exponent::Conjugate { of } => {
                let m = of.minus();
                if m <= 1.0 {
                    f64::INFINITY
                } else {
                    conj(m)
                }
            }
            Exponent::Harmonic { a, b } => 1.0 / (1.0 / a.plus() + 1.0 / b.plus()),
            Exponent::Sum { a, b } => a.plus() + b.plus(),
        }
    }

    pub fn at_origin(&self) -> f64 {
        self.eval(&[0.0, 0.0])
    }

    /// Limit at infinity (`None` when the exponent has no single limit).
    pub fn at_infinity(&self) -> Option<f64> {
        match self {
            Exponent::Constant { value } => Some(*value),
            Exponent::LogFamily { at_infinity, .. } => Some(*at_infinity),
            Exponent::Step { outer, .. } => Some(*outer),
            Exponent::Piecewise { values, .. } => {
                let first = values[0];
                values.iter().all(|&v| v == first).then_some(first)
            }
            Exponent::Conjugate { of } => of.at_infinity().map(conj),
            Exponent::Harmonic { a, b } => {
                Some(1.0 / (1.0 / a.at_infinity()? + 1.0 / b.at_infinity()?))
            }
            Exponent::Sum { a, b } => Some(a.at_infinity()? + b.at_infinity()?),
        }
    }

    /// `Some(c)` when the exponent takes the single value `c`.
    pub fn constant_value(&self) -> Option<f64> {
        let (lo, hi) = (self.minus(), self.plus());
        (lo == hi).then_some(lo)
    }

    /// Analytic constant for all three log-Hölder conditions, if one exists.
    pub fn log_holder_constant(&self) -> Option<f64> {
        if self.constant_value().is_some() {
            return Some(0.0);
        }
        match self {
            Exponent::Constant { .. } => Some(0.0),
            Exponent::LogFamily {
                at_origin,
                at_infinity,
            } => Some((at_origin - at_infinity).abs()),
            Exponent::Step { .. } | Exponent::Piecewise { .. } => None,
            Exponent::Conjugate { of } => {
                let m = of.minus();
                if m <= 1.0 {
                    return None;
                }
                of.log_holder_constant()
                    .map(|c| c / ((m - 1.0) * (m - 1.0)))
            }
            // |∂p/∂a| = p²/a² ≤ 1
            Exponent::Harmonic { a, b } | Exponent::Sum { a, b } => {
                Some(a.log_holder_constant()? + b.log_holder_constant()?)
            }
        }
    }

    /// Class P: `1 < p⁻ ≤ p⁺ < ∞`.
    pub fn require_class_p(&self) -> Result<()> {
        let m = self.minus();
        if !(m > 1.0) || !self.plus().is_finite() {
            return Err(Error::NotInClassP(m));
        }
        Ok(())
    }

    /// Parse `2`, `const:2`, `log:p0,pinf`, `step:inner,outer,radius`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let nums = |body: &str| -> Result<Vec<f64>> {
            body.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad exponent {text:?}")))
                })
                .collect()
        };
        let (kind, body) = t.split_once(':').unwrap_or(("const", t));
        let v = nums(body)?;
        match (kind.trim(), v.as_slice()) {
            ("const", [c]) => Ok(Exponent::constant(*c)),
            ("log", [p0, pinf]) => Ok(Exponent::log_family(*p0, *pinf)),
            ("step", [i, o, r]) => Ok(Exponent::Step {
                inner: *i,
                outer: *o,
                radius: *r,
            }),
            _ => Err(Error::Parse(format!("bad exponent {text:?}"))),
        }
    }
}

/// Pointwise conjugate `p' = p/(p-1)`; requires class P.
pub fn conjugate(p: &Exponent) -> Result<Exponent> {
    p.require_class_p()?;
    Ok(match p {
        Exponent::Constant { value } => Exponent::constant(conj(*value)),
        Exponent::Conjugate { of } => (**of).clone(),
        other => Exponent::Conjugate {
            of: Box::new(other.clone()),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_family_endpoints() {
        let p = Exponent::log_family(2.0, 3.0);
        assert_eq!(p.at_origin(), 2.0);
        assert_eq!(p.at_infinity(), Some(3.0));
        assert!((p.eval(&[1e300, 0.0]) - 3.0).abs() < 0.01);
        assert_eq!((p.minus(), p.plus()), (2.0, 3.0));
        assert_eq!(p.log_holder_constant(), Some(1.0));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(
            conjugate(&Exponent::constant(2.0)).unwrap(),
            Exponent::constant(2.0)
        );
        let c = conjugate(&Exponent::constant(4.0)).unwrap();
        assert!((c.eval(&[0.3, 0.0]) - 4.0 / 3.0).abs() < 1e-15);
        let q = conjugate(&Exponent::log_family(2.0, 3.0)).unwrap();
        assert!((q.at_origin() - 2.0).abs() < 1e-15);
        assert!((q.at_infinity().unwrap() - 1.5).abs() < 1e-15);
        assert!(matches!(
            conjugate(&Exponent::constant(1.0)),
            Err(Error::NotInClassP(_))
        ));
        let back = conjugate(&q).unwrap();
        for x in [[0.0, 0.0], [0.7, -2.0], [40.0, 3.0]] {
            assert!((back.eval(&x) - Exponent::log_family(2.0, 3.0).eval(&x)).abs() < 1e-14);
        }
    }

    #[test]
    fn piecewise_lookup() {
        let p = Exponent::piecewise(vec![1.0], vec![2.0, 4.0]).unwrap();
        assert_eq!(p.eval(&[0.5, 0.0]), 2.0);
        assert_eq!(p.eval(&[1.0, 0.0]), 4.0);
        assert_eq!(p.minus(), 2.0);
        assert!(Exponent::piecewise(vec![1.0], vec![2.0]).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(Exponent::parse("2").unwrap(), Exponent::constant(2.0));
        assert_eq!(
            Exponent::parse("log:2,3").unwrap(),
            Exponent::log_family(2.0, 3.0)
        );
        assert!(Exponent::parse("log:2").is_err());
        assert!(Exponent::parse("weird:1").is_err());
    }

    #[test]
    fn harmonic_bounds() {
        let p = Exponent::Harmonic {
            a: Box::new(Exponent::constant(3.0)),
            b: Box::new(Exponent::constant(6.0)),
        };
        assert!((p.eval(&[0.0, 0.0]) - 2.0).abs() < 1e-15);
        assert!((p.minus() - 2.0).abs() < 1e-15);
    }
}
