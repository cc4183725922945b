use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exactmath::{EpsPolynomial, Rational};

use super::closed_form::{epf_lower, epf_upper};
use super::params::EnsembleParams;

/// Significant digits used for grid points and CSV values.
pub const OUTPUT_DIGITS: usize = 12;

/// Default grid: 60 log-spaced points over `[1e-6, 0.5]`.
pub const DEFAULT_GRID: GridSpec = GridSpec {
    min: 1e-6,
    max: 0.5,
    points: 60,
    log: true,
};

/// `min:max:points:log` grid description.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub log: bool,
}

impl GridSpec {
    /// Grid points as exact decimals rounded to [`OUTPUT_DIGITS`] significant
    /// digits, so the printed value is the value evaluated.
    pub fn points(&self, allow_boundary: bool) -> Result<Vec<Rational>> {
        if self.points == 0 {
            return Err(Error::Domain("grid needs at least one point".into()));
        }
        let (lo_ok, hi_ok) = if allow_boundary {
            (self.min >= 0.0, self.max <= 1.0)
        } else {
            (self.min > 0.0, self.max < 1.0)
        };
        if !(lo_ok && hi_ok && self.min <= self.max) {
            return Err(Error::Domain(format!(
                "grid [{}, {}] must lie inside {} with min ≤ max",
                self.min,
                self.max,
                if allow_boundary { "[0, 1]" } else { "(0, 1)" }
            )));
        }
        if self.log && self.min == 0.0 {
            return Err(Error::Domain("a log-spaced grid cannot start at 0".into()));
        }
        let n = self.points;
        (0..n)
            .map(|i| {
                let t = if n == 1 { 0.0 } else { i as f64 / (n - 1) as f64 };
                let x = match (i, self.log) {
                    (0, _) => self.min,
                    (i, _) if i == n - 1 => self.max,
                    (_, true) => (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp(),
                    (_, false) => self.min + t * (self.max - self.min),
                };
                round_f64(x)
            })
            .collect()
    }
}

/// `x` rounded to [`OUTPUT_DIGITS`] significant digits as an exact decimal.
pub fn round_f64(x: f64) -> Result<Rational> {
    Rational::from_decimal_str(&format!("{:.*e}", OUTPUT_DIGITS - 1, x))
}

/// Decimal rendering with `digits` significant digits, rounded half away
/// from zero from the exact value. Fixed notation for exponents in
/// `[-5, digits)`, scientific otherwise; trailing zeros are dropped.
pub fn format_significant(x: &Rational, digits: usize) -> String {
    assert!(digits >= 1);
    if x.is_zero() {
        return "0".into();
    }
    let negative = x.is_negative();
    let num = x.numerator().abs();
    let den = x.denominator().clone();
    let ten = BigInt::from(10);
    let pow10 = |e: i64| -> (BigInt, BigInt) {
        if e >= 0 {
            (num_traits::pow(ten.clone(), e as usize), BigInt::one())
        } else {
            (BigInt::one(), num_traits::pow(ten.clone(), (-e) as usize))
        }
    };
    // 10^e ≤ num/den < 10^(e+1)
    let mut e = num.to_string().len() as i64 - den.to_string().len() as i64;
    let cmp_pow = |e: i64| {
        let (pn, pd) = pow10(e);
        (&num * &pd).cmp(&(&den * &pn))
    };
    while cmp_pow(e) == Ordering::Less {
        e -= 1;
    }
    while cmp_pow(e + 1) != Ordering::Less {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let (sn, sd) = pow10(shift);
    let (q, r) = (&num * &sn).div_rem(&(&den * &sd));
    let mut scaled = if r * 2 >= &den * &sd { q + 1 } else { q };
    if scaled == num_traits::pow(ten.clone(), digits) {
        scaled /= &ten;
        e += 1;
    }
    let s = scaled.to_string();
    let trim = |frac: &str| frac.trim_end_matches('0').to_string();
    let body = if (-5..digits as i64).contains(&e) {
        if e >= 0 {
            let (int_part, frac) = s.split_at(e as usize + 1);
            let frac = trim(frac);
            if frac.is_empty() {
                int_part.to_string()
            } else {
                format!("{int_part}.{frac}")
            }
        } else {
            let frac = trim(&format!("{}{}", "0".repeat((-e - 1) as usize), s));
            format!("0.{frac}")
        }
    } else {
        let (lead, frac) = s.split_at(1);
        let frac = trim(frac);
        if frac.is_empty() {
            format!("{lead}e{e}")
        } else {
            format!("{lead}.{frac}e{e}")
        }
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub eps: Rational,
    pub lower: Rational,
    pub exact: Option<Rational>,
    pub upper: Rational,
}

/// Lower bound, optional exact value, and upper bound on `E[P_f]` per ε.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCurve {
    pub k: usize,
    pub n: usize,
    /// How the exact column was obtained, when present.
    pub exact_method: Option<String>,
    pub rows: Vec<BoundRow>,
}

impl BoundCurve {
    /// Grid points violating `lower ≤ exact ≤ upper` (or `lower ≤ upper`).
    pub fn sandwich_violations(&self) -> Vec<&BoundRow> {
        self.rows
            .iter()
            .filter(|r| match &r.exact {
                Some(x) => !(r.lower <= *x && *x <= r.upper),
                None => r.lower > r.upper,
            })
            .collect()
    }
}

/// Evaluates the bound polynomials (and `exact`, if given) on `grid`.
/// With `clamp_upper`, upper values above 1 are reported as 1.
pub fn bound_curve(
    p: EnsembleParams,
    grid: &[Rational],
    exact: Option<(&EpsPolynomial, &str)>,
    clamp_upper: bool,
) -> BoundCurve {
    let lower = epf_lower(p);
    let upper = epf_upper(p);
    let rows = grid
        .iter()
        .map(|eps| {
            let mut up = upper.eval(eps);
            if clamp_upper {
                up = up.min(Rational::one());
            }
            BoundRow {
                eps: eps.clone(),
                lower: lower.eval(eps),
                exact: exact.map(|(poly, _)| poly.eval(eps)),
                upper: up,
            }
        })
        .collect();
    BoundCurve {
        k: p.k(),
        n: p.n(),
        exact_method: exact.map(|(_, m)| m.to_string()),
        rows,
    }
}
