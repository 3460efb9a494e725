//! Exact arithmetic in the commutative ring Q(√2)[L], where L is a formal
//! symbol for log 2 and √2 satisfies (√2)² = 2.
//!
//! Every symbolic coefficient of the Γ computation lives in this ring. The
//! final cancellation argument rests on exact equality of big-rational
//! coefficients, so no floating point enters here; `to_f64` exists only to
//! hand values to the quadrature oracle and to reports.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Arbitrary-precision rational. `BigRational` keeps the canonical form we
/// need: positive denominator, gcd-reduced, zero as 0/1.
pub type Rational = BigRational;

/// Shorthand for `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for an integer [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    BigRational::from(BigInt::from(n))
}

/// An element a + b·√2 of Q(√2).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QSqrt2 {
    pub a: Rational,
    pub b: Rational,
}

impl QSqrt2 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn zero() -> Self {
        QSqrt2::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        QSqrt2::new(Rational::one(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        QSqrt2::new(&self.a + &other.a, &self.b + &other.b)
    }

    pub fn neg(&self) -> Self {
        QSqrt2::new(-self.a.clone(), -self.b.clone())
    }

    /// (a + b√2)(c + d√2) = (ac + 2bd) + (ad + bc)√2.
    pub fn mul(&self, other: &Self) -> Self {
        let two = rat_int(2);
        QSqrt2::new(
            &self.a * &other.a + two * &self.b * &other.b,
            &self.a * &other.b + &self.b * &other.a,
        )
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QSqrt2::new(&self.a * r, &self.b * r)
    }
}

/// One term of the serialized form of a [`FieldElem`]: the Q(√2) coefficient
/// of L^`ldeg`, with both rational components rendered as exact strings.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldElemTerm {
    #[serde(rename = "Ldeg")]
    pub ldeg: u32,
    pub a: String,
    pub b: String,
}

/// An element of Q(√2)[L]: a polynomial in the formal symbol L = log 2 with
/// Q(√2) coefficients. Zero coefficients are never stored, so structural
/// equality is equality in the ring.
///
/// The Γ computation itself only ever produces L-degree ≤ 1; higher degrees
/// are representable so that the pipeline can *detect* them as anomalies
/// instead of silently mangling a transcription error.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FieldElem {
    coeffs: BTreeMap<u32, QSqrt2>,
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem::default()
    }

    pub fn one() -> Self {
        FieldElem::from_qsqrt2(QSqrt2::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        FieldElem::from_qsqrt2(QSqrt2::new(r, Rational::zero()))
    }

    pub fn from_int(n: i64) -> Self {
        FieldElem::from_rational(rat_int(n))
    }

    /// n/d as a field element.
    pub fn from_ratio(n: i64, d: i64) -> Self {
        FieldElem::from_rational(rat(n, d))
    }

    pub fn from_qsqrt2(c: QSqrt2) -> Self {
        FieldElem::term(0, c)
    }

    /// c·L^deg.
    pub fn term(deg: u32, c: QSqrt2) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(deg, c);
        }
        FieldElem { coeffs }
    }

    /// √2.
    pub fn sqrt2() -> Self {
        FieldElem::from_qsqrt2(QSqrt2::new(Rational::zero(), Rational::one()))
    }

    /// (n/d)·√2.
    pub fn sqrt2_times(n: i64, d: i64) -> Self {
        FieldElem::from_qsqrt2(QSqrt2::new(Rational::zero(), rat(n, d)))
    }

    /// 1/√2 = (1/2)√2.
    pub fn inv_sqrt2() -> Self {
        FieldElem::sqrt2_times(1, 2)
    }

    /// The formal symbol L = log 2.
    pub fn log2() -> Self {
        FieldElem::term(1, QSqrt2::one())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest power of L present, or `None` for zero.
    pub fn max_log_degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, deg: u32) -> QSqrt2 {
        self.coeffs.get(&deg).cloned().unwrap_or_else(QSqrt2::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &QSqrt2)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (deg, c) in &other.coeffs {
            let entry = coeffs.entry(*deg).or_insert_with(QSqrt2::zero);
            *entry = entry.add(c);
            if entry.is_zero() {
                coeffs.remove(deg);
            }
        }
        FieldElem { coeffs }
    }

    pub fn neg(&self) -> Self {
        FieldElem {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact ring product; L-degrees add.
    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs: BTreeMap<u32, QSqrt2> = BTreeMap::new();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &other.coeffs {
                let deg = d1 + d2;
                let prod = c1.mul(c2);
                let entry = coeffs.entry(deg).or_insert_with(QSqrt2::zero);
                *entry = entry.add(&prod);
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        FieldElem { coeffs }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return FieldElem::zero();
        }
        FieldElem {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, c.scale(r))).collect(),
        }
    }

    /// Exact evaluation as a rational number, substituting rational
    /// approximations of √2 and log 2 accurate to better than 2⁻²⁵⁰.
    pub fn eval_rational(&self) -> Rational {
        let s2 = sqrt2_rational();
        let l2 = ln2_rational();
        let Some(max) = self.max_log_degree() else {
            return Rational::zero();
        };
        // Horner in L over the dense degree range, exact throughout.
        let mut acc = Rational::zero();
        for d in (0..=max).rev() {
            let c = self.coeff(d);
            acc = acc * l2 + &c.a + &c.b * s2;
        }
        acc
    }

    /// Numerical value at binary64. The evaluation happens in exact rational
    /// arithmetic against ~250-bit approximants of √2 and log 2, with a single
    /// final rounding, so the result is within 1 ulp of the true value for
    /// any element whose magnitude is not absurdly small relative to its
    /// coefficients.
    pub fn to_f64(&self) -> f64 {
        self.eval_rational().to_f64().unwrap_or(f64::NAN)
    }

    /// Serialized term list with exact fraction strings.
    pub fn to_terms(&self) -> Vec<FieldElemTerm> {
        self.coeffs
            .iter()
            .map(|(d, c)| FieldElemTerm {
                ldeg: *d,
                a: c.a.to_string(),
                b: c.b.to_string(),
            })
            .collect()
    }
}

impl fmt::Display for FieldElem {
    /// Canonical string form "q0 + q1*sqrt2 + q2*log2 + q3*sqrt2*log2 [+ ...]"
    /// with exact fractions, zero terms omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in &self.coeffs {
            for (r, sym) in [(&c.a, None), (&c.b, Some("sqrt2"))] {
                if r.is_zero() {
                    continue;
                }
                let neg = r.is_negative();
                let mag = r.abs();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if neg {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                let mut factors: Vec<String> = Vec::new();
                if !mag.is_one() || (sym.is_none() && *deg == 0) {
                    factors.push(mag.to_string());
                }
                if let Some(s) = sym {
                    factors.push(s.to_string());
                }
                match deg {
                    0 => {}
                    1 => factors.push("log2".to_string()),
                    d => factors.push(format!("log2^{d}")),
                }
                if factors.is_empty() {
                    factors.push("1".to_string());
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl std::ops::Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::add(self, rhs)
    }
}

impl std::ops::Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::sub(self, rhs)
    }
}

impl std::ops::Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        FieldElem::mul(self, rhs)
    }
}

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::neg(self)
    }
}

/// Rational approximation of √2 with error < 2⁻²⁵⁰, by Newton iteration.
fn sqrt2_rational() -> &'static Rational {
    static CELL: OnceLock<Rational> = OnceLock::new();
    CELL.get_or_init(|| {
        let two = rat_int(2);
        let half = rat(1, 2);
        let mut x = rat(3, 2);
        // Quadratic convergence: 8 steps from 3/2 give ~2^-300 accuracy.
        for _ in 0..8 {
            x = (&x + &two / &x) * &half;
        }
        x
    })
}

/// Rational approximation of ln 2 with error < 2⁻²⁵⁰, from the series
/// ln 2 = Σ_{k≥1} 1/(k·2^k).
fn ln2_rational() -> &'static Rational {
    static CELL: OnceLock<Rational> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut sum = Rational::zero();
        let mut pow = BigInt::from(1);
        for k in 1..=260u32 {
            pow *= 2;
            sum += BigRational::new(BigInt::one(), BigInt::from(k) * &pow);
        }
        sum
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half_log2_plus(n: i64, d: i64) -> FieldElem {
        // (1/2)L + n/d
        FieldElem::term(1, QSqrt2::new(rat(1, 2), Rational::zero()))
            .add(&FieldElem::from_ratio(n, d))
    }

    #[test]
    fn additive_inverse_of_sqrt2() {
        let s = FieldElem::sqrt2();
        assert!(s.add(&s.neg()).is_zero());
    }

    #[test]
    fn add_collects_log_terms() {
        // (1/2)L + 2 plus 9/4 equals (1/2)L + 17/4
        let x = half_log2_plus(2, 1);
        let y = FieldElem::from_ratio(9, 4);
        assert_eq!(x.add(&y), half_log2_plus(17, 4));
    }

    #[test]
    fn add_three_log_bearing_terms() {
        // (-9L - 97/2) + (-4L - 6) + (-33/2) = -13L - 71
        let t = |l: i64, n: i64, d: i64| {
            FieldElem::term(1, QSqrt2::new(rat_int(l), Rational::zero()))
                .add(&FieldElem::from_ratio(n, d))
        };
        let sum = t(-9, -97, 2).add(&t(-4, -6, 1)).add(&FieldElem::from_ratio(-33, 2));
        assert_eq!(sum, t(-13, -71, 1));
        assert_eq!(sum.to_string(), "-71 - 13*log2");
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = FieldElem::sqrt2();
        assert_eq!(s.mul(&s), FieldElem::from_int(2));
    }

    #[test]
    fn scalar_multiple_of_log_bearing_element() {
        // (1/(4√2))(2L+1) · (−12) = −3√2·L − (3/2)√2
        let two_l_plus_1 = FieldElem::log2().scale(&rat_int(2)).add(&FieldElem::one());
        let x = FieldElem::sqrt2_times(1, 8).mul(&two_l_plus_1);
        let y = x.mul(&FieldElem::from_int(-12));
        let expected = FieldElem::term(1, QSqrt2::new(Rational::zero(), rat_int(-3)))
            .add(&FieldElem::sqrt2_times(-3, 2));
        assert_eq!(y, expected);
    }

    #[test]
    fn log_degrees_add_under_mul() {
        // (2L+1)² = 4L² + 4L + 1
        let two_l_plus_1 = FieldElem::log2().scale(&rat_int(2)).add(&FieldElem::one());
        let sq = two_l_plus_1.mul(&two_l_plus_1);
        assert_eq!(sq.max_log_degree(), Some(2));
        assert_eq!(sq.coeff(2), QSqrt2::new(rat_int(4), Rational::zero()));
        assert_eq!(sq.coeff(1), QSqrt2::new(rat_int(4), Rational::zero()));
        assert_eq!(sq.coeff(0), QSqrt2::one());
    }

    #[test]
    fn to_f64_of_constants() {
        assert_eq!(FieldElem::zero().to_f64(), 0.0);
        assert_eq!(FieldElem::sqrt2().to_f64(), std::f64::consts::SQRT_2);
        assert_eq!(FieldElem::inv_sqrt2().to_f64(), std::f64::consts::FRAC_1_SQRT_2);
        assert_eq!(FieldElem::log2().to_f64(), std::f64::consts::LN_2);
    }

    #[test]
    fn constructors_and_predicates() {
        assert!(FieldElem::from_int(0).is_zero());
        let xy = FieldElem::sqrt2().mul(&FieldElem::log2());
        let yx = FieldElem::log2().mul(&FieldElem::sqrt2());
        assert_eq!(xy, yx);
        let e = FieldElem::term(1, QSqrt2::new(rat_int(-13), Rational::zero()))
            .add(&FieldElem::from_int(-71));
        let n = e.neg();
        assert_eq!(
            n,
            FieldElem::term(1, QSqrt2::new(rat_int(13), Rational::zero()))
                .add(&FieldElem::from_int(71))
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(FieldElem::zero().to_string(), "0");
        assert_eq!(FieldElem::sqrt2().to_string(), "sqrt2");
        assert_eq!(FieldElem::sqrt2().neg().to_string(), "-sqrt2");
        assert_eq!(FieldElem::from_ratio(13, 18).to_string(), "13/18");
        let mixed = FieldElem::from_ratio(17, 4)
            .add(&FieldElem::sqrt2_times(1, 2))
            .add(&FieldElem::term(1, QSqrt2::new(rat(-1, 3), rat_int(2))));
        assert_eq!(mixed.to_string(), "17/4 + 1/2*sqrt2 - 1/3*log2 + 2*sqrt2*log2");
    }

    #[test]
    fn json_terms_form() {
        let e = FieldElem::term(1, QSqrt2::new(rat_int(-13), Rational::zero()))
            .add(&FieldElem::from_int(-71));
        let terms = e.to_terms();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].ldeg, 0);
        assert_eq!(terms[0].a, "-71");
        assert_eq!(terms[0].b, "0");
        assert_eq!(terms[1].ldeg, 1);
        assert_eq!(terms[1].a, "-13");
    }

    #[test]
    fn rational_approximants_are_tight() {
        let s2 = sqrt2_rational().to_f64().unwrap();
        assert_eq!(s2, std::f64::consts::SQRT_2);
        let l2 = ln2_rational().to_f64().unwrap();
        assert_eq!(l2, std::f64::consts::LN_2);
    }
}
