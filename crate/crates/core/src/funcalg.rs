//! Formal algebra of the integrand functions: products of the generators
//! sech, tanh, x, log∘sech, T, T′ and a single cos or sin factor, with
//! Q(√2)[log 2] coefficients.
//!
//! The algebra knows one rewrite, tanh² = 1 − sech², and one classification:
//! every normalized even monomial that occurs in the Γ expansion is the
//! integrand of exactly one of the ten basis-integral families. Anything
//! outside the ten families is reported as unclassifiable rather than
//! silently mishandled, because such a monomial would mean the expansion
//! left the closed function class.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::basisreduce::{bi, BasisCombo, BasisIntegral};
use crate::exactfield::{rat, FieldElem, QSqrt2, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Trig {
    #[default]
    None,
    Cos,
    Sin,
}

/// Parity of a monomial as a function on ℝ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A formal product of generator powers and at most one trig factor.
///
/// `t` and `tprime` are the powers of the convolution kernel T and of T′.
/// Exponent caps (x, log∘sech, T ≤ 1, tanh ≤ 1) are not enforced at
/// construction; normalization removes tanh powers ≥ 2 and classification
/// rejects whatever falls outside the ten families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct Monomial {
    pub sech: u32,
    pub logsech: u32,
    pub tanh: u32,
    pub x: u32,
    pub t: u32,
    pub tprime: u32,
    pub trig: Trig,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn sech_pow(mut self, k: u32) -> Self {
        self.sech = k;
        self
    }

    pub fn tanh_pow(mut self, k: u32) -> Self {
        self.tanh = k;
        self
    }

    pub fn x_pow(mut self, k: u32) -> Self {
        self.x = k;
        self
    }

    pub fn logsech_pow(mut self, k: u32) -> Self {
        self.logsech = k;
        self
    }

    pub fn t_pow(mut self, k: u32) -> Self {
        self.t = k;
        self
    }

    pub fn tprime_pow(mut self, k: u32) -> Self {
        self.tprime = k;
        self
    }

    pub fn with_trig(mut self, trig: Trig) -> Self {
        self.trig = trig;
        self
    }

    pub fn cos(self) -> Self {
        self.with_trig(Trig::Cos)
    }

    pub fn sin(self) -> Self {
        self.with_trig(Trig::Sin)
    }
}

/// sech, log∘sech, T and cos are even; tanh, x, T′ and sin are odd.
pub fn parity(m: &Monomial) -> Parity {
    let odd = m.tanh + m.x + m.tprime + u32::from(m.trig == Trig::Sin);
    if odd.is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let pow = |name: &str, p: u32| -> Option<String> {
            match p {
                0 => None,
                1 => Some(name.to_string()),
                _ => Some(format!("{name}^{p}")),
            }
        };
        for part in [
            pow("x", self.x),
            pow("sech", self.sech),
            pow("logsech", self.logsech),
            pow("tanh", self.tanh),
            pow("T", self.t),
            pow("T'", self.tprime),
        ]
        .into_iter()
        .flatten()
        {
            parts.push(part);
        }
        match self.trig {
            Trig::None => {}
            Trig::Cos => parts.push("cos".to_string()),
            Trig::Sin => parts.push("sin".to_string()),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("both factors carry a trig part")]
    TrigClash,
    #[error("monomial outside the ten basis families: {0}")]
    Unclassifiable(String),
}

/// A finite linear combination of monomials. Zero coefficients are never
/// stored; [`normalize`] is idempotent on any value produced here.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FuncExpr {
    terms: BTreeMap<Monomial, FieldElem>,
}

impl FuncExpr {
    pub fn zero() -> Self {
        FuncExpr::default()
    }

    pub fn constant(c: FieldElem) -> Self {
        FuncExpr::from_monomial(Monomial::one(), c)
    }

    pub fn from_monomial(m: Monomial, c: FieldElem) -> Self {
        let mut e = FuncExpr::zero();
        e.insert(m, c);
        e
    }

    pub fn insert(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(FieldElem::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(FieldElem::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        FuncExpr {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, by: &FieldElem) -> Self {
        let mut out = FuncExpr::zero();
        for (m, c) in &self.terms {
            out.insert(*m, c.mul(by));
        }
        out
    }
}

/// Eliminates all tanh powers ≥ 2 via tanh² = 1 − sech² and merges
/// coefficients. Idempotent.
pub fn normalize(e: &FuncExpr) -> FuncExpr {
    let mut out = FuncExpr::zero();
    let mut work: Vec<(Monomial, FieldElem)> =
        e.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
    while let Some((m, c)) = work.pop() {
        if m.tanh >= 2 {
            let lowered = Monomial { tanh: m.tanh - 2, ..m };
            let raised = Monomial { sech: m.sech + 2, ..lowered };
            work.push((lowered, c.clone()));
            work.push((raised, c.neg()));
        } else {
            out.insert(m, c);
        }
    }
    out
}

/// Distributed, normalized product. At most one factor may carry a trig part
/// in each monomial pair; otherwise the product leaves the algebra.
pub fn mul(e1: &FuncExpr, e2: &FuncExpr) -> Result<FuncExpr, AlgebraError> {
    let mut out = FuncExpr::zero();
    for (m1, c1) in &e1.terms {
        for (m2, c2) in &e2.terms {
            let trig = match (m1.trig, m2.trig) {
                (Trig::None, t) | (t, Trig::None) => t,
                _ => return Err(AlgebraError::TrigClash),
            };
            let m = Monomial {
                sech: m1.sech + m2.sech,
                logsech: m1.logsech + m2.logsech,
                tanh: m1.tanh + m2.tanh,
                x: m1.x + m2.x,
                t: m1.t + m2.t,
                tprime: m1.tprime + m2.tprime,
                trig,
            };
            out.insert(m, c1.mul(c2));
        }
    }
    Ok(normalize(&out))
}

/// Maps a normalized monomial to the unique basis integral whose defining
/// integrand it equals.
pub fn classify(m: &Monomial) -> Result<BasisIntegral, AlgebraError> {
    let k = m.sech;
    if k >= 1 {
        let fam = match (m.x, m.logsech, m.t, m.tprime, m.tanh, m.trig) {
            (0, 0, 0, 0, 0, Trig::Cos) => Some('p'),
            (0, 1, 0, 0, 0, Trig::Cos) => Some('q'),
            (0, 0, 1, 0, 0, Trig::Cos) => Some('r'),
            (0, 0, 1, 0, 1, Trig::Sin) => Some('s'),
            (1, 0, 0, 0, 1, Trig::Cos) => Some('a'),
            (0, 0, 0, 0, 1, Trig::Sin) => Some('b'),
            (0, 1, 0, 0, 1, Trig::Sin) => Some('c'),
            (1, 0, 0, 0, 0, Trig::Sin) => Some('d'),
            (0, 0, 0, 1, 1, Trig::Cos) => Some('e'),
            (0, 0, 0, 1, 0, Trig::Sin) => Some('f'),
            _ => None,
        };
        if let Some(f) = fam {
            return Ok(bi(f, k));
        }
    }
    Err(AlgebraError::Unclassifiable(m.to_string()))
}

/// ⟨f, g⟩ = ∫ f·g as a basis combo, together with the parity-odd monomials
/// that were dropped because they integrate to zero.
pub fn inner_product_traced(
    f: &FuncExpr,
    g: &FuncExpr,
) -> Result<(BasisCombo, Vec<Monomial>), AlgebraError> {
    let prod = mul(f, g)?;
    let mut combo = BasisCombo::new();
    let mut dropped = Vec::new();
    for (m, c) in prod.terms() {
        match parity(m) {
            Parity::Odd => dropped.push(*m),
            Parity::Even => combo.insert(classify(m)?, c.clone()),
        }
    }
    Ok((combo, dropped))
}

/// ⟨f, g⟩ = ∫ f·g as a basis combo.
pub fn inner_product(f: &FuncExpr, g: &FuncExpr) -> Result<BasisCombo, AlgebraError> {
    inner_product_traced(f, g).map(|(c, _)| c)
}

/// The defining integrand of a basis integral, e.g. r₃ ↦ sech³·T·cos.
/// Inverse of [`classify`] on its image.
pub fn defining_monomial(b: BasisIntegral) -> Monomial {
    use crate::basisreduce::Family;
    let base = Monomial::one().sech_pow(b.k);
    match b.family {
        Family::P => base.cos(),
        Family::Q => base.logsech_pow(1).cos(),
        Family::R => base.t_pow(1).cos(),
        Family::S => base.t_pow(1).tanh_pow(1).sin(),
        Family::A => base.x_pow(1).tanh_pow(1).cos(),
        Family::B => base.tanh_pow(1).sin(),
        Family::C => base.logsech_pow(1).tanh_pow(1).sin(),
        Family::D => base.x_pow(1).sin(),
        Family::E => base.tanh_pow(1).tprime_pow(1).cos(),
        Family::F => base.tprime_pow(1).sin(),
    }
}

/// Splits off the bare-sech component: returns (expr − λ·sech, λ).
///
/// The pairing ⟨sech, h₃,₁⟩ expands to p₃ − b₁, a combination that reduces
/// to zero; the Γ expansion discards such multiples before pairing with
/// h₃,₁, and the orthogonality is verified separately.
pub fn strip_sech_multiple(e: &FuncExpr) -> (FuncExpr, FieldElem) {
    let sech = Monomial::one().sech_pow(1);
    let lambda = e.coeff(&sech);
    if lambda.is_zero() {
        return (e.clone(), lambda);
    }
    let mut stripped = e.clone();
    stripped.insert(sech, lambda.neg());
    (stripped, lambda)
}

/// Fixed expressions entering the Γ computation, written over the generator
/// set with φ₃ = √2 sech, φ₃′/φ₃ = −tanh already substituted.
pub mod exprs {
    use super::*;

    fn fe_sqrt2(n: i64, d: i64) -> FieldElem {
        FieldElem::sqrt2_times(n, d)
    }

    /// φ₃ = √2 sech.
    pub fn phi3() -> FuncExpr {
        FuncExpr::from_monomial(Monomial::one().sech_pow(1), FieldElem::sqrt2())
    }

    /// ξ₃,₁ = 1 − φ₃² = 1 − 2 sech².
    pub fn xi3_1() -> FuncExpr {
        let mut e = FuncExpr::constant(FieldElem::one());
        e.insert(Monomial::one().sech_pow(2), FieldElem::from_int(-2));
        e
    }

    /// ξ₃,₂ with the imaginary unit stripped: the real surrogate 1.
    pub fn xi3_2() -> FuncExpr {
        FuncExpr::constant(FieldElem::one())
    }

    /// h₃,₁ = (φ₃²/2)·cos + (φ₃′/φ₃)·sin = sech²·cos − tanh·sin.
    pub fn h3_1() -> FuncExpr {
        let mut e = FuncExpr::from_monomial(
            Monomial::one().sech_pow(2).cos(),
            FieldElem::one(),
        );
        e.insert(Monomial::one().tanh_pow(1).sin(), FieldElem::from_int(-1));
        e
    }

    /// h₃,₂ = (φ₃′/φ₃)·sin = −tanh·sin.
    pub fn h3_2() -> FuncExpr {
        FuncExpr::from_monomial(Monomial::one().tanh_pow(1).sin(), FieldElem::from_int(-1))
    }

    /// The cos half of h₃,₁: sech²·cos.
    pub fn h3_1_cos_part() -> FuncExpr {
        FuncExpr::from_monomial(Monomial::one().sech_pow(2).cos(), FieldElem::one())
    }

    /// The function tanh·sin (h₃,₁ = cos part − this).
    pub fn tanh_sin() -> FuncExpr {
        FuncExpr::from_monomial(Monomial::one().tanh_pow(1).sin(), FieldElem::one())
    }

    /// R₁ = −xφ₃φ₃′ − (1/(4√2))(3−φ₃²)T − (φ₃′/(2√2 φ₃))T′
    ///    = 2x·tanh·sech² − (1/(4√2))(3−2sech²)·T + (1/(2√2))·tanh·T′.
    pub fn r_1() -> FuncExpr {
        let mut e = FuncExpr::from_monomial(
            Monomial::one().x_pow(1).tanh_pow(1).sech_pow(2),
            FieldElem::from_int(2),
        );
        e.insert(Monomial::one().t_pow(1), fe_sqrt2(-3, 8));
        e.insert(Monomial::one().sech_pow(2).t_pow(1), fe_sqrt2(1, 4));
        e.insert(Monomial::one().tanh_pow(1).tprime_pow(1), fe_sqrt2(1, 4));
        e
    }

    /// R₂ = φ₃²/2 + (3/(4√2))T + (φ₃′/(2√2 φ₃))T′
    ///    = sech² + (3/(4√2))·T − (1/(2√2))·tanh·T′.
    pub fn r_2() -> FuncExpr {
        let mut e = FuncExpr::from_monomial(Monomial::one().sech_pow(2), FieldElem::one());
        e.insert(Monomial::one().t_pow(1), fe_sqrt2(3, 8));
        e.insert(Monomial::one().tanh_pow(1).tprime_pow(1), fe_sqrt2(-1, 4));
        e
    }

    /// F = ∂_p|₃ φ_p^{p−2}
    ///   = (1/(4√2))(2 log2 + 1)·sech + (1/√2)·sech·log∘sech − (1/√2)·x·sech·tanh.
    pub fn f_deriv() -> FuncExpr {
        let sech_coeff = FieldElem::term(1, QSqrt2::new(Rational::from_integer(0.into()), rat(1, 4)))
            .add(&fe_sqrt2(1, 8));
        let mut e = FuncExpr::from_monomial(Monomial::one().sech_pow(1), sech_coeff);
        e.insert(Monomial::one().sech_pow(1).logsech_pow(1), fe_sqrt2(1, 2));
        e.insert(
            Monomial::one().sech_pow(1).x_pow(1).tanh_pow(1),
            fe_sqrt2(-1, 2),
        );
        e
    }

    /// E = ∂_p|₃ φ_p = F − φ₃ log φ₃
    ///   = (1/(4√2))(1 − 2 log2)·sech − (1/√2)·sech·log∘sech − (1/√2)·x·sech·tanh.
    pub fn e_deriv() -> FuncExpr {
        let sech_coeff = FieldElem::term(1, QSqrt2::new(Rational::from_integer(0.into()), rat(-1, 4)))
            .add(&fe_sqrt2(1, 8));
        let mut e = FuncExpr::from_monomial(Monomial::one().sech_pow(1), sech_coeff);
        e.insert(Monomial::one().sech_pow(1).logsech_pow(1), fe_sqrt2(-1, 2));
        e.insert(
            Monomial::one().sech_pow(1).x_pow(1).tanh_pow(1),
            fe_sqrt2(-1, 2),
        );
        e
    }

    /// φ₃·log φ₃ = √2 sech·((1/2)log2 + log∘sech).
    pub fn phi3_log_phi3() -> FuncExpr {
        let mut e = FuncExpr::from_monomial(
            Monomial::one().sech_pow(1),
            FieldElem::term(1, QSqrt2::new(Rational::from_integer(0.into()), rat(1, 2))),
        );
        e.insert(Monomial::one().sech_pow(1).logsech_pow(1), FieldElem::sqrt2());
        e
    }

    /// The γ₃ weight 6x·tanh·sech² − (7/2)·sech².
    pub fn gamma3_weight() -> FuncExpr {
        let mut e = FuncExpr::from_monomial(
            Monomial::one().sech_pow(2).x_pow(1).tanh_pow(1),
            FieldElem::from_int(6),
        );
        e.insert(Monomial::one().sech_pow(2), FieldElem::from_ratio(-7, 2));
        e
    }

    /// Δ₁ = F(3(1−φ₃²)² − 1) + φ₃(1−φ₃²)² + 6φ₃(1−φ₃²)R₁ − 2φ₃R₂,
    /// with ξ₃,₂ ↦ 1 so that the square of the second component contributes
    /// the −1.
    pub fn delta_1() -> FuncExpr {
        let xi = xi3_1();
        let xi_sq = mul(&xi, &xi).expect("trig-free");
        let three_xi_sq_minus_1 = xi_sq
            .scale(&FieldElem::from_int(3))
            .sub(&FuncExpr::constant(FieldElem::one()));
        let t1 = mul(&f_deriv(), &three_xi_sq_minus_1).expect("trig-free");
        let t2 = mul(&phi3(), &xi_sq).expect("trig-free");
        let t3 = mul(&mul(&phi3(), &xi).expect("trig-free"), &r_1())
            .expect("trig-free")
            .scale(&FieldElem::from_int(6));
        let t4 = mul(&phi3(), &r_2()).expect("trig-free").scale(&FieldElem::from_int(-2));
        t1.add(&t2).add(&t3).add(&t4)
    }

    /// Δ₂ = F(1−φ₃²) + φ₃R₁ + φ₃(1−φ₃²)R₂.
    pub fn delta_2() -> FuncExpr {
        let xi = xi3_1();
        let t1 = mul(&f_deriv(), &xi).expect("trig-free");
        let t2 = mul(&phi3(), &r_1()).expect("trig-free");
        let t3 = mul(&mul(&phi3(), &xi).expect("trig-free"), &r_2()).expect("trig-free");
        t1.add(&t2).add(&t3)
    }
}

#[cfg(test)]
mod tests {
    use super::exprs::*;
    use super::*;

    fn fe(n: i64) -> FieldElem {
        FieldElem::from_int(n)
    }

    #[test]
    fn normalize_tanh_square() {
        // tanh²·sin → (1 − sech²)·sin
        let e = FuncExpr::from_monomial(Monomial::one().tanh_pow(2).sin(), fe(1));
        let n = normalize(&e);
        let mut expected = FuncExpr::from_monomial(Monomial::one().sin(), fe(1));
        expected.insert(Monomial::one().sech_pow(2).sin(), fe(-1));
        assert_eq!(n, expected);
        assert_eq!(normalize(&n), n);
    }

    #[test]
    fn normalize_via_product() {
        // sech·tanh times tanh·sin → sech·sin − sech³·sin
        let a = FuncExpr::from_monomial(Monomial::one().sech_pow(1).tanh_pow(1), fe(1));
        let b = FuncExpr::from_monomial(Monomial::one().tanh_pow(1).sin(), fe(1));
        let prod = mul(&a, &b).unwrap();
        let mut expected = FuncExpr::from_monomial(Monomial::one().sech_pow(1).sin(), fe(1));
        expected.insert(Monomial::one().sech_pow(3).sin(), fe(-1));
        assert_eq!(prod, expected);
    }

    #[test]
    fn phi3_squared() {
        let sq = mul(&phi3(), &phi3()).unwrap();
        assert_eq!(
            sq,
            FuncExpr::from_monomial(Monomial::one().sech_pow(2), fe(2))
        );
    }

    #[test]
    fn xi_squared_expansion() {
        // (1 − 2sech²)² = 1 − 4sech² + 4sech⁴
        let xi = xi3_1();
        let sq = mul(&xi, &xi).unwrap();
        let mut expected = FuncExpr::constant(fe(1));
        expected.insert(Monomial::one().sech_pow(2), fe(-4));
        expected.insert(Monomial::one().sech_pow(4), fe(4));
        assert_eq!(sq, expected);
    }

    #[test]
    fn trig_clash_is_an_error() {
        let c = FuncExpr::from_monomial(Monomial::one().cos(), fe(1));
        let s = FuncExpr::from_monomial(Monomial::one().sin(), fe(1));
        assert_eq!(mul(&c, &s), Err(AlgebraError::TrigClash));
    }

    #[test]
    fn parities() {
        assert_eq!(parity(&Monomial::one().sech_pow(3).cos()), Parity::Even);
        assert_eq!(parity(&Monomial::one().sech_pow(3).sin()), Parity::Odd);
        assert_eq!(
            parity(&Monomial::one().x_pow(1).sech_pow(3).sin()),
            Parity::Even
        );
        assert_eq!(
            parity(&Monomial::one().tanh_pow(1).tprime_pow(1).sech_pow(1).cos()),
            Parity::Even
        );
    }

    #[test]
    fn classify_families() {
        let q3 = Monomial::one().sech_pow(3).logsech_pow(1).cos();
        assert_eq!(classify(&q3).unwrap(), bi('q', 3));
        let a5 = Monomial::one().x_pow(1).sech_pow(5).tanh_pow(1).cos();
        assert_eq!(classify(&a5).unwrap(), bi('a', 5));
        let bad = Monomial::one().x_pow(2).sech_pow(1).cos();
        assert!(matches!(classify(&bad), Err(AlgebraError::Unclassifiable(_))));
        // no sech decay, no T: not a family either
        assert!(classify(&Monomial::one().cos()).is_err());
        // T² leaves the class
        assert!(classify(&Monomial::one().sech_pow(1).t_pow(2).cos()).is_err());
    }

    #[test]
    fn classifiable_integrands_are_even() {
        for fam in crate::basisreduce::Family::ALL {
            for k in (1..=9).step_by(2) {
                let m = defining_monomial(BasisIntegral::new(fam, k));
                assert_eq!(classify(&m).unwrap(), BasisIntegral::new(fam, k));
                assert_eq!(parity(&m), Parity::Even, "{m}");
            }
        }
    }

    #[test]
    fn inner_product_of_phi3_with_h31() {
        // ⟨φ₃, h₃,₁⟩ = √2 p₃ − √2 b₁ before reduction
        let combo = inner_product(&phi3(), &h3_1()).unwrap();
        let mut expected = BasisCombo::new();
        expected.insert(bi('p', 3), FieldElem::sqrt2());
        expected.insert(bi('b', 1), FieldElem::sqrt2().neg());
        assert_eq!(combo, expected);
        // and it reduces to nothing
        assert!(crate::basisreduce::reduce_full(&combo).is_empty());
        // zero against anything is the empty combo
        assert!(inner_product(&FuncExpr::zero(), &h3_1()).unwrap().is_empty());
    }

    #[test]
    fn stripped_phi3_xi_squared_against_cos_part() {
        // the cos-side of the ⟨φ₃ξ₃,₁², h₃,₁⟩ pairing: −4√2 p₅ + 4√2 p₇
        let left = mul(&phi3(), &mul(&xi3_1(), &xi3_1()).unwrap()).unwrap();
        let (stripped, lambda) = strip_sech_multiple(&left);
        assert_eq!(lambda, FieldElem::sqrt2());
        let combo = inner_product(&stripped, &h3_1_cos_part()).unwrap();
        let mut expected = BasisCombo::new();
        expected.insert(bi('p', 5), FieldElem::sqrt2_times(-4, 1));
        expected.insert(bi('p', 7), FieldElem::sqrt2_times(4, 1));
        assert_eq!(combo, expected);
    }

    #[test]
    fn e_is_f_minus_phi3_log_phi3() {
        assert_eq!(e_deriv(), f_deriv().sub(&phi3_log_phi3()));
    }

    #[test]
    fn constructor_shapes() {
        let mut h = FuncExpr::from_monomial(Monomial::one().sech_pow(2).cos(), fe(1));
        h.insert(Monomial::one().tanh_pow(1).sin(), fe(-1));
        assert_eq!(h3_1(), h);

        let mut xi = FuncExpr::constant(fe(1));
        xi.insert(Monomial::one().sech_pow(2), fe(-2));
        assert_eq!(xi3_1(), xi);

        let r1 = r_1();
        assert_eq!(
            r1.coeff(&Monomial::one().x_pow(1).tanh_pow(1).sech_pow(2)),
            fe(2)
        );
        assert_eq!(
            r1.coeff(&Monomial::one().t_pow(1)),
            FieldElem::sqrt2_times(-3, 8)
        );
        assert_eq!(
            r1.coeff(&Monomial::one().sech_pow(2).t_pow(1)),
            FieldElem::sqrt2_times(1, 4)
        );
        assert_eq!(
            r1.coeff(&Monomial::one().tanh_pow(1).tprime_pow(1)),
            FieldElem::sqrt2_times(1, 4)
        );
        assert_eq!(r1.len(), 4);
    }

    #[test]
    fn monomial_rendering() {
        let m = Monomial::one().x_pow(1).sech_pow(5).tanh_pow(1).cos();
        assert_eq!(m.to_string(), "x·sech^5·tanh·cos");
        assert_eq!(Monomial::one().to_string(), "1");
    }

    #[test]
    fn monomial_json_has_explicit_exponent_fields() {
        let m = Monomial::one().x_pow(1).sech_pow(5).tanh_pow(1).cos();
        let v = serde_json::to_value(m).unwrap();
        assert_eq!(v["sech"], 5);
        assert_eq!(v["x"], 1);
        assert_eq!(v["tanh"], 1);
        assert_eq!(v["trig"], "cos");
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use crate::exactfield::FieldElem;
    use proptest::prelude::*;

    fn arb_monomial(with_trig: bool) -> impl Strategy<Value = Monomial> {
        let trig_range = if with_trig { 0u8..3 } else { 0u8..1 };
        (0u32..6, 0u32..4, 0u32..2, 0u32..2, 0u32..2, 0u32..2, trig_range).prop_map(
            |(sech, tanh, x, logsech, t, tprime, trig)| Monomial {
                sech,
                tanh,
                x,
                logsech,
                t,
                tprime,
                trig: match trig {
                    0 => Trig::None,
                    1 => Trig::Cos,
                    _ => Trig::Sin,
                },
            },
        )
    }

    fn arb_expr(with_trig: bool) -> impl Strategy<Value = FuncExpr> {
        proptest::collection::vec((arb_monomial(with_trig), -9i64..10), 0..4).prop_map(|terms| {
            let mut e = FuncExpr::zero();
            for (m, c) in terms {
                e.insert(m, FieldElem::from_int(c));
            }
            e
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn normalize_is_idempotent(e in arb_expr(true)) {
            let once = normalize(&e);
            prop_assert_eq!(normalize(&once), once.clone());
            // and all tanh powers are gone
            prop_assert!(once.terms().all(|(m, _)| m.tanh <= 1));
        }
    }

    proptest! {
        #[test]
        fn mul_commutes_and_associates(
            a in arb_expr(false),
            b in arb_expr(false),
            c in arb_expr(false),
        ) {
            prop_assert_eq!(mul(&a, &b).unwrap(), mul(&b, &a).unwrap());
            let left = mul(&mul(&a, &b).unwrap(), &c).unwrap();
            let right = mul(&a, &mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
