//! Truncated polynomial rings.
//!
//! Two families of quotients of `k[x1..xn]` are supported, both by monomial
//! ideals in the shifted coordinates `y_i = x_i - a_i`:
//!
//! * Frobenius truncation at level `s` (characteristic `p > 0`): the ideal
//!   `<y_1^p, ..., y_n^p>^(p^(s-1))`. A monomial `y^e` lies in it exactly when
//!   `sum_i floor(e_i / p) >= p^(s-1)`.
//! * m-adic truncation of order `N` (any field): the ideal `m_a^N`, i.e.
//!   `sum_i e_i >= N`.
//!
//! Elements are always stored in `y` coordinates; the base point only lives
//! in the [`TruncationSpec`].

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{CoefficientField, Elem, Scalar};
use crate::poly::{Monomial, Polynomial, ShiftDirection, SubstTarget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TruncationKind {
    Frobenius { level: u32 },
    MAdic { order: u32 },
}

#[derive(Debug, PartialEq, Eq)]
struct SpecInner {
    nvars: usize,
    field: CoefficientField,
    basepoint: Vec<Scalar>,
    kind: TruncationKind,
    /// Frobenius: `p^(s-1)` (saturating); m-adic: `N`.
    threshold: u64,
}

/// The data of one truncated ring. Cheap to clone.
#[derive(Clone, Debug)]
pub struct TruncationSpec(Arc<SpecInner>);

impl PartialEq for TruncationSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for TruncationSpec {}

impl fmt::Display for TruncationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

impl TruncationSpec {
    fn build(
        field: &CoefficientField,
        nvars: usize,
        basepoint: Vec<Scalar>,
        kind: TruncationKind,
    ) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: 0,
            });
        }
        if basepoint.len() != nvars {
            return Err(Error::ArityMismatch {
                expected: nvars,
                found: basepoint.len(),
            });
        }
        if let Some(bad) = basepoint.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch {
                left: field.descriptor(),
                right: bad.field().descriptor(),
            });
        }
        let threshold = match kind {
            TruncationKind::Frobenius { level } => {
                let p = field.characteristic();
                if p == 0 {
                    return Err(Error::CharacteristicZero);
                }
                if level == 0 {
                    return Err(Error::InvalidLevel("Frobenius level must be at least 1".into()));
                }
                p.saturating_pow(level - 1)
            }
            TruncationKind::MAdic { order } => {
                if order == 0 {
                    return Err(Error::InvalidLevel("m-adic order must be at least 1".into()));
                }
                order as u64
            }
        };
        Ok(Self(Arc::new(SpecInner {
            nvars,
            field: field.clone(),
            basepoint,
            kind,
            threshold,
        })))
    }

    /// `P(n) / <(x_i - a_i)^p>^(p^(s-1))`.
    pub fn frobenius(
        field: &CoefficientField,
        nvars: usize,
        basepoint: Vec<Scalar>,
        level: u32,
    ) -> Result<Self> {
        Self::build(field, nvars, basepoint, TruncationKind::Frobenius { level })
    }

    /// `P(n) / m_a^order`.
    pub fn madic(
        field: &CoefficientField,
        nvars: usize,
        basepoint: Vec<Scalar>,
        order: u32,
    ) -> Result<Self> {
        Self::build(field, nvars, basepoint, TruncationKind::MAdic { order })
    }

    pub fn with_kind(&self, kind: TruncationKind) -> Result<Self> {
        Self::build(&self.0.field, self.0.nvars, self.0.basepoint.clone(), kind)
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars
    }

    pub fn field(&self) -> &CoefficientField {
        &self.0.field
    }

    pub fn basepoint(&self) -> &[Scalar] {
        &self.0.basepoint
    }

    pub fn kind(&self) -> TruncationKind {
        self.0.kind
    }

    pub(crate) fn contains(&self, m: &Monomial) -> bool {
        match self.0.kind {
            TruncationKind::Frobenius { .. } => {
                let p = self.0.field.characteristic();
                m.exponents().iter().map(|&e| e as u64 / p).sum::<u64>() >= self.0.threshold
            }
            TruncationKind::MAdic { .. } => m.degree() >= self.0.threshold,
        }
    }

    /// Whether `y^exponents` lies in the truncation ideal.
    pub fn monomial_in_ideal(&self, exponents: &[u32]) -> Result<bool> {
        if exponents.len() != self.0.nvars {
            return Err(Error::ArityMismatch {
                expected: self.0.nvars,
                found: exponents.len(),
            });
        }
        Ok(self.contains(&Monomial::new(exponents)))
    }

    /// Smallest total degree of a monomial in the ideal; every monomial of
    /// lower degree survives.
    pub fn min_ideal_degree(&self) -> u64 {
        match self.0.kind {
            TruncationKind::Frobenius { .. } => {
                self.0.field.characteristic().saturating_mul(self.0.threshold)
            }
            TruncationKind::MAdic { order } => order as u64,
        }
    }

    /// Number of monomials outside the ideal.
    ///
    /// Frobenius: write `e_i = p q_i + r_i`; survivors have `sum q_i < M`
    /// with `M = p^(s-1)`, giving `p^n * C(M - 1 + n, n)`. m-adic:
    /// `C(N - 1 + n, n)`.
    pub fn quotient_dimension(&self) -> u128 {
        let n = self.0.nvars as u128;
        let m = self.0.threshold as u128;
        match self.0.kind {
            TruncationKind::Frobenius { .. } => {
                let p = self.0.field.characteristic() as u128;
                p.pow(n as u32) * binomial(m - 1 + n, n)
            }
            TruncationKind::MAdic { .. } => binomial(m - 1 + n, n),
        }
    }

    /// Least `N` with `m^N = 0` in the quotient: `p^s + (n-1)(p-1)` for
    /// Frobenius truncation, the order itself for m-adic truncation.
    pub fn nilpotency_index(&self) -> u64 {
        let n = self.0.nvars as u64;
        match self.0.kind {
            TruncationKind::Frobenius { .. } => {
                let p = self.0.field.characteristic();
                self.min_ideal_degree() + (n - 1) * (p - 1)
            }
            TruncationKind::MAdic { order } => order as u64,
        }
    }

    /// Surviving monomials in term order.
    pub fn basis(&self) -> Vec<Monomial> {
        let n = self.0.nvars;
        let bound = self.nilpotency_index() as u32;
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn rec(
            spec: &TruncationSpec,
            i: usize,
            budget: u32,
            exps: &mut Vec<u32>,
            out: &mut Vec<Monomial>,
        ) {
            if i == exps.len() {
                let m = Monomial::new(exps);
                if !spec.contains(&m) {
                    out.push(m);
                }
                return;
            }
            for e in 0..=budget {
                exps[i] = e;
                rec(spec, i + 1, budget - e, exps, out);
            }
            exps[i] = 0;
        }
        rec(self, 0, bound.saturating_sub(1), &mut exps, &mut out);
        out.sort();
        out
    }

    /// True if `self` is the same ring data as `finer` at an equal or lower
    /// level, so the projection `finer -> self` exists.
    pub fn is_coarser_or_equal(&self, finer: &TruncationSpec) -> bool {
        if self.0.nvars != finer.0.nvars
            || self.0.field != finer.0.field
            || self.0.basepoint != finer.0.basepoint
        {
            return false;
        }
        match (self.0.kind, finer.0.kind) {
            (TruncationKind::Frobenius { level: a }, TruncationKind::Frobenius { level: b }) => a <= b,
            (TruncationKind::MAdic { order: a }, TruncationKind::MAdic { order: b }) => a <= b,
            _ => false,
        }
    }

    /// Normal form of a polynomial given in `y` coordinates.
    pub fn normal_form(&self, f: &Polynomial) -> Result<TruncatedElement> {
        if f.nvars() != self.0.nvars {
            return Err(Error::ArityMismatch {
                expected: self.0.nvars,
                found: f.nvars(),
            });
        }
        if f.field() != &self.0.field {
            return Err(Error::FieldMismatch {
                left: self.0.field.descriptor(),
                right: f.field().descriptor(),
            });
        }
        let mut rep = f.clone();
        rep.retain(|m| !self.contains(m));
        Ok(TruncatedElement {
            spec: self.clone(),
            rep,
        })
    }

    /// Residue class of a polynomial given in the original `x` coordinates.
    pub fn reduce(&self, f: &Polynomial) -> Result<TruncatedElement> {
        let shifted = f.shift(&self.0.basepoint, ShiftDirection::ToShifted)?;
        self.normal_form(&shifted)
    }

    pub fn descriptor(&self) -> String {
        let coords: Vec<String> = self.0.basepoint.iter().map(|c| c.to_string()).collect();
        let point = coords.join(",");
        let n = self.0.nvars;
        match (self.0.kind, self.0.field.characteristic()) {
            (TruncationKind::Frobenius { level }, p) => {
                format!("frob:p={p},s={level},n={n},a={point}")
            }
            (TruncationKind::MAdic { order }, 0) => format!("madic:N={order},n={n},a={point}"),
            (TruncationKind::MAdic { order }, p) => {
                format!("madic:p={p},N={order},n={n},a={point}")
            }
        }
    }
}

/// An element of a truncated ring, stored as its normal-form representative
/// in `y` coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedElement {
    spec: TruncationSpec,
    rep: Polynomial,
}

impl fmt::Debug for TruncatedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedElement({} in {})", self, self.spec)
    }
}

impl fmt::Display for TruncatedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rep.fmt_with("y"))
    }
}

impl SubstTarget for TruncatedElement {
    fn zero_like(&self) -> Self {
        TruncatedElement::zero(&self.spec)
    }

    fn is_zero_elem(&self) -> bool {
        self.rep.is_zero()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let spec = &self.spec;
        TruncatedElement {
            spec: spec.clone(),
            rep: self.rep.mul_filtered(&other.rep, |m| !spec.contains(m)),
        }
    }

    fn add_scaled(&mut self, other: &Self, c: &Elem) {
        self.rep.add_scaled(&other.rep, c);
    }
}

impl TruncatedElement {
    pub fn zero(spec: &TruncationSpec) -> Self {
        Self {
            spec: spec.clone(),
            rep: Polynomial::zero(spec.field(), spec.nvars()),
        }
    }

    pub fn one(spec: &TruncationSpec) -> Self {
        Self::constant(spec, &spec.field().one_scalar()).expect("same field")
    }

    pub fn constant(spec: &TruncationSpec, c: &Scalar) -> Result<Self> {
        spec.normal_form(&Polynomial::constant(spec.nvars(), c))
    }

    /// The class of `y_{index+1} = x_{index+1} - a_{index+1}`.
    pub fn generator(spec: &TruncationSpec, index: usize) -> Result<Self> {
        spec.normal_form(&Polynomial::var(spec.field(), spec.nvars(), index)?)
    }

    pub fn spec(&self) -> &TruncationSpec {
        &self.spec
    }

    /// Normal-form representative in `y` coordinates.
    pub fn rep(&self) -> &Polynomial {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn constant_term(&self) -> Scalar {
        self.rep.constant_term()
    }

    fn check_spec(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        Ok(Self {
            spec: self.spec.clone(),
            rep: self.rep.try_add(&other.rep)?,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        Ok(Self {
            spec: self.spec.clone(),
            rep: self.rep.try_sub(&other.rep)?,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        Ok(self.mul_ref(other))
    }

    pub fn scale(&self, c: &Scalar) -> Result<Self> {
        Ok(Self {
            spec: self.spec.clone(),
            rep: self.rep.scale(c)?,
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::one(&self.spec);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        result
    }

    /// Units are exactly the elements with nonzero constant term.
    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    /// `c^-1 * sum_{k < N} (-c^-1 m)^k` for `u = c + m`, `m` nilpotent.
    pub fn unit_inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        let c_inv = c.inverse().map_err(|_| Error::NotAUnit)?;
        let nilpotent = self.try_sub(&Self::constant(&self.spec, &c)?)?;
        let ratio = nilpotent.scale(&-&c_inv)?;
        let mut sum = Self::one(&self.spec);
        let mut term = Self::one(&self.spec);
        for _ in 1..self.spec.nilpotency_index() {
            term = term.mul_ref(&ratio);
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
        }
        sum.scale(&c_inv)
    }

    /// The connecting projection into a coarser truncation of the same ring.
    pub fn project(&self, coarser: &TruncationSpec) -> Result<Self> {
        if !coarser.is_coarser_or_equal(&self.spec) {
            return Err(Error::IncomparableSpecs);
        }
        coarser.normal_form(&self.rep)
    }
}

macro_rules! trunc_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&TruncatedElement> for &TruncatedElement {
            type Output = TruncatedElement;
            fn $method(self, rhs: &TruncatedElement) -> TruncatedElement {
                self.$checked(rhs).expect("elements of different truncations")
            }
        }
    };
}

trunc_binop!(Add, add, try_add);
trunc_binop!(Sub, sub, try_sub);
trunc_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &TruncatedElement {
    type Output = TruncatedElement;
    fn neg(self) -> TruncatedElement {
        TruncatedElement {
            spec: self.spec.clone(),
            rep: -&self.rep,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn frob(p: u64, n: usize, s: u32) -> TruncationSpec {
        let f = CoefficientField::prime(p).unwrap();
        TruncationSpec::frobenius(&f, n, vec![f.zero_scalar(); n], s).unwrap()
    }

    fn el(spec: &TruncationSpec, text: &str) -> TruncatedElement {
        spec.normal_form(&parse_polynomial(text, spec.field(), spec.nvars()).unwrap())
            .unwrap()
    }

    #[test]
    fn membership_examples() {
        let s = frob(3, 2, 2);
        assert!(!s.monomial_in_ideal(&[4, 5]).unwrap());
        assert!(s.monomial_in_ideal(&[9, 0]).unwrap());
        let q = CoefficientField::rational();
        let m = TruncationSpec::madic(&q, 2, vec![q.zero_scalar(); 2], 2).unwrap();
        assert!(!m.monomial_in_ideal(&[1, 0]).unwrap());
        assert!(m.monomial_in_ideal(&[1, 1]).unwrap());
        assert!(matches!(
            m.monomial_in_ideal(&[1]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn construction_errors() {
        let q = CoefficientField::rational();
        assert_eq!(
            TruncationSpec::frobenius(&q, 1, vec![q.zero_scalar()], 1),
            Err(Error::CharacteristicZero)
        );
        let f = CoefficientField::prime(2).unwrap();
        assert!(matches!(
            TruncationSpec::frobenius(&f, 1, vec![f.zero_scalar()], 0),
            Err(Error::InvalidLevel(_))
        ));
        assert!(matches!(
            TruncationSpec::frobenius(&f, 2, vec![f.zero_scalar()], 1),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn normal_form_examples() {
        let s = frob(2, 1, 1);
        assert_eq!(el(&s, "x1^2 + x1 + 1").rep(), el(&s, "x1 + 1").rep());
        let s2 = frob(2, 2, 1);
        assert_eq!(el(&s2, "x1*x2").rep().len(), 1);
        let s3 = frob(2, 1, 2);
        assert_eq!(el(&s3, "x1^5 + x1^3").to_string(), "y1^3");
        let f = parse_polynomial("x1^5 + x1^3 + 1", s3.field(), 1).unwrap();
        let once = s3.normal_form(&f).unwrap();
        assert_eq!(s3.normal_form(once.rep()).unwrap(), once);
    }

    #[test]
    fn arithmetic_examples() {
        let s = frob(2, 1, 1);
        let u = el(&s, "x1 + 1");
        assert_eq!(&u * &u, TruncatedElement::one(&s));
        assert_eq!(&u * &TruncatedElement::one(&s), u);
        let s2 = frob(2, 2, 1);
        let v = el(&s2, "x1 + x2");
        assert!((&v * &v).is_zero());
        assert_eq!(u.try_add(&v), Err(Error::SpecMismatch));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(frob(2, 2, 1).quotient_dimension(), 4);
        assert_eq!(frob(2, 2, 2).quotient_dimension(), 12);
        assert_eq!(frob(2, 2, 1).nilpotency_index(), 3);
        assert_eq!(frob(2, 2, 2).nilpotency_index(), 5);
        assert_eq!(frob(2, 2, 2).basis().len(), 12);
    }

    #[test]
    fn projection_examples() {
        let s1 = frob(2, 1, 1);
        let s2 = frob(2, 1, 2);
        let s3 = frob(2, 1, 3);
        let u = el(&s2, "x1^3 + x1");
        assert_eq!(u.project(&s2).unwrap(), u);
        assert_eq!(u.project(&s1).unwrap(), el(&s1, "x1"));
        let w = el(&s3, "x1^3 + x1^2 + x1 + 1");
        let two_step = w.project(&s2).unwrap().project(&s1).unwrap();
        assert_eq!(two_step, w.project(&s1).unwrap());
        assert_eq!(two_step, el(&s1, "x1 + 1"));
        assert_eq!(u.project(&s3), Err(Error::IncomparableSpecs));
        let q = CoefficientField::prime(2).unwrap();
        let madic = TruncationSpec::madic(&q, 1, vec![q.zero_scalar()], 2).unwrap();
        assert_eq!(u.project(&madic), Err(Error::IncomparableSpecs));
    }

    #[test]
    fn unit_inverse_examples() {
        let s = frob(2, 1, 1);
        assert_eq!(el(&s, "1 + x1").unit_inverse().unwrap(), el(&s, "1 + x1"));
        let s3 = frob(3, 1, 1);
        assert_eq!(
            el(&s3, "1 + x1").unit_inverse().unwrap(),
            el(&s3, "1 + 2*x1 + x1^2")
        );
        let c = el(&s3, "2");
        assert_eq!(c.unit_inverse().unwrap(), el(&s3, "2"));
        assert_eq!(el(&s3, "x1").unit_inverse(), Err(Error::NotAUnit));
        assert!(!el(&s3, "x1 + x1^2").is_unit());
    }

    #[test]
    fn exhaustive_units_in_f2_dual_numbers() {
        let s = frob(2, 1, 1);
        let f = s.field().clone();
        for a in f.elements() {
            for b in f.elements() {
                let u = s
                    .normal_form(&Polynomial::from_terms(&f, 1, [(vec![0], a.clone()), (vec![1], b.clone())]).unwrap())
                    .unwrap();
                if u.is_unit() {
                    assert_eq!(&u * &u.unit_inverse().unwrap(), TruncatedElement::one(&s));
                } else {
                    assert_eq!(u.unit_inverse(), Err(Error::NotAUnit));
                }
            }
        }
    }

    #[test]
    fn reduce_at_basepoint() {
        let f = CoefficientField::prime(3).unwrap();
        let s = TruncationSpec::frobenius(&f, 1, vec![f.scalar(1)], 1).unwrap();
        // x^3 = (y+1)^3 = y^3 + 1 -> 1 in k[y]/(y^3)
        let r = s.reduce(&parse_polynomial("x1^3", &f, 1).unwrap()).unwrap();
        assert_eq!(r, TruncatedElement::one(&s));
    }
}
