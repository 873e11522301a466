//! Exact coefficient fields.
//!
//! Three kinds are supported: prime fields `F_p`, small extensions
//! `F_p[t]/(m(t))` with a user-supplied monic irreducible modulus of degree
//! 2 to 4, and the rationals with arbitrary-precision numerators and
//! denominators. There is no floating point anywhere.
//!
//! Field descriptors use the text forms `p=7`, `p=2;mod=t^2+t+1` and
//! `rational`; see [`CoefficientField::descriptor`] and the `FromStr` impl.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MAX_EXTENSION_DEGREE: usize = 4;
const MAX_PRIME: u64 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime { p: u64 },
    /// `modulus` is monic, stored low-to-high with length `degree + 1`.
    Extension { p: u64, modulus: Vec<u64> },
    Rational,
}

/// Raw field element. Only meaningful together with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Elem {
    Int(u64),
    Ext([u64; MAX_EXTENSION_DEGREE]),
    Rat(BigRational),
}

/// A validated coefficient field. Cloning is cheap.
#[derive(Clone)]
pub struct CoefficientField(Arc<FieldKind>);

impl PartialEq for CoefficientField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for CoefficientField {}

impl Hash for CoefficientField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoefficientField({})", self.descriptor())
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl FromStr for CoefficientField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_field_descriptor(s)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// Remainder of `a` by monic `b` over `F_p`, both low-to-high.
fn poly_rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let sub = mul_mod(lead, bj, p);
                r[shift + j] = (r[shift + j] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

fn has_root(modulus: &[u64], p: u64) -> bool {
    (0..p).any(|x| {
        modulus
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p)
            == 0
    })
}

fn has_quadratic_factor(modulus: &[u64], p: u64) -> bool {
    for c0 in 0..p {
        for c1 in 0..p {
            if poly_rem_mod(modulus, &[c0, c1, 1], p).iter().all(|&c| c == 0) {
                return true;
            }
        }
    }
    false
}

fn format_t_poly(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let s = match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".to_string(),
            (1, c) => format!("{c}*t"),
            (k, 1) => format!("t^{k}"),
            (k, c) => format!("{c}*t^{k}"),
        };
        parts.push(s);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

impl CoefficientField {
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::InvalidDescriptor(format!(
                "prime {p} exceeds the supported bound 2^32"
            )));
        }
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(Self(Arc::new(FieldKind::Prime { p })))
    }

    /// `F_p[t]/(modulus)`; `modulus` is given low-to-high and must be monic
    /// of degree 2..=4 and irreducible over `F_p`.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Self> {
        Self::prime(p)?;
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        while m.len() > 1 && *m.last().unwrap() == 0 {
            m.pop();
        }
        let degree = m.len() - 1;
        if !(2..=MAX_EXTENSION_DEGREE).contains(&degree) {
            return Err(Error::InvalidModulus(format!(
                "degree {degree} not in 2..={MAX_EXTENSION_DEGREE}"
            )));
        }
        if m[degree] != 1 {
            return Err(Error::InvalidModulus(format!(
                "{} is not monic",
                format_t_poly(&m)
            )));
        }
        // Degree <= 4: reducible iff there is a factor of degree 1 or 2.
        if has_root(&m, p) || (degree == 4 && has_quadratic_factor(&m, p)) {
            return Err(Error::ReducibleModulus(format_t_poly(&m)));
        }
        Ok(Self(Arc::new(FieldKind::Extension { p, modulus: m })))
    }

    /// The extension of degree `degree` over `F_p` with the first irreducible
    /// monic modulus in counting order of its lower coefficients.
    pub fn galois(p: u64, degree: usize) -> Result<Self> {
        if degree == 1 {
            return Self::prime(p);
        }
        Self::prime(p)?;
        if !(2..=MAX_EXTENSION_DEGREE).contains(&degree) {
            return Err(Error::InvalidModulus(format!(
                "degree {degree} not in 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        let count = p.pow(degree as u32);
        for idx in 0..count {
            let mut m = vec![0u64; degree + 1];
            let mut rest = idx;
            for c in m.iter_mut().take(degree) {
                *c = rest % p;
                rest /= p;
            }
            m[degree] = 1;
            if let Ok(field) = Self::extension(p, &m) {
                return Ok(field);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn rational() -> Self {
        Self(Arc::new(FieldKind::Rational))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Prime { p } | FieldKind::Extension { p, .. } => *p,
            FieldKind::Rational => 0,
        }
    }

    /// Degree over the prime field (1 for `F_p` and the rationals).
    pub fn degree(&self) -> usize {
        match &*self.0 {
            FieldKind::Extension { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u128> {
        match &*self.0 {
            FieldKind::Rational => None,
            _ => Some((self.characteristic() as u128).pow(self.degree() as u32)),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.characteristic() > 0
    }

    pub fn descriptor(&self) -> String {
        match &*self.0 {
            FieldKind::Prime { p } => format!("p={p}"),
            FieldKind::Extension { p, modulus } => {
                format!("p={p};mod={}", format_t_poly(modulus).replace(' ', ""))
            }
            FieldKind::Rational => "rational".to_string(),
        }
    }

    // ----- raw element arithmetic -----

    pub(crate) fn zero(&self) -> Elem {
        match &*self.0 {
            FieldKind::Prime { .. } => Elem::Int(0),
            FieldKind::Extension { .. } => Elem::Ext([0; MAX_EXTENSION_DEGREE]),
            FieldKind::Rational => Elem::Rat(BigRational::zero()),
        }
    }

    pub(crate) fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub(crate) fn from_i64(&self, v: i64) -> Elem {
        match &*self.0 {
            FieldKind::Prime { p } => Elem::Int(v.rem_euclid(*p as i64) as u64),
            FieldKind::Extension { p, .. } => {
                let mut c = [0; MAX_EXTENSION_DEGREE];
                c[0] = v.rem_euclid(*p as i64) as u64;
                Elem::Ext(c)
            }
            FieldKind::Rational => Elem::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub(crate) fn from_bigint(&self, v: &BigInt) -> Elem {
        match &*self.0 {
            FieldKind::Rational => Elem::Rat(BigRational::from_integer(v.clone())),
            _ => {
                let p = BigInt::from(self.characteristic());
                let r = v.mod_floor(&p).to_u64().expect("residue fits in u64");
                self.embed_prime_residue(r)
            }
        }
    }

    /// The image of `num / den`; fails when `den` vanishes in the field.
    pub(crate) fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Elem> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &*self.0 {
            FieldKind::Rational => Ok(Elem::Rat(BigRational::new(num.clone(), den.clone()))),
            _ => {
                let d = self.from_bigint(den);
                if self.is_zero(&d) {
                    return Err(Error::DivisionByZero);
                }
                Ok(self.div(&self.from_bigint(num), &d).expect("nonzero divisor"))
            }
        }
    }

    fn embed_prime_residue(&self, r: u64) -> Elem {
        match &*self.0 {
            FieldKind::Prime { .. } => Elem::Int(r),
            FieldKind::Extension { .. } => {
                let mut c = [0; MAX_EXTENSION_DEGREE];
                c[0] = r;
                Elem::Ext(c)
            }
            FieldKind::Rational => Elem::Rat(BigRational::from_integer(BigInt::from(r))),
        }
    }

    /// The class of `t` in an extension field.
    pub(crate) fn generator_elem(&self) -> Option<Elem> {
        match &*self.0 {
            FieldKind::Extension { .. } => {
                let mut c = [0; MAX_EXTENSION_DEGREE];
                c[1] = 1;
                Some(Elem::Ext(c))
            }
            _ => None,
        }
    }

    pub(crate) fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(v) => *v == 0,
            Elem::Ext(c) => c.iter().all(|&x| x == 0),
            Elem::Rat(r) => r.is_zero(),
        }
    }

    pub(crate) fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub(crate) fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (FieldKind::Prime { p }, Elem::Int(x), Elem::Int(y)) => Elem::Int((x + y) % p),
            (FieldKind::Extension { p, .. }, Elem::Ext(x), Elem::Ext(y)) => {
                let mut c = [0; MAX_EXTENSION_DEGREE];
                for i in 0..MAX_EXTENSION_DEGREE {
                    c[i] = (x[i] + y[i]) % p;
                }
                Elem::Ext(c)
            }
            (FieldKind::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            _ => panic!("element does not belong to field {}", self.descriptor()),
        }
    }

    pub(crate) fn neg(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (FieldKind::Prime { p }, Elem::Int(x)) => Elem::Int((p - x) % p),
            (FieldKind::Extension { p, .. }, Elem::Ext(x)) => {
                let mut c = [0; MAX_EXTENSION_DEGREE];
                for i in 0..MAX_EXTENSION_DEGREE {
                    c[i] = (p - x[i]) % p;
                }
                Elem::Ext(c)
            }
            (FieldKind::Rational, Elem::Rat(x)) => Elem::Rat(-x),
            _ => panic!("element does not belong to field {}", self.descriptor()),
        }
    }

    pub(crate) fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub(crate) fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (FieldKind::Prime { p }, Elem::Int(x), Elem::Int(y)) => Elem::Int(mul_mod(*x, *y, *p)),
            (FieldKind::Extension { p, modulus }, Elem::Ext(x), Elem::Ext(y)) => {
                let d = modulus.len() - 1;
                let mut prod = [0u64; 2 * MAX_EXTENSION_DEGREE - 1];
                for i in 0..d {
                    if x[i] == 0 {
                        continue;
                    }
                    for j in 0..d {
                        prod[i + j] = (prod[i + j] + mul_mod(x[i], y[j], *p)) % p;
                    }
                }
                for k in (d..2 * d - 1).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for j in 0..d {
                        let sub = mul_mod(c, modulus[j], *p);
                        prod[k - d + j] = (prod[k - d + j] + p - sub) % p;
                    }
                }
                let mut c = [0; MAX_EXTENSION_DEGREE];
                c[..d].copy_from_slice(&prod[..d]);
                Elem::Ext(c)
            }
            (FieldKind::Rational, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            _ => panic!("element does not belong to field {}", self.descriptor()),
        }
    }

    pub(crate) fn inv(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        match (&*self.0, a) {
            (FieldKind::Prime { p }, Elem::Int(x)) => inv_mod(*x, *p).map(Elem::Int),
            (FieldKind::Extension { .. }, Elem::Ext(_)) => {
                let q = self.order().expect("finite field");
                Some(self.pow_u128(a, q - 2))
            }
            (FieldKind::Rational, Elem::Rat(x)) => Some(Elem::Rat(x.recip())),
            _ => panic!("element does not belong to field {}", self.descriptor()),
        }
    }

    pub(crate) fn div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    pub(crate) fn pow_u128(&self, a: &Elem, mut e: u128) -> Elem {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// `a^p`; fails in characteristic zero.
    pub(crate) fn frobenius(&self, a: &Elem) -> Result<Elem> {
        match self.characteristic() {
            0 => Err(Error::CharacteristicZero),
            p => Ok(self.pow_u128(a, p as u128)),
        }
    }

    /// Element with the given index in the canonical enumeration order
    /// (base-`p` digits of the coefficients for extensions).
    pub(crate) fn elem_from_index(&self, idx: u64) -> Elem {
        match &*self.0 {
            FieldKind::Prime { .. } => Elem::Int(idx),
            FieldKind::Extension { p, modulus } => {
                let mut c = [0; MAX_EXTENSION_DEGREE];
                let mut rest = idx;
                for ci in c.iter_mut().take(modulus.len() - 1) {
                    *ci = rest % p;
                    rest /= p;
                }
                Elem::Ext(c)
            }
            FieldKind::Rational => panic!("rationals are not enumerable"),
        }
    }

    pub(crate) fn index_of(&self, a: &Elem) -> u64 {
        match (&*self.0, a) {
            (FieldKind::Prime { .. }, Elem::Int(v)) => *v,
            (FieldKind::Extension { p, modulus }, Elem::Ext(c)) => c[..modulus.len() - 1]
                .iter()
                .rev()
                .fold(0u64, |acc, &x| acc * p + x),
            _ => panic!("element index requested outside a finite field"),
        }
    }

    /// Maps an element of `source` into `self`. Supported embeddings are the
    /// identity and prime field into an extension of the same characteristic.
    pub(crate) fn embed_from(&self, source: &CoefficientField, a: &Elem) -> Result<Elem> {
        if source == self {
            return Ok(a.clone());
        }
        match (&*source.0, a) {
            (FieldKind::Prime { p }, Elem::Int(v)) if *p == self.characteristic() => {
                Ok(self.embed_prime_residue(*v))
            }
            _ => Err(Error::FieldMismatch {
                left: source.descriptor(),
                right: self.descriptor(),
            }),
        }
    }

    pub(crate) fn fmt_elem(&self, a: &Elem) -> String {
        match (&*self.0, a) {
            (FieldKind::Prime { .. }, Elem::Int(v)) => v.to_string(),
            (FieldKind::Extension { modulus, .. }, Elem::Ext(c)) => {
                format_t_poly(&c[..modulus.len() - 1])
            }
            (FieldKind::Rational, Elem::Rat(r)) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            _ => panic!("element does not belong to field {}", self.descriptor()),
        }
    }

    /// True when printing the element inside a product needs parentheses.
    pub(crate) fn elem_is_compound(&self, a: &Elem) -> bool {
        match a {
            Elem::Ext(c) => c.iter().filter(|&&x| x != 0).count() > 1,
            _ => false,
        }
    }

    /// True for "negative-looking" rationals, so printers can emit `a - b`.
    pub(crate) fn elem_is_negative(&self, a: &Elem) -> bool {
        matches!(a, Elem::Rat(r) if r.is_negative())
    }

    // ----- scalar constructors -----

    pub(crate) fn wrap(&self, elem: Elem) -> Scalar {
        Scalar {
            field: self.clone(),
            elem,
        }
    }

    pub fn zero_scalar(&self) -> Scalar {
        self.wrap(self.zero())
    }

    pub fn one_scalar(&self) -> Scalar {
        self.wrap(self.one())
    }

    pub fn scalar(&self, v: i64) -> Scalar {
        self.wrap(self.from_i64(v))
    }

    pub fn scalar_from_bigint(&self, v: &BigInt) -> Scalar {
        self.wrap(self.from_bigint(v))
    }

    pub fn scalar_from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        self.from_ratio(&BigInt::from(num), &BigInt::from(den))
            .map(|e| self.wrap(e))
    }

    pub fn scalar_from_rational(&self, r: &BigRational) -> Result<Scalar> {
        self.from_ratio(r.numer(), r.denom()).map(|e| self.wrap(e))
    }

    /// An extension element from its coefficients in `1, t, t^2, ...`.
    pub fn scalar_from_coeffs(&self, coeffs: &[u64]) -> Result<Scalar> {
        match &*self.0 {
            FieldKind::Extension { p, modulus } => {
                let d = modulus.len() - 1;
                if coeffs.len() > d {
                    return Err(Error::ArityMismatch {
                        expected: d,
                        found: coeffs.len(),
                    });
                }
                let mut c = [0; MAX_EXTENSION_DEGREE];
                for (ci, &v) in c.iter_mut().zip(coeffs) {
                    *ci = v % p;
                }
                Ok(self.wrap(Elem::Ext(c)))
            }
            _ => match coeffs {
                [] => Ok(self.zero_scalar()),
                [v] => Ok(self.wrap(self.from_bigint(&BigInt::from(*v)))),
                _ => Err(Error::ArityMismatch {
                    expected: 1,
                    found: coeffs.len(),
                }),
            },
        }
    }

    /// The class of `t`; only extension fields have one.
    pub fn generator(&self) -> Option<Scalar> {
        self.generator_elem().map(|e| self.wrap(e))
    }

    /// All elements in canonical order. Panics for the rationals.
    pub fn elements(&self) -> impl Iterator<Item = Scalar> + '_ {
        let q = self.order().expect("finite field") as u64;
        (0..q).map(move |i| self.wrap(self.elem_from_index(i)))
    }
}

/// An element of a [`CoefficientField`] in canonical form.
///
/// Equality is representational: residues are reduced, extension
/// coefficients are reduced modulo the modulus, fractions are in lowest terms
/// with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: CoefficientField,
    elem: Elem,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.fmt_elem(&self.elem))
    }
}

impl Scalar {
    pub fn field(&self) -> &CoefficientField {
        &self.field
    }

    pub(crate) fn elem(&self) -> &Elem {
        &self.elem
    }

    pub(crate) fn into_elem(self) -> Elem {
        self.elem
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.elem)
    }

    pub fn is_one(&self) -> bool {
        self.field.is_one(&self.elem)
    }

    fn check_field(&self, other: &Scalar) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.descriptor(),
                right: other.field.descriptor(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_field(other)?;
        Ok(self.field.wrap(self.field.add(&self.elem, &other.elem)))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_field(other)?;
        Ok(self.field.wrap(self.field.sub(&self.elem, &other.elem)))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_field(other)?;
        Ok(self.field.wrap(self.field.mul(&self.elem, &other.elem)))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_field(other)?;
        self.field
            .div(&self.elem, &other.elem)
            .map(|e| self.field.wrap(e))
            .ok_or(Error::DivisionByZero)
    }

    pub fn inverse(&self) -> Result<Scalar> {
        self.field
            .inv(&self.elem)
            .map(|e| self.field.wrap(e))
            .ok_or(Error::DivisionByZero)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        Ok(self
            .field
            .wrap(self.field.pow_u128(&base.elem, e.unsigned_abs() as u128)))
    }

    pub fn frobenius(&self) -> Result<Scalar> {
        self.field.frobenius(&self.elem).map(|e| self.field.wrap(e))
    }

    /// Re-expresses this scalar in `target` (identity or prime-field embedding).
    pub fn embed_into(&self, target: &CoefficientField) -> Result<Scalar> {
        target
            .embed_from(&self.field, &self.elem)
            .map(|e| target.wrap(e))
    }

    /// The rational value, when the field is the rationals.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.elem {
            Elem::Rat(r) => Some(r.clone()),
            _ => None,
        }
    }

    /// Canonical residue for prime fields.
    pub fn to_residue(&self) -> Option<u64> {
        match &self.elem {
            Elem::Int(v) => Some(*v),
            _ => None,
        }
    }

    /// Coefficients in `1, t, ...` for extension fields.
    pub fn to_coeffs(&self) -> Option<Vec<u64>> {
        match &self.elem {
            Elem::Ext(c) => Some(c[..self.field.degree()].to_vec()),
            _ => None,
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar field mismatch")
            }
        }
        impl std::ops::$trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$checked(&rhs).expect("scalar field mismatch")
            }
        }
    };
}

scalar_binop!(Add, add, try_add);
scalar_binop!(Sub, sub, try_sub);
scalar_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.field.wrap(self.field.neg(&self.elem))
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
