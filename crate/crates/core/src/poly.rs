//! Sparse multivariate polynomials over a [`CoefficientField`] and polynomial
//! endomorphisms of `k[x1..xn]`.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose order is
//! graded: lower total degree first, and within one degree the monomial with
//! the larger exponent of `x1` (then `x2`, ...) first. Printing follows the
//! same order, so `x1 + x2^2` prints exactly like that.
//!
//! # Composition convention
//!
//! Endomorphisms are ring maps, and `sigma.compose(&tau)` is the ring map
//! `f -> sigma(tau(f))`. On generators this means
//! `(sigma o tau)(x_i) = tau(x_i)` with `sigma`'s images substituted for the
//! variables. The chain rule then reads
//! `J(sigma o tau) = sigma(J(tau)) * J(sigma)`. Every module uses this one
//! convention.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{CoefficientField, Elem, Scalar};
use crate::matrix::{self, Matrix};

pub(crate) type Exponents = SmallVec<[u32; 4]>;

/// Exponent vector of a monomial in `n` variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Exponents);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn new(exponents: &[u32]) -> Self {
        Self(Exponents::from_slice(exponents))
    }

    pub fn one(nvars: usize) -> Self {
        Self(smallvec::smallvec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e: Exponents = smallvec::smallvec![0; nvars];
        e[index] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn fmt_with(&self, prefix: &str) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("{prefix}{}", i + 1)),
                e => parts.push(format!("{prefix}{}^{e}", i + 1)),
            }
        }
        parts.join("*")
    }
}

/// Targets of generic substitution: polynomials and truncated elements.
pub(crate) trait SubstTarget: Clone {
    fn zero_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn mul_ref(&self, other: &Self) -> Self;
    /// `self += c * other`
    fn add_scaled(&mut self, other: &Self, c: &Elem);
}

/// `base^e` for every `e` in `needed`, computed by multiplying up through the
/// gaps between consecutive exponents with a binary power ladder.
fn power_table<T: SubstTarget>(base: &T, needed: &BTreeSet<u32>, one: &T) -> HashMap<u32, T> {
    let mut table = HashMap::with_capacity(needed.len());
    let mut ladder: Vec<T> = vec![base.clone()];
    let mut current = one.clone();
    let mut current_exp = 0u32;
    for &e in needed {
        if !current.is_zero_elem() {
            let mut gap = e - current_exp;
            let mut bit = 0usize;
            while gap > 0 {
                while ladder.len() <= bit {
                    let last = ladder.last().unwrap();
                    let sq = last.mul_ref(last);
                    ladder.push(sq);
                }
                if gap & 1 == 1 {
                    current = current.mul_ref(&ladder[bit]);
                }
                gap >>= 1;
                bit += 1;
            }
        }
        current_exp = e;
        table.insert(e, current.clone());
    }
    table
}

/// Substitutes `images[i]` for `x_i` in `f`, evaluating in the ring of `T`.
///
/// Terms are grouped by all exponents except the last one; each group is a
/// linear combination of powers of the last image, so only one product per
/// remaining variable is needed for each group.
pub(crate) fn substitute_generic<T: SubstTarget>(f: &Polynomial, images: &[T], one: &T) -> T {
    let n = f.nvars;
    let mut result = one.zero_like();
    if n == 0 {
        if let Some(c) = f.terms.get(&Monomial::one(0)) {
            result.add_scaled(one, c);
        }
        return result;
    }
    let mut needed: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
    for mon in f.terms.keys() {
        for (i, &e) in mon.0.iter().enumerate() {
            if e > 0 {
                needed[i].insert(e);
            }
        }
    }
    let powers: Vec<HashMap<u32, T>> = (0..n)
        .map(|i| power_table(&images[i], &needed[i], one))
        .collect();
    let last = n - 1;
    let mut groups: BTreeMap<Exponents, T> = BTreeMap::new();
    for (mon, c) in &f.terms {
        let prefix: Exponents = mon.0[..last].iter().copied().collect();
        let e = mon.0[last];
        let p = if e == 0 { one } else { &powers[last][&e] };
        groups
            .entry(prefix)
            .or_insert_with(|| one.zero_like())
            .add_scaled(p, c);
    }
    let unit = f.field.one();
    for (prefix, mut acc) in groups {
        for (i, &e) in prefix.iter().enumerate() {
            if acc.is_zero_elem() {
                break;
            }
            if e > 0 {
                acc = acc.mul_ref(&powers[i][&e]);
            }
        }
        if !acc.is_zero_elem() {
            result.add_scaled(&acc, &unit);
        }
    }
    result
}

/// A polynomial in `nvars` variables; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    field: CoefficientField,
    terms: BTreeMap<Monomial, Elem>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({} over {})", self, self.field)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with("x"))
    }
}

impl SubstTarget for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(&self.field, self.nvars)
    }

    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.mul_filtered(other, |_| true)
    }

    fn add_scaled(&mut self, other: &Self, c: &Elem) {
        if self.field.is_one(c) {
            for (m, v) in &other.terms {
                self.add_term(m.clone(), v.clone());
            }
        } else {
            for (m, v) in &other.terms {
                self.add_term(m.clone(), self.field.mul(v, c));
            }
        }
    }
}

/// Direction of a base-point shift `y_i = x_i - a_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftDirection {
    /// Rewrite `f(x)` in the shifted coordinates `y`.
    ToShifted,
    /// Rewrite a polynomial in `y` back in `x`.
    ToOriginal,
}

impl Polynomial {
    pub fn zero(field: &CoefficientField, nvars: usize) -> Self {
        Self {
            nvars,
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &CoefficientField, nvars: usize) -> Self {
        Self::constant(nvars, &field.one_scalar())
    }

    pub fn constant(nvars: usize, c: &Scalar) -> Self {
        let mut p = Self::zero(c.field(), nvars);
        p.add_term(Monomial::one(nvars), c.elem().clone());
        p
    }

    /// The variable `x_{index+1}`.
    pub fn var(field: &CoefficientField, nvars: usize, index: usize) -> Result<Self> {
        if index >= nvars {
            return Err(Error::IndexOutOfRange { index, nvars });
        }
        let mut p = Self::zero(field, nvars);
        p.add_term(Monomial::var(nvars, index), field.one());
        Ok(p)
    }

    pub fn monomial(nvars: usize, exponents: &[u32], c: &Scalar) -> Result<Self> {
        Self::from_terms(c.field(), nvars, [(exponents.to_vec(), c.clone())])
    }

    pub fn from_terms<I>(field: &CoefficientField, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = Self::zero(field, nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::ArityMismatch {
                    expected: nvars,
                    found: exps.len(),
                });
            }
            if c.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.descriptor(),
                    right: c.field().descriptor(),
                });
            }
            p.add_term(Monomial::new(&exps), c.into_elem());
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &CoefficientField {
        &self.field
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Scalar)> + '_ {
        self.terms
            .iter()
            .map(|(m, c)| (m, self.field.wrap(c.clone())))
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Scalar {
        self.field.wrap(
            self.terms
                .get(&Monomial::new(exponents))
                .cloned()
                .unwrap_or_else(|| self.field.zero()),
        )
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&vec![0; self.nvars])
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term; `None` for zero.
    pub fn min_degree(&self) -> Option<u64> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub(crate) fn add_term(&mut self, mon: Monomial, c: Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(mon) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.field.add(o.get(), &c);
                if self.field.is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub(crate) fn retain(&mut self, mut keep: impl FnMut(&Monomial) -> bool) {
        self.terms.retain(|m, _| keep(m));
    }

    /// Product restricted to monomials accepted by `keep`.
    pub(crate) fn mul_filtered(&self, other: &Self, keep: impl Fn(&Monomial) -> bool) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if keep(&m) {
                    out.add_term(m, self.field.mul(ca, cb));
                }
            }
        }
        out
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.descriptor(),
                right: other.field.descriptor(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &self.field.one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &self.field.from_i64(-1));
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.mul_ref(other))
    }

    pub fn scale(&self, c: &Scalar) -> Result<Polynomial> {
        if c.field() != &self.field {
            return Err(Error::FieldMismatch {
                left: self.field.descriptor(),
                right: c.field().descriptor(),
            });
        }
        let mut out = self.zero_like();
        out.add_scaled(self, c.elem());
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let one = Polynomial::one(&self.field, self.nvars);
        power_table(self, &BTreeSet::from([e]), &one)
            .remove(&e)
            .unwrap_or(one)
    }

    /// Formal partial derivative with respect to `x_{index+1}`.
    pub fn partial(&self, index: usize) -> Result<Polynomial> {
        if index >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        let mut out = self.zero_like();
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[index] -= 1;
            out.add_term(dm, self.field.mul(c, &self.field.from_i64(e as i64)));
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        if let Some(bad) = point.iter().find(|c| c.field() != &self.field) {
            return Err(Error::FieldMismatch {
                left: self.field.descriptor(),
                right: bad.field().descriptor(),
            });
        }
        let elems: Vec<Elem> = point.iter().map(|c| c.elem().clone()).collect();
        Ok(self.field.wrap(self.eval_elems(&elems)))
    }

    pub(crate) fn eval_elems(&self, point: &[Elem]) -> Elem {
        let field = &self.field;
        let mut total = field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    term = field.mul(&term, &field.pow_u128(x, e as u128));
                }
            }
            total = field.add(&total, &term);
        }
        total
    }

    /// Substitutes `images[i]` for `x_{i+1}`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        for img in images {
            if img.field != self.field {
                return Err(Error::FieldMismatch {
                    left: self.field.descriptor(),
                    right: img.field.descriptor(),
                });
            }
            if img.nvars != first.nvars {
                return Err(Error::ArityMismatch {
                    expected: first.nvars,
                    found: img.nvars,
                });
            }
        }
        let one = Polynomial::one(&self.field, first.nvars);
        Ok(substitute_generic(self, images, &one))
    }

    /// Rewrites the polynomial in the coordinates `y_i = x_i - a_i`
    /// (`ToShifted`), or back (`ToOriginal`). The result uses the same
    /// variable slots.
    pub fn shift(&self, basepoint: &[Scalar], direction: ShiftDirection) -> Result<Polynomial> {
        if basepoint.len() != self.nvars {
            return Err(Error::ArityMismatch {
                expected: self.nvars,
                found: basepoint.len(),
            });
        }
        if basepoint.iter().all(Scalar::is_zero) {
            if let Some(bad) = basepoint.iter().find(|c| c.field() != &self.field) {
                return Err(Error::FieldMismatch {
                    left: self.field.descriptor(),
                    right: bad.field().descriptor(),
                });
            }
            return Ok(self.clone());
        }
        let images = basepoint
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let v = Polynomial::var(&self.field, self.nvars, i)?;
                let c = Polynomial::constant(self.nvars, a);
                match direction {
                    // f(x) = f(y + a)
                    ShiftDirection::ToShifted => v.try_add(&c),
                    ShiftDirection::ToOriginal => v.try_sub(&c),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        self.substitute(&images)
    }

    /// Embeds the coefficients into `target` (identity or prime field into
    /// an extension of the same characteristic).
    pub fn change_field(&self, target: &CoefficientField) -> Result<Polynomial> {
        if target == &self.field {
            return Ok(self.clone());
        }
        let mut out = Polynomial::zero(target, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), target.embed_from(&self.field, c)?);
        }
        Ok(out)
    }

    /// Text form with variables named `{prefix}1, {prefix}2, ...`.
    pub fn fmt_with(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let single = self.terms.len() == 1;
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = self.field.elem_is_negative(c);
            let magnitude = if negative { self.field.neg(c) } else { c.clone() };
            let coeff = self.field.fmt_elem(&magnitude);
            let mono = m.fmt_with(prefix);
            let body = if mono.is_empty() {
                if self.field.elem_is_compound(&magnitude) && !single {
                    format!("({coeff})")
                } else {
                    coeff
                }
            } else if self.field.is_one(&magnitude) {
                mono
            } else if self.field.elem_is_compound(&magnitude) {
                format!("({coeff})*{mono}")
            } else {
                format!("{coeff}*{mono}")
            };
            match (k, negative) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl std::ops::$trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("incompatible polynomials")
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let mut out = self.zero_like();
        out.add_scaled(self, &self.field.from_i64(-1));
        out
    }
}

/// Result of the Jacobian hypothesis check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianCheck {
    /// True iff the determinant is a nonzero constant.
    pub is_constant_unit: bool,
    pub value: Polynomial,
}

/// An endomorphism of `k[x1..xn]`, given by the images of the variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyEndo {
    images: Vec<Polynomial>,
}

impl fmt::Display for PolyEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, img) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "x{} -> {}", i + 1, img)?;
        }
        Ok(())
    }
}

impl PolyEndo {
    pub fn new(images: Vec<Polynomial>) -> Result<Self> {
        let n = images.len();
        let Some(first) = images.first() else {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: 0,
            });
        };
        for img in &images {
            if img.nvars != n {
                return Err(Error::ArityMismatch {
                    expected: n,
                    found: img.nvars,
                });
            }
            if img.field != first.field {
                return Err(Error::FieldMismatch {
                    left: first.field.descriptor(),
                    right: img.field.descriptor(),
                });
            }
        }
        Ok(Self { images })
    }

    pub fn identity(field: &CoefficientField, nvars: usize) -> Self {
        Self {
            images: (0..nvars)
                .map(|i| Polynomial::var(field, nvars, i).expect("index in range"))
                .collect(),
        }
    }

    /// `x_i -> x_i + v_i`.
    pub fn translation(offset: &[Scalar]) -> Result<Self> {
        let field = offset
            .first()
            .ok_or(Error::ArityMismatch {
                expected: 1,
                found: 0,
            })?
            .field()
            .clone();
        let n = offset.len();
        let images = offset
            .iter()
            .enumerate()
            .map(|(i, v)| Polynomial::var(&field, n, i)?.try_add(&Polynomial::constant(n, v)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    /// `x_i -> sum_j m[i][j] x_j`.
    pub fn linear(m: &[Vec<Scalar>]) -> Result<Self> {
        let n = m.len();
        let field = m
            .first()
            .and_then(|r| r.first())
            .ok_or(Error::ArityMismatch {
                expected: 1,
                found: 0,
            })?
            .field()
            .clone();
        let images = m
            .iter()
            .map(|row| {
                if row.len() != n {
                    return Err(Error::ArityMismatch {
                        expected: n,
                        found: row.len(),
                    });
                }
                let mut img = Polynomial::zero(&field, n);
                for (j, c) in row.iter().enumerate() {
                    img = img.try_add(&Polynomial::var(&field, n, j)?.scale(c)?)?;
                }
                Ok(img)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn field(&self) -> &CoefficientField {
        &self.images[0].field
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, index: usize) -> Option<&Polynomial> {
        self.images.get(index)
    }

    pub fn into_images(self) -> Vec<Polynomial> {
        self.images
    }

    /// Largest total degree among the images (0 when all are constant or zero).
    pub fn degree(&self) -> u64 {
        self.images
            .iter()
            .filter_map(Polynomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.field(), self.nvars())
    }

    /// Applies the ring map to `f`: substitutes the images into `f`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        f.substitute(&self.images)
    }

    /// `self o other`, i.e. `f -> self(other(f))`.
    pub fn compose(&self, other: &PolyEndo) -> Result<PolyEndo> {
        if self.nvars() != other.nvars() {
            return Err(Error::ArityMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        let images = other
            .images
            .iter()
            .map(|g| self.apply(g))
            .collect::<Result<Vec<_>>>()?;
        PolyEndo::new(images)
    }

    /// The point map `c -> (f_1(c), ..., f_n(c))`.
    pub fn eval_point(&self, point: &[Scalar]) -> Result<Vec<Scalar>> {
        self.images.iter().map(|f| f.eval(point)).collect()
    }

    pub fn change_field(&self, target: &CoefficientField) -> Result<PolyEndo> {
        Ok(Self {
            images: self
                .images
                .iter()
                .map(|f| f.change_field(target))
                .collect::<Result<Vec<_>>>()?,
        })
    }

    /// `J[i][j] = d(image_i)/dx_j`.
    pub fn jacobian(&self) -> Matrix<Polynomial> {
        self.images
            .iter()
            .map(|f| {
                (0..self.nvars())
                    .map(|j| f.partial(j).expect("index in range"))
                    .collect()
            })
            .collect()
    }

    pub fn jacobian_det(&self) -> Polynomial {
        matrix::determinant(&self.jacobian(), &Polynomial::one(self.field(), self.nvars()))
    }

    pub fn jacobian_constant_check(&self) -> JacobianCheck {
        let value = self.jacobian_det();
        JacobianCheck {
            is_constant_unit: value.is_constant() && !value.is_zero(),
            value,
        }
    }
}
