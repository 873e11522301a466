//! Endomorphisms of truncated rings and their inversion.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{self, Matrix};
use crate::poly::{substitute_generic, Polynomial};
use crate::trunc::{TruncatedElement, TruncationSpec};

/// A ring endomorphism of a truncated ring, given by the images of
/// `y_1, ..., y_n`. Images have zero constant term, so the maximal ideal is
/// preserved and the map is well defined on the quotient.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedEndo {
    spec: TruncationSpec,
    images: Vec<TruncatedElement>,
}

/// Outcome of the automorphism criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismVerdict {
    pub is_automorphism: bool,
    /// `c_ij`: coefficient of `y_j` in the image of `y_i`.
    pub linear_part: Matrix<Scalar>,
    pub linear_det: Scalar,
    pub jacobian_det: TruncatedElement,
    /// Whether `jacobian_det` is a unit of the truncated ring.
    pub determinant_is_unit: bool,
}

impl fmt::Debug for TruncatedEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedEndo({} in {})", self, self.spec)
    }
}

impl fmt::Display for TruncatedEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, img) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "y{} -> {}", i + 1, img)?;
        }
        Ok(())
    }
}

impl TruncatedEndo {
    pub fn new(spec: &TruncationSpec, images: Vec<TruncatedElement>) -> Result<Self> {
        if images.len() != spec.nvars() {
            return Err(Error::ArityMismatch {
                expected: spec.nvars(),
                found: images.len(),
            });
        }
        for (i, img) in images.iter().enumerate() {
            if img.spec() != spec {
                return Err(Error::SpecMismatch);
            }
            if !img.constant_term().is_zero() {
                return Err(Error::ConstantTermNonzero { index: i + 1 });
            }
        }
        Ok(Self {
            spec: spec.clone(),
            images,
        })
    }

    /// Images given as polynomials in `y` coordinates, normal-formed first.
    pub fn from_polys(spec: &TruncationSpec, images: &[Polynomial]) -> Result<Self> {
        let images = images
            .iter()
            .map(|f| spec.normal_form(f))
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec, images)
    }

    pub fn identity(spec: &TruncationSpec) -> Self {
        let images = (0..spec.nvars())
            .map(|i| TruncatedElement::generator(spec, i).expect("index in range"))
            .collect();
        Self {
            spec: spec.clone(),
            images,
        }
    }

    /// `y_i -> sum_j m[i][j] y_j`.
    pub fn linear(spec: &TruncationSpec, m: &[Vec<Scalar>]) -> Result<Self> {
        let n = spec.nvars();
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(Error::ArityMismatch {
                expected: n,
                found: m.len(),
            });
        }
        let gens: Vec<TruncatedElement> = (0..n)
            .map(|j| TruncatedElement::generator(spec, j))
            .collect::<Result<_>>()?;
        let images = m
            .iter()
            .map(|row| {
                row.iter().zip(&gens).try_fold(TruncatedElement::zero(spec), |acc, (c, g)| {
                    acc.try_add(&g.scale(c)?)
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec, images)
    }

    pub fn spec(&self) -> &TruncationSpec {
        &self.spec
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[TruncatedElement] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.spec)
    }

    /// Largest total degree among the image representatives.
    pub fn degree(&self) -> u64 {
        self.images
            .iter()
            .filter_map(|img| img.rep().total_degree())
            .max()
            .unwrap_or(0)
    }

    /// `u(y) -> u(sigma(y_1), ..., sigma(y_n))`.
    pub fn apply(&self, u: &TruncatedElement) -> Result<TruncatedElement> {
        if u.spec() != &self.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(self.apply_unchecked(u))
    }

    fn apply_unchecked(&self, u: &TruncatedElement) -> TruncatedElement {
        substitute_generic(u.rep(), &self.images, &TruncatedElement::one(&self.spec))
    }

    /// `self ∘ other`: the image of `y_i` is `self` applied to `other`'s
    /// `i`-th image.
    pub fn compose(&self, other: &TruncatedEndo) -> Result<TruncatedEndo> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(Self {
            spec: self.spec.clone(),
            images: other.images.iter().map(|g| self.apply_unchecked(g)).collect(),
        })
    }

    /// `J[i][j] = d(image_i)/dy_j`, normal-formed.
    pub fn jacobian(&self) -> Matrix<TruncatedElement> {
        self.images
            .iter()
            .map(|img| {
                (0..self.nvars())
                    .map(|j| {
                        let d = img.rep().partial(j).expect("index in range");
                        self.spec.normal_form(&d).expect("same ring")
                    })
                    .collect()
            })
            .collect()
    }

    pub fn det(&self) -> TruncatedElement {
        matrix::determinant(&self.jacobian(), &TruncatedElement::one(&self.spec))
    }

    pub fn linear_part(&self) -> Matrix<Scalar> {
        let n = self.nvars();
        self.images
            .iter()
            .map(|img| {
                (0..n)
                    .map(|j| {
                        let mut e = vec![0u32; n];
                        e[j] = 1;
                        img.rep().coefficient(&e)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn verdict(&self) -> AutomorphismVerdict {
        let linear_part = self.linear_part();
        let linear_det = matrix::determinant(&linear_part, &self.spec.field().one_scalar());
        let jacobian_det = self.det();
        let determinant_is_unit = jacobian_det.is_unit();
        AutomorphismVerdict {
            is_automorphism: !linear_det.is_zero(),
            linear_part,
            linear_det,
            jacobian_det,
            determinant_is_unit,
        }
    }

    pub fn is_automorphism(&self) -> bool {
        let lin = self.linear_part();
        !matrix::determinant(&lin, &self.spec.field().one_scalar()).is_zero()
    }

    /// Connecting projection to a coarser truncation of the same ring.
    pub fn project(&self, coarser: &TruncationSpec) -> Result<TruncatedEndo> {
        let images = self
            .images
            .iter()
            .map(|img| img.project(coarser))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coarser, images)
    }

    /// Upper bound on the correction rounds used by [`Self::invert`].
    pub fn round_bound(&self) -> usize {
        let n = self.spec.nilpotency_index().max(1);
        (64 - (n - 1).leading_zeros()) as usize + 1
    }

    pub fn invert(&self) -> Result<TruncatedEndo> {
        self.invert_with_rounds().map(|(inv, _)| inv)
    }

    /// Two-sided inverse plus the number of correction rounds used.
    ///
    /// Starts from the inverse of the linear part, then repeatedly cancels
    /// the lowest-order error: if `tau ∘ sigma` sends `y_i` to `y_i + v_i`,
    /// composing with `y_i -> y_i - v_i` leaves an error of order at least
    /// `2d - 1` when `v` has order `d`.
    pub fn invert_with_rounds(&self) -> Result<(TruncatedEndo, usize)> {
        let inv_linear = matrix::invert_scalar_matrix(&self.linear_part())
            .ok_or(Error::NotAnAutomorphism)?;
        let mut tau = Self::linear(&self.spec, &inv_linear)?;
        let mut rho = tau.compose(self)?;
        let gens: Vec<TruncatedElement> = Self::identity(&self.spec).images;
        let bound = self.round_bound();
        let mut rounds = 0;
        loop {
            let errors: Vec<TruncatedElement> = rho
                .images
                .iter()
                .zip(&gens)
                .map(|(r, g)| r - g)
                .collect();
            if errors.iter().all(TruncatedElement::is_zero) {
                break;
            }
            if rounds >= bound {
                return Err(Error::NotAnAutomorphism);
            }
            let kappa = Self {
                spec: self.spec.clone(),
                images: gens.iter().zip(&errors).map(|(g, v)| g - v).collect(),
            };
            tau = kappa.compose(&tau)?;
            rho = kappa.compose(&rho)?;
            rounds += 1;
        }
        if !self.compose(&tau)?.is_identity() {
            return Err(Error::NotAnAutomorphism);
        }
        Ok((tau, rounds))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoefficientField;
    use crate::parse::parse_polynomial;

    fn spec(p: u64, n: usize, s: u32) -> TruncationSpec {
        let f = CoefficientField::prime(p).unwrap();
        TruncationSpec::frobenius(&f, n, vec![f.zero_scalar(); n], s).unwrap()
    }

    fn endo(spec: &TruncationSpec, images: &[&str]) -> TruncatedEndo {
        let polys: Vec<Polynomial> = images
            .iter()
            .map(|t| parse_polynomial(t, spec.field(), spec.nvars()).unwrap())
            .collect();
        TruncatedEndo::from_polys(spec, &polys).unwrap()
    }

    #[test]
    fn construction() {
        let s = spec(2, 1, 2);
        assert!(endo(&s, &["x1"]).is_identity());
        endo(&s, &["x1 + x1^2"]);
        let bad = parse_polynomial("x1 + 1", s.field(), 1).unwrap();
        assert_eq!(
            TruncatedEndo::from_polys(&s, &[bad]),
            Err(Error::ConstantTermNonzero { index: 1 })
        );
        let zero = endo(&s, &["0"]);
        assert!(!zero.is_automorphism());
    }

    #[test]
    fn composition_examples() {
        let s = spec(2, 1, 2);
        let sigma = endo(&s, &["x1 + x1^2"]);
        let id = TruncatedEndo::identity(&s);
        assert_eq!(id.compose(&sigma).unwrap(), sigma);
        assert!(sigma.compose(&sigma).unwrap().is_identity());
        let sq = endo(&s, &["x1^2"]);
        let u = TruncatedElement::generator(&s, 0).unwrap();
        assert_eq!(sq.apply(&u).unwrap().to_string(), "y1^2");
        assert_eq!(sigma.compose(&endo(&spec(2, 1, 1), &["x1"])), Err(Error::SpecMismatch));
    }

    #[test]
    fn jacobian_examples() {
        let s = spec(2, 1, 2);
        assert_eq!(TruncatedEndo::identity(&s).det(), TruncatedElement::one(&s));
        assert_eq!(endo(&s, &["x1 + x1^2"]).det(), TruncatedElement::one(&s));
        let swap = endo(&spec(3, 2, 1), &["x2", "x1"]);
        let v = swap.verdict();
        assert_eq!(v.linear_det, CoefficientField::prime(3).unwrap().scalar(-1));
        assert!(v.is_automorphism && v.determinant_is_unit);
    }

    #[test]
    fn verdict_examples() {
        assert!(!endo(&spec(2, 1, 2), &["x1^2"]).verdict().is_automorphism);
        let s = spec(2, 2, 1);
        let v = endo(&s, &["x1 + x1*x2", "x2"]).verdict();
        assert!(v.is_automorphism);
        assert!(v.determinant_is_unit);
        assert_eq!(v.jacobian_det.to_string(), "1 + y2");
    }

    #[test]
    fn inversion_examples() {
        let s = spec(2, 1, 2);
        let id = TruncatedEndo::identity(&s);
        assert_eq!(id.invert_with_rounds().unwrap(), (id.clone(), 0));
        let sigma = endo(&s, &["x1 + x1^2"]);
        assert_eq!(sigma.invert().unwrap(), sigma);
        let s3 = spec(3, 1, 1);
        let dbl = endo(&s3, &["2*x1"]);
        assert_eq!(dbl.invert().unwrap(), dbl);
        assert_eq!(endo(&s, &["x1^2"]).invert(), Err(Error::NotAnAutomorphism));
    }

    #[test]
    fn inversion_in_madic_ring() {
        let q = CoefficientField::rational();
        let s = TruncationSpec::madic(&q, 2, vec![q.zero_scalar(); 2], 6).unwrap();
        let polys: Vec<Polynomial> = ["2*x1 + x2^2 - x1*x2", "x2 + 1/3*x1^3"]
            .iter()
            .map(|t| parse_polynomial(t, &q, 2).unwrap())
            .collect();
        let sigma = TruncatedEndo::from_polys(&s, &polys).unwrap();
        let (tau, rounds) = sigma.invert_with_rounds().unwrap();
        assert!(rounds <= sigma.round_bound());
        assert!(tau.compose(&sigma).unwrap().is_identity());
        assert!(sigma.compose(&tau).unwrap().is_identity());
    }
}
