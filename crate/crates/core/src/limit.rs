//! Projection of polynomial endomorphisms to truncation levels, coherent
//! families across levels, and lifting truncated inverses to an exact
//! polynomial inverse.

use crate::endo::TruncatedEndo;
use crate::error::{Error, Result};
use crate::field::{CoefficientField, Scalar};
use crate::poly::{PolyEndo, Polynomial, ShiftDirection};
use crate::points;
use crate::trunc::{TruncationKind, TruncationSpec};

/// Which family of truncations indexes the levels `s = 1, 2, ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ladder {
    /// Frobenius truncation at level `s`; needs positive characteristic.
    Frobenius,
    /// m-adic truncation of order `base * 2^(s-1)`.
    MAdic { base: u32 },
}

impl Ladder {
    /// Frobenius in positive characteristic, m-adic orders `2^s` otherwise.
    pub fn for_field(field: &CoefficientField) -> Self {
        if field.characteristic() > 0 {
            Ladder::Frobenius
        } else {
            Ladder::MAdic { base: 2 }
        }
    }

    pub fn kind_at(&self, level: u32) -> Result<TruncationKind> {
        if level == 0 {
            return Err(Error::InvalidLevel("levels start at 1".into()));
        }
        match *self {
            Ladder::Frobenius => Ok(TruncationKind::Frobenius { level }),
            Ladder::MAdic { base } => {
                let order = 1u32
                    .checked_shl(level - 1)
                    .and_then(|f| f.checked_mul(base))
                    .ok_or_else(|| Error::InvalidLevel(format!("level {level} is too large")))?;
                Ok(TruncationKind::MAdic { order })
            }
        }
    }

    pub fn spec_at(
        &self,
        field: &CoefficientField,
        basepoint: &[Scalar],
        level: u32,
    ) -> Result<TruncationSpec> {
        let n = basepoint.len();
        match self.kind_at(level)? {
            TruncationKind::Frobenius { level } => {
                TruncationSpec::frobenius(field, n, basepoint.to_vec(), level)
            }
            TruncationKind::MAdic { order } => {
                TruncationSpec::madic(field, n, basepoint.to_vec(), order)
            }
        }
    }
}

fn check_fixes(phi: &PolyEndo, a: &[Scalar]) -> Result<()> {
    if a.len() != phi.nvars() {
        return Err(Error::ArityMismatch {
            expected: phi.nvars(),
            found: a.len(),
        });
    }
    let image = phi.eval_point(a)?;
    match image.iter().zip(a).position(|(u, v)| u != v) {
        Some(i) => Err(Error::BasePointNotFixed { index: i + 1 }),
        None => Ok(()),
    }
}

/// The truncated endomorphism induced by `phi` on `spec`: the image of
/// `y_i` is `phi_i(y + a) - a_i`.
pub fn project_to_spec(phi: &PolyEndo, spec: &TruncationSpec) -> Result<TruncatedEndo> {
    if phi.field() != spec.field() {
        return Err(Error::FieldMismatch {
            left: spec.field().descriptor(),
            right: phi.field().descriptor(),
        });
    }
    let a = spec.basepoint();
    check_fixes(phi, a)?;
    let images = phi
        .images()
        .iter()
        .zip(a)
        .map(|(f, ai)| {
            let shifted = f.shift(a, ShiftDirection::ToShifted)?;
            shifted.try_sub(&Polynomial::constant(phi.nvars(), ai))
        })
        .collect::<Result<Vec<_>>>()?;
    TruncatedEndo::from_polys(spec, &images)
}

/// `phi` at truncation level `level` around `a`.
pub fn project_endo(phi: &PolyEndo, a: &[Scalar], level: u32, ladder: Ladder) -> Result<TruncatedEndo> {
    check_fixes(phi, a)?;
    project_to_spec(phi, &ladder.spec_at(phi.field(), a, level)?)
}

/// The projections of one polynomial endomorphism to levels `1..=S`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoherentFamily {
    pub base: PolyEndo,
    pub basepoint: Vec<Scalar>,
    pub ladder: Ladder,
    /// `levels[s - 1]` lives at level `s`.
    pub levels: Vec<TruncatedEndo>,
}

pub fn build_family(phi: &PolyEndo, a: &[Scalar], max_level: u32, ladder: Ladder) -> Result<CoherentFamily> {
    check_fixes(phi, a)?;
    let levels = (1..=max_level)
        .map(|s| project_endo(phi, a, s, ladder))
        .collect::<Result<Vec<_>>>()?;
    let family = CoherentFamily {
        base: phi.clone(),
        basepoint: a.to_vec(),
        ladder,
        levels,
    };
    if !check_coherence(&family) {
        return Err(Error::IncoherentFamily);
    }
    Ok(family)
}

/// Every pair of levels `s < t` is related by the connecting projection and
/// every level is the direct projection of the base map.
pub fn check_coherence(family: &CoherentFamily) -> bool {
    let levels = &family.levels;
    for (s, lower) in levels.iter().enumerate() {
        match project_to_spec(&family.base, lower.spec()) {
            Ok(direct) if direct == *lower => {}
            _ => return false,
        }
        for higher in &levels[s + 1..] {
            match higher.project(lower.spec()) {
                Ok(down) if down == *lower => {}
                _ => return false,
            }
        }
    }
    true
}

/// A map conjugated by translations so that it fixes the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct Normalization {
    /// `psi(x) = phi(x + c) - a`; fixes the origin.
    pub map: PolyEndo,
    /// The requested point `a`.
    pub target: Vec<Scalar>,
    /// A point `c` with `Phi(c) = a`.
    pub image_point: Vec<Scalar>,
}

impl Normalization {
    /// Turns an inverse of `map` into an inverse of the original map.
    pub fn pull_back(&self, map_inverse: &PolyEndo) -> Result<PolyEndo> {
        let neg_target: Vec<Scalar> = self.target.iter().map(|v| -v).collect();
        let to_target = PolyEndo::translation(&neg_target)?;
        let from_image = PolyEndo::translation(&self.image_point)?;
        to_target.compose(&map_inverse.compose(&from_image)?)
    }
}

const RATIONAL_SEARCH_POINTS: usize = 10_000;

/// Finds `c` with `Phi(c) = a` and conjugates `phi` so it fixes the origin.
///
/// `c = a` is tried first. Over finite fields the remaining points are
/// enumerated in canonical order; over the rationals only a bounded box of
/// small integer points is searched.
pub fn translate_normalize(phi: &PolyEndo, a: &[Scalar]) -> Result<Normalization> {
    let n = phi.nvars();
    if a.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: a.len(),
        });
    }
    let field = phi.field();
    let c = if phi.eval_point(a)? == a {
        a.to_vec()
    } else if field.is_finite() {
        points::maximal_ideal_image(phi, a, field)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::NoRationalImagePoint(point_text(a)))?
    } else {
        rational_search(phi, a)?.ok_or_else(|| Error::NoRationalImagePoint(point_text(a)))?
    };
    let neg_a: Vec<Scalar> = a.iter().map(|v| -v).collect();
    let map = PolyEndo::translation(&c)?.compose(&phi.compose(&PolyEndo::translation(&neg_a)?)?)?;
    Ok(Normalization {
        map,
        target: a.to_vec(),
        image_point: c,
    })
}

fn point_text(a: &[Scalar]) -> String {
    let coords: Vec<String> = a.iter().map(|c| c.to_string()).collect();
    format!("({})", coords.join(", "))
}

fn rational_search(phi: &PolyEndo, a: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    let n = phi.nvars();
    let field = phi.field();
    let mut radius = 0i64;
    while (2 * radius + 3).checked_pow(n as u32).is_some_and(|c| c as usize <= RATIONAL_SEARCH_POINTS) {
        radius += 1;
    }
    let side = (2 * radius + 1) as usize;
    let total = side.pow(n as u32);
    for mut idx in 0..total {
        let mut point = vec![field.zero_scalar(); n];
        for coord in point.iter_mut().rev() {
            *coord = field.scalar((idx % side) as i64 - radius);
            idx /= side;
        }
        if phi.eval_point(&point)? == a {
            return Ok(Some(point));
        }
    }
    Ok(None)
}

/// Knobs for [`lift_invert`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftOptions {
    pub max_level: u32,
    /// Stop once a candidate's degree exceeds this; `None` means
    /// `deg(phi)^n`.
    pub degree_bound: Option<u64>,
    /// `None` picks [`Ladder::for_field`].
    pub ladder: Option<Ladder>,
}

impl Default for LiftOptions {
    fn default() -> Self {
        Self {
            max_level: 6,
            degree_bound: None,
            ladder: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InversionOutcome {
    /// `inverse` was verified to be a two-sided inverse over the polynomial
    /// ring.
    Stabilized { inverse: PolyEndo, level: u32 },
    /// No verified inverse up to `max_level`; inconclusive.
    NotStabilized {
        max_level: u32,
        last_candidate: PolyEndo,
        candidate_degrees: Vec<u64>,
    },
}

impl InversionOutcome {
    pub fn is_stabilized(&self) -> bool {
        matches!(self, InversionOutcome::Stabilized { .. })
    }
}

/// Reads a truncated inverse as a polynomial map in `x` coordinates:
/// `x_i -> g_i(x - a) + a_i`.
fn candidate_from(tau: &TruncatedEndo) -> Result<PolyEndo> {
    let a = tau.spec().basepoint();
    let images = tau
        .images()
        .iter()
        .zip(a)
        .map(|(g, ai)| {
            g.rep()
                .shift(a, ShiftDirection::ToOriginal)?
                .try_add(&Polynomial::constant(a.len(), ai))
        })
        .collect::<Result<Vec<_>>>()?;
    PolyEndo::new(images)
}

fn default_degree_bound(phi: &PolyEndo) -> u64 {
    phi.degree().max(1).saturating_pow(phi.nvars() as u32)
}

/// Inverts `phi` level by level and tries to certify each truncated inverse
/// as an exact polynomial inverse.
pub fn lift_invert(phi: &PolyEndo, a: &[Scalar], options: &LiftOptions) -> Result<InversionOutcome> {
    let check = phi.jacobian_constant_check();
    if !check.is_constant_unit {
        return Err(Error::JacobianNotConstantUnit(check.value.to_string()));
    }
    check_fixes(phi, a)?;
    if options.max_level == 0 {
        return Err(Error::InvalidLevel("max level must be at least 1".into()));
    }
    let ladder = options.ladder.unwrap_or_else(|| Ladder::for_field(phi.field()));
    let bound = options.degree_bound.unwrap_or_else(|| default_degree_bound(phi));
    let identity = PolyEndo::identity(phi.field(), phi.nvars());
    let mut degrees = Vec::new();
    let mut level = 1;
    loop {
        let sigma = project_endo(phi, a, level, ladder)?;
        let candidate = candidate_from(&sigma.invert()?)?;
        let degree = candidate.degree();
        degrees.push(degree);
        if degree <= bound
            && phi.compose(&candidate)? == identity
            && candidate.compose(phi)? == identity
        {
            return Ok(InversionOutcome::Stabilized {
                inverse: candidate,
                level,
            });
        }
        if level >= options.max_level || degree > bound {
            return Ok(InversionOutcome::NotStabilized {
                max_level: level,
                last_candidate: candidate,
                candidate_degrees: degrees,
            });
        }
        level += 1;
    }
}
