//! The point map of a polynomial endomorphism over finite fields.
//!
//! A ring endomorphism `phi` of `k[x1..xn]` induces the point map
//! `Phi(c) = (phi(x_1)(c), ..., phi(x_n)(c))`, and `phi(m_a)` lies in `m_c`
//! exactly when `Phi(c) = a`. Everything here is brute-force enumeration of
//! `F_q^n`, so domains are capped at [`DOMAIN_LIMIT`] points.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{CoefficientField, Elem, Scalar};
use crate::poly::PolyEndo;

pub const DOMAIN_LIMIT: u128 = 1_000_000;

pub type Point = Vec<Scalar>;

/// Brute-force description of the point map on `F_q^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMapReport {
    /// Descriptor of the field the points live in.
    pub field: String,
    pub nvars: usize,
    pub domain_size: u128,
    pub injective: bool,
    pub surjective: bool,
    pub image_size: u128,
    /// Points with `Phi(c) = c`, in canonical order.
    pub fixed_points: Vec<Point>,
    /// For every point in the image, its preimages; both levels in
    /// canonical order. Present only when requested.
    pub fibers: Option<Vec<(Point, Vec<Point>)>>,
}

/// Number of points of `F_q^n`, checked against [`DOMAIN_LIMIT`].
pub fn domain_size(field: &CoefficientField, nvars: usize) -> Result<u128> {
    let q = field.order().ok_or(Error::InfiniteField)?;
    match q.checked_pow(nvars as u32) {
        Some(s) if s <= DOMAIN_LIMIT => Ok(s),
        other => Err(Error::DomainTooLarge {
            size: other.unwrap_or(u128::MAX),
            limit: DOMAIN_LIMIT,
        }),
    }
}

/// The `index`-th point of `F_q^n` in canonical (lexicographic) order, with
/// the first coordinate most significant.
pub fn point_at(field: &CoefficientField, nvars: usize, index: u64) -> Point {
    point_elems(field, nvars, index)
        .into_iter()
        .map(|e| field.wrap(e))
        .collect()
}

fn point_elems(field: &CoefficientField, nvars: usize, mut index: u64) -> Vec<Elem> {
    let q = field.order().expect("finite field") as u64;
    let mut coords = vec![field.zero(); nvars];
    for c in coords.iter_mut().rev() {
        *c = field.elem_from_index(index % q);
        index /= q;
    }
    coords
}

fn index_of_point(field: &CoefficientField, coords: &[Elem]) -> u64 {
    let q = field.order().expect("finite field") as u64;
    coords.iter().fold(0, |acc, c| acc * q + field.index_of(c))
}

/// All points of `F_q^n` in canonical order.
pub fn all_points(field: &CoefficientField, nvars: usize) -> Result<Vec<Point>> {
    let size = domain_size(field, nvars)? as u64;
    Ok((0..size).map(|i| point_at(field, nvars, i)).collect())
}

/// `Phi(c)`. The coefficients of `phi` are embedded into the field of `c`
/// when that is an extension of their prime field.
pub fn point_map_eval(phi: &PolyEndo, c: &[Scalar]) -> Result<Point> {
    if c.len() != phi.nvars() {
        return Err(Error::ArityMismatch {
            expected: phi.nvars(),
            found: c.len(),
        });
    }
    let Some(first) = c.first() else {
        return phi.eval_point(c);
    };
    phi.change_field(first.field())?.eval_point(c)
}

/// Image index of every domain point, in canonical order.
fn image_table(phi: &PolyEndo, field: &CoefficientField) -> Result<Vec<u64>> {
    let n = phi.nvars();
    let size = domain_size(field, n)? as u64;
    let phi = phi.change_field(field)?;
    let table = (0..size)
        .into_par_iter()
        .map(|i| {
            let coords = point_elems(field, n, i);
            let image: Vec<Elem> = phi.images().iter().map(|f| f.eval_elems(&coords)).collect();
            index_of_point(field, &image)
        })
        .collect();
    Ok(table)
}

pub fn enumerate_report(phi: &PolyEndo, field: &CoefficientField, with_fibers: bool) -> Result<PointMapReport> {
    let n = phi.nvars();
    let table = image_table(phi, field)?;
    let size = table.len();
    let mut counts = vec![0u32; size];
    for &img in &table {
        counts[img as usize] += 1;
    }
    let image_size = counts.iter().filter(|&&c| c > 0).count() as u128;
    let fixed_points = table
        .iter()
        .enumerate()
        .filter(|(i, &img)| *i as u64 == img)
        .map(|(i, _)| point_at(field, n, i as u64))
        .collect();
    let fibers = with_fibers.then(|| {
        let mut preimages: Vec<Vec<u64>> = vec![Vec::new(); size];
        for (i, &img) in table.iter().enumerate() {
            preimages[img as usize].push(i as u64);
        }
        preimages
            .into_iter()
            .enumerate()
            .filter(|(_, pre)| !pre.is_empty())
            .map(|(img, pre)| {
                (
                    point_at(field, n, img as u64),
                    pre.into_iter().map(|i| point_at(field, n, i)).collect(),
                )
            })
            .collect()
    });
    let full = image_size == size as u128;
    Ok(PointMapReport {
        field: field.descriptor(),
        nvars: n,
        domain_size: size as u128,
        injective: full,
        surjective: full,
        image_size,
        fixed_points,
        fibers,
    })
}

/// All `c` in `F_q^n` with `Phi(c) = a`, in canonical order; equivalently
/// the rational maximal ideals `m_c` containing `phi(m_a)`.
pub fn maximal_ideal_image(phi: &PolyEndo, a: &[Scalar], field: &CoefficientField) -> Result<Vec<Point>> {
    let n = phi.nvars();
    if a.len() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            found: a.len(),
        });
    }
    let target: Vec<Elem> = a
        .iter()
        .map(|v| v.embed_into(field).map(Scalar::into_elem))
        .collect::<Result<_>>()?;
    let target = index_of_point(field, &target);
    let table = image_table(phi, field)?;
    Ok(table
        .iter()
        .enumerate()
        .filter(|(_, &img)| img == target)
        .map(|(i, _)| point_at(field, n, i as u64))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn map(field: &CoefficientField, n: usize, images: &[&str]) -> PolyEndo {
        PolyEndo::new(
            images
                .iter()
                .map(|t| parse_polynomial(t, field, n).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        let f3 = CoefficientField::prime(3).unwrap();
        assert_eq!(
            point_map_eval(&map(&f3, 1, &["2*x1"]), &[f3.scalar(2)]).unwrap(),
            vec![f3.scalar(1)]
        );
        let f2 = CoefficientField::prime(2).unwrap();
        let phi = map(&f2, 1, &["x1 + x1^2"]);
        assert_eq!(point_map_eval(&phi, &[f2.one_scalar()]).unwrap(), vec![f2.zero_scalar()]);
        let f4 = CoefficientField::galois(2, 2).unwrap();
        let t = f4.generator().unwrap();
        // t + t^2 = t + t + 1 = 1
        assert_eq!(point_map_eval(&phi, &[t]).unwrap(), vec![f4.one_scalar()]);
    }

    #[test]
    fn report_examples() {
        let f2 = CoefficientField::prime(2).unwrap();
        let r = enumerate_report(&map(&f2, 1, &["x1 + x1^2"]), &f2, true).unwrap();
        assert_eq!(r.image_size, 1);
        assert!(!r.injective && !r.surjective);
        assert_eq!(r.fixed_points, vec![vec![f2.zero_scalar()]]);
        let fibers = r.fibers.unwrap();
        assert_eq!(fibers.len(), 1);
        assert_eq!(fibers[0].1.len(), 2);

        let f3 = CoefficientField::prime(3).unwrap();
        let r = enumerate_report(&map(&f3, 1, &["x1 + x1^3"]), &f3, false).unwrap();
        assert!(r.injective && r.surjective);
        let f9 = CoefficientField::galois(3, 2).unwrap();
        let r = enumerate_report(&map(&f3, 2, &["x2", "x1 + x2"]), &f9, false).unwrap();
        assert_eq!(r.domain_size, 81);
        assert!(r.injective);
    }

    #[test]
    fn guards() {
        let q = CoefficientField::rational();
        assert_eq!(
            enumerate_report(&PolyEndo::identity(&q, 1), &q, false),
            Err(Error::InfiniteField)
        );
        let f = CoefficientField::prime(101).unwrap();
        assert!(matches!(
            enumerate_report(&PolyEndo::identity(&f, 3), &f, false),
            Err(Error::DomainTooLarge { .. })
        ));
    }

    #[test]
    fn ideal_image_examples() {
        let f2 = CoefficientField::prime(2).unwrap();
        let phi = map(&f2, 1, &["x1 + x1^2"]);
        let zero = f2.zero_scalar();
        let one = f2.one_scalar();
        assert_eq!(
            maximal_ideal_image(&phi, &[zero.clone()], &f2).unwrap(),
            vec![vec![zero.clone()], vec![one.clone()]]
        );
        assert!(maximal_ideal_image(&phi, &[one.clone()], &f2).unwrap().is_empty());
        let id = PolyEndo::identity(&f2, 2);
        assert_eq!(
            maximal_ideal_image(&id, &[one.clone(), zero.clone()], &f2).unwrap(),
            vec![vec![one, zero]]
        );
    }
}
