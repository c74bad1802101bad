//! The Clifford algebra Cl(0,n), 1 <= n <= 8, with exact rational coefficients.
//!
//! Generators are indexed `0..n` and satisfy `e_i e_i = -1`,
//! `e_i e_j = -e_j e_i` for `i != j`. A basis blade is stored as a bitmask of
//! generator indices; the blade with mask `m` denotes the ordered product of
//! the generators in `m`, lowest index first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{q, q_frac, Q};

pub const MAX_GENERATORS: usize = 8;

/// A basis blade, encoded as a bitmask over generator indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Blade(pub u16);

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn generator(i: usize) -> Blade {
        Blade(1 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Blade {
        Blade(indices.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_even(self) -> bool {
        self.grade() % 2 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&i| self.0 & (1 << i) != 0)
    }

    /// Product of two basis blades: the result blade and its sign.
    ///
    /// The sign counts the transpositions needed to merge the two sorted index
    /// lists, plus one factor of `-1` for every generator squared.
    pub fn product(self, other: Blade) -> (Blade, bool) {
        let mut swaps = 0u32;
        let mut a = self.0 >> 1;
        while a != 0 {
            swaps += (a & other.0).count_ones();
            a >>= 1;
        }
        let squares = (self.0 & other.0).count_ones();
        (Blade(self.0 ^ other.0), (swaps + squares) % 2 == 1)
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade().cmp(&other.grade()).then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "e")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// An element of Cl(0,n): a sparse map from blades to nonzero rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multivector {
    dim: usize,
    terms: BTreeMap<Blade, Q>,
}

fn check_dim(n: usize) -> Result<()> {
    if (1..=MAX_GENERATORS).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

impl Multivector {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Multivector { dim, terms: BTreeMap::new() })
    }

    pub fn scalar(dim: usize, value: Q) -> Result<Self> {
        Self::from_terms(dim, [(Blade::SCALAR, value)])
    }

    pub fn one(dim: usize) -> Result<Self> {
        Self::scalar(dim, Q::one())
    }

    pub fn generator(dim: usize, i: usize) -> Result<Self> {
        Self::blade(dim, Blade::generator(i), Q::one())
    }

    pub fn blade(dim: usize, blade: Blade, coeff: Q) -> Result<Self> {
        Self::from_terms(dim, [(blade, coeff)])
    }

    /// Grade-1 element with the given coordinates.
    pub fn vector(coords: &[Q]) -> Result<Self> {
        Self::from_terms(
            coords.len(),
            coords.iter().enumerate().map(|(i, c)| (Blade::generator(i), c.clone())),
        )
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Blade, Q)>) -> Result<Self> {
        check_dim(dim)?;
        let limit = 1u16 << dim;
        let mut map = BTreeMap::new();
        for (b, c) in terms {
            if b.0 >= limit {
                return Err(Error::Argument(format!("blade {b} uses an index >= {dim}")));
            }
            let entry: &mut Q = map.entry(b).or_insert_with(Q::zero);
            *entry += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Multivector { dim, terms: map })
    }

    fn from_dense(dim: usize, dense: Vec<Q>) -> Self {
        let terms = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (Blade(m as u16), c))
            .collect();
        Multivector { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Q)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, blade: Blade) -> Q {
        self.terms.get(&blade).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scalar_part(&self) -> Q {
        self.coeff(Blade::SCALAR)
    }

    /// Returns `Some(c)` when the element is the scalar `c`.
    pub fn as_scalar(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&Blade::SCALAR).cloned(),
            _ => None,
        }
    }

    pub fn grade_part(&self, k: u32) -> Multivector {
        Multivector {
            dim: self.dim,
            terms: self.terms.iter().filter(|(b, _)| b.grade() == k).map(|(b, c)| (*b, c.clone())).collect(),
        }
    }

    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.terms.keys().all(|b| b.grade() == k)
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|b| b.is_even())
    }

    /// Coordinates of the grade-1 part.
    pub fn vector_coords(&self) -> Vec<Q> {
        (0..self.dim).map(|i| self.coeff(Blade::generator(i))).collect()
    }

    pub fn scale(&self, s: &Q) -> Multivector {
        if s.is_zero() {
            return Multivector { dim: self.dim, terms: BTreeMap::new() };
        }
        Multivector { dim: self.dim, terms: self.terms.iter().map(|(b, c)| (*b, c * s)).collect() }
    }

    fn map_signs(&self, negate: impl Fn(Blade) -> bool) -> Multivector {
        Multivector {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (*b, if negate(*b) { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// The grade involution: a blade of grade k picks up `(-1)^k`.
    pub fn grade_involution(&self) -> Multivector {
        self.map_signs(|b| b.grade() % 2 == 1)
    }

    /// Reversal: a blade of grade k picks up `(-1)^(k(k-1)/2)`.
    pub fn reverse(&self) -> Multivector {
        self.map_signs(|b| {
            let k = b.grade();
            (k * k.saturating_sub(1) / 2) % 2 == 1
        })
    }

    pub fn try_mul(&self, other: &Multivector) -> Result<Multivector> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        // Work over the integers with one denominator per factor; rational
        // arithmetic would reduce by a gcd on every accumulation.
        let (xs, dx) = self.integral_terms();
        let (ys, dy) = other.integral_terms();
        let mut acc = vec![BigInt::zero(); 1 << self.dim];
        for (a, ca) in &xs {
            for (b, cb) in &ys {
                let (blade, negative) = a.product(*b);
                let term = ca * cb;
                if negative {
                    acc[blade.0 as usize] -= term;
                } else {
                    acc[blade.0 as usize] += term;
                }
            }
        }
        let denom = dx * dy;
        let dense = acc.into_iter().map(|n| Q::new(n, denom.clone())).collect();
        Ok(Multivector::from_dense(self.dim, dense))
    }

    fn integral_terms(&self) -> (Vec<(Blade, BigInt)>, BigInt) {
        let denom = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let terms = self.terms.iter().map(|(b, c)| (*b, c.numer() * (&denom / c.denom()))).collect();
        (terms, denom)
    }

    pub fn try_add(&self, other: &Multivector) -> Result<Multivector> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        let mut terms = self.terms.clone();
        for (b, c) in &other.terms {
            let entry = terms.entry(*b).or_insert_with(Q::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Multivector { dim: self.dim, terms })
    }

    pub fn try_sub(&self, other: &Multivector) -> Result<Multivector> {
        self.try_add(&-other.clone())
    }

    /// Commutator `ab - ba`.
    pub fn commutator(&self, other: &Multivector) -> Result<Multivector> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// Index-shifted copy in a larger algebra: generator `i` becomes `i + shift`.
    pub fn shifted(&self, new_dim: usize, shift: usize) -> Result<Multivector> {
        check_dim(new_dim)?;
        if self.dim + shift > new_dim {
            return Err(Error::DimensionMismatch { left: self.dim + shift, right: new_dim });
        }
        Ok(Multivector {
            dim: new_dim,
            terms: self.terms.iter().map(|(b, c)| (Blade(b.0 << shift), c.clone())).collect(),
        })
    }

    /// The first nonzero coefficient in blade order.
    pub fn leading_coeff(&self) -> Option<&Q> {
        self.terms.values().next()
    }
}

/// Geometric product of two elements of the same algebra.
pub fn geometric_product(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.try_mul(b)
}

impl Mul for &Multivector {
    type Output = Multivector;
    fn mul(self, rhs: &Multivector) -> Multivector {
        self.try_mul(rhs).expect("geometric product of mismatched algebras")
    }
}

impl Add for &Multivector {
    type Output = Multivector;
    fn add(self, rhs: &Multivector) -> Multivector {
        self.try_add(rhs).expect("sum of mismatched algebras")
    }
}

impl Sub for &Multivector {
    type Output = Multivector;
    fn sub(self, rhs: &Multivector) -> Multivector {
        self.try_sub(rhs).expect("difference of mismatched algebras")
    }
}

impl Neg for Multivector {
    type Output = Multivector;
    fn neg(self) -> Multivector {
        Multivector { dim: self.dim, terms: self.terms.into_iter().map(|(b, c)| (b, -c)).collect() }
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let negative = c < &Q::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if b.0 == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{mag}{b}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl{}[{}]", self.dim, self)
    }
}

/// The ordered product of all generators, `e_0 e_1 ... e_{n-1}`.
pub fn volume_element(n: usize) -> Result<Multivector> {
    check_dim(n)?;
    Multivector::blade(n, Blade(((1u32 << n) - 1) as u16), Q::one())
}

/// The projectors `(1 + w7)/2` and `(1 - w7)/2` in Cl(0,7).
pub fn chiral_projectors() -> (Multivector, Multivector) {
    let one = Multivector::one(7).expect("dimension 7 is supported");
    let w = volume_element(7).expect("dimension 7 is supported");
    let half = q_frac(1, 2);
    ((&one + &w).scale(&half), (&one - &w).scale(&half))
}

/// The map Cl_n -> Cl_{n+1} sending `e_i` to `e_0 e_{i+1}`.
///
/// The new generator takes index 0 and the old indices shift up by one. The
/// image is even, and on even inputs this is just the index shift.
pub fn p_iso(a: &Multivector) -> Result<Multivector> {
    let n = a.dim();
    if n >= MAX_GENERATORS {
        return Err(Error::UnsupportedDimension(n));
    }
    let m = n + 1;
    let e0 = Multivector::generator(m, 0)?;
    let mut out = Multivector::zero(m)?;
    for (blade, c) in a.terms() {
        let mut image = Multivector::scalar(m, c.clone())?;
        for i in blade.indices() {
            let factor = &e0 * &Multivector::generator(m, i + 1)?;
            image = &image * &factor;
        }
        out = &out + &image;
    }
    Ok(out)
}

/// `e_i e_j + e_j e_i`, which the relations force to equal `-2 delta_ij`.
pub fn anticommutator(n: usize, i: usize, j: usize) -> Result<Multivector> {
    let ei = Multivector::generator(n, i)?;
    let ej = Multivector::generator(n, j)?;
    Ok(&(&ei * &ej) + &(&ej * &ei))
}

pub fn minus_two_delta(n: usize, i: usize, j: usize) -> Multivector {
    let v = if i == j { q(-2) } else { Q::zero() };
    Multivector::scalar(n, v).expect("valid dimension")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, idx: &[usize]) -> Multivector {
        idx.iter().fold(Multivector::one(n).unwrap(), |acc, &i| &acc * &Multivector::generator(n, i).unwrap())
    }

    #[test]
    fn generator_squares_to_minus_one() {
        let e1 = Multivector::generator(3, 0).unwrap();
        assert_eq!(&e1 * &e1, Multivector::scalar(3, q(-1)).unwrap());
    }

    #[test]
    fn orthogonal_generators_anticommute() {
        let e1 = Multivector::generator(3, 0).unwrap();
        let e2 = Multivector::generator(3, 1).unwrap();
        let e12 = Multivector::blade(3, Blade::from_indices(&[0, 1]), q(1)).unwrap();
        assert_eq!(&e1 * &e2, e12);
        assert_eq!(&e2 * &e1, -e12);
    }

    #[test]
    fn bivector_product_example() {
        // (e1 e2)(e2 e3) = -e1 e3 in one-based labels.
        let a = Multivector::blade(4, Blade::from_indices(&[1, 2]), q(1)).unwrap();
        let b = Multivector::blade(4, Blade::from_indices(&[2, 3]), q(1)).unwrap();
        assert_eq!(&a * &b, Multivector::blade(4, Blade::from_indices(&[1, 3]), q(-1)).unwrap());
    }

    #[test]
    fn mismatched_dimensions_are_rejected() {
        let a = Multivector::one(3).unwrap();
        let b = Multivector::one(4).unwrap();
        assert_eq!(a.try_mul(&b), Err(Error::DimensionMismatch { left: 3, right: 4 }));
        assert!(Multivector::one(9).is_err());
        assert!(Multivector::one(0).is_err());
    }

    #[test]
    fn involutions_on_examples() {
        let one = Multivector::one(7).unwrap();
        assert_eq!(one.grade_involution(), one);
        let e1 = Multivector::generator(7, 0).unwrap();
        assert_eq!(e1.grade_involution(), -e1);
        let w7 = volume_element(7).unwrap();
        assert_eq!(w7.grade_involution(), -w7.clone());
        assert_eq!(e(3, &[0, 1]).reverse(), -e(3, &[0, 1]));
        assert_eq!(e(3, &[0, 1, 2]).reverse(), -e(3, &[0, 1, 2]));
        assert_eq!(e(5, &[0, 1, 2, 3]).reverse(), e(5, &[0, 1, 2, 3]));
    }

    #[test]
    fn p_iso_examples() {
        assert_eq!(p_iso(&Multivector::one(3).unwrap()).unwrap(), Multivector::one(4).unwrap());
        assert_eq!(p_iso(&e(3, &[0])).unwrap(), e(4, &[0, 1]));
        // e0 e1 e0 e2 = e1 e2 after the shift.
        assert_eq!(p_iso(&e(3, &[0, 1])).unwrap(), e(4, &[1, 2]));
        assert_eq!(p_iso(&Multivector::one(8).unwrap()), Err(Error::UnsupportedDimension(8)));
    }

    #[test]
    fn volume_elements() {
        let w8 = volume_element(8).unwrap();
        assert_eq!(&w8 * &w8, Multivector::one(8).unwrap());
        let w7 = volume_element(7).unwrap();
        assert_eq!(&w7 * &w7, Multivector::one(7).unwrap());
        for i in 0..7 {
            let ei = Multivector::generator(7, i).unwrap();
            assert_eq!(&w7 * &ei, &ei * &w7);
        }
        for i in 0..8 {
            let ei = Multivector::generator(8, i).unwrap();
            assert_eq!(&w8 * &ei, -(&ei * &w8));
        }
    }

    #[test]
    fn projector_examples() {
        let (p, m) = chiral_projectors();
        let one = Multivector::one(7).unwrap();
        assert_eq!(&p + &m, one);
        assert_eq!(&p * &p, p);
        assert_eq!(&m * &m, m);
        assert!((&p * &m).is_zero());
    }

    #[test]
    fn display_is_readable() {
        let x = Multivector::from_terms(
            3,
            [(Blade::SCALAR, q(2)), (Blade::from_indices(&[0, 2]), q_frac(-1, 2)), (Blade::generator(1), q(1))],
        )
        .unwrap();
        assert_eq!(x.to_string(), "2 + e1 - 1/2e02");
    }
}
