//! Spin(n) inside the even Clifford algebra, the vector representation, and
//! lifts from SO(n) and so(n).
//!
//! A rational rotation need not have a rational lift: a quarter turn in a
//! plane lifts to `(1 + e_0 e_1)/sqrt(2)`. A [`SpinElement`] therefore stores
//! an even versor `m` with rational coefficients together with its norm
//! `q = m reverse(m)`, and stands for `m / sqrt(q)`. Whenever `q` is a rational
//! square the square root is folded in and `norm() == 1`.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::{Blade, Multivector};
use crate::error::{Error, Result};
use crate::linalg::{dot, q, q_frac, rational_sqrt, QMatrix, Q};

/// A point of Spin(n), represented as `versor / sqrt(norm)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpinElement {
    versor: Multivector,
    norm: Q,
}

impl SpinElement {
    /// An element with exact unit spinor norm: `value * reverse(value) == 1`.
    pub fn new(value: Multivector) -> Result<Self> {
        let norm = &value * &value.reverse();
        if !norm.as_scalar().is_some_and(|s| s.is_one()) {
            return Err(Error::InvalidSpinElement(format!("{value} times its reverse is {norm}, not 1")));
        }
        Self::from_versor(value)
    }

    /// Normalized image `m / sqrt(m reverse(m))` of an even versor `m`.
    pub fn from_versor(m: Multivector) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::InvalidSpinElement("zero element".into()));
        }
        if !m.is_even() {
            return Err(Error::InvalidSpinElement(format!("{m} has odd blades")));
        }
        let norm = (&m * &m.reverse())
            .as_scalar()
            .filter(Q::is_positive)
            .ok_or_else(|| Error::InvalidSpinElement(format!("{m} times its reverse is not a positive scalar")))?;
        let el = Self::canonical(m, norm);
        conjugation_matrix(&el.versor, &el.norm)?;
        Ok(el)
    }

    /// Product of an even number of nonzero vectors, normalized.
    pub fn from_vectors(vectors: &[Multivector]) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(Error::Argument("need at least two vectors".into()));
        };
        if vectors.len() % 2 == 1 {
            return Err(Error::Argument("an odd number of vectors gives a Pin element".into()));
        }
        let n = first.dim();
        let mut m = Multivector::one(n)?;
        let mut norm = Q::one();
        for v in vectors {
            if !v.is_homogeneous(1) || v.is_zero() {
                return Err(Error::Argument(format!("{v} is not a nonzero vector")));
            }
            m = m.try_mul(v)?;
            let coords = v.vector_coords();
            norm *= dot(&coords, &coords);
        }
        Ok(Self::canonical(m, norm))
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ok(SpinElement { versor: Multivector::one(n)?, norm: Q::one() })
    }

    pub fn minus_one(n: usize) -> Result<Self> {
        Ok(-Self::identity(n)?)
    }

    fn canonical(m: Multivector, norm: Q) -> Self {
        if let Some(s) = rational_sqrt(&norm) {
            return SpinElement { versor: m.scale(&s.recip()), norm: Q::one() };
        }
        // Scale to a primitive integral versor so the representation is unique.
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in m.terms() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let content = Q::new(num_gcd, den_lcm);
        let norm = &norm / (&content * &content);
        SpinElement { versor: m.scale(&content.recip()), norm }
    }

    pub fn dim(&self) -> usize {
        self.versor.dim()
    }

    pub fn versor(&self) -> &Multivector {
        &self.versor
    }

    pub fn norm(&self) -> &Q {
        &self.norm
    }

    pub fn is_rational(&self) -> bool {
        self.norm.is_one()
    }

    /// The element itself when its coefficients are rational.
    pub fn value(&self) -> Option<&Multivector> {
        self.is_rational().then_some(&self.versor)
    }

    pub fn rational_value(&self) -> Result<&Multivector> {
        self.value().ok_or_else(|| Error::IrrationalElement(self.to_string()))
    }

    pub fn inverse(&self) -> SpinElement {
        SpinElement { versor: self.versor.reverse(), norm: self.norm.clone() }
    }

    pub fn try_mul(&self, other: &SpinElement) -> Result<SpinElement> {
        let m = self.versor.try_mul(&other.versor)?;
        Ok(Self::canonical(m, &self.norm * &other.norm))
    }

    /// The representative of `{self, -self}` whose leading coefficient is positive.
    pub fn sign_canonical(self) -> SpinElement {
        match self.versor.leading_coeff() {
            Some(c) if c.is_negative() => -self,
            _ => self,
        }
    }

    pub fn is_central_sign(&self) -> bool {
        self.versor.as_scalar().is_some()
    }
}

impl Mul for &SpinElement {
    type Output = SpinElement;
    fn mul(self, rhs: &SpinElement) -> SpinElement {
        self.try_mul(rhs).expect("product of spin elements from different algebras")
    }
}

impl Neg for SpinElement {
    type Output = SpinElement;
    fn neg(self) -> SpinElement {
        SpinElement { versor: -self.versor, norm: self.norm }
    }
}

impl fmt::Display for SpinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.norm.is_one() {
            write!(f, "{}", self.versor)
        } else {
            write!(f, "({}) / sqrt({})", self.versor, self.norm)
        }
    }
}

impl fmt::Debug for SpinElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Spin({})[{}]", self.dim(), self)
    }
}

/// An element of SO(n) with exact rational entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RotationMatrix(QMatrix);

impl RotationMatrix {
    pub fn new(m: QMatrix) -> Result<Self> {
        if !m.is_orthogonal() {
            return Err(Error::NotOrthogonal);
        }
        if m.determinant() != Q::one() {
            return Err(Error::Orientation);
        }
        if m.rows() == 0 || m.rows() > crate::clifford::MAX_GENERATORS {
            return Err(Error::UnsupportedDimension(m.rows()));
        }
        Ok(RotationMatrix(m))
    }

    pub fn identity(n: usize) -> Self {
        RotationMatrix(QMatrix::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> QMatrix {
        self.0
    }
}

impl Mul for &RotationMatrix {
    type Output = RotationMatrix;
    fn mul(self, rhs: &RotationMatrix) -> RotationMatrix {
        RotationMatrix(&self.0 * &rhs.0)
    }
}

/// An element of so(n): a skew-symmetric rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewMatrix(QMatrix);

impl SkewMatrix {
    pub fn new(m: QMatrix) -> Result<Self> {
        if !m.is_skew() {
            return Err(Error::NotSkew);
        }
        Ok(SkewMatrix(m))
    }

    /// `E_ij - E_ji`.
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        m[(i, j)] = q(1);
        m[(j, i)] = q(-1);
        SkewMatrix(m)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.0
    }
}

/// Matrix of `x -> m x reverse(m) / norm` on grade-1 elements.
fn conjugation_matrix(m: &Multivector, norm: &Q) -> Result<QMatrix> {
    let n = m.dim();
    let rev = m.reverse();
    let inv_norm = norm.recip();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let image = &(m * &Multivector::generator(n, j)?) * &rev;
        if !image.is_homogeneous(1) {
            return Err(Error::InvalidSpinElement(format!("conjugation of e{j} by {m} leaves grade 1")));
        }
        cols.push(image.vector_coords().iter().map(|c| c * &inv_norm).collect::<Vec<_>>());
    }
    Ok(QMatrix::from_columns(&cols))
}

/// The vector representation: column `j` is `zeta e_j zeta^{-1}`.
pub fn adjoint_action(zeta: &SpinElement) -> Result<RotationMatrix> {
    let m = conjugation_matrix(&zeta.versor, &zeta.norm)?;
    RotationMatrix::new(m).map_err(|e| Error::InvalidSpinElement(e.to_string()))
}

fn require_vector(x: &Multivector, what: &str) -> Result<()> {
    if x.is_homogeneous(1) {
        Ok(())
    } else {
        Err(Error::Argument(format!("{what} {x} is not a grade-1 element")))
    }
}

/// Reflection across the hyperplane orthogonal to the unit vector `v`:
/// `-v x v^{-1}`, which is `v x v` since `v^{-1} = -v`.
pub fn reflect(v: &Multivector, x: &Multivector) -> Result<Multivector> {
    require_vector(v, "mirror")?;
    require_vector(x, "argument")?;
    let coords = v.vector_coords();
    if dot(&coords, &coords) != Q::one() {
        return Err(Error::NotUnit(v.to_string()));
    }
    v.try_mul(x)?.try_mul(v)
}

/// Lift a rotation to Spin(n) by factoring it into reflections.
///
/// Columns are fixed one at a time with the reflection along `R e_j - e_j`;
/// the product of the mirror vectors is the versor. Of the two lifts, the one
/// with positive leading coefficient is returned.
pub fn lift_rotation(r: &RotationMatrix) -> SpinElement {
    let n = r.dim();
    let mut m = r.matrix().clone();
    let mut versor = Multivector::one(n).expect("rotation dimension already validated");
    let mut norm = Q::one();
    for j in 0..n {
        let mut w = m.column(j);
        w[j] -= Q::one();
        if w.iter().all(Zero::is_zero) {
            continue;
        }
        let ww = dot(&w, &w);
        // m <- (I - 2 w w^T / w.w) m
        let wt_m: Vec<Q> = (0..n).map(|c| dot(&w, &m.column(c))).collect();
        let factor = q(2) / &ww;
        for i in 0..n {
            if w[i].is_zero() {
                continue;
            }
            let wi = &w[i] * &factor;
            for (c, t) in wt_m.iter().enumerate() {
                let v = &m[(i, c)] - &wi * t;
                m[(i, c)] = v;
            }
        }
        versor = &versor * &Multivector::vector(&w).expect("same dimension");
        norm *= ww;
    }
    debug_assert_eq!(m, QMatrix::identity(n));
    SpinElement::canonical(versor, norm).sign_canonical()
}

/// The bivector `-1/4 sum_ij A_ij e_i e_j`, the inverse of the differential
/// of the vector representation.
///
/// With `e_i^2 = -1` the commutator `[e_0 e_1, e_0] = 2 e_1`, so the minus
/// sign is what makes `infinitesimal_adjoint(lie_lift(A)) == A`.
pub fn lie_lift(a: &SkewMatrix) -> Multivector {
    let n = a.dim();
    let terms = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| {
        (Blade::from_indices(&[i, j]), -&a.matrix()[(i, j)] * q_frac(1, 2))
    });
    Multivector::from_terms(n, terms).expect("skew matrix dimension within algebra range")
}

/// Differential of the vector representation: `x -> b x - x b` on vectors.
pub fn infinitesimal_adjoint(b: &Multivector) -> Result<SkewMatrix> {
    let n = b.dim();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let image = b.commutator(&Multivector::generator(n, j)?)?;
        if !image.is_homogeneous(1) {
            return Err(Error::Argument(format!("{b} does not act on vectors by commutators")));
        }
        cols.push(image.vector_coords());
    }
    SkewMatrix::new(QMatrix::from_columns(&cols))
}

/// A rational point on the unit sphere in R^n, by inverse stereographic
/// projection of a random rational point with small height.
pub fn random_unit_vector(n: usize, rng: &mut impl Rng) -> Vec<Q> {
    if n == 1 {
        return vec![if rng.gen_bool(0.5) { q(1) } else { q(-1) }];
    }
    loop {
        let t: Vec<Q> = (0..n - 1).map(|_| q_frac(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect();
        let tt = dot(&t, &t);
        if tt.is_zero() && rng.gen_bool(0.8) {
            continue;
        }
        let denom = &tt + Q::one();
        let mut v: Vec<Q> = t.iter().map(|x| x * q(2) / &denom).collect();
        v.push((&tt - Q::one()) / &denom);
        let shift = rng.gen_range(0..n);
        v.rotate_right(shift);
        if rng.gen_bool(0.5) {
            for x in &mut v {
                *x = -x.clone();
            }
        }
        return v;
    }
}

/// Product of `2k` pseudo-random rational unit vectors, deterministic in `seed`.
pub fn random_spin(n: usize, k: usize, seed: u64) -> Result<SpinElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_spin_with(n, k, &mut rng)
}

pub fn random_spin_with(n: usize, k: usize, rng: &mut impl Rng) -> Result<SpinElement> {
    if k == 0 {
        return Err(Error::Argument("k must be at least 1".into()));
    }
    let vectors = (0..2 * k)
        .map(|_| Multivector::vector(&random_unit_vector(n, rng)))
        .collect::<Result<Vec<_>>>()?;
    SpinElement::from_vectors(&vectors)
}

/// A random skew matrix with small integer entries.
pub fn random_skew(n: usize, rng: &mut impl Rng) -> SkewMatrix {
    let mut m = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = q(rng.gen_range(-3..=3));
            m[(i, j)] = v.clone();
            m[(j, i)] = -v;
        }
    }
    SkewMatrix(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bivector(n: usize, i: usize, j: usize) -> Multivector {
        Multivector::blade(n, Blade::from_indices(&[i, j]), q(1)).unwrap()
    }

    #[test]
    fn adjoint_of_minus_one_is_identity() {
        let m = SpinElement::minus_one(5).unwrap();
        assert_eq!(adjoint_action(&m).unwrap(), RotationMatrix::identity(5));
    }

    #[test]
    fn adjoint_of_plane_bivector_is_half_turn() {
        let z = SpinElement::new(bivector(4, 0, 1)).unwrap();
        let ad = adjoint_action(&z).unwrap();
        let expected = QMatrix::from_fn(4, 4, |i, j| match (i, j) {
            (0, 0) | (1, 1) => q(-1),
            (a, b) if a == b => q(1),
            _ => q(0),
        });
        assert_eq!(ad.matrix(), &expected);
    }

    #[test]
    fn reflection_examples() {
        let e1 = Multivector::generator(3, 0).unwrap();
        let e2 = Multivector::generator(3, 1).unwrap();
        assert_eq!(reflect(&e1, &e1).unwrap(), -e1.clone());
        assert_eq!(reflect(&e1, &e2).unwrap(), e2.clone());
        let not_unit = e1.scale(&q(2));
        assert!(matches!(reflect(&not_unit, &e2), Err(Error::NotUnit(_))));
    }

    #[test]
    fn lift_examples() {
        assert_eq!(lift_rotation(&RotationMatrix::identity(6)), SpinElement::identity(6).unwrap());
        let half_turn = adjoint_action(&SpinElement::new(bivector(3, 0, 1)).unwrap()).unwrap();
        let lift = lift_rotation(&half_turn);
        assert_eq!(lift, SpinElement::new(bivector(3, 0, 1)).unwrap());
        let minus_id = RotationMatrix::new(-QMatrix::identity(8)).unwrap();
        let w8 = crate::clifford::volume_element(8).unwrap();
        assert_eq!(lift_rotation(&minus_id).versor(), &w8);
    }

    #[test]
    fn quarter_turn_lifts_with_irrational_norm() {
        let r = RotationMatrix::new(QMatrix::from_i64(2, 2, &[0, -1, 1, 0])).unwrap();
        let z = lift_rotation(&r);
        assert!(!z.is_rational());
        assert_eq!(z.norm(), &q(2));
        assert_eq!(adjoint_action(&z).unwrap(), r);
        assert!(matches!(z.rational_value(), Err(Error::IrrationalElement(_))));
    }

    #[test]
    fn rotation_validation() {
        assert_eq!(RotationMatrix::new(QMatrix::from_i64(2, 2, &[1, 1, 0, 1])), Err(Error::NotOrthogonal));
        assert_eq!(RotationMatrix::new(QMatrix::from_i64(2, 2, &[1, 0, 0, -1])), Err(Error::Orientation));
    }

    #[test]
    fn lie_lift_of_elementary_generator() {
        assert!(lie_lift(&SkewMatrix::new(QMatrix::zeros(4, 4)).unwrap()).is_zero());
        let a = SkewMatrix::elementary(4, 0, 1);
        let b = lie_lift(&a);
        assert_eq!(b, bivector(4, 0, 1).scale(&q_frac(-1, 2)));
        assert_eq!(infinitesimal_adjoint(&b).unwrap(), a);
    }

    #[test]
    fn spin_element_validation() {
        let not_unit = Multivector::scalar(3, q(2)).unwrap();
        assert!(SpinElement::new(not_unit.clone()).is_err());
        // A positive multiple is still fine as a versor.
        assert_eq!(SpinElement::from_versor(not_unit).unwrap(), SpinElement::identity(3).unwrap());
        let odd = Multivector::generator(3, 0).unwrap();
        assert!(SpinElement::from_versor(odd).is_err());
        // 1 + e012345 has scalar norm but conjugation leaves grade 1.
        let bad = &Multivector::one(6).unwrap()
            + &Multivector::blade(6, Blade::from_indices(&[0, 1, 2, 3, 4, 5]), q(1)).unwrap();
        assert!(matches!(SpinElement::from_versor(bad), Err(Error::InvalidSpinElement(_))));
    }

    #[test]
    fn random_spin_is_deterministic_and_unit() {
        let a = random_spin(8, 2, 17).unwrap();
        let b = random_spin(8, 2, 17).unwrap();
        assert_eq!(a, b);
        let v = a.value().unwrap();
        assert_eq!(v * &v.reverse(), Multivector::one(8).unwrap());
        assert!(random_spin(8, 0, 1).is_err());
    }
}
