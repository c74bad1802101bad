//! The 16-dimensional real representation of Cl_8, its chiral halves, the
//! spin representations of Spin(8) and Spin(7), and the two embeddings
//! Spin(7) -> Spin(8).
//!
//! Gamma matrices come from octonion multiplication on `O + O`:
//! `c(v)(x, y) = (v y, -conj(v) x)`. Every monomial in them is a signed
//! permutation matrix, which keeps the 256-element basis cheap to hold.
//!
//! Spin(7) elements live in Cl(0,7) with generators `0..7`; both embeddings
//! send generator `i` to generator `i + 1` of Cl(0,8) on the even part, so
//! `e_0` of Cl(0,8) is the vector fixed by the vector embedding.

use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::clifford::{volume_element, Blade, Multivector};
use crate::error::{Error, Result};
use crate::linalg::{dot, q, span_rank, QMatrix, Q};
use crate::spin::{adjoint_action, lie_lift, lift_rotation, random_unit_vector, RotationMatrix, SkewMatrix, SpinElement};

pub const SPINOR_DIM: usize = 16;
pub const CHIRAL_DIM: usize = 8;

/// Oriented lines of the Fano plane: `e_i e_j = e_k` for each cyclic rotation.
const FANO_LINES: [[usize; 3]; 7] = [[1, 2, 4], [2, 3, 5], [3, 4, 6], [4, 5, 7], [5, 6, 1], [6, 7, 2], [7, 1, 3]];

/// Product of octonion basis units: `e_a e_b = sign * e_c`, with `e_0 = 1`.
pub fn octonion_product(a: usize, b: usize) -> (i8, usize) {
    match (a, b) {
        (0, _) => (1, b),
        (_, 0) => (1, a),
        _ if a == b => (-1, 0),
        _ => {
            for line in FANO_LINES {
                for r in 0..3 {
                    let (i, j, k) = (line[r], line[(r + 1) % 3], line[(r + 2) % 3]);
                    if (a, b) == (i, j) {
                        return (1, k);
                    }
                    if (a, b) == (j, i) {
                        return (-1, k);
                    }
                }
            }
            unreachable!("every pair of distinct imaginary units lies on a Fano line")
        }
    }
}

/// Column `j` of the matrix is `sign[j] * e_{image[j]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct SignedPerm {
    image: [u8; SPINOR_DIM],
    negative: [bool; SPINOR_DIM],
}

impl SignedPerm {
    fn identity() -> Self {
        let mut image = [0; SPINOR_DIM];
        for (j, slot) in image.iter_mut().enumerate() {
            *slot = j as u8;
        }
        SignedPerm { image, negative: [false; SPINOR_DIM] }
    }

    /// Matrix product `self * other`.
    fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let mut out = SignedPerm::identity();
        for j in 0..SPINOR_DIM {
            let mid = other.image[j] as usize;
            out.image[j] = self.image[mid];
            out.negative[j] = other.negative[j] ^ self.negative[mid];
        }
        out
    }

    fn add_into(&self, m: &mut QMatrix, coeff: &Q) {
        for j in 0..SPINOR_DIM {
            let i = self.image[j] as usize;
            let v = if self.negative[j] { &m[(i, j)] - coeff } else { &m[(i, j)] + coeff };
            m[(i, j)] = v;
        }
    }

    fn to_matrix(&self) -> QMatrix {
        let mut m = QMatrix::zeros(SPINOR_DIM, SPINOR_DIM);
        self.add_into(&mut m, &Q::one());
        m
    }
}

fn octonion_gamma(a: usize) -> SignedPerm {
    let mut g = SignedPerm::identity();
    for b in 0..8 {
        // y-component e_b goes to e_a e_b in the x half.
        let (s, c) = octonion_product(a, b);
        g.image[8 + b] = c as u8;
        g.negative[8 + b] = s < 0;
        // x-component e_b goes to -conj(e_a) e_b in the y half.
        let conj_sign = if a == 0 { 1 } else { -1 };
        g.image[b] = (8 + c) as u8;
        g.negative[b] = -(conj_sign * s) < 0;
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chirality {
    Plus,
    Minus,
}

/// A spinor in full (16) or chiral (8) coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spinor {
    pub coords: Vec<Q>,
    pub chirality: Option<Chirality>,
}

impl Spinor {
    pub fn chiral(chirality: Chirality, coords: Vec<Q>) -> Result<Self> {
        if coords.len() != CHIRAL_DIM {
            return Err(Error::DimensionMismatch { left: coords.len(), right: CHIRAL_DIM });
        }
        Ok(Spinor { coords, chirality: Some(chirality) })
    }

    pub fn full(coords: Vec<Q>) -> Result<Self> {
        if coords.len() != SPINOR_DIM {
            return Err(Error::DimensionMismatch { left: coords.len(), right: SPINOR_DIM });
        }
        Ok(Spinor { coords, chirality: None })
    }

    pub fn norm_squared(&self) -> Q {
        dot(&self.coords, &self.coords)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// The representation `c : Cl_8 -> End(R^16)` with its chirality splitting.
#[derive(Clone, Debug)]
pub struct GammaRep {
    monomials: Vec<SignedPerm>,
    gamma: Vec<QMatrix>,
    basis_plus: QMatrix,
    basis_minus: QMatrix,
    // Fixed isomorphism between the spin representation and the restriction
    // of the negative half-spin representation along iota_plus.
    intertwiner: QMatrix,
}

pub fn build_cl8_rep() -> Result<GammaRep> {
    let gens: Vec<SignedPerm> = (0..8).map(octonion_gamma).collect();
    let monomials: Vec<SignedPerm> = (0u16..256)
        .map(|mask| {
            Blade(mask).indices().fold(SignedPerm::identity(), |acc, i| acc.compose(&gens[i]))
        })
        .collect();
    let gamma: Vec<QMatrix> = gens.iter().map(SignedPerm::to_matrix).collect();
    for i in 0..8 {
        for j in 0..8 {
            let anti = &(&gamma[i] * &gamma[j]) + &(&gamma[j] * &gamma[i]);
            let expected = if i == j { QMatrix::identity(SPINOR_DIM).scale(&q(-2)) } else { QMatrix::zeros(SPINOR_DIM, SPINOR_DIM) };
            if anti != expected {
                return Err(Error::Internal(format!("gamma matrices {i} and {j} violate the Clifford relation")));
            }
        }
    }
    let omega = monomials[255].to_matrix();
    let chiral_basis = |sign: i64| -> Result<QMatrix> {
        let shifted = &omega - &QMatrix::identity(SPINOR_DIM).scale(&q(sign));
        let basis = shifted.nullspace();
        if basis.len() != CHIRAL_DIM {
            return Err(Error::Internal(format!("eigenspace {sign} of the volume element has dimension {}", basis.len())));
        }
        let m = QMatrix::from_columns(&basis);
        if &m.transpose() * &m != QMatrix::identity(CHIRAL_DIM) {
            return Err(Error::Internal("chiral basis is not orthonormal".into()));
        }
        Ok(m)
    };
    let mut rep = GammaRep {
        monomials,
        gamma,
        basis_plus: chiral_basis(1)?,
        basis_minus: chiral_basis(-1)?,
        intertwiner: QMatrix::zeros(CHIRAL_DIM, CHIRAL_DIM),
    };
    // With the wrong orientation of S_8^+ the trivial summand of the
    // restriction along iota_plus sits in S_8^- and no intertwiner exists.
    rep.intertwiner = match rep.solve_intertwiner()? {
        Some(t) => t,
        None => {
            for i in 0..SPINOR_DIM {
                let v = -rep.basis_plus[(i, CHIRAL_DIM - 1)].clone();
                rep.basis_plus[(i, CHIRAL_DIM - 1)] = v;
            }
            rep.solve_intertwiner()?.ok_or_else(|| Error::Internal("no orientation admits an intertwiner".into()))?
        }
    };
    if iota_plus(&rep, &SpinElement::minus_one(7)?)?.versor() != &volume_element(8)? {
        return Err(Error::Internal("iota_plus(-1) is not the volume element".into()));
    }
    Ok(rep)
}

impl GammaRep {
    pub fn gamma(&self) -> &[QMatrix] {
        &self.gamma
    }

    /// 16 x 8 matrix whose columns are an orthonormal basis of `S_8^+`.
    pub fn basis_plus(&self) -> &QMatrix {
        &self.basis_plus
    }

    pub fn basis_minus(&self) -> &QMatrix {
        &self.basis_minus
    }

    pub fn basis(&self, chirality: Chirality) -> &QMatrix {
        match chirality {
            Chirality::Plus => &self.basis_plus,
            Chirality::Minus => &self.basis_minus,
        }
    }

    /// The matrix of the monomial `e_{i_1} ... e_{i_k}` for a blade of Cl_8.
    pub fn monomial(&self, blade: Blade) -> QMatrix {
        self.monomials[blade.0 as usize].to_matrix()
    }

    /// Embed chiral coordinates into `R^16`.
    pub fn embed(&self, spinor: &Spinor) -> Vec<Q> {
        match spinor.chirality {
            Some(ch) => self.basis(ch).apply(&spinor.coords),
            None => spinor.coords.clone(),
        }
    }

    fn solve_intertwiner(&self) -> Result<Option<QMatrix>> {
        // Unknown T (row-major, 64 entries) with A_X T = T B_X for every basis X.
        let n = CHIRAL_DIM;
        let mut rows = Vec::new();
        for x in spin7_basis() {
            let b = d_delta7(self, &x)?;
            let a = chiral_action(self, &d_iota_plus(self, &x)?, Chirality::Minus)?;
            for i in 0..n {
                for j in 0..n {
                    let mut row = vec![Q::zero(); n * n];
                    for k in 0..n {
                        row[k * n + j] += &a[(i, k)];
                        row[i * n + k] -= &b[(k, j)];
                    }
                    rows.push(row);
                }
            }
        }
        let kernel = QMatrix::from_rows(rows).nullspace();
        match kernel.as_slice() {
            [] => Ok(None),
            [t] => Ok(Some(QMatrix::from_fn(n, n, |i, j| t[i * n + j].clone()))),
            _ => Err(Error::Internal(format!("intertwiner space has dimension {}", kernel.len()))),
        }
    }
}

/// `c(a)` as a 16 x 16 matrix.
pub fn clifford_action(rep: &GammaRep, a: &Multivector) -> Result<QMatrix> {
    if a.dim() != 8 {
        return Err(Error::DimensionMismatch { left: a.dim(), right: 8 });
    }
    let mut m = QMatrix::zeros(SPINOR_DIM, SPINOR_DIM);
    for (blade, c) in a.terms() {
        rep.monomials[blade.0 as usize].add_into(&mut m, c);
    }
    Ok(m)
}

/// `c(a)` restricted to one chiral half, in that half's basis coordinates.
pub fn chiral_action(rep: &GammaRep, a: &Multivector, chirality: Chirality) -> Result<QMatrix> {
    if !a.is_even() {
        return Err(Error::ChiralityViolation);
    }
    let b = rep.basis(chirality);
    Ok(&(&b.transpose() * &clifford_action(rep, a)?) * b)
}

/// The half-spin representations of Spin(8).
pub fn delta8(rep: &GammaRep, zeta: &SpinElement, chirality: Chirality) -> Result<QMatrix> {
    if zeta.dim() != 8 {
        return Err(Error::DimensionMismatch { left: zeta.dim(), right: 8 });
    }
    chiral_action(rep, zeta.rational_value()?, chirality)
}

/// Move an even element of Cl_7 into Cl_8 on generators `1..8`. Elements of
/// Cl_8 are accepted when they avoid `e_0`.
fn embed_cl7(a: &Multivector) -> Result<Multivector> {
    match a.dim() {
        7 if a.is_even() => a.shifted(8, 1),
        8 if a.is_even() && a.terms().all(|(b, _)| !b.contains(0)) => Ok(a.clone()),
        _ => Err(Error::Domain(format!("{a} is not in the even subalgebra of Cl_7"))),
    }
}

/// The spin representation of Spin(7) on `S_8^+`.
pub fn delta7(rep: &GammaRep, zeta: &SpinElement) -> Result<QMatrix> {
    let value = embed_cl7(zeta.rational_value()?)?;
    chiral_action(rep, &value, Chirality::Plus)
}

/// Differential of [`delta7`] on a Lie algebra element of Cl_7.
pub fn d_delta7(rep: &GammaRep, x: &Multivector) -> Result<QMatrix> {
    chiral_action(rep, &embed_cl7(x)?, Chirality::Plus)
}

/// The inclusion of Spin(7) as the stabilizer of `e_0`.
pub fn iota_vector(zeta: &SpinElement) -> Result<SpinElement> {
    let versor = embed_cl7(zeta.versor())?;
    SpinElement::from_versor(versor)
}

pub fn d_iota_vector(x: &Multivector) -> Result<Multivector> {
    embed_cl7(x)
}

/// `lie_lift` of the spin representation, read as a rotation of `R^8`.
pub fn d_iota_plus(rep: &GammaRep, x: &Multivector) -> Result<Multivector> {
    let skew = SkewMatrix::new(d_delta7(rep, x)?).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(lie_lift(&skew))
}

/// The lift of `delta7` through `Ad_8`, normalized so that it is a homomorphism.
///
/// `lift_rotation` fixes the element up to sign. The correct sign is the one
/// for which the negative half-spin action intertwines with `delta7` through
/// the fixed matrix computed at the Lie algebra level.
pub fn iota_plus(rep: &GammaRep, zeta: &SpinElement) -> Result<SpinElement> {
    let d7 = delta7(rep, zeta)?;
    let rotation = RotationMatrix::new(d7.clone()).map_err(|e| Error::Internal(e.to_string()))?;
    let eta = lift_rotation(&rotation);
    let lhs = &chiral_action(rep, eta.versor(), Chirality::Minus)? * &rep.intertwiner;
    let rhs = &rep.intertwiner * &d7;
    let (i, j) = (0..CHIRAL_DIM)
        .flat_map(|i| (0..CHIRAL_DIM).map(move |j| (i, j)))
        .find(|&(i, j)| !rhs[(i, j)].is_zero())
        .ok_or_else(|| Error::Internal("intertwiner is zero".into()))?;
    let agrees = lhs[(i, j)].is_positive() == rhs[(i, j)].is_positive();
    Ok(if agrees { eta } else { -eta })
}

/// `{e_i e_j : i < j}` in Cl_7, a basis of spin(7).
pub fn spin7_basis() -> Vec<Multivector> {
    bivector_basis(7)
}

/// `{e_i e_j : i < j}` in Cl_8, a basis of spin(8).
pub fn spin8_basis() -> Vec<Multivector> {
    bivector_basis(8)
}

fn bivector_blades(n: usize) -> impl Iterator<Item = Blade> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| Blade::from_indices(&[i, j])))
}

fn bivector_basis(n: usize) -> Vec<Multivector> {
    bivector_blades(n).map(|b| Multivector::blade(n, b, Q::one()).expect("valid dimension")).collect()
}

/// Coordinates of a bivector of Cl_8 in the basis [`spin8_basis`].
pub fn bivector_coords(x: &Multivector) -> Vec<Q> {
    bivector_blades(8).map(|b| x.coeff(b)).collect()
}

/// Vectors of `S_8^+` killed by `d(Delta_8^+) d(iota_plus)(X)` for each given
/// `X` in spin(7). With no generators the whole space is returned.
pub fn common_fixed_space(rep: &GammaRep, generators: &[Multivector]) -> Result<Vec<Vec<Q>>> {
    if generators.is_empty() {
        let id = QMatrix::identity(CHIRAL_DIM);
        return Ok((0..CHIRAL_DIM).map(|j| id.column(j)).collect());
    }
    let mut rows = Vec::new();
    for x in generators {
        let m = chiral_action(rep, &d_iota_plus(rep, x)?, Chirality::Plus)?;
        rows.extend((0..CHIRAL_DIM).map(|i| m.row(i).to_vec()));
    }
    Ok(QMatrix::from_rows(rows).nullspace())
}

/// The spinor fixed by `iota_plus(Spin(7))`, scaled to unit length when the
/// norm allows it and to a primitive integer vector otherwise.
pub fn fixed_spinor(rep: &GammaRep) -> Result<Spinor> {
    let space = common_fixed_space(rep, &spin7_basis())?;
    let [v] = space.as_slice() else {
        return Err(Error::Internal(format!("fixed space has dimension {}", space.len())));
    };
    Spinor::chiral(Chirality::Plus, normalize(v))
}

fn normalize(v: &[Q]) -> Vec<Q> {
    if let Some(s) = crate::linalg::rational_sqrt(&dot(v, v)) {
        return v.iter().map(|x| x / &s).collect();
    }
    let lead = v.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(Q::one);
    v.iter().map(|x| x / &lead).collect()
}

/// Which Lie algebra acts on `S_8^+` in a stabilizer computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizerAlgebra {
    /// All of spin(8) through the positive half-spin representation.
    Spin8,
    /// spin(7) through the spin representation `Delta_7`.
    Spin7,
    /// spin(7) through `Delta_8^+` composed with `iota_plus`.
    Spin7Plus,
}

fn action_images(rep: &GammaRep, psi: &Spinor, algebra: StabilizerAlgebra) -> Result<Vec<Vec<Q>>> {
    if psi.chirality != Some(Chirality::Plus) {
        return Err(Error::Argument("stabilizers are computed on positive spinors".into()));
    }
    if psi.is_zero() {
        return Err(Error::Argument("zero spinor".into()));
    }
    let mats = match algebra {
        StabilizerAlgebra::Spin8 => {
            spin8_basis().iter().map(|x| chiral_action(rep, x, Chirality::Plus)).collect::<Result<Vec<_>>>()?
        }
        StabilizerAlgebra::Spin7 => spin7_basis().iter().map(|x| d_delta7(rep, x)).collect::<Result<Vec<_>>>()?,
        StabilizerAlgebra::Spin7Plus => spin7_basis()
            .iter()
            .map(|x| chiral_action(rep, &d_iota_plus(rep, x)?, Chirality::Plus))
            .collect::<Result<Vec<_>>>()?,
    };
    Ok(mats.iter().map(|m| m.apply(&psi.coords)).collect())
}

/// `dim {X : dX psi = 0}` as an exact kernel rank.
pub fn stabilizer_dimension(rep: &GammaRep, psi: &Spinor, algebra: StabilizerAlgebra) -> Result<usize> {
    let images = action_images(rep, psi, algebra)?;
    Ok(images.len() - span_rank(&images))
}

/// Dimension of the tangent space to the orbit through `psi`.
pub fn orbit_rank(rep: &GammaRep, psi: &Spinor, algebra: StabilizerAlgebra) -> Result<usize> {
    Ok(span_rank(&action_images(rep, psi, algebra)?))
}

/// Dimensions of the two images of spin(7) in spin(8) and of their intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionReport {
    pub vector_image: usize,
    pub plus_image: usize,
    pub intersection: usize,
    /// Every element of a basis of the intersection kills both the fixed
    /// spinor and `e_0`.
    pub fixes_spinor_and_vector: bool,
}

pub fn g2_intersection(rep: &GammaRep) -> Result<IntersectionReport> {
    let basis = spin7_basis();
    let u: Vec<Vec<Q>> = basis.iter().map(|x| Ok(bivector_coords(&d_iota_vector(x)?))).collect::<Result<_>>()?;
    let v: Vec<Vec<Q>> = basis.iter().map(|x| Ok(bivector_coords(&d_iota_plus(rep, x)?))).collect::<Result<_>>()?;
    let vector_image = span_rank(&u);
    let plus_image = span_rank(&v);
    let sum = span_rank(&[u.clone(), v.clone()].concat());
    let intersection = vector_image + plus_image - sum;

    // Solve sum a_k u_k = sum b_k v_k; the a-parts give the intersection.
    let rows = 28;
    let cols: Vec<Vec<Q>> = u.iter().cloned().chain(v.iter().map(|c| c.iter().map(|x| -x).collect())).collect();
    let system = QMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone());
    let psi = fixed_spinor(rep)?;
    let spin8 = spin8_basis();
    let e0 = Multivector::generator(8, 0)?;
    let mut fixes = true;
    for kernel_vec in system.nullspace() {
        let mut x = Multivector::zero(8)?;
        for (k, b) in spin8.iter().enumerate() {
            let c: Q = (0..u.len()).map(|j| &kernel_vec[j] * &u[j][k]).sum();
            x = &x + &b.scale(&c);
        }
        let kills_psi = chiral_action(rep, &x, Chirality::Plus)?.apply(&psi.coords).iter().all(Zero::is_zero);
        let kills_e0 = x.commutator(&e0)?.is_zero();
        fixes &= kills_psi && kills_e0;
    }
    Ok(IntersectionReport { vector_image, plus_image, intersection, fixes_spinor_and_vector: fixes })
}

/// Stabilizer and orbit dimensions of random unit spinors under `Delta_7`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityReport {
    pub samples: Vec<(usize, usize)>,
}

impl TransitivityReport {
    pub fn uniform(&self, stabilizer: usize, orbit: usize) -> bool {
        !self.samples.is_empty() && self.samples.iter().all(|&s| s == (stabilizer, orbit))
    }
}

pub fn spin7_sphere_transitivity(rep: &GammaRep, samples: usize, seed: u64) -> Result<TransitivityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let phi = Spinor::chiral(Chirality::Plus, random_unit_vector(CHIRAL_DIM, &mut rng))?;
        let images = action_images(rep, &phi, StabilizerAlgebra::Spin7)?;
        let rank = span_rank(&images);
        out.push((images.len() - rank, rank));
    }
    Ok(TransitivityReport { samples: out })
}

/// Rank of the 256 monomial matrices as vectors in `R^256`.
pub fn monomial_span_rank(rep: &GammaRep) -> usize {
    // Each monomial is a signed permutation, so its flattening has exactly 16
    // nonzero entries; a rank over Q needs elimination all the same.
    let rows: Vec<Vec<Q>> = rep.monomials.iter().map(|m| m.to_matrix().entries().to_vec()).collect();
    span_rank(&rows)
}

/// `Ad_8(iota_plus(zeta))` and `delta7(zeta)` agree.
pub fn lifts_delta7(rep: &GammaRep, zeta: &SpinElement) -> Result<bool> {
    let lifted = iota_plus(rep, zeta)?;
    Ok(adjoint_action(&lifted)?.matrix() == &delta7(rep, zeta)?)
}
