//! Verification suites behind `spin7 verify`. Every check is exact and every
//! random choice flows from the seed, so a report is a pure function of
//! `(scope, seed)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::census::{self, ManifoldCharData, StructureCount};
use crate::clifford::{chiral_projectors, p_iso, volume_element, Blade, Multivector};
use crate::cochain::{
    cohomology_dim_mod_p, coboundary, difference_cochain, product_with_interval, random_complex, random_relative_cochain,
    random_relative_cocycle, relative_cohomology, Cochain, Coefficients, CWPairComplex, IntervalGenerator, PI8_S7,
};
use crate::error::{Error, Result};
use crate::linalg::{q, q_frac, QMatrix, Q};
use crate::reps::{self, Chirality, GammaRep, Spinor, StabilizerAlgebra};
use crate::spin::{
    adjoint_action, infinitesimal_adjoint, lie_lift, lift_rotation, random_skew, random_spin_with, random_unit_vector,
    SpinElement,
};
use crate::torsor::{check_group, FiniteAbelianGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Clifford,
    Spin,
    Reps,
    Cochain,
    Torsor,
    Census,
    All,
}

impl Scope {
    pub const SUITES: [Scope; 6] = [Scope::Clifford, Scope::Spin, Scope::Reps, Scope::Cochain, Scope::Torsor, Scope::Census];

    pub fn name(self) -> &'static str {
        match self {
            Scope::Clifford => "clifford",
            Scope::Spin => "spin",
            Scope::Reps => "reps",
            Scope::Cochain => "cochain",
            Scope::Torsor => "torsor",
            Scope::Census => "census",
            Scope::All => "all",
        }
    }
}

impl FromStr for Scope {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scope::SUITES
            .iter()
            .chain([Scope::All].iter())
            .copied()
            .find(|scope| scope.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown scope `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub detail: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub scope: Scope,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify {} (seed {})", self.scope.name(), self.seed)?;
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            write!(f, "  {:<8} {:<width$}  {status}", c.suite, c.name)?;
            if !c.detail.is_empty() {
                write!(f, "  {}", c.detail)?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} passed, {} failed", self.checks.len(), self.checks.len() - failed, failed)
    }
}

struct Suite {
    name: &'static str,
    checks: Vec<Check>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check { suite: self.name, name: name.into(), detail, passed });
    }

    fn flag(&mut self, name: impl Into<String>, outcome: Result<bool>) {
        self.check(name, outcome.map(|ok| (ok, String::new())));
    }
}

/// Run the suites in `scope`; each suite seeds its own generator from `seed`.
pub fn run(scope: Scope, seed: u64) -> Result<VerifyReport> {
    let suites: Vec<Scope> = if scope == Scope::All { Scope::SUITES.to_vec() } else { vec![scope] };
    let mut checks = Vec::new();
    let mut rep = None;
    for s in suites {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ suite_salt(s));
        let suite = match s {
            Scope::Clifford => clifford_suite(&mut rng),
            Scope::Spin => spin_suite(&mut rng),
            Scope::Reps => {
                let r = rep.get_or_insert(reps::build_cl8_rep()?);
                reps_suite(r, &mut rng)
            }
            Scope::Cochain => cochain_suite(&mut rng),
            Scope::Torsor => torsor_suite(16),
            Scope::Census => census_suite(),
            Scope::All => unreachable!("expanded above"),
        };
        checks.extend(suite.checks);
    }
    Ok(VerifyReport { scope, seed, checks })
}

fn suite_salt(scope: Scope) -> u64 {
    match scope {
        Scope::Clifford => 0x01,
        Scope::Spin => 0x02,
        Scope::Reps => 0x03,
        Scope::Cochain => 0x04,
        Scope::Torsor => 0x05,
        Scope::Census => 0x06,
        Scope::All => 0x00,
    }
}

/// A random element of Cl(0,n) with a few small rational coefficients.
pub fn random_multivector(n: usize, terms: usize, rng: &mut impl Rng) -> Multivector {
    let t = (0..terms).map(|_| (Blade(rng.gen_range(0..(1u32 << n)) as u16), q_frac(rng.gen_range(-5..=5), rng.gen_range(1..=3))));
    Multivector::from_terms(n, t).expect("n is in range")
}

/// Whether `e_i e_j + e_j e_i = -2 delta_ij` for all pairs in Cl(0,n).
pub fn generator_relations_hold(n: usize) -> Result<bool> {
    for i in 0..n {
        for j in 0..n {
            let ei = Multivector::generator(n, i)?;
            let ej = Multivector::generator(n, j)?;
            let anti = ei.try_mul(&ej)?.try_add(&ej.try_mul(&ei)?)?;
            let expected = Multivector::scalar(n, if i == j { q(-2) } else { Q::zero() })?;
            if anti != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn clifford_suite(rng: &mut ChaCha8Rng) -> Suite {
    let mut s = Suite::new("clifford");
    s.flag("generator relations in Cl(0,8), 64 pairs", generator_relations_hold(8));
    s.flag("generator relations in Cl(0,n) for n = 1..7", (1..8).try_fold(true, |ok, n| Ok(ok && generator_relations_hold(n)?)));
    s.flag(
        "associativity on 20 random triples in Cl(0,8)",
        (0..20).try_fold(true, |ok, _| {
            let (a, b, c) = (random_multivector(8, 6, rng), random_multivector(8, 6, rng), random_multivector(8, 6, rng));
            Ok(ok && a.try_mul(&b)?.try_mul(&c)? == a.try_mul(&b.try_mul(&c)?)?)
        }),
    );
    s.flag(
        "reversion is an anti-automorphism, grade involution an automorphism",
        (0..20).try_fold(true, |ok, _| {
            let (a, b) = (random_multivector(8, 6, rng), random_multivector(8, 6, rng));
            let ab = a.try_mul(&b)?;
            Ok(ok
                && ab.reverse() == b.reverse().try_mul(&a.reverse())?
                && ab.grade_involution() == a.grade_involution().try_mul(&b.grade_involution())?)
        }),
    );
    s.flag(
        "w7 is central with square 1",
        (|| {
            let w = volume_element(7)?;
            let central = (0..7).try_fold(true, |ok, i| {
                let e = Multivector::generator(7, i)?;
                Ok::<_, Error>(ok && w.try_mul(&e)? == e.try_mul(&w)?)
            })?;
            Ok(central && w.try_mul(&w)? == Multivector::one(7)?)
        })(),
    );
    s.flag(
        "w8 squares to 1 and anticommutes with vectors",
        (|| {
            let w = volume_element(8)?;
            let anti = (0..8).try_fold(true, |ok, i| {
                let e = Multivector::generator(8, i)?;
                Ok::<_, Error>(ok && w.try_mul(&e)? == -e.try_mul(&w)?)
            })?;
            Ok(anti && w.try_mul(&w)? == Multivector::one(8)?)
        })(),
    );
    s.flag(
        "chiral projectors in Cl(0,7) are complementary orthogonal idempotents",
        (|| {
            let (p, m) = chiral_projectors();
            Ok(p.try_mul(&p)? == p && m.try_mul(&m)? == m && p.try_mul(&m)?.is_zero() && p.try_add(&m)? == Multivector::one(7)?)
        })(),
    );
    s.flag(
        "Cl(0,7) -> even part of Cl(0,8) is multiplicative on 20 random pairs",
        (0..20).try_fold(true, |ok, _| {
            let (a, b) = (random_multivector(7, 5, rng), random_multivector(7, 5, rng));
            Ok(ok && p_iso(&a.try_mul(&b)?)? == p_iso(&a)?.try_mul(&p_iso(&b)?)? && p_iso(&a)?.is_even())
        }),
    );
    s.check(
        "blades of Cl(0,8) are distinct products of generators",
        (|| {
            let mut seen = std::collections::BTreeSet::new();
            for mask in 0u16..256 {
                let prod = Blade(mask).indices().try_fold(Multivector::one(8)?, |acc, i| acc.try_mul(&Multivector::generator(8, i)?))?;
                let (blade, _) = prod.terms().next().ok_or_else(|| Error::Internal("zero product".into()))?;
                seen.insert(blade);
            }
            Ok((seen.len() == 256, format!("dim = {}", seen.len())))
        })(),
    );
    s
}

fn spin_suite(rng: &mut ChaCha8Rng) -> Suite {
    let mut s = Suite::new("spin");
    s.flag(
        "Ad_8 is a homomorphism on 10 random pairs",
        (0..10).try_fold(true, |ok, _| {
            let a = random_spin_with(8, 2, rng)?;
            let b = random_spin_with(8, 2, rng)?;
            let lhs = adjoint_action(&(&a * &b))?;
            Ok(ok && lhs == &adjoint_action(&a)? * &adjoint_action(&b)?)
        }),
    );
    s.flag(
        "Ad_8 is special orthogonal and even: Ad(-z) = Ad(z)",
        (0..10).try_fold(true, |ok, _| {
            let z = random_spin_with(8, 2, rng)?;
            let m = adjoint_action(&z)?;
            Ok(ok && m.matrix().is_orthogonal() && m.matrix().determinant().is_one() && adjoint_action(&-z)? == m)
        }),
    );
    s.flag(
        "lifting Ad_n(z) recovers z up to sign, n = 2..8",
        (2..=8).try_fold(true, |ok, n| {
            let z = random_spin_with(n, 2, rng)?;
            let lift = lift_rotation(&adjoint_action(&z)?);
            Ok(ok && (lift == z || lift == -z))
        }),
    );
    s.flag(
        "kernel of Ad_8 is {1, -1}",
        (|| {
            let minus = SpinElement::minus_one(8)?;
            let w8 = SpinElement::new(volume_element(8)?)?;
            Ok(adjoint_action(&minus)?.matrix() == &QMatrix::identity(8) && adjoint_action(&w8)?.matrix() != &QMatrix::identity(8))
        })(),
    );
    s.flag(
        "lie_lift inverts the differential of Ad_8 on 10 random skew matrices",
        (0..10).try_fold(true, |ok, _| {
            let a = random_skew(8, rng);
            Ok(ok && infinitesimal_adjoint(&lie_lift(&a))? == a)
        }),
    );
    s
}

/// Values reported by the representation suite, also used by acceptance tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepDimensions {
    pub monomial_rank: usize,
    pub plus_eigenspace: usize,
    pub minus_eigenspace: usize,
    pub fixed_space: usize,
    pub stabilizer: usize,
    pub orbit: usize,
    pub g2_intersection: usize,
    pub spinor_stabilizer: Vec<usize>,
}

/// The key dimensions of the spinor geometry of Spin(7) in Spin(8).
pub fn rep_dimensions(rep: &GammaRep, seed: u64) -> Result<RepDimensions> {
    let fixed = reps::common_fixed_space(rep, &reps::spin7_basis())?;
    let psi = reps::fixed_spinor(rep)?;
    let transitivity = reps::spin7_sphere_transitivity(rep, 10, seed)?;
    Ok(RepDimensions {
        monomial_rank: reps::monomial_span_rank(rep),
        plus_eigenspace: rep.basis_plus().cols(),
        minus_eigenspace: rep.basis_minus().cols(),
        fixed_space: fixed.len(),
        stabilizer: reps::stabilizer_dimension(rep, &psi, StabilizerAlgebra::Spin8)?,
        orbit: reps::orbit_rank(rep, &psi, StabilizerAlgebra::Spin8)?,
        g2_intersection: reps::g2_intersection(rep)?.intersection,
        spinor_stabilizer: transitivity.samples.iter().map(|s| s.0).collect(),
    })
}

/// Clifford multiplication by `samples` random unit vectors swaps the chiral
/// halves and is an isometry.
pub fn chirality_swap_holds(rep: &GammaRep, samples: usize, rng: &mut impl Rng) -> Result<bool> {
    for _ in 0..samples {
        let v = Multivector::vector(&random_unit_vector(8, rng))?;
        let c = reps::clifford_action(rep, &v)?;
        let plus_to_plus = &rep.basis_plus().transpose() * &(&c * rep.basis_plus());
        let minus_to_minus = &rep.basis_minus().transpose() * &(&c * rep.basis_minus());
        if !c.is_orthogonal() || !plus_to_plus.is_zero() || !minus_to_minus.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Ad_8 iota_plus = Delta_7` on the Lie algebra basis and on `samples`
/// random group elements.
pub fn iota_plus_lifts_delta7(rep: &GammaRep, samples: usize, rng: &mut impl Rng) -> Result<bool> {
    for x in reps::spin7_basis() {
        if infinitesimal_adjoint(&reps::d_iota_plus(rep, &x)?)?.matrix() != &reps::d_delta7(rep, &x)? {
            return Ok(false);
        }
    }
    for _ in 0..samples {
        if !reps::lifts_delta7(rep, &random_spin_with(7, 2, rng)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn reps_suite(rep: &GammaRep, rng: &mut ChaCha8Rng) -> Suite {
    let mut s = Suite::new("reps");
    s.flag(
        "gamma matrices satisfy the Clifford relations",
        (|| {
            let g = rep.gamma();
            let id = QMatrix::identity(16);
            Ok((0..8).all(|i| {
                (0..8).all(|j| {
                    let anti = &(&g[i] * &g[j]) + &(&g[j] * &g[i]);
                    if i == j { anti == id.scale(&q(-2)) } else { anti.is_zero() }
                })
            }))
        })(),
    );
    let dims = rep_dimensions(rep, rng.gen());
    let get = |f: fn(&RepDimensions) -> usize, want: usize| -> Result<(bool, String)> {
        let d = dims.as_ref().map_err(Clone::clone)?;
        let v = f(d);
        Ok((v == want, format!("{v}")))
    };
    s.check("256 monomials span End(R^16)", get(|d| d.monomial_rank, 256));
    s.check("+1 eigenspace of c(w8)", get(|d| d.plus_eigenspace, 8));
    s.check("-1 eigenspace of c(w8)", get(|d| d.minus_eigenspace, 8));
    s.flag("25 random unit vectors swap chirality isometrically", chirality_swap_holds(rep, 25, rng));
    s.flag(
        "Delta_8+(w8) = I and Delta_8-(w8) = -I",
        (|| {
            let w = SpinElement::new(volume_element(8)?)?;
            Ok(reps::delta8(rep, &w, Chirality::Plus)? == QMatrix::identity(8)
                && reps::delta8(rep, &w, Chirality::Minus)? == -QMatrix::identity(8))
        })(),
    );
    s.flag(
        "Delta_7(-1) = -I",
        (|| Ok(reps::delta7(rep, &SpinElement::minus_one(7)?)? == -QMatrix::identity(8)))(),
    );
    s.flag(
        "iota_plus(-1) = w8 and iota_vector(-1) = -1",
        (|| {
            let minus = SpinElement::minus_one(7)?;
            Ok(reps::iota_plus(rep, &minus)?.versor() == &volume_element(8)? && reps::iota_vector(&minus)? == SpinElement::minus_one(8)?)
        })(),
    );
    s.flag("Ad_8 iota_plus = Delta_7 on spin(7) and 10 random elements", iota_plus_lifts_delta7(rep, 10, rng));
    s.flag(
        "iota_plus is multiplicative on 5 random pairs",
        (0..5).try_fold(true, |ok, _| {
            let a = random_spin_with(7, 1, rng)?;
            let b = random_spin_with(7, 1, rng)?;
            Ok(ok && reps::iota_plus(rep, &(&a * &b))? == &reps::iota_plus(rep, &a)? * &reps::iota_plus(rep, &b)?)
        }),
    );
    s.flag(
        "Delta_8+ iota_plus sends -1 to I",
        (|| {
            let image = reps::iota_plus(rep, &SpinElement::minus_one(7)?)?;
            Ok(reps::delta8(rep, &image, Chirality::Plus)? == QMatrix::identity(8))
        })(),
    );
    s.flag(
        "Ad_8 iota_vector fixes e0 on 5 random elements",
        (0..5).try_fold(true, |ok, _| {
            let z = random_spin_with(7, 2, rng)?;
            let m = adjoint_action(&reps::iota_vector(&z)?)?;
            Ok(ok && m.matrix().column(0) == QMatrix::identity(8).column(0))
        }),
    );
    s.check("common fixed space of iota_plus(spin(7)) in S8+", get(|d| d.fixed_space, 1));
    s.check("stabilizer of the fixed spinor in spin(8)", get(|d| d.stabilizer, 21));
    s.check("orbit of the fixed spinor, Spin(8)/Spin(7) = S^7", get(|d| d.orbit, 7));
    s.check("intersection of iota_vector and iota_plus images, g2", get(|d| d.g2_intersection, 14));
    s.check(
        "Delta_7 stabilizer of 10 random unit spinors",
        dims.as_ref().map_err(Clone::clone).map(|d| {
            (d.spinor_stabilizer.iter().all(|&v| v == 14), format!("{:?}", d.spinor_stabilizer))
        }),
    );
    s.flag(
        "stabilizer in spin(8) of 3 random unit spinors",
        (0..3).try_fold(true, |ok, _| {
            let psi = Spinor::chiral(Chirality::Plus, random_unit_vector(8, rng))?;
            Ok(ok && reps::stabilizer_dimension(rep, &psi, StabilizerAlgebra::Spin8)? == 21)
        }),
    );
    s
}

/// Counts from the randomized difference cochain check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceTally {
    pub instances: usize,
    pub nonzero: usize,
    pub failures: usize,
    pub max_cells: usize,
}

/// Draw `instances` random complexes with at most `max_cells` cells, a random
/// cocycle on `(X x I, Y x I)`, and check `delta d = (-1)^{k+1}(o0 - o1)` for
/// its difference cochain. With `k` odd the sign is `+`.
pub fn difference_identity_trials(instances: usize, max_cells: usize, rng: &mut impl Rng) -> Result<DifferenceTally> {
    let mut tally = DifferenceTally { instances, nonzero: 0, failures: 0, max_cells: 0 };
    for _ in 0..instances {
        let top = rng.gen_range(2..=8);
        let x = random_complex(max_cells, top, rng);
        tally.max_cells = tally.max_cells.max(x.total_cells());
        let p = product_with_interval(&x)?;
        let side = p.side_pair();
        let k = rng.gen_range(0..top);
        let o_hat = random_relative_cocycle(&side, k + 1, rng);
        let restrict = |generator| {
            let values = (0..x.cell_count(k + 1)).map(|s| o_hat.values[p.index(k + 1, s, generator)].clone()).collect();
            Cochain::new(k + 1, Coefficients::Integers, values)
        };
        let o0 = restrict(IntervalGenerator::Zero)?;
        let o1 = restrict(IntervalGenerator::One)?;
        let d = difference_cochain(&o_hat, &o0, &o1, &p)?;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let expected = o0.try_sub(&o1)?.scale(sign);
        if coboundary(&d, &x)? != expected || !d.is_relative(&x) {
            tally.failures += 1;
        }
        if !expected.is_zero() {
            tally.nonzero += 1;
        }
    }
    Ok(tally)
}

/// Compare Smith-form cohomology with `F_p` ranks on `instances` random
/// complexes of at most `max_cells` cells; returns the number of mismatches.
pub fn snf_vs_mod_p(instances: usize, max_cells: usize, rng: &mut impl Rng) -> Result<usize> {
    let mut mismatches = 0;
    for _ in 0..instances {
        let x = random_complex(max_cells, rng.gen_range(1..=8), rng);
        for p in [2u64, 3] {
            for k in 0..=x.top_dim() {
                if relative_cohomology(&x, k, Coefficients::Mod(p))?.summands() != cohomology_dim_mod_p(&x, k, p) {
                    mismatches += 1;
                }
            }
        }
    }
    Ok(mismatches)
}

fn cochain_suite(rng: &mut ChaCha8Rng) -> Suite {
    let mut s = Suite::new("cochain");
    s.flag(
        "delta delta = 0 on 20 random complexes of at most 200 cells",
        (0..20).try_fold(true, |ok, _| {
            let top = rng.gen_range(2..=8);
            let x = random_complex(200, top, rng);
            let k = rng.gen_range(0..top - 1);
            let c = random_relative_cochain(&x, k, rng);
            Ok(ok && coboundary(&coboundary(&c, &x)?, &x)?.is_zero())
        }),
    );
    s.flag(
        "interval generators: delta 0 = -I, delta 1 = I",
        (|| {
            let i = CWPairComplex::interval();
            let zero = Cochain::from_i64(0, Coefficients::Integers, &[1, 0])?;
            let one = Cochain::from_i64(0, Coefficients::Integers, &[0, 1])?;
            Ok(coboundary(&zero, &i)?.values == vec![(-1).into()] && coboundary(&one, &i)?.values == vec![1.into()])
        })(),
    );
    s.check(
        "H^8(D^8, S^7; Z/2)",
        (|| {
            let g = relative_cohomology(&CWPairComplex::disk_rel_boundary(8)?, 8, PI8_S7)?;
            Ok((g.to_string() == "Z/2", g.to_string()))
        })(),
    );
    s.check(
        "H^7(S^7; Z)",
        (|| {
            let g = relative_cohomology(&CWPairComplex::sphere(7)?, 7, Coefficients::Integers)?;
            Ok((g.to_string() == "Z", g.to_string()))
        })(),
    );
    s.check(
        "difference cochain identity on 100 random complexes",
        difference_identity_trials(100, 200, rng).map(|t| {
            (t.failures == 0, format!("{} failures, {} with nonzero o0 - o1", t.failures, t.nonzero))
        }),
    );
    s.check(
        "Smith form agrees with F_2 and F_3 ranks on 100 complexes of at most 30 cells",
        snf_vs_mod_p(100, 30, rng).map(|m| (m == 0, format!("{m} mismatches"))),
    );
    s
}

fn torsor_suite(max_order: u64) -> Suite {
    let mut s = Suite::new("torsor");
    let groups = FiniteAbelianGroup::all_up_to_order(max_order);
    let results: Result<Vec<_>> = groups.iter().map(check_group).collect();
    s.check(
        format!("difference/action correspondence for all abelian groups of order <= {max_order}"),
        results.map(|rs| {
            let failed: Vec<String> = rs.iter().filter(|r| !r.passed()).map(|r| r.group.to_string()).collect();
            (failed.is_empty(), format!("{} groups, {} counterexamples", rs.len(), failed.len()))
        }),
    );
    s
}

/// The census facts checked by the census suite, by name.
pub fn census_facts() -> Vec<(&'static str, Result<(bool, String)>)> {
    let s8 = ManifoldCharData::closed("S8", 0, 0, 2);
    let zero = ManifoldCharData::closed("zero", 0, 0, 0);
    let hp2 = ManifoldCharData::closed("HP2", 4, 7, 3);
    vec![
        (
            "S^8: e(S+) = 1, no structure",
            census::euler_positive_spinor(&s8).and_then(|e| Ok((e == q(1) && !census::spin7_exists(&s8)?, e.to_string()))),
        ),
        ("all-zero data: structure exists", census::spin7_exists(&zero).map(|b| (b, String::new()))),
        (
            "HP^2: e(S+) = 3 and 7 p2 - p1^2 = 45",
            census::euler_positive_spinor(&hp2).map(|e| {
                let sig = BigInt::from(7) * &hp2.p2 - &hp2.p1_sq;
                (e == q(3) && sig == 45.into(), format!("e(S+) = {e}, 7 p2 - p1^2 = {sig}"))
            }),
        ),
        (
            "closed, connected, H^7 = 0, e(S+) = 0: exactly two structures",
            census::count_spin7_structures(&zero, false)
                .map(|c| (c == StructureCount::PowerOfTwo(1) && c.to_string() == "2", c.to_string())),
        ),
        (
            "structure count matches the (Z/2)^k torsor, k = 0..4",
            (0..=4).try_fold(true, |ok, k| Ok(ok && census::count_matches_torsor(&StructureCount::PowerOfTwo(k))?)).map(|b| (b, String::new())),
        ),
    ]
}

fn census_suite() -> Suite {
    let mut s = Suite::new("census");
    for (name, outcome) in census_facts() {
        s.check(name, outcome);
    }
    s
}
