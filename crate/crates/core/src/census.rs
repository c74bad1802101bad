//! Spin(7)-structures on spin 8-manifolds from characteristic numbers.
//!
//! Existence is the vanishing of the Euler class of the positive spinor
//! bundle, `16 e(S+) = 4 p2 - p1^2 + 8 e`. When it vanishes and
//! `H^7(W, dW; Z) = 0`, structures (relative to a fixed G2-structure on the
//! boundary) form a torsor for `H^8(W, dW; Z/2)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Q;
use crate::torsor::{check_group, FiniteAbelianGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldCharData {
    pub name: String,
    pub p1_sq: BigInt,
    pub p2: BigInt,
    pub euler: BigInt,
    pub h7_rel_rank: u64,
    pub h8_z2_dim: u64,
    pub components: u64,
    pub simply_connected: bool,
    pub has_boundary: bool,
    pub spin: bool,
    /// Whether the structure in question is torsion-free; only the holonomy
    /// criterion reads it.
    pub torsion_free: bool,
}

impl ManifoldCharData {
    /// A closed, connected, simply connected spin manifold.
    pub fn closed(name: &str, p1_sq: i64, p2: i64, euler: i64) -> Self {
        ManifoldCharData {
            name: name.to_string(),
            p1_sq: p1_sq.into(),
            p2: p2.into(),
            euler: euler.into(),
            h7_rel_rank: 0,
            h8_z2_dim: 1,
            components: 1,
            simply_connected: true,
            has_boundary: false,
            spin: true,
            torsion_free: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.components == 0 {
            return Err(Error::Validation(format!("{}: components must be positive", self.name)));
        }
        if !self.has_boundary && self.components == 1 && self.h8_z2_dim != 1 {
            return Err(Error::Validation(format!(
                "{}: a closed connected manifold has h8_z2_dim = 1, not {}",
                self.name, self.h8_z2_dim
            )));
        }
        Ok(())
    }

    fn require_spin(&self) -> Result<()> {
        if self.spin {
            Ok(())
        } else {
            Err(Error::Precondition(format!("{} is not spin", self.name)))
        }
    }
}

pub fn euler_positive_spinor(d: &ManifoldCharData) -> Result<Q> {
    d.require_spin()?;
    let numer = BigInt::from(4) * &d.p2 - &d.p1_sq + BigInt::from(8) * &d.euler;
    Ok(Q::new(numer, BigInt::from(16)))
}

/// `e(S-) = e(S+) - e(TW)`.
pub fn euler_negative_spinor(d: &ManifoldCharData) -> Result<Q> {
    Ok(euler_positive_spinor(d)? - Q::from_integer(d.euler.clone()))
}

pub fn spin7_exists(d: &ManifoldCharData) -> Result<bool> {
    Ok(euler_positive_spinor(d)?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureCount {
    /// No structure exists.
    Empty,
    /// `2^k` structures.
    PowerOfTwo(u64),
    ZTorsor,
    Undetermined,
}

impl StructureCount {
    pub fn cardinality(&self) -> Option<BigInt> {
        match self {
            StructureCount::Empty => Some(BigInt::zero()),
            StructureCount::PowerOfTwo(k) => Some(BigInt::one() << (*k as usize)),
            _ => None,
        }
    }
}

impl fmt::Display for StructureCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureCount::Empty => write!(f, "0"),
            StructureCount::PowerOfTwo(k) => write!(f, "{}", BigInt::one() << (*k as usize)),
            StructureCount::ZTorsor => write!(f, "Z-torsor"),
            StructureCount::Undetermined => write!(f, "undetermined"),
        }
    }
}

/// Number of Spin(7)-structures up to homotopy.
///
/// On a manifold with boundary the count is only meaningful relative to a
/// G2-structure fixed on the boundary; without one the result is undetermined.
pub fn count_spin7_structures(d: &ManifoldCharData, boundary_g2_fixed: bool) -> Result<StructureCount> {
    if !spin7_exists(d)? {
        return Err(Error::Precondition(format!("{} has no Spin(7)-structure", d.name)));
    }
    if d.h7_rel_rank > 0 || (d.has_boundary && !boundary_g2_fixed) {
        return Ok(StructureCount::Undetermined);
    }
    Ok(StructureCount::PowerOfTwo(d.h8_z2_dim))
}

/// G2-structures on a closed 7-manifold: none unless it is spin, and then a
/// torsor for `Z`.
pub fn count_g2_structures(spin: bool) -> StructureCount {
    if spin {
        StructureCount::ZTorsor
    } else {
        StructureCount::Empty
    }
}

/// `(7 p1^2 - 4 p2) / 5760`.
pub fn a_hat(d: &ManifoldCharData) -> Q {
    let numer = BigInt::from(7) * &d.p1_sq - BigInt::from(4) * &d.p2;
    Q::new(numer, BigInt::from(5760))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Holonomy {
    /// Holonomy `Spin(8 - A)` for `A` in `1..=4`.
    Spin(u8),
    Inapplicable(Q),
}

impl fmt::Display for Holonomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Holonomy::Spin(n) => write!(f, "Spin({n})"),
            Holonomy::Inapplicable(a) => write!(f, "criterion inapplicable (A-hat = {a})"),
        }
    }
}

/// Holonomy of a torsion-free Spin(7)-structure on a closed simply connected
/// manifold, read off from the A-hat genus.
pub fn holonomy_from_ahat(d: &ManifoldCharData, torsion_free: bool) -> Result<Holonomy> {
    let mut missing = Vec::new();
    if d.has_boundary {
        missing.push("closed");
    }
    if !d.simply_connected {
        missing.push("simply connected");
    }
    if !torsion_free {
        missing.push("torsion-free");
    }
    if !missing.is_empty() {
        return Err(Error::Gate(format!("{} is not {}", d.name, missing.join(", "))));
    }
    let a = a_hat(d);
    match a.to_integer().to_u8() {
        Some(k @ 1..=4) if a.is_integer() => Ok(Holonomy::Spin(8 - k)),
        _ => Ok(Holonomy::Inapplicable(a)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub name: String,
    pub e_s_plus: Q,
    pub e_s_minus: Q,
    pub exists: bool,
    pub count: StructureCount,
    pub holonomy_note: Option<String>,
    pub warnings: Vec<String>,
}

pub fn census(d: &ManifoldCharData, boundary_g2_fixed: bool) -> Result<CensusReport> {
    d.validate()?;
    let e_s_plus = euler_positive_spinor(d)?;
    let e_s_minus = euler_negative_spinor(d)?;
    let exists = e_s_plus.is_zero();
    let count = if exists { count_spin7_structures(d, boundary_g2_fixed)? } else { StructureCount::Empty };
    let mut warnings = Vec::new();
    if !e_s_plus.is_integer() {
        warnings.push(format!("e(S+) = {e_s_plus} is not an integer; the data cannot come from a closed spin manifold"));
    }
    let holonomy_note = match holonomy_from_ahat(d, d.torsion_free) {
        Ok(h) => Some(format!("{h} [A-hat = (7 p1^2 - 4 p2)/5760]")),
        Err(Error::Gate(reason)) => Some(format!("undetermined: {reason}")),
        Err(_) => None,
    };
    if d.torsion_free && !exists {
        warnings.push("torsion-free flag set but no Spin(7)-structure exists".into());
    }
    Ok(CensusReport { name: d.name.clone(), e_s_plus, e_s_minus, exists, count, holonomy_note, warnings })
}

/// Compare a `2^k` count with the carrier of the regular `(Z/2)^k` torsor.
pub fn count_matches_torsor(count: &StructureCount) -> Result<bool> {
    match count {
        StructureCount::PowerOfTwo(k) if *k <= 10 => {
            let group = FiniteAbelianGroup::elementary_two(*k as usize);
            let check = check_group(&group)?;
            Ok(check.passed() && count.cardinality() == Some(BigInt::from(group.order())))
        }
        StructureCount::PowerOfTwo(_) => Err(Error::Argument("group too large to enumerate".into())),
        _ => Ok(true),
    }
}

fn parse_bool(value: &str) -> Option<bool> {
    match value {
        "true" | "yes" | "1" => Some(true),
        "false" | "no" | "0" => Some(false),
        _ => None,
    }
}

/// Parse records of `key = value` lines separated by blank lines. Each record
/// starts with `name`; `#` starts a comment.
pub fn parse_manifolds(text: &str) -> Result<Vec<ManifoldCharData>> {
    #[derive(Default)]
    struct Partial {
        start: usize,
        fields: Vec<(usize, String, String)>,
    }
    let mut records: Vec<Partial> = Vec::new();
    let mut current: Option<Partial> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            records.extend(current.take());
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse { line: line_no, message: format!("expected `key = value`, found `{line}`") })?;
        let rec = current.get_or_insert_with(|| Partial { start: line_no, fields: Vec::new() });
        rec.fields.push((line_no, key.trim().to_string(), value.trim().to_string()));
    }
    records.extend(current);

    let mut out = Vec::new();
    for rec in records {
        let mut name = None;
        let mut ints: [Option<BigInt>; 3] = [None, None, None];
        let mut counts: [Option<u64>; 3] = [None, None, None];
        let mut flags: [Option<bool>; 4] = [None, None, None, None];
        for (line, key, value) in rec.fields {
            let err = |message: String| Error::Parse { line, message };
            let dup = || err(format!("`{key}` given twice"));
            match key.as_str() {
                "name" => {
                    if name.replace(value.clone()).is_some() {
                        return Err(dup());
                    }
                }
                "p1_sq" | "p2" | "euler" => {
                    let slot = ["p1_sq", "p2", "euler"].iter().position(|k| *k == key).expect("listed");
                    let v = value.parse::<BigInt>().map_err(|_| err(format!("`{key}` needs an integer, found `{value}`")))?;
                    if ints[slot].replace(v).is_some() {
                        return Err(dup());
                    }
                }
                "h7_rel_rank" | "h8_z2_dim" | "components" => {
                    let slot = ["h7_rel_rank", "h8_z2_dim", "components"].iter().position(|k| *k == key).expect("listed");
                    let v = value
                        .parse::<u64>()
                        .map_err(|_| err(format!("`{key}` needs a nonnegative integer, found `{value}`")))?;
                    if counts[slot].replace(v).is_some() {
                        return Err(dup());
                    }
                }
                "simply_connected" | "has_boundary" | "spin" | "torsion_free" => {
                    let slot = ["simply_connected", "has_boundary", "spin", "torsion_free"]
                        .iter()
                        .position(|k| *k == key)
                        .expect("listed");
                    let v = parse_bool(&value).ok_or_else(|| err(format!("`{key}` needs true or false, found `{value}`")))?;
                    if flags[slot].replace(v).is_some() {
                        return Err(dup());
                    }
                }
                _ => return Err(err(format!("unknown field `{key}`"))),
            }
        }
        let missing = |field: &str| Error::Parse { line: rec.start, message: format!("record is missing `{field}`") };
        let [p1_sq, p2, euler] = ints;
        let [h7, h8, components] = counts;
        let [simply_connected, has_boundary, spin, torsion_free] = flags;
        let data = ManifoldCharData {
            name: name.ok_or_else(|| missing("name"))?,
            p1_sq: p1_sq.ok_or_else(|| missing("p1_sq"))?,
            p2: p2.ok_or_else(|| missing("p2"))?,
            euler: euler.ok_or_else(|| missing("euler"))?,
            h7_rel_rank: h7.ok_or_else(|| missing("h7_rel_rank"))?,
            h8_z2_dim: h8.ok_or_else(|| missing("h8_z2_dim"))?,
            components: components.ok_or_else(|| missing("components"))?,
            simply_connected: simply_connected.ok_or_else(|| missing("simply_connected"))?,
            has_boundary: has_boundary.ok_or_else(|| missing("has_boundary"))?,
            spin: spin.ok_or_else(|| missing("spin"))?,
            torsion_free: torsion_free.unwrap_or(false),
        };
        data.validate().map_err(|e| Error::Parse { line: rec.start, message: e.to_string() })?;
        out.push(data);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use crate::linalg::q;

    #[test]
    fn gray_green_examples() {
        let s8 = ManifoldCharData::closed("S8", 0, 0, 2);
        assert_eq!(euler_positive_spinor(&s8).unwrap(), q(1));
        assert_eq!(euler_negative_spinor(&s8).unwrap(), q(-1));
        assert!(!spin7_exists(&s8).unwrap());
        let hp2 = ManifoldCharData::closed("HP2", 4, 7, 3);
        assert_eq!(euler_positive_spinor(&hp2).unwrap(), q(3));
        assert_eq!(a_hat(&hp2), q(0));
        let zero = ManifoldCharData::closed("T8", 0, 0, 0);
        assert!(spin7_exists(&zero).unwrap());
    }

    #[test]
    fn non_spin_is_rejected() {
        let mut d = ManifoldCharData::closed("X", 0, 0, 0);
        d.spin = false;
        assert!(matches!(euler_positive_spinor(&d), Err(Error::Precondition(_))));
        assert_eq!(count_g2_structures(false), StructureCount::Empty);
        assert_eq!(count_g2_structures(true).to_string(), "Z-torsor");
    }

    #[test]
    fn counting_gates() {
        let d = ManifoldCharData::closed("W", 0, 0, 0);
        assert_eq!(count_spin7_structures(&d, false).unwrap().to_string(), "2");
        let mut torus = d.clone();
        torus.h7_rel_rank = 8;
        torus.simply_connected = false;
        assert_eq!(count_spin7_structures(&torus, false).unwrap(), StructureCount::Undetermined);
        let mut two = d.clone();
        two.components = 2;
        two.h8_z2_dim = 2;
        assert_eq!(count_spin7_structures(&two, false).unwrap().to_string(), "4");
        let mut bounded = d;
        bounded.has_boundary = true;
        assert_eq!(count_spin7_structures(&bounded, false).unwrap(), StructureCount::Undetermined);
        assert_eq!(count_spin7_structures(&bounded, true).unwrap().to_string(), "2");
        assert!(matches!(count_spin7_structures(&ManifoldCharData::closed("S8", 0, 0, 2), true), Err(Error::Precondition(_))));
    }

    #[test]
    fn holonomy_examples() {
        let joyce = ManifoldCharData::closed("J", 768, -96, 144);
        assert_eq!(holonomy_from_ahat(&joyce, true).unwrap(), Holonomy::Spin(7));
        let k3k3 = ManifoldCharData::closed("K3xK3", 4608, 2304, 576);
        assert_eq!(holonomy_from_ahat(&k3k3, true).unwrap(), Holonomy::Spin(4));
        let hp2 = ManifoldCharData::closed("HP2", 4, 7, 3);
        assert!(matches!(holonomy_from_ahat(&hp2, true).unwrap(), Holonomy::Inapplicable(_)));
        assert!(matches!(holonomy_from_ahat(&hp2, false), Err(Error::Gate(_))));
    }

    #[test]
    fn parse_records() {
        let text = "name = S8\np1_sq = 0\np2 = 0\neuler = 2\nh7_rel_rank = 0\nh8_z2_dim = 1\ncomponents = 1\n\
                    simply_connected = true\nhas_boundary = false\nspin = true\n\n# second\nname = broken\np1_sq = x\n";
        let err = parse_manifolds(text).unwrap_err();
        assert_eq!(err, Error::Parse { line: 14, message: "`p1_sq` needs an integer, found `x`".into() });
        let ok: String = text.lines().take(10).collect::<Vec<_>>().join("\n");
        let recs = parse_manifolds(&ok).unwrap();
        assert_eq!(recs, vec![ManifoldCharData::closed("S8", 0, 0, 2)]);
        let bad_h8 = ok.replace("h8_z2_dim = 1", "h8_z2_dim = 2");
        assert!(matches!(parse_manifolds(&bad_h8), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn torsor_cross_check() {
        for k in 0..4 {
            assert!(count_matches_torsor(&StructureCount::PowerOfTwo(k)).unwrap());
        }
    }

    #[test]
    fn non_integral_warning() {
        let d = ManifoldCharData::closed("odd", 1, 0, 0);
        let report = census(&d, false).unwrap();
        assert!(!report.exists);
        assert_eq!(report.count, StructureCount::Empty);
        assert_eq!(report.warnings.len(), 1);
        assert!(report.e_s_plus.is_negative());
    }
}
