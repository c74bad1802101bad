//! Free transitive actions of finite abelian groups and the equivalent
//! affine difference functions `D : X x X -> H`.
//!
//! Group elements are handled by their index in [`FiniteAbelianGroup::elements`]
//! (mixed radix, first factor most significant); carrier points by position.

use std::fmt;

use crate::error::{Error, Result};

/// `Z/n_1 x ... x Z/n_k`. The empty product is the trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::Argument("cyclic factor of order 0 is infinite".into()));
        }
        if orders.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n)).is_none_or(|n| n > u32::MAX as u64) {
            return Err(Error::Argument("group too large to enumerate".into()));
        }
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup { orders: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    /// `(Z/2)^k`.
    pub fn elementary_two(k: usize) -> Self {
        FiniteAbelianGroup { orders: vec![2; k] }
    }

    pub fn factors(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.orders.len()]
    }

    pub fn element(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.orders.len()];
        for (slot, &n) in out.iter_mut().zip(&self.orders).rev() {
            *slot = index as u64 % n;
            index /= n as usize;
        }
        out
    }

    pub fn index(&self, element: &[u64]) -> Result<usize> {
        if element.len() != self.orders.len() {
            return Err(Error::DimensionMismatch { left: element.len(), right: self.orders.len() });
        }
        let mut idx = 0usize;
        for (&r, &n) in element.iter().zip(&self.orders) {
            if r >= n {
                return Err(Error::Argument(format!("residue {r} out of range for Z/{n}")));
            }
            idx = idx * n as usize + r as usize;
        }
        Ok(idx)
    }

    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.orders).map(|((x, y), n)| (x + y) % n).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.orders).map(|(x, n)| (n - x) % n).collect()
    }

    /// Addition table on indices, so exhaustive loops avoid re-encoding tuples.
    pub fn addition_table(&self) -> Vec<Vec<usize>> {
        let elems: Vec<_> = self.elements().collect();
        elems
            .iter()
            .map(|a| elems.iter().map(|b| self.index(&self.add(a, b)).expect("closed under addition")).collect())
            .collect()
    }

    pub fn neg_index(&self, i: usize) -> usize {
        self.index(&self.neg(&self.element(i))).expect("closed under negation")
    }

    /// Every abelian group of order `n`, once each, in invariant-factor form
    /// `d_1 | d_2 | ... | d_k` with `d_1 > 1`.
    pub fn all_of_order(n: u64) -> Vec<FiniteAbelianGroup> {
        fn extend(rest: u64, last: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if rest == 1 {
                out.push(acc.clone());
                return;
            }
            let step = last.max(1);
            let mut d = step.max(2);
            while d <= rest {
                if rest % d == 0 {
                    acc.push(d);
                    extend(rest / d, d, acc, out);
                    acc.pop();
                }
                d += step;
            }
        }
        if n == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        extend(n, 1, &mut Vec::new(), &mut out);
        out.into_iter().map(|orders| FiniteAbelianGroup { orders }).collect()
    }

    pub fn all_up_to_order(max: u64) -> Vec<FiniteAbelianGroup> {
        (1..=max).flat_map(Self::all_of_order).collect()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// `D(x, y)` for every pair of carrier points, stored as group indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceTable {
    pub carrier: Vec<String>,
    pub group: FiniteAbelianGroup,
    pub table: Vec<Vec<usize>>,
}

/// `a(h, x)` for every group index `h` and carrier position `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTable {
    pub carrier: Vec<String>,
    pub group: FiniteAbelianGroup,
    pub table: Vec<Vec<usize>>,
}

/// The first axiom found to fail, with the witnesses that break it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Shape(String),
    Cocycle { x: String, y: String, z: String },
    Identity { x: String, y: String },
    Solvability { x: String, h: Vec<u64>, solutions: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape(msg) => write!(f, "malformed table: {msg}"),
            Violation::Cocycle { x, y, z } => write!(f, "cocycle fails: D({x},{z}) != D({x},{y}) + D({y},{z})"),
            Violation::Identity { x, y } => write!(f, "D({x},{y}) = 0 does not match {x} = {y}"),
            Violation::Solvability { x, h, solutions } => {
                write!(f, "D({x},y) = {h:?} has {solutions} solutions")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub triples_checked: usize,
    pub violation: Option<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

fn check_shape(carrier: &[String], table: &[Vec<usize>], rows: usize, bound: usize) -> Option<Violation> {
    if carrier.is_empty() {
        return Some(Violation::Shape("empty carrier".into()));
    }
    if table.len() != rows {
        return Some(Violation::Shape(format!("{} rows, expected {rows}", table.len())));
    }
    let cols = carrier.len();
    for row in table {
        if row.len() != cols {
            return Some(Violation::Shape(format!("row of length {}, expected {cols}", row.len())));
        }
        if let Some(v) = row.iter().find(|&&v| v >= bound) {
            return Some(Violation::Shape(format!("entry {v} out of range")));
        }
    }
    None
}

/// Exhaustively check the cocycle condition, `D(x,y) = 0 iff x = y`, and
/// unique solvability of `D(x, y) = h` in `y`.
pub fn verify_difference_axioms(d: &DifferenceTable) -> AxiomReport {
    let n = d.carrier.len();
    if let Some(v) = check_shape(&d.carrier, &d.table, n, d.group.order()) {
        return AxiomReport { triples_checked: 0, violation: Some(v) };
    }
    let add = d.group.addition_table();
    let label = |i: usize| d.carrier[i].clone();
    let mut checked = 0;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                checked += 1;
                if d.table[x][z] != add[d.table[x][y]][d.table[y][z]] {
                    let violation = Violation::Cocycle { x: label(x), y: label(y), z: label(z) };
                    return AxiomReport { triples_checked: checked, violation: Some(violation) };
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if (d.table[x][y] == 0) != (x == y) {
                return AxiomReport { triples_checked: checked, violation: Some(Violation::Identity { x: label(x), y: label(y) }) };
            }
        }
    }
    for x in 0..n {
        let mut hits = vec![0usize; d.group.order()];
        for y in 0..n {
            hits[d.table[x][y]] += 1;
        }
        if let Some(h) = hits.iter().position(|&c| c != 1) {
            let violation = Violation::Solvability { x: label(x), h: d.group.element(h), solutions: hits[h] };
            return AxiomReport { triples_checked: checked, violation: Some(violation) };
        }
    }
    AxiomReport { triples_checked: checked, violation: None }
}

/// `a(h, x)` is the unique `y` with `D(x, y) = h`.
pub fn action_from_difference(d: &DifferenceTable) -> Result<ActionTable> {
    if let Some(v) = verify_difference_axioms(d).violation {
        return Err(Error::InvalidDifference(v));
    }
    let n = d.carrier.len();
    let mut table = vec![vec![0; n]; d.group.order()];
    for x in 0..n {
        for y in 0..n {
            table[d.table[x][y]][x] = y;
        }
    }
    Ok(ActionTable { carrier: d.carrier.clone(), group: d.group.clone(), table })
}

/// Check that `a` is a group action (`0x = x`, `k(hx) = (h+k)x`) that is free
/// and transitive.
pub fn verify_action(a: &ActionTable) -> Result<()> {
    let n = a.carrier.len();
    let order = a.group.order();
    if let Some(v) = check_shape(&a.carrier, &a.table, order, a.carrier.len()) {
        return Err(Error::InvalidAction(v.to_string()));
    }
    if n != order {
        return Err(Error::InvalidAction(format!("carrier has {n} points but the group has {order} elements")));
    }
    if (0..n).any(|x| a.table[0][x] != x) {
        return Err(Error::InvalidAction("zero does not act as the identity".into()));
    }
    let add = a.group.addition_table();
    for h in 0..order {
        for k in 0..order {
            for x in 0..n {
                if a.table[k][a.table[h][x]] != a.table[add[h][k]][x] {
                    return Err(Error::InvalidAction(format!(
                        "compatibility fails at h={:?}, k={:?}, x={}",
                        a.group.element(h),
                        a.group.element(k),
                        a.carrier[x]
                    )));
                }
            }
        }
    }
    for x in 0..n {
        let mut seen = vec![false; n];
        for h in 0..order {
            let y = a.table[h][x];
            if seen[y] {
                return Err(Error::InvalidAction(format!("stabilizer of {} is nontrivial", a.carrier[x])));
            }
            seen[y] = true;
        }
    }
    Ok(())
}

/// `D(x, y)` is the unique `h` with `y = a(h, x)`.
pub fn difference_from_action(a: &ActionTable) -> Result<DifferenceTable> {
    verify_action(a)?;
    let n = a.carrier.len();
    let mut table = vec![vec![0; n]; n];
    for (h, row) in a.table.iter().enumerate() {
        for (x, &y) in row.iter().enumerate() {
            table[x][y] = h;
        }
    }
    Ok(DifferenceTable { carrier: a.carrier.clone(), group: a.group.clone(), table })
}

/// The group acting on itself by translation, with carrier points relabeled
/// through `relabel` so that carrier positions differ from group indices.
pub fn regular_action(group: &FiniteAbelianGroup, relabel: &[usize]) -> Result<ActionTable> {
    let n = group.order();
    let mut check = relabel.to_vec();
    check.sort_unstable();
    if check != (0..n).collect::<Vec<_>>() {
        return Err(Error::Argument("relabeling is not a permutation of the carrier".into()));
    }
    let add = group.addition_table();
    let mut inverse = vec![0; n];
    for (g, &p) in relabel.iter().enumerate() {
        inverse[p] = g;
    }
    let carrier = (0..n).map(|p| format!("x{p}")).collect();
    let table = (0..n).map(|h| (0..n).map(|p| relabel[add[h][inverse[p]]]).collect()).collect();
    Ok(ActionTable { carrier, group: group.clone(), table })
}

/// `D(x, y) = -D(y, x)` for all pairs.
pub fn is_antisymmetric(d: &DifferenceTable) -> bool {
    let n = d.carrier.len();
    (0..n).all(|x| (0..n).all(|y| d.table[x][y] == d.group.neg_index(d.table[y][x])))
}

/// Outcome of the full battery of checks on one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCheck {
    pub group: FiniteAbelianGroup,
    pub axioms: bool,
    pub antisymmetric: bool,
    pub roundtrip_action: bool,
    pub roundtrip_difference: bool,
    pub rejects_degenerate: bool,
}

impl GroupCheck {
    pub fn passed(&self) -> bool {
        self.axioms && self.antisymmetric && self.roundtrip_action && self.roundtrip_difference && self.rejects_degenerate
    }
}

/// Run the regular torsor of `group` (with a reversed carrier) through both
/// conversions, and confirm the zero table is rejected whenever `|H| > 1`.
pub fn check_group(group: &FiniteAbelianGroup) -> Result<GroupCheck> {
    let n = group.order();
    let relabel: Vec<usize> = (0..n).rev().collect();
    let action = regular_action(group, &relabel)?;
    let diff = difference_from_action(&action)?;
    let axioms = verify_difference_axioms(&diff).passed();
    let back = action_from_difference(&diff)?;
    let again = difference_from_action(&back)?;
    let zero = DifferenceTable { carrier: diff.carrier.clone(), group: group.clone(), table: vec![vec![0; n]; n] };
    let rejects_degenerate = (n == 1) == verify_difference_axioms(&zero).passed();
    Ok(GroupCheck {
        group: group.clone(),
        axioms,
        antisymmetric: is_antisymmetric(&diff),
        roundtrip_action: back == action,
        roundtrip_difference: again == diff,
        rejects_degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn singleton_trivial_group() {
        let d = DifferenceTable { carrier: labels(&["a"]), group: FiniteAbelianGroup::trivial(), table: vec![vec![0]] };
        assert!(verify_difference_axioms(&d).passed());
        let a = action_from_difference(&d).unwrap();
        assert_eq!(a.table, vec![vec![0]]);
        assert_eq!(difference_from_action(&a).unwrap(), d);
    }

    #[test]
    fn two_point_torsor() {
        let z2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let d = DifferenceTable { carrier: labels(&["a", "b"]), group: z2.clone(), table: vec![vec![0, 1], vec![1, 0]] };
        assert!(verify_difference_axioms(&d).passed());
        let a = action_from_difference(&d).unwrap();
        assert_eq!(a.table[1], vec![1, 0]);

        let zero = DifferenceTable { table: vec![vec![0, 0], vec![0, 0]], ..d };
        let report = verify_difference_axioms(&zero);
        assert!(matches!(report.violation, Some(Violation::Identity { .. })));
        assert!(matches!(action_from_difference(&zero), Err(Error::InvalidDifference(_))));
    }

    #[test]
    fn regular_z4_difference_is_subtraction() {
        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        let a = regular_action(&z4, &[0, 1, 2, 3]).unwrap();
        let d = difference_from_action(&a).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(d.table[x][y], (y + 4 - x) % 4);
            }
        }
    }

    #[test]
    fn non_free_action_is_rejected() {
        let z2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let a = ActionTable { carrier: labels(&["a", "b"]), group: z2, table: vec![vec![0, 1], vec![0, 1]] };
        assert!(matches!(difference_from_action(&a), Err(Error::InvalidAction(_))));
    }

    #[test]
    fn group_counts_by_order() {
        let counts: Vec<usize> = (1..=16).map(|n| FiniteAbelianGroup::all_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2, 1, 1, 2, 1, 1, 1, 5]);
        for g in FiniteAbelianGroup::all_up_to_order(16) {
            for w in g.factors().windows(2) {
                assert_eq!(w[1] % w[0], 0, "{g}");
            }
        }
    }

    #[test]
    fn element_indexing_roundtrip() {
        let g = FiniteAbelianGroup::new(vec![2, 6]).unwrap();
        for i in 0..g.order() {
            assert_eq!(g.index(&g.element(i)).unwrap(), i);
        }
        assert_eq!(g.add(&[1, 5], &[1, 2]), vec![0, 1]);
        assert_eq!(g.neg(&[1, 5]), vec![1, 1]);
    }
}
