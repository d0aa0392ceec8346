//! The partial order on positive roots: join, meet, covers, induced
//! subposets, and modularity testing.
//!
//! Join and meet have closed forms (coefficientwise max over a connected
//! support union, with a connecting chain of simples otherwise;
//! coefficientwise min when supports intersect). Alongside them this module
//! ships brute-force bound-scan oracles, so the closed forms can be certified
//! against an independent route at run time and not only in tests.

use crate::error::{Error, Result};
use crate::ideals::RootSet;
use crate::rootsys::{RootId, RootSystem};

/// mu <= nu in the root order (coefficientwise).
pub fn leq(rs: &RootSystem, mu: RootId, nu: RootId) -> bool {
    rs.leq(mu, nu)
}

/// Least upper bound of two positive roots, by the closed form.
///
/// When the union of the supports is connected this is the coefficientwise
/// maximum; otherwise the two roots are joined through the unique chain of
/// simple roots connecting their supports. The result is always a root; a
/// failed lookup is reported as a theorem violation.
pub fn join(rs: &RootSystem, a: RootId, b: RootId) -> Result<RootId> {
    let va = rs.root(a).coeffs();
    let vb = rs.root(b).coeffs();
    let mut v: Vec<i64> = va.iter().zip(vb).map(|(x, y)| *x.max(y)).collect();
    if !rs.support_connected(&v) {
        for i in connecting_chain(rs, va, vb) {
            v[i] += 1;
        }
    }
    rs.id_of(&v).ok_or_else(|| Error::TheoremViolation {
        check: "poset::join".into(),
        witness: format!(
            "{}: join of {va:?} and {vb:?} produced non-root {v:?}",
            rs.rtype()
        ),
    })
}

/// Greatest lower bound of two positive roots, by the closed form:
/// absent iff the supports are disjoint, otherwise the coefficientwise
/// minimum (which the meet theorem asserts to be a root).
pub fn meet(rs: &RootSystem, a: RootId, b: RootId) -> Result<Option<RootId>> {
    let va = rs.root(a).coeffs();
    let vb = rs.root(b).coeffs();
    let v: Vec<i64> = va.iter().zip(vb).map(|(x, y)| *x.min(y)).collect();
    if v.iter().all(|&c| c == 0) {
        return Ok(None);
    }
    match rs.id_of(&v) {
        Some(id) => Ok(Some(id)),
        None => Err(Error::TheoremViolation {
            check: "poset::meet".into(),
            witness: format!(
                "{}: min of {va:?} and {vb:?} is not a root: {v:?}",
                rs.rtype()
            ),
        }),
    }
}

/// The unique chain of simple roots connecting the supports of two roots
/// with disconnected support union (interior nodes only). The Dynkin diagram
/// is a tree, so the chain is the interior of the unique shortest path.
fn connecting_chain(rs: &RootSystem, va: &[i64], vb: &[i64]) -> Vec<usize> {
    let n = rs.rank();
    let in_a: Vec<bool> = (0..n).map(|i| va[i] != 0).collect();
    let in_b: Vec<bool> = (0..n).map(|i| vb[i] != 0).collect();
    // BFS from the support of a to the support of b.
    let mut prev: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue: std::collections::VecDeque<usize> = (0..n).filter(|&i| in_a[i]).collect();
    for &i in &queue {
        seen[i] = true;
    }
    while let Some(i) = queue.pop_front() {
        if in_b[i] {
            let mut chain = Vec::new();
            let mut cur = i;
            while let Some(p) = prev[cur] {
                if !in_a[cur] && !in_b[cur] {
                    chain.push(cur);
                }
                cur = p;
            }
            chain.reverse();
            return chain;
        }
        for j in 0..n {
            if !seen[j] && rs.adjacent(i, j) {
                seen[j] = true;
                prev[j] = Some(i);
                queue.push_back(j);
            }
        }
    }
    unreachable!("the Dynkin diagram is connected");
}

/// Brute-force least upper bound: scan all common upper bounds and return
/// the one below all others, if it exists. Independent of the closed form.
pub fn join_oracle(rs: &RootSystem, a: RootId, b: RootId) -> Option<RootId> {
    let ub = rs.up_set(a) & rs.up_set(b);
    least_of(rs, ub)
}

/// Brute-force greatest lower bound over all common lower bounds.
pub fn meet_oracle(rs: &RootSystem, a: RootId, b: RootId) -> Option<RootId> {
    let lb = rs.down_set(a) & rs.down_set(b);
    greatest_of(rs, lb)
}

/// The element of `mask` below every element of `mask`, if any.
fn least_of(rs: &RootSystem, mask: u128) -> Option<RootId> {
    let set = RootSet::from_bits(mask);
    set.iter()
        .find(|&c| set.iter().all(|z| rs.leq(c, z)))
}

/// The element of `mask` above every element of `mask`, if any.
fn greatest_of(rs: &RootSystem, mask: u128) -> Option<RootId> {
    let set = RootSet::from_bits(mask);
    set.iter()
        .find(|&c| set.iter().all(|z| rs.leq(z, c)))
}

/// Upper and lower covers of a root: the roots reached by adding or
/// subtracting one simple root. Each differs in height by exactly 1.
pub fn covers(rs: &RootSystem, g: RootId) -> (RootSet, RootSet) {
    let mut upper = RootSet::empty();
    let mut lower = RootSet::empty();
    for i in 0..rs.rank() {
        if let Some(u) = rs.plus_simple(g, i) {
            upper.insert(u);
        }
        if let Some(l) = rs.minus_simple(g, i) {
            lower.insert(l);
        }
    }
    (upper, lower)
}

/// An induced subposet of the root order, possibly with a formal bottom
/// element represented as the zero vector. The zero vector is permitted only
/// here, never as a `Root`.
pub struct PosetView<'a> {
    rs: &'a RootSystem,
    /// Sorted by (height, lexicographic coefficients).
    elems: Vec<Vec<i64>>,
}

/// Outcome of the modular-lattice test, carrying a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModularityOutcome {
    Modular,
    /// Some pair has no join or no meet inside the view.
    NotLattice { a: Vec<i64>, b: Vec<i64>, missing: &'static str },
    /// A triple x <= b with x v (a ^ b) != (x v a) ^ b.
    LawFails { x: Vec<i64>, a: Vec<i64>, b: Vec<i64> },
}

impl ModularityOutcome {
    pub fn is_modular(&self) -> bool {
        matches!(self, ModularityOutcome::Modular)
    }
}

impl<'a> PosetView<'a> {
    fn sort(elems: &mut [Vec<i64>]) {
        elems.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });
    }

    /// View on a set of positive roots.
    pub fn from_rootset(rs: &'a RootSystem, set: &RootSet) -> Self {
        let mut elems: Vec<Vec<i64>> = set
            .iter()
            .map(|id| rs.root(id).coeffs().to_vec())
            .collect();
        Self::sort(&mut elems);
        PosetView { rs, elems }
    }

    /// View on a set of positive roots with a formal bottom adjoined.
    pub fn with_bottom(rs: &'a RootSystem, set: &RootSet) -> Self {
        let mut v = Self::from_rootset(rs, set);
        v.elems.insert(0, vec![0; rs.rank()]);
        v
    }

    /// The full poset of positive roots together with the formal bottom.
    pub fn full_with_bottom(rs: &'a RootSystem) -> Self {
        Self::with_bottom(rs, &RootSet::from_bits(rs.full_mask()))
    }

    /// All roots g with a <= g <= b.
    pub fn interval(rs: &'a RootSystem, a: RootId, b: RootId) -> Result<Self> {
        if !rs.leq(a, b) {
            return Err(Error::NotComparable {
                lower: format!("{:?}", rs.root(a).coeffs()),
                upper: format!("{:?}", rs.root(b).coeffs()),
            });
        }
        Ok(Self::from_rootset(
            rs,
            &RootSet::from_bits(rs.up_set(a) & rs.down_set(b)),
        ))
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Vec<i64>] {
        &self.elems
    }

    pub fn system(&self) -> &RootSystem {
        self.rs
    }

    #[inline]
    fn le(&self, i: usize, j: usize) -> bool {
        self.elems[i]
            .iter()
            .zip(&self.elems[j])
            .all(|(x, y)| x <= y)
    }

    fn find(&self, v: &[i64]) -> Option<usize> {
        let h: i64 = v.iter().sum();
        self.elems
            .binary_search_by(|e| {
                let he: i64 = e.iter().sum();
                he.cmp(&h).then_with(|| e.as_slice().cmp(v))
            })
            .ok()
    }

    /// Join of two elements computed inside the view. A least upper bound,
    /// if it exists, equals the coefficientwise minimum of all in-view upper
    /// bounds; so it suffices to form that vector and test membership.
    fn join_in(&self, i: usize, j: usize) -> Option<usize> {
        let mut m: Option<Vec<i64>> = None;
        for k in 0..self.elems.len() {
            if self.le(i, k) && self.le(j, k) {
                match &mut m {
                    None => m = Some(self.elems[k].clone()),
                    Some(v) => {
                        for (x, y) in v.iter_mut().zip(&self.elems[k]) {
                            *x = (*x).min(*y);
                        }
                    }
                }
            }
        }
        self.find(&m?)
    }

    /// Dual of [`join_in`].
    fn meet_in(&self, i: usize, j: usize) -> Option<usize> {
        let mut m: Option<Vec<i64>> = None;
        for k in 0..self.elems.len() {
            if self.le(k, i) && self.le(k, j) {
                match &mut m {
                    None => m = Some(self.elems[k].clone()),
                    Some(v) => {
                        for (x, y) in v.iter_mut().zip(&self.elems[k]) {
                            *x = (*x).max(*y);
                        }
                    }
                }
            }
        }
        self.find(&m?)
    }

    /// Tests whether the view is a modular lattice: every pair has a join
    /// and a meet inside the view, and x v (a ^ b) = (x v a) ^ b whenever
    /// x <= b. Returns a witness on failure.
    pub fn is_modular_lattice(&self) -> ModularityOutcome {
        let n = self.elems.len();
        let mut joins = vec![usize::MAX; n * n];
        let mut meets = vec![usize::MAX; n * n];
        for i in 0..n {
            for j in i..n {
                match self.join_in(i, j) {
                    Some(k) => {
                        joins[i * n + j] = k;
                        joins[j * n + i] = k;
                    }
                    None => {
                        return ModularityOutcome::NotLattice {
                            a: self.elems[i].clone(),
                            b: self.elems[j].clone(),
                            missing: "join",
                        }
                    }
                }
                match self.meet_in(i, j) {
                    Some(k) => {
                        meets[i * n + j] = k;
                        meets[j * n + i] = k;
                    }
                    None => {
                        return ModularityOutcome::NotLattice {
                            a: self.elems[i].clone(),
                            b: self.elems[j].clone(),
                            missing: "meet",
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for b in 0..n {
                if !self.le(x, b) {
                    continue;
                }
                for a in 0..n {
                    let lhs = joins[x * n + meets[a * n + b]];
                    let rhs = meets[joins[x * n + a] * n + b];
                    if lhs != rhs {
                        return ModularityOutcome::LawFails {
                            x: self.elems[x].clone(),
                            a: self.elems[a].clone(),
                            b: self.elems[b].clone(),
                        };
                    }
                }
            }
        }
        ModularityOutcome::Modular
    }

    /// In-view joins and meets agree with the coefficientwise max/min. Holds
    /// in every upper ideal generated by one root; used as the height
    /// additivity cross-check.
    pub fn lattice_ops_are_coefficientwise(&self) -> bool {
        let n = self.elems.len();
        for i in 0..n {
            for j in i..n {
                let max: Vec<i64> = self.elems[i]
                    .iter()
                    .zip(&self.elems[j])
                    .map(|(x, y)| *x.max(y))
                    .collect();
                let min: Vec<i64> = self.elems[i]
                    .iter()
                    .zip(&self.elems[j])
                    .map(|(x, y)| *x.min(y))
                    .collect();
                match (self.join_in(i, j), self.meet_in(i, j)) {
                    (Some(k), Some(m)) => {
                        if self.elems[k] != max || self.elems[m] != min {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
        }
        true
    }
}

/// Order-isomorphism with the boolean lattice of subsets of a k-set,
/// decided exhaustively. Supported for k <= 3 only.
pub fn is_boolean_cube(view: &PosetView<'_>, k: usize) -> Result<bool> {
    if k > 3 {
        return Err(Error::CubeRankTooLarge(k));
    }
    let n = view.len();
    if n != 1 << k {
        return Ok(false);
    }
    // Reference cube: subsets of {0..k} ordered by inclusion.
    let cube_le = |s: usize, t: usize| s & t == s;
    let mut perm: Vec<usize> = (0..n).collect();
    // Try all bijections elements -> subsets.
    fn search(
        perm: &mut Vec<usize>,
        pos: usize,
        view: &PosetView<'_>,
        cube_le: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        let n = perm.len();
        if pos == n {
            return true;
        }
        for i in pos..n {
            perm.swap(pos, i);
            let ok = (0..=pos).all(|j| {
                view.le(j, pos) == cube_le(perm[j], perm[pos])
                    && view.le(pos, j) == cube_le(perm[pos], perm[j])
            });
            if ok && search(perm, pos + 1, view, cube_le) {
                return true;
            }
            perm.swap(pos, i);
        }
        false
    }
    Ok(search(&mut perm, 0, view, &cube_le))
}
