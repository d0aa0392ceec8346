//! Construction of the finite irreducible root systems.
//!
//! A [`RootSystem`] is built from its Cartan matrix by the usual root-string
//! closure, entirely in integer arithmetic. The W-invariant inner product is
//! normalized so that long roots have squared length 2; it is exposed through
//! [`RootSystem::pairing`] and [`RootSystem::coroot_pairing`] as exact
//! rationals. Positive roots are stored sorted by (height, lexicographic
//! coefficients) and addressed by [`RootId`]; bulk queries (root sums, the
//! partial order) are answered from tables precomputed at build time.
//!
//! Simple roots are numbered internally in the Bourbaki convention. A second
//! display numbering ("paper") differs for E6/E7/E8/F4 only; see
//! [`RootSystem::paper_to_internal`].

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// The seven families of finite irreducible root systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

/// A validated (family, rank) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemType {
    family: Family,
    rank: usize,
}

impl RootSystemType {
    /// Admissible pairs: A n>=1, B n>=2, C n>=2, D n>=4, E n in {6,7,8},
    /// F n=4, G n=2.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            let constraint = match family {
                Family::A => "A requires rank >= 1",
                Family::B => "B requires rank >= 2",
                Family::C => "C requires rank >= 2",
                Family::D => "D requires rank >= 4",
                Family::E => "E requires rank in {6, 7, 8}",
                Family::F => "F requires rank = 4",
                Family::G => "G requires rank = 2",
            };
            Err(Error::InadmissibleType(format!(
                "{family}{rank} ({constraint})"
            )))
        }
    }

    /// Parse a token such as "A2", "D4" or "e8".
    pub fn parse(token: &str) -> Result<Self> {
        let token = token.trim();
        let mut chars = token.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::BadTypeToken(token.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::BadTypeToken(token.to_string()))?;
        Self::new(fam, rank).map_err(|_| Error::BadTypeToken(token.to_string()))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// True for the A family, which is excluded by several of the results
    /// verified in this crate.
    pub fn is_type_a(&self) -> bool {
        self.family == Family::A
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }

    /// The number of positive roots, from the classical count.
    pub fn positive_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// The Cartan matrix in the Bourbaki numbering, `c[i][j] = <a_i, a_j^v>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut chain = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.family {
            Family::A => {
                for i in 0..n - 1 {
                    chain(i, i + 1);
                }
            }
            Family::B => {
                for i in 0..n - 1 {
                    chain(i, i + 1);
                }
                // alpha_n is short: <a_{n-1}, a_n^v> = -2
                c[n - 2][n - 1] = -2;
            }
            Family::C => {
                for i in 0..n - 1 {
                    chain(i, i + 1);
                }
                // alpha_n is long: <a_n, a_{n-1}^v> = -2
                c[n - 1][n - 2] = -2;
            }
            Family::D => {
                for i in 0..n - 2 {
                    chain(i, i + 1);
                }
                chain(n - 3, n - 1);
            }
            Family::E => {
                // Bourbaki: chain 1-3-4-5-...-n, with 2 attached to 4.
                chain(0, 2);
                for i in 2..n - 1 {
                    chain(i, i + 1);
                }
                chain(1, 3);
            }
            Family::F => {
                chain(0, 1);
                chain(1, 2);
                chain(2, 3);
                // alpha_3, alpha_4 short: <a_2, a_3^v> = -2
                c[1][2] = -2;
            }
            Family::G => {
                // alpha_1 short, alpha_2 long.
                c[0][1] = -1;
                c[1][0] = -3;
            }
        }
        c
    }

    /// Map from the display ("paper") numbering to the internal Bourbaki
    /// numbering, as a 0-based permutation `perm[paper] = bourbaki`.
    ///
    /// The display numbering places the E-series nodes 1..n-1 in a row with
    /// node n below node n-3, and reverses F4; it agrees with Bourbaki for
    /// all other families.
    pub fn paper_to_internal(&self) -> Vec<usize> {
        match (self.family, self.rank) {
            (Family::E, 6) => vec![0, 2, 3, 4, 5, 1],
            (Family::E, 7) => vec![6, 5, 4, 3, 2, 0, 1],
            (Family::E, 8) => vec![7, 6, 5, 4, 3, 2, 0, 1],
            (Family::F, 4) => vec![3, 2, 1, 0],
            _ => (0..self.rank).collect(),
        }
    }
}

impl fmt::Display for RootSystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Identifier of a positive root inside one [`RootSystem`]: the index into
/// the canonically sorted list of positive roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootId(pub u32);

impl RootId {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A positive root, stored as its non-negative coefficients over the simple
/// roots. At least one coefficient is positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    coeffs: Box<[i64]>,
}

impl Root {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.iter().any(|&c| c < 0) || coeffs.iter().all(|&c| c == 0) {
            return Err(Error::NotARoot {
                system: "<unbound>".into(),
                coeffs,
            });
        }
        Ok(Self {
            coeffs: coeffs.into_boxed_slice(),
        })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Sum of the coefficients; the rank function of the root order.
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Coefficient of the i-th simple root.
    pub fn height_at(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    /// Indices of the simple roots appearing with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }
}

/// A constructed irreducible root system with its positive roots, highest
/// root, inner product data and lookup tables. Immutable after `build`.
pub struct RootSystem {
    rtype: RootSystemType,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Root>,
    heights: Vec<i64>,
    index: HashMap<Box<[i64]>, RootId>,
    theta: RootId,
    simple_ids: Vec<RootId>,
    /// Squared length of each simple root, long = 2.
    norm2: Vec<Ratio<i64>>,
    /// Gram matrix (a_i, a_j).
    gram: Vec<Vec<Ratio<i64>>>,
    /// 2*rho in simple-root coordinates.
    rho2: Vec<i64>,
    coxeter: i64,
    dual_coxeter: i64,
    simple_long: Vec<usize>,
    long_mask: u128,
    /// up_sets[g] = bitmask of all roots >= g.
    up_sets: Vec<u128>,
    /// down_sets[g] = bitmask of all roots <= g.
    down_sets: Vec<u128>,
    /// sum_table[a*n + b] = id of root a + root b, if that vector is a root.
    sum_table: Vec<Option<RootId>>,
    /// add_simple[g*rank + i] = id of g + alpha_i, if a root.
    add_simple: Vec<Option<RootId>>,
    /// sub_simple[g*rank + i] = id of g - alpha_i, if a (positive) root.
    sub_simple: Vec<Option<RootId>>,
}

/// Constructs the root system of the given type.
///
/// All positive roots are generated from the simple roots by root strings;
/// the result is sorted by (height, lexicographic coefficients).
pub fn build(rtype: RootSystemType) -> Result<RootSystem> {
    RootSystem::build(rtype)
}

impl RootSystem {
    pub fn build(rtype: RootSystemType) -> Result<Self> {
        let n = rtype.rank();
        let cartan = rtype.cartan_matrix();

        // <v, a_i^v> for a vector in simple-root coordinates is integral.
        let cartan_pair = |v: &[i64], i: usize| -> i64 {
            v.iter().zip(cartan.iter()).map(|(&c, row)| c * row[i]).sum()
        };

        // Root-string closure, level by level in height. For a positive root
        // g != a_i, g + a_i is a root iff p - <g, a_i^v> >= 1, where p is the
        // number of steps down the a_i-string from g.
        let mut set: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut level: Vec<Vec<i64>> = Vec::new();
        for i in 0..n {
            let mut v = vec![0i64; n];
            v[i] = 1;
            set.insert(v.clone(), ());
            level.push(v);
        }
        while !level.is_empty() {
            let mut next = Vec::new();
            for g in &level {
                for i in 0..n {
                    if g.iter().enumerate().all(|(j, &c)| c == i64::from(j == i)) {
                        continue; // g == a_i
                    }
                    let mut p = 0i64;
                    let mut down = g.clone();
                    loop {
                        down[i] -= 1;
                        if down[i] < 0 || !set.contains_key(&down) {
                            break;
                        }
                        p += 1;
                    }
                    let q = p - cartan_pair(g, i);
                    if q >= 1 {
                        let mut up = g.clone();
                        up[i] += 1;
                        if !set.contains_key(&up) {
                            set.insert(up.clone(), ());
                            next.push(up);
                        }
                    }
                }
            }
            level = next;
        }

        let mut vecs: Vec<Vec<i64>> = set.into_keys().collect();
        vecs.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });

        let roots: Vec<Root> = vecs
            .iter()
            .map(|v| Root::new(v.clone()).expect("constructed roots are nonzero"))
            .collect();
        let heights: Vec<i64> = roots.iter().map(Root::height).collect();
        let count = roots.len();
        assert!(count <= 128, "positive root count exceeds bitset width");

        let mut index = HashMap::with_capacity(count);
        for (k, r) in roots.iter().enumerate() {
            index.insert(r.coeffs.clone(), RootId(k as u32));
        }
        let theta = RootId(count as u32 - 1);

        let simple_ids: Vec<RootId> = (0..n)
            .map(|i| {
                let mut v = vec![0i64; n];
                v[i] = 1;
                index[v.as_slice()]
            })
            .collect();

        // Squared lengths by symmetrizing the Cartan matrix over the Dynkin
        // tree, then scaling so the maximum is 2.
        let mut norm2: Vec<Option<Ratio<i64>>> = vec![None; n];
        norm2[0] = Some(Ratio::from_integer(1));
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if j != i && cartan[i][j] != 0 && norm2[j].is_none() {
                    // symmetry of the gram matrix: d_j c_ij = d_i c_ji
                    let d = norm2[i].unwrap() * Ratio::new(cartan[j][i], cartan[i][j]);
                    norm2[j] = Some(d);
                    stack.push(j);
                }
            }
        }
        let mut norm2: Vec<Ratio<i64>> = norm2
            .into_iter()
            .map(|d| d.expect("Dynkin diagram is connected"))
            .collect();
        let max = norm2.iter().copied().max().unwrap();
        let scale = Ratio::from_integer(2) / max;
        for d in &mut norm2 {
            *d *= scale;
        }

        let gram: Vec<Vec<Ratio<i64>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Ratio::from_integer(cartan[i][j]) * norm2[j] / 2)
                    .collect()
            })
            .collect();

        let mut rho2 = vec![0i64; n];
        for r in &roots {
            for (acc, &c) in rho2.iter_mut().zip(r.coeffs()) {
                *acc += c;
            }
        }

        let long_norm = Ratio::from_integer(2);
        let is_long_vec = |v: &[i64]| -> bool {
            let mut s = Ratio::from_integer(0);
            for i in 0..n {
                for j in 0..n {
                    s += Ratio::from_integer(v[i] * v[j]) * gram[i][j];
                }
            }
            s == long_norm
        };
        let mut long_mask = 0u128;
        for (k, r) in roots.iter().enumerate() {
            if is_long_vec(r.coeffs()) {
                long_mask |= 1u128 << k;
            }
        }
        let simple_long: Vec<usize> = (0..n)
            .filter(|&i| long_mask >> simple_ids[i].idx() & 1 == 1)
            .collect();

        let mut up_sets = vec![0u128; count];
        let mut down_sets = vec![0u128; count];
        for a in 0..count {
            for b in 0..count {
                if roots[a]
                    .coeffs()
                    .iter()
                    .zip(roots[b].coeffs())
                    .all(|(x, y)| x <= y)
                {
                    up_sets[a] |= 1u128 << b;
                    down_sets[b] |= 1u128 << a;
                }
            }
        }

        let lookup = |v: &[i64]| index.get(v).copied();
        let mut sum_table = vec![None; count * count];
        for a in 0..count {
            for b in 0..count {
                let v: Vec<i64> = roots[a]
                    .coeffs()
                    .iter()
                    .zip(roots[b].coeffs())
                    .map(|(x, y)| x + y)
                    .collect();
                sum_table[a * count + b] = lookup(&v);
            }
        }
        let mut add_simple = vec![None; count * n];
        let mut sub_simple = vec![None; count * n];
        for a in 0..count {
            for i in 0..n {
                let mut v = roots[a].coeffs().to_vec();
                v[i] += 1;
                add_simple[a * n + i] = lookup(&v);
                v[i] -= 2;
                if v[i] >= 0 {
                    sub_simple[a * n + i] = lookup(&v);
                }
            }
        }

        let mut rs = RootSystem {
            rtype,
            cartan,
            roots,
            heights,
            index,
            theta,
            simple_ids,
            norm2,
            gram,
            rho2,
            coxeter: 0,
            dual_coxeter: 0,
            simple_long,
            long_mask,
            up_sets,
            down_sets,
            sum_table,
            add_simple,
            sub_simple,
        };
        rs.coxeter = rs.heights[rs.theta.idx()] + 1;
        let rho_theta_v = rs.coroot_pairing(&rs.rho(), rs.root(rs.theta).coeffs())?;
        debug_assert!(rho_theta_v.is_integer());
        rs.dual_coxeter = rho_theta_v.to_integer() + 1;
        rs.validate()?;
        Ok(rs)
    }

    /// Build-time sanity: the count matches the classical one, theta is the
    /// unique maximal element, theta is long, and every root has connected
    /// support.
    fn validate(&self) -> Result<()> {
        let witness = |what: &str| Error::TheoremViolation {
            check: "rootsys::build".into(),
            witness: format!("{}: {what}", self.rtype),
        };
        if self.roots.len() != self.rtype.positive_count() {
            return Err(witness(&format!(
                "expected {} positive roots, constructed {}",
                self.rtype.positive_count(),
                self.roots.len()
            )));
        }
        for id in self.all_ids() {
            if id != self.theta && !self.leq(id, self.theta) {
                return Err(witness(&format!(
                    "root {:?} not below the last root",
                    self.root(id).coeffs()
                )));
            }
            if !self.support_connected(self.root(id).coeffs()) {
                return Err(witness(&format!(
                    "root {:?} has disconnected support",
                    self.root(id).coeffs()
                )));
            }
        }
        if !self.is_long(self.theta) {
            return Err(witness("highest root is not long"));
        }
        // (rho, a_i^v) = 1 for every simple root.
        for i in 0..self.rank() {
            let p = self.coroot_pairing(&self.rho(), self.root(self.simple_ids[i]).coeffs())?;
            if p != Ratio::from_integer(1) {
                return Err(witness(&format!("(rho, a_{}^v) = {p}", i + 1)));
            }
        }
        Ok(())
    }

    pub fn rtype(&self) -> RootSystemType {
        self.rtype
    }

    pub fn rank(&self) -> usize {
        self.rtype.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len()
    }

    pub fn all_ids(&self) -> impl Iterator<Item = RootId> {
        (0..self.roots.len() as u32).map(RootId)
    }

    pub fn root(&self, id: RootId) -> &Root {
        &self.roots[id.idx()]
    }

    pub fn height(&self, id: RootId) -> i64 {
        self.heights[id.idx()]
    }

    /// Looks up a coefficient vector; `None` if it is not a positive root.
    pub fn id_of(&self, coeffs: &[i64]) -> Option<RootId> {
        self.index.get(coeffs).copied()
    }

    /// As [`id_of`](Self::id_of), but an error naming the system on failure.
    pub fn try_id_of(&self, coeffs: &[i64]) -> Result<RootId> {
        self.id_of(coeffs).ok_or_else(|| Error::NotARoot {
            system: self.rtype.to_string(),
            coeffs: coeffs.to_vec(),
        })
    }

    /// The highest root.
    pub fn theta(&self) -> RootId {
        self.theta
    }

    /// Id of the i-th simple root (0-based, internal numbering).
    pub fn simple(&self, i: usize) -> RootId {
        self.simple_ids[i]
    }

    /// If `id` is a simple root, its index.
    pub fn simple_index(&self, id: RootId) -> Option<usize> {
        self.simple_ids.iter().position(|&s| s == id)
    }

    /// 2*rho in simple-root coordinates, where rho is the half-sum of the
    /// positive roots.
    pub fn rho2(&self) -> &[i64] {
        &self.rho2
    }

    /// rho in simple-root coordinates as rationals.
    pub fn rho(&self) -> Vec<Ratio<i64>> {
        self.rho2.iter().map(|&c| Ratio::new(c, 2)).collect()
    }

    /// Coxeter number h = ht(theta) + 1.
    pub fn coxeter(&self) -> i64 {
        self.coxeter
    }

    /// Dual Coxeter number h* = (rho, theta^v) + 1.
    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }

    /// Squared length of the i-th simple root (long = 2).
    pub fn norm2(&self, i: usize) -> Ratio<i64> {
        self.norm2[i]
    }

    /// Indices of the long simple roots.
    pub fn simple_long(&self) -> &[usize] {
        &self.simple_long
    }

    pub fn is_long(&self, id: RootId) -> bool {
        self.long_mask >> id.idx() & 1 == 1
    }

    /// Bitmask of the long positive roots.
    pub fn long_mask(&self) -> u128 {
        self.long_mask
    }

    /// Bitmask of all positive roots.
    pub fn full_mask(&self) -> u128 {
        if self.roots.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.roots.len()) - 1
        }
    }

    /// The W-invariant inner product of two vectors in simple-root
    /// coordinates, long roots having squared length 2.
    pub fn pairing_vec(&self, a: &[i64], b: &[i64]) -> Result<Ratio<i64>> {
        let n = self.rank();
        if a.len() != n {
            return Err(Error::DimensionMismatch {
                got: a.len(),
                expected: n,
            });
        }
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                got: b.len(),
                expected: n,
            });
        }
        let mut s = Ratio::from_integer(0);
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] != 0 {
                    s += Ratio::from_integer(a[i] * b[j]) * self.gram[i][j];
                }
            }
        }
        Ok(s)
    }

    /// (mu, nu) for two positive roots.
    pub fn pairing(&self, mu: RootId, nu: RootId) -> Ratio<i64> {
        self.pairing_vec(self.root(mu).coeffs(), self.root(nu).coeffs())
            .expect("ids are dimension-correct")
    }

    /// (a, b^v) = 2 (a, b) / (b, b) for rational-coefficient `a` and a root
    /// lattice vector `b` with (b, b) != 0.
    pub fn coroot_pairing(&self, a: &[Ratio<i64>], b: &[i64]) -> Result<Ratio<i64>> {
        let n = self.rank();
        if a.len() != n || b.len() != n {
            return Err(Error::DimensionMismatch {
                got: if a.len() != n { a.len() } else { b.len() },
                expected: n,
            });
        }
        let mut ab = Ratio::from_integer(0);
        for i in 0..n {
            if a[i] == Ratio::from_integer(0) {
                continue;
            }
            for j in 0..n {
                if b[j] != 0 {
                    ab += a[i] * Ratio::from_integer(b[j]) * self.gram[i][j];
                }
            }
        }
        let bb = self.pairing_vec(b, b)?;
        Ok(Ratio::from_integer(2) * ab / bb)
    }

    /// (mu, nu^v) for two positive roots.
    pub fn coroot_pairing_roots(&self, mu: RootId, nu: RootId) -> Ratio<i64> {
        let a: Vec<Ratio<i64>> = self
            .root(mu)
            .coeffs()
            .iter()
            .map(|&c| Ratio::from_integer(c))
            .collect();
        self.coroot_pairing(&a, self.root(nu).coeffs())
            .expect("ids are dimension-correct")
    }

    /// Integral pairing <v, a_i^v> for a root-lattice vector.
    pub fn cartan_pairing(&self, v: &[i64], i: usize) -> i64 {
        v.iter()
            .zip(self.cartan.iter())
            .map(|(&c, row)| c * row[i])
            .sum()
    }

    /// The unique simple root not orthogonal to theta, when it exists.
    ///
    /// Returns `None` exactly for A_n with n >= 2, where two simple roots
    /// meet theta; for A1 it returns 0.
    pub fn alpha_theta(&self) -> Option<usize> {
        let theta = self.root(self.theta).coeffs();
        let hits: Vec<usize> = (0..self.rank())
            .filter(|&i| {
                let mut v = vec![0i64; self.rank()];
                v[i] = 1;
                self.pairing_vec(theta, &v).unwrap() != Ratio::from_integer(0)
            })
            .collect();
        match hits.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    /// Coefficientwise order: mu <= nu iff nu - mu has non-negative
    /// coefficients.
    #[inline]
    pub fn leq(&self, mu: RootId, nu: RootId) -> bool {
        self.up_sets[mu.idx()] >> nu.idx() & 1 == 1
    }

    /// Bitmask of all roots >= g.
    #[inline]
    pub fn up_set(&self, g: RootId) -> u128 {
        self.up_sets[g.idx()]
    }

    /// Bitmask of all roots <= g.
    #[inline]
    pub fn down_set(&self, g: RootId) -> u128 {
        self.down_sets[g.idx()]
    }

    /// Id of a + b if that vector is a root.
    #[inline]
    pub fn sum(&self, a: RootId, b: RootId) -> Option<RootId> {
        self.sum_table[a.idx() * self.roots.len() + b.idx()]
    }

    /// Id of g + alpha_i if a root.
    #[inline]
    pub fn plus_simple(&self, g: RootId, i: usize) -> Option<RootId> {
        self.add_simple[g.idx() * self.rank() + i]
    }

    /// Id of g - alpha_i if a positive root.
    #[inline]
    pub fn minus_simple(&self, g: RootId, i: usize) -> Option<RootId> {
        self.sub_simple[g.idx() * self.rank() + i]
    }

    /// Dynkin adjacency of two simple roots.
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    /// Dynkin-graph degree of a simple root.
    pub fn dynkin_degree(&self, i: usize) -> usize {
        (0..self.rank()).filter(|&j| self.adjacent(i, j)).count()
    }

    /// Whether the support of a coefficient vector is connected in the
    /// Dynkin diagram.
    pub fn support_connected(&self, v: &[i64]) -> bool {
        let supp: Vec<usize> = (0..self.rank()).filter(|&i| v[i] != 0).collect();
        if supp.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.rank()];
        let mut stack = vec![supp[0]];
        seen[supp[0]] = true;
        while let Some(i) = stack.pop() {
            for &j in &supp {
                if !seen[j] && self.adjacent(i, j) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        supp.iter().all(|&i| seen[i])
    }

    /// Display form of a coefficient vector under the chosen numbering.
    pub fn display_coeffs(&self, v: &[i64], numbering: Numbering) -> Vec<i64> {
        match numbering {
            Numbering::Bourbaki => v.to_vec(),
            Numbering::Paper => {
                let perm = self.rtype.paper_to_internal();
                perm.iter().map(|&b| v[b]).collect()
            }
        }
    }

    /// Inverse of [`display_coeffs`](Self::display_coeffs): a displayed
    /// vector back to internal coordinates.
    pub fn internal_coeffs(&self, v: &[i64], numbering: Numbering) -> Result<Vec<i64>> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                got: v.len(),
                expected: self.rank(),
            });
        }
        Ok(match numbering {
            Numbering::Bourbaki => v.to_vec(),
            Numbering::Paper => {
                let perm = self.rtype.paper_to_internal();
                let mut out = vec![0i64; self.rank()];
                for (paper, &internal) in perm.iter().enumerate() {
                    out[internal] = v[paper];
                }
                out
            }
        })
    }

    /// Display index (1-based) of an internal simple-root index.
    pub fn display_simple(&self, internal: usize, numbering: Numbering) -> usize {
        match numbering {
            Numbering::Bourbaki => internal + 1,
            Numbering::Paper => {
                let perm = self.rtype.paper_to_internal();
                perm.iter().position(|&b| b == internal).unwrap() + 1
            }
        }
    }

    /// Internal simple-root index from a display index (1-based).
    pub fn internal_simple(&self, display: usize, numbering: Numbering) -> Result<usize> {
        if display == 0 || display > self.rank() {
            return Err(Error::BadRootToken(format!("a{display}")));
        }
        Ok(match numbering {
            Numbering::Bourbaki => display - 1,
            Numbering::Paper => self.rtype.paper_to_internal()[display - 1],
        })
    }
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootSystem")
            .field("type", &self.rtype.to_string())
            .field("positive_roots", &self.roots.len())
            .finish()
    }
}

/// Simple-root display numbering for input and output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Numbering {
    Bourbaki,
    Paper,
}

impl Numbering {
    pub fn as_str(self) -> &'static str {
        match self {
            Numbering::Bourbaki => "bourbaki",
            Numbering::Paper => "paper",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bourbaki" => Ok(Numbering::Bourbaki),
            "paper" => Ok(Numbering::Paper),
            _ => Err(Error::BadTypeToken(format!("ROOTPOSET_NUMBERING={s}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn ratio(n: i64, d: i64) -> Ratio<i64> {
        Ratio::new(n, d)
    }

    pub(crate) fn all_listed_types() -> Vec<RootSystemType> {
        let mut out = Vec::new();
        for n in 1..=7 {
            out.push(RootSystemType::new(Family::A, n).unwrap());
        }
        for n in 2..=7 {
            out.push(RootSystemType::new(Family::B, n).unwrap());
            out.push(RootSystemType::new(Family::C, n).unwrap());
        }
        for n in 4..=7 {
            out.push(RootSystemType::new(Family::D, n).unwrap());
        }
        for n in 6..=8 {
            out.push(RootSystemType::new(Family::E, n).unwrap());
        }
        out.push(RootSystemType::new(Family::F, 4).unwrap());
        out.push(RootSystemType::new(Family::G, 2).unwrap());
        out
    }

    #[test]
    fn inadmissible_types_are_rejected() {
        assert!(RootSystemType::new(Family::A, 0).is_err());
        assert!(RootSystemType::new(Family::B, 1).is_err());
        assert!(RootSystemType::new(Family::D, 3).is_err());
        assert!(RootSystemType::new(Family::E, 5).is_err());
        assert!(RootSystemType::new(Family::E, 9).is_err());
        assert!(RootSystemType::new(Family::F, 3).is_err());
        assert!(RootSystemType::new(Family::G, 3).is_err());
        let err = RootSystemType::new(Family::D, 2).unwrap_err();
        assert!(err.to_string().contains("rank >= 4"));
    }

    #[test]
    fn a2_is_the_forced_triangle() {
        let rs = build(RootSystemType::parse("A2").unwrap()).unwrap();
        let coeffs: Vec<&[i64]> = rs.all_ids().map(|id| rs.root(id).coeffs()).collect();
        assert_eq!(coeffs, vec![&[0, 1][..], &[1, 0], &[1, 1]]);
        assert_eq!(rs.root(rs.theta()).coeffs(), &[1, 1]);
    }

    #[test]
    fn g2_has_six_positive_roots_and_long_theta() {
        let rs = build(RootSystemType::parse("G2").unwrap()).unwrap();
        assert_eq!(rs.num_positive(), 6);
        assert_eq!(rs.root(rs.theta()).coeffs(), &[3, 2]);
        // Closure-derived list, frozen after checking against the
        // reflection-orbit oracle below.
        let all: HashSet<Vec<i64>> = rs
            .all_ids()
            .map(|id| rs.root(id).coeffs().to_vec())
            .collect();
        let expected: HashSet<Vec<i64>> = [
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![2, 1],
            vec![3, 1],
            vec![3, 2],
        ]
        .into_iter()
        .collect();
        assert_eq!(all, expected);
    }

    #[test]
    fn e8_theta_matches_printed_coefficients() {
        let rs = build(RootSystemType::parse("E8").unwrap()).unwrap();
        // Internal (Bourbaki) coordinates.
        assert_eq!(rs.root(rs.theta()).coeffs(), &[2, 3, 4, 6, 5, 4, 3, 2]);
        // Display (paper) numbering: the printed vector 2 3 4 5 6 4 2 3.
        assert_eq!(
            rs.display_coeffs(rs.root(rs.theta()).coeffs(), Numbering::Paper),
            vec![2, 3, 4, 5, 6, 4, 2, 3]
        );
    }

    #[test]
    fn pairing_examples() {
        let a2 = build(RootSystemType::parse("A2").unwrap()).unwrap();
        let a1 = a2.simple(0);
        let a2s = a2.simple(1);
        assert_eq!(a2.pairing(a1, a2s), ratio(-1, 1));
        assert_eq!(a2.pairing(a2.theta(), a2.theta()), ratio(2, 1));
        assert_eq!(a2.coroot_pairing_roots(a2.theta(), a2.theta()), ratio(2, 1));
        // (rho, theta^v - a1^v) = 1 in A2.
        let rho = a2.rho();
        let t = a2.coroot_pairing(&rho, a2.root(a2.theta()).coeffs()).unwrap();
        let s = a2.coroot_pairing(&rho, a2.root(a1).coeffs()).unwrap();
        assert_eq!(t - s, ratio(1, 1));

        let b2 = build(RootSystemType::parse("B2").unwrap()).unwrap();
        // theta = a1 + 2 a2 with a2 short: (theta, a2^v) = 2.
        let short = b2.simple(1);
        assert_eq!(b2.coroot_pairing_roots(b2.theta(), short), ratio(2, 1));
        assert_eq!(b2.pairing(b2.theta(), b2.theta()), ratio(2, 1));
    }

    #[test]
    fn pairing_dimension_mismatch_is_an_error() {
        let rs = build(RootSystemType::parse("A2").unwrap()).unwrap();
        assert!(matches!(
            rs.pairing_vec(&[1, 0, 0], &[1, 0]),
            Err(Error::DimensionMismatch { got: 3, expected: 2 })
        ));
    }

    #[test]
    fn alpha_theta_per_type() {
        let d4 = build(RootSystemType::parse("D4").unwrap()).unwrap();
        assert_eq!(d4.alpha_theta(), Some(1)); // the branching node a2
        let a3 = build(RootSystemType::parse("A3").unwrap()).unwrap();
        assert_eq!(a3.alpha_theta(), None);
        let a1 = build(RootSystemType::parse("A1").unwrap()).unwrap();
        assert_eq!(a1.alpha_theta(), Some(0));
        let g2 = build(RootSystemType::parse("G2").unwrap()).unwrap();
        assert_eq!(g2.alpha_theta(), Some(1)); // the long simple a2
    }

    #[test]
    fn coxeter_numbers_match_classical_tables() {
        // (type, h, h*)
        let table = [
            ("A1", 2, 2),
            ("A7", 8, 8),
            ("B2", 4, 3),
            ("B7", 14, 13),
            ("C3", 6, 4),
            ("C7", 14, 8),
            ("D4", 6, 6),
            ("D7", 12, 12),
            ("E6", 12, 12),
            ("E7", 18, 18),
            ("E8", 30, 30),
            ("F4", 12, 9),
            ("G2", 6, 4),
        ];
        for (tok, h, hs) in table {
            let rs = build(RootSystemType::parse(tok).unwrap()).unwrap();
            assert_eq!(rs.coxeter(), h, "{tok} h");
            assert_eq!(rs.dual_coxeter(), hs, "{tok} h*");
        }
    }

    /// Independent construction: the orbit of the simple roots under all
    /// simple reflections, on signed vectors. Cross-checks the string-based
    /// closure for every listed type.
    #[test]
    fn closure_agrees_with_reflection_orbit() {
        for t in all_listed_types() {
            let rs = build(t).unwrap();
            let n = rs.rank();
            let reflect = |v: &[i64], i: usize| -> Vec<i64> {
                let k = rs.cartan_pairing(v, i);
                let mut w = v.to_vec();
                w[i] -= k;
                w
            };
            let mut orbit: HashSet<Vec<i64>> = HashSet::new();
            let mut stack: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    let mut v = vec![0i64; n];
                    v[i] = 1;
                    v
                })
                .collect();
            for v in &stack {
                orbit.insert(v.clone());
            }
            while let Some(v) = stack.pop() {
                for i in 0..n {
                    let w = reflect(&v, i);
                    if orbit.insert(w.clone()) {
                        stack.push(w);
                    }
                }
            }
            let positives: HashSet<Vec<i64>> = orbit
                .iter()
                .filter(|v| v.iter().all(|&c| c >= 0))
                .cloned()
                .collect();
            let constructed: HashSet<Vec<i64>> = rs
                .all_ids()
                .map(|id| rs.root(id).coeffs().to_vec())
                .collect();
            assert_eq!(positives, constructed, "{t}");
            assert_eq!(orbit.len(), 2 * constructed.len(), "{t}");
        }
    }

    #[test]
    fn sum_table_matches_membership_and_is_symmetric() {
        for tok in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            let rs = build(RootSystemType::parse(tok).unwrap()).unwrap();
            for a in rs.all_ids() {
                for b in rs.all_ids() {
                    let v: Vec<i64> = rs
                        .root(a)
                        .coeffs()
                        .iter()
                        .zip(rs.root(b).coeffs())
                        .map(|(x, y)| x + y)
                        .collect();
                    assert_eq!(rs.sum(a, b), rs.id_of(&v), "{tok}");
                    assert_eq!(rs.sum(a, b), rs.sum(b, a), "{tok}");
                }
            }
        }
    }

    #[test]
    fn long_simple_roots_per_family() {
        let b3 = build(RootSystemType::parse("B3").unwrap()).unwrap();
        assert_eq!(b3.simple_long(), &[0, 1]);
        let c3 = build(RootSystemType::parse("C3").unwrap()).unwrap();
        assert_eq!(c3.simple_long(), &[2]);
        let f4 = build(RootSystemType::parse("F4").unwrap()).unwrap();
        assert_eq!(f4.simple_long(), &[0, 1]);
        let g2 = build(RootSystemType::parse("G2").unwrap()).unwrap();
        assert_eq!(g2.simple_long(), &[1]);
        let d4 = build(RootSystemType::parse("D4").unwrap()).unwrap();
        assert_eq!(d4.simple_long(), &[0, 1, 2, 3]);
    }

    #[test]
    fn paper_numbering_is_a_permutation_and_roundtrips() {
        for t in all_listed_types() {
            let rs = build(t).unwrap();
            let perm = t.paper_to_internal();
            let mut seen = vec![false; t.rank()];
            for &b in &perm {
                assert!(!seen[b]);
                seen[b] = true;
            }
            let theta = rs.root(rs.theta()).coeffs().to_vec();
            let disp = rs.display_coeffs(&theta, Numbering::Paper);
            let back = rs.internal_coeffs(&disp, Numbering::Paper).unwrap();
            assert_eq!(theta, back);
            for i in 0..t.rank() {
                let d = rs.display_simple(i, Numbering::Paper);
                assert_eq!(rs.internal_simple(d, Numbering::Paper).unwrap(), i);
            }
        }
    }

    #[test]
    fn heights_are_sorted_and_strictly_below_coxeter() {
        for t in all_listed_types() {
            let rs = build(t).unwrap();
            let mut prev = 0;
            for id in rs.all_ids() {
                assert!(rs.height(id) >= prev);
                prev = rs.height(id);
            }
            assert_eq!(rs.height(rs.theta()), rs.coxeter() - 1);
        }
    }
}
