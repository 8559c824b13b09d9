//! Reduced based root data for the finite crystallographic Cartan types.
//!
//! Roots are stored as integer vectors in the basis of simple roots and
//! coweights as integer vectors in the basis of fundamental coweights. These
//! bases are dual to each other, so the pairing `<λ, α>` is a plain dot
//! product.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_weyl::WeylGroup;

/// Largest Weyl group we are willing to enumerate in full.
pub const MAX_WEYL_ORDER: u64 = 1_000_000;

/// Coweight in the fundamental-coweight basis of `X_*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(pub Vec<i64>);

/// Root in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Root(pub Vec<i64>);

macro_rules! lattice_vector {
    ($ty:ident) => {
        impl $ty {
            pub fn zero(rank: usize) -> Self {
                $ty(vec![0; rank])
            }

            pub fn unit(rank: usize, i: usize) -> Self {
                let mut v = vec![0; rank];
                v[i] = 1;
                $ty(v)
            }

            pub fn coords(&self) -> &[i64] {
                &self.0
            }

            pub fn rank(&self) -> usize {
                self.0.len()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0)
            }

            pub fn scale(&self, k: i64) -> Self {
                $ty(self.0.iter().map(|c| c * k).collect())
            }
        }

        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                debug_assert_eq!(self.0.len(), rhs.0.len());
                $ty(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                debug_assert_eq!(self.0.len(), rhs.0.len());
                $ty(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty(self.0.iter().map(|c| -c).collect())
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[")?;
                for (i, c) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "]")
            }
        }
    };
}

lattice_vector!(Coweight);
lattice_vector!(Root);

impl Root {
    /// Sum of the coefficients.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }
}

/// A subset of the simple roots, as a bit mask over 0-based node indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NodeSet(u32);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn full(rank: usize) -> Self {
        NodeSet(((1u64 << rank) - 1) as u32)
    }

    pub fn from_bits(bits: u32) -> Self {
        NodeSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        NodeSet(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// All subsets of `{0, .., rank-1}` in increasing bit-mask order.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = NodeSet> {
        (0..(1u32 << rank)).map(NodeSet)
    }

    /// 1-based indices, as used in every serialized form.
    pub fn one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_based())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => (1..=8).contains(&rank),
            Family::B | Family::C => (2..=8).contains(&rank),
            Family::D => (2..=8).contains(&rank),
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::Config(format!(
                "unsupported Cartan type {family:?}{rank}"
            )))
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Number of positive roots.
    pub fn positive_root_count(self) -> usize {
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

    /// Cartan matrix with entry `[i][j] = <α_i^∨, α_j>`, Bourbaki numbering.
    fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, ij: i64, ji: i64| {
            m[i][j] = ij;
            m[j][i] = ji;
        };
        match self.family {
            Family::A => (0..n.saturating_sub(1)).for_each(|i| link(i, i + 1, -1, -1)),
            Family::B => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -1, -2);
            }
            Family::C => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -2, -1);
            }
            Family::D => {
                if n >= 3 {
                    (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                    link(n - 3, n - 1, -1, -1);
                }
            }
            Family::E => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            }
            Family::F => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            Family::G => link(0, 1, -3, -1),
        }
        m
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::Parse(format!("bad Cartan type label {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad Cartan type label {s:?}")))?;
        CartanType::new(family, rank)
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// A reduced based root datum with `X_*` the full coweight lattice.
#[derive(Debug)]
pub struct RootDatum {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    /// `d_i = (α_i, α_i) / 2` for an invariant form normalised to be integral.
    symmetrizer: Vec<i64>,
    pos_roots: Vec<Root>,
    pos_coroots: Vec<Coweight>,
    root_index: HashMap<Root, usize>,
    components: Vec<Vec<usize>>,
    highest_roots: Vec<Root>,
    pub(crate) weyl: OnceLock<WeylGroup>,
}

impl RootDatum {
    pub fn new(cartan_type: CartanType) -> Self {
        let cartan = cartan_type.cartan_matrix();
        let n = cartan_type.rank;
        let components = components_of(n, |i, j| cartan[i][j] != 0);
        let symmetrizer = symmetrizer(&cartan, &components);

        // Every root is W-conjugate to a simple root; close the simple roots
        // under the simple reflections.
        let mut queue: VecDeque<Root> = (0..n).map(|i| Root::unit(n, i)).collect();
        let mut seen: HashSet<Root> = queue.iter().cloned().collect();
        while let Some(beta) = queue.pop_front() {
            for (i, row) in cartan.iter().enumerate() {
                let p: i64 = row.iter().zip(&beta.0).map(|(c, b)| c * b).sum();
                let mut img = beta.clone();
                img.0[i] -= p;
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        let mut pos_roots: Vec<Root> = seen.into_iter().filter(Root::is_positive).collect();
        pos_roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));

        let pos_coroots = pos_roots
            .iter()
            .map(|r| coroot_formula(&cartan, &symmetrizer, r))
            .collect();
        let root_index = pos_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let highest_roots = components
            .iter()
            .map(|comp| {
                pos_roots
                    .iter()
                    .filter(|r| (0..n).all(|k| r.0[k] == 0 || comp.contains(&k)))
                    .max_by_key(|r| r.height())
                    .cloned()
                    .expect("component has a root")
            })
            .collect();

        RootDatum {
            cartan_type,
            cartan,
            symmetrizer,
            pos_roots,
            pos_coroots,
            root_index,
            components,
            highest_roots,
            weyl: OnceLock::new(),
        }
    }

    /// Builds the datum for a label such as `"A2"` or `"c3"`.
    pub fn from_label(label: &str) -> Result<Self> {
        Ok(Self::new(label.parse()?))
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    /// `[i][j] = <α_i^∨, α_j>`.
    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank())
            .map(|i| Root::unit(self.rank(), i))
            .collect()
    }

    /// `α_i^∨` in fundamental-coweight coordinates (row `i` of the Cartan matrix).
    pub fn simple_coroot(&self, i: usize) -> Coweight {
        Coweight(self.cartan[i].clone())
    }

    pub fn simple_coroots(&self) -> Vec<Coweight> {
        (0..self.rank()).map(|i| self.simple_coroot(i)).collect()
    }

    pub fn fundamental_coweights(&self) -> Vec<Coweight> {
        (0..self.rank())
            .map(|i| Coweight::unit(self.rank(), i))
            .collect()
    }

    /// `ρ^∨ = Σ ω_i^∨`.
    pub fn rho_coweight(&self) -> Coweight {
        Coweight(vec![1; self.rank()])
    }

    /// Positive roots sorted by height.
    pub fn positive_roots(&self) -> &[Root] {
        &self.pos_roots
    }

    pub fn positive_coroots(&self) -> &[Coweight] {
        &self.pos_coroots
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// One highest root per connected component of the Dynkin diagram.
    pub fn highest_roots(&self) -> &[Root] {
        &self.highest_roots
    }

    pub fn pairing(&self, lambda: &Coweight, alpha: &Root) -> i64 {
        pair(lambda, alpha)
    }

    pub fn is_root(&self, r: &Root) -> bool {
        self.root_index.contains_key(r) || self.root_index.contains_key(&-r)
    }

    /// Index of a positive root in [`Self::positive_roots`].
    pub fn positive_index(&self, r: &Root) -> Option<usize> {
        self.root_index.get(r).copied()
    }

    /// The coroot `α^∨` of any root `α`.
    pub fn coroot(&self, alpha: &Root) -> Coweight {
        if let Some(&i) = self.root_index.get(alpha) {
            self.pos_coroots[i].clone()
        } else if let Some(&i) = self.root_index.get(&-alpha) {
            -&self.pos_coroots[i]
        } else {
            panic!("{alpha} is not a root of {}", self.cartan_type)
        }
    }

    /// `2ρ = Σ_{α ∈ Φ+} α` in the simple-root basis.
    pub fn two_rho(&self) -> Root {
        let n = self.rank();
        self.pos_roots.iter().fold(Root::zero(n), |acc, r| &acc + r)
    }

    pub fn is_dominant(&self, mu: &Coweight) -> bool {
        mu.0.iter().all(|&c| c >= 0)
    }

    pub fn check_coweight(&self, mu: &Coweight) -> Result<()> {
        if mu.rank() != self.rank() {
            return Err(Error::Domain(format!(
                "coweight {mu} has {} coordinates, {} expects {}",
                mu.rank(),
                self.cartan_type,
                self.rank()
            )));
        }
        Ok(())
    }

    pub fn check_dominant(&self, mu: &Coweight) -> Result<()> {
        self.check_coweight(mu)?;
        if !self.is_dominant(mu) {
            return Err(Error::Domain(format!("coweight {mu} is not dominant")));
        }
        Ok(())
    }

    /// `J_μ`: simple roots orthogonal to the dominant coweight `μ`.
    pub fn j_mu(&self, mu: &Coweight) -> Result<NodeSet> {
        self.check_dominant(mu)?;
        Ok(NodeSet::from_indices(
            (0..self.rank()).filter(|&i| mu.0[i] == 0),
        ))
    }

    /// `<α^∨, β>` for roots `α, β`.
    pub fn root_pairing(&self, alpha: &Root, beta: &Root) -> i64 {
        pair(&self.coroot(alpha), beta)
    }
}

pub(crate) fn pair(lambda: &Coweight, alpha: &Root) -> i64 {
    lambda.0.iter().zip(&alpha.0).map(|(a, b)| a * b).sum()
}

/// Connected components of the graph on `0..n` with the given adjacency.
pub(crate) fn components_of(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in (0..n).filter(|&j| j != i && adjacent(i, j)) {
                if comp[j] == usize::MAX {
                    comp[j] = id;
                    members.push(j);
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

fn symmetrizer(cartan: &[Vec<i64>], components: &[Vec<usize>]) -> Vec<i64> {
    let n = cartan.len();
    // d_j = d_i * a_ij / a_ji, propagated as fractions over a tree of each
    // component, then cleared of denominators.
    let mut num = vec![0i64; n];
    let mut den = vec![1i64; n];
    for comp in components {
        let root = comp[0];
        num[root] = 1;
        let mut stack = vec![root];
        let mut done = vec![false; n];
        done[root] = true;
        while let Some(i) = stack.pop() {
            for &j in comp {
                if !done[j] && cartan[i][j] != 0 {
                    num[j] = num[i] * cartan[i][j];
                    den[j] = den[i] * cartan[j][i];
                    let g = gcd(num[j], den[j]);
                    num[j] /= g;
                    den[j] /= g;
                    done[j] = true;
                    stack.push(j);
                }
            }
        }
        let l = comp.iter().fold(1, |acc, &j| lcm(acc, den[j]));
        for &j in comp {
            num[j] *= l / den[j];
            den[j] = 1;
        }
        let g = comp.iter().fold(0, |acc, &j| gcd(acc, num[j]));
        for &j in comp {
            num[j] /= g;
        }
    }
    num
}

fn coroot_formula(cartan: &[Vec<i64>], d: &[i64], beta: &Root) -> Coweight {
    let n = cartan.len();
    // (β, β) = Σ b_i b_j d_i a_ij, and β^∨ = Σ_j (2 b_j d_j / (β, β)) α_j^∨.
    let norm: i64 = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| beta.0[i] * beta.0[j] * d[i] * cartan[i][j])
        .sum();
    let mut out = vec![0i64; n];
    for j in 0..n {
        let c = 2 * beta.0[j] * d[j];
        assert_eq!(c % norm, 0, "non-integral coroot for {beta}");
        let c = c / norm;
        for k in 0..n {
            out[k] += c * cartan[j][k];
        }
    }
    Coweight(out)
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd(a, b) * b).abs()
    }
}
