//! The finite Weyl group `W₀`.
//!
//! An element is stored as its action on the fundamental coweights (the
//! canonical form) together with the contragredient action on simple roots.
//! Reduced words are recovered on demand by greedy left descent, always
//! taking the smallest descent index.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::root_datum::{Coweight, NodeSet, Root, RootDatum, MAX_WEYL_ORDER};

#[derive(Clone, Debug)]
pub struct FiniteWeylElt {
    rank: usize,
    /// Row-major; column `j` is `z(ω_j^∨)`.
    coweight_action: Box<[i64]>,
    /// Row-major; column `j` is `z(α_j)`.
    root_action: Box<[i64]>,
}

impl PartialEq for FiniteWeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.coweight_action == other.coweight_action
    }
}

impl Eq for FiniteWeylElt {}

impl Hash for FiniteWeylElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coweight_action.hash(state);
    }
}

impl PartialOrd for FiniteWeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteWeylElt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coweight_action.cmp(&other.coweight_action)
    }
}

fn matmul(n: usize, a: &[i64], b: &[i64]) -> Box<[i64]> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out.into_boxed_slice()
}

fn transpose(n: usize, a: &[i64]) -> Box<[i64]> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = a[i * n + j];
        }
    }
    out.into_boxed_slice()
}

impl FiniteWeylElt {
    pub fn identity(rank: usize) -> Self {
        let mut m = vec![0i64; rank * rank];
        for i in 0..rank {
            m[i * rank + i] = 1;
        }
        FiniteWeylElt {
            rank,
            coweight_action: m.clone().into_boxed_slice(),
            root_action: m.into_boxed_slice(),
        }
    }

    /// The reflection `s_β(λ) = λ - <λ, β> β^∨`.
    pub fn reflection(beta: &Root, coroot: &Coweight) -> Self {
        let n = beta.rank();
        let mut m = vec![0i64; n * n];
        for k in 0..n {
            for j in 0..n {
                m[k * n + j] = i64::from(k == j) - coroot.0[k] * beta.0[j];
            }
        }
        let r = transpose(n, &m);
        FiniteWeylElt {
            rank: n,
            coweight_action: m.into_boxed_slice(),
            root_action: r,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rank)
    }

    pub fn inverse(&self) -> Self {
        // The two actions are mutually contragredient: M^{-1} = R^T.
        FiniteWeylElt {
            rank: self.rank,
            coweight_action: transpose(self.rank, &self.root_action),
            root_action: transpose(self.rank, &self.coweight_action),
        }
    }

    pub fn act(&self, lambda: &Coweight) -> Coweight {
        Coweight(apply(self.rank, &self.coweight_action, &lambda.0))
    }

    pub fn act_root(&self, alpha: &Root) -> Root {
        Root(apply(self.rank, &self.root_action, &alpha.0))
    }

    /// Applies the coweight action to an arbitrary integer vector.
    pub fn act_coords(&self, v: &[i64]) -> Vec<i64> {
        apply(self.rank, &self.coweight_action, v)
    }

    /// Sign of `z^{-1}(α)`, i.e. the sign of `<z(ρ^∨), α>`; `α` must be a root.
    pub fn inverse_maps_positive(&self, alpha: &Root) -> bool {
        let n = self.rank;
        let mut s = 0;
        for k in 0..n {
            let row: i64 = self.coweight_action[k * n..(k + 1) * n].iter().sum();
            s += row * alpha.0[k];
        }
        s > 0
    }

    /// `z(ρ^∨)` where `ρ^∨` is the sum of the fundamental coweights.
    pub fn rho_image(&self) -> Vec<i64> {
        let n = self.rank;
        (0..n)
            .map(|k| self.coweight_action[k * n..(k + 1) * n].iter().sum())
            .collect()
    }

    /// Whether `s_i` is a left descent: `z^{-1}(α_i) < 0`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let n = self.rank;
        self.coweight_action[i * n..(i + 1) * n].iter().sum::<i64>() < 0
    }
}

impl Mul for &FiniteWeylElt {
    type Output = FiniteWeylElt;

    fn mul(self, rhs: &FiniteWeylElt) -> FiniteWeylElt {
        let n = self.rank;
        FiniteWeylElt {
            rank: n,
            coweight_action: matmul(n, &self.coweight_action, &rhs.coweight_action),
            root_action: matmul(n, &self.root_action, &rhs.root_action),
        }
    }
}

fn apply(n: usize, m: &[i64], v: &[i64]) -> Vec<i64> {
    (0..n)
        .map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum())
        .collect()
}

/// Fully enumerated finite Weyl group, sorted by length then reduced word.
#[derive(Debug)]
pub struct WeylGroup {
    elements: Vec<FiniteWeylElt>,
    index: HashMap<FiniteWeylElt, usize>,
}

impl WeylGroup {
    pub fn elements(&self) -> &[FiniteWeylElt] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, z: &FiniteWeylElt) -> usize {
        self.index[z]
    }
}

impl RootDatum {
    pub fn identity(&self) -> FiniteWeylElt {
        FiniteWeylElt::identity(self.rank())
    }

    pub fn simple_reflection(&self, i: usize) -> FiniteWeylElt {
        let n = self.rank();
        FiniteWeylElt::reflection(&Root::unit(n, i), &self.simple_coroot(i))
    }

    /// The reflection `s_α` for any root `α`.
    pub fn reflection(&self, alpha: &Root) -> FiniteWeylElt {
        FiniteWeylElt::reflection(alpha, &self.coroot(alpha))
    }

    /// `|{α ∈ Φ+ : z(α) ∈ Φ-}|`.
    pub fn weyl_length(&self, z: &FiniteWeylElt) -> usize {
        self.positive_roots()
            .iter()
            .filter(|a| z.act_root(a).is_negative())
            .count()
    }

    /// Reduced word by greedy left descent, smallest index first (0-based letters).
    pub fn reduced_word(&self, z: &FiniteWeylElt) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = z.clone();
        'outer: loop {
            for i in 0..self.rank() {
                if cur.has_left_descent(i) {
                    word.push(i);
                    cur = &self.simple_reflection(i) * &cur;
                    continue 'outer;
                }
            }
            break;
        }
        debug_assert!(cur.is_identity());
        word
    }

    pub fn word_element(&self, word: &[usize]) -> FiniteWeylElt {
        word.iter()
            .fold(self.identity(), |acc, &i| &acc * &self.simple_reflection(i))
    }

    /// Serializes as `s1*s2*s1`; the identity is `e`.
    pub fn format_weyl(&self, z: &FiniteWeylElt) -> String {
        let word = self.reduced_word(z);
        if word.is_empty() {
            return "e".to_string();
        }
        let mut s = String::new();
        for (k, i) in word.iter().enumerate() {
            if k > 0 {
                s.push('*');
            }
            write!(s, "s{}", i + 1).unwrap();
        }
        s
    }

    pub fn parse_weyl(&self, s: &str) -> Result<FiniteWeylElt> {
        let s = s.trim();
        if s == "e" || s.is_empty() {
            return Ok(self.identity());
        }
        let mut z = self.identity();
        for tok in s.split('*') {
            let tok = tok.trim();
            if tok == "e" {
                continue;
            }
            let i: usize = tok
                .strip_prefix('s')
                .and_then(|d| d.parse().ok())
                .filter(|&i| (1..=self.rank()).contains(&i))
                .ok_or_else(|| Error::Parse(format!("bad simple reflection {tok:?}")))?;
            z = &z * &self.simple_reflection(i - 1);
        }
        Ok(z)
    }

    /// Letters of any reduced word of `z`.
    pub fn support(&self, z: &FiniteWeylElt) -> NodeSet {
        NodeSet::from_indices(self.reduced_word(z))
    }

    /// The whole group, enumerated once and cached.
    pub fn weyl_group(&self) -> Result<&WeylGroup> {
        let order = self.cartan_type().weyl_order();
        if order > MAX_WEYL_ORDER {
            return Err(Error::Config(format!(
                "Weyl group of {} has order {order}, above the enumeration limit {MAX_WEYL_ORDER}",
                self.cartan_type()
            )));
        }
        Ok(self.weyl.get_or_init(|| {
            let all = self.generate(NodeSet::full(self.rank()));
            let mut keyed: Vec<(usize, Vec<usize>, FiniteWeylElt)> = all
                .into_iter()
                .map(|z| (self.weyl_length(&z), self.reduced_word(&z), z))
                .collect();
            keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
            let elements: Vec<FiniteWeylElt> = keyed.into_iter().map(|k| k.2).collect();
            let index = elements
                .iter()
                .enumerate()
                .map(|(i, z)| (z.clone(), i))
                .collect();
            WeylGroup { elements, index }
        }))
    }

    /// Closure of the identity under right multiplication by `s_i`, `i ∈ gens`.
    fn generate(&self, gens: NodeSet) -> Vec<FiniteWeylElt> {
        let refl: Vec<FiniteWeylElt> = gens.iter().map(|i| self.simple_reflection(i)).collect();
        let mut seen: HashSet<FiniteWeylElt> = HashSet::new();
        let mut out = vec![self.identity()];
        seen.insert(self.identity());
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(z) = queue.pop_front() {
            for s in &refl {
                let y = &z * s;
                if seen.insert(y.clone()) {
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        out
    }

    /// The parabolic subgroup `W_I`.
    pub fn parabolic(&self, set: NodeSet) -> Vec<FiniteWeylElt> {
        self.generate(set)
    }

    /// `W₀(μ)` for dominant `μ`, sorted.
    pub fn weyl_orbit(&self, mu: &Coweight) -> Result<Vec<Coweight>> {
        self.check_dominant(mu)?;
        let mut seen: BTreeSet<Coweight> = BTreeSet::from([mu.clone()]);
        let mut queue = VecDeque::from([mu.clone()]);
        while let Some(l) = queue.pop_front() {
            for i in 0..self.rank() {
                if l.0[i] != 0 {
                    let img = &l - &self.simple_coroot(i).scale(l.0[i]);
                    if seen.insert(img.clone()) {
                        queue.push_back(img);
                    }
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// `a ∈ W^I` iff `a(α) > 0` for all `α ∈ I`.
    pub fn is_min_coset_rep(&self, a: &FiniteWeylElt, set: NodeSet) -> bool {
        set.iter()
            .all(|i| a.act_root(&Root::unit(self.rank(), i)).is_positive())
    }

    /// `W^I`, the minimal-length representatives of the left cosets `zW_I`.
    pub fn min_coset_reps(&self, set: NodeSet) -> Result<Vec<FiniteWeylElt>> {
        Ok(self
            .weyl_group()?
            .elements()
            .iter()
            .filter(|a| self.is_min_coset_rep(a, set))
            .cloned()
            .collect())
    }

    /// `a W_I W_J` as a set of group indices.
    pub fn double_coset(
        &self,
        a: &FiniteWeylElt,
        i_set: NodeSet,
        j_set: NodeSet,
    ) -> Result<BTreeSet<usize>> {
        if !self.is_min_coset_rep(a, i_set) {
            return Err(Error::Domain(format!(
                "{} is not a minimal representative for {:?}",
                self.format_weyl(a),
                i_set
            )));
        }
        let group = self.weyl_group()?;
        let wi = self.parabolic(i_set);
        let wj = self.parabolic(j_set);
        let mut out = BTreeSet::new();
        for u in &wi {
            let au = a * u;
            for v in &wj {
                out.insert(group.index_of(&(&au * v)));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rd(label: &str) -> RootDatum {
        RootDatum::from_label(label).unwrap()
    }

    #[test]
    fn group_orders() {
        for (label, order) in [
            ("A2", 6),
            ("C2", 8),
            ("B3", 48),
            ("C3", 48),
            ("A3", 24),
            ("G2", 12),
            ("D4", 192),
            ("F4", 1152),
        ] {
            assert_eq!(rd(label).weyl_group().unwrap().len(), order, "{label}");
        }
        assert!(matches!(rd("E8").weyl_group(), Err(Error::Config(_))));
    }

    #[test]
    fn involution_and_identity() {
        let r = rd("A2");
        let s1 = r.simple_reflection(0);
        assert!((&s1 * &s1).is_identity());
        let mu = Coweight(vec![2, 0]);
        assert_eq!(r.identity().act(&mu), mu);
    }

    #[test]
    fn s2_on_alpha1() {
        // s2(α1) = α1 - <α2^∨, α1> α2 = α1 + α2.
        let r = rd("A2");
        let a = r.simple_reflection(1).act_root(&Root(vec![1, 0]));
        assert_eq!(a, Root(vec![1, 1]));
    }

    #[test]
    fn orbit_sizes() {
        let a2 = rd("A2");
        assert_eq!(a2.weyl_orbit(&Coweight(vec![2, 0])).unwrap().len(), 3);
        assert_eq!(a2.weyl_orbit(&Coweight(vec![1, 1])).unwrap().len(), 6);
        assert_eq!(
            a2.weyl_orbit(&Coweight(vec![0, 0])).unwrap(),
            vec![Coweight(vec![0, 0])]
        );
        let c2 = rd("C2");
        assert_eq!(c2.weyl_orbit(&Coweight(vec![1, 0])).unwrap().len(), 4);
        assert!(a2.weyl_orbit(&Coweight(vec![-1, 0])).is_err());
    }

    #[test]
    fn orbit_size_is_index_of_stabilizer() {
        for label in ["A3", "B3", "G2"] {
            let r = rd(label);
            let w = r.weyl_group().unwrap().len();
            for bits in 0..(1u32 << r.rank()) {
                let mu = Coweight(
                    (0..r.rank())
                        .map(|i| i64::from(bits >> i & 1 == 1))
                        .collect(),
                );
                let j = r.j_mu(&mu).unwrap();
                let orbit = r.weyl_orbit(&mu).unwrap();
                assert_eq!(orbit.len(), w / r.parabolic(j).len());
                assert_eq!(orbit.iter().filter(|l| r.is_dominant(l)).count(), 1);
            }
        }
    }

    #[test]
    fn coset_representatives() {
        let r = rd("A2");
        assert_eq!(
            r.min_coset_reps(NodeSet::full(2)).unwrap(),
            vec![r.identity()]
        );
        assert_eq!(r.min_coset_reps(NodeSet::EMPTY).unwrap().len(), 6);
        let reps = r.min_coset_reps(NodeSet::from_indices([0])).unwrap();
        assert_eq!(reps.len(), 3);
        // One representative per coset, of minimal length.
        let w1 = r.parabolic(NodeSet::from_indices([0]));
        let mut covered = HashSet::new();
        for a in &reps {
            let coset: Vec<_> = w1.iter().map(|u| a * u).collect();
            let min = coset.iter().map(|z| r.weyl_length(z)).min().unwrap();
            assert_eq!(r.weyl_length(a), min);
            for z in coset {
                assert!(covered.insert(z));
            }
        }
        assert_eq!(covered.len(), 6);
    }

    #[test]
    fn min_reps_are_length_additive() {
        for label in ["A3", "B3", "C3"] {
            let r = rd(label);
            let group = r.weyl_group().unwrap();
            for set in NodeSet::all_subsets(r.rank()) {
                let wi = r.parabolic(set);
                for a in group.elements() {
                    let additive = wi
                        .iter()
                        .all(|u| r.weyl_length(&(a * u)) == r.weyl_length(a) + r.weyl_length(u));
                    assert_eq!(additive, r.is_min_coset_rep(a, set));
                }
            }
        }
    }

    #[test]
    fn double_cosets() {
        let r = rd("A2");
        let s2 = r.simple_reflection(1);
        let d = r.double_coset(&s2, NodeSet::EMPTY, NodeSet::EMPTY).unwrap();
        assert_eq!(d.len(), 1);
        let all = r
            .double_coset(&r.identity(), NodeSet::full(2), NodeSet::EMPTY)
            .unwrap();
        assert_eq!(all.len(), 6);
        // s2 * {1, s1} * {1, s2} deduplicated.
        let d = r
            .double_coset(&s2, NodeSet::from_indices([0]), NodeSet::from_indices([1]))
            .unwrap();
        let group = r.weyl_group().unwrap();
        let expected: BTreeSet<usize> = ["s2", "e", "s2*s1", "s2*s1*s2"]
            .iter()
            .map(|w| group.index_of(&r.parse_weyl(w).unwrap()))
            .collect();
        assert_eq!(d, expected);
        assert_eq!(d.len(), 4);
        let s1 = r.simple_reflection(0);
        assert!(r
            .double_coset(&s1, NodeSet::from_indices([0]), NodeSet::EMPTY)
            .is_err());
    }

    #[test]
    fn supports() {
        let r = rd("A2");
        assert_eq!(r.support(&r.identity()), NodeSet::EMPTY);
        assert_eq!(
            r.support(&r.simple_reflection(0)),
            NodeSet::from_indices([0])
        );
        let a = r.parse_weyl("s1*s2*s1").unwrap();
        let b = r.parse_weyl("s2*s1*s2").unwrap();
        assert_eq!(a, b);
        assert_eq!(r.support(&a), NodeSet::full(2));
    }

    #[test]
    fn support_is_word_independent() {
        // Every reduced word of z has the same letter set: enumerate all
        // reduced words by descent recursion.
        fn words(r: &RootDatum, z: &FiniteWeylElt) -> Vec<Vec<usize>> {
            if z.is_identity() {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for i in 0..r.rank() {
                if z.has_left_descent(i) {
                    let rest = &r.simple_reflection(i) * z;
                    for mut w in words(r, &rest) {
                        w.insert(0, i);
                        out.push(w);
                    }
                }
            }
            out
        }
        for label in ["A3", "B3"] {
            let r = rd(label);
            for z in r.weyl_group().unwrap().elements() {
                let sets: HashSet<NodeSet> = words(&r, z)
                    .into_iter()
                    .map(|w| {
                        assert_eq!(w.len(), r.weyl_length(z));
                        NodeSet::from_indices(w)
                    })
                    .collect();
                assert_eq!(sets.len(), 1);
            }
        }
    }

    #[test]
    fn word_round_trip() {
        let r = rd("B3");
        for z in r.weyl_group().unwrap().elements() {
            let s = r.format_weyl(z);
            assert_eq!(&r.parse_weyl(&s).unwrap(), z);
            assert_eq!(r.reduced_word(z).len(), r.weyl_length(z));
        }
        assert!(r.parse_weyl("s4").is_err());
        assert!(r.parse_weyl("x1").is_err());
    }

    proptest! {
        #[test]
        fn group_laws_and_pairing(
            w1 in proptest::collection::vec(0usize..3, 0..10),
            w2 in proptest::collection::vec(0usize..3, 0..10),
            lambda in proptest::collection::vec(-5i64..5, 3),
            root in 0usize..9,
        ) {
            let r = RootDatum::from_label("B3").unwrap();
            let a = r.word_element(&w1);
            let b = r.word_element(&w2);
            prop_assert!((&a * &a.inverse()).is_identity());
            prop_assert_eq!((&a * &b).inverse(), &b.inverse() * &a.inverse());
            let lambda = Coweight(lambda);
            prop_assert_eq!((&a * &b).act(&lambda), a.act(&b.act(&lambda)));
            let alpha = r.positive_roots()[root].clone();
            prop_assert_eq!(r.pairing(&a.act(&lambda), &a.act_root(&alpha)), r.pairing(&lambda, &alpha));
            prop_assert_eq!(r.weyl_length(&a), r.weyl_length(&a.inverse()));
        }
    }
}
