use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use super::element::{AffineRoot, ExtAffineElt, RationalPoint};
use crate::error::{Error, Result};
use crate::finite_weyl::FiniteWeylElt;
use crate::root_datum::{components_of, lcm, pair, Coweight, Root, RootDatum};

/// The extended affine Weyl group `X_* ⋊ W_Ψ` attached to a based root
/// subsystem `Ψ ⊆ Φ` whose base consists of positive roots of `Φ`.
///
/// For `Ψ = Φ` this is the ambient group `W̃`. For a proper subsystem the
/// lattice `X_*` is unchanged, so length-zero elements need not be finite in
/// number; nothing below relies on that.
#[derive(Debug)]
pub struct AffineSystem {
    datum: Arc<RootDatum>,
    base: Vec<Root>,
    positives: Vec<Root>,
    highest: Vec<Root>,
    finite_simple: Vec<FiniteWeylElt>,
    simple_affine: Vec<ExtAffineElt>,
    barycenter: RationalPoint,
    finite_group: OnceLock<HashSet<FiniteWeylElt>>,
}

impl AffineSystem {
    /// The ambient group `W̃` of the datum.
    pub fn full(datum: Arc<RootDatum>) -> Self {
        let base = datum.simple_roots();
        Self::build(datum, base)
    }

    /// The group attached to the subsystem with the given base.
    pub fn from_base(datum: Arc<RootDatum>, base: Vec<Root>) -> Result<Self> {
        for b in &base {
            if datum.positive_index(b).is_none() {
                return Err(Error::Domain(format!("{b} is not a positive root")));
            }
        }
        for (i, a) in base.iter().enumerate() {
            for b in &base[i + 1..] {
                // Distinct simple roots of a base pair non-positively.
                if datum.root_pairing(a, b) > 0 || a == b {
                    return Err(Error::Domain(format!(
                        "{a}, {b} cannot lie in a common base"
                    )));
                }
            }
        }
        Ok(Self::build(datum, base))
    }

    fn build(datum: Arc<RootDatum>, base: Vec<Root>) -> Self {
        let reflections: Vec<FiniteWeylElt> = base.iter().map(|b| datum.reflection(b)).collect();
        let closure = |gens: &[usize]| -> Vec<Root> {
            let mut seen: BTreeSet<Root> = gens.iter().map(|&i| base[i].clone()).collect();
            let mut queue: VecDeque<Root> = seen.iter().cloned().collect();
            while let Some(r) = queue.pop_front() {
                for &i in gens {
                    let img = reflections[i].act_root(&r);
                    if seen.insert(img.clone()) {
                        queue.push_back(img);
                    }
                }
            }
            let mut pos: Vec<Root> = seen.into_iter().filter(Root::is_positive).collect();
            pos.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
            pos
        };
        let all: Vec<usize> = (0..base.len()).collect();
        let positives = closure(&all);
        let comps = components_of(base.len(), |i, j| {
            datum.root_pairing(&base[i], &base[j]) != 0
        });
        let highest: Vec<Root> = comps
            .iter()
            .map(|c| {
                closure(c)
                    .into_iter()
                    .max_by_key(Root::height)
                    .expect("nonempty component")
            })
            .collect();

        let n = datum.rank();
        let mut simple_affine: Vec<ExtAffineElt> = reflections
            .iter()
            .map(|s| ExtAffineElt::finite(s.clone()))
            .collect();
        for theta in &highest {
            simple_affine.push(ExtAffineElt::new(
                datum.coroot(theta),
                datum.reflection(theta),
            ));
        }
        let barycenter = base_alcove_barycenter(&datum);
        debug_assert!(simple_affine.iter().all(|s| s.rank() == n));
        AffineSystem {
            datum,
            base,
            positives,
            highest,
            finite_simple: reflections,
            simple_affine,
            barycenter,
            finite_group: OnceLock::new(),
        }
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn base(&self) -> &[Root] {
        &self.base
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positives
    }

    pub fn highest_roots(&self) -> &[Root] {
        &self.highest
    }

    /// Simple reflections `s_β` (`β` in the base) followed by one
    /// `t^{θ^∨} s_θ` per connected component.
    pub fn simple_affine_reflections(&self) -> &[ExtAffineElt] {
        &self.simple_affine
    }

    /// Barycenter of the base alcove of the ambient datum.
    pub fn barycenter(&self) -> &RationalPoint {
        &self.barycenter
    }

    /// The finite reflection group `W_Ψ`.
    pub fn finite_group(&self) -> &HashSet<FiniteWeylElt> {
        self.finite_group.get_or_init(|| {
            let id = self.datum.identity();
            let mut seen = HashSet::from([id.clone()]);
            let mut queue = VecDeque::from([id]);
            while let Some(z) = queue.pop_front() {
                for s in &self.finite_simple {
                    let y = &z * s;
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
            seen
        })
    }

    /// Whether `w` lies in `X_* ⋊ W_Ψ`.
    pub fn contains(&self, w: &ExtAffineElt) -> bool {
        self.finite_group().contains(&w.z)
    }

    /// `W_Ψ(ν)`, sorted.
    pub fn orbit(&self, nu: &Coweight) -> Vec<Coweight> {
        let mut seen = BTreeSet::from([nu.clone()]);
        let mut queue = VecDeque::from([nu.clone()]);
        while let Some(l) = queue.pop_front() {
            for s in &self.finite_simple {
                let img = s.act(&l);
                if seen.insert(img.clone()) {
                    queue.push_back(img);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Length from the closed formula: a sum over `α ∈ Ψ+` of `|<λ,α>|` or
    /// `|<λ,α> - 1|` according to the sign of `z^{-1}(α)`.
    pub fn length(&self, w: &ExtAffineElt) -> usize {
        let rho = w.z.rho_image();
        self.positives
            .iter()
            .map(|a| {
                let p = pair(&w.lambda, a);
                let s: i64 = rho.iter().zip(&a.0).map(|(x, y)| x * y).sum();
                if s > 0 {
                    p.unsigned_abs() as usize
                } else {
                    (p - 1).unsigned_abs() as usize
                }
            })
            .sum()
    }

    /// Index of the first simple affine reflection `s` with `ℓ(sw) < ℓ(w)`.
    pub fn left_descent(&self, w: &ExtAffineElt) -> Option<usize> {
        let l = self.length(w);
        self.simple_affine
            .iter()
            .position(|s| self.length(&(s * w)) < l)
    }

    /// Writes `w = s_{i_1} ⋯ s_{i_k} τ` with `ℓ(τ) = 0` by greedy left descent.
    pub fn decompose(&self, w: &ExtAffineElt) -> (Vec<usize>, ExtAffineElt) {
        let mut word = Vec::new();
        let mut cur = w.clone();
        while let Some(i) = self.left_descent(&cur) {
            word.push(i);
            cur = &self.simple_affine[i] * &cur;
        }
        (word, cur)
    }

    /// The length-zero element `τ` with `w ∈ W_aff τ`.
    pub fn length_zero_rep(&self, w: &ExtAffineElt) -> ExtAffineElt {
        self.decompose(w).1
    }

    /// Bruhat order: both elements must share a length-zero component, and
    /// then for a left descent `s` of `w2`, `w1 ≤ w2` iff
    /// `min(w1, s w1) ≤ s w2`.
    pub fn bruhat_leq(&self, w1: &ExtAffineElt, w2: &ExtAffineElt) -> bool {
        let mut a = w1.clone();
        let mut b = w2.clone();
        let mut la = self.length(&a);
        let mut lb = self.length(&b);
        loop {
            if la > lb {
                return false;
            }
            if la == lb {
                return a == b;
            }
            let i = self
                .left_descent(&b)
                .expect("positive length has a descent");
            let s = &self.simple_affine[i];
            b = s * &b;
            lb -= 1;
            let sa = s * &a;
            let lsa = self.length(&sa);
            if lsa < la {
                a = sa;
                la = lsa;
            }
        }
    }

    /// `{v : v ≤ w}` by subword closure of a reduced word of `w`.
    pub fn lower_ideal(&self, w: &ExtAffineElt) -> HashSet<ExtAffineElt> {
        let (word, tau) = self.decompose(w);
        let mut set: HashSet<ExtAffineElt> = HashSet::from([ExtAffineElt::identity(w.rank())]);
        for &i in &word {
            let s = &self.simple_affine[i];
            let extra: Vec<ExtAffineElt> = set.iter().map(|x| x * s).collect();
            set.extend(extra);
        }
        set.into_iter().map(|x| &x * &tau).collect()
    }

    /// Affine roots of `Ψ` whose hyperplanes separate the base alcove from
    /// `w(𝔞)`, each in its positive form. Decided by the signs of
    /// `k + <·, α>` at the two barycenters.
    pub fn separating_hyperplanes(&self, w: &ExtAffineElt) -> Vec<AffineRoot> {
        let e = &self.barycenter;
        let we = w.act_point(e);
        let mut out = Vec::new();
        for a in &self.positives {
            let x = e.pair(a);
            let y = we.pair(a);
            let (lo, hi) = if x < y { (x, y) } else { (y, x) };
            // Integers m with lo < m * den < hi; the hyperplane is k = -m.
            let first = lo.div_euclid(e.den) + 1;
            let last = (hi - 1).div_euclid(e.den);
            for m in first..=last {
                let root = AffineRoot::new(a.clone(), -m);
                debug_assert!(root.eval_scaled(e).signum() != root.eval_scaled(&we).signum());
                out.push(root.positive_form());
            }
        }
        out
    }

    /// All elements of `W_aff τ` of length at most `max_len`, by upward
    /// search from `τ`.
    pub fn bounded_coset(&self, tau: &ExtAffineElt, max_len: usize) -> Vec<ExtAffineElt> {
        debug_assert_eq!(self.length(tau), 0);
        let mut seen: HashSet<ExtAffineElt> = HashSet::from([tau.clone()]);
        let mut layer = vec![tau.clone()];
        let mut out = vec![tau.clone()];
        for l in 1..=max_len {
            let mut next = Vec::new();
            for w in &layer {
                for s in &self.simple_affine {
                    let v = s * w;
                    if self.length(&v) == l && seen.insert(v.clone()) {
                        next.push(v);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    /// The `ν`-admissible set `{w : w ≤ t^{ν'}, ν' ∈ W_Ψ(ν)}`.
    pub fn admissible(&self, nu: &Coweight) -> HashSet<ExtAffineElt> {
        let mut out = HashSet::new();
        for v in self.orbit(nu) {
            out.extend(self.lower_ideal(&ExtAffineElt::translation(v)));
        }
        out
    }
}

/// Barycenter of the base alcove `{0 < <v,α> < 1, α ∈ Φ+}`: on each
/// component the alcove is the simplex with vertices `0` and `ω_i^∨ / c_i`,
/// where `θ = Σ c_i α_i`.
pub fn base_alcove_barycenter(datum: &RootDatum) -> RationalPoint {
    let n = datum.rank();
    let mut denoms = vec![1i64; n];
    for (comp, theta) in datum.components().iter().zip(datum.highest_roots()) {
        let size = comp.len() as i64 + 1;
        for &i in comp {
            denoms[i] = size * theta.0[i];
        }
    }
    let den = denoms.iter().fold(1, |acc, &d| lcm(acc, d));
    RationalPoint {
        num: denoms.iter().map(|d| den / d).collect(),
        den,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(label: &str) -> AffineSystem {
        AffineSystem::full(Arc::new(RootDatum::from_label(label).unwrap()))
    }

    #[test]
    fn barycenter_lies_in_base_alcove() {
        for label in ["A2", "C2", "G2", "B3", "D2", "F4"] {
            let s = sys(label);
            let e = s.barycenter();
            for a in s.datum().positive_roots() {
                let v = e.pair(a);
                assert!(0 < v && v < e.den, "{label} {a}");
            }
        }
        let e = sys("A2").barycenter().clone();
        assert_eq!(
            e,
            RationalPoint {
                num: vec![1, 1],
                den: 3
            }
        );
    }

    #[test]
    fn simple_lengths() {
        let s = sys("A2");
        assert_eq!(s.length(&ExtAffineElt::identity(2)), 0);
        assert_eq!(s.simple_affine_reflections().len(), 3);
        assert_eq!(sys("C2").simple_affine_reflections().len(), 3);
        assert_eq!(sys("D2").simple_affine_reflections().len(), 4);
        for label in ["A2", "C2", "G2", "D2", "B3"] {
            let s = sys(label);
            for r in s.simple_affine_reflections() {
                assert_eq!(s.length(r), 1, "{label}");
                assert!((r * r).is_identity());
            }
        }
        let t = ExtAffineElt::translation(Coweight(vec![2, 0]));
        assert_eq!(s.length(&t), 4);
        assert_eq!(s.separating_hyperplanes(&t).len(), 4);
    }

    #[test]
    fn separating_for_simple_reflection() {
        let s = sys("A2");
        let s1 = ExtAffineElt::finite(s.datum().simple_reflection(0));
        assert_eq!(
            s.separating_hyperplanes(&s1),
            vec![AffineRoot::new(Root(vec![1, 0]), 0)]
        );
        assert!(s
            .separating_hyperplanes(&ExtAffineElt::identity(2))
            .is_empty());
    }

    #[test]
    fn length_zero_components() {
        let s = sys("A2");
        let id = ExtAffineElt::identity(2);
        assert_eq!(s.length_zero_rep(&id), id);
        // t^{α1^∨} lies in W_aff.
        let t = ExtAffineElt::translation(s.datum().simple_coroot(0));
        assert_eq!(s.length_zero_rep(&t), id);
        let t = ExtAffineElt::translation(Coweight(vec![1, 0]));
        let tau = s.length_zero_rep(&t);
        assert_eq!(s.length(&tau), 0);
        assert_ne!(tau, id);
        // Same W_aff coset: t τ^{-1} has translation part in the coroot lattice.
        let q = &t * &tau.inverse();
        assert_eq!(s.length_zero_rep(&q), id);
    }

    #[test]
    fn bruhat_basics() {
        let s = sys("A2");
        let mu = Coweight(vec![2, 0]);
        let t = ExtAffineElt::translation(mu);
        let tau = s.length_zero_rep(&t);
        assert!(s.bruhat_leq(&t, &t));
        assert!(s.bruhat_leq(&tau, &t));
        assert!(!s.bruhat_leq(&t, &tau));
        // Different length-zero components are incomparable.
        let id = ExtAffineElt::identity(2);
        assert!(!s.bruhat_leq(&id, &t));
        assert!(s.lower_ideal(&t).contains(&tau));
    }

    #[test]
    fn small_ideals() {
        let s = sys("C2");
        let tau = ExtAffineElt::identity(2);
        assert_eq!(s.lower_ideal(&tau).len(), 1);
        for r in s.simple_affine_reflections() {
            let ideal = s.lower_ideal(r);
            assert_eq!(ideal, HashSet::from([r.clone(), tau.clone()]));
        }
    }

    #[test]
    fn subsystem_from_base() {
        let d = Arc::new(RootDatum::from_label("A2").unwrap());
        let sub = AffineSystem::from_base(d.clone(), vec![Root(vec![1, 1])]).unwrap();
        assert_eq!(sub.positive_roots(), &[Root(vec![1, 1])]);
        assert_eq!(sub.finite_group().len(), 2);
        assert_eq!(sub.simple_affine_reflections().len(), 2);
        let empty = AffineSystem::from_base(d.clone(), vec![]).unwrap();
        assert_eq!(
            empty.length(&ExtAffineElt::translation(Coweight(vec![3, -1]))),
            0
        );
        assert!(
            AffineSystem::from_base(d.clone(), vec![Root(vec![1, 0]), Root(vec![1, 1])]).is_err()
        );
        assert!(AffineSystem::from_base(d, vec![Root(vec![-1, 0])]).is_err());
    }
}
