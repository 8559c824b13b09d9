//! The admissible set `Adm(μ)`, the sets `Λ(w)`, the root subsystems
//! `Φ_{a,I}` and the faces `Adm(μ)_{a,I}`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

use crate::affine::{AffineSystem, ExtAffineElt};
use crate::error::{Error, Result};
use crate::finite_weyl::FiniteWeylElt;
use crate::linalg;
use crate::root_datum::{Coweight, NodeSet, Root, RootDatum};

/// `Adm(μ) = {w : w ≤ t^{μ'} for some μ' ∈ W₀(μ)}`.
///
/// Elements are indexed in a fixed order (length, then serialized form), and
/// every subset of `Adm(μ)` elsewhere in the crate is a set of such indices.
#[derive(Debug)]
pub struct AdmissibleSet {
    system: Arc<AffineSystem>,
    mu: Coweight,
    elements: Vec<ExtAffineElt>,
    labels: Vec<String>,
    lengths: Vec<usize>,
    index: HashMap<ExtAffineElt, usize>,
    maxima: Vec<Coweight>,
    /// `ideals[k]` = indices of elements below `t^{maxima[k]}`.
    ideals: Vec<BTreeSet<usize>>,
    tau: usize,
    below: OnceLock<Vec<BTreeSet<usize>>>,
}

impl AdmissibleSet {
    pub fn new(system: Arc<AffineSystem>, mu: &Coweight) -> Result<Self> {
        let datum = system.datum().clone();
        datum.check_dominant(mu)?;
        let maxima = datum.weyl_orbit(mu)?;
        let raw_ideals: Vec<_> = maxima
            .iter()
            .map(|m| system.lower_ideal(&ExtAffineElt::translation(m.clone())))
            .collect();
        let mut all: Vec<(usize, String, ExtAffineElt)> = raw_ideals
            .iter()
            .flatten()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .map(|w| (system.length(w), datum.format_affine(w), w.clone()))
            .collect();
        all.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let lengths: Vec<usize> = all.iter().map(|x| x.0).collect();
        let labels: Vec<String> = all.iter().map(|x| x.1.clone()).collect();
        let elements: Vec<ExtAffineElt> = all.into_iter().map(|x| x.2).collect();
        let index: HashMap<ExtAffineElt, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let ideals = raw_ideals
            .iter()
            .map(|set| set.iter().map(|w| index[w]).collect())
            .collect();
        let minimal: Vec<usize> = (0..elements.len()).filter(|&i| lengths[i] == 0).collect();
        if minimal.len() != 1 {
            return Err(Error::Invariant(format!(
                "Adm({mu}) has {} length-zero elements",
                minimal.len()
            )));
        }
        Ok(AdmissibleSet {
            system,
            mu: mu.clone(),
            elements,
            labels,
            lengths,
            index,
            maxima,
            ideals,
            tau: minimal[0],
            below: OnceLock::new(),
        })
    }

    pub fn system(&self) -> &Arc<AffineSystem> {
        &self.system
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        self.system.datum()
    }

    pub fn mu(&self) -> &Coweight {
        &self.mu
    }

    pub fn elements(&self) -> &[ExtAffineElt] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &ExtAffineElt {
        &self.elements[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn index_of(&self, w: &ExtAffineElt) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &ExtAffineElt) -> bool {
        self.index.contains_key(w)
    }

    /// `W₀(μ)`, sorted; `t^{μ'}` for these are the maximal elements.
    pub fn maxima(&self) -> &[Coweight] {
        &self.maxima
    }

    pub fn maximum_index(&self, k: usize) -> usize {
        self.index[&ExtAffineElt::translation(self.maxima[k].clone())]
    }

    /// Indices below `t^{μ'}` for `μ' = maxima()[k]`.
    pub fn ideal(&self, k: usize) -> &BTreeSet<usize> {
        &self.ideals[k]
    }

    /// Index of `τ_μ`, the unique length-zero element.
    pub fn tau(&self) -> usize {
        self.tau
    }

    /// `Λ(w)` as indices into [`Self::maxima`].
    pub fn lambda_indices(&self, i: usize) -> Vec<usize> {
        (0..self.maxima.len())
            .filter(|&k| self.ideals[k].contains(&i))
            .collect()
    }

    /// `Λ(w) = {μ' ∈ W₀(μ) : w ≤ t^{μ'}}`.
    pub fn lambda_set(&self, w: &ExtAffineElt) -> Result<Vec<Coweight>> {
        let i = self.index_of(w).ok_or_else(|| {
            Error::Domain(format!(
                "{} is not in Adm({})",
                self.datum().format_affine(w),
                self.mu
            ))
        })?;
        Ok(self
            .lambda_indices(i)
            .into_iter()
            .map(|k| self.maxima[k].clone())
            .collect())
    }

    /// For each element, the indices of all elements below it.
    pub fn lower_sets(&self) -> &[BTreeSet<usize>] {
        self.below.get_or_init(|| {
            self.elements
                .iter()
                .map(|w| {
                    self.system
                        .lower_ideal(w)
                        .iter()
                        .map(|v| self.index[v])
                        .collect()
                })
                .collect()
        })
    }

    /// Bruhat order between two elements given by index.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.lower_sets()[j].contains(&i)
    }

    /// Cover relations `(lower, upper)`; the Bruhat order is graded by length.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (j, below) in self.lower_sets().iter().enumerate() {
            for &i in below {
                if self.lengths[i] + 1 == self.lengths[j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Elements of a face computed inside `W̃_{a,I}`: the `a(μ)`-admissible
    /// set for the subsystem's own Bruhat order.
    pub fn face_by_sub_enumeration(&self, sub: &SubRootSystem) -> Result<BTreeSet<usize>> {
        let vertex = sub.a.act(&self.mu);
        sub.system
            .admissible(&vertex)
            .iter()
            .map(|w| {
                self.index_of(w).ok_or_else(|| {
                    Error::Invariant(format!(
                        "{} lies in the face for {} but not in Adm({})",
                        self.datum().format_affine(w),
                        sub.label(),
                        self.mu
                    ))
                })
            })
            .collect()
    }

    /// Elements of a face computed as `Adm(μ) ∩ W_{a,I,aff} t^{a(μ)}`.
    pub fn face_by_filter(&self, sub: &SubRootSystem) -> BTreeSet<usize> {
        let vertex = sub.a.act(&self.mu);
        (0..self.len())
            .filter(|&i| sub.in_sub_coset(&self.elements[i], &vertex))
            .collect()
    }

    /// `Adm(μ)_{a,I}`, computed both ways; any disagreement is an error.
    pub fn adm_face(&self, a: &FiniteWeylElt, i_set: NodeSet) -> Result<BTreeSet<usize>> {
        let sub = SubRootSystem::new(self.datum().clone(), a, i_set)?;
        let by_enumeration = self.face_by_sub_enumeration(&sub)?;
        let by_filter = self.face_by_filter(&sub);
        if by_enumeration != by_filter {
            return Err(Error::Invariant(format!(
                "face {} of Adm({}): enumeration gives {} elements, coset filter gives {}",
                sub.label(),
                self.mu,
                by_enumeration.len(),
                by_filter.len()
            )));
        }
        Ok(by_enumeration)
    }
}

/// The subsystem `Φ_{a,I}` with base `Δ_{a,I} = {a(α) : α ∈ I}`.
#[derive(Debug)]
pub struct SubRootSystem {
    a: FiniteWeylElt,
    i_set: NodeSet,
    label: String,
    system: AffineSystem,
    coroot_basis: Vec<Coweight>,
}

impl SubRootSystem {
    pub fn new(datum: Arc<RootDatum>, a: &FiniteWeylElt, i_set: NodeSet) -> Result<Self> {
        if !datum.is_min_coset_rep(a, i_set) {
            return Err(Error::Domain(format!(
                "{} is not a minimal representative for {:?}",
                datum.format_weyl(a),
                i_set
            )));
        }
        let n = datum.rank();
        let base: Vec<Root> = i_set
            .iter()
            .map(|i| a.act_root(&Root::unit(n, i)))
            .collect();
        let coroot_basis = base.iter().map(|b| datum.coroot(b)).collect();
        let label = format!("({}, {:?})", datum.format_weyl(a), i_set);
        let system = AffineSystem::from_base(datum, base)?;
        Ok(SubRootSystem {
            a: a.clone(),
            i_set,
            label,
            system,
            coroot_basis,
        })
    }

    pub fn a(&self) -> &FiniteWeylElt {
        &self.a
    }

    pub fn i_set(&self) -> NodeSet {
        self.i_set
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn system(&self) -> &AffineSystem {
        &self.system
    }

    pub fn base(&self) -> &[Root] {
        self.system.base()
    }

    pub fn positives(&self) -> &[Root] {
        self.system.positive_roots()
    }

    pub fn coroot_basis(&self) -> &[Coweight] {
        &self.coroot_basis
    }

    /// Whether `±γ ∈ Φ_{a,I}`.
    pub fn contains_root(&self, gamma: &Root) -> bool {
        let pos = if gamma.is_positive() {
            gamma.clone()
        } else {
            -gamma
        };
        self.positives().contains(&pos)
    }

    /// Whether `ν ∈ ZΦ_{a,I}^∨`, by an exact solve against the simple coroots.
    pub fn in_coroot_lattice(&self, nu: &Coweight) -> bool {
        let cols: Vec<Vec<i64>> = self.coroot_basis.iter().map(|c| c.0.clone()).collect();
        linalg::solve_integral(&cols, &nu.0).is_some()
    }

    /// Whether `w ∈ W_{a,I,aff} t^{vertex}`: writing `w t^{-vertex} = t^ν z`,
    /// `z ∈ W_{a,I}` and `ν ∈ ZΦ_{a,I}^∨`.
    pub fn in_sub_coset(&self, w: &ExtAffineElt, vertex: &Coweight) -> bool {
        let q = w * &ExtAffineElt::translation(-vertex);
        self.system.finite_group().contains(&q.z) && self.in_coroot_lattice(&q.lambda)
    }

    pub fn sub_length(&self, w: &ExtAffineElt) -> usize {
        self.system.length(w)
    }

    /// Bruhat order of `W̃_{a,I}`.
    pub fn sub_bruhat_leq(&self, w1: &ExtAffineElt, w2: &ExtAffineElt) -> Result<bool> {
        for w in [w1, w2] {
            if !self.system.contains(w) {
                return Err(Error::Domain(format!(
                    "{} is not in the subgroup for {}",
                    self.system.datum().format_affine(w),
                    self.label
                )));
            }
        }
        Ok(self.system.bruhat_leq(w1, w2))
    }
}
