//! Faces of the coweight polytope `P_μ = conv(W₀(μ))`, indexed by the
//! double cosets `a W_I W_{J_μ}`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::finite_weyl::FiniteWeylElt;
use crate::linalg;
use crate::root_datum::{Coweight, NodeSet, RootDatum};

/// One face `F_{a,I}` of `P_μ`.
#[derive(Debug, Clone)]
pub struct FaceHandle {
    coset: BTreeSet<usize>,
    a: FiniteWeylElt,
    i_set: NodeSet,
    pairs: Vec<(FiniteWeylElt, NodeSet)>,
    vertices: BTreeSet<Coweight>,
    dim: usize,
}

impl FaceHandle {
    /// The double coset `a W_I W_{J_μ}` as indices into the Weyl group.
    pub fn coset(&self) -> &BTreeSet<usize> {
        &self.coset
    }

    /// The canonical generating pair: shortest `a`, then lexicographically
    /// smallest reduced word, then smallest `I`.
    pub fn canonical_pair(&self) -> (&FiniteWeylElt, NodeSet) {
        (&self.a, self.i_set)
    }

    /// Every pair `(a, I)` with `a ∈ W^I` generating this face, canonical
    /// pair first.
    pub fn pairs(&self) -> &[(FiniteWeylElt, NodeSet)] {
        &self.pairs
    }

    /// `a W_I(μ)`.
    pub fn vertices(&self) -> &BTreeSet<Coweight> {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// The poset `F(P_μ)` of all faces of `P_μ` ordered by inclusion.
#[derive(Debug)]
pub struct FacePoset {
    datum: Arc<RootDatum>,
    mu: Coweight,
    j_mu: NodeSet,
    faces: Vec<FaceHandle>,
    by_coset: HashMap<BTreeSet<usize>, usize>,
    by_vertices: HashMap<BTreeSet<Coweight>, usize>,
    leq: Vec<Vec<bool>>,
}

impl FacePoset {
    /// One face per distinct double coset `a W_I W_{J_μ}`, over all `I ⊆ Δ₀`
    /// and `a ∈ W^I`. Faces are sorted by dimension, then canonical pair.
    ///
    /// Containment is computed both on vertex sets and on cosets; the
    /// construction fails if the two orders differ.
    pub fn new(datum: Arc<RootDatum>, mu: &Coweight) -> Result<Self> {
        datum.check_dominant(mu)?;
        if mu.is_zero() {
            return Err(Error::Domain("the polytope of μ = 0 is a point".into()));
        }
        let j_mu = datum.j_mu(mu)?;
        let group = datum.weyl_group()?;
        let mut pairs_by_coset: HashMap<BTreeSet<usize>, Vec<(FiniteWeylElt, NodeSet)>> =
            HashMap::new();
        for i_set in NodeSet::all_subsets(datum.rank()) {
            for a in group.elements() {
                if datum.is_min_coset_rep(a, i_set) {
                    let coset = datum.double_coset(a, i_set, j_mu)?;
                    pairs_by_coset
                        .entry(coset)
                        .or_default()
                        .push((a.clone(), i_set));
                }
            }
        }
        let key = |(a, i): &(FiniteWeylElt, NodeSet)| {
            (
                datum.weyl_length(a),
                datum.reduced_word(a),
                i.len(),
                i.bits(),
            )
        };
        let mut faces: Vec<FaceHandle> = pairs_by_coset
            .into_iter()
            .map(|(coset, mut pairs)| {
                pairs.sort_by_key(&key);
                let (a, i_set) = pairs[0].clone();
                let vertices: BTreeSet<Coweight> = datum
                    .parabolic(i_set)
                    .iter()
                    .map(|u| (&a * u).act(mu))
                    .collect();
                let dim = affine_dimension(&vertices);
                FaceHandle {
                    coset,
                    a,
                    i_set,
                    pairs,
                    vertices,
                    dim,
                }
            })
            .collect();
        faces.sort_by_cached_key(|f| (f.dim, key(&f.pairs[0])));

        let by_coset = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.coset.clone(), i))
            .collect();
        let by_vertices: HashMap<_, _> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.vertices.clone(), i))
            .collect();
        if by_vertices.len() != faces.len() {
            return Err(Error::Invariant(
                "distinct double cosets share a vertex set".into(),
            ));
        }
        let mut leq = vec![vec![false; faces.len()]; faces.len()];
        for (i, f) in faces.iter().enumerate() {
            for (j, g) in faces.iter().enumerate() {
                let by_vertex = f.vertices.is_subset(&g.vertices);
                let by_coset = f.coset.is_subset(&g.coset);
                if by_vertex != by_coset {
                    return Err(Error::Invariant(format!(
                        "faces {i} and {j}: vertex containment {by_vertex}, coset containment {by_coset}"
                    )));
                }
                leq[i][j] = by_vertex;
            }
        }
        Ok(FacePoset {
            datum,
            mu: mu.clone(),
            j_mu,
            faces,
            by_coset,
            by_vertices,
            leq,
        })
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn mu(&self) -> &Coweight {
        &self.mu
    }

    pub fn j_mu(&self) -> NodeSet {
        self.j_mu
    }

    pub fn faces(&self) -> &[FaceHandle] {
        &self.faces
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face(&self, i: usize) -> &FaceHandle {
        &self.faces[i]
    }

    /// Index of the face `P_μ` itself.
    pub fn top(&self) -> usize {
        self.faces.len() - 1
    }

    pub fn index_of_coset(&self, coset: &BTreeSet<usize>) -> Option<usize> {
        self.by_coset.get(coset).copied()
    }

    pub fn index_of_vertices(&self, vertices: &BTreeSet<Coweight>) -> Option<usize> {
        self.by_vertices.get(vertices).copied()
    }

    /// Index of the face `F_{a,I}`.
    pub fn index_of_pair(&self, a: &FiniteWeylElt, i_set: NodeSet) -> Result<usize> {
        let coset = self.datum.double_coset(a, i_set, self.j_mu)?;
        self.index_of_coset(&coset)
            .ok_or_else(|| Error::Invariant("double coset without a face".into()))
    }

    /// Index of the vertex face `{μ'}`.
    pub fn vertex_face(&self, mu_prime: &Coweight) -> Option<usize> {
        self.index_of_vertices(&BTreeSet::from([mu_prime.clone()]))
    }

    /// `F ≤ F'`, i.e. `F ⊆ F'`.
    pub fn face_leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Faces strictly contained in face `i`.
    pub fn proper_subfaces(&self, i: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| j != i && self.leq[j][i])
            .collect()
    }

    /// `F ∩ F'` computed on double cosets; `None` if they are disjoint.
    /// A nonempty intersection that is not itself a face is an error.
    pub fn face_intersection(&self, i: usize, j: usize) -> Result<Option<usize>> {
        let common: BTreeSet<usize> = self.faces[i]
            .coset
            .intersection(&self.faces[j].coset)
            .copied()
            .collect();
        if common.is_empty() {
            return Ok(None);
        }
        self.index_of_coset(&common).map(Some).ok_or_else(|| {
            Error::Invariant(format!(
                "intersection of faces {i} and {j} is not a double coset"
            ))
        })
    }

    /// The unique minimal face whose vertex set contains `s`.
    pub fn smallest_face_containing(&self, s: &BTreeSet<Coweight>) -> Result<usize> {
        if s.is_empty() {
            return Err(Error::Domain("empty vertex set".into()));
        }
        let orbit = &self.faces[self.top()].vertices;
        if let Some(bad) = s.iter().find(|v| !orbit.contains(*v)) {
            return Err(Error::Domain(format!(
                "{bad} is not in the orbit of {}",
                self.mu
            )));
        }
        let containing: Vec<usize> = (0..self.len())
            .filter(|&i| s.is_subset(&self.faces[i].vertices))
            .collect();
        let minimal: Vec<usize> = containing
            .iter()
            .copied()
            .filter(|&i| containing.iter().all(|&j| j == i || !self.leq[j][i]))
            .collect();
        match minimal.as_slice() {
            [one] => Ok(*one),
            _ => Err(Error::Invariant(format!(
                "{} minimal faces contain the given vertices",
                minimal.len()
            ))),
        }
    }

    /// Cover relations `(smaller, larger)` of the face poset.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j
                    && self.leq[i][j]
                    && !(0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j])
                {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `{"a": "<word>", "I": [1-based indices]}`.
    pub fn pair_json(&self, a: &FiniteWeylElt, i_set: NodeSet) -> Value {
        json!({ "a": self.datum.format_weyl(a), "I": i_set.one_based() })
    }

    pub fn face_label(&self, i: usize) -> String {
        let (a, i_set) = self.faces[i].canonical_pair();
        format!("{}:{}", self.datum.format_weyl(a), join(&i_set.one_based()))
    }

    pub fn face_json(&self, i: usize) -> Value {
        let f = &self.faces[i];
        let (a, i_set) = f.canonical_pair();
        json!({
            "id": i,
            "canonical_pair": self.pair_json(a, i_set),
            "vertices": f.vertices.iter().collect::<Vec<_>>(),
            "dim": f.dim,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "type": self.datum.cartan_type().to_string(),
            "mu": self.mu,
            "faces": (0..self.len()).map(|i| self.face_json(i)).collect::<Vec<_>>(),
            "covers": self.covers(),
        })
    }

    /// Hasse diagram in DOT, edges pointing from a face to the faces covering it.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph faces {\n  rankdir=BT;\n");
        for (i, f) in self.faces.iter().enumerate() {
            let verts: Vec<String> = f.vertices.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(
                s,
                "  f{i} [label=\"{}\\ndim {}\\n{}\"];",
                self.face_label(i),
                f.dim,
                verts.join(" ")
            );
        }
        for (i, j) in self.covers() {
            let _ = writeln!(s, "  f{i} -> f{j};");
        }
        s.push_str("}\n");
        s
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn affine_dimension(vertices: &BTreeSet<Coweight>) -> usize {
    let mut it = vertices.iter();
    let Some(first) = it.next() else { return 0 };
    let diffs: Vec<Vec<i64>> = it.map(|v| (v - first).0).collect();
    linalg::rank(&diffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poset(label: &str, mu: &[i64]) -> FacePoset {
        let d = Arc::new(RootDatum::from_label(label).unwrap());
        FacePoset::new(d, &Coweight(mu.to_vec())).unwrap()
    }

    fn dims(p: &FacePoset) -> Vec<usize> {
        let mut out = vec![0; p.datum().rank() + 1];
        for f in p.faces() {
            out[f.dim()] += 1;
        }
        out
    }

    #[test]
    fn face_counts() {
        assert_eq!(dims(&poset("A2", &[2, 0])), vec![3, 3, 1]);
        assert_eq!(dims(&poset("C2", &[1, 0])), vec![4, 4, 1]);
        assert_eq!(dims(&poset("C2", &[0, 1])), vec![4, 4, 1]);
        assert_eq!(dims(&poset("A2", &[1, 1])), vec![6, 6, 1]);
        assert_eq!(dims(&poset("A1", &[3])), vec![2, 1]);
        // Cuboctahedron: 12 vertices, 24 edges, 8 triangles + 6 squares.
        assert_eq!(dims(&poset("A3", &[0, 1, 0])), vec![6, 12, 8, 1]);
        assert_eq!(dims(&poset("A3", &[1, 0, 1])), vec![12, 24, 14, 1]);
    }

    #[test]
    fn zero_coweight_rejected() {
        let d = Arc::new(RootDatum::from_label("A2").unwrap());
        assert!(matches!(
            FacePoset::new(d, &Coweight(vec![0, 0])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn triangle_edges_and_vertices() {
        let p = poset("A2", &[2, 0]);
        let d = p.datum().clone();
        let e = d.identity();
        let s2 = d.simple_reflection(1);
        let v = p.index_of_pair(&e, NodeSet::EMPTY).unwrap();
        let edge1 = p.index_of_pair(&e, NodeSet::from_indices([0])).unwrap();
        let edge2 = p.index_of_pair(&s2, NodeSet::from_indices([0])).unwrap();
        assert!(p.face_leq(v, edge1));
        assert!(p.face_leq(v, p.top()));
        assert_eq!(p.face_intersection(edge1, edge2).unwrap(), Some(v));
        assert_eq!(p.face_intersection(v, v).unwrap(), Some(v));
        let mu = p.mu().clone();
        // s2 fixes μ = 2ω1; the edge through μ is spanned with s1(μ).
        assert_eq!(s2.act(&mu), mu);
        let s1mu = d.simple_reflection(0).act(&mu);
        let both = BTreeSet::from([mu.clone(), s1mu]);
        assert_eq!(p.smallest_face_containing(&both).unwrap(), edge1);
        assert_eq!(
            p.smallest_face_containing(&BTreeSet::from([mu.clone()]))
                .unwrap(),
            v
        );
        let all = p.face(p.top()).vertices().clone();
        assert_eq!(p.smallest_face_containing(&all).unwrap(), p.top());
        assert!(p.smallest_face_containing(&BTreeSet::new()).is_err());
        assert!(p
            .smallest_face_containing(&BTreeSet::from([Coweight(vec![1, 0])]))
            .is_err());
    }

    #[test]
    fn vertex_faces_disjoint() {
        let p = poset("C2", &[1, 0]);
        let vertices: Vec<usize> = (0..p.len()).filter(|&i| p.face(i).dim() == 0).collect();
        for &i in &vertices {
            for &j in &vertices {
                if i != j {
                    assert_eq!(p.face_intersection(i, j).unwrap(), None);
                }
            }
        }
    }

    #[test]
    fn canonical_pair_and_alternatives() {
        let p = poset("A2", &[2, 0]);
        // J_μ = {α2}; the vertex μ is generated by (e, ∅) and (e, {α2}).
        let v = p.vertex_face(p.mu()).unwrap();
        let f = p.face(v);
        assert!(f.canonical_pair().0.is_identity());
        assert_eq!(f.canonical_pair().1, NodeSet::EMPTY);
        assert!(f
            .pairs()
            .iter()
            .any(|(_, i)| *i == NodeSet::from_indices([1])));
    }

    #[test]
    fn exports_are_deterministic() {
        let a = poset("A2", &[2, 0]);
        let b = poset("A2", &[2, 0]);
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
        assert_eq!(a.to_dot(), b.to_dot());
        assert_eq!(a.to_dot().matches("->").count(), 6 + 3);
    }
}
