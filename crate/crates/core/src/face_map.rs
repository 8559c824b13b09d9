//! Faces `Adm(μ)_F` keyed by polytope faces, their interiors and centers, and
//! the face map `w ↦ |Δ|^f(w)`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::admissible::{AdmissibleSet, SubRootSystem};
use crate::error::{Error, Result};
use crate::polytope::FacePoset;
use crate::verify::Check;

/// `Adm(μ)_F` together with its interior, boundary and center. All element
/// sets are indices into the ambient [`AdmissibleSet`].
#[derive(Debug, Clone)]
pub struct AdmFace {
    pub face: usize,
    pub elements: BTreeSet<usize>,
    pub interior: BTreeSet<usize>,
    pub boundary: BTreeSet<usize>,
    pub center: usize,
}

/// All faces of `Adm(μ)` and the face map, built once per case.
#[derive(Debug)]
pub struct FaceDecomposition {
    adm: Arc<AdmissibleSet>,
    poset: Arc<FacePoset>,
    faces: Vec<AdmFace>,
    face_map: Vec<usize>,
}

impl FaceDecomposition {
    pub fn new(adm: Arc<AdmissibleSet>, poset: Arc<FacePoset>) -> Result<Self> {
        if adm.mu() != poset.mu() {
            return Err(Error::Domain(format!(
                "admissible set for {} paired with the polytope of {}",
                adm.mu(),
                poset.mu()
            )));
        }
        let element_sets = (0..poset.len())
            .map(|f| face_elements(&adm, &poset, f))
            .collect::<Result<Vec<_>>>()?;
        let mut faces = Vec::with_capacity(poset.len());
        for (f, elements) in element_sets.iter().enumerate() {
            let mut interior = elements.clone();
            for g in poset.proper_subfaces(f) {
                interior.retain(|w| !element_sets[g].contains(w));
            }
            let boundary = elements.difference(&interior).copied().collect();
            let center = center_of(&adm, &poset, f, elements)?;
            faces.push(AdmFace {
                face: f,
                elements: elements.clone(),
                interior,
                boundary,
                center,
            });
        }
        let face_map = (0..adm.len())
            .map(|w| {
                let lambda = adm
                    .lambda_indices(w)
                    .into_iter()
                    .map(|k| adm.maxima()[k].clone());
                poset.smallest_face_containing(&lambda.collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FaceDecomposition {
            adm,
            poset,
            faces,
            face_map,
        })
    }

    pub fn adm(&self) -> &Arc<AdmissibleSet> {
        &self.adm
    }

    pub fn poset(&self) -> &Arc<FacePoset> {
        &self.poset
    }

    pub fn faces(&self) -> &[AdmFace] {
        &self.faces
    }

    /// `Adm(μ)_F` for the face with the given index.
    pub fn adm_face_for(&self, f: usize) -> &AdmFace {
        &self.faces[f]
    }

    /// `|Δ|^f(w)`, the smallest face containing `Λ(w)`.
    pub fn face_map(&self, w: usize) -> usize {
        self.face_map[w]
    }

    /// The interiors, one per face, after checking that they partition
    /// `Adm(μ)`.
    pub fn decomposition(&self) -> Result<Vec<&BTreeSet<usize>>> {
        let mut owner: Vec<Option<usize>> = vec![None; self.adm.len()];
        for face in &self.faces {
            for &w in &face.interior {
                if let Some(other) = owner[w] {
                    return Err(Error::Invariant(format!(
                        "{} lies in the interiors of faces {other} and {}",
                        self.adm.label(w),
                        face.face
                    )));
                }
                owner[w] = Some(face.face);
            }
        }
        if let Some(w) = owner.iter().position(Option::is_none) {
            return Err(Error::Invariant(format!(
                "{} lies in no interior",
                self.adm.label(w)
            )));
        }
        Ok(self.faces.iter().map(|f| &f.interior).collect())
    }

    /// For every face, the fiber of the face map equals the interior and is
    /// nonempty.
    pub fn verify_fibers(&self) -> Vec<Check> {
        let mut checks = Vec::new();
        for face in &self.faces {
            let fiber: BTreeSet<usize> = (0..self.adm.len())
                .filter(|&w| self.face_map[w] == face.face)
                .collect();
            let name = format!("fiber[{}]", self.poset.face_label(face.face));
            checks.push(match fiber.symmetric_difference(&face.interior).next() {
                None if fiber.is_empty() => Check::fail(name, "empty fiber"),
                None => Check::pass(name),
                Some(&w) => Check::fail(name, self.adm.label(w)),
            });
        }
        checks
    }

    /// The face map is order-reversing, sends each center to its face, and
    /// is recovered from the centers below each element.
    pub fn verify_characterization(&self) -> Vec<Check> {
        let adm = &self.adm;
        let poset = &self.poset;
        let mut reversing = None;
        'outer: for j in 0..adm.len() {
            for &i in &adm.lower_sets()[j] {
                if !poset.face_leq(self.face_map[j], self.face_map[i]) {
                    reversing = Some(format!("{} <= {}", adm.label(i), adm.label(j)));
                    break 'outer;
                }
            }
        }
        let mut checks = vec![Check::from_witness("order_reversing", reversing)];

        let centers = self
            .faces
            .iter()
            .find(|f| self.face_map[f.center] != f.face)
            .map(|f| poset.face_label(f.face));
        checks.push(Check::from_witness("centers", centers));

        let mut reconstruction = None;
        for w in 0..adm.len() {
            let by_center: BTreeSet<usize> = self
                .faces
                .iter()
                .filter(|f| adm.leq(f.center, w))
                .map(|f| f.face)
                .collect();
            let by_membership: BTreeSet<usize> = self
                .faces
                .iter()
                .filter(|f| f.elements.contains(&w))
                .map(|f| f.face)
                .collect();
            let minimal: Vec<usize> = by_center
                .iter()
                .copied()
                .filter(|&f| by_center.iter().all(|&g| g == f || !poset.face_leq(g, f)))
                .collect();
            if by_center != by_membership || minimal != [self.face_map[w]] {
                reconstruction = Some(adm.label(w).to_string());
                break;
            }
        }
        checks.push(Check::from_witness("reconstruction", reconstruction));
        checks
    }

    /// Hasse diagram of `Adm(μ)` in DOT, nodes filled by face-map value.
    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 12] = [
            "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
            "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
        ];
        let mut s = String::from("digraph adm {\n  rankdir=BT;\n  node [style=filled];\n");
        for w in 0..self.adm.len() {
            let f = self.face_map[w];
            let _ = writeln!(
                s,
                "  w{w} [label=\"{}\", fillcolor=\"{}\", face=\"{}\"];",
                self.adm.label(w),
                PALETTE[f % PALETTE.len()],
                self.poset.face_label(f)
            );
        }
        for (i, j) in self.adm.covers() {
            let _ = writeln!(s, "  w{i} -> w{j};");
        }
        s.push_str("}\n");
        s
    }
}

/// `Adm(μ)_F` from the canonical pair, recomputed from an alternative
/// pair when there is one.
fn face_elements(adm: &AdmissibleSet, poset: &FacePoset, f: usize) -> Result<BTreeSet<usize>> {
    let pairs = poset.face(f).pairs();
    let (a, i_set) = &pairs[0];
    let elements = adm.adm_face(a, *i_set)?;
    if let Some((b, j_set)) = pairs.get(1) {
        if adm.adm_face(b, *j_set)? != elements {
            return Err(Error::Invariant(format!(
                "face {} depends on the generating pair",
                poset.face_label(f)
            )));
        }
    }
    Ok(elements)
}

/// The unique Bruhat-minimal element, checked to have length zero in the
/// face's own group.
fn center_of(
    adm: &AdmissibleSet,
    poset: &FacePoset,
    f: usize,
    elements: &BTreeSet<usize>,
) -> Result<usize> {
    let minimal: Vec<usize> = elements
        .iter()
        .copied()
        .filter(|&w| elements.iter().all(|&v| v == w || !adm.leq(v, w)))
        .collect();
    let [center] = minimal[..] else {
        return Err(Error::Invariant(format!(
            "face {} has {} minimal elements",
            poset.face_label(f),
            minimal.len()
        )));
    };
    let (a, i_set) = poset.face(f).canonical_pair();
    let sub = SubRootSystem::new(adm.datum().clone(), a, i_set)?;
    if sub.sub_length(adm.element(center)) != 0 {
        return Err(Error::Invariant(format!(
            "center {} of face {} has positive length in the face's group",
            adm.label(center),
            poset.face_label(f)
        )));
    }
    Ok(center)
}
