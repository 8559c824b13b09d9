//! Exhaustive checks of the structural theorems on a single case.
//!
//! A [`Report`] is a flat list of named pass/fail records; failures carry a
//! serialized witness. Reports are deterministic, so two runs on the same
//! case serialize to identical bytes.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::admissible::SubRootSystem;
use crate::affine::{default_depth, ExtAffineElt};
use crate::case::Case;
use crate::error::{Error, Result};
use crate::finite_weyl::FiniteWeylElt;
use crate::linalg::{self, Q};
use crate::root_datum::{Coweight, NodeSet, Root, RootDatum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    /// Passes iff there is no witness.
    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn prefixed(mut self, prefix: &str) -> Self {
        self.name = format!("{prefix}.{}", self.name);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub case: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Maxwell,
    Hh,
    Main1,
    Main2,
    Characterization,
    Lemmas,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 7] = [
        "maxwell",
        "hh",
        "main1",
        "main2",
        "characterization",
        "lemmas",
        "all",
    ];

    fn parts(self) -> Vec<Suite> {
        use Suite::*;
        match self {
            All => vec![Maxwell, Hh, Main1, Main2, Characterization, Lemmas],
            s => vec![s],
        }
    }

    fn name(self) -> &'static str {
        Suite::NAMES[self as usize]
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use Suite::*;
        let all = [Maxwell, Hh, Main1, Main2, Characterization, Lemmas, All];
        all.into_iter()
            .find(|x| x.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Runs a suite. Disagreements detected while building the faces are
/// reported as failed checks; configuration and domain errors are returned.
pub fn run(case: &Case, suite: Suite) -> Result<Report> {
    let mut checks = Vec::new();
    for part in suite.parts() {
        let result = match part {
            Suite::Maxwell => maxwell(case),
            Suite::Hh => hh(case),
            Suite::Main1 => main1(case),
            Suite::Main2 => main2(case),
            Suite::Characterization => characterization(case),
            Suite::Lemmas => lemmas(case),
            Suite::All => unreachable!(),
        };
        let part_checks = match result {
            Ok(c) => c,
            Err(e @ (Error::Invariant(_) | Error::DepthInsufficient { .. })) => {
                vec![Check::fail("construction", e.to_string())]
            }
            Err(e) => return Err(e),
        };
        checks.extend(part_checks.into_iter().map(|c| c.prefixed(part.name())));
    }
    Ok(Report {
        case: case.to_string(),
        checks,
    })
}

fn first_failure<T>(
    items: impl IntoIterator<Item = T>,
    ok: impl Fn(&T) -> bool,
    show: impl Fn(&T) -> String,
) -> Option<String> {
    items.into_iter().find(|x| !ok(x)).map(|x| show(&x))
}

/// Face poset checks: vertex faces, the poset isomorphism, intersections and
/// smallest containing faces.
pub fn maxwell(case: &Case) -> Result<Vec<Check>> {
    let poset = case.poset()?;
    let datum = case.datum();
    let mu = case.mu();
    let group = datum.weyl_group()?;
    let j_mu = poset.j_mu();
    let n = poset.len();
    let mut checks = Vec::new();

    let stabilizer = datum.parabolic(j_mu).len();
    let vertex_faces: Vec<usize> = (0..n).filter(|&f| poset.face(f).dim() == 0).collect();
    let orbit = datum.weyl_orbit(mu)?;
    let mut witness = None;
    if vertex_faces.len() * stabilizer != group.len() || vertex_faces.len() != orbit.len() {
        witness = Some(format!("{} vertex faces", vertex_faces.len()));
    }
    for &f in &vertex_faces {
        let face = poset.face(f);
        let (a, _) = face.canonical_pair();
        let coset: BTreeSet<usize> = datum
            .parabolic(j_mu)
            .iter()
            .map(|v| group.index_of(&(a * v)))
            .collect();
        if &coset != face.coset() || face.vertices().len() != 1 {
            witness.get_or_insert(poset.face_label(f));
        }
    }
    checks.push(Check::from_witness("vertex_faces", witness));

    let pairs_ok = first_failure(
        0..n,
        |&f| {
            let face = poset.face(f);
            face.pairs().iter().all(|(a, i)| {
                let v: BTreeSet<Coweight> = datum
                    .parabolic(*i)
                    .iter()
                    .map(|u| (a * u).act(mu))
                    .collect();
                &v == face.vertices()
            })
        },
        |&f| poset.face_label(f),
    );
    checks.push(Check::from_witness("vertices_from_every_pair", pairs_ok));

    let mut iso = None;
    'iso: for f in 0..n {
        for g in 0..n {
            let (x, y) = (poset.face(f), poset.face(g));
            let by_vertices = x.vertices().is_subset(y.vertices());
            let by_coset = x.coset().is_subset(y.coset());
            if by_vertices != by_coset || by_vertices != poset.face_leq(f, g) {
                iso = Some(format!(
                    "{} vs {}",
                    poset.face_label(f),
                    poset.face_label(g)
                ));
                break 'iso;
            }
        }
    }
    checks.push(Check::from_witness("poset_isomorphism", iso));

    let mut inter = None;
    'inter: for f in 0..n {
        for g in 0..n {
            let common: BTreeSet<Coweight> = poset
                .face(f)
                .vertices()
                .intersection(poset.face(g).vertices())
                .cloned()
                .collect();
            let ok = match poset.face_intersection(f, g) {
                Ok(None) => common.is_empty(),
                Ok(Some(h)) => poset.face(h).vertices() == &common,
                Err(_) => false,
            };
            if !ok {
                inter = Some(format!("{} ∩ {}", poset.face_label(f), poset.face_label(g)));
                break 'inter;
            }
        }
    }
    checks.push(Check::from_witness("intersections", inter));

    // The smallest face containing S is the intersection of all faces
    // containing S; tried for every pair of vertices.
    let mut smallest = None;
    'smallest: for x in &orbit {
        for y in &orbit {
            let s = BTreeSet::from([x.clone(), y.clone()]);
            let containing: Vec<usize> = (0..n)
                .filter(|&f| s.is_subset(poset.face(f).vertices()))
                .collect();
            let mut meet = containing[0];
            for &f in &containing[1..] {
                match poset.face_intersection(meet, f) {
                    Ok(Some(h)) => meet = h,
                    _ => {
                        smallest = Some(format!("{{{x}, {y}}}"));
                        break 'smallest;
                    }
                }
            }
            if poset.smallest_face_containing(&s).ok() != Some(meet) {
                smallest = Some(format!("{{{x}, {y}}}"));
                break 'smallest;
            }
        }
    }
    checks.push(Check::from_witness("smallest_face", smallest));
    Ok(checks)
}

/// Length formula against hyperplane counts, the recursive Bruhat test
/// against subword-closed lower ideals, and the bounded obtuse cone check.
pub fn hh(case: &Case) -> Result<Vec<Check>> {
    let adm = case.adm();
    let system = case.system();
    let mut checks = Vec::new();

    let lengths = first_failure(
        0..adm.len(),
        |&w| system.length(adm.element(w)) == system.separating_hyperplanes(adm.element(w)).len(),
        |&w| adm.label(w).to_string(),
    );
    checks.push(Check::from_witness("length_consistency", lengths));

    let mut bruhat = None;
    'bruhat: for i in 0..adm.len() {
        for j in 0..adm.len() {
            if system.bruhat_leq(adm.element(i), adm.element(j)) != adm.leq(i, j) {
                bruhat = Some(format!("{} vs {}", adm.label(i), adm.label(j)));
                break 'bruhat;
            }
        }
    }
    checks.push(Check::from_witness("bruhat_recursive_vs_subword", bruhat));

    checks.extend(bounded_haines_he(case)?);
    Ok(checks)
}

/// Within `{w ∈ W_aff τ_μ : ℓ(w) ≤ ℓ(t^μ)}`, membership in every obtuse cone
/// `O(t^{z(μ)}, z)` coincides with admissibility.
pub fn bounded_haines_he(case: &Case) -> Result<Vec<Check>> {
    let adm = case.adm();
    let system = case.system();
    let datum = case.datum();
    let mu = case.mu();
    let depth = default_depth(system, mu);
    let group = datum.weyl_group()?;
    let max_len = system.length(&ExtAffineElt::translation(mu.clone()));
    let candidates = system.bounded_coset(adm.element(adm.tau()), max_len);

    let mut contained = None;
    let mut coincide = None;
    for w in &candidates {
        let mut in_all = true;
        for z in group.elements() {
            let apex = ExtAffineElt::translation(z.act(mu));
            match system.obtuse_cone_member(w, &apex, z, depth) {
                Ok(true) => {}
                Ok(false) => {
                    in_all = false;
                    if adm.contains(w) && contained.is_none() {
                        contained = Some(format!(
                            "{} outside O({}, {})",
                            datum.format_affine(w),
                            datum.format_affine(&apex),
                            datum.format_weyl(z)
                        ));
                    }
                }
                Err(e) => {
                    return Ok(vec![Check::fail("haines_he_depth", e.to_string())]);
                }
            }
        }
        if in_all != adm.contains(w) && coincide.is_none() {
            coincide = Some(datum.format_affine(w));
        }
    }
    Ok(vec![
        Check::pass("haines_he_depth"),
        Check::from_witness("adm_in_every_cone", contained),
        Check::from_witness("bounded_cone_intersection", coincide),
    ])
}

/// Both face definitions for every pair `(a, I)`, the face theorem
/// `Adm(μ)_F = {w : Λ(w) ⊆ F}`, independence of the generating pair,
/// intersections, and the maximal elements of each face.
pub fn main1(case: &Case) -> Result<Vec<Check>> {
    let adm = case.adm();
    let datum = case.datum();
    let fd = case.decomposition()?;
    let poset = fd.poset();
    let mut checks = Vec::new();

    let mut def2 = None;
    for i_set in NodeSet::all_subsets(datum.rank()) {
        for a in datum.min_coset_reps(i_set)? {
            let sub = SubRootSystem::new(datum.clone(), &a, i_set)?;
            if adm.face_by_sub_enumeration(&sub)? != adm.face_by_filter(&sub) {
                def2.get_or_insert_with(|| sub.label().to_string());
            }
        }
    }
    checks.push(Check::from_witness("def2", def2));

    for face in fd.faces() {
        let vertices = poset.face(face.face).vertices();
        let by_lambda: BTreeSet<usize> = (0..adm.len())
            .filter(|&w| {
                adm.lambda_indices(w)
                    .iter()
                    .all(|&k| vertices.contains(&adm.maxima()[k]))
            })
            .collect();
        let witness = by_lambda
            .symmetric_difference(&face.elements)
            .next()
            .map(|&w| adm.label(w).to_string());
        checks.push(Check::from_witness(
            format!("main1[{}]", poset.face_label(face.face)),
            witness,
        ));
    }

    let mut well_defined = None;
    for face in fd.faces() {
        for (a, i_set) in poset.face(face.face).pairs() {
            if adm.adm_face(a, *i_set)? != face.elements {
                well_defined.get_or_insert_with(|| {
                    format!(
                        "{} via ({}, {:?})",
                        poset.face_label(face.face),
                        datum.format_weyl(a),
                        i_set
                    )
                });
            }
        }
    }
    checks.push(Check::from_witness("pair_independence", well_defined));

    let mut inter = None;
    'inter: for f in fd.faces() {
        for g in fd.faces() {
            let common: BTreeSet<usize> = f.elements.intersection(&g.elements).copied().collect();
            let expected = match poset.face_intersection(f.face, g.face)? {
                None => BTreeSet::new(),
                Some(h) => fd.adm_face_for(h).elements.clone(),
            };
            if common != expected {
                inter = Some(format!(
                    "{} ∩ {}",
                    poset.face_label(f.face),
                    poset.face_label(g.face)
                ));
                break 'inter;
            }
        }
    }
    checks.push(Check::from_witness("face_intersections", inter));

    let maxima = first_failure(
        fd.faces(),
        |f| {
            let maximal: BTreeSet<usize> = f
                .elements
                .iter()
                .copied()
                .filter(|&w| f.elements.iter().all(|&v| v == w || !adm.leq(w, v)))
                .collect();
            let expected: BTreeSet<usize> = poset
                .face(f.face)
                .vertices()
                .iter()
                .filter_map(|v| adm.index_of(&ExtAffineElt::translation(v.clone())))
                .collect();
            maximal == expected && expected.len() == poset.face(f.face).vertices().len()
        },
        |f| poset.face_label(f.face),
    );
    checks.push(Check::from_witness("face_maxima", maxima));
    Ok(checks)
}

/// Interiors partition `Adm(μ)`, fibers equal interiors, surjectivity, and
/// centers.
pub fn main2(case: &Case) -> Result<Vec<Check>> {
    let fd = case.decomposition()?;
    let adm = fd.adm();
    let poset = fd.poset();
    let mut checks = vec![match fd.decomposition() {
        Ok(_) => Check::pass("partition"),
        Err(e) => Check::fail("partition", e.to_string()),
    }];
    checks.extend(fd.verify_fibers());
    let centers = first_failure(
        fd.faces(),
        |f| {
            f.interior.contains(&f.center)
                && f.elements.iter().all(|&w| adm.leq(f.center, w))
                && f.boundary.iter().all(|w| !f.interior.contains(w))
        },
        |f| poset.face_label(f.face),
    );
    checks.push(Check::from_witness("centers", centers));
    let mut extremes = None;
    if fd.adm_face_for(poset.top()).center != adm.tau() {
        extremes = Some("top face".to_string());
    }
    for (k, m) in adm.maxima().iter().enumerate() {
        let f = poset.vertex_face(m);
        if f.map(|f| fd.adm_face_for(f).center) != Some(adm.maximum_index(k)) {
            extremes.get_or_insert_with(|| m.to_string());
        }
    }
    checks.push(Check::from_witness("extreme_centers", extremes));
    Ok(checks)
}

pub fn characterization(case: &Case) -> Result<Vec<Check>> {
    Ok(case.decomposition()?.verify_characterization())
}

/// Upward closure, the key root lemma, both parts of the alcove position
/// lemma, agreement of the face's own Bruhat order, and the reflection-pair
/// lemma for the ambient type.
pub fn lemmas(case: &Case) -> Result<Vec<Check>> {
    let fd = case.decomposition()?;
    let adm = fd.adm();
    let poset = fd.poset();
    let datum = case.datum();
    let mu = case.mu();
    let mut checks = Vec::new();

    let subs: Vec<SubRootSystem> = fd
        .faces()
        .iter()
        .map(|f| {
            let (a, i) = poset.face(f.face).canonical_pair();
            SubRootSystem::new(datum.clone(), a, i)
        })
        .collect::<Result<_>>()?;

    let mut upward = None;
    'up: for f in fd.faces() {
        for &w1 in &f.elements {
            for w2 in 0..adm.len() {
                if adm.leq(w1, w2) && !f.elements.contains(&w2) {
                    upward = Some(format!(
                        "{} < {} leaves {}",
                        adm.label(w1),
                        adm.label(w2),
                        poset.face_label(f.face)
                    ));
                    break 'up;
                }
            }
        }
    }
    checks.push(Check::from_witness("upward_closure", upward));

    let reflections: HashMap<FiniteWeylElt, Root> = datum
        .positive_roots()
        .iter()
        .map(|r| (datum.reflection(r), r.clone()))
        .collect();
    let mut key = None;
    'key: for (f, sub) in fd.faces().iter().zip(&subs) {
        for &w in &f.elements {
            let wi = adm.element(w).inverse();
            for v in 0..adm.len() {
                if !(adm.length(v) > adm.length(w) && adm.leq(w, v)) {
                    continue;
                }
                let q = adm.element(v) * &wi;
                let Some(gamma) = reflections.get(&q.z) else {
                    continue;
                };
                if !is_multiple(&q.lambda, &datum.coroot(gamma)) {
                    continue;
                }
                if !sub.contains_root(gamma) {
                    key = Some(format!(
                        "{} -> {} via {}",
                        adm.label(w),
                        adm.label(v),
                        gamma
                    ));
                    break 'key;
                }
            }
        }
    }
    checks.push(Check::from_witness("key_lemma", key));

    let e = case.system().barycenter().clone();
    let group = datum.weyl_group()?;
    let hh1 = first_failure(
        (0..adm.len()).flat_map(|w| group.elements().iter().map(move |z| (w, z))),
        |(w, z)| {
            alcove_offset_coords(datum, mu, adm.element(*w), z, &e)
                .iter()
                .all(|c| *c >= Q::from(0))
        },
        |(w, z)| format!("{} with z = {}", adm.label(*w), datum.format_weyl(z)),
    );
    checks.push(Check::from_witness("alcove_position", hh1));

    let mut hh2 = None;
    'hh2: for f in fd.faces() {
        for (a, i_set) in poset.face(f.face).pairs() {
            for u in datum.parabolic(*i_set) {
                let au = a * &u;
                for &w in &f.elements {
                    let c = alcove_offset_coords(datum, mu, adm.element(w), &au, &e);
                    let ok = c
                        .iter()
                        .enumerate()
                        .all(|(j, x)| *x >= Q::from(0) && (i_set.contains(j) || *x == Q::from(0)));
                    if !ok {
                        hh2 = Some(format!(
                            "{} with au = {}",
                            adm.label(w),
                            datum.format_weyl(&au)
                        ));
                        break 'hh2;
                    }
                }
            }
        }
    }
    checks.push(Check::from_witness("face_alcove_position", hh2));

    let mut restricted = None;
    'restr: for (f, sub) in fd.faces().iter().zip(&subs) {
        for &w1 in &f.elements {
            for &w2 in &f.elements {
                let s = sub.sub_bruhat_leq(adm.element(w1), adm.element(w2))?;
                if s != adm.leq(w1, w2) {
                    restricted = Some(format!("{} vs {}", adm.label(w1), adm.label(w2)));
                    break 'restr;
                }
            }
        }
    }
    checks.push(Check::from_witness("face_bruhat_order", restricted));

    checks.push(reflection_pairs(datum));
    Ok(checks)
}

fn is_multiple(v: &Coweight, c: &Coweight) -> bool {
    let Some(j) = c.0.iter().position(|&x| x != 0) else {
        return v.is_zero();
    };
    v.0[j] % c.0[j] == 0 && &c.scale(v.0[j] / c.0[j]) == v
}

/// Coordinates of `λ = μ − z⁻¹(w(e) − e)` in the basis of simple coroots.
fn alcove_offset_coords(
    datum: &RootDatum,
    mu: &Coweight,
    w: &ExtAffineElt,
    z: &FiniteWeylElt,
    e: &crate::affine::RationalPoint,
) -> Vec<Q> {
    let we = w.act_point(e);
    let den = we.den * e.den;
    let offset: Vec<i64> = we
        .num
        .iter()
        .zip(&e.num)
        .map(|(a, b)| a * e.den - b * we.den)
        .collect();
    let moved = z.inverse().act_coords(&offset);
    let lambda: Vec<Q> =
        mu.0.iter()
            .zip(moved)
            .map(|(m, x)| Q::from(*m) - Ratio::new(x, den))
            .collect();
    let columns: Vec<Vec<Q>> = datum
        .simple_coroots()
        .iter()
        .map(|c| c.0.iter().map(|&x| Q::from(x)).collect())
        .collect();
    linalg::solve_columns(&columns, &lambda).expect("simple coroots span the coweight space")
}

/// For every `I ⊊ Δ₀` and `α₁, α₂ ∈ Φ⁺ ∖ Φ_I⁺` with `s_{α₁} s_{α₂} ∈ W_I`,
/// `α₁ = α₂`.
pub fn reflection_pairs(datum: &RootDatum) -> Check {
    let n = datum.rank();
    let mut witness = None;
    'outer: for i_set in NodeSet::all_subsets(n).filter(|s| s.len() < n) {
        let outside: Vec<&Root> = datum
            .positive_roots()
            .iter()
            .filter(|r| (0..n).any(|j| r.0[j] != 0 && !i_set.contains(j)))
            .collect();
        let refl: Vec<FiniteWeylElt> = outside.iter().map(|r| datum.reflection(r)).collect();
        for (x, (a1, s1)) in outside.iter().zip(&refl).enumerate() {
            for (a2, s2) in outside.iter().zip(&refl).skip(x + 1) {
                if datum.support(&(s1 * s2)).is_subset(i_set) {
                    witness = Some(format!("{a1}, {a2} for I = {i_set:?}"));
                    break 'outer;
                }
            }
        }
    }
    Check::from_witness(
        format!("reflection_pairs[{}]", datum.cartan_type()),
        witness,
    )
}
