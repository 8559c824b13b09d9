use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::admissible::AdmissibleSet;
use crate::affine::AffineSystem;
use crate::error::{Error, Result};
use crate::face_map::FaceDecomposition;
use crate::polytope::FacePoset;
use crate::root_datum::{Coweight, RootDatum};

/// A Cartan type together with a dominant coweight `μ`, and the objects
/// built from them. The face poset and face decomposition are built on
/// first use.
#[derive(Debug)]
pub struct Case {
    system: Arc<AffineSystem>,
    mu: Coweight,
    adm: Arc<AdmissibleSet>,
    poset: OnceLock<Result<Arc<FacePoset>>>,
    decomposition: OnceLock<Result<Arc<FaceDecomposition>>>,
}

impl Case {
    pub fn new(datum: Arc<RootDatum>, mu: Coweight) -> Result<Self> {
        let system = Arc::new(AffineSystem::full(datum));
        let adm = Arc::new(AdmissibleSet::new(system.clone(), &mu)?);
        Ok(Case {
            system,
            mu,
            adm,
            poset: OnceLock::new(),
            decomposition: OnceLock::new(),
        })
    }

    /// `Case::parse("C2", "1,0")`.
    pub fn parse(label: &str, mu: &str) -> Result<Self> {
        let datum = RootDatum::from_label(label)?;
        let mu = parse_coweight(mu)?;
        datum.check_coweight(&mu)?;
        Case::new(Arc::new(datum), mu)
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        self.system.datum()
    }

    pub fn system(&self) -> &Arc<AffineSystem> {
        &self.system
    }

    pub fn mu(&self) -> &Coweight {
        &self.mu
    }

    pub fn adm(&self) -> &Arc<AdmissibleSet> {
        &self.adm
    }

    pub fn poset(&self) -> Result<Arc<FacePoset>> {
        self.poset
            .get_or_init(|| FacePoset::new(self.datum().clone(), &self.mu).map(Arc::new))
            .clone()
    }

    pub fn decomposition(&self) -> Result<Arc<FaceDecomposition>> {
        self.decomposition
            .get_or_init(|| {
                let poset = self.poset()?;
                FaceDecomposition::new(self.adm.clone(), poset).map(Arc::new)
            })
            .clone()
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.datum().cartan_type(), self.mu)
    }
}

/// Parses `"2,0"` or `"[2,0]"` into a coweight.
pub fn parse_coweight(s: &str) -> Result<Coweight> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    body.split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad coordinate {c:?} in {s:?}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(Coweight)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_cases() {
        let c = Case::parse("a2", "2, 0").unwrap();
        assert_eq!(c.to_string(), "A2 [2,0]");
        assert_eq!(c.poset().unwrap().len(), 7);
        assert!(Case::parse("A2", "2,x").is_err());
        assert!(Case::parse("A2", "2,0,0").is_err());
        assert!(matches!(Case::parse("A2", "-1,0"), Err(Error::Domain(_))));
        assert!(matches!(
            Case::parse("A2", "0,0").unwrap().poset(),
            Err(Error::Domain(_))
        ));
    }
}
