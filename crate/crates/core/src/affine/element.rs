use std::ops::Mul;

use crate::error::{Error, Result};
use crate::finite_weyl::FiniteWeylElt;
use crate::root_datum::{Coweight, Root, RootDatum};

/// `w = t^λ z` in the extended affine Weyl group `X_* ⋊ W₀`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtAffineElt {
    pub lambda: Coweight,
    pub z: FiniteWeylElt,
}

impl ExtAffineElt {
    pub fn new(lambda: Coweight, z: FiniteWeylElt) -> Self {
        debug_assert_eq!(lambda.rank(), z.rank());
        ExtAffineElt { lambda, z }
    }

    pub fn identity(rank: usize) -> Self {
        Self::new(Coweight::zero(rank), FiniteWeylElt::identity(rank))
    }

    pub fn translation(lambda: Coweight) -> Self {
        let n = lambda.rank();
        Self::new(lambda, FiniteWeylElt::identity(n))
    }

    pub fn finite(z: FiniteWeylElt) -> Self {
        Self::new(Coweight::zero(z.rank()), z)
    }

    pub fn rank(&self) -> usize {
        self.lambda.rank()
    }

    pub fn is_identity(&self) -> bool {
        self.lambda.is_zero() && self.z.is_identity()
    }

    pub fn is_translation(&self) -> bool {
        self.z.is_identity()
    }

    /// `(t^λ z)^{-1} = t^{-z^{-1}(λ)} z^{-1}`.
    pub fn inverse(&self) -> Self {
        let zi = self.z.inverse();
        Self::new(-&zi.act(&self.lambda), zi)
    }

    /// The affine action `v ↦ z(v) + λ` on a rational point.
    pub fn act_point(&self, p: &RationalPoint) -> RationalPoint {
        let mut num = self.z.act_coords(&p.num);
        for (x, l) in num.iter_mut().zip(&self.lambda.0) {
            *x += p.den * l;
        }
        RationalPoint { num, den: p.den }
    }
}

impl Mul for &ExtAffineElt {
    type Output = ExtAffineElt;

    /// `(t^λ z)(t^{λ'} z') = t^{λ + z(λ')} z z'`.
    fn mul(self, rhs: &ExtAffineElt) -> ExtAffineElt {
        ExtAffineElt::new(&self.lambda + &self.z.act(&rhs.lambda), &self.z * &rhs.z)
    }
}

/// Affine root `(α, k)`, with hyperplane `k + <v, α> = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub alpha: Root,
    pub k: i64,
}

impl AffineRoot {
    pub fn new(alpha: Root, k: i64) -> Self {
        AffineRoot { alpha, k }
    }

    /// Positive on the base alcove: `k > 0`, or `k = 0` and `α > 0`.
    pub fn is_positive(&self) -> bool {
        self.k > 0 || (self.k == 0 && self.alpha.is_positive())
    }

    pub fn negate(&self) -> Self {
        AffineRoot::new(-&self.alpha, -self.k)
    }

    /// The representative of `±(α, k)` that is positive.
    pub fn positive_form(&self) -> Self {
        if self.is_positive() {
            self.clone()
        } else {
            self.negate()
        }
    }

    /// Value of `k + <p, α>` at a rational point, scaled by `p.den`.
    pub fn eval_scaled(&self, p: &RationalPoint) -> i64 {
        self.k * p.den + p.pair(&self.alpha)
    }
}

/// A point of `V = X_* ⊗ R` with rational coordinates `num / den` in the
/// fundamental-coweight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub num: Vec<i64>,
    pub den: i64,
}

impl RationalPoint {
    pub fn from_coweight(l: &Coweight) -> Self {
        RationalPoint {
            num: l.0.clone(),
            den: 1,
        }
    }

    /// `<p, α> * den`.
    pub fn pair(&self, alpha: &Root) -> i64 {
        self.num.iter().zip(&alpha.0).map(|(a, b)| a * b).sum()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.num
            .iter()
            .map(|&x| x as f64 / self.den as f64)
            .collect()
    }
}

impl RootDatum {
    /// `s_{(α,k)} = s_α t^{kα^∨} = t^{-kα^∨} s_α`.
    pub fn affine_reflection(&self, root: &AffineRoot) -> ExtAffineElt {
        let coroot = self.coroot(&root.alpha);
        ExtAffineElt::new(coroot.scale(-root.k), self.reflection(&root.alpha))
    }

    /// Serializes as `t[λ]` followed by the reduced word of `z`, e.g. `t[2,0]*s1*s2`.
    pub fn format_affine(&self, w: &ExtAffineElt) -> String {
        if w.z.is_identity() {
            format!("t{}", w.lambda)
        } else {
            format!("t{}*{}", w.lambda, self.format_weyl(&w.z))
        }
    }

    /// Parses the output of [`Self::format_affine`]; a leading translation is optional.
    pub fn parse_affine(&self, s: &str) -> Result<ExtAffineElt> {
        let s = s.trim();
        let n = self.rank();
        if let Some(rest) = s.strip_prefix('t') {
            let rest = rest.trim_start();
            let body = rest
                .strip_prefix('[')
                .ok_or_else(|| Error::Parse(format!("expected '[' in {s:?}")))?;
            let close = body
                .find(']')
                .ok_or_else(|| Error::Parse(format!("unclosed translation in {s:?}")))?;
            let coords = body[..close]
                .split(',')
                .map(|c| c.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("bad translation in {s:?}")))?;
            if coords.len() != n {
                return Err(Error::Parse(format!(
                    "translation in {s:?} needs {n} coordinates"
                )));
            }
            let tail = body[close + 1..].trim();
            let z = if tail.is_empty() {
                self.identity()
            } else {
                let word = tail.strip_prefix('*').ok_or_else(|| {
                    Error::Parse(format!("expected '*' after translation in {s:?}"))
                })?;
                self.parse_weyl(word)?
            };
            Ok(ExtAffineElt::new(Coweight(coords), z))
        } else {
            Ok(ExtAffineElt::finite(self.parse_weyl(s)?))
        }
    }
}
