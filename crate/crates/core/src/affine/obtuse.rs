use super::element::ExtAffineElt;
use super::system::AffineSystem;
use crate::error::{Error, Result};
use crate::finite_weyl::FiniteWeylElt;
use crate::root_datum::Coweight;

/// Default depth for obtuse cone tests around `t^μ`: `<μ, 2ρ> + 2`.
pub fn default_depth(system: &AffineSystem, mu: &Coweight) -> u64 {
    let two_rho = system.datum().two_rho();
    (system.datum().pairing(mu, &two_rho) + 2) as u64
}

impl AffineSystem {
    /// `w(𝔞) ≤_𝔟 w'(𝔞)` for the alcove `𝔟 = b(𝔞)`, `b = t^{-N z(ρ^∨)}`,
    /// which sits `N` levels deep inside the chamber `z(C^-)`. Translating by
    /// `b^{-1}` turns the comparison into the Bruhat order.
    fn obtuse_at_depth(
        &self,
        w: &ExtAffineElt,
        w_prime: &ExtAffineElt,
        z: &FiniteWeylElt,
        depth: u64,
    ) -> bool {
        let nu = self.datum().rho_coweight().scale(depth as i64);
        let b = ExtAffineElt::translation(-&z.act(&nu));
        let bi = b.inverse();
        self.bruhat_leq(&(&bi * w), &(&bi * w_prime))
    }

    /// Membership of `w` in the combinatorial obtuse cone `O(w', z)`,
    /// evaluated at depths `N` and `N + 1`; disagreement is reported as
    /// [`Error::DepthInsufficient`].
    pub fn obtuse_cone_member(
        &self,
        w: &ExtAffineElt,
        w_prime: &ExtAffineElt,
        z: &FiniteWeylElt,
        depth: u64,
    ) -> Result<bool> {
        if self.length_zero_rep(w) != self.length_zero_rep(w_prime) {
            return Ok(false);
        }
        let a = self.obtuse_at_depth(w, w_prime, z, depth);
        let b = self.obtuse_at_depth(w, w_prime, z, depth + 1);
        if a != b {
            return Err(Error::DepthInsufficient {
                depth,
                element: self.datum().format_affine(w),
            });
        }
        Ok(a)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::root_datum::RootDatum;

    #[test]
    fn cone_contains_its_apex() {
        let s = AffineSystem::full(Arc::new(RootDatum::from_label("A2").unwrap()));
        let mu = Coweight(vec![2, 0]);
        let depth = default_depth(&s, &mu);
        assert_eq!(depth, 6);
        for z in s.datum().weyl_group().unwrap().elements() {
            let apex = ExtAffineElt::translation(z.act(&mu));
            assert!(s.obtuse_cone_member(&apex, &apex, z, depth).unwrap());
            // t^μ itself is admissible, so it lies in every cone.
            let t = ExtAffineElt::translation(mu.clone());
            assert!(s.obtuse_cone_member(&t, &apex, z, depth).unwrap());
        }
    }

    #[test]
    fn different_components_are_outside() {
        let s = AffineSystem::full(Arc::new(RootDatum::from_label("A2").unwrap()));
        let id = ExtAffineElt::identity(2);
        let t = ExtAffineElt::translation(Coweight(vec![1, 0]));
        assert!(!s
            .obtuse_cone_member(&id, &t, &s.datum().identity(), 4)
            .unwrap());
    }
}
