//! Deletion, contraction and restriction.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::{MatroidScheme, SchemeError};

impl MatroidScheme {
    /// `M − a` on `S≱a`.
    pub fn delete(&self, a: usize) -> Result<MatroidScheme, SchemeError> {
        self.require_atom(a)?;
        let keep: Vec<usize> = (0..self.len()).filter(|&x| !self.leq(a, x)).collect();
        let out = self.sub_scheme(&keep, 0)?;
        let expected = if self.is_isthmus(a) {
            self.rank() - 1
        } else {
            self.rank()
        };
        assert_eq!(out.rank(), expected, "deletion rank drops exactly at isthmuses");
        Ok(out)
    }

    /// `M/x` on `S≥x` with `ρ − ρ(x)`. Identifiers are kept.
    ///
    /// The result is validated: `S≥x` can fail M5 even when `M` is a scheme.
    /// In NONPOS, `S≥a1` has `b1 < u` and `c1 < v` with no common upper bound
    /// for `b1` and `c1`, so `(b1, v)` has no exchange atom.
    pub fn contract(&self, x: usize) -> Result<MatroidScheme, SchemeError> {
        let keep: Vec<usize> = self.poset().up_set(x).ones().collect();
        let out = self.sub_scheme(&keep, self.rho(x))?;
        assert_eq!(out.rank(), self.rank() - self.rho(x));
        Ok(out)
    }

    /// `M[A]` on the ideal of elements whose atoms all lie in `atoms`.
    pub fn restrict(&self, atoms: &[usize]) -> Result<MatroidScheme, SchemeError> {
        let mut allowed = FixedBitSet::with_capacity(self.atoms().len());
        for &a in atoms {
            self.require_atom(a)?;
            allowed.insert(self.simplicial().atom_position(a).expect("atom"));
        }
        let keep: Vec<usize> = (0..self.len())
            .filter(|&x| self.simplicial().atoms_below(x).is_subset(&allowed))
            .collect();
        self.sub_scheme(&keep, 0)
    }

    /// For a loop `a`, the map `z ↦ z∖a` from `S≥a` onto `S≱a`, verified to
    /// be a `ρ`-preserving isomorphism `M/a ≅ M − a`. Pairs are `(z, z∖a)`.
    pub fn check_loop_del_contr(&self, a: usize) -> Result<Vec<(usize, usize)>, SchemeError> {
        self.require_atom(a)?;
        if !self.is_loop(a) {
            return Err(SchemeError::NotALoop(self.id(a).to_string()));
        }
        let sp = self.simplicial();
        let above: Vec<usize> = self.poset().up_set(a).ones().collect();
        let mut pairs = Vec::with_capacity(above.len());
        let mut image = HashMap::new();
        for &z in &above {
            let w = sp.complement(z, a).expect("a ≤ z");
            assert!(!self.leq(a, w));
            assert_eq!(self.rho(z), self.rho(w), "ρ(z) = ρ(z∖a) for a loop");
            assert!(image.insert(w, z).is_none(), "z ↦ z∖a is injective");
            pairs.push((z, w));
        }
        let below = (0..self.len()).filter(|&x| !self.leq(a, x)).count();
        assert_eq!(image.len(), below, "z ↦ z∖a is onto S≱a");
        for &(z, w) in &pairs {
            for &(z2, w2) in &pairs {
                assert_eq!(self.leq(z, z2), self.leq(w, w2), "order is preserved both ways");
            }
        }
        Ok(pairs)
    }
}
