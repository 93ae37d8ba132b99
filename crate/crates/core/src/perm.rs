//! Permutations of {1..n}, the combinatorial carrier of the Weyl-group and
//! monodromy actions.

use crate::error::{Error, Result};

/// A permutation of {1, ..., n}, stored as the image list (1-indexed API).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    // images[i] is the image of i+1, stored 1-based
    images: Vec<usize>,
}

impl Perm {
    /// Builds a permutation from the image list `images[i] = sigma(i+1)`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &im in &images {
            if im == 0 || im > n || seen[im] {
                return Err(Error::invalid("not a bijection on {1..n}"));
            }
            seen[im] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (1..=n).collect(),
        }
    }

    /// The long cycle (1 2 ... n): 1↦2, 2↦3, ..., n↦1.
    pub fn long_cycle(n: usize) -> Self {
        Perm {
            images: (1..=n).map(|i| i % n + 1).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.n()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im - 1] = i + 1;
        }
        Perm { images }
    }

    /// Composition acting left-to-right on points: `(self.then(other))(i) = other(self(i))`.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm {
            images: self.images.iter().map(|&im| other.apply(im)).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut acc = Perm::identity(self.n());
        for _ in 0..k {
            acc = acc.then(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| im == i + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn long_cycle_has_order_n() {
        for n in 2..=8 {
            let eta = Perm::long_cycle(n);
            assert!(eta.pow(n).is_identity());
            for k in 1..n {
                assert!(!eta.pow(k).is_identity());
            }
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = Perm::from_images(vec![3, 1, 4, 2]).unwrap();
        assert!(p.then(&p.inverse()).is_identity());
        assert!(p.inverse().then(&p).is_identity());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![1, 1, 3]).is_err());
        assert!(Perm::from_images(vec![0, 2]).is_err());
    }
}
