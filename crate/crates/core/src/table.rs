//! A finite monoid given by its full multiplication table: element count,
//! identity index, a generating set, and a row-major product matrix.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("table has {got} entries, expected {expected} for {size} elements")]
    BadDimensions {
        size: usize,
        expected: usize,
        got: usize,
    },
    #[error("table entry {value} out of range for {size} elements")]
    EntryOutOfRange { size: usize, value: usize },
    #[error("index {index} out of range for {size} elements")]
    IndexOutOfRange { size: usize, index: usize },
    #[error("element {index} violates the identity law")]
    NotAnIdentity { index: usize },
}

/// Immutable multiplication table. Products are `u16`, which caps the
/// element count at 65536; the Jones tables built here stay far below.
#[derive(Clone, PartialEq, Eq)]
pub struct MulTable {
    size: usize,
    identity: usize,
    generators: Vec<usize>,
    products: Vec<u16>,
}

impl MulTable {
    pub fn new(
        size: usize,
        identity: usize,
        generators: Vec<usize>,
        products: Vec<u16>,
    ) -> Result<Self, TableError> {
        if products.len() != size * size {
            return Err(TableError::BadDimensions {
                size,
                expected: size * size,
                got: products.len(),
            });
        }
        if let Some(&v) = products.iter().find(|&&v| v as usize >= size) {
            return Err(TableError::EntryOutOfRange {
                size,
                value: v as usize,
            });
        }
        if identity >= size {
            return Err(TableError::IndexOutOfRange {
                size,
                index: identity,
            });
        }
        if let Some(&g) = generators.iter().find(|&&g| g >= size) {
            return Err(TableError::IndexOutOfRange { size, index: g });
        }
        let t = MulTable {
            size,
            identity,
            generators,
            products,
        };
        for a in 0..size {
            if t.product(t.identity, a) != a || t.product(a, t.identity) != a {
                return Err(TableError::NotAnIdentity { index: identity });
            }
        }
        Ok(t)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < self.size && b < self.size);
        self.products[a * self.size + b] as usize
    }

    /// Product over a sequence of element indices; empty yields the identity.
    pub fn fold(&self, indices: impl IntoIterator<Item = usize>) -> usize {
        indices
            .into_iter()
            .fold(self.identity, |acc, x| self.product(acc, x))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|a| (0..self.size).map(|b| self.product(a, b)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Z/2Z: elements {0, 1}, addition mod 2.
    pub(crate) fn z2() -> MulTable {
        MulTable::new(2, 0, vec![1], vec![0, 1, 1, 0]).unwrap()
    }

    #[test]
    fn identity_law_enforced() {
        // row 1 maps 1*0 to 0, so 0 is not a right identity
        assert!(matches!(
            MulTable::new(2, 0, vec![1], vec![0, 1, 0, 0]),
            Err(TableError::NotAnIdentity { .. })
        ));
    }

    #[test]
    fn dimension_check() {
        assert!(matches!(
            MulTable::new(2, 0, vec![], vec![0, 1, 1]),
            Err(TableError::BadDimensions { .. })
        ));
    }

    #[test]
    fn fold_is_left_fold() {
        let t = z2();
        assert_eq!(t.fold([]), 0);
        assert_eq!(t.fold([1, 1, 1]), 1);
        assert_eq!(t.fold([1, 1]), 0);
    }
}
