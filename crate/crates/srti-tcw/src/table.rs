use srti_model::Matching;

/// One value in {−1, 0, 1} per cut edge, in increasing edge-id order.
pub type HVector = Vec<i8>;

/// Position of `h` in the table (base 3, first coordinate least significant).
pub fn vector_index(h: &[i8]) -> usize {
    h.iter().rev().fold(0, |acc, &c| acc * 3 + (c + 1) as usize)
}

pub fn vector_at(mut index: usize, len: usize) -> HVector {
    (0..len)
        .map(|_| {
            let d = (index % 3) as i8 - 1;
            index /= 3;
            d
        })
        .collect()
}

/// All vectors of the given length, in table order.
pub fn all_vectors(len: usize) -> impl Iterator<Item = HVector> {
    (0..3usize.pow(len as u32)).map(move |i| vector_at(i, len))
}

/// Table of a node: one witness (or none) per vector over its cut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpTable {
    pub node: usize,
    /// Edge ids of the cut, sorted.
    pub cut: Vec<usize>,
    entries: Vec<Option<Matching>>,
}

impl DpTable {
    pub fn new(node: usize, cut: Vec<usize>) -> DpTable {
        let size = 3usize.pow(cut.len() as u32);
        DpTable { node, cut, entries: vec![None; size] }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, h: &[i8]) -> Option<&Matching> {
        self.entries[vector_index(h)].as_ref()
    }

    pub fn contains(&self, h: &[i8]) -> bool {
        self.entries[vector_index(h)].is_some()
    }

    pub fn entry(&self, index: usize) -> Option<&Matching> {
        self.entries[index].as_ref()
    }

    pub fn set(&mut self, h: &[i8], m: Option<Matching>) {
        let i = vector_index(h);
        self.entries[i] = m;
    }

    /// Vectors with a stored witness.
    pub fn sig(&self) -> Vec<HVector> {
        (0..self.size())
            .filter(|&i| self.entries[i].is_some())
            .map(|i| vector_at(i, self.cut.len()))
            .collect()
    }

    /// Copies witnesses from each vector to the ones obtained by turning a 1
    /// into −1 (a witness for the former always serves the latter).
    pub fn close_downward(&mut self) {
        let k = self.cut.len();
        for i in (0..self.size()).rev() {
            let Some(m) = self.entries[i].clone() else { continue };
            let mut p = 1;
            for _ in 0..k {
                if (i / p) % 3 == 2 && self.entries[i - 2 * p].is_none() {
                    self.entries[i - 2 * p] = Some(m.clone());
                }
                p *= 3;
            }
        }
    }
}
