use std::cmp::Ordering;

/// A finite set of tuples of one fixed arity.
///
/// Tuples are stored flattened, sorted lexicographically and without
/// duplicates, so equality of relations is equality of their storage.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    arity: usize,
    data: Vec<usize>,
}

impl Relation {
    pub fn empty(arity: usize) -> Self {
        assert!(arity > 0, "relations have positive arity");
        Relation {
            arity,
            data: Vec::new(),
        }
    }

    /// Builds a relation from tuples. Returns the first tuple whose length
    /// differs from `arity` as the error.
    pub fn from_tuples<I, T>(arity: usize, tuples: I) -> Result<Self, Vec<usize>>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[usize]>,
    {
        assert!(arity > 0, "relations have positive arity");
        let mut data = Vec::new();
        for t in tuples {
            let t = t.as_ref();
            if t.len() != arity {
                return Err(t.to_vec());
            }
            data.extend_from_slice(t);
        }
        Ok(Self::from_flat(arity, data))
    }

    /// Builds a relation from a flat buffer of concatenated tuples.
    pub fn from_flat(arity: usize, data: Vec<usize>) -> Self {
        assert!(arity > 0 && data.len() % arity == 0);
        let count = data.len() / arity;
        let mut order: Vec<usize> = (0..count).collect();
        order.sort_unstable_by(|&a, &b| {
            data[a * arity..(a + 1) * arity].cmp(&data[b * arity..(b + 1) * arity])
        });
        let mut sorted = Vec::with_capacity(data.len());
        for idx in order {
            let t = &data[idx * arity..(idx + 1) * arity];
            let n = sorted.len();
            if n >= arity && &sorted[n - arity..] == t {
                continue;
            }
            sorted.extend_from_slice(t);
        }
        Relation { arity, data: sorted }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of tuples.
    pub fn len(&self) -> usize {
        self.data.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.data.chunks_exact(self.arity)
    }

    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.data[i * self.arity..(i + 1) * self.arity]
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        if tuple.len() != self.arity {
            return false;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.tuple(mid).cmp(tuple) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return true,
            }
        }
        false
    }

    /// Coordinatewise image under `map`.
    pub fn image(&self, map: &[usize]) -> Relation {
        let data = self.data.iter().map(|&x| map[x]).collect();
        Relation::from_flat(self.arity, data)
    }

    /// Union with `other`, which must have the same arity.
    pub fn union(&self, other: &Relation) -> Relation {
        assert_eq!(self.arity, other.arity);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Relation::from_flat(self.arity, data)
    }

    /// Adds `offset` to every entry.
    pub fn shifted(&self, offset: usize) -> Relation {
        Relation {
            arity: self.arity,
            data: self.data.iter().map(|&x| x + offset).collect(),
        }
    }

    pub fn max_entry(&self) -> Option<usize> {
        self.data.iter().copied().max()
    }

    /// Binary relation made symmetric.
    pub fn symmetrized(&self) -> Relation {
        assert_eq!(self.arity, 2);
        let mut data = self.data.clone();
        for t in self.iter() {
            data.push(t[1]);
            data.push(t[0]);
        }
        Relation::from_flat(2, data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_deduplicated() {
        let r = Relation::from_tuples(2, [[1, 0], [0, 1], [1, 0], [0, 0]]).unwrap();
        let tuples: Vec<_> = r.iter().map(|t| t.to_vec()).collect();
        assert_eq!(tuples, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
        assert!(r.contains(&[1, 0]));
        assert!(!r.contains(&[1, 1]));
        assert!(!r.contains(&[1]));
    }

    #[test]
    fn ragged_input_is_reported() {
        let err = Relation::from_tuples(2, [vec![0, 1], vec![2]]).unwrap_err();
        assert_eq!(err, vec![2]);
    }

    #[test]
    fn image_collapses() {
        let r = Relation::from_tuples(2, [[0, 1], [1, 2]]).unwrap();
        let img = r.image(&[0, 0, 1]);
        assert_eq!(img, Relation::from_tuples(2, [[0, 0], [0, 1]]).unwrap());
    }
}
