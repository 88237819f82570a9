//! Integer partitions, their conjugates, Frobenius coordinates, and the
//! bijection between partitions in an `N x M` box and `N`-element subsets of
//! `{1, ..., N+M}` that indexes minor families.

use std::fmt;

/// A partition: weakly decreasing positive parts, trailing zeros dropped.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds from a weakly decreasing list; trailing zeros are trimmed.
    ///
    /// Panics if the parts increase anywhere.
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let mut v: Vec<u32> = parts.into();
        assert!(
            v.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing"
        );
        while v.last() == Some(&0) {
            v.pop();
        }
        Partition(v)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `lambda_i` with 1-based `i`, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        assert!(i >= 1);
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        if self.0.is_empty() {
            return Partition::empty();
        }
        let cols = self.0[0] as usize;
        let mut t = vec![0u32; cols];
        for &p in &self.0 {
            for tj in t.iter_mut().take(p as usize) {
                *tj += 1;
            }
        }
        Partition(t)
    }

    /// Frobenius coordinates `(a, b)` of equal length `d` (the number of
    /// diagonal boxes): `a_i = lambda_i - i` and `b_i = lambda'_i - i + 1`
    /// with 1-based `i`, so `a` counts boxes strictly to the right of the
    /// diagonal and `b` counts boxes weakly below it.
    pub fn frobenius(&self) -> (Vec<u32>, Vec<u32>) {
        let conj = self.conjugate();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for i in 1..=self.len() {
            if self.part(i) < i as u32 {
                break;
            }
            a.push(self.part(i) - i as u32);
            b.push(conj.part(i) - i as u32 + 1);
        }
        (a, b)
    }

    pub fn fits_in_box(&self, rows: usize, cols: u32) -> bool {
        self.len() <= rows && self.part(1) <= cols
    }

    /// The `rows`-element subset `{lambda_{rows-i+1} + i : i = 1..rows}` of
    /// `{1, ..., rows + cols}` (1-based, strictly increasing).
    ///
    /// Panics if the partition does not fit in the box.
    pub fn to_subset(&self, rows: usize, cols: u32) -> Vec<usize> {
        assert!(self.fits_in_box(rows, cols), "partition exceeds the box");
        (1..=rows)
            .map(|i| self.part(rows - i + 1) as usize + i)
            .collect()
    }

    /// Inverse of [`Partition::to_subset`]: a strictly increasing `rows`-
    /// element subset of `{1, ..., rows + cols}` back to the partition.
    pub fn from_subset(subset: &[usize], rows: usize) -> Partition {
        assert_eq!(subset.len(), rows);
        assert!(subset.windows(2).all(|w| w[0] < w[1]), "subset must increase");
        let mut parts: Vec<u32> = subset
            .iter()
            .enumerate()
            .map(|(k, &s)| {
                let i = k + 1;
                assert!(s >= i, "subset element below its index");
                (s - i) as u32
            })
            .collect();
        parts.reverse();
        Partition::new(parts)
    }

    /// All partitions fitting in a `rows x cols` box, in increasing weight
    /// then lexicographic order. Includes the empty partition.
    pub fn all_in_box(rows: usize, cols: u32) -> Vec<Partition> {
        let mut out = vec![Partition::empty()];
        let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
        while let Some(cur) = stack.pop() {
            if cur.len() == rows {
                continue;
            }
            let cap = cur.last().copied().unwrap_or(cols);
            for next in 1..=cap {
                let mut ext = cur.clone();
                ext.push(next);
                out.push(Partition(ext.clone()));
                stack.push(ext);
            }
        }
        out.sort_by_key(|p| (p.weight(), p.0.clone()));
        out.dedup();
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_trims_and_checks() {
        assert_eq!(Partition::new(vec![3, 1, 0, 0]), Partition::new(vec![3, 1]));
        assert!(Partition::new(vec![0, 0]).is_empty());
        assert_eq!(Partition::new(vec![4, 2, 2]).weight(), 8);
    }

    #[test]
    #[should_panic(expected = "weakly decreasing")]
    fn increasing_parts_rejected() {
        Partition::new(vec![1, 2]);
    }

    #[test]
    fn conjugate_is_an_involution() {
        let l = Partition::new(vec![4, 2, 1]);
        assert_eq!(l.conjugate(), Partition::new(vec![3, 2, 1, 1]));
        assert_eq!(l.conjugate().conjugate(), l);
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn frobenius_coordinates() {
        let (a, b) = Partition::new(vec![2, 1]).frobenius();
        assert_eq!((a, b), (vec![1], vec![2]));
        let (a, b) = Partition::new(vec![3, 3, 1]).frobenius();
        assert_eq!((a, b), (vec![2, 1], vec![3, 1]));
        let (a, b) = Partition::empty().frobenius();
        assert!(a.is_empty() && b.is_empty());
        // |lambda| = sum(a) + sum(b): boxes right of, on, and below the
        // diagonal, with b including the diagonal box itself.
        let l = Partition::new(vec![5, 4, 4, 2, 1]);
        let (a, b) = l.frobenius();
        let total: u32 = a.iter().sum::<u32>() + b.iter().sum::<u32>();
        assert_eq!(total, l.weight());
    }

    #[test]
    fn box_enumeration_has_binomial_count() {
        // C(rows + cols, rows) partitions in a rows x cols box.
        assert_eq!(Partition::all_in_box(2, 3).len(), 10);
        assert_eq!(Partition::all_in_box(3, 4).len(), 35);
        assert_eq!(Partition::all_in_box(1, 1).len(), 2);
        let all = Partition::all_in_box(2, 3);
        assert_eq!(all[0], Partition::empty());
        assert!(all.iter().all(|p| p.fits_in_box(2, 3)));
    }

    #[test]
    fn subset_bijection_round_trips() {
        for p in Partition::all_in_box(3, 4) {
            let s = p.to_subset(3, 4);
            assert_eq!(s.len(), 3);
            assert!(s.iter().all(|&x| (1..=7).contains(&x)));
            assert_eq!(Partition::from_subset(&s, 3), p);
        }
        // The empty partition maps to {1, ..., N}.
        assert_eq!(Partition::empty().to_subset(3, 4), vec![1, 2, 3]);
        // A full box maps to the top subset.
        assert_eq!(
            Partition::new(vec![4, 4, 4]).to_subset(3, 4),
            vec![5, 6, 7]
        );
    }
}
