//! Integer partitions and tuples of partitions.

use crate::exactalg::{pochhammer_phi, QPolynomial};
use crate::series::DimVector;
use std::collections::BTreeMap;
use std::fmt;

/// A weakly decreasing sequence of positive parts. The empty partition is
/// the unique partition of 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts into decreasing order and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// Builds `s^m` style partitions from `(part, multiplicity)` pairs.
    pub fn from_multiplicities<I: IntoIterator<Item = (u32, u32)>>(mults: I) -> Self {
        let mut parts = Vec::new();
        for (s, m) in mults {
            parts.extend(std::iter::repeat_n(s, m as usize));
        }
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Number of parts equal to `s`.
    pub fn multiplicity(&self, s: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == s).count() as u32
    }

    /// Exponential form: part size → multiplicity, for the sizes present.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `λ'_i = #{j : λ_j ≥ i}`.
    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.largest_part())
            .map(|i| self.parts.iter().take_while(|&&p| p >= i).count() as u32)
            .collect();
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `⟨λ, μ⟩ = Σ_i λ'_i μ'_i`.
pub fn inner_product(lambda: &Partition, mu: &Partition) -> u64 {
    let a = lambda.conjugate();
    let b = mu.conjugate();
    a.parts.iter().zip(&b.parts).map(|(&x, &y)| x as u64 * y as u64).sum()
}

/// `(|λ, μ|) = ⟨λ, μ⟩ - Σ_s m_λ(s) m_μ(s)`.
pub fn bracket_product(lambda: &Partition, mu: &Partition) -> u64 {
    let ml = lambda.multiplicities();
    let mm = mu.multiplicities();
    let overlap: u64 = ml.iter().map(|(s, &a)| a as u64 * mm.get(s).copied().unwrap_or(0) as u64).sum();
    inner_product(lambda, mu) - overlap
}

/// `b_λ(q) = Π_i φ_{m_i}(q)` over the multiplicities of `λ`.
pub fn b_poly(lambda: &Partition) -> QPolynomial {
    lambda.multiplicities().values().fold(QPolynomial::one(), |acc, &m| &acc * &pochhammer_phi(m))
}

/// Partitions of `w` in reverse-lexicographic order, starting from `(w)`.
pub fn enumerate_partitions(w: u32) -> Vec<Partition> {
    PartitionIter::new(w).collect()
}

/// Streaming reverse-lexicographic enumeration of the partitions of `w`.
pub struct PartitionIter {
    next: Option<Vec<u32>>,
}

impl PartitionIter {
    pub fn new(w: u32) -> Self {
        let first = if w == 0 { Vec::new() } else { vec![w] };
        PartitionIter { next: Some(first) }
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.next.take()?;
        // successor: drop trailing 1s, decrement the last part > 1 and refill
        let mut succ = cur.clone();
        let mut ones = 0;
        while succ.last() == Some(&1) {
            succ.pop();
            ones += 1;
        }
        if let Some(last) = succ.pop() {
            let k = last - 1;
            succ.push(k);
            let mut remaining = ones + 1;
            while remaining > 0 {
                let p = remaining.min(k);
                succ.push(p);
                remaining -= p;
            }
            self.next = Some(succ);
        }
        Some(Partition { parts: cur })
    }
}

/// An `n`-tuple of partitions, one per quiver vertex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PartitionTuple {
    entries: Vec<Partition>,
}

impl PartitionTuple {
    pub fn new(entries: Vec<Partition>) -> Self {
        PartitionTuple { entries }
    }

    pub fn empty(n: usize) -> Self {
        PartitionTuple { entries: vec![Partition::empty(); n] }
    }

    pub fn entries(&self) -> &[Partition] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(|π_1|, …, |π_n|)`.
    pub fn weights(&self) -> DimVector {
        DimVector::new(self.entries.iter().map(Partition::weight).collect())
    }

    pub fn largest_part(&self) -> u32 {
        self.entries.iter().map(Partition::largest_part).max().unwrap_or(0)
    }

    /// Non-zero multiplicity vectors `(s, d_π^s)` in increasing `s`.
    pub fn multiplicity_vectors(&self) -> Vec<(u32, DimVector)> {
        (1..=self.largest_part())
            .map(|s| (s, multiplicity_vector(self, s)))
            .filter(|(_, d)| !d.is_zero())
            .collect()
    }
}

impl fmt::Display for PartitionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `d_π^s = (m_{π_1}(s), …, m_{π_n}(s))`.
pub fn multiplicity_vector(pi: &PartitionTuple, s: u32) -> DimVector {
    assert!(s >= 1, "multiplicity order must be positive");
    DimVector::new(pi.entries.iter().map(|p| p.multiplicity(s)).collect())
}

/// All tuples with `|π_i| = α_i`, streamed in lexicographic order of the
/// per-vertex reverse-lexicographic enumerations.
pub fn enumerate_tuples(alpha: &DimVector) -> TupleIter {
    TupleIter::new(alpha)
}

pub struct TupleIter {
    lists: Vec<Vec<Partition>>,
    index: Vec<usize>,
    done: bool,
}

impl TupleIter {
    fn new(alpha: &DimVector) -> Self {
        let lists: Vec<Vec<Partition>> = alpha.components().iter().map(|&w| enumerate_partitions(w)).collect();
        TupleIter { index: vec![0; lists.len()], lists, done: false }
    }

    /// Number of tuples, `Π p(α_i)`.
    pub fn count_total(&self) -> usize {
        self.lists.iter().map(Vec::len).product()
    }
}

impl Iterator for TupleIter {
    type Item = PartitionTuple;

    fn next(&mut self) -> Option<PartitionTuple> {
        if self.done {
            return None;
        }
        let tuple = PartitionTuple {
            entries: self.index.iter().zip(&self.lists).map(|(&i, l)| l[i].clone()).collect(),
        };
        // odometer, last vertex fastest
        let mut k = self.lists.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.index[k] += 1;
            if self.index[k] < self.lists[k].len() {
                break;
            }
            self.index[k] = 0;
        }
        Some(tuple)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[3, 2, 2]).conjugate(), p(&[3, 3, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[4]).conjugate(), p(&[1, 1, 1, 1]));
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(inner_product(&p(&[3, 2, 2]), &p(&[3, 3, 2])), 20);
        assert_eq!(inner_product(&p(&[1]), &p(&[1])), 1);
        assert_eq!(inner_product(&Partition::empty(), &p(&[5, 2])), 0);
    }

    #[test]
    fn bracket_product_examples() {
        assert_eq!(bracket_product(&p(&[3, 2, 2]), &p(&[3, 3, 2])), 16);
        assert_eq!(bracket_product(&p(&[1]), &p(&[1])), 0);
        assert_eq!(bracket_product(&p(&[2]), &p(&[1])), 1);
    }

    #[test]
    fn b_poly_examples() {
        assert_eq!(b_poly(&p(&[1, 1])), QPolynomial::from_ints(&[1, -1, -1, 1]));
        assert!(b_poly(&Partition::empty()).is_one());
        assert_eq!(b_poly(&p(&[2, 1])), QPolynomial::from_ints(&[1, -2, 1]));
    }

    #[test]
    fn multiplicity_vector_examples() {
        let pi = PartitionTuple::new(vec![
            Partition::from_multiplicities([(2, 2), (3, 2)]),
            Partition::from_multiplicities([(2, 2), (4, 1)]),
            Partition::from_multiplicities([(2, 1), (3, 1)]),
            Partition::from_multiplicities([(1, 2), (2, 1)]),
        ]);
        assert_eq!(multiplicity_vector(&pi, 2), DimVector::from([2, 2, 1, 1]));
        assert_eq!(multiplicity_vector(&pi, 5), DimVector::from([0, 0, 0, 0]));
        let pi = PartitionTuple::new(vec![p(&[1]), p(&[3])]);
        assert_eq!(multiplicity_vector(&pi, 3), DimVector::from([0, 1]));
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(6).len(), 11);
        let counts: Vec<usize> = (0..=12).map(|w| enumerate_partitions(w).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        let five: Vec<String> = enumerate_partitions(5).iter().map(ToString::to_string).collect();
        assert_eq!(five, ["(5)", "(4,1)", "(3,2)", "(3,1,1)", "(2,2,1)", "(2,1,1,1)", "(1,1,1,1,1)"]);
    }

    #[test]
    fn tuple_enumeration() {
        let t: Vec<_> = enumerate_tuples(&DimVector::from([1, 1])).collect();
        assert_eq!(t, vec![PartitionTuple::new(vec![p(&[1]), p(&[1])])]);
        assert_eq!(enumerate_tuples(&DimVector::from([2, 0])).count(), 2);
        assert_eq!(enumerate_tuples(&DimVector::from([2, 2])).count(), 4);
        assert_eq!(enumerate_tuples(&DimVector::from([0, 0])).count(), 1);
        assert_eq!(enumerate_tuples(&DimVector::from([3, 4])).count_total(), 15);
    }

    fn min_form(l: &Partition, m: &Partition) -> u64 {
        l.parts().iter().flat_map(|&a| m.parts().iter().map(move |&b| a.min(b) as u64)).sum()
    }

    fn mult_form(l: &Partition, m: &Partition) -> u64 {
        let (ml, mm) = (l.multiplicities(), m.multiplicities());
        ml.iter()
            .flat_map(|(&i, &a)| mm.iter().map(move |(&j, &b)| i.min(j) as u64 * a as u64 * b as u64))
            .sum()
    }

    #[test]
    fn inner_product_forms_agree_exhaustively() {
        let all: Vec<Partition> = (0..=8).flat_map(enumerate_partitions).collect();
        for l in &all {
            for m in &all {
                let ip = inner_product(l, m);
                assert_eq!(ip, min_form(l, m), "{l} {m}");
                assert_eq!(ip, mult_form(l, m), "{l} {m}");
            }
            let self_ip = inner_product(l, l);
            assert!(self_ip >= l.weight() as u64);
            assert_eq!(self_ip == l.weight() as u64, l.length() <= 1);
        }
    }

    fn partition_strategy() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1u32..6, 0..6).prop_map(Partition::new)
    }

    proptest! {
        #[test]
        fn conjugate_involution(l in partition_strategy()) {
            prop_assert_eq!(l.conjugate().conjugate(), l.clone());
            prop_assert_eq!(l.conjugate().weight(), l.weight());
        }

        #[test]
        fn bracket_symmetric(l in partition_strategy(), m in partition_strategy()) {
            prop_assert_eq!(bracket_product(&l, &m), bracket_product(&m, &l));
        }

        #[test]
        fn weights_from_multiplicity_vectors(ps in prop::collection::vec(partition_strategy(), 1..4)) {
            let pi = PartitionTuple::new(ps);
            let mut acc = DimVector::zero(pi.len());
            for (s, d) in pi.multiplicity_vectors() {
                acc = acc.add(&d.scale(s));
            }
            prop_assert_eq!(acc, pi.weights());
        }
    }
}
