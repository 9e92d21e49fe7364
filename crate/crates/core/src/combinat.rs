//! Partitions, Schur weights, Young and skew tableaux, Littlewood-Richardson
//! coefficients, Schur ranks and Gelfand-Tsetlin weight enumeration.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of non-negative integers, stored without
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{:?} is not weakly decreasing",
                parts
            )));
        }
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Sorts the input first; useful for building partitions from multisets.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted input")
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Part `i` (zero beyond the length).
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Explicit zero-padded view of length `r`.
    pub fn padded(&self, r: usize) -> Vec<u32> {
        let mut v = self.parts.clone();
        v.resize(r.max(v.len()), 0);
        v
    }

    /// Whether the diagram of `other` fits inside this one.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| other.part(i) <= self.part(i))
    }

    pub fn conjugate(&self) -> Partition {
        conjugate(self)
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: u32) -> Vec<Partition> {
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Partitions of `n` with at most `rows` parts.
    pub fn all_of_size_with_rows(n: u32, rows: usize) -> Vec<Partition> {
        Partition::all_of_size(n)
            .into_iter()
            .filter(|p| p.len() <= rows)
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{}", self)
    }
}

/// Highest weight of a Schur functor: weakly decreasing, possibly negative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchurWeight {
    entries: Vec<i64>,
}

impl SchurWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "Schur weight {:?} is not weakly decreasing",
                entries
            )));
        }
        Ok(SchurWeight { entries })
    }

    pub fn from_partition(p: &Partition, r: usize) -> Self {
        SchurWeight {
            entries: p.padded(r).into_iter().map(i64::from).collect(),
        }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Splits off the determinant twist over the weight's own length:
    /// `entries = partition + twist * (1, ..., 1)`.
    pub fn normalize(&self) -> (Partition, i64) {
        let twist = self.entries.last().copied().unwrap_or(0);
        let parts = self.entries.iter().map(|&e| (e - twist) as u32).collect();
        (
            Partition::new(parts).expect("shifted weight is decreasing"),
            twist,
        )
    }

    /// Normalization for a rank-`r` bundle (pads with zeros first).
    pub fn normalize_for_rank(&self, r: usize) -> Result<(Partition, i64)> {
        let nonzero = self
            .entries
            .iter()
            .rposition(|&e| e != 0)
            .map_or(0, |i| i + 1);
        if nonzero > r {
            return Err(Error::UndefinedFunctor {
                weight: self.entries.clone(),
                rank: r,
            });
        }
        let mut padded = self.entries.clone();
        padded.truncate(r.max(nonzero));
        padded.resize(r, 0);
        let w = SchurWeight::new(padded).map_err(|_| Error::UndefinedFunctor {
            weight: self.entries.clone(),
            rank: r,
        })?;
        Ok(w.normalize())
    }
}

impl fmt::Display for SchurWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for SchurWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SchurWeight{}", self)
    }
}

/// Skew diagram `outer / inner`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::InvalidPartition(format!(
                "{} does not contain {}",
                outer, inner
            )));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn cells(&self) -> usize {
        (self.outer.size() - self.inner.size()) as usize
    }
}

/// A filling of a skew shape, row by row (row `i` holds the cells
/// `inner[i]..outer[i]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewTableau {
    pub shape: SkewShape,
    pub rows: Vec<Vec<u32>>,
}

impl SkewTableau {
    pub fn new(shape: SkewShape, rows: Vec<Vec<u32>>) -> Result<Self> {
        let t = SkewTableau { shape, rows };
        if !t.is_semistandard() {
            return Err(Error::InvalidPartition(
                "filling is not semistandard".into(),
            ));
        }
        Ok(t)
    }

    fn is_semistandard(&self) -> bool {
        let outer = &self.shape.outer;
        let inner = &self.shape.inner;
        if self.rows.len() != outer.len() {
            return false;
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() as u32 != outer.part(i) - inner.part(i) {
                return false;
            }
            if row.contains(&0) || row.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
            if i > 0 {
                for (k, &x) in row.iter().enumerate() {
                    let col = inner.part(i) as usize + k;
                    if col >= inner.part(i - 1) as usize && col < outer.part(i - 1) as usize {
                        let above = self.rows[i - 1][col - inner.part(i - 1) as usize];
                        if above >= x {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Row word: left to right, bottom row first.
    pub fn row_word(&self) -> Vec<u32> {
        self.rows
            .iter()
            .rev()
            .flat_map(|r| r.iter().copied())
            .collect()
    }

    pub fn content(&self) -> Vec<u32> {
        let mut c = Vec::new();
        for &x in self.rows.iter().flatten() {
            if c.len() < x as usize {
                c.resize(x as usize, 0);
            }
            c[x as usize - 1] += 1;
        }
        c
    }
}

/// Multiset of weights of an irreducible representation.
pub type WeightMultiset = BTreeMap<Vec<i64>, u64>;

pub fn conjugate(p: &Partition) -> Partition {
    let cols = p.part(0);
    let parts = (1..=cols)
        .map(|j| p.parts().iter().filter(|&&l| l >= j).count() as u32)
        .collect();
    Partition::new(parts).expect("column lengths decrease")
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Number of standard tableaux of shape `p`, via the closed product
/// `r!/h! * prod_i i!/(l_i + h - i)! * prod_{i<j} ((l_i - l_j)/(j - i) + 1)`
/// with `h` the number of rows.
pub fn count_standard_tableaux(p: &Partition) -> BigInt {
    let r = p.size();
    let h = p.len() as u32;
    let mut acc = BigRational::new(factorial(r), factorial(h));
    for i in 1..=h {
        let li = p.part(i as usize - 1);
        acc *= BigRational::new(factorial(i), factorial(li + h - i));
    }
    for i in 1..=h {
        for j in (i + 1)..=h {
            let diff = p.part(i as usize - 1) as i64 - p.part(j as usize - 1) as i64;
            acc *= BigRational::new(BigInt::from(diff + (j - i) as i64), BigInt::from(j - i));
        }
    }
    debug_assert!(acc.is_integer());
    acc.to_integer()
}

/// Every suffix (read from the end) has at least as many `k` as `k + 1`.
pub fn is_yamanouchi(word: &[u32]) -> bool {
    let mut counts: Vec<u64> = Vec::new();
    for &x in word.iter().rev() {
        if x == 0 {
            return false;
        }
        let x = x as usize;
        if counts.len() < x + 1 {
            counts.resize(x + 1, 0);
        }
        counts[x] += 1;
        if x >= 2 && counts[x] > counts[x - 1] {
            return false;
        }
    }
    true
}

/// Enumerates Littlewood-Richardson skew tableaux of shape `nu / lambda`
/// with content `mu`, calling `visit` on each complete filling.
fn lr_tableaux(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    visit: &mut dyn FnMut(&[Vec<u32>]),
) {
    if !nu.contains(lambda) || lambda.size() + mu.size() != nu.size() {
        return;
    }
    let rows = nu.len();
    let mut filling: Vec<Vec<u32>> = (0..rows)
        .map(|i| vec![0; (nu.part(i) - lambda.part(i)) as usize])
        .collect();
    let mut counts = vec![0u32; mu.len() + 2];

    // Cells are filled top row first, right to left: the reverse of the row
    // word, so the lattice condition can be checked incrementally.
    let cells: Vec<(usize, usize)> = (0..rows)
        .flat_map(|i| (0..filling[i].len()).rev().map(move |k| (i, k)))
        .collect();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        idx: usize,
        cells: &[(usize, usize)],
        filling: &mut Vec<Vec<u32>>,
        counts: &mut Vec<u32>,
        lambda: &Partition,
        mu: &Partition,
        visit: &mut dyn FnMut(&[Vec<u32>]),
    ) {
        if idx == cells.len() {
            visit(filling);
            return;
        }
        let (i, k) = cells[idx];
        let col = lambda.part(i) as usize + k;
        // Weak increase along the row: bounded by the already filled right neighbour.
        let upper = if k + 1 < filling[i].len() {
            filling[i][k + 1]
        } else {
            mu.len() as u32
        };
        // Strict increase down the column.
        let lower = if i > 0 && col >= lambda.part(i - 1) as usize {
            filling[i - 1][col - lambda.part(i - 1) as usize] + 1
        } else {
            1
        };
        for x in lower..=upper {
            let xi = x as usize;
            if counts[xi] >= mu.part(xi - 1) {
                continue;
            }
            if xi >= 2 && counts[xi] + 1 > counts[xi - 1] {
                continue;
            }
            counts[xi] += 1;
            filling[i][k] = x;
            rec(idx + 1, cells, filling, counts, lambda, mu, visit);
            counts[xi] -= 1;
        }
        filling[i][k] = 0;
    }

    rec(0, &cells, &mut filling, &mut counts, lambda, mu, visit);
}

/// Littlewood-Richardson coefficient `c^nu_{lambda, mu}`: the number of
/// skew tableaux of shape `nu / lambda` and content `mu` whose row word is
/// Yamanouchi.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    let mut n = 0u64;
    lr_tableaux(lambda, mu, nu, &mut |_| n += 1);
    n
}

/// The LR tableaux themselves, for inspection and tests.
pub fn lr_tableaux_list(lambda: &Partition, mu: &Partition, nu: &Partition) -> Vec<SkewTableau> {
    let mut out = Vec::new();
    if let Ok(shape) = SkewShape::new(nu.clone(), lambda.clone()) {
        lr_tableaux(lambda, mu, nu, &mut |rows| {
            out.push(SkewTableau {
                shape: shape.clone(),
                rows: rows.to_vec(),
            })
        });
    }
    out
}

/// Rank of `Γ^w` applied to a rank-`r` bundle:
/// `prod_{i<j} (w_i - w_j + j - i) / (j - i)`.
pub fn schur_rank(w: &SchurWeight, r: usize) -> Result<BigInt> {
    let (p, _) = w.normalize_for_rank(r)?;
    Ok(weyl_dimension(&p.padded(r)))
}

pub fn schur_rank_partition(p: &Partition, r: usize) -> Result<BigInt> {
    schur_rank(&SchurWeight::from_partition(p, p.len()), r)
}

fn weyl_dimension(parts: &[u32]) -> BigInt {
    let r = parts.len();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..r {
        for j in (i + 1)..r {
            num *= parts[i] as i64 - parts[j] as i64 + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    num / den
}

/// Weight multiset of `Γ^p` for rank `r`, via Gelfand-Tsetlin patterns.
///
/// Row `k` of a pattern (with `k` entries) interlaces row `k + 1`; the weight
/// coordinate `k` is the difference of the row sums.
pub fn enumerate_gt_patterns(p: &Partition, r: usize) -> Result<WeightMultiset> {
    if p.len() > r {
        return Err(Error::UndefinedFunctor {
            weight: p.parts().iter().map(|&x| x as i64).collect(),
            rank: r,
        });
    }
    let top: Vec<i64> = p.padded(r).into_iter().map(i64::from).collect();
    let mut memo: HashMap<Vec<i64>, WeightMultiset> = HashMap::new();
    Ok(below(&top, &mut memo))
}

/// Weights (as full vectors ending in this row's coordinate) of all patterns
/// whose top row is `row`.
fn below(row: &[i64], memo: &mut HashMap<Vec<i64>, WeightMultiset>) -> WeightMultiset {
    if let Some(w) = memo.get(row) {
        return w.clone();
    }
    let total: i64 = row.iter().sum();
    let mut out = WeightMultiset::new();
    if row.len() == 1 {
        out.insert(vec![total], 1);
        memo.insert(row.to_vec(), out.clone());
        return out;
    }
    let mut next = vec![0i64; row.len() - 1];
    fn rec(
        row: &[i64],
        k: usize,
        next: &mut Vec<i64>,
        total: i64,
        memo: &mut HashMap<Vec<i64>, WeightMultiset>,
        out: &mut WeightMultiset,
    ) {
        if k == next.len() {
            let sub_total: i64 = next.iter().sum();
            let sub = below(next, memo);
            for (w, mult) in sub {
                let mut w = w;
                w.push(total - sub_total);
                *out.entry(w).or_insert(0) += mult;
            }
            return;
        }
        for x in row[k + 1]..=row[k] {
            next[k] = x;
            rec(row, k + 1, next, total, memo, out);
        }
    }
    rec(row, 0, &mut next, total, memo, &mut out);
    memo.insert(row.to_vec(), out.clone());
    out
}

/// Weight multiset of `Γ^w` for rank `r`, including the determinant twist.
pub fn weights_of(w: &SchurWeight, r: usize) -> Result<WeightMultiset> {
    let (p, twist) = w.normalize_for_rank(r)?;
    let base = enumerate_gt_patterns(&p, r)?;
    if twist == 0 {
        return Ok(base);
    }
    Ok(base
        .into_iter()
        .map(|(mut wt, m)| {
            wt.iter_mut().for_each(|x| *x += twist);
            (wt, m)
        })
        .collect())
}

/// Total multiplicity of a weight multiset.
pub fn multiset_size(w: &WeightMultiset) -> BigInt {
    w.values().map(|&m| BigInt::from(m)).sum()
}

/// Brute-force count of standard fillings; exponential, for cross-checks.
pub fn count_standard_fillings_brute(p: &Partition) -> u64 {
    // Place 1..n one at a time into an addable corner.
    fn rec(shape: &mut Vec<u32>, target: &[u32]) -> u64 {
        if shape.iter().zip(target).all(|(a, b)| a == b) {
            return 1;
        }
        let mut n = 0;
        for i in 0..target.len() {
            if shape[i] < target[i] && (i == 0 || shape[i - 1] > shape[i]) {
                shape[i] += 1;
                n += rec(shape, target);
                shape[i] -= 1;
            }
        }
        n
    }
    rec(&mut vec![0; p.len()], p.parts())
}

/// Hook-length formula.
pub fn hook_length_count(p: &Partition) -> BigInt {
    let c = p.conjugate();
    let mut hooks = BigInt::one();
    for i in 0..p.len() {
        for j in 0..p.part(i) {
            let arm = p.part(i) - j - 1;
            let leg = c.part(j as usize) - i as u32 - 1;
            hooks *= arm + leg + 1;
        }
    }
    factorial(p.size()) / hooks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(conjugate(&part(&[1])), part(&[1]));
        assert_eq!(conjugate(&part(&[3, 1])), part(&[2, 1, 1]));
        assert_eq!(conjugate(&part(&[2, 2, 1])), part(&[3, 2]));
    }

    #[test]
    fn trailing_zeros_are_canonical() {
        assert_eq!(part(&[2, 1, 0, 0]), part(&[2, 1]));
        assert_eq!(part(&[2, 1]).padded(4), vec![2, 1, 0, 0]);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn standard_tableaux_examples() {
        assert_eq!(count_standard_tableaux(&part(&[5])), BigInt::from(1));
        assert_eq!(count_standard_tableaux(&part(&[1, 1, 1])), BigInt::from(1));
        assert_eq!(count_standard_tableaux(&part(&[2, 1])), BigInt::from(2));
        assert_eq!(count_standard_fillings_brute(&part(&[2, 1])), 2);
    }

    #[test]
    fn yamanouchi_examples() {
        // the last letter alone is a suffix
        assert!(!is_yamanouchi(&[1, 1, 2]));
        assert!(is_yamanouchi(&[2, 1, 1]));
        assert!(!is_yamanouchi(&[2, 2, 1]));
        // suffixes of (1,2,1,2,3): 3 alone already has more 3s than 2s
        assert!(!is_yamanouchi(&[1, 2, 1, 2, 3]));
        assert!(is_yamanouchi(&[3, 2, 1]));
        assert!(is_yamanouchi(&[]));
    }

    #[test]
    fn lr_examples() {
        for (b1, b2) in [(3, 1), (4, 2), (3, 2), (6, 5)] {
            assert_eq!(
                lr_coefficient(&part(&[1]), &part(&[b1 - 1, b2]), &part(&[b1, b2])),
                1
            );
        }
        assert_eq!(lr_coefficient(&part(&[1]), &part(&[1]), &part(&[2, 2])), 0);
        assert_eq!(
            lr_coefficient(&part(&[1, 1]), &part(&[1]), &part(&[2, 1])),
            1
        );
        assert_eq!(
            lr_coefficient(&part(&[2, 1]), &part(&[2, 1]), &part(&[3, 2, 1])),
            2
        );
        assert_eq!(lr_coefficient(&part(&[2]), &part(&[1]), &part(&[2])), 0);
    }

    #[test]
    fn lr_tableaux_are_valid() {
        for t in lr_tableaux_list(&part(&[2, 1]), &part(&[2, 1]), &part(&[3, 2, 1])) {
            assert!(is_yamanouchi(&t.row_word()));
            assert_eq!(t.content(), vec![2, 1]);
            SkewTableau::new(t.shape.clone(), t.rows.clone()).unwrap();
        }
    }

    #[test]
    fn rank_examples() {
        let w = |v: &[i64]| SchurWeight::new(v.to_vec()).unwrap();
        assert_eq!(schur_rank(&w(&[1, 0, 0]), 3).unwrap(), BigInt::from(3));
        assert_eq!(schur_rank(&w(&[1, 0]), 5).unwrap(), BigInt::from(5));
        assert_eq!(schur_rank(&w(&[2, 1, 0]), 3).unwrap(), BigInt::from(8));
        assert_eq!(
            schur_rank(&w(&[4, -2, -2]), 3).unwrap(),
            schur_rank(&w(&[6, 0, 0]), 3).unwrap()
        );
        assert!(matches!(
            schur_rank(&w(&[1, 1, 1, 1]), 3),
            Err(Error::UndefinedFunctor { .. })
        ));
    }

    #[test]
    fn paper_rank_formula_s() {
        // s(a,b) = (a-b+1)(a+2)/2 (a+3)/3 (a+4)/4 (b+1)(b+2)/2 (b+3)/3
        let s = |a: i64, b: i64| {
            let v = BigRational::from_integer((a - b + 1).into())
                * BigRational::new((a + 2).into(), 2.into())
                * BigRational::new((a + 3).into(), 3.into())
                * BigRational::new((a + 4).into(), 4.into())
                * BigRational::from_integer((b + 1).into())
                * BigRational::new((b + 2).into(), 2.into())
                * BigRational::new((b + 3).into(), 3.into());
            v.to_integer()
        };
        for a in 0..8 {
            for b in 0..=a {
                let w = SchurWeight::new(vec![a, b]).unwrap();
                assert_eq!(schur_rank(&w, 5).unwrap(), s(a, b), "({a},{b})");
            }
        }
    }

    #[test]
    fn gt_examples() {
        let w = enumerate_gt_patterns(&part(&[1]), 3).unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.values().all(|&m| m == 1));
        assert_eq!(w.get(&vec![0, 1, 0]), Some(&1));
        let det = enumerate_gt_patterns(&part(&[1, 1, 1]), 3).unwrap();
        assert_eq!(
            det.into_iter().collect::<Vec<_>>(),
            vec![(vec![1, 1, 1], 1)]
        );
        let adj = enumerate_gt_patterns(&part(&[2, 1]), 3).unwrap();
        assert_eq!(multiset_size(&adj), BigInt::from(8));
        assert_eq!(adj.get(&vec![1, 1, 1]), Some(&2));
        assert!(adj.keys().all(|w| w.iter().sum::<i64>() == 3));
    }

    #[test]
    fn twisted_weights_shift() {
        let w = SchurWeight::new(vec![1, -1, -1]).unwrap();
        let ws = weights_of(&w, 3).unwrap();
        assert_eq!(multiset_size(&ws), BigInt::from(6));
        assert!(ws.keys().all(|w| w.iter().sum::<i64>() == -1));
    }
}
