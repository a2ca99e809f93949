//! Integer partitions, ordered set decompositions and the counting
//! identities behind the coefficient formulas.
//!
//! Every identity is evaluated along two routes: by walking the
//! decompositions (or subsets) one at a time, and by closed-form counts
//! `n! S(m, n)` from the Stirling recurrence.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::laurent::{rat, Rational};
use crate::report::{ReportContext, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("{what} = {value} is outside the valid range {range}")]
    InvalidRange {
        what: &'static str,
        value: u32,
        range: String,
    },
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
}

fn invalid(what: &'static str, value: u32, range: &str) -> CombError {
    CombError::InvalidRange {
        what,
        value,
        range: range.to_string(),
    }
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn to_rational(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

fn sign(k: u32) -> Rational {
    if k.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Option<Self> {
        if parts.contains(&0) {
            return None;
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Some(Self(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// `|Aut(λ)| = Π m_i!`
    pub fn aut_order(&self) -> BigUint {
        self.multiplicities()
            .iter()
            .map(|&(_, m)| factorial(m))
            .product()
    }

    /// `m! / Π λ_i!`
    pub fn multinomial(&self) -> BigUint {
        let denom: BigUint = self.0.iter().map(|&p| factorial(p)).product();
        factorial(self.degree()) / denom
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Partitions of `m` in reverse lexicographic order, `(m)` first and
/// `(1,...,1)` last.
pub struct Partitions {
    current: Option<Vec<u32>>,
}

pub fn partitions(m: u32) -> Partitions {
    Partitions {
        current: if m == 0 { None } else { Some(vec![m]) },
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition(cur.clone());
        let mut a = cur;
        let mut rem = 0;
        while a.last() == Some(&1) {
            a.pop();
            rem += 1;
        }
        if let Some(last) = a.pop() {
            let v = last - 1;
            rem += 1;
            a.push(v);
            while rem > v {
                a.push(v);
                rem -= v;
            }
            if rem > 0 {
                a.push(rem);
            }
            self.current = Some(a);
        }
        Some(out)
    }
}

/// Ordered list of disjoint nonempty blocks covering `{1..m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedDecomposition {
    blocks: Vec<Vec<usize>>,
}

impl OrderedDecomposition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn from_assignment(assign: &[usize], n: usize) -> Self {
        let mut blocks = vec![Vec::new(); n];
        for (element, &b) in assign.iter().enumerate() {
            blocks[b].push(element + 1);
        }
        Self { blocks }
    }
}

impl fmt::Display for OrderedDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                format!(
                    "{{{}}}",
                    b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        write!(f, "({})", blocks.join(","))
    }
}

/// Walks the surjections `{1..m} -> {1..n}` in lexicographic order without
/// allocating per step. Each surjection `f` is the decomposition with
/// blocks `S_j = f^-1(j)`.
pub struct SurjectionWalker {
    m: usize,
    n: usize,
    assign: Vec<usize>,
    counts: Vec<usize>,
    missing: usize,
    state: WalkState,
}

#[derive(PartialEq, Eq)]
enum WalkState {
    Fresh,
    Running,
    Done,
}

impl SurjectionWalker {
    pub fn new(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            assign: Vec::with_capacity(m),
            counts: vec![0; n],
            missing: n,
            state: if n == 0 || n > m {
                WalkState::Done
            } else {
                WalkState::Fresh
            },
        }
    }

    fn push(&mut self, v: usize) {
        if self.counts[v] == 0 {
            self.missing -= 1;
        }
        self.counts[v] += 1;
        self.assign.push(v);
    }

    fn pop(&mut self) -> usize {
        let v = self.assign.pop().unwrap();
        self.counts[v] -= 1;
        if self.counts[v] == 0 {
            self.missing += 1;
        }
        v
    }

    /// Smallest completion of the current prefix to a surjection.
    fn fill(&mut self) {
        let free = self.m - self.assign.len();
        let zeros = free - self.missing + usize::from(self.counts[0] == 0);
        for _ in 0..zeros {
            self.push(0);
        }
        for v in 1..self.n {
            if self.counts[v] == 0 {
                self.push(v);
            }
        }
    }

    /// The next assignment, as block indices `0..n` per element.
    pub fn advance(&mut self) -> Option<&[usize]> {
        match self.state {
            WalkState::Done => return None,
            WalkState::Fresh => {
                self.state = WalkState::Running;
                self.fill();
                return Some(&self.assign);
            }
            WalkState::Running => {}
        }
        while !self.assign.is_empty() {
            let old = self.pop();
            let slots_after = self.m - self.assign.len() - 1;
            for v in old + 1..self.n {
                self.push(v);
                if self.missing <= slots_after {
                    self.fill();
                    return Some(&self.assign);
                }
                self.pop();
            }
        }
        self.state = WalkState::Done;
        None
    }
}

/// Ordered decompositions of `{1..m}` into `n` blocks.
pub struct OrderedDecompositions {
    walker: SurjectionWalker,
}

impl Iterator for OrderedDecompositions {
    type Item = OrderedDecomposition;

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.walker.n;
        self.walker
            .advance()
            .map(|a| OrderedDecomposition::from_assignment(a, n))
    }
}

pub fn ordered_decompositions(m: u32, n: u32) -> Result<OrderedDecompositions, CombError> {
    if m == 0 {
        return Err(invalid("m", m, "m >= 1"));
    }
    if n == 0 || n > m {
        return Err(invalid("n", n, &format!("1..={m}")));
    }
    Ok(OrderedDecompositions {
        walker: SurjectionWalker::new(m as usize, n as usize),
    })
}

/// Number of ordered decompositions of `{1..m}` into `n` blocks, by walking
/// them.
pub fn count_by_enumeration(m: u32, n: u32) -> BigUint {
    let mut walker = SurjectionWalker::new(m as usize, n as usize);
    let mut count: u64 = 0;
    while walker.advance().is_some() {
        count += 1;
    }
    BigUint::from(count)
}

/// Stirling numbers of the second kind, `S(m, n)`.
pub fn stirling2(m: u32, n: u32) -> BigUint {
    let (m, n) = (m as usize, n as usize);
    if n > m {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::zero(); n + 1];
    row[0] = BigUint::one();
    for i in 1..=m {
        for j in (1..=n.min(i)).rev() {
            row[j] = &row[j] * BigUint::from(j) + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row[n].clone()
}

/// `n! S(m, n)`: the number of surjections `{1..m} -> {1..n}`.
pub fn surjection_count(m: u32, n: u32) -> BigUint {
    if m == 0 && n == 0 {
        return BigUint::one();
    }
    factorial(n) * stirling2(m, n)
}

/// The same count as a sum over partitions `λ ⊢ m` with `n` parts of
/// `multinomial(m; λ) n! / |Aut(λ)|`.
pub fn surjection_count_by_partitions(m: u32, n: u32) -> BigUint {
    partitions(m)
        .filter(|p| p.len() == n as usize)
        .map(|p| p.multinomial() * factorial(n) / p.aut_order())
        .sum()
}

/// Nonnegative `parts`-tuples summing to `total`, lexicographically.
pub fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// The finite counting identities used to collapse decomposition sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountingIdentity {
    /// `Σ_{n=2}^{m} (-1)^n / n · D(m, n) = 1` for `m ≥ 2`.
    LogSum,
    /// `Σ_{n=2}^{m} (-1)^n (D(m-1, n-1) + D(m-1, n)) = 1` for `m ≥ 3`.
    ShiftedSum,
    /// `Σ_{n=1}^{m} (-1)^n D(m, n) = (-1)^m` for `m ≥ 1`.
    AlternatingSum,
    /// `Σ_{k=0}^{n-1} (-1)^k (k+1) C(n, k) = (-1)^{n+1} (n+1)`, claimed for
    /// `n ≥ 1` but false at `n = 1`.
    BinomialSum,
}

impl CountingIdentity {
    pub const ALL: [CountingIdentity; 4] = [
        CountingIdentity::LogSum,
        CountingIdentity::ShiftedSum,
        CountingIdentity::AlternatingSum,
        CountingIdentity::BinomialSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CountingIdentity::LogSum => "log-sum",
            CountingIdentity::ShiftedSum => "shifted-sum",
            CountingIdentity::AlternatingSum => "alternating-sum",
            CountingIdentity::BinomialSum => "binomial-sum",
        }
    }

    /// Smallest parameter the identity is stated for.
    pub fn min_parameter(self) -> u32 {
        match self {
            CountingIdentity::LogSum => 2,
            CountingIdentity::ShiftedSum => 3,
            CountingIdentity::AlternatingSum => 1,
            CountingIdentity::BinomialSum => 1,
        }
    }
}

impl fmt::Display for CountingIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CountingIdentity {
    type Err = CombError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| CombError::UnknownIdentity(s.to_string()))
    }
}

#[derive(Clone, Copy)]
enum Route {
    Enumeration,
    ClosedForm,
}

impl Route {
    fn name(self) -> &'static str {
        match self {
            Route::Enumeration => "enumeration",
            Route::ClosedForm => "closed-form",
        }
    }

    fn count(self, m: u32, n: u32) -> Rational {
        if n == 0 || n > m {
            return Rational::zero();
        }
        to_rational(&match self {
            Route::Enumeration => count_by_enumeration(m, n),
            Route::ClosedForm => surjection_count(m, n),
        })
    }

    fn binomial(self, n: u32, k: u32) -> Rational {
        match self {
            Route::Enumeration => {
                let hits = (0u64..1 << n).filter(|s| s.count_ones() == k).count();
                rat(hits as i64)
            }
            Route::ClosedForm => to_rational(&binomial(n, k)),
        }
    }
}

fn identity_sides(id: CountingIdentity, param: u32, route: Route) -> (Rational, Rational) {
    let m = param;
    match id {
        CountingIdentity::LogSum => {
            let lhs = (2..=m)
                .map(|n| sign(n) * route.count(m, n) / rat(n as i64))
                .sum();
            (lhs, rat(1))
        }
        CountingIdentity::ShiftedSum => {
            let lhs = (2..=m)
                .map(|n| sign(n) * (route.count(m - 1, n - 1) + route.count(m - 1, n)))
                .sum();
            (lhs, rat(1))
        }
        CountingIdentity::AlternatingSum => {
            let lhs = (1..=m).map(|n| sign(n) * route.count(m, n)).sum();
            (lhs, sign(m))
        }
        CountingIdentity::BinomialSum => {
            let n = param;
            let lhs = (0..n)
                .map(|k| sign(k) * rat(k as i64 + 1) * route.binomial(n, k))
                .sum();
            (lhs, sign(n + 1) * rat(n as i64 + 1))
        }
    }
}

/// Evaluates one counting identity at `param` along both routes. The
/// binomial sum is reported as computed even at `n = 1`, where it fails.
pub fn verify_identity(
    id: CountingIdentity,
    param: u32,
) -> Result<Vec<VerificationReport>, CombError> {
    if param < id.min_parameter() {
        return Err(invalid(
            "parameter",
            param,
            &format!(">= {}", id.min_parameter()),
        ));
    }
    if id == CountingIdentity::BinomialSum && param > 62 {
        return Err(invalid("parameter", param, "<= 62"));
    }
    Ok([Route::Enumeration, Route::ClosedForm]
        .into_iter()
        .map(|route| {
            let (lhs, rhs) = identity_sides(id, param, route);
            let context = ReportContext {
                parameter: Some(param),
                route: Some(route.name().into()),
                ..Default::default()
            };
            VerificationReport::rational(id.name(), context, lhs, rhs)
        })
        .collect())
}

/// `Σ_{λ ⊢ m, ℓ(λ) ≥ 2} (-1)^ℓ / ℓ · ℓ! m! / (Π λ_i! |Aut(λ)|) = 1`, once
/// summed over partitions and once through `Σ_ℓ (-1)^ℓ / ℓ · ℓ! S(m, ℓ)`.
pub fn verify_partition_identity(m: u32) -> Result<Vec<VerificationReport>, CombError> {
    if m < 2 {
        return Err(invalid("m", m, ">= 2"));
    }
    let by_partitions: Rational = partitions(m)
        .filter(|p| p.len() >= 2)
        .map(|p| {
            let l = p.len() as u32;
            let term = to_rational(&(factorial(l) * p.multinomial())) / to_rational(&p.aut_order());
            sign(l) * term / rat(l as i64)
        })
        .sum();
    let closed: Rational = (2..=m)
        .map(|l| sign(l) * to_rational(&surjection_count(m, l)) / rat(l as i64))
        .sum();
    Ok([("partitions", by_partitions), ("closed-form", closed)]
        .into_iter()
        .map(|(route, lhs)| {
            let context = ReportContext {
                parameter: Some(m),
                route: Some(route.into()),
                ..Default::default()
            };
            VerificationReport::rational("partition-sum", context, lhs, rat(1))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parts(m: u32) -> Vec<Vec<u32>> {
        partitions(m).map(|p| p.parts().to_vec()).collect()
    }

    // Partition counts from the standard recurrence over largest part.
    fn partition_count_dp(m: usize) -> u64 {
        let mut ways = vec![0u64; m + 1];
        ways[0] = 1;
        for part in 1..=m {
            for total in part..=m {
                ways[total] += ways[total - part];
            }
        }
        ways[m]
    }

    // All n^m functions, filtered to surjections.
    fn brute_surjections(m: u32, n: u32) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for code in 0..(n as u64).pow(m) {
            let mut c = code;
            let mut f = vec![0usize; m as usize];
            for slot in f.iter_mut().rev() {
                *slot = (c % n as u64) as usize;
                c /= n as u64;
            }
            if (0..n as usize).all(|v| f.contains(&v)) {
                out.push(f);
            }
        }
        out
    }

    #[test]
    fn partition_examples() {
        assert_eq!(parts(1), vec![vec![1]]);
        assert_eq!(parts(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(partitions(10).count(), 42);
        for m in 1..=15 {
            assert_eq!(partitions(m).count() as u64, partition_count_dp(m as usize));
            assert!(partitions(m).all(|p| p.degree() == m));
        }
    }

    #[test]
    fn aut_examples() {
        assert_eq!(
            Partition::new(vec![2, 2, 1]).unwrap().aut_order(),
            BigUint::from(2u32)
        );
        assert_eq!(
            Partition::new(vec![1, 1, 1, 1]).unwrap().aut_order(),
            BigUint::from(24u32)
        );
        assert_eq!(Partition::new(vec![5]).unwrap().aut_order(), BigUint::one());
        assert!(Partition::new(vec![2, 0]).is_none());
    }

    #[test]
    fn decomposition_examples() {
        let two: Vec<String> = ordered_decompositions(2, 2)
            .unwrap()
            .map(|d| d.to_string())
            .collect();
        assert_eq!(two, vec!["({1},{2})", "({2},{1})"]);
        assert_eq!(ordered_decompositions(3, 2).unwrap().count(), 6);
        assert_eq!(ordered_decompositions(3, 3).unwrap().count(), 6);
        assert!(ordered_decompositions(2, 3).is_err());
        assert!(ordered_decompositions(3, 0).is_err());
    }

    #[test]
    fn walker_matches_brute_force_order() {
        for m in 1..=6 {
            for n in 1..=m {
                let mut walker = SurjectionWalker::new(m as usize, n as usize);
                let mut got = Vec::new();
                while let Some(a) = walker.advance() {
                    got.push(a.to_vec());
                }
                assert_eq!(got, brute_surjections(m, n), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn surjection_examples() {
        assert_eq!(surjection_count(2, 2), BigUint::from(2u32));
        assert_eq!(surjection_count(3, 2), BigUint::from(6u32));
        assert_eq!(surjection_count(7, 1), BigUint::one());
        assert_eq!(surjection_count(2, 3), BigUint::zero());
    }

    #[test]
    fn counting_routes_agree() {
        for m in 1..=10 {
            for n in 1..=m {
                let closed = surjection_count(m, n);
                assert_eq!(surjection_count_by_partitions(m, n), closed, "m={m} n={n}");
                if m <= 8 {
                    assert_eq!(count_by_enumeration(m, n), closed, "m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn identity_examples() {
        let r = verify_identity(CountingIdentity::LogSum, 2).unwrap();
        assert!(r.iter().all(|x| x.pass));
        assert_eq!(r[0].lhs, crate::laurent::BivarLaurent::one());

        let r = verify_identity(CountingIdentity::AlternatingSum, 1).unwrap();
        assert!(r.iter().all(|x| x.pass));
        assert_eq!(r[0].rhs, crate::laurent::BivarLaurent::constant(rat(-1)));

        let r = verify_identity(CountingIdentity::BinomialSum, 3).unwrap();
        assert!(r.iter().all(|x| x.pass));
        assert_eq!(r[0].lhs, crate::laurent::BivarLaurent::constant(rat(4)));

        let r = verify_identity(CountingIdentity::BinomialSum, 1).unwrap();
        assert!(r.iter().all(|x| !x.pass));
        assert_eq!(r[0].lhs, crate::laurent::BivarLaurent::constant(rat(1)));
        assert_eq!(r[0].rhs, crate::laurent::BivarLaurent::constant(rat(2)));
    }

    #[test]
    fn identity_ranges() {
        assert!(verify_identity(CountingIdentity::LogSum, 1).is_err());
        assert!(verify_identity(CountingIdentity::ShiftedSum, 2).is_err());
        assert!(verify_identity(CountingIdentity::AlternatingSum, 0).is_err());
        assert!(verify_partition_identity(1).is_err());
        assert_eq!(
            "log-sum".parse::<CountingIdentity>().unwrap(),
            CountingIdentity::LogSum
        );
        assert!("nope".parse::<CountingIdentity>().is_err());
    }

    #[test]
    fn partition_identity_small() {
        for m in 2..=6 {
            assert!(verify_partition_identity(m).unwrap().iter().all(|r| r.pass));
        }
    }

    #[test]
    fn weak_composition_counts() {
        assert_eq!(
            weak_compositions(2, 2),
            vec![vec![0, 2], vec![1, 1], vec![2, 0]]
        );
        assert_eq!(weak_compositions(3, 3).len(), 10);
        assert_eq!(weak_compositions(0, 0), vec![Vec::<u32>::new()]);
        assert!(weak_compositions(1, 0).is_empty());
    }
}
