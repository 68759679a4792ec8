//! Markov triples and the objects hanging off them: the mutation tree, the
//! branches with a fixed largest entry, companion numbers and Lagrange
//! numbers.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{QuadElem, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MarkovError {
    #[error("({0}, {1}, {2}) is not a Markov triple")]
    NotMarkov(BigInt, BigInt, BigInt),
    #[error("entry {0} of the root is not its largest element")]
    RootNotMaximal(BigInt),
    #[error("index {0} is out of range; expected 0, 1 or 2")]
    BadIndex(usize),
    #[error("q1 = {q1} is not congruent to 3·p3·p2⁻¹ modulo {p1}")]
    NonDivisible { q1: BigInt, p1: BigInt },
    #[error("{0} is not a Markov number")]
    NotMarkovNumber(BigInt),
    #[error("cannot parse triple {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Positive solution of `p₁² + p₂² + p₃² = 3·p₁·p₂·p₃`, in the order given.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkovTriple {
    p: [BigInt; 3],
}

impl MarkovTriple {
    pub fn new(
        p1: impl Into<BigInt>,
        p2: impl Into<BigInt>,
        p3: impl Into<BigInt>,
    ) -> Result<Self, MarkovError> {
        let p = [p1.into(), p2.into(), p3.into()];
        let ok = p.iter().all(|x| x.is_positive()) && {
            let [a, b, c] = &p;
            a * a + b * b + c * c == BigInt::from(3) * a * b * c
        };
        if !ok {
            let [a, b, c] = p;
            return Err(MarkovError::NotMarkov(a, b, c));
        }
        let t = MarkovTriple { p };
        debug_assert!(t.is_pairwise_coprime() && t.p.iter().all(|x| !(x % 3u8).is_zero()));
        Ok(t)
    }

    pub fn root() -> Self {
        MarkovTriple {
            p: [BigInt::one(), BigInt::one(), BigInt::one()],
        }
    }

    pub fn entries(&self) -> &[BigInt; 3] {
        &self.p
    }

    pub fn get(&self, idx: usize) -> &BigInt {
        &self.p[idx % 3]
    }

    pub fn max_entry(&self) -> &BigInt {
        self.p.iter().max().expect("three entries")
    }

    /// Entries in increasing order; two triples are the same up to order
    /// exactly when these agree.
    pub fn sorted(&self) -> [BigInt; 3] {
        let mut s = self.p.clone();
        s.sort();
        s
    }

    /// The triple with entry `idx` moved to the front and the other two
    /// following in cyclic order.
    pub fn rotated_to(&self, idx: usize) -> MarkovTriple {
        MarkovTriple {
            p: [
                self.get(idx).clone(),
                self.get(idx + 1).clone(),
                self.get(idx + 2).clone(),
            ],
        }
    }

    pub fn is_pairwise_coprime(&self) -> bool {
        (0..3).all(|i| self.get(i).gcd(self.get(i + 1)).is_one())
    }

    pub fn satisfies_equation(&self) -> bool {
        let [a, b, c] = &self.p;
        a * a + b * b + c * c == BigInt::from(3) * a * b * c
    }

    /// Replaces entry `idx` by `3·pⱼ·pₖ − pᵢ`.
    pub fn mutate(&self, idx: usize) -> Result<MarkovTriple, MarkovError> {
        if idx > 2 {
            return Err(MarkovError::BadIndex(idx));
        }
        let mut p = self.p.clone();
        p[idx] = BigInt::from(3) * self.get(idx + 1) * self.get(idx + 2) - self.get(idx);
        Ok(MarkovTriple { p })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.p
                .iter()
                .map(|x| serde_json::Value::String(x.to_string()))
                .collect(),
        )
    }
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.p[0], self.p[1], self.p[2])
    }
}

impl FromStr for MarkovTriple {
    type Err = MarkovError;

    /// Parses `"p1,p2,p3"`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| MarkovError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(err("expected three comma-separated integers"));
        }
        let mut vals = Vec::with_capacity(3);
        for part in parts {
            vals.push(part.parse::<BigInt>().map_err(|_| err("not an integer"))?);
        }
        let [a, b, c]: [BigInt; 3] = vals.try_into().expect("length checked");
        MarkovTriple::new(a, b, c)
    }
}

/// One node of the Markov tree, kept in the layout `(x, m, y)` with the
/// largest entry `m` in the middle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    #[serde(serialize_with = "ser_triple")]
    pub triple: MarkovTriple,
    pub generation: usize,
    pub parent: Option<usize>,
    /// Position (0 or 2) of the parent entry that was replaced.
    pub mutated_index: Option<usize>,
}

fn ser_triple<S: serde::Serializer>(t: &MarkovTriple, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for x in t.entries() {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

/// The first `generations` levels of the Markov tree, breadth first.
///
/// Mutating the left entry of `(x, m, y)` gives `(y, x̂, m)` and mutating the
/// right entry gives `(x, ŷ, m)`; the middle entry would lead back to the
/// parent. A child whose unordered triple has already been produced is
/// omitted, which only happens below `(1, 1, 1)` and `(1, 2, 1)`.
pub fn tree(generations: usize) -> Vec<TreeNode> {
    let mut out = Vec::new();
    if generations == 0 {
        return out;
    }
    let mut seen = HashSet::new();
    seen.insert(MarkovTriple::root().sorted());
    out.push(TreeNode {
        triple: MarkovTriple::root(),
        generation: 1,
        parent: None,
        mutated_index: None,
    });
    let mut frontier = vec![0usize];
    for gen in 2..=generations {
        let mut next = Vec::new();
        for &idx in &frontier {
            let [x, m, y] = out[idx].triple.entries().clone();
            let three = BigInt::from(3);
            let children = [
                (0, [y.clone(), &three * &y * &m - &x, m.clone()]),
                (2, [x.clone(), &three * &x * &m - &y, m.clone()]),
            ];
            for (mutated, [a, b, c]) in children {
                let child = MarkovTriple { p: [a, b, c] };
                if !seen.insert(child.sorted()) {
                    continue;
                }
                out.push(TreeNode {
                    triple: child,
                    generation: gen,
                    parent: Some(idx),
                    mutated_index: Some(mutated),
                });
                next.push(out.len() - 1);
            }
        }
        frontier = next;
    }
    out
}

/// Which of the two branches through a fixed largest entry to follow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BranchSide {
    /// Keep the root's neighbours `(b, c)` as given.
    C,
    /// Exchange the roles of `b` and `c`.
    B,
}

impl FromStr for BranchSide {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "c" | "C" => Ok(BranchSide::C),
            "b" | "B" => Ok(BranchSide::B),
            _ => Err(format!("unknown branch side {s:?}; expected b or c")),
        }
    }
}

/// Triples `(a, bₙ, cₙ)` for `n = 0..=steps` on a branch with largest entry
/// `a = root[apex]`, where `b₀` and `c₀` are the entries before and after
/// `a` (swapped for [`BranchSide::B`]) and `bₙ₊₁ = cₙ`,
/// `cₙ₊₁ = 3·a·cₙ − bₙ`.
pub fn branch_walk(
    root: &MarkovTriple,
    apex: usize,
    side: BranchSide,
    steps: usize,
) -> Result<Vec<MarkovTriple>, MarkovError> {
    if apex > 2 {
        return Err(MarkovError::BadIndex(apex));
    }
    let a = root.get(apex).clone();
    if &a != root.max_entry() {
        return Err(MarkovError::RootNotMaximal(a));
    }
    let (mut b, mut c) = (root.get(apex + 2).clone(), root.get(apex + 1).clone());
    if side == BranchSide::B {
        std::mem::swap(&mut b, &mut c);
    }
    let mut out = Vec::with_capacity(steps + 1);
    for _ in 0..=steps {
        out.push(MarkovTriple {
            p: [a.clone(), b.clone(), c.clone()],
        });
        let next = BigInt::from(3) * &a * &c - &b;
        b = std::mem::replace(&mut c, next);
    }
    Ok(out)
}

/// The tree node `(x, a, y)` at which the Markov number `a` first appears as
/// the largest entry.
pub fn branch_root(a: &BigInt) -> Result<MarkovTriple, MarkovError> {
    if a.is_one() {
        return Ok(MarkovTriple::root());
    }
    let mut frontier = vec![MarkovTriple::new(1, 2, 1).expect("Markov")];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for t in frontier {
            let m = t.get(1);
            if m == a {
                return Ok(t);
            }
            if m > a {
                continue;
            }
            let [x, m, y] = t.entries().clone();
            let three = BigInt::from(3);
            next.push(MarkovTriple {
                p: [y.clone(), &three * &y * &m - &x, m.clone()],
            });
            next.push(MarkovTriple {
                p: [x.clone(), &three * &x * &m - &y, m],
            });
        }
        frontier = next;
    }
    Err(MarkovError::NotMarkovNumber(a.clone()))
}

/// Least nonnegative residues `q± ≡ ±3·p₃·p₂⁻¹ (mod p₁)` attached to one
/// entry `p₁` of a triple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompanionPair {
    pub modulus: BigInt,
    pub q_plus: BigInt,
    pub q_minus: BigInt,
}

impl CompanionPair {
    pub fn contains(&self, q: &BigInt) -> bool {
        let r = q.mod_floor(&self.modulus);
        r == self.q_plus || r == self.q_minus
    }
}

/// Inverse of `x` modulo `m > 0`, if it exists.
pub fn mod_inverse(x: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = x.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// `3·p₃·p₂⁻¹ mod p₁` for an arbitrary ordered choice of the three numbers.
pub fn companion_residue(p1: &BigInt, p2: &BigInt, p3: &BigInt) -> BigInt {
    if p1.is_one() {
        return BigInt::zero();
    }
    let inv = mod_inverse(p2, p1).expect("Markov entries are pairwise coprime");
    (BigInt::from(3) * p3 * inv).mod_floor(p1)
}

/// Companion numbers of entry `idx`; the other two entries are taken in
/// cyclic order after it.
pub fn companions(t: &MarkovTriple, idx: usize) -> CompanionPair {
    let (p1, p2, p3) = (t.get(idx), t.get(idx + 1), t.get(idx + 2));
    let q_plus = companion_residue(p1, p2, p3);
    let q_minus = (-&q_plus).mod_floor(p1);
    CompanionPair {
        modulus: p1.clone(),
        q_plus,
        q_minus,
    }
}

/// `(q₁·p₂ − 3·p₃)/p₁` for a triple `(p₁, p₂, p₃)` in the given order.
pub fn derived_companion_q2(t: &MarkovTriple, q1: &BigInt) -> Result<BigInt, MarkovError> {
    let [p1, p2, p3] = t.entries();
    let num = q1 * p2 - BigInt::from(3) * p3;
    let (quot, rem) = num.div_mod_floor(p1);
    if rem.is_zero() {
        Ok(quot)
    } else {
        Err(MarkovError::NonDivisible {
            q1: q1.clone(),
            p1: p1.clone(),
        })
    }
}

/// `λ(a) = (3a + √(9a² − 4)) / (2a)` in `Q(√(9a² − 4))`.
pub fn lagrange_number(a: &BigInt) -> QuadElem {
    assert!(a.is_positive(), "Lagrange numbers are defined for a ≥ 1");
    let d = lagrange_discriminant(a);
    let two_a = BigInt::from(2) * a;
    QuadElem::new(
        Rational::new(BigInt::from(3) * a, two_a.clone()),
        Rational::new(BigInt::one(), two_a),
        d,
    )
    .expect("9a² − 4 is never a perfect square for a ≥ 1")
}

pub fn lagrange_discriminant(a: &BigInt) -> BigInt {
    BigInt::from(9) * a * a - 4
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn mt(a: i64, b: i64, c: i64) -> MarkovTriple {
        MarkovTriple::new(a, b, c).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn rejects_non_solutions() {
        assert!(MarkovTriple::new(1, 2, 3).is_err());
        assert!(MarkovTriple::new(0, 0, 0).is_err());
        assert!("1,5,2".parse::<MarkovTriple>().is_ok());
        assert!("(2, 5, 29)".parse::<MarkovTriple>().is_ok());
        assert!("2,5".parse::<MarkovTriple>().is_err());
    }

    #[test]
    fn mutation_examples() {
        assert_eq!(mt(1, 1, 1).mutate(1).unwrap(), mt(1, 2, 1));
        assert_eq!(mt(1, 5, 2).mutate(2).unwrap(), mt(1, 5, 13));
        assert_eq!(mt(1, 5, 2).mutate(0).unwrap(), mt(29, 5, 2));
        assert_eq!(mt(29, 5, 2).sorted(), mt(2, 29, 5).sorted());
    }

    #[test]
    fn mutation_is_an_involution() {
        let t = mt(5, 433, 29);
        for i in 0..3 {
            assert_eq!(t.mutate(i).unwrap().mutate(i).unwrap(), t);
        }
    }

    #[test]
    fn first_five_generations() {
        let nodes = tree(5);
        let got: HashSet<[BigInt; 3]> = nodes.iter().map(|n| n.triple.sorted()).collect();
        let want: HashSet<[BigInt; 3]> = [
            (1, 1, 1),
            (1, 2, 1),
            (1, 5, 2),
            (1, 13, 5),
            (2, 29, 5),
            (1, 34, 13),
            (5, 194, 13),
            (5, 433, 29),
            (2, 169, 29),
        ]
        .iter()
        .map(|&(a, b, c)| mt(a, b, c).sorted())
        .collect();
        assert_eq!(nodes.len(), 9);
        assert_eq!(got, want);
        assert_eq!(tree(1).len(), 1);
        assert!(nodes
            .iter()
            .all(|n| n.triple.satisfies_equation() && n.triple.is_pairwise_coprime()));
    }

    #[test]
    fn branch_sequences() {
        let fib: Vec<_> = branch_walk(&mt(1, 1, 1), 1, BranchSide::C, 4).unwrap();
        let cs: Vec<BigInt> = fib.iter().map(|t| t.get(2).clone()).collect();
        assert_eq!(cs, [1, 2, 5, 13, 34].map(big));
        let pell = branch_walk(&mt(1, 2, 1), 1, BranchSide::C, 3).unwrap();
        assert_eq!(pell[1], mt(2, 1, 5));
        assert_eq!(pell[2], mt(2, 5, 29));
        assert_eq!(pell[3], mt(2, 29, 169));
        let five = branch_walk(&mt(1, 5, 2), 1, BranchSide::C, 2).unwrap();
        assert_eq!(five[1], mt(5, 2, 29));
        assert_eq!(five[2], mt(5, 29, 433));
        assert!(matches!(
            branch_walk(&mt(1, 5, 2), 0, BranchSide::C, 2),
            Err(MarkovError::RootNotMaximal(_))
        ));
    }

    #[test]
    fn roots_of_branches() {
        assert_eq!(branch_root(&big(5)).unwrap(), mt(1, 5, 2));
        assert_eq!(branch_root(&big(29)).unwrap(), mt(2, 29, 5));
        assert!(branch_root(&big(7)).is_err());
    }

    #[test]
    fn companion_examples() {
        let c = companions(&mt(5, 1, 2), 0);
        assert_eq!((c.q_plus.clone(), c.q_minus.clone()), (big(1), big(4)));
        let c = companions(&mt(2, 5, 29), 0);
        assert_eq!((c.q_plus, c.q_minus), (big(1), big(1)));
        let c = companions(&mt(1, 5, 2), 0);
        assert_eq!((c.q_plus, c.q_minus), (big(0), big(0)));
    }

    #[test]
    fn companions_stable_under_other_mutations() {
        let t = mt(5, 13, 194);
        let before = companions(&t, 0);
        for j in [1, 2] {
            let after = companions(&t.mutate(j).unwrap(), 0);
            assert!(after.contains(&before.q_plus));
            assert!(after.contains(&before.q_minus));
        }
    }

    #[test]
    fn derived_q2() {
        assert_eq!(
            derived_companion_q2(&mt(2, 5, 29), &big(5)).unwrap(),
            big(-31)
        );
        assert_eq!(
            derived_companion_q2(&mt(1, 1, 1), &big(0)).unwrap(),
            big(-3)
        );
        assert_eq!(
            derived_companion_q2(&mt(1, 2, 1), &big(0)).unwrap(),
            big(-3)
        );
        assert!(derived_companion_q2(&mt(5, 1, 2), &big(2)).is_err());
        let q2 = derived_companion_q2(&mt(2, 5, 29), &big(5)).unwrap();
        assert!(companions(&mt(5, 2, 29), 0).contains(&q2));
    }

    #[test]
    fn lagrange_values() {
        let l1 = lagrange_number(&big(1));
        assert_eq!(l1, "3/2 + 1/2*sqrt(5)".parse().unwrap());
        let l2 = lagrange_number(&big(2));
        assert_eq!(l2.discriminant(), &big(32));
        for a in [1, 2, 5, 13, 29] {
            let l = lagrange_number(&big(a));
            let inv_a2 = rat(1, a * a);
            let lhs = &(&l * &l) - &l.scale(&rat(3, 1));
            assert_eq!(lhs.add_rational(&inv_a2).sign(), 0);
        }
    }
}
